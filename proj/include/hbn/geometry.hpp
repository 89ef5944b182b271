#pragma once
// Planar domains: membership, distance to the boundary, nearest boundary
// point and the tail set E_r = {boundary points with |z| > r}.

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <numbers>
#include <string>
#include <variant>

#include "hbn/errors.hpp"

namespace hbn {

using PlanePoint = std::complex<double>;

inline bool is_finite(PlanePoint z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Right half-plane Re z > 0.
struct HalfPlane {};

/// {z : |arg z| < opening/2}; opening = 2*pi is the plane slit along (-inf, 0].
struct Sector {
  double opening;
};

struct DiskExterior {
  double radius;
};

struct Disk {
  double radius;
};

class DomainSpec;
struct AffineSource;

/// Black-box domain. `distance` must be a lower bound of the true distance to
/// the boundary and positive inside. `project` may be left empty, in which
/// case tail classification uses the absorbed position itself.
struct GenericSdf {
  std::function<bool(PlanePoint)> contains;
  std::function<double(PlanePoint)> distance;
  std::function<PlanePoint(PlanePoint)> project;
  bool bounded = false;
  bool simply_connected = false;
  /// Set by affine_image so that closed-form oracles can pull back.
  std::shared_ptr<const AffineSource> source;
};

using Shape = std::variant<HalfPlane, Sector, DiskExterior, Disk, GenericSdf>;

class DomainSpec {
 public:
  static DomainSpec half_plane(PlanePoint basepoint = {1.0, 0.0}) {
    return DomainSpec(HalfPlane{}, basepoint, true);
  }

  static DomainSpec sector(double opening, PlanePoint basepoint = {1.0, 0.0}) {
    require(std::isfinite(opening) && opening > 0.0 && opening <= 2.0 * std::numbers::pi,
            ErrorCode::InvalidArgument, "sector opening must lie in (0, 2pi]");
    return DomainSpec(Sector{opening}, basepoint, true);
  }

  static DomainSpec slit_plane(PlanePoint basepoint = {1.0, 0.0}) {
    return sector(2.0 * std::numbers::pi, basepoint);
  }

  static DomainSpec disk_exterior(double radius, PlanePoint basepoint) {
    require(std::isfinite(radius) && radius > 0.0, ErrorCode::InvalidArgument,
            "disk exterior radius must be positive");
    return DomainSpec(DiskExterior{radius}, basepoint, false);
  }

  static DomainSpec disk(double radius, PlanePoint basepoint = {0.0, 0.0}) {
    require(std::isfinite(radius) && radius > 0.0, ErrorCode::InvalidArgument,
            "disk radius must be positive");
    return DomainSpec(Disk{radius}, basepoint, true);
  }

  static DomainSpec generic(GenericSdf sdf, PlanePoint basepoint, bool regular) {
    require(static_cast<bool>(sdf.contains) && static_cast<bool>(sdf.distance),
            ErrorCode::InvalidArgument, "generic domain needs membership and distance functions");
    return DomainSpec(std::move(sdf), basepoint, regular);
  }

  const Shape& shape() const { return shape_; }
  PlanePoint basepoint() const { return basepoint_; }
  bool regular() const { return regular_; }

  bool bounded() const {
    if (std::holds_alternative<Disk>(shape_)) return true;
    if (const auto* g = std::get_if<GenericSdf>(&shape_)) return g->bounded;
    return false;
  }

  bool simply_connected() const {
    if (std::holds_alternative<DiskExterior>(shape_)) return false;
    if (const auto* g = std::get_if<GenericSdf>(&shape_)) return g->simply_connected;
    return true;
  }

  DomainSpec with_basepoint(PlanePoint basepoint) const {
    return DomainSpec(shape_, basepoint, regular_);
  }

 private:
  DomainSpec(Shape shape, PlanePoint basepoint, bool regular);

  Shape shape_;
  PlanePoint basepoint_;
  bool regular_;
};

/// Records that a GenericSdf is the image of `base` under z -> scale*z + shift.
struct AffineSource {
  DomainSpec base;
  PlanePoint scale;
  PlanePoint shift;
};

struct TailQuery {
  double r;

  explicit TailQuery(double radius) : r(radius) {
    require(std::isfinite(radius) && radius >= 0.0, ErrorCode::InvalidArgument,
            "tail radius must be finite and non-negative");
  }
};

namespace detail {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Distance from z to the ray {t*u : t >= 0}, |u| = 1, and the nearest point.
inline double ray_distance(PlanePoint z, PlanePoint u, PlanePoint* nearest) {
  const PlanePoint local = std::conj(u) * z;
  if (local.real() > 0.0) {
    if (nearest) *nearest = local.real() * u;
    return std::abs(local.imag());
  }
  if (nearest) *nearest = 0.0;
  return std::abs(z);
}

inline bool sector_contains(const Sector& s, PlanePoint z) {
  if (z == PlanePoint{}) return false;
  return std::abs(std::arg(z)) < 0.5 * s.opening;
}

inline double sector_distance(const Sector& s, PlanePoint z, PlanePoint* nearest) {
  const PlanePoint upper = std::polar(1.0, 0.5 * s.opening);
  const PlanePoint lower = std::conj(upper);
  PlanePoint pu, pl;
  const double du = ray_distance(z, upper, &pu);
  const double dl = ray_distance(z, lower, &pl);
  if (nearest) *nearest = du <= dl ? pu : pl;
  return std::min(du, dl);
}

inline PlanePoint radial_projection(double radius, PlanePoint z) {
  const double m = std::abs(z);
  if (m == 0.0) return {radius, 0.0};
  return z * (radius / m);
}

}  // namespace detail

inline bool contains(const DomainSpec& d, PlanePoint z) {
  if (!is_finite(z)) return false;
  return std::visit(
      detail::overloaded{
          [&](const HalfPlane&) { return z.real() > 0.0; },
          [&](const Sector& s) { return detail::sector_contains(s, z); },
          [&](const DiskExterior& e) { return std::abs(z) > e.radius; },
          [&](const Disk& k) { return std::abs(z) < k.radius; },
          [&](const GenericSdf& g) { return g.contains(z); },
      },
      d.shape());
}

inline DomainSpec::DomainSpec(Shape shape, PlanePoint basepoint, bool regular)
    : shape_(std::move(shape)), basepoint_(basepoint), regular_(regular) {
  require(is_finite(basepoint), ErrorCode::InvalidArgument, "basepoint must be finite");
  require(hbn::contains(*this, basepoint), ErrorCode::BasepointOutsideDomain,
          "basepoint must lie inside the domain");
}

/// Distance from an interior point to the boundary without the membership
/// check; returns 0 for points that are not interior. Used by the walker.
inline double distance_or_zero(const DomainSpec& d, PlanePoint z) {
  return std::visit(
      detail::overloaded{
          [&](const HalfPlane&) { return std::max(z.real(), 0.0); },
          [&](const Sector& s) {
            return detail::sector_contains(s, z) ? detail::sector_distance(s, z, nullptr) : 0.0;
          },
          [&](const DiskExterior& e) { return std::max(std::abs(z) - e.radius, 0.0); },
          [&](const Disk& k) { return std::max(k.radius - std::abs(z), 0.0); },
          [&](const GenericSdf& g) { return g.contains(z) ? g.distance(z) : 0.0; },
      },
      d.shape());
}

inline double boundary_distance(const DomainSpec& d, PlanePoint z) {
  require(contains(d, z), ErrorCode::QueryOutsideDomain, "point is not inside the domain");
  return distance_or_zero(d, z);
}

inline PlanePoint nearest_boundary_point(const DomainSpec& d, PlanePoint z) {
  return std::visit(
      detail::overloaded{
          [&](const HalfPlane&) { return PlanePoint{0.0, z.imag()}; },
          [&](const Sector& s) {
            PlanePoint nearest;
            detail::sector_distance(s, z, &nearest);
            return nearest;
          },
          [&](const DiskExterior& e) { return detail::radial_projection(e.radius, z); },
          [&](const Disk& k) { return detail::radial_projection(k.radius, z); },
          [&](const GenericSdf& g) { return g.project ? g.project(z) : z; },
      },
      d.shape());
}

/// Whether a point absorbed next to the boundary belongs to E_r; decided on
/// the nearest boundary point, not the absorbed position.
inline bool in_tail(const DomainSpec& d, PlanePoint z_boundary, const TailQuery& q) {
  return std::abs(nearest_boundary_point(d, z_boundary)) > q.r;
}

/// Image of d under z -> a_coef*z + b_coef. Dilations about the origin keep
/// built-in shapes; everything else becomes a GenericSdf that remembers its
/// preimage.
inline DomainSpec affine_image(const DomainSpec& d, PlanePoint a_coef, PlanePoint b_coef) {
  require(a_coef != PlanePoint{}, ErrorCode::ZeroScale, "affine scale must be nonzero");
  require(is_finite(a_coef) && is_finite(b_coef), ErrorCode::InvalidArgument,
          "affine coefficients must be finite");
  const PlanePoint image_base = a_coef * d.basepoint() + b_coef;
  const bool pure_dilation = b_coef == PlanePoint{} && a_coef.imag() == 0.0 && a_coef.real() > 0.0;
  const bool about_origin = b_coef == PlanePoint{};

  if (std::holds_alternative<HalfPlane>(d.shape()) && pure_dilation)
    return DomainSpec::half_plane(image_base);
  if (const auto* s = std::get_if<Sector>(&d.shape()); s && pure_dilation)
    return DomainSpec::sector(s->opening, image_base);
  if (const auto* k = std::get_if<Disk>(&d.shape()); k && about_origin)
    return DomainSpec::disk(k->radius * std::abs(a_coef), image_base);
  if (const auto* e = std::get_if<DiskExterior>(&d.shape()); e && about_origin)
    return DomainSpec::disk_exterior(e->radius * std::abs(a_coef), image_base);

  // Compose with an existing affine source so that oracles see one map.
  auto source = std::make_shared<AffineSource>(AffineSource{d, a_coef, b_coef});
  if (const auto* g = std::get_if<GenericSdf>(&d.shape()); g && g->source) {
    source = std::make_shared<AffineSource>(AffineSource{
        g->source->base, a_coef * g->source->scale, a_coef * g->source->shift + b_coef});
  }

  const DomainSpec base = d;
  const PlanePoint inv_scale = 1.0 / a_coef;
  const double stretch = std::abs(a_coef);
  GenericSdf image;
  image.contains = [base, inv_scale, b_coef](PlanePoint w) {
    return hbn::contains(base, (w - b_coef) * inv_scale);
  };
  image.distance = [base, inv_scale, b_coef, stretch](PlanePoint w) {
    return stretch * distance_or_zero(base, (w - b_coef) * inv_scale);
  };
  image.project = [base, inv_scale, a_coef, b_coef](PlanePoint w) {
    return a_coef * nearest_boundary_point(base, (w - b_coef) * inv_scale) + b_coef;
  };
  image.bounded = d.bounded();
  image.simply_connected = d.simply_connected();
  image.source = std::move(source);
  return DomainSpec::generic(std::move(image), image_base, d.regular());
}

inline std::string shape_name(const DomainSpec& d) {
  return std::visit(detail::overloaded{
                        [](const HalfPlane&) { return std::string("half_plane"); },
                        [](const Sector&) { return std::string("sector"); },
                        [](const DiskExterior&) { return std::string("disk_exterior"); },
                        [](const Disk&) { return std::string("disk"); },
                        [](const GenericSdf&) { return std::string("generic"); },
                    },
                    d.shape());
}

}  // namespace hbn
