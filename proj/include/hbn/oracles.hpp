#pragma once
// Closed-form harmonic measures of tail sets and Green's functions for the
// reference domains. Sectors are pulled back to the half-plane through
// w -> w^(pi/opening).

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <variant>
#include <vector>

#include "hbn/errors.hpp"
#include "hbn/geometry.hpp"
#include "hbn/profile.hpp"

namespace hbn {

namespace detail {

// pi/2 - atan(x), accurate when x is large and positive.
inline double arctan_gap(double x) {
  return x > 0.0 ? std::atan(1.0 / x) : 0.5 * std::numbers::pi - std::atan(x);
}

// Harmonic measure, seen from `a`, of {w on the line c + i*u*t : |w| > r}
// for the half-plane {Re(conj(u)(w - c)) > 0}, |u| = 1.
inline double half_plane_tail(PlanePoint c, PlanePoint u, PlanePoint a, double r) {
  const PlanePoint local = std::conj(u) * (a - c);
  const double height = local.real();
  const double foot = local.imag();
  // |c + i u t|^2 = t^2 + 2 m t + |c|^2
  const double m = (std::conj(c) * PlanePoint{0.0, 1.0} * u).real();
  const double disc = m * m - std::norm(c) + r * r;
  if (disc <= 0.0) return 1.0;
  const double root = std::sqrt(disc);
  const double upper = (-m + root - foot) / height;
  const double lower = (-m - root - foot) / height;
  const double tail = (arctan_gap(upper) + arctan_gap(-lower)) / std::numbers::pi;
  return std::clamp(tail, 0.0, 1.0);
}

inline double half_plane_green(PlanePoint pole, PlanePoint w) {
  if (w == pole) return std::numeric_limits<double>::infinity();
  return std::log(std::abs((w + std::conj(pole)) / (w - pole)));
}

inline double disk_green(double radius, PlanePoint pole, PlanePoint w) {
  if (w == pole) return std::numeric_limits<double>::infinity();
  return std::log(std::abs((radius * radius - std::conj(pole) * w) / (radius * (w - pole))));
}

inline PlanePoint sector_unfold(const Sector& s, PlanePoint z) {
  return std::pow(z, std::numbers::pi / s.opening);
}

}  // namespace detail

/// Closed-form omega_D(a, E_r).
inline double exact_hm(const DomainSpec& d, double r) {
  require(std::isfinite(r) && r >= 0.0, ErrorCode::InvalidArgument, "tail radius must be >= 0");
  const PlanePoint a = d.basepoint();
  return std::visit(
      detail::overloaded{
          [&](const HalfPlane&) { return detail::half_plane_tail(0.0, 1.0, a, r); },
          [&](const Sector& s) {
            const double kappa = std::numbers::pi / s.opening;
            return detail::half_plane_tail(0.0, 1.0, detail::sector_unfold(s, a),
                                           std::pow(r, kappa));
          },
          [&](const DiskExterior& e) { return r < e.radius ? 1.0 : 0.0; },
          [&](const Disk& k) { return r < k.radius ? 1.0 : 0.0; },
          [&](const GenericSdf& g) -> double {
            if (!g.source) fail(ErrorCode::UnsupportedShape, "no closed form for a generic domain");
            const AffineSource& src = *g.source;
            if (std::holds_alternative<HalfPlane>(src.base.shape()))
              return detail::half_plane_tail(src.shift, src.scale / std::abs(src.scale), a, r);
            if (src.shift == PlanePoint{} &&
                !std::holds_alternative<GenericSdf>(src.base.shape()))
              return exact_hm(src.base.with_basepoint(a / src.scale), r / std::abs(src.scale));
            fail(ErrorCode::UnsupportedShape, "no closed form for this affine image");
          },
      },
      d.shape());
}

/// Green's function g_D(a, w) with pole at the basepoint; 0 off the domain.
inline double exact_green(const DomainSpec& d, PlanePoint w) {
  const PlanePoint a = d.basepoint();
  const bool inside = contains(d, w);
  return std::visit(
      detail::overloaded{
          [&](const HalfPlane&) { return inside ? detail::half_plane_green(a, w) : 0.0; },
          [&](const Sector& s) {
            return inside ? detail::half_plane_green(detail::sector_unfold(s, a),
                                                     detail::sector_unfold(s, w))
                          : 0.0;
          },
          [&](const Disk& k) { return inside ? detail::disk_green(k.radius, a, w) : 0.0; },
          [&](const DiskExterior&) -> double {
            fail(ErrorCode::UnsupportedShape, "no Green's function oracle for a disk exterior");
          },
          [&](const GenericSdf& g) -> double {
            if (!g.source) fail(ErrorCode::UnsupportedShape, "no closed form for a generic domain");
            const AffineSource& src = *g.source;
            if (std::holds_alternative<DiskExterior>(src.base.shape()) ||
                std::holds_alternative<GenericSdf>(src.base.shape()))
              fail(ErrorCode::UnsupportedShape, "no Green's function oracle for this affine image");
            if (!inside) return 0.0;
            const DomainSpec base = src.base.with_basepoint((a - src.shift) / src.scale);
            return exact_green(base, (w - src.shift) / src.scale);
          },
      },
      d.shape());
}

/// Exponent q with omega(r) ~ C r^-q as r -> infinity; +inf when the tail
/// set is eventually empty.
inline double exact_decay_exponent(const DomainSpec& d) {
  return std::visit(
      detail::overloaded{
          [](const HalfPlane&) { return 1.0; },
          [](const Sector& s) { return std::numbers::pi / s.opening; },
          [](const DiskExterior&) { return std::numeric_limits<double>::infinity(); },
          [](const Disk&) { return std::numeric_limits<double>::infinity(); },
          [](const GenericSdf& g) -> double {
            if (!g.source || std::holds_alternative<GenericSdf>(g.source->base.shape()))
              fail(ErrorCode::UnsupportedShape, "no closed form for a generic domain");
            return exact_decay_exponent(g.source->base);
          },
      },
      d.shape());
}

inline DecayProfile oracle_profile(const DomainSpec& d, const std::vector<double>& radii) {
  require_increasing_radii(radii);
  DecayProfile p;
  p.source = ProfileSource::Oracle;
  p.entries.reserve(radii.size());
  for (double r : radii) p.entries.push_back({r, exact_hm(d, r), 0.0});
  return p;
}

}  // namespace hbn
