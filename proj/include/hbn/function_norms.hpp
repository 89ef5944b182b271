#pragma once
// Direct quadrature of Hardy integral means, weighted Bergman integrals and
// the area integrals int |f|^(p-2) |f'|^2 (log 1/|z|)^k dA for the catalog
// maps, with growth classification of truncation profiles.
//
// Everything is integrated in log space: exp((1+z)/(1-z)) exceeds double
// range long before |z| reaches 1 - 1e-3.

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "hbn/catalog.hpp"
#include "hbn/errors.hpp"
#include "hbn/geometry.hpp"
#include "hbn/oracles.hpp"
#include "hbn/quadrature.hpp"

namespace hbn {

enum class Growth { Bounded, Unbounded, Inconclusive };

inline std::string to_string(Growth g) {
  switch (g) {
    case Growth::Bounded: return "bounded";
    case Growth::Unbounded: return "unbounded";
    case Growth::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

enum class TruncationKind { Radius, Delta };

/// Integral values along a sequence of truncations that refine by a fixed
/// factor (1 - r or delta shrinks by `refinement` at each step).
struct NormProfile {
  TruncationKind kind = TruncationKind::Radius;
  std::vector<double> parameters;
  std::vector<double> log_values;
  /// log(value_k - value_{k-1}); -inf for a non-positive increment.
  std::vector<double> log_increments;
  double refinement = 10.0;
  Growth growth = Growth::Inconclusive;
  std::vector<Growth> growth_so_far;

  double value(std::size_t k) const { return std::exp(log_values[k]); }
};

namespace norms {

inline constexpr double kMeanTol = 1e-10;
inline constexpr double kAreaTol = 1e-8;
inline constexpr double kUnboundedRatio = 1.5;
inline constexpr double kStableIncrement = 1e-3;
/// Increments whose per-refinement growth exponent is within this band of
/// zero (log growth) are treated as divergent.
inline constexpr double kCriticalBand = 0.01;
inline constexpr double kExponentCeiling = 8.0;
inline constexpr int kBisectionDepth = 8;

inline std::vector<double> default_radii() { return {0.9, 0.99, 0.999, 0.9999, 0.99999, 0.999999}; }
inline std::vector<double> default_deltas() { return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}; }

// log of int_0^{2pi} exp(log_f(theta)) dtheta for a function symmetric
// under theta -> -theta, graded towards theta = 0 and theta = pi where the
// catalog maps peak as |z| -> 1.
template <class LogF>
double log_circle_integral(LogF&& log_f, double radius, double tol) {
  const double s = std::max((1.0 - radius) * (1.0 - radius), 1e-15);
  const auto breaks = quad::graded_breaks(0.0, std::numbers::pi, s, s);
  return std::log(2.0) + quad::log_integrate(log_f, breaks, tol);
}

// log of int_{rho_a}^{rho_b} int_0^{2pi} exp(log_f(rho, theta)) rho dtheta drho.
template <class LogF>
double log_polar_integral(LogF&& log_f, double rho_a, double rho_b) {
  auto inner = [&](double rho) {
    if (rho <= 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(rho) +
           log_circle_integral([&](double t) { return log_f(rho, t); }, rho, kAreaTol * 0.1);
  };
  const double grade_a = rho_a == 0.0 ? 1e-4 : 0.0;
  const double grade_b = std::max((1.0 - rho_b) * (1.0 - rho_b), 1e-15);
  const auto breaks = quad::graded_breaks(rho_a, rho_b, grade_a, grade_b);
  return quad::log_integrate(inner, breaks, kAreaTol);
}

inline void check_exponent(double p) {
  require(std::isfinite(p) && p > 0.0, ErrorCode::InvalidArgument, "p must be positive");
}

inline void check_weight(double alpha) {
  require(std::isfinite(alpha) && alpha > -1.0, ErrorCode::InvalidArgument, "alpha must exceed -1");
}

inline void check_delta(double delta) {
  require(std::isfinite(delta) && delta > 0.0 && delta < 1.0, ErrorCode::InvalidArgument,
          "delta must lie in (0, 1)");
}

inline auto bergman_log_integrand(const CatalogFunction& f, double p, double alpha) {
  return [f, p, alpha](double rho, double theta) {
    const PlanePoint z = std::polar(rho, theta);
    return p * f.log_abs_value(z) + alpha * std::log1p(-rho * rho);
  };
}

// |f|^(p-2) |f'|^2 (log 1/|z|)^k
inline auto area_log_integrand(const CatalogFunction& f, double p, double power) {
  return [f, p, power](double rho, double theta) {
    const PlanePoint z = std::polar(rho, theta);
    return (p - 2.0) * f.log_abs_value(z) + 2.0 * f.log_abs_derivative(z) +
           power * std::log(-std::log(rho));
  };
}

}  // namespace norms

/// log of int_0^{2pi} |f(r e^{i theta})|^p dtheta.
inline double log_hardy_mean(const CatalogFunction& f, double p, double r) {
  norms::check_exponent(p);
  require(std::isfinite(r) && r >= 0.0 && r < 1.0, ErrorCode::InvalidArgument,
          "radius must lie in [0, 1)");
  if (r == 0.0) return std::log(2.0 * std::numbers::pi) + p * f.log_abs_value(0.0);
  return norms::log_circle_integral(
      [&](double t) { return p * f.log_abs_value(std::polar(r, t)); }, r, norms::kMeanTol);
}

inline double hardy_mean(const CatalogFunction& f, double p, double r) {
  return std::exp(log_hardy_mean(f, p, r));
}

/// log of the weighted area integral over |z| <= 1 - delta.
inline double log_bergman_integral(const CatalogFunction& f, double p, double alpha, double delta) {
  norms::check_exponent(p);
  norms::check_weight(alpha);
  norms::check_delta(delta);
  return norms::log_polar_integral(norms::bergman_log_integrand(f, p, alpha), 0.0, 1.0 - delta);
}

inline double bergman_integral(const CatalogFunction& f, double p, double alpha, double delta) {
  return std::exp(log_bergman_integral(f, p, alpha, delta));
}

namespace norms {

inline void check_area_integrand(const CatalogFunction& f, double p) {
  require(f.zero_free() || p >= 2.0, ErrorCode::ZeroOnDisk,
          "|f|^(p-2) is not integrable at a zero of f when p < 2");
}

inline double area_power(std::optional<double> alpha) {
  if (alpha) check_weight(*alpha);
  return alpha ? *alpha + 2.0 : 1.0;
}

}  // namespace norms

/// int_{|z| <= 1-delta} |f|^(p-2) |f'|^2 (log 1/|z|)^k dA with k = 1, or
/// k = alpha + 2 for the weighted form. The polar Jacobian makes the
/// logarithmic factor at z = 0 bounded, so no inner cut is needed.
inline double log_yamashita_integral(const CatalogFunction& f, double p, double delta,
                                     std::optional<double> alpha = std::nullopt) {
  norms::check_exponent(p);
  norms::check_delta(delta);
  norms::check_area_integrand(f, p);
  return norms::log_polar_integral(norms::area_log_integrand(f, p, norms::area_power(alpha)), 0.0,
                                   1.0 - delta);
}

inline double yamashita_integral(const CatalogFunction& f, double p, double delta,
                                 std::optional<double> alpha = std::nullopt) {
  return std::exp(log_yamashita_integral(f, p, delta, alpha));
}

/// Growth of a refinement profile. Unbounded when the last refinement grows
/// the value by more than 1.5x; otherwise decided by how the increments
/// scale: shrinking geometrically means a finite limit, increments that stop
/// shrinking mean divergence.
inline Growth classify_growth(std::span<const double> log_values,
                              std::span<const double> log_increments, double refinement) {
  const std::size_t n = log_values.size();
  if (n < 2) return Growth::Inconclusive;
  for (double v : log_values)
    if (std::isnan(v)) return Growth::Inconclusive;
  const std::size_t k = n - 1;
  if (log_values[k] - log_values[k - 1] > std::log(norms::kUnboundedRatio)) return Growth::Unbounded;
  const double last = log_increments[k];
  const double rel_increment = last - log_values[k];
  if (n < 3) {
    return rel_increment < std::log(norms::kStableIncrement) ? Growth::Bounded : Growth::Inconclusive;
  }
  const double prev = log_increments[k - 1];
  if (last == -std::numeric_limits<double>::infinity()) return Growth::Bounded;
  if (prev == -std::numeric_limits<double>::infinity() || std::isnan(last) || std::isnan(prev))
    return Growth::Inconclusive;
  const double exponent = (last - prev) / std::log(refinement);
  if (rel_increment < std::log(norms::kStableIncrement) && exponent <= 0.0) return Growth::Bounded;
  return exponent < -norms::kCriticalBand ? Growth::Bounded : Growth::Unbounded;
}

namespace norms {

inline void finish_profile(NormProfile& prof) {
  prof.growth_so_far.clear();
  for (std::size_t k = 1; k <= prof.log_values.size(); ++k)
    prof.growth_so_far.push_back(
        classify_growth(std::span(prof.log_values).first(k), std::span(prof.log_increments).first(k),
                        prof.refinement));
  prof.growth = prof.growth_so_far.empty() ? Growth::Inconclusive : prof.growth_so_far.back();
}

inline double refinement_of(const std::vector<double>& gaps) {
  if (gaps.size() < 2) return 10.0;
  return gaps[gaps.size() - 2] / gaps.back();
}

inline void check_refining(const std::vector<double>& gaps) {
  require(!gaps.empty(), ErrorCode::TooFewPoints, "profile needs at least one truncation");
  for (std::size_t k = 0; k < gaps.size(); ++k) {
    require(gaps[k] > 0.0 && gaps[k] < 1.0, ErrorCode::InvalidArgument,
            "truncations must lie inside the disk");
    if (k > 0)
      require(gaps[k] < gaps[k - 1], ErrorCode::InvalidArgument, "truncations must refine");
  }
}

// Area-integral profile: value at delta_k is the running sum of annuli
// 1 - delta_{k-1} <= |z| <= 1 - delta_k, so increments are integrated
// directly instead of by cancellation.
template <class LogF>
NormProfile area_profile(LogF&& log_f, const std::vector<double>& deltas) {
  check_refining(deltas);
  NormProfile prof;
  prof.kind = TruncationKind::Delta;
  prof.parameters = deltas;
  prof.refinement = refinement_of(deltas);
  double inner = 0.0;
  double total = -std::numeric_limits<double>::infinity();
  for (double delta : deltas) {
    const double outer = 1.0 - delta;
    const double piece = log_polar_integral(log_f, inner, outer);
    total = quad::log_add(total, piece);
    prof.log_values.push_back(total);
    prof.log_increments.push_back(piece);
    inner = outer;
  }
  finish_profile(prof);
  return prof;
}

}  // namespace norms

/// Hardy means at radii r_k (1 - r_k refining geometrically).
inline NormProfile hardy_profile(const CatalogFunction& f, double p,
                                 const std::vector<double>& radii = norms::default_radii()) {
  norms::check_exponent(p);
  std::vector<double> gaps;
  for (double r : radii) gaps.push_back(1.0 - r);
  norms::check_refining(gaps);
  NormProfile prof;
  prof.kind = TruncationKind::Radius;
  prof.parameters = radii;
  prof.refinement = norms::refinement_of(gaps);
  for (std::size_t k = 0; k < radii.size(); ++k) {
    prof.log_values.push_back(log_hardy_mean(f, p, radii[k]));
    if (k == 0) {
      prof.log_increments.push_back(prof.log_values.back());
      continue;
    }
    // Once a ratio exceeds double range the growth rule has already fired.
    if (prof.log_values[k] > 600.0) {
      prof.log_increments.push_back(prof.log_values[k]);
      continue;
    }
    const double r0 = radii[k - 1], r1 = radii[k];
    auto diff = [&](double t) {
      return std::exp(p * f.log_abs_value(std::polar(r1, t))) -
             std::exp(p * f.log_abs_value(std::polar(r0, t)));
    };
    const double s = std::max((1.0 - r1) * (1.0 - r1), 1e-15);
    const auto breaks = quad::graded_breaks(0.0, std::numbers::pi, s, s);
    const double inc = 2.0 * quad::integrate_pieces(diff, breaks, norms::kMeanTol).value;
    prof.log_increments.push_back(inc > 0.0 ? std::log(inc)
                                            : -std::numeric_limits<double>::infinity());
  }
  norms::finish_profile(prof);
  return prof;
}

inline NormProfile bergman_profile(const CatalogFunction& f, double p, double alpha,
                                   const std::vector<double>& deltas = norms::default_deltas()) {
  norms::check_exponent(p);
  norms::check_weight(alpha);
  return norms::area_profile(norms::bergman_log_integrand(f, p, alpha), deltas);
}

inline NormProfile yamashita_profile(const CatalogFunction& f, double p,
                                     const std::vector<double>& deltas = norms::default_deltas(),
                                     std::optional<double> alpha = std::nullopt) {
  norms::check_exponent(p);
  norms::check_area_integrand(f, p);
  return norms::area_profile(norms::area_log_integrand(f, p, norms::area_power(alpha)), deltas);
}

struct ChangeOfVariable {
  double lhs;  // int over |z| <= 1-delta of |f|^(p-2) |f'|^2 log(1/|z|) dA(z)
  double rhs;  // int over f({|z| <= 1-delta}) of |w|^(p-2) g_D(f(0), w) dA(w)
};

namespace norms {

// Largest angle of the image domain seen from the origin along the
// positive real axis.
inline double half_opening(const DomainSpec& d) {
  if (std::holds_alternative<HalfPlane>(d.shape())) return 0.5 * std::numbers::pi;
  if (const auto* s = std::get_if<Sector>(&d.shape())) return 0.5 * s->opening;
  fail(ErrorCode::UnsupportedImage, "change of variable needs a half-plane or sector image");
}

template <class F>
double bracketed_root(F&& f, double lo, double hi) {
  std::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      f, lo, hi, boost::math::tools::eps_tolerance<double>(50), iters);
  return 0.5 * (a + b);
}

}  // namespace norms

/// For a univalent f, g_D(f(0), f(z)) = log(1/|z|), so both sides integrate
/// the same quantity over the same region: lhs on the disk, rhs over the
/// image using only the closed-form Green's function.
inline ChangeOfVariable change_of_variable_check(const CatalogFunction& f, double p, double delta) {
  norms::check_exponent(p);
  norms::check_delta(delta);
  const auto image = f.image_domain();
  require(f.univalent() && image.has_value() && !image->bounded(), ErrorCode::UnsupportedImage,
          "needs a univalent map onto an unbounded domain with a closed-form Green's function");
  const DomainSpec& dom = *image;
  const double phi_edge = norms::half_opening(dom);
  const PlanePoint pole = dom.basepoint();
  require(pole.imag() == 0.0 && pole.real() > 0.0, ErrorCode::UnsupportedImage,
          "image basepoint must lie on the positive real axis");
  const double a = pole.real();

  ChangeOfVariable out{};
  out.lhs = yamashita_integral(f, p, delta);

  // Region: g >= level. g is symmetric in phi and decreasing on [0, phi_edge].
  const double level = -std::log1p(-delta);
  auto green = [&](double rho, double phi) { return exact_green(dom, std::polar(rho, phi)); };
  auto on_axis = [&](double rho) { return green(rho, 0.0) - level; };

  const double rho_lo = norms::bracketed_root(on_axis, a * 1e-300, a * (1.0 - 1e-15));
  double far = 2.0 * a;
  while (on_axis(far) > 0.0) far *= 2.0;
  const double rho_hi = norms::bracketed_root(on_axis, a * (1.0 + 1e-15), far);

  auto inner = [&](double rho) {
    const double g0 = green(rho, 0.0);
    if (!(g0 > level)) return 0.0;
    const double phi_max =
        norms::bracketed_root([&](double phi) { return green(rho, phi) - level; }, 0.0, phi_edge);
    const double s = std::max(std::abs(rho - a) / a, 1e-14);
    const auto breaks = quad::graded_breaks(0.0, phi_max, s, phi_max * 1e-6);
    auto g = [&](double phi) { return green(rho, phi); };
    return 2.0 * quad::integrate_pieces(g, breaks, 1e-11).value;
  };
  auto radial = [&](double rho) { return std::pow(rho, p - 1.0) * inner(rho); };

  std::vector<double> breaks = quad::graded_breaks(rho_lo, a, rho_lo * 1e-6, a * 1e-10);
  const auto upper = quad::graded_breaks(a, rho_hi, a * 1e-10, rho_hi * 1e-8);
  breaks.insert(breaks.end(), upper.begin() + 1, upper.end());
  out.rhs = quad::integrate_pieces(radial, breaks, 1e-9).value;
  return out;
}

struct ExponentBracket {
  double estimate = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  int inconclusive_probes = 0;
};

struct EmpiricalHB {
  ExponentBracket hardy;    // over p, H^p membership
  ExponentBracket bergman;  // over p at alpha = 0, already divided by 2
  double h_hat() const { return hardy.estimate; }
  double b_hat() const { return bergman.estimate; }
};

/// Bisection for sup{p in (0, ceiling] : probe(p) is Bounded}. Returns 0 when
/// no probe is bounded and +inf when the ceiling itself is bounded. An
/// inconclusive probe is retried at the quarter points; if those fail too the
/// search stops and the wider bracket is reported.
template <class Probe>
ExponentBracket bisect_exponent(Probe&& probe, double ceiling = norms::kExponentCeiling,
                                int depth = norms::kBisectionDepth) {
  ExponentBracket b;
  b.lo = 0.0;
  b.hi = ceiling;
  bool any_bounded = false;
  const Growth top = probe(ceiling);
  if (top == Growth::Bounded) {
    b.lo = ceiling;
    b.hi = std::numeric_limits<double>::infinity();
    b.estimate = std::numeric_limits<double>::infinity();
    return b;
  }
  for (int level = 0; level < depth; ++level) {
    const double width = b.hi - b.lo;
    double mid = b.lo + 0.5 * width;
    Growth g = probe(mid);
    if (g == Growth::Inconclusive) {
      ++b.inconclusive_probes;
      for (double shift : {-0.25 * width, 0.25 * width}) {
        mid = b.lo + 0.5 * width + shift;
        g = probe(mid);
        if (g != Growth::Inconclusive) break;
        ++b.inconclusive_probes;
      }
      if (g == Growth::Inconclusive) break;
    }
    if (g == Growth::Bounded) {
      b.lo = mid;
      any_bounded = true;
    } else {
      b.hi = mid;
    }
  }
  b.estimate = any_bounded ? 0.5 * (b.lo + b.hi) : 0.0;
  return b;
}

/// Empirical h(f) from Hardy-mean profiles and b(f) from unweighted Bergman
/// profiles (sup p / 2 at alpha = 0).
inline EmpiricalHB empirical_hb(const CatalogFunction& f) {
  EmpiricalHB out;
  out.hardy = bisect_exponent([&](double p) { return hardy_profile(f, p).growth; });
  ExponentBracket area = bisect_exponent([&](double p) { return bergman_profile(f, p, 0.0).growth; });
  area.estimate *= 0.5;
  area.lo *= 0.5;
  area.hi *= 0.5;
  out.bergman = area;
  return out;
}

}  // namespace hbn
