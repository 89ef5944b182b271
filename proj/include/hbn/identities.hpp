#pragma once
// Numerical checks of the relations between harmonic measure and Green's
// function used in the membership arguments, evaluated on closed-form models:
//
//   int_r^inf omega(t) dt/t = (1/2pi) int g(a, r e^it) dt          (r >= |a|)
//   int_{|a|}^inf r^(p-1) int g dt dr
//       = (2pi/p) int_{|a|}^inf omega(t) t^(p-1) (1 - |a|^p/t^p) dt
//   ((1/2pi) int g)^(alpha+2) <= (1/2pi) int g^(alpha+2)
//   int g(a, r e^it) dt >= 2pi log 2 omega(2r)

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "hbn/errors.hpp"
#include "hbn/geometry.hpp"
#include "hbn/oracles.hpp"
#include "hbn/quadrature.hpp"

namespace hbn {

/// Pole, tail measure and Green's function of one domain.
struct OracleModel {
  std::string name;
  PlanePoint pole{1.0, 0.0};
  std::function<double(double)> omega;
  std::function<double(PlanePoint)> green;
  /// omega(t) ~ C t^-q; +inf when omega vanishes beyond some radius.
  double decay_exponent = std::numeric_limits<double>::infinity();
  /// Radii where omega jumps.
  std::vector<double> radial_breaks;

  static OracleModel from_domain(const DomainSpec& d) {
    OracleModel m;
    m.name = shape_name(d);
    m.pole = d.basepoint();
    m.decay_exponent = exact_decay_exponent(d);
    // Probe both oracles so unsupported shapes fail here, not mid-quadrature.
    exact_hm(d, 2.0 * std::abs(m.pole) + 1.0);
    exact_green(d, m.pole * 2.0 + PlanePoint(1.0, 0.0));
    m.omega = [d](double t) { return exact_hm(d, t); };
    m.green = [d](PlanePoint w) { return exact_green(d, w); };
    if (const auto* disk = std::get_if<Disk>(&d.shape())) m.radial_breaks.push_back(disk->radius);
    if (const auto* ext = std::get_if<DiskExterior>(&d.shape()))
      m.radial_breaks.push_back(ext->radius);
    return m;
  }

  static OracleModel synthetic(std::string name, std::function<double(double)> omega,
                               std::function<double(PlanePoint)> green, double decay_exponent,
                               PlanePoint pole = {1.0, 0.0}) {
    OracleModel m;
    m.name = std::move(name);
    m.pole = pole;
    m.omega = std::move(omega);
    m.green = std::move(green);
    m.decay_exponent = decay_exponent;
    return m;
  }
};

enum class CheckKind { Equality, Inequality };

struct IdentityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  /// Equalities: |lhs - rhs| / max(|lhs|, |rhs|). Inequalities: the
  /// normalized slack, negative when violated.
  double relative_error = 0.0;
  double tolerance = 0.0;
  CheckKind kind = CheckKind::Equality;
  bool pass = false;
  /// Free-form parameters, e.g. "r=4 alpha=0".
  std::string parameters;
};

namespace identity_detail {

inline constexpr double kEqualityTol = 1e-3;
inline constexpr double kFubiniTol = 1e-2;
inline constexpr double kInequalityTol = 1e-9;
inline constexpr double kDerivativeTol = 1e-2;
inline constexpr double kQuadTol = 1e-11;
inline constexpr double kTruncationFactor = 1e6;
inline constexpr int kSupportSamples = 4096;

inline double relative_gap(double lhs, double rhs) {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
}

inline IdentityReport equality(std::string name, double lhs, double rhs, double tol,
                               std::string params) {
  IdentityReport rep{std::move(name), lhs, rhs, relative_gap(lhs, rhs), tol,
                     CheckKind::Equality, false, std::move(params)};
  rep.pass = std::isfinite(rep.relative_error) && rep.relative_error <= tol;
  return rep;
}

// Reports small <= large.
inline IdentityReport inequality(std::string name, double small, double large, double lhs,
                                 double rhs, std::string params) {
  const double slack = large == 0.0 ? (small <= 0.0 ? 0.0 : -1.0) : (large - small) / std::abs(large);
  IdentityReport rep{std::move(name), lhs, rhs, slack, kInequalityTol,
                     CheckKind::Inequality, false, std::move(params)};
  rep.pass = std::isfinite(slack) && slack >= -kInequalityTol;
  return rep;
}

inline std::string fmt(const char* key, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s=%.17g", key, v);
  return buf;
}

// Angles on [c - pi, c + pi] where the circle |w| = r enters or leaves the
// support of g, located by sampling and bisection.
inline std::vector<double> support_crossings(const OracleModel& m, double r, double center) {
  std::vector<double> out;
  auto inside = [&](double t) { return m.green(std::polar(r, t)) > 0.0; };
  const double step = 2.0 * std::numbers::pi / kSupportSamples;
  double prev_t = center - std::numbers::pi;
  bool prev = inside(prev_t);
  for (int i = 1; i <= kSupportSamples; ++i) {
    const double t = center - std::numbers::pi + i * step;
    const bool cur = inside(t);
    if (cur != prev) {
      double lo = prev_t, hi = t;
      for (int k = 0; k < 60; ++k) {
        const double mid = 0.5 * (lo + hi);
        (inside(mid) == prev ? lo : hi) = mid;
      }
      out.push_back(0.5 * (lo + hi));
    }
    prev = cur;
    prev_t = t;
  }
  return out;
}

}  // namespace identity_detail

/// (1/2pi) int_0^{2pi} g(a, r e^it)^power dt.
inline double circle_mean(const OracleModel& m, double r, double power = 1.0) {
  require(std::isfinite(r) && r > 0.0, ErrorCode::InvalidArgument, "radius must be positive");
  const double center = std::arg(m.pole);
  const double a = std::abs(m.pole);
  struct Special {
    double t;
    double scale;
  };
  std::vector<Special> specials{{center, std::max(0.25 * std::abs(r - a) / r, 1e-12)}};
  for (double t : identity_detail::support_crossings(m, r, center)) specials.push_back({t, 1e-9});
  std::sort(specials.begin(), specials.end(), [](auto& x, auto& y) { return x.t < y.t; });

  // Partition [c - pi, c + pi] at the special angles, grading towards each.
  std::vector<double> breaks{center - std::numbers::pi};
  double left_scale = 0.0;
  auto append = [&](double end, double end_scale) {
    const auto piece = quad::graded_breaks(breaks.back(), end, left_scale, end_scale);
    breaks.insert(breaks.end(), piece.begin() + 1, piece.end());
  };
  for (const auto& s : specials) {
    if (s.t <= breaks.back()) continue;
    append(s.t, s.scale);
    left_scale = s.scale;
  }
  append(center + std::numbers::pi, 0.0);

  auto f = [&](double t) {
    const double g = m.green(std::polar(r, t));
    return g > 0.0 ? std::pow(g, power) : 0.0;
  };
  return quad::integrate_pieces(f, breaks, identity_detail::kQuadTol).value /
         (2.0 * std::numbers::pi);
}

/// int_r^inf omega(t) dt / t: quadrature in log t up to r * 1e6, then the
/// power-law tail omega(R)/q from the model's decay exponent.
inline double omega_log_integral(const OracleModel& m, double r) {
  const double R = r * identity_detail::kTruncationFactor;
  std::vector<double> breaks{std::log(r)};
  for (double b : m.radial_breaks)
    if (b > r && b < R) breaks.push_back(std::log(b));
  breaks.push_back(std::log(R));
  std::vector<double> fine;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double n = std::ceil(breaks[i + 1] - breaks[i]);
    for (int k = 0; k < n; ++k) fine.push_back(breaks[i] + (breaks[i + 1] - breaks[i]) * k / n);
  }
  fine.push_back(breaks.back());
  auto f = [&](double u) { return m.omega(std::exp(u)); };
  double value = quad::integrate_pieces(f, fine, identity_detail::kQuadTol).value;
  if (std::isfinite(m.decay_exponent)) value += m.omega(R) / m.decay_exponent;
  return value;
}

inline IdentityReport baernstein_identity(const OracleModel& m, double r) {
  require(std::isfinite(r) && r > std::abs(m.pole), ErrorCode::InvalidArgument,
          "radius must exceed |a|");
  // g(a, infinity) = 0 for every model with an unbounded tail.
  const double lhs = omega_log_integral(m, r);
  const double rhs = circle_mean(m, r);
  return identity_detail::equality("baernstein_identity", lhs, rhs, identity_detail::kEqualityTol,
                                   m.name + " " + identity_detail::fmt("r", r));
}

inline IdentityReport baernstein_identity(const DomainSpec& d, double r) {
  return baernstein_identity(OracleModel::from_domain(d), r);
}

/// Differentiated form: d/dr int_0^{2pi} g(a, r e^it) dt = -2pi omega(r) / r.
inline IdentityReport baernstein_derivative(const OracleModel& m, double r) {
  require(std::isfinite(r) && r > std::abs(m.pole), ErrorCode::InvalidArgument,
          "radius must exceed |a|");
  const double h = 1e-3 * (r - std::abs(m.pole));
  const double two_pi = 2.0 * std::numbers::pi;
  // Fourth-order central difference.
  const double lhs = two_pi *
                     (-circle_mean(m, r + 2 * h) + 8 * circle_mean(m, r + h) -
                      8 * circle_mean(m, r - h) + circle_mean(m, r - 2 * h)) /
                     (12 * h);
  const double rhs = -two_pi * m.omega(r) / r;
  return identity_detail::equality("baernstein_derivative", lhs, rhs,
                                   identity_detail::kDerivativeTol,
                                   m.name + " " + identity_detail::fmt("r", r));
}

inline IdentityReport fubini_identity(const OracleModel& m, double p, double r_max) {
  require(std::isfinite(p) && p > 0.0, ErrorCode::InvalidArgument, "p must be positive");
  require(p < m.decay_exponent, ErrorCode::DivergentCase,
          "p is not below the decay exponent, both sides diverge");
  const double a = std::abs(m.pole);
  require(std::isfinite(r_max) && r_max > a, ErrorCode::InvalidArgument, "R_max must exceed |a|");
  const double q = m.decay_exponent;
  const double two_pi = 2.0 * std::numbers::pi;

  // Geometric partition of [|a|, R_max]; the circle mean has a logarithmic
  // kink at r = |a|.
  const double lo = a > 0.0 ? a : std::min(1.0, r_max) * 1e-6;
  std::vector<double> breaks = quad::graded_breaks(lo, std::min(2.0 * lo, r_max), lo * 1e-9, 0.0);
  for (double b = 2.0 * lo; b < r_max;) {
    b = std::min(2.0 * b, r_max);
    breaks.push_back(b);
  }
  for (double b : m.radial_breaks)
    if (b > lo && b < r_max) breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  auto lhs_f = [&](double r) { return std::pow(r, p - 1.0) * two_pi * circle_mean(m, r); };
  auto rhs_f = [&](double t) {
    return m.omega(t) * std::pow(t, p - 1.0) * (1.0 - std::pow(a / t, p));
  };
  double lhs = quad::integrate_pieces(lhs_f, breaks, 1e-9).value;
  double rhs = two_pi / p * quad::integrate_pieces(rhs_f, breaks, 1e-10).value;
  if (std::isfinite(q)) {
    // r^(p-1) * 2pi * mean(r) ~ C r^(p-1-q); omega(t) ~ C t^-q.
    lhs += two_pi * circle_mean(m, r_max) * std::pow(r_max, p) / (q - p);
    const double w = m.omega(r_max);
    rhs += two_pi / p * (w * std::pow(r_max, p) / (q - p) - std::pow(a, p) * w / q);
  }
  return identity_detail::equality(
      "fubini_identity", lhs, rhs, identity_detail::kFubiniTol,
      m.name + " " + identity_detail::fmt("p", p) + " " + identity_detail::fmt("R_max", r_max));
}

inline IdentityReport fubini_identity(const DomainSpec& d, double p, double r_max) {
  return fubini_identity(OracleModel::from_domain(d), p, r_max);
}

inline IdentityReport jensen_check(const OracleModel& m, double r, double alpha) {
  require(std::isfinite(alpha) && alpha > -1.0, ErrorCode::InvalidArgument, "alpha must exceed -1");
  const double power = alpha + 2.0;
  const double lhs = std::pow(circle_mean(m, r), power);
  const double rhs = circle_mean(m, r, power);
  return identity_detail::inequality(
      "jensen_check", lhs, rhs, lhs, rhs,
      m.name + " " + identity_detail::fmt("r", r) + " " + identity_detail::fmt("alpha", alpha));
}

inline IdentityReport jensen_check(const DomainSpec& d, double r, double alpha) {
  return jensen_check(OracleModel::from_domain(d), r, alpha);
}

inline IdentityReport tail_lower_bound(const OracleModel& m, double r) {
  const double lhs = 2.0 * std::numbers::pi * circle_mean(m, r);
  const double rhs = 2.0 * std::numbers::pi * std::log(2.0) * m.omega(2.0 * r);
  return identity_detail::inequality("tail_lower_bound", rhs, lhs, lhs, rhs,
                                     m.name + " " + identity_detail::fmt("r", r));
}

inline IdentityReport tail_lower_bound(const DomainSpec& d, double r) {
  return tail_lower_bound(OracleModel::from_domain(d), r);
}

struct SuiteConfig {
  std::vector<double> radii = {2, 4, 8, 16, 32, 64, 128, 256, 512, 1024};
  std::vector<double> alphas = {-0.5, 0.0, 1.0, 3.0};
  double fubini_p = 0.5;
  double fubini_r_max = 1e4;
};

/// Every check on the half-plane and the quarter-plane sector, basepoint 1.
inline std::vector<IdentityReport> run_identity_suite(const SuiteConfig& cfg = {}) {
  std::vector<IdentityReport> out;
  for (const DomainSpec& d : {DomainSpec::half_plane(), DomainSpec::sector(std::numbers::pi / 2)}) {
    const OracleModel m = OracleModel::from_domain(d);
    for (double r : cfg.radii) {
      out.push_back(baernstein_identity(m, r));
      out.push_back(baernstein_derivative(m, r));
      for (double alpha : cfg.alphas) out.push_back(jensen_check(m, r, alpha));
      out.push_back(tail_lower_bound(m, r));
    }
    out.push_back(fubini_identity(m, cfg.fubini_p, cfg.fubini_r_max));
  }
  return out;
}

inline bool all_pass(const std::vector<IdentityReport>& reports) {
  for (const auto& r : reports)
    if (!r.pass) return false;
  return true;
}

}  // namespace hbn
