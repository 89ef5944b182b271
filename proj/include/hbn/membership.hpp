#pragma once
// H^p and A^p_alpha membership of the covering map of D from the decay of
// omega(r) = omega_D(a, E_r).
//
// Hardy:   f in H^p  iff  int t^(p-1) omega(t) dt < inf; with omega ~ C t^-q
//          that is p < q.
// Bergman: membership forces omega(r) <= C r^(-p/(alpha+2)), so p/(alpha+2) > q
//          rules it out; p/(alpha+2) < q = h(D) = b(D) gives membership via
//          H^q0 in A^p_alpha for p/(alpha+2) <= q0 <= p.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hbn/errors.hpp"
#include "hbn/profile.hpp"

namespace hbn {

struct DecayFit {
  double exponent = 0.0;       // q
  double log_intercept = 0.0;  // b in log(1/omega) = b + q log r
  double residual = 0.0;       // max |log-space deviation|
  std::pair<double, double> fit_range{0.0, 0.0};

  double omega_at(double r) const { return std::exp(-log_intercept - exponent * std::log(r)); }
};

struct MembershipQuery {
  double p;
  std::optional<double> alpha;

  void validate() const {
    require(std::isfinite(p) && p > 0.0, ErrorCode::InvalidArgument, "p must be positive");
    require(!alpha || (std::isfinite(*alpha) && *alpha > -1.0), ErrorCode::InvalidArgument,
            "alpha must exceed -1");
  }
  /// p for Hardy queries, p/(alpha+2) for Bergman queries.
  double ratio() const { return alpha ? p / (*alpha + 2.0) : p; }
};

enum class Verdict { Member, NotMember, Inconclusive };
enum class Rationale { DecaySufficient, IntegralDiverges, NearCritical, EmbeddingSufficient };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Member: return "member";
    case Verdict::NotMember: return "not_member";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

inline std::string to_string(Rationale r) {
  switch (r) {
    case Rationale::DecaySufficient: return "decay_sufficient";
    case Rationale::IntegralDiverges: return "integral_diverges";
    case Rationale::NearCritical: return "near_critical";
    case Rationale::EmbeddingSufficient: return "embedding_sufficient";
  }
  return "unknown";
}

struct MembershipVerdict {
  Verdict verdict = Verdict::Inconclusive;
  double margin = 0.0;
  Rationale rationale = Rationale::NearCritical;
  double critical_ratio = 0.0;  // fitted q
  double query_ratio = 0.0;     // p or p/(alpha+2)
  /// Bergman queries: whether int r^(p-1) omega^(alpha+2) dr converges under the fit.
  std::optional<bool> integral_converges;
};

inline constexpr double kDefaultMargin = 0.05;

/// Least-squares line through (log r, log 1/omega) over the last
/// tail_window + 1 entries.
inline DecayFit fit_decay(const DecayProfile& p, int tail_window) {
  require(tail_window >= 1, ErrorCode::InvalidArgument, "tail window must be >= 1");
  require(p.size() >= 2, ErrorCode::TooFewPoints, "fit needs at least two entries");
  const std::size_t take = std::min(p.size(), static_cast<std::size_t>(tail_window) + 1);
  const std::size_t first = p.size() - take;
  std::vector<double> xs, ys;
  for (std::size_t k = first; k < p.size(); ++k) {
    const auto& e = p.entries[k];
    require(e.omega > 0.0, ErrorCode::ZeroMeasure, "omega vanishes inside the fit window");
    xs.push_back(std::log(e.r));
    ys.push_back(-std::log(e.omega));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  DecayFit fit;
  fit.exponent = sxy / sxx;
  fit.log_intercept = my - fit.exponent * mx;
  for (std::size_t i = 0; i < xs.size(); ++i)
    fit.residual =
        std::max(fit.residual, std::abs(ys[i] - fit.log_intercept - fit.exponent * xs[i]));
  fit.fit_range = {p.entries[first].r, p.entries.back().r};
  return fit;
}

namespace detail {

inline Verdict compare_ratio(double query, double critical, double margin) {
  if (query < critical - margin) return Verdict::Member;
  if (query > critical + margin) return Verdict::NotMember;
  return Verdict::Inconclusive;
}

}  // namespace detail

inline MembershipVerdict classify_hardy(const DecayFit& fit, const MembershipQuery& query,
                                        double margin = kDefaultMargin) {
  query.validate();
  require(!query.alpha, ErrorCode::InvalidArgument, "Hardy queries carry no alpha");
  require(margin >= 0.0, ErrorCode::InvalidArgument, "margin must be >= 0");
  MembershipVerdict v;
  v.margin = margin;
  v.critical_ratio = fit.exponent;
  v.query_ratio = query.p;
  v.verdict = detail::compare_ratio(query.p, fit.exponent, margin);
  v.rationale = v.verdict == Verdict::Member      ? Rationale::DecaySufficient
                : v.verdict == Verdict::NotMember ? Rationale::IntegralDiverges
                                                  : Rationale::NearCritical;
  return v;
}

inline MembershipVerdict classify_bergman(const DecayFit& fit, const MembershipQuery& query,
                                          double margin = kDefaultMargin) {
  query.validate();
  require(query.alpha.has_value(), ErrorCode::InvalidArgument, "Bergman queries need alpha");
  require(margin >= 0.0, ErrorCode::InvalidArgument, "margin must be >= 0");
  const double beta = *query.alpha + 2.0;
  MembershipVerdict v;
  v.margin = margin;
  v.critical_ratio = fit.exponent;
  v.query_ratio = query.p / beta;
  v.verdict = detail::compare_ratio(v.query_ratio, fit.exponent, margin);
  // r^(p-1) (C r^-q)^(alpha+2) is integrable at infinity iff p < q (alpha+2).
  v.integral_converges = query.p < fit.exponent * beta;
  // The integral condition is only necessary, so membership is argued
  // through the Hardy-space embedding, never through the integral alone.
  v.rationale = v.verdict == Verdict::Member      ? Rationale::EmbeddingSufficient
                : v.verdict == Verdict::NotMember ? Rationale::IntegralDiverges
                                                  : Rationale::NearCritical;
  return v;
}

struct CriterionIntegral {
  double truncated = 0.0;  // trapezoid over the profile
  double tail = 0.0;       // fitted power-law tail beyond the last radius
  bool divergent = false;
  int skipped_zero_entries = 0;

  double value() const { return divergent ? std::numeric_limits<double>::infinity() : truncated + tail; }
};

/// int t^(p-1) omega(t)^beta dt, beta = 1 (Hardy) or alpha + 2 (Bergman):
/// trapezoid over the profile plus a power-law tail from the decay fit.
/// Convergence is decided by the fitted exponent, never by the truncation.
inline CriterionIntegral criterion_integral(const DecayProfile& p, const MembershipQuery& query,
                                            int tail_window = 4) {
  query.validate();
  require(p.size() >= 2, ErrorCode::TooFewPoints, "criterion integral needs two entries");
  const double beta = query.alpha ? *query.alpha + 2.0 : 1.0;
  CriterionIntegral out;

  std::vector<ProfileEntry> positive;
  for (const auto& e : p.entries) {
    if (e.omega > 0.0)
      positive.push_back(e);
    else
      ++out.skipped_zero_entries;
  }
  auto integrand = [&](const ProfileEntry& e) {
    return std::pow(e.r, query.p - 1.0) * std::pow(e.omega, beta);
  };
  for (std::size_t k = 0; k + 1 < positive.size(); ++k)
    out.truncated += 0.5 * (positive[k + 1].r - positive[k].r) *
                     (integrand(positive[k]) + integrand(positive[k + 1]));

  // A vanishing tail contributes nothing beyond the last radius.
  if (p.entries.back().omega <= 0.0) return out;

  DecayProfile pos;
  pos.entries = positive;
  const DecayFit fit = fit_decay(pos, tail_window);
  const double power = query.p - fit.exponent * beta;
  if (power >= -1e-9 * std::max(1.0, query.p)) {
    out.divergent = true;
    return out;
  }
  const double r_max = p.entries.back().r;
  out.tail = std::exp(-beta * fit.log_intercept) * std::pow(r_max, power) / (-power);
  return out;
}

}  // namespace hbn
