#pragma once
// Hardy number h(D) (= Bergman number b(D) for regular domains) as the
// liminf of log(1/omega(r)) / log r, approximated by the smallest local
// slope over the trailing window of a geometric radius grid.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hbn/errors.hpp"
#include "hbn/geometry.hpp"
#include "hbn/profile.hpp"

namespace hbn {

enum class EstimateWarning { NonRegularDomain, ZeroMeasureTail, BoundedDomain };

inline std::string to_string(EstimateWarning w) {
  switch (w) {
    case EstimateWarning::NonRegularDomain: return "non_regular_domain";
    case EstimateWarning::ZeroMeasureTail: return "zero_measure_tail";
    case EstimateWarning::BoundedDomain: return "bounded_domain";
  }
  return "unknown";
}

/// Domain facts the estimator needs to interpret omega = 0.
struct DomainTraits {
  bool regular = true;
  bool bounded = false;

  static DomainTraits of(const DomainSpec& d) { return {d.regular(), d.bounded()}; }
};

struct HardyNumberEstimate {
  /// +infinity is the marker for omega vanishing at a finite radius.
  double value = 0.0;
  std::vector<double> local_slopes;
  int tail_window = 4;
  double ci_halfwidth = 0.0;
  std::vector<EstimateWarning> warnings;

  bool is_infinite() const { return std::isinf(value); }
  bool has_warning(EstimateWarning w) const {
    return std::find(warnings.begin(), warnings.end(), w) != warnings.end();
  }
};

inline constexpr int kDefaultTailWindow = 4;

/// s_k = [log(1/w_{k+1}) - log(1/w_k)] / [log r_{k+1} - log r_k].
inline std::vector<double> local_slopes(const DecayProfile& p) {
  require(p.size() >= 2, ErrorCode::TooFewPoints, "local slopes need at least two entries");
  for (const auto& e : p.entries)
    require(e.omega > 0.0, ErrorCode::ZeroMeasure, "omega vanishes at r = " + std::to_string(e.r));
  std::vector<double> slopes;
  slopes.reserve(p.size() - 1);
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    const auto& lo = p.entries[k];
    const auto& hi = p.entries[k + 1];
    slopes.push_back((std::log(lo.omega) - std::log(hi.omega)) / (std::log(hi.r) - std::log(lo.r)));
  }
  return slopes;
}

inline HardyNumberEstimate estimate_hardy_number(const DecayProfile& p, int tail_window,
                                                 const DomainTraits& traits = {}) {
  require(tail_window >= 1, ErrorCode::InvalidArgument, "tail window must be >= 1");
  require(p.size() >= static_cast<std::size_t>(tail_window) + 1, ErrorCode::TooFewPoints,
          "profile shorter than tail window + 1");

  HardyNumberEstimate est;
  est.tail_window = tail_window;

  const auto zero = std::find_if(p.entries.begin(), p.entries.end(),
                                 [](const ProfileEntry& e) { return e.omega <= 0.0; });
  if (zero != p.entries.end()) {
    DecayProfile head;
    head.entries.assign(p.entries.begin(), zero);
    if (head.size() >= 2) est.local_slopes = local_slopes(head);
    est.value = std::numeric_limits<double>::infinity();
    est.ci_halfwidth = 0.0;
    est.warnings.push_back(EstimateWarning::ZeroMeasureTail);
    if (!traits.regular) est.warnings.push_back(EstimateWarning::NonRegularDomain);
    if (traits.bounded) est.warnings.push_back(EstimateWarning::BoundedDomain);
    return est;
  }

  est.local_slopes = local_slopes(p);
  const std::size_t n = est.local_slopes.size();
  const std::size_t first = n - static_cast<std::size_t>(tail_window);
  std::size_t argmin = first;
  for (std::size_t k = first; k < n; ++k)
    if (est.local_slopes[k] < est.local_slopes[argmin]) argmin = k;
  est.value = est.local_slopes[argmin];

  // d log(omega) = d omega / omega, combined over the two endpoints.
  const auto& lo = p.entries[argmin];
  const auto& hi = p.entries[argmin + 1];
  const double rel_lo = lo.std_error / lo.omega;
  const double rel_hi = hi.std_error / hi.omega;
  const double spacing = std::log(hi.r) - std::log(lo.r);
  est.ci_halfwidth = 1.96 * std::sqrt(rel_lo * rel_lo + rel_hi * rel_hi) / spacing;
  if (!traits.regular) est.warnings.push_back(EstimateWarning::NonRegularDomain);
  return est;
}

}  // namespace hbn
