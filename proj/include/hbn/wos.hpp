#pragma once
// Walk-on-spheres estimator of omega_D(a, E_r).
//
// Every walk draws from its own Philox stream keyed by (seed, stage, index)
// and outcomes are reduced in index order, so results are bit-identical for
// any number of threads.
//
// Profiles over a radius grid can be estimated three ways:
//   Independent     one batch of walks per radius,
//   SharedWalks     one batch, every absorbed walk scores all radii below
//                   the modulus of its exit point,
//   LevelSplitting  fixed-effort multilevel splitting: stage s restarts
//                   n_samples weighted walks from the points where stage s-1
//                   walks first reached |z| >= r_s. Tail probabilities far
//                   out (omega ~ 1e-8 for a quarter plane at r = 8192) stay
//                   resolvable with the same per-radius budget.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hbn/errors.hpp"
#include "hbn/geometry.hpp"
#include "hbn/philox.hpp"
#include "hbn/profile.hpp"

namespace hbn {

enum class ProfileMethod { Independent, SharedWalks, LevelSplitting };

struct WosConfig {
  /// Absorption shell thickness; defaults to 1e-6 * max(1, |a|).
  std::optional<double> epsilon;
  std::uint64_t max_steps = 1'000'000;
  std::uint64_t seed = 1;
  std::uint64_t n_samples = 10'000;

  double effective_epsilon(const DomainSpec& d) const {
    return epsilon.value_or(1e-6 * std::max(1.0, std::abs(d.basepoint())));
  }

  void validate() const {
    require(!epsilon || (std::isfinite(*epsilon) && *epsilon > 0.0), ErrorCode::InvalidArgument,
            "epsilon must be positive");
    require(max_steps >= 1, ErrorCode::InvalidArgument, "max_steps must be >= 1");
    require(n_samples >= 1, ErrorCode::InvalidArgument, "n_samples must be >= 1");
  }
};

struct HmEstimate {
  double r = 0.0;
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t n_unterminated = 0;

  double unterminated_fraction() const {
    return n_samples == 0 ? 0.0 : static_cast<double>(n_unterminated) / static_cast<double>(n_samples);
  }
  bool reliable() const { return unterminated_fraction() <= 0.01; }
};

enum class WalkEnd : std::uint8_t { Absorbed, Crossed, Unterminated };

struct WalkOutcome {
  WalkEnd end = WalkEnd::Unterminated;
  PlanePoint position{};
  /// |nearest boundary point| for absorbed walks.
  double exit_modulus = 0.0;
};

/// One walk from `start`: absorbed once the distance to the boundary drops
/// below eps, crossed once |z| >= crossing_radius. Returns nullopt when the
/// domain reports an infinite distance at the start (empty boundary).
inline std::optional<WalkOutcome> walk_on_spheres(const DomainSpec& d, PlanePoint start, double eps,
                                                  std::uint64_t max_steps, double crossing_radius,
                                                  CounterStream& rng) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  PlanePoint z = start;
  for (std::uint64_t step = 0; step < max_steps; ++step) {
    // Escaped past double range: treated like a walk that never ended.
    if (!is_finite(z)) return WalkOutcome{WalkEnd::Unterminated, z, 0.0};
    const double dist = distance_or_zero(d, z);
    if (!std::isfinite(dist)) {
      if (step == 0) return std::nullopt;
      return WalkOutcome{WalkEnd::Unterminated, z, 0.0};
    }
    if (dist < eps) {
      return WalkOutcome{WalkEnd::Absorbed, z, std::abs(nearest_boundary_point(d, z))};
    }
    if (std::abs(z) >= crossing_radius) return WalkOutcome{WalkEnd::Crossed, z, 0.0};
    const double angle = two_pi * rng.uniform();
    z += std::polar(dist, angle);
  }
  return WalkOutcome{WalkEnd::Unterminated, z, 0.0};
}

namespace detail {

struct Walker {
  PlanePoint z;
  double weight;
};

struct StageTally {
  double mass = 0.0;           // total entrance weight W_s
  double cross_fraction = 0.0;  // p_s
  std::vector<double> tail_fraction;  // A_{s,k}
  double terminated = 0.0;     // N_s
};

// Runs `count` walks of one stage; walk i starts from entrances[i % M] with
// an equal share of that entrance's weight.
inline std::vector<WalkOutcome> run_stage(const DomainSpec& d, const std::vector<Walker>& entrances,
                                          std::uint64_t count, std::uint32_t stage,
                                          double crossing_radius, const WosConfig& cfg,
                                          double eps) {
  std::vector<WalkOutcome> out(count);
  const std::uint64_t m = entrances.size();
  std::atomic<bool> degenerate{false};
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) {
    if (degenerate.load(std::memory_order_relaxed)) continue;
    const auto idx = static_cast<std::uint64_t>(i);
    CounterStream rng(cfg.seed, stage, idx);
    const auto res =
        walk_on_spheres(d, entrances[idx % m].z, eps, cfg.max_steps, crossing_radius, rng);
    if (!res) {
      degenerate.store(true, std::memory_order_relaxed);
      continue;
    }
    out[idx] = *res;
  }
  require(!degenerate.load(), ErrorCode::DegenerateDomain,
          "boundary distance is infinite: the domain has no boundary");
  return out;
}

// Core estimator. With `split` false there is a single stage of n_samples
// walks from the basepoint (the plain shared-walk estimator).
inline std::vector<HmEstimate> staged_estimate(const DomainSpec& d, const std::vector<double>& radii,
                                               const WosConfig& cfg, bool split) {
  cfg.validate();
  require(contains(d, d.basepoint()), ErrorCode::BasepointOutsideDomain,
          "basepoint is not inside the domain");
  const double eps = cfg.effective_epsilon(d);
  const std::size_t nr = radii.size();
  const std::uint64_t n = cfg.n_samples;
  constexpr double inf = std::numeric_limits<double>::infinity();

  std::vector<Walker> entrances{{d.basepoint(), 1.0}};
  std::vector<StageTally> stages;
  std::uint64_t total_walks = 0;
  std::uint64_t total_unterminated = 0;
  const std::size_t n_stages = split ? nr : 1;

  for (std::size_t s = 0; s < n_stages && !entrances.empty(); ++s) {
    const double crossing = (split && s + 1 < nr) ? radii[s + 1] : inf;
    const auto outcomes =
        run_stage(d, entrances, n, static_cast<std::uint32_t>(s), crossing, cfg, eps);

    const std::uint64_t m = entrances.size();
    std::vector<std::uint64_t> share(m, n / m);
    for (std::uint64_t j = 0; j < n % m; ++j) ++share[j];

    StageTally tally;
    tally.tail_fraction.assign(nr, 0.0);
    for (const auto& e : entrances) tally.mass += e.weight;

    double terminated_weight = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
      if (outcomes[i].end == WalkEnd::Unterminated) {
        ++total_unterminated;
        continue;
      }
      tally.terminated += 1.0;
      terminated_weight += entrances[i % m].weight / static_cast<double>(share[i % m]);
    }
    total_walks += n;
    if (terminated_weight <= 0.0) {
      stages.push_back(std::move(tally));
      break;
    }
    // Unterminated walks leave the denominator: their weight is spread over
    // the terminated ones.
    const double rescale = tally.mass / terminated_weight;

    std::vector<Walker> next;
    double crossed_weight = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
      const auto& o = outcomes[i];
      if (o.end == WalkEnd::Unterminated) continue;
      const double w = rescale * entrances[i % m].weight / static_cast<double>(share[i % m]);
      if (o.end == WalkEnd::Crossed) {
        crossed_weight += w;
        next.push_back({o.position, w});
        continue;
      }
      for (std::size_t k = 0; k < nr && o.exit_modulus > radii[k]; ++k) tally.tail_fraction[k] += w;
    }
    for (auto& a : tally.tail_fraction) a /= tally.mass;
    tally.cross_fraction = crossed_weight / tally.mass;
    stages.push_back(std::move(tally));
    entrances = std::move(next);
  }

  std::vector<HmEstimate> result(nr);
  for (std::size_t k = 0; k < nr; ++k) {
    double omega = 0.0;
    for (const auto& st : stages) omega += st.mass * st.tail_fraction[k];
    // Delta-method variance over stages; within a stage the outcomes are
    // multinomial (tail hit / crossed / other).
    double var = 0.0;
    double downstream = omega;
    for (const auto& st : stages) {
      downstream -= st.mass * st.tail_fraction[k];
      if (st.terminated <= 0.0) continue;
      const double a = st.tail_fraction[k];
      const double p = st.cross_fraction;
      const double g = p > 0.0 ? std::max(downstream, 0.0) / p : 0.0;
      const double v = st.mass * st.mass * a * (1.0 - a) + g * g * p * (1.0 - p) -
                       2.0 * st.mass * g * a * p;
      var += std::max(v, 0.0) / st.terminated;
    }
    result[k] = HmEstimate{radii[k], std::clamp(omega, 0.0, 1.0), std::sqrt(var), total_walks,
                           total_unterminated};
  }
  return result;
}

}  // namespace detail

/// Plain frequency estimate of omega_D(a, E_r) with binomial standard error.
inline HmEstimate estimate_hm(const DomainSpec& d, const TailQuery& q, const WosConfig& cfg) {
  return detail::staged_estimate(d, {q.r}, cfg, false).front();
}

inline std::vector<HmEstimate> estimate_profile(const DomainSpec& d, const std::vector<double>& radii,
                                                const WosConfig& cfg,
                                                ProfileMethod method = ProfileMethod::LevelSplitting) {
  require_increasing_radii(radii);
  switch (method) {
    case ProfileMethod::SharedWalks:
      return detail::staged_estimate(d, radii, cfg, false);
    case ProfileMethod::LevelSplitting:
      return detail::staged_estimate(d, radii, cfg, true);
    case ProfileMethod::Independent: {
      std::vector<HmEstimate> out;
      for (std::size_t k = 0; k < radii.size(); ++k) {
        WosConfig per = cfg;
        per.seed = cfg.seed + k;
        out.push_back(estimate_hm(d, TailQuery(radii[k]), per));
      }
      return out;
    }
  }
  return {};
}

inline DecayProfile make_profile(const std::vector<HmEstimate>& estimates) {
  DecayProfile p;
  p.source = ProfileSource::MonteCarlo;
  for (const auto& e : estimates) p.entries.push_back({e.r, e.value, e.std_error});
  return p;
}

inline std::string to_string(ProfileMethod m) {
  switch (m) {
    case ProfileMethod::Independent: return "independent";
    case ProfileMethod::SharedWalks: return "shared";
    case ProfileMethod::LevelSplitting: return "splitting";
  }
  return "unknown";
}

}  // namespace hbn
