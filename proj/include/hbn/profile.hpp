#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "hbn/errors.hpp"
#include "hbn/geometry.hpp"

namespace hbn {

enum class ProfileSource { Oracle, MonteCarlo, Synthetic };

struct ProfileEntry {
  double r;
  double omega;
  double std_error;
};

/// omega(r) = harmonic measure of E_r seen from the basepoint, on a radius grid.
struct DecayProfile {
  std::vector<ProfileEntry> entries;
  ProfileSource source = ProfileSource::Synthetic;

  std::size_t size() const { return entries.size(); }
};

/// Geometric radius grid r_k = r0 * ratio^k, k = 0..count-1.
struct RadiusGrid {
  double r0 = 2.0;
  double ratio = 2.0;
  int count = 13;

  std::vector<double> radii() const {
    require(std::isfinite(r0) && r0 > 0.0, ErrorCode::InvalidArgument, "grid r0 must be positive");
    require(std::isfinite(ratio) && ratio > 1.0, ErrorCode::InvalidArgument,
            "grid ratio must exceed 1");
    require(count >= 2, ErrorCode::InvalidArgument, "grid needs at least two radii");
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) out[static_cast<std::size_t>(k)] = r0 * std::pow(ratio, k);
    return out;
  }
};

/// r0 = 2 max(1, |a|), doubling, 13 radii.
inline RadiusGrid default_grid(const DomainSpec& d) {
  return RadiusGrid{2.0 * std::max(1.0, std::abs(d.basepoint())), 2.0, 13};
}

inline void require_increasing_radii(const std::vector<double>& radii) {
  require(!radii.empty(), ErrorCode::TooFewPoints, "radius grid is empty");
  for (std::size_t k = 0; k < radii.size(); ++k) {
    require(std::isfinite(radii[k]) && radii[k] > 0.0, ErrorCode::InvalidArgument,
            "grid radii must be positive and finite");
    if (k > 0)
      require(radii[k] > radii[k - 1], ErrorCode::InvalidArgument,
              "grid radii must be strictly increasing");
  }
}

/// Exact power law omega = c * r^-q on the given radii.
inline DecayProfile power_law_profile(const std::vector<double>& radii, double c, double q) {
  DecayProfile p;
  p.source = ProfileSource::Synthetic;
  for (double r : radii) p.entries.push_back({r, c * std::pow(r, -q), 0.0});
  return p;
}

}  // namespace hbn
