#pragma once
// Explicit holomorphic maps of the unit disk used by the norm quadratures.
// All of them are real on the real axis, so |f(conj z)| = |f(z)|.

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>

#include "hbn/errors.hpp"
#include "hbn/geometry.hpp"

namespace hbn {

class CatalogFunction {
 public:
  enum class Kind { Cayley, SectorPower, ExpCayley, Identity };

  /// (1+z)/(1-z): the disk onto the right half-plane, f(0) = 1.
  static CatalogFunction cayley() { return CatalogFunction(Kind::Cayley, 1.0); }

  /// ((1+z)/(1-z))^beta: onto the sector of opening beta*pi for beta in (0, 2].
  static CatalogFunction sector_power(double beta) {
    require(std::isfinite(beta) && beta > 0.0, ErrorCode::InvalidArgument,
            "sector power exponent must be positive");
    return CatalogFunction(Kind::SectorPower, beta);
  }

  /// R exp((1+z)/(1-z)): maps the disk into {|w| > R}.
  static CatalogFunction exp_cayley(double scale) {
    require(std::isfinite(scale) && scale > 0.0, ErrorCode::InvalidArgument,
            "exp-Cayley scale must be positive");
    return CatalogFunction(Kind::ExpCayley, scale);
  }

  static CatalogFunction identity() { return CatalogFunction(Kind::Identity, 1.0); }

  Kind kind() const { return kind_; }
  double parameter() const { return param_; }

  std::string name() const {
    switch (kind_) {
      case Kind::Cayley: return "cayley";
      case Kind::SectorPower: return "sector_power:" + format_param();
      case Kind::ExpCayley: return "exp_cayley:" + format_param();
      case Kind::Identity: return "identity";
    }
    return "unknown";
  }

  PlanePoint value(PlanePoint z) const {
    switch (kind_) {
      case Kind::Cayley: return cayley_of(z);
      case Kind::SectorPower: return std::pow(cayley_of(z), param_);
      case Kind::ExpCayley: return param_ * std::exp(cayley_of(z));
      case Kind::Identity: return z;
    }
    return {};
  }

  PlanePoint derivative(PlanePoint z) const {
    const PlanePoint dc = 2.0 / ((1.0 - z) * (1.0 - z));
    switch (kind_) {
      case Kind::Cayley: return dc;
      case Kind::SectorPower: return param_ * std::pow(cayley_of(z), param_ - 1.0) * dc;
      case Kind::ExpCayley: return value(z) * dc;
      case Kind::Identity: return 1.0;
    }
    return {};
  }

  /// log|f(z)|, finite wherever |f| overflows.
  double log_abs_value(PlanePoint z) const {
    switch (kind_) {
      case Kind::Cayley: return log_abs_cayley(z);
      case Kind::SectorPower: return param_ * log_abs_cayley(z);
      case Kind::ExpCayley: return std::log(param_) + (1.0 - std::norm(z)) / std::norm(1.0 - z);
      case Kind::Identity: return std::log(std::abs(z));
    }
    return 0.0;
  }

  double log_abs_derivative(PlanePoint z) const {
    const double log_dc = std::log(2.0) - 2.0 * std::log(std::abs(1.0 - z));
    switch (kind_) {
      case Kind::Cayley: return log_dc;
      case Kind::SectorPower:
        return std::log(param_) + (param_ - 1.0) * log_abs_cayley(z) + log_dc;
      case Kind::ExpCayley: return log_abs_value(z) + log_dc;
      case Kind::Identity: return 0.0;
    }
    return 0.0;
  }

  bool univalent() const {
    return kind_ == Kind::Cayley || kind_ == Kind::Identity ||
           (kind_ == Kind::SectorPower && param_ <= 2.0);
  }
  bool zero_free() const { return kind_ != Kind::Identity; }

  /// The image f(D) with basepoint f(0), when a closed-form oracle exists.
  std::optional<DomainSpec> image_domain() const {
    switch (kind_) {
      case Kind::Cayley: return DomainSpec::half_plane({1.0, 0.0});
      case Kind::SectorPower:
        if (param_ <= 2.0) return DomainSpec::sector(param_ * std::numbers::pi, {1.0, 0.0});
        return std::nullopt;
      case Kind::Identity: return DomainSpec::disk(1.0, {0.0, 0.0});
      case Kind::ExpCayley: return std::nullopt;
    }
    return std::nullopt;
  }

 private:
  CatalogFunction(Kind kind, double param) : kind_(kind), param_(param) {}

  static PlanePoint cayley_of(PlanePoint z) { return (1.0 + z) / (1.0 - z); }
  static double log_abs_cayley(PlanePoint z) {
    return std::log(std::abs(1.0 + z)) - std::log(std::abs(1.0 - z));
  }
  std::string format_param() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", param_);
    return buf;
  }

  Kind kind_;
  double param_;
};

}  // namespace hbn
