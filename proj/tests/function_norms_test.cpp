#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hbn/function_norms.hpp"

using namespace hbn;
using std::numbers::pi;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Parse;
}

std::vector<CatalogFunction> catalog() {
  return {CatalogFunction::cayley(), CatalogFunction::sector_power(0.5), CatalogFunction::sector_power(1.5),
          CatalogFunction::exp_cayley(1.0), CatalogFunction::identity()};
}

}  // namespace

TEST(Catalog, DerivativeMatchesFiniteDifferences) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  for (const auto& f : catalog()) {
    int n = 0;
    while (n < 50) {
      const PlanePoint z{u(gen), u(gen)};
      if (std::abs(z) > 0.9) continue;
      ++n;
      const double h = 1e-5;
      const PlanePoint fd = (f.value(z + h) - f.value(z - h)) / (2.0 * h);
      EXPECT_LT(std::abs(fd - f.derivative(z)), 1e-6 * std::abs(f.derivative(z))) << f.name() << " z=" << z;
      EXPECT_NEAR(f.log_abs_value(z), std::log(std::abs(f.value(z))), 1e-12);
      EXPECT_NEAR(f.log_abs_derivative(z), std::log(std::abs(f.derivative(z))), 1e-12);
    }
  }
}

TEST(Catalog, ImagesAndFacts) {
  EXPECT_EQ(CatalogFunction::cayley().value(0.0), PlanePoint(1.0, 0.0));
  EXPECT_GT(CatalogFunction::cayley().value({0.3, -0.9}).real(), 0.0);
  const auto quarter = CatalogFunction::sector_power(0.5).value({-0.4, 0.8});
  EXPECT_LT(std::abs(std::arg(quarter)), pi / 4);
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const PlanePoint z{u(gen), u(gen)};
    if (std::abs(z) >= 1.0) continue;
    EXPECT_GT(CatalogFunction::exp_cayley(2.0).log_abs_value(z), std::log(2.0));
  }
  EXPECT_TRUE(CatalogFunction::sector_power(2.0).univalent());
  EXPECT_FALSE(CatalogFunction::sector_power(2.5).univalent());
  EXPECT_FALSE(CatalogFunction::exp_cayley(1.0).univalent());
  EXPECT_EQ(CatalogFunction::sector_power(0.5).name(), "sector_power:0.5");
  EXPECT_THROW(CatalogFunction::sector_power(0.0), Error);
  EXPECT_THROW(CatalogFunction::exp_cayley(-1.0), Error);
}

TEST(HardyMean, ClosedForms) {
  EXPECT_NEAR(hardy_mean(CatalogFunction::cayley(), 2.0, 0.0), 2 * pi, 1e-12);
  for (double r : {0.3, 0.9, 0.999}) {
    // f = 1 + 2 sum z^n, so the mean of |f|^2 is 1 + 4 r^2/(1 - r^2).
    const double exact = 2 * pi * (1.0 + 4.0 * r * r / (1.0 - r * r));
    EXPECT_NEAR(hardy_mean(CatalogFunction::cayley(), 2.0, r), exact, 1e-8 * exact) << r;
    for (double p : {0.5, 1.0, 3.0})
      EXPECT_NEAR(hardy_mean(CatalogFunction::identity(), p, r), 2 * pi * std::pow(r, p), 1e-9);
    for (double p : {0.3, 1.2}) {
      const double a = hardy_mean(CatalogFunction::sector_power(0.5), p, r);
      const double b = hardy_mean(CatalogFunction::cayley(), 0.5 * p, r);
      EXPECT_NEAR(a, b, 1e-9 * b);
    }
  }
}

TEST(HardyMean, ProfilesAreMonotone) {
  for (const auto& f : catalog())
    for (double p : {0.5, 2.0}) {
      const auto prof = hardy_profile(f, p);
      for (std::size_t k = 1; k < prof.log_values.size(); ++k)
        EXPECT_GE(prof.log_values[k], prof.log_values[k - 1] - 1e-9) << f.name() << " p=" << p;
    }
}

TEST(HardyMean, GrowthExamples) {
  const auto cayley = CatalogFunction::cayley();
  EXPECT_EQ(hardy_profile(cayley, 0.5, {0.9, 0.99, 0.999}).growth, Growth::Bounded);
  EXPECT_EQ(hardy_profile(cayley, 2.0, {0.9, 0.99, 0.999}).growth, Growth::Unbounded);
  const auto strict = hardy_profile(cayley, 2.0, {0.9, 0.99, 0.999});
  EXPECT_GT(strict.log_values[2] - strict.log_values[1], std::log(1.5));
  EXPECT_EQ(hardy_profile(cayley, 0.9).growth, Growth::Bounded);
  EXPECT_EQ(hardy_profile(cayley, 1.1).growth, Growth::Unbounded);
}

TEST(BergmanIntegral, ClosedForms) {
  const double delta = 1e-6;
  EXPECT_NEAR(bergman_integral(CatalogFunction::identity(), 2.0, 0.0, delta), pi / 2, 1e-5);
  for (double d : {0.5, 0.1, 1e-3}) {
    const double r2 = (1.0 - d) * (1.0 - d);
    // sum |a_n|^2 pi R^(2n+2)/(n+1) with a_0 = 1, a_n = 2.
    const double exact = pi * r2 + 4.0 * pi * (-std::log1p(-r2) - r2);
    EXPECT_NEAR(bergman_integral(CatalogFunction::cayley(), 2.0, 0.0, d), exact, 1e-7 * exact) << d;
  }
  // Weight (1 - |z|^2)^alpha with f = z, p = 2: pi (1/(a+1) - 1/(a+2)) = pi/((a+1)(a+2)).
  EXPECT_NEAR(bergman_integral(CatalogFunction::identity(), 2.0, 1.0, 1e-6), pi / 6, 1e-6);
}

TEST(BergmanIntegral, GrowthExamples) {
  const auto cayley = CatalogFunction::cayley();
  EXPECT_EQ(bergman_profile(cayley, 1.0, 0.0, {1e-2, 1e-3, 1e-4}).growth, Growth::Bounded);
  EXPECT_EQ(bergman_profile(cayley, 3.0, 0.0).growth, Growth::Unbounded);
  for (double p : {0.5, 1.0, 2.0})
    for (double alpha : {0.0, 1.0}) {
      const auto f = CatalogFunction::exp_cayley(1.0);
      const double ratio = std::exp(log_bergman_integral(f, p, alpha, 1e-3) - log_bergman_integral(f, p, alpha, 1e-2));
      EXPECT_GT(ratio, 10.0) << "p=" << p << " alpha=" << alpha;
    }
  const auto prof = bergman_profile(CatalogFunction::sector_power(0.5), 2.0, 1.0);
  for (std::size_t k = 1; k < prof.log_values.size(); ++k) EXPECT_GE(prof.log_values[k], prof.log_values[k - 1]);
}

TEST(YamashitaIntegral, ClosedFormForIdentity) {
  // p = 2: int_{|z| <= R} log(1/|z|) dA = 2 pi (R^2/4 - (R^2/2) log R).
  for (double delta : {0.5, 0.1, 1e-4}) {
    const double R = 1.0 - delta;
    const double exact = 2 * pi * (R * R / 4 - R * R / 2 * std::log(R));
    EXPECT_NEAR(yamashita_integral(CatalogFunction::identity(), 2.0, delta), exact, 1e-7 * exact);
  }
}

TEST(YamashitaIntegral, ClassificationMatchesMeans) {
  const auto cayley = CatalogFunction::cayley();
  EXPECT_EQ(yamashita_profile(cayley, 0.5).growth, Growth::Bounded);
  EXPECT_EQ(yamashita_profile(cayley, 0.5).growth, hardy_profile(cayley, 0.5).growth);
  EXPECT_EQ(yamashita_profile(cayley, 2.0).growth, Growth::Unbounded);
  EXPECT_EQ(yamashita_profile(cayley, 1.0, norms::default_deltas(), 0.0).growth, Growth::Bounded);
  EXPECT_EQ(yamashita_profile(cayley, 1.0, norms::default_deltas(), 0.0).growth,
            bergman_profile(cayley, 1.0, 0.0).growth);
}

TEST(ClassifyGrowth, SyntheticProfiles) {
  auto classify = [](std::vector<double> values) {
    std::vector<double> logs, incs;
    for (std::size_t k = 0; k < values.size(); ++k) {
      logs.push_back(std::log(values[k]));
      incs.push_back(std::log(k == 0 ? values[0] : values[k] - values[k - 1]));
    }
    return classify_growth(logs, incs, 10.0);
  };
  // Converging: increments shrink by 10x per refinement.
  EXPECT_EQ(classify({1.0, 1.1, 1.11, 1.111}), Growth::Bounded);
  // Diverging like log(1/delta): constant increments.
  EXPECT_EQ(classify({1.0, 2.0, 3.0, 4.0}), Growth::Unbounded);
  // Power blow-up.
  EXPECT_EQ(classify({1.0, 10.0, 100.0}), Growth::Unbounded);
  // Two points with a tiny increment.
  EXPECT_EQ(classify({1.0, 1.0001}), Growth::Bounded);
  EXPECT_EQ(classify({1.0, 1.2}), Growth::Inconclusive);
  EXPECT_EQ(classify({1.0}), Growth::Inconclusive);
}

TEST(FunctionNorms, Errors) {
  const auto id = CatalogFunction::identity();
  EXPECT_EQ(code_of([&] { yamashita_integral(id, 1.0, 0.1); }), ErrorCode::ZeroOnDisk);
  EXPECT_EQ(code_of([&] { change_of_variable_check(id, 0.5, 0.1); }), ErrorCode::UnsupportedImage);
  EXPECT_EQ(code_of([&] { change_of_variable_check(CatalogFunction::exp_cayley(1.0), 0.5, 0.1); }),
            ErrorCode::UnsupportedImage);
  EXPECT_EQ(code_of([&] { change_of_variable_check(CatalogFunction::sector_power(2.5), 0.5, 0.1); }),
            ErrorCode::UnsupportedImage);
  EXPECT_EQ(code_of([&] { hardy_mean(id, 0.0, 0.5); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { hardy_mean(id, 1.0, 1.0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { bergman_integral(id, 1.0, -1.0, 0.1); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { bergman_integral(id, 1.0, 0.0, 0.0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { hardy_profile(id, 1.0, {0.99, 0.9}); }), ErrorCode::InvalidArgument);
}

TEST(ChangeOfVariable, BothSidesAgree) {
  const auto cayley = CatalogFunction::cayley();
  const auto fine = change_of_variable_check(cayley, 0.5, 1e-3);
  EXPECT_GE(fine.lhs / fine.rhs, 0.99);
  EXPECT_LE(fine.lhs / fine.rhs, 1.01);
  const auto coarse = change_of_variable_check(cayley, 0.5, 0.5);
  EXPECT_NEAR(coarse.lhs, coarse.rhs, 1e-3 * coarse.rhs);
  const auto sector = change_of_variable_check(CatalogFunction::sector_power(0.5), 1.5, 0.1);
  EXPECT_NEAR(sector.lhs, sector.rhs, 1e-3 * sector.rhs);
}

TEST(Bisection, SyntheticThreshold) {
  int calls = 0;
  const auto b = bisect_exponent([&](double p) {
    ++calls;
    return p < 1.3 ? Growth::Bounded : Growth::Unbounded;
  });
  EXPECT_LE(b.lo, 1.3);
  EXPECT_GE(b.hi, 1.3);
  EXPECT_NEAR(b.estimate, 1.3, 8.0 / 512);
  EXPECT_EQ(calls, 1 + norms::kBisectionDepth);

  EXPECT_EQ(bisect_exponent([](double) { return Growth::Unbounded; }).estimate, 0.0);
  EXPECT_TRUE(std::isinf(bisect_exponent([](double) { return Growth::Bounded; }).estimate));

  const auto stuck = bisect_exponent([](double p) {
    if (p < 1.0) return Growth::Bounded;
    return p < 3.5 ? Growth::Inconclusive : Growth::Unbounded;
  });
  EXPECT_GT(stuck.inconclusive_probes, 0);
  EXPECT_LE(stuck.lo, 1.0);
  EXPECT_GE(stuck.hi, 3.5);
}

TEST(EmpiricalHB, UnivalentCatalog) {
  const auto cayley = empirical_hb(CatalogFunction::cayley());
  EXPECT_NEAR(cayley.h_hat(), 1.0, 0.05);
  EXPECT_NEAR(cayley.b_hat(), 1.0, 0.05);
  const auto quarter = empirical_hb(CatalogFunction::sector_power(0.5));
  EXPECT_NEAR(quarter.h_hat(), 2.0, 0.1);
  EXPECT_NEAR(quarter.b_hat(), 2.0, 0.1);
  for (const auto& hb : {cayley, quarter}) {
    EXPECT_LE(hb.h_hat(), hb.b_hat() + 0.05);
    EXPECT_LE(std::abs(hb.h_hat() - hb.b_hat()), 0.1);
  }
  const auto disk = empirical_hb(CatalogFunction::identity());
  EXPECT_TRUE(std::isinf(disk.h_hat()));
  EXPECT_TRUE(std::isinf(disk.b_hat()));
}

TEST(EmpiricalHB, ExpCayleyIsZero) {
  const auto hb = empirical_hb(CatalogFunction::exp_cayley(1.0));
  EXPECT_EQ(hb.h_hat(), 0.0);
  EXPECT_EQ(hb.b_hat(), 0.0);
}
