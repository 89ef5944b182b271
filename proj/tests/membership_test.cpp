#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hbn/membership.hpp"
#include "hbn/oracles.hpp"

using namespace hbn;
using std::numbers::pi;

namespace {

DecayFit oracle_fit(const DomainSpec& d) {
  return fit_decay(oracle_profile(d, RadiusGrid{2.0, 2.0, 12}.radii()), 4);
}

MembershipQuery hardy(double p) { return {p, std::nullopt}; }
MembershipQuery bergman(double p, double alpha) { return {p, alpha}; }

DecayFit exact_fit(double q) {
  DecayFit f;
  f.exponent = q;
  return f;
}

}  // namespace

TEST(FitDecay, OracleExponents) {
  EXPECT_NEAR(oracle_fit(DomainSpec::half_plane()).exponent, 1.0, 0.05);
  EXPECT_NEAR(oracle_fit(DomainSpec::sector(pi / 2)).exponent, 2.0, 0.1);
}

TEST(FitDecay, ExactPowerLaw) {
  const auto fit = fit_decay(power_law_profile(RadiusGrid{1.0, 3.0, 8}.radii(), 3.0, 1.5), 4);
  EXPECT_NEAR(fit.exponent, 1.5, 1e-12);
  EXPECT_NEAR(fit.log_intercept, -std::log(3.0), 1e-12);
  EXPECT_LT(fit.residual, 1e-12);
  EXPECT_EQ(fit.fit_range.first, 27.0);
  EXPECT_NEAR(fit.omega_at(10.0), 3.0 * std::pow(10.0, -1.5), 1e-14);
}

TEST(FitDecay, Errors) {
  auto p = power_law_profile({1.0, 2.0, 4.0}, 1.0, 1.0);
  EXPECT_THROW(fit_decay(power_law_profile({1.0}, 1.0, 1.0), 4), Error);
  p.entries[2].omega = 0.0;
  try {
    fit_decay(p, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroMeasure);
  }
}

TEST(ClassifyHardy, HalfPlaneExamples) {
  const auto fit = oracle_fit(DomainSpec::half_plane());
  EXPECT_EQ(classify_hardy(fit, hardy(0.5)).verdict, Verdict::Member);
  EXPECT_EQ(classify_hardy(fit, hardy(0.5)).rationale, Rationale::DecaySufficient);
  EXPECT_EQ(classify_hardy(fit, hardy(2.0)).verdict, Verdict::NotMember);
  EXPECT_EQ(classify_hardy(fit, hardy(2.0)).rationale, Rationale::IntegralDiverges);
  const auto near = classify_hardy(fit, hardy(1.0), 0.05);
  EXPECT_EQ(near.verdict, Verdict::Inconclusive);
  EXPECT_EQ(near.rationale, Rationale::NearCritical);
}

TEST(ClassifyBergman, HalfPlaneExamples) {
  const auto fit = oracle_fit(DomainSpec::half_plane());
  const auto member = classify_bergman(fit, bergman(1.5, 0.0));
  EXPECT_EQ(member.verdict, Verdict::Member);
  EXPECT_EQ(member.rationale, Rationale::EmbeddingSufficient);
  EXPECT_TRUE(*member.integral_converges);
  const auto not_member = classify_bergman(fit, bergman(3.0, 0.0));
  EXPECT_EQ(not_member.verdict, Verdict::NotMember);
  EXPECT_FALSE(*not_member.integral_converges);
  for (double q : {0.5, 1.0, 2.0})
    for (double alpha : {-0.5, 0.0, 2.0})
      EXPECT_EQ(classify_bergman(exact_fit(q), bergman(q * (alpha + 2.0), alpha)).verdict, Verdict::Inconclusive);
}

TEST(Classify, InconclusiveIffWithinMargin) {
  for (double q : {0.5, 1.0, 2.0})
    for (double p = 0.05; p < 5.0; p += 0.0173) {
      const auto v = classify_hardy(exact_fit(q), hardy(p), 0.1);
      EXPECT_EQ(v.verdict == Verdict::Inconclusive, std::abs(v.critical_ratio - v.query_ratio) <= 0.1);
    }
}

TEST(Classify, HardyBergmanCoherence) {
  for (double q : {0.5, 1.0, 2.0})
    for (double p = 0.1; p < 4.0; p += 0.13)
      for (double alpha : {-0.9, -0.5, 0.0, 1.0, 5.0}) {
        const auto h = classify_hardy(exact_fit(q), hardy(p));
        const auto b = classify_bergman(exact_fit(q), bergman(p * (alpha + 2.0), alpha));
        EXPECT_EQ(h.verdict, b.verdict) << "q=" << q << " p=" << p << " alpha=" << alpha;
      }
}

TEST(Classify, EmbeddingDirection) {
  const auto fit = oracle_fit(DomainSpec::half_plane());
  for (double p0 = 0.1; p0 < 3.0; p0 += 0.1) {
    if (classify_hardy(fit, hardy(p0)).verdict != Verdict::Member) continue;
    for (double p = p0; p < 3.0 * p0; p += 0.07)
      for (double alpha = -0.95; alpha < 4.0; alpha += 0.35) {
        if (p / (alpha + 2.0) > p0) continue;
        EXPECT_NE(classify_bergman(fit, bergman(p, alpha)).verdict, Verdict::NotMember);
      }
  }
}

TEST(Classify, Preconditions) {
  const auto fit = exact_fit(1.0);
  EXPECT_THROW(classify_hardy(fit, hardy(0.0)), Error);
  EXPECT_THROW(classify_hardy(fit, bergman(1.0, 0.0)), Error);
  EXPECT_THROW(classify_bergman(fit, hardy(1.0)), Error);
  EXPECT_THROW(classify_bergman(fit, bergman(1.0, -1.0)), Error);
  EXPECT_THROW(classify_hardy(fit, hardy(1.0), -0.1), Error);
}

TEST(CriterionIntegral, HalfPlaneExamples) {
  const auto p = oracle_profile(DomainSpec::half_plane(), RadiusGrid{2.0, 2.0, 12}.radii());
  const auto conv = criterion_integral(p, hardy(0.5));
  EXPECT_FALSE(conv.divergent);
  EXPECT_TRUE(std::isfinite(conv.value()));
  EXPECT_GT(conv.tail, 0.0);
  // int_2^inf t^(-1/2) (2/pi) atan(1/t) dt by adaptive quadrature.
  const double reference = 0.8864266465842934;
  const auto fine = oracle_profile(DomainSpec::half_plane(), RadiusGrid{2.0, 1.05, 160}.radii());
  EXPECT_NEAR(criterion_integral(fine, hardy(0.5)).value(), reference, 0.01 * reference);
  EXPECT_TRUE(criterion_integral(p, hardy(2.0)).divergent);
  EXPECT_TRUE(std::isinf(criterion_integral(p, hardy(2.0)).value()));
  EXPECT_FALSE(criterion_integral(p, bergman(1.5, 0.0)).divergent);
  EXPECT_TRUE(criterion_integral(p, bergman(3.0, 0.0)).divergent);
}

TEST(CriterionIntegral, BorderlineIsDivergent) {
  const auto p = power_law_profile(RadiusGrid{1.0, 2.0, 10}.radii(), 1.0, 1.0);
  EXPECT_TRUE(criterion_integral(p, hardy(1.0)).divergent);
}

TEST(CriterionIntegral, ExactPowerLawTail) {
  // omega = r^-2, p = 1: int_1^inf r^-2 dr = 1.
  const auto p = power_law_profile(RadiusGrid{1.0, 1.01, 1200}.radii(), 1.0, 2.0);
  EXPECT_NEAR(criterion_integral(p, hardy(1.0)).value(), 1.0, 1e-4);
}

TEST(CriterionIntegral, ZeroEntriesSkipped) {
  const auto p = oracle_profile(DomainSpec::disk(3.0), RadiusGrid{1.0, 2.0, 5}.radii());
  const auto c = criterion_integral(p, hardy(1.0));
  EXPECT_EQ(c.skipped_zero_entries, 3);
  EXPECT_FALSE(c.divergent);
  EXPECT_EQ(c.tail, 0.0);
  EXPECT_NEAR(c.truncated, 1.0, 1e-15);
}
