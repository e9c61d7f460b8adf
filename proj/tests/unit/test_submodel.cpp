#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "pickpoly/errors.hpp"
#include "pickpoly/simulation.hpp"
#include "pickpoly/submodel.hpp"

using namespace pickpoly;

TEST(InSubmodelH, Examples) {
  const MembershipReport r = in_submodel_h(std::vector<double>{2.0, -1.0 / 3.0, 0.2});
  EXPECT_FALSE(r.member);
  ASSERT_FALSE(r.violations.empty());
  EXPECT_EQ(r.violations[0].rule, "positivity");
  EXPECT_EQ(r.violations[0].witness, 1.0);

  for (int m = 0; m < 6; ++m) EXPECT_TRUE(in_submodel_h(std::vector<double>(static_cast<std::size_t>(m) + 1, 0.0)).member);
  EXPECT_TRUE(in_submodel_h(std::vector<double>{2.0}).member);

  const MembershipReport over = in_submodel_h(std::vector<double>{2.1});
  EXPECT_FALSE(over.member);
  EXPECT_EQ(over.violations.size(), 2u);
  EXPECT_EQ(over.violations[0].rule, "boundary");
}

TEST(InSubmodelA, Examples) {
  EXPECT_FALSE(in_submodel_a(BernsteinPoly({1.0, 0.75, 1.0, 0.75, 1.0})));
  EXPECT_TRUE(in_submodel_a(BernsteinPoly({1.0, 0.75, 0.5, 0.75, 1.0})));
  const GenericPickands alog = model_pickands(AsymmetricLogistic{0.5, 0.1, 0.5});
  for (int m = 1; m <= 25; ++m) {
    EXPECT_TRUE(in_submodel_a(bernstein_approx([&](double t) { return alog.value(t); }, m))) << m;
  }
}

TEST(PiecewiseLinear, SlopesAndValues) {
  const PiecewiseLinearPickands a({1.0, 0.75, 1.0, 0.75, 1.0});
  EXPECT_EQ(a.slopes(), (std::vector<double>{-1.0, 1.0, -1.0, 1.0}));
  EXPECT_FALSE(a.validate().valid);
  const PiecewiseLinearPickands v({1.0, 0.75, 0.5, 0.75, 1.0});
  EXPECT_TRUE(v.validate().valid);
  EXPECT_DOUBLE_EQ(v.value(0.125), 0.875);
  EXPECT_DOUBLE_EQ(v.jet(0.5).first, 0.0);
  EXPECT_DOUBLE_EQ(v.jet(0.3).first, -1.0);
}

TEST(MembershipEquivalence, AandHRoutesAgree) {
  oracle::Rng rng(41);
  int members = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const int m = static_cast<int>(rng() % 6);
    std::vector<double> c(static_cast<std::size_t>(m) + 3);
    c.front() = c.back() = 1.0;
    for (std::size_t k = 1; k + 1 < c.size(); ++k) {
      // Near the comonotone bound so both outcomes occur.
      const double t = static_cast<double>(k) / static_cast<double>(c.size() - 1);
      c[k] = std::max(t, 1.0 - t) + oracle::uniform(rng, -0.05, 0.3);
    }
    const BernsteinPoly a(c);
    const bool via_a = in_submodel_a(a);
    EXPECT_EQ(via_a, in_submodel_h(h_from_a(a).coeffs()).member);
    members += via_a;
  }
  EXPECT_GT(members, 50);
  EXPECT_LT(members, 1950);
}

TEST(Polytope, MembersGiveValidPickands) {
  oracle::Rng rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = static_cast<int>(rng() % 12);
    const auto c = oracle::random_polytope_member(rng, m);
    ASSERT_TRUE(in_submodel_h(c).member);
    EXPECT_TRUE(validate_pickands(a_from_h(BernsteinPoly(c))).valid);
  }
}

TEST(Nesting, Examples) {
  EXPECT_EQ(submodel_nesting_check(SubmodelParam({2.0})).c, (std::vector<double>{2.0, 2.0}));
  const SubmodelParam mix = submodel_nesting_check(SubmodelParam({1.8}));
  EXPECT_EQ(mix.c, (std::vector<double>{1.8, 1.8}));
  EXPECT_TRUE(in_submodel_h(mix.c).member);
  EXPECT_THROW(submodel_nesting_check(SubmodelParam({2.0, -1.0 / 3.0, 0.2})), ConstraintError);
}

TEST(Nesting, Property) {
  oracle::Rng rng(43);
  for (int trial = 0; trial < 500; ++trial) {
    const int m = static_cast<int>(rng() % 15);
    const SubmodelParam up = submodel_nesting_check(SubmodelParam(oracle::random_polytope_member(rng, m)));
    EXPECT_EQ(up.m, m + 1);
    EXPECT_TRUE(in_submodel_h(up.c).member);
  }
}

TEST(Lorentz, Examples) {
  const LorentzResult pf = lorentz_degree(BernsteinPoly({2.0, -1.0 / 3.0, 0.2}));
  EXPECT_EQ(pf.kind, LorentzResult::Kind::finite);
  EXPECT_EQ(pf.degree, 6);
  for (double alpha : {0.1, 0.5, 1.0}) {
    const LorentzResult r = lorentz_degree(oracle::h_alpha_beta(alpha, 1.0));
    EXPECT_EQ(r.kind, LorentzResult::Kind::finite);
    // Degree 3 already has coefficients [4a, 0, 0, 4a]; 4 is the least even degree.
    EXPECT_EQ(r.degree, 3);
    EXPECT_EQ(lorentz_degree(oracle::h_alpha_beta(alpha, 2.0)).kind, LorentzResult::Kind::infinite);
  }
  EXPECT_EQ(lorentz_degree(BernsteinPoly({1.0, 2.0})).degree, 1);
  EXPECT_THROW(lorentz_degree(BernsteinPoly({1.0, -1.5, 1.0})), DomainError);
}

TEST(Lorentz, ClosedForm) {
  // 2 ceil((1+beta)/(2-beta)) is the least even degree with nonnegative
  // coefficients; odd degrees can get there one step earlier.
  for (double alpha : {0.25, 1.0}) {
    for (double beta : {0.1, 0.5, 1.0, 1.5, 1.9, 0.01, 0.7, 1.2, 1.99}) {
      const LorentzResult r = lorentz_degree(oracle::h_alpha_beta(alpha, beta), 1000);
      ASSERT_EQ(r.kind, LorentzResult::Kind::finite);
      EXPECT_EQ(r.degree, oracle::lorentz_h_alpha_beta(beta, false)) << alpha << ' ' << beta;
      const int even = 2 * static_cast<int>(std::ceil((1.0 + beta) / (2.0 - beta)));
      EXPECT_EQ(oracle::lorentz_h_alpha_beta(beta, true), even) << beta;
      EXPECT_TRUE(r.degree == even || r.degree == even - 1) << alpha << ' ' << beta;
      const BernsteinPoly h = elevate_degree(oracle::h_alpha_beta(alpha, beta), even);
      EXPECT_GE(*std::min_element(h.coeffs().begin(), h.coeffs().end()), -1e-12);
    }
    for (double beta : {-1.0, -0.5}) EXPECT_EQ(lorentz_degree(oracle::h_alpha_beta(alpha, beta)).degree, 2);
  }
}

TEST(Lorentz, CapAndNearZero) {
  // beta = 1.999 needs 2*ceil(2.999/0.001) = 5998 > cap.
  const LorentzResult r = lorentz_degree(oracle::h_alpha_beta(1.0, 1.999));
  EXPECT_EQ(r.kind, LorentzResult::Kind::exceeds_cap);
  EXPECT_EQ(r.to_string(), "exceeds cap");
  const LorentzResult small = lorentz_degree(oracle::h_alpha_beta(1.0, 1.5), 4);
  EXPECT_EQ(small.kind, LorentzResult::Kind::exceeds_cap);
}

TEST(Lorentz, GapDichotomy) {
  // Products (t - z)^2 g with g > 0: interior z gives infinite, exterior finite.
  oracle::Rng rng(44);
  for (int trial = 0; trial < 200; ++trial) {
    const bool interior = trial % 2 == 0;
    const double z = interior ? oracle::uniform(rng, 0.1, 0.9) : oracle::uniform(rng, 1.05, 2.0);
    const double g0 = oracle::uniform(rng, 0.5, 2.0), g1 = oracle::uniform(rng, 0.5, 2.0);
    // (t - z)^2 (g0 + (g1 - g0) t) in power form.
    const double a0 = z * z, a1 = -2.0 * z, a2 = 1.0;
    const double b0 = g0, b1 = g1 - g0;
    const PowerPoly p({a0 * b0, a0 * b1 + a1 * b0, a1 * b1 + a2 * b0, a2 * b1});
    const BernsteinPoly h = power_to_bernstein(p, 3);
    if (interior) {
      // Exact zero is unlikely after rounding; never finite-and-small, never over-claimed.
      const LorentzResult r = lorentz_degree(h);
      if (r.kind == LorentzResult::Kind::finite) ADD_FAILURE() << "finite degree for interior zero at " << z;
    } else {
      double mn = 1e300;
      for (int i = 0; i <= 1000; ++i) mn = std::min(mn, evaluate(h, i / 1000.0));
      ASSERT_GT(mn, 0.0);
      const LorentzResult r = lorentz_degree(h, 100000);
      EXPECT_EQ(r.kind, LorentzResult::Kind::finite) << z;
    }
  }
}
