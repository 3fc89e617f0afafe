#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "qprop/ordering.hpp"
#include "support.hpp"

using namespace qprop;

namespace {

void expect_params(const OrderingParams& g, double g1, double g2, double g3) {
  EXPECT_DOUBLE_EQ(g.g1, g1);
  EXPECT_DOUBLE_EQ(g.g2, g2);
  EXPECT_DOUBLE_EQ(g.g3, g3);
}

}  // namespace

TEST(AlphaToQp, WignerIdentity) { expect_params(alpha_to_qp({0, 0, 0}), 0, 0, 0); }

TEST(AlphaToQp, NormalOrdering) { expect_params(alpha_to_qp({0.5, 0, 0}), 0.25, 0.25, 0); }

TEST(AlphaToQp, Antistandard) { expect_params(alpha_to_qp({0, -0.25, 0.25}), 0, 0, -0.25); }

TEST(QpToAlpha, Zero) {
  const auto a = qp_to_alpha({0, 0, 0});
  EXPECT_EQ(a.a1, 0.0);
  EXPECT_EQ(a.a2, 0.0);
  EXPECT_EQ(a.a3, 0.0);
}

TEST(QpToAlpha, Antinormal) {
  const auto a = qp_to_alpha({-0.25, -0.25, 0});
  EXPECT_DOUBLE_EQ(a.a1, -0.5);
  EXPECT_DOUBLE_EQ(a.a2, 0.0);
  EXPECT_DOUBLE_EQ(a.a3, 0.0);
}

TEST(QpToAlpha, SOrdered) {
  const auto a = qp_to_alpha(orderings::s_ordered(0.6));
  EXPECT_NEAR(a.a1, 0.3, 1e-15);
  EXPECT_NEAR(a.a2, 0.0, 1e-15);
  EXPECT_NEAR(a.a3, 0.0, 1e-15);
}

TEST(AlphaQpRoundTrip, RandomTriples) {
  auto rng = test::seeded_rng(1);
  for (int i = 0; i < 1000; ++i) {
    const OrderingParams g{test::uniform(rng, -1, 1), test::uniform(rng, -1, 1),
                           test::uniform(rng, -1, 1)};
    const OrderingParams back = alpha_to_qp(qp_to_alpha(g));
    EXPECT_NEAR(back.g1, g.g1, 1e-15);
    EXPECT_NEAR(back.g2, g.g2, 1e-15);
    EXPECT_NEAR(back.g3, g.g3, 1e-15);
    const OrderingParamsAlpha a{test::uniform(rng, -1, 1), test::uniform(rng, -1, 1),
                                test::uniform(rng, -1, 1)};
    const OrderingParamsAlpha ab = qp_to_alpha(alpha_to_qp(a));
    EXPECT_NEAR(ab.a1, a.a1, 1e-15);
    EXPECT_NEAR(ab.a2, a.a2, 1e-15);
    EXPECT_NEAR(ab.a3, a.a3, 1e-15);
  }
}

TEST(NamedOrdering, TabulatedTriples) {
  expect_params(named_ordering("wigner"), 0, 0, 0);
  expect_params(named_ordering("normal"), 0.25, 0.25, 0);
  expect_params(named_ordering("antinormal"), -0.25, -0.25, 0);
  expect_params(named_ordering("standard"), 0, 0, 0.25);
  expect_params(named_ordering("antistandard"), 0, 0, -0.25);
  expect_params(named_ordering("s-ordered", 0.6), 0.15, 0.15, 0);
}

TEST(NamedOrdering, Aliases) {
  EXPECT_EQ(named_ordering("P"), orderings::normal);
  EXPECT_EQ(named_ordering("Q"), orderings::antinormal);
  EXPECT_EQ(named_ordering("KR"), orderings::antistandard);
}

TEST(NamedOrdering, SOrderedEndpointsMatchTable) {
  EXPECT_EQ(named_ordering("s-ordered", 1.0), orderings::normal);
  EXPECT_EQ(named_ordering("s-ordered", -1.0), orderings::antinormal);
  EXPECT_EQ(named_ordering("s-ordered", 0.0), orderings::wigner);
}

TEST(NamedOrdering, Errors) {
  EXPECT_THROW(named_ordering("weird"), ConfigError);
  EXPECT_THROW(named_ordering("s-ordered"), ConfigError);
  EXPECT_THROW(named_ordering("s-ordered", std::nan("")), ConfigError);
  try {
    named_ordering("bogus");
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("bogus"), std::string::npos);
    EXPECT_EQ(e.code(), 2);
  }
}

TEST(NamedOrdering, NamesAreAccepted) {
  for (const auto& n : ordering_names()) {
    if (n == "s-ordered") continue;
    EXPECT_NO_THROW(named_ordering(n)) << n;
  }
}

TEST(OrderingParams, Finite) {
  EXPECT_TRUE(orderings::standard.finite());
  EXPECT_FALSE((OrderingParams{INFINITY, 0, 0}).finite());
}

TEST(KernelValue, WignerIsOne) {
  EXPECT_EQ(kernel_value(orderings::wigner, 3.7, -1.2), std::complex<double>(1.0, 0.0));
}

TEST(KernelValue, AntinormalSpot) {
  const auto k = kernel_value(orderings::antinormal, 2.0, 0.0);
  EXPECT_NEAR(k.real(), std::exp(-1.0), 1e-15);
  EXPECT_EQ(k.imag(), 0.0);
}

TEST(KernelValue, StandardSpot) {
  const auto k = kernel_value(orderings::standard, 1.0, 1.0);
  EXPECT_NEAR(std::abs(k - std::polar(1.0, 0.5)), 0.0, 1e-15);
}

TEST(KernelValue, OriginIsOneForAnyOrdering) {
  auto rng = test::seeded_rng(2);
  for (int i = 0; i < 100; ++i) {
    const OrderingParams g{test::uniform(rng, -1, 1), test::uniform(rng, -1, 1),
                           test::uniform(rng, -1, 1)};
    EXPECT_EQ(kernel_value(g, 0.0, 0.0), std::complex<double>(1.0, 0.0));
  }
}

TEST(KernelValue, ConjugateOrderingsGiveConjugateKernels) {
  auto rng = test::seeded_rng(3);
  for (int i = 0; i < 200; ++i) {
    const double u = test::uniform(rng, -5, 5), v = test::uniform(rng, -5, 5);
    EXPECT_NEAR(std::abs(kernel_value(orderings::standard, u, v) -
                         std::conj(kernel_value(orderings::antistandard, u, v))),
                0.0, 1e-14);
    const OrderingParams g{test::uniform(rng, -0.5, 0.5), test::uniform(rng, -0.5, 0.5),
                           test::uniform(rng, -0.5, 0.5)};
    const OrderingParams h{g.g1, g.g2, -g.g3};
    const auto a = kernel_value(g, u, v), b = std::conj(kernel_value(h, u, v));
    EXPECT_LE(std::abs(a - b), 1e-12 * std::max(1.0, std::abs(a)));
  }
}
