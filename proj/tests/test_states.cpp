#include <gtest/gtest.h>

#include <cmath>
#include <iostream>
#include <numbers>

#include "qprop/states.hpp"
#include "support.hpp"

using namespace qprop;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
const cplx I{0.0, 1.0};
const GridGeometry kFine = GridGeometry::square(256, 8.0);

/// Normalized (|alpha> + |-alpha>) in position space.
cplx cat_position(cplx alpha, double q) {
  const double n = 1.0 / std::sqrt(2.0 * (1.0 + std::exp(-2.0 * std::norm(alpha))));
  return n * (coherent_position_wavefunction(alpha, q) + coherent_position_wavefunction(-alpha, q));
}

cplx superposition_position(double q) {
  const auto h = hermite_functions(1, q);
  return (h[0] + h[1]) / kSqrt2;
}

/// Last line of the printed t = 0 expansion, term by term.
cplx printed_superposition_expansion(double q, double p) {
  const cplx e = std::polar(std::exp(-(q * q + p * p) / 2), q * p);
  return e * (0.5 / kSqrt2 / kPi - I * 0.5 / kPi * p + 0.5 / kPi * q - I / kSqrt2 / kPi * q * p);
}

}  // namespace

TEST(HermiteFunctions, GroundValueAndOrthonormality) {
  EXPECT_NEAR(hermite_functions(0, 0.0)[0], std::pow(kPi, -0.25), 1e-15);
  const int n_max = 30;
  const double dx = 0.01;
  std::vector<std::vector<double>> table;
  for (double x = -15; x <= 15; x += dx) table.push_back(hermite_functions(n_max, x));
  for (int m = 0; m <= n_max; m += 5)
    for (int n = 0; n <= n_max; n += 3) {
      double s = 0.0;
      for (const auto& row : table) s += row[m] * row[n] * dx;
      EXPECT_NEAR(s, m == n ? 1.0 : 0.0, 1e-10) << m << "," << n;
    }
}

TEST(CoherentWavefunctions, MomentumIsFourierTransformOfPosition) {
  const cplx alpha(0.9, -0.6);
  const auto numeric = momentum_wavefunction(
      [&](double q) { return coherent_position_wavefunction(alpha, q); }, kFine);
  double err = 0.0;
  for (int k = 0; k < kFine.np; ++k)
    err = std::max(err, std::abs(numeric[k] - coherent_momentum_wavefunction(alpha, kFine.p(k))));
  EXPECT_LT(err, 1e-10);
}

TEST(StandardFromWavefunctions, GroundMatchesClosedForm) {
  std::vector<cplx> psi(kFine.nq), psit(kFine.np);
  for (int j = 0; j < kFine.nq; ++j) psi[j] = coherent_position_wavefunction(0.0, kFine.q(j));
  for (int k = 0; k < kFine.np; ++k) psit[k] = coherent_momentum_wavefunction(0.0, kFine.p(k));
  const PhaseGrid F = standard_from_wavefunctions(psi, psit, kFine);
  const PhaseGrid want = PhaseGrid::sample(kFine, [](double q, double p) {
    return std::polar(std::exp(-(q * q + p * p) / 2) / std::sqrt(2 * kPi * kPi), q * p);
  });
  EXPECT_LE(linf_distance(F, want), 1e-15);
  EXPECT_LE(linf_distance(F, qdf_ground(orderings::standard, kFine)), 1e-9);
  EXPECT_EQ(F.ordering, orderings::standard);
}

TEST(StandardFromWavefunctions, SampleCountMismatch) {
  std::vector<cplx> psi(10), psit(kFine.np);
  EXPECT_THROW(standard_from_wavefunctions(psi, psit, kFine), ConfigError);
}

TEST(StandardFromWavefunctions, SuperpositionMatchesExpansion) {
  const PhaseGrid F = standard_from_wavefunction(superposition_position, kFine);
  const PhaseGrid closed = superposition01_standard(kFine);
  const PhaseGrid printed = PhaseGrid::sample(kFine, printed_superposition_expansion);
  EXPECT_LE(linf_distance(F, closed), 1e-12);
  EXPECT_LE(linf_distance(closed, printed), 1e-15);
  // The printed first step uses 1/(sqrt(2) pi) where (2 pi)^{-1/2} belongs;
  // the expansion that follows uses the latter. Logged, not asserted.
  const double ratio = (1.0 / (kSqrt2 * kPi)) * std::sqrt(2 * kPi);
  std::cout << "[ note ] superposition first-step prefactor ratio = " << ratio
            << " (expansion is self-consistent)\n";
  RecordProperty("superposition_prefactor_ratio", std::to_string(ratio));
}

TEST(StandardFromWavefunctions, CatMatchesFourGaussianForm) {
  for (const cplx alpha : {cplx(1.5, 0.0), cplx(1.0, 0.7), cplx(-0.4, 1.1)}) {
    const PhaseGrid F = standard_from_wavefunction(
        [&](double q) { return cat_position(alpha, q); }, kFine);
    // Limited by the tail of the displaced Gaussians at the grid edge.
    EXPECT_LE(linf_distance(F, cat_standard(alpha, kFine)), 1e-9) << alpha;
  }
}

TEST(CatStandard, RealAlphaIsEvenGaussianPair) {
  const double A = 1.2;
  const double n = 1.0 / (2.0 + 2.0 * std::exp(-2 * A * A));
  const PhaseGrid F = cat_standard(A, kFine);
  const PhaseGrid want = PhaseGrid::sample(kFine, [&](double q, double p) {
    // B = 0: psi(q) real, psi~(p) = pi^{-1/4} e^{-p^2/2} 2 cos(sqrt2 A p).
    const double psi = std::exp(-(q - kSqrt2 * A) * (q - kSqrt2 * A) / 2) +
                       std::exp(-(q + kSqrt2 * A) * (q + kSqrt2 * A) / 2);
    const double psit = 2.0 * std::cos(kSqrt2 * A * p) * std::exp(-p * p / 2);
    return std::polar(n / std::sqrt(2 * kPi) / std::sqrt(kPi) * psi * psit, q * p);
  });
  EXPECT_LE(linf_distance(F, want), 1e-13);
}

TEST(QdfGround, PeakValues) {
  const int c = kFine.nq / 2;
  EXPECT_NEAR(qdf_ground(orderings::antinormal, kFine).at(c, c).real(), 1 / (2 * kPi), 1e-15);
  EXPECT_NEAR(qdf_ground(orderings::wigner, kFine).at(c, c).real(), 1 / kPi, 1e-15);
}

TEST(QdfGround, NormalizedForDecayingOrderings) {
  for (const auto& g : {orderings::wigner, orderings::antinormal, orderings::standard,
                        orderings::antistandard, orderings::s_ordered(0.5),
                        OrderingParams{-0.1, 0.2, 0.3}})
    EXPECT_NEAR(std::abs(normalization(qdf_ground(g, kFine)) - 1.0), 0.0, 1e-6);
}

TEST(QdfGround, MatchesTransformOfKernel) {
  const OrderingParams g{-0.1, 0.15, 0.2};
  const CharGrid X = to_char(qdf_ground(g, kFine));
  double err = 0.0;
  for (int m = 0; m < kFine.nq; ++m)
    for (int n = 0; n < kFine.np; ++n) {
      const double u = kFine.u(n), v = kFine.v(m);
      err = std::max(err, std::abs(X.at(m, n) - kernel_value(g, u, v) *
                                                    std::exp(-(u * u + v * v) / 4)));
    }
  EXPECT_LT(err, 1e-10);
}

TEST(QdfGround, NonDecayingOrderingRejected) {
  EXPECT_THROW(qdf_ground(orderings::normal, kFine), StabilityError);
  EXPECT_THROW(make_state(StateSpec::ground(), orderings::normal, kFine), StabilityError);
}

TEST(WignerCoherent, PeakAndMoments) {
  const PhaseGrid z = wigner_coherent(0.0, kFine);
  EXPECT_LE(linf_distance(z, qdf_ground(orderings::wigner, kFine)), 0.0);
  const PhaseGrid F = wigner_coherent(1.0, kFine);
  std::size_t best = 0;
  for (std::size_t i = 0; i < F.values.size(); ++i)
    if (std::abs(F.values[i]) > std::abs(F.values[best])) best = i;
  const int j = static_cast<int>(best / kFine.np), k = static_cast<int>(best % kFine.np);
  EXPECT_NEAR(kFine.q(j), kSqrt2, kFine.dq());
  EXPECT_NEAR(kFine.p(k), 0.0, kFine.dp());
  EXPECT_NEAR(moment(wigner_coherent({0.3, -1.1}, kFine), 1, 0).real(), kSqrt2 * 0.3, 1e-12);
}

TEST(WignerCoherent, MarginWarning) {
  test::WarningCapture w;
  wigner_coherent({5.0, 0.0}, kFine);
  EXPECT_TRUE(w.contains("4 sigma"));
}

TEST(MakeState, EveryKindNormalized) {
  for (const StateSpec& s : {StateSpec::ground(), StateSpec::coherent({0.5, -0.5}),
                             StateSpec::cat({1.5, 0.0}), StateSpec::superposition01()})
    for (const auto& g : {orderings::wigner, orderings::standard, orderings::antinormal}) {
      const PhaseGrid F = make_state(s, g, kFine);
      EXPECT_NEAR(std::abs(normalization(F) - 1.0), 0.0, 1e-6) << to_string(s.kind);
      EXPECT_EQ(F.ordering, g);
    }
}

TEST(MakeState, StandardAntistandardConjugacy) {
  for (const StateSpec& s : {StateSpec::cat({1.0, 0.5}), StateSpec::superposition01(),
                             StateSpec::coherent({0.3, 0.9})}) {
    const PhaseGrid S = make_state(s, orderings::standard, kFine);
    const PhaseGrid K = make_state(s, orderings::antistandard, kFine);
    double err = 0.0;
    for (std::size_t i = 0; i < S.values.size(); ++i)
      err = std::max(err, std::abs(S.values[i] - std::conj(K.values[i])));
    EXPECT_LE(err, 1e-10) << to_string(s.kind);
  }
}

TEST(MakeState, WignerIsReal) {
  const PhaseGrid W = make_state(StateSpec::cat({1.5, 0.3}), orderings::wigner, kFine);
  double im = 0.0;
  for (const cplx& x : W.values) im = std::max(im, std::abs(x.imag()));
  EXPECT_LE(im, 1e-9);
}
