#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qprop/oracle.hpp"
#include "support.hpp"

using namespace qprop;

namespace {

constexpr double kPi = std::numbers::pi;
const GridGeometry kGrid = GridGeometry::square(128, 8.0);

double number_expectation(const FockDensityMatrix& r) {
  double n = 0.0;
  for (int k = 0; k < r.dim(); ++k) n += k * r.rho(k, k).real();
  return n;
}

}  // namespace

TEST(FockDensityMatrix, ValidateAndCutoff) {
  EXPECT_NO_THROW(fock_state(StateSpec::cat({1.5, 0.0})).validate());
  EXPECT_THROW(fock_state(StateSpec::coherent({5.0, 0.0}), 20), CutoffError);
  FockDensityMatrix bad{CMatrix::Identity(3, 3)};
  EXPECT_THROW(bad.validate(), ConfigError);
  bad.rho = CMatrix::Zero(2, 2);
  bad.rho(0, 0) = 1.5;
  bad.rho(1, 1) = -0.5;
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(EvolveRho, ZeroTimeIsIdentity) {
  const auto r0 = fock_state(StateSpec::cat({1.0, 0.3}));
  EXPECT_EQ(evolve_rho(r0, models::harmonic_oscillator(), 0.0).rho, r0.rho);
}

TEST(EvolveRho, CoherentStateRotates) {
  const double omega = 1.3, T = 1.1;
  const cplx alpha(1.0, 0.5);
  const auto r = evolve_rho(fock_state(StateSpec::coherent(alpha)),
                            models::harmonic_oscillator(omega), T);
  const CVector target = coherent_amplitudes(alpha * std::polar(1.0, -omega * T), r.dim());
  const double fidelity = (target.adjoint() * r.rho * target)(0, 0).real();
  EXPECT_NEAR(fidelity, 1.0, 1e-6);
}

TEST(EvolveRho, EnergyDecaysAtGamma) {
  const double gamma = 0.3, T = 1.5;
  const auto m = QuadraticModel::from_coherent({1.0, {}, {}}, DampingSpec{gamma, 0.0, {}});
  const auto r0 = fock_state(StateSpec::cat({1.5, 0.0}));
  const auto r = evolve_rho(r0, m, T);
  EXPECT_NEAR(number_expectation(r), number_expectation(r0) * std::exp(-gamma * T), 1e-8);
}

TEST(EvolveRho, TraceHermiticityPurity) {
  const auto damped = QuadraticModel::from_coherent({1.0, {0.2, -0.1}, {0.1, 0.05}},
                                                    DampingSpec{0.2, 0.5, {0.1, 0.1}});
  const auto r = evolve_rho(fock_state(StateSpec::cat({1.2, 0.4})), damped, 2.0);
  EXPECT_NEAR(std::abs(r.trace() - 1.0), 0.0, 1e-9);
  EXPECT_LE((r.rho - r.rho.adjoint()).cwiseAbs().maxCoeff(), 1e-9);

  const auto u = evolve_rho(fock_state(StateSpec::cat({1.2, 0.4})),
                            QuadraticModel::from_coherent({1.0, {0.2, -0.1}, {0.1, 0.05}}), 2.0);
  EXPECT_NEAR((u.rho * u.rho).trace().real(), 1.0, 1e-8);
}

TEST(EvolveRho, LeakageIsReported) {
  EXPECT_THROW(evolve_rho(fock_state(StateSpec::coherent({2.5, 0.0}), 20),
                          QuadraticModel::from_coherent({1.0, {1.0, 0.0}, {}}), 3.0),
               CutoffError);
  EXPECT_THROW(evolve_rho(fock_state(StateSpec::ground()), models::harmonic_oscillator(), -1.0),
               ConfigError);
}

TEST(RhoToQdf, GroundInNamedOrderings) {
  const auto r = fock_state(StateSpec::ground());
  const int c = kGrid.nq / 2;
  const PhaseGrid W = rho_to_qdf(r, orderings::wigner, kGrid);
  EXPECT_NEAR(W.at(c, c).real(), 1.0 / kPi, 1e-12);
  const PhaseGrid Q = rho_to_qdf(r, orderings::antinormal, kGrid);
  EXPECT_NEAR(Q.at(c, c).real(), 1.0 / (2 * kPi), 1e-12);
  for (const auto& g : {orderings::wigner, orderings::antinormal, orderings::standard,
                        orderings::antistandard, orderings::s_ordered(-0.5)}) {
    const PhaseGrid F = rho_to_qdf(r, g, kGrid);
    EXPECT_LE(linf_distance(F, qdf_ground(g, kGrid)), 1e-8);
    EXPECT_NEAR(std::abs(normalization(F) - 1.0), 0.0, 1e-10);
  }
}

TEST(RhoToQdf, SingularOrderingRejected) {
  EXPECT_THROW(rho_to_qdf(fock_state(StateSpec::ground()), orderings::normal, kGrid),
               StabilityError);
}

TEST(RhoToQdf, MatchesStateConstructors) {
  const auto cat = fock_state(StateSpec::cat({1.5, 0.4}));
  EXPECT_LE(linf_distance(rho_to_qdf(cat, orderings::standard, kGrid),
                          cat_standard({1.5, 0.4}, kGrid)),
            1e-8);
  const auto sup = fock_state(StateSpec::superposition01());
  EXPECT_LE(linf_distance(rho_to_qdf(sup, orderings::standard, kGrid),
                          superposition01_standard(kGrid)),
            1e-12);
}

TEST(AnalyticSolution, UnknownCase) {
  EXPECT_THROW(analytic_solution("nope", {}, kGrid, 0.0), ConfigError);
}

TEST(AnalyticSolution, InitialValuesMatchConstructors) {
  const AnalyticParams prm{{0.8, -0.4}, 0.3, 0.1};
  EXPECT_LE(linf_distance(analytic_solution("free-wigner", prm, kGrid, 0),
                          wigner_coherent(prm.alpha, kGrid)), 1e-15);
  EXPECT_LE(linf_distance(analytic_solution("free-standard-ground", prm, kGrid, 0),
                          qdf_ground(orderings::standard, kGrid)), 1e-15);
  EXPECT_LE(linf_distance(analytic_solution("free-Q-ground", prm, kGrid, 0),
                          qdf_ground(orderings::antinormal, kGrid)), 1e-15);
  EXPECT_LE(linf_distance(analytic_solution("ho-wigner-map", prm, kGrid, 0),
                          wigner_coherent(prm.alpha, kGrid)), 1e-15);
  EXPECT_LE(linf_distance(analytic_solution("ho-NAN-map", prm, kGrid, 0),
                          qdf_coherent(orderings::antinormal, prm.alpha, kGrid)), 1e-15);
  EXPECT_LE(linf_distance(analytic_solution("ho-standard-01", prm, kGrid, 0),
                          superposition01_standard(kGrid)), 1e-15);
  EXPECT_LE(linf_distance(analytic_solution("ho-standard-cat", prm, kGrid, 0),
                          cat_standard(prm.alpha, kGrid)), 1e-15);
  EXPECT_LE(linf_distance(analytic_solution("tdep-standard-ground", prm, kGrid, 0),
                          qdf_ground(orderings::standard, kGrid)), 1e-15);
}

TEST(AnalyticSolution, FreeQSpotValue) {
  const PhaseGrid F = analytic_solution("free-Q-ground", {}, kGrid, 2.0);
  EXPECT_NEAR(F.at(64, 64).real(), 0.112540, 5e-7);
}

// The closed forms against the Fock-space evolution they describe.
TEST(AnalyticSolution, AgreesWithFockEvolution) {
  struct Case {
    const char* id;
    StateSpec state;
    QuadraticModel model;
    OrderingParams g;
    double t;
    int cutoff = kDefaultFockCutoff;
    double half_width = 8.0;
  };
  const cplx alpha(1.5, 0.0);
  const Case cases[] = {
      {"free-standard-ground", StateSpec::ground(), models::free_particle(), orderings::standard, 1.0, 60},
      {"free-Q-ground", StateSpec::ground(), models::free_particle(), orderings::antinormal, 2.0, 80, 12.0},
      {"free-wigner", StateSpec::coherent({0.5, 0.3}), models::free_particle(), orderings::wigner, 0.7, 60},
      {"ho-wigner-map", StateSpec::coherent({1.0, 0.5}), models::harmonic_oscillator(), orderings::wigner, 0.9},
      {"ho-NAN-map", StateSpec::coherent({1.0, 0.5}), models::harmonic_oscillator(), orderings::antinormal, 0.9},
      {"ho-standard-01", StateSpec::superposition01(), models::harmonic_oscillator(), orderings::standard, 0.8},
      {"ho-standard-cat", StateSpec::cat(alpha), models::harmonic_oscillator(), orderings::standard, 0.5},
      {"tdep-standard-ground", StateSpec::ground(), models::squeezed_varying_mass(0.3, 0.1), orderings::standard, 1.0},
  };
  for (const Case& c : cases) {
    // Free flow spreads the state over many Fock levels, hence larger cutoffs.
    const auto r = evolve_rho(fock_state(c.state, c.cutoff), c.model, c.t);
    // The t = 2 free Q function is elongated enough to touch a +-8 box at 1e-6.
    const GridGeometry geom = GridGeometry::square(128, c.half_width);
    const PhaseGrid oracle = rho_to_qdf(r, c.g, geom);
    const PhaseGrid closed = analytic_solution(c.id, {c.state.alpha, 0.3, 0.1}, geom, c.t);
    EXPECT_LE(linf_distance(oracle, closed), 1e-6) << c.id;
  }
}
