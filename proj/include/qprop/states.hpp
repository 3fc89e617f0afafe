#pragma once

// Initial quasi-distributions for the example states. Closed forms are used
// wherever one exists so that fixtures stay independent of the transform
// machinery in phasegrid.hpp.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "qprop/diagnostics.hpp"
#include "qprop/errors.hpp"
#include "qprop/ordering.hpp"
#include "qprop/phasegrid.hpp"

namespace qprop {

struct StateSpec {
  enum class Kind { ground, coherent, cat, superposition01 };
  Kind kind = Kind::ground;
  cplx alpha{0.0, 0.0};  ///< A + iB for coherent and cat states

  static StateSpec ground() { return {}; }
  static StateSpec coherent(cplx a) { return {Kind::coherent, a}; }
  static StateSpec cat(cplx a) { return {Kind::cat, a}; }
  static StateSpec superposition01() { return {Kind::superposition01, {}}; }
};

inline std::string to_string(StateSpec::Kind k) {
  switch (k) {
    case StateSpec::Kind::ground: return "ground";
    case StateSpec::Kind::coherent: return "coherent";
    case StateSpec::Kind::cat: return "cat";
    case StateSpec::Kind::superposition01: return "superposition01";
  }
  return "?";
}

/// Harmonic-oscillator eigenfunctions <x|n>, n = 0..n_max, by the stable
/// three-term recurrence.
inline std::vector<double> hermite_functions(int n_max, double x) {
  std::vector<double> phi(static_cast<std::size_t>(n_max) + 1);
  phi[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (n_max >= 1) phi[1] = std::numbers::sqrt2 * x * phi[0];
  for (int n = 1; n < n_max; ++n)
    phi[n + 1] = std::sqrt(2.0 / (n + 1)) * x * phi[n] -
                 std::sqrt(static_cast<double>(n) / (n + 1)) * phi[n - 1];
  return phi;
}

/// <q|alpha> with alpha = A + iB = (q0 + i p0)/sqrt(2).
inline cplx coherent_position_wavefunction(cplx alpha, double q) {
  const double A = alpha.real(), B = alpha.imag(), s2 = std::numbers::sqrt2;
  const double d = q - s2 * A;
  return std::pow(std::numbers::pi, -0.25) *
         std::exp(cplx(-0.5 * d * d, s2 * q * B - A * B));
}

/// <p|alpha>
inline cplx coherent_momentum_wavefunction(cplx alpha, double p) {
  const double A = alpha.real(), B = alpha.imag(), s2 = std::numbers::sqrt2;
  const double d = p - s2 * B;
  return std::pow(std::numbers::pi, -0.25) *
         std::exp(cplx(-0.5 * d * d, A * B - s2 * A * p));
}

/// F^S(q, p) = (2 pi)^{-1/2} e^{iqp} psi*(q) psi~(p) from wavefunction samples
/// on the grid's q and p nodes.
inline PhaseGrid standard_from_wavefunctions(std::span<const cplx> psi_q,
                                             std::span<const cplx> psi_tilde_p,
                                             const GridGeometry& geom) {
  geom.validate();
  if (psi_q.size() != static_cast<std::size_t>(geom.nq) ||
      psi_tilde_p.size() != static_cast<std::size_t>(geom.np))
    throw ConfigError("standard_from_wavefunctions: sample counts (" +
                      std::to_string(psi_q.size()) + ", " +
                      std::to_string(psi_tilde_p.size()) +
                      ") do not match the grid (" + std::to_string(geom.nq) +
                      ", " + std::to_string(geom.np) + ")");
  PhaseGrid F(geom, orderings::standard);
  const double c = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  for (int j = 0; j < geom.nq; ++j)
    for (int k = 0; k < geom.np; ++k)
      F.at(j, k) = c * std::polar(1.0, geom.q(j) * geom.p(k)) *
                   std::conj(psi_q[j]) * psi_tilde_p[k];
  return F;
}

/// psi~(p) = (2 pi)^{-1/2} \int psi(y) e^{-ipy} dy, by rectangle-rule
/// quadrature on a y lattice 4x finer than the grid's q spacing.
template <class Psi>
std::vector<cplx> momentum_wavefunction(Psi&& psi, const GridGeometry& geom) {
  const int ny = 4 * geom.nq;
  const double dy = (geom.q_max - geom.q_min) / ny;
  std::vector<cplx> samples(ny);
  for (int i = 0; i < ny; ++i) samples[i] = psi(geom.q_min + i * dy);
  std::vector<cplx> out(geom.np);
  const double c = dy / std::sqrt(2.0 * std::numbers::pi);
  for (int k = 0; k < geom.np; ++k) {
    cplx s = 0.0;
    const double p = geom.p(k);
    for (int i = 0; i < ny; ++i) s += samples[i] * std::polar(1.0, -p * (geom.q_min + i * dy));
    out[k] = c * s;
  }
  return out;
}

template <class Psi>
PhaseGrid standard_from_wavefunction(Psi&& psi, const GridGeometry& geom) {
  std::vector<cplx> psi_q(geom.nq);
  for (int j = 0; j < geom.nq; ++j) psi_q[j] = psi(geom.q(j));
  const std::vector<cplx> psi_p = momentum_wavefunction(psi, geom);
  return standard_from_wavefunctions(psi_q, psi_p, geom);
}

/// Ground-state QDF in ordering g: the analytic Fourier transform of
/// chi_f = exp((g1 - 1/4) u^2 + (g2 - 1/4) v^2 + 2 i g3 u v).
inline cplx ground_qdf_value(const OrderingParams& g, double q, double p) {
  const double bq = 0.25 - g.g1, bp = 0.25 - g.g2;
  const double det = 4.0 * bq * bp + 4.0 * g.g3 * g.g3;
  return std::exp(cplx(-(bp * p * p + bq * q * q), 2.0 * g.g3 * q * p) / det) /
         (2.0 * std::numbers::pi * std::sqrt(det));
}

inline void require_decaying(const OrderingParams& g) {
  if (!(g.g1 < 0.25 && g.g2 < 0.25))
    throw StabilityError(
        "ground-state characteristic function does not decay for this ordering "
        "(needs g1, g2 < 1/4); the distribution is singular");
}

inline PhaseGrid qdf_ground(const OrderingParams& g, const GridGeometry& geom) {
  require_decaying(g);
  return PhaseGrid::sample(
      geom, [&](double q, double p) { return ground_qdf_value(g, q, p); }, g);
}

/// Coherent state in ordering g: the ground-state function displaced to
/// (q0, p0) = sqrt(2) (Re alpha, Im alpha).
inline PhaseGrid qdf_coherent(const OrderingParams& g, cplx alpha,
                              const GridGeometry& geom) {
  require_decaying(g);
  const double q0 = std::numbers::sqrt2 * alpha.real();
  const double p0 = std::numbers::sqrt2 * alpha.imag();
  const double margin = 4.0 / std::numbers::sqrt2;
  if (q0 - geom.q_min < margin || geom.q_max - q0 < margin ||
      p0 - geom.p_min < margin || geom.p_max - p0 < margin)
    warn("coherent state centre lies within 4 sigma of the grid boundary");
  return PhaseGrid::sample(
      geom, [&](double q, double p) { return ground_qdf_value(g, q - q0, p - p0); },
      g);
}

inline PhaseGrid wigner_coherent(cplx alpha, const GridGeometry& geom) {
  return qdf_coherent(orderings::wigner, alpha, geom);
}

/// Standard-ordered cat state (|alpha> + |-alpha>)/sqrt(2(1 + e^{-2|alpha|^2})),
/// as the four-Gaussian closed form.
inline cplx cat_standard_value(cplx alpha, double q, double p) {
  const double A = alpha.real(), B = alpha.imag(), s2 = std::numbers::sqrt2;
  const double pi = std::numbers::pi;
  const cplx pre = 1.0 / std::sqrt(2.0 * pi) /
                   (2.0 + 2.0 * std::exp(-2.0 * std::norm(alpha))) / std::sqrt(pi) *
                   std::polar(1.0, 2.0 * A * B + q * p);
  auto term = [&](double sq, double sp, double phase) {
    const double dq = q - sq * s2 * A, dp = p - sp * s2 * B;
    return std::exp(cplx(-0.5 * dq * dq - 0.5 * dp * dp, phase));
  };
  return pre * (term(+1, +1, -s2 * (q * B + A * p)) + term(+1, -1, -s2 * (q * B - A * p)) +
                term(-1, +1, -s2 * (-q * B + A * p)) + term(-1, -1, s2 * (q * B + A * p)));
}

inline PhaseGrid cat_standard(cplx alpha, const GridGeometry& geom) {
  return PhaseGrid::sample(
      geom, [&](double q, double p) { return cat_standard_value(alpha, q, p); },
      orderings::standard);
}

/// Standard-ordered (|0> + |1>)/sqrt(2).
inline cplx superposition01_standard_value(double q, double p) {
  const double pi = std::numbers::pi, s2 = std::numbers::sqrt2;
  const cplx bracket = cplx(1.0 + s2 * q, -2.0 * q * p - s2 * p);
  return std::polar(std::exp(-0.5 * (q * q + p * p)) / (2.0 * s2 * pi), q * p) * bracket;
}

inline PhaseGrid superposition01_standard(const GridGeometry& geom) {
  return PhaseGrid::sample(geom, superposition01_standard_value, orderings::standard);
}

/// Any example state in any ordering for which it is a regular function.
/// Cat and superposition states are built in standard ordering and converted.
inline PhaseGrid make_state(const StateSpec& s, const OrderingParams& g,
                            const GridGeometry& geom,
                            double cap = kDefaultStabilityCap) {
  switch (s.kind) {
    case StateSpec::Kind::ground: return qdf_ground(g, geom);
    case StateSpec::Kind::coherent: return qdf_coherent(g, s.alpha, geom);
    case StateSpec::Kind::cat:
      return convert_ordering(cat_standard(s.alpha, geom), orderings::standard, g, cap);
    case StateSpec::Kind::superposition01:
      return convert_ordering(superposition01_standard(geom), orderings::standard, g, cap);
  }
  throw ConfigError("unknown state kind");
}

}  // namespace qprop
