#pragma once

// Independent references for the propagation pipeline:
//  * truncated-Fock density-matrix evolution under the reservoir master
//    equation, mapped to a phase-space grid by direct quadrature;
//  * closed-form propagated quasi-distributions of the worked examples.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "qprop/errors.hpp"
#include "qprop/model.hpp"
#include "qprop/ordering.hpp"
#include "qprop/phasegrid.hpp"
#include "qprop/states.hpp"

namespace qprop {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr int kDefaultFockCutoff = 40;

struct FockDensityMatrix {
  CMatrix rho;

  int dim() const { return static_cast<int>(rho.rows()); }
  cplx trace() const { return rho.trace(); }

  /// Throws when Hermiticity, trace or positivity are violated.
  void validate(double herm_tol = 1e-12, double trace_tol = 1e-12,
                double eig_tol = -1e-10) const {
    if (rho.rows() != rho.cols() || rho.rows() == 0)
      throw ConfigError("density matrix must be square and non-empty");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > herm_tol)
      throw ConfigError("density matrix is not Hermitian");
    if (std::abs(trace() - 1.0) > trace_tol)
      throw ConfigError("density matrix trace differs from 1");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < eig_tol)
      throw ConfigError("density matrix has a negative eigenvalue");
  }

  static FockDensityMatrix pure(const CVector& psi) { return {psi * psi.adjoint()}; }
};

inline CMatrix annihilation(int dim) {
  CMatrix a = CMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

/// Fock amplitudes e^{-|a|^2/2} a^n / sqrt(n!).
inline CVector coherent_amplitudes(cplx alpha, int dim) {
  CVector c(dim);
  c(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < dim; ++n) c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  return c;
}

inline CVector state_vector(const StateSpec& s, int dim) {
  if (dim < 2) throw ConfigError("Fock cutoff must be >= 2");
  CVector psi = CVector::Zero(dim);
  switch (s.kind) {
    case StateSpec::Kind::ground: psi(0) = 1.0; break;
    case StateSpec::Kind::coherent: psi = coherent_amplitudes(s.alpha, dim); break;
    case StateSpec::Kind::cat:
      psi = (coherent_amplitudes(s.alpha, dim) + coherent_amplitudes(-s.alpha, dim)) /
            std::sqrt(2.0 * (1.0 + std::exp(-2.0 * std::norm(s.alpha))));
      break;
    case StateSpec::Kind::superposition01:
      psi(0) = psi(1) = 1.0 / std::numbers::sqrt2;
      break;
  }
  const double lost = std::abs(1.0 - psi.squaredNorm());
  if (lost > 1e-12)
    throw CutoffError("Fock cutoff " + std::to_string(dim) + " truncates the state (norm deficit " +
                      format_number(lost) + ")");
  return psi;
}

inline FockDensityMatrix fock_state(const StateSpec& s, int dim = kDefaultFockCutoff) {
  return FockDensityMatrix::pure(state_vector(s, dim));
}

namespace detail {

struct LadderOps {
  CMatrix a, ad, q, p;
  explicit LadderOps(int dim)
      : a(annihilation(dim)), ad(a.adjoint()),
        q((a + ad) / std::numbers::sqrt2),
        p((a - ad) / cplx(0.0, std::numbers::sqrt2)) {}
};

inline CMatrix hamiltonian_matrix(const QuadraticModel& model, const LadderOps& L,
                                  double t) {
  const int dim = static_cast<int>(L.a.rows());
  const CMatrix I = CMatrix::Identity(dim, dim);
  if (const auto& c = model.coherent_part();
      c && model.hamiltonian().k4.is_constant() && model.hamiltonian().k5.is_constant()) {
    return c->omega * (L.ad * L.a + 0.5 * I) + c->V * L.ad + std::conj(c->V) * L.a +
           c->A * L.ad * L.ad + std::conj(c->A) * L.a * L.a;
  }
  const QPHamiltonian& h = model.hamiltonian();
  return h.k1(t) * L.q * L.q + h.k2(t) * L.p * L.p +
         0.5 * h.k3(t) * (L.q * L.p + L.p * L.q) + h.k4(t) * L.q + h.k5(t) * L.p;
}

}  // namespace detail

/// Fixed-step RK4 on d rho/dt = -i[H, rho] + reservoir terms, written as
///   -i (G rho - rho G^+) + gamma [(N+1) a rho a+ + N a+ rho a + M a+ rho a+ + M* a rho a]
/// with G = H - (i gamma/2) [(N+1) a+a + N a a+ + M a+^2 + M* a^2].
inline FockDensityMatrix evolve_rho(const FockDensityMatrix& rho0,
                                    const QuadraticModel& model, double T,
                                    double dt = 1e-3, double leakage = 1e-10) {
  if (!(T >= 0.0)) throw ConfigError("evolve_rho: T must be >= 0");
  if (!(dt > 0.0)) throw ConfigError("evolve_rho: dt must be > 0");
  const int dim = rho0.dim();
  const detail::LadderOps L(dim);
  const QPHamiltonian& hq = model.hamiltonian();
  const bool time_dependent = !hq.quadratic_part_constant() || !hq.k4.is_constant() ||
                              !hq.k5.is_constant();
  const DampingSpec damp = model.damping().value_or(DampingSpec{});
  const double g = damp.gamma, N = damp.N;
  const cplx M = damp.M;
  const cplx i{0.0, 1.0};

  const CMatrix B = 0.5 * g *
                    ((N + 1) * L.ad * L.a + N * L.a * L.ad + M * L.ad * L.ad +
                     std::conj(M) * L.a * L.a);
  const Eigen::SparseMatrix<cplx> a = L.a.sparseView(), ad = L.ad.sparseView();

  auto effective = [&](double t) -> CMatrix {
    return detail::hamiltonian_matrix(model, L, t) - i * B;
  };
  auto deriv = [&](const CMatrix& r, const CMatrix& G) -> CMatrix {
    CMatrix d = -i * (G * r - r * G.adjoint());
    if (g != 0.0) {
      const CMatrix ar = a * r, adr = ad * r;
      d += g * ((N + 1) * (ar * ad) + N * (adr * a) + M * (adr * ad) +
                std::conj(M) * (ar * a));
    }
    return d;
  };

  CMatrix r = rho0.rho;
  const long n = T == 0.0 ? 0 : std::max(1L, static_cast<long>(std::ceil(T / dt - 1e-9)));
  const double h = n ? T / n : 0.0;
  const CMatrix G = effective(0.0);
  for (long s = 0; s < n; ++s) {
    const double t = s * h;
    CMatrix G0 = G, Gm = G, G1 = G;
    if (time_dependent) {
      G0 = effective(t);
      Gm = effective(t + 0.5 * h);
      G1 = effective(t + h);
    }
    const CMatrix k1 = deriv(r, G0);
    const CMatrix k2 = deriv(r + 0.5 * h * k1, Gm);
    const CMatrix k3 = deriv(r + 0.5 * h * k2, Gm);
    const CMatrix k4 = deriv(r + h * k3, G1);
    r += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  const double top = std::max(std::abs(r(dim - 1, dim - 1)), std::abs(r(dim - 2, dim - 2)));
  if (top > leakage)
    throw CutoffError("evolve_rho: top Fock populations reach " + format_number(top) +
                      " at cutoff " + std::to_string(dim) + "; raise the cutoff");
  return {r};
}

/// Quasi-distribution of rho in ordering g by direct quadrature of
///   chi_w(u, v) = \int dq' <q' - u/2| rho |q' + u/2> e^{i v q'}
/// followed by chi_f = f chi_w and a direct (matrix) inverse transform.
inline PhaseGrid rho_to_qdf(const FockDensityMatrix& rho, const OrderingParams& g,
                            const GridGeometry& geom, double decay_tol = 1e-6) {
  geom.validate();
  const int dim = rho.dim();
  const int nq = geom.nq, np = geom.np;
  const int nx = 2 * nq;
  const double dx = (geom.q_max - geom.q_min) / nx;

  // K(n, i) = <x_i - u_n/2| rho |x_i + u_n/2>
  CMatrix K(np, nx);
  Eigen::MatrixXd phi_minus(dim, nx), phi_plus(dim, nx);
  for (int n = 0; n < np; ++n) {
    const double u = geom.u(n);
    for (int i = 0; i < nx; ++i) {
      const double x = geom.q_min + i * dx;
      const auto hm = hermite_functions(dim - 1, x - 0.5 * u);
      const auto hp = hermite_functions(dim - 1, x + 0.5 * u);
      for (int m = 0; m < dim; ++m) {
        phi_minus(m, i) = hm[m];
        phi_plus(m, i) = hp[m];
      }
    }
    const CMatrix R = rho.rho * phi_plus.cast<cplx>();
    K.row(n) = (phi_minus.cast<cplx>().cwiseProduct(R)).colwise().sum();
  }
  CMatrix E(nx, nq);
  for (int i = 0; i < nx; ++i)
    for (int m = 0; m < nq; ++m) E(i, m) = std::polar(dx, geom.v(m) * (geom.q_min + i * dx));
  CMatrix chi = (K * E).transpose();  // (m: v, n: u)

  double peak = 0.0, ring = 0.0;
  for (int m = 0; m < nq; ++m)
    for (int n = 0; n < np; ++n) {
      chi(m, n) *= kernel_value(g, geom.u(n), geom.v(m));
      const double a = std::abs(chi(m, n));
      peak = std::max(peak, a);
      if (m == 0 || n == 0 || m == nq - 1 || n == np - 1) ring = std::max(ring, a);
    }
  if (!(ring <= decay_tol * peak))
    throw StabilityError("rho_to_qdf: characteristic function does not decay on the dual grid "
                         "(edge/peak = " + format_number(ring / peak) +
                         "); ordering is singular for this state or the grid is too coarse");

  CMatrix Aq(nq, nq), Bp(np, np);
  for (int j = 0; j < nq; ++j)
    for (int m = 0; m < nq; ++m) Aq(j, m) = std::polar(1.0, -geom.v(m) * geom.q(j));
  for (int n = 0; n < np; ++n)
    for (int k = 0; k < np; ++k) Bp(n, k) = std::polar(1.0, geom.u(n) * geom.p(k));
  const CMatrix Fm =
      (Aq * chi * Bp) * (geom.du() * geom.dv() / (4.0 * std::numbers::pi * std::numbers::pi));

  PhaseGrid F(geom, g);
  for (int j = 0; j < nq; ++j)
    for (int k = 0; k < np; ++k) F.at(j, k) = Fm(j, k);
  return F;
}

// ---------------------------------------------------------------------------
// Closed-form propagated solutions

struct AnalyticParams {
  cplx alpha{0.0, 0.0};
  double eps = 0.3;
  double delta = 0.1;
};

inline std::vector<std::string> analytic_cases() {
  return {"free-wigner",     "free-standard-ground", "free-Q-ground",
          "ho-wigner-map",   "ho-standard-01",       "ho-standard-cat",
          "ho-NAN-map",      "tdep-standard-ground"};
}

/// Standard-ordered cat state rotated by the unit-frequency oscillator.
inline cplx ho_standard_cat_value(cplx alpha, double t, double q, double p) {
  const double A = alpha.real(), B = alpha.imag(), s2 = std::numbers::sqrt2;
  const double pi = std::numbers::pi;
  const double Nt = A * std::cos(t) + B * std::sin(t);
  const double Mt = B * std::cos(t) - A * std::sin(t);
  const double c = std::cos(t);
  const cplx pre = 1.0 / std::sqrt(2.0 * pi) / (2.0 + 2.0 * std::exp(-2.0 * std::norm(alpha))) /
                   std::sqrt(pi) *
                   std::polar(1.0, 2.0 * A * B * (2.0 * c * c - 1.0) +
                                       (B * B - A * A) * std::sin(2.0 * t) + q * p);
  auto term = [&](double sq, double sp, double phase) {
    const double dq = q - sq * s2 * Nt, dp = p - sp * s2 * Mt;
    return std::exp(cplx(-0.5 * dq * dq - 0.5 * dp * dp, phase));
  };
  return pre * (term(+1, +1, -s2 * (q * Mt + Nt * p)) + term(+1, -1, -s2 * (q * Mt - Nt * p)) +
                term(-1, +1, -s2 * (-q * Mt + Nt * p)) + term(-1, -1, s2 * (q * Mt + Nt * p)));
}

inline PhaseGrid analytic_solution(std::string_view case_id, const AnalyticParams& prm,
                                   const GridGeometry& geom, double t) {
  const double pi = std::numbers::pi, s2 = std::numbers::sqrt2;
  const double q0 = s2 * prm.alpha.real(), p0 = s2 * prm.alpha.imag();
  auto out = [&](auto&& fn, OrderingParams g) {
    PhaseGrid F = PhaseGrid::sample(geom, fn, g, t);
    return F;
  };
  // Unit-frequency oscillator flow: (q, p) at t comes from
  // (cos t (q - tan t p), (p + sin t cos t (q - tan t p)) / cos t) at 0,
  // i.e. the rotation (q cos t - p sin t, q sin t + p cos t).
  auto back_rotate = [t](double q, double p) {
    return std::pair{q * std::cos(t) - p * std::sin(t), q * std::sin(t) + p * std::cos(t)};
  };

  if (case_id == "free-wigner")
    return out([&](double q, double p) {
      return ground_qdf_value(orderings::wigner, q - p * t - q0, p - p0);
    }, orderings::wigner);
  if (case_id == "free-standard-ground")
    return out([&](double q, double p) {
      const cplx one_m_it(1.0, -t);
      return std::polar(1.0 / std::sqrt(2.0 * pi * pi), q * p) / std::sqrt(one_m_it) *
             std::exp(-q * q / (2.0 * one_m_it) - 0.5 * p * p * cplx(1.0, t));
    }, orderings::standard);
  if (case_id == "free-Q-ground")
    return out([&](double q, double p) {
      const double d = 4.0 + t * t;
      return cplx(std::exp(-(2 * p * p + 2 * q * q + p * p * t * t - 2 * q * p * t) / d) /
                  (pi * std::sqrt(d)));
    }, orderings::antinormal);
  if (case_id == "ho-wigner-map")
    return out([&](double q, double p) {
      const auto [qs, ps] = back_rotate(q, p);
      return ground_qdf_value(orderings::wigner, qs - q0, ps - p0);
    }, orderings::wigner);
  if (case_id == "ho-NAN-map")
    return out([&](double q, double p) {
      const auto [qs, ps] = back_rotate(q, p);
      return ground_qdf_value(orderings::antinormal, qs - q0, ps - p0);
    }, orderings::antinormal);
  if (case_id == "ho-standard-01")
    return out([&](double q, double p) {
      const cplx e = std::polar(1.0, q * p) * std::exp(-0.5 * (q * q + p * p));
      return e * (cplx(1.0, -2.0 * q * p) / (2.0 * s2 * pi) +
                  (q * std::polar(1.0, t) - cplx(0.0, 1.0) * p * std::polar(1.0, -t)) /
                      (2.0 * pi));
    }, orderings::standard);
  if (case_id == "ho-standard-cat")
    return out([&](double q, double p) { return ho_standard_cat_value(prm.alpha, t, q, p); },
               orderings::standard);
  if (case_id == "tdep-standard-ground")
    return out([&](double q, double p) {
      const double e = std::exp(2.0 * prm.delta * t);
      return std::polar(1.0 / std::sqrt(2.0 * pi * pi), q * p) *
             std::exp(-0.5 * q * q / e - 0.5 * p * p * e);
    }, orderings::standard);
  throw ConfigError("unknown analytic case '" + std::string(case_id) + "'");
}

}  // namespace qprop
