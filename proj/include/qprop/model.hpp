#pragma once

// Quadratic Hamiltonians and reservoir damping, in units hbar = m = 1.
//
//   H = k1 q^2 + k2 p^2 + k3 (qp + pq)/2 + k4 q + k5 p              (qp form)
//   H = w (a+ a + 1/2) + (V a+ + V* a) + (A a+^2 + A* a^2)         (coherent form)
//
// with a = (q + i p)/sqrt(2). Coefficients may depend on time as finite sums
// of real exponentials so that every downstream quantity stays closed-form.

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qprop/diagnostics.hpp"
#include "qprop/errors.hpp"

namespace qprop {

using cplx = std::complex<double>;

/// c(t) = sum_k amplitude_k * exp(rate_k * t)
class CoefficientFn {
 public:
  struct Term {
    double amplitude = 0.0;
    double rate = 0.0;
    friend bool operator==(const Term&, const Term&) = default;
  };

  CoefficientFn() = default;
  CoefficientFn(double constant) {  // NOLINT(google-explicit-constructor)
    if (constant != 0.0) terms_.push_back({constant, 0.0});
  }
  explicit CoefficientFn(std::vector<Term> terms) : terms_(std::move(terms)) {
    for (const auto& t : terms_)
      if (!std::isfinite(t.amplitude) || !std::isfinite(t.rate))
        throw ConfigError("coefficient terms must be finite");
  }

  static CoefficientFn exponential(double amplitude, double rate) {
    return CoefficientFn({{amplitude, rate}});
  }

  double operator()(double t) const {
    double s = 0.0;
    for (const auto& term : terms_)
      s += term.rate == 0.0 ? term.amplitude
                            : term.amplitude * std::exp(term.rate * t);
    return s;
  }

  const std::vector<Term>& terms() const { return terms_; }

  bool is_constant() const {
    for (const auto& term : terms_)
      if (term.rate != 0.0 && term.amplitude != 0.0) return false;
    return true;
  }
  bool is_zero() const {
    for (const auto& term : terms_)
      if (term.amplitude != 0.0) return false;
    return true;
  }

  /// s -> c(t0 + s)
  CoefficientFn shifted(double t0) const {
    CoefficientFn out;
    out.terms_.reserve(terms_.size());
    for (const auto& term : terms_)
      out.terms_.push_back(
          {term.rate == 0.0 ? term.amplitude
                            : term.amplitude * std::exp(term.rate * t0),
           term.rate});
    return out;
  }

  CoefficientFn& operator+=(const CoefficientFn& o) {
    for (const auto& term : o.terms_) {
      bool merged = false;
      for (auto& mine : terms_)
        if (mine.rate == term.rate) {
          mine.amplitude += term.amplitude;
          merged = true;
          break;
        }
      if (!merged) terms_.push_back(term);
    }
    return *this;
  }
  CoefficientFn& operator*=(double s) {
    for (auto& term : terms_) term.amplitude *= s;
    return *this;
  }
  friend CoefficientFn operator+(CoefficientFn a, const CoefficientFn& b) {
    return a += b;
  }
  friend CoefficientFn operator*(double s, CoefficientFn c) { return c *= s; }
  friend CoefficientFn operator-(const CoefficientFn& c) { return -1.0 * c; }

 private:
  std::vector<Term> terms_;
};

inline double eval_coefficient(const CoefficientFn& c, double t) { return c(t); }

struct QPHamiltonian {
  CoefficientFn k1, k2, k3, k4, k5;

  bool quadratic_part_constant() const {
    return k1.is_constant() && k2.is_constant() && k3.is_constant();
  }
  QPHamiltonian shifted(double t0) const {
    return {k1.shifted(t0), k2.shifted(t0), k3.shifted(t0), k4.shifted(t0),
            k5.shifted(t0)};
  }
};

struct CoherentHamiltonian {
  double omega = 0.0;
  cplx V{0.0, 0.0};  ///< R + iU
  cplx A{0.0, 0.0};  ///< A_x + iA_y
};

/// Expanding a = (q + ip)/sqrt(2):
///   a+ a + 1/2      = (q^2 + p^2)/2
///   V a+ + V* a     = sqrt(2) (R q + U p)
///   A a+^2 + A* a^2 = A_x (q^2 - p^2) + A_y (qp + pq)
inline QPHamiltonian coherent_to_qp(const CoherentHamiltonian& h) {
  const double s2 = std::numbers::sqrt2;
  return {h.omega / 2 + h.A.real(), h.omega / 2 - h.A.real(), 2.0 * h.A.imag(),
          s2 * h.V.real(), s2 * h.V.imag()};
}

/// Inverse of `coherent_to_qp`; k4, k5 are read at time t.
inline CoherentHamiltonian qp_to_coherent(const QPHamiltonian& h, double t = 0.0) {
  if (!h.quadratic_part_constant())
    throw RepresentationError(
        "coherent form needs time-independent k1, k2, k3");
  const double k1 = h.k1(0.0), k2 = h.k2(0.0), k3 = h.k3(0.0);
  const double s2 = std::numbers::sqrt2;
  return {k1 + k2, cplx(h.k4(t) / s2, h.k5(t) / s2), cplx((k1 - k2) / 2, k3 / 2)};
}

struct DampingSpec {
  double gamma = 0.0;
  double N = 0.0;
  cplx M{0.0, 0.0};  ///< K + iL

  /// Throws on negative rates; warns when |M|^2 > N(N+1).
  void validate() const {
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
      throw ConfigError("damping.gamma must be finite and >= 0");
    if (!(N >= 0.0) || !std::isfinite(N))
      throw ConfigError("damping.N must be finite and >= 0");
    if (!std::isfinite(M.real()) || !std::isfinite(M.imag()))
      throw ConfigError("damping.M must be finite");
    if (std::norm(M) > N * (N + 1) * (1 + 1e-12))
      warn("damping: |M|^2 = " + format_number(std::norm(M)) +
           " exceeds N(N+1) = " + format_number(N * (N + 1)) +
           "; reservoir is unphysical");
  }
};

class QuadraticModel {
 public:
  QuadraticModel() = default;

  static QuadraticModel from_qp(QPHamiltonian h,
                                std::optional<DampingSpec> damping = std::nullopt) {
    QuadraticModel m;
    m.hamiltonian_ = std::move(h);
    if (damping) {
      damping->validate();
      if (!m.hamiltonian_.quadratic_part_constant())
        throw RepresentationError(
            "damping requires time-independent k1, k2, k3");
      m.coherent_ = qp_to_coherent(m.hamiltonian_);
    }
    m.damping_ = damping;
    return m;
  }

  static QuadraticModel from_coherent(
      const CoherentHamiltonian& h,
      std::optional<DampingSpec> damping = std::nullopt) {
    if (damping) damping->validate();
    QuadraticModel m;
    m.hamiltonian_ = coherent_to_qp(h);
    m.coherent_ = h;
    m.damping_ = damping;
    return m;
  }

  const QPHamiltonian& hamiltonian() const { return hamiltonian_; }
  const std::optional<CoherentHamiltonian>& coherent_part() const {
    return coherent_;
  }
  const std::optional<DampingSpec>& damping() const { return damping_; }

  /// Model whose clock starts at t0 of this one.
  QuadraticModel shifted(double t0) const {
    QuadraticModel m = *this;
    m.hamiltonian_ = hamiltonian_.shifted(t0);
    return m;
  }

 private:
  QPHamiltonian hamiltonian_;
  std::optional<CoherentHamiltonian> coherent_;
  std::optional<DampingSpec> damping_;
};

namespace models {

inline QuadraticModel free_particle() {
  return QuadraticModel::from_qp({0.0, 0.5, 0.0, 0.0, 0.0});
}

inline QuadraticModel harmonic_oscillator(double omega = 1.0) {
  return QuadraticModel::from_coherent({omega, {}, {}});
}

/// eps e^{-2 delta t} q^2 + eps e^{2 delta t} p^2 + delta (qp + pq)/2
inline QuadraticModel squeezed_varying_mass(double eps, double delta) {
  return QuadraticModel::from_qp({CoefficientFn::exponential(eps, -2 * delta),
                                  CoefficientFn::exponential(eps, 2 * delta),
                                  delta, 0.0, 0.0});
}

}  // namespace models

}  // namespace qprop
