#pragma once

// Coefficients a_1..a_9 of dF/dt = sum_i a_i S_i F, with the phase-space
// generators
//   S1 = p d/dq            S2 = q d/dp            S3 = d/dq q - d/dp p
//   S4 = d/dq q + d/dp p   S5 = d/dq              S6 = d/dp
//   S7 = d^2/dq^2          S8 = d^2/dp^2          S9 = d^2/dq dp

#include <array>
#include <complex>
#include <cstddef>

#include "qprop/errors.hpp"
#include "qprop/model.hpp"
#include "qprop/ordering.hpp"

namespace qprop {

/// Complex-valued exponential sum, kept as separate real and imaginary parts.
struct ComplexCoefficient {
  CoefficientFn re;
  CoefficientFn im;

  cplx operator()(double t) const { return {re(t), im(t)}; }
  bool is_real() const { return im.is_zero(); }
  ComplexCoefficient shifted(double t0) const {
    return {re.shifted(t0), im.shifted(t0)};
  }

  ComplexCoefficient& operator+=(const ComplexCoefficient& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  friend ComplexCoefficient operator+(ComplexCoefficient a,
                                      const ComplexCoefficient& b) {
    return a += b;
  }
};

/// z * c(t) for complex constant z and real exponential sum c.
inline ComplexCoefficient operator*(cplx z, const CoefficientFn& c) {
  return {z.real() * c, z.imag() * c};
}

inline ComplexCoefficient constant_coefficient(cplx z) {
  return {CoefficientFn(z.real()), CoefficientFn(z.imag())};
}

struct LieCoefficients {
  std::array<ComplexCoefficient, 9> a;

  /// 1-based access matching the generator numbering.
  ComplexCoefficient& operator[](std::size_t i) { return a.at(i - 1); }
  const ComplexCoefficient& operator[](std::size_t i) const { return a.at(i - 1); }

  std::array<cplx, 9> at(double t) const {
    std::array<cplx, 9> out{};
    for (std::size_t i = 0; i < 9; ++i) out[i] = a[i](t);
    return out;
  }

  bool first_order_real() const {
    for (std::size_t i = 0; i < 6; ++i)
      if (!a[i].is_real()) return false;
    return true;
  }

  LieCoefficients shifted(double t0) const {
    LieCoefficients out;
    for (std::size_t i = 0; i < 9; ++i) out.a[i] = a[i].shifted(t0);
    return out;
  }

  LieCoefficients& operator+=(const LieCoefficients& o) {
    for (std::size_t i = 0; i < 9; ++i) a[i] += o.a[i];
    return *this;
  }
  friend LieCoefficients operator+(LieCoefficients x, const LieCoefficients& y) {
    return x += y;
  }
};

/// Undamped equation of motion for ordering g. The second-order terms a7..a9
/// are the ordering corrections; they vanish for the Wigner function.
inline LieCoefficients hamiltonian_lie_coeffs(const QPHamiltonian& h,
                                              const OrderingParams& g) {
  const cplx i{0.0, 1.0};
  LieCoefficients c;
  c[1] = cplx(-2.0) * h.k2;
  c[2] = cplx(2.0) * h.k1;
  c[3] = cplx(-1.0) * h.k3;
  c[5] = cplx(-1.0) * h.k5;
  c[6] = cplx(1.0) * h.k4;
  c[7] = cplx(2.0 * g.g2) * h.k3 + (-4.0 * i * g.g3) * h.k2;
  c[8] = cplx(-2.0 * g.g1) * h.k3 + (4.0 * i * g.g3) * h.k1;
  c[9] = cplx(-4.0 * g.g2) * h.k1 + cplx(4.0 * g.g1) * h.k2;
  return c;
}

/// Reservoir contribution together with the ordering corrections of every
/// term that is conjugated by the ordering kernel. The Wigner drift from
/// w, V, A is not included; `hamiltonian_lie_coeffs(h, wigner)` supplies it.
inline LieCoefficients damping_lie_coeffs(const QuadraticModel& model,
                                          const OrderingParams& g) {
  if (!model.damping())
    throw ConfigError("damping_lie_coeffs: model has no damping");
  if (!model.coherent_part())
    throw RepresentationError(
        "damping requires time-independent k1, k2, k3 (coherent form)");
  const DampingSpec& d = *model.damping();
  const CoherentHamiltonian& h = *model.coherent_part();
  const double gamma = d.gamma, K = d.M.real(), L = d.M.imag();
  const double w = h.omega, ax = h.A.real(), ay = h.A.imag();
  const cplx i{0.0, 1.0};

  const double diffusion = 0.5 * gamma * (d.N + 0.5);
  cplx a4 = 0.5 * gamma;
  cplx a7 = -0.5 * gamma * K + diffusion;
  cplx a8 = 0.5 * gamma * K + diffusion;
  cplx a9 = -gamma * L;

  a9 += 2.0 * w * (g.g1 - g.g2) - 4.0 * ax * (g.g1 + g.g2) + 2.0 * i * gamma * g.g3;
  a7 += -2.0 * i * w * g.g3 - gamma * g.g2 + 4.0 * i * ax * g.g3 + 4.0 * ay * g.g2;
  a8 += 2.0 * i * w * g.g3 - gamma * g.g1 + 4.0 * i * ax * g.g3 - 4.0 * ay * g.g1;

  LieCoefficients c;
  c[4] = constant_coefficient(a4);
  c[7] = constant_coefficient(a7);
  c[8] = constant_coefficient(a8);
  c[9] = constant_coefficient(a9);
  return c;
}

inline LieCoefficients assemble(const QuadraticModel& model,
                                const OrderingParams& g) {
  if (!model.damping()) return hamiltonian_lie_coeffs(model.hamiltonian(), g);
  return hamiltonian_lie_coeffs(model.hamiltonian(), orderings::wigner) +
         damping_lie_coeffs(model, g);
}

}  // namespace qprop
