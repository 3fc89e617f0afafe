#pragma once

// Factor coefficients w1..w9 of the ordered product propagator
//   U(t, 0) = e^{w1 S1} e^{w2 S2} ... e^{w9 S9}
// (leftmost factor acts last), integrated from w_i(0) = 0 by fixed-step RK4.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <sstream>
#include <vector>

#include "qprop/eom.hpp"
#include "qprop/errors.hpp"

namespace qprop {

struct WeiNormanState {
  std::array<cplx, 9> w{};
  double t = 0.0;

  cplx& operator[](std::size_t i) { return w.at(i - 1); }
  const cplx& operator[](std::size_t i) const { return w.at(i - 1); }
};

struct IntegratorConfig {
  double dt = 0.0;  ///< <= 0 selects min(T/10000, 1e-3)
  double blowup_threshold = 1e8;
  long max_steps = 50'000'000;
  long record_every = 0;  ///< 0 records only the endpoints
};

using Derivatives = std::array<cplx, 9>;

inline Derivatives rhs(const std::array<cplx, 9>& a, const std::array<cplx, 9>& w) {
  const auto [a1, a2, a3, a4, a5, a6, a7, a8, a9] = a;
  const cplx w1 = w[0], w2 = w[1], w3 = w[2], w4 = w[3];
  const cplx w1w2 = w1 * w2;
  Derivatives d;
  d[0] = a1 - 2.0 * a3 * w1 - a2 * w1 * w1;
  d[1] = a2 + 2.0 * a2 * w1w2 + 2.0 * a3 * w2;
  d[2] = a3 + a2 * w1;
  d[3] = a4;
  d[4] = (a6 * w1 + a5) * std::exp(w3 + w4);
  d[5] = (a6 * w1w2 + a5 * w2 + a6) * std::exp(w4 - w3);
  d[6] = (a8 * w1 * w1 + a9 * w1 + a7) * std::exp(2.0 * w4 + 2.0 * w3);
  d[7] = (a9 * (w2 + w1w2 * w2) + a8 * (1.0 + 2.0 * w1w2 + w1w2 * w1w2) +
          a7 * w2 * w2) *
         std::exp(2.0 * w4 - 2.0 * w3);
  d[8] = (a9 * (1.0 + 2.0 * w1w2) + 2.0 * a8 * (w1 + w1 * w1w2) + 2.0 * a7 * w2) *
         std::exp(2.0 * w4);
  return d;
}

inline Derivatives rhs(const LieCoefficients& a, const WeiNormanState& s, double t) {
  return rhs(a.at(t), s.w);
}

inline double default_step(double T) {
  return T > 0.0 ? std::min(T / 10000.0, 1e-3) : 1e-3;
}

namespace detail {

inline void check_state(const WeiNormanState& s, double threshold) {
  for (std::size_t i = 0; i < 9; ++i) {
    const double m = std::abs(s.w[i]);
    if (!std::isfinite(m) || m > threshold) {
      std::ostringstream os;
      os << "Wei-Norman coefficient w" << (i + 1) << " diverged (|w| = " << m
         << ") at t = " << s.t
         << "; the factorization is singular here, use piecewise propagation "
            "(more slices)";
      throw BlowUpError(os.str(), s.t);
    }
  }
}

inline void rk4_step(const LieCoefficients& a, WeiNormanState& s, double h) {
  auto axpy = [](const std::array<cplx, 9>& x, const Derivatives& k, double c) {
    std::array<cplx, 9> y;
    for (std::size_t i = 0; i < 9; ++i) y[i] = x[i] + c * k[i];
    return y;
  };
  const double t = s.t;
  const auto a0 = a.at(t), am = a.at(t + 0.5 * h), a1 = a.at(t + h);
  const Derivatives k1 = rhs(a0, s.w);
  const Derivatives k2 = rhs(am, axpy(s.w, k1, 0.5 * h));
  const Derivatives k3 = rhs(am, axpy(s.w, k2, 0.5 * h));
  const Derivatives k4 = rhs(a1, axpy(s.w, k3, h));
  for (std::size_t i = 0; i < 9; ++i)
    s.w[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  s.t = t + h;
}

}  // namespace detail

/// Continues the ODE from `start` up to time `t_end`. Returns the recorded
/// states; the first is `start` and the last is at `t_end`.
inline std::vector<WeiNormanState> continue_integration(
    const LieCoefficients& a, const WeiNormanState& start, double t_end,
    const IntegratorConfig& cfg = {}) {
  const double span = t_end - start.t;
  if (!(span >= 0.0) || !std::isfinite(span))
    throw ConfigError("integration end time must not precede the start time");
  if (!(cfg.blowup_threshold > 0.0))
    throw ConfigError("blowup_threshold must be positive");
  std::vector<WeiNormanState> out{start};
  if (span == 0.0) return out;

  const double dt = cfg.dt > 0.0 ? cfg.dt : default_step(span);
  const double n_real = std::ceil(span / dt - 1e-9);
  if (n_real > static_cast<double>(cfg.max_steps))
    throw ConfigError("integration would exceed max_steps; increase dt");
  const long n = std::max(1L, static_cast<long>(n_real));
  const double h = span / static_cast<double>(n);

  WeiNormanState s = start;
  for (long k = 1; k <= n; ++k) {
    detail::rk4_step(a, s, h);
    if (k == n) s.t = t_end;
    detail::check_state(s, cfg.blowup_threshold);
    if (k == n || (cfg.record_every > 0 && k % cfg.record_every == 0))
      out.push_back(s);
  }
  return out;
}

/// Integrates from w_i(0) = 0 to T.
inline std::vector<WeiNormanState> integrate(const LieCoefficients& a, double T,
                                             const IntegratorConfig& cfg = {}) {
  if (!(T >= 0.0)) throw ConfigError("integration time T must be >= 0");
  return continue_integration(a, WeiNormanState{}, T, cfg);
}

inline WeiNormanState integrate_final(const LieCoefficients& a, double T,
                                      const IntegratorConfig& cfg = {}) {
  IntegratorConfig c = cfg;
  c.record_every = 0;
  return integrate(a, T, c).back();
}

}  // namespace qprop
