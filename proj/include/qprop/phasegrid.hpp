#pragma once

// Sampled quasi-distributions and the factored propagator acting on them.
//
// Transform pair (continuous normalization):
//   chi(u, v) = \iint F(q, p) e^{+i v q - i u p} dq dp
//   F(q, p)   = (1/4 pi^2) \iint chi(u, v) e^{-i v q + i u p} du dv
// so that d/dq -> -i v and d/dp -> +i u under the transform.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qprop/detail/fft.hpp"
#include "qprop/diagnostics.hpp"
#include "qprop/eom.hpp"
#include "qprop/errors.hpp"
#include "qprop/ordering.hpp"
#include "qprop/weinorman.hpp"

namespace qprop {

using cplx = std::complex<double>;

inline constexpr double kDefaultStabilityCap = 1e6;

/// Periodic sample lattice: q_j = q_min + j (q_max - q_min)/nq, j < nq.
struct GridGeometry {
  int nq = 0;
  int np = 0;
  double q_min = 0.0, q_max = 0.0;
  double p_min = 0.0, p_max = 0.0;

  double dq() const { return (q_max - q_min) / nq; }
  double dp() const { return (p_max - p_min) / np; }
  double q(int j) const { return q_min + j * dq(); }
  double p(int k) const { return p_min + k * dp(); }
  std::size_t size() const { return static_cast<std::size_t>(nq) * np; }

  /// Dual (characteristic) coordinates, centred so that v = 0 at m = nq/2.
  double dv() const { return 2.0 * std::numbers::pi / (q_max - q_min); }
  double du() const { return 2.0 * std::numbers::pi / (p_max - p_min); }
  double v(int m) const { return (m - nq / 2) * dv(); }
  double u(int n) const { return (n - np / 2) * du(); }

  void validate() const {
    auto pow2 = [](int n) { return n >= 8 && (n & (n - 1)) == 0; };
    if (!pow2(nq) || !pow2(np))
      throw ConfigError("grid sizes nq, np must be powers of two >= 8 (got " +
                        std::to_string(nq) + ", " + std::to_string(np) + ")");
    if (!(q_max > q_min) || !(p_max > p_min) || !std::isfinite(q_min) ||
        !std::isfinite(q_max) || !std::isfinite(p_min) || !std::isfinite(p_max))
      throw ConfigError("grid bounds must be finite with max > min");
  }

  friend bool operator==(const GridGeometry&, const GridGeometry&) = default;

  static GridGeometry square(int n, double half_width) {
    return {n, n, -half_width, half_width, -half_width, half_width};
  }
};

/// Quasi-distribution samples, row-major with q outer and p inner.
struct PhaseGrid {
  GridGeometry geom;
  std::vector<cplx> values;
  OrderingParams ordering{};
  double t = 0.0;

  PhaseGrid() = default;
  explicit PhaseGrid(const GridGeometry& g, OrderingParams ord = {}, double time = 0.0)
      : geom(g), values(g.size()), ordering(ord), t(time) {
    geom.validate();
  }

  cplx& at(int j, int k) { return values[static_cast<std::size_t>(j) * geom.np + k]; }
  const cplx& at(int j, int k) const {
    return values[static_cast<std::size_t>(j) * geom.np + k];
  }

  template <class Fn>
  static PhaseGrid sample(const GridGeometry& g, Fn&& fn, OrderingParams ord = {},
                          double time = 0.0) {
    PhaseGrid out(g, ord, time);
    for (int j = 0; j < g.nq; ++j)
      for (int k = 0; k < g.np; ++k) out.at(j, k) = fn(g.q(j), g.p(k));
    return out;
  }
};

/// Characteristic-function samples dual to a PhaseGrid, row-major with v
/// outer (conjugate to q) and u inner (conjugate to p).
struct CharGrid {
  GridGeometry geom;  ///< geometry of the phase grid this is dual to
  std::vector<cplx> values;

  cplx& at(int m, int n) { return values[static_cast<std::size_t>(m) * geom.np + n]; }
  const cplx& at(int m, int n) const {
    return values[static_cast<std::size_t>(m) * geom.np + n];
  }
  /// chi(0, 0)
  cplx origin() const { return at(geom.nq / 2, geom.np / 2); }
};

inline CharGrid to_char(const PhaseGrid& F) {
  const GridGeometry& g = F.geom;
  CharGrid X{g, F.values};
  for (int j = 0; j < g.nq; ++j)
    for (int k = 0; k < g.np; ++k)
      if ((j + k) & 1) X.at(j, k) = -X.at(j, k);
  detail::dft_2d(X.values, g.nq, g.np, +1, -1);
  const double scale = g.dq() * g.dp();
  for (int m = 0; m < g.nq; ++m)
    for (int n = 0; n < g.np; ++n)
      X.at(m, n) *= scale * std::polar(1.0, g.v(m) * g.q_min - g.u(n) * g.p_min);
  return X;
}

inline PhaseGrid from_char(const CharGrid& X, OrderingParams ordering = {},
                           double t = 0.0) {
  const GridGeometry& g = X.geom;
  PhaseGrid F(g, ordering, t);
  for (int m = 0; m < g.nq; ++m)
    for (int n = 0; n < g.np; ++n)
      F.at(m, n) =
          X.at(m, n) * std::polar(1.0, -g.v(m) * g.q_min + g.u(n) * g.p_min);
  detail::dft_2d(F.values, g.nq, g.np, -1, +1);
  const double scale = g.du() * g.dv() / (4.0 * std::numbers::pi * std::numbers::pi);
  for (int j = 0; j < g.nq; ++j)
    for (int k = 0; k < g.np; ++k)
      F.at(j, k) *= ((j + k) & 1) ? -scale : scale;
  return F;
}

namespace detail {

/// Relative level below which characteristic-function samples are treated
/// as transform round-off.
inline constexpr double kSpectralFloor = 1e-13;

/// Multiplies chi by exp(c_uu u^2 + c_vv v^2 + c_uv u v). The growth of the
/// multiplier is capped over the samples where |chi| exceeds kSpectralFloor
/// of its peak; sub-floor samples the multiplier would amplify are zeroed.
inline PhaseGrid spectral_multiply(const PhaseGrid& F, cplx c_uu, cplx c_vv,
                                   cplx c_uv, double cap,
                                   const std::array<const char*, 3>& labels,
                                   const char* context) {
  if (c_uu == 0.0 && c_vv == 0.0 && c_uv == 0.0) return F;
  if (!(cap > 0.0)) throw ConfigError("stability cap must be positive");
  const GridGeometry& g = F.geom;
  CharGrid X = to_char(F);
  double peak = 0.0;
  for (const cplx& x : X.values) peak = std::max(peak, std::abs(x));
  if (peak == 0.0) return F;
  const double floor = kSpectralFloor * peak;

  double worst = -std::numeric_limits<double>::infinity();
  std::array<double, 3> worst_terms{};
  for (int m = 0; m < g.nq; ++m)
    for (int n = 0; n < g.np; ++n) {
      const double u = g.u(n), v = g.v(m);
      const std::array<double, 3> terms{(c_uu * u * u).real(), (c_vv * v * v).real(),
                                        (c_uv * u * v).real()};
      const double e = terms[0] + terms[1] + terms[2];
      cplx& x = X.at(m, n);
      if (std::abs(x) < floor) {
        if (e > 0.0) x = 0.0;
        continue;
      }
      if (e > worst) {
        worst = e;
        worst_terms = terms;
      }
    }
  if (!(worst <= std::log(cap))) {
    const auto i = std::max_element(worst_terms.begin(), worst_terms.end()) - worst_terms.begin();
    std::ostringstream os;
    os << context << ": spectral multiplier reaches exp(" << worst << ") > cap " << cap
       << " on the support of the characteristic function; offending factor " << labels[i];
    throw StabilityError(os.str());
  }
  for (int m = 0; m < g.nq; ++m)
    for (int n = 0; n < g.np; ++n) {
      const double u = g.u(n), v = g.v(m);
      X.at(m, n) *= std::exp(c_uu * u * u + c_vv * v * v + c_uv * u * v);
    }
  return from_char(X, F.ordering, F.t);
}

/// Periodic cubic B-spline coefficients of the samples.
inline std::vector<cplx> bspline_coefficients(const PhaseGrid& F) {
  const GridGeometry& g = F.geom;
  std::vector<cplx> c = F.values;
  detail::dft_2d(c, g.nq, g.np, -1, -1);
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> fq(g.nq), fp(g.np);
  for (int m = 0; m < g.nq; ++m) fq[m] = 2.0 / 3.0 + std::cos(two_pi * m / g.nq) / 3.0;
  for (int n = 0; n < g.np; ++n) fp[n] = 2.0 / 3.0 + std::cos(two_pi * n / g.np) / 3.0;
  const double norm = 1.0 / static_cast<double>(g.size());
  for (int m = 0; m < g.nq; ++m)
    for (int n = 0; n < g.np; ++n)
      c[static_cast<std::size_t>(m) * g.np + n] *= norm / (fq[m] * fp[n]);
  detail::dft_2d(c, g.nq, g.np, +1, +1);
  return c;
}

inline std::array<double, 4> bspline_weights(double frac) {
  const double t = frac, s = 1.0 - frac;
  return {s * s * s / 6.0, (3 * t * t * t - 6 * t * t + 4) / 6.0,
          (-3 * t * t * t + 3 * t * t + 3 * t + 1) / 6.0, t * t * t / 6.0};
}

}  // namespace detail

/// Applies e^{w7 S7} e^{w8 S8} e^{w9 S9} through the multiplier
/// exp(-w7 v^2 - w8 u^2 + w9 u v) on the characteristic function.
inline PhaseGrid apply_diffusion(const PhaseGrid& F, cplx w7, cplx w8, cplx w9,
                                 double cap = kDefaultStabilityCap) {
  return detail::spectral_multiply(
      F, -w8, -w7, w9, cap,
      {"w8 (d^2/dp^2)", "w7 (d^2/dq^2)", "w9 (d^2/dq dp)"}, "apply_diffusion");
}

/// Source coordinates of the composed first-order factors:
/// x -> T6 T5 T4 T3 T2 T1 x, i.e. (q, p) -> M (q, p) + c.
struct AffineMap {
  std::array<double, 4> M{1, 0, 0, 1};  ///< row-major 2x2
  std::array<double, 2> c{0, 0};
  double prefactor = 1.0;

  std::array<double, 2> operator()(double q, double p) const {
    return {M[0] * q + M[1] * p + c[0], M[2] * q + M[3] * p + c[1]};
  }

  static AffineMap from_factors(const std::array<double, 6>& w) {
    const auto [w1, w2, w3, w4, w5, w6] = w;
    // T2 T1 = [[1, w1], [w2, 1 + w2 w1]]
    const double sq = std::exp(w3 + w4), sp = std::exp(w4 - w3);
    AffineMap m;
    m.M = {sq * 1.0, sq * w1, sp * w2, sp * (1.0 + w2 * w1)};
    m.c = {w5, w6};
    m.prefactor = std::exp(2.0 * w4);
    return m;
  }
};

inline PhaseGrid apply_affine(const PhaseGrid& F, const std::array<cplx, 6>& w) {
  std::array<double, 6> wr{};
  bool identity = true;
  for (std::size_t i = 0; i < 6; ++i) {
    if (std::abs(w[i].imag()) > 1e-12 * std::max(1.0, std::abs(w[i].real())))
      throw RepresentationError("apply_affine: complex first-order coefficient w" +
                                std::to_string(i + 1) + " is not supported");
    wr[i] = w[i].real();
    identity = identity && wr[i] == 0.0;
  }
  if (identity) return F;

  const GridGeometry& g = F.geom;
  double peak = 0.0, ring = 0.0;
  for (int j = 0; j < g.nq; ++j)
    for (int k = 0; k < g.np; ++k) {
      const double a = std::abs(F.at(j, k));
      peak = std::max(peak, a);
      if (j == 0 || k == 0 || j == g.nq - 1 || k == g.np - 1) ring = std::max(ring, a);
    }
  if (ring > 1e-10 * peak)
    warn("apply_affine: boundary ring carries |F| = " + format_number(ring) +
         " (peak " + format_number(peak) +
         "); values mapped from outside the grid are zero-filled");

  const AffineMap map = AffineMap::from_factors(wr);
  const std::vector<cplx> coef = detail::bspline_coefficients(F);
  PhaseGrid out(g, F.ordering, F.t);
  const double dq = g.dq(), dp = g.dp();
  for (int j = 0; j < g.nq; ++j)
    for (int k = 0; k < g.np; ++k) {
      const auto [qs, ps] = map(g.q(j), g.p(k));
      const double x = (qs - g.q_min) / dq, y = (ps - g.p_min) / dp;
      if (!(x >= 0.0 && x <= g.nq - 1 && y >= 0.0 && y <= g.np - 1)) continue;
      const int ix = static_cast<int>(std::floor(x)), iy = static_cast<int>(std::floor(y));
      const auto wx = detail::bspline_weights(x - ix);
      const auto wy = detail::bspline_weights(y - iy);
      cplx acc = 0.0;
      for (int a = 0; a < 4; ++a) {
        const int jj = ((ix - 1 + a) % g.nq + g.nq) % g.nq;
        cplx row = 0.0;
        for (int b = 0; b < 4; ++b) {
          const int kk = ((iy - 1 + b) % g.np + g.np) % g.np;
          row += wy[b] * coef[static_cast<std::size_t>(jj) * g.np + kk];
        }
        acc += wx[a] * row;
      }
      out.at(j, k) = map.prefactor * acc;
    }
  return out;
}

/// Applies the full ordered product to F0; diffusion factors act first.
inline PhaseGrid propagate(const PhaseGrid& F0, const WeiNormanState& w,
                           double cap = kDefaultStabilityCap) {
  PhaseGrid out = apply_affine(apply_diffusion(F0, w[7], w[8], w[9], cap),
                               {w[1], w[2], w[3], w[4], w[5], w[6]});
  out.t = F0.t + w.t;
  return out;
}

struct PiecewiseOptions {
  IntegratorConfig integrator{};
  int max_refinements = 6;  ///< binary splits allowed per slice on blow-up
  double cap = kDefaultStabilityCap;
};

namespace detail {

inline PhaseGrid propagate_segment(const PhaseGrid& F, const LieCoefficients& a,
                                   double t0, double t1,
                                   const PiecewiseOptions& opt, int depth) {
  try {
    IntegratorConfig cfg = opt.integrator;
    cfg.record_every = 0;
    WeiNormanState w = integrate(a.shifted(t0), t1 - t0, cfg).back();
    return propagate(F, w, opt.cap);
  } catch (const BlowUpError& e) {
    if (depth >= opt.max_refinements)
      throw BlowUpError(std::string(e.what()) + " [slice [" + format_number(t0) +
                            ", " + format_number(t1) +
                            "] still singular after refinement]",
                        t0 + e.time());
    const double mid = 0.5 * (t0 + t1);
    return propagate_segment(propagate_segment(F, a, t0, mid, opt, depth + 1), a,
                             mid, t1, opt, depth + 1);
  }
}

}  // namespace detail

/// U(T, 0) = U(T, t_{n-1}) ... U(t_1, 0), each factor re-integrated from
/// zero initial conditions with the time-shifted coefficients.
inline PhaseGrid propagate_piecewise(const PhaseGrid& F0, const LieCoefficients& a,
                                     double T, int slices,
                                     const PiecewiseOptions& opt = {}) {
  if (slices < 1) throw ConfigError("slices must be >= 1");
  if (!(T >= 0.0)) throw ConfigError("propagation time T must be >= 0");
  PhaseGrid F = F0;
  for (int s = 0; s < slices; ++s) {
    const double t0 = T * s / slices, t1 = T * (s + 1) / slices;
    F = detail::propagate_segment(F, a, t0, t1, opt, 0);
  }
  F.t = F0.t + T;
  return F;
}

inline PhaseGrid propagate_piecewise(const PhaseGrid& F0, const QuadraticModel& model,
                                     const OrderingParams& g, double T, int slices,
                                     const PiecewiseOptions& opt = {}) {
  if (!(F0.ordering == g))
    warn("propagate_piecewise: grid ordering metadata differs from the requested ordering");
  PhaseGrid out = propagate_piecewise(F0, assemble(model, g), T, slices, opt);
  out.ordering = g;
  return out;
}

/// chi_to = (f_to / f_from) chi_from.
inline PhaseGrid convert_ordering(const PhaseGrid& F, const OrderingParams& from,
                                  const OrderingParams& to,
                                  double cap = kDefaultStabilityCap) {
  PhaseGrid out = detail::spectral_multiply(
      F, to.g1 - from.g1, to.g2 - from.g2, cplx(0.0, 2.0 * (to.g3 - from.g3)), cap,
      {"g1 (u^2 kernel term)", "g2 (v^2 kernel term)", "g3 (uv kernel term)"},
      "convert_ordering");
  out.ordering = to;
  return out;
}

/// sum F dq dp  (= chi(0, 0))
inline cplx normalization(const PhaseGrid& F) {
  cplx s = 0.0;
  for (const cplx& x : F.values) s += x;
  return s * F.geom.dq() * F.geom.dp();
}

/// Rectangle-rule  \iint q^m p^n F dq dp.
inline cplx moment(const PhaseGrid& F, int m, int n) {
  if (m < 0 || n < 0 || m + n > 4)
    throw ConfigError("moment: orders must satisfy 0 <= m + n <= 4");
  const GridGeometry& g = F.geom;
  cplx s = 0.0;
  for (int j = 0; j < g.nq; ++j) {
    const double qm = std::pow(g.q(j), m);
    for (int k = 0; k < g.np; ++k) s += qm * std::pow(g.p(k), n) * F.at(j, k);
  }
  return s * g.dq() * g.dp();
}

/// Weyl symbol k0 + k1 q^2 + k2 p^2 + k3 qp + k4 q + k5 p of the operator
/// k0 + k1 q^2 + k2 p^2 + k3 (qp + pq)/2 + k4 q + k5 p.
struct QuadraticSymbol {
  double k1 = 0, k2 = 0, k3 = 0, k4 = 0, k5 = 0, k0 = 0;
};

/// <A> = \iint A^f F^f, where the ordering-g symbol of a quadratic operator
/// shifts the Weyl symbol by 2 g2 k1 + 2 g1 k2 - 2 i g3 k3.
inline cplx expectation_quadratic(const PhaseGrid& F, const QuadraticSymbol& s,
                                  const OrderingParams& g) {
  const cplx shift = cplx(s.k0 + 2 * g.g2 * s.k1 + 2 * g.g1 * s.k2,
                          -2 * g.g3 * s.k3);
  return s.k1 * moment(F, 2, 0) + s.k2 * moment(F, 0, 2) + s.k3 * moment(F, 1, 1) +
         s.k4 * moment(F, 1, 0) + s.k5 * moment(F, 0, 1) + shift * moment(F, 0, 0);
}

inline double linf_distance(const PhaseGrid& a, const PhaseGrid& b) {
  if (!(a.geom == b.geom)) throw ConfigError("grid geometries differ");
  double d = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    d = std::max(d, std::abs(a.values[i] - b.values[i]));
  return d;
}

/// Continuous L2 norm of the difference, sqrt(sum |a - b|^2 dq dp).
inline double l2_distance(const PhaseGrid& a, const PhaseGrid& b) {
  if (!(a.geom == b.geom)) throw ConfigError("grid geometries differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) s += std::norm(a.values[i] - b.values[i]);
  return std::sqrt(s * a.geom.dq() * a.geom.dp());
}

inline double max_abs(const PhaseGrid& a) {
  double m = 0.0;
  for (const cplx& x : a.values) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace qprop
