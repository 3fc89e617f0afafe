#pragma once

// Gaussian ordering class. A member is selected by the kernel
//   f(v, u) = exp(g1 u^2 + g2 v^2 + 2 i g3 u v)
// that multiplies the symmetric (Wigner) characteristic function. The same
// kernel written in coherent variables beta = (u + i v)/sqrt(2) is
//   exp(a1 |beta|^2 + a2 beta^2 + a3 beta*^2).

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qprop/errors.hpp"

namespace qprop {

using cplx = std::complex<double>;

struct OrderingParams {
  double g1 = 0.0;
  double g2 = 0.0;
  double g3 = 0.0;

  bool finite() const {
    return std::isfinite(g1) && std::isfinite(g2) && std::isfinite(g3);
  }
  friend bool operator==(const OrderingParams&, const OrderingParams&) = default;
};

struct OrderingParamsAlpha {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;

  friend bool operator==(const OrderingParamsAlpha&,
                         const OrderingParamsAlpha&) = default;
};

inline OrderingParams alpha_to_qp(const OrderingParamsAlpha& a) {
  return {(a.a1 + a.a2 + a.a3) / 2.0, (a.a1 - a.a2 - a.a3) / 2.0,
          (a.a2 - a.a3) / 2.0};
}

inline OrderingParamsAlpha qp_to_alpha(const OrderingParams& g) {
  return {g.g1 + g.g2, (g.g1 - g.g2 + 2.0 * g.g3) / 2.0,
          (g.g1 - g.g2 - 2.0 * g.g3) / 2.0};
}

namespace orderings {
inline constexpr OrderingParams wigner{0.0, 0.0, 0.0};
inline constexpr OrderingParams normal{0.25, 0.25, 0.0};
inline constexpr OrderingParams antinormal{-0.25, -0.25, 0.0};
inline constexpr OrderingParams standard{0.0, 0.0, 0.25};
inline constexpr OrderingParams antistandard{0.0, 0.0, -0.25};
inline constexpr OrderingParams s_ordered(double s) { return {s / 4, s / 4, 0}; }
}  // namespace orderings

/// Names accepted by `named_ordering`, with their common aliases.
inline std::vector<std::string> ordering_names() {
  return {"wigner", "normal", "antinormal", "standard", "antistandard",
          "s-ordered"};
}

inline OrderingParams named_ordering(std::string_view name,
                                     std::optional<double> s = std::nullopt) {
  if (name == "wigner" || name == "symmetric" || name == "weyl")
    return orderings::wigner;
  if (name == "normal" || name == "P" || name == "p") return orderings::normal;
  if (name == "antinormal" || name == "Q" || name == "q" || name == "husimi")
    return orderings::antinormal;
  if (name == "standard" || name == "anti-kr") return orderings::standard;
  if (name == "antistandard" || name == "KR" || name == "kirkwood-rihaczek")
    return orderings::antistandard;
  if (name == "s-ordered") {
    if (!s) throw ConfigError("ordering 's-ordered' requires a value for s");
    if (!std::isfinite(*s)) throw ConfigError("ordering parameter s must be finite");
    return orderings::s_ordered(*s);
  }
  throw ConfigError("unknown ordering name '" + std::string(name) + "'");
}

/// f(v, u) evaluated at real (u, v).
inline cplx kernel_value(const OrderingParams& g, double u, double v) {
  return std::exp(cplx(g.g1 * u * u + g.g2 * v * v, 2.0 * g.g3 * u * v));
}

}  // namespace qprop
