#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <cstring>
#include <memory>
#include <new>
#include <mutex>
#include <vector>

namespace qprop::detail {

inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

/// In-place unnormalized DFT of a row-major n_outer x n_inner array, with an
/// independent exponent sign per axis (+1: e^{+2 pi i jk/n}, -1: e^{-...}).
/// A zero sign skips that axis. Works in an fftw_malloc buffer so the chosen
/// codelets, and hence the rounding, do not depend on the caller's alignment.
inline void dft_2d(std::vector<std::complex<double>>& data, int n_outer,
                   int n_inner, int sign_outer, int sign_inner) {
  const std::size_t n = data.size();
  std::unique_ptr<fftw_complex, decltype(&fftw_free)> mem(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n)), &fftw_free);
  if (!mem) throw std::bad_alloc();
  auto* buf = mem.get();
  std::memcpy(buf, data.data(), sizeof(fftw_complex) * n);
  fftw_plan inner = nullptr, outer = nullptr;
  {
    std::lock_guard lock(fftw_planner_mutex());
    if (sign_inner != 0)
      inner = fftw_plan_many_dft(1, &n_inner, n_outer, buf, nullptr, 1, n_inner,
                                 buf, nullptr, 1, n_inner,
                                 sign_inner > 0 ? FFTW_BACKWARD : FFTW_FORWARD,
                                 FFTW_ESTIMATE);
    if (sign_outer != 0)
      outer = fftw_plan_many_dft(1, &n_outer, n_inner, buf, nullptr, n_inner, 1,
                                 buf, nullptr, n_inner, 1,
                                 sign_outer > 0 ? FFTW_BACKWARD : FFTW_FORWARD,
                                 FFTW_ESTIMATE);
  }
  if (inner) fftw_execute(inner);
  if (outer) fftw_execute(outer);
  std::memcpy(data.data(), buf, sizeof(fftw_complex) * n);
  std::lock_guard lock(fftw_planner_mutex());
  if (inner) fftw_destroy_plan(inner);
  if (outer) fftw_destroy_plan(outer);
}

}  // namespace qprop::detail
