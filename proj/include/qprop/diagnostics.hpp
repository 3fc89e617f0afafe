#pragma once

#include <cstdio>
#include <functional>
#include <iostream>
#include <mutex>
#include <string>
#include <utility>

namespace qprop {

using WarningHandler = std::function<void(const std::string&)>;

namespace detail {
inline std::mutex& warning_mutex() {
  static std::mutex m;
  return m;
}
inline WarningHandler& warning_handler() {
  static WarningHandler h = [](const std::string& msg) {
    std::cerr << "qprop-warning: " << msg << '\n';
  };
  return h;
}
}  // namespace detail

/// Replaces the sink for non-fatal diagnostics; returns the previous one.
inline WarningHandler set_warning_handler(WarningHandler h) {
  std::lock_guard lock(detail::warning_mutex());
  return std::exchange(detail::warning_handler(), std::move(h));
}

/// Compact human-readable number for diagnostics ("%.6g").
inline std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

inline void warn(const std::string& msg) {
  std::lock_guard lock(detail::warning_mutex());
  if (detail::warning_handler()) detail::warning_handler()(msg);
}

}  // namespace qprop
