#pragma once

#include <complex>
#include <random>
#include <string>
#include <vector>

#include "qprop/diagnostics.hpp"

namespace qprop::test {

/// Collects library warnings for the lifetime of the object.
class WarningCapture {
 public:
  WarningCapture()
      : previous_(set_warning_handler([this](const std::string& m) { messages.push_back(m); })) {}
  ~WarningCapture() { set_warning_handler(previous_); }
  WarningCapture(const WarningCapture&) = delete;
  WarningCapture& operator=(const WarningCapture&) = delete;

  bool contains(const std::string& needle) const {
    for (const auto& m : messages)
      if (m.find(needle) != std::string::npos) return true;
    return false;
  }

  std::vector<std::string> messages;

 private:
  WarningHandler previous_;
};

inline std::mt19937_64 seeded_rng(unsigned seed = 20240611u) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace qprop::test
