#pragma once

#include "polya/precision.hpp"
#include "polya/zeros.hpp"

#include <doctest.h>

#include <string>

namespace polya::test {

inline Real R(const char* text) { return parse_real(text); }
inline Complex C(const char* re, const char* im) { return {parse_real(re), parse_real(im)}; }

inline double dist(const Complex& a, const Complex& b) { return abs(a - b).convert_to<double>(); }
inline double dist(const Real& a, const Real& b) {
  return boost::multiprecision::abs(a - b).convert_to<double>();
}
/// log10 of |a - b|, -inf-safe; lets assertions state "agree to N digits".
inline double log_dist(const Complex& a, const Complex& b) {
  const Real d = abs(a - b);
  return d == 0 ? -1000.0 : boost::multiprecision::log10(d).convert_to<double>();
}

inline std::string data_path(const std::string& name) { return std::string(POLYA_TEST_DATA) + "/" + name; }

inline const ZeroCatalog& full_catalog() {
  static const ZeroCatalog catalog = [] {
    PrecisionScope scope(80u);
    return load_zeros(data_path("zeros_100.txt"));
  }();
  return catalog;
}

}  // namespace polya::test
