#pragma once

// Shared generators and reference computations for the test suites. The
// reference routines here are deliberately naive and independent of the
// library code paths they check.

#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dspwb/signal.hpp"

namespace dspwb::testing {

inline std::vector<cplx> random_complex(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& x : v) x = cplx(g(rng), g(rng));
  return v;
}

inline std::vector<double> random_real(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

inline Signal random_signal(std::size_t n, std::mt19937_64& rng) { return Signal(random_complex(n, rng)); }

/// Direct evaluation of X[k] = sum x[n] exp(-j 2 pi k n / N) in long double.
inline std::vector<cplx> reference_dft(const std::vector<cplx>& x) {
  const std::size_t n = x.size();
  std::vector<cplx> out(n);
  const long double two_pi = 6.283185307179586476925286766559L;
  for (std::size_t k = 0; k < n; ++k) {
    long double re = 0.0L;
    long double im = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      const long double a = -two_pi * static_cast<long double>((k * i) % n) / static_cast<long double>(n);
      const long double c = std::cos(a);
      const long double s = std::sin(a);
      re += x[i].real() * c - x[i].imag() * s;
      im += x[i].real() * s + x[i].imag() * c;
    }
    out[k] = cplx(static_cast<double>(re), static_cast<double>(im));
  }
  return out;
}

inline double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

inline double max_rel_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  const double s = max_abs(b);
  return s > 0 ? worst / s : worst;
}

inline std::vector<double> cosine(std::size_t n, double cycles_per_sample, double amplitude = 1.0, double phase = 0.0) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = amplitude * std::cos(2.0 * 3.14159265358979323846 * cycles_per_sample * static_cast<double>(i) + phase);
  }
  return v;
}

// Evaluates a letter pattern such as "(6a*,-6f,A/12,0)" with a..f bound to
// `x` and A..F bound to `X`.
inline std::vector<cplx> eval_letter_pattern(const std::string& pattern, const std::vector<cplx>& x, const std::vector<cplx>& X) {
  std::string body = pattern.substr(1, pattern.size() - 2);
  std::vector<cplx> out;
  std::stringstream ss(body);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t i = 0;
    double sign = 1.0;
    if (tok[i] == '-') {
      sign = -1.0;
      ++i;
    }
    if (tok.substr(i) == "0") {
      out.emplace_back(0.0);
      continue;
    }
    double coeff = 1.0;
    if (std::isdigit(static_cast<unsigned char>(tok[i]))) {
      std::size_t used = 0;
      coeff = std::stod(tok.substr(i), &used);
      i += used;
    }
    const char letter = tok[i++];
    cplx v = std::islower(static_cast<unsigned char>(letter)) ? x.at(static_cast<std::size_t>(letter - 'a'))
                                                               : X.at(static_cast<std::size_t>(letter - 'A'));
    if (i < tok.size() && tok[i] == '/') {
      std::size_t used = 0;
      coeff /= std::stod(tok.substr(i + 1), &used);
      i += 1 + used;
    }
    if (i < tok.size() && tok[i] == '*') {
      v = std::conj(v);
      ++i;
    }
    if (i != tok.size()) throw std::invalid_argument("unparsed pattern token " + tok);
    out.push_back(sign * coeff * v);
  }
  return out;
}

}  // namespace dspwb::testing
