#pragma once

// DFT engine: radix-2 decimation-in-time for power-of-two lengths and the
// direct sum otherwise, plus the naive reference DFT, truncated DTFT grids and
// single-sided magnitude spectra.

#include <bit>
#include <cmath>
#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "dspwb/error.hpp"
#include "dspwb/signal.hpp"

namespace dspwb {

/// Length-N DFT bins X[k].
struct Spectrum {
  std::vector<cplx> bins;
  std::optional<double> sample_rate;

  std::size_t n() const noexcept { return bins.size(); }
  const cplx& operator[](std::size_t k) const { return bins[k]; }
};

/// X(e^{jw}) sampled on a strictly increasing grid inside [-pi, pi].
struct DtftGrid {
  std::vector<double> omegas;
  std::vector<cplx> values;
};

namespace detail {

inline bool is_power_of_two(std::size_t n) { return n != 0 && std::has_single_bit(n); }

/// In-place iterative radix-2 DIT FFT. sign = -1 forward, +1 inverse (unscaled).
inline void fft_radix2(std::vector<cplx>& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  // Twiddles are computed directly per butterfly index rather than by
  // recurrence so the error stays at a few ulps for N = 1024 and beyond.
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    std::vector<cplx> tw(half);
    for (std::size_t k = 0; k < half; ++k) {
      tw[k] = std::polar(1.0, sign * kTwoPi * static_cast<double>(k) / static_cast<double>(len));
    }
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const cplx u = a[start + k];
        const cplx v = a[start + k + half] * tw[k];
        a[start + k] = u + v;
        a[start + k + half] = u - v;
      }
    }
  }
}

/// Direct sum with exact integer phase reduction; sign = -1 forward.
inline std::vector<cplx> dft_sum(std::span<const cplx> x, int sign) {
  const std::size_t n = x.size();
  std::vector<cplx> roots(n);
  for (std::size_t i = 0; i < n; ++i) {
    roots[i] = std::polar(1.0, sign * kTwoPi * static_cast<double>(i) / static_cast<double>(n));
  }
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc{};
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += x[i] * roots[idx];
      idx += k;
      if (idx >= n) idx -= n;
    }
    out[k] = acc;
  }
  return out;
}

}  // namespace detail

inline Spectrum dft(const Signal& x) {
  detail::require_non_empty(x, "dft");
  std::vector<cplx> bins = x.samples();
  if (detail::is_power_of_two(bins.size())) {
    detail::fft_radix2(bins, -1);
  } else {
    bins = detail::dft_sum(bins, -1);
  }
  return Spectrum{std::move(bins), x.sample_rate()};
}

/// Reference DFT: the literal double loop, kept free of any optimization.
inline Spectrum direct_dft(const Signal& x) {
  detail::require_non_empty(x, "direct_dft");
  const std::size_t n = x.size();
  std::vector<cplx> bins(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc{};
    for (std::size_t i = 0; i < n; ++i) {
      const double angle = -kTwoPi * static_cast<double>(k) * static_cast<double>(i) / static_cast<double>(n);
      acc += x[i] * cplx(std::cos(angle), std::sin(angle));
    }
    bins[k] = acc;
  }
  return Spectrum{std::move(bins), x.sample_rate()};
}

inline Signal idft(const Spectrum& spectrum) {
  if (spectrum.bins.empty()) throw Error(ErrorKind::Degenerate, "idft requires a non-empty spectrum");
  std::vector<cplx> out = spectrum.bins;
  if (detail::is_power_of_two(out.size())) {
    detail::fft_radix2(out, +1);
  } else {
    out = detail::dft_sum(out, +1);
  }
  const double inv_n = 1.0 / static_cast<double>(out.size());
  for (auto& v : out) v *= inv_n;
  return Signal(std::move(out), spectrum.sample_rate);
}

/// `count` evenly spaced frequencies over [-pi, pi], endpoints included.
inline std::vector<double> omega_grid(std::size_t count = 512, double lo = -kPi, double hi = kPi) {
  if (count < 2) throw Error(ErrorKind::Parameter, "a frequency grid needs at least two points");
  std::vector<double> w(count);
  for (std::size_t i = 0; i < count; ++i) {
    w[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return w;
}

namespace detail {

inline void validate_omegas(std::span<const double> omegas) {
  constexpr double slack = 1e-12;
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    if (omegas[i] < -kPi - slack || omegas[i] > kPi + slack) {
      throw Error(ErrorKind::Parameter, "frequency grid must lie within [-pi, pi]");
    }
    if (i > 0 && !(omegas[i] > omegas[i - 1])) {
      throw Error(ErrorKind::Parameter, "frequency grid must be strictly increasing");
    }
  }
}

}  // namespace detail

/// X(e^{jw}) = sum_n x[n] e^{-jwn} over the stored support, n from origin_index.
inline DtftGrid dtft_eval(const Signal& x, std::span<const double> omegas) {
  detail::validate_omegas(omegas);
  DtftGrid grid{std::vector<double>(omegas.begin(), omegas.end()), std::vector<cplx>(omegas.size())};
  for (std::size_t g = 0; g < omegas.size(); ++g) {
    const double w = omegas[g];
    cplx acc{};
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double n = static_cast<double>(x.origin_index() + static_cast<std::int64_t>(i));
      acc += x[i] * std::polar(1.0, -w * n);
    }
    grid.values[g] = acc;
  }
  return grid;
}

struct SingleSided {
  std::vector<double> freqs;  // Hz
  std::vector<double> mags;
};

/// Non-negative half of a real signal's spectrum, interior bins doubled and
/// everything divided by N so a unit sinusoid reads about 1.
inline SingleSided single_sided(const Spectrum& spectrum) {
  if (!spectrum.sample_rate) throw Error(ErrorKind::Config, "single_sided requires a sample rate");
  const std::size_t n = spectrum.n();
  if (n == 0) throw Error(ErrorKind::Degenerate, "empty spectrum");
  const double fs = *spectrum.sample_rate;
  const std::size_t half = n / 2;
  SingleSided out;
  out.freqs.resize(half + 1);
  out.mags.resize(half + 1);
  for (std::size_t k = 0; k <= half; ++k) {
    const bool edge = (k == 0) || (n % 2 == 0 && k == half);
    out.freqs[k] = static_cast<double>(k) * fs / static_cast<double>(n);
    out.mags[k] = std::abs(spectrum.bins[k]) * (edge ? 1.0 : 2.0) / static_cast<double>(n);
  }
  return out;
}

inline Signal zero_pad(const Signal& x, std::size_t length) {
  if (length < x.size()) throw Error(ErrorKind::Parameter, "zero_pad cannot shorten a signal");
  std::vector<cplx> s = x.samples();
  s.resize(length, cplx{});
  return x.with_samples(std::move(s));
}

}  // namespace dspwb
