#pragma once

// Spectral-truncation compression, error-band modulation and the two
// (-1)^n steganography systems.

#include <cmath>
#include <cstdint>
#include <optional>

#include "dspwb/error.hpp"
#include "dspwb/filters.hpp"
#include "dspwb/signal.hpp"
#include "dspwb/transform.hpp"

namespace dspwb {

struct CompressedAudio {
  std::vector<cplx> kept_bins;
  std::size_t original_n = 0;
  double fraction = 1.0;
  std::optional<double> sample_rate;
};

inline std::size_t kept_bin_count(std::size_t n, double fraction) {
  const auto k = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  return std::min(n, std::max<std::size_t>(1, k));
}

/// Keeps DFT bins 0..K-1 with K = max(1, round(p N)).
inline CompressedAudio fft_compress(const Signal& x, double fraction) {
  detail::require_non_empty(x, "fft_compress");
  if (!(fraction > 0.0 && fraction <= 1.0)) throw Error(ErrorKind::Parameter, "compression fraction must lie in (0, 1]");
  const Spectrum spectrum = dft(x.with_origin(0));
  const std::size_t k = kept_bin_count(x.size(), fraction);
  return CompressedAudio{std::vector<cplx>(spectrum.bins.begin(), spectrum.bins.begin() + static_cast<std::ptrdiff_t>(k)),
                         x.size(), fraction, x.sample_rate()};
}

/// Zero-pads the kept bins back to N and inverts.
inline Signal fft_extract(const CompressedAudio& c, bool project_real) {
  if (c.kept_bins.empty() || c.kept_bins.size() > c.original_n) {
    throw Error(ErrorKind::Parameter, "malformed compressed audio");
  }
  std::vector<cplx> bins = c.kept_bins;
  bins.resize(c.original_n, cplx{});
  Signal x1 = idft(Spectrum{std::move(bins), c.sample_rate});
  return project_real ? real_projection(x1) : x1;
}

/// e[n] = x[n] - x1[n]
inline Signal error_signal(const Signal& x, const Signal& x1) {
  if (x.size() != x1.size()) throw Error(ErrorKind::LengthMismatch, "error_signal requires equal lengths");
  return subtract(x, x1);
}

namespace detail {

inline Signal modulate_bins(const Signal& x, std::int64_t k0, int sign) {
  detail::require_non_empty(x, "modulation");
  const std::size_t n = x.size();
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = x[i] * unit_root(sign * static_cast<std::int64_t>(i) * k0, n);
  }
  return x.with_samples(std::move(out));
}

inline void require_bin_offset(std::int64_t k0, std::size_t n) {
  if (k0 < 0 || static_cast<std::size_t>(k0) >= n) throw Error(ErrorKind::Parameter, "k0 must satisfy 0 <= k0 < N");
}

}  // namespace detail

/// x2[n] = e[n] e^{-j 2 pi n k0 / N}, so X2[k] = E[((k + k0))].
inline Signal spectral_shift(const Signal& e, std::int64_t k0) {
  detail::require_bin_offset(k0, e.size());
  return detail::modulate_bins(e, k0, -1);
}

/// x3[n] = x2[n] e^{+j 2 pi n k0 / N}
inline Signal remodulate(const Signal& x2, std::int64_t k0) {
  detail::require_bin_offset(k0, x2.size());
  return detail::modulate_bins(x2, k0, +1);
}

struct StegOutput {
  Signal z;
  Signal y1;
  Signal y2;
};

/// Lowpass used by both systems: order 100, cutoff pi/2.
inline FirFilter steg_lowpass() { return design_lowpass(100, kPi / 2.0); }

/// z = x1 + (-1)^n x2; y1 = H z; y2 = H (-1)^n z.
inline StegOutput system1(const Signal& x1, const Signal& x2) {
  if (x1.size() != x2.size()) throw Error(ErrorKind::LengthMismatch, "system inputs must have equal lengths");
  const FirFilter h = steg_lowpass();
  Signal z = add(x1, alternate_sign(x2));
  Signal y1 = apply(h, z, true);
  Signal y2 = apply(h, alternate_sign(z), true);
  return {std::move(z), std::move(y1), std::move(y2)};
}

/// Like system1 but both inputs are bandlimited by h before mixing.
inline StegOutput system2(const Signal& x1, const Signal& x2, const FirFilter& h) {
  if (x1.size() != x2.size()) throw Error(ErrorKind::LengthMismatch, "system inputs must have equal lengths");
  if (h.design().type != FilterType::Lowpass || std::abs(h.design().edge_hi - kPi / 2.0) > 1e-12) {
    throw Error(ErrorKind::Parameter, "system2 needs a lowpass filter with cutoff pi/2");
  }
  Signal z = add(apply(h, x1, true), alternate_sign(apply(h, x2, true)));
  Signal y1 = apply(h, z, true);
  Signal y2 = apply(h, alternate_sign(z), true);
  return {std::move(z), std::move(y1), std::move(y2)};
}

}  // namespace dspwb
