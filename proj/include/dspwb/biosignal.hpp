#pragma once

// Periodicity (heart-rate) estimation from a sampled real signal: the
// single-sided DFT peak, and the spacing of autocorrelation zero crossings.

#include <cmath>
#include <string>
#include <vector>

#include "dspwb/error.hpp"
#include "dspwb/signal.hpp"
#include "dspwb/transform.hpp"

namespace dspwb {

enum class RateMethod { FftPeak, AutocorrZeroCross };

struct RateEstimate {
  double frequency = 0.0;  // Hz
  double bpm = 0.0;
  RateMethod method = RateMethod::FftPeak;
  std::vector<std::size_t> evidence;  // peak bin, or the crossing lags used
  std::string notes;
};

namespace detail {

inline Signal remove_mean(const Signal& x) {
  if (!x.is_real()) throw Error(ErrorKind::Parameter, "rate estimation requires a real signal");
  auto v = x.real_part();
  const double mu = mean_real(v);
  for (double& s : v) s -= mu;
  return Signal::from_real(v, x.sample_rate(), x.origin_index());
}

}  // namespace detail

/// Frequency of the largest non-DC bin of the mean-removed single-sided spectrum.
inline RateEstimate rate_from_fft(const Signal& x) {
  x.require_sample_rate();
  if (x.size() < 16) throw Error(ErrorKind::Parameter, "rate_from_fft needs at least 16 samples");
  const SingleSided ss = single_sided(dft(detail::remove_mean(x).with_origin(0)));
  std::size_t best = 0;
  double best_mag = 0.0;
  for (std::size_t k = 1; k < ss.mags.size(); ++k) {
    if (ss.mags[k] > best_mag) {
      best_mag = ss.mags[k];
      best = k;
    }
  }
  if (best == 0 || best_mag <= 1e-12) throw Error(ErrorKind::NoPeak, "spectrum has no non-DC peak");
  RateEstimate r;
  r.frequency = ss.freqs[best];
  r.bpm = 60.0 * r.frequency;
  r.method = RateMethod::FftPeak;
  r.evidence = {best};
  r.notes = "mean removed; DC bin excluded";
  return r;
}

/// Lags m >= 1 where the sign changes relative to the last non-zero sample.
/// A run of exact zeros counts as one crossing completing at the next
/// non-zero sample.
inline std::vector<std::size_t> zero_crossings(const Signal& r) {
  std::vector<std::size_t> lags;
  int last_sign = 0;
  for (std::size_t m = 0; m < r.size(); ++m) {
    const double v = r[m].real();
    if (v == 0.0) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (last_sign != 0 && s != last_sign) lags.push_back(m);
    last_sign = s;
  }
  return lags;
}

/// Period from the first and third crossings: lag3 - lag1 samples.
inline RateEstimate rate_from_crossings(const std::vector<std::size_t>& lags, double fs) {
  if (lags.size() < 3) {
    throw Error(ErrorKind::InsufficientPeriodicity,
                "found " + std::to_string(lags.size()) + " zero crossings, need at least three");
  }
  const auto period = static_cast<double>(lags[2] - lags[0]);
  RateEstimate r;
  r.frequency = fs / period;
  r.bpm = 60.0 * r.frequency;
  r.method = RateMethod::AutocorrZeroCross;
  r.evidence = {lags[0], lags[1], lags[2]};
  return r;
}

inline RateEstimate rate_from_autocorr(const Signal& x) {
  const double fs = x.require_sample_rate();
  const Signal r = autocorrelation(detail::remove_mean(x), true);
  RateEstimate est = rate_from_crossings(zero_crossings(r), fs);
  est.notes = "mean removed; biased autocorrelation normalized by r[0]; integer lags";
  return est;
}

}  // namespace dspwb
