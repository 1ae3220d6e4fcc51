#pragma once

// Linear-phase FIR design by the windowed-sinc method (Hamming window).

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "dspwb/error.hpp"
#include "dspwb/signal.hpp"
#include "dspwb/transform.hpp"

namespace dspwb {

enum class FilterType { Lowpass, Bandpass };

struct FirDesign {
  FilterType type = FilterType::Lowpass;
  double edge_lo = 0.0;  // rad/sample; 0 for lowpass
  double edge_hi = 0.0;  // rad/sample; the cutoff for lowpass
  std::string window = "hamming";
};

class FirFilter {
 public:
  FirFilter(std::vector<double> taps, FirDesign design) : taps_(std::move(taps)), design_(std::move(design)) {
    if (taps_.empty() || taps_.size() % 2 == 0) {
      throw Error(ErrorKind::Design, "an FIR filter needs an odd tap count (even order)");
    }
  }

  /// Pass-through filter (order 0).
  static FirFilter identity() { return FirFilter({1.0}, FirDesign{FilterType::Lowpass, 0.0, kPi, "none"}); }

  const std::vector<double>& taps() const noexcept { return taps_; }
  int order() const noexcept { return static_cast<int>(taps_.size()) - 1; }
  int delay() const noexcept { return order() / 2; }
  const FirDesign& design() const noexcept { return design_; }

 private:
  std::vector<double> taps_;
  FirDesign design_;
};

/// Symmetric Hamming window of the given length.
inline std::vector<double> hamming_window(std::size_t length) {
  std::vector<double> w(length, 1.0);
  if (length < 2) return w;
  const double denom = static_cast<double>(length - 1);
  for (std::size_t i = 0; i < length; ++i) w[i] = 0.54 - 0.46 * std::cos(kTwoPi * static_cast<double>(i) / denom);
  return w;
}

namespace detail {

inline void require_even_order(int order) {
  if (order < 2 || order % 2 != 0) throw Error(ErrorKind::Design, "filter order must be even and >= 2");
}

/// Windowed ideal lowpass prototype, mirrored so symmetry is exact.
inline std::vector<double> windowed_sinc(int order, double cutoff, std::span<const double> window) {
  const int m = order / 2;
  std::vector<double> taps(static_cast<std::size_t>(order) + 1);
  for (int i = 0; i <= m; ++i) {
    const int k = i - m;
    const double ideal = (k == 0) ? cutoff / kPi : std::sin(cutoff * k) / (kPi * k);
    taps[static_cast<std::size_t>(i)] = ideal * window[static_cast<std::size_t>(i)];
  }
  for (int i = m + 1; i <= order; ++i) taps[static_cast<std::size_t>(i)] = taps[static_cast<std::size_t>(order - i)];
  return taps;
}

inline cplx response_at(std::span<const double> taps, double omega) {
  cplx acc{};
  for (std::size_t i = 0; i < taps.size(); ++i) acc += taps[i] * std::polar(1.0, -omega * static_cast<double>(i));
  return acc;
}

}  // namespace detail

/// Hamming-windowed sinc lowpass with unit DC gain.
inline FirFilter design_lowpass(int order, double cutoff) {
  detail::require_even_order(order);
  if (!(cutoff > 0.0 && cutoff < kPi)) throw Error(ErrorKind::Design, "cutoff must lie in (0, pi)");
  const auto window = hamming_window(static_cast<std::size_t>(order) + 1);
  auto taps = detail::windowed_sinc(order, cutoff, window);
  double sum = 0.0;
  for (double t : taps) sum += t;
  for (double& t : taps) t /= sum;
  return FirFilter(std::move(taps), FirDesign{FilterType::Lowpass, 0.0, cutoff, "hamming"});
}

/// Difference of two windowed-sinc lowpass prototypes. The result is scaled so
/// that the largest gain inside [f_lo, f_hi] (sampled on a fine grid that
/// includes the geometric band center) equals one.
inline FirFilter design_bandpass(int order, double f_lo, double f_hi, double fs) {
  detail::require_even_order(order);
  if (!(fs > 0.0)) throw Error(ErrorKind::Design, "sample rate must be positive");
  if (!(f_lo > 0.0 && f_lo < f_hi && f_hi < fs / 2.0)) {
    throw Error(ErrorKind::Design, "band edges must satisfy 0 < f_lo < f_hi < fs/2");
  }
  const double w_lo = kTwoPi * f_lo / fs;
  const double w_hi = kTwoPi * f_hi / fs;
  const auto window = hamming_window(static_cast<std::size_t>(order) + 1);
  const auto hi = detail::windowed_sinc(order, w_hi, window);
  const auto lo = detail::windowed_sinc(order, w_lo, window);
  std::vector<double> taps(hi.size());
  for (std::size_t i = 0; i < taps.size(); ++i) taps[i] = hi[i] - lo[i];

  double peak = std::abs(detail::response_at(taps, std::sqrt(w_lo * w_hi)));
  constexpr int kProbe = 256;
  for (int i = 0; i <= kProbe; ++i) {
    const double w = w_lo + (w_hi - w_lo) * i / kProbe;
    peak = std::max(peak, std::abs(detail::response_at(taps, w)));
  }
  for (double& t : taps) t /= peak;
  return FirFilter(std::move(taps), FirDesign{FilterType::Bandpass, w_lo, w_hi, "hamming"});
}

/// H(e^{jw}) = sum_i taps[i] e^{-jwi} on the grid.
inline DtftGrid freq_response(const FirFilter& h, std::span<const double> omegas) {
  detail::validate_omegas(omegas);
  DtftGrid grid{std::vector<double>(omegas.begin(), omegas.end()), std::vector<cplx>(omegas.size())};
  for (std::size_t g = 0; g < omegas.size(); ++g) grid.values[g] = detail::response_at(h.taps(), omegas[g]);
  return grid;
}

/// |H(e^{jw})| at a single frequency.
inline double gain_at(const FirFilter& h, double omega) { return std::abs(detail::response_at(h.taps(), omega)); }

/// Linear convolution with the taps. With compensate_delay the output is
/// advanced by order/2 samples and truncated to the input length.
inline Signal apply(const FirFilter& h, const Signal& x, bool compensate_delay) {
  detail::require_non_empty(x, "filter apply");
  const Signal kernel = Signal::from_real(h.taps());
  Signal y = linear_convolve(x, kernel);
  if (!compensate_delay) return y;
  const auto d = static_cast<std::size_t>(h.delay());
  std::vector<cplx> out(y.samples().begin() + static_cast<std::ptrdiff_t>(d),
                        y.samples().begin() + static_cast<std::ptrdiff_t>(d + x.size()));
  return Signal(std::move(out), x.sample_rate(), x.origin_index());
}

}  // namespace dspwb
