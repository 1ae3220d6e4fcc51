#pragma once

// Finite discrete-time sequences and the time-domain operations shared by
// every pipeline. All functions are pure; a Signal is a value.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "dspwb/error.hpp"

namespace dspwb {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Sampled sequence x[n] for n = origin, origin+1, ..., origin+size()-1.
class Signal {
 public:
  Signal() = default;

  explicit Signal(std::vector<cplx> samples, std::optional<double> sample_rate = std::nullopt,
                  std::int64_t origin_index = 0)
      : samples_(std::move(samples)), sample_rate_(sample_rate), origin_(origin_index) {
    if (sample_rate_ && !(*sample_rate_ > 0.0)) {
      throw Error(ErrorKind::Config, "sample rate must be strictly positive");
    }
  }

  static Signal from_real(std::span<const double> values,
                          std::optional<double> sample_rate = std::nullopt,
                          std::int64_t origin_index = 0) {
    std::vector<cplx> s(values.begin(), values.end());
    return Signal(std::move(s), sample_rate, origin_index);
  }

  static Signal from_real(std::initializer_list<double> values,
                          std::optional<double> sample_rate = std::nullopt) {
    return from_real(std::span<const double>(values.begin(), values.size()), sample_rate);
  }

  static Signal impulse(std::size_t length, std::optional<double> sample_rate = std::nullopt) {
    std::vector<cplx> s(length, cplx{});
    if (length > 0) s[0] = 1.0;
    return Signal(std::move(s), sample_rate);
  }

  const std::vector<cplx>& samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }
  const cplx& operator[](std::size_t i) const { return samples_[i]; }

  std::optional<double> sample_rate() const noexcept { return sample_rate_; }
  std::int64_t origin_index() const noexcept { return origin_; }

  double require_sample_rate() const {
    if (!sample_rate_) throw Error(ErrorKind::Config, "signal has no sample rate");
    return *sample_rate_;
  }

  /// Same metadata, new samples.
  Signal with_samples(std::vector<cplx> samples) const {
    return Signal(std::move(samples), sample_rate_, origin_);
  }
  Signal with_origin(std::int64_t origin) const { return Signal(samples_, sample_rate_, origin); }
  Signal with_sample_rate(std::optional<double> fs) const { return Signal(samples_, fs, origin_); }

  /// Real when max |imag| <= 1e-12 * max |sample|.
  bool is_real(double rel_tol = 1e-12) const {
    double peak = 0.0;
    double worst_imag = 0.0;
    for (const auto& v : samples_) {
      peak = std::max(peak, std::abs(v));
      worst_imag = std::max(worst_imag, std::abs(v.imag()));
    }
    return worst_imag <= rel_tol * peak;
  }

  std::vector<double> real_part() const {
    std::vector<double> out(samples_.size());
    std::transform(samples_.begin(), samples_.end(), out.begin(), [](cplx v) { return v.real(); });
    return out;
  }

  std::vector<double> magnitude() const {
    std::vector<double> out(samples_.size());
    std::transform(samples_.begin(), samples_.end(), out.begin(), [](cplx v) { return std::abs(v); });
    return out;
  }

  friend bool operator==(const Signal&, const Signal&) = default;

 private:
  std::vector<cplx> samples_;
  std::optional<double> sample_rate_;
  std::int64_t origin_ = 0;
};

namespace detail {

inline std::size_t mod_index(std::int64_t i, std::size_t n) {
  const auto m = static_cast<std::int64_t>(n);
  auto r = i % m;
  return static_cast<std::size_t>(r < 0 ? r + m : r);
}

inline void require_non_empty(const Signal& x, const char* op) {
  if (x.empty()) throw Error(ErrorKind::Degenerate, std::string(op) + " requires a non-empty signal");
}

inline void require_positive(std::int64_t v, const char* what) {
  if (v < 1) throw Error(ErrorKind::Parameter, std::string(what) + " must be a positive integer");
}

/// e^{j 2 pi num / den} with the numerator reduced modulo den first.
inline cplx unit_root(std::int64_t num, std::size_t den) {
  const auto r = mod_index(num, den);
  return std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(den));
}

}  // namespace detail

/// output[n] = x[((n - m)) mod N]
inline Signal circular_shift(const Signal& x, std::int64_t m) {
  detail::require_non_empty(x, "circular_shift");
  const std::size_t n = x.size();
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = x[detail::mod_index(static_cast<std::int64_t>(i) - m, n)];
  }
  return x.with_samples(std::move(out));
}

/// output[n] = x[((-n)) mod N]
inline Signal circular_reverse(const Signal& x) {
  detail::require_non_empty(x, "circular_reverse");
  const std::size_t n = x.size();
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = x[detail::mod_index(-static_cast<std::int64_t>(i), n)];
  return x.with_samples(std::move(out));
}

/// Linear time reversal y[n] = x[-n]; the support is mirrored about n = 0.
inline Signal time_reverse(const Signal& x) {
  detail::require_non_empty(x, "time_reverse");
  std::vector<cplx> out(x.samples().rbegin(), x.samples().rend());
  const auto last = x.origin_index() + static_cast<std::int64_t>(x.size()) - 1;
  return Signal(std::move(out), x.sample_rate(), -last);
}

inline Signal conjugate(const Signal& x) {
  std::vector<cplx> out(x.size());
  std::transform(x.samples().begin(), x.samples().end(), out.begin(), [](cplx v) { return std::conj(v); });
  return x.with_samples(std::move(out));
}

/// output[n] = (-1)^n x[n], n counted from origin_index.
inline Signal alternate_sign(const Signal& x) {
  std::vector<cplx> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto n = x.origin_index() + static_cast<std::int64_t>(i);
    out[i] = (n % 2 == 0) ? x[i] : -x[i];
  }
  return x.with_samples(std::move(out));
}

/// output[n] = x[n] e^{j 2 pi k0 n / N}
inline Signal modulate(const Signal& x, double k0) {
  detail::require_non_empty(x, "modulate");
  const double n_len = static_cast<double>(x.size());
  std::vector<cplx> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double n = static_cast<double>(x.origin_index() + static_cast<std::int64_t>(i));
    // Reduce the phase for integral k0 so that round trips stay exact.
    double phase = k0 * n;
    if (k0 == std::floor(k0)) phase = std::fmod(phase, n_len);
    out[i] = x[i] * std::polar(1.0, kTwoPi * phase / n_len);
  }
  return x.with_samples(std::move(out));
}

/// Inserts L-1 zeros after each sample.
inline Signal zero_interleave(const Signal& x, std::int64_t factor) {
  detail::require_positive(factor, "interleave factor");
  const auto l = static_cast<std::size_t>(factor);
  std::vector<cplx> out(x.size() * l, cplx{});
  for (std::size_t i = 0; i < x.size(); ++i) out[i * l] = x[i];
  return Signal(std::move(out), x.sample_rate(), x.origin_index() * factor);
}

/// Concatenates r copies of x.
inline Signal repeat(const Signal& x, std::int64_t copies) {
  detail::require_positive(copies, "repeat count");
  std::vector<cplx> out;
  out.reserve(x.size() * static_cast<std::size_t>(copies));
  for (std::int64_t c = 0; c < copies; ++c) out.insert(out.end(), x.samples().begin(), x.samples().end());
  return x.with_samples(std::move(out));
}

/// Keeps stored samples 0, M, 2M, ...; the origin is divided by M (exact when
/// the origin is a multiple of M).
inline Signal decimate(const Signal& x, std::int64_t factor) {
  detail::require_positive(factor, "decimation factor");
  const auto m = static_cast<std::size_t>(factor);
  std::vector<cplx> out;
  out.reserve(x.size() / m + 1);
  for (std::size_t i = 0; i < x.size(); i += m) out.push_back(x[i]);
  return Signal(std::move(out), x.sample_rate(), x.origin_index() / factor);
}

/// Full linear convolution, length Nx + Nh - 1; origins add.
inline Signal linear_convolve(const Signal& x, const Signal& h) {
  detail::require_non_empty(x, "linear_convolve");
  detail::require_non_empty(h, "linear_convolve");
  std::vector<cplx> out(x.size() + h.size() - 1, cplx{});
  for (std::size_t i = 0; i < x.size(); ++i) {
    const cplx xi = x[i];
    for (std::size_t j = 0; j < h.size(); ++j) out[i + j] += xi * h[j];
  }
  return Signal(std::move(out), x.sample_rate(), x.origin_index() + h.origin_index());
}

/// Biased autocorrelation r[m] = sum_n x[n] x[n+m] for m = 0..N-1.
inline Signal autocorrelation(const Signal& x, bool normalized) {
  detail::require_non_empty(x, "autocorrelation");
  if (!x.is_real()) throw Error(ErrorKind::Parameter, "autocorrelation requires a real signal");
  const auto v = x.real_part();
  const std::size_t n = v.size();
  std::vector<cplx> r(n);
  for (std::size_t m = 0; m < n; ++m) {
    double acc = 0.0;
    for (std::size_t i = 0; i + m < n; ++i) acc += v[i] * v[i + m];
    r[m] = acc;
  }
  if (normalized) {
    const double r0 = r[0].real();
    if (r0 == 0.0) throw Error(ErrorKind::Degenerate, "cannot normalize the autocorrelation of an all-zero signal");
    for (auto& value : r) value /= r0;
  }
  return Signal(std::move(r), x.sample_rate(), 0);
}

inline double energy(const Signal& x) {
  double e = 0.0;
  for (const auto& v : x.samples()) e += std::norm(v);
  return e;
}

inline Signal scale(const Signal& x, cplx factor) {
  std::vector<cplx> out(x.size());
  std::transform(x.samples().begin(), x.samples().end(), out.begin(), [factor](cplx v) { return v * factor; });
  return x.with_samples(std::move(out));
}

/// Elementwise sum of equal-length signals (metadata taken from a).
inline Signal add(const Signal& a, const Signal& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::LengthMismatch, "add requires equal lengths");
  std::vector<cplx> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return a.with_samples(std::move(out));
}

inline Signal subtract(const Signal& a, const Signal& b) { return add(a, scale(b, -1.0)); }

inline Signal real_projection(const Signal& x) {
  const auto re = x.real_part();
  return Signal::from_real(re, x.sample_rate(), x.origin_index());
}

inline double max_abs_difference(const Signal& a, const Signal& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::LengthMismatch, "comparison requires equal lengths");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

inline double mean_real(std::span<const double> v) {
  if (v.empty()) return 0.0;
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

}  // namespace dspwb
