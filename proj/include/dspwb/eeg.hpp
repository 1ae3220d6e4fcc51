#pragma once

// Clip-level EEG features: time-domain statistics, Hjorth parameters,
// Hilbert (analytic-signal) band features, spectrogram and Welch PSD, plus a
// rank-sum separability score and a seeded synthetic clip generator.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dspwb/error.hpp"
#include "dspwb/filters.hpp"
#include "dspwb/signal.hpp"
#include "dspwb/transform.hpp"

namespace dspwb {

enum class ClipLabel { Ictal, Interictal };

inline const char* label_name(ClipLabel l) { return l == ClipLabel::Ictal ? "ictal" : "interictal"; }

inline ClipLabel parse_label(const std::string& s) {
  if (s == "ictal") return ClipLabel::Ictal;
  if (s == "interictal") return ClipLabel::Interictal;
  throw Error(ErrorKind::Parse, "unknown clip label '" + s + "'");
}

struct Clip {
  std::vector<double> samples;
  double fs = 0.0;
  ClipLabel label = ClipLabel::Interictal;
  std::string id;

  Signal signal() const { return Signal::from_real(samples, fs); }
};

class ClipSet {
 public:
  ClipSet() = default;
  explicit ClipSet(std::vector<Clip> clips) : clips_(std::move(clips)) {
    std::set<std::string> ids;
    for (const auto& c : clips_) {
      if (!(c.fs > 0.0)) throw Error(ErrorKind::Parameter, "clip '" + c.id + "' has a non-positive sample rate");
      if (c.samples.size() < 2) throw Error(ErrorKind::Parameter, "clip '" + c.id + "' has fewer than two samples");
      if (c.fs != clips_.front().fs) throw Error(ErrorKind::Parameter, "clips must share one sample rate");
      if (!ids.insert(c.id).second) throw Error(ErrorKind::Parameter, "duplicate clip id '" + c.id + "'");
    }
  }

  const std::vector<Clip>& clips() const noexcept { return clips_; }
  std::size_t size() const noexcept { return clips_.size(); }
  std::size_t count(ClipLabel l) const {
    return static_cast<std::size_t>(std::count_if(clips_.begin(), clips_.end(), [l](const Clip& c) { return c.label == l; }));
  }
  double fs() const { return clips_.empty() ? 0.0 : clips_.front().fs; }

  /// All samples of one label, concatenated in clip order.
  std::vector<double> concatenated(ClipLabel l) const {
    std::vector<double> out;
    for (const auto& c : clips_) {
      if (c.label == l) out.insert(out.end(), c.samples.begin(), c.samples.end());
    }
    return out;
  }

 private:
  std::vector<Clip> clips_;
};

// ---------------------------------------------------------------------------
// Time-domain features

struct CentralTendency {
  double mean = 0.0;
  double median = 0.0;
  double mode = 0.0;
};

/// Mode is taken over samples rounded to the nearest integer (ADC counts);
/// ties go to the smallest value.
inline CentralTendency central_tendency(std::span<const double> x) {
  if (x.empty()) throw Error(ErrorKind::Degenerate, "central tendency of an empty clip");
  CentralTendency ct;
  ct.mean = mean_real(x);
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  ct.median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  std::map<double, std::size_t> counts;
  for (double v : x) ++counts[std::round(v)];
  std::size_t best = 0;
  for (const auto& [value, count] : counts) {
    if (count > best) {
      best = count;
      ct.mode = value;
    }
  }
  return ct;
}

inline CentralTendency central_tendency(const Clip& c) { return central_tendency(c.samples); }

/// Sum of |x[n] - x[n-1]|.
inline double curve_length(std::span<const double> x) {
  if (x.size() < 2) throw Error(ErrorKind::Degenerate, "curve length needs at least two samples");
  double l = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) l += std::abs(x[i] - x[i - 1]);
  return l;
}

inline double curve_length(const Clip& c) { return curve_length(c.samples); }

inline double clip_energy(const Clip& c) {
  double e = 0.0;
  for (double v : c.samples) e += v * v;
  return e;
}

namespace detail {

inline double population_variance(std::span<const double> x) {
  const double mu = mean_real(x);
  double acc = 0.0;
  for (double v : x) acc += (v - mu) * (v - mu);
  return acc / static_cast<double>(x.size());
}

inline std::vector<double> first_difference(std::span<const double> x) {
  std::vector<double> d;
  d.reserve(x.size() - 1);
  for (std::size_t i = 1; i < x.size(); ++i) d.push_back(x[i] - x[i - 1]);
  return d;
}

}  // namespace detail

struct Hjorth {
  double activity = 0.0;
  double mobility = 0.0;
  double complexity = 0.0;
};

inline double hjorth_activity(std::span<const double> x) {
  if (x.empty()) throw Error(ErrorKind::Degenerate, "activity of an empty clip");
  return detail::population_variance(x);
}

/// Derivatives are first differences; no sample-rate scaling is applied since
/// it cancels in both ratios.
inline Hjorth hjorth(std::span<const double> x) {
  if (x.size() < 3) throw Error(ErrorKind::Degenerate, "Hjorth parameters need at least three samples");
  Hjorth h;
  h.activity = detail::population_variance(x);
  if (h.activity == 0.0) throw Error(ErrorKind::UndefinedMobility, "signal has zero variance");
  const auto d = detail::first_difference(x);
  const double var_d = detail::population_variance(d);
  h.mobility = std::sqrt(var_d / h.activity);
  if (var_d == 0.0) throw Error(ErrorKind::UndefinedComplexity, "first difference has zero variance");
  const auto dd = detail::first_difference(d);
  const double mobility_d = std::sqrt(detail::population_variance(dd) / var_d);
  h.complexity = mobility_d / h.mobility;
  return h;
}

inline Hjorth hjorth(const Clip& c) { return hjorth(c.samples); }

// ---------------------------------------------------------------------------
// Analytic signal and instantaneous band features

/// A = idft(dft(x) * g), g keeping DC, doubling positive bins, keeping the
/// Nyquist bin for even N and zeroing negative bins.
inline Signal analytic_signal(const Signal& x) {
  if (x.size() < 4) throw Error(ErrorKind::Parameter, "analytic signal needs at least four samples");
  if (!x.is_real()) throw Error(ErrorKind::Parameter, "analytic signal requires a real input");
  Spectrum s = dft(real_projection(x).with_origin(0));
  const std::size_t n = s.n();
  const std::size_t positive_end = (n % 2 == 0) ? n / 2 : (n - 1) / 2 + 1;  // exclusive
  for (std::size_t k = 1; k < n; ++k) {
    if (k < positive_end) {
      s.bins[k] *= 2.0;
    } else if (!(n % 2 == 0 && k == n / 2)) {
      s.bins[k] = 0.0;
    }
  }
  Signal a = idft(s);
  return Signal(a.samples(), x.sample_rate(), x.origin_index());
}

struct FreqBand {
  double lo = 0.0;  // Hz
  double hi = 0.0;  // Hz
};

inline constexpr FreqBand kDeltaBand{1.0, 4.0};
inline constexpr FreqBand kAlphaBand{8.0, 12.0};
inline constexpr int kDefaultBandFilterOrder = 400;

/// Bandpassed analytic signal restricted to the region away from filter edges.
struct BandAnalytic {
  Signal analytic;
  std::size_t first = 0;  // central region [first, last)
  std::size_t last = 0;
};

inline BandAnalytic band_analytic(const Clip& c, FreqBand band, int filter_order) {
  if (!(band.lo > 0.0 && band.lo < band.hi && band.hi < c.fs / 2.0)) {
    throw Error(ErrorKind::Parameter, "band must lie within (0, fs/2)");
  }
  if (c.samples.size() <= static_cast<std::size_t>(filter_order)) {
    throw Error(ErrorKind::Parameter, "clip of " + std::to_string(c.samples.size()) +
                                          " samples is too short for a band filter of order " +
                                          std::to_string(filter_order));
  }
  const FirFilter h = design_bandpass(filter_order, band.lo, band.hi, c.fs);
  const Signal y = real_projection(apply(h, c.signal(), true));
  BandAnalytic out{analytic_signal(y), static_cast<std::size_t>(h.delay()),
                   c.samples.size() - static_cast<std::size_t>(h.delay())};
  return out;
}

inline double mean_inst_amplitude(const Clip& c, FreqBand band, int filter_order = kDefaultBandFilterOrder) {
  const BandAnalytic ba = band_analytic(c, band, filter_order);
  double acc = 0.0;
  for (std::size_t i = ba.first; i < ba.last; ++i) acc += std::abs(ba.analytic[i]);
  return acc / static_cast<double>(ba.last - ba.first);
}

/// Mean of (fs / 2pi) times the unwrapped phase increment per sample.
inline double mean_inst_frequency(const Clip& c, FreqBand band, int filter_order = kDefaultBandFilterOrder) {
  const BandAnalytic ba = band_analytic(c, band, filter_order);
  if (ba.last - ba.first < 2) throw Error(ErrorKind::Parameter, "central region too short for a phase derivative");
  double peak = 0.0;
  for (std::size_t i = ba.first; i < ba.last; ++i) peak = std::max(peak, std::abs(ba.analytic[i]));
  if (peak <= 1e-12) throw Error(ErrorKind::Degenerate, "instantaneous frequency undefined for a zero band signal");
  double acc = 0.0;
  for (std::size_t i = ba.first + 1; i < ba.last; ++i) {
    // arg(a[i] conj(a[i-1])) is the wrapped increment of the unwrapped phase.
    acc += std::arg(ba.analytic[i] * std::conj(ba.analytic[i - 1]));
  }
  const double mean_step = acc / static_cast<double>(ba.last - ba.first - 1);
  return mean_step * c.fs / kTwoPi;
}

// ---------------------------------------------------------------------------
// Spectral estimates

struct Spectrogram {
  std::vector<double> times;  // frame start, seconds
  std::vector<double> freqs;  // Hz
  std::vector<std::vector<double>> db;  // [frame][bin]
};

inline constexpr double kSpectrogramFloor = 1e-20;

/// Hamming-windowed short-time DFT power in dB. Real input gives bins
/// 0..L/2; complex input gives all L bins. Without a sample rate the axes are
/// in samples and cycles/sample.
inline Spectrogram spectrogram(const Signal& x, std::size_t window_len = 100, std::size_t overlap = 80) {
  if (window_len < 2 || overlap >= window_len) throw Error(ErrorKind::Parameter, "need window_len >= 2 and overlap < window_len");
  if (x.size() < window_len) throw Error(ErrorKind::Parameter, "signal shorter than the spectrogram window");
  const double fs = x.sample_rate().value_or(1.0);
  const std::size_t hop = window_len - overlap;
  const std::size_t frames = (x.size() - window_len) / hop + 1;
  const bool real = x.is_real();
  const std::size_t bins = real ? window_len / 2 + 1 : window_len;
  const auto w = hamming_window(window_len);

  Spectrogram sg;
  sg.freqs.resize(bins);
  for (std::size_t k = 0; k < bins; ++k) sg.freqs[k] = static_cast<double>(k) * fs / static_cast<double>(window_len);
  sg.times.resize(frames);
  sg.db.assign(frames, std::vector<double>(bins));
  std::vector<cplx> frame(window_len);
  for (std::size_t f = 0; f < frames; ++f) {
    const std::size_t start = f * hop;
    sg.times[f] = static_cast<double>(start) / fs;
    for (std::size_t i = 0; i < window_len; ++i) frame[i] = x[start + i] * w[i];
    const Spectrum s = dft(Signal(frame));
    for (std::size_t k = 0; k < bins; ++k) sg.db[f][k] = 10.0 * std::log10(std::norm(s.bins[k]) + kSpectrogramFloor);
  }
  return sg;
}

struct WelchPsd {
  std::vector<double> freqs;
  std::vector<double> psd;
  std::size_t segment_length = 0;
  std::size_t segment_count = 0;
  std::size_t overlap = 0;
  std::size_t nfft = 0;
  double fs = 0.0;
};

/// Averaged Hamming-windowed periodograms, normalized by window power and fs,
/// one-sided with interior bins doubled so that sum(psd) * df approximates the
/// mean power. Without a sample rate, fs = 2 pi (rad/sample axis).
inline std::size_t welch_segment_length(std::size_t n, std::size_t segments, double overlap_fraction) {
  return static_cast<std::size_t>(
      std::floor(static_cast<double>(n) / (1.0 + static_cast<double>(segments - 1) * (1.0 - overlap_fraction))));
}

/// nfft = 0 uses the segment length; a larger nfft zero-pads each windowed
/// segment (normalization is unchanged, so the variance contract still holds).
inline WelchPsd welch_psd(const Signal& x, std::size_t segments = 8, double overlap_fraction = 0.5,
                          std::size_t nfft = 0) {
  if (segments < 2) throw Error(ErrorKind::Parameter, "Welch needs at least two segments");
  if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0)) throw Error(ErrorKind::Parameter, "overlap fraction must lie in [0, 1)");
  if (!x.is_real()) throw Error(ErrorKind::Parameter, "welch_psd expects a real signal");
  const double fs = x.sample_rate().value_or(kTwoPi);
  const std::size_t seg_len = welch_segment_length(x.size(), segments, overlap_fraction);
  if (seg_len < 4) throw Error(ErrorKind::Parameter, "signal too short for the requested Welch segments");
  if (nfft == 0) nfft = seg_len;
  if (nfft < seg_len) throw Error(ErrorKind::Parameter, "nfft must be at least the segment length");
  const auto noverlap = static_cast<std::size_t>(std::floor(overlap_fraction * static_cast<double>(seg_len)));
  const std::size_t hop = seg_len - noverlap;

  const auto w = hamming_window(seg_len);
  double window_power = 0.0;
  for (double v : w) window_power += v * v;

  const std::size_t bins = nfft / 2 + 1;
  WelchPsd out;
  out.psd.assign(bins, 0.0);
  out.freqs.resize(bins);
  for (std::size_t k = 0; k < bins; ++k) out.freqs[k] = static_cast<double>(k) * fs / static_cast<double>(nfft);
  std::vector<cplx> seg(nfft);
  for (std::size_t s = 0; s < segments; ++s) {
    const std::size_t start = s * hop;
    for (std::size_t i = 0; i < seg_len; ++i) seg[i] = x[start + i].real() * w[i];
    const Spectrum spec = dft(Signal(seg));
    for (std::size_t k = 0; k < bins; ++k) {
      const bool edge = k == 0 || (nfft % 2 == 0 && k == nfft / 2);
      out.psd[k] += (edge ? 1.0 : 2.0) * std::norm(spec.bins[k]) / (fs * window_power);
    }
  }
  for (double& p : out.psd) p /= static_cast<double>(segments);
  out.segment_length = seg_len;
  out.segment_count = segments;
  out.overlap = noverlap;
  out.nfft = nfft;
  out.fs = fs;
  return out;
}

/// Centered moving average whose window shrinks symmetrically at the edges.
inline std::vector<double> smooth(std::span<const double> series, std::size_t window) {
  if (window == 0 || window % 2 == 0 || window > series.size()) {
    throw Error(ErrorKind::Parameter, "smoothing window must be odd and no longer than the series");
  }
  const std::size_t half = window / 2;
  std::vector<double> out(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    const std::size_t reach = std::min({half, i, series.size() - 1 - i});
    double acc = 0.0;
    for (std::size_t j = i - reach; j <= i + reach; ++j) acc += series[j];
    out[i] = acc / static_cast<double>(2 * reach + 1);
  }
  return out;
}

struct DifferenceBand {
  std::size_t peak_index = 0;
  double peak_freq = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double peak_difference = 0.0;
};

inline constexpr std::size_t kPsdSmoothingWindow = 5;

/// Largest |smoothed(a) - smoothed(b)|, widened to the contiguous region
/// where the smoothed difference stays above half its peak.
inline DifferenceBand max_difference_band(std::span<const double> freqs, std::span<const double> a,
                                          std::span<const double> b, std::size_t window = kPsdSmoothingWindow) {
  if (a.size() != b.size() || a.size() != freqs.size() || a.empty()) {
    throw Error(ErrorKind::LengthMismatch, "PSD vectors must share one frequency axis");
  }
  const auto sa = smooth(a, window);
  const auto sb = smooth(b, window);
  std::vector<double> diff(a.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = std::abs(sa[i] - sb[i]);
  DifferenceBand band;
  band.peak_index = static_cast<std::size_t>(std::max_element(diff.begin(), diff.end()) - diff.begin());
  band.peak_difference = diff[band.peak_index];
  band.peak_freq = freqs[band.peak_index];
  std::size_t lo = band.peak_index;
  std::size_t hi = band.peak_index;
  while (lo > 0 && diff[lo - 1] >= 0.5 * band.peak_difference) --lo;
  while (hi + 1 < diff.size() && diff[hi + 1] >= 0.5 * band.peak_difference) ++hi;
  band.lo = freqs[lo];
  band.hi = freqs[hi];
  return band;
}

// ---------------------------------------------------------------------------
// Feature tables

namespace feature {
inline const std::string kMean = "mean";
inline const std::string kMedian = "median";
inline const std::string kMode = "mode";
inline const std::string kEnergy = "energy";
inline const std::string kCurveLength = "curve_length";
inline const std::string kActivity = "hjorth_activity";
inline const std::string kMobility = "hjorth_mobility";
inline const std::string kComplexity = "hjorth_complexity";
inline const std::string kDeltaAmplitude = "delta_mean_inst_amplitude";
inline const std::string kAlphaFrequency = "alpha_mean_inst_frequency";
inline const std::string kAvgPsd = "avg_psd";
}  // namespace feature

inline std::vector<std::string> time_domain_features() {
  using namespace feature;
  return {kMean, kMedian, kMode, kEnergy, kCurveLength, kActivity, kMobility, kComplexity};
}

inline std::vector<std::string> hilbert_features() { return {feature::kDeltaAmplitude, feature::kAlphaFrequency}; }

inline std::vector<std::string> all_features() {
  auto f = time_domain_features();
  for (const auto& h : hilbert_features()) f.push_back(h);
  f.push_back(feature::kAvgPsd);
  return f;
}

struct FeatureSpec {
  std::vector<std::string> features = all_features();
  int band_filter_order = kDefaultBandFilterOrder;
  FreqBand delta = kDeltaBand;
  FreqBand alpha = kAlphaBand;
  std::size_t welch_segments = 8;
  double welch_overlap = 0.5;
};

struct FeatureRow {
  std::string id;
  ClipLabel label = ClipLabel::Interictal;
  std::vector<double> values;  // NaN marks an undefined feature
};

struct FeatureTable {
  std::vector<std::string> names;
  std::vector<FeatureRow> rows;
  std::map<std::string, std::string> metadata;
};

/// Band filters are capped at order 2*floor((N-1)/4) so that at least half of
/// each clip lies outside the filter edge regions.
inline int effective_band_order(int requested, std::size_t clip_length) {
  const auto cap = static_cast<int>(2 * ((clip_length - 1) / 4));
  return std::min(requested, cap);
}

namespace detail {

inline std::string format_param(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename F>
double or_undefined(F&& f) {
  try {
    return f();
  } catch (const Error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace detail

inline FeatureTable feature_table(const ClipSet& cs, const FeatureSpec& spec = {}) {
  const auto known = all_features();
  for (const auto& name : spec.features) {
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw Error(ErrorKind::Parameter, "unknown feature '" + name + "'");
    }
  }
  FeatureTable t;
  t.names = spec.features;
  t.metadata["band_filter_order"] = std::to_string(spec.band_filter_order);
  t.metadata["band_filter_window"] = "hamming";
  t.metadata["delta_band_hz"] = detail::format_param(spec.delta.lo) + "-" + detail::format_param(spec.delta.hi);
  t.metadata["alpha_band_hz"] = detail::format_param(spec.alpha.lo) + "-" + detail::format_param(spec.alpha.hi);
  t.metadata["welch_segments"] = std::to_string(spec.welch_segments);
  t.metadata["welch_overlap"] = detail::format_param(spec.welch_overlap);
  t.metadata["welch_window"] = "hamming";
  t.metadata["mode_rounding"] = "nearest integer, ties to smallest value";
  t.metadata["hjorth_derivative"] = "first difference";
  t.metadata["clip_count"] = std::to_string(cs.size());
  if (cs.size() > 0) {
    t.metadata["band_filter_order_effective"] =
        std::to_string(effective_band_order(spec.band_filter_order, cs.clips().front().samples.size()));
  }
  if (spec.features.empty()) return t;

  for (const auto& clip : cs.clips()) {
    FeatureRow row{clip.id, clip.label, {}};
    const int order = effective_band_order(spec.band_filter_order, clip.samples.size());
    std::optional<CentralTendency> ct;
    std::optional<Hjorth> hj;
    bool hj_failed = false;
    for (const auto& name : spec.features) {
      using namespace feature;
      double v = 0.0;
      if (name == kMean || name == kMedian || name == kMode) {
        if (!ct) ct = central_tendency(clip);
        v = name == kMean ? ct->mean : name == kMedian ? ct->median : ct->mode;
      } else if (name == kEnergy) {
        v = clip_energy(clip);
      } else if (name == kCurveLength) {
        v = curve_length(clip);
      } else if (name == kActivity) {
        v = hjorth_activity(clip.samples);
      } else if (name == kMobility || name == kComplexity) {
        if (!hj && !hj_failed) {
          try {
            hj = hjorth(clip);
          } catch (const Error&) {
            hj_failed = true;
          }
        }
        v = hj ? (name == kMobility ? hj->mobility : hj->complexity) : std::numeric_limits<double>::quiet_NaN();
      } else if (name == kDeltaAmplitude) {
        v = order < 2 ? std::numeric_limits<double>::quiet_NaN()
                      : detail::or_undefined([&] { return mean_inst_amplitude(clip, spec.delta, order); });
      } else if (name == kAlphaFrequency) {
        v = order < 2 ? std::numeric_limits<double>::quiet_NaN()
                      : detail::or_undefined([&] { return mean_inst_frequency(clip, spec.alpha, order); });
      } else if (name == kAvgPsd) {
        v = detail::or_undefined([&] {
          const auto p = welch_psd(clip.signal(), spec.welch_segments, spec.welch_overlap);
          return mean_real(p.psd);
        });
      }
      row.values.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

struct FeatureScore {
  std::string name;
  double auc = 0.5;
  double mean_ictal = 0.0;
  double mean_interictal = 0.0;
  std::size_t undefined = 0;
};

/// P(ictal value > interictal value), ties counted half, via average ranks.
inline double rank_sum_auc(std::span<const double> positives, std::span<const double> negatives) {
  if (positives.empty() || negatives.empty()) throw Error(ErrorKind::Parameter, "AUC needs both classes");
  std::vector<std::pair<double, bool>> all;
  for (double v : positives) all.emplace_back(v, true);
  for (double v : negatives) all.emplace_back(v, false);
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j].first == all[i].first) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // ranks i+1..j
    for (std::size_t k = i; k < j; ++k) {
      if (all[k].second) rank_sum += avg_rank;
    }
    i = j;
  }
  const auto np = static_cast<double>(positives.size());
  const auto nn = static_cast<double>(negatives.size());
  return (rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

inline std::vector<FeatureScore> separability_report(const FeatureTable& t) {
  std::vector<FeatureScore> out;
  for (std::size_t f = 0; f < t.names.size(); ++f) {
    std::vector<double> ictal;
    std::vector<double> inter;
    FeatureScore score;
    score.name = t.names[f];
    for (const auto& row : t.rows) {
      const double v = row.values[f];
      if (!std::isfinite(v)) {
        ++score.undefined;
        continue;
      }
      (row.label == ClipLabel::Ictal ? ictal : inter).push_back(v);
    }
    if (ictal.empty() || inter.empty()) {
      throw Error(ErrorKind::Parameter, "separability needs defined values from both ictal and interictal clips");
    }
    score.auc = rank_sum_auc(ictal, inter);
    score.mean_ictal = mean_real(ictal);
    score.mean_interictal = mean_real(inter);
    out.push_back(std::move(score));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Synthetic clips

struct SynthOptions {
  std::uint64_t seed = 1;
  std::size_t clips = 596;
  std::size_t ictal = 178;
  double fs = 400.0;
  std::size_t samples = 400;  // one second at 400 Hz
  double background_rms = 30.0;
  double ictal_gain = 5.0;  // RMS of the added 4-12 Hz component relative to background
};

/// Background is AR(1) noise with a per-clip log-normal level; ictal clips add
/// band-limited 4-12 Hz noise. Samples are rounded to integer ADC counts.
inline ClipSet synthesize_clipset(const SynthOptions& opt) {
  if (opt.ictal > opt.clips) throw Error(ErrorKind::Parameter, "more ictal clips than clips");
  if (opt.samples < 16) throw Error(ErrorKind::Parameter, "synthetic clips need at least 16 samples");
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::lognormal_distribution<double> level(0.0, 0.2);
  const FirFilter band = design_bandpass(100, 4.0, 12.0, opt.fs);
  const std::size_t warmup = 200;

  const auto rms = [](const std::vector<double>& v) {
    double acc = 0.0;
    for (double s : v) acc += s * s;
    return std::sqrt(acc / static_cast<double>(v.size()));
  };

  std::vector<Clip> clips;
  clips.reserve(opt.clips);
  for (std::size_t i = 0; i < opt.clips; ++i) {
    const bool is_ictal = i < opt.ictal;
    std::vector<double> bg(opt.samples);
    double state = 0.0;
    for (std::size_t n = 0; n < warmup + opt.samples; ++n) {
      state = 0.95 * state + gauss(rng);
      if (n >= warmup) bg[n - warmup] = state;
    }
    const double bg_scale = opt.background_rms * level(rng) / rms(bg);
    for (double& v : bg) v *= bg_scale;

    std::vector<double> x = bg;
    if (is_ictal) {
      std::vector<double> white(opt.samples);
      for (double& v : white) v = gauss(rng);
      const auto burst = real_projection(apply(band, Signal::from_real(white), true)).real_part();
      const double burst_scale = opt.ictal_gain * rms(bg) / rms(burst);
      for (std::size_t n = 0; n < x.size(); ++n) x[n] += burst_scale * burst[n];
    }
    for (double& v : x) v = std::round(v);

    char id[64];
    const std::size_t index = is_ictal ? i + 1 : i - opt.ictal + 1;
    std::snprintf(id, sizeof id, "%s_%04zu", is_ictal ? "ictal" : "interictal", index);
    clips.push_back(Clip{std::move(x), opt.fs, is_ictal ? ClipLabel::Ictal : ClipLabel::Interictal, id});
  }
  return ClipSet(std::move(clips));
}

}  // namespace dspwb
