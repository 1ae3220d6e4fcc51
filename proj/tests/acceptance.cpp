// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//
//   acceptance [--ppg path/to/ppg_100hz_1024samples.csv]
//
// Without --ppg the file is looked up in $DSPWB_PPG_CSV and then the current
// directory; the PPG part of criterion 3 is skipped when it is absent.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <string>

#include "dspwb/dspwb.hpp"
#include "test_util.hpp"

using namespace dspwb;
using dspwb::testing::eval_letter_pattern;
using dspwb::testing::random_complex;
using dspwb::testing::random_real;
using dspwb::testing::reference_dft;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::string num(double v, const char* spec = "%.3g") {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string bpm(double v) { return num(v, "%.2f"); }

std::vector<cplx> seeded(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_complex(n, rng);
}

Outcome dft_identity_table() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const auto table = six_point_table();
  o.require(table.size() == 15, "table does not have 15 rows");
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto x = seeded(6, 1000 + seed);
    const auto X = reference_dft(x);
    for (std::size_t r = 0; r < table.size(); ++r) {
      const auto& row = table[r];
      const RuleReport rep = verify_chain(row.chain, Signal(x), 1e-9);
      const TransformPair p = predict_chain(row.chain, TransformPair{Signal(x), Spectrum{X, std::nullopt}});
      const double e_time = max_relative_error(p.time.samples(), eval_letter_pattern(row.time_pattern, x, X));
      const double e_freq = max_relative_error(p.freq.bins, eval_letter_pattern(row.freq_pattern, x, X));
      worst = std::max({worst, rep.max_rel_error, e_time, e_freq});
      o.require(rep.passed && e_time < 1e-9 && e_freq < 1e-9, "row " + std::to_string(r + 1) + " seed " + std::to_string(seed));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs < 5.0, "runtime " + num(secs) + " s");
  if (o.pass) o.detail = "1500 instances, worst rel err " + num(worst);
  return o;
}

Outcome five_point_forms() {
  Outcome o;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto x = seeded(5, 5000 + seed);
    const auto X = reference_dft(x);
    const TransformPair base{Signal(x), Spectrum{X, std::nullopt}};
    const auto check = [&](const std::vector<cplx>& got, const std::vector<cplx>& want, const char* what) {
      const double e = max_relative_error(got, want);
      worst = std::max(worst, e);
      o.require(e < 1e-9, std::string(what) + " seed " + std::to_string(seed));
    };
    // DFT of the DFT
    const std::vector<cplx> a{5.0 * x[0], 5.0 * x[4], 5.0 * x[3], 5.0 * x[2], 5.0 * x[1]};
    check(predict_spectrum(PropertyRule::dft_of_dft(), base).bins, a, "dft-of-dft closed form");
    check(direct_dft(apply_rule_time(PropertyRule::dft_of_dft(), Signal(x))).bins, a, "dft-of-dft numeric");
    // two periods
    std::vector<cplx> d(10);
    for (std::size_t k = 0; k < 5; ++k) d[2 * k] = 2.0 * X[k];
    check(predict_spectrum(PropertyRule::repeat(2), base).bins, d, "repeat closed form");
    check(direct_dft(apply_rule_time(PropertyRule::repeat(2), Signal(x))).bins, d, "repeat numeric");
    // circular shift by two
    std::vector<cplx> e(5);
    for (std::size_t k = 0; k < 5; ++k) e[k] = X[k] * std::polar(1.0, -4.0 * kPi * static_cast<double>(k) / 5.0);
    check(predict_spectrum(PropertyRule::circular_shift(2), base).bins, e, "shift closed form");
    check(direct_dft(apply_rule_time(PropertyRule::circular_shift(2), Signal(x))).bins, e, "shift numeric");
    // reversal of a real sequence conjugates the spectrum
    std::vector<double> re(5);
    for (std::size_t i = 0; i < 5; ++i) re[i] = x[i].real();
    const Signal xr = Signal::from_real(re);
    std::vector<cplx> g = reference_dft(xr.samples());
    for (auto& v : g) v = std::conj(v);
    check(direct_dft(apply_rule_time(PropertyRule::reverse(), xr)).bins, g, "real reversal numeric");
  }
  if (o.pass) o.detail = "dft-of-dft, repeat, shift, real reversal over 100 seeds, worst rel err " + num(worst);
  return o;
}

std::filesystem::path find_ppg(const std::string& cli_path) {
  if (!cli_path.empty()) return cli_path;
  if (const char* env = std::getenv("DSPWB_PPG_CSV"); env && *env) return env;
  return "ppg_100hz_1024samples.csv";
}

Outcome heart_rate(const std::string& ppg_arg) {
  Outcome o;
  const auto v = dspwb::testing::cosine(1024, 11.0 / 1024.0);
  const Signal x = Signal::from_real(v, 100.0);
  const RateEstimate f = rate_from_fft(x);
  const RateEstimate r = rate_from_autocorr(x);
  o.require(f.frequency == 1.07421875, "fft frequency " + num(f.frequency, "%.10g"));
  o.require(std::abs(f.bpm - 64.45) <= 0.005, "fft bpm " + bpm(f.bpm));
  o.require(std::abs(r.bpm - f.bpm) <= 2.0, "autocorrelation bpm " + bpm(r.bpm));
  std::string detail = "synthetic: " + bpm(f.bpm) + " / " + bpm(r.bpm) + " bpm";

  const auto path = find_ppg(ppg_arg);
  if (std::filesystem::exists(path)) {
    const Signal ppg = read_csv_signal(path, 100.0);
    const RateEstimate pf = rate_from_fft(ppg);
    const RateEstimate pr = rate_from_autocorr(ppg);
    o.require(std::abs(pf.bpm - 64.45) <= 0.1, "ppg fft bpm " + bpm(pf.bpm));
    o.require(std::abs(pr.bpm - 63.8) <= 0.1, "ppg autocorrelation bpm " + bpm(pr.bpm));
    detail += "; ppg: " + bpm(pf.bpm) + " / " + bpm(pr.bpm) + " bpm";
  } else {
    detail += "; ppg csv not supplied, skipped";
  }
  if (o.pass) o.detail = detail;
  return o;
}

Outcome convolution_oracle() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (char label : {'a', 'b', 'c', 'd', 'e'}) {
    const ConvolutionCase cc = convolution_case(label);
    const Signal closed = convolve_ideal(cc.first, cc.second, -256, 256);
    const Signal oracle = numeric_convolution_oracle(cc.first, cc.second, 4096, -256, 256);
    const double diff = max_abs_difference(closed, oracle);
    worst = std::max(worst, diff);
    o.require(diff <= 2e-3, std::string("case ") + label + " differs by " + num(diff));
    if (label == 'e') {
      bool zero = true;
      for (const auto& s : closed.samples()) zero = zero && s == cplx(0.0);
      o.require(zero, "case e is not exactly zero");
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs < 30.0, "runtime " + num(secs) + " s");
  if (o.pass) o.detail = "worst |closed - oracle| " + num(worst);
  return o;
}

Outcome compression_identities() {
  Outcome o;
  std::mt19937_64 rng(42);
  for (std::size_t n : {1000u, 1024u, 4001u}) {
    const Signal x = Signal::from_real(random_real(n, rng));
    const double norm = std::sqrt(energy(x));
    const CompressedAudio c = fft_compress(x, 0.1);
    const Signal e = error_signal(x, fft_extract(c, false));
    const Spectrum E = dft(e);
    for (std::size_t k = 0; k < c.kept_bins.size(); ++k) {
      o.require(std::abs(E[k]) <= 1e-9 * norm, "E[" + std::to_string(k) + "] not zero at N=" + std::to_string(n));
    }
    const auto k0 = static_cast<std::int64_t>(c.kept_bins.size());
    o.require(max_abs_difference(remodulate(spectral_shift(e, k0), k0), e) <= 1e-12, "remodulate o shift not identity");
    const Signal full = fft_extract(fft_compress(x, 1.0), false);
    o.require(max_abs_difference(full, x) <= 1e-9, "p=1 not lossless at N=" + std::to_string(n));
  }
  if (o.pass) o.detail = "N in {1000, 1024, 4001}";
  return o;
}

Signal bandlimited(std::size_t n, double max_cycles, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(0.2, 1.0), phase(0.0, kTwoPi);
  std::vector<double> v(n, 0.0);
  const auto top = static_cast<std::size_t>(max_cycles * static_cast<double>(n));
  for (std::size_t k = 1; k < top; k += 7) {
    const double a = amp(rng), p = phase(rng);
    for (std::size_t i = 0; i < n; ++i) v[i] += a * std::cos(kTwoPi * static_cast<double>(k * i) / static_cast<double>(n) + p);
  }
  return Signal::from_real(v);
}

Outcome filter_suite() {
  Outcome o;
  const FirFilter h = design_lowpass(100, kPi / 2.0);
  o.require(std::abs(gain_at(h, 0.0) - 1.0) <= 1e-12, "DC gain " + num(gain_at(h, 0.0)));
  double worst_db = -1e9;
  for (int i = 0; i <= 1000; ++i) {
    const double w = 0.95 * kPi + 0.05 * kPi * i / 1000.0;
    worst_db = std::max(worst_db, 20.0 * std::log10(std::max(gain_at(h, w), 1e-300)));
  }
  o.require(worst_db <= -40.0, "stopband only " + num(worst_db) + " dB");
  const auto& t = h.taps();
  for (std::size_t i = 0; i < t.size(); ++i) o.require(t[i] == t[t.size() - 1 - i], "taps not exactly symmetric");

  const std::size_t n = 2000;
  const Signal x1 = bandlimited(n, 0.2, 10);
  const Signal x2 = bandlimited(n, 0.2, 11);
  const StegOutput out = system2(x1, x2, steg_lowpass());
  double num2 = 0.0, den = 0.0;
  for (std::size_t i = 200; i + 200 < n; ++i) {
    num2 += std::norm(out.y2[i] - x2[i]);
    den += std::norm(x2[i]);
  }
  const double rel = std::sqrt(num2 / den);
  o.require(rel <= 0.05, "hidden signal error " + num(rel));
  if (o.pass) o.detail = "stopband " + num(worst_db) + " dB, hidden signal rel err " + num(rel);
  return o;
}

Outcome hilbert_features_suite() {
  // Order 800 at N=8000, fs=400: 0.05 Hz bins, every test tone on-bin.
  Outcome o;
  const double fs = 400.0;
  const std::size_t n = 8000;
  const int order = 800;
  double worst_amp = 0.0, worst_freq = 0.0;
  const auto run_band = [&](FreqBand band, double f0, double step) {
    for (int k = 0; k < 10; ++k) {
      const double f = f0 + step * k;
      Clip c;
      c.fs = fs;
      c.samples = dspwb::testing::cosine(n, f / fs);
      const BandAnalytic ba = band_analytic(c, band, order);
      for (std::size_t i = ba.first; i < ba.last; ++i) {
        worst_amp = std::max(worst_amp, std::abs(std::abs(ba.analytic[i]) - 1.0));
        if (i > ba.first) {
          const double fi = std::arg(ba.analytic[i] * std::conj(ba.analytic[i - 1])) * fs / kTwoPi;
          worst_freq = std::max(worst_freq, std::abs(fi - f));
        }
      }
    }
  };
  run_band(kDeltaBand, 1.8, 0.15);
  run_band(kAlphaBand, 9.0, 0.2);
  o.require(worst_amp <= 0.02, "amplitude error " + num(worst_amp));
  o.require(worst_freq <= 0.2, "frequency error " + num(worst_freq) + " Hz");
  if (o.pass) o.detail = "worst amplitude err " + num(worst_amp) + ", frequency err " + num(worst_freq) + " Hz";
  return o;
}

Outcome synthetic_separability() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const ClipSet cs = synthesize_clipset(SynthOptions{});
  o.require(cs.size() == 596 && cs.count(ClipLabel::Ictal) == 178, "clip counts");
  const auto report = separability_report(feature_table(cs));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::string detail;
  for (const auto& name : {feature::kEnergy, feature::kCurveLength, feature::kActivity}) {
    const auto it = std::find_if(report.begin(), report.end(), [&](const FeatureScore& s) { return s.name == name; });
    o.require(it != report.end(), name + " missing");
    if (it == report.end()) continue;
    o.require(it->auc > 0.9, name + " auc " + num(it->auc));
    detail += name + " " + num(it->auc) + ", ";
  }
  o.require(secs < 60.0, "runtime " + num(secs) + " s");
  if (o.pass) o.detail = detail + "full run " + num(secs) + " s";
  return o;
}

Outcome transform_engine() {
  Outcome o;
  std::mt19937_64 rng(9);
  double worst = 0.0;
  for (std::size_t n : {5u, 6u, 64u, 1000u, 1024u}) {
    const Signal x(random_complex(n, rng));
    const Signal y(random_complex(n, rng));
    const Spectrum X = dft(x);
    const Spectrum Y = dft(y);
    const double ex = energy(x);
    double ef = 0.0;
    for (const auto& b : X.bins) ef += std::norm(b);
    const double parseval = std::abs(ex - ef / static_cast<double>(n)) / ex;

    const cplx a(0.7, -1.3), b(-2.0, 0.4);
    const Spectrum L = dft(add(scale(x, a), scale(y, b)));
    std::vector<cplx> lin(n);
    for (std::size_t k = 0; k < n; ++k) lin[k] = a * X[k] + b * Y[k];
    const double linearity = max_relative_error(L.bins, lin);
    const double round_trip = max_abs_difference(idft(X), x) / std::sqrt(ex);
    const double fast_direct = max_relative_error(X.bins, direct_dft(x).bins);
    for (double e : {parseval, linearity, round_trip, fast_direct}) worst = std::max(worst, e);
    o.require(parseval <= 1e-9, "Parseval at N=" + std::to_string(n));
    o.require(linearity <= 1e-9, "linearity at N=" + std::to_string(n));
    o.require(round_trip <= 1e-9, "round trip at N=" + std::to_string(n));
    o.require(fast_direct <= 1e-9, "fast vs direct at N=" + std::to_string(n));
  }
  if (o.pass) o.detail = "worst rel err " + num(worst);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::string ppg;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--ppg") ppg = argv[i + 1];
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 dft identity table", dft_identity_table},
      {"2 five-point closed forms", five_point_forms},
      {"3 heart rate", [&] { return heart_rate(ppg); }},
      {"4 ideal-spectrum convolution", convolution_oracle},
      {"5 compression identities", compression_identities},
      {"6 filters and steganography", filter_suite},
      {"7 hilbert band features", hilbert_features_suite},
      {"8 synthetic clip separability", synthetic_separability},
      {"9 transform engine", transform_engine},
  };

  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  [%s] %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    if (!o.pass) ++failures;
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
