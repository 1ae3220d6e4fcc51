#pragma once

// The dspwb command line. run() is separate from main() so tests can drive
// it in-process.

#include <bit>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dspwb/dspwb.hpp"

namespace dspwb::cli {

namespace fs = std::filesystem;

/// Tracks every file a subcommand creates so that a failure can remove them.
class Outputs {
 public:
  explicit Outputs(fs::path dir) : dir_(std::move(dir)) {}

  const fs::path& dir() const { return dir_; }

  fs::path claim(const std::string& name) {
    ensure_dir();
    fs::path p = dir_ / name;
    created_.push_back(p);
    return p;
  }

  void text(const std::string& name, const std::string& body) { detail::write_file_bytes(claim(name), body); }
  void wav(const std::string& name, const Signal& x) { write_wav(claim(name), x); }
  void series(const std::string& name, const std::vector<NamedSeries>& s) { write_series(claim(name), s); }

  void adopt(const fs::path& p) { created_.push_back(p); }

  void rollback() {
    std::error_code ec;
    for (auto it = created_.rbegin(); it != created_.rend(); ++it) fs::remove(*it, ec);
    for (auto it = made_dirs_.rbegin(); it != made_dirs_.rend(); ++it) {
      if (fs::is_empty(*it, ec)) fs::remove(*it, ec);
    }
    created_.clear();
  }

  void ensure_dir() { make_dirs(dir_); }

  void make_dirs(const fs::path& d) {
    if (d.empty() || fs::exists(d)) return;
    make_dirs(d.parent_path());
    fs::create_directory(d);
    made_dirs_.push_back(d);
  }

 private:
  fs::path dir_;
  std::vector<fs::path> created_;
  std::vector<fs::path> made_dirs_;
};

inline std::string fmt(double v, const char* spec = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

inline std::vector<double> index_axis(std::size_t n, std::int64_t origin = 0) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(origin + static_cast<std::int64_t>(i));
  return v;
}

// ---------------------------------------------------------------------------
// Sinc variants of the DTFT exercise

struct DtftVariant {
  Signal x;
  std::string description;
};

inline Signal truncated_sinc(std::int64_t half_width) {
  std::vector<cplx> v;
  for (std::int64_t n = -half_width; n <= half_width; ++n) {
    const double nd = static_cast<double>(n);
    v.emplace_back(n == 0 ? 0.25 : std::sin(nd * kPi / 4.0) / (nd * kPi));
  }
  return Signal(std::move(v), std::nullopt, -half_width);
}

inline DtftVariant dtft_variant(char variant, std::int64_t half_width) {
  if (half_width < 1) throw Error(ErrorKind::Parameter, "half-width must be positive");
  const Signal x = truncated_sinc(half_width);
  const auto per_index = [&](const Signal& s, auto f) {
    std::vector<cplx> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = f(s.origin_index() + static_cast<std::int64_t>(i), s[i]);
    return s.with_samples(std::move(out));
  };
  switch (variant) {
    case 'a': return {x, "x[n] = sin(n pi/4)/(n pi)"};
    case 'b': return {x.with_origin(x.origin_index() + 10), "x1[n] = x[n-10]"};
    case 'c': return {time_reverse(x), "x2[n] = x[-n]"};
    case 'd':
      return {per_index(x, [](std::int64_t n, cplx v) { return static_cast<double>(n) * v; }), "x3[n] = n x[n]"};
    case 'e':
      return {per_index(x, [](std::int64_t n, cplx v) { return v * std::polar(1.0, kPi * static_cast<double>(n) / 6.0); }),
              "x4[n] = e^{j n pi/6} x[n]"};
    case 'f': return {alternate_sign(x), "x5[n] = (-1)^n x[n]"};
    case 'g': return {linear_convolve(x, x), "x6[n] = x[n] * x[n] (convolution)"};
    case 'h': return {per_index(x, [](std::int64_t, cplx v) { return v * v; }), "x7[n] = x[n]^2"};
    case 'i': {
      // x8[m] = x[2m] for every m with 2m inside the stored support.
      const std::int64_t lo = x.origin_index();
      const std::int64_t hi = lo + static_cast<std::int64_t>(x.size()) - 1;
      const std::int64_t m_lo = (lo >= 0) ? (lo + 1) / 2 : -((-lo) / 2);
      std::vector<cplx> out;
      for (std::int64_t m = m_lo; 2 * m <= hi; ++m) out.push_back(x[static_cast<std::size_t>(2 * m - lo)]);
      return {Signal(std::move(out), std::nullopt, m_lo), "x8[n] = x[2n]"};
    }
    case 'j': return {zero_interleave(x, 2), "x9[n] = x[n/2] for even n, 0 for odd n"};
    default: throw Error(ErrorKind::Parameter, std::string("unknown DTFT variant '") + variant + "' (expected a..j)");
  }
}

// ---------------------------------------------------------------------------
// Subcommands

struct CompressArgs {
  std::string in;
  double p = 0.10;
  std::int64_t k0 = -1;  // -1: use K
};

inline void cmd_compress(const CompressArgs& a, Outputs& out, std::ostream& log) {
  const Signal x = read_wav(a.in);
  const CompressedAudio c = fft_compress(x, a.p);
  const std::size_t n = x.size();
  const std::size_t k = c.kept_bins.size();
  const std::int64_t k0 = a.k0 >= 0 ? a.k0 : static_cast<std::int64_t>(k % n);
  const Signal x1 = fft_extract(c, false);
  const Signal e = error_signal(x, x1);
  const Signal x2 = spectral_shift(e, k0);
  const Signal x3 = remodulate(x2, k0);

  out.wav("x1.wav", x1);
  out.wav("e.wav", e);
  out.wav("x2_mag.wav", Signal::from_real(x2.magnitude(), x.sample_rate()));
  out.wav("x3.wav", x3);

  const double fs = x.require_sample_rate();
  std::vector<double> freqs(n);
  for (std::size_t i = 0; i < n; ++i) freqs[i] = static_cast<double>(i) * fs / static_cast<double>(n);
  const auto mag = [](const Signal& s) {
    std::vector<double> m;
    for (const auto& b : dft(s).bins) m.push_back(std::abs(b));
    return m;
  };
  out.series("spectra.csv", {{"bin", index_axis(n)},
                             {"freq_hz", freqs},
                             {"X", mag(x)},
                             {"X1", mag(x1)},
                             {"E", mag(e)},
                             {"X2", mag(x2)},
                             {"X3", mag(x3)}});

  log << "samples N=" << n << " fs=" << fmt(fs, "%g") << " Hz\n";
  log << "kept bins K=" << k << " (p=" << fmt(a.p, "%g") << "), k0=" << k0 << "\n";
  log << "relative error energy ||e||^2/||x||^2 = " << fmt(energy(e) / std::max(energy(x), 1e-300), "%.6g") << "\n";
  log << "max |x3 - e| = " << fmt(max_abs_difference(x3, e), "%.3g") << "\n";
}

struct HeartrateArgs {
  std::string in;
  double fs = 0.0;
};

inline void cmd_heartrate(const HeartrateArgs& a, Outputs& out, std::ostream& log) {
  const Signal x = read_csv_signal(a.in, a.fs);
  const RateEstimate f = rate_from_fft(x);
  const RateEstimate r = rate_from_autocorr(x);

  const SingleSided ss = single_sided(dft(detail::remove_mean(x).with_origin(0)));
  out.series("spectrum.csv", {{"freq_hz", ss.freqs}, {"magnitude", ss.mags}});
  const Signal ac = autocorrelation(detail::remove_mean(x), true);
  std::vector<double> lag_s(ac.size());
  for (std::size_t m = 0; m < ac.size(); ++m) lag_s[m] = static_cast<double>(m) / a.fs;
  out.series("autocorr.csv", {{"lag", index_axis(ac.size())}, {"lag_s", lag_s}, {"r", ac.real_part()}});

  log << "fft peak: " << fmt(f.frequency, "%.8g") << " Hz, " << fmt(f.bpm, "%.2f") << " bpm (bin " << f.evidence[0]
      << ")\n";
  log << "autocorrelation: " << fmt(r.frequency, "%.8g") << " Hz, " << fmt(r.bpm, "%.2f") << " bpm (crossings at lags "
      << r.evidence[0] << ", " << r.evidence[1] << ", " << r.evidence[2] << "; period " << (r.evidence[2] - r.evidence[0])
      << " samples)\n";
}

struct StegArgs {
  std::string x1;
  std::string x2;
  int system = 2;
};

inline void cmd_steg(const StegArgs& a, Outputs& out, std::ostream& log) {
  const Signal x1 = read_wav(a.x1);
  const Signal x2 = read_wav(a.x2);
  if (x1.sample_rate() != x2.sample_rate()) throw Error(ErrorKind::Config, "x1 and x2 have different sample rates");
  const StegOutput s = a.system == 1 ? system1(x1, x2) : system2(x1, x2, steg_lowpass());
  out.wav("z.wav", s.z);
  out.wav("y1.wav", s.y1);
  out.wav("y2.wav", s.y2);
  log << "system " << a.system << ": wrote z.wav, y1.wav, y2.wav (" << x1.size() << " samples)\n";
}

struct DtftArgs {
  std::string variant;
  std::int64_t half_width = 100;
  std::size_t points = 512;
};

inline void cmd_dtft(const DtftArgs& a, Outputs& out, std::ostream& log) {
  if (a.variant.size() != 1) throw Error(ErrorKind::Parameter, "variant must be a single letter a..j");
  if (a.points < 2) throw Error(ErrorKind::Parameter, "need at least two grid points");
  const DtftVariant v = dtft_variant(a.variant[0], a.half_width);
  const DtftGrid g = dtft_eval(v.x, omega_grid(a.points));
  std::vector<double> re, im, mag, phase;
  for (const auto& z : g.values) {
    re.push_back(z.real());
    im.push_back(z.imag());
    mag.push_back(std::abs(z));
    phase.push_back(std::arg(z));
  }
  out.series("dtft_" + a.variant + ".csv",
             {{"omega", g.omegas}, {"re", re}, {"im", im}, {"magnitude", mag}, {"phase", phase}});
  out.series("sequence_" + a.variant + ".csv",
             {{"n", index_axis(v.x.size(), v.x.origin_index())}, {"x", v.x.samples()}});
  log << a.variant << ") " << v.description << "\n";
  log << "support n = " << v.x.origin_index() << " .. " << v.x.origin_index() + static_cast<std::int64_t>(v.x.size()) - 1
      << ", peak |X| = " << fmt(*std::max_element(mag.begin(), mag.end()), "%.6g") << "\n";
}

struct QuizGenArgs {
  std::size_t n = 6;
  std::size_t rows = 15;
  std::uint64_t seed = 1;
};

inline void cmd_quiz_gen(const QuizGenArgs& a, Outputs& out, std::ostream& log) {
  const auto items = generate_quiz(a.n, a.rows, a.seed);
  out.text("quiz_sheet.txt", format_sheet(items));
  out.text("quiz_key.txt", format_key(items));
  log << "wrote " << items.size() << " items to quiz_sheet.txt and quiz_key.txt\n";
}

struct QuizCheckArgs {
  std::string sheet;
  std::string answers;
};

inline void cmd_quiz_check(const QuizCheckArgs& a, std::ostream& log) {
  const auto items = parse_sheet(detail::read_file_bytes(a.sheet));
  const auto answers = parse_answers(detail::read_file_bytes(a.answers));
  if (answers.size() != items.size()) {
    throw Error(ErrorKind::Shape, "sheet has " + std::to_string(items.size()) + " items but " +
                                      std::to_string(answers.size()) + " answers were given");
  }
  std::size_t correct = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const Grade g = check_answer(items[i], answers[i]);
    log << "item " << i + 1 << ": ";
    if (g.correct) {
      ++correct;
      log << "correct\n";
    } else {
      log << "wrong at index " << *g.first_mismatch << "\n";
    }
  }
  log << "score " << correct << "/" << items.size() << "\n";
}

struct ConvolveArgs {
  std::string label;
  std::int64_t range = 256;
  std::int64_t truncation = 4096;
};

inline void cmd_convolve(const ConvolveArgs& a, Outputs& out, std::ostream& log) {
  if (a.label.size() != 1) throw Error(ErrorKind::Parameter, "case must be a single letter a..e");
  const ConvolutionCase cc = convolution_case(a.label[0]);
  const IdealSpectrum product = multiply(cc.first, cc.second);
  const Signal closed = convolve_ideal(cc.first, cc.second, -a.range, a.range);
  const Signal oracle = numeric_convolution_oracle(cc.first, cc.second, a.truncation, -a.range, a.range);
  const double diff = max_abs_difference(closed, oracle);
  const std::string form = render_closed_form(product);
  out.text("convolve_" + a.label + ".txt", cc.description + "\n" + form + "\n");
  out.series("convolve_" + a.label + ".csv", {{"n", index_axis(closed.size(), -a.range)},
                                              {"closed", closed.samples()},
                                              {"oracle", oracle.samples()}});
  log << a.label << ") " << cc.description << "\n" << form << "\n";
  log << "max |closed - oracle| over |n| <= " << a.range << " (truncation " << a.truncation << "): " << fmt(diff, "%.3g")
      << "\n";
}

struct EegSynthArgs {
  SynthOptions opt;
};

inline void cmd_eeg_synth(const EegSynthArgs& a, Outputs& out, std::ostream& log) {
  const ClipSet cs = synthesize_clipset(a.opt);
  out.ensure_dir();
  const fs::path manifest = out.dir() / "manifest.csv";
  const fs::path clip_dir = out.dir() / "clips";
  out.make_dirs(clip_dir);
  std::vector<fs::path> written;
  try {
    write_clipset(manifest, clip_dir, cs, &written);
  } catch (...) {
    for (const auto& p : written) out.adopt(p);
    out.adopt(manifest);
    throw;
  }
  for (const auto& p : written) out.adopt(p);
  log << "wrote " << cs.size() << " clips (" << cs.count(ClipLabel::Ictal) << " ictal, "
      << cs.count(ClipLabel::Interictal) << " interictal) to " << manifest.string() << "\n";
}

inline std::string format_report(const std::vector<FeatureScore>& report) {
  std::string s = "feature,auc,mean_ictal,mean_interictal,undefined\n";
  for (const auto& r : report) {
    s += r.name + "," + fmt(r.auc, "%.6f") + "," + fmt(r.mean_ictal, "%.8g") + "," + fmt(r.mean_interictal, "%.8g") +
         "," + std::to_string(r.undefined) + "\n";
  }
  return s;
}

struct EegArgs {
  std::string manifest;
  int band_order = kDefaultBandFilterOrder;
};

inline void write_table_and_report(const FeatureTable& t, const std::string& stem, Outputs& out, std::ostream& log) {
  write_feature_table(out.claim(stem + ".csv"), out.claim(stem + ".meta"), t);
  const std::string report = format_report(separability_report(t));
  out.text(stem + "_separability.csv", report);
  log << report;
}

inline void cmd_eeg_features(const EegArgs& a, Outputs& out, std::ostream& log) {
  const ClipSet cs = read_manifest(a.manifest);
  FeatureSpec spec;
  spec.band_filter_order = a.band_order;
  write_table_and_report(feature_table(cs, spec), "features", out, log);
}

inline void cmd_eeg_hilbert(const EegArgs& a, Outputs& out, std::ostream& log) {
  const ClipSet cs = read_manifest(a.manifest);
  FeatureSpec spec;
  spec.features = hilbert_features();
  spec.band_filter_order = a.band_order;
  write_table_and_report(feature_table(cs, spec), "hilbert_features", out, log);
}

inline void cmd_eeg_psd(const EegArgs& a, Outputs& out, std::ostream& log) {
  const ClipSet cs = read_manifest(a.manifest);
  if (cs.size() == 0) throw Error(ErrorKind::Degenerate, "manifest lists no clips");
  const double fs = cs.fs();

  // Spectrogram of all clips, ictal first.
  std::vector<double> all = cs.concatenated(ClipLabel::Ictal);
  const auto inter = cs.concatenated(ClipLabel::Interictal);
  all.insert(all.end(), inter.begin(), inter.end());
  const Spectrogram sg = spectrogram(Signal::from_real(all, fs), 100, 80);
  write_matrix(out.claim("spectrogram.csv"), sg.times, sg.freqs, sg.db);

  // Welch PSDs of the two concatenated series on a rad/sample axis. Both
  // share one zero-padded FFT length so their grids line up.
  const auto ictal = cs.concatenated(ClipLabel::Ictal);
  if (ictal.empty() || inter.empty()) throw Error(ErrorKind::Parameter, "PSD comparison needs ictal and interictal clips");
  const std::size_t seg = std::max(welch_segment_length(ictal.size(), 8, 0.5), welch_segment_length(inter.size(), 8, 0.5));
  const std::size_t nfft = std::max<std::size_t>(256, std::bit_ceil(seg));
  const WelchPsd pi = welch_psd(Signal::from_real(ictal), 8, 0.5, nfft);
  const WelchPsd pn = welch_psd(Signal::from_real(inter), 8, 0.5, nfft);
  const auto si = smooth(pi.psd, kPsdSmoothingWindow);
  const auto sn = smooth(pn.psd, kPsdSmoothingWindow);
  out.series("welch.csv", {{"omega", pi.freqs},
                           {"ictal", pi.psd},
                           {"interictal", pn.psd},
                           {"ictal_smoothed", si},
                           {"interictal_smoothed", sn}});
  const DifferenceBand band = max_difference_band(pi.freqs, pi.psd, pn.psd);
  log << "largest smoothed PSD difference at omega = " << fmt(band.peak_freq / kPi, "%.4f") << " pi rad/sample, band "
      << fmt(band.lo / kPi, "%.4f") << " pi .. " << fmt(band.hi / kPi, "%.4f") << " pi\n";

  FeatureSpec spec;
  spec.features = {feature::kAvgPsd};
  write_table_and_report(feature_table(cs, spec), "avg_psd", out, log);
}

// ---------------------------------------------------------------------------

inline fs::path default_out_dir() {
  if (const char* env = std::getenv("DSPWB_OUT"); env && *env) return env;
  return "dspwb_out";
}

inline int run(int argc, const char* const* argv, std::ostream& log = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Signal-processing workbench"};
  app.name("dspwb");
  app.require_subcommand(1);
  std::string out_dir;
  app.add_option("--out", out_dir, "Output directory (default: $DSPWB_OUT or ./dspwb_out)");

  CompressArgs compress;
  auto* c = app.add_subcommand("compress", "Spectral truncation, error signal and modulation chain");
  c->add_option("--in", compress.in, "Input PCM-16 WAV")->required();
  c->add_option("--p", compress.p, "Fraction of DFT bins kept")->capture_default_str();
  c->add_option("--k0", compress.k0, "Bin offset for the error-band shift (default: K)");

  HeartrateArgs hr;
  auto* h = app.add_subcommand("heartrate", "Heart rate from a PPG CSV");
  h->add_option("--in", hr.in, "Single-column CSV of samples")->required();
  h->add_option("--fs", hr.fs, "Sample rate in Hz")->required();

  StegArgs steg;
  auto* s = app.add_subcommand("steg", "(-1)^n steganography systems");
  s->add_option("--x1", steg.x1, "Cover WAV")->required();
  s->add_option("--x2", steg.x2, "Hidden WAV")->required();
  s->add_option("--system", steg.system, "1 or 2")->check(CLI::IsMember({1, 2}))->capture_default_str();

  DtftArgs dtft;
  auto* d = app.add_subcommand("dtft", "DTFT of a sinc variant on a grid over [-pi, pi]");
  d->add_option("--variant", dtft.variant, "a..j")->required();
  d->add_option("--half-width", dtft.half_width, "Sinc truncation |n| <= W")->capture_default_str();
  d->add_option("--points", dtft.points, "Grid points")->capture_default_str();

  auto* q = app.add_subcommand("dft-quiz", "DFT property quiz sheets");
  q->require_subcommand(1);
  QuizGenArgs qgen;
  auto* qg = q->add_subcommand("gen", "Generate a sheet and key");
  qg->add_option("--n", qgen.n, "Sequence length")->capture_default_str();
  qg->add_option("--rows", qgen.rows, "Number of items")->capture_default_str();
  qg->add_option("--seed", qgen.seed, "Random seed")->capture_default_str();
  QuizCheckArgs qcheck;
  auto* qc = q->add_subcommand("check", "Grade answers against a sheet");
  qc->add_option("--sheet", qcheck.sheet, "Sheet file")->required();
  qc->add_option("--answers", qcheck.answers, "Answer file (answer=[re:im,...] per line)")->required();

  ConvolveArgs conv;
  auto* ci = app.add_subcommand("convolve-ideal", "Closed-form convolution of ideal-spectrum sequences");
  ci->add_option("--case", conv.label, "a..e")->required();
  ci->add_option("--range", conv.range, "Output samples for |n| <= range")->capture_default_str();
  ci->add_option("--truncation", conv.truncation, "Oracle truncation")->capture_default_str();

  auto* e = app.add_subcommand("eeg", "EEG clip features");
  e->require_subcommand(1);
  EegSynthArgs synth;
  auto* es = e->add_subcommand("synth", "Write a seeded synthetic clip set");
  es->add_option("--seed", synth.opt.seed, "Random seed")->capture_default_str();
  es->add_option("--clips", synth.opt.clips, "Total clips")->capture_default_str();
  es->add_option("--ictal", synth.opt.ictal, "Ictal clips")->capture_default_str();
  es->add_option("--fs", synth.opt.fs, "Sample rate in Hz")->capture_default_str();
  es->add_option("--samples", synth.opt.samples, "Samples per clip")->capture_default_str();
  EegArgs eeg;
  auto* ef = e->add_subcommand("features", "All per-clip features and separability");
  auto* eh = e->add_subcommand("hilbert", "Instantaneous band features");
  auto* ep = e->add_subcommand("psd", "Spectrogram, Welch PSDs and the average-PSD feature");
  for (auto* sub : {ef, eh, ep}) sub->add_option("--manifest", eeg.manifest, "Manifest CSV (id,path,label,fs)")->required();
  for (auto* sub : {ef, eh}) {
    sub->add_option("--band-order", eeg.band_order, "Band filter order (capped per clip length)")->capture_default_str();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& pe) {
    return app.exit(pe, log, err);
  }

  Outputs out(out_dir.empty() ? default_out_dir() : fs::path(out_dir));
  try {
    if (c->parsed()) cmd_compress(compress, out, log);
    else if (h->parsed()) cmd_heartrate(hr, out, log);
    else if (s->parsed()) cmd_steg(steg, out, log);
    else if (d->parsed()) cmd_dtft(dtft, out, log);
    else if (qg->parsed()) cmd_quiz_gen(qgen, out, log);
    else if (qc->parsed()) cmd_quiz_check(qcheck, log);
    else if (ci->parsed()) cmd_convolve(conv, out, log);
    else if (es->parsed()) cmd_eeg_synth(synth, out, log);
    else if (ef->parsed()) cmd_eeg_features(eeg, out, log);
    else if (eh->parsed()) cmd_eeg_hilbert(eeg, out, log);
    else if (ep->parsed()) cmd_eeg_psd(eeg, out, log);
  } catch (const std::exception& ex) {
    out.rollback();
    err << "dspwb: error: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace dspwb::cli
