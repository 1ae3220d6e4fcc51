#pragma once

// File ingestion and emission: PCM-16 WAV, CSV signals and clip manifests,
// column series and matrices for external plotting.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "dspwb/eeg.hpp"
#include "dspwb/error.hpp"
#include "dspwb/signal.hpp"

namespace dspwb {

struct WavInfo {
  std::uint16_t channels = 1;
  std::uint16_t bits_per_sample = 16;
  std::uint32_t sample_rate = 0;
  std::size_t frames = 0;
};

namespace detail {

inline std::string read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file_bytes(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path.string() + "'");
}

inline std::uint32_t le32(const std::string& b, std::size_t off) {
  return static_cast<std::uint32_t>(static_cast<unsigned char>(b[off])) |
         static_cast<std::uint32_t>(static_cast<unsigned char>(b[off + 1])) << 8 |
         static_cast<std::uint32_t>(static_cast<unsigned char>(b[off + 2])) << 16 |
         static_cast<std::uint32_t>(static_cast<unsigned char>(b[off + 3])) << 24;
}

inline std::uint16_t le16(const std::string& b, std::size_t off) {
  return static_cast<std::uint16_t>(static_cast<unsigned char>(b[off]) |
                                    static_cast<unsigned char>(b[off + 1]) << 8);
}

inline void put16(std::string& b, std::uint16_t v) {
  b.push_back(static_cast<char>(v & 0xff));
  b.push_back(static_cast<char>(v >> 8));
}

inline void put32(std::string& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

[[noreturn]] inline void wav_fail(const std::filesystem::path& path, std::size_t offset, const std::string& what) {
  throw Error(ErrorKind::Parse, path.string() + " at byte " + std::to_string(offset) + ": " + what);
}

}  // namespace detail

/// Parses a RIFF/WAVE PCM-16 image. Multichannel data yields channel 0.
inline Signal parse_wav(const std::string& bytes, const std::filesystem::path& name, WavInfo* info = nullptr) {
  if (bytes.size() < 12) detail::wav_fail(name, 0, "file too short for a RIFF header");
  if (bytes.compare(0, 4, "RIFF") != 0) detail::wav_fail(name, 0, "missing RIFF tag");
  if (bytes.compare(8, 4, "WAVE") != 0) detail::wav_fail(name, 8, "missing WAVE tag");

  WavInfo wi;
  bool have_fmt = false;
  std::size_t data_off = 0;
  std::size_t data_len = 0;
  bool have_data = false;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::string id = bytes.substr(pos, 4);
    const std::size_t len = detail::le32(bytes, pos + 4);
    const std::size_t body = pos + 8;
    if (id == "fmt ") {
      if (len < 16 || body + 16 > bytes.size()) detail::wav_fail(name, pos, "truncated fmt chunk");
      const std::uint16_t format = detail::le16(bytes, body);
      if (format != 1) detail::wav_fail(name, body, "format code " + std::to_string(format) + " is not PCM (1)");
      wi.channels = detail::le16(bytes, body + 2);
      wi.sample_rate = detail::le32(bytes, body + 4);
      wi.bits_per_sample = detail::le16(bytes, body + 14);
      if (wi.channels == 0) detail::wav_fail(name, body + 2, "zero channels");
      if (wi.sample_rate == 0) detail::wav_fail(name, body + 4, "zero sample rate");
      if (wi.bits_per_sample != 16) {
        detail::wav_fail(name, body + 14, std::to_string(wi.bits_per_sample) + "-bit samples; only PCM-16 is supported");
      }
      have_fmt = true;
    } else if (id == "data") {
      data_off = body;
      data_len = std::min(len, bytes.size() - body);
      have_data = true;
    }
    pos = body + len + (len & 1);
  }
  if (!have_fmt) detail::wav_fail(name, 12, "no fmt chunk");
  if (!have_data) detail::wav_fail(name, 12, "no data chunk");

  const std::size_t frame_bytes = 2u * wi.channels;
  wi.frames = data_len / frame_bytes;
  if (wi.channels > 1) {
    std::cerr << "warning: " << name.string() << " has " << wi.channels << " channels; using channel 0\n";
  }
  std::vector<cplx> samples(wi.frames);
  for (std::size_t f = 0; f < wi.frames; ++f) {
    const auto raw = static_cast<std::int16_t>(detail::le16(bytes, data_off + f * frame_bytes));
    samples[f] = static_cast<double>(raw) / 32768.0;
  }
  if (info) *info = wi;
  return Signal(std::move(samples), static_cast<double>(wi.sample_rate));
}

inline Signal read_wav(const std::filesystem::path& path, WavInfo* info = nullptr) {
  return parse_wav(detail::read_file_bytes(path), path, info);
}

/// Mono PCM-16 image of the real part, clipped to [-1, 1) and rounded.
inline std::string encode_wav(const Signal& x) {
  const double fs = x.require_sample_rate();
  const auto rate = static_cast<std::uint32_t>(std::llround(fs));
  const auto data_len = static_cast<std::uint32_t>(x.size() * 2);
  std::string b;
  b.reserve(44 + data_len);
  b += "RIFF";
  detail::put32(b, 36 + data_len);
  b += "WAVE";
  b += "fmt ";
  detail::put32(b, 16);
  detail::put16(b, 1);
  detail::put16(b, 1);
  detail::put32(b, rate);
  detail::put32(b, rate * 2);
  detail::put16(b, 2);
  detail::put16(b, 16);
  b += "data";
  detail::put32(b, data_len);
  for (const auto& v : x.samples()) {
    const double q = std::clamp(std::round(v.real() * 32768.0), -32768.0, 32767.0);
    detail::put16(b, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
  }
  return b;
}

inline void write_wav(const std::filesystem::path& path, const Signal& x) {
  detail::write_file_bytes(path, encode_wav(x));
}

// ---------------------------------------------------------------------------
// CSV

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  try {
    std::size_t used = 0;
    out = std::stod(s, &used);
    return used == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

/// One value per line (`re` or `re,im`, auto-detected from the first data
/// line). A non-numeric first line is treated as a header.
inline Signal parse_csv_signal(const std::string& text, const std::string& name,
                               std::optional<double> fs = std::nullopt) {
  std::stringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  std::vector<cplx> samples;
  while (std::getline(lines, line)) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto cells = detail::split_csv(line);
    double re = 0.0;
    if (samples.empty() && columns == 0 && !detail::parse_double(cells[0], re) && line_no == 1) continue;  // header
    if (columns == 0) {
      columns = cells.size();
      if (columns > 2) throw Error(ErrorKind::Parse, name + " line " + std::to_string(line_no) + ": expected 1 or 2 columns");
    }
    if (cells.size() != columns) {
      throw Error(ErrorKind::Parse, name + " line " + std::to_string(line_no) + ": expected " + std::to_string(columns) +
                                        " columns, found " + std::to_string(cells.size()));
    }
    double im = 0.0;
    if (!detail::parse_double(cells[0], re) || (columns == 2 && !detail::parse_double(cells[1], im))) {
      throw Error(ErrorKind::Parse, name + " line " + std::to_string(line_no) + ": not a number: '" + line + "'");
    }
    samples.emplace_back(re, im);
  }
  if (samples.empty()) throw Error(ErrorKind::Parse, name + " line " + std::to_string(std::max<std::size_t>(1, line_no)) + ": no samples");
  return Signal(std::move(samples), fs);
}

inline Signal read_csv_signal(const std::filesystem::path& path, std::optional<double> fs = std::nullopt) {
  return parse_csv_signal(detail::read_file_bytes(path), path.string(), fs);
}

/// Real signals are written as one column, others as `re,im`.
inline void write_csv_signal(const std::filesystem::path& path, const Signal& x) {
  std::string out;
  const bool real = std::all_of(x.samples().begin(), x.samples().end(), [](cplx v) { return v.imag() == 0.0; });
  for (const auto& v : x.samples()) {
    out += detail::fmt17(v.real());
    if (!real) out += "," + detail::fmt17(v.imag());
    out += '\n';
  }
  detail::write_file_bytes(path, out);
}

struct NamedSeries {
  std::string name;
  std::variant<std::vector<double>, std::vector<cplx>> values;
};

/// Column CSV with a header; complex series expand to name_re,name_im.
/// Shorter columns are padded with empty cells.
inline void write_series(const std::filesystem::path& path, const std::vector<NamedSeries>& series) {
  std::string out;
  std::size_t rows = 0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (i) out += ',';
    if (std::holds_alternative<std::vector<double>>(series[i].values)) {
      out += series[i].name;
      rows = std::max(rows, std::get<std::vector<double>>(series[i].values).size());
    } else {
      out += series[i].name + "_re," + series[i].name + "_im";
      rows = std::max(rows, std::get<std::vector<cplx>>(series[i].values).size());
    }
  }
  out += '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < series.size(); ++i) {
      if (i) out += ',';
      if (const auto* re = std::get_if<std::vector<double>>(&series[i].values)) {
        if (r < re->size()) out += detail::fmt17((*re)[r]);
      } else {
        const auto& c = std::get<std::vector<cplx>>(series[i].values);
        if (r < c.size()) out += detail::fmt17(c[r].real()) + "," + detail::fmt17(c[r].imag());
        else out += ",";
      }
    }
    out += '\n';
  }
  detail::write_file_bytes(path, out);
}

/// Row per time frame; the header row lists the column frequencies.
inline void write_matrix(const std::filesystem::path& path, const std::vector<double>& row_axis,
                         const std::vector<double>& col_axis, const std::vector<std::vector<double>>& values,
                         const std::string& corner = "time_s") {
  if (values.size() != row_axis.size()) throw Error(ErrorKind::Shape, "matrix rows do not match the row axis");
  std::string out = corner;
  for (double c : col_axis) out += "," + detail::fmt17(c);
  out += '\n';
  for (std::size_t r = 0; r < values.size(); ++r) {
    if (values[r].size() != col_axis.size()) throw Error(ErrorKind::Shape, "matrix row length does not match the column axis");
    out += detail::fmt17(row_axis[r]);
    for (double v : values[r]) out += "," + detail::fmt17(v);
    out += '\n';
  }
  detail::write_file_bytes(path, out);
}

// ---------------------------------------------------------------------------
// Clip manifests and feature tables

/// Manifest CSV with header `id,path,label,fs`; relative paths resolve against
/// the manifest's directory.
inline ClipSet read_manifest(const std::filesystem::path& manifest) {
  const std::string text = detail::read_file_bytes(manifest);
  const auto base = manifest.parent_path();
  std::stringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<Clip> clips;
  while (std::getline(lines, line)) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto cells = detail::split_csv(line);
    if (line_no == 1 && !cells.empty() && cells[0] == "id") continue;
    if (cells.size() != 4) {
      throw Error(ErrorKind::Parse, manifest.string() + " line " + std::to_string(line_no) + ": expected id,path,label,fs");
    }
    double fs = 0.0;
    if (!detail::parse_double(cells[3], fs)) {
      throw Error(ErrorKind::Parse, manifest.string() + " line " + std::to_string(line_no) + ": bad sample rate");
    }
    std::filesystem::path p = cells[1];
    if (p.is_relative()) p = base / p;
    const Signal s = read_csv_signal(p, fs);
    clips.push_back(Clip{s.real_part(), fs, parse_label(cells[2]), cells[0]});
  }
  return ClipSet(std::move(clips));
}

/// Writes one CSV per clip under clip_dir and the manifest referencing them.
inline void write_clipset(const std::filesystem::path& manifest, const std::filesystem::path& clip_dir,
                          const ClipSet& cs, std::vector<std::filesystem::path>* written = nullptr) {
  std::filesystem::create_directories(clip_dir);
  std::string out = "id,path,label,fs\n";
  const auto rel_dir = std::filesystem::relative(clip_dir, manifest.parent_path().empty() ? "." : manifest.parent_path());
  for (const auto& c : cs.clips()) {
    const auto file = clip_dir / (c.id + ".csv");
    write_csv_signal(file, Signal::from_real(c.samples));
    if (written) written->push_back(file);
    out += c.id + "," + (rel_dir / (c.id + ".csv")).generic_string() + "," + label_name(c.label) + "," +
           detail::fmt17(c.fs) + "\n";
  }
  detail::write_file_bytes(manifest, out);
  if (written) written->push_back(manifest);
}

/// Feature CSV (id,label,features...) plus a key=value metadata sidecar.
inline void write_feature_table(const std::filesystem::path& csv, const std::filesystem::path& sidecar,
                                const FeatureTable& t) {
  std::string out = "id,label";
  for (const auto& n : t.names) out += "," + n;
  out += '\n';
  for (const auto& row : t.rows) {
    out += row.id + "," + label_name(row.label);
    for (double v : row.values) out += "," + (std::isfinite(v) ? detail::fmt17(v) : std::string("nan"));
    out += '\n';
  }
  detail::write_file_bytes(csv, out);
  std::string meta;
  for (const auto& [k, v] : t.metadata) meta += k + "=" + v + "\n";
  detail::write_file_bytes(sidecar, meta);
}

}  // namespace dspwb
