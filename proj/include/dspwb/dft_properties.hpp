#pragma once

// Closed-form DFT identities. A rule maps a transform pair (x, X) to a new
// pair (x', X') where x' is computed in the time domain and X' is predicted
// from the known sides without evaluating any transform.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dspwb/error.hpp"
#include "dspwb/signal.hpp"
#include "dspwb/transform.hpp"

namespace dspwb {

enum class RuleKind {
  DftOfDft,
  Reverse,
  Conjugate,
  ConjugateReverse,
  SignAlternate,
  CircularShift,
  Repeat,
  ZeroInterleave,
  ModulateBy,
  Scale,
};

struct PropertyRule {
  RuleKind kind = RuleKind::DftOfDft;
  std::int64_t param = 0;  // m, r, L or k0
  cplx factor{1.0, 0.0};   // Scale only

  static PropertyRule dft_of_dft() { return {RuleKind::DftOfDft}; }
  static PropertyRule reverse() { return {RuleKind::Reverse}; }
  static PropertyRule conjugate() { return {RuleKind::Conjugate}; }
  static PropertyRule conjugate_reverse() { return {RuleKind::ConjugateReverse}; }
  static PropertyRule sign_alternate() { return {RuleKind::SignAlternate}; }
  static PropertyRule circular_shift(std::int64_t m) { return {RuleKind::CircularShift, m}; }
  static PropertyRule repeat(std::int64_t r) { return {RuleKind::Repeat, r}; }
  static PropertyRule zero_interleave(std::int64_t l) { return {RuleKind::ZeroInterleave, l}; }
  static PropertyRule modulate_by(std::int64_t k0) { return {RuleKind::ModulateBy, k0}; }
  static PropertyRule scale(cplx c) { return {RuleKind::Scale, 0, c}; }

  friend bool operator==(const PropertyRule&, const PropertyRule&) = default;
};

using RuleChain = std::vector<PropertyRule>;

/// Both sides of a DFT pair, each known independently.
struct TransformPair {
  Signal time;
  Spectrum freq;
};

inline const char* rule_name(RuleKind kind) {
  switch (kind) {
    case RuleKind::DftOfDft: return "DftOfDft";
    case RuleKind::Reverse: return "Reverse";
    case RuleKind::Conjugate: return "Conjugate";
    case RuleKind::ConjugateReverse: return "ConjugateReverse";
    case RuleKind::SignAlternate: return "SignAlternate";
    case RuleKind::CircularShift: return "CircularShift";
    case RuleKind::Repeat: return "Repeat";
    case RuleKind::ZeroInterleave: return "ZeroInterleave";
    case RuleKind::ModulateBy: return "ModulateBy";
    case RuleKind::Scale: return "Scale";
  }
  return "?";
}

inline RuleKind parse_rule_kind(const std::string& name) {
  for (auto k : {RuleKind::DftOfDft, RuleKind::Reverse, RuleKind::Conjugate, RuleKind::ConjugateReverse,
                 RuleKind::SignAlternate, RuleKind::CircularShift, RuleKind::Repeat, RuleKind::ZeroInterleave,
                 RuleKind::ModulateBy, RuleKind::Scale}) {
    if (name == rule_name(k)) return k;
  }
  throw Error(ErrorKind::Parse, "unknown rule '" + name + "'");
}

inline bool rule_has_integer_param(RuleKind kind) {
  return kind == RuleKind::CircularShift || kind == RuleKind::Repeat || kind == RuleKind::ZeroInterleave ||
         kind == RuleKind::ModulateBy;
}

/// Throws unless the rule has a closed form on length-n sequences.
inline void validate_rule(const PropertyRule& rule, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::Degenerate, "rules need a non-empty sequence");
  switch (rule.kind) {
    case RuleKind::SignAlternate:
      if (n % 2 != 0) {
        throw Error(ErrorKind::UnsupportedRule,
                    "SignAlternate on odd length is a half-bin shift with no closed form on the bin grid");
      }
      break;
    case RuleKind::Repeat:
    case RuleKind::ZeroInterleave:
      if (rule.param < 1) throw Error(ErrorKind::Parameter, std::string(rule_name(rule.kind)) + " factor must be >= 1");
      break;
    default:
      break;
  }
}

/// Time-domain image x' of x under the rule.
inline Signal apply_rule_time(const PropertyRule& rule, const Signal& x) {
  validate_rule(rule, x.size());
  const Signal base = x.with_origin(0);
  switch (rule.kind) {
    case RuleKind::DftOfDft: return Signal(dft(base).bins, x.sample_rate());
    case RuleKind::Reverse: return circular_reverse(base);
    case RuleKind::Conjugate: return conjugate(base);
    case RuleKind::ConjugateReverse: return conjugate(circular_reverse(base));
    case RuleKind::SignAlternate: return alternate_sign(base);
    case RuleKind::CircularShift: return circular_shift(base, rule.param);
    case RuleKind::Repeat: return repeat(base, rule.param);
    case RuleKind::ZeroInterleave: return zero_interleave(base, rule.param);
    case RuleKind::ModulateBy: return modulate(base, static_cast<double>(rule.param));
    case RuleKind::Scale: return scale(base, rule.factor);
  }
  throw Error(ErrorKind::UnsupportedRule, "unknown rule");
}

/// Closed-form DFT of apply_rule_time(rule, pair.time), built from index
/// permutations, conjugation and scalar factors applied to the known sides.
inline Spectrum predict_spectrum(const PropertyRule& rule, const TransformPair& pair) {
  const auto& X = pair.freq.bins;
  const std::size_t n = X.size();
  validate_rule(rule, n);
  if (pair.time.size() != n) throw Error(ErrorKind::Shape, "transform pair sides differ in length");
  const auto at = [&](std::int64_t k) { return X[detail::mod_index(k, n)]; };
  std::vector<cplx> out;
  switch (rule.kind) {
    case RuleKind::DftOfDft: {
      out.resize(n);
      for (std::size_t k = 0; k < n; ++k) {
        out[k] = static_cast<double>(n) * pair.time[detail::mod_index(-static_cast<std::int64_t>(k), n)];
      }
      break;
    }
    case RuleKind::Reverse:
      out.resize(n);
      for (std::size_t k = 0; k < n; ++k) out[k] = at(-static_cast<std::int64_t>(k));
      break;
    case RuleKind::Conjugate:
      out.resize(n);
      for (std::size_t k = 0; k < n; ++k) out[k] = std::conj(at(-static_cast<std::int64_t>(k)));
      break;
    case RuleKind::ConjugateReverse:
      out.resize(n);
      for (std::size_t k = 0; k < n; ++k) out[k] = std::conj(X[k]);
      break;
    case RuleKind::SignAlternate:
      out.resize(n);
      for (std::size_t k = 0; k < n; ++k) out[k] = at(static_cast<std::int64_t>(k + n / 2));
      break;
    case RuleKind::CircularShift:
      out.resize(n);
      for (std::size_t k = 0; k < n; ++k) {
        out[k] = X[k] * detail::unit_root(-static_cast<std::int64_t>(k) * rule.param, n);
      }
      break;
    case RuleKind::Repeat: {
      const auto r = static_cast<std::size_t>(rule.param);
      out.assign(n * r, cplx{});
      for (std::size_t k = 0; k < n; ++k) out[k * r] = static_cast<double>(r) * X[k];
      break;
    }
    case RuleKind::ZeroInterleave: {
      const auto l = static_cast<std::size_t>(rule.param);
      out.resize(n * l);
      for (std::size_t k = 0; k < n * l; ++k) out[k] = X[k % n];
      break;
    }
    case RuleKind::ModulateBy:
      out.resize(n);
      for (std::size_t k = 0; k < n; ++k) out[k] = at(static_cast<std::int64_t>(k) - rule.param);
      break;
    case RuleKind::Scale:
      out.resize(n);
      for (std::size_t k = 0; k < n; ++k) out[k] = rule.factor * X[k];
      break;
  }
  return Spectrum{std::move(out), pair.freq.sample_rate};
}

/// Pair after the rule: time side computed, frequency side predicted. For
/// DftOfDft the new time side is the old frequency side.
inline TransformPair predict_pair(const PropertyRule& rule, const TransformPair& pair) {
  Spectrum next = predict_spectrum(rule, pair);
  Signal time = rule.kind == RuleKind::DftOfDft ? Signal(pair.freq.bins, pair.time.sample_rate())
                                                : apply_rule_time(rule, pair.time);
  return TransformPair{std::move(time), std::move(next)};
}

inline TransformPair predict_chain(const RuleChain& chain, TransformPair pair) {
  for (const auto& rule : chain) pair = predict_pair(rule, pair);
  return pair;
}

inline Signal apply_chain_time(const RuleChain& chain, Signal x) {
  for (const auto& rule : chain) x = apply_rule_time(rule, x);
  return x;
}

struct RuleReport {
  double max_rel_error = 0.0;
  bool passed = false;
};

inline double max_relative_error(const std::vector<cplx>& got, const std::vector<cplx>& want) {
  if (got.size() != want.size()) throw Error(ErrorKind::Shape, "compared sequences differ in length");
  double scale_ref = 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < want.size(); ++i) {
    scale_ref = std::max(scale_ref, std::abs(want[i]));
    worst = std::max(worst, std::abs(got[i] - want[i]));
  }
  return scale_ref > 0.0 ? worst / scale_ref : worst;
}

/// Checks the closed form against the reference DFT of the time-domain image.
inline RuleReport verify_chain(const RuleChain& chain, const Signal& x, double tol = 1e-9) {
  const Signal base = x.with_origin(0);
  const Signal image = apply_chain_time(chain, base);
  const Spectrum oracle = direct_dft(image);
  const TransformPair predicted = predict_chain(chain, TransformPair{base, direct_dft(base)});
  RuleReport report;
  report.max_rel_error = std::max(max_relative_error(predicted.freq.bins, oracle.bins),
                                  max_relative_error(predicted.time.samples(), image.samples()));
  report.passed = report.max_rel_error <= tol;
  return report;
}

inline RuleReport verify_rule(const PropertyRule& rule, const Signal& x, double tol = 1e-9) {
  return verify_chain(RuleChain{rule}, x, tol);
}

enum class Side { Time, Frequency };

inline const char* side_name(Side s) { return s == Side::Time ? "time" : "freq"; }

/// One row of the six-point DFT property table. `chain` maps the base pair
/// (a..f) <-> (A..F) to the row's pair; `given` is the side printed in bold.
struct TableRow {
  std::string time_pattern;
  std::string freq_pattern;
  Side given;
  RuleChain chain;
};

inline std::vector<TableRow> six_point_table() {
  using R = PropertyRule;
  return {
      {"(A,B,C,D,E,F)", "(6a,6f,6e,6d,6c,6b)", Side::Time, {R::dft_of_dft()}},
      {"(A,F,E,D,C,B)", "(6a,6b,6c,6d,6e,6f)", Side::Frequency, {R::dft_of_dft(), R::reverse()}},
      {"(A*,B*,C*,D*,E*,F*)", "(6a*,6b*,6c*,6d*,6e*,6f*)", Side::Time, {R::dft_of_dft(), R::conjugate()}},
      {"(A,F,E,D,C,B)", "(6a,6b,6c,6d,6e,6f)", Side::Time, {R::dft_of_dft(), R::reverse()}},
      {"(a*,b*,c*,d*,e*,f*)", "(A*,F*,E*,D*,C*,B*)", Side::Time, {R::conjugate()}},
      {"(a,f,e,d,c,b)", "(A,F,E,D,C,B)", Side::Time, {R::reverse()}},
      {"(a*,f*,e*,d*,c*,b*)", "(A*,B*,C*,D*,E*,F*)", Side::Frequency, {R::conjugate_reverse()}},
      {"(a,-b,c,-d,e,-f)", "(D,E,F,A,B,C)", Side::Time, {R::sign_alternate()}},
      {"(a,-f,e,-d,c,-b)", "(D,C,B,A,F,E)", Side::Time, {R::reverse(), R::sign_alternate()}},
      {"(a,0,b,0,c,0,d,0,e,0,f,0)", "(A,B,C,D,E,F,A,B,C,D,E,F)", Side::Frequency, {R::zero_interleave(2)}},
      {"(A,B,C,D,E,F,A,B,C,D,E,F)", "(12a,0,12f,0,12e,0,12d,0,12c,0,12b,0)", Side::Time,
       {R::dft_of_dft(), R::repeat(2)}},
      {"(A,0,B,0,C,0,D,0,E,0,F,0)", "(6a,6f,6e,6d,6c,6b,6a,6f,6e,6d,6c,6b)", Side::Time,
       {R::dft_of_dft(), R::zero_interleave(2)}},
      {"(A/6,0,F/6,0,E/6,0,D/6,0,C/6,0,B/6,0)", "(a,b,c,d,e,f,a,b,c,d,e,f)", Side::Frequency,
       {R::dft_of_dft(), R::reverse(), R::scale(1.0 / 6.0), R::zero_interleave(2)}},
      {"(A/12,F/12,E/12,D/12,C/12,B/12,A/12,F/12,E/12,D/12,C/12,B/12)", "(a,0,b,0,c,0,d,0,e,0,f,0)",
       Side::Frequency, {R::dft_of_dft(), R::reverse(), R::scale(1.0 / 12.0), R::repeat(2)}},
      {"(D,0,E,0,F,0,A,0,B,0,C,0)", "(6a,-6f,6e,-6d,6c,-6b,6a,-6f,6e,-6d,6c,-6b)", Side::Time,
       {R::dft_of_dft(), R::circular_shift(3), R::zero_interleave(2)}},
  };
}

// ---------------------------------------------------------------------------
// Quiz sheets

struct QuizItem {
  Side given_side = Side::Time;
  std::vector<cplx> base;  // (a, b, ...), whose DFT is (A, B, ...)
  PropertyRule rule;
  std::vector<cplx> given_seq;
  std::vector<cplx> answer_seq;
};

struct Grade {
  bool correct = false;
  std::optional<std::size_t> first_mismatch;
  double max_error = 0.0;
};

/// Deterministic sheet: base sequences hold small Gaussian-integer entries,
/// and each item shows one side of the transformed pair.
inline std::vector<QuizItem> generate_quiz(std::size_t n, std::size_t rows, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorKind::Parameter, "quiz length must be at least 2");
  if (rows < 1) throw Error(ErrorKind::Parameter, "quiz needs at least one row");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> value(-9, 9);
  std::vector<RuleKind> kinds = {RuleKind::DftOfDft,      RuleKind::Reverse,      RuleKind::Conjugate,
                                 RuleKind::ConjugateReverse, RuleKind::CircularShift, RuleKind::Repeat,
                                 RuleKind::ZeroInterleave, RuleKind::ModulateBy};
  if (n % 2 == 0) kinds.push_back(RuleKind::SignAlternate);
  std::uniform_int_distribution<std::size_t> pick_kind(0, kinds.size() - 1);
  std::uniform_int_distribution<std::int64_t> pick_shift(1, static_cast<std::int64_t>(n) - 1);
  std::uniform_int_distribution<std::int64_t> pick_factor(2, 3);
  std::bernoulli_distribution pick_side(0.5);

  std::vector<QuizItem> items;
  items.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    QuizItem item;
    item.base.resize(n);
    for (auto& v : item.base) {
      const int re = value(rng);
      const int im = value(rng);
      v = cplx(re, im);
    }
    const RuleKind kind = kinds[pick_kind(rng)];
    item.rule.kind = kind;
    if (kind == RuleKind::CircularShift || kind == RuleKind::ModulateBy) item.rule.param = pick_shift(rng);
    if (kind == RuleKind::Repeat || kind == RuleKind::ZeroInterleave) item.rule.param = pick_factor(rng);
    item.given_side = pick_side(rng) ? Side::Time : Side::Frequency;

    const Signal base(item.base);
    const TransformPair next = predict_pair(item.rule, TransformPair{base, dft(base)});
    if (item.given_side == Side::Time) {
      item.given_seq = next.time.samples();
      item.answer_seq = next.freq.bins;
    } else {
      item.given_seq = next.freq.bins;
      item.answer_seq = next.time.samples();
    }
    items.push_back(std::move(item));
  }
  return items;
}

/// Elementwise grading at 1e-6 relative to max(1, |answer|).
inline Grade check_answer(const QuizItem& item, const std::vector<cplx>& proposed, double rel_tol = 1e-6) {
  if (proposed.size() != item.answer_seq.size()) {
    throw Error(ErrorKind::Shape, "proposed answer has " + std::to_string(proposed.size()) + " entries, expected " +
                                      std::to_string(item.answer_seq.size()));
  }
  Grade g;
  g.correct = true;
  for (std::size_t i = 0; i < proposed.size(); ++i) {
    const double err = std::abs(proposed[i] - item.answer_seq[i]);
    g.max_error = std::max(g.max_error, err);
    if (err > rel_tol * std::max(1.0, std::abs(item.answer_seq[i]))) {
      if (!g.first_mismatch) g.first_mismatch = i;
      g.correct = false;
    }
  }
  return g;
}

// Text format: `side rule param base=[re:im,...] given=[re:im,...]` per item
// line; the key holds `answer=[re:im,...]` on the parallel line.

namespace detail {

inline std::string format_real(double v) {
  if (v == 0.0) v = 0.0;  // fold -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_complex_list(const std::vector<cplx>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_real(v[i].real());
    s += ':';
    s += format_real(v[i].imag());
  }
  s += ']';
  return s;
}

inline double parse_real(const std::string& token, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || token.empty()) {
    throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": bad number '" + token + "'");
  }
  return v;
}

inline std::vector<cplx> parse_complex_list(const std::string& field, std::size_t line) {
  if (field.size() < 2 || field.front() != '[' || field.back() != ']') {
    throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": expected [re:im,...]");
  }
  std::vector<cplx> out;
  const std::string body = field.substr(1, field.size() - 2);
  if (body.empty()) return out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": entry '" + item + "' lacks ':'");
    }
    out.emplace_back(parse_real(item.substr(0, colon), line), parse_real(item.substr(colon + 1), line));
  }
  return out;
}

inline std::string field_value(const std::string& token, const std::string& key, std::size_t line) {
  if (token.rfind(key + "=", 0) != 0) {
    throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": expected field '" + key + "='");
  }
  return token.substr(key.size() + 1);
}

}  // namespace detail

inline std::string format_rule(const PropertyRule& rule) {
  std::string s = rule_name(rule.kind);
  if (rule_has_integer_param(rule.kind)) s += " " + std::to_string(rule.param);
  if (rule.kind == RuleKind::Scale) {
    s += " " + detail::format_real(rule.factor.real()) + ":" + detail::format_real(rule.factor.imag());
  }
  return s;
}

inline std::string format_sheet(const std::vector<QuizItem>& items) {
  std::string out;
  for (const auto& item : items) {
    out += side_name(item.given_side);
    out += ' ';
    out += format_rule(item.rule);
    out += " base=" + detail::format_complex_list(item.base);
    out += " given=" + detail::format_complex_list(item.given_seq);
    out += '\n';
  }
  return out;
}

inline std::string format_answers(const std::vector<std::vector<cplx>>& answers) {
  std::string out;
  for (const auto& a : answers) out += "answer=" + detail::format_complex_list(a) + "\n";
  return out;
}

inline std::string format_key(const std::vector<QuizItem>& items) {
  std::vector<std::vector<cplx>> answers;
  for (const auto& item : items) answers.push_back(item.answer_seq);
  return format_answers(answers);
}

/// Parses a sheet; the hidden answers are recomputed from base and rule.
inline std::vector<QuizItem> parse_sheet(const std::string& text) {
  std::vector<QuizItem> items;
  std::stringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream tokens(line);
    std::vector<std::string> parts;
    for (std::string t; tokens >> t;) parts.push_back(t);
    if (parts.size() < 4) throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": too few fields");
    QuizItem item;
    if (parts[0] == "time") {
      item.given_side = Side::Time;
    } else if (parts[0] == "freq") {
      item.given_side = Side::Frequency;
    } else {
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": side must be time or freq");
    }
    item.rule.kind = parse_rule_kind(parts[1]);
    std::size_t next = 2;
    if (rule_has_integer_param(item.rule.kind)) {
      item.rule.param = static_cast<std::int64_t>(detail::parse_real(parts[next++], line_no));
    } else if (item.rule.kind == RuleKind::Scale) {
      const auto f = detail::parse_complex_list("[" + parts[next++] + "]", line_no);
      if (f.size() != 1) throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": bad scale factor");
      item.rule.factor = f[0];
    }
    if (parts.size() != next + 2) throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": field count");
    item.base = detail::parse_complex_list(detail::field_value(parts[next], "base", line_no), line_no);
    item.given_seq = detail::parse_complex_list(detail::field_value(parts[next + 1], "given", line_no), line_no);
    const Signal base(item.base);
    const TransformPair pair = predict_pair(item.rule, TransformPair{base, dft(base)});
    item.answer_seq = item.given_side == Side::Time ? pair.freq.bins : pair.time.samples();
    items.push_back(std::move(item));
  }
  return items;
}

inline std::vector<std::vector<cplx>> parse_answers(const std::string& text) {
  std::vector<std::vector<cplx>> out;
  std::stringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    out.push_back(detail::parse_complex_list(detail::field_value(line, "answer", line_no), line_no));
  }
  return out;
}

}  // namespace dspwb
