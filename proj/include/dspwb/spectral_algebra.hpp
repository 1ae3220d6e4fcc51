#pragma once

// Exact algebra over ideal 2pi-periodic spectra made of piecewise-constant
// bands and weighted impulses. Band edges and impulse positions are rational
// multiples of pi so intersections never suffer rounding.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "dspwb/error.hpp"
#include "dspwb/signal.hpp"

namespace dspwb {

/// num/den * pi in lowest terms with den > 0.
class PiFraction {
 public:
  constexpr PiFraction() = default;
  PiFraction(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
    if (den_ == 0) throw Error(ErrorKind::Parameter, "zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const auto g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double radians() const noexcept { return kPi * static_cast<double>(num_) / static_cast<double>(den_); }

  friend PiFraction operator+(PiFraction a, PiFraction b) {
    return PiFraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend PiFraction operator-(PiFraction a, PiFraction b) {
    return PiFraction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend PiFraction operator-(PiFraction a) { return PiFraction(-a.num_, a.den_); }
  friend bool operator==(PiFraction a, PiFraction b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator<(PiFraction a, PiFraction b) { return a.num_ * b.den_ < b.num_ * a.den_; }
  friend bool operator<=(PiFraction a, PiFraction b) { return !(b < a); }
  friend bool operator>(PiFraction a, PiFraction b) { return b < a; }
  friend bool operator>=(PiFraction a, PiFraction b) { return !(a < b); }

  std::string str() const {
    if (num_ == 0) return "0";
    std::string s;
    if (num_ == -1) {
      s = "-pi";
    } else if (num_ == 1) {
      s = "pi";
    } else {
      s = std::to_string(num_) + "pi";
    }
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline const PiFraction kMinusPi{-1, 1};
inline const PiFraction kPlusPi{1, 1};

struct Band {
  PiFraction lo;
  PiFraction hi;
  cplx height;
  friend bool operator==(const Band&, const Band&) = default;
};

struct Impulse {
  PiFraction omega;
  cplx weight;
  friend bool operator==(const Impulse&, const Impulse&) = default;
};

/// Bands are sorted, disjoint and non-zero; impulses are sorted by position,
/// lie in [-pi, pi) and have non-zero weight.
class IdealSpectrum {
 public:
  IdealSpectrum() = default;
  IdealSpectrum(std::vector<Band> bands, std::vector<Impulse> impulses)
      : bands_(std::move(bands)), impulses_(std::move(impulses)) {
    normalize();
  }

  const std::vector<Band>& bands() const noexcept { return bands_; }
  const std::vector<Impulse>& impulses() const noexcept { return impulses_; }
  bool empty() const noexcept { return bands_.empty() && impulses_.empty(); }

  /// Band height at w; edges are inclusive and the first matching band wins.
  cplx height_at(PiFraction w) const {
    for (const auto& b : bands_) {
      if (b.lo <= w && w <= b.hi) return b.height;
    }
    // -pi and pi are the same point on the circle.
    if (w == kMinusPi || w == kPlusPi) {
      const PiFraction other = (w == kMinusPi) ? kPlusPi : kMinusPi;
      for (const auto& b : bands_) {
        if (b.lo <= other && other <= b.hi) return b.height;
      }
    }
    return {};
  }

  std::optional<cplx> impulse_at(PiFraction w) const {
    for (const auto& imp : impulses_) {
      if (imp.omega == w) return imp.weight;
    }
    return std::nullopt;
  }

  friend bool operator==(const IdealSpectrum&, const IdealSpectrum&) = default;

 private:
  static bool is_zero(cplx v) { return std::abs(v) <= 1e-15; }

  void normalize() {
    for (const auto& b : bands_) {
      if (!(b.lo < b.hi) || b.lo < kMinusPi || b.hi > kPlusPi) {
        throw Error(ErrorKind::Parameter, "band [" + b.lo.str() + ", " + b.hi.str() + "] is not inside [-pi, pi]");
      }
    }
    std::sort(bands_.begin(), bands_.end(), [](const Band& a, const Band& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < bands_.size(); ++i) {
      if (bands_[i].lo < bands_[i - 1].hi) throw Error(ErrorKind::Parameter, "bands overlap");
    }
    std::vector<Band> merged;
    for (const auto& b : bands_) {
      if (is_zero(b.height)) continue;
      if (!merged.empty() && merged.back().hi == b.lo && std::abs(merged.back().height - b.height) <= 1e-15) {
        merged.back().hi = b.hi;
      } else {
        merged.push_back(b);
      }
    }
    bands_ = std::move(merged);

    std::vector<Impulse> folded;
    for (auto imp : impulses_) {
      if (imp.omega < kMinusPi || imp.omega > kPlusPi) throw Error(ErrorKind::Parameter, "impulse outside [-pi, pi]");
      if (imp.omega == kPlusPi) imp.omega = kMinusPi;
      auto it = std::find_if(folded.begin(), folded.end(), [&](const Impulse& f) { return f.omega == imp.omega; });
      if (it == folded.end()) {
        folded.push_back(imp);
      } else {
        it->weight += imp.weight;
      }
    }
    std::erase_if(folded, [](const Impulse& f) { return is_zero(f.weight); });
    std::sort(folded.begin(), folded.end(), [](const Impulse& a, const Impulse& b) { return a.omega < b.omega; });
    impulses_ = std::move(folded);
  }

  std::vector<Band> bands_;
  std::vector<Impulse> impulses_;
};

/// sin(wc n)/(pi n): one unit band on |w| < wc.
inline IdealSpectrum spec_sinc(PiFraction cutoff) {
  if (!(PiFraction(0) < cutoff && cutoff < kPlusPi)) throw Error(ErrorKind::Parameter, "sinc cutoff must lie in (0, pi)");
  return IdealSpectrum({Band{-cutoff, cutoff, 1.0}}, {});
}

/// delta[n]: unit height on the whole circle.
inline IdealSpectrum spec_delta() { return IdealSpectrum({Band{kMinusPi, kPlusPi, 1.0}}, {}); }

/// sin(w0 n): impulses -j pi at +w0 and +j pi at -w0.
inline IdealSpectrum spec_sinusoid(PiFraction w0) {
  if (w0 < kMinusPi || !(w0 < kPlusPi)) throw Error(ErrorKind::Parameter, "sinusoid frequency must lie in [-pi, pi)");
  return IdealSpectrum({}, {Impulse{w0, cplx(0.0, -kPi)}, Impulse{-w0, cplx(0.0, kPi)}});
}

/// Spectrum of (-1)^n x[n]: everything moves by pi and wraps into [-pi, pi).
inline IdealSpectrum spec_alternate(const IdealSpectrum& s) {
  const PiFraction two_pi(2);
  std::vector<Band> bands;
  for (const auto& b : s.bands()) {
    const PiFraction lo = b.lo + kPlusPi;
    const PiFraction hi = b.hi + kPlusPi;
    if (hi <= kPlusPi) {
      bands.push_back({lo, hi, b.height});
    } else if (lo >= kPlusPi) {
      bands.push_back({lo - two_pi, hi - two_pi, b.height});
    } else {
      bands.push_back({lo, kPlusPi, b.height});
      bands.push_back({kMinusPi, hi - two_pi, b.height});
    }
  }
  std::vector<Impulse> impulses;
  for (const auto& imp : s.impulses()) {
    PiFraction w = imp.omega + kPlusPi;
    if (w >= kPlusPi) w = w - two_pi;
    impulses.push_back({w, imp.weight});
  }
  return IdealSpectrum(std::move(bands), std::move(impulses));
}

namespace detail {

/// Sorted union of band edges of both spectra plus the circle ends.
inline std::vector<PiFraction> breakpoints(const IdealSpectrum& a, const IdealSpectrum& b) {
  std::vector<PiFraction> pts{kMinusPi, kPlusPi};
  for (const auto* s : {&a, &b}) {
    for (const auto& band : s->bands()) {
      pts.push_back(band.lo);
      pts.push_back(band.hi);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

/// Height on the open elementary interval (lo, hi).
inline cplx interval_height(const IdealSpectrum& s, PiFraction lo, PiFraction hi) {
  for (const auto& b : s.bands()) {
    if (b.lo <= lo && hi <= b.hi) return b.height;
  }
  return {};
}

}  // namespace detail

/// c1 * s1 + c2 * s2.
inline IdealSpectrum add(const IdealSpectrum& s1, const IdealSpectrum& s2, cplx c1 = 1.0, cplx c2 = 1.0) {
  const auto pts = detail::breakpoints(s1, s2);
  std::vector<Band> bands;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const cplx h = c1 * detail::interval_height(s1, pts[i], pts[i + 1]) +
                   c2 * detail::interval_height(s2, pts[i], pts[i + 1]);
    bands.push_back({pts[i], pts[i + 1], h});
  }
  std::vector<Impulse> impulses;
  for (const auto& imp : s1.impulses()) impulses.push_back({imp.omega, c1 * imp.weight});
  for (const auto& imp : s2.impulses()) impulses.push_back({imp.omega, c2 * imp.weight});
  return IdealSpectrum(std::move(bands), std::move(impulses));
}

/// Pointwise product, i.e. the spectrum of the time-domain convolution.
inline IdealSpectrum multiply(const IdealSpectrum& s1, const IdealSpectrum& s2) {
  const auto pts = detail::breakpoints(s1, s2);
  std::vector<Band> bands;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const cplx h = detail::interval_height(s1, pts[i], pts[i + 1]) * detail::interval_height(s2, pts[i], pts[i + 1]);
    bands.push_back({pts[i], pts[i + 1], h});
  }
  std::vector<Impulse> impulses;
  for (const auto& imp : s1.impulses()) {
    if (s2.impulse_at(imp.omega)) {
      throw Error(ErrorKind::DivergentProduct, "impulses coincide at w = " + imp.omega.str());
    }
    impulses.push_back({imp.omega, imp.weight * s2.height_at(imp.omega)});
  }
  for (const auto& imp : s2.impulses()) impulses.push_back({imp.omega, imp.weight * s1.height_at(imp.omega)});
  return IdealSpectrum(std::move(bands), std::move(impulses));
}

/// Inverse DTFT at integer n, evaluated in closed form.
inline cplx inverse_sample(const IdealSpectrum& s, std::int64_t n) {
  cplx acc{};
  const double nd = static_cast<double>(n);
  for (const auto& b : s.bands()) {
    if (n == 0) {
      acc += b.height * (b.hi.radians() - b.lo.radians()) / kTwoPi;
    } else {
      // h e^{jcn} sin(wn)/(pi n) with centre c and half-width w
      const PiFraction centre2 = b.lo + b.hi;  // 2c
      const PiFraction width2 = b.hi - b.lo;   // 2w
      const double c = centre2.radians() / 2.0;
      const double w = width2.radians() / 2.0;
      acc += b.height * std::polar(1.0, c * nd) * std::sin(w * nd) / (kPi * nd);
    }
  }
  for (const auto& imp : s.impulses()) acc += imp.weight / kTwoPi * std::polar(1.0, imp.omega.radians() * nd);
  return acc;
}

/// Closed-form samples of the time-domain convolution for n in [n_lo, n_hi].
inline Signal convolve_ideal(const IdealSpectrum& a, const IdealSpectrum& b, std::int64_t n_lo, std::int64_t n_hi) {
  if (n_hi < n_lo) throw Error(ErrorKind::Parameter, "empty sample range");
  const IdealSpectrum product = multiply(a, b);
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(n_hi - n_lo + 1));
  for (std::int64_t n = n_lo; n <= n_hi; ++n) out.push_back(inverse_sample(product, n));
  return Signal(std::move(out), std::nullopt, n_lo);
}

/// Truncates each factor to |n| <= truncation, convolves the two sequences
/// directly and returns the output samples for n in [n_lo, n_hi].
inline Signal numeric_convolution_oracle(const IdealSpectrum& a, const IdealSpectrum& b, std::int64_t truncation,
                                         std::int64_t n_lo, std::int64_t n_hi) {
  if (truncation < 1024) throw Error(ErrorKind::Parameter, "oracle truncation must be at least 1024");
  if (n_hi < n_lo) throw Error(ErrorKind::Parameter, "empty sample range");
  const auto len = static_cast<std::size_t>(2 * truncation + 1);
  std::vector<cplx> xa(len);
  std::vector<cplx> xb(len);
  for (std::int64_t n = -truncation; n <= truncation; ++n) {
    xa[static_cast<std::size_t>(n + truncation)] = inverse_sample(a, n);
    xb[static_cast<std::size_t>(n + truncation)] = inverse_sample(b, n);
  }
  std::vector<cplx> out;
  for (std::int64_t n = n_lo; n <= n_hi; ++n) {
    cplx acc{};
    const std::int64_t m_lo = std::max(-truncation, n - truncation);
    const std::int64_t m_hi = std::min(truncation, n + truncation);
    for (std::int64_t m = m_lo; m <= m_hi; ++m) {
      acc += xa[static_cast<std::size_t>(m + truncation)] * xb[static_cast<std::size_t>(n - m + truncation)];
    }
    out.push_back(acc);
  }
  return Signal(std::move(out), std::nullopt, n_lo);
}

namespace detail {

inline std::string format_coeff(cplx c) {
  char buf[64];
  if (c.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.6g", c.real());
  } else if (c.real() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.6gj", c.imag());
  } else {
    std::snprintf(buf, sizeof buf, "(%.6g%+.6gj)", c.real(), c.imag());
  }
  return buf;
}

}  // namespace detail

/// Human-readable time-domain sum: each band is a (modulated) sinc term and
/// each impulse a complex exponential.
inline std::string render_closed_form(const IdealSpectrum& s) {
  if (s.empty()) return "y[n] = 0";
  std::vector<std::string> terms;
  for (const auto& b : s.bands()) {
    const PiFraction centre = PiFraction((b.lo + b.hi).num(), (b.lo + b.hi).den() * 2);
    const PiFraction half = PiFraction((b.hi - b.lo).num(), (b.hi - b.lo).den() * 2);
    std::string t = detail::format_coeff(b.height);
    if (centre == kPlusPi || centre == kMinusPi) {
      t += "*(-1)^n";
    } else if (!(centre == PiFraction(0))) {
      t += "*e^{j(" + centre.str() + ")n}";
    }
    if (half == kPlusPi) {
      t += "*delta[n]";
    } else {
      t += "*sin((" + half.str() + ")n)/(pi n)";
    }
    terms.push_back(t + "   [band " + b.lo.str() + " .. " + b.hi.str() + "]");
  }
  for (const auto& imp : s.impulses()) {
    terms.push_back(detail::format_coeff(imp.weight / kTwoPi) + "*e^{j(" + imp.omega.str() + ")n}   [impulse]");
  }
  std::string out = "y[n] =";
  for (std::size_t i = 0; i < terms.size(); ++i) out += (i ? "\n     + " : " ") + terms[i];
  return out;
}

/// The five convolution exercises as spectrum pairs.
struct ConvolutionCase {
  char label;
  std::string description;
  IdealSpectrum first;
  IdealSpectrum second;
};

inline ConvolutionCase convolution_case(char label) {
  const auto sinc = [](std::int64_t num, std::int64_t den) { return spec_sinc(PiFraction(num, den)); };
  switch (label) {
    case 'a':
      return {label, "sin(n pi/4)/(n pi) * sin(n pi/8)/(n pi)", sinc(1, 4), sinc(1, 8)};
    case 'b':
      return {label, "sin(n pi/4)/(n pi) * (sin(n pi/2)/(n pi) - sin(n pi/3)/(n pi))", sinc(1, 4),
              add(sinc(1, 2), sinc(1, 3), 1.0, -1.0)};
    case 'c':
      return {label, "sin(n pi/4)/(n pi) * (delta[n] - sin(n pi/8)/(n pi))", sinc(1, 4),
              add(spec_delta(), sinc(1, 8), 1.0, -1.0)};
    case 'd':
      return {label, "(delta[n] - sin(n pi/4)/(n pi)) * ((-1)^n sin(n pi/4)/(n pi))",
              add(spec_delta(), sinc(1, 4), 1.0, -1.0), spec_alternate(sinc(1, 4))};
    case 'e':
      return {label, "((-1)^n sin(2n pi/3)/(n pi)) * sin(n pi/4)", spec_alternate(sinc(2, 3)),
              spec_sinusoid(PiFraction(1, 4))};
    default:
      throw Error(ErrorKind::Parameter, std::string("unknown convolution case '") + label + "'");
  }
}

}  // namespace dspwb
