#include <gtest/gtest.h>

#include <random>

#include "dspwb/transform.hpp"
#include "test_util.hpp"

using namespace dspwb;
using dspwb::testing::max_rel_diff;
using dspwb::testing::random_complex;
using dspwb::testing::reference_dft;

TEST(Transform, SmallExamples) {
  const Signal x = Signal::from_real({2, 3, 4, 5, 6});
  const Spectrum X = dft(x);
  EXPECT_NEAR(std::abs(X[0] - cplx(20)), 0.0, 1e-12);
  EXPECT_LT(max_rel_diff(X.bins, reference_dft(x.samples())), 1e-12);

  const Spectrum flat = dft(Signal::from_real({1, 0, 0, 0}));
  for (const auto& b : flat.bins) EXPECT_NEAR(std::abs(b - cplx(1)), 0.0, 1e-15);
  const Spectrum flat_ref = direct_dft(Signal::from_real({1, 0, 0, 0}));
  for (const auto& b : flat_ref.bins) EXPECT_EQ(b, cplx(1));

  const Spectrum single = direct_dft(Signal({cplx(2, -3)}));
  EXPECT_EQ(single.bins, (std::vector<cplx>{cplx(2, -3)}));
}

TEST(Transform, DirectDftMatchesLongDoubleReference) {
  std::mt19937_64 rng(1);
  for (std::size_t n : {1u, 2u, 3u, 6u, 17u, 64u}) {
    const auto v = random_complex(n, rng);
    EXPECT_LT(max_rel_diff(direct_dft(Signal(v)).bins, reference_dft(v)), 1e-12) << n;
  }
}

TEST(Transform, FastAgreesWithDirectForAllSmallLengths) {
  std::mt19937_64 rng(42);
  for (std::size_t n = 1; n <= 64; ++n) {
    const Signal x(random_complex(n, rng));
    EXPECT_LT(max_rel_diff(dft(x).bins, direct_dft(x).bins), 1e-9) << "n=" << n;
  }
}

TEST(Transform, InverseRoundTrip) {
  std::mt19937_64 rng(7);
  const Signal x(random_complex(1024, rng));
  EXPECT_LT(max_abs_difference(idft(dft(x)), x), 1e-9);

  const cplx c(2.5, -1.0);
  const Signal back = idft(Spectrum{std::vector<cplx>(6, c), std::nullopt});
  EXPECT_NEAR(std::abs(back[0] - c), 0.0, 1e-15);
  for (std::size_t i = 1; i < 6; ++i) EXPECT_NEAR(std::abs(back[i]), 0.0, 1e-15);
}

TEST(Transform, SixPointScalingColumn) {
  // idft of (6a, ..., 6f) is 6 (a..f) / 6 rescaled onto the index grid:
  // idft(6x) = 6 idft(x).
  std::mt19937_64 rng(3);
  const auto v = random_complex(6, rng);
  std::vector<cplx> six(6);
  for (std::size_t i = 0; i < 6; ++i) six[i] = 6.0 * v[i];
  const Signal a = idft(Spectrum{six, std::nullopt});
  const Signal b = idft(Spectrum{v, std::nullopt});
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(std::abs(a[i] - 6.0 * b[i]), 0.0, 1e-12);
}

TEST(Transform, ParsevalAndLinearity) {
  std::mt19937_64 rng(99);
  for (std::size_t n : {5u, 6u, 64u, 1000u, 1024u}) {
    const Signal x(random_complex(n, rng));
    const Signal y(random_complex(n, rng));
    double spectral = 0.0;
    for (const auto& b : dft(x).bins) spectral += std::norm(b);
    spectral /= static_cast<double>(n);
    EXPECT_NEAR(energy(x), spectral, 1e-9 * energy(x)) << n;

    const cplx alpha(0.3, -1.2), beta(-2.0, 0.5);
    const Spectrum lhs = dft(add(scale(x, alpha), scale(y, beta)));
    const Spectrum fx = dft(x), fy = dft(y);
    std::vector<cplx> rhs(n);
    for (std::size_t k = 0; k < n; ++k) rhs[k] = alpha * fx[k] + beta * fy[k];
    EXPECT_LT(max_rel_diff(lhs.bins, rhs), 1e-9) << n;
  }
}

TEST(Transform, RealInputSymmetry) {
  std::mt19937_64 rng(5);
  for (std::size_t n : {5u, 6u, 64u, 1000u}) {
    const Spectrum X = dft(Signal::from_real(dspwb::testing::random_real(n, rng)));
    const double scale_ref = dspwb::testing::max_abs(X.bins);
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_LE(std::abs(X[k] - std::conj(X[(n - k) % n])), 1e-9 * scale_ref);
    }
  }
}

TEST(Transform, DtftOfImpulseIsFlat) {
  const auto grid = omega_grid();
  ASSERT_EQ(grid.size(), 512u);
  EXPECT_DOUBLE_EQ(grid.front(), -kPi);
  EXPECT_DOUBLE_EQ(grid.back(), kPi);
  const DtftGrid g = dtft_eval(Signal::impulse(1), grid);
  for (const auto& v : g.values) EXPECT_NEAR(std::abs(v - cplx(1)), 0.0, 1e-15);
}

TEST(Transform, DtftRejectsBadGrid) {
  const std::vector<double> out_of_range{0.0, 4.0};
  const std::vector<double> decreasing{0.5, 0.1};
  EXPECT_THROW(dtft_eval(Signal::impulse(1), out_of_range), Error);
  EXPECT_THROW(dtft_eval(Signal::impulse(1), decreasing), Error);
}

namespace {

Signal truncated_sinc(std::int64_t half_width) {
  std::vector<cplx> v;
  for (std::int64_t n = -half_width; n <= half_width; ++n) {
    v.emplace_back(n == 0 ? 0.25 : std::sin(static_cast<double>(n) * kPi / 4.0) / (static_cast<double>(n) * kPi));
  }
  return Signal(std::move(v), std::nullopt, -half_width);
}

}  // namespace

TEST(Transform, DtftOfTruncatedSincApproximatesRect) {
  const Signal x = truncated_sinc(200);
  const std::vector<double> w{0.0, 0.9 * kPi};
  const DtftGrid g = dtft_eval(x, w);
  EXPECT_LT(std::abs(g.values[0] - cplx(1)), 0.02);
  EXPECT_LT(std::abs(g.values[1]), 0.05);
}

TEST(Transform, DtftShiftTheorem) {
  const Signal x = truncated_sinc(100);
  const Signal shifted = x.with_origin(x.origin_index() + 10);
  const auto grid = omega_grid(257);
  const DtftGrid a = dtft_eval(x, grid);
  const DtftGrid b = dtft_eval(shifted, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_NEAR(std::abs(a.values[i]), std::abs(b.values[i]), 1e-12);
    EXPECT_LT(std::abs(b.values[i] - a.values[i] * std::polar(1.0, -10.0 * grid[i])), 1e-11);
  }
}

TEST(Transform, SingleSidedPeakAndScaling) {
  const std::size_t n = 1024;
  const Signal x = Signal::from_real(dspwb::testing::cosine(n, 11.0 / 1024.0), 100.0);
  const SingleSided ss = single_sided(dft(x));
  ASSERT_EQ(ss.freqs.size(), 513u);
  const auto peak = std::max_element(ss.mags.begin(), ss.mags.end()) - ss.mags.begin();
  EXPECT_EQ(peak, 11);
  EXPECT_DOUBLE_EQ(ss.freqs[11], 1.07421875);
  EXPECT_NEAR(ss.mags[11], 1.0, 1e-12);

  const Signal dc = Signal::from_real(std::vector<double>(64, 3.0), 10.0);
  const SingleSided sd = single_sided(dft(dc));
  EXPECT_EQ(std::max_element(sd.mags.begin(), sd.mags.end()) - sd.mags.begin(), 0);
  EXPECT_NEAR(sd.mags[0], 3.0, 1e-12);

  EXPECT_THROW(single_sided(dft(Signal::from_real({1, 2, 3}))), Error);
}
