#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "dspwb/io.hpp"
#include "test_util.hpp"

using namespace dspwb;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("dspwb_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             std::to_string(counter++) + "_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

}  // namespace

TEST(Wav, RoundTripWithinQuantization) {
  TempDir tmp;
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(5000);
  for (double& s : v) s = u(rng);
  const Signal x = Signal::from_real(v, 8000.0);
  write_wav(tmp.path() / "a.wav", x);
  WavInfo info;
  const Signal y = read_wav(tmp.path() / "a.wav", &info);
  EXPECT_EQ(info.channels, 1);
  EXPECT_EQ(info.bits_per_sample, 16);
  EXPECT_EQ(info.sample_rate, 8000u);
  EXPECT_EQ(info.frames, 5000u);
  ASSERT_EQ(y.size(), x.size());
  EXPECT_EQ(y.sample_rate(), 8000.0);
  EXPECT_LE(max_abs_difference(x, y), 1.0 / 32768.0);
}

TEST(Wav, ClipsOutOfRangeSamples) {
  const Signal x = Signal::from_real({2.0, -3.0, 1.0, -1.0}, 100.0);
  const Signal y = parse_wav(encode_wav(x), "mem");
  EXPECT_DOUBLE_EQ(y[0].real(), 32767.0 / 32768.0);
  EXPECT_DOUBLE_EQ(y[1].real(), -1.0);
  EXPECT_DOUBLE_EQ(y[2].real(), 32767.0 / 32768.0);
  EXPECT_DOUBLE_EQ(y[3].real(), -1.0);
}

TEST(Wav, RejectsMalformedHeaders) {
  const std::string good = encode_wav(Signal::from_real({0.1, 0.2}, 100.0));
  EXPECT_THROW(parse_wav("RIFF", "short"), Error);
  std::string bad_tag = good;
  bad_tag[0] = 'X';
  try {
    parse_wav(bad_tag, "bad");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
    EXPECT_NE(std::string(e.what()).find("byte 0"), std::string::npos);
  }
  std::string float_fmt = good;
  float_fmt[20] = 3;  // IEEE float format code
  try {
    parse_wav(float_fmt, "float");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("byte 20"), std::string::npos);
  }
  std::string eight_bit = good;
  eight_bit[34] = 8;
  EXPECT_THROW(parse_wav(eight_bit, "8bit"), Error);
  EXPECT_THROW(read_wav("/nonexistent/dir/x.wav"), Error);
}

TEST(Wav, StereoReadsFirstChannel) {
  std::string b = "RIFF";
  detail::put32(b, 36 + 8);
  b += "WAVEfmt ";
  detail::put32(b, 16);
  detail::put16(b, 1);
  detail::put16(b, 2);
  detail::put32(b, 100);
  detail::put32(b, 400);
  detail::put16(b, 4);
  detail::put16(b, 16);
  b += "data";
  detail::put32(b, 8);
  for (std::int16_t v : {std::int16_t(16384), std::int16_t(-1), std::int16_t(-16384), std::int16_t(7)}) {
    detail::put16(b, static_cast<std::uint16_t>(v));
  }
  WavInfo info;
  const Signal y = parse_wav(b, "stereo", &info);
  EXPECT_EQ(info.channels, 2);
  ASSERT_EQ(y.size(), 2u);
  EXPECT_DOUBLE_EQ(y[0].real(), 0.5);
  EXPECT_DOUBLE_EQ(y[1].real(), -0.5);
}

TEST(Csv, ParsesSimpleSignal) {
  const Signal x = parse_csv_signal("0.5\n-0.25\n", "mem", 100.0);
  ASSERT_EQ(x.size(), 2u);
  EXPECT_EQ(x.sample_rate(), 100.0);
  EXPECT_EQ(x[0], cplx(0.5));
  EXPECT_EQ(x[1], cplx(-0.25));
}

TEST(Csv, HeaderComplexAndCrlf) {
  const Signal x = parse_csv_signal("value\r\n1\r\n2\r\n", "mem");
  EXPECT_EQ(x.samples(), (std::vector<cplx>{1, 2}));
  const Signal z = parse_csv_signal("1,2\n-3,0.5\n", "mem");
  EXPECT_EQ(z.samples(), (std::vector<cplx>{cplx(1, 2), cplx(-3, 0.5)}));
}

TEST(Csv, Errors) {
  try {
    parse_csv_signal("", "empty.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
    EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos);
  }
  try {
    parse_csv_signal("1\n2\nabc\n", "bad.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_THROW(parse_csv_signal("1\n2,3\n", "ragged"), Error);
  EXPECT_THROW(parse_csv_signal("1,2,3\n", "wide"), Error);
}

TEST(Csv, RoundTripIsExact) {
  TempDir tmp;
  std::mt19937_64 rng(3);
  const Signal x(dspwb::testing::random_complex(100, rng));
  write_csv_signal(tmp.path() / "z.csv", x);
  EXPECT_EQ(read_csv_signal(tmp.path() / "z.csv").samples(), x.samples());
  const Signal r = Signal::from_real(dspwb::testing::random_real(100, rng));
  write_csv_signal(tmp.path() / "r.csv", r);
  EXPECT_EQ(read_csv_signal(tmp.path() / "r.csv").samples(), r.samples());
}

TEST(Csv, SeriesAndMatrix) {
  TempDir tmp;
  write_series(tmp.path() / "s.csv", {{"f", std::vector<double>{0, 1, 2}}, {"X", std::vector<cplx>{cplx(1, -1)}}});
  EXPECT_EQ(detail::read_file_bytes(tmp.path() / "s.csv"), "f,X_re,X_im\n0,1,-1\n1,,\n2,,\n");
  write_matrix(tmp.path() / "m.csv", {0.0, 0.5}, {10, 20}, {{1, 2}, {3, 4}});
  EXPECT_EQ(detail::read_file_bytes(tmp.path() / "m.csv"), "time_s,10,20\n0,1,2\n0.5,3,4\n");
  EXPECT_THROW(write_matrix(tmp.path() / "bad.csv", {0.0}, {1, 2}, {{1}}), Error);
}

TEST(Manifest, ClipSetRoundTrip) {
  TempDir tmp;
  SynthOptions opt;
  opt.clips = 6;
  opt.ictal = 2;
  const ClipSet cs = synthesize_clipset(opt);
  std::vector<fs::path> written;
  write_clipset(tmp.path() / "manifest.csv", tmp.path() / "clips", cs, &written);
  EXPECT_EQ(written.size(), 7u);
  const ClipSet back = read_manifest(tmp.path() / "manifest.csv");
  ASSERT_EQ(back.size(), cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i) {
    EXPECT_EQ(back.clips()[i].id, cs.clips()[i].id);
    EXPECT_EQ(back.clips()[i].label, cs.clips()[i].label);
    EXPECT_EQ(back.clips()[i].fs, cs.clips()[i].fs);
    EXPECT_EQ(back.clips()[i].samples, cs.clips()[i].samples);
  }
  detail::write_file_bytes(tmp.path() / "broken.csv", "id,path,label,fs\nx,clips/none.csv,ictal\n");
  EXPECT_THROW(read_manifest(tmp.path() / "broken.csv"), Error);
}

TEST(Manifest, FeatureTableExport) {
  TempDir tmp;
  FeatureTable t;
  t.names = {"energy", "hjorth_mobility"};
  t.rows = {{"a", ClipLabel::Ictal, {2.5, std::numeric_limits<double>::quiet_NaN()}}};
  t.metadata = {{"band_filter_order", "400"}};
  write_feature_table(tmp.path() / "f.csv", tmp.path() / "f.meta", t);
  EXPECT_EQ(detail::read_file_bytes(tmp.path() / "f.csv"), "id,label,energy,hjorth_mobility\na,ictal,2.5,nan\n");
  EXPECT_EQ(detail::read_file_bytes(tmp.path() / "f.meta"), "band_filter_order=400\n");
}
