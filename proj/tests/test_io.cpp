#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <sstream>

#include "chbmit_summary.hpp"
#include "eegfeat/config.hpp"
#include "eegfeat/edf.hpp"
#include "eegfeat/error.hpp"
#include "eegfeat/feature_table.hpp"
#include "eegfeat/synth.hpp"
#include "oracles.hpp"
#include "tmpdir.hpp"

using namespace eegfeat;
using doctest::Approx;

namespace {

Record small_record(std::uint64_t seed, double seconds = 8.0) {
  std::vector<std::vector<double>> data;
  for (int c = 0; c < 3; ++c) {
    auto x = oracle::gaussian(static_cast<std::size_t>(seconds * 128), seed + c, 30.0, 5.0 * c);
    data.push_back(std::move(x));
  }
  return Record({"FP1-F7", "F7-T7", "T7-P7"}, std::move(data), 128.0, {{2.0, 5.0}});
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return static_cast<ErrorCode>(0);
}

}  // namespace

TEST_CASE("EDF round trip") {
  testing::TempDir dir;
  const auto rec = small_record(1);
  const auto path = dir.file("a.edf");
  write_edf(rec, path);
  CHECK(std::filesystem::file_size(path) == 256 * 4 + 8 * 3 * 128 * 2);

  const auto file = read_edf_file(path);
  CHECK(file.header.signals.size() == 3);
  CHECK(file.header.n_records == 8);
  CHECK(file.header.signals[0].label == "FP1-F7");
  const auto path2 = dir.file("b.edf");
  write_edf_file(file, path2);
  CHECK(testing::slurp(path) == testing::slurp(path2));

  const auto back = read_edf(path, rec.annotations());
  CHECK(back.channels() == rec.channels());
  CHECK(back.fs() == 128.0);
  CHECK(back.length() == rec.length());
  CHECK(back.annotations() == rec.annotations());
  for (std::size_t c = 0; c < 3; ++c) {
    const double step = file.header.signals[c].gain();
    for (std::size_t i = 0; i < rec.length(); ++i) {
      CHECK(std::fabs(back.channel(c)[i] - rec.channel(c)[i]) <= 0.5 * step + 1e-9);
    }
  }

  const auto path3 = dir.file("c.edf");
  write_edf(back, path3);
  const auto again = read_edf(path3);
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < rec.length(); ++i) {
      REQUIRE(std::memcmp(&again.channel(c)[i], &back.channel(c)[i], sizeof(double)) == 0);
    }
  }
}

TEST_CASE("EDF physical mapping") {
  EdfSignalHeader s;
  s.physical_min = -100.0;
  s.physical_max = 100.0;
  s.digital_min = -2048;
  s.digital_max = 2047;
  const std::vector<std::int16_t> d = {-2048, 2047, 0};
  const auto p = to_physical(s, d);
  CHECK(p[0] == -100.0);
  CHECK(p[1] == 100.0);
  CHECK(p[2] == Approx(2048.0 * 200.0 / 4095.0 - 100.0));
  CHECK(to_digital(s, p) == d);
  CHECK(to_digital(s, std::vector<double>{1e6})[0] == 2047);
}

TEST_CASE("EDF diagnostics") {
  testing::TempDir dir;
  const auto path = dir.file("a.edf");
  write_edf(small_record(2), path);
  const std::string good = testing::slurp(path);

  std::string zero = good;
  std::memcpy(&zero[252], "0   ", 4);
  testing::spit(dir.file("zero.edf"), zero);
  CHECK(code_of([&] { read_edf_file(dir.file("zero.edf")); }) == ErrorCode::format);

  // digital max of signal 0 set equal to its digital min
  std::string same = good;
  const std::size_t ns = 3;
  const std::size_t dmin_off = 256 + ns * (16 + 80 + 8 + 8 + 8);
  const std::size_t dmax_off = dmin_off + ns * 8;
  std::memcpy(&same[dmax_off], &same[dmin_off], 8);
  testing::spit(dir.file("same.edf"), same);
  std::string msg;
  try {
    read_edf_file(dir.file("same.edf"));
  } catch (const Error& e) {
    msg = e.what();
  }
  CHECK(msg.find("digital") != std::string::npos);

  testing::spit(dir.file("short.edf"), good.substr(0, 300));
  CHECK(code_of([&] { read_edf_file(dir.file("short.edf")); }) == ErrorCode::format);
  testing::spit(dir.file("trunc.edf"), good.substr(0, good.size() - 10));
  CHECK(code_of([&] { read_edf_file(dir.file("trunc.edf")); }) == ErrorCode::format);
  testing::spit(dir.file("long.edf"), good + std::string(10, '\0'));
  CHECK(code_of([&] { read_edf_file(dir.file("long.edf")); }) == ErrorCode::format);
  CHECK(code_of([&] { read_edf_file(dir.file("missing.edf")); }) == ErrorCode::io);
}

TEST_CASE("annotations") {
  CHECK(parse_annotations("10 50\n") == std::vector<Interval>{{10, 50}});
  CHECK(parse_annotations("10 50\n40 60\n") == std::vector<Interval>{{10, 60}});
  CHECK(parse_annotations("# header\n\n300 400 # note\n5 6\n") ==
        std::vector<Interval>{{5, 6}, {300, 400}});
  CHECK_THROWS_AS(parse_annotations("50 10\n"), Error);
  CHECK_THROWS_AS(parse_annotations("50\n"), Error);
  CHECK_THROWS_AS(parse_annotations("a b\n"), Error);
  CHECK_THROWS_AS(parse_annotations("1 2 3\n"), Error);

  testing::TempDir dir;
  const std::vector<Interval> iv = {{1.5, 2.25}, {100, 200}};
  write_annotations(iv, dir.file("x.ann"));
  CHECK(read_annotations(dir.file("x.ann")) == iv);
}

TEST_CASE("CHB-MIT summary conversion") {
  const std::string text =
      "Data Sampling Rate: 256 Hz\n"
      "File Name: chb01_03.edf\nFile Start Time: 13:43:04\nNumber of Seizures in File: 1\n"
      "Seizure Start Time: 2996 seconds\nSeizure End Time: 3036 seconds\n\n"
      "File Name: chb01_04.edf\nNumber of Seizures in File: 2\n"
      "Seizure 1 Start Time: 1467 seconds\nSeizure 1 End Time: 1494 seconds\n"
      "Seizure 2 Start Time: 100 seconds\nSeizure 2 End Time: 120 seconds\n"
      "File Name: chb01_05.edf\nNumber of Seizures in File: 0\n";
  CHECK(chbmit::parse_summary(text, "chb01_03.edf") == std::vector<Interval>{{2996, 3036}});
  CHECK(chbmit::parse_summary(text, "chb01_04.edf") ==
        std::vector<Interval>{{100, 120}, {1467, 1494}});
  CHECK(chbmit::parse_summary(text, "chb01_05.edf").empty());
  CHECK_THROWS_AS(chbmit::parse_summary("File Name: a.edf\nSeizure Start Time: 5 seconds\n", "a.edf"),
                  Error);
}

TEST_CASE("run configuration") {
  const RunConfig d;
  CHECK(d.width_s == 4.0);
  CHECK(d.stride_s == 1.0);
  CHECK(d.wavelet == Wavelet::d4);
  CHECK(d.levels == 5);
  CHECK(d.threshold == 4.5);
  CHECK(d.montage.left.size() == 8);

  const auto c = parse_config(R"({"width_s": 2, "features": ["Energy", "dwt:Variance"],
                                   "params.m": 3, "wavelet": "D8"})");
  CHECK(c.width_s == 2.0);
  CHECK(c.features == std::vector<std::string>{"Energy", "dwt:Variance"});
  CHECK(c.params.m == 3);
  CHECK(c.wavelet == Wavelet::d8);
  CHECK(parse_config(config_to_json(c)).features == c.features);
  CHECK(config_to_json(parse_config(config_to_json(c))) == config_to_json(c));
  CHECK_THROWS_AS(parse_config(R"({"widht_s": 2})"), Error);
  CHECK_THROWS_AS(parse_config(R"({"width_s": -1})"), Error);
  CHECK_THROWS_AS(parse_config("not json"), Error);

  RunConfig s;
  set_config_value(s, "features", "Energy,NE");
  CHECK(s.features == std::vector<std::string>{"Energy", "NE"});
  set_config_value(s, "stride_s", "0.5");
  CHECK(s.stride_s == 0.5);
  set_config_value(s, "wavelet", "D8");
  CHECK(s.wavelet == Wavelet::d8);
  CHECK_THROWS_AS(set_config_value(s, "levels", "0"), Error);
  CHECK(s.levels == 5);
  CHECK_THROWS_AS(set_config_value(s, "nope", "1"), Error);
  CHECK(split_list(" a, b ,,c") == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("feature table CSV") {
  FeatureTable t({"EnergyL", "EnergyR"});
  t.add_row("rec", 0.0, EpochLabel::normal, {1.0, 2.5});
  t.add_row("rec", 1.0, EpochLabel::seizure, {std::nan(""), 1.0 / 3.0});
  std::ostringstream os;
  write_feature_table(os, t);
  CHECK(os.str().rfind("record,epoch_start_s,label,EnergyL,EnergyR\n", 0) == 0);
  CHECK(os.str().find("0.333333333") != std::string::npos);
  std::istringstream is(os.str());
  const auto back = read_feature_table(is);
  CHECK(back.rows() == 2);
  CHECK(back.labels()[1] == EpochLabel::seizure);
  CHECK(std::isnan(back.column("EnergyL")[1]));
  std::ostringstream os2;
  write_feature_table(os2, back);
  CHECK(os2.str() == os.str());
  CHECK(format_value(0.1) == "0.1");
  std::istringstream bad("record,epoch_start_s,label,A\nr,0,normal\n");
  CHECK_THROWS_AS(read_feature_table(bad), Error);
}

TEST_CASE("synthetic records") {
  SynthSpec spec;
  spec.duration_s = 60;
  spec.seizures = {{10, 20}};
  const auto a = synth_record(spec);
  CHECK(a.channels().size() == 16);
  CHECK(a.length() == 60 * 256);
  CHECK(a.annotations() == spec.seizures);
  CHECK(synth_record(spec).data() == a.data());

  double bg = 0.0, sz = 0.0;
  for (std::size_t c = 0; c < a.channels().size(); ++c) {
    const auto x = a.channel(c);
    for (std::size_t i = 30 * 256; i < 60 * 256; ++i) bg += x[i] * x[i];
    for (std::size_t i = 10 * 256; i < 20 * 256; ++i) sz += x[i] * x[i];
  }
  bg /= 16.0 * 30 * 256;
  sz /= 16.0 * 10 * 256;
  CHECK(std::sqrt(bg) == Approx(20.0).epsilon(0.05));
  CHECK(std::sqrt(sz) == Approx(80.0).epsilon(0.1));

  spec.seizures.clear();
  CHECK(synth_record(spec).annotations().empty());
  spec.amplitude_factor = 0.5;
  CHECK_THROWS_AS(synth_record(spec), Error);
  spec.amplitude_factor = 1.0;
  spec.seizures = {{50, 70}};
  CHECK_THROWS_AS(synth_record(spec), Error);
}
