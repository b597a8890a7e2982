#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cfs_cases.hpp"
#include "eegfeat/bench.hpp"
#include "eegfeat/cfs.hpp"
#include "eegfeat/config.hpp"
#include "eegfeat/edf.hpp"
#include "eegfeat/error.hpp"
#include "eegfeat/evaluation.hpp"
#include "eegfeat/pipeline.hpp"
#include "eegfeat/synth.hpp"
#include "eegfeat/time_features.hpp"
#include "eegfeat/wavelet.hpp"
#include "entropy_cases.hpp"
#include "oracles.hpp"
#include "tmpdir.hpp"

using namespace eegfeat;

namespace {

int failures = 0;

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

void criterion(const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(name, false, std::string("exception: ") + e.what());
  }
}

bool sampen_defined(const std::vector<double>& x, int m, double r) {
  const std::size_t count = x.size() - static_cast<std::size_t>(m);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j) {
      bool ok = true;
      for (int k = 0; k <= m && ok; ++k) ok = std::fabs(x[i + k] - x[j + k]) <= r;
      if (ok) return true;
    }
  return false;
}

void entropy_oracles() {
  constexpr double kTol = 1e-12;
  constexpr double kMaxSeconds = 60.0;
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::size_t comparisons = 0;
  auto cmp = [&](double a, double b) {
    const double d = std::fabs(a - b);
    worst = std::isnan(d) ? INFINITY : std::max(worst, d);
    ++comparisons;
  };
  for (const auto& c : cases::entropy_cases(200, 7)) {
    cmp(approximate_entropy(c.x, c.m, c.r), oracle::apen(c.x, c.m, c.r));
    if (sampen_defined(c.x, c.m, c.r)) {
      cmp(sample_entropy(c.x, c.m, c.r), oracle::sampen(c.x, c.m, c.r));
    }
    cmp(permutation_entropy(c.x, c.order), oracle::pe(c.x, c.order, false));
    cmp(weighted_permutation_entropy(c.x, c.order), oracle::pe(c.x, c.order, true));
    cmp(fuzzy_entropy(c.x, c.m, c.r), oracle::fuzzen(c.x, c.m, c.r));
    cmp(distribution_entropy(c.x, c.m + 1, c.bins), oracle::disten(c.x, c.m + 1, c.bins));
  }
  const double secs = elapsed_s(t0);
  report("entropy oracle suite", worst < kTol && secs < kMaxSeconds,
         std::to_string(comparisons) + " comparisons on 200 signals, max |diff| " +
             fmt("%.3g", worst) + ", " + fmt("%.1f s", secs));
}

void baseline() {
  const double e = err0(4677, 263424);
  const double rounded = std::round(e * 1e4) / 1e4;
  report("baseline err_0", rounded == 0.0174, fmt("err0(4677, 263424) = %.6f", e));
}

void kde_gaussians() {
  constexpr double kTarget = 0.15866;
  constexpr double kTol = 0.01;
  const auto t0 = std::chrono::steady_clock::now();
  const double analytic = oracle::normal_cdf(-1.0);
  const auto m = fit_kde({oracle::gaussian(20000, 101, 1.0, -1.0),
                          oracle::gaussian(20000, 102, 1.0, 1.0)});
  const double e = bayes_error(m);
  const double secs = elapsed_s(t0);
  report("KDE Bayes error, Gaussians at +-1",
         std::fabs(e - kTarget) <= kTol && std::fabs(analytic - kTarget) < 1e-5 && secs < 10.0,
         fmt("err_b = %.5f", e) + fmt(", Phi(-1) = %.5f", analytic) + fmt(", %.2f s", secs));
}

void identical_classes() {
  constexpr double kErrTol = 0.005;
  constexpr double kRateTol = 5.0;
  // independent draws from one distribution, sized by the priors
  const auto m = fit_kde({oracle::gaussian(5000, 103), oracle::gaussian(45000, 104)},
                         std::array<double, 2>{0.1, 0.9});
  const double e = bayes_error(m);
  const double rate = improvement_rate(e, 0.1);
  report("identical classes, priors (0.1, 0.9)",
         std::fabs(e - 0.1) <= kErrTol && std::fabs(rate) < kRateTol,
         fmt("err_b = %.5f", e) + fmt(", rate = %.3f%%", rate));
}

void dwt_checks() {
  constexpr double kRecon = 1e-8;
  constexpr double kRamp = 1e-9;
  constexpr double kPartition = 0.01;
  double worst_recon = 0.0, worst_part = 0.0, raw_part = 0.0;
  for (int e = 0; e < 1000; ++e) {
    const auto x = oracle::gaussian(1024, 5000 + e, 25.0);
    const auto d = dwt(x, Wavelet::d4, 5);
    const auto y = idwt(d);
    for (std::size_t i = 0; i < x.size(); ++i) worst_recon = std::max(worst_recon, std::fabs(y[i] - x[i]));
    double eb = 0.0;
    for (const auto& [name, c] : d.bands()) eb += energy(c);
    raw_part += std::fabs(eb - energy(x)) / energy(x) / 1000.0;
  }
  std::vector<double> ramp(1024);
  for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = 0.37 * static_cast<double>(i) - 12.0;
  double worst_ramp = 0.0;
  const auto dr = dwt(ramp, Wavelet::d4, 5);
  for (const auto& det : dr.details) {
    for (std::size_t i = 4; i + 4 < det.size(); ++i) worst_ramp = std::max(worst_ramp, std::fabs(det[i]));
  }
  // Hann-tapered epochs: boundary extension carries no energy
  for (int e = 0; e < 200; ++e) {
    auto x = oracle::gaussian(1024, 9000 + e);
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] *= 0.5 - 0.5 * std::cos(2.0 * M_PI * static_cast<double>(i) / 1023.0);
    const double ex = energy(x);
    double eb = 0.0;
    const auto d = dwt(x, Wavelet::d4, 5);
    for (const auto& [name, c] : d.bands()) eb += energy(c);
    worst_part = std::max(worst_part, std::fabs(eb - ex) / ex);
  }
  report("DWT reconstruction, ramp and energy partition",
         worst_recon < kRecon && worst_ramp < kRamp && worst_part < kPartition,
         fmt("recon %.3g", worst_recon) + fmt(", ramp interior %.3g", worst_ramp) +
             fmt(", partition %.4f (tapered epochs)", worst_part) +
             fmt(", untapered white noise mean %.4f (not gated)", raw_part));
}

void estimators() {
  const auto t0 = std::chrono::steady_clock::now();
  constexpr int kSeeds = 20;
  constexpr std::size_t kN = 4096;
  double he = 0, dfa_w = 0, dfa_rw = 0, hig_line = 0, hig_w = 0;
  std::vector<double> line(kN);
  for (std::size_t i = 0; i < kN; ++i) line[i] = 0.01 * static_cast<double>(i);
  for (int s = 0; s < kSeeds; ++s) {
    const auto w = oracle::gaussian(kN, 700 + s);
    const auto rw = oracle::cumsum(w);
    he += hurst_exponent(w) / kSeeds;
    dfa_w += dfa(w) / kSeeds;
    dfa_rw += dfa(rw) / kSeeds;
    hig_line += higuchi_fd(line) / kSeeds;
    hig_w += higuchi_fd(w) / kSeeds;
  }
  const double secs = elapsed_s(t0);
  const bool ok = he >= 0.4 && he <= 0.6 && dfa_w >= 0.4 && dfa_w <= 0.6 && dfa_rw >= 1.3 &&
                  dfa_rw <= 1.7 && hig_line >= 0.95 && hig_line <= 1.05 && hig_w >= 1.8 &&
                  hig_w <= 2.05 && secs < 30.0;
  report("known-exponent estimators", ok,
         fmt("HE(noise) %.3f", he) + fmt(", DFA(noise) %.3f", dfa_w) +
             fmt(", DFA(walk) %.3f", dfa_rw) + fmt(", Higuchi(line) %.3f", hig_line) +
             fmt(", Higuchi(noise) %.3f", hig_w) + fmt(", %.1f s", secs));
}

void cfs_search() {
  constexpr double kRatio = 0.95;
  double worst = INFINITY;
  bool singleton_exact = true;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto t = cases::cfs_table(1000 + seed);
    const auto corr = correlations(t, cases::cfs_features());
    const auto trace = forward_search(corr, 4);
    for (std::size_t k = 1; k <= 4; ++k) {
      worst = std::min(worst, trace.merits[k - 1] / cases::exhaustive_best(corr, k));
    }
    for (std::size_t f = 0; f < corr.features.size(); ++f) {
      const std::vector<std::size_t> one = {f};
      singleton_exact = singleton_exact && merit(one, corr.class_corr, corr.feature_corr) == corr.class_corr[f];
    }
    singleton_exact = singleton_exact && trace.merits[0] == cases::exhaustive_best(corr, 1);
  }
  report("CFS greedy vs exhaustive merit", worst >= kRatio && singleton_exact,
         fmt("worst greedy/exhaustive ratio %.4f over 50 tables, sizes 1-4", worst) +
             (singleton_exact ? ", k=1 merit exact" : ", k=1 merit mismatch"));
}

void end_to_end() {
  const auto t0 = std::chrono::steady_clock::now();
  testing::TempDir dir;
  SynthSpec spec;
  spec.amplitude_factor = 4.0;
  const auto rec = synth_record(spec);
  const auto edf = dir.file("synthetic.edf");
  write_edf(rec, edf);
  write_annotations(rec.annotations(), annotation_path_for(edf));
  RunConfig cfg;
  cfg.features = {"Variance", "Energy", "NE", "Skewness"};
  run_extract({edf}, dir.file("table.csv"), cfg);
  const auto ev = run_evaluate(dir.file("table.csv"), dir.file("report.csv"), cfg);
  std::map<std::string, double> rate;
  for (const auto& r : ev.reports) rate[r.feature + r.hemisphere] = r.rate;
  bool ok = true;
  std::string detail;
  for (const char* h : {"L", "R"}) {
    for (const char* f : {"Variance", "Energy", "NE"}) {
      ok = ok && rate.at(std::string(f) + h) > 50.0;
      detail += std::string(f) + h + fmt(" %.1f%%, ", rate.at(std::string(f) + h));
    }
    ok = ok && rate.at(std::string("Skewness") + h) < 10.0;
    detail += std::string("Skewness") + h + fmt(" %.1f%%, ", rate.at(std::string("Skewness") + h));
  }
  const double secs = elapsed_s(t0);
  report("end-to-end synthetic pipeline", ok && secs < 120.0, detail + fmt("%.1f s", secs));
}

void bench_slopes() {
  BenchConfig cfg;
  const auto rep = run_bench(cfg);
  bool ok = true;
  std::string detail;
  for (const auto& s : rep.slopes) {
    if (s.complexity == "linear") ok = ok && s.slope >= 0.8 && s.slope <= 1.3;
    else if (s.complexity == "quadratic") ok = ok && s.slope >= 1.7 && s.slope <= 2.3;
    else continue;
    detail += s.feature + fmt(" %.2f ", s.slope);
  }
  report("bench log-log slopes", ok, detail);
}

void determinism() {
  testing::TempDir dir;
  SynthSpec spec;
  spec.duration_s = 90;
  spec.seizures = {{20, 50}};
  spec.seed = 77;
  for (const char* n : {"a.edf", "b.edf"}) {
    const auto rec = synth_record(spec);
    write_edf(rec, dir.file(n));
    write_annotations(rec.annotations(), annotation_path_for(dir.file(n)));
  }
  RunConfig one;
  RunConfig four;
  four.threads = 4;
  run_extract({dir.file("a.edf")}, dir.file("a.csv"), one);
  run_extract({dir.file("b.edf")}, dir.file("b.csv"), four);
  auto a = testing::slurp(dir.file("a.csv"));
  auto b = testing::slurp(dir.file("b.csv"));
  // record names differ by construction; compare everything else
  std::size_t pos;
  while ((pos = b.find("\nb,")) != std::string::npos) b.replace(pos, 3, "\na,");
  report("determinism", !a.empty() && a == b,
         std::to_string(a.size()) + " bytes, default features, 1 vs 4 threads");
}

}  // namespace

int main() {
  criterion("entropy oracle suite", entropy_oracles);
  criterion("baseline err_0", baseline);
  criterion("KDE Bayes error, Gaussians at +-1", kde_gaussians);
  criterion("identical classes, priors (0.1, 0.9)", identical_classes);
  criterion("DWT reconstruction, ramp and energy partition", dwt_checks);
  criterion("known-exponent estimators", estimators);
  criterion("CFS greedy vs exhaustive merit", cfs_search);
  criterion("end-to-end synthetic pipeline", end_to_end);
  criterion("bench log-log slopes", bench_slopes);
  criterion("determinism", determinism);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
