#include "eegfeat/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <thread>

#include "eegfeat/error.hpp"
#include "eegfeat/time_features.hpp"

namespace eegfeat {

namespace {

// Kernel terms beyond this many bandwidths are below 1e-13 and skipped.
constexpr double kKernelCutoff = 8.0;

bool overlaps(const Interval& a, const Interval& b) {
  return std::min(a.end_s, b.end_s) > std::max(a.start_s, b.start_s);
}

}  // namespace

double ClassDensity::pdf(double x) const {
  const double reach = kKernelCutoff * bandwidth;
  auto lo = std::lower_bound(samples.begin(), samples.end(), x - reach);
  auto hi = std::upper_bound(lo, samples.end(), x + reach);
  double acc = 0.0;
  for (auto it = lo; it != hi; ++it) {
    const double u = (x - *it) / bandwidth;
    acc += std::exp(-0.5 * u * u);
  }
  return acc / (static_cast<double>(samples.size()) * bandwidth *
                std::sqrt(2.0 * std::numbers::pi));
}

double KdeModel::min_sample() const {
  return std::min(classes[0].samples.front(), classes[1].samples.front());
}
double KdeModel::max_sample() const {
  return std::max(classes[0].samples.back(), classes[1].samples.back());
}
double KdeModel::max_bandwidth() const {
  return std::max(classes[0].bandwidth, classes[1].bandwidth);
}

double rule_of_thumb_bandwidth(std::span<const double> x) {
  return 1.06 * sample_stddev(x) * std::pow(static_cast<double>(x.size()), -0.2);
}

KdeModel fit_kde(const std::vector<std::vector<double>>& classes,
                 std::optional<std::array<double, 2>> priors) {
  if (classes.size() != 2) {
    fail(ErrorCode::invalid_argument,
         "KDE Bayes model needs exactly two classes, got " +
             std::to_string(classes.size()));
  }
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& c : classes) {
    require(c.size() >= 2, "each class needs at least 2 samples");
    for (double v : c) {
      require(std::isfinite(v), "KDE samples must be finite");
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const double total = static_cast<double>(classes[0].size() + classes[1].size());
  std::array<double, 2> p{static_cast<double>(classes[0].size()) / total,
                          static_cast<double>(classes[1].size()) / total};
  if (priors) {
    require((*priors)[0] > 0.0 && (*priors)[1] > 0.0 &&
                std::abs((*priors)[0] + (*priors)[1] - 1.0) < 1e-9,
            "class priors must be positive and sum to 1");
    p = *priors;
  }
  const double range = hi - lo;
  const double fallback = range > 0.0 ? 1e-3 * range : 1e-3 * std::max(1.0, std::abs(lo));

  KdeModel model;
  for (std::size_t i = 0; i < 2; ++i) {
    auto& cd = model.classes[i];
    cd.samples = classes[i];
    std::sort(cd.samples.begin(), cd.samples.end());
    cd.bandwidth = rule_of_thumb_bandwidth(cd.samples);
    if (!(cd.bandwidth > 0.0)) cd.bandwidth = fallback;
    cd.prior = p[i];
  }
  return model;
}

double bayes_error(const KdeModel& model, const QuadratureGrid& grid) {
  require(grid.points >= 2, "quadrature grid needs >= 2 points");
  const double margin = grid.margin_bandwidths * model.max_bandwidth();
  const double a = model.min_sample() - margin;
  const double b = model.max_sample() + margin;
  const double step = (b - a) / static_cast<double>(grid.points - 1);
  double acc = 0.0;
  for (std::size_t k = 0; k < grid.points; ++k) {
    const double x = a + step * static_cast<double>(k);
    const double f1 = model.classes[0].prior * model.classes[0].pdf(x);
    const double f2 = model.classes[1].prior * model.classes[1].pdf(x);
    const double f = std::min(f1, f2);
    if (!std::isfinite(f)) {
      fail(ErrorCode::undefined_result, "class density is not finite on the grid");
    }
    acc += (k == 0 || k + 1 == grid.points) ? 0.5 * f : f;
  }
  return acc * step;
}

double err0(std::size_t n_seizure, std::size_t n_normal) {
  require(n_seizure + n_normal > 0, "baseline error needs at least one epoch");
  const double e = static_cast<double>(n_seizure) /
                   static_cast<double>(n_seizure + n_normal);
  if (e == 0.0) {
    fail(ErrorCode::undefined_result, "baseline error is zero (no seizure epochs)");
  }
  return e;
}

double improvement_rate(double err_b, double err_0) {
  if (!(err_0 > 0.0)) {
    fail(ErrorCode::undefined_result, "improvement rate needs err_0 > 0");
  }
  return 100.0 * (err_0 - err_b) / err_0;
}

SignificanceReport feature_significance(const FeatureTable& table,
                                        const std::string& feature,
                                        const std::string& hemisphere,
                                        double threshold,
                                        const QuadratureGrid& grid) {
  const auto column = table.column(feature + hemisphere);
  std::vector<std::vector<double>> classes(2);
  for (std::size_t r = 0; r < table.rows(); ++r) {
    if (!std::isfinite(column[r])) continue;
    classes[table.labels()[r] == EpochLabel::seizure ? 0 : 1].push_back(column[r]);
  }
  if (table.count(EpochLabel::seizure) == 0 || table.count(EpochLabel::normal) == 0) {
    fail(ErrorCode::invalid_argument, "feature table must contain both classes");
  }
  SignificanceReport rep;
  rep.feature = feature;
  rep.hemisphere = hemisphere;
  rep.err_0 = err0(table.count(EpochLabel::seizure), table.count(EpochLabel::normal));
  rep.err_b = bayes_error(fit_kde(classes), grid);
  rep.rate = improvement_rate(rep.err_b, rep.err_0);
  rep.significant = rep.rate > threshold;
  return rep;
}

std::vector<SignificanceReport> evaluate_table(const FeatureTable& table,
                                               double threshold,
                                               const QuadratureGrid& grid,
                                               unsigned threads) {
  std::vector<std::pair<std::string, std::string>> jobs;
  for (const auto& c : table.columns()) {
    if (c.size() < 2) continue;
    const std::string side(1, c.back());
    if (side != "L" && side != "R") continue;
    const std::string base = c.substr(0, c.size() - 1);
    const std::string other = base + (side == "L" ? "R" : "L");
    if (table.has_column(other)) jobs.emplace_back(base, side);
  }
  if (jobs.empty()) {
    fail(ErrorCode::invalid_argument,
         "feature table has no <feature>L/<feature>R column pairs");
  }
  std::vector<SignificanceReport> out(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        out[i] = feature_significance(table, jobs[i].first, jobs[i].second,
                                      threshold, grid);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.rate != b.rate) return a.rate > b.rate;
    if (a.feature != b.feature) return a.feature < b.feature;
    return a.hemisphere < b.hemisphere;
  });
  return out;
}

void write_significance_csv(std::ostream& os,
                            const std::vector<SignificanceReport>& reports) {
  os << "feature,hemisphere,err_b,err_0,rate,significant\n";
  for (const auto& r : reports) {
    os << r.feature << ',' << r.hemisphere << ',' << format_value(r.err_b) << ','
       << format_value(r.err_0) << ',' << format_value(r.rate) << ','
       << (r.significant ? "true" : "false") << '\n';
  }
}

EpochMetrics epoch_metrics(const DetectionCounts& c) {
  if (c.total() == 0 || c.tp + c.fn == 0 || c.tn + c.fp == 0) {
    fail(ErrorCode::undefined_result,
         "epoch metrics need epochs of both classes");
  }
  return {static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total()),
          static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn),
          static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp)};
}

EventMetrics event_metrics(std::span<const Interval> predicted,
                           std::span<const Interval> annotated,
                           double duration_h) {
  require(duration_h > 0.0, "event metrics need a positive duration");
  if (annotated.empty()) {
    fail(ErrorCode::undefined_result,
         "good detection rate is undefined without annotated events");
  }
  std::size_t detected = 0;
  for (const auto& a : annotated) {
    detected += std::any_of(predicted.begin(), predicted.end(),
                            [&](const Interval& p) { return overlaps(a, p); });
  }
  std::size_t false_alarms = 0;
  for (const auto& p : predicted) {
    false_alarms += std::none_of(annotated.begin(), annotated.end(),
                                 [&](const Interval& a) { return overlaps(a, p); });
  }
  return {100.0 * static_cast<double>(detected) / static_cast<double>(annotated.size()),
          static_cast<double>(false_alarms) / duration_h};
}

}  // namespace eegfeat
