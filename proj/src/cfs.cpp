#include "eegfeat/cfs.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "eegfeat/error.hpp"

namespace eegfeat {

namespace {

double entropy_of_counts(const std::vector<std::size_t>& counts, double n) {
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log(p);
  }
  return h;
}

}  // namespace

DiscretizedFeature discretize(std::span<const double> values, int n_bins) {
  require(n_bins >= 2, "discretization needs at least 2 bins");
  require(!values.empty(), "cannot discretize an empty feature");
  for (double v : values) require(std::isfinite(v), "cannot discretize non-finite values");
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  DiscretizedFeature out{std::vector<int>(n), n_bins};
  std::size_t rank = 0;
  for (std::size_t p = 0; p < n; ++p) {
    if (p == 0 || values[order[p]] != values[order[p - 1]]) rank = p;
    out.codes[order[p]] =
        static_cast<int>(rank * static_cast<std::size_t>(n_bins) / n);
  }
  return out;
}

DiscretizedFeature discretize_labels(std::span<const EpochLabel> labels) {
  DiscretizedFeature out{std::vector<int>(labels.size()), 2};
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out.codes[i] = labels[i] == EpochLabel::seizure ? 1 : 0;
  }
  return out;
}

double symmetric_uncertainty(const DiscretizedFeature& a, const DiscretizedFeature& b) {
  if (a.codes.size() != b.codes.size()) {
    fail(ErrorCode::invalid_argument, "symmetric uncertainty needs equal lengths");
  }
  require(!a.codes.empty(), "symmetric uncertainty needs samples");
  const auto na = static_cast<std::size_t>(a.n_bins);
  const auto nb = static_cast<std::size_t>(b.n_bins);
  std::vector<std::size_t> ca(na, 0), cb(nb, 0), cab(na * nb, 0);
  for (std::size_t i = 0; i < a.codes.size(); ++i) {
    const auto x = static_cast<std::size_t>(a.codes[i]);
    const auto y = static_cast<std::size_t>(b.codes[i]);
    require(x < na && y < nb, "discretized code out of range");
    ++ca[x];
    ++cb[y];
    ++cab[x * nb + y];
  }
  const double n = static_cast<double>(a.codes.size());
  const double ha = entropy_of_counts(ca, n);
  const double hb = entropy_of_counts(cb, n);
  const double denom = ha + hb;
  if (denom == 0.0) return 0.0;
  const double mutual = denom - entropy_of_counts(cab, n);
  return std::clamp(2.0 * mutual / denom, 0.0, 1.0);
}

double merit(std::span<const std::size_t> subset, std::span<const double> class_corr,
             const std::vector<std::vector<double>>& feature_corr) {
  require(!subset.empty(), "merit needs a non-empty subset");
  const double k = static_cast<double>(subset.size());
  double rfc = 0.0;
  for (auto f : subset) rfc += class_corr[f];
  rfc /= k;
  double rff = 0.0;
  if (subset.size() > 1) {
    for (std::size_t i = 0; i < subset.size(); ++i) {
      for (std::size_t j = i + 1; j < subset.size(); ++j) {
        rff += feature_corr[subset[i]][subset[j]];
      }
    }
    rff /= k * (k - 1.0) / 2.0;
  }
  return k * rfc / std::sqrt(k + k * (k - 1.0) * rff);
}

CorrelationSet correlations(const FeatureTable& table,
                            const std::vector<std::string>& features,
                            int n_bins, unsigned threads) {
  require(!features.empty(), "CFS needs at least one feature");
  std::vector<std::span<const double>> cols;
  for (const auto& f : features) cols.push_back(table.column(f));
  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < table.rows(); ++r) {
    bool ok = true;
    for (const auto& c : cols) ok = ok && std::isfinite(c[r]);
    if (ok) keep.push_back(r);
  }
  require(keep.size() >= 2, "CFS needs at least 2 complete rows");

  std::vector<EpochLabel> labels;
  for (auto r : keep) labels.push_back(table.labels()[r]);
  const auto label_codes = discretize_labels(labels);

  std::vector<DiscretizedFeature> disc;
  for (const auto& c : cols) {
    std::vector<double> v;
    v.reserve(keep.size());
    for (auto r : keep) v.push_back(c[r]);
    disc.push_back(discretize(v, n_bins));
  }

  const std::size_t nf = features.size();
  CorrelationSet out{features, std::vector<double>(nf),
                     std::vector<std::vector<double>>(nf, std::vector<double>(nf, 1.0))};
  for (std::size_t i = 0; i < nf; ++i) {
    out.class_corr[i] = symmetric_uncertainty(disc[i], label_codes);
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < nf; ++i) {
    for (std::size_t j = i + 1; j < nf; ++j) pairs.emplace_back(i, j);
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t p = next++; p < pairs.size(); p = next++) {
      const auto [i, j] = pairs[p];
      const double su = symmetric_uncertainty(disc[i], disc[j]);
      out.feature_corr[i][j] = su;
      out.feature_corr[j][i] = su;
    }
  };
  const unsigned n = std::max(1u, threads);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

MeritTrace forward_search(const CorrelationSet& corr, std::size_t max_size) {
  const std::size_t nf = corr.features.size();
  require(max_size >= 1, "max subset size must be >= 1");
  if (max_size > nf) {
    fail(ErrorCode::invalid_argument,
         "max subset size " + std::to_string(max_size) + " exceeds the " +
             std::to_string(nf) + " candidate features");
  }
  MeritTrace trace;
  std::vector<bool> used(nf, false);
  std::vector<std::size_t> candidate;
  for (std::size_t step = 0; step < max_size; ++step) {
    std::size_t best = nf;
    double best_merit = -1.0;
    for (std::size_t f = 0; f < nf; ++f) {
      if (used[f]) continue;
      candidate = trace.selected;
      candidate.push_back(f);
      const double m = merit(candidate, corr.class_corr, corr.feature_corr);
      const bool better =
          best == nf || m > best_merit ||
          (m == best_merit && corr.class_corr[f] > corr.class_corr[best]);
      if (better) {
        best = f;
        best_merit = m;
      }
    }
    used[best] = true;
    trace.selected.push_back(best);
    trace.names.push_back(corr.features[best]);
    trace.merits.push_back(best_merit);
  }
  trace.best_size = static_cast<std::size_t>(
                        std::max_element(trace.merits.begin(), trace.merits.end()) -
                        trace.merits.begin()) +
                    1;
  return trace;
}

void write_merit_trace_csv(std::ostream& os, const MeritTrace& trace) {
  os << "rank,feature,merit_at_entry\n";
  for (std::size_t i = 0; i < trace.names.size(); ++i) {
    os << i + 1 << ',' << trace.names[i] << ',' << format_value(trace.merits[i]) << '\n';
  }
}

std::string best_subset_json(const MeritTrace& trace) {
  nlohmann::json j;
  j["best_size"] = trace.best_size;
  j["best_merit"] = trace.merits.at(trace.best_size - 1);
  j["features"] = std::vector<std::string>(
      trace.names.begin(), trace.names.begin() + static_cast<std::ptrdiff_t>(trace.best_size));
  j["merit_by_size"] = trace.merits;
  return j.dump(2) + "\n";
}

}  // namespace eegfeat
