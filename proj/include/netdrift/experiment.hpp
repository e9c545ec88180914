#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "netdrift/drift.hpp"
#include "netdrift/edge_list.hpp"
#include "netdrift/errors.hpp"
#include "netdrift/graph.hpp"
#include "netdrift/metrics.hpp"
#include "netdrift/rng.hpp"
#include "netdrift/similarity.hpp"
#include "netdrift/split.hpp"

namespace netdrift {

enum class Protocol { kStaticRandom, kEvolvingTemporal };

inline std::string_view protocol_name(Protocol p) {
  return p == Protocol::kStaticRandom ? "static-random" : "evolving-temporal";
}

inline Protocol parse_protocol(std::string_view name) {
  if (name == "static-random") return Protocol::kStaticRandom;
  if (name == "evolving-temporal") return Protocol::kEvolvingTemporal;
  throw DataError("unknown protocol \"" + std::string(name) +
                  "\"; valid: static-random, evolving-temporal");
}

struct ExperimentConfig {
  Protocol protocol = Protocol::kEvolvingTemporal;
  double train_fraction = 0.9;
  Aggregation aggregation = Aggregation::kSumWeights;
  std::vector<IndexKind> indices;
  std::optional<DriftConfig> drift;
  std::vector<double> deletion_ratios = {0.0};
  int trials = 15;
  std::uint64_t seed = 1;
  std::uint64_t auc_samples = kDefaultAucSamples;  // 0 selects exact mode
  int workers = 1;
};

// One evaluated cell: a (deletion ratio, index, trial) combination.
struct MetricsReport {
  std::string protocol;
  std::string index;
  double deletion_ratio = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;  // trial seed all stage seeds derive from
  int drift_iterations = 0;
  double auc = 0.0;
  std::string auc_method;  // "sampled" or "exact"
  std::uint64_t auc_samples = 0;
  double precision = 0.0;
  std::size_t L = 0;
  std::size_t probe_size = 0;
  std::size_t train_nodes = 0;
  std::size_t train_edges = 0;
  std::size_t universe_size = 0;
  double split_ms = 0.0;
  double delete_ms = 0.0;
  double drift_ms = 0.0;
  double score_ms = 0.0;
};

namespace detail {

// Stage tags for per-trial seed derivation.
inline constexpr std::uint64_t kSplitStage = 0x53;
inline constexpr std::uint64_t kDeleteStage = 0x44;
inline constexpr std::uint64_t kAucStage = 0x41;

class StageTimer {
 public:
  StageTimer() : start_(std::chrono::steady_clock::now()) {}
  double take_ms() {
    auto now = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(now - start_).count();
    start_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

// Full evaluation grid: for each (deletion ratio, trial), split the
// interactions, optionally delete training links, optionally drift, then
// score every index with AUC and precision over the candidate universe.
// Trial seeds derive from (master seed, ratio index, trial index), so any
// subset of the grid reproduces identically.
template <class Sink>
void run_experiment_streaming(const std::vector<TemporalEdge>& interactions,
                              const ExperimentConfig& cfg, Sink&& sink) {
  if (cfg.indices.empty()) throw DataError("no similarity indices selected");
  if (cfg.trials < 1) throw DataError("trials must be >= 1");
  int drift_iterations = cfg.drift ? cfg.drift->iterations : 0;

  for (std::size_t r = 0; r < cfg.deletion_ratios.size(); ++r) {
    double ratio = cfg.deletion_ratios[r];
    for (int trial = 0; trial < cfg.trials; ++trial) {
      std::uint64_t trial_seed = derive_seed(cfg.seed, r, static_cast<std::uint64_t>(trial));
      detail::StageTimer timer;

      SplitResult split =
          cfg.protocol == Protocol::kEvolvingTemporal
              ? temporal_split(interactions, cfg.train_fraction, cfg.aggregation)
              : random_split(interactions, cfg.train_fraction,
                             derive_seed(trial_seed, detail::kSplitStage),
                             cfg.aggregation);
      double split_ms = timer.take_ms();

      WeightedGraph train = ratio > 0.0
          ? delete_links(split.train, ratio,
                         derive_seed(trial_seed, detail::kDeleteStage))
          : split.train;
      double delete_ms = timer.take_ms();

      // The drifted graph keeps the deleted-train topology, so the
      // structure-dependent path cap can be computed once and shared.
      int wsd_cap = 0;
      for (const IndexKind& kind : cfg.indices)
        if (kind.tag == IndexTag::kWsd && !kind.s_cap_override) {
          wsd_cap = wsd_path_cap(train, cfg.workers);
          break;
        }

      WeightedGraph scored = drift_iterations > 0
          ? drift_iterate(train, *cfg.drift, cfg.workers)
          : train;
      double drift_ms = timer.take_ms();

      if (split.probe.empty())
        throw DataError("split produced an empty probe set; nothing to evaluate");

      std::vector<AucComparison> comparisons;
      if (cfg.auc_samples > 0)
        comparisons = draw_auc_comparisons(
            scored, split.probe, cfg.auc_samples,
            derive_seed(trial_seed, detail::kAucStage));

      for (const IndexKind& kind : cfg.indices) {
        detail::StageTimer score_timer;
        IndexKind used = kind;
        if (kind.tag == IndexTag::kWsd && !kind.s_cap_override)
          used.s_cap_override = wsd_cap;
        auto scorer = make_scorer(scored, used, cfg.workers);

        MetricsReport report;
        report.protocol = std::string(protocol_name(cfg.protocol));
        report.index = std::string(index_name(kind.tag));
        report.deletion_ratio = ratio;
        report.trial = trial;
        report.seed = trial_seed;
        report.drift_iterations = drift_iterations;
        if (cfg.auc_samples > 0) {
          report.auc = auc_from_comparisons(scored, *scorer, comparisons,
                                            cfg.workers);
          report.auc_method = "sampled";
          report.auc_samples = cfg.auc_samples;
        } else {
          report.auc = auc_exact(scored, *scorer, split.probe, cfg.workers);
          report.auc_method = "exact";
        }
        report.L = split.probe.size();
        report.precision = precision_over_universe(scored, *scorer, split.probe,
                                                   report.L, cfg.workers);
        report.probe_size = split.probe.size();
        report.train_nodes = static_cast<std::size_t>(scored.node_count());
        report.train_edges = scored.edge_count();
        report.universe_size = split.universe_size;
        report.split_ms = split_ms;
        report.delete_ms = delete_ms;
        report.drift_ms = drift_ms;
        report.score_ms = score_timer.take_ms();
        sink(report);
      }
    }
  }
}

inline std::vector<MetricsReport> run_experiment(
    const std::vector<TemporalEdge>& interactions, const ExperimentConfig& cfg) {
  std::vector<MetricsReport> out;
  run_experiment_streaming(interactions, cfg,
                           [&](const MetricsReport& r) { out.push_back(r); });
  return out;
}

// --- CSV serialization -----------------------------------------------------
// Result columns and timing columns go to separate files: result CSVs are
// byte-identical across reruns of the same configuration, wall-clock times
// are not.

inline constexpr std::string_view kTrialsCsvHeader =
    "protocol,index,deletion_ratio,drift_iterations,trial,seed,auc,auc_method,"
    "auc_samples,precision,L,probe_size,train_nodes,train_edges,universe_size";

inline void write_trial_row(std::ostream& out, const MetricsReport& r) {
  out << r.protocol << ',' << r.index << ',' << format_double(r.deletion_ratio)
      << ',' << r.drift_iterations << ',' << r.trial << ',' << r.seed << ','
      << format_double(r.auc) << ',' << r.auc_method << ',' << r.auc_samples
      << ',' << format_double(r.precision) << ',' << r.L << ',' << r.probe_size
      << ',' << r.train_nodes << ',' << r.train_edges << ',' << r.universe_size
      << '\n';
}

inline constexpr std::string_view kTimingCsvHeader =
    "protocol,index,deletion_ratio,drift_iterations,trial,split_ms,delete_ms,"
    "drift_ms,score_ms";

inline void write_timing_row(std::ostream& out, const MetricsReport& r) {
  out << r.protocol << ',' << r.index << ',' << format_double(r.deletion_ratio)
      << ',' << r.drift_iterations << ',' << r.trial << ','
      << format_double(r.split_ms) << ',' << format_double(r.delete_ms) << ','
      << format_double(r.drift_ms) << ',' << format_double(r.score_ms) << '\n';
}

// Mean and standard deviation per (protocol, index, ratio, drift) cell.
struct SummaryRow {
  std::string protocol;
  std::string index;
  double deletion_ratio = 0.0;
  int drift_iterations = 0;
  int trials = 0;
  double auc_mean = 0.0;
  double auc_std = 0.0;
  double precision_mean = 0.0;
  double precision_std = 0.0;
  double score_ms_mean = 0.0;
};

inline std::vector<SummaryRow> summarize(const std::vector<MetricsReport>& rows) {
  std::vector<SummaryRow> out;
  auto cell_of = [&](const MetricsReport& r) -> SummaryRow& {
    for (SummaryRow& s : out)
      if (s.protocol == r.protocol && s.index == r.index &&
          s.deletion_ratio == r.deletion_ratio &&
          s.drift_iterations == r.drift_iterations)
        return s;
    SummaryRow s;
    s.protocol = r.protocol;
    s.index = r.index;
    s.deletion_ratio = r.deletion_ratio;
    s.drift_iterations = r.drift_iterations;
    out.push_back(s);
    return out.back();
  };
  for (const MetricsReport& r : rows) {
    SummaryRow& s = cell_of(r);
    ++s.trials;
    s.auc_mean += r.auc;
    s.precision_mean += r.precision;
    s.score_ms_mean += r.score_ms;
  }
  for (SummaryRow& s : out) {
    s.auc_mean /= s.trials;
    s.precision_mean /= s.trials;
    s.score_ms_mean /= s.trials;
  }
  for (const MetricsReport& r : rows) {
    SummaryRow& s = cell_of(r);
    s.auc_std += (r.auc - s.auc_mean) * (r.auc - s.auc_mean);
    s.precision_std += (r.precision - s.precision_mean) * (r.precision - s.precision_mean);
  }
  for (SummaryRow& s : out) {
    s.auc_std = s.trials > 1 ? std::sqrt(s.auc_std / (s.trials - 1)) : 0.0;
    s.precision_std =
        s.trials > 1 ? std::sqrt(s.precision_std / (s.trials - 1)) : 0.0;
  }
  return out;
}

inline constexpr std::string_view kSummaryCsvHeader =
    "protocol,index,deletion_ratio,drift_iterations,trials,auc_mean,auc_std,"
    "precision_mean,precision_std";

inline void write_summary_row(std::ostream& out, const SummaryRow& s) {
  out << s.protocol << ',' << s.index << ',' << format_double(s.deletion_ratio)
      << ',' << s.drift_iterations << ',' << s.trials << ','
      << format_double(s.auc_mean) << ',' << format_double(s.auc_std) << ','
      << format_double(s.precision_mean) << ',' << format_double(s.precision_std)
      << '\n';
}

}  // namespace netdrift
