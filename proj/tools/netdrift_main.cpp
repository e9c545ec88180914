// netdrift: weighted link prediction on evolving networks.
//
// Subcommands: stats, predict, evaluate, sweep-iterations. Every run is
// deterministic given its configuration and seed. Exit codes: 0 ok,
// 1 usage error, 2 data error, 3 runtime error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "netdrift/netdrift.hpp"

namespace nd = netdrift;
namespace fs = std::filesystem;

namespace {

struct CommonOptions {
  std::string dataset;
  std::string format = "uvwt";
  std::string aggregation = "sum";
  std::string out_dir;
  int workers = 1;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool out_dir_used = true) {
  cmd->set_config("--config", "", "plain-text key=value configuration file");
  cmd->add_option("--dataset", opt.dataset, "edge list file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--format", opt.format,
                  "column layout: a string over u,v,w,t (default uvwt)");
  cmd->add_option("--aggregation", opt.aggregation,
                  "duplicate-interaction policy: sum | count | max")
      ->check(CLI::IsMember({"sum", "count", "max"}));
  if (out_dir_used) {
    cmd->add_option("--out-dir", opt.out_dir, "output directory for CSV files")
        ->envname("NETDRIFT_OUT_DIR");
  }
  cmd->add_option("--workers", opt.workers, "worker thread cap (default 1)")
      ->check(CLI::PositiveNumber);
}

nd::Aggregation parse_aggregation(const std::string& name) {
  if (name == "count") return nd::Aggregation::kCountInteractions;
  if (name == "max") return nd::Aggregation::kKeepMaxWeight;
  return nd::Aggregation::kSumWeights;
}

std::vector<nd::TemporalEdge> load_dataset(const CommonOptions& opt) {
  auto fmt = nd::parse_format(opt.format);
  auto edges = nd::load_edge_list(opt.dataset, fmt);
  if (edges.empty()) throw nd::DataError(opt.dataset + ": no edges parsed");
  return edges;
}

bool has_time_column(const CommonOptions& opt) {
  return nd::parse_format(opt.format).time_col >= 0;
}

std::ofstream open_output(const std::string& dir, const std::string& name) {
  fs::create_directories(dir);
  fs::path path = fs::path(dir) / name;
  std::ofstream out(path);
  if (!out) throw nd::DataError("cannot write " + path.string());
  return out;
}

std::vector<nd::IndexKind> make_kinds(const std::vector<std::string>& names,
                                      double epsilon) {
  std::vector<nd::IndexKind> kinds;
  for (const std::string& n : names)
    kinds.push_back({nd::parse_index_name(n), epsilon, std::nullopt});
  return kinds;
}

const std::vector<std::string> kAllIndices{"wcn", "waa", "wra", "wlp", "wsd"};

// --- stats ------------------------------------------------------------------

struct StatsOptions {
  CommonOptions common;
  std::string mapping_file;
};

int run_stats(const StatsOptions& opt) {
  auto edges = load_dataset(opt.common);
  auto giant = nd::giant_component(
      nd::build_graph(edges, parse_aggregation(opt.common.aggregation)));
  auto st = nd::network_stats(giant, opt.common.workers);

  std::cout << "nodes            " << st.nodes << "\n"
            << "links            " << st.links << "\n"
            << "mean_degree      " << nd::format_double(st.mean_degree) << "\n"
            << "mean_distance    " << nd::format_double(st.mean_distance) << "\n"
            << "clustering       " << nd::format_double(st.clustering) << "\n"
            << "weighted_clust   " << nd::format_double(st.weighted_clustering) << "\n"
            << "assortativity    " << nd::format_double(st.assortativity) << "\n"
            << "heterogeneity    " << nd::format_double(st.heterogeneity) << "\n";

  if (!opt.common.out_dir.empty()) {
    auto out = open_output(opt.common.out_dir, "stats.csv");
    out << "nodes,links,mean_degree,mean_distance,clustering,"
           "weighted_clustering,assortativity,heterogeneity\n"
        << st.nodes << ',' << st.links << ',' << nd::format_double(st.mean_degree)
        << ',' << nd::format_double(st.mean_distance) << ','
        << nd::format_double(st.clustering) << ','
        << nd::format_double(st.weighted_clustering) << ','
        << nd::format_double(st.assortativity) << ','
        << nd::format_double(st.heterogeneity) << '\n';
  }
  if (!opt.mapping_file.empty()) {
    std::ofstream out(opt.mapping_file);
    if (!out) throw nd::DataError("cannot write " + opt.mapping_file);
    out << "internal_id,label\n";
    for (nd::NodeId x = 0; x < giant.node_count(); ++x)
      out << x << ',' << giant.label(x) << '\n';
  }
  return 0;
}

// --- predict ----------------------------------------------------------------

struct PredictOptions {
  CommonOptions common;
  std::string index = "wsd";
  double epsilon = nd::kDefaultEpsilon;
  std::size_t top_k = 20;
  int drift_iterations = 0;
  std::string symmetrization = "average";
  std::string out_file;
  std::string emit_drifted;
};

int run_predict(const PredictOptions& opt) {
  auto edges = load_dataset(opt.common);
  auto graph = nd::build_graph(edges, parse_aggregation(opt.common.aggregation));

  if (opt.drift_iterations > 0) {
    nd::DriftConfig cfg;
    cfg.iterations = opt.drift_iterations;
    cfg.symmetrization = opt.symmetrization == "one-sided"
                             ? nd::Symmetrization::kOneSided
                             : nd::Symmetrization::kAverage;
    cfg.temporal = has_time_column(opt.common) ? nd::TemporalMode::kUseTimestamps
                                               : nd::TemporalMode::kUniform;
    graph = nd::drift_iterate(graph, cfg, opt.common.workers);
    if (!opt.emit_drifted.empty()) {
      std::ofstream out(opt.emit_drifted);
      if (!out) throw nd::DataError("cannot write " + opt.emit_drifted);
      nd::write_edge_list(out, graph);
    }
  }

  nd::IndexKind kind{nd::parse_index_name(opt.index), opt.epsilon, std::nullopt};
  auto scorer = nd::make_scorer(graph, kind, opt.common.workers);
  auto ranked = nd::top_candidates(graph, *scorer, opt.top_k, opt.common.workers);

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!opt.out_file.empty()) {
    file.open(opt.out_file);
    if (!file) throw nd::DataError("cannot write " + opt.out_file);
    out = &file;
  }
  *out << "# dataset=" << opt.common.dataset << " index=" << opt.index
       << " epsilon=" << nd::format_double(opt.epsilon)
       << " drift_iterations=" << opt.drift_iterations
       << " top_k=" << opt.top_k << "\n";
  ranked.write_csv(*out, graph);
  return 0;
}

// --- synth -------------------------------------------------------------------

struct SynthOptions {
  int nodes = 1000;
  int edges_per_node = 3;
  std::uint64_t seed = 1;
  double internal_fraction = 0.2;
  std::string out_file;
};

int run_synth(const SynthOptions& opt) {
  auto edges = nd::generate_synthetic(opt.nodes, opt.edges_per_node, opt.seed,
                                      opt.internal_fraction);
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!opt.out_file.empty()) {
    file.open(opt.out_file);
    if (!file) throw nd::DataError("cannot write " + opt.out_file);
    out = &file;
  }
  for (const auto& e : edges)
    *out << e.u << ' ' << e.v << ' ' << nd::format_double(e.weight) << ' '
         << nd::format_double(e.time) << '\n';
  return 0;
}

// --- evaluate ----------------------------------------------------------------

struct EvaluateOptions {
  CommonOptions common;
  std::vector<std::string> indices;
  double epsilon = nd::kDefaultEpsilon;
  std::string protocol = "evolving-temporal";
  double train_fraction = 0.9;
  std::vector<double> delete_ratios;
  int trials = 15;
  std::uint64_t seed = 1;
  std::vector<int> drift_iterations;
  std::string symmetrization = "average";
  std::uint64_t auc_samples = nd::kDefaultAucSamples;
  bool auc_exact = false;
};

nd::ExperimentConfig base_experiment_config(const EvaluateOptions& opt) {
  nd::ExperimentConfig cfg;
  cfg.protocol = nd::parse_protocol(opt.protocol);
  cfg.train_fraction = opt.train_fraction;
  cfg.aggregation = parse_aggregation(opt.common.aggregation);
  cfg.indices = make_kinds(opt.indices.empty() ? kAllIndices : opt.indices,
                           opt.epsilon);
  cfg.deletion_ratios = opt.delete_ratios.empty() ? std::vector<double>{0.0}
                                                  : opt.delete_ratios;
  cfg.trials = opt.trials;
  cfg.seed = opt.seed;
  cfg.auc_samples = opt.auc_exact ? 0 : opt.auc_samples;
  cfg.workers = opt.common.workers;
  return cfg;
}

nd::DriftConfig drift_config_for(const EvaluateOptions& opt, int iterations) {
  nd::DriftConfig cfg;
  cfg.iterations = iterations;
  cfg.symmetrization = opt.symmetrization == "one-sided"
                           ? nd::Symmetrization::kOneSided
                           : nd::Symmetrization::kAverage;
  cfg.temporal = has_time_column(opt.common) ? nd::TemporalMode::kUseTimestamps
                                             : nd::TemporalMode::kUniform;
  return cfg;
}

int run_evaluate(const EvaluateOptions& opt) {
  auto edges = load_dataset(opt.common);
  std::string dir = opt.common.out_dir.empty() ? "." : opt.common.out_dir;
  auto trials_csv = open_output(dir, "trials.csv");
  auto timing_csv = open_output(dir, "timing.csv");
  trials_csv << nd::kTrialsCsvHeader << "\n";
  timing_csv << nd::kTimingCsvHeader << "\n";

  std::vector<int> iteration_values =
      opt.drift_iterations.empty() ? std::vector<int>{0} : opt.drift_iterations;
  std::vector<nd::MetricsReport> all;
  for (int iterations : iteration_values) {
    nd::ExperimentConfig cfg = base_experiment_config(opt);
    if (iterations > 0) cfg.drift = drift_config_for(opt, iterations);
    nd::run_experiment_streaming(edges, cfg, [&](const nd::MetricsReport& r) {
      nd::write_trial_row(trials_csv, r);
      trials_csv.flush();  // partial results survive an aborted grid
      nd::write_timing_row(timing_csv, r);
      timing_csv.flush();
      all.push_back(r);
    });
  }

  auto summary = nd::summarize(all);
  auto summary_csv = open_output(dir, "summary.csv");
  summary_csv << nd::kSummaryCsvHeader << "\n";
  for (const auto& row : summary) nd::write_summary_row(summary_csv, row);

  std::cout << nd::kSummaryCsvHeader << "\n";
  for (const auto& row : summary) nd::write_summary_row(std::cout, row);
  std::cout << "wrote " << all.size() << " trial rows to " << dir
            << "/trials.csv\n";
  return 0;
}

// --- sweep-iterations ---------------------------------------------------------

struct SweepOptions {
  EvaluateOptions eval;
  int iterations_from = 0;
  int iterations_to = 5;
};

int run_sweep(const SweepOptions& opt) {
  if (opt.iterations_from < 0 || opt.iterations_to < opt.iterations_from)
    throw nd::DataError("invalid iteration range");
  auto edges = load_dataset(opt.eval.common);
  if (!has_time_column(opt.eval.common))
    throw nd::DataError(
        "iteration sweep needs an evolving dataset with timestamps; the "
        "format \"" + opt.eval.common.format + "\" has no t column");
  bool varied = false;
  for (const auto& e : edges)
    if (e.time != edges.front().time) varied = true;
  if (!varied)
    throw nd::DataError(
        "iteration sweep needs an evolving dataset with timestamps; all "
        "timestamps in the dataset are identical");

  std::string dir = opt.eval.common.out_dir.empty() ? "." : opt.eval.common.out_dir;
  auto sweep_csv = open_output(dir, "sweep.csv");
  sweep_csv << "iterations,cells,auc_mean,auc_std,precision_mean,precision_std\n";

  for (int iterations = opt.iterations_from; iterations <= opt.iterations_to;
       ++iterations) {
    nd::ExperimentConfig cfg = base_experiment_config(opt.eval);
    cfg.protocol = nd::Protocol::kEvolvingTemporal;
    if (iterations > 0) cfg.drift = drift_config_for(opt.eval, iterations);
    auto rows = nd::run_experiment(edges, cfg);

    double auc_mean = 0.0, precision_mean = 0.0;
    for (const auto& r : rows) {
      auc_mean += r.auc;
      precision_mean += r.precision;
    }
    auc_mean /= static_cast<double>(rows.size());
    precision_mean /= static_cast<double>(rows.size());
    double auc_var = 0.0, precision_var = 0.0;
    for (const auto& r : rows) {
      auc_var += (r.auc - auc_mean) * (r.auc - auc_mean);
      precision_var += (r.precision - precision_mean) * (r.precision - precision_mean);
    }
    std::size_t n = rows.size();
    double auc_std = n > 1 ? std::sqrt(auc_var / static_cast<double>(n - 1)) : 0.0;
    double precision_std =
        n > 1 ? std::sqrt(precision_var / static_cast<double>(n - 1)) : 0.0;

    sweep_csv << iterations << ',' << n << ',' << nd::format_double(auc_mean)
              << ',' << nd::format_double(auc_std) << ','
              << nd::format_double(precision_mean) << ','
              << nd::format_double(precision_std) << '\n';
    sweep_csv.flush();
    std::cout << "iterations=" << iterations
              << " auc=" << nd::format_double(auc_mean)
              << " precision=" << nd::format_double(precision_mean) << "\n";
  }
  std::cout << "wrote sweep to " << dir << "/sweep.csv\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"link prediction on evolving weighted networks"};
  app.require_subcommand(1);

  StatsOptions stats_opt;
  auto* stats_cmd = app.add_subcommand(
      "stats", "giant-component structure statistics of a dataset");
  add_common(stats_cmd, stats_opt.common);
  stats_cmd->add_option("--emit-mapping", stats_opt.mapping_file,
                        "write the label -> internal id mapping CSV");

  PredictOptions predict_opt;
  auto* predict_cmd = app.add_subcommand(
      "predict", "rank non-observed pairs of the whole dataset");
  add_common(predict_cmd, predict_opt.common, /*out_dir_used=*/false);
  predict_cmd->add_option("--index", predict_opt.index, "similarity index")
      ->check(CLI::IsMember(kAllIndices));
  predict_cmd->add_option("--epsilon", predict_opt.epsilon,
                          "free parameter of wlp/wsd (default 1e-3)");
  predict_cmd->add_option("--top-k", predict_opt.top_k, "rows to emit");
  predict_cmd->add_option("--drift-iterations", predict_opt.drift_iterations,
                          "position-drift rounds before scoring");
  predict_cmd->add_option("--symmetrization", predict_opt.symmetrization,
                          "drift update symmetrization")
      ->check(CLI::IsMember({"average", "one-sided"}));
  predict_cmd->add_option("--out-file", predict_opt.out_file,
                          "write the CSV here instead of stdout");
  predict_cmd->add_option("--emit-drifted", predict_opt.emit_drifted,
                          "write the drifted graph as an edge list");

  SynthOptions synth_opt;
  auto* synth_cmd = app.add_subcommand(
      "synth", "emit a seeded preferential-attachment interaction stream");
  synth_cmd->set_config("--config", "", "plain-text key=value configuration file");
  synth_cmd->add_option("--nodes", synth_opt.nodes, "node count (default 1000)");
  synth_cmd->add_option("--edges-per-node", synth_opt.edges_per_node,
                        "attachment edges per new node (default 3)");
  synth_cmd->add_option("--seed", synth_opt.seed, "generator seed");
  synth_cmd->add_option("--internal-fraction", synth_opt.internal_fraction,
                        "share of re-interactions between existing nodes "
                        "(default 0.2)");
  synth_cmd->add_option("--out-file", synth_opt.out_file,
                        "write here instead of stdout");

  EvaluateOptions eval_opt;
  auto* eval_cmd = app.add_subcommand(
      "evaluate", "seeded split/score/metric grid over a dataset");
  add_common(eval_cmd, eval_opt.common);
  eval_cmd->add_option("--index", eval_opt.indices,
                       "similarity indices (repeatable; default all five)")
      ->check(CLI::IsMember(kAllIndices));
  eval_cmd->add_option("--epsilon", eval_opt.epsilon, "wlp/wsd free parameter");
  eval_cmd->add_option("--protocol", eval_opt.protocol,
                       "static-random | evolving-temporal")
      ->check(CLI::IsMember({"static-random", "evolving-temporal"}));
  eval_cmd->add_option("--train-fraction", eval_opt.train_fraction,
                       "training share of interactions (default 0.9)");
  eval_cmd->add_option("--delete-ratio", eval_opt.delete_ratios,
                       "training-link deletion ratios (repeatable; default 0)");
  eval_cmd->add_option("--trials", eval_opt.trials, "trials per cell (default 15)");
  eval_cmd->add_option("--seed", eval_opt.seed, "master seed (default 1)");
  eval_cmd->add_option("--drift-iterations", eval_opt.drift_iterations,
                       "drift rounds (repeatable for side-by-side runs; default 0)");
  eval_cmd->add_option("--symmetrization", eval_opt.symmetrization,
                       "drift update symmetrization")
      ->check(CLI::IsMember({"average", "one-sided"}));
  eval_cmd->add_option("--auc-samples", eval_opt.auc_samples,
                       "AUC comparison count (default 100000)");
  eval_cmd->add_flag("--auc-exact", eval_opt.auc_exact,
                     "exact AUC over all probe x nonexistent comparisons");

  SweepOptions sweep_opt;
  auto* sweep_cmd = app.add_subcommand(
      "sweep-iterations", "metrics vs drift iteration count on temporal data");
  add_common(sweep_cmd, sweep_opt.eval.common);
  sweep_cmd->add_option("--index", sweep_opt.eval.indices,
                        "similarity indices (default all five)")
      ->check(CLI::IsMember(kAllIndices));
  sweep_cmd->add_option("--epsilon", sweep_opt.eval.epsilon, "wlp/wsd parameter");
  sweep_cmd->add_option("--train-fraction", sweep_opt.eval.train_fraction,
                        "training share of interactions");
  sweep_cmd->add_option("--trials", sweep_opt.eval.trials, "trials per cell");
  sweep_cmd->add_option("--seed", sweep_opt.eval.seed, "master seed");
  sweep_cmd->add_option("--symmetrization", sweep_opt.eval.symmetrization,
                        "drift update symmetrization")
      ->check(CLI::IsMember({"average", "one-sided"}));
  sweep_cmd->add_option("--auc-samples", sweep_opt.eval.auc_samples,
                        "AUC comparison count");
  sweep_cmd->add_option("--iterations-from", sweep_opt.iterations_from,
                        "first iteration count (default 0)");
  sweep_cmd->add_option("--iterations-to", sweep_opt.iterations_to,
                        "last iteration count (default 5)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (stats_cmd->parsed()) return run_stats(stats_opt);
    if (predict_cmd->parsed()) return run_predict(predict_opt);
    if (synth_cmd->parsed()) return run_synth(synth_opt);
    if (eval_cmd->parsed()) return run_evaluate(eval_opt);
    if (sweep_cmd->parsed()) return run_sweep(sweep_opt);
    return 1;
  } catch (const nd::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
