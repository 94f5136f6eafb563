#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "pagraph/analysis_io.hpp"
#include "pagraph/baselines.hpp"
#include "pagraph/bootstrap.hpp"
#include "pagraph/buckley_osthus.hpp"
#include "pagraph/edge_list_io.hpp"
#include "pagraph/errors.hpp"
#include "pagraph/fitting.hpp"
#include "pagraph/graph.hpp"
#include "pagraph/rng.hpp"
#include "pagraph/stats.hpp"
#include "pagraph/theory.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitDiverged = 3;
constexpr int kExitIo = 4;

struct GlobalOptions {
  unsigned threads = 0;
  bool verify = false;
  std::vector<std::string> argv;
};

// Collects what a command read, wrote and was parameterized with. Output
// paths are registered by the command itself so --verify can diff them.
struct RunRecord {
  json parameters = json::object();
  json seeds = json::object();
  std::vector<fs::path> inputs;
  std::vector<fs::path> outputs;
  // Non-zero when every requested fit diverged.
  int status = kExitOk;
};

std::ofstream open_output(const fs::path& path, RunRecord& record,
                          std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, mode | std::ios::trunc);
  if (!out) throw pagraph::IoError("cannot open " + path.string() + " for writing");
  record.outputs.push_back(path);
  return out;
}

std::ifstream open_input(const fs::path& path, RunRecord& record) {
  std::ifstream in(path);
  if (!in) throw pagraph::IoError("cannot open " + path.string());
  record.inputs.push_back(path);
  return in;
}

void finish_output(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw pagraph::IoError("failed writing " + path.string());
}

fs::path with_suffix(const fs::path& base, const std::string& suffix) {
  return fs::path(base.string() + suffix);
}

bool same_bytes(const fs::path& a, const fs::path& b) {
  std::ifstream fa(a, std::ios::binary);
  std::ifstream fb(b, std::ios::binary);
  if (!fa || !fb) return false;
  return std::equal(std::istreambuf_iterator<char>(fa), std::istreambuf_iterator<char>(),
                    std::istreambuf_iterator<char>(fb), std::istreambuf_iterator<char>());
}

json path_list(const std::vector<fs::path>& paths) {
  json list = json::array();
  for (const fs::path& p : paths) list.push_back(p.string());
  return list;
}

// Runs `body` against `base`, optionally re-runs it into a scratch directory
// and compares every output byte for byte, then writes the manifest.
int execute(const std::string& command, const GlobalOptions& global, const fs::path& base,
            const fs::path& manifest_path,
            const std::function<void(const fs::path&, RunRecord&)>& body) {
  const auto start = std::chrono::steady_clock::now();
  RunRecord record;
  body(base, record);

  std::optional<bool> verified;
  if (global.verify) {
    const fs::path scratch =
        fs::temp_directory_path() / ("pagraph-verify-" + std::to_string(::getpid()));
    fs::remove_all(scratch);
    fs::create_directories(scratch);
    RunRecord again;
    body(scratch / base.filename(), again);
    verified = again.outputs.size() == record.outputs.size();
    for (std::size_t i = 0; *verified && i < record.outputs.size(); ++i) {
      if (!same_bytes(record.outputs[i], again.outputs[i])) {
        std::cerr << "verify: " << record.outputs[i].string() << " differs on re-derivation\n";
        verified = false;
      }
    }
    fs::remove_all(scratch);
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json manifest;
  manifest["tool"] = "pagraph";
  manifest["version"] = PAGRAPH_VERSION;
  manifest["command"] = command;
  manifest["argv"] = global.argv;
  manifest["threads"] = global.threads;
  manifest["seeds"] = record.seeds;
  manifest["parameters"] = record.parameters;
  manifest["inputs"] = path_list(record.inputs);
  manifest["outputs"] = path_list(record.outputs);
  if (verified) manifest["verified"] = *verified;
  manifest["wall_clock_seconds"] = seconds;
  RunRecord unused;
  std::ofstream out = open_output(manifest_path, unused);
  out << manifest.dump(2) << '\n';
  finish_output(out, manifest_path);

  if (verified && !*verified) return kExitFailure;
  return record.status;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string model = "bo";
  double a = 1.0;
  std::uint64_t m = 1;
  std::uint64_t n = 1000;
  double gamma = 2.5;
  std::optional<std::uint64_t> target_edges;
  double pt = 0.5;
  std::uint64_t seed = 0;
  std::string format = "auto";
  std::string out;
};

void run_generate(const GenerateArgs& args, const fs::path& out_path, RunRecord& record) {
  record.seeds["seed"] = args.seed;
  record.parameters["model"] = args.model;
  record.parameters["n"] = args.n;
  record.parameters["format"] = args.format;

  pagraph::Graph graph;
  std::optional<pagraph::DegreeSequence> sequence;
  if (args.model == "bo") {
    record.parameters["a"] = args.a;
    record.parameters["m"] = args.m;
    graph = pagraph::generate_bo({args.a, args.m, args.n, args.seed});
  } else if (args.model == "gds") {
    record.parameters["gamma"] = args.gamma;
    if (args.target_edges) record.parameters["target_edges"] = *args.target_edges;
    pagraph::GdsParams params{args.n, args.gamma, args.target_edges, args.seed};
    params.validate();
    sequence = pagraph::sample_power_law_degrees(params);
    record.parameters["degree_cap"] = sequence->degree_cap;
    graph = pagraph::generate_configuration(sequence->degrees,
                                            pagraph::derive_seed(args.seed, 1));
  } else if (args.model == "hk") {
    record.parameters["m"] = args.m;
    record.parameters["pt"] = args.pt;
    graph = pagraph::generate_holme_kim({args.n, args.m, args.pt, args.seed});
  } else {
    throw pagraph::ParameterError("unknown model '" + args.model + "'");
  }

  pagraph::GraphFormat format = pagraph::preferred_format(graph);
  if (args.format == "text") format = pagraph::GraphFormat::kText;
  if (args.format == "binary") format = pagraph::GraphFormat::kBinary;
  if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
  pagraph::save_graph(graph, out_path, format);
  record.outputs.push_back(out_path);

  if (sequence) {
    const fs::path seq_path = with_suffix(out_path, ".degseq.tsv");
    std::ofstream out = open_output(seq_path, record);
    out << "#v\tdegree\n";
    for (std::size_t v = 0; v < sequence->degrees.size(); ++v) {
      out << v << '\t' << sequence->degrees[v] << '\n';
    }
    finish_output(out, seq_path);
  }
}

// ---------------------------------------------------------------- analysis

struct Analysis {
  pagraph::DegreeHistogram histogram;
  pagraph::EdgeDegreeMatrix matrix;
  pagraph::LogGrid grid;
  pagraph::RhoSurface surface;
  std::optional<pagraph::MultiplicityReport> removed;
};

Analysis analysis_from_parts(pagraph::DegreeHistogram histogram, pagraph::EdgeDegreeMatrix matrix,
                             double alpha) {
  Analysis result;
  result.histogram = std::move(histogram);
  result.matrix = std::move(matrix);
  result.grid = pagraph::log_grid(alpha, std::max<std::uint64_t>(result.histogram.max_degree(), 1));
  result.surface = pagraph::rho_surface(result.histogram, result.matrix, result.grid);
  return result;
}

Analysis analyze_graph(const fs::path& path, double alpha, RunRecord& record) {
  record.inputs.push_back(path);
  const pagraph::Graph graph = pagraph::load_graph(path);
  const pagraph::MultiplicityReport removed = pagraph::count_multiplicities(graph);
  const pagraph::SimpleGraph simple = pagraph::simplify(graph);
  Analysis result = analysis_from_parts(pagraph::degree_histogram(simple),
                                        pagraph::edge_degree_matrix(simple), alpha);
  result.removed = removed;
  return result;
}

Analysis load_analysis(const std::string& prefix, double alpha, RunRecord& record) {
  std::ifstream degrees = open_input(prefix + ".degrees.tsv", record);
  std::ifstream matrix = open_input(prefix + ".matrix.tsv", record);
  return analysis_from_parts(pagraph::read_degrees_tsv(degrees), pagraph::read_matrix_tsv(matrix),
                             alpha);
}

struct AnalyzeArgs {
  std::string graph;
  double alpha = 1.01;
  std::string out;
};

void run_analyze(const AnalyzeArgs& args, const fs::path& prefix, RunRecord& record) {
  record.parameters["alpha"] = args.alpha;
  const Analysis analysis = analyze_graph(args.graph, args.alpha, record);
  if (analysis.removed) {
    record.parameters["removed_loops"] = analysis.removed->loops;
    record.parameters["removed_multi_edges"] = analysis.removed->multi_edges;
  }
  const auto emit = [&](const std::string& suffix, const auto& write) {
    const fs::path path = with_suffix(prefix, suffix);
    std::ofstream out = open_output(path, record);
    write(out);
    finish_output(out, path);
  };
  emit(".degrees.tsv", [&](std::ostream& o) { pagraph::write_degrees_tsv(analysis.histogram, o); });
  emit(".edges.tsv",
       [&](std::ostream& o) { pagraph::write_edges_tsv(analysis.matrix, analysis.surface, o); });
  emit(".dnn.tsv",
       [&](std::ostream& o) { pagraph::write_dnn_tsv(pagraph::d_nn_profile(analysis.matrix), o); });
  emit(".matrix.tsv", [&](std::ostream& o) { pagraph::write_matrix_tsv(analysis.matrix, o); });
}

// ---------------------------------------------------------------- fitting

struct SourceArgs {
  std::string analysis;
  std::string graph;
  double alpha = 1.01;
};

struct RangeArgs {
  std::optional<std::uint64_t> d1_lo;
  std::optional<std::uint64_t> d1_hi;
  bool auto_range = false;
  double window = 3.0;
  double step = 0.1;
  double ratio_cutoff = 10.0;
};

Analysis load_source(const SourceArgs& source, RunRecord& record) {
  record.parameters["alpha"] = source.alpha;
  if (!source.analysis.empty() && !source.graph.empty()) {
    throw pagraph::ParameterError("give either --analysis or --graph, not both");
  }
  if (!source.analysis.empty()) return load_analysis(source.analysis, source.alpha, record);
  if (!source.graph.empty()) return analyze_graph(source.graph, source.alpha, record);
  throw pagraph::ParameterError("one of --analysis or --graph is required");
}

struct FitOutcome {
  pagraph::DegreeRange range;
  pagraph::PairDomain domain;
  pagraph::FitResult degree_fit;
  pagraph::FitResult edge_fit;
  bool automatic = false;
  double window = 0.0;
  double log_lo = 0.0;
};

FitOutcome fit_both(const Analysis& analysis, const RangeArgs& args, unsigned threads,
                    RunRecord& record) {
  record.parameters["ratio_cutoff"] = args.ratio_cutoff;
  FitOutcome outcome;
  const bool explicit_range = args.d1_lo || args.d1_hi;
  if (explicit_range && args.auto_range) {
    throw pagraph::ParameterError("--auto-range conflicts with --d1-lo/--d1-hi");
  }
  if (explicit_range) {
    if (!args.d1_lo || !args.d1_hi) throw pagraph::ParameterError("--d1-lo and --d1-hi go together");
    record.parameters["d1_lo"] = *args.d1_lo;
    record.parameters["d1_hi"] = *args.d1_hi;
    outcome.range = pagraph::make_degree_range(analysis.grid, *args.d1_lo, *args.d1_hi);
    outcome.domain = pagraph::make_pair_domain(analysis.grid, outcome.range, args.ratio_cutoff);
    const auto degrees = pagraph::degree_samples(analysis.surface, outcome.range);
    const auto pairs = pagraph::pair_samples(analysis.surface, outcome.domain);
    outcome.degree_fit = pagraph::fit_degree(degrees);
    outcome.edge_fit = pagraph::fit_edges(pairs);
    return outcome;
  }
  record.parameters["auto_range"] = true;
  record.parameters["window"] = args.window;
  record.parameters["step"] = args.step;
  pagraph::RangeSelectionOptions options;
  options.window = args.window;
  options.step = args.step;
  options.ratio_cutoff = args.ratio_cutoff;
  options.threads = threads;
  options.min_degree = std::max<std::uint64_t>(pagraph::modal_degree(analysis.histogram), 1);
  record.parameters["min_degree"] = options.min_degree;
  const pagraph::RangeSelection selection = pagraph::select_range(analysis.surface, options);
  outcome.range = selection.range;
  outcome.domain = selection.domain;
  outcome.degree_fit = selection.degree_fit;
  outcome.edge_fit = selection.edge_fit;
  outcome.automatic = true;
  outcome.window = selection.window;
  outcome.log_lo = selection.log_lo;
  return outcome;
}

json fit_json(const pagraph::FitResult& fit) {
  json j;
  j["a"] = fit.a;
  j["b"] = fit.b;
  j["sigma2"] = fit.sigma2;
  j["objective"] = fit.objective;
  j["iterations"] = fit.iterations;
  j["converged"] = fit.converged;
  j["status"] = pagraph::to_string(fit.status);
  j["points"] = fit.points;
  return j;
}

json bootstrap_json(const pagraph::BootstrapReport& report) {
  json j;
  j["iterations"] = report.iterations;
  j["diverged"] = report.diverged;
  j["mean"] = report.mean;
  j["sigma_s2"] = report.sigma_s2;
  return j;
}

pagraph::BootstrapReport run_bootstrap(const Analysis& analysis, const FitOutcome& outcome,
                                       bool edges, std::size_t iterations, std::uint64_t seed,
                                       unsigned threads) {
  pagraph::BootstrapOptions options;
  options.iterations = iterations;
  options.seed = seed;
  options.threads = threads;
  if (edges) {
    return pagraph::bootstrap_edges(analysis.matrix, analysis.surface, outcome.domain,
                                    outcome.edge_fit.a, options);
  }
  return pagraph::bootstrap_vertices(analysis.histogram, outcome.range, outcome.degree_fit.a,
                                     options);
}

struct FitArgs {
  SourceArgs source;
  RangeArgs range;
  std::size_t bootstrap = 0;
  std::uint64_t seed = 0;
  std::string out;
};

void run_fit(const FitArgs& args, unsigned threads, const fs::path& prefix, RunRecord& record) {
  const Analysis analysis = load_source(args.source, record);
  const FitOutcome outcome = fit_both(analysis, args.range, threads, record);

  json report;
  json range;
  range["lo"] = outcome.range.lo;
  range["hi"] = outcome.range.hi;
  range["automatic"] = outcome.automatic;
  if (outcome.automatic) {
    range["window"] = outcome.window;
    range["log_lo"] = outcome.log_lo;
  }
  range["grid_points"] = outcome.range.grid_points.size();
  range["pairs"] = outcome.domain.pairs.size();
  range["ratio_cutoff"] = outcome.domain.ratio_cutoff;
  report["range"] = range;
  report["degree_fit"] = fit_json(outcome.degree_fit);
  report["edge_fit"] = fit_json(outcome.edge_fit);

  if (args.bootstrap > 0) {
    record.parameters["bootstrap"] = args.bootstrap;
    record.seeds["bootstrap"] = args.seed;
    json boot;
    const auto attempt = [&](bool edges, const pagraph::FitResult& fit) {
      if (!fit.converged) return json(nullptr);
      try {
        return bootstrap_json(run_bootstrap(analysis, outcome, edges, args.bootstrap,
                                            pagraph::derive_seed(args.seed, edges ? 1 : 0), threads));
      } catch (const pagraph::FitError&) {
        return json(nullptr);
      }
    };
    boot["degrees"] = attempt(false, outcome.degree_fit);
    boot["edges"] = attempt(true, outcome.edge_fit);
    report["bootstrap"] = boot;
  }

  const fs::path json_path = with_suffix(prefix, ".fit.json");
  std::ofstream json_out = open_output(json_path, record);
  json_out << report.dump(2) << '\n';
  finish_output(json_out, json_path);

  const fs::path tsv_path = with_suffix(prefix, ".fit.tsv");
  std::ofstream tsv = open_output(tsv_path, record);
  tsv << "#parameter\testimate\tsigma2\titerations\tconverged\n";
  const auto row = [&](const char* name, double value, const pagraph::FitResult& fit) {
    tsv << name << '\t' << pagraph::format_double(value) << '\t'
        << pagraph::format_double(fit.sigma2) << '\t' << fit.iterations << '\t'
        << (fit.converged ? 1 : 0) << '\n';
  };
  row("a1", outcome.degree_fit.a, outcome.degree_fit);
  row("b1", outcome.degree_fit.b, outcome.degree_fit);
  row("a2", outcome.edge_fit.a, outcome.edge_fit);
  row("b2", outcome.edge_fit.b, outcome.edge_fit);
  finish_output(tsv, tsv_path);

  std::cout << "a1 = " << pagraph::format_double(outcome.degree_fit.a)
            << (outcome.degree_fit.converged ? "" : " (diverged)") << '\n'
            << "a2 = " << pagraph::format_double(outcome.edge_fit.a)
            << (outcome.edge_fit.converged ? "" : " (diverged)") << '\n'
            << "range = [" << outcome.range.lo << ", " << outcome.range.hi << "]\n";
  if (!outcome.degree_fit.converged && !outcome.edge_fit.converged) record.status = kExitDiverged;
}

struct BootstrapArgs {
  SourceArgs source;
  RangeArgs range;
  std::string target = "edges";
  std::size_t iterations = 1000;
  std::uint64_t seed = 0;
  std::string out;
};

void run_bootstrap_command(const BootstrapArgs& args, unsigned threads, const fs::path& out_path,
                           RunRecord& record) {
  record.parameters["target"] = args.target;
  record.parameters["iterations"] = args.iterations;
  record.seeds["seed"] = args.seed;
  const bool edges = args.target == "edges";
  if (!edges && args.target != "degrees") {
    throw pagraph::ParameterError("--target must be degrees or edges");
  }
  const Analysis analysis = load_source(args.source, record);
  const FitOutcome outcome = fit_both(analysis, args.range, threads, record);
  const pagraph::FitResult& original = edges ? outcome.edge_fit : outcome.degree_fit;
  if (!original.converged) throw pagraph::FitError("fit on the original data diverged");
  const pagraph::BootstrapReport report =
      run_bootstrap(analysis, outcome, edges, args.iterations, args.seed, threads);

  std::ofstream out = open_output(out_path, record);
  out << "#iteration\ta\tb\tconverged\n";
  for (const pagraph::BootstrapSample& s : report.samples) {
    out << s.iteration << '\t' << pagraph::format_double(s.a) << '\t'
        << pagraph::format_double(s.b) << '\t' << (s.converged ? 1 : 0) << '\n';
  }
  // Summary row: original estimate, bootstrap mean, sigma_s^2, diverged count.
  out << "summary\t" << pagraph::format_double(report.original) << '\t'
      << pagraph::format_double(report.mean) << '\t' << pagraph::format_double(report.sigma_s2)
      << '\t' << report.diverged << '\n';
  finish_output(out, out_path);
  std::cout << "sigma_s2 = " << pagraph::format_double(report.sigma_s2) << " (" << report.diverged
            << " of " << report.iterations << " refits diverged)\n";
}

// ---------------------------------------------------------------- theory

struct TheoryArgs {
  double a = 1.0;
  std::uint64_t m = 1;
  double n = 1.0;
  std::uint64_t d_max = 100;
  double alpha = 1.01;
  // appendix-b
  std::uint64_t d2_lo = 10;
  std::uint64_t d2_hi = 100;
  double ratio_lo = 10.0;
  double ratio_hi = 1000.0;
  int per_decade = 10;
  double truncation_factor = 1000.0;
  // prop1
  std::vector<std::uint64_t> sizes{10'000, 100'000, 1'000'000};
  std::uint64_t samples = 20;
  std::uint64_t seed = 0;
  std::string out;
};

void run_theory_degrees(const TheoryArgs& args, const fs::path& path, RunRecord& record) {
  record.parameters = {{"a", args.a}, {"m", args.m}, {"n", args.n}, {"d_max", args.d_max}};
  const pagraph::TheoryParams params{args.a, args.m, args.n};
  params.validate();
  std::ofstream out = open_output(path, record);
  out << "#d\texpected\n";
  for (std::uint64_t d = args.m; d <= args.d_max; ++d) {
    out << d << '\t' << pagraph::format_double(pagraph::expected_degree_count(params, d)) << '\n';
  }
  finish_output(out, path);
}

void run_theory_edges(const TheoryArgs& args, const fs::path& path, RunRecord& record) {
  record.parameters = {{"a", args.a},         {"m", args.m},          {"n", args.n},
                       {"d_max", args.d_max}, {"alpha", args.alpha}};
  const pagraph::TheoryParams params{args.a, args.m, args.n};
  params.validate();
  const pagraph::LogGrid grid = pagraph::log_grid(args.alpha, args.d_max);
  std::vector<std::uint64_t> points;
  for (std::uint64_t d : grid.points) {
    if (d >= args.m) points.push_back(d);
  }
  std::ofstream out = open_output(path, record);
  out << "#d1\td2\texpected\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double value = pagraph::expected_edge_count(params, static_cast<double>(points[i]),
                                                        static_cast<double>(points[j]));
      out << points[i] << '\t' << points[j] << '\t' << pagraph::format_double(value) << '\n';
    }
  }
  finish_output(out, path);
}

void run_theory_appendix_b(const TheoryArgs& args, const fs::path& path, RunRecord& record) {
  record.parameters = {{"a", args.a},
                       {"d2_lo", args.d2_lo},
                       {"d2_hi", args.d2_hi},
                       {"ratio_lo", args.ratio_lo},
                       {"ratio_hi", args.ratio_hi},
                       {"per_decade", args.per_decade},
                       {"truncation_factor", args.truncation_factor}};
  pagraph::AppendixBConfig config;
  config.a = args.a;
  config.truncation_factor = args.truncation_factor;
  config.points = pagraph::appendix_b_points(args.d2_lo, args.d2_hi, args.ratio_lo, args.ratio_hi,
                                             args.per_decade);
  const pagraph::AppendixBReport report = pagraph::appendix_b_check(config);
  std::ofstream out = open_output(path, record);
  out << "# constant=" << pagraph::format_double(report.constant)
      << " max_relative_deviation=" << pagraph::format_double(report.max_relative_deviation) << '\n';
  out << "#d1\td2\tratio\tshape\trelative_deviation\n";
  for (const pagraph::AppendixBPoint& p : report.points) {
    out << p.d1 << '\t' << p.d2 << '\t' << pagraph::format_double(p.ratio_sum) << '\t'
        << pagraph::format_double(p.shape) << '\t' << pagraph::format_double(p.relative_deviation)
        << '\n';
  }
  finish_output(out, path);
  std::cout << "max relative deviation = " << pagraph::format_double(report.max_relative_deviation)
            << " over " << report.points.size() << " points\n";
}

void run_theory_prop1(const TheoryArgs& args, unsigned threads, const fs::path& path,
                      RunRecord& record) {
  record.parameters = {{"a", args.a}, {"m", args.m}, {"sizes", args.sizes}, {"samples", args.samples}};
  record.seeds["seed"] = args.seed;
  pagraph::ScalingConfig config;
  config.a = args.a;
  config.m = args.m;
  config.sizes = args.sizes;
  config.samples = args.samples;
  config.seed = args.seed;
  config.threads = threads;
  const pagraph::ScalingReport report = pagraph::prop1_scaling_check(config);
  std::ofstream out = open_output(path, record);
  out << "# multi_edge_slope=" << pagraph::format_double(report.multi_edge_slope)
      << " loop_slope=" << pagraph::format_double(report.loop_slope) << '\n';
  out << "#n\tmean_loops\tmean_multi_edges\tloop_fraction\tmulti_fraction\n";
  for (const pagraph::ScalingRow& row : report.rows) {
    out << row.n << '\t' << pagraph::format_double(row.mean_loops) << '\t'
        << pagraph::format_double(row.mean_multi_edges) << '\t'
        << pagraph::format_double(row.loop_fraction) << '\t'
        << pagraph::format_double(row.multi_fraction) << '\n';
  }
  finish_output(out, path);
  std::cout << "multi-edge slope = " << pagraph::format_double(report.multi_edge_slope)
            << ", loop slope = " << pagraph::format_double(report.loop_slope) << '\n';
}

// ---------------------------------------------------------------- wiring

void add_source_options(CLI::App* cmd, SourceArgs& source) {
  cmd->add_option("--analysis", source.analysis, "Prefix of TSV files written by 'analyze'");
  cmd->add_option("--graph", source.graph, "Edge-list file to analyze first");
  cmd->add_option("--alpha", source.alpha, "Log-grid base")->capture_default_str();
}

void add_range_options(CLI::App* cmd, RangeArgs& range) {
  cmd->add_option("--d1-lo", range.d1_lo, "Lower end of the degree range");
  cmd->add_option("--d1-hi", range.d1_hi, "Upper end of the degree range");
  cmd->add_flag("--auto-range", range.auto_range, "Select the range automatically (default)");
  cmd->add_option("--window", range.window, "Auto-range window length in decades")
      ->capture_default_str();
  cmd->add_option("--step", range.step, "Auto-range window offset in decades")
      ->capture_default_str();
  cmd->add_option("--ratio-cutoff", range.ratio_cutoff, "Edge-fit pairs need d1/d2 above this")
      ->capture_default_str();
}

int classify(const std::exception& e) {
  if (dynamic_cast<const pagraph::FitError*>(&e)) return kExitDiverged;
  if (dynamic_cast<const pagraph::IoError*>(&e) || dynamic_cast<const pagraph::ParseError*>(&e) ||
      dynamic_cast<const fs::filesystem_error*>(&e)) {
    return kExitIo;
  }
  if (dynamic_cast<const pagraph::ParameterError*>(&e) ||
      dynamic_cast<const pagraph::DomainError*>(&e) ||
      dynamic_cast<const pagraph::ValidationError*>(&e)) {
    return kExitValidation;
  }
  return kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Preferential-attachment graph generation, analysis and fitting"};
  app.require_subcommand(1);
  app.set_version_flag("--version", PAGRAPH_VERSION);

  GlobalOptions global;
  global.argv.assign(argv, argv + argc);
  app.add_option("--threads", global.threads, "Worker threads (0 = $PAGRAPH_THREADS or all cores)");
  app.add_flag("--verify", global.verify, "Re-derive every output and compare byte for byte");
  app.fallthrough();

  std::function<int()> action;

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand("generate", "Sample a random graph");
  generate->add_option("--model", gen.model, "bo | gds | hk")
      ->check(CLI::IsMember({"bo", "gds", "hk"}))
      ->capture_default_str();
  generate->add_option("--a", gen.a, "Initial attractiveness (bo)")->capture_default_str();
  generate->add_option("--m", gen.m, "Edges per vertex (bo, hk)")->capture_default_str();
  generate->add_option("--n", gen.n, "Vertex count")->capture_default_str();
  generate->add_option("--gamma", gen.gamma, "Degree exponent (gds)")->capture_default_str();
  generate->add_option("--target-edges", gen.target_edges, "Approximate edge count (gds)");
  generate->add_option("--pt", gen.pt, "Triad formation probability (hk)")->capture_default_str();
  generate->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  generate->add_option("--format", gen.format, "text | binary | auto")
      ->check(CLI::IsMember({"text", "binary", "auto"}))
      ->capture_default_str();
  generate->add_option("--out", gen.out, "Output graph file")->required();
  generate->callback([&] {
    action = [&] {
      return execute("generate", global, gen.out, with_suffix(gen.out, ".manifest.json"),
                     [&](const fs::path& base, RunRecord& r) { run_generate(gen, base, r); });
    };
  });

  AnalyzeArgs ana;
  CLI::App* analyze = app.add_subcommand("analyze", "Degree and edge-degree statistics of a graph");
  analyze->add_option("--graph", ana.graph, "Edge-list file (text or binary)")->required();
  analyze->add_option("--alpha", ana.alpha, "Log-grid base")->capture_default_str();
  analyze->add_option("--out", ana.out, "Output prefix")->required();
  analyze->callback([&] {
    action = [&] {
      return execute("analyze", global, ana.out, with_suffix(ana.out, ".analyze.manifest.json"),
                     [&](const fs::path& base, RunRecord& r) { run_analyze(ana, base, r); });
    };
  });

  FitArgs fit;
  CLI::App* fit_cmd = app.add_subcommand("fit", "Estimate a from degrees and from edges");
  add_source_options(fit_cmd, fit.source);
  add_range_options(fit_cmd, fit.range);
  fit_cmd->add_option("--bootstrap", fit.bootstrap, "Bootstrap iterations (0 = none)");
  fit_cmd->add_option("--seed", fit.seed, "Bootstrap seed")->capture_default_str();
  fit_cmd->add_option("--out", fit.out, "Output prefix")->required();
  fit_cmd->callback([&] {
    action = [&] {
      return execute("fit", global, fit.out, with_suffix(fit.out, ".fit.manifest.json"),
                     [&](const fs::path& base, RunRecord& r) {
                       run_fit(fit, global.threads, base, r);
                     });
    };
  });

  BootstrapArgs boot;
  CLI::App* boot_cmd = app.add_subcommand("bootstrap", "Resampling spread of one estimate");
  add_source_options(boot_cmd, boot.source);
  add_range_options(boot_cmd, boot.range);
  boot_cmd->add_option("--target", boot.target, "degrees | edges")
      ->check(CLI::IsMember({"degrees", "edges"}))
      ->capture_default_str();
  boot_cmd->add_option("--iterations", boot.iterations, "Resampling rounds")->capture_default_str();
  boot_cmd->add_option("--seed", boot.seed, "Random seed")->capture_default_str();
  boot_cmd->add_option("--out", boot.out, "Output TSV file")->required();
  boot_cmd->callback([&] {
    action = [&] {
      return execute("bootstrap", global, boot.out, with_suffix(boot.out, ".manifest.json"),
                     [&](const fs::path& base, RunRecord& r) {
                       run_bootstrap_command(boot, global.threads, base, r);
                     });
    };
  });

  TheoryArgs th;
  CLI::App* theory = app.add_subcommand("theory", "Closed-form expectations and numeric checks");
  theory->require_subcommand(1);
  const auto theory_sub = [&](const std::string& name, const std::string& help,
                              std::function<void(const fs::path&, RunRecord&)> body) {
    CLI::App* sub = theory->add_subcommand(name, help);
    sub->add_option("--out", th.out, "Output TSV file")->required();
    sub->callback([&, name, body] {
      action = [&, name, body] {
        return execute("theory " + name, global, th.out, with_suffix(th.out, ".manifest.json"), body);
      };
    });
    return sub;
  };
  CLI::App* th_degrees = theory_sub("degrees", "Expected #(d) for m <= d <= d-max",
                                    [&](const fs::path& p, RunRecord& r) { run_theory_degrees(th, p, r); });
  CLI::App* th_edges = theory_sub("edges", "Expected X(d1, d2) on log-grid pairs",
                                  [&](const fs::path& p, RunRecord& r) { run_theory_edges(th, p, r); });
  for (CLI::App* sub : {th_degrees, th_edges}) {
    sub->add_option("--a", th.a, "Initial attractiveness")->capture_default_str();
    sub->add_option("--m", th.m, "Edges per vertex")->capture_default_str();
    sub->add_option("--n", th.n, "Vertex count")->capture_default_str();
    sub->add_option("--d-max", th.d_max, "Largest degree")->capture_default_str();
  }
  th_edges->add_option("--alpha", th.alpha, "Log-grid base")->capture_default_str();
  CLI::App* th_b = theory_sub("appendix-b", "Double tail sum against the edge approximant",
                              [&](const fs::path& p, RunRecord& r) { run_theory_appendix_b(th, p, r); });
  th_b->add_option("--a", th.a, "Exponent parameter")->capture_default_str();
  th_b->add_option("--d2-lo", th.d2_lo, "Smallest d2")->capture_default_str();
  th_b->add_option("--d2-hi", th.d2_hi, "Largest d2")->capture_default_str();
  th_b->add_option("--ratio-lo", th.ratio_lo, "Smallest d1/d2")->capture_default_str();
  th_b->add_option("--ratio-hi", th.ratio_hi, "Largest d1/d2")->capture_default_str();
  th_b->add_option("--per-decade", th.per_decade, "Points per decade")->capture_default_str();
  th_b->add_option("--truncation-factor", th.truncation_factor, "Exact outer sum up to this * d2")
      ->capture_default_str();
  CLI::App* th_p = theory_sub("prop1", "Loop and multi-edge scaling of H(a,m,n)",
                              [&](const fs::path& p, RunRecord& r) {
                                run_theory_prop1(th, global.threads, p, r);
                              });
  th_p->add_option("--a", th.a, "Initial attractiveness, in (0, 1)")->capture_default_str();
  th_p->add_option("--m", th.m, "Edges per vertex")->capture_default_str();
  th_p->add_option("--sizes", th.sizes, "Vertex counts")->delimiter(',')->capture_default_str();
  th_p->add_option("--samples", th.samples, "Samples per size")->capture_default_str();
  th_p->add_option("--seed", th.seed, "Random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    return action ? action() : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "pagraph: " << e.what() << '\n';
    return classify(e);
  }
}
