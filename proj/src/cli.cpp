#include "condtest/cli.hpp"

#include <iostream>

#include "CLI11.hpp"

#include "condtest/bounds.hpp"
#include "condtest/json_io.hpp"

namespace condtest {

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadFlags:
    case ErrorCode::InfeasibleParameters:
    case ErrorCode::TooLarge:
    case ErrorCode::EtaOutOfRange:
    case ErrorCode::DeltaTooLarge:
    case ErrorCode::NotSubset:
    case ErrorCode::HeterogeneousConfigs:
      return 2;
    case ErrorCode::FileNotFound:
    case ErrorCode::ValidationFailed:
    case ErrorCode::SelfLoop:
    case ErrorCode::ParallelEdge:
    case ErrorCode::AsymmetricAdjacency:
    case ErrorCode::Disconnected:
    case ErrorCode::IsolatedVertex:
    case ErrorCode::EmptySide:
      return 3;
    default:
      return 4;
  }
}

struct CliState {
  ExperimentSpec spec;
  std::string gen_text;
  std::string graph_file;
  std::string out_path;
  std::string csv_path;
  std::string transcript_path;
  std::string matrix_prefix;
  long long walks = 0;
  long long length = 0;
  double tau_slack = -1;
  double source_constant = -1;
  double congestion_limit = 0;
  std::vector<int> sources;
};

void add_common_options(CLI::App* cmd, CliState& st) {
  cmd->add_option("--graph", st.graph_file, "edge-list file (first line 'n m', then 'u v' lines)");
  cmd->add_option("--gen", st.gen_text,
                  "generator spec: complete:N, cycle:N, path:N, dumbbell:K, regular:N:D, "
                  "barbell:K:LEN");
  cmd->add_option("--seed", st.spec.config.master_seed, "master seed")->capture_default_str();
  cmd->add_option("--out", st.out_path, "write the JSON report here instead of stdout");
  cmd->add_flag("--deterministic", st.spec.deterministic,
                "omit timestamps so identical runs produce identical bytes");
  cmd->add_option("--threads", st.spec.worker_threads, "engine worker threads")
      ->capture_default_str();
}

void add_override_options(CLI::App* cmd, CliState& st) {
  cmd->add_option("--walks", st.walks, "override K, the number of walks per source")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--length", st.length, "override the walk length (rounds)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tau-slack", st.tau_slack, "override the threshold slack")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--source-constant", st.source_constant,
                  "override the source-sampling constant")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--congestion-limit", st.congestion_limit,
                  "override the per-message tuple limit")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--sources", st.sources, "force this exact source set (comma separated)")
      ->delimiter(',');
}

void finalize_spec(CliState& st, Mode mode) {
  st.spec.mode = mode;
  if (!st.gen_text.empty()) st.spec.gen = parse_gen_spec(st.gen_text);
  if (!st.graph_file.empty()) st.spec.graph_file = st.graph_file;
  if (!st.out_path.empty()) st.spec.out_path = st.out_path;
  if (!st.csv_path.empty()) st.spec.csv_path = st.csv_path;
  if (!st.transcript_path.empty()) st.spec.transcript_path = st.transcript_path;
  if (st.walks > 0) st.spec.config.walks = st.walks;
  if (st.length > 0 && mode == Mode::Test) st.spec.config.length = st.length;
  if (st.length > 0 && mode != Mode::Test) st.spec.ell = st.length;
  if (st.tau_slack >= 0) st.spec.config.tau_slack = st.tau_slack;
  if (st.source_constant >= 0) st.spec.config.source_constant = st.source_constant;
  if (st.congestion_limit > 0) st.spec.config.congestion_limit = st.congestion_limit;
  st.spec.config.forced_sources = st.sources;
  if (st.spec.worker_threads < 1)
    throw Error(ErrorCode::BadFlags, "--threads must be >= 1");
}

void emit(const ExperimentSpec& spec, nlohmann::json document, const std::string& summary) {
  if (spec.out_path) {
    write_report_file(*spec.out_path, std::move(document), spec.deterministic);
    std::cout << summary;
    std::cout << "report written to " << *spec.out_path << "\n";
  } else {
    write_report_json(std::cout, std::move(document), spec.deterministic);
  }
}

void export_matrices(const std::string& prefix, const SpectralBundle& bundle) {
  write_matrix_csv_file(prefix + ".walk.csv", bundle.walk_matrix);
  write_matrix_csv_file(prefix + ".laplacian.csv", bundle.laplacian);
  Eigen::MatrixXd spectrum(bundle.n, 2);
  spectrum.col(0) = bundle.omegas;
  spectrum.col(1) = bundle.lambdas;
  write_matrix_csv_file(prefix + ".spectrum.csv", spectrum);
}

nlohmann::json graph_json(const std::string& name, const Graph& g) {
  return nlohmann::json{{"name", name}, {"n", g.vertex_count()}, {"m", g.edge_count()}};
}

int run_test_mode(ExperimentSpec& spec) {
  std::string name;
  Graph g = build_graph(spec, &name);
  if (spec.trials < 1) throw Error(ErrorCode::BadFlags, "--trials must be >= 1");

  congest::EngineOptions engine{spec.worker_threads};
  auto reports = run_trials(g, spec.config, spec.trials, engine, name);
  AggregateReport agg = aggregate(reports);

  if (spec.csv_path) write_trials_csv_file(*spec.csv_path, agg);
  if (spec.transcript_path) write_transcript_file(*spec.transcript_path, reports);

  std::ostringstream summary;
  summary << "graph " << name << ": n=" << g.vertex_count() << " m=" << g.edge_count() << "\n"
          << "trials " << agg.trials << ": accept " << agg.accept_fraction << " reject "
          << agg.reject_fraction << " aborted " << agg.aborted_fraction << "\n";

  nlohmann::json document = spec.trials == 1 ? to_json(reports.front(), spec.histograms)
                                             : to_json(agg);
  emit(spec, std::move(document), summary.str());
  return 0;
}

int run_cheeger_mode(ExperimentSpec& spec, const std::string& matrix_prefix) {
  std::string name;
  Graph g = build_graph(spec, &name);
  SpectralBundle bundle = build_spectral(g);
  if (!matrix_prefix.empty()) export_matrices(matrix_prefix, bundle);
  CheegerReport report = verify_cheeger_bounds(bundle, g);
  nlohmann::json document = to_json(report);
  document["kind"] = "cheeger_report";
  document["graph"] = graph_json(name, g);
  std::ostringstream summary;
  summary << "phi_star=" << report.phi_star << " lambda2=" << report.lambda2 << " "
          << (report.pass() ? "PASS" : "FAIL") << "\n";
  emit(spec, std::move(document), summary.str());
  return 0;
}

int run_lemma_mode(ExperimentSpec& spec, const std::string& matrix_prefix) {
  std::string name;
  Graph g = build_graph(spec, &name);
  const long long ell_max = spec.ell > 0 ? spec.ell : 50;

  MinConductanceCut min_cut = min_conductance_bruteforce(g);
  Cut cut = make_cut(g, min_cut.witness);
  SpectralBundle bundle = build_spectral(g);
  if (!matrix_prefix.empty()) export_matrices(matrix_prefix, bundle);

  TrapBoundReport whole = verify_trap_bound(bundle, cut, ell_max);

  nlohmann::json document{{"kind", "lemma_report"},
                          {"graph", graph_json(name, g)},
                          {"cut", {{"side", cut.side.members()},
                                   {"delta", cut.conductance},
                                   {"crossing_edges", cut.crossing}}},
                          {"whole_set", to_json(whole)}};

  bool subset_pass = true;
  if (cut.side.size() >= 2) {
    // drop the lowest-degree member (lowest id on ties)
    int drop = 0;
    for (int v : cut.side.members())
      if (drop == 0 || g.degree(v) < g.degree(drop)) drop = v;
    VertexSet t = cut.side;
    t.erase(drop);
    TrapBoundReport subset = verify_subset_trap_bound(bundle, cut, t, ell_max);
    document["subset"] = to_json(subset);
    document["subset"]["dropped_vertex"] = drop;
    subset_pass = subset.all_pass;
  }

  const double heavy = heavy_coefficient_mass(bundle, cut.side, cut.conductance);
  const double required = 5.0 / 6.0 * static_cast<double>(cut.side.volume());
  const bool heavy_pass = heavy >= required - 1e-8;
  document["heavy_coefficient"] = {{"mass", heavy}, {"required", required}, {"pass", heavy_pass}};

  const bool pass = whole.all_pass && subset_pass && heavy_pass;
  document["pass"] = pass;
  std::ostringstream summary;
  summary << "delta=" << cut.conductance << " rows=" << ell_max + 1 << " "
          << (pass ? "PASS" : "FAIL") << "\n";
  emit(spec, std::move(document), summary.str());
  return 0;
}

int run_mixing_mode(ExperimentSpec& spec, const std::string& matrix_prefix) {
  std::string name;
  Graph g = build_graph(spec, &name);
  SpectralBundle bundle = build_spectral(g);
  if (!matrix_prefix.empty()) export_matrices(matrix_prefix, bundle);
  const long long ell = spec.ell > 0 ? spec.ell : 20;
  MixingReport report = verify_mixing_bound(bundle, ell);
  nlohmann::json document = to_json(report);
  document["kind"] = "mixing_report";
  document["graph"] = graph_json(name, g);
  std::ostringstream summary;
  summary << "max_deviation=" << report.max_deviation << " bound=" << report.bound << " "
          << (report.pass ? "PASS" : "FAIL") << "\n";
  emit(spec, std::move(document), summary.str());
  return 0;
}

int run_brute_mode(ExperimentSpec& spec) {
  std::string name;
  Graph g = build_graph(spec, &name);
  MinConductanceCut cut = min_conductance_bruteforce(g);
  nlohmann::json document = to_json(cut);
  document["kind"] = "conductance_report";
  document["graph"] = graph_json(name, g);
  document["cheeger_constant"] = cheeger_constant_lazy(g);
  std::ostringstream summary;
  summary << "min_conductance=" << cut.conductance << "\n";
  emit(spec, std::move(document), summary.str());
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"synchronous-round conductance tester and exact spectral checker"};
  app.require_subcommand(1);

  CliState st;
  CLI::App* test = app.add_subcommand("test", "run the distributed tester over seeded trials");
  add_common_options(test, st);
  add_override_options(test, st);
  double alpha = 0.5, epsilon = 0.3;
  test->add_option("--alpha", alpha, "conductance parameter in (0,1)")->required();
  test->add_option("--epsilon", epsilon, "distance parameter > 0")->required();
  test->add_option("--trials", st.spec.trials, "independent seeded trials")->capture_default_str();
  test->add_option("--csv", st.csv_path, "write per-trial rows as CSV");
  test->add_option("--transcript", st.transcript_path, "write per-round JSON lines here");
  test->add_flag("--histograms", st.spec.histograms,
                 "include per-source endpoint histograms (single-trial reports)");

  CLI::App* lemmas = app.add_subcommand(
      "verify-lemmas", "check the trap-probability lower bounds on the minimum cut");
  CLI::App* cheeger = app.add_subcommand(
      "verify-cheeger", "check phi*^2/2 <= 1 - lambda2 <= 2 phi* exactly");
  CLI::App* mixing = app.add_subcommand(
      "mixing", "check the pointwise mixing bound |M^l(v,u) - pi(v)| <= lambda2^l");
  CLI::App* brute = app.add_subcommand(
      "brute-conductance", "exhaustive minimum-conductance cut");
  for (CLI::App* cmd : {lemmas, cheeger, mixing, brute}) add_common_options(cmd, st);
  lemmas->add_option("--length", st.length, "largest walk length to check (default 50)");
  mixing->add_option("--length", st.length, "walk length to check (default 20)");
  for (CLI::App* cmd : {lemmas, cheeger, mixing})
    cmd->add_option("--export-matrices", st.matrix_prefix,
                    "write walk/laplacian/spectrum CSVs with this path prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(test)) {
      st.spec.config.alpha = alpha;
      st.spec.config.epsilon = epsilon;
      finalize_spec(st, Mode::Test);
      return run_test_mode(st.spec);
    }
    if (app.got_subcommand(cheeger)) {
      finalize_spec(st, Mode::VerifyCheeger);
      return run_cheeger_mode(st.spec, st.matrix_prefix);
    }
    if (app.got_subcommand(lemmas)) {
      finalize_spec(st, Mode::VerifyLemmas);
      return run_lemma_mode(st.spec, st.matrix_prefix);
    }
    if (app.got_subcommand(mixing)) {
      finalize_spec(st, Mode::Mixing);
      return run_mixing_mode(st.spec, st.matrix_prefix);
    }
    finalize_spec(st, Mode::BruteConductance);
    return run_brute_mode(st.spec);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace condtest
