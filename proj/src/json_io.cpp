#include "condtest/json_io.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace condtest {

namespace {

using nlohmann::json;

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ValidationFailed, "cannot write to " + path);
  return out;
}

json verdict_json(int vertex, const congest::Verdict& verdict) {
  return json{{"vertex", vertex},
              {"outcome", congest::to_string(verdict.outcome)},
              {"round", verdict.round}};
}

}  // namespace

json to_json(const ResolvedConfig& config) {
  json j{{"alpha", config.alpha},
         {"epsilon", config.epsilon},
         {"master_seed", config.master_seed},
         {"walks", config.walks},
         {"length", config.length},
         {"tau_slack", config.tau_slack},
         {"source_constant", config.source_constant},
         {"congestion_limit", config.congestion_limit},
         {"overridden", config.overridden}};
  if (!config.forced_sources.empty()) j["forced_sources"] = config.forced_sources;
  return j;
}

json to_json(const congest::RoundStats& stats) {
  return json{{"round", stats.round},
              {"messages", stats.messages},
              {"tuples", stats.tuples},
              {"max_edge_tuples", stats.max_edge_tuples},
              {"halted", stats.halted}};
}

json to_json(const RunReport& report, bool histograms) {
  json j{{"kind", "run_report"},
         {"config", to_json(report.config)},
         {"graph", {{"name", report.graph_name}, {"n", report.n}, {"m", report.m}}},
         {"seed", report.seed},
         {"sources", report.sources},
         {"rounds_executed", report.rounds_executed},
         {"halted", report.halted},
         {"rejecting_vertices", report.rejecting},
         {"aborted_vertices", report.aborted},
         {"conservation_ok", report.conservation_ok}};
  if (!report.conservation_note.empty()) j["conservation_note"] = report.conservation_note;
  json verdicts = json::array();
  for (int v = 1; v <= report.n; ++v)
    verdicts.push_back(verdict_json(v, report.verdicts[static_cast<std::size_t>(v - 1)]));
  j["verdicts"] = std::move(verdicts);
  json stats = json::array();
  for (const auto& s : report.rounds) stats.push_back(to_json(s));
  j["round_stats"] = std::move(stats);
  if (histograms) {
    json hist = json::object();
    for (const auto& [source, per_vertex] : report.endpoint_counts) {
      json row = json::object();
      for (const auto& [vertex, count] : per_vertex) row[std::to_string(vertex)] = count;
      hist[std::to_string(source)] = std::move(row);
    }
    j["endpoint_histograms"] = std::move(hist);
  }
  return j;
}

json to_json(const AggregateReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    rows.push_back(json{{"trial", row.trial},
                        {"seed", row.seed},
                        {"outcome", to_string(row.outcome)},
                        {"rejecting_vertices", row.rejecting_vertices},
                        {"aborted_vertices", row.aborted_vertices},
                        {"first_reject_vertex", row.first_reject_vertex},
                        {"rounds", row.rounds},
                        {"messages", row.messages},
                        {"tuples", row.tuples},
                        {"max_edge_tuples", row.max_edge_tuples}});
  }
  json hist = json::object();
  for (const auto& [vertex, count] : report.first_reject_histogram)
    hist[std::to_string(vertex)] = count;
  return json{{"kind", "aggregate_report"},
              {"config", to_json(report.config)},
              {"graph", {{"name", report.graph_name}, {"n", report.n}, {"m", report.m}}},
              {"trials", report.trials},
              {"accept_fraction", report.accept_fraction},
              {"reject_fraction", report.reject_fraction},
              {"aborted_fraction", report.aborted_fraction},
              {"first_reject_histogram", std::move(hist)},
              {"rounds_total", report.rounds_total},
              {"messages_total", report.messages_total},
              {"tuples_total", report.tuples_total},
              {"max_edge_tuples", report.max_edge_tuples},
              {"conservation_ok", report.conservation_ok},
              {"per_trial", std::move(rows)}};
}

json to_json(const TrapBoundReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows)
    rows.push_back(
        json{{"ell", row.ell}, {"trap", row.trap}, {"bound", row.bound}, {"pass", row.pass}});
  return json{{"delta", report.delta},
              {"eta", report.eta},
              {"rows", std::move(rows)},
              {"all_pass", report.all_pass}};
}

json to_json(const CheegerReport& report) {
  return json{{"phi_star", report.phi_star},
              {"lambda2", report.lambda2},
              {"spectral_gap", report.spectral_gap},
              {"lower_pass", report.lower_pass},
              {"upper_pass", report.upper_pass},
              {"pass", report.pass()}};
}

json to_json(const MixingReport& report) {
  return json{{"ell", report.ell},
              {"max_deviation", report.max_deviation},
              {"bound", report.bound},
              {"max_violation", report.max_violation},
              {"pass", report.pass}};
}

json to_json(const MinConductanceCut& cut) {
  return json{{"min_conductance", cut.conductance},
              {"crossing_edges", cut.crossing},
              {"witness", cut.witness.members()},
              {"witness_volume", cut.witness.volume()}};
}

void write_report_json(std::ostream& out, json document, bool deterministic) {
  if (!deterministic) {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::ostringstream stamp;
    stamp << std::put_time(std::gmtime(&t), "%FT%TZ");
    document["generated_at"] = stamp.str();
  }
  out << document.dump(2) << "\n";
}

void write_report_file(const std::string& path, json document, bool deterministic) {
  auto out = open_for_write(path);
  write_report_json(out, std::move(document), deterministic);
}

void write_trials_csv(std::ostream& out, const AggregateReport& report) {
  out << "trial,seed,outcome,rejecting_vertices,aborted_vertices,first_reject_vertex,"
         "rounds,messages,tuples,max_edge_tuples\n";
  for (const auto& row : report.rows) {
    out << row.trial << "," << row.seed << "," << to_string(row.outcome) << ","
        << row.rejecting_vertices << "," << row.aborted_vertices << ","
        << row.first_reject_vertex << "," << row.rounds << "," << row.messages << ","
        << row.tuples << "," << row.max_edge_tuples << "\n";
  }
}

void write_trials_csv_file(const std::string& path, const AggregateReport& report) {
  auto out = open_for_write(path);
  write_trials_csv(out, report);
}

void write_transcript(std::ostream& out, std::span<const RunReport> reports) {
  for (std::size_t t = 0; t < reports.size(); ++t) {
    for (const auto& stats : reports[t].rounds) {
      json record = to_json(stats);
      record["trial"] = static_cast<int>(t);
      out << record.dump() << "\n";
    }
  }
}

void write_transcript_file(const std::string& path, std::span<const RunReport> reports) {
  auto out = open_for_write(path);
  write_transcript(out, reports);
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& matrix) {
  out << std::setprecision(17);
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      if (c > 0) out << ",";
      out << matrix(r, c);
    }
    out << "\n";
  }
}

void write_matrix_csv_file(const std::string& path, const Eigen::MatrixXd& matrix) {
  auto out = open_for_write(path);
  write_matrix_csv(out, matrix);
}

}  // namespace condtest
