#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "condtest/bounds.hpp"
#include "condtest/harness.hpp"

namespace condtest {

nlohmann::json to_json(const ResolvedConfig& config);
nlohmann::json to_json(const congest::RoundStats& stats);
nlohmann::json to_json(const RunReport& report, bool histograms);
nlohmann::json to_json(const AggregateReport& report);
nlohmann::json to_json(const TrapBoundReport& report);  // rows: [{ell, trap, bound, pass}]
nlohmann::json to_json(const CheegerReport& report);
nlohmann::json to_json(const MixingReport& report);
nlohmann::json to_json(const MinConductanceCut& cut);

/// Adds a generated_at timestamp unless deterministic, then writes
/// two-space-indented JSON with a trailing newline.
void write_report_json(std::ostream& out, nlohmann::json document, bool deterministic);
void write_report_file(const std::string& path, nlohmann::json document, bool deterministic);

/// Per-trial CSV, columns fixed by the header (format v1).
void write_trials_csv(std::ostream& out, const AggregateReport& report);
void write_trials_csv_file(const std::string& path, const AggregateReport& report);

/// JSON-lines transcript: one record per executed round per trial.
void write_transcript(std::ostream& out, std::span<const RunReport> reports);
void write_transcript_file(const std::string& path, std::span<const RunReport> reports);

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& matrix);
void write_matrix_csv_file(const std::string& path, const Eigen::MatrixXd& matrix);

}  // namespace condtest
