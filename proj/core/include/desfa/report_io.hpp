#pragma once

#include <string>

#include "desfa/evaluation.hpp"

namespace desfa {

struct ReportPaths {
  std::string report_json;
  std::string scores_csv;
  std::string table_txt;
  std::string timing_json;
  std::string manifest_json;
  std::string trace_jsonl;
};

ReportPaths report_paths(const std::string& out_dir);

// Writes report.json, scores.csv and table.txt, which are byte-stable for
// a given config and build, plus timing.json and manifest.json, which
// carry wall-clock data. Creates out_dir when missing.
void write_report(const ExperimentResult& result, const std::string& out_dir);

// The per-dataset summary block; also the content of table.txt.
std::string render_result_table(const ExperimentResult& result);

// One trace record as a single JSON line.
std::string trace_line(const QueryTrace& trace);

// Reads the config back out of a manifest written by write_report.
ExperimentConfig config_from_manifest(const std::string& manifest_path);

// Scans dir recursively for stored reports and renders cross-dataset
// accuracy, reduction and timing tables. Throws ValidationError when no
// report is found.
std::string render_comparison(const std::string& dir);

}  // namespace desfa
