#include "desfa/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "json.hpp"

#include "desfa/errors.hpp"
#include "desfa/registry.hpp"
#include "desfa/version.hpp"

namespace desfa {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// JSON has no infinities; the t statistic can hit one on zero-variance
// differences, so it degrades to a string there.
json json_finite(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : "-inf";
}

json config_to_json(const ExperimentConfig& cfg) {
  json ids = json::array();
  for (const Method& m : cfg.methods) ids.push_back(method_id(m));
  json j;
  j["dataset"] = cfg.dataset;
  j["methods"] = ids;
  j["k"] = cfg.k;
  j["enn_ks"] = cfg.enn_ks;
  j["ensemble_size"] = cfg.ensemble_size;
  j["iterations"] = cfg.iterations;
  j["train_fraction"] = cfg.train_fraction;
  j["validation_fraction"] = cfg.validation_fraction;
  j["stratified"] = cfg.stratified;
  j["scale_features"] = cfg.scale_features;
  j["epochs"] = cfg.epochs;
  j["learning_rate"] = cfg.learning_rate;
  j["threads"] = cfg.threads;
  j["alpha"] = cfg.alpha;
  j["include_loo"] = cfg.include_loo;
  j["seed"] = cfg.seed;
  return j;
}

json report_to_json(const ExperimentResult& r) {
  json j;
  j["schema"] = "desfa-report/1";
  {
    json d;
    d["name"] = r.dataset_name;
    d["instances"] = r.n_instances;
    d["features"] = r.n_features;
    d["classes"] = r.n_classes;
    d["predefined_test"] = r.predefined_test;
    j["dataset"] = d;
  }
  j["protocol"] = config_to_json(r.config);

  json methods = json::array();
  for (const MethodResult& mr : r.methods) {
    json m;
    m["id"] = method_id(mr.method);
    m["mean_accuracy"] = mr.mean_accuracy;
    m["std_accuracy"] = mr.std_accuracy;
    m["mean_reductions"] = mr.mean_reductions;
    m["fallback_count"] = mr.fallback_count;
    m["query_count"] = mr.query_count;
    m["accuracies"] = mr.accuracies;
    methods.push_back(std::move(m));
  }
  j["methods"] = std::move(methods);

  if (r.loo_accuracy_percent) {
    json loo;
    loo["k"] = r.config.k;
    loo["accuracy_percent"] = *r.loo_accuracy_percent;
    j["loo"] = std::move(loo);
  }

  json tests = json::array();
  for (const PairwiseTest& pt : r.t_tests) {
    json t;
    t["a"] = pt.method_a;
    t["b"] = pt.method_b;
    t["t"] = json_finite(pt.test.t_statistic);
    t["p"] = pt.test.p_value;
    t["mean_diff"] = pt.test.mean_diff;
    t["significant"] = pt.test.significant;
    tests.push_back(std::move(t));
  }
  j["t_tests"] = std::move(tests);

  json iters = json::array();
  for (const IterationDetail& d : r.iterations) {
    json i;
    i["seed"] = d.seed;
    i["train"] = d.train_size;
    i["validation"] = d.validation_size;
    i["test"] = d.test_size;
    json edited;
    for (const auto& [ek, n] : d.edited_sizes) edited[std::to_string(ek)] = n;
    i["edited"] = std::move(edited);
    iters.push_back(std::move(i));
  }
  j["iterations"] = std::move(iters);
  j["warnings"] = r.warnings;
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  out << text;
  if (!out) throw ParseError(path + ": write failed");
}

std::string scores_csv_text(const ExperimentResult& r) {
  std::ostringstream out;
  out << "iteration";
  for (const MethodResult& mr : r.methods) out << ',' << method_id(mr.method);
  out << '\n';
  for (std::size_t it = 0; it < r.iterations.size(); ++it) {
    out << it;
    for (const MethodResult& mr : r.methods) out << ',' << fmt("%.17g", mr.accuracies[it]);
    out << '\n';
  }
  return out.str();
}

std::string iso_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool uses_selection(const std::string& id) {
  return id.rfind("des-fa(", 0) == 0 || id == "aknn-knora-e" || id == "knora-e";
}

// First column left aligned, the rest right aligned, two spaces between.
std::string layout(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      const std::string& cell = row[c];
      if (c == 0) {
        out << cell << std::string(width[c] - cell.size(), ' ');
      } else {
        out << "  " << std::string(width[c] - cell.size(), ' ') << cell;
      }
    }
    out << '\n';
  }
  return out.str();
}

// Canonical column rank: edited variants by edit size, then the unedited
// adaptive scheme, the plain scheme, the static vote, the bounds.
std::pair<int, std::string> column_rank(const std::string& id) {
  if (id.rfind("des-fa(", 0) == 0) {
    std::string num = id.substr(7, id.size() - 8);
    while (num.size() < 6) num.insert(num.begin(), '0');
    return {0, num};
  }
  if (id == "aknn-knora-e") return {1, id};
  if (id == "knora-e") return {2, id};
  if (id == "static") return {3, id};
  if (id == "oracle") return {4, id};
  if (id == "single-best") return {5, id};
  return {6, id};
}

int dataset_rank(const std::string& name) {
  const auto& reg = dataset_registry();
  for (std::size_t i = 0; i < reg.size(); ++i)
    if (reg[i].name == name) return static_cast<int>(i);
  return static_cast<int>(reg.size());
}

json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace

ReportPaths report_paths(const std::string& out_dir) {
  ReportPaths p;
  p.report_json = (fs::path(out_dir) / "report.json").string();
  p.scores_csv = (fs::path(out_dir) / "scores.csv").string();
  p.table_txt = (fs::path(out_dir) / "table.txt").string();
  p.timing_json = (fs::path(out_dir) / "timing.json").string();
  p.manifest_json = (fs::path(out_dir) / "manifest.json").string();
  p.trace_jsonl = (fs::path(out_dir) / "trace.jsonl").string();
  return p;
}

std::string render_result_table(const ExperimentResult& r) {
  std::ostringstream head;
  head << r.dataset_name << ": " << r.n_instances << " instances, " << r.n_features
       << " features, " << r.n_classes << " classes\n";
  head << "protocol: " << r.config.iterations << " iterations, k=" << r.config.k
       << ", ensemble=" << r.config.ensemble_size << ", seed=" << r.config.seed;
  if (r.predefined_test) head << ", fixed test half";
  head << "\n\n";

  // Significance against the plain scheme, when it was run.
  std::map<std::string, std::string> vs_plain;
  for (const PairwiseTest& pt : r.t_tests) {
    std::string other;
    double diff = 0.0;
    if (pt.method_a == "knora-e") {
      other = pt.method_b;
      diff = -pt.test.mean_diff;
    } else if (pt.method_b == "knora-e") {
      other = pt.method_a;
      diff = pt.test.mean_diff;
    } else {
      continue;
    }
    vs_plain[other] = !pt.test.significant ? "~" : (diff > 0 ? "+" : "-");
  }

  std::vector<std::vector<std::string>> rows;
  rows.push_back({"method", "mean", "std", "red/query", "fallback%", "vs knora-e"});
  for (const MethodResult& mr : r.methods) {
    const std::string id = method_id(mr.method);
    std::vector<std::string> row{id, fmt("%.2f", mr.mean_accuracy), fmt("%.2f", mr.std_accuracy)};
    if (uses_selection(id)) {
      row.push_back(fmt("%.2f", mr.mean_reductions));
      row.push_back(fmt("%.1f", mr.query_count == 0
                                    ? 0.0
                                    : 100.0 * static_cast<double>(mr.fallback_count) /
                                          static_cast<double>(mr.query_count)));
    } else {
      row.push_back("-");
      row.push_back("-");
    }
    const auto it = vs_plain.find(id);
    row.push_back(it == vs_plain.end() ? "" : it->second);
    rows.push_back(std::move(row));
  }
  if (r.loo_accuracy_percent)
    rows.push_back({"loo-knn", fmt("%.2f", *r.loo_accuracy_percent), "-", "-", "-", ""});

  std::ostringstream out;
  out << head.str() << layout(rows);
  for (const std::string& w : r.warnings) out << "warning: " << w << '\n';
  return out.str();
}

std::string trace_line(const QueryTrace& t) {
  json j;
  j["iteration"] = t.iteration;
  j["method"] = t.method;
  j["query"] = t.query;
  j["truth"] = t.truth;
  j["label"] = t.label;
  j["correct"] = t.correct;
  j["final_k"] = t.final_k;
  j["reductions"] = t.reductions;
  j["fallback"] = t.fallback;
  return j.dump();
}

void write_report(const ExperimentResult& result, const std::string& out_dir) {
  fs::create_directories(out_dir);
  const ReportPaths paths = report_paths(out_dir);

  write_text(paths.report_json, report_to_json(result).dump(2) + "\n");
  write_text(paths.scores_csv, scores_csv_text(result));
  write_text(paths.table_txt, render_result_table(result));

  {
    json t;
    t["schema"] = "desfa-timing/1";
    t["dataset"] = result.dataset_name;
    t["setup_seconds"] = result.setup_seconds;
    json methods = json::array();
    for (const MethodResult& mr : result.methods) {
      json m;
      m["id"] = method_id(mr.method);
      m["classify_seconds"] = mr.classify_seconds;
      methods.push_back(std::move(m));
    }
    t["methods"] = std::move(methods);
    write_text(paths.timing_json, t.dump(2) + "\n");
  }
  {
    json m;
    m["schema"] = "desfa-manifest/1";
    m["version"] = kVersion;
    m["created"] = iso_utc_now();
    m["config"] = config_to_json(result.config);
    write_text(paths.manifest_json, m.dump(2) + "\n");
  }
}

ExperimentConfig config_from_manifest(const std::string& manifest_path) {
  const json m = parse_json_file(manifest_path);
  try {
    if (m.at("schema").get<std::string>() != "desfa-manifest/1")
      throw ParseError(manifest_path + ": unsupported manifest schema");
    const json& c = m.at("config");
    ExperimentConfig cfg;
    cfg.dataset = c.at("dataset").get<std::string>();
    cfg.methods.clear();
    for (const auto& id : c.at("methods")) cfg.methods.push_back(parse_method(id.get<std::string>()));
    cfg.k = c.at("k").get<int>();
    cfg.enn_ks = c.at("enn_ks").get<std::vector<int>>();
    cfg.ensemble_size = c.at("ensemble_size").get<int>();
    cfg.iterations = c.at("iterations").get<int>();
    cfg.train_fraction = c.at("train_fraction").get<double>();
    cfg.validation_fraction = c.at("validation_fraction").get<double>();
    cfg.stratified = c.at("stratified").get<bool>();
    cfg.scale_features = c.at("scale_features").get<bool>();
    cfg.epochs = c.at("epochs").get<int>();
    cfg.learning_rate = c.at("learning_rate").get<double>();
    cfg.threads = c.at("threads").get<int>();
    cfg.alpha = c.at("alpha").get<double>();
    cfg.include_loo = c.at("include_loo").get<bool>();
    cfg.seed = c.at("seed").get<std::uint64_t>();
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(manifest_path + ": " + e.what());
  }
}

std::string render_comparison(const std::string& dir) {
  struct Row {
    std::string dataset;
    std::map<std::string, const json*> methods;  // id -> method entry
    json report;
    std::optional<json> timing;
  };

  if (!fs::exists(dir)) throw ValidationError(dir + ": no such directory");

  std::vector<Row> rows;
  std::vector<std::string> report_files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().filename() == "report.json")
      report_files.push_back(entry.path().string());
  }
  std::sort(report_files.begin(), report_files.end());
  for (const std::string& file : report_files) {
    Row row;
    row.report = parse_json_file(file);
    try {
      row.dataset = row.report.at("dataset").at("name").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(file + ": " + e.what());
    }
    const fs::path timing_path = fs::path(file).parent_path() / "timing.json";
    if (fs::exists(timing_path)) row.timing = parse_json_file(timing_path.string());
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ValidationError(dir + ": no report.json found underneath");

  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    const int ra = dataset_rank(a.dataset);
    const int rb = dataset_rank(b.dataset);
    return ra != rb ? ra < rb : a.dataset < b.dataset;
  });

  std::vector<std::string> ids;
  bool any_loo = false;
  for (Row& row : rows) {
    for (const auto& m : row.report.at("methods")) {
      const std::string id = m.at("id").get<std::string>();
      row.methods[id] = &m;
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }
    any_loo = any_loo || row.report.contains("loo");
  }
  std::sort(ids.begin(), ids.end(),
            [](const std::string& a, const std::string& b) { return column_rank(a) < column_rank(b); });

  std::ostringstream out;

  {
    std::vector<std::vector<std::string>> table;
    std::vector<std::string> header{"dataset"};
    if (any_loo) header.push_back("loo-knn");
    header.insert(header.end(), ids.begin(), ids.end());
    table.push_back(std::move(header));

    for (const Row& row : rows) {
      std::vector<std::string> line{row.dataset};
      if (any_loo) {
        line.push_back(row.report.contains("loo")
                           ? fmt("%.2f", row.report.at("loo").at("accuracy_percent").get<double>())
                           : "-");
      }
      // The oracle is a bound, not a competitor, so it never gets the mark.
      double best = -1.0;
      for (const auto& [id, m] : row.methods)
        if (id != "oracle") best = std::max(best, m->at("mean_accuracy").get<double>());
      for (const std::string& id : ids) {
        const auto it = row.methods.find(id);
        if (it == row.methods.end()) {
          line.push_back("-");
          continue;
        }
        const double mean = it->second->at("mean_accuracy").get<double>();
        const double sd = it->second->at("std_accuracy").get<double>();
        std::string cell = fmt("%.2f", mean) + "(" + fmt("%.2f", sd) + ")";
        if (id != "oracle" && mean == best) cell += "*";
        line.push_back(std::move(cell));
      }
      table.push_back(std::move(line));
    }
    out << "accuracy, mean(std) percent; * marks the row best outside the oracle\n"
        << layout(table) << '\n';
  }

  {
    std::vector<std::string> sel_ids;
    for (const std::string& id : ids)
      if (uses_selection(id)) sel_ids.push_back(id);
    if (!sel_ids.empty()) {
      std::vector<std::vector<std::string>> table;
      std::vector<std::string> header{"dataset"};
      header.insert(header.end(), sel_ids.begin(), sel_ids.end());
      table.push_back(std::move(header));
      for (const Row& row : rows) {
        std::vector<std::string> line{row.dataset};
        for (const std::string& id : sel_ids) {
          const auto it = row.methods.find(id);
          line.push_back(it == row.methods.end()
                             ? "-"
                             : fmt("%.3f", it->second->at("mean_reductions").get<double>()));
        }
        table.push_back(std::move(line));
      }
      out << "neighborhood reductions per query\n" << layout(table) << '\n';
    }
  }

  {
    bool any_timing = std::any_of(rows.begin(), rows.end(),
                                  [](const Row& r) { return r.timing.has_value(); });
    if (any_timing) {
      std::vector<std::vector<std::string>> table;
      std::vector<std::string> header{"dataset", "setup"};
      header.insert(header.end(), ids.begin(), ids.end());
      table.push_back(std::move(header));
      for (const Row& row : rows) {
        std::vector<std::string> line{row.dataset};
        if (!row.timing) {
          line.assign(ids.size() + 2, "-");
          line[0] = row.dataset;
          table.push_back(std::move(line));
          continue;
        }
        line.push_back(fmt("%.2f", row.timing->at("setup_seconds").get<double>()));
        std::map<std::string, double> secs;
        for (const auto& m : row.timing->at("methods"))
          secs[m.at("id").get<std::string>()] = m.at("classify_seconds").get<double>();
        for (const std::string& id : ids) {
          const auto it = secs.find(id);
          line.push_back(it == secs.end() ? "-" : fmt("%.2f", it->second));
        }
        table.push_back(std::move(line));
      }
      out << "wall-clock seconds, summed over iterations\n" << layout(table);
    }
  }

  return out.str();
}

}  // namespace desfa
