#include "desfa/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "desfa/errors.hpp"

namespace desfa {

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset out;
  out.name = name;
  out.n_features = n_features;
  out.class_tokens = class_tokens;
  out.features.reserve(indices.size() * n_features);
  out.labels.reserve(indices.size());
  for (std::size_t i : indices) {
    auto r = row(i);
    out.features.insert(out.features.end(), r.begin(), r.end());
    out.labels.push_back(labels[i]);
  }
  return out;
}

std::vector<std::size_t> Dataset::class_counts() const {
  std::vector<std::size_t> counts(class_tokens.size(), 0);
  for (int y : labels) counts[static_cast<std::size_t>(y)]++;
  return counts;
}

std::size_t Dataset::present_class_count() const {
  std::size_t present = 0;
  for (std::size_t c : class_counts())
    if (c > 0) present++;
  return present;
}

void Dataset::check() const {
  if (labels.empty()) throw ValidationError("dataset '" + name + "' is empty");
  if (n_features == 0) throw ValidationError("dataset '" + name + "' has no features");
  if (class_tokens.size() < 2)
    throw ValidationError("dataset '" + name + "' has fewer than two classes");
  if (features.size() != labels.size() * n_features)
    throw ValidationError("dataset '" + name + "' feature matrix size mismatch");
  for (int y : labels) {
    if (y < 0 || y >= n_classes())
      throw ValidationError("dataset '" + name + "' has a label out of range");
  }
  for (double v : features) {
    if (!std::isfinite(v))
      throw ValidationError("dataset '" + name + "' contains a non-finite feature");
  }
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      cells.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return cells;
}

bool parse_double(std::string_view cell, double& out) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && !cell.empty();
}

}  // namespace

Dataset load_csv(const std::string& path, int label_column) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");

  Dataset ds;
  ds.name = path;
  std::unordered_map<std::string, int> token_to_label;

  std::string line;
  std::size_t line_no = 0;
  bool first_data_row = true;
  std::size_t n_cols = 0;
  std::size_t label_idx = 0;

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = trim(line);
    if (sv.empty()) continue;
    auto cells = split_cells(sv);

    if (first_data_row) {
      n_cols = cells.size();
      if (n_cols < 2)
        throw ParseError(path + ":" + std::to_string(line_no) + ": need at least two columns");
      if (label_column < 0) {
        label_idx = n_cols - 1;
      } else {
        label_idx = static_cast<std::size_t>(label_column);
        if (label_idx >= n_cols)
          throw ValidationError(path + ": label column " + std::to_string(label_column) +
                                " out of range for " + std::to_string(n_cols) + " columns");
      }
      ds.n_features = n_cols - 1;
      // Header heuristic: a first row whose feature cells are not all numeric.
      bool numeric = true;
      double tmp;
      for (std::size_t c = 0; c < n_cols && numeric; ++c) {
        if (c == label_idx) continue;
        numeric = parse_double(cells[c], tmp);
      }
      first_data_row = false;
      if (!numeric) continue;
    }

    if (cells.size() != n_cols)
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(n_cols) + " columns, got " + std::to_string(cells.size()));

    for (std::size_t c = 0; c < n_cols; ++c) {
      if (c == label_idx) continue;
      double v;
      if (!parse_double(cells[c], v) || !std::isfinite(v))
        throw ParseError(path + ":" + std::to_string(line_no) + ": feature cell '" +
                         std::string(cells[c]) + "' is not a finite number");
      ds.features.push_back(v);
    }
    std::string token(cells[label_idx]);
    auto [it, inserted] = token_to_label.try_emplace(token, static_cast<int>(ds.class_tokens.size()));
    if (inserted) ds.class_tokens.push_back(token);
    ds.labels.push_back(it->second);
  }

  if (ds.labels.empty()) throw ParseError(path + ": no data rows");
  if (ds.class_tokens.size() < 2)
    throw ValidationError(path + ": only one class present ('" + ds.class_tokens[0] + "')");
  ds.check();
  return ds;
}

void save_csv(const Dataset& ds, const std::string& path, bool header) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  if (header) {
    for (std::size_t c = 0; c < ds.n_features; ++c) out << "f" << c << ",";
    out << "label\n";
  }
  char buf[40];
  for (std::size_t i = 0; i < ds.n(); ++i) {
    auto r = ds.row(i);
    for (double v : r) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << buf << ',';
    }
    out << ds.class_tokens[static_cast<std::size_t>(ds.labels[i])] << '\n';
  }
  if (!out) throw ParseError(path + ": write failed");
}

}  // namespace desfa
