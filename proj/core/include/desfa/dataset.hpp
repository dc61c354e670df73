#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace desfa {

/// A classification dataset: an N x D feature matrix plus one dense integer
/// label in [0, C) per row. Rows and labels always move together; any
/// subsetting goes through subset() so that stays true.
///
/// class_tokens maps a dense label back to the token it had in the source
/// file (tokens are assigned by first appearance).
struct Dataset {
  std::string name;
  std::size_t n_features = 0;
  std::vector<double> features;  // row-major, size() == n() * n_features
  std::vector<int> labels;
  std::vector<std::string> class_tokens;

  std::size_t n() const { return labels.size(); }
  int n_classes() const { return static_cast<int>(class_tokens.size()); }

  std::span<const double> row(std::size_t i) const {
    return {features.data() + i * n_features, n_features};
  }

  std::span<double> row_mut(std::size_t i) {
    return {features.data() + i * n_features, n_features};
  }

  /// Rows picked by index, in the given order. Keeps the full token list.
  Dataset subset(std::span<const std::size_t> indices) const;

  /// Number of rows per dense label.
  std::vector<std::size_t> class_counts() const;

  /// Dense labels that actually occur (a subset may have lost classes).
  std::size_t present_class_count() const;

  /// Throws ValidationError if any structural invariant is broken
  /// (empty data, label out of range, non-finite feature, C < 2).
  void check() const;
};

/// Load a CSV file. Feature cells must parse as finite reals; the label cell
/// is an arbitrary token mapped to a dense integer by first appearance.
/// label_column < 0 means "last column". A non-numeric first row (in a
/// feature position) is treated as a header and skipped.
Dataset load_csv(const std::string& path, int label_column = -1);

/// Inverse of load_csv: comma separated, features in full precision, label
/// token last. load_csv(save_csv(ds)) reproduces ds exactly.
void save_csv(const Dataset& ds, const std::string& path, bool header = false);

}  // namespace desfa
