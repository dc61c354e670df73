#pragma once

#include <span>
#include <vector>

#include "desfa/dataset.hpp"

namespace desfa {

// Per-feature min-max scaler mapping the fitted range onto [0, 1].
// A constant feature maps to 0.0 everywhere.
class MinMaxScaler {
 public:
  void fit(const Dataset& ds);

  void transform(std::span<const double> row, std::span<double> out) const;
  std::vector<double> transform(std::span<const double> row) const;

  // Scales every row of ds in place using the fitted ranges.
  Dataset transform(const Dataset& ds) const;

  bool fitted() const { return !mins_.empty(); }
  std::size_t n_features() const { return mins_.size(); }
  const std::vector<double>& mins() const { return mins_; }
  const std::vector<double>& maxs() const { return maxs_; }

 private:
  std::vector<double> mins_;
  std::vector<double> maxs_;
};

}  // namespace desfa
