#include "desfa/scaler.hpp"

#include <algorithm>
#include <limits>

#include "desfa/errors.hpp"

namespace desfa {

void MinMaxScaler::fit(const Dataset& ds) {
  ds.check();
  mins_.assign(ds.n_features, std::numeric_limits<double>::infinity());
  maxs_.assign(ds.n_features, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < ds.n(); ++i) {
    auto r = ds.row(i);
    for (std::size_t c = 0; c < ds.n_features; ++c) {
      mins_[c] = std::min(mins_[c], r[c]);
      maxs_[c] = std::max(maxs_[c], r[c]);
    }
  }
}

void MinMaxScaler::transform(std::span<const double> row, std::span<double> out) const {
  if (!fitted()) throw ValidationError("scaler used before fit");
  if (row.size() != mins_.size() || out.size() != mins_.size())
    throw ValidationError("scaler row width mismatch");
  for (std::size_t c = 0; c < row.size(); ++c) {
    const double range = maxs_[c] - mins_[c];
    out[c] = range > 0.0 ? (row[c] - mins_[c]) / range : 0.0;
  }
}

std::vector<double> MinMaxScaler::transform(std::span<const double> row) const {
  std::vector<double> out(row.size());
  transform(row, out);
  return out;
}

Dataset MinMaxScaler::transform(const Dataset& ds) const {
  if (!fitted()) throw ValidationError("scaler used before fit");
  if (ds.n_features != mins_.size()) throw ValidationError("scaler feature count mismatch");
  Dataset out = ds;
  for (std::size_t i = 0; i < out.n(); ++i) {
    auto r = out.row_mut(i);
    transform(r, r);
  }
  return out;
}

}  // namespace desfa
