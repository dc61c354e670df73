#include "desfa/competence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "desfa/errors.hpp"

namespace desfa {

double euclidean(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("distance between rows of different width");
  double ss = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    ss += d * d;
  }
  return std::sqrt(ss);
}

std::vector<std::size_t> knn_of_row(const Dataset& ds, std::size_t i, int k) {
  if (k < 1) throw ValidationError("k must be positive");
  if (i >= ds.n()) throw ValidationError("row index out of range");

  std::vector<std::pair<double, std::size_t>> keyed;
  keyed.reserve(ds.n() - 1);
  for (std::size_t j = 0; j < ds.n(); ++j) {
    if (j == i) continue;
    keyed.emplace_back(euclidean(ds.row(i), ds.row(j)), j);
  }
  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), keyed.size());
  std::partial_sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(take), keyed.end());

  std::vector<std::size_t> out(take);
  for (std::size_t r = 0; r < take; ++r) out[r] = keyed[r].second;
  return out;
}

std::vector<std::uint8_t> enn_filter(const Dataset& ds, int k) {
  if (k < 1) throw ValidationError("k must be positive");
  ds.check();

  std::vector<std::uint8_t> keep(ds.n(), 1);
  if (ds.n() < 2) return keep;

  for (std::size_t i = 0; i < ds.n(); ++i) {
    const auto neighbors = knn_of_row(ds, i, k);
    std::vector<int> labels;
    labels.reserve(neighbors.size());
    for (std::size_t j : neighbors) labels.push_back(ds.labels[j]);
    // Rank order doubles as the tie rule: the earliest (nearest) voter wins.
    if (majority_vote(labels, ds.n_classes()) != ds.labels[i]) keep[i] = 0;
  }
  return keep;
}

std::vector<double> compute_radii(const Dataset& ds) {
  ds.check();
  if (ds.present_class_count() < 2)
    throw ValidationError("radii need at least two classes present");

  std::vector<double> radii(ds.n(), std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < ds.n(); ++i) {
    for (std::size_t j = 0; j < ds.n(); ++j) {
      if (ds.labels[i] == ds.labels[j]) continue;
      radii[i] = std::min(radii[i], euclidean(ds.row(i), ds.row(j)));
    }
  }
  return radii;
}

CompetenceIndex CompetenceIndex::build(const Dataset& validation,
                                       const BaggingEnsemble& ensemble,
                                       const IndexOptions& opts) {
  validation.check();
  if (ensemble.size() == 0) throw ValidationError("competence index needs a fitted ensemble");

  CompetenceIndex index;
  index.n_features_ = validation.n_features;
  index.n_members_ = ensemble.size();
  index.n_classes_ = validation.n_classes();
  if (opts.scaler) {
    if (!opts.scaler->fitted()) throw ValidationError("distance scaler is not fitted");
    index.scaler_ = *opts.scaler;
    index.use_scaler_ = true;
  }

  Dataset space = index.use_scaler_ ? index.scaler_.transform(validation) : validation;

  index.kept_rows_.resize(validation.n());
  std::iota(index.kept_rows_.begin(), index.kept_rows_.end(), 0);
  if (opts.enn_k) {
    const auto keep = enn_filter(space, *opts.enn_k);
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < keep.size(); ++i)
      if (keep[i]) kept.push_back(i);
    if (kept.empty())
      throw ValidationError("editing removed every validation row");
    index.kept_rows_ = std::move(kept);
  }

  const Dataset refs = space.subset(index.kept_rows_);
  index.ref_features_ = refs.features;
  index.ref_labels_ = refs.labels;

  if (refs.present_class_count() < 2) {
    index.class_vanished_ = true;
    index.radii_.assign(refs.n(), 0.0);
  } else {
    index.radii_ = compute_radii(refs);
  }

  index.correctness_.reserve(refs.n());
  std::vector<int> votes(static_cast<std::size_t>(ensemble.size()));
  for (std::size_t r : index.kept_rows_) {
    ensemble.predict_votes(validation.row(r), votes);
    MemberSet correct(ensemble.size());
    for (int m = 0; m < ensemble.size(); ++m)
      if (votes[static_cast<std::size_t>(m)] == validation.labels[r]) correct.set(m);
    index.correctness_.push_back(std::move(correct));
  }
  return index;
}

std::vector<Neighbor> CompetenceIndex::query(std::span<const double> raw_query, int k,
                                             NeighborMode mode) const {
  if (k < 1) throw ValidationError("k must be positive");
  if (raw_query.size() != n_features_) throw ValidationError("query row width mismatch");
  if (reference_count() == 0) throw ValidationError("query against an empty index");

  std::vector<double> scaled_buf;
  std::span<const double> q = raw_query;
  if (use_scaler_) {
    scaled_buf = scaler_.transform(raw_query);
    q = scaled_buf;
  }

  std::vector<std::pair<double, std::size_t>> keyed(reference_count());
  std::vector<double> dist(reference_count());
  for (std::size_t p = 0; p < reference_count(); ++p) {
    dist[p] = euclidean(q, reference_row(p));
    double key = dist[p];
    if (mode == NeighborMode::Adaptive)
      key = radii_[p] > 0.0 ? dist[p] / radii_[p]
                            : std::numeric_limits<double>::infinity();
    keyed[p] = {key, p};
  }

  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), keyed.size());
  std::partial_sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(take), keyed.end());

  std::vector<Neighbor> out(take);
  for (std::size_t r = 0; r < take; ++r) {
    const std::size_t p = keyed[r].second;
    out[r] = Neighbor{p, dist[p],
                      mode == NeighborMode::Adaptive ? keyed[r].first : dist[p] };
  }
  return out;
}

}  // namespace desfa
