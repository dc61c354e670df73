#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "desfa/dataset.hpp"
#include "desfa/ensemble.hpp"
#include "desfa/scaler.hpp"

namespace desfa {

// Fixed-width bitset over ensemble members.
class MemberSet {
 public:
  MemberSet() = default;
  explicit MemberSet(int n_members)
      : n_members_(n_members),
        words_(static_cast<std::size_t>((n_members + 63) / 64), 0) {}

  int size() const { return n_members_; }
  void set(int i) { words_[word(i)] |= bit(i); }
  void reset(int i) { words_[word(i)] &= ~bit(i); }
  bool test(int i) const { return (words_[word(i)] & bit(i)) != 0; }

  int count() const {
    int c = 0;
    for (auto w : words_) c += __builtin_popcountll(w);
    return c;
  }
  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }

  MemberSet& operator&=(const MemberSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }

  bool operator==(const MemberSet&) const = default;

  // Set member indices, ascending.
  std::vector<int> members() const {
    std::vector<int> out;
    for (int i = 0; i < n_members_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

 private:
  static std::size_t word(int i) { return static_cast<std::size_t>(i) >> 6; }
  static std::uint64_t bit(int i) { return std::uint64_t{1} << (i & 63); }

  int n_members_ = 0;
  std::vector<std::uint64_t> words_;
};

double euclidean(std::span<const double> a, std::span<const double> b);

// Indices of the k rows of ds nearest to row i, self excluded, ranked by
// (distance, row index).
std::vector<std::size_t> knn_of_row(const Dataset& ds, std::size_t i, int k);

// Wilson's editing: every row is classified by its k nearest peers in the
// unedited set; rows the vote gets wrong are all dropped at once. Returns a
// keep flag per row.
std::vector<std::uint8_t> enn_filter(const Dataset& ds, int k);

// Per-row radius: distance to the nearest row of a different class. Throws
// ValidationError when only one class is present. A radius of 0 means a
// different-class row coincides with this one; queries treat the scaled
// distance to such a row as infinite.
std::vector<double> compute_radii(const Dataset& ds);

struct Neighbor {
  std::size_t ref_pos;  // position in the index's reference set
  double distance;      // Euclidean, in the index's distance space
  double effective;     // distance / reference radius (adaptive ranking key)
};

enum class NeighborMode { Plain, Adaptive };

struct IndexOptions {
  // Runs the edit pass over the validation set when set.
  std::optional<int> enn_k;
  // Distance-space transform for validation rows and queries. The index
  // copies the scaler; nullptr means distances use the original space.
  const MinMaxScaler* scaler = nullptr;
};

// Precomputed region-of-competence state over a validation set: the
// (optionally edited) reference rows in distance space, each row's radius,
// and the set of ensemble members that classify it correctly.
class CompetenceIndex {
 public:
  static CompetenceIndex build(const Dataset& validation, const BaggingEnsemble& ensemble,
                               const IndexOptions& opts);

  std::size_t reference_count() const { return ref_labels_.size(); }
  int n_members() const { return n_members_; }
  int n_classes() const { return n_classes_; }

  // True when editing (or a degenerate validation set) left fewer than two
  // classes; radii are then all zero and adaptive ranking degenerates to
  // row order.
  bool class_vanished() const { return class_vanished_; }

  // Source validation rows the reference set kept, ascending.
  const std::vector<std::size_t>& kept_rows() const { return kept_rows_; }

  int reference_label(std::size_t ref_pos) const { return ref_labels_[ref_pos]; }
  double reference_radius(std::size_t ref_pos) const { return radii_[ref_pos]; }
  const MemberSet& correct_members(std::size_t ref_pos) const { return correctness_[ref_pos]; }
  std::span<const double> reference_row(std::size_t ref_pos) const {
    return {ref_features_.data() + ref_pos * n_features_, n_features_};
  }

  // k nearest reference rows to a query given in the original feature
  // space. Plain mode ranks by (distance, position); adaptive mode by
  // (distance / radius, position), with zero-radius rows ranked last.
  // k is clamped to the reference count.
  std::vector<Neighbor> query(std::span<const double> raw_query, int k,
                              NeighborMode mode) const;

 private:
  std::vector<double> ref_features_;  // distance space, row-major
  std::size_t n_features_ = 0;
  std::vector<int> ref_labels_;
  std::vector<double> radii_;
  std::vector<MemberSet> correctness_;
  std::vector<std::size_t> kept_rows_;
  MinMaxScaler scaler_;
  bool use_scaler_ = false;
  bool class_vanished_ = false;
  int n_members_ = 0;
  int n_classes_ = 0;
};

}  // namespace desfa
