#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "desfa/perceptron.hpp"
#include "desfa/rng.hpp"

namespace desfa {

struct EnsembleConfig {
  int ensemble_size = 10;
  PerceptronConfig base;
};

// n index draws with replacement from [0, n).
std::vector<std::size_t> bootstrap_sample(std::size_t n, Rng& rng);

// Majority vote over per-member predictions. A count tie is broken by the
// vote of the lowest-index member among the tied classes.
int majority_vote(std::span<const int> votes, int n_classes);

// Bagged perceptrons: each member trains on its own bootstrap of the
// training pool (a bootstrap that collapses to one class is redrawn, a
// bounded number of times) and carries its own feature scaler.
class BaggingEnsemble {
 public:
  void fit(const Dataset& ds, const EnsembleConfig& cfg, std::uint64_t seed);

  int size() const { return static_cast<int>(members_.size()); }
  int n_classes() const { return n_classes_; }
  const Perceptron& member(int m) const { return members_[static_cast<std::size_t>(m)]; }

  // One vote per member, in member order. Rows are in the original space.
  void predict_votes(std::span<const double> row, std::span<int> votes_out) const;
  std::vector<int> predict_votes(std::span<const double> row) const;

  // Majority vote of all members.
  int predict(std::span<const double> row) const;

  double accuracy(const Dataset& ds) const;

  // Seed that produced each member's accepted bootstrap.
  const std::vector<std::uint64_t>& bootstrap_seeds() const { return bootstrap_seeds_; }

 private:
  std::vector<Perceptron> members_;
  std::vector<std::uint64_t> bootstrap_seeds_;
  int n_classes_ = 0;
};

}  // namespace desfa
