#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "desfa/dataset.hpp"
#include "desfa/scaler.hpp"

namespace desfa {

struct PerceptronConfig {
  int epochs = 100;
  double learning_rate = 1.0;
  // When set, the model fits a min-max scaler on its own training data and
  // runs every later input through it.
  bool scale_features = true;
};

// Multi-class perceptron: one linear score per class, argmax prediction
// (score ties go to the smaller class index). Training presents the data in
// a reshuffled order each epoch and applies the classic mistake-driven
// update; it stops early once an epoch is mistake free.
class Perceptron {
 public:
  void fit(const Dataset& ds, const PerceptronConfig& cfg, std::uint64_t seed);

  // Takes a row in the original feature space; scaling happens inside.
  int predict(std::span<const double> row) const;
  std::vector<int> predict(const Dataset& ds) const;

  double accuracy(const Dataset& ds) const;

  bool fitted() const { return n_classes_ > 0; }
  int n_classes() const { return n_classes_; }
  std::size_t n_features() const { return n_features_; }

  // Row c holds the weights for class c; the last entry is the bias.
  std::span<const double> class_weights(int c) const {
    return {weights_.data() + static_cast<std::size_t>(c) * (n_features_ + 1),
            n_features_ + 1};
  }

 private:
  double score(std::span<const double> scaled, int c) const;

  std::vector<double> weights_;
  MinMaxScaler scaler_;
  bool scale_ = false;
  int n_classes_ = 0;
  std::size_t n_features_ = 0;
};

}  // namespace desfa
