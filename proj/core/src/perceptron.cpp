#include "desfa/perceptron.hpp"

#include <numeric>

#include "desfa/errors.hpp"
#include "desfa/rng.hpp"

namespace desfa {

double Perceptron::score(std::span<const double> scaled, int c) const {
  auto w = class_weights(c);
  double s = w[n_features_];  // bias
  for (std::size_t f = 0; f < n_features_; ++f) s += w[f] * scaled[f];
  return s;
}

void Perceptron::fit(const Dataset& ds, const PerceptronConfig& cfg, std::uint64_t seed) {
  ds.check();
  if (cfg.epochs < 1) throw ValidationError("epochs must be positive");
  if (!(cfg.learning_rate > 0.0)) throw ValidationError("learning_rate must be positive");

  n_classes_ = ds.n_classes();
  n_features_ = ds.n_features;
  scale_ = cfg.scale_features;
  weights_.assign(static_cast<std::size_t>(n_classes_) * (n_features_ + 1), 0.0);

  Dataset scaled_ds;
  const Dataset* train = &ds;
  if (scale_) {
    scaler_.fit(ds);
    scaled_ds = scaler_.transform(ds);
    train = &scaled_ds;
  }

  Rng rng(seed);
  std::vector<std::size_t> order(train->n());
  std::iota(order.begin(), order.end(), 0);

  auto update = [&](std::span<const double> x, int cls, double sign) {
    double* w = weights_.data() + static_cast<std::size_t>(cls) * (n_features_ + 1);
    const double step = sign * cfg.learning_rate;
    for (std::size_t f = 0; f < n_features_; ++f) w[f] += step * x[f];
    w[n_features_] += step;
  };

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    shuffle(order, rng);
    std::size_t mistakes = 0;
    for (std::size_t i : order) {
      auto x = train->row(i);
      int best = 0;
      double best_score = score(x, 0);
      for (int c = 1; c < n_classes_; ++c) {
        const double s = score(x, c);
        if (s > best_score) {
          best_score = s;
          best = c;
        }
      }
      const int y = train->labels[i];
      if (best != y) {
        update(x, y, +1.0);
        update(x, best, -1.0);
        ++mistakes;
      }
    }
    if (mistakes == 0) break;
  }
}

int Perceptron::predict(std::span<const double> row) const {
  if (!fitted()) throw ValidationError("perceptron used before fit");
  if (row.size() != n_features_) throw ValidationError("perceptron row width mismatch");

  std::vector<double> scaled_buf;
  std::span<const double> x = row;
  if (scale_) {
    scaled_buf = scaler_.transform(row);
    x = scaled_buf;
  }
  int best = 0;
  double best_score = score(x, 0);
  for (int c = 1; c < n_classes_; ++c) {
    const double s = score(x, c);
    if (s > best_score) {
      best_score = s;
      best = c;
    }
  }
  return best;
}

std::vector<int> Perceptron::predict(const Dataset& ds) const {
  std::vector<int> out;
  out.reserve(ds.n());
  for (std::size_t i = 0; i < ds.n(); ++i) out.push_back(predict(ds.row(i)));
  return out;
}

double Perceptron::accuracy(const Dataset& ds) const {
  if (ds.n() == 0) throw ValidationError("accuracy on empty dataset");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ds.n(); ++i)
    if (predict(ds.row(i)) == ds.labels[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(ds.n());
}

}  // namespace desfa
