#include <cmath>
#include <vector>

#include "desfa/errors.hpp"
#include "desfa/perceptron.hpp"
#include "desfa/rng.hpp"
#include "desfa/synthetic.hpp"
#include "doctest.h"

namespace {

// Three tight, well separated clusters in the plane.
desfa::Dataset three_clusters(std::size_t per_class, std::uint64_t seed) {
  desfa::Dataset ds;
  ds.name = "clusters";
  ds.n_features = 2;
  ds.class_tokens = {"0", "1", "2"};
  const double cx[3] = {0, 10, 0};
  const double cy[3] = {0, 0, 10};
  desfa::Rng rng(seed);
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < per_class; ++i) {
      ds.features.push_back(cx[c] + 0.3 * desfa::normal(rng));
      ds.features.push_back(cy[c] + 0.3 * desfa::normal(rng));
      ds.labels.push_back(c);
    }
  return ds;
}

}  // namespace

TEST_CASE("perceptron separates well separated binary data") {
  const desfa::Dataset ds = desfa::generate_two_gaussians(100, {0, 0}, {8, 0}, 0.25, 31);
  desfa::Perceptron p;
  p.fit(ds, {.epochs = 200, .learning_rate = 1.0, .scale_features = true}, 1);
  CHECK(p.fitted());
  CHECK(p.n_classes() == 2);
  CHECK(p.accuracy(ds) == 1.0);
}

TEST_CASE("perceptron handles more than two classes") {
  const desfa::Dataset ds = three_clusters(40, 8);
  desfa::Perceptron p;
  p.fit(ds, {}, 2);
  CHECK(p.accuracy(ds) == 1.0);
  const auto preds = p.predict(ds);
  CHECK(preds.size() == ds.n());
  for (std::size_t i = 0; i < ds.n(); ++i) CHECK(preds[i] == ds.labels[i]);
}

TEST_CASE("training is seed-deterministic") {
  const desfa::Dataset ds = desfa::generate_two_gaussians(60, {0, 0}, {2, 1}, 1.5, 4);
  desfa::Perceptron a, b, c;
  a.fit(ds, {}, 99);
  b.fit(ds, {}, 99);
  c.fit(ds, {}, 100);

  for (int cls = 0; cls < 2; ++cls) {
    const auto wa = a.class_weights(cls);
    const auto wb = b.class_weights(cls);
    REQUIRE(wa.size() == wb.size());
    for (std::size_t i = 0; i < wa.size(); ++i) CHECK(wa[i] == wb[i]);
  }

  bool any_diff = false;
  for (int cls = 0; cls < 2 && !any_diff; ++cls) {
    const auto wa = a.class_weights(cls);
    const auto wc = c.class_weights(cls);
    for (std::size_t i = 0; i < wa.size(); ++i)
      if (wa[i] != wc[i]) any_diff = true;
  }
  CHECK(any_diff);  // a different shuffle order leaves different weights
}

TEST_CASE("unscaled training works when features are already commensurate") {
  // Class decided by a threshold on one feature; the bias has to do real
  // work here.
  desfa::Dataset ds;
  ds.name = "th";
  ds.n_features = 1;
  ds.class_tokens = {"lo", "hi"};
  for (double x : {0.0, 0.1, 0.2, 0.3, 0.4}) {
    ds.features.push_back(x);
    ds.labels.push_back(0);
  }
  for (double x : {0.8, 0.9, 1.0, 1.1, 1.2}) {
    ds.features.push_back(x);
    ds.labels.push_back(1);
  }
  desfa::Perceptron p;
  p.fit(ds, {.epochs = 500, .learning_rate = 0.5, .scale_features = false}, 3);
  CHECK(p.accuracy(ds) == 1.0);
}

TEST_CASE("weight layout exposes one row per class plus bias") {
  const desfa::Dataset ds = three_clusters(10, 1);
  desfa::Perceptron p;
  p.fit(ds, {}, 5);
  for (int c = 0; c < 3; ++c) CHECK(p.class_weights(c).size() == 3);  // two features + bias
}

TEST_CASE("perceptron misuse throws") {
  desfa::Perceptron p;
  CHECK_THROWS_AS(p.predict(std::vector<double>{1.0, 2.0}), desfa::ValidationError);

  const desfa::Dataset ds = desfa::generate_two_gaussians(20, {0, 0}, {4, 0}, 1.0, 6);
  CHECK_THROWS_AS(p.fit(ds, {.epochs = 0}, 1), desfa::ValidationError);
  CHECK_THROWS_AS(p.fit(ds, {.epochs = 10, .learning_rate = 0.0}, 1), desfa::ValidationError);

  p.fit(ds, {}, 1);
  CHECK_THROWS_AS(p.predict(std::vector<double>{1.0}), desfa::ValidationError);
}
