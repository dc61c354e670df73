#include "desfa/synthetic.hpp"

#include <cmath>
#include <numbers>

#include "desfa/errors.hpp"
#include "desfa/rng.hpp"

namespace desfa {

namespace {

Dataset make_plane_dataset(std::string name, std::size_t n0, std::size_t n1) {
  Dataset ds;
  ds.name = std::move(name);
  ds.n_features = 2;
  ds.class_tokens = {"0", "1"};
  ds.features.reserve((n0 + n1) * 2);
  ds.labels.reserve(n0 + n1);
  ds.labels.assign(n0, 0);
  ds.labels.insert(ds.labels.end(), n1, 1);
  return ds;
}

}  // namespace

Dataset generate_two_gaussians(std::size_t n_per_class,
                               std::array<double, 2> mu0,
                               std::array<double, 2> mu1,
                               double variance,
                               std::uint64_t seed) {
  if (n_per_class == 0) throw ValidationError("n_per_class must be positive");
  if (!(variance > 0.0)) throw ValidationError("variance must be positive");

  Dataset ds = make_plane_dataset("two-gaussians", n_per_class, n_per_class);
  Rng rng(seed);
  const double sd = std::sqrt(variance);
  const std::array<std::array<double, 2>, 2> mu = {mu0, mu1};
  for (int cls = 0; cls < 2; ++cls) {
    for (std::size_t i = 0; i < n_per_class; ++i) {
      ds.features.push_back(mu[cls][0] + sd * normal(rng));
      ds.features.push_back(mu[cls][1] + sd * normal(rng));
    }
  }
  return ds;
}

Dataset generate_banana(std::size_t n_total, double noise_std, std::uint64_t seed) {
  if (n_total < 2) throw ValidationError("n_total must be at least 2");
  if (!(noise_std >= 0.0)) throw ValidationError("noise_std must be non-negative");

  const std::size_t n1 = n_total / 2;
  const std::size_t n0 = n_total - n1;
  Dataset ds = make_plane_dataset("banana", n0, n1);
  Rng rng(seed);
  const double radius = 5.0;
  const std::size_t counts[2] = {n0, n1};
  for (int cls = 0; cls < 2; ++cls) {
    for (std::size_t i = 0; i < counts[cls]; ++i) {
      const double theta =
          -std::numbers::pi / 2.0 + std::numbers::pi * unit_open(rng);
      double x = radius * std::cos(theta) + noise_std * normal(rng);
      double y = radius * std::sin(theta) + noise_std * normal(rng);
      if (cls == 1) {
        // Rotate by pi, then shift so the arcs interlock.
        x = -x + 2.5;
        y = -y + 2.5;
      }
      ds.features.push_back(x);
      ds.features.push_back(y);
    }
  }
  return ds;
}

Dataset generate_lithuanian(std::size_t n_total, std::uint64_t seed) {
  if (n_total < 2) throw ValidationError("n_total must be at least 2");

  const std::size_t n1 = n_total / 2;
  const std::size_t n0 = n_total - n1;
  Dataset ds = make_plane_dataset("lithuanian", n0, n1);
  Rng rng(seed);
  const double noise_std = 0.32;
  const std::size_t counts[2] = {n0, n1};
  for (int cls = 0; cls < 2; ++cls) {
    for (std::size_t i = 0; i < counts[cls]; ++i) {
      const double t = -3.8 + 7.6 * unit_open(rng);
      const double base = 0.15 * t * t - 1.5;
      const double x = t + noise_std * normal(rng);
      const double y = (cls == 0 ? base : -base) + noise_std * normal(rng);
      ds.features.push_back(x);
      ds.features.push_back(y);
    }
  }
  return ds;
}

}  // namespace desfa
