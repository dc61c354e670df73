#include "desfa/split.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "desfa/errors.hpp"
#include "desfa/rng.hpp"

namespace desfa {

namespace {

std::vector<std::vector<std::size_t>> indices_by_class(const Dataset& ds) {
  std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(ds.n_classes()));
  for (std::size_t i = 0; i < ds.n(); ++i)
    by_class[static_cast<std::size_t>(ds.labels[i])].push_back(i);
  return by_class;
}

void sort_split(std::vector<std::size_t>& a, std::vector<std::size_t>& b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
}

}  // namespace

TrainTestSplit split_train_test(const Dataset& ds, double train_fraction,
                                bool stratified, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ValidationError("train_fraction must lie in (0, 1)");
  ds.check();

  TrainTestSplit out;
  Rng rng(seed);

  auto take_for = [&](std::size_t count) {
    auto take = static_cast<std::size_t>(std::ceil(train_fraction * static_cast<double>(count)));
    if (count >= 2) take = std::clamp<std::size_t>(take, 1, count - 1);
    return std::min(take, count);
  };

  if (stratified) {
    for (auto& members : indices_by_class(ds)) {
      if (members.empty()) continue;
      shuffle(members, rng);
      const std::size_t take = take_for(members.size());
      out.train.insert(out.train.end(), members.begin(), members.begin() + take);
      out.test.insert(out.test.end(), members.begin() + take, members.end());
    }
  } else {
    std::vector<std::size_t> all(ds.n());
    std::iota(all.begin(), all.end(), 0);
    shuffle(all, rng);
    const std::size_t take = take_for(all.size());
    out.train.assign(all.begin(), all.begin() + take);
    out.test.assign(all.begin() + take, all.end());
  }
  sort_split(out.train, out.test);
  return out;
}

TrainValidationSplit split_train_validation(const Dataset& pool,
                                            double validation_fraction,
                                            bool stratified, std::uint64_t seed) {
  if (!(validation_fraction >= 0.0 && validation_fraction < 1.0))
    throw ValidationError("validation_fraction must lie in [0, 1)");
  pool.check();

  TrainValidationSplit out;
  Rng rng(seed);

  auto take_for = [&](std::size_t count) {
    auto take = static_cast<std::size_t>(std::floor(validation_fraction * static_cast<double>(count)));
    // The train side must never lose a class entirely.
    return count == 0 ? std::size_t{0} : std::min(take, count - 1);
  };

  if (stratified) {
    for (auto& members : indices_by_class(pool)) {
      if (members.empty()) continue;
      shuffle(members, rng);
      const std::size_t take = take_for(members.size());
      out.validation.insert(out.validation.end(), members.begin(), members.begin() + take);
      out.train.insert(out.train.end(), members.begin() + take, members.end());
    }
  } else {
    std::vector<std::size_t> all(pool.n());
    std::iota(all.begin(), all.end(), 0);
    shuffle(all, rng);
    const std::size_t take = take_for(all.size());
    out.validation.assign(all.begin(), all.begin() + take);
    out.train.assign(all.begin() + take, all.end());
  }
  sort_split(out.train, out.validation);
  return out;
}

}  // namespace desfa
