#pragma once

#include <cstdint>
#include <vector>

#include "desfa/dataset.hpp"

namespace desfa {

struct TrainTestSplit {
  std::vector<std::size_t> train;  // indices into the source dataset
  std::vector<std::size_t> test;
};

struct TrainValidationSplit {
  std::vector<std::size_t> train;       // indices into the training pool
  std::vector<std::size_t> validation;
};

// Random train/test partition. The train side takes ceil(train_fraction * n)
// instances; stratified mode applies that rounding per class and keeps at
// least one instance of every present class on each side when a class has
// two or more members.
TrainTestSplit split_train_test(const Dataset& ds, double train_fraction,
                                bool stratified, std::uint64_t seed);

// Random split of a training pool into train/validation. The validation side
// takes floor(validation_fraction * n) instances (per class when stratified).
TrainValidationSplit split_train_validation(const Dataset& pool,
                                            double validation_fraction,
                                            bool stratified, std::uint64_t seed);

}  // namespace desfa
