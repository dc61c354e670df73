#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "desfa/dataset.hpp"
#include "desfa/stats.hpp"

namespace desfa {

enum class MethodKind { DesFa, AknnKnora, KnoraE, StaticEnsemble, Oracle, SingleBest };

struct Method {
  MethodKind kind;
  int enn_k = 0;  // edit neighborhood size; meaningful for DesFa only

  bool operator==(const Method&) const = default;
};

// Stable identifier, e.g. "des-fa(3)", "aknn-knora-e", "knora-e", "static",
// "oracle", "single-best".
std::string method_id(const Method& m);
Method parse_method(const std::string& id);

struct ExperimentConfig {
  std::string dataset;          // registry name or CSV path
  std::vector<Method> methods;  // empty means the default column set
  int k = 7;
  std::vector<int> enn_ks = {1, 3, 5};  // edit sizes used by the default set
  int ensemble_size = 10;
  int iterations = 20;
  double train_fraction = 0.5;       // ignored when a test file is predefined
  double validation_fraction = 0.25;
  bool stratified = true;
  bool scale_features = true;
  int epochs = 100;
  double learning_rate = 1.0;
  int threads = 1;
  double alpha = 0.05;
  bool include_loo = true;  // nearest-neighbor reference column
  std::uint64_t seed = 42;
};

// Edited variants for each requested edit size, then the unedited adaptive
// scheme, the plain scheme, the static vote, the oracle bound, and the
// single best member.
std::vector<Method> default_methods(const std::vector<int>& enn_ks);

struct MethodResult {
  Method method;
  std::vector<double> accuracies;  // percent, one entry per iteration
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;       // sample standard deviation
  double mean_reductions = 0.0;    // neighborhood shrink steps per query
  std::uint64_t fallback_count = 0;
  std::uint64_t query_count = 0;
  double classify_seconds = 0.0;   // summed over iterations
};

struct PairwiseTest {
  std::string method_a;
  std::string method_b;
  PairedTTestResult test;
};

struct IterationDetail {
  std::uint64_t seed = 0;
  std::size_t train_size = 0;
  std::size_t validation_size = 0;
  std::size_t test_size = 0;
  // Reference rows surviving the edit pass, per edit size.
  std::vector<std::pair<int, std::size_t>> edited_sizes;
};

struct ExperimentResult {
  ExperimentConfig config;  // with methods resolved
  std::string dataset_name;
  std::size_t n_instances = 0;
  std::size_t n_features = 0;
  int n_classes = 0;
  bool predefined_test = false;
  std::vector<MethodResult> methods;
  std::vector<PairwiseTest> t_tests;  // every method pair, when iterations >= 2
  std::vector<IterationDetail> iterations;
  std::vector<std::string> warnings;
  std::optional<double> loo_accuracy_percent;
  double setup_seconds = 0.0;  // splits, training, index builds, vote matrix
};

struct LoadedDataset {
  Dataset data;
  // When set, data is the full training pool and this is the test set;
  // the train/test split step is skipped.
  std::optional<Dataset> predefined_test;
};

// Leave-one-out accuracy (fraction in [0, 1]) of a k nearest neighbor vote
// over ds, with features min-max scaled over the whole of ds.
double leave_one_out_knn(const Dataset& ds, int k);

// One classified test row. The oracle rows carry label -1 (it scores
// rows, it does not produce a label); final_k and reductions are zero for
// methods that skip neighbor search.
struct QueryTrace {
  int iteration = 0;
  std::string method;
  std::size_t query = 0;
  int truth = -1;
  int label = -1;
  bool correct = false;
  int final_k = 0;
  int reductions = 0;
  bool fallback = false;
};
using TraceSink = std::function<void(const QueryTrace&)>;

// Runs the full protocol: repeated splits into train/validation/test, a
// bagged ensemble per iteration, and every requested method scored on the
// same test rows and the same precomputed member votes. When given, sink
// receives one record per (iteration, method, test row), in that order.
ExperimentResult run_experiment(const ExperimentConfig& config, const LoadedDataset& loaded,
                                const TraceSink& sink = nullptr);

}  // namespace desfa
