#include "desfa/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "desfa/competence.hpp"
#include "desfa/ensemble.hpp"
#include "desfa/errors.hpp"
#include "desfa/rng.hpp"
#include "desfa/selection.hpp"
#include "desfa/split.hpp"

namespace desfa {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Runs fn(i) for i in [0, n), split into contiguous blocks across threads.
// fn must only touch state owned by index i.
template <typename Fn>
void for_each_index(std::size_t n, int threads, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(
      n, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::mutex err_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = n * w / workers;
    const std::size_t hi = n * (w + 1) / workers;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

struct IterationScore {
  std::size_t hits = 0;
  std::uint64_t reductions = 0;
  std::uint64_t fallbacks = 0;
  double seconds = 0.0;
};

double mean_of(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_std(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

void validate_config(const ExperimentConfig& cfg, const LoadedDataset& loaded) {
  if (cfg.k < 1) throw ValidationError("k must be positive");
  if (cfg.iterations < 1) throw ValidationError("iterations must be positive");
  if (cfg.ensemble_size < 1) throw ValidationError("ensemble_size must be positive");
  if (cfg.epochs < 1) throw ValidationError("epochs must be positive");
  if (!(cfg.learning_rate > 0.0)) throw ValidationError("learning_rate must be positive");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
  if (cfg.threads < 1) throw ValidationError("threads must be positive");
  if (!loaded.predefined_test && !(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0))
    throw ValidationError("train_fraction must lie in (0, 1)");
  if (!(cfg.validation_fraction > 0.0 && cfg.validation_fraction < 1.0))
    throw ValidationError("validation_fraction must lie in (0, 1)");
  for (int ek : cfg.enn_ks)
    if (ek < 1) throw ValidationError("edit neighborhood sizes must be positive");

  loaded.data.check();
  if (loaded.predefined_test) {
    loaded.predefined_test->check();
    if (loaded.predefined_test->n_features != loaded.data.n_features)
      throw ValidationError("test file feature count differs from the training pool");
    if (loaded.predefined_test->class_tokens != loaded.data.class_tokens)
      throw ValidationError("test file class tokens differ from the training pool");
  }
}

}  // namespace

std::string method_id(const Method& m) {
  switch (m.kind) {
    case MethodKind::DesFa:
      return "des-fa(" + std::to_string(m.enn_k) + ")";
    case MethodKind::AknnKnora:
      return "aknn-knora-e";
    case MethodKind::KnoraE:
      return "knora-e";
    case MethodKind::StaticEnsemble:
      return "static";
    case MethodKind::Oracle:
      return "oracle";
    case MethodKind::SingleBest:
      return "single-best";
  }
  throw ValidationError("unknown method kind");
}

Method parse_method(const std::string& id) {
  if (id == "aknn-knora-e") return {MethodKind::AknnKnora, 0};
  if (id == "knora-e") return {MethodKind::KnoraE, 0};
  if (id == "static") return {MethodKind::StaticEnsemble, 0};
  if (id == "oracle") return {MethodKind::Oracle, 0};
  if (id == "single-best") return {MethodKind::SingleBest, 0};
  if (id.rfind("des-fa(", 0) == 0 && id.back() == ')') {
    const std::string inner = id.substr(7, id.size() - 8);
    if (!inner.empty() && inner.find_first_not_of("0123456789") == std::string::npos) {
      const int ek = std::stoi(inner);
      if (ek >= 1) return {MethodKind::DesFa, ek};
    }
  }
  throw ValidationError("unknown method '" + id +
                        "' (expected des-fa(K), aknn-knora-e, knora-e, static, oracle "
                        "or single-best)");
}

std::vector<Method> default_methods(const std::vector<int>& enn_ks) {
  std::vector<Method> out;
  for (int ek : enn_ks) out.push_back({MethodKind::DesFa, ek});
  out.push_back({MethodKind::AknnKnora, 0});
  out.push_back({MethodKind::KnoraE, 0});
  out.push_back({MethodKind::StaticEnsemble, 0});
  out.push_back({MethodKind::Oracle, 0});
  out.push_back({MethodKind::SingleBest, 0});
  return out;
}

double leave_one_out_knn(const Dataset& ds, int k) {
  ds.check();
  if (k < 1) throw ValidationError("k must be positive");
  if (ds.n() < 2) throw ValidationError("leave-one-out needs at least two rows");

  MinMaxScaler scaler;
  scaler.fit(ds);
  const Dataset scaled = scaler.transform(ds);

  std::size_t hits = 0;
  for (std::size_t i = 0; i < scaled.n(); ++i) {
    const auto neighbors = knn_of_row(scaled, i, k);
    std::vector<int> labels;
    labels.reserve(neighbors.size());
    for (std::size_t j : neighbors) labels.push_back(scaled.labels[j]);
    if (majority_vote(labels, scaled.n_classes()) == scaled.labels[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(scaled.n());
}

ExperimentResult run_experiment(const ExperimentConfig& config, const LoadedDataset& loaded,
                                const TraceSink& sink) {
  validate_config(config, loaded);

  ExperimentResult result;
  result.config = config;
  if (result.config.methods.empty())
    result.config.methods = default_methods(config.enn_ks);
  const std::vector<Method>& methods = result.config.methods;

  result.dataset_name = loaded.data.name;
  result.n_features = loaded.data.n_features;
  result.n_classes = loaded.data.n_classes();
  result.n_instances =
      loaded.data.n() + (loaded.predefined_test ? loaded.predefined_test->n() : 0);
  result.predefined_test = loaded.predefined_test.has_value();

  std::vector<int> edit_sizes;
  for (const Method& m : methods)
    if (m.kind == MethodKind::DesFa) edit_sizes.push_back(m.enn_k);
  std::sort(edit_sizes.begin(), edit_sizes.end());
  edit_sizes.erase(std::unique(edit_sizes.begin(), edit_sizes.end()), edit_sizes.end());

  const bool need_plain_index = std::any_of(methods.begin(), methods.end(), [](const Method& m) {
    return m.kind == MethodKind::KnoraE || m.kind == MethodKind::AknnKnora;
  });

  std::vector<IterationScore> totals(methods.size());
  std::vector<MethodResult> method_results(methods.size());
  for (std::size_t i = 0; i < methods.size(); ++i) method_results[i].method = methods[i];

  for (int it = 0; it < config.iterations; ++it) {
    const std::uint64_t iter_seed = derive_seed(config.seed, 0xA110 + static_cast<std::uint64_t>(it));
    const auto setup_start = Clock::now();

    Dataset pool_storage;
    Dataset test_storage;
    const Dataset* pool = nullptr;
    const Dataset* test = nullptr;
    if (loaded.predefined_test) {
      pool = &loaded.data;
      test = &*loaded.predefined_test;
    } else {
      const auto tt = split_train_test(loaded.data, config.train_fraction, config.stratified,
                                       derive_seed(iter_seed, 1));
      pool_storage = loaded.data.subset(tt.train);
      test_storage = loaded.data.subset(tt.test);
      pool = &pool_storage;
      test = &test_storage;
    }

    const auto tv = split_train_validation(*pool, config.validation_fraction, config.stratified,
                                           derive_seed(iter_seed, 2));
    if (tv.validation.empty())
      throw ValidationError("validation split came out empty; the dataset is too small "
                            "for this validation_fraction");
    const Dataset train = pool->subset(tv.train);
    const Dataset validation = pool->subset(tv.validation);

    MinMaxScaler distance_scaler;
    IndexOptions base_opts;
    if (config.scale_features) {
      distance_scaler.fit(train);
      base_opts.scaler = &distance_scaler;
    }

    EnsembleConfig ens_cfg;
    ens_cfg.ensemble_size = config.ensemble_size;
    ens_cfg.base.epochs = config.epochs;
    ens_cfg.base.learning_rate = config.learning_rate;
    ens_cfg.base.scale_features = config.scale_features;
    BaggingEnsemble ensemble;
    ensemble.fit(train, ens_cfg, derive_seed(iter_seed, 3));

    const std::size_t n_test = test->n();
    const std::size_t L = static_cast<std::size_t>(ensemble.size());
    std::vector<int> test_votes(n_test * L);
    for_each_index(n_test, config.threads, [&](std::size_t q) {
      ensemble.predict_votes(test->row(q), {test_votes.data() + q * L, L});
    });

    std::optional<CompetenceIndex> plain_index;
    if (need_plain_index)
      plain_index = CompetenceIndex::build(validation, ensemble, base_opts);
    std::map<int, CompetenceIndex> edited_index;
    for (int ek : edit_sizes) {
      IndexOptions opts = base_opts;
      opts.enn_k = ek;
      edited_index.emplace(ek, CompetenceIndex::build(validation, ensemble, opts));
    }

    IterationDetail detail;
    detail.seed = iter_seed;
    detail.train_size = train.n();
    detail.validation_size = validation.n();
    detail.test_size = n_test;
    for (const auto& [ek, idx] : edited_index) {
      detail.edited_sizes.emplace_back(ek, idx.reference_count());
      if (idx.class_vanished())
        result.warnings.push_back("iteration " + std::to_string(it) + ": edit k=" +
                                  std::to_string(ek) +
                                  " left a single class in the reference set");
    }
    result.iterations.push_back(std::move(detail));
    result.setup_seconds += seconds_since(setup_start);

    // The oracle is scored regardless of the method list: every vote-based
    // label can only be right when some member is right, so it must
    // dominate and that is asserted below.
    std::vector<std::uint8_t> oracle_correct(n_test);
    for (std::size_t q = 0; q < n_test; ++q) {
      const int truth = test->labels[q];
      const int* votes = test_votes.data() + q * L;
      oracle_correct[q] = std::any_of(votes, votes + L, [&](int v) { return v == truth; }) ? 1 : 0;
    }

    int best_member = -1;
    if (std::any_of(methods.begin(), methods.end(),
                    [](const Method& m) { return m.kind == MethodKind::SingleBest; })) {
      double best_acc = -1.0;
      for (int m = 0; m < ensemble.size(); ++m) {
        const double acc = ensemble.member(m).accuracy(validation);
        if (acc > best_acc) {
          best_acc = acc;
          best_member = m;
        }
      }
    }

    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      const Method& method = methods[mi];
      std::vector<std::uint8_t> correct(n_test, 0);
      std::vector<std::uint32_t> reductions(n_test, 0);
      std::vector<std::uint8_t> fallbacks(n_test, 0);
      std::vector<int> labels(n_test, -1);
      std::vector<int> final_ks(n_test, 0);

      const auto t0 = Clock::now();
      switch (method.kind) {
        case MethodKind::DesFa:
        case MethodKind::AknnKnora:
        case MethodKind::KnoraE: {
          const CompetenceIndex& index = method.kind == MethodKind::DesFa
                                             ? edited_index.at(method.enn_k)
                                             : *plain_index;
          const NeighborMode mode =
              method.kind == MethodKind::KnoraE ? NeighborMode::Plain : NeighborMode::Adaptive;
          for_each_index(n_test, config.threads, [&](std::size_t q) {
            const QueryResult qr =
                classify_query(ensemble, index, mode, test->row(q), config.k,
                               {test_votes.data() + q * L, L});
            labels[q] = qr.label;
            correct[q] = qr.label == test->labels[q] ? 1 : 0;
            reductions[q] = static_cast<std::uint32_t>(qr.outcome.reductions);
            fallbacks[q] = qr.outcome.fallback_used ? 1 : 0;
            final_ks[q] = qr.outcome.final_k;
          });
          break;
        }
        case MethodKind::StaticEnsemble:
          for (std::size_t q = 0; q < n_test; ++q) {
            labels[q] = majority_vote({test_votes.data() + q * L, L}, ensemble.n_classes());
            correct[q] = labels[q] == test->labels[q] ? 1 : 0;
          }
          break;
        case MethodKind::Oracle:
          correct = oracle_correct;
          break;
        case MethodKind::SingleBest:
          for (std::size_t q = 0; q < n_test; ++q) {
            labels[q] = test_votes[q * L + static_cast<std::size_t>(best_member)];
            correct[q] = labels[q] == test->labels[q] ? 1 : 0;
          }
          break;
      }
      const double elapsed = seconds_since(t0);

      IterationScore score;
      score.seconds = elapsed;
      for (std::size_t q = 0; q < n_test; ++q) {
        if (correct[q] && !oracle_correct[q])
          throw std::logic_error("oracle bound violated by " + method_id(method));
        score.hits += correct[q];
        score.reductions += reductions[q];
        score.fallbacks += fallbacks[q];
      }

      if (sink) {
        for (std::size_t q = 0; q < n_test; ++q) {
          QueryTrace tr;
          tr.iteration = it;
          tr.method = method_id(method);
          tr.query = q;
          tr.truth = test->labels[q];
          tr.label = labels[q];
          tr.correct = correct[q] != 0;
          tr.final_k = final_ks[q];
          tr.reductions = static_cast<int>(reductions[q]);
          tr.fallback = fallbacks[q] != 0;
          sink(tr);
        }
      }

      totals[mi].hits += score.hits;
      totals[mi].reductions += score.reductions;
      totals[mi].fallbacks += score.fallbacks;
      totals[mi].seconds += score.seconds;
      method_results[mi].accuracies.push_back(100.0 * static_cast<double>(score.hits) /
                                              static_cast<double>(n_test));
      method_results[mi].query_count += n_test;
    }
  }

  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    MethodResult& mr = method_results[mi];
    mr.mean_accuracy = mean_of(mr.accuracies);
    mr.std_accuracy = sample_std(mr.accuracies, mr.mean_accuracy);
    mr.mean_reductions = mr.query_count == 0
                             ? 0.0
                             : static_cast<double>(totals[mi].reductions) /
                                   static_cast<double>(mr.query_count);
    mr.fallback_count = totals[mi].fallbacks;
    mr.classify_seconds = totals[mi].seconds;
  }
  result.methods = std::move(method_results);

  if (config.iterations >= 2) {
    for (std::size_t i = 0; i < methods.size(); ++i) {
      for (std::size_t j = i + 1; j < methods.size(); ++j) {
        PairwiseTest pt;
        pt.method_a = method_id(methods[i]);
        pt.method_b = method_id(methods[j]);
        pt.test = paired_t_test(result.methods[i].accuracies, result.methods[j].accuracies,
                                config.alpha);
        result.t_tests.push_back(std::move(pt));
      }
    }
  }

  if (config.include_loo) {
    Dataset merged = loaded.data;
    if (loaded.predefined_test) {
      merged.features.insert(merged.features.end(), loaded.predefined_test->features.begin(),
                             loaded.predefined_test->features.end());
      merged.labels.insert(merged.labels.end(), loaded.predefined_test->labels.begin(),
                           loaded.predefined_test->labels.end());
    }
    result.loo_accuracy_percent = 100.0 * leave_one_out_knn(merged, config.k);
  }

  return result;
}

}  // namespace desfa
