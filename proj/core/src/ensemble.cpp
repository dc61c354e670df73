#include "desfa/ensemble.hpp"

#include <string>

#include "desfa/errors.hpp"

namespace desfa {

namespace {
constexpr int kBootstrapRetries = 10;
constexpr std::uint64_t kBootstrapStream = 0xB000;
constexpr std::uint64_t kTrainStream = 0xF17;
}  // namespace

std::vector<std::size_t> bootstrap_sample(std::size_t n, Rng& rng) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<std::size_t>(bounded(rng, n));
  return idx;
}

int majority_vote(std::span<const int> votes, int n_classes) {
  if (votes.empty()) throw ValidationError("majority vote over zero votes");
  std::vector<int> counts(static_cast<std::size_t>(n_classes), 0);
  for (int v : votes) {
    if (v < 0 || v >= n_classes) throw ValidationError("vote out of class range");
    counts[static_cast<std::size_t>(v)]++;
  }
  int best = 0;
  for (int c = 1; c < n_classes; ++c)
    if (counts[static_cast<std::size_t>(c)] > counts[static_cast<std::size_t>(best)]) best = c;
  // Ties resolve to the earliest member voting for a tied class.
  for (int v : votes)
    if (counts[static_cast<std::size_t>(v)] == counts[static_cast<std::size_t>(best)]) return v;
  return best;
}

void BaggingEnsemble::fit(const Dataset& ds, const EnsembleConfig& cfg, std::uint64_t seed) {
  ds.check();
  if (cfg.ensemble_size < 1) throw ValidationError("ensemble_size must be positive");
  if (ds.present_class_count() < 2)
    throw ValidationError("training pool holds a single class; bagging needs at least two");

  n_classes_ = ds.n_classes();
  members_.assign(static_cast<std::size_t>(cfg.ensemble_size), Perceptron{});
  bootstrap_seeds_.clear();
  bootstrap_seeds_.reserve(members_.size());

  for (int m = 0; m < cfg.ensemble_size; ++m) {
    const std::uint64_t member_seed = derive_seed(seed, static_cast<std::uint64_t>(m));

    Dataset boot;
    bool drawn = false;
    for (int r = 0; r <= kBootstrapRetries; ++r) {
      const std::uint64_t boot_seed =
          derive_seed(member_seed, kBootstrapStream + static_cast<std::uint64_t>(r));
      Rng rng(boot_seed);
      const auto idx = bootstrap_sample(ds.n(), rng);
      boot = ds.subset(idx);
      if (boot.present_class_count() >= 2) {
        bootstrap_seeds_.push_back(boot_seed);
        drawn = true;
        break;
      }
    }
    if (!drawn)
      throw ValidationError("member " + std::to_string(m) +
                            ": every bootstrap draw collapsed to one class");

    members_[static_cast<std::size_t>(m)].fit(boot, cfg.base,
                                              derive_seed(member_seed, kTrainStream));
  }
}

void BaggingEnsemble::predict_votes(std::span<const double> row, std::span<int> votes_out) const {
  if (members_.empty()) throw ValidationError("ensemble used before fit");
  if (votes_out.size() != members_.size()) throw ValidationError("votes buffer size mismatch");
  for (std::size_t m = 0; m < members_.size(); ++m) votes_out[m] = members_[m].predict(row);
}

std::vector<int> BaggingEnsemble::predict_votes(std::span<const double> row) const {
  std::vector<int> votes(members_.size());
  predict_votes(row, votes);
  return votes;
}

int BaggingEnsemble::predict(std::span<const double> row) const {
  return majority_vote(predict_votes(row), n_classes_);
}

double BaggingEnsemble::accuracy(const Dataset& ds) const {
  if (ds.n() == 0) throw ValidationError("accuracy on empty dataset");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ds.n(); ++i)
    if (predict(ds.row(i)) == ds.labels[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(ds.n());
}

}  // namespace desfa
