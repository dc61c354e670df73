#include "desfa/selection.hpp"

#include "desfa/errors.hpp"

namespace desfa {

namespace {

// The intersection only shrinks as the prefix grows, so the longest prefix
// with a non-empty intersection is found in one forward pass.
template <typename SetAt>
SelectionOutcome eliminate_prefix(int n_members, std::size_t n_ranks, SetAt&& set_at) {
  if (n_ranks == 0) throw ValidationError("selection over an empty neighborhood");

  SelectionOutcome out;
  out.initial_k = static_cast<int>(n_ranks);

  MemberSet acc(n_members);
  for (int m = 0; m < n_members; ++m) acc.set(m);
  int best_k = 0;
  MemberSet best;
  for (std::size_t j = 0; j < n_ranks; ++j) {
    acc &= set_at(j);
    if (!acc.any()) break;
    best_k = static_cast<int>(j) + 1;
    best = acc;
  }

  if (best_k == 0) {
    out.selected = MemberSet(n_members);
    out.final_k = 1;
    out.reductions = out.initial_k - 1;
    out.fallback_used = true;
  } else {
    out.selected = std::move(best);
    out.final_k = best_k;
    out.reductions = out.initial_k - best_k;
  }
  return out;
}

}  // namespace

SelectionOutcome knora_eliminate(const CompetenceIndex& index,
                                 std::span<const Neighbor> neighbors) {
  return eliminate_prefix(index.n_members(), neighbors.size(),
                          [&](std::size_t j) -> const MemberSet& {
                            return index.correct_members(neighbors[j].ref_pos);
                          });
}

SelectionOutcome knora_eliminate(int n_members, std::span<const MemberSet> correct_by_rank) {
  return eliminate_prefix(n_members, correct_by_rank.size(),
                          [&](std::size_t j) -> const MemberSet& { return correct_by_rank[j]; });
}

QueryResult classify_query(const BaggingEnsemble& ensemble, const CompetenceIndex& index,
                           NeighborMode mode, std::span<const double> raw_query, int k,
                           std::span<const int> precomputed_votes) {
  if (ensemble.size() != index.n_members())
    throw ValidationError("ensemble and index disagree on member count");

  QueryResult result;
  result.neighbors = index.query(raw_query, k, mode);
  result.outcome = knora_eliminate(index, result.neighbors);

  std::vector<int> votes_buf;
  std::span<const int> votes = precomputed_votes;
  if (votes.empty()) {
    votes_buf = ensemble.predict_votes(raw_query);
    votes = votes_buf;
  } else if (votes.size() != static_cast<std::size_t>(ensemble.size())) {
    throw ValidationError("precomputed votes size mismatch");
  }

  if (result.outcome.fallback_used) {
    result.label = majority_vote(votes, index.n_classes());
  } else {
    std::vector<int> selected_votes;
    selected_votes.reserve(static_cast<std::size_t>(result.outcome.selected.count()));
    for (int m : result.outcome.selected.members())
      selected_votes.push_back(votes[static_cast<std::size_t>(m)]);
    result.label = majority_vote(selected_votes, index.n_classes());
  }
  return result;
}

QueryResult classify_knora_e(const BaggingEnsemble& ensemble, const CompetenceIndex& index,
                             std::span<const double> raw_query, int k,
                             std::span<const int> precomputed_votes) {
  return classify_query(ensemble, index, NeighborMode::Plain, raw_query, k, precomputed_votes);
}

QueryResult classify_aknn_knora(const BaggingEnsemble& ensemble, const CompetenceIndex& index,
                                std::span<const double> raw_query, int k,
                                std::span<const int> precomputed_votes) {
  return classify_query(ensemble, index, NeighborMode::Adaptive, raw_query, k, precomputed_votes);
}

QueryResult classify_des_fa(const BaggingEnsemble& ensemble, const CompetenceIndex& index,
                            std::span<const double> raw_query, int k,
                            std::span<const int> precomputed_votes) {
  return classify_query(ensemble, index, NeighborMode::Adaptive, raw_query, k, precomputed_votes);
}

}  // namespace desfa
