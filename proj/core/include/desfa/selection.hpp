#pragma once

#include <span>
#include <vector>

#include "desfa/competence.hpp"
#include "desfa/ensemble.hpp"

namespace desfa {

struct SelectionOutcome {
  // Members correct on every row of the final neighborhood; empty when the
  // fallback fired.
  MemberSet selected;
  int initial_k = 0;
  int final_k = 0;     // neighborhood size that produced the selection
  int reductions = 0;  // shrink steps taken; fallback counts initial_k - 1
  bool fallback_used = false;
};

// Keeps the members that classify every neighbor correctly. When no member
// survives, the farthest neighbor is dropped and the test repeats; an empty
// selection even at one neighbor flags the fallback (callers then use the
// whole ensemble). Neighbors must be in ranked order.
SelectionOutcome knora_eliminate(const CompetenceIndex& index,
                                 std::span<const Neighbor> neighbors);

// Same rule on a bare correctness profile: correct_by_rank[j] holds the
// members that classify the j-th nearest neighbor correctly.
SelectionOutcome knora_eliminate(int n_members, std::span<const MemberSet> correct_by_rank);

struct QueryResult {
  int label = -1;
  SelectionOutcome outcome;
  std::vector<Neighbor> neighbors;
};

// Full per-query pipeline: rank k reference neighbors, run the elimination,
// then majority-vote the surviving members (the whole ensemble on
// fallback). Vote ties go to the lowest-index voting member. When the
// caller already has this query's member votes, precomputed_votes skips
// re-predicting.
QueryResult classify_query(const BaggingEnsemble& ensemble, const CompetenceIndex& index,
                           NeighborMode mode, std::span<const double> raw_query, int k,
                           std::span<const int> precomputed_votes = {});

// The three dynamic schemes differ only in neighbor ranking and in how the
// index was built: plain ranking for the unedited baseline, adaptive
// ranking over an unedited index, adaptive ranking over an edited index.
QueryResult classify_knora_e(const BaggingEnsemble& ensemble, const CompetenceIndex& index,
                             std::span<const double> raw_query, int k,
                             std::span<const int> precomputed_votes = {});
QueryResult classify_aknn_knora(const BaggingEnsemble& ensemble, const CompetenceIndex& index,
                                std::span<const double> raw_query, int k,
                                std::span<const int> precomputed_votes = {});
QueryResult classify_des_fa(const BaggingEnsemble& ensemble, const CompetenceIndex& index,
                            std::span<const double> raw_query, int k,
                            std::span<const int> precomputed_votes = {});

}  // namespace desfa
