#pragma once

#include <vector>

#include "invmine/privacy_types.hpp"
#include "invmine/rounding.hpp"

namespace invmine {

struct AuditConfig {
  RoundingMethod method = RoundingMethod::DerandomX;
  std::uint64_t seed = 0;
  int refine_rounds = 2;
  SolverConfig solver;
};

/// Per rule, solves up to two augmented LPs (support(I) forced below s_min /
/// above s_max) and rounds each to an integer database. The branch confidence
/// is the rounded database's total deviation from S plus its distance to the
/// branch window; c = min over present branches. Small c means a witness
/// exists and nothing is leaked.
std::vector<AuditFinding> audit(const ConstraintSet& cs, const std::vector<PrivacyRule>& rules,
                                double threshold, const AuditConfig& config = {});

struct ScrubDatabaseResult {
  TransactionDatabase db;
  std::vector<long long> targets;  // the random r_i drawn per rule
};

/// Database scrubbing: per rule, redraws support(I) to a random target by
/// inserting I into or knocking items of I out of randomly chosen rows.
ScrubDatabaseResult scrub_database(const TransactionDatabase& db,
                                   const std::vector<PrivacyRule>& rules, std::uint64_t seed);

/// Constraint scrubbing: randomizes the support of the constraint most
/// overlapping the sensitive itemset, then one monotonic repair pass
/// (supersets are lowered to their subsets' supports). Refuses to run twice
/// on the same lineage.
ConstraintSet scrub_constraints(const ConstraintSet& cs, const ItemSet& sensitive,
                                std::uint64_t seed);

}  // namespace invmine
