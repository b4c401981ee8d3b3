#pragma once

#include <utility>
#include <vector>

#include "invmine/core.hpp"

namespace invmine {

/// Level-wise frequent itemset mining with exact integer supports. Returns
/// every itemset I with 1 <= |I| <= maxlen and support(I, db) >= minsup,
/// sorted by (|I|, lexicographic characteristic array).
std::vector<std::pair<ItemSet, long long>> mine_frequent(const TransactionDatabase& db,
                                                         long long minsup, int maxlen);

/// Packages the mining result as an ApproSUPPSAT instance with n = |db|.
/// Throws InputError when mining returns nothing (m >= 1 is required).
ConstraintSet extract_constraints(const TransactionDatabase& db, long long minsup, int maxlen);

}  // namespace invmine
