#pragma once

#include <optional>

#include "invmine/core.hpp"

namespace invmine {

/// Confidential interval (I, s, S): knowing support(I) lies in [s_min, s_max]
/// is considered a disclosure.
struct PrivacyRule {
  ItemSet itemset;
  long long s_min = 0;
  long long s_max = 0;
};

struct AuditFinding {
  PrivacyRule rule;
  // Branch A explores support(I) < s_min, branch B explores support(I) > s_max.
  std::optional<double> confidence_low_branch;
  std::optional<double> confidence_high_branch;
  double confidence = 0.0;  // min of the present branches
  std::optional<TransactionDatabase> witness;
  bool leaked = false;
};

}  // namespace invmine
