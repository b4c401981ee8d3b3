#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "invmine/core.hpp"
#include "invmine/privacy_types.hpp"

namespace invmine::io {

/// FIMI-style transaction file: one transaction per line, ascending
/// space-separated 0-based item ids, an empty line is an empty transaction,
/// tid is the 1-based data-line number. `#` lines are comments.
/// When `universe_size` is absent, the universe is max item id + 1.
TransactionDatabase read_database(std::istream& in, std::optional<int> universe_size = {});
TransactionDatabase read_database_file(const std::string& path,
                                       std::optional<int> universe_size = {});
void write_database(std::ostream& out, const TransactionDatabase& db,
                    const std::vector<std::string>& header = {});
void write_database_file(const std::string& path, const TransactionDatabase& db,
                         const std::vector<std::string>& header = {});

/// Constraint file: `n <int>` line, `t <int>` line, then one constraint per
/// line `<ids ascending> : <support>`. `#` lines are comments; the marker
/// `# scrubbed` records scrub lineage.
ConstraintSet read_constraints(std::istream& in);
ConstraintSet read_constraints_file(const std::string& path);
void write_constraints(std::ostream& out, const ConstraintSet& cs,
                       const std::vector<std::string>& header = {});
void write_constraints_file(const std::string& path, const ConstraintSet& cs,
                            const std::vector<std::string>& header = {});

/// Privacy rule file: one rule per line, `<ids ascending> : <s_min> <s_max>`.
std::vector<PrivacyRule> read_privacy_rules(std::istream& in, int universe_size);
std::vector<PrivacyRule> read_privacy_rules_file(const std::string& path, int universe_size);
void write_privacy_rules(std::ostream& out, const std::vector<PrivacyRule>& rules);

/// Deviation report CSV: `itemset,target,actual,deviation` rows followed by
/// the summary rows n_target, n_actual, lp_objective, sum_abs_deviation,
/// max_abs_deviation.
void write_report(std::ostream& out, const SynthesisReport& report);
void write_report_file(const std::string& path, const SynthesisReport& report);
SynthesisReport read_report(std::istream& in, int universe_size);
SynthesisReport read_report_file(const std::string& path, int universe_size);

std::string format_items(const ItemSet& s);

}  // namespace invmine::io
