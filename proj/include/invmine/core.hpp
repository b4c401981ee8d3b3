#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace invmine {

struct DimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ScaleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The item universe {e_0, ..., e_{t-1}}. Items are referred to by 0-based
/// index everywhere; labels are display-only.
struct ItemUniverse {
  int size = 0;
  std::vector<std::string> labels;  // empty or exactly `size` entries

  explicit ItemUniverse(int t = 0) : size(t) {
    if (t < 0) throw InputError("item universe size must be nonnegative");
  }
  bool operator==(const ItemUniverse& o) const { return size == o.size; }
};

/// An itemset stored as its characteristic array over a fixed universe.
class ItemSet {
 public:
  ItemSet() = default;
  explicit ItemSet(int t) : chi_(static_cast<std::size_t>(t), 0) {
    if (t < 0) throw InputError("itemset universe size must be nonnegative");
  }

  static ItemSet from_items(int t, const std::vector<int>& items) {
    ItemSet s(t);
    for (int k : items) {
      if (k < 0 || k >= t) throw InputError("item id out of range");
      s.chi_[static_cast<std::size_t>(k)] = 1;
    }
    return s;
  }

  int universe_size() const { return static_cast<int>(chi_.size()); }
  bool contains(int k) const { return chi_[static_cast<std::size_t>(k)] != 0; }
  void set(int k, bool present) { chi_[static_cast<std::size_t>(k)] = present ? 1 : 0; }

  int cardinality() const {
    return static_cast<int>(std::accumulate(chi_.begin(), chi_.end(), 0));
  }
  bool empty() const { return cardinality() == 0; }

  std::vector<int> items() const {
    std::vector<int> out;
    for (int k = 0; k < universe_size(); ++k)
      if (chi_[static_cast<std::size_t>(k)]) out.push_back(k);
    return out;
  }

  const std::vector<std::uint8_t>& chi() const { return chi_; }

  bool operator==(const ItemSet& o) const { return chi_ == o.chi_; }
  bool operator!=(const ItemSet& o) const { return chi_ != o.chi_; }
  bool operator<(const ItemSet& o) const { return chi_ < o.chi_; }

 private:
  std::vector<std::uint8_t> chi_;
};

struct Transaction {
  long long tid = 0;
  ItemSet items;
};

struct TransactionDatabase {
  ItemUniverse universe;
  std::vector<Transaction> rows;

  long long size() const { return static_cast<long long>(rows.size()); }
};

struct SupportConstraint {
  ItemSet itemset;
  long long support = 0;
};

/// An ApproSUPPSAT instance: target size n plus m point-support constraints.
struct ConstraintSet {
  ItemUniverse universe;
  long long n = 0;
  std::vector<SupportConstraint> constraints;
  bool scrubbed = false;  // lineage marker set by constraint scrubbing

  int m() const { return static_cast<int>(constraints.size()); }
  void validate() const;
};

/// Exact rational, reduced, denominator > 0.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}  // NOLINT: implicit for scalar use
  Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw InputError("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
};

int inner_product(const ItemSet& a, const ItemSet& b);
bool is_subset(const ItemSet& a, const ItemSet& b);

long long support(const ItemSet& itemset, const TransactionDatabase& db);
Rational frequency(const ItemSet& itemset, const TransactionDatabase& db);

struct ConstraintDeviation {
  ItemSet itemset;
  long long target = 0;
  long long actual = 0;
  long long deviation = 0;  // actual - target
};

struct SynthesisReport {
  long long n_target = 0;
  long long n_actual = 0;
  std::vector<ConstraintDeviation> per_constraint;
  long long sum_abs_deviation = 0;
  long long max_abs_deviation = 0;
  double lp_objective = 0.0;
};

SynthesisReport deviation_report(const TransactionDatabase& db, const ConstraintSet& cs,
                                 double lp_objective);

}  // namespace invmine
