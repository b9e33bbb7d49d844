#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace towerplan {

/// Exact non-negative fraction kept in lowest terms.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  friend Rational operator*(const Rational& a, const Rational& b);
  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Minimum support or confidence. Decimal inputs are taken to six places.
class Threshold {
 public:
  /// Throws MinerError unless 0 < value <= 1.
  static Threshold from_fraction(double value);
  static Threshold exact(Rational value);

  const Rational& value() const { return value_; }
  bool met(std::uint64_t count, std::uint64_t total) const;

 private:
  explicit Threshold(Rational v) : value_(v) {}
  Rational value_;
};

using ItemId = std::uint32_t;
/// Sorted, duplicate-free list of item ids.
using Itemset = std::vector<ItemId>;

/// Size first, then lexicographic.
bool canonical_less(const Itemset& a, const Itemset& b);

struct ItemsetSupport {
  Itemset items;
  std::uint64_t count = 0;
  std::uint64_t total = 0;

  Rational support() const { return {static_cast<std::int64_t>(count), static_cast<std::int64_t>(total)}; }
  friend bool operator==(const ItemsetSupport&, const ItemsetSupport&) = default;
};

struct AssociationRule {
  Itemset antecedent;
  Itemset consequent;
  std::uint64_t union_count = 0;
  std::uint64_t antecedent_count = 0;
  std::uint64_t total = 0;

  Rational support() const { return {static_cast<std::int64_t>(union_count), static_cast<std::int64_t>(total)}; }
  Rational confidence() const {
    return {static_cast<std::int64_t>(union_count), static_cast<std::int64_t>(antecedent_count)};
  }
  Rational antecedent_support() const {
    return {static_cast<std::int64_t>(antecedent_count), static_cast<std::int64_t>(total)};
  }
  friend bool operator==(const AssociationRule&, const AssociationRule&) = default;
};

/// Fraction of transactions containing every item. Throws MinerError for an
/// empty transaction list; the empty itemset has support 1.
Rational support(const Itemset& items, std::span<const Itemset> transactions);

/// Level-wise Apriori with subset pruning. Returns every itemset whose
/// support meets minsup in canonical order. Transactions need not be sorted.
std::vector<ItemsetSupport> apriori(std::span<const Itemset> transactions, const Threshold& minsup);

inline constexpr std::size_t kBruteForceMaxItems = 20;

/// Reference enumeration over all subsets of the item universe. Throws
/// MinerError for empty input or more than kBruteForceMaxItems items.
std::vector<ItemsetSupport> brute_force_frequent(std::span<const Itemset> transactions, const Threshold& minsup);

/// All rules A => C with A u C frequent, both sides non-empty and disjoint,
/// confidence >= minconf. Ordered by antecedent then consequent (canonical).
/// Throws MinerError when an antecedent is missing from `frequent`.
std::vector<AssociationRule> generate_rules(std::span<const ItemsetSupport> frequent, const Threshold& minconf);

/// Maps arbitrary ordered items to dense ids that preserve their order.
template <class T>
struct ItemCatalog {
  std::vector<T> universe;             // sorted, id = position
  std::vector<Itemset> transactions;   // encoded

  static ItemCatalog build(std::span<const std::vector<T>> rows) {
    ItemCatalog cat;
    for (const auto& row : rows) cat.universe.insert(cat.universe.end(), row.begin(), row.end());
    std::sort(cat.universe.begin(), cat.universe.end());
    cat.universe.erase(std::unique(cat.universe.begin(), cat.universe.end()), cat.universe.end());
    for (const auto& row : rows) {
      Itemset ids;
      for (const auto& item : row) {
        ids.push_back(static_cast<ItemId>(std::lower_bound(cat.universe.begin(), cat.universe.end(), item) -
                                          cat.universe.begin()));
      }
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      cat.transactions.push_back(std::move(ids));
    }
    return cat;
  }
};

}  // namespace towerplan
