#include "towerplan/miner.hpp"

#include <cmath>
#include <map>
#include <numeric>

#include "towerplan/error.hpp"

namespace towerplan {

namespace {

__extension__ using Wide = __int128;

Itemset normalized(const Itemset& t) {
  Itemset out = t;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Itemset> normalized_all(std::span<const Itemset> transactions) {
  std::vector<Itemset> out;
  out.reserve(transactions.size());
  for (const auto& t : transactions) out.push_back(normalized(t));
  return out;
}

std::uint64_t count_containing(const Itemset& items, const std::vector<Itemset>& transactions) {
  std::uint64_t c = 0;
  for (const auto& t : transactions) {
    if (std::includes(t.begin(), t.end(), items.begin(), items.end())) ++c;
  }
  return c;
}

void sort_canonical(std::vector<ItemsetSupport>& v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return canonical_less(a.items, b.items); });
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den <= 0 || num < 0) throw MinerError("rational needs num >= 0 and den > 0");
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational operator*(const Rational& a, const Rational& b) {
  // Cross-reduce first to keep the products small.
  const std::int64_t g1 = std::gcd(a.num_, b.den_);
  const std::int64_t g2 = std::gcd(b.num_, a.den_);
  if (a.num_ == 0 || b.num_ == 0) return {};
  return {(a.num_ / g1) * (b.num_ / g2), (a.den_ / g2) * (b.den_ / g1)};
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const Wide l = static_cast<Wide>(a.num_) * b.den_;
  const Wide r = static_cast<Wide>(b.num_) * a.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Threshold Threshold::from_fraction(double value) {
  if (!(value > 0.0) || !(value <= 1.0)) throw MinerError("threshold must lie in (0, 1]");
  return Threshold(Rational(std::llround(value * 1e6), 1000000));
}

Threshold Threshold::exact(Rational value) {
  if (value.num() == 0 || value > Rational(1, 1)) throw MinerError("threshold must lie in (0, 1]");
  return Threshold(value);
}

bool Threshold::met(std::uint64_t count, std::uint64_t total) const {
  return static_cast<Wide>(count) * value_.den() >= static_cast<Wide>(value_.num()) * total;
}

bool canonical_less(const Itemset& a, const Itemset& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

Rational support(const Itemset& items, std::span<const Itemset> transactions) {
  if (transactions.empty()) throw MinerError("support over an empty transaction list");
  const auto norm = normalized_all(transactions);
  return {static_cast<std::int64_t>(count_containing(normalized(items), norm)),
          static_cast<std::int64_t>(norm.size())};
}

std::vector<ItemsetSupport> apriori(std::span<const Itemset> transactions, const Threshold& minsup) {
  if (transactions.empty()) return {};
  const auto db = normalized_all(transactions);
  const std::uint64_t total = db.size();

  std::map<ItemId, std::uint64_t> singles;
  for (const auto& t : db) {
    for (ItemId i : t) ++singles[i];
  }

  std::vector<ItemsetSupport> result;
  std::vector<Itemset> level;
  for (const auto& [item, count] : singles) {
    if (minsup.met(count, total)) {
      result.push_back({{item}, count, total});
      level.push_back({item});
    }
  }

  while (level.size() > 1) {
    // level is lexicographically sorted; sets sharing a (k-1)-prefix are adjacent.
    std::vector<Itemset> next;
    for (std::size_t i = 0; i < level.size(); ++i) {
      for (std::size_t j = i + 1; j < level.size(); ++j) {
        if (!std::equal(level[i].begin(), level[i].end() - 1, level[j].begin())) break;
        Itemset cand = level[i];
        cand.push_back(level[j].back());
        bool pruned = false;
        for (std::size_t drop = 0; drop + 2 < cand.size() && !pruned; ++drop) {
          Itemset sub;
          sub.reserve(cand.size() - 1);
          for (std::size_t k = 0; k < cand.size(); ++k) {
            if (k != drop) sub.push_back(cand[k]);
          }
          pruned = !std::binary_search(level.begin(), level.end(), sub);
        }
        if (pruned) continue;
        const std::uint64_t count = count_containing(cand, db);
        if (minsup.met(count, total)) {
          result.push_back({cand, count, total});
          next.push_back(std::move(cand));
        }
      }
    }
    level = std::move(next);
  }

  sort_canonical(result);
  return result;
}

std::vector<ItemsetSupport> brute_force_frequent(std::span<const Itemset> transactions, const Threshold& minsup) {
  if (transactions.empty()) throw MinerError("brute force over an empty transaction list");
  const auto db = normalized_all(transactions);
  Itemset universe;
  for (const auto& t : db) universe.insert(universe.end(), t.begin(), t.end());
  universe = normalized(universe);
  if (universe.size() > kBruteForceMaxItems) {
    throw MinerError("brute force limited to " + std::to_string(kBruteForceMaxItems) + " items, got " +
                     std::to_string(universe.size()));
  }

  std::vector<ItemsetSupport> result;
  const std::uint64_t subsets = std::uint64_t{1} << universe.size();
  for (std::uint64_t mask = 1; mask < subsets; ++mask) {
    Itemset items;
    for (std::size_t b = 0; b < universe.size(); ++b) {
      if (mask & (std::uint64_t{1} << b)) items.push_back(universe[b]);
    }
    const std::uint64_t count = count_containing(items, db);
    if (minsup.met(count, db.size())) result.push_back({std::move(items), count, db.size()});
  }
  sort_canonical(result);
  return result;
}

std::vector<AssociationRule> generate_rules(std::span<const ItemsetSupport> frequent, const Threshold& minconf) {
  std::map<Itemset, std::uint64_t> counts;
  for (const auto& f : frequent) {
    if (f.total != frequent.front().total) throw MinerError("frequent itemsets come from different databases");
    counts[f.items] = f.count;
  }

  std::vector<AssociationRule> rules;
  for (const auto& f : frequent) {
    const std::size_t k = f.items.size();
    if (k < 2) continue;
    if (k > 63) throw MinerError("itemset too wide for rule enumeration");
    const std::uint64_t full = (std::uint64_t{1} << k) - 1;
    for (std::uint64_t mask = 1; mask < full; ++mask) {
      AssociationRule r;
      for (std::size_t b = 0; b < k; ++b) {
        ((mask >> b) & 1u ? r.antecedent : r.consequent).push_back(f.items[b]);
      }
      auto it = counts.find(r.antecedent);
      if (it == counts.end()) {
        throw MinerError("frequent set is not closed under subsets: missing antecedent of size " +
                         std::to_string(r.antecedent.size()));
      }
      r.union_count = f.count;
      r.antecedent_count = it->second;
      r.total = f.total;
      if (minconf.met(r.union_count, r.antecedent_count)) rules.push_back(std::move(r));
    }
  }
  std::sort(rules.begin(), rules.end(), [](const AssociationRule& a, const AssociationRule& b) {
    if (a.antecedent != b.antecedent) return canonical_less(a.antecedent, b.antecedent);
    return canonical_less(a.consequent, b.consequent);
  });
  return rules;
}

}  // namespace towerplan
