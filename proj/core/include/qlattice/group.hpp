#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qlattice/common.hpp"

namespace qlattice {

/// A finite group of order <= 24, with every derived structure computed by
/// exhaustive search. Subgroups are element bitmasks. This is the independent
/// ground-truth oracle for the Hopf-side computations; it never touches the
/// linear algebra or Hopf layers.
class FiniteGroup {
 public:
  static constexpr int kMaxOrder = 24;

  static FiniteGroup from_cayley_table(std::string name, std::vector<std::string> element_names,
                                       std::vector<std::vector<int>> table) {
    FiniteGroup g;
    g.name_ = std::move(name);
    g.names_ = std::move(element_names);
    g.table_ = std::move(table);
    g.order_ = static_cast<int>(g.table_.size());
    require(g.order_ >= 1 && g.order_ <= kMaxOrder, "group order out of supported range");
    require(static_cast<int>(g.names_.size()) == g.order_, "element name count mismatch");
    g.validate_table();
    g.finish();
    return g;
  }

  /// Permutations act on {0,...,points-1}; a permutation is its image list.
  static FiniteGroup from_permutations(std::string name, int points,
                                       const std::vector<std::vector<int>>& generators) {
    std::vector<std::vector<int>> elements;
    std::vector<int> id(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) id[static_cast<std::size_t>(i)] = i;
    elements.push_back(id);
    for (std::size_t head = 0; head < elements.size(); ++head) {
      for (const auto& gen : generators) {
        require(static_cast<int>(gen.size()) == points, "generator arity mismatch");
        std::vector<int> prod(static_cast<std::size_t>(points));
        for (int i = 0; i < points; ++i)
          prod[static_cast<std::size_t>(i)] = gen[static_cast<std::size_t>(
              elements[head][static_cast<std::size_t>(i)])];
        if (std::find(elements.begin(), elements.end(), prod) == elements.end()) {
          require(static_cast<int>(elements.size()) < kMaxOrder, "group order exceeds cap");
          elements.push_back(std::move(prod));
        }
      }
    }
    std::sort(elements.begin() + 1, elements.end());
    int n = static_cast<int>(elements.size());
    std::vector<std::vector<int>> table(static_cast<std::size_t>(n),
                                        std::vector<int>(static_cast<std::size_t>(n), -1));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        std::vector<int> prod(static_cast<std::size_t>(points));
        for (int i = 0; i < points; ++i)
          prod[static_cast<std::size_t>(i)] = elements[static_cast<std::size_t>(a)]
              [static_cast<std::size_t>(elements[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)])];
        auto it = std::find(elements.begin(), elements.end(), prod);
        ensure(it != elements.end(), "permutation closure broken");
        table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
            static_cast<int>(it - elements.begin());
      }
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(n));
    for (const auto& p : elements) names.push_back(cycle_notation(p));
    return from_cayley_table(std::move(name), std::move(names), std::move(table));
  }

  static FiniteGroup cyclic(int n) {
    std::vector<std::vector<int>> table(static_cast<std::size_t>(n),
                                        std::vector<int>(static_cast<std::size_t>(n)));
    std::vector<std::string> names;
    for (int a = 0; a < n; ++a) {
      names.push_back(a == 0 ? "e" : "g" + std::to_string(a));
      for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
    }
    return from_cayley_table("C" + std::to_string(n), std::move(names), std::move(table));
  }

  static FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
    int n = g.order_ * h.order_;
    require(n <= kMaxOrder, "product order exceeds cap");
    std::vector<std::vector<int>> table(static_cast<std::size_t>(n),
                                        std::vector<int>(static_cast<std::size_t>(n)));
    std::vector<std::string> names;
    for (int a = 0; a < n; ++a) {
      int a1 = a / h.order_, a2 = a % h.order_;
      names.push_back("(" + g.names_[static_cast<std::size_t>(a1)] + "," +
                      h.names_[static_cast<std::size_t>(a2)] + ")");
      for (int b = 0; b < n; ++b) {
        int b1 = b / h.order_, b2 = b % h.order_;
        table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
            g.table_[static_cast<std::size_t>(a1)][static_cast<std::size_t>(b1)] * h.order_ +
            h.table_[static_cast<std::size_t>(a2)][static_cast<std::size_t>(b2)];
      }
    }
    return from_cayley_table(g.name_ + "x" + h.name_, std::move(names), std::move(table));
  }

  int order() const { return order_; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& element_names() const { return names_; }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  int inv(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
  const std::vector<std::vector<int>>& cayley_table() const { return table_; }

  int element_order(int a) const {
    int x = a, k = 1;
    while (x != identity_) {
      x = mul(x, a);
      ++k;
    }
    return k;
  }

  // --- subgroup masks ------------------------------------------------------

  std::uint32_t full_mask() const { return order_ == 32 ? ~0u : (1u << order_) - 1u; }
  std::uint32_t trivial_mask() const { return 1u << identity_; }

  std::uint32_t closure(std::uint32_t seed) const {
    std::uint32_t s = seed | trivial_mask();
    bool grew = true;
    while (grew) {
      grew = false;
      for (int a = 0; a < order_; ++a) {
        if (!(s >> a & 1u)) continue;
        for (int b = 0; b < order_; ++b) {
          if (!(s >> b & 1u)) continue;
          int p = mul(a, b);
          if (!(s >> p & 1u)) {
            s |= 1u << p;
            grew = true;
          }
        }
      }
    }
    return s;
  }

  bool is_subgroup(std::uint32_t mask) const {
    if (!(mask >> identity_ & 1u)) return false;
    for (int a = 0; a < order_; ++a) {
      if (!(mask >> a & 1u)) continue;
      if (!(mask >> inv(a) & 1u)) return false;
      for (int b = 0; b < order_; ++b)
        if ((mask >> b & 1u) && !(mask >> mul(a, b) & 1u)) return false;
    }
    return true;
  }

  static int mask_order(std::uint32_t mask) { return __builtin_popcount(mask); }

  bool normal_in(std::uint32_t sub, std::uint32_t super) const {
    if ((sub & super) != sub) return false;
    for (int g = 0; g < order_; ++g) {
      if (!(super >> g & 1u)) continue;
      for (int h = 0; h < order_; ++h)
        if ((sub >> h & 1u) && !(sub >> mul(mul(g, h), inv(g)) & 1u)) return false;
    }
    return true;
  }

  std::uint32_t conjugate_subgroup(std::uint32_t sub, int g) const {
    std::uint32_t out = 0;
    for (int h = 0; h < order_; ++h)
      if (sub >> h & 1u) out |= 1u << mul(mul(g, h), inv(g));
    return out;
  }

  const std::vector<std::uint32_t>& subgroups() const { return subgroups_; }
  const std::vector<std::uint32_t>& normal_subgroups() const { return normal_subgroups_; }
  std::uint32_t commutator_subgroup() const { return commutator_; }
  const std::vector<std::vector<int>>& conjugacy_classes() const { return conjugacy_classes_; }

  std::uint32_t subgroup_meet(std::uint32_t a, std::uint32_t b) const { return a & b; }
  std::uint32_t subgroup_join(std::uint32_t a, std::uint32_t b) const { return closure(a | b); }

  std::vector<std::uint32_t> subgroups_of(std::uint32_t super) const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t s : subgroups_)
      if ((s & super) == s) out.push_back(s);
    return out;
  }

  std::vector<std::uint32_t> normal_subgroups_of(std::uint32_t super) const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t s : subgroups_)
      if ((s & super) == s && normal_in(s, super)) out.push_back(s);
    return out;
  }

  std::vector<std::uint32_t> maximal_proper_normal_in(std::uint32_t super) const {
    std::vector<std::uint32_t> normals = normal_subgroups_of(super);
    std::vector<std::uint32_t> out;
    for (std::uint32_t n : normals) {
      if (n == super) continue;
      bool maximal = true;
      for (std::uint32_t m : normals)
        if (m != super && m != n && (n & m) == n) {
          maximal = false;
          break;
        }
      if (maximal) out.push_back(n);
    }
    return out;
  }

  /// Every descending chain super > ... > 1 with each step a proper normal
  /// subgroup of its predecessor. Chains exclude the starting subgroup.
  std::vector<std::vector<std::uint32_t>> subnormal_chains_below(std::uint32_t super) const {
    std::vector<std::vector<std::uint32_t>> out;
    if (super == trivial_mask()) return {{}};
    for (std::uint32_t n : normal_subgroups_of(super)) {
      if (n == super) continue;
      for (auto tail : subnormal_chains_below(n)) {
        tail.insert(tail.begin(), n);
        out.push_back(std::move(tail));
      }
    }
    return out;
  }

  std::vector<std::vector<std::uint32_t>> all_subnormal_series() const {
    auto chains = subnormal_chains_below(full_mask());
    for (auto& c : chains) c.insert(c.begin(), full_mask());
    return chains;  // each runs full group ... trivial
  }

  std::vector<std::vector<std::uint32_t>> all_composition_series() const {
    std::vector<std::vector<std::uint32_t>> out;
    for (const auto& series : all_subnormal_series()) {
      bool composition = true;
      for (std::size_t i = 0; i + 1 < series.size(); ++i) {
        auto maximal = maximal_proper_normal_in(series[i]);
        if (std::find(maximal.begin(), maximal.end(), series[i + 1]) == maximal.end()) {
          composition = false;
          break;
        }
      }
      if (composition) out.push_back(series);
    }
    return out;
  }

  /// Multiset of composition factor orders (well defined by Jordan-Hoelder).
  std::vector<int> composition_factor_orders() const {
    std::vector<int> factors;
    std::uint32_t current = full_mask();
    while (current != trivial_mask()) {
      auto maximal = maximal_proper_normal_in(current);
      ensure(!maximal.empty(), "no maximal normal subgroup found");
      std::uint32_t next = maximal.front();
      factors.push_back(mask_order(current) / mask_order(next));
      current = next;
    }
    std::sort(factors.begin(), factors.end());
    return factors;
  }

  /// Isomorphism-type label from order and element-order statistics; covers
  /// every subgroup type that occurs in groups of order <= 24 used here.
  std::string structure_label(std::uint32_t mask) const {
    int n = mask_order(mask);
    if (n == 1) return "1";
    if (mask == full_mask()) return name_;
    std::multiset<int> orders;
    bool abelian = true;
    std::vector<int> elems;
    for (int a = 0; a < order_; ++a)
      if (mask >> a & 1u) elems.push_back(a);
    for (int a : elems) {
      orders.insert(element_order(a));
      for (int b : elems)
        if (mul(a, b) != mul(b, a)) abelian = false;
    }
    int max_order = *orders.rbegin();
    if (max_order == n) return "C" + std::to_string(n);
    if (n == 4) return "V4";
    if (n == 6 && !abelian) return "S3";
    if (n == 8 && orders.count(2) == 5) return "D4";
    if (n == 8 && orders.count(2) == 1 && orders.count(4) == 6) return "Q8";
    if (n == 12 && orders.count(3) == 8) return "A4";
    if (n == 12 && !abelian && orders.count(2) == 7) return "D6";
    if (abelian) {
      // abelian invariant fallback, e.g. C2xC4
      return "Ab" + std::to_string(n) + "e" + std::to_string(max_order);
    }
    return "G" + std::to_string(n);
  }

  std::vector<int> mask_elements(std::uint32_t mask) const {
    std::vector<int> out;
    for (int a = 0; a < order_; ++a)
      if (mask >> a & 1u) out.push_back(a);
    return out;
  }

 private:
  void validate_table() {
    for (const auto& row : table_) {
      require(static_cast<int>(row.size()) == order_, "ragged Cayley table");
      for (int v : row) require(v >= 0 && v < order_, "Cayley entry out of range");
    }
    identity_ = -1;
    for (int e = 0; e < order_; ++e) {
      bool ok = true;
      for (int a = 0; a < order_ && ok; ++a)
        ok = mul(e, a) == a && mul(a, e) == a;
      if (ok) {
        identity_ = e;
        break;
      }
    }
    require(identity_ >= 0, "Cayley table has no identity");
    inverse_.assign(static_cast<std::size_t>(order_), -1);
    for (int a = 0; a < order_; ++a) {
      for (int b = 0; b < order_; ++b)
        if (mul(a, b) == identity_ && mul(b, a) == identity_) inverse_[static_cast<std::size_t>(a)] = b;
      require(inverse_[static_cast<std::size_t>(a)] >= 0, "Cayley table misses an inverse");
    }
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < order_; ++b)
        for (int c = 0; c < order_; ++c)
          require(mul(mul(a, b), c) == mul(a, mul(b, c)), "Cayley table not associative");
  }

  void finish() {
    // subgroup enumeration by closure of one-element extensions
    std::set<std::uint32_t> seen{trivial_mask()};
    std::vector<std::uint32_t> work{trivial_mask()};
    while (!work.empty()) {
      std::uint32_t s = work.back();
      work.pop_back();
      for (int g = 0; g < order_; ++g) {
        if (s >> g & 1u) continue;
        std::uint32_t t = closure(s | (1u << g));
        if (seen.insert(t).second) work.push_back(t);
      }
    }
    subgroups_.assign(seen.begin(), seen.end());
    std::sort(subgroups_.begin(), subgroups_.end(), [](std::uint32_t a, std::uint32_t b) {
      return mask_order(a) != mask_order(b) ? mask_order(a) < mask_order(b) : a < b;
    });
    for (std::uint32_t s : subgroups_)
      if (normal_in(s, full_mask())) normal_subgroups_.push_back(s);

    std::uint32_t commutators = 0;
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < order_; ++b)
        commutators |= 1u << mul(mul(a, b), mul(inv(a), inv(b)));
    commutator_ = closure(commutators);

    std::vector<bool> placed(static_cast<std::size_t>(order_), false);
    for (int a = 0; a < order_; ++a) {
      if (placed[static_cast<std::size_t>(a)]) continue;
      std::vector<int> cls;
      for (int g = 0; g < order_; ++g) {
        int c = mul(mul(g, a), inv(g));
        if (!placed[static_cast<std::size_t>(c)]) {
          placed[static_cast<std::size_t>(c)] = true;
          cls.push_back(c);
        }
      }
      std::sort(cls.begin(), cls.end());
      conjugacy_classes_.push_back(std::move(cls));
    }
  }

  static std::string cycle_notation(const std::vector<int>& perm) {
    std::string out;
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t i = 0; i < perm.size(); ++i) {
      if (seen[i] || perm[i] == static_cast<int>(i)) continue;
      out += "(";
      std::size_t j = i;
      bool first = true;
      while (!seen[j]) {
        seen[j] = true;
        if (!first) out += " ";
        out += std::to_string(j + 1);
        first = false;
        j = static_cast<std::size_t>(perm[j]);
      }
      out += ")";
    }
    return out.empty() ? "e" : out;
  }

  std::string name_;
  int order_ = 0;
  int identity_ = 0;
  std::vector<std::string> names_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  std::vector<std::uint32_t> subgroups_;
  std::vector<std::uint32_t> normal_subgroups_;
  std::uint32_t commutator_ = 0;
  std::vector<std::vector<int>> conjugacy_classes_;
};

/// Zassenhaus data computed purely group-theoretically.
struct ClassicalButterfly {
  std::uint32_t left_top, left_bottom, right_top, right_bottom, middle_top, middle_bottom;
  int left_quotient_order, right_quotient_order;
};

inline ClassicalButterfly classical_butterfly(const FiniteGroup& g, std::uint32_t a_prime,
                                              std::uint32_t a, std::uint32_t b_prime,
                                              std::uint32_t b) {
  require(g.normal_in(a_prime, a) && g.normal_in(b_prime, b), "butterfly needs A' normal in A, B' normal in B");
  ClassicalButterfly out{};
  out.left_top = g.subgroup_join(a_prime, g.subgroup_meet(a, b));
  out.left_bottom = g.subgroup_join(a_prime, g.subgroup_meet(a, b_prime));
  out.right_top = g.subgroup_join(b_prime, g.subgroup_meet(a, b));
  out.right_bottom = g.subgroup_join(b_prime, g.subgroup_meet(a_prime, b));
  out.middle_top = g.subgroup_meet(a, b);
  out.middle_bottom = g.subgroup_join(g.subgroup_meet(a_prime, b), g.subgroup_meet(a, b_prime));
  out.left_quotient_order = FiniteGroup::mask_order(out.left_top) / FiniteGroup::mask_order(out.left_bottom);
  out.right_quotient_order =
      FiniteGroup::mask_order(out.right_top) / FiniteGroup::mask_order(out.right_bottom);
  return out;
}

}  // namespace qlattice
