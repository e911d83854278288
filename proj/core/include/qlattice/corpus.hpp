#pragma once

#include <optional>
#include <sstream>

#include "qlattice/group.hpp"
#include "qlattice/grouplikes.hpp"
#include "qlattice/hopf.hpp"

namespace qlattice {

/// Group algebra kG: basis the group elements, Delta(g) = g (x) g, S(g) = g^-1.
template <FieldScalar K>
HopfPtr<K> group_algebra(const FiniteGroup& g) {
  const int n = g.order();
  HopfData<K> d;
  d.dim = n;
  d.labels = g.element_names();
  d.mult.assign(static_cast<std::size_t>(n),
                std::vector<Vec<K>>(static_cast<std::size_t>(n), Vec<K>(static_cast<std::size_t>(n), K(0))));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      d.mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]
            [static_cast<std::size_t>(g.mul(a, b))] = K(1);
  d.unit = unit_vector<K>(n, g.identity());
  d.comult.assign(static_cast<std::size_t>(n), {});
  for (int a = 0; a < n; ++a) d.comult[static_cast<std::size_t>(a)].push_back({K(1), a, a});
  d.counit.assign(static_cast<std::size_t>(n), K(1));
  d.antipode = Matrix<K>(n, n);
  for (int a = 0; a < n; ++a) d.antipode.at(g.inv(a), a) = K(1);
  return build_validate_or_throw(std::move(d), "group algebra k" + g.name());
}

/// Function algebra k^G on the delta-function basis: pointwise product,
/// Delta(delta_g) = sum over factorizations, S(delta_g) = delta_{g^-1}.
/// Coincides bit for bit with dual(group_algebra(g)).
template <FieldScalar K>
HopfPtr<K> function_algebra(const FiniteGroup& g) {
  const int n = g.order();
  HopfData<K> d;
  d.dim = n;
  for (const std::string& s : g.element_names()) d.labels.push_back("d(" + s + ")");
  d.mult.assign(static_cast<std::size_t>(n),
                std::vector<Vec<K>>(static_cast<std::size_t>(n), Vec<K>(static_cast<std::size_t>(n), K(0))));
  for (int a = 0; a < n; ++a)
    d.mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)][static_cast<std::size_t>(a)] = K(1);
  d.unit.assign(static_cast<std::size_t>(n), K(1));
  d.comult.assign(static_cast<std::size_t>(n), {});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      d.comult[static_cast<std::size_t>(g.mul(a, b))].push_back({K(1), a, b});
  d.counit = unit_vector<K>(n, g.identity());
  d.antipode = Matrix<K>(n, n);
  for (int a = 0; a < n; ++a) d.antipode.at(g.inv(a), a) = K(1);
  return build_validate_or_throw(std::move(d), "function algebra k^" + g.name());
}

/// Sweedler's four-dimensional Hopf algebra: g^2 = 1, x^2 = 0, xg = -gx,
/// Delta(x) = x (x) 1 + g (x) x. Not semisimple, not cosemisimple; S has
/// order four.
template <FieldScalar K>
HopfPtr<K> sweedler_h4() {
  // basis monomials g^a x^b at index a + 2b: {1, g, x, gx}
  auto idx = [](int a, int b) { return a + 2 * b; };
  HopfData<K> d;
  d.dim = 4;
  d.labels = {"1", "g", "x", "gx"};
  d.mult.assign(4, std::vector<Vec<K>>(4, Vec<K>(4, K(0))));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int e = 0; e < 2; ++e) {
          if (b + e >= 2) continue;  // x^2 = 0
          K sign = (b && c) ? K(-1) : K(1);
          d.mult[static_cast<std::size_t>(idx(a, b))][static_cast<std::size_t>(idx(c, e))]
                [static_cast<std::size_t>(idx((a + c) % 2, b + e))] = sign;
        }
  d.unit = unit_vector<K>(4, 0);
  d.comult.assign(4, {});
  d.comult[0].push_back({K(1), 0, 0});
  d.comult[1].push_back({K(1), 1, 1});
  d.comult[2] = {{K(1), 2, 0}, {K(1), 1, 2}};   // x (x) 1 + g (x) x
  d.comult[3] = {{K(1), 3, 1}, {K(1), 0, 3}};   // gx (x) g + 1 (x) gx
  d.counit = {K(1), K(1), K(0), K(0)};
  d.antipode = Matrix<K>(4, 4);
  d.antipode.at(0, 0) = K(1);
  d.antipode.at(1, 1) = K(1);
  d.antipode.at(3, 2) = K(-1);  // S(x) = -gx
  d.antipode.at(2, 3) = K(1);   // S(gx) = x
  return build_validate_or_throw(std::move(d), "Sweedler H4");
}

/// The Kac-Paljutkin algebra: the smallest semisimple Hopf algebra that is
/// neither commutative nor cocommutative. Presented on monomials x^a y^b z^c
/// with x^2 = y^2 = 1, xy = yx, zx = yz, zy = xz, z^2 = (1+x+y-xy)/2.
template <FieldScalar K>
HopfPtr<K> kac_paljutkin() {
  auto idx = [](int a, int b, int c) { return a + 2 * b + 4 * c; };
  const K half = K(1) / K(2);
  HopfData<K> d;
  d.dim = 8;
  d.labels = {"1", "x", "y", "xy", "z", "xz", "yz", "xyz"};
  d.mult.assign(8, std::vector<Vec<K>>(8, Vec<K>(8, K(0))));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int e = 0; e < 2; ++e)
          for (int f = 0; f < 2; ++f)
            for (int w = 0; w < 2; ++w) {
              Vec<K>& out = d.mult[static_cast<std::size_t>(idx(a, b, c))]
                                  [static_cast<std::size_t>(idx(e, f, w))];
              if (c == 0) {
                out[static_cast<std::size_t>(idx((a + e) % 2, (b + f) % 2, w))] += K(1);
              } else {
                // pushing x^e y^f through z swaps the two exponents
                int aa = (a + f) % 2, bb = (b + e) % 2;
                if (w == 0) {
                  out[static_cast<std::size_t>(idx(aa, bb, 1))] += K(1);
                } else {  // z^2 = (1 + x + y - xy)/2
                  out[static_cast<std::size_t>(idx(aa, bb, 0))] += half;
                  out[static_cast<std::size_t>(idx((aa + 1) % 2, bb, 0))] += half;
                  out[static_cast<std::size_t>(idx(aa, (bb + 1) % 2, 0))] += half;
                  out[static_cast<std::size_t>(idx((aa + 1) % 2, (bb + 1) % 2, 0))] -= half;
                }
              }
            }
  d.unit = unit_vector<K>(8, 0);
  d.comult.assign(8, {});
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      d.comult[static_cast<std::size_t>(idx(a, b, 0))].push_back({K(1), idx(a, b, 0), idx(a, b, 0)});
  // Delta(u z) = (u (x) u) * (z(x)z + z(x)xz + yz(x)z - yz(x)xz)/2 for u = x^a y^b
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      SparseComult<K>& terms = d.comult[static_cast<std::size_t>(idx(a, b, 1))];
      terms.push_back({half, idx(a, b, 1), idx(a, b, 1)});
      terms.push_back({half, idx(a, b, 1), idx((a + 1) % 2, b, 1)});
      terms.push_back({half, idx(a, (b + 1) % 2, 1), idx(a, b, 1)});
      terms.push_back({K(0) - half, idx(a, (b + 1) % 2, 1), idx((a + 1) % 2, b, 1)});
    }
  d.counit.assign(8, K(1));
  d.antipode = Matrix<K>(8, 8);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      d.antipode.at(idx(a, b, 0), idx(a, b, 0)) = K(1);
      d.antipode.at(idx(b, a, 1), idx(a, b, 1)) = K(1);  // S(x^a y^b z) = x^b y^a z
    }
  return build_validate_or_throw(std::move(d), "Kac-Paljutkin H8");
}

// ---------------------------------------------------------------------------
// Named corpus registry and the classical brute-force oracle facade.
// ---------------------------------------------------------------------------

inline const FiniteGroup& corpus_group(const std::string& name) {
  static const std::map<std::string, FiniteGroup> groups = [] {
    std::map<std::string, FiniteGroup> g;
    g.emplace("C2", FiniteGroup::cyclic(2));
    g.emplace("C3", FiniteGroup::cyclic(3));
    g.emplace("C4", FiniteGroup::cyclic(4));
    g.emplace("C6", FiniteGroup::cyclic(6));
    g.emplace("V4", FiniteGroup::from_permutations("V4", 4, {{1, 0, 3, 2}, {2, 3, 0, 1}}));
    g.emplace("S3", FiniteGroup::from_permutations("S3", 3, {{1, 0, 2}, {1, 2, 0}}));
    g.emplace("D4", FiniteGroup::from_permutations("D4", 4, {{1, 2, 3, 0}, {2, 1, 0, 3}}));
    g.emplace("A4", FiniteGroup::from_permutations("A4", 4, {{1, 2, 0, 3}, {1, 0, 3, 2}}));
    g.emplace("S4", FiniteGroup::from_permutations("S4", 4, {{1, 0, 2, 3}, {1, 2, 3, 0}}));
    {
      // Q8 via signed quaternion units: index = 2*axis + (sign < 0)
      auto axmul = [](int p, int q, int& axis, int& sign) {
        static const int ax[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
        static const int sg[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
        axis = ax[p][q];
        sign = sg[p][q];
      };
      std::vector<std::vector<int>> table(8, std::vector<int>(8));
      for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
          int pa = a / 2, sa = a % 2 ? -1 : 1;
          int pb = b / 2, sb = b % 2 ? -1 : 1;
          int axis, sign;
          axmul(pa, pb, axis, sign);
          int s = sa * sb * sign;
          table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 2 * axis + (s < 0 ? 1 : 0);
        }
      g.emplace("Q8", FiniteGroup::from_cayley_table(
                          "Q8", {"1", "-1", "i", "-i", "j", "-j", "k", "-k"}, std::move(table)));
    }
    return g;
  }();
  auto it = groups.find(name);
  require(it != groups.end(), "unknown corpus group: " + name);
  return it->second;
}

inline std::vector<std::string> corpus_group_names() {
  return {"C2", "C3", "C4", "C6", "V4", "S3", "D4", "Q8", "A4", "S4"};
}

struct CorpusEntry {
  std::string name;
  HopfPtr<Rational> algebra;
  const FiniteGroup* group = nullptr;  // set for kG and k^G entries
  bool is_group_algebra = false;
  bool is_function_algebra = false;
};

inline const std::vector<CorpusEntry>& corpus_entries() {
  static const std::vector<CorpusEntry> entries = [] {
    std::vector<CorpusEntry> out;
    for (const std::string& gn : corpus_group_names()) {
      const FiniteGroup& g = corpus_group(gn);
      out.push_back({"k" + gn, group_algebra<Rational>(g), &g, true, false});
      out.push_back({"k^" + gn, function_algebra<Rational>(g), &g, false, true});
    }
    out.push_back({"h4", sweedler_h4<Rational>(), nullptr, false, false});
    out.push_back({"h8", kac_paljutkin<Rational>(), nullptr, false, false});
    const auto find = [&](const std::string& n) -> HopfPtr<Rational> {
      for (const CorpusEntry& e : out)
        if (e.name == n) return e.algebra;
      throw InternalError("corpus bootstrap: " + n);
    };
    out.push_back({"kC2xk^C2", tensor_product(*find("kC2"), *find("k^C2")), nullptr, false, false});
    out.push_back({"kC2xkC3", tensor_product(*find("kC2"), *find("kC3")), nullptr, false, false});
    out.push_back({"h4xh4", tensor_product(*find("h4"), *find("h4")), nullptr, false, false});
    out.push_back({"h8xkC2", tensor_product(*find("h8"), *find("kC2")), nullptr, false, false});
    out.push_back({"kS3xk^S3", tensor_product(*find("kS3"), *find("k^S3")), nullptr, false, false});
    return out;
  }();
  return entries;
}

inline const CorpusEntry& corpus_entry(const std::string& name) {
  for (const CorpusEntry& e : corpus_entries())
    if (e.name == name) return e;
  throw InputError("unknown corpus algebra: " + name);
}

/// Span of the group elements of the subgroup mask inside kG.
template <FieldScalar K>
Subspace<K> group_subalgebra_space(const FiniteGroup& g, std::uint32_t mask) {
  std::vector<Vec<K>> rows;
  for (int a : g.mask_elements(mask)) rows.push_back(unit_vector<K>(g.order(), a));
  return Subspace<K>::from_vectors(g.order(), rows);
}

/// Kernel of the restriction k^G -> k^H: functions vanishing on the subgroup.
template <FieldScalar K>
Subspace<K> function_restriction_kernel(const FiniteGroup& g, std::uint32_t mask) {
  std::vector<Vec<K>> rows;
  for (int a = 0; a < g.order(); ++a)
    if (!(mask >> a & 1u)) rows.push_back(unit_vector<K>(g.order(), a));
  return Subspace<K>::from_vectors(g.order(), rows);
}

/// Hopf subalgebra of k^G attached to a normal subgroup: the span of the
/// indicator functions of its cosets (= functions on G/N).
template <FieldScalar K>
Subspace<K> coset_indicator_subalgebra(const FiniteGroup& g, std::uint32_t normal_mask) {
  std::vector<Vec<K>> rows;
  std::vector<bool> seen(static_cast<std::size_t>(g.order()), false);
  for (int a = 0; a < g.order(); ++a) {
    if (seen[static_cast<std::size_t>(a)]) continue;
    Vec<K> row(static_cast<std::size_t>(g.order()), K(0));
    for (int h : g.mask_elements(normal_mask)) {
      int c = g.mul(h, a);
      seen[static_cast<std::size_t>(c)] = true;
      row[static_cast<std::size_t>(c)] = K(1);
    }
    rows.push_back(std::move(row));
  }
  return Subspace<K>::from_vectors(g.order(), rows);
}

/// Deterministic display names for the subgroups of a corpus group:
/// structure label, with a/b/c suffixes whenever several subgroups share it.
inline std::vector<std::pair<std::uint32_t, std::string>> named_subgroups(const FiniteGroup& g) {
  std::vector<std::pair<std::uint32_t, std::string>> out;
  std::map<std::string, std::vector<std::uint32_t>> by_label;
  for (std::uint32_t s : g.subgroups()) by_label[g.structure_label(s)].push_back(s);
  for (std::uint32_t s : g.subgroups()) {
    std::string label = g.structure_label(s);
    const auto& bucket = by_label[label];
    if (bucket.size() > 1) {
      std::size_t pos = static_cast<std::size_t>(
          std::find(bucket.begin(), bucket.end(), s) - bucket.begin());
      label += static_cast<char>('a' + pos);
    }
    out.emplace_back(s, label);
  }
  return out;
}

/// Resolves a subgroup name, optionally restricted to proper normal
/// subgroups of a context subgroup (used when reading chains). A bare
/// structure label is accepted when unique among the candidates; otherwise
/// the a/b/c suffix indexes the deterministic candidate order.
inline std::uint32_t resolve_subgroup(const FiniteGroup& g, const std::string& name,
                                      std::optional<std::uint32_t> context = std::nullopt) {
  std::string base = name;
  int suffix = -1;
  if (!base.empty() && base.back() >= 'a' && base.back() <= 'z' &&
      base.size() > 1 && std::isdigit(static_cast<unsigned char>(base[base.size() - 2]))) {
    suffix = base.back() - 'a';
    base.pop_back();
  }
  if (base == "1") return g.trivial_mask();
  std::vector<std::uint32_t> candidates;
  for (std::uint32_t s : g.subgroups()) {
    if (g.structure_label(s) != base) continue;
    if (context && !((s & *context) == s && s != *context && g.normal_in(s, *context))) continue;
    candidates.push_back(s);
  }
  if (candidates.empty()) throw InputError("no subgroup named " + name + " in " + g.name());
  if (suffix < 0) {
    if (candidates.size() > 1)
      throw InputError("ambiguous subgroup name " + name + " in " + g.name() + " (" +
                       std::to_string(candidates.size()) + " candidates; add a/b/c suffix)");
    return candidates.front();
  }
  require(suffix < static_cast<int>(candidates.size()), "subgroup suffix out of range: " + name);
  return candidates[static_cast<std::size_t>(suffix)];
}

/// Brute-force oracle queries, answered purely group-theoretically.
inline std::string classical_oracle(const FiniteGroup& g, const std::string& query) {
  std::ostringstream out;
  if (query == "order") {
    out << g.order();
  } else if (query == "composition factors") {
    bool first = true;
    for (int f : g.composition_factor_orders()) {
      if (!first) out << ",";
      out << f;
      first = false;
    }
  } else if (query == "commutator subgroup") {
    out << g.structure_label(g.commutator_subgroup());
  } else if (query == "abelianization order") {
    out << g.order() / FiniteGroup::mask_order(g.commutator_subgroup());
  } else if (query == "subgroup count") {
    out << g.subgroups().size();
  } else if (query == "normal subgroup count") {
    out << g.normal_subgroups().size();
  } else if (query == "conjugacy class count") {
    out << g.conjugacy_classes().size();
  } else {
    throw InputError("unknown oracle query: " + query);
  }
  return out.str();
}

}  // namespace qlattice
