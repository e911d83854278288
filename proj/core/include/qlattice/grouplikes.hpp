#pragma once

#include <algorithm>
#include <vector>

#include "qlattice/group.hpp"
#include "qlattice/hopf.hpp"

namespace qlattice {

namespace detail {

/// Characteristic polynomial by Faddeev-LeVerrier (char 0 only).
/// Coefficients low degree first; leading coefficient is 1.
template <FieldScalar K>
Vec<K> char_poly(const Matrix<K>& m) {
  const int n = m.rows();
  ensure(n == m.cols(), "char_poly: square matrix expected");
  Vec<K> coeffs(static_cast<std::size_t>(n) + 1, K(0));
  coeffs[static_cast<std::size_t>(n)] = K(1);
  Matrix<K> a = m;
  K c(0);
  for (int j = 1; j <= n; ++j) {
    if (j > 1) {
      Matrix<K> shifted = a;
      for (int i = 0; i < n; ++i) shifted.at(i, i) += c;
      a = m * shifted;
    }
    K tr(0);
    for (int i = 0; i < n; ++i) tr += a.at(i, i);
    c = K(0) - tr / K(j);
    coeffs[static_cast<std::size_t>(n - j)] = c;
  }
  return coeffs;
}

template <FieldScalar K>
K poly_eval(const Vec<K>& p, const Rational& x) {
  K acc(0);
  K xk = scalar_from_rational<K>(x);
  for (std::size_t i = p.size(); i-- > 0;) {
    K t = acc * xk;
    acc = t + p[i];
  }
  return acc;
}

/// Synthetic division by (x - r); returns quotient, requires exact division.
template <FieldScalar K>
Vec<K> poly_deflate(const Vec<K>& p, const Rational& r) {
  ensure(p.size() >= 2, "poly_deflate: degree too small");
  K root = scalar_from_rational<K>(r);
  Vec<K> q(p.size() - 1, K(0));
  K carry = p.back();
  for (std::size_t i = p.size() - 1; i-- > 0;) {
    q[i] = carry;
    K t = carry * root;
    carry = p[i] + t;
  }
  ensure(is_zero(carry), "poly_deflate: not a root");
  return q;
}

inline std::vector<mpz_class> divisors_bounded(const mpz_class& value, bool& ok) {
  mpz_class v = abs(value);
  std::vector<mpz_class> divs;
  if (v == 0) {
    ok = true;
    return divs;
  }
  // factoring huge constants is out of scope; callers mark the split incomplete
  if (v > mpz_class("1000000000000")) {
    ok = false;
    return divs;
  }
  for (mpz_class d = 1; d * d <= v; ++d) {
    if (v % d == 0) {
      divs.push_back(d);
      divs.push_back(v / d);
    }
  }
  ok = true;
  std::sort(divs.begin(), divs.end());
  divs.erase(std::unique(divs.begin(), divs.end()), divs.end());
  return divs;
}

/// Rational roots of p with multiplicities. fully_split reports whether the
/// polynomial factors completely into rational linear factors.
template <FieldScalar K>
std::vector<std::pair<Rational, int>> rational_roots(const Vec<K>& p, bool& fully_split) {
  // rational candidates come from the rational coordinate polynomial
  std::vector<Rational> p0(p.size(), Rational(0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    if constexpr (std::same_as<K, Rational>) {
      p0[i] = p[i];
    } else {
      p0[i] = p[i].is_rational() ? p[i].rational_part()
                                 : (p[i].coefficients().empty() ? Rational(0) : p[i].coefficients()[0]);
    }
  }
  std::vector<std::pair<Rational, int>> roots;
  Vec<K> work = p;
  // strip zero roots first
  int zero_mult = 0;
  while (work.size() > 1 && is_zero(work[0])) {
    work.erase(work.begin());
    ++zero_mult;
  }
  if (zero_mult > 0) roots.emplace_back(Rational(0), zero_mult);
  fully_split = true;
  if (work.size() <= 1) return roots;

  // integer-coefficient image of the rational coordinate polynomial
  std::vector<Rational> q0(p0.begin() + zero_mult, p0.end());
  mpz_class den_lcm = 1;
  for (const Rational& c : q0) {
    mpz_class d = c.get_den();
    den_lcm = lcm(den_lcm, d);
  }
  std::vector<mpz_class> zc;
  for (const Rational& c : q0) {
    mpq_class scaled = c * Rational(den_lcm);
    zc.push_back(scaled.get_num());
  }
  bool ok_const = true, ok_lead = true;
  std::vector<mpz_class> num_divs = divisors_bounded(zc.front(), ok_const);
  std::vector<mpz_class> den_divs = divisors_bounded(zc.back(), ok_lead);
  if (!ok_const || !ok_lead) {
    fully_split = false;
    return roots;
  }
  std::vector<Rational> candidates;
  for (const mpz_class& a : num_divs)
    for (const mpz_class& b : den_divs) {
      Rational r(a, b);
      r.canonicalize();
      candidates.push_back(r);
      candidates.push_back(-r);
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const Rational& cand : candidates) {
    int mult = 0;
    while (work.size() > 1 && is_zero(poly_eval(work, cand))) {
      work = poly_deflate(work, cand);
      ++mult;
    }
    if (mult > 0) roots.emplace_back(cand, mult);
    if (work.size() <= 1) break;
  }
  if (work.size() > 1) fully_split = false;
  return roots;
}

}  // namespace detail

/// The grouplike elements of H, found as algebra characters of the dual
/// algebra: simultaneous eigen-analysis of the commuting multiplications on
/// the abelianized dual, restricted to rational eigenvalues. `complete` is
/// false when some characteristic polynomial fails to split over the base
/// field; grouplikes defined over an extension may then be missing.
template <FieldScalar K>
struct GrouplikeSet {
  std::vector<Vec<K>> elements;
  bool complete = false;
  bool closed_under_mult = false;
  std::vector<std::vector<int>> table;  // index Cayley table when closed
  int identity = -1;
};

template <FieldScalar K>
GrouplikeSet<K> grouplikes(const HopfAlgebra<K>& h) {
  const int n = h.dim;
  // dual algebra multiplication: (f_i f_j)(e_r) = Delta_r coefficient at (i,j)
  std::vector<std::vector<Vec<K>>> dmult(
      static_cast<std::size_t>(n),
      std::vector<Vec<K>>(static_cast<std::size_t>(n), Vec<K>(static_cast<std::size_t>(n), K(0))));
  for (int r = 0; r < n; ++r)
    for (const ComultTerm<K>& t : h.comult[static_cast<std::size_t>(r)])
      dmult[static_cast<std::size_t>(t.left)][static_cast<std::size_t>(t.right)]
           [static_cast<std::size_t>(r)] = t.coeff;
  auto mul_d = [&](const Vec<K>& u, const Vec<K>& v) {
    Vec<K> r(static_cast<std::size_t>(n), K(0));
    for (int i = 0; i < n; ++i) {
      if (is_zero(u[static_cast<std::size_t>(i)])) continue;
      for (int j = 0; j < n; ++j) {
        if (is_zero(v[static_cast<std::size_t>(j)])) continue;
        K c = u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
        vec_add_scaled(r, c, dmult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      }
    }
    return r;
  };

  // two-sided ideal generated by commutators of the dual algebra
  std::vector<Vec<K>> commutators;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      Vec<K> c = dmult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const Vec<K>& d = dmult[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      for (int r = 0; r < n; ++r) c[static_cast<std::size_t>(r)] -= d[static_cast<std::size_t>(r)];
      if (!vec_is_zero(c)) commutators.push_back(std::move(c));
    }
  Subspace<K> ideal = Subspace<K>::from_vectors(n, commutators);
  for (;;) {
    std::vector<Vec<K>> grown;
    for (int b = 0; b < ideal.dim(); ++b) {
      Vec<K> v = ideal.basis_row(b);
      for (int i = 0; i < n; ++i) {
        Vec<K> lv = mul_d(unit_vector<K>(n, i), v);
        if (!ideal.contains_vector(lv)) grown.push_back(std::move(lv));
        Vec<K> rv = mul_d(v, unit_vector<K>(n, i));
        if (!ideal.contains_vector(rv)) grown.push_back(std::move(rv));
      }
    }
    if (grown.empty()) break;
    for (int b = 0; b < ideal.dim(); ++b) grown.push_back(ideal.basis_row(b));
    ideal = Subspace<K>::from_vectors(n, grown);
  }

  // abelianization B = dual / ideal
  Matrix<K> reduce = ideal.reduction_matrix();  // m x n
  Matrix<K> lift = ideal.lift_matrix();         // n x m
  const int m = reduce.rows();
  std::vector<std::vector<Vec<K>>> bmult(
      static_cast<std::size_t>(m),
      std::vector<Vec<K>>(static_cast<std::size_t>(m), Vec<K>(static_cast<std::size_t>(m), K(0))));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      bmult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          reduce.apply(mul_d(lift.col(i), lift.col(j)));

  // joint eigencovectors of the commuting transposed multiplications
  struct Node {
    Matrix<K> basis;  // rows: covectors on B
    std::vector<Rational> eigenvalues;
  };
  GrouplikeSet<K> out;
  out.complete = true;
  std::vector<Node> frontier{Node{Matrix<K>::identity(m), {}}};
  for (int op = 0; op < m; ++op) {
    Matrix<K> t(m, m);  // transpose of left multiplication by basis op
    for (int r = 0; r < m; ++r)
      for (int j = 0; j < m; ++j)
        t.at(j, r) = bmult[static_cast<std::size_t>(op)][static_cast<std::size_t>(j)]
                          [static_cast<std::size_t>(r)];
    std::vector<Node> next;
    for (Node& node : frontier) {
      const int d = node.basis.rows();
      Subspace<K> vspace = Subspace<K>::from_matrix(m, node.basis);
      Matrix<K> restricted(d, d);
      for (int r = 0; r < d; ++r) {
        Vec<K> image = t.apply(node.basis.row(r));
        std::optional<Vec<K>> coords = vspace.coordinates(image);
        ensure(coords.has_value(), "eigen subspace not invariant");
        for (int c = 0; c < d; ++c) restricted.at(r, c) = (*coords)[static_cast<std::size_t>(c)];
      }
      // note rows of `basis` are the vectors, so the operator on coordinates
      // is the transpose of `restricted`
      Matrix<K> op_matrix = restricted.transposed();
      bool split = true;
      auto roots = detail::rational_roots(detail::char_poly(op_matrix), split);
      if (!split) out.complete = false;
      int strict_total = 0;
      for (const auto& [lambda, mult] : roots) {
        Matrix<K> shifted = op_matrix;
        for (int i = 0; i < d; ++i) shifted.at(i, i) -= scalar_from_rational<K>(lambda);
        Matrix<K> eig = kernel(shifted);
        if (eig.rows() == 0) continue;
        strict_total += eig.rows();
        Matrix<K> global(eig.rows(), m);
        for (int r = 0; r < eig.rows(); ++r) {
          Vec<K> v(static_cast<std::size_t>(m), K(0));
          for (int c = 0; c < d; ++c) vec_add_scaled(v, eig.at(r, c), node.basis.row(c));
          global.set_row(r, v);
        }
        Node child;
        child.basis = std::move(global);
        child.eigenvalues = node.eigenvalues;
        child.eigenvalues.push_back(lambda);
        next.push_back(std::move(child));
      }
      // directions outside strict eigenspaces cannot carry characters; they
      // only affect completeness when the polynomial failed to split
      (void)strict_total;
    }
    frontier = std::move(next);
  }

  // each leaf's eigenvalue tuple is the candidate character
  std::vector<Vec<K>> found;
  for (const Node& leaf : frontier) {
    ensure(static_cast<int>(leaf.eigenvalues.size()) == m, "eigen recursion depth mismatch");
    Vec<K> chi(static_cast<std::size_t>(m), K(0));
    for (int j = 0; j < m; ++j) chi[static_cast<std::size_t>(j)] = scalar_from_rational<K>(leaf.eigenvalues[static_cast<std::size_t>(j)]);
    // g_i = chi(reduce(f_i))
    Vec<K> g(static_cast<std::size_t>(n), K(0));
    for (int i = 0; i < n; ++i) {
      K acc(0);
      for (int j = 0; j < m; ++j) {
        if (is_zero(reduce.at(j, i))) continue;
        K t2 = chi[static_cast<std::size_t>(j)] * reduce.at(j, i);
        acc += t2;
      }
      g[static_cast<std::size_t>(i)] = acc;
    }
    if (h.is_grouplike(g) && std::find(found.begin(), found.end(), g) == found.end())
      found.push_back(std::move(g));
  }

  std::sort(found.begin(), found.end(), [](const Vec<K>& a, const Vec<K>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == b[i]) continue;
      return scalar_less(a[i], b[i]);
    }
    return false;
  });
  out.elements = std::move(found);

  // group structure on the found grouplikes
  const int count = static_cast<int>(out.elements.size());
  out.closed_under_mult = count > 0;
  out.table.assign(static_cast<std::size_t>(count), std::vector<int>(static_cast<std::size_t>(count), -1));
  for (int i = 0; i < count && out.closed_under_mult; ++i)
    for (int j = 0; j < count; ++j) {
      Vec<K> p = h.multiply(out.elements[static_cast<std::size_t>(i)],
                            out.elements[static_cast<std::size_t>(j)]);
      auto it = std::find(out.elements.begin(), out.elements.end(), p);
      if (it == out.elements.end()) {
        out.closed_under_mult = false;
        break;
      }
      out.table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          static_cast<int>(it - out.elements.begin());
    }
  if (!out.closed_under_mult) out.table.clear();
  for (int i = 0; i < count; ++i)
    if (out.elements[static_cast<std::size_t>(i)] == h.unit) out.identity = i;
  return out;
}

/// The grouplike group as a FiniteGroup (requires a closed grouplike set).
template <FieldScalar K>
FiniteGroup grouplike_group(const HopfAlgebra<K>& h, const GrouplikeSet<K>& g) {
  require(g.closed_under_mult && !g.table.empty(), "grouplike set is not a group");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < g.elements.size(); ++i) names.push_back("g" + std::to_string(i));
  (void)h;
  return FiniteGroup::from_cayley_table("G(H)", std::move(names), g.table);
}

}  // namespace qlattice
