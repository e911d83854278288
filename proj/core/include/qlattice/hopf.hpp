#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qlattice/subspace.hpp"

namespace qlattice {

template <FieldScalar K>
struct ComultTerm {
  K coeff;
  int left, right;
};

/// Comultiplication of one basis element, canonical form: sorted by
/// (left, right), duplicates merged, zero coefficients dropped.
template <FieldScalar K>
using SparseComult = std::vector<ComultTerm<K>>;

template <FieldScalar K>
SparseComult<K> canonicalize_comult(SparseComult<K> terms) {
  std::map<std::pair<int, int>, K> acc;
  for (ComultTerm<K>& t : terms) {
    auto [it, fresh] = acc.emplace(std::make_pair(t.left, t.right), t.coeff);
    if (!fresh) it->second += t.coeff;
  }
  SparseComult<K> out;
  for (auto& [key, c] : acc)
    if (!is_zero(c)) out.push_back({std::move(c), key.first, key.second});
  return out;
}

/// Raw structure constants before validation.
template <FieldScalar K>
struct HopfData {
  int dim = 0;
  std::vector<std::string> labels;
  std::vector<std::vector<Vec<K>>> mult;  // mult[i][j] = coordinates of e_i * e_j
  Vec<K> unit;
  std::vector<SparseComult<K>> comult;
  Vec<K> counit;
  Matrix<K> antipode;  // column i = S(e_i)
};

template <FieldScalar K>
struct HopfAlgebra;

template <FieldScalar K>
using HopfPtr = std::shared_ptr<const HopfAlgebra<K>>;

/// A validated finite-dimensional Hopf algebra given by structure constants.
/// Immutable after build_validate; the antipode inverse is cached eagerly.
template <FieldScalar K>
struct HopfAlgebra {
  int dim = 0;
  std::vector<std::string> labels;
  std::vector<std::vector<Vec<K>>> mult;
  Vec<K> unit;
  std::vector<SparseComult<K>> comult;
  Vec<K> counit;
  Matrix<K> antipode;
  Matrix<K> antipode_inv;
  bool commutative = false;
  bool cocommutative = false;

  const Vec<K>& product(int i, int j) const {
    return mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }

  Vec<K> multiply(const Vec<K>& u, const Vec<K>& v) const {
    Vec<K> r(static_cast<std::size_t>(dim), K(0));
    for (int i = 0; i < dim; ++i) {
      if (is_zero(u[static_cast<std::size_t>(i)])) continue;
      for (int j = 0; j < dim; ++j) {
        if (is_zero(v[static_cast<std::size_t>(j)])) continue;
        K c = u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
        vec_add_scaled(r, c, product(i, j));
      }
    }
    return r;
  }

  K counit_of(const Vec<K>& v) const {
    K acc(0);
    for (int i = 0; i < dim; ++i) {
      if (is_zero(v[static_cast<std::size_t>(i)]) || is_zero(counit[static_cast<std::size_t>(i)]))
        continue;
      K t = v[static_cast<std::size_t>(i)] * counit[static_cast<std::size_t>(i)];
      acc += t;
    }
    return acc;
  }

  Vec<K> antipode_of(const Vec<K>& v) const { return antipode.apply(v); }
  Vec<K> antipode_inv_of(const Vec<K>& v) const { return antipode_inv.apply(v); }

  /// Delta(v) as a sparse vector on H (x) H with row-major flattening.
  SparseVec<K> delta_sparse(const Vec<K>& v) const {
    SparseVec<K> out;
    for (int i = 0; i < dim; ++i) {
      const K& c = v[static_cast<std::size_t>(i)];
      if (is_zero(c)) continue;
      for (const ComultTerm<K>& t : comult[static_cast<std::size_t>(i)]) {
        K val = c * t.coeff;
        long long key = flat2(t.left, t.right, dim);
        auto it = out.find(key);
        if (it == out.end()) {
          out.emplace(key, std::move(val));
        } else {
          it->second += val;
          if (is_zero(it->second)) out.erase(it);
        }
      }
    }
    return out;
  }

  Vec<K> delta_dense(const Vec<K>& v) const {
    Vec<K> out(static_cast<std::size_t>(dim) * dim, K(0));
    for (const auto& [key, c] : delta_sparse(v)) out[static_cast<std::size_t>(key)] = c;
    return out;
  }

  /// (Delta (x) id) Delta(e_i) as sparse (a,b,c) terms on H (x) H (x) H.
  SparseVec<K> delta2_sparse_basis(int i) const {
    SparseVec<K> out;
    for (const ComultTerm<K>& t : comult[static_cast<std::size_t>(i)]) {
      for (const ComultTerm<K>& s : comult[static_cast<std::size_t>(t.left)]) {
        K val = t.coeff * s.coeff;
        long long key = flat3(s.left, s.right, t.right, dim, dim);
        auto it = out.find(key);
        if (it == out.end()) {
          out.emplace(key, std::move(val));
        } else {
          it->second += val;
          if (is_zero(it->second)) out.erase(it);
        }
      }
    }
    return out;
  }

  Matrix<K> left_mult_matrix(int i) const {
    Matrix<K> m(dim, dim);
    for (int j = 0; j < dim; ++j)
      for (int r = 0; r < dim; ++r) m.at(r, j) = product(i, j)[static_cast<std::size_t>(r)];
    return m;
  }

  Matrix<K> right_mult_matrix(int k) const {
    Matrix<K> m(dim, dim);
    for (int j = 0; j < dim; ++j)
      for (int r = 0; r < dim; ++r) m.at(r, j) = product(j, k)[static_cast<std::size_t>(r)];
    return m;
  }

  /// Right adjoint action S(x_1) a x_2 of the vector x on the vector a.
  Vec<K> ad_right(const Vec<K>& x, const Vec<K>& a) const {
    Vec<K> out(static_cast<std::size_t>(dim), K(0));
    for (int i = 0; i < dim; ++i) {
      const K& xi = x[static_cast<std::size_t>(i)];
      if (is_zero(xi)) continue;
      for (const ComultTerm<K>& t : comult[static_cast<std::size_t>(i)]) {
        Vec<K> s1a = multiply(antipode.col(t.left), a);
        Vec<K> term = multiply(s1a, unit_vector<K>(dim, t.right));
        K c = xi * t.coeff;
        vec_add_scaled(out, c, term);
      }
    }
    return out;
  }

  /// Left adjoint action x_1 a S(x_2).
  Vec<K> ad_left(const Vec<K>& x, const Vec<K>& a) const {
    Vec<K> out(static_cast<std::size_t>(dim), K(0));
    for (int i = 0; i < dim; ++i) {
      const K& xi = x[static_cast<std::size_t>(i)];
      if (is_zero(xi)) continue;
      for (const ComultTerm<K>& t : comult[static_cast<std::size_t>(i)]) {
        Vec<K> x1a = multiply(unit_vector<K>(dim, t.left), a);
        Vec<K> term = multiply(x1a, antipode.col(t.right));
        K c = xi * t.coeff;
        vec_add_scaled(out, c, term);
      }
    }
    return out;
  }

  /// Left adjoint coaction x -> x_1 S(x_3) (x) x_2, dense on H (x) H.
  Vec<K> coadjoint_dense(const Vec<K>& x) const {
    Vec<K> out(static_cast<std::size_t>(dim) * dim, K(0));
    for (int i = 0; i < dim; ++i) {
      const K& xi = x[static_cast<std::size_t>(i)];
      if (is_zero(xi)) continue;
      for (const auto& [key, c] : delta2_sparse_basis(i)) {
        int a = static_cast<int>(key / (static_cast<long long>(dim) * dim));
        int b = static_cast<int>(key / dim % dim);
        int cc = static_cast<int>(key % dim);
        Vec<K> first_leg = multiply(unit_vector<K>(dim, a), antipode.col(cc));
        K scale = xi * c;
        for (int r = 0; r < dim; ++r) {
          if (is_zero(first_leg[static_cast<std::size_t>(r)])) continue;
          K t = scale * first_leg[static_cast<std::size_t>(r)];
          out[static_cast<std::size_t>(flat2(r, b, dim))] += t;
        }
      }
    }
    return out;
  }

  bool is_grouplike(const Vec<K>& v) const {
    if (!(counit_of(v) == K(1))) return false;
    SparseVec<K> lhs = delta_sparse(v);
    SparseVec<K> rhs;
    for (int i = 0; i < dim; ++i) {
      if (is_zero(v[static_cast<std::size_t>(i)])) continue;
      for (int j = 0; j < dim; ++j) {
        if (is_zero(v[static_cast<std::size_t>(j)])) continue;
        K c = v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
        if (!is_zero(c)) rhs.emplace(flat2(i, j, dim), c);
      }
    }
    return lhs == rhs;
  }

  /// Structure-constant equality; labels are not compared.
  friend bool operator==(const HopfAlgebra& a, const HopfAlgebra& b) {
    if (a.dim != b.dim || !(a.unit == b.unit) || !(a.counit == b.counit)) return false;
    if (!(a.antipode == b.antipode)) return false;
    for (int i = 0; i < a.dim; ++i) {
      for (int j = 0; j < a.dim; ++j)
        if (!(a.product(i, j) == b.product(i, j))) return false;
      const auto& ca = a.comult[static_cast<std::size_t>(i)];
      const auto& cb = b.comult[static_cast<std::size_t>(i)];
      if (ca.size() != cb.size()) return false;
      for (std::size_t t = 0; t < ca.size(); ++t)
        if (!(ca[t].coeff == cb[t].coeff) || ca[t].left != cb[t].left || ca[t].right != cb[t].right)
          return false;
    }
    return true;
  }
};

template <FieldScalar K>
struct Element {
  HopfPtr<K> parent;
  Vec<K> coords;
};

struct AxiomFailure {
  std::string axiom;
  std::string witness;
};

template <FieldScalar K>
struct ValidationResult {
  HopfPtr<K> algebra;  // null when validation failed
  std::vector<AxiomFailure> failures;
  bool ok() const { return algebra != nullptr; }
  std::string report() const {
    std::string out;
    for (const AxiomFailure& f : failures) out += f.axiom + " fails at " + f.witness + "\n";
    return out;
  }
};

namespace detail {

template <FieldScalar K>
SparseVec<K> delta_product(const HopfAlgebra<K>& h, const SparseComult<K>& di,
                           const SparseComult<K>& dj) {
  // Delta(e_i) * Delta(e_j) in H (x) H
  SparseVec<K> out;
  for (const ComultTerm<K>& t : di)
    for (const ComultTerm<K>& s : dj) {
      K c = t.coeff * s.coeff;
      const Vec<K>& left = h.product(t.left, s.left);
      const Vec<K>& right = h.product(t.right, s.right);
      for (int u = 0; u < h.dim; ++u) {
        if (is_zero(left[static_cast<std::size_t>(u)])) continue;
        K cu = c * left[static_cast<std::size_t>(u)];
        for (int v = 0; v < h.dim; ++v) {
          if (is_zero(right[static_cast<std::size_t>(v)])) continue;
          K val = cu * right[static_cast<std::size_t>(v)];
          long long key = flat2(u, v, h.dim);
          auto it = out.find(key);
          if (it == out.end()) {
            out.emplace(key, std::move(val));
          } else {
            it->second += val;
            if (is_zero(it->second)) out.erase(it);
          }
        }
      }
    }
  return out;
}

}  // namespace detail

/// Validates raw structure constants against every Hopf axiom and returns the
/// immutable algebra on success, or the list of failed axioms with witnesses.
template <FieldScalar K>
ValidationResult<K> build_validate(HopfData<K> data) {
  const int n = data.dim;
  require(n >= 1, "dimension must be positive");
  require(static_cast<int>(data.mult.size()) == n, "mult table has wrong row count");
  for (auto& row : data.mult) {
    require(static_cast<int>(row.size()) == n, "mult table has wrong column count");
    for (auto& entry : row) require(static_cast<int>(entry.size()) == n, "mult entry has wrong length");
  }
  require(static_cast<int>(data.unit.size()) == n, "unit vector has wrong length");
  require(static_cast<int>(data.counit.size()) == n, "counit vector has wrong length");
  require(static_cast<int>(data.comult.size()) == n, "comult table has wrong length");
  require(data.antipode.rows() == n && data.antipode.cols() == n, "antipode has wrong shape");
  if (data.labels.empty())
    for (int i = 0; i < n; ++i) data.labels.push_back("e" + std::to_string(i));
  require(static_cast<int>(data.labels.size()) == n, "label count mismatch");
  for (auto& c : data.comult) {
    for (const ComultTerm<K>& t : c)
      require(t.left >= 0 && t.left < n && t.right >= 0 && t.right < n, "comult index out of range");
    c = canonicalize_comult(std::move(c));
  }

  auto h = std::make_shared<HopfAlgebra<K>>();
  h->dim = n;
  h->labels = std::move(data.labels);
  h->mult = std::move(data.mult);
  h->unit = std::move(data.unit);
  h->comult = std::move(data.comult);
  h->counit = std::move(data.counit);
  h->antipode = std::move(data.antipode);

  std::vector<AxiomFailure> failures;
  auto label = [&](int i) { return h->labels[static_cast<std::size_t>(i)]; };

  // associativity: left and right multiplication operators commute
  {
    std::vector<Matrix<K>> left(static_cast<std::size_t>(n)), right(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      left[static_cast<std::size_t>(i)] = h->left_mult_matrix(i);
      right[static_cast<std::size_t>(i)] = h->right_mult_matrix(i);
    }
    for (int i = 0; i < n && failures.size() < 8; ++i)
      for (int k = 0; k < n; ++k) {
        Matrix<K> lr = right[static_cast<std::size_t>(k)] * left[static_cast<std::size_t>(i)];
        Matrix<K> rl = left[static_cast<std::size_t>(i)] * right[static_cast<std::size_t>(k)];
        if (!(lr == rl)) {
          failures.push_back({"associativity", "(" + label(i) + ", *, " + label(k) + ")"});
          break;
        }
      }
  }

  // unitality
  for (int j = 0; j < n; ++j) {
    Vec<K> ej = unit_vector<K>(n, j);
    if (!(h->multiply(h->unit, ej) == ej) || !(h->multiply(ej, h->unit) == ej)) {
      failures.push_back({"unitality", label(j)});
      break;
    }
  }

  // coassociativity
  for (int i = 0; i < n; ++i) {
    SparseVec<K> lhs = h->delta2_sparse_basis(i);
    SparseVec<K> rhs;
    for (const ComultTerm<K>& t : h->comult[static_cast<std::size_t>(i)])
      for (const ComultTerm<K>& s : h->comult[static_cast<std::size_t>(t.right)]) {
        K val = t.coeff * s.coeff;
        long long key = flat3(t.left, s.left, s.right, n, n);
        auto it = rhs.find(key);
        if (it == rhs.end()) {
          rhs.emplace(key, std::move(val));
        } else {
          it->second += val;
          if (is_zero(it->second)) rhs.erase(it);
        }
      }
    if (!(lhs == rhs)) {
      failures.push_back({"coassociativity", label(i)});
      break;
    }
  }

  // counitality
  for (int i = 0; i < n; ++i) {
    Vec<K> left(static_cast<std::size_t>(n), K(0)), right(static_cast<std::size_t>(n), K(0));
    for (const ComultTerm<K>& t : h->comult[static_cast<std::size_t>(i)]) {
      K cl = t.coeff * h->counit[static_cast<std::size_t>(t.left)];
      left[static_cast<std::size_t>(t.right)] += cl;
      K cr = t.coeff * h->counit[static_cast<std::size_t>(t.right)];
      right[static_cast<std::size_t>(t.left)] += cr;
    }
    Vec<K> ei = unit_vector<K>(n, i);
    if (!(left == ei) || !(right == ei)) {
      failures.push_back({"counitality", label(i)});
      break;
    }
  }

  // counit is an algebra map
  {
    bool bad = false;
    for (int i = 0; i < n && !bad; ++i)
      for (int j = 0; j < n; ++j) {
        K lhs = h->counit_of(h->product(i, j));
        K rhs = h->counit[static_cast<std::size_t>(i)] * h->counit[static_cast<std::size_t>(j)];
        if (!(lhs == rhs)) {
          failures.push_back({"counit-algebra-map", "(" + label(i) + ", " + label(j) + ")"});
          bad = true;
          break;
        }
      }
    if (!(h->counit_of(h->unit) == K(1))) failures.push_back({"counit-algebra-map", "unit"});
  }

  // comultiplication is an algebra map
  {
    bool bad = false;
    for (int i = 0; i < n && !bad; ++i)
      for (int j = 0; j < n; ++j) {
        SparseVec<K> lhs = h->delta_sparse(h->product(i, j));
        SparseVec<K> rhs = detail::delta_product(*h, h->comult[static_cast<std::size_t>(i)],
                                                 h->comult[static_cast<std::size_t>(j)]);
        if (!(lhs == rhs)) {
          failures.push_back({"comult-algebra-map", "(" + label(i) + ", " + label(j) + ")"});
          bad = true;
          break;
        }
      }
    SparseVec<K> delta_unit = h->delta_sparse(h->unit);
    SparseVec<K> unit_unit;
    for (int i = 0; i < n; ++i) {
      if (is_zero(h->unit[static_cast<std::size_t>(i)])) continue;
      for (int j = 0; j < n; ++j) {
        if (is_zero(h->unit[static_cast<std::size_t>(j)])) continue;
        unit_unit.emplace(flat2(i, j, n),
                          h->unit[static_cast<std::size_t>(i)] * h->unit[static_cast<std::size_t>(j)]);
      }
    }
    if (!(delta_unit == unit_unit)) failures.push_back({"comult-algebra-map", "unit"});
  }

  // antipode axiom m(S (x) id)Delta = unit . counit = m(id (x) S)Delta
  for (int i = 0; i < n; ++i) {
    Vec<K> left(static_cast<std::size_t>(n), K(0)), right(static_cast<std::size_t>(n), K(0));
    for (const ComultTerm<K>& t : h->comult[static_cast<std::size_t>(i)]) {
      Vec<K> l = h->multiply(h->antipode.col(t.left), unit_vector<K>(n, t.right));
      vec_add_scaled(left, t.coeff, l);
      Vec<K> r = h->multiply(unit_vector<K>(n, t.left), h->antipode.col(t.right));
      vec_add_scaled(right, t.coeff, r);
    }
    Vec<K> expect = vec_scaled(h->unit, h->counit[static_cast<std::size_t>(i)]);
    bool bad = false;
    if (!(left == expect)) {
      failures.push_back({"antipode-left", label(i)});
      bad = true;
    }
    if (!(right == expect)) {
      failures.push_back({"antipode-right", label(i)});
      bad = true;
    }
    if (bad) break;
  }

  std::optional<Matrix<K>> sinv = inverse(h->antipode);
  if (!sinv)
    failures.push_back({"antipode-invertible", "S"});
  else
    h->antipode_inv = std::move(*sinv);

  if (!failures.empty()) return {nullptr, std::move(failures)};

  h->commutative = true;
  for (int i = 0; i < n && h->commutative; ++i)
    for (int j = 0; j < i; ++j)
      if (!(h->product(i, j) == h->product(j, i))) {
        h->commutative = false;
        break;
      }
  h->cocommutative = true;
  for (int i = 0; i < n && h->cocommutative; ++i) {
    SparseComult<K> swapped;
    for (const ComultTerm<K>& t : h->comult[static_cast<std::size_t>(i)])
      swapped.push_back({t.coeff, t.right, t.left});
    swapped = canonicalize_comult(std::move(swapped));
    const auto& orig = h->comult[static_cast<std::size_t>(i)];
    if (swapped.size() != orig.size()) {
      h->cocommutative = false;
      break;
    }
    for (std::size_t t = 0; t < orig.size(); ++t)
      if (!(swapped[t].coeff == orig[t].coeff) || swapped[t].left != orig[t].left ||
          swapped[t].right != orig[t].right) {
        h->cocommutative = false;
        break;
      }
  }

  return {std::move(h), {}};
}

template <FieldScalar K>
HopfPtr<K> build_validate_or_throw(HopfData<K> data, const std::string& what) {
  ValidationResult<K> r = build_validate(std::move(data));
  if (!r.ok()) throw InputError(what + ": " + r.report());
  return r.algebra;
}

// ---------------------------------------------------------------------------
// Dual, opposite/co-opposite variants, tensor products.
// ---------------------------------------------------------------------------

/// The dual Hopf algebra on the dual basis: multiplication and
/// comultiplication tables transpose into each other, the antipode
/// transposes. Applying dual twice restores the original structure
/// constants bit for bit.
template <FieldScalar K>
HopfPtr<K> dual(const HopfAlgebra<K>& h) {
  const int n = h.dim;
  HopfData<K> d;
  d.dim = n;
  for (int i = 0; i < n; ++i) d.labels.push_back("d(" + h.labels[static_cast<std::size_t>(i)] + ")");
  d.mult.assign(static_cast<std::size_t>(n),
                std::vector<Vec<K>>(static_cast<std::size_t>(n), Vec<K>(static_cast<std::size_t>(n), K(0))));
  for (int r = 0; r < n; ++r)
    for (const ComultTerm<K>& t : h.comult[static_cast<std::size_t>(r)])
      d.mult[static_cast<std::size_t>(t.left)][static_cast<std::size_t>(t.right)]
            [static_cast<std::size_t>(r)] = t.coeff;
  d.unit = h.counit;
  d.comult.assign(static_cast<std::size_t>(n), {});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Vec<K>& p = h.product(i, j);
      for (int r = 0; r < n; ++r)
        if (!is_zero(p[static_cast<std::size_t>(r)]))
          d.comult[static_cast<std::size_t>(r)].push_back({p[static_cast<std::size_t>(r)], i, j});
    }
  d.counit = h.unit;
  d.antipode = h.antipode.transposed();
  return build_validate_or_throw(std::move(d), "dual is not a Hopf algebra");
}

/// Opposite multiplication and/or comultiplication. Either flag alone flips
/// the antipode to its inverse; both together restore S.
template <FieldScalar K>
HopfPtr<K> variant(const HopfAlgebra<K>& h, bool opposite_mult, bool opposite_comult) {
  HopfData<K> d;
  d.dim = h.dim;
  d.labels = h.labels;
  d.unit = h.unit;
  d.counit = h.counit;
  d.mult = h.mult;
  if (opposite_mult)
    for (int i = 0; i < h.dim; ++i)
      for (int j = 0; j < i; ++j)
        std::swap(d.mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                  d.mult[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
  d.comult = h.comult;
  if (opposite_comult)
    for (auto& terms : d.comult) {
      for (ComultTerm<K>& t : terms) std::swap(t.left, t.right);
      terms = canonicalize_comult(std::move(terms));
    }
  d.antipode = (opposite_mult == opposite_comult) ? h.antipode : h.antipode_inv;
  return build_validate_or_throw(std::move(d), "variant is not a Hopf algebra");
}

/// Componentwise tensor Hopf algebra with row-major index flattening.
template <FieldScalar K>
HopfPtr<K> tensor_product(const HopfAlgebra<K>& a, const HopfAlgebra<K>& b) {
  const int n1 = a.dim, n2 = b.dim, n = n1 * n2;
  HopfData<K> d;
  d.dim = n;
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j)
      d.labels.push_back(a.labels[static_cast<std::size_t>(i)] + "(x)" +
                         b.labels[static_cast<std::size_t>(j)]);
  d.mult.assign(static_cast<std::size_t>(n),
                std::vector<Vec<K>>(static_cast<std::size_t>(n), Vec<K>(static_cast<std::size_t>(n), K(0))));
  for (int i1 = 0; i1 < n1; ++i1)
    for (int i2 = 0; i2 < n2; ++i2)
      for (int j1 = 0; j1 < n1; ++j1)
        for (int j2 = 0; j2 < n2; ++j2)
          d.mult[static_cast<std::size_t>(flat2(i1, i2, n2))]
                [static_cast<std::size_t>(flat2(j1, j2, n2))] =
              vec_kron(a.product(i1, j1), b.product(i2, j2));
  d.unit = vec_kron(a.unit, b.unit);
  d.comult.assign(static_cast<std::size_t>(n), {});
  for (int i1 = 0; i1 < n1; ++i1)
    for (int i2 = 0; i2 < n2; ++i2) {
      SparseComult<K>& terms = d.comult[static_cast<std::size_t>(flat2(i1, i2, n2))];
      for (const ComultTerm<K>& t : a.comult[static_cast<std::size_t>(i1)])
        for (const ComultTerm<K>& s : b.comult[static_cast<std::size_t>(i2)])
          terms.push_back({t.coeff * s.coeff, static_cast<int>(flat2(t.left, s.left, n2)),
                           static_cast<int>(flat2(t.right, s.right, n2))});
    }
  d.counit = vec_kron(a.counit, b.counit);
  d.antipode = kron(a.antipode, b.antipode);
  return build_validate_or_throw(std::move(d), "tensor product is not a Hopf algebra");
}

// ---------------------------------------------------------------------------
// Linear maps between Hopf algebras with verified structural flags.
// ---------------------------------------------------------------------------

template <FieldScalar K>
struct StructuredMap {
  HopfPtr<K> domain, codomain;
  Matrix<K> matrix;  // codomain dim x domain dim
  bool is_algebra_map = false;
  bool is_coalgebra_map = false;
  bool is_unital = false;
  bool is_counital = false;
  bool is_bijective = false;

  Vec<K> apply(const Vec<K>& v) const { return matrix.apply(v); }

  Subspace<K> image() const {
    std::vector<Vec<K>> cols;
    for (int j = 0; j < matrix.cols(); ++j) cols.push_back(matrix.col(j));
    return Subspace<K>::from_vectors(codomain->dim, cols);
  }

  Subspace<K> kernel_space() const {
    Matrix<K> ker = kernel(matrix);
    return Subspace<K>::from_matrix(domain->dim, std::move(ker));
  }

  bool check_algebra_map() const {
    for (int i = 0; i < domain->dim; ++i)
      for (int j = 0; j < domain->dim; ++j) {
        Vec<K> lhs = matrix.apply(domain->product(i, j));
        Vec<K> rhs = codomain->multiply(matrix.col(i), matrix.col(j));
        if (!(lhs == rhs)) return false;
      }
    return true;
  }

  bool check_unital() const { return matrix.apply(domain->unit) == codomain->unit; }

  bool check_coalgebra_map() const {
    for (int i = 0; i < domain->dim; ++i) {
      SparseVec<K> lhs;  // (F (x) F) Delta_dom
      for (const ComultTerm<K>& t : domain->comult[static_cast<std::size_t>(i)]) {
        Vec<K> fa = matrix.col(t.left), fb = matrix.col(t.right);
        for (int u = 0; u < codomain->dim; ++u) {
          if (is_zero(fa[static_cast<std::size_t>(u)])) continue;
          K cu = t.coeff * fa[static_cast<std::size_t>(u)];
          for (int v = 0; v < codomain->dim; ++v) {
            if (is_zero(fb[static_cast<std::size_t>(v)])) continue;
            K val = cu * fb[static_cast<std::size_t>(v)];
            long long key = flat2(u, v, codomain->dim);
            auto it = lhs.find(key);
            if (it == lhs.end()) {
              lhs.emplace(key, std::move(val));
            } else {
              it->second += val;
              if (is_zero(it->second)) lhs.erase(it);
            }
          }
        }
      }
      SparseVec<K> rhs = codomain->delta_sparse(matrix.col(i));
      if (!(lhs == rhs)) return false;
    }
    return true;
  }

  bool check_counital() const {
    for (int i = 0; i < domain->dim; ++i) {
      K lhs = codomain->counit_of(matrix.col(i));
      if (!(lhs == domain->counit[static_cast<std::size_t>(i)])) return false;
    }
    return true;
  }

  bool check_bijective() const {
    return matrix.rows() == matrix.cols() && inverse(matrix).has_value();
  }

  /// All five flags recomputed from scratch.
  bool reverify() const {
    StructuredMap copy = verified(domain, codomain, matrix);
    return copy.is_algebra_map == is_algebra_map && copy.is_coalgebra_map == is_coalgebra_map &&
           copy.is_unital == is_unital && copy.is_counital == is_counital &&
           copy.is_bijective == is_bijective;
  }

  static StructuredMap verified(HopfPtr<K> dom, HopfPtr<K> cod, Matrix<K> m) {
    StructuredMap f;
    f.domain = std::move(dom);
    f.codomain = std::move(cod);
    ensure(m.rows() == f.codomain->dim && m.cols() == f.domain->dim, "map shape mismatch");
    f.matrix = std::move(m);
    f.is_algebra_map = f.check_algebra_map();
    f.is_unital = f.check_unital();
    f.is_coalgebra_map = f.check_coalgebra_map();
    f.is_counital = f.check_counital();
    f.is_bijective = f.check_bijective();
    return f;
  }
};

template <FieldScalar K>
StructuredMap<K> compose(const StructuredMap<K>& g, const StructuredMap<K>& f) {
  ensure(f.codomain == g.domain || *f.codomain == *g.domain, "compose: middle mismatch");
  return StructuredMap<K>::verified(f.domain, g.codomain, g.matrix * f.matrix);
}

template <FieldScalar K>
StructuredMap<K> inverse_map(const StructuredMap<K>& f) {
  require(f.is_bijective, "inverse_map needs a bijective map");
  std::optional<Matrix<K>> inv = inverse(f.matrix);
  ensure(inv.has_value(), "bijective flag inconsistent");
  return StructuredMap<K>::verified(f.codomain, f.domain, std::move(*inv));
}

}  // namespace qlattice
