#pragma once

#include <compare>
#include <map>
#include <optional>
#include <vector>

#include "qlattice/matrix.hpp"

namespace qlattice {

/// Index bookkeeping for flattened tensor spaces. Flattening is row-major:
/// the multi-index (i_1, ..., i_k) over factor dims (n_1, ..., n_k) maps to
/// ((i_1*n_2 + i_2)*n_3 + i_3)*... This convention is global; every map that
/// encodes a comultiplication as a matrix uses it.
class TensorIndex {
 public:
  explicit TensorIndex(std::vector<int> factor_dims) : dims_(std::move(factor_dims)) {
    total_ = 1;
    for (int d : dims_) {
      require(d >= 0, "negative tensor factor dimension");
      total_ *= d;
    }
  }

  int factors() const { return static_cast<int>(dims_.size()); }
  int factor_dim(int i) const { return dims_[static_cast<std::size_t>(i)]; }
  long long total_dim() const { return total_; }

  long long flatten(const std::vector<int>& index) const {
    ensure(index.size() == dims_.size(), "tensor index arity mismatch");
    long long flat = 0;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
      ensure(index[i] >= 0 && index[i] < dims_[i], "tensor index out of range");
      flat = flat * dims_[i] + index[i];
    }
    return flat;
  }

  std::vector<int> unflatten(long long flat) const {
    ensure(flat >= 0 && flat < total_, "flat tensor index out of range");
    std::vector<int> index(dims_.size(), 0);
    for (std::size_t i = dims_.size(); i-- > 0;) {
      index[i] = static_cast<int>(flat % dims_[i]);
      flat /= dims_[i];
    }
    return index;
  }

 private:
  std::vector<int> dims_;
  long long total_;
};

inline long long flat2(int i, int j, int n2) { return static_cast<long long>(i) * n2 + j; }
inline long long flat3(int i, int j, int k, int n2, int n3) {
  return (static_cast<long long>(i) * n2 + j) * n3 + k;
}

/// A linear subspace in canonical reduced-row-echelon form. Two subspaces are
/// equal exactly when their representations are identical, so operator== is a
/// plain field comparison.
template <FieldScalar K>
class Subspace {
 public:
  Subspace() : ambient_(0) {}

  static Subspace zero(int ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = Matrix<K>(0, ambient);
    return s;
  }

  static Subspace full(int ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = Matrix<K>::identity(ambient);
    s.pivots_.resize(static_cast<std::size_t>(ambient));
    for (int i = 0; i < ambient; ++i) s.pivots_[static_cast<std::size_t>(i)] = i;
    return s;
  }

  static Subspace from_matrix(int ambient, Matrix<K> rows) {
    require(rows.cols() == ambient || rows.rows() == 0, "subspace row length != ambient dim");
    if (rows.rows() == 0) return zero(ambient);
    Subspace s;
    s.ambient_ = ambient;
    s.pivots_ = rref_in_place(rows);
    s.basis_ = std::move(rows);
    return s;
  }

  static Subspace from_vectors(int ambient, const std::vector<Vec<K>>& vectors) {
    Matrix<K> m(0, ambient);
    for (const Vec<K>& v : vectors) {
      require(static_cast<int>(v.size()) == ambient, "subspace vector length != ambient dim");
      m.append_row(v);
    }
    return from_matrix(ambient, std::move(m));
  }

  static Subspace span_of(const Vec<K>& v) {
    return from_vectors(static_cast<int>(v.size()), {v});
  }

  int ambient_dim() const { return ambient_; }
  int dim() const { return basis_.rows(); }
  int codim() const { return ambient_ - dim(); }
  const Matrix<K>& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }
  Vec<K> basis_row(int i) const { return basis_.row(i); }

  bool is_zero_space() const { return dim() == 0; }
  bool is_full_space() const { return dim() == ambient_; }

  /// Remainder of v after reduction against the basis. Zero iff v lies here.
  Vec<K> reduce(Vec<K> v) const {
    ensure(static_cast<int>(v.size()) == ambient_, "reduce: ambient mismatch");
    for (int i = 0; i < basis_.rows(); ++i) {
      const K& c = v[static_cast<std::size_t>(pivots_[static_cast<std::size_t>(i)])];
      if (is_zero(c)) continue;
      K f = c;
      for (int j = 0; j < ambient_; ++j) {
        if (is_zero(basis_.at(i, j))) continue;
        K t = f * basis_.at(i, j);
        v[static_cast<std::size_t>(j)] -= t;
      }
    }
    return v;
  }

  bool contains_vector(const Vec<K>& v) const { return vec_is_zero(reduce(v)); }

  /// Coordinates of v in this basis, or nullopt when v is not a member.
  std::optional<Vec<K>> coordinates(const Vec<K>& v) const {
    ensure(static_cast<int>(v.size()) == ambient_, "coordinates: ambient mismatch");
    Vec<K> coords(static_cast<std::size_t>(dim()), K(0));
    Vec<K> w = v;
    for (int i = 0; i < basis_.rows(); ++i) {
      const K c = w[static_cast<std::size_t>(pivots_[static_cast<std::size_t>(i)])];
      coords[static_cast<std::size_t>(i)] = c;
      if (is_zero(c)) continue;
      for (int j = 0; j < ambient_; ++j) {
        if (is_zero(basis_.at(i, j))) continue;
        K t = c * basis_.at(i, j);
        w[static_cast<std::size_t>(j)] -= t;
      }
    }
    if (!vec_is_zero(w)) return std::nullopt;
    return coords;
  }

  bool contains(const Subspace& other) const {
    ensure(other.ambient_ == ambient_, "contains: ambient mismatch");
    for (int i = 0; i < other.basis_.rows(); ++i)
      if (!contains_vector(other.basis_row(i))) return false;
    return true;
  }

  std::vector<int> non_pivots() const {
    std::vector<bool> is_pivot(static_cast<std::size_t>(ambient_), false);
    for (int p : pivots_) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<int> free;
    for (int j = 0; j < ambient_; ++j)
      if (!is_pivot[static_cast<std::size_t>(j)]) free.push_back(j);
    return free;
  }

  /// Non-pivot coordinates of reduce(v): the canonical image of v in the
  /// quotient by this subspace.
  Vec<K> residue(const Vec<K>& v) const {
    Vec<K> w = reduce(v);
    std::vector<int> free = non_pivots();
    Vec<K> r(free.size(), K(0));
    for (std::size_t i = 0; i < free.size(); ++i) r[i] = w[static_cast<std::size_t>(free[i])];
    return r;
  }

  /// Matrix of the quotient map k^ambient -> k^(ambient-dim) given by residue.
  Matrix<K> reduction_matrix() const {
    std::vector<int> free = non_pivots();
    Matrix<K> r(static_cast<int>(free.size()), ambient_);
    for (std::size_t i = 0; i < free.size(); ++i) r.at(static_cast<int>(i), free[i]) = K(1);
    // subtract the non-pivot part of each basis row from its pivot column
    for (int b = 0; b < basis_.rows(); ++b)
      for (std::size_t i = 0; i < free.size(); ++i)
        r.at(static_cast<int>(i), pivots_[static_cast<std::size_t>(b)]) -= basis_.at(b, free[i]);
    return r;
  }

  /// Inclusion of the complement basis (the non-pivot coordinate vectors),
  /// a section of reduction_matrix().
  Matrix<K> lift_matrix() const {
    std::vector<int> free = non_pivots();
    Matrix<K> l(ambient_, static_cast<int>(free.size()));
    for (std::size_t i = 0; i < free.size(); ++i) l.at(free[i], static_cast<int>(i)) = K(1);
    return l;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

  /// Deterministic total order (dimension, then pivots, then entries).
  /// Used for reproducible tie-breaking, not for any lattice meaning.
  static bool lex_less(const Subspace& a, const Subspace& b) {
    if (a.ambient_ != b.ambient_) return a.ambient_ < b.ambient_;
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    if (a.pivots_ != b.pivots_) return a.pivots_ < b.pivots_;
    for (int i = 0; i < a.basis_.rows(); ++i)
      for (int j = 0; j < a.basis_.cols(); ++j) {
        if (a.basis_.at(i, j) == b.basis_.at(i, j)) continue;
        return scalar_less(a.basis_.at(i, j), b.basis_.at(i, j));
      }
    return false;
  }

 private:
  int ambient_;
  Matrix<K> basis_;
  std::vector<int> pivots_;
};

enum class CombineMode { Sum, Intersect };

template <FieldScalar K>
Subspace<K> subspace_sum(const Subspace<K>& u, const Subspace<K>& v) {
  require(u.ambient_dim() == v.ambient_dim(), "subspace sum: ambient mismatch");
  Matrix<K> stacked(0, u.ambient_dim());
  for (int i = 0; i < u.dim(); ++i) stacked.append_row(u.basis_row(i));
  for (int i = 0; i < v.dim(); ++i) stacked.append_row(v.basis_row(i));
  return Subspace<K>::from_matrix(u.ambient_dim(), std::move(stacked));
}

/// Intersection via the kernel of the stacked-basis coefficient system:
/// solutions of sum(a_i u_i) = sum(b_j v_j) pushed back into the ambient.
template <FieldScalar K>
Subspace<K> subspace_intersect(const Subspace<K>& u, const Subspace<K>& v) {
  require(u.ambient_dim() == v.ambient_dim(), "subspace intersect: ambient mismatch");
  int n = u.ambient_dim();
  Matrix<K> system(n, u.dim() + v.dim());
  for (int j = 0; j < u.dim(); ++j)
    for (int r = 0; r < n; ++r) system.at(r, j) = u.basis().at(j, r);
  for (int j = 0; j < v.dim(); ++j)
    for (int r = 0; r < n; ++r) system.at(r, u.dim() + j) = -v.basis().at(j, r);
  Matrix<K> coeff_kernel = kernel(system);
  std::vector<Vec<K>> vectors;
  for (int i = 0; i < coeff_kernel.rows(); ++i) {
    Vec<K> w(static_cast<std::size_t>(n), K(0));
    for (int j = 0; j < u.dim(); ++j) vec_add_scaled(w, coeff_kernel.at(i, j), u.basis_row(j));
    vectors.push_back(std::move(w));
  }
  return Subspace<K>::from_vectors(n, vectors);
}

template <FieldScalar K>
Subspace<K> subspace_combine(const Subspace<K>& u, const Subspace<K>& v, CombineMode mode) {
  return mode == CombineMode::Sum ? subspace_sum(u, v) : subspace_intersect(u, v);
}

// ---------------------------------------------------------------------------
// Kernel of a linear map given by sparse images of the domain basis vectors.
// Used where the target space is a large tensor power and materializing the
// dense matrix would be wasteful.
// ---------------------------------------------------------------------------

template <FieldScalar K>
using SparseVec = std::map<long long, K>;  // index -> nonzero coefficient

template <FieldScalar K>
void sparse_add_scaled(SparseVec<K>& acc, const K& c, const SparseVec<K>& v) {
  if (is_zero(c)) return;
  for (const auto& [idx, val] : v) {
    K t = c * val;
    auto it = acc.find(idx);
    if (it == acc.end()) {
      if (!is_zero(t)) acc.emplace(idx, std::move(t));
    } else {
      it->second += t;
      if (is_zero(it->second)) acc.erase(it);
    }
  }
}

template <FieldScalar K>
Subspace<K> kernel_of_images(int domain_dim, const std::vector<SparseVec<K>>& images) {
  ensure(static_cast<int>(images.size()) == domain_dim, "kernel_of_images: arity");
  struct PivotRow {
    SparseVec<K> values;  // leading coefficient normalized to 1
    Vec<K> combo;
  };
  std::map<long long, PivotRow> pivot_by_lead;
  std::vector<Vec<K>> kernel_rows;
  for (int i = 0; i < domain_dim; ++i) {
    SparseVec<K> r = images[static_cast<std::size_t>(i)];
    Vec<K> combo = unit_vector<K>(domain_dim, i);
    while (!r.empty()) {
      long long lead = r.begin()->first;
      auto it = pivot_by_lead.find(lead);
      if (it == pivot_by_lead.end()) break;
      K c = r.begin()->second;
      sparse_add_scaled(r, -c, it->second.values);
      vec_add_scaled(combo, -c, it->second.combo);
    }
    if (r.empty()) {
      kernel_rows.push_back(std::move(combo));
    } else {
      K lead_inv = K(1) / r.begin()->second;
      SparseVec<K> norm;
      for (const auto& [idx, val] : r) norm.emplace(idx, val * lead_inv);
      for (K& c : combo) c = c * lead_inv;
      pivot_by_lead.emplace(norm.begin()->first, PivotRow{std::move(norm), std::move(combo)});
    }
  }
  return Subspace<K>::from_vectors(domain_dim, kernel_rows);
}

}  // namespace qlattice
