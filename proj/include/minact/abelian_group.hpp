// Finitely generated abelian groups in invariant-factor form.
#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "minact/int_matrix.hpp"

namespace minact {

/// Z^free_rank + Z_{d1} + ... + Z_{dk} with 2 <= d1 | d2 | ... | dk.
///
/// Elements live in "ambient coordinates": an integer vector of length
/// free_rank + k, free coordinates first. The group is the quotient of
/// Z^ambient_rank() by the relation lattice spanned by d_i e_{free_rank + i}.
class FgAbelianGroup {
 public:
  FgAbelianGroup() = default;
  FgAbelianGroup(std::size_t free_rank, IntVector invariant_factors)
      : free_rank_(free_rank), factors_(std::move(invariant_factors)) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (factors_[i] < 2) throw std::invalid_argument("invariant factors must be >= 2");
      if (i > 0 && factors_[i] % factors_[i - 1] != 0)
        throw std::invalid_argument("invariant factors must form a divisibility chain");
    }
  }

  static FgAbelianGroup integers() { return FgAbelianGroup(1, {}); }
  static FgAbelianGroup cyclic(Int n) { return n == 1 ? FgAbelianGroup() : FgAbelianGroup(0, {n}); }

  std::size_t free_rank() const { return free_rank_; }
  const IntVector& invariant_factors() const { return factors_; }
  std::size_t ambient_rank() const { return free_rank_ + factors_.size(); }
  bool is_finite() const { return free_rank_ == 0; }

  /// Cardinality for finite groups.
  std::optional<Int> order() const {
    if (!is_finite()) return std::nullopt;
    Int o = 1;
    for (Int d : factors_) o = detail::checked_mul(o, d);
    return o;
  }

  /// Modulus of ambient coordinate i (0 for free coordinates).
  Int modulus(std::size_t i) const { return i < free_rank_ ? 0 : factors_[i - free_rank_]; }

  /// Relation lattice in ambient coordinates, one column per torsion factor.
  IntMatrix relation_columns() const {
    IntMatrix R(ambient_rank(), factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) R(free_rank_ + i, i) = factors_[i];
    return R;
  }

  /// Reduces torsion coordinates into [0, d_i).
  IntVector reduce(IntVector v) const {
    if (v.size() != ambient_rank()) throw std::invalid_argument("element has wrong number of coordinates");
    for (std::size_t i = free_rank_; i < v.size(); ++i) v[i] = detail::mod_floor(v[i], modulus(i));
    return v;
  }

  std::string to_string() const {
    if (free_rank_ == 0 && factors_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
      if (!first) os << "+";
      first = false;
    };
    if (free_rank_ == 1) {
      sep();
      os << "Z";
    } else if (free_rank_ > 1) {
      sep();
      os << "Z^" << free_rank_;
    }
    for (Int d : factors_) {
      sep();
      os << "Z" << d;
    }
    return os.str();
  }

  friend bool operator==(const FgAbelianGroup&, const FgAbelianGroup&) = default;

 private:
  std::size_t free_rank_ = 0;
  IntVector factors_;
};

/// Element of an FgAbelianGroup, stored in reduced ambient coordinates.
class GroupElement {
 public:
  GroupElement(const FgAbelianGroup& g, IntVector coords) : coords_(g.reduce(std::move(coords))) {}
  static GroupElement zero(const FgAbelianGroup& g) { return GroupElement(g, IntVector(g.ambient_rank(), 0)); }

  IntVector free_part(const FgAbelianGroup& g) const {
    return IntVector(coords_.begin(), coords_.begin() + static_cast<std::ptrdiff_t>(g.free_rank()));
  }
  IntVector torsion_part(const FgAbelianGroup& g) const {
    return IntVector(coords_.begin() + static_cast<std::ptrdiff_t>(g.free_rank()), coords_.end());
  }
  const IntVector& coords() const { return coords_; }

  static GroupElement add(const FgAbelianGroup& g, const GroupElement& a, const GroupElement& b) {
    IntVector s(a.coords_.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = detail::checked_add(a.coords_[i], b.coords_[i]);
    return GroupElement(g, std::move(s));
  }
  static GroupElement negate(const FgAbelianGroup& g, const GroupElement& a) {
    IntVector s(a.coords_.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = -a.coords_[i];
    return GroupElement(g, std::move(s));
  }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  IntVector coords_;
};

/// Z^ambient_rank / <columns of relations>, in invariant-factor form.
inline FgAbelianGroup canonical_form(const IntMatrix& relations, std::size_t ambient_rank) {
  if (relations.cols() > 0 && relations.rows() != ambient_rank)
    throw std::invalid_argument("relation columns must have length ambient_rank");
  if (relations.cols() == 0) return FgAbelianGroup(ambient_rank, {});
  const auto diag = smith_normal_form(relations).diagonal();
  std::size_t nonzero = 0;
  IntVector factors;
  for (Int d : diag) {
    if (d == 0) continue;
    ++nonzero;
    if (d > 1) factors.push_back(d);
  }
  return FgAbelianGroup(ambient_rank - nonzero, std::move(factors));
}

/// Bijection between a finite group's elements and 0..order-1 (mixed radix,
/// last coordinate fastest).
class FiniteIndexer {
 public:
  explicit FiniteIndexer(const FgAbelianGroup& g) : group_(g) {
    if (!g.is_finite()) throw std::invalid_argument("FiniteIndexer needs a finite group");
    size_ = *g.order();
  }

  Int size() const { return size_; }
  const FgAbelianGroup& group() const { return group_; }

  Int index_of(const IntVector& torsion) const {
    const auto& f = group_.invariant_factors();
    if (torsion.size() != f.size()) throw std::invalid_argument("element of wrong shape");
    Int idx = 0;
    for (std::size_t i = 0; i < f.size(); ++i) idx = idx * f[i] + detail::mod_floor(torsion[i], f[i]);
    return idx;
  }

  IntVector element(Int index) const {
    const auto& f = group_.invariant_factors();
    IntVector v(f.size());
    for (std::size_t i = f.size(); i-- > 0;) {
      v[i] = index % f[i];
      index /= f[i];
    }
    return v;
  }

  Int add(Int a, Int b) const {
    auto x = element(a), y = element(b);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    return index_of(x);
  }
  Int negate(Int a) const {
    auto x = element(a);
    for (auto& c : x) c = -c;
    return index_of(x);
  }

  /// Order of the element with the given index.
  Int element_order(Int a) const {
    Int n = 1;
    for (Int cur = a; cur != 0; cur = add(cur, a)) ++n;
    return n;
  }

 private:
  FgAbelianGroup group_;
  Int size_ = 1;
};

}  // namespace minact
