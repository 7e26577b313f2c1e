// Subgroup enumeration and the algebraic decision procedures for minimal
// actions on finitely many circles.
#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "minact/abelian_group.hpp"
#include "minact/circle.hpp"
#include "minact/int_matrix.hpp"

namespace minact {

class ResourceLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultSubgroupBound = 1'000'000;

/// A subgroup H of G, stored as the Hermite basis of its preimage lattice in
/// Z^ambient_rank (which always contains the relation lattice of G). Columns
/// of `generators` are the basis vectors, so equal subgroups compare equal.
struct SubgroupWitness {
  IntMatrix generators;
  std::optional<Int> index;  // nullopt: infinite index

  friend bool operator==(const SubgroupWitness&, const SubgroupWitness&) = default;
};

namespace detail {

// Coordinates of v in the lattice spanned by the rows of a Hermite basis.
inline std::optional<IntVector> hermite_coordinates(const IntMatrix& hermite, IntVector v) {
  IntVector c(hermite.rows(), 0);
  std::size_t col = 0;
  for (std::size_t r = 0; r < hermite.rows(); ++r) {
    while (col < hermite.cols() && hermite(r, col) == 0) {
      if (v[col] != 0) return std::nullopt;
      ++col;
    }
    if (v[col] % hermite(r, col) != 0) return std::nullopt;
    c[r] = v[col] / hermite(r, col);
    for (std::size_t j = col; j < hermite.cols(); ++j) v[j] = checked_add(v[j], -checked_mul(c[r], hermite(r, j)));
    ++col;
  }
  for (Int x : v)
    if (x != 0) return std::nullopt;
  return c;
}

inline Int gcd_nonneg(Int a, Int b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

}  // namespace detail

/// Canonical witness for the subgroup generated by the given columns.
inline SubgroupWitness make_witness(const FgAbelianGroup& G, const IntMatrix& gen_columns) {
  const std::size_t n = G.ambient_rank();
  if (gen_columns.cols() > 0 && gen_columns.rows() != n) throw std::invalid_argument("generator has wrong length");
  const IntMatrix R = G.relation_columns();
  IntMatrix rows(gen_columns.cols() + R.cols(), n);
  for (std::size_t j = 0; j < gen_columns.cols(); ++j)
    for (std::size_t i = 0; i < n; ++i) rows(j, i) = gen_columns(i, j);
  for (std::size_t j = 0; j < R.cols(); ++j)
    for (std::size_t i = 0; i < n; ++i) rows(gen_columns.cols() + j, i) = R(i, j);
  const IntMatrix H = hermite_rows(rows);
  SubgroupWitness w{H.transpose(), std::nullopt};
  if (H.rows() == n) {
    Int idx = 1;
    std::size_t col = 0;
    for (std::size_t r = 0; r < n; ++r) {
      while (H(r, col) == 0) ++col;
      idx = detail::checked_mul(idx, H(r, col));
    }
    w.index = idx;
  }
  return w;
}

/// All subgroups of index exactly `index` in G, without duplicates.
///
/// Every such subgroup contains index*G, so its preimage lattice L satisfies
/// e_j Z e_j in L with e_j = index (free) or gcd(d_j, index) (torsion).
/// Hermite bases of such lattices are enumerated bottom-up with that
/// containment as the pruning test.
inline std::vector<SubgroupWitness> index_subgroups(const FgAbelianGroup& G, Int index,
                                                    std::size_t bound = kDefaultSubgroupBound) {
  if (index < 1) throw std::invalid_argument("subgroup index must be >= 1");
  const std::size_t n = G.ambient_rank();
  std::vector<SubgroupWitness> out;
  if (n == 0) {
    if (index == 1) out.push_back({IntMatrix(0, 0), 1});
    return out;
  }
  IntVector e(n);
  for (std::size_t j = 0; j < n; ++j) e[j] = G.modulus(j) == 0 ? index : detail::gcd_nonneg(G.modulus(j), index);

  std::size_t candidates = 0;
  IntMatrix basis(n, n);
  IntVector diag(n);

  // Lattice spanned by rows i+1..n-1 of `basis` (upper triangular, diagonal pivots).
  auto in_lower_block = [&](std::size_t i, IntVector v) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (v[j] % basis(j, j) != 0) return false;
      const Int c = v[j] / basis(j, j);
      for (std::size_t t = j; t < n; ++t) v[t] -= c * basis(j, t);
    }
    return true;
  };

  std::function<void(std::size_t)> fill_row;
  fill_row = [&](std::size_t i) {
    // Row i: diag[i] at column i, entries b_j in [0, diag[j]) for j > i.
    IntVector b(n, 0);
    for (;;) {
      if (++candidates > bound)
        throw ResourceLimitExceeded("subgroup enumeration exceeded " + std::to_string(bound) + " candidates");
      for (std::size_t j = 0; j < n; ++j) basis(i, j) = j < i ? 0 : (j == i ? diag[i] : b[j]);
      // e_i * unit_i - (e_i / diag_i) * row_i must lie in the lower block.
      IntVector v(n, 0);
      const Int mult = e[i] / diag[i];
      for (std::size_t j = i + 1; j < n; ++j) v[j] = -mult * b[j];
      if (in_lower_block(i, v)) {
        if (i == 0) {
          out.push_back({basis.transpose(), index});
        } else {
          fill_row(i - 1);
        }
      }
      // Next b in lexicographic order (last coordinate fastest).
      std::size_t j = n;
      while (j-- > i + 1) {
        if (++b[j] < diag[j]) break;
        b[j] = 0;
      }
      if (j == i) break;
    }
  };

  std::function<void(std::size_t, Int)> choose_diag;
  choose_diag = [&](std::size_t j, Int remaining) {
    if (j == n) {
      if (remaining == 1) fill_row(n - 1);
      return;
    }
    // Largest diagonal first: the free part is scaled before the torsion is cut.
    for (Int a = e[j]; a >= 1; --a) {
      if (e[j] % a != 0 || remaining % a != 0) continue;
      diag[j] = a;
      choose_diag(j + 1, remaining / a);
    }
  };
  choose_diag(0, index);
  return out;
}

/// Invariant-factor form of the subgroup itself (not the quotient).
inline FgAbelianGroup structure_of_subgroup(const FgAbelianGroup& G, const SubgroupWitness& W) {
  const SubgroupWitness w = make_witness(G, W.generators);
  const IntMatrix hermite = w.generators.transpose();
  const IntMatrix R = G.relation_columns();
  IntMatrix X(hermite.rows(), R.cols());
  for (std::size_t j = 0; j < R.cols(); ++j) {
    auto c = detail::hermite_coordinates(hermite, R.column(j));
    if (!c) throw std::logic_error("relation vector outside subgroup lattice");
    for (std::size_t i = 0; i < c->size(); ++i) X(i, j) = (*c)[i];
  }
  return canonical_form(X, hermite.rows());
}

/// Witness that G is an extension of a group K of order ell by a group H
/// isomorphic to a dense subgroup of the circle, together with the data to
/// realize G as K x_f H concretely.
class ExtensionCertificate {
 public:
  ExtensionCertificate(FgAbelianGroup group, SubgroupWitness subgroup, BasisPtr basis)
      : group_(std::move(group)), subgroup_(std::move(subgroup)) {
    const std::size_t n = group_.ambient_rank();
    if (!subgroup_.index) throw std::invalid_argument("extension kernel must have finite index");
    subgroup_structure_ = structure_of_subgroup(group_, subgroup_);
    embedding_ = realize_embedding(subgroup_structure_, basis);

    const IntMatrix& B = subgroup_.generators;  // n x n, full rank
    // Quotient K = Z^n / L.
    const auto snf_k = smith_normal_form(B);
    const IntMatrix Uinv = unimodular_inverse(snf_k.U);
    IntVector k_factors;
    std::vector<std::size_t> k_rows;
    for (std::size_t i = 0; i < n; ++i)
      if (snf_k.D(i, i) > 1) {
        k_factors.push_back(snf_k.D(i, i));
        k_rows.push_back(i);
      }
    quotient_ = FgAbelianGroup(0, k_factors);
    quotient_map_ = IntMatrix(k_rows.size(), n);
    section_ = IntMatrix(n, k_rows.size());
    for (std::size_t t = 0; t < k_rows.size(); ++t)
      for (std::size_t j = 0; j < n; ++j) {
        quotient_map_(t, j) = snf_k.U(k_rows[t], j);
        section_(j, t) = Uinv(j, k_rows[t]);
      }

    // Kernel H = L / R, coordinates y = U_H * B^{-1} v for v in L.
    const auto Binv = rational_inverse(B);
    const IntMatrix hermite = B.transpose();
    const IntMatrix R = group_.relation_columns();
    IntMatrix X(n, R.cols());
    for (std::size_t j = 0; j < R.cols(); ++j) {
      auto c = detail::hermite_coordinates(hermite, R.column(j));
      for (std::size_t i = 0; i < n; ++i) X(i, j) = (*c)[i];
    }
    const auto snf_h = smith_normal_form(X);
    std::vector<std::size_t> free_rows, torsion_rows;
    for (std::size_t i = 0; i < n; ++i) {
      const Int d = i < std::min(X.rows(), X.cols()) ? snf_h.D(i, i) : 0;
      if (d == 0) free_rows.push_back(i);
      else if (d > 1) torsion_rows.push_back(i);
    }
    std::vector<std::size_t> rows = free_rows;
    rows.insert(rows.end(), torsion_rows.begin(), torsion_rows.end());
    kernel_map_.assign(rows.size(), std::vector<Rational>(n, Rational(0)));
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t t = 0; t < n; ++t) kernel_map_[r][j] += Rational(snf_h.U(rows[r], t)) * Binv[t][j];
  }

  const FgAbelianGroup& group() const { return group_; }
  const SubgroupWitness& subgroup() const { return subgroup_; }
  const FgAbelianGroup& subgroup_structure() const { return subgroup_structure_; }
  Int quotient_order() const { return *subgroup_.index; }
  const FgAbelianGroup& quotient() const { return quotient_; }
  const std::vector<RotationNumber>& embedding() const { return embedding_; }
  const IntMatrix& quotient_map() const { return quotient_map_; }
  const IntMatrix& section() const { return section_; }

  /// Image of g (ambient coordinates of G) in K, as torsion coordinates.
  IntVector quotient_of(const IntVector& g) const {
    IntVector k = quotient_map_ * g;
    for (std::size_t t = 0; t < k.size(); ++t) k[t] = detail::mod_floor(k[t], quotient_.invariant_factors()[t]);
    return k;
  }

  /// Chosen representative in Z^n of a K element.
  IntVector lift(const IntVector& k) const { return section_ * k; }

  /// Embedding of an element of the kernel lattice into the circle.
  RotationNumber embed_kernel(const IntVector& v) const {
    RotationNumber out;
    for (std::size_t r = 0; r < kernel_map_.size(); ++r) {
      Rational y = 0;
      for (std::size_t j = 0; j < v.size(); ++j) y += kernel_map_[r][j] * v[j];
      if (y.denominator() != 1) throw std::invalid_argument("vector is not in the kernel lattice");
      out += y.numerator() * embedding_[r];
    }
    return out;
  }

  /// g -> (k, h) with g = s(k) + h under G = K x_f H.
  std::pair<IntVector, RotationNumber> to_extension(const IntVector& g) const {
    IntVector k = quotient_of(g);
    IntVector s = lift(k);
    IntVector diff(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) diff[i] = g[i] - s[i];
    return {k, embed_kernel(diff)};
  }

  /// f(k1, k2) = s(k1) + s(k2) - s(k1 + k2), embedded in the circle.
  RotationNumber cocycle_value(const IntVector& k1, const IntVector& k2) const {
    IntVector sum(k1.size());
    for (std::size_t t = 0; t < k1.size(); ++t)
      sum[t] = detail::mod_floor(k1[t] + k2[t], quotient_.invariant_factors()[t]);
    IntVector a = lift(k1), b = lift(k2), c = lift(sum);
    IntVector v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i] - c[i];
    return embed_kernel(v);
  }

 private:
  FgAbelianGroup group_;
  SubgroupWitness subgroup_;
  FgAbelianGroup subgroup_structure_;
  FgAbelianGroup quotient_;
  std::vector<RotationNumber> embedding_;
  IntMatrix quotient_map_;
  IntMatrix section_;
  std::vector<std::vector<Rational>> kernel_map_;
};

/// Minimal effective action of G on `circles` circles exists iff G has a
/// subgroup of that index which embeds densely in the circle.
inline std::optional<ExtensionCertificate> decide_effective(const FgAbelianGroup& G, Int circles,
                                                            const BasisPtr& basis = default_basis(),
                                                            std::size_t bound = kDefaultSubgroupBound) {
  if (circles < 1) throw std::invalid_argument("number of circles must be >= 1");
  if (G.is_finite()) return std::nullopt;
  for (const auto& w : index_subgroups(G, circles, bound))
    if (embeds_densely_in_circle(structure_of_subgroup(G, w))) return ExtensionCertificate(G, w, basis);
  return std::nullopt;
}

/// Quotient Q = G / kernel with an effective certificate for Q.
struct QuotientCertificate {
  FgAbelianGroup group;
  SubgroupWitness kernel;
  FgAbelianGroup quotient;
  IntMatrix projection;  // quotient.ambient_rank x group.ambient_rank
  ExtensionCertificate effective;
};

/// A (not necessarily effective) minimal action on `circles` circles exists
/// iff some quotient of G admits an effective one; for finitely generated G
/// that happens iff G is infinite.
inline std::optional<QuotientCertificate> decide_non_effective(const FgAbelianGroup& G, Int circles,
                                                               const BasisPtr& basis = default_basis(),
                                                               std::size_t bound = kDefaultSubgroupBound) {
  if (circles < 1) throw std::invalid_argument("number of circles must be >= 1");
  if (G.is_finite()) return std::nullopt;
  const std::size_t n = G.ambient_rank();
  if (auto eff = decide_effective(G, circles, basis, bound))
    return QuotientCertificate{G, make_witness(G, IntMatrix(n, 0)), G, IntMatrix::identity(n), std::move(*eff)};
  // Project onto the first free coordinate; the kernel is spanned by the rest.
  IntMatrix kernel_gens(n, n - 1);
  for (std::size_t j = 1; j < n; ++j) kernel_gens(j, j - 1) = 1;
  IntMatrix projection(1, n);
  projection(0, 0) = 1;
  auto eff = decide_effective(FgAbelianGroup::integers(), circles, basis, bound);
  return QuotientCertificate{G, make_witness(G, kernel_gens), FgAbelianGroup::integers(), projection,
                             std::move(*eff)};
}

enum class CatalogKind { TorsionOfCircle, PrimeSum, Rationals, Prufer };

/// Non-finitely-generated groups supported by name.
struct CatalogGroup {
  CatalogKind kind;
  std::vector<Int> primes;  // PrimeSum: p1 < p2 < ... ; Prufer: single prime
};

struct CatalogDecision {
  bool admits_minimal_action;
  std::string explanation;
  std::vector<Int> factor_primes;  // PrimeSum: the finite set F with circles = prod F
};

inline bool is_prime(Int p) {
  if (p < 2) return false;
  for (Int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline CatalogDecision decide_catalog(const CatalogGroup& c, Int circles) {
  if (circles < 1) throw std::invalid_argument("number of circles must be >= 1");
  switch (c.kind) {
    case CatalogKind::TorsionOfCircle:
      if (circles == 1) return {true, "tor(S^1) is itself a dense subgroup of S^1", {}};
      return {false, "tor(S^1) is divisible and the only finite divisible group is trivial", {}};
    case CatalogKind::Rationals:
    case CatalogKind::Prufer: {
      const std::string name = c.kind == CatalogKind::Rationals ? "Q" : "Z(p^inf)";
      if (c.kind == CatalogKind::Prufer && (c.primes.size() != 1 || !is_prime(c.primes[0])))
        throw std::invalid_argument("Prufer group needs exactly one prime");
      if (circles == 1) return {true, name + " is isomorphic to a dense subgroup of S^1", {}};
      return {false, name + " is divisible and the only finite divisible group is trivial", {}};
    }
    case CatalogKind::PrimeSum: {
      for (std::size_t i = 0; i < c.primes.size(); ++i) {
        if (!is_prime(c.primes[i])) throw std::invalid_argument("prime_sum entry is not prime");
        if (i > 0 && c.primes[i] <= c.primes[i - 1]) throw std::invalid_argument("prime_sum primes must increase");
      }
      Int rest = circles;
      std::vector<Int> used;
      for (Int p : c.primes)
        if (rest % p == 0) {
          rest /= p;
          used.push_back(p);
        }
      if (rest == 1) {
        std::string expl = "circles = product of distinct listed primes {";
        for (std::size_t i = 0; i < used.size(); ++i) expl += (i ? "," : "") + std::to_string(used[i]);
        return {true, expl + "}", used};
      }
      return {false, "circles is not a product of distinct primes from the sequence", {}};
    }
  }
  throw std::invalid_argument("unknown catalog group");
}

}  // namespace minact
