// Symmetric 2-cocycles over a finite group K, the extension K x_f H, and the
// induced action on K x S^1 by (a, b) -> (k + a, b + h + f(k, a)).
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "minact/abelian_group.hpp"
#include "minact/circle.hpp"
#include "minact/subgroups.hpp"

namespace minact {

class InvalidCocycle : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotDense : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Table f(a, b) for a, b in a finite group K, indexed by FiniteIndexer.
class Cocycle {
 public:
  Cocycle(FgAbelianGroup K, std::vector<RotationNumber> table) : indexer_(K), table_(std::move(table)) {
    const auto n = static_cast<std::size_t>(indexer_.size());
    if (table_.size() != n * n) throw InvalidCocycle("cocycle table is incomplete");
  }

  static Cocycle zero(const FgAbelianGroup& K) {
    const auto n = static_cast<std::size_t>(FiniteIndexer(K).size());
    return Cocycle(K, std::vector<RotationNumber>(n * n));
  }

  const FgAbelianGroup& group() const { return indexer_.group(); }
  const FiniteIndexer& indexer() const { return indexer_; }
  Int order() const { return indexer_.size(); }

  const RotationNumber& operator()(Int a, Int b) const { return table_[static_cast<std::size_t>(a * order() + b)]; }
  RotationNumber& at(Int a, Int b) { return table_[static_cast<std::size_t>(a * order() + b)]; }
  const std::vector<RotationNumber>& table() const { return table_; }

 private:
  FiniteIndexer indexer_;
  std::vector<RotationNumber> table_;
};

struct CocycleCheck {
  bool ok = true;
  std::string failure;                      // "symmetry" | "normalization" | "cocycle identity"
  std::optional<std::array<Int, 3>> where;  // first violating pair/triple (third entry unused for pairs)
};

/// Checks normalization and symmetry, then f(a,b) + f(a+b,c) = f(b,c) + f(b+c,a).
inline CocycleCheck validate_cocycle(const Cocycle& f) {
  const Int n = f.order();
  const auto& K = f.indexer();
  for (Int a = 0; a < n; ++a)
    if (!f(0, a).is_zero() || !f(a, 0).is_zero()) return {false, "normalization", std::array<Int, 3>{0, a, 0}};
  for (Int a = 0; a < n; ++a)
    for (Int b = a + 1; b < n; ++b)
      if (!(f(a, b) == f(b, a))) return {false, "symmetry", std::array<Int, 3>{a, b, 0}};
  for (Int a = 0; a < n; ++a)
    for (Int b = 0; b < n; ++b)
      for (Int c = 0; c < n; ++c)
        if (!(f(a, b) + f(K.add(a, b), c) == f(b, c) + f(K.add(b, c), a)))
          return {false, "cocycle identity", std::array<Int, 3>{a, b, c}};
  return {};
}

/// K = Z_ell, f(i, j) = alpha when i + j >= ell (representatives in [0, ell)).
inline Cocycle carry_cocycle(Int ell, const RotationNumber& alpha) {
  if (ell < 1) throw std::invalid_argument("carry cocycle needs ell >= 1");
  const auto K = FgAbelianGroup::cyclic(ell);
  Cocycle f = Cocycle::zero(K);
  for (Int i = 0; i < ell; ++i)
    for (Int j = 0; j < ell; ++j)
      if (i + j >= ell) f.at(i, j) = alpha;
  return f;
}

/// Element (k, h) of K x_f H; k is an index into K.
struct ExtElement {
  Int k = 0;
  RotationNumber h;
  friend bool operator==(const ExtElement&, const ExtElement&) = default;
};

class ExtensionGroup {
 public:
  ExtensionGroup(Cocycle f, std::vector<RotationNumber> h_gens) : f_(std::move(f)), h_gens_(std::move(h_gens)) {}

  const Cocycle& cocycle() const { return f_; }
  const FiniteIndexer& k_indexer() const { return f_.indexer(); }
  const std::vector<RotationNumber>& h_generators() const { return h_gens_; }

  ExtElement add(const ExtElement& a, const ExtElement& b) const {
    return {k_indexer().add(a.k, b.k), a.h + b.h + f_(a.k, b.k)};
  }
  ExtElement negate(const ExtElement& a) const {
    const Int nk = k_indexer().negate(a.k);
    return {nk, -a.h - f_(a.k, nk)};
  }
  ExtElement multiple(Int n, const ExtElement& a) const {
    if (n < 0) return multiple(-n, negate(a));
    ExtElement acc;
    for (Int i = 0; i < n; ++i) acc = add(acc, a);
    return acc;
  }

  /// Order of an element, nullopt when infinite.
  std::optional<Int> order(const ExtElement& a) const {
    const Int kord = k_indexer().element_order(a.k);
    const ExtElement m = multiple(kord, a);
    auto hord = element_order(m.h);
    if (!hord) return std::nullopt;
    return kord * *hord;
  }

 private:
  Cocycle f_;
  std::vector<RotationNumber> h_gens_;
};

/// Point (a, b) of K x S^1 with an exact angle.
struct SpacePoint {
  Int component = 0;
  RotationNumber angle;
  friend bool operator==(const SpacePoint&, const SpacePoint&) = default;
};

/// Point of K x S^1 with a floating angle in [0,1).
struct NumericPoint {
  Int component = 0;
  double angle = 0.0;
};

inline double wrap01(double x) {
  x -= std::floor(x);
  return x >= 1.0 ? 0.0 : x;
}

/// The action of K x_f H on K x S^1, plus a list of semigroup generators
/// (images of the acting semigroup's generators) used for orbit sampling.
class ConstructedAction {
 public:
  ConstructedAction(ExtensionGroup ext, std::vector<ExtElement> generators)
      : ext_(std::move(ext)), generators_(std::move(generators)) {
    const Int n = ext_.cocycle().order();
    table_.resize(static_cast<std::size_t>(n * n));
    for (Int a = 0; a < n; ++a)
      for (Int b = 0; b < n; ++b) table_[static_cast<std::size_t>(a * n + b)] = ext_.cocycle()(a, b).to_double();
  }

  const ExtensionGroup& extension() const { return ext_; }
  const std::vector<ExtElement>& generators() const { return generators_; }
  Int components() const { return ext_.cocycle().order(); }

  SpacePoint act(const ExtElement& g, const SpacePoint& p) const {
    return {ext_.k_indexer().add(g.k, p.component), p.angle + g.h + ext_.cocycle()(g.k, p.component)};
  }

  /// Floating evaluation: the exact shift is rounded once, then added.
  NumericPoint act(const ExtElement& g, const NumericPoint& p) const {
    return act_numeric(g.k, g.h.to_double(), p);
  }
  NumericPoint act_numeric(Int k, double h, const NumericPoint& p) const {
    const Int n = components();
    return {ext_.k_indexer().add(k, p.component), wrap01(p.angle + h + table_[static_cast<std::size_t>(k * n + p.component)])};
  }

  /// The generators' K-parts generate K (components are permuted transitively).
  bool component_transitive() const {
    const auto& K = ext_.k_indexer();
    std::set<Int> seen{0};
    std::vector<Int> stack{0};
    while (!stack.empty()) {
      Int a = stack.back();
      stack.pop_back();
      for (const auto& g : generators_) {
        Int b = K.add(g.k, a);
        if (seen.insert(b).second) stack.push_back(b);
      }
    }
    return static_cast<Int>(seen.size()) == K.size();
  }

  /// The subgroup generated by the generators is infinite.
  bool generates_infinite_group() const {
    return std::any_of(generators_.begin(), generators_.end(), [&](const ExtElement& g) { return !ext_.order(g); });
  }

  /// Exact minimality of the semigroup action: the generated group must
  /// permute components transitively and have an infinite (hence dense)
  /// component stabilizer.
  bool is_minimal_exact() const { return !generators_.empty() && component_transitive() && generates_infinite_group(); }

 private:
  ExtensionGroup ext_;
  std::vector<ExtElement> generators_;
  std::vector<double> table_;
};

/// Default semigroup generators: (e_i, 0) for K's cyclic factors and (0, h) for h in H_gens.
inline std::vector<ExtElement> default_generators(const ExtensionGroup& ext) {
  std::vector<ExtElement> gens;
  const auto& K = ext.k_indexer();
  const auto& factors = K.group().invariant_factors();
  for (std::size_t i = 0; i < factors.size(); ++i) {
    IntVector unit(factors.size(), 0);
    unit[i] = 1;
    gens.push_back({K.index_of(unit), RotationNumber()});
  }
  for (const auto& h : ext.h_generators()) gens.push_back({0, h});
  return gens;
}

/// Builds the action after checking the cocycle and that H_gens together
/// with the cocycle values generate a dense subgroup.
inline ConstructedAction build_action(const Cocycle& f, const std::vector<RotationNumber>& h_gens,
                                      std::optional<std::vector<ExtElement>> generators = std::nullopt) {
  auto check = validate_cocycle(f);
  if (!check.ok) throw InvalidCocycle("cocycle violates " + check.failure);
  std::vector<RotationNumber> all = h_gens;
  all.insert(all.end(), f.table().begin(), f.table().end());
  if (all.empty() || !subgroup_is_dense(all)) throw NotDense("kernel subgroup is not dense; the action would not be minimal");
  ExtensionGroup ext(f, h_gens);
  auto gens = generators ? std::move(*generators) : default_generators(ext);
  return ConstructedAction(std::move(ext), std::move(gens));
}

/// Cocycle of the realization G = K x_f H carried by a certificate.
inline Cocycle certificate_cocycle(const ExtensionCertificate& cert) {
  const FgAbelianGroup& K = cert.quotient();
  FiniteIndexer idx(K);
  Cocycle f = Cocycle::zero(K);
  for (Int a = 0; a < idx.size(); ++a)
    for (Int b = 0; b < idx.size(); ++b) f.at(a, b) = cert.cocycle_value(idx.element(a), idx.element(b));
  return f;
}

/// Action of G itself: generators are the images of G's ambient unit vectors.
inline ConstructedAction build_action(const ExtensionCertificate& cert) {
  FiniteIndexer idx(cert.quotient());
  std::vector<ExtElement> gens;
  const std::size_t n = cert.group().ambient_rank();
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n, 0);
    e[i] = 1;
    auto [k, h] = cert.to_extension(e);
    gens.push_back({idx.index_of(k), h});
  }
  return build_action(certificate_cocycle(cert), cert.embedding(), std::move(gens));
}

/// Action of G through its quotient Q.
inline ConstructedAction build_action(const QuotientCertificate& cert) {
  FiniteIndexer idx(cert.effective.quotient());
  std::vector<ExtElement> gens;
  const std::size_t n = cert.group.ambient_rank();
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n, 0);
    e[i] = 1;
    auto [k, h] = cert.effective.to_extension(cert.quotient.reduce(cert.projection * e));
    gens.push_back({idx.index_of(k), h});
  }
  return build_action(certificate_cocycle(cert.effective), cert.effective.embedding(), std::move(gens));
}

/// Abstract abelian semigroup: named generators and relations lhs = rhs
/// between exponent vectors.
struct SemigroupPresentation {
  std::vector<std::string> generators;
  std::vector<std::pair<IntVector, IntVector>> relations;
};

/// The action of the semigroup through a morphism into K x_f H.
inline ConstructedAction semigroup_from_morphism(const ExtensionGroup& ext, const SemigroupPresentation& S,
                                                 const std::map<std::string, ExtElement>& images) {
  std::vector<ExtElement> gens;
  for (const auto& name : S.generators) {
    auto it = images.find(name);
    if (it == images.end()) throw std::invalid_argument("no image for semigroup generator " + name);
    gens.push_back(it->second);
  }
  auto word = [&](const IntVector& e) {
    if (e.size() != gens.size()) throw std::invalid_argument("relation has wrong length");
    ExtElement acc;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 0) throw std::invalid_argument("semigroup relations use nonnegative exponents");
      acc = ext.add(acc, ext.multiple(e[i], gens[i]));
    }
    return acc;
  };
  for (const auto& [lhs, rhs] : S.relations)
    if (!(word(lhs) == word(rhs))) throw std::invalid_argument("images do not satisfy a semigroup relation");
  return ConstructedAction(ext, std::move(gens));
}

struct FreenessReport {
  bool free = true;
  std::vector<std::string> trace;
  std::optional<ExtElement> witness;  // non-identity element with a fixed point
};

/// phi_(k,h) with k != 0 moves every component; with k = 0 it acts on
/// component a as rotation by h + f(0, a), so it is fixed-point free unless
/// that shift vanishes. Freeness therefore reduces to f(0, a) = 0 for all a.
inline FreenessReport freeness_check(const ConstructedAction& action) {
  FreenessReport r;
  const auto& f = action.extension().cocycle();
  for (Int a = 0; a < f.order(); ++a) {
    const RotationNumber& c = f(0, a);
    if (!c.is_zero()) {
      r.free = false;
      r.witness = ExtElement{0, -c};
      r.trace.push_back("f(0," + std::to_string(a) + ") = " + c.to_string() + " != 0: (0, " + (-c).to_string() +
                        ") fixes component " + std::to_string(a) + " pointwise but is not the identity");
      return r;
    }
  }
  r.trace.push_back("k != 0: phi_(k,h) maps component a to k+a != a, no fixed point");
  r.trace.push_back("k = 0: f(0,a) = 0 for all a, so phi_(0,h) is rotation by h on every component");
  r.trace.push_back("rotation by h has a fixed point iff h = 0, i.e. g = (0,0)");
  return r;
}

/// Element with given K index and h = sum coeffs_i * H_gens[i].
inline ExtElement make_element(const ExtensionGroup& ext, Int k, const IntVector& coeffs) {
  ExtElement g{k, RotationNumber()};
  for (std::size_t i = 0; i < coeffs.size() && i < ext.h_generators().size(); ++i)
    g.h += coeffs[i] * ext.h_generators()[i];
  return g;
}

struct GroupLawReport {
  bool ok = true;
  std::size_t trials = 0;
  std::string failure;
};

/// Exact check of phi_{g'} phi_g = phi_{g'+g}, phi_0 = id and phi_{-g} phi_g = id
/// on random elements and points.
inline GroupLawReport check_group_law(const ConstructedAction& action, std::mt19937_64& rng, std::size_t trials) {
  const auto& ext = action.extension();
  const Int n = ext.k_indexer().size();
  const std::size_t hn = ext.h_generators().size();
  std::uniform_int_distribution<Int> kdist(0, n - 1), cdist(-6, 6), den(1, 12);
  auto basis = default_basis();
  for (const auto& h : ext.h_generators())
    if (h.basis()) basis = h.basis();
  auto random_element = [&] {
    IntVector c(hn);
    for (auto& x : c) x = cdist(rng);
    return make_element(ext, kdist(rng), c);
  };
  auto random_point = [&] {
    RotationNumber angle(Rational(cdist(rng), den(rng)));
    angle += RotationNumber::symbol(basis, (*basis)[static_cast<std::size_t>(kdist(rng)) % basis->size()].name,
                                    Rational(cdist(rng), den(rng)));
    return SpacePoint{kdist(rng), angle};
  };
  GroupLawReport rep;
  for (std::size_t t = 0; t < trials; ++t) {
    const ExtElement g = random_element(), g2 = random_element();
    const SpacePoint p = random_point();
    ++rep.trials;
    if (!(action.act(g2, action.act(g, p)) == action.act(ext.add(g2, g), p))) {
      rep.ok = false;
      rep.failure = "composition law fails";
      return rep;
    }
    if (!(action.act(ExtElement{}, p) == p) || !(action.act(ext.negate(g), action.act(g, p)) == p)) {
      rep.ok = false;
      rep.failure = "identity/inverse law fails";
      return rep;
    }
  }
  return rep;
}

enum class MinimalityStatus { Certified, NotMinimal, Inconclusive };

inline const char* to_string(MinimalityStatus s) {
  switch (s) {
    case MinimalityStatus::Certified: return "certified";
    case MinimalityStatus::NotMinimal: return "not_minimal";
    case MinimalityStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct MinimalityCertificate {
  MinimalityStatus status = MinimalityStatus::Inconclusive;
  double worst_gap = 0.0;  // largest circular gap left by any sampled orbit
  std::size_t starts = 0;
  std::string reason;
};

namespace detail {

inline double max_circular_gap(std::vector<double>& angles) {
  if (angles.empty()) return 1.0;
  std::sort(angles.begin(), angles.end());
  double gap = angles.front() + 1.0 - angles.back();
  for (std::size_t i = 1; i < angles.size(); ++i) gap = std::max(gap, angles[i] - angles[i - 1]);
  return gap;
}

}  // namespace detail

/// Numeric minimality test: from every grid start, the orbit under all
/// semigroup words of length 1..max_word_length must leave no gap wider than
/// 2*epsilon on any component (every point within epsilon of the orbit).
/// Returns NotMinimal only when non-minimality is exact.
inline MinimalityCertificate minimality_certificate(const ConstructedAction& action, double epsilon,
                                                    Int max_word_length = 500, Int grid = 64) {
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  if (max_word_length < 1 || grid < 1) throw std::invalid_argument("word length and grid must be positive");
  MinimalityCertificate cert;
  const Int ncomp = action.components();
  const auto& gens = action.generators();
  struct Gen {
    Int k;
    double h;
  };
  std::vector<Gen> ng;
  for (const auto& g : gens) ng.push_back({g.k, g.h.to_double()});

  bool all_dense = !gens.empty();
  struct Node {
    NumericPoint p;
    std::size_t min_gen;
  };
  for (Int c = 0; c < ncomp && !gens.empty(); ++c)
    for (Int j = 0; j < grid; ++j) {
      ++cert.starts;
      std::vector<std::vector<double>> seen(static_cast<std::size_t>(ncomp));
      std::vector<Node> frontier{{NumericPoint{c, static_cast<double>(j) / static_cast<double>(grid)}, 0}};
      double gap = 1.0;
      Int next_check = 1;
      for (Int len = 1; len <= max_word_length; ++len) {
        std::vector<Node> next;
        next.reserve(frontier.size() * 2);
        for (const auto& node : frontier)
          for (std::size_t i = node.min_gen; i < ng.size(); ++i) {
            NumericPoint q = action.act_numeric(ng[i].k, ng[i].h, node.p);
            seen[static_cast<std::size_t>(q.component)].push_back(q.angle);
            next.push_back({q, i});
          }
        frontier = std::move(next);
        if (len == next_check || len == max_word_length) {
          next_check *= 2;
          gap = 0.0;
          for (auto& s : seen) gap = std::max(gap, detail::max_circular_gap(s));
          if (gap <= 2 * epsilon) break;
        }
      }
      cert.worst_gap = std::max(cert.worst_gap, gap);
      if (gap > 2 * epsilon) all_dense = false;
    }

  if (!action.component_transitive()) {
    cert.status = MinimalityStatus::NotMinimal;
    cert.reason = "generators do not permute the components transitively";
  } else if (!action.generates_infinite_group()) {
    cert.status = MinimalityStatus::NotMinimal;
    cert.reason = "all generators have finite order, so every orbit is finite";
  } else if (all_dense) {
    cert.status = MinimalityStatus::Certified;
    cert.reason = "every sampled orbit is epsilon-dense in every component";
  } else {
    cert.status = MinimalityStatus::Inconclusive;
    cert.reason = "word-length budget exhausted before epsilon-density";
  }
  return cert;
}

}  // namespace minact
