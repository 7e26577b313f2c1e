// Minimal sets of PL semigroup actions: approximation, the finite / circles /
// Cantor-on-arc classifier, rotation numbers and Denjoy-type examples.
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "minact/action.hpp"
#include "minact/pl_map.hpp"

namespace minact {

class AmbiguousVerdict : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MinimalityRejected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// PL generators of a constructed action on K x S^1 (component index = K index).
inline std::vector<PLMap> to_pl_maps(const ConstructedAction& action) {
  const Int n = action.components();
  const PLSpace space = PLSpace::circles(static_cast<std::size_t>(n));
  std::vector<PLMap> out;
  for (const auto& g : action.generators()) {
    std::vector<PLPiece> pieces;
    for (Int a = 0; a < n; ++a) {
      const NumericPoint img = action.act(g, NumericPoint{a, 0.0});
      pieces.push_back({static_cast<std::size_t>(img.component), {0.0, 1.0}, {img.angle, img.angle + 1.0}});
    }
    out.emplace_back(space, std::move(pieces));
  }
  return out;
}

struct MinimalSetBudget {
  std::size_t max_word_length = 600;
  std::size_t max_restarts = 32;
  std::size_t candidates_per_round = 8;
};

struct MinimalSetApproximation {
  std::vector<PLPoint> points;
  double invariance_defect = 0.0;  // max distance from g(M) to M over generators
  std::size_t restarts = 0;
  bool budget_exhausted = false;
};

namespace detail {

// Orbit tail (norms above half the budget), deduplicated.
inline std::vector<PLPoint> orbit_tail(const std::vector<PLMap>& gens, const PLPoint& x0, std::size_t L) {
  std::vector<PLPoint> pts;
  for (const auto& s : orbit_words(gens, x0, L))
    if (2 * s.norm > L) pts.push_back(s.point);
  return dedupe(gens.front().space(), std::move(pts));
}

inline std::size_t cell_count(const std::vector<PLPoint>& pts, double eps) {
  std::set<std::pair<std::size_t, long>> cells;
  for (const auto& p : pts) cells.insert({p.component, static_cast<long>(std::floor(p.x / eps))});
  return cells.size();
}

// Distance from q to the nearest point of the sorted set on q's component.
inline double distance_to_set(const PLSpace& space, const std::vector<PLPoint>& sorted, const PLPoint& q) {
  auto cmp = [](const PLPoint& a, const PLPoint& b) {
    return a.component != b.component ? a.component < b.component : a.x < b.x;
  };
  auto lo = std::lower_bound(sorted.begin(), sorted.end(), PLPoint{q.component, -1.0}, cmp);
  auto hi = std::upper_bound(sorted.begin(), sorted.end(), PLPoint{q.component, 2.0}, cmp);
  if (lo == hi) return 2.0;
  auto it = std::lower_bound(lo, hi, q, cmp);
  double best = 2.0;
  if (it != hi) best = std::min(best, distance(space, q, *it));
  if (it != lo) best = std::min(best, distance(space, q, *std::prev(it)));
  if (space.is_circle(q.component)) {
    best = std::min(best, distance(space, q, *lo));
    best = std::min(best, distance(space, q, *std::prev(hi)));
  }
  return best;
}

}  // namespace detail

inline double invariance_defect(const std::vector<PLMap>& gens, const std::vector<PLPoint>& sorted) {
  double defect = 0.0;
  for (const auto& g : gens)
    for (const auto& p : sorted) defect = std::max(defect, detail::distance_to_set(g.space(), sorted, g(p)));
  return defect;
}

/// Heuristic epsilon-approximation of one minimal set: take the orbit tail of
/// x0, then move to the candidate point whose own orbit tail occupies the
/// fewest epsilon-cells, until that count stops decreasing.
inline MinimalSetApproximation approximate_minimal_set(const std::vector<PLMap>& gens, double epsilon,
                                                       const MinimalSetBudget& budget = {},
                                                       PLPoint x0 = {0, 0.0}) {
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  require_commuting(gens);
  const std::size_t L = std::max<std::size_t>(budget.max_word_length, 2);
  MinimalSetApproximation out;
  auto current = detail::orbit_tail(gens, x0, L);
  std::size_t cells = detail::cell_count(current, epsilon);
  bool stable = false;
  while (!stable && out.restarts < budget.max_restarts) {
    stable = true;
    std::vector<PLPoint> best_set;
    std::size_t best_cells = cells;
    const std::size_t k = std::min(budget.candidates_per_round, current.size());
    for (std::size_t i = 0; i < k; ++i) {
      const PLPoint cand = current[i * current.size() / k];
      auto tail = detail::orbit_tail(gens, cand, L);
      const std::size_t c = detail::cell_count(tail, epsilon);
      if (c < best_cells) {
        best_cells = c;
        best_set = std::move(tail);
      }
    }
    if (!best_set.empty()) {
      current = std::move(best_set);
      cells = best_cells;
      ++out.restarts;
      stable = false;
    }
  }
  out.budget_exhausted = !stable;
  out.points = std::move(current);
  out.invariance_defect = invariance_defect(gens, out.points);
  return out;
}

/// Free interval J: the interior of [lo, hi] on one component. For a circle,
/// lo = 0 and hi = 1 means the circle minus one point.
struct FreeInterval {
  std::size_t component = 0;
  double lo = 0.0;
  double hi = 1.0;
};

enum class Verdict { Finite, Circles, CantorOnArc };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Finite: return "Finite";
    case Verdict::Circles: return "Circles";
    case Verdict::CantorOnArc: return "CantorOnArc";
  }
  return "?";
}

struct MinimalSetReport {
  Verdict verdict = Verdict::Finite;
  std::size_t cardinality = 0;  // Finite
  std::size_t circle_count = 0;  // Circles
  std::size_t arc_component = 0;  // CantorOnArc
  double arc_lo = 0.0, arc_hi = 0.0;  // CantorOnArc, arc_hi may exceed 1 on a circle (wraps)
  bool arc_is_full_circle = false;
  // Evidence.
  std::vector<PLPoint> points;
  double max_gap = 0.0;          // largest gap of M inside A (CantorOnArc) or on any component
  std::size_t gaps_over_2eps = 0;
  double isolation_radius = 0.0;  // max nearest-neighbour distance inside A
  double min_separation = 0.0;    // min pairwise distance in M
  std::optional<bool> globally_perfect;  // homeomorphism generators only
};

inline constexpr std::size_t kFiniteThreshold = 256;

namespace detail {

inline std::vector<std::vector<double>> by_component(const PLSpace& space, const std::vector<PLPoint>& M) {
  std::vector<std::vector<double>> comp(space.size());
  for (const auto& p : M) comp.at(p.component).push_back(p.x);
  for (auto& c : comp) std::sort(c.begin(), c.end());
  return comp;
}

// Nearest-neighbour distance of each point on one component (sorted input).
inline std::vector<double> neighbour_gaps(const std::vector<double>& xs, bool circle) {
  const std::size_t n = xs.size();
  std::vector<double> nn(n, 2.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) nn[i] = std::min(nn[i], xs[i] - xs[i - 1]);
    if (i + 1 < n) nn[i] = std::min(nn[i], xs[i + 1] - xs[i]);
  }
  if (circle && n > 1) {
    const double wrap = xs.front() + 1.0 - xs.back();
    nn.front() = std::min(nn.front(), wrap);
    nn.back() = std::min(nn.back(), wrap);
  }
  return nn;
}

}  // namespace detail

/// Decides which case of the trichotomy the point set M meets at resolution
/// epsilon. Each case's test is evaluated independently; zero or several
/// passing tests raise AmbiguousVerdict.
inline MinimalSetReport classify_trichotomy(const std::vector<PLPoint>& M, const PLSpace& space,
                                            const FreeInterval& J, double epsilon,
                                            const std::vector<PLMap>& gens = {}) {
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  if (M.empty()) throw std::invalid_argument("point set is empty");
  if (J.component >= space.size() || !(J.lo < J.hi)) throw std::invalid_argument("bad free interval");
  const auto comp = detail::by_component(space, M);
  const bool circleJ = space.is_circle(J.component);
  const bool J_full = circleJ && J.lo == 0.0 && J.hi == 1.0;
  std::vector<double> inJ;
  for (double x : comp[J.component])
    if (x > J.lo && x < J.hi) inJ.push_back(x);
  if (J_full) inJ = comp[J.component];
  if (inJ.empty()) throw std::invalid_argument("point set misses the free interval");

  MinimalSetReport r;
  r.points = M;

  // Finite: few points, pairwise separated by more than 10 epsilon.
  double min_sep = 2.0;
  for (std::size_t c = 0; c < comp.size(); ++c) {
    const auto nn = detail::neighbour_gaps(comp[c], space.is_circle(c));
    for (double d : nn) min_sep = std::min(min_sep, d);
  }
  r.min_separation = min_sep;
  const bool finite = M.size() <= kFiniteThreshold && min_sep > 10 * epsilon;

  // Circles: components on which M is epsilon-dense.
  std::size_t dense_circles = 0;
  bool J_dense = false;
  for (std::size_t c = 0; c < comp.size(); ++c) {
    if (!space.is_circle(c) || comp[c].empty()) continue;
    std::vector<double> xs = comp[c];
    const double gap = detail::max_circular_gap(xs);
    if (gap <= 2 * epsilon) {
      ++dense_circles;
      if (c == J.component) J_dense = true;
    }
  }
  const bool circles = dense_circles > 0 && J_dense;

  // Cantor on an arc: A = closed convex hull of M in J.
  std::vector<double> A;  // coordinates of M in A, increasing, possibly shifted past 1
  if (J_full) {
    // Cut at a point of M accumulated from both sides, so A is the whole
    // circle; without one, cut at the widest gap.
    const std::vector<double>& xs = inJ;
    std::size_t cut = xs.size();
    for (std::size_t i = 0; i < xs.size() && cut == xs.size(); ++i) {
      const double left = i > 0 ? xs[i] - xs[i - 1] : xs[0] + 1.0 - xs.back();
      const double right = i + 1 < xs.size() ? xs[i + 1] - xs[i] : xs[0] + 1.0 - xs.back();
      if (xs.size() > 2 && left <= epsilon && right <= epsilon) cut = i;
    }
    r.arc_is_full_circle = cut < xs.size();
    if (!r.arc_is_full_circle) {
      cut = 0;
      double widest = xs.front() + 1.0 - xs.back();
      for (std::size_t i = 1; i < xs.size(); ++i)
        if (xs[i] - xs[i - 1] > widest) {
          widest = xs[i] - xs[i - 1];
          cut = i;
        }
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const std::size_t j = (cut + i) % xs.size();
      A.push_back(xs[j] + (j < cut ? 1.0 : 0.0));
    }
  } else {
    A = inJ;
  }
  r.arc_component = J.component;
  r.arc_lo = A.front();
  r.arc_hi = r.arc_is_full_circle ? A.front() + 1.0 : A.back();
  double iso = 0.0, max_gap = 0.0;
  std::size_t wide = 0;
  for (std::size_t i = 0; i < A.size(); ++i) {
    double nn = 2.0;
    if (i > 0) nn = std::min(nn, A[i] - A[i - 1]);
    if (i + 1 < A.size()) nn = std::min(nn, A[i + 1] - A[i]);
    if (r.arc_is_full_circle && A.size() > 1 && (i == 0 || i + 1 == A.size()))
      nn = std::min(nn, A.front() + 1.0 - A.back());
    iso = std::max(iso, nn);
    if (i > 0) {
      const double g = A[i] - A[i - 1];
      max_gap = std::max(max_gap, g);
      if (g > 2 * epsilon) ++wide;
    }
  }
  if (r.arc_is_full_circle) {
    const double g = A.front() + 1.0 - A.back();
    max_gap = std::max(max_gap, g);
    if (g > 2 * epsilon) ++wide;
  }
  r.isolation_radius = iso;
  r.max_gap = max_gap;
  r.gaps_over_2eps = wide;
  const bool perfect_in_A = A.size() > 1 && iso <= epsilon;
  // Disconnected at resolution epsilon: a circle minus one arc is still an arc.
  const bool nowhere_dense_in_A = wide >= (r.arc_is_full_circle ? 2u : 1u);
  const bool cantor = perfect_in_A && nowhere_dense_in_A;

  const int passing = int(finite) + int(circles) + int(cantor);
  if (passing != 1) {
    std::string which;
    if (finite) which += " Finite";
    if (circles) which += " Circles";
    if (cantor) which += " CantorOnArc";
    throw AmbiguousVerdict(passing == 0 ? "no case of the trichotomy is met at this resolution"
                                        : "conflicting cases at this resolution:" + which);
  }
  if (finite) {
    r.verdict = Verdict::Finite;
    r.cardinality = M.size();
  } else if (circles) {
    r.verdict = Verdict::Circles;
    r.circle_count = dense_circles;
  } else {
    r.verdict = Verdict::CantorOnArc;
  }

  if (!gens.empty()) {
    const bool flat = std::any_of(gens.begin(), gens.end(), [](const PLMap& g) { return g.has_flat_lap(); });
    if (flat && r.verdict != Verdict::Finite)
      throw MinimalityRejected("a generator collapses an interval; an infinite minimal set is impossible");
    const bool homeo = std::all_of(gens.begin(), gens.end(), [](const PLMap& g) { return g.is_homeomorphism(); });
    if (homeo && r.verdict == Verdict::CantorOnArc) {
      bool perfect = true;
      for (std::size_t c = 0; c < comp.size(); ++c)
        for (double d : detail::neighbour_gaps(comp[c], space.is_circle(c)))
          if (d > epsilon) perfect = false;
      r.globally_perfect = perfect;
    }
  }
  return r;
}

/// Average lift displacement of a degree-one increasing circle map over
/// `iterates` steps from 0.
inline double rotation_number_estimate(const PLMap& f, std::size_t iterates) {
  if (f.components() != 1 || !f.space().is_circle(0) || f.piece(0).target != 0)
    throw std::invalid_argument("rotation number needs a self-map of one circle");
  const auto& p = f.piece(0);
  for (std::size_t i = 0; i + 1 < p.values.size(); ++i)
    if (!(p.values[i + 1] > p.values[i]))
      throw std::invalid_argument("rotation number needs an orientation-preserving homeomorphism");
  if (f.degree(0) != 1) throw std::invalid_argument("rotation number needs a degree-one map");
  if (iterates == 0) throw std::invalid_argument("iterates must be positive");
  double X = 0.0;
  for (std::size_t n = 0; n < iterates; ++n) {
    const double fl = std::floor(X);
    X = fl + f.lift(0, X - fl);
  }
  return X / static_cast<double>(iterates);
}

/// Gaps inserted by denjoy_stage: gap n is [left[n], left[n] + length[n]].
struct DenjoyGaps {
  std::vector<double> left;
  std::vector<double> length;
};

namespace detail {

struct DenjoyData {
  double alpha = 0.0;
  std::vector<double> theta;  // frac(n alpha)
  DenjoyGaps gaps;

  // psi(t) = t/2 + sum of gaps at orbit points strictly left of t.
  double psi(double t) const {
    double s = t / 2;
    for (std::size_t n = 0; n < theta.size(); ++n)
      if (theta[n] < t) s += gaps.length[n];
    return s;
  }
  // psi^{-1} on the complement of the gaps.
  double psi_inverse(double x) const {
    double s = 0.0;
    for (std::size_t n = 0; n < theta.size(); ++n)
      if (gaps.left[n] + gaps.length[n] <= x) s += gaps.length[n];
    return 2 * (x - s);
  }
};

inline DenjoyData denjoy_data(double alpha, std::size_t stages) {
  DenjoyData d;
  d.alpha = alpha;
  double norm = 0.0;
  for (std::size_t n = 0; n < stages; ++n) norm += 1.0 / ((n + 10.0) * (n + 10.0));
  for (std::size_t n = 0; n < stages; ++n) {
    double t = static_cast<double>(n) * alpha;
    d.theta.push_back(t - std::floor(t));
    d.gaps.length.push_back(0.5 / norm / ((n + 10.0) * (n + 10.0)));
  }
  for (std::size_t n = 0; n < stages; ++n) {
    double s = d.theta[n] / 2;
    for (std::size_t m = 0; m < stages; ++m)
      if (d.theta[m] < d.theta[n]) s += d.gaps.length[m];
    d.gaps.left.push_back(s);
  }
  return d;
}

}  // namespace detail

/// Blows up the orbit points 0, alpha, ..., (stages-1) alpha of the rotation
/// into gaps of length proportional to 1/(n+10)^2 (total 1/2), maps gap n
/// affinely onto gap n+1, squeezes the last gap into a tiny interval around
/// the image of stages*alpha, and stretches a tiny interval around the
/// preimage of 0 onto gap 0. The result is a PL circle homeomorphism.
inline PLMap denjoy_stage(double alpha, std::size_t stages) {
  if (stages < 1) throw std::invalid_argument("stages must be >= 1");
  if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("alpha must lie in (0,1)");
  const auto d = detail::denjoy_data(alpha, stages);
  const std::size_t N = stages;
  const auto& L = d.gaps.left;
  const auto& l = d.gaps.length;
  auto frac = [](double x) { return x - std::floor(x); };

  // Collapsed map on the complement of the gaps: psi(psi^{-1}(x) + alpha).
  auto collapsed = [&](double x) { return d.psi(frac(d.psi_inverse(x) + alpha)); };

  const double Q = d.psi(frac(-alpha));
  const double P = d.psi(frac(static_cast<double>(N) * alpha));
  std::vector<double> all = L;
  for (std::size_t n = 0; n < N; ++n) all.push_back(L[n] + l[n]);
  all.push_back(Q);
  std::sort(all.begin(), all.end());
  double sep = 1.0;
  for (std::size_t i = 0; i + 1 < all.size(); ++i) sep = std::min(sep, all[i + 1] - all[i]);
  const double eta = std::min(1e-6, sep / 8);
  const double delta = std::min(1e-5, sep / 4);
  const double eta_last = eta / 2;

  std::vector<std::pair<double, double>> pts;  // (x, image mod 1)
  for (std::size_t n = 0; n + 1 < N; ++n) {
    pts.push_back({L[n], L[n + 1]});
    pts.push_back({L[n] + l[n], L[n + 1] + l[n + 1]});
  }
  const double Lz = L[N - 1], Rz = L[N - 1] + l[N - 1];
  pts.push_back({Lz, P - eta_last});
  pts.push_back({Rz, P + eta_last});
  pts.push_back({Lz - delta, collapsed(Lz - delta)});
  pts.push_back({Rz + delta, collapsed(Rz + delta)});
  pts.push_back({Q - eta, -eta});
  pts.push_back({Q + eta, l[0] + eta});
  for (auto& [x, y] : pts) {
    x = frac(x);
    y = frac(y);
  }
  std::sort(pts.begin(), pts.end());
  // Gap 0 starts at 0, so x = 0 is a breakpoint with image L[1] (or P - eta_last).
  if (pts.front().first != 0.0) throw std::logic_error("denjoy construction lost the breakpoint at 0");
  std::vector<double> xs, ys;
  for (const auto& [x, y] : pts) {
    double v = y;
    if (!ys.empty())
      while (v < ys.back()) v += 1.0;
    xs.push_back(x);
    ys.push_back(v);
  }
  xs.push_back(1.0);
  ys.push_back(ys.front() + 1.0);
  return PLMap(PLSpace::circles(1), {{0, xs, ys}});
}

/// The gaps inserted by denjoy_stage(alpha, stages).
inline DenjoyGaps denjoy_gaps(double alpha, std::size_t stages) {
  if (stages < 1) throw std::invalid_argument("stages must be >= 1");
  return detail::denjoy_data(alpha, stages).gaps;
}

}  // namespace minact
