// Covering-graph arguments on a free arc: periodic points from cycles of
// monotone laps, and the monotone crossing sub-arcs of a map leaving the arc.
#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

#include "minact/pl_map.hpp"

namespace minact {

/// Sub-arc [u, v] of one component (0 <= u < v <= 1), with local coordinate
/// s = (x - u) / (v - u) identifying it with [0, 1].
struct FreeArc {
  std::size_t component = 0;
  double u = 0.0;
  double v = 1.0;

  double to_local(double x) const { return (x - u) / (v - u); }
  double to_global(double s) const { return u + s * (v - u); }
};

class HypothesisViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void check_arc(const PLMap& f, const FreeArc& A) {
  if (A.component >= f.components()) throw std::invalid_argument("arc on unknown component");
  if (!(0.0 <= A.u && A.u < A.v && A.v <= 1.0)) throw std::invalid_argument("arc needs 0 <= u < v <= 1");
}

// Breakpoints of f on component c inside [lo, hi], with lo and hi added.
inline std::vector<double> knots(const PLMap& f, std::size_t c, double lo, double hi) {
  std::vector<double> t{lo};
  for (double b : f.piece(c).breaks)
    if (b > lo && b < hi) t.push_back(b);
  t.push_back(hi);
  return t;
}

// Integer shifts m such that the lifted value y lands in [u + m, v + m].
inline std::vector<long> shifts(bool circle_target, double y0, double y1, const FreeArc& A) {
  if (!circle_target) return {0};
  const double lo = std::min(y0, y1), hi = std::max(y0, y1);
  std::vector<long> ms;
  for (long m = static_cast<long>(std::floor(lo - A.v)) - 1; m <= static_cast<long>(std::ceil(hi - A.u)) + 1; ++m)
    if (hi >= A.u + static_cast<double>(m) && lo <= A.v + static_cast<double>(m)) ms.push_back(m);
  return ms;
}

}  // namespace detail

/// Maximal monotone piece of f restricted to the arc whose image stays in
/// the arc. Coordinates are local.
struct Lap {
  double lo = 0.0, hi = 0.0;            // domain
  double image_lo = 0.0, image_hi = 0.0;  // f([lo, hi])
  int orientation = 0;                  // +1 increasing, -1 decreasing, 0 constant
  long shift = 0;                       // lift shift m used on this lap
  std::vector<double> xs, ys;           // local knots and their local images
};

/// Laps of f on A whose images lie in A.
inline std::vector<Lap> arc_laps(const PLMap& f, const FreeArc& A) {
  detail::check_arc(f, A);
  std::vector<Lap> laps;
  const auto& piece = f.piece(A.component);
  if (piece.target != A.component) return laps;
  const bool circle = f.space().is_circle(piece.target);
  const auto t = detail::knots(f, A.component, A.u, A.v);
  const double w = A.v - A.u;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    const double x0 = t[i], x1 = t[i + 1];
    const double y0 = f.lift(A.component, x0), y1 = f.lift(A.component, x1);
    for (long m : detail::shifts(circle, y0, y1, A)) {
      const double lo = A.u + static_cast<double>(m), hi = A.v + static_cast<double>(m);
      double a = x0, b = x1;
      if (y0 != y1) {
        // Sub-segment of [x0, x1] on which the linear image lies in [lo, hi].
        auto at = [&](double y) { return x0 + (y - y0) / (y1 - y0) * (x1 - x0); };
        double p = at(lo), q = at(hi);
        if (p > q) std::swap(p, q);
        a = std::max(x0, p);
        b = std::min(x1, q);
      } else if (y0 < lo || y0 > hi) {
        continue;
      }
      if (!(b > a)) continue;
      const double ya = f.lift(A.component, a) - static_cast<double>(m), yb = f.lift(A.component, b) - static_cast<double>(m);
      const double sa = (a - A.u) / w, sb = (b - A.u) / w;
      const double ia = std::clamp((ya - A.u) / w, 0.0, 1.0), ib = std::clamp((yb - A.u) / w, 0.0, 1.0);
      const int orient = ia < ib ? 1 : (ia > ib ? -1 : 0);
      if (!laps.empty() && laps.back().shift == m && laps.back().orientation == orient && orient != 0 &&
          laps.back().hi == sa) {
        Lap& L = laps.back();
        L.hi = sb;
        L.xs.push_back(sb);
        L.ys.push_back(ib);
        L.image_lo = std::min(L.image_lo, std::min(ia, ib));
        L.image_hi = std::max(L.image_hi, std::max(ia, ib));
      } else {
        laps.push_back({sa, sb, std::min(ia, ib), std::max(ia, ib), orient, m, {sa, sb}, {ia, ib}});
      }
    }
  }
  return laps;
}

namespace detail {

inline double lap_eval(const Lap& L, double s) {
  if (s <= L.xs.front()) return L.ys.front();
  if (s >= L.xs.back()) return L.ys.back();
  auto it = std::upper_bound(L.xs.begin(), L.xs.end(), s);
  const std::size_t i = static_cast<std::size_t>(it - L.xs.begin()) - 1;
  const double t = (s - L.xs[i]) / (L.xs[i + 1] - L.xs[i]);
  return L.ys[i] + t * (L.ys[i + 1] - L.ys[i]);
}

// Point of the lap mapped to y (lap monotone, y in its image).
inline double lap_inverse(const Lap& L, double y) {
  for (std::size_t i = 0; i + 1 < L.xs.size(); ++i) {
    const double a = L.ys[i], b = L.ys[i + 1];
    if ((y - a) * (y - b) <= 0 && a != b) return L.xs[i] + (y - a) / (b - a) * (L.xs[i + 1] - L.xs[i]);
  }
  return std::fabs(y - L.ys.front()) < std::fabs(y - L.ys.back()) ? L.xs.front() : L.xs.back();
}

inline bool covers(const Lap& I, const Lap& K) {
  constexpr double tol = 1e-15;
  return I.orientation != 0 && I.image_lo <= K.lo + tol && I.image_hi >= K.hi - tol;
}

}  // namespace detail

/// Edge I -> K when f(I) contains K.
inline std::vector<std::vector<std::size_t>> covering_graph(const std::vector<Lap>& laps) {
  std::vector<std::vector<std::size_t>> g(laps.size());
  for (std::size_t i = 0; i < laps.size(); ++i)
    for (std::size_t k = 0; k < laps.size(); ++k)
      if (detail::covers(laps[i], laps[k])) g[i].push_back(k);
  return g;
}

struct PeriodicPoint {
  PLPoint point;
  std::size_t period = 0;  // minimal period
  double residual = 0.0;   // |f^period(x) - x|
};

namespace detail {

// Shortest closed walk through s, as a node list starting at s.
inline std::optional<std::vector<std::size_t>> shortest_cycle(const std::vector<std::vector<std::size_t>>& g,
                                                              std::size_t s) {
  std::vector<long> parent(g.size(), -1);
  std::vector<bool> seen(g.size(), false);
  std::deque<std::size_t> q;
  for (std::size_t k : g[s]) {
    if (k == s) return std::vector<std::size_t>{s};
    if (!seen[k]) {
      seen[k] = true;
      parent[k] = static_cast<long>(s);
      q.push_back(k);
    }
  }
  while (!q.empty()) {
    const std::size_t x = q.front();
    q.pop_front();
    for (std::size_t k : g[x]) {
      if (k == s) {
        std::vector<std::size_t> path{x};
        while (path.back() != s) path.push_back(static_cast<std::size_t>(parent[path.back()]));
        std::reverse(path.begin(), path.end());
        return path;
      }
      if (!seen[k]) {
        seen[k] = true;
        parent[k] = static_cast<long>(x);
        q.push_back(k);
      }
    }
  }
  return std::nullopt;
}

inline constexpr std::size_t kMaxIteratePieces = std::size_t{1} << 18;

// Affine piece of f^k over [x0, x1] in A's component: images run linearly
// from y0 to y1 on `component` (lifted for circles).
struct IteratePiece {
  double x0, x1, y0, y1;
  std::size_t component;
};

// One more application of f to every piece, split where the image crosses
// a breakpoint of f (or an integer, on circles).
inline bool advance(const PLMap& f, std::vector<IteratePiece>& pieces) {
  std::vector<IteratePiece> next;
  for (const auto& P : pieces) {
    const std::size_t c = P.component;
    const bool circle = f.space().is_circle(c);
    const auto& piece = f.piece(c);
    const double lo = std::min(P.y0, P.y1), hi = std::max(P.y0, P.y1);
    std::vector<double> cuts{lo, hi};
    const long n0 = circle ? static_cast<long>(std::floor(lo)) : 0, n1 = circle ? static_cast<long>(std::floor(hi)) : 0;
    for (long n = n0; n <= n1; ++n)
      for (double b : piece.breaks)
        if (const double y = b + static_cast<double>(n); y > lo && y < hi) cuts.push_back(y);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    const bool circle_target = f.space().is_circle(piece.target);
    auto image = [&](double y, double mid) {
      if (!circle) return f.lift(c, std::clamp(y, 0.0, 1.0));
      const double n = std::floor(mid);
      const double v = f.lift(c, std::clamp(y - n, 0.0, 1.0));
      return circle_target ? v + n * static_cast<double>(f.degree(c)) : v;
    };
    auto x_at = [&](double y) {
      return P.y1 == P.y0 ? P.x0 : P.x0 + (y - P.y0) / (P.y1 - P.y0) * (P.x1 - P.x0);
    };
    if (lo == hi) {
      const double v = image(lo, lo);
      next.push_back({P.x0, P.x1, v, v, piece.target});
    }
    for (std::size_t i = 0; lo < hi && i + 1 < cuts.size(); ++i) {
      const double ya = cuts[i], yb = cuts[i + 1], mid = 0.5 * (ya + yb);
      double xa = x_at(ya), xb = x_at(yb), va = image(ya, mid), vb = image(yb, mid);
      if (xa > xb) {
        std::swap(xa, xb);
        std::swap(va, vb);
      }
      next.push_back({xa, xb, va, vb, piece.target});
    }
    if (next.size() > kMaxIteratePieces) return false;
  }
  std::sort(next.begin(), next.end(), [](const auto& a, const auto& b) { return a.x0 < b.x0; });
  pieces = std::move(next);
  return true;
}

// Solutions of f^p(x) = x (mod 1 on circles) in A, found exactly on the
// affine pieces of f^p, for p = 1..max_period. Gives up once the piece
// count passes kMaxIteratePieces.
inline std::optional<std::pair<double, std::size_t>> exact_periodic_point(const PLMap& f, const FreeArc& A,
                                                                          std::size_t max_period) {
  const bool circle = f.space().is_circle(A.component);
  std::vector<IteratePiece> pieces{{A.u, A.v, A.u, A.v, A.component}};
  std::optional<std::pair<double, std::size_t>> endpoint;
  for (std::size_t p = 1; p <= max_period; ++p) {
    if (!advance(f, pieces)) break;
    for (const auto& P : pieces) {
      if (P.component != A.component) continue;
      constexpr double tol = 1e-12;
      const double d0 = P.y0 - P.x0, d1 = P.y1 - P.x1;
      const double lo = std::min(d0, d1) - tol, hi = std::max(d0, d1) + tol;
      for (double m = circle ? std::ceil(lo) : 0.0; m <= (circle ? std::floor(hi) : 0.0); m += 1.0) {
        if (m < lo || m > hi) continue;
        const double x = std::fabs(d1 - d0) < tol ? 0.5 * (P.x0 + P.x1)
                                                  : std::clamp(P.x0 + (m - d0) / (d1 - d0) * (P.x1 - P.x0), P.x0, P.x1);
        const double s = A.to_local(x);
        if (s > 1e-9 && s < 1.0 - 1e-9) return std::pair{x, p};
        if (!endpoint) endpoint = std::pair{x, p};
      }
    }
    if (endpoint) return endpoint;
  }
  return endpoint;
}

}  // namespace detail

/// Searches the covering graph of f's monotone laps on A for a cycle of
/// length <= max_period and refines it to a periodic point (bisection to
/// width 1e-12). Interior points of A are preferred over its endpoints.
/// When the graph has no usable cycle, the affine pieces of f^p over A are
/// searched exactly, so a contracting map's fixed point is not missed.
inline std::optional<PeriodicPoint> periodic_point_in_arc(const PLMap& f, const FreeArc& A, std::size_t max_period) {
  const auto laps = arc_laps(f, A);
  const auto g = covering_graph(laps);
  std::vector<std::vector<std::size_t>> cycles;
  for (std::size_t s = 0; s < laps.size(); ++s)
    if (auto c = detail::shortest_cycle(g, s); c && c->size() <= max_period) cycles.push_back(*c);
  std::stable_sort(cycles.begin(), cycles.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });

  std::optional<PeriodicPoint> fallback;
  for (const auto& cyc : cycles) {
    const std::size_t p = cyc.size();
    // J_k = {s in I_k : f(s) in J_{k+1}}, J_p = I_0.
    double jlo = laps[cyc[0]].lo, jhi = laps[cyc[0]].hi;
    for (std::size_t k = p; k-- > 0;) {
      const Lap& L = laps[cyc[k]];
      double a = detail::lap_inverse(L, jlo), b = detail::lap_inverse(L, jhi);
      jlo = std::min(a, b);
      jhi = std::max(a, b);
    }
    auto g_of = [&](double s) {
      for (std::size_t k = 0; k < p; ++k) s = detail::lap_eval(laps[cyc[k]], s);
      return s;
    };
    double lo = jlo, hi = jhi;
    double glo = g_of(lo) - lo;
    if (glo == 0) hi = lo;
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      const double gm = g_of(mid) - mid;
      if (gm == 0) {
        lo = hi = mid;
        break;
      }
      if ((gm > 0) == (glo > 0)) {
        lo = mid;
        glo = gm;
      } else {
        hi = mid;
      }
    }
    const double s = 0.5 * (lo + hi);
    PLPoint x{A.component, A.to_global(s)};
    // Minimal period along the true map.
    PLPoint y = x;
    std::size_t period = p;
    double residual = 0.0;
    for (std::size_t q = 1; q <= p; ++q) {
      y = f(y);
      const double r = distance(f.space(), x, y);
      if (p % q == 0 && r < 1e-9) {
        period = q;
        residual = r;
        break;
      }
      residual = r;
    }
    if (residual >= 1e-9) continue;
    PeriodicPoint pp{x, period, residual};
    const double eps = 1e-9;
    if (s > eps && s < 1.0 - eps) return pp;
    if (!fallback) fallback = pp;
  }
  if (fallback) return fallback;
  detail::check_arc(f, A);
  if (const auto e = detail::exact_periodic_point(f, A, max_period)) {
    const PLPoint x{A.component, e->first};
    PLPoint y = x;
    for (std::size_t q = 1; q <= e->second; ++q) {
      y = f(y);
      const double r = distance(f.space(), x, y);
      if (e->second % q == 0 && r < 1e-9) return PeriodicPoint{x, q, r};
    }
  }
  return std::nullopt;
}

/// Fixed point of f in A, found exactly on each linear segment.
inline std::optional<double> fixed_point_in_arc(const PLMap& f, const FreeArc& A) {
  detail::check_arc(f, A);
  const auto& piece = f.piece(A.component);
  if (piece.target != A.component) return std::nullopt;
  const bool circle = f.space().is_circle(A.component);
  const auto t = detail::knots(f, A.component, A.u, A.v);
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    const double d0 = f.lift(A.component, t[i]) - t[i], d1 = f.lift(A.component, t[i + 1]) - t[i + 1];
    const double lo = std::min(d0, d1), hi = std::max(d0, d1);
    for (double m = circle ? std::ceil(lo) : 0.0; m <= (circle ? std::floor(hi) : 0.0); m += 1.0) {
      if (m < lo || m > hi) continue;
      if (d0 == d1) return t[i];
      return t[i] + (m - d0) / (d1 - d0) * (t[i + 1] - t[i]);
    }
  }
  return std::nullopt;
}

struct CrossingArc {
  double lo = 0.0, hi = 0.0;  // I, local coordinates
  int orientation = 0;        // +1: f(lo) < f(hi), -1: f(lo) > f(hi)
  double image_lo = 0.0, image_hi = 0.0;
  int crossing_case = 0;  // 1..4
};

/// Sub-arc I between a and b mapped monotonically onto [f(a), 1] or [0, f(a)]
/// (local coordinates), for f without fixed points in A with f(a) inside A
/// and f(b) outside.
inline CrossingArc monotone_crossing_arcs(const PLMap& f, const FreeArc& A, double a, double b) {
  detail::check_arc(f, A);
  if (!(a >= 0 && a <= 1 && b >= 0 && b <= 1) || a == b) throw HypothesisViolation("need distinct a, b in [0,1]");
  const auto& piece = f.piece(A.component);
  if (piece.target != A.component) throw HypothesisViolation("f does not map the arc's component to itself");
  if (fixed_point_in_arc(f, A)) throw HypothesisViolation("f has a fixed point in the arc");
  const bool circle = f.space().is_circle(A.component);
  const double w = A.v - A.u;
  const double ga = A.to_global(a), gb = A.to_global(b);
  // Lifted local image along the path from a, continuous in t.
  const double ya_lift = f.lift(A.component, ga);
  double m = 0.0;
  if (circle) m = std::floor((ya_lift - A.u) / 1.0);
  auto local_img = [&](double x) { return (f.lift(A.component, x) - m - A.u) / w; };
  const double fa = local_img(ga);
  if (!(fa > 0 && fa < 1)) throw HypothesisViolation("f(a) must lie inside the arc");
  {
    const double yb = f.lift(A.component, gb);
    double r = yb;
    if (circle) r -= std::floor(yb);
    if (A.u <= r && r <= A.v) throw HypothesisViolation("f(b) must lie outside the arc");
  }
  const int dir = b > a ? 1 : -1;
  const int crossing_case = dir > 0 ? (fa > a ? 1 : 2) : (fa > a ? 3 : 4);
  // Walk from a toward b over the knots until the image leaves (0,1).
  auto t = detail::knots(f, A.component, std::min(ga, gb), std::max(ga, gb));
  if (dir < 0) std::reverse(t.begin(), t.end());
  double z = gb;
  bool found = false;
  for (std::size_t i = 0; i + 1 < t.size() && !found; ++i) {
    const double y0 = local_img(t[i]), y1 = local_img(t[i + 1]);
    for (double edge : {0.0, 1.0}) {
      if (y0 == y1) continue;
      const double r = (edge - y0) / (y1 - y0);
      if (r >= 0 && r <= 1 && ((y0 < edge) != (y1 < edge) || y1 == edge)) {
        const double cand = t[i] + r * (t[i + 1] - t[i]);
        if (!found || dir * (cand - z) < 0) z = cand;
        found = true;
      }
    }
  }
  if (!found) throw HypothesisViolation("image path never leaves the arc");
  // Last point before z (from a) with the same image as a.
  double start = ga;
  auto seg = detail::knots(f, A.component, std::min(ga, z), std::max(ga, z));
  for (std::size_t i = 0; i + 1 < seg.size(); ++i) {
    const double y0 = local_img(seg[i]), y1 = local_img(seg[i + 1]);
    std::vector<double> cands;
    if (y0 == fa) cands.push_back(seg[i]);
    if (y1 == fa) cands.push_back(seg[i + 1]);
    if (y0 != y1 && (y0 - fa) * (y1 - fa) < 0) cands.push_back(seg[i] + (fa - y0) / (y1 - y0) * (seg[i + 1] - seg[i]));
    for (double c : cands)
      if (dir * (c - start) > 0) start = c;
  }
  CrossingArc out;
  out.lo = A.to_local(std::min(start, z));
  out.hi = A.to_local(std::max(start, z));
  const double flo = local_img(A.to_global(out.lo)), fhi = local_img(A.to_global(out.hi));
  out.orientation = flo < fhi ? 1 : -1;
  out.image_lo = std::min(flo, fhi);
  out.image_hi = std::max(flo, fhi);
  out.crossing_case = crossing_case;
  return out;
}

}  // namespace minact
