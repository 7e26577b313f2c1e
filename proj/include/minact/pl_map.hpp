// Piecewise-linear self-maps of a finite disjoint union of circles and arcs.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace minact {

class MalformedMap : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonCommutingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ComponentKind { Circle, Arc };

/// Finite disjoint union of unit circles R/Z and unit arcs [0,1].
class PLSpace {
 public:
  PLSpace() = default;
  explicit PLSpace(std::vector<ComponentKind> kinds) : kinds_(std::move(kinds)) {
    if (kinds_.empty()) throw std::invalid_argument("space needs at least one component");
  }
  static PLSpace circles(std::size_t n) { return PLSpace(std::vector<ComponentKind>(n, ComponentKind::Circle)); }

  std::size_t size() const { return kinds_.size(); }
  ComponentKind kind(std::size_t c) const { return kinds_.at(c); }
  bool is_circle(std::size_t c) const { return kind(c) == ComponentKind::Circle; }
  const std::vector<ComponentKind>& kinds() const { return kinds_; }

 private:
  std::vector<ComponentKind> kinds_;
};

struct PLPoint {
  std::size_t component = 0;
  double x = 0.0;
};

inline double circle_distance(double a, double b) {
  double d = std::fabs(a - b);
  d -= std::floor(d);
  return std::min(d, 1.0 - d);
}

/// Distance inside one component; points on different components are 2 apart.
inline double distance(const PLSpace& space, const PLPoint& p, const PLPoint& q) {
  if (p.component != q.component) return 2.0;
  return space.is_circle(p.component) ? circle_distance(p.x, q.x) : std::fabs(p.x - q.x);
}

/// Restriction of a PL map to one source component. Breakpoints run from 0
/// to 1; `values` are image coordinates. For circle targets the values are
/// lifts to R, so consecutive differences are taken literally and the image
/// is reduced mod 1 on evaluation.
struct PLPiece {
  std::size_t target = 0;
  std::vector<double> breaks;
  std::vector<double> values;
};

class PLMap {
 public:
  PLMap(PLSpace space, std::vector<PLPiece> pieces) : space_(std::move(space)), pieces_(std::move(pieces)) {
    if (pieces_.size() != space_.size()) throw MalformedMap("one piece per component required");
    for (std::size_t c = 0; c < pieces_.size(); ++c) validate(c);
  }

  const PLSpace& space() const { return space_; }
  const PLPiece& piece(std::size_t c) const { return pieces_.at(c); }
  std::size_t components() const { return pieces_.size(); }

  /// Lifted image of x in [0,1] on component c.
  double lift(std::size_t c, double x) const {
    const auto& p = pieces_[c];
    if (x <= p.breaks.front()) return p.values.front();
    if (x >= p.breaks.back()) return p.values.back();
    auto it = std::upper_bound(p.breaks.begin(), p.breaks.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - p.breaks.begin()) - 1;
    if (x == p.breaks[i]) return p.values[i];
    const double t = (x - p.breaks[i]) / (p.breaks[i + 1] - p.breaks[i]);
    return p.values[i] + t * (p.values[i + 1] - p.values[i]);
  }

  PLPoint operator()(const PLPoint& q) const {
    if (q.component >= pieces_.size()) throw std::out_of_range("point on unknown component");
    double x = q.x;
    if (space_.is_circle(q.component)) {
      x -= std::floor(x);
    } else if (x < 0.0 || x > 1.0) {
      throw std::out_of_range("arc coordinate outside [0,1]");
    }
    const auto& p = pieces_[q.component];
    double y = lift(q.component, x);
    if (space_.is_circle(p.target)) {
      y -= std::floor(y);
      if (y >= 1.0) y = 0.0;
    }
    return {p.target, y};
  }

  /// Degree of a circle-to-circle piece.
  long degree(std::size_t c) const {
    const auto& p = pieces_[c];
    return std::lround(p.values.back() - p.values.front());
  }

  /// Some linear segment is constant.
  bool has_flat_lap() const {
    for (const auto& p : pieces_)
      for (std::size_t i = 0; i + 1 < p.values.size(); ++i)
        if (p.values[i] == p.values[i + 1]) return true;
    return false;
  }

  /// Every segment is strictly monotone and every piece is bijective onto
  /// its target (degree +-1 for circles, endpoints to endpoints for arcs),
  /// with components permuted.
  bool is_homeomorphism() const {
    std::vector<int> hit(pieces_.size(), 0);
    for (std::size_t c = 0; c < pieces_.size(); ++c) {
      const auto& p = pieces_[c];
      int sign = 0;
      for (std::size_t i = 0; i + 1 < p.values.size(); ++i) {
        const double d = p.values[i + 1] - p.values[i];
        if (d == 0) return false;
        const int s = d > 0 ? 1 : -1;
        if (sign != 0 && s != sign) return false;
        sign = s;
      }
      if (space_.is_circle(c) != space_.is_circle(p.target)) return false;
      if (space_.is_circle(c)) {
        if (std::abs(degree(c)) != 1) return false;
      } else {
        const double lo = std::min(p.values.front(), p.values.back());
        const double hi = std::max(p.values.front(), p.values.back());
        if (lo != 0.0 || hi != 1.0) return false;
      }
      ++hit[p.target];
    }
    return std::all_of(hit.begin(), hit.end(), [](int h) { return h == 1; });
  }

  static PLMap identity(const PLSpace& space) {
    std::vector<PLPiece> pieces;
    for (std::size_t c = 0; c < space.size(); ++c) pieces.push_back({c, {0.0, 1.0}, {0.0, 1.0}});
    return PLMap(space, std::move(pieces));
  }

  static PLMap rotation(double angle) {
    return PLMap(PLSpace::circles(1), {{0, {0.0, 1.0}, {angle, angle + 1.0}}});
  }

 private:
  void validate(std::size_t c) const {
    const auto& p = pieces_[c];
    const std::string where = "component " + std::to_string(c) + ": ";
    if (p.target >= space_.size()) throw MalformedMap(where + "unknown target component");
    if (p.breaks.size() < 2 || p.breaks.size() != p.values.size())
      throw MalformedMap(where + "needs matching breakpoints and values, at least two");
    if (p.breaks.front() != 0.0 || p.breaks.back() != 1.0)
      throw MalformedMap(where + "breakpoints must start at 0 and end at 1");
    for (std::size_t i = 0; i + 1 < p.breaks.size(); ++i)
      if (!(p.breaks[i] < p.breaks[i + 1])) throw MalformedMap(where + "breakpoints must increase");
    for (double v : p.values)
      if (!std::isfinite(v)) throw MalformedMap(where + "non-finite image value");
    if (!space_.is_circle(p.target))
      for (double v : p.values)
        if (v < 0.0 || v > 1.0) throw MalformedMap(where + "image leaves the target arc");
    if (space_.is_circle(c)) {
      const double d = p.values.back() - p.values.front();
      if (space_.is_circle(p.target)) {
        if (std::fabs(d - std::round(d)) > 1e-12) throw MalformedMap(where + "discontinuous at 0 = 1");
      } else if (std::fabs(d) > 1e-12) {
        throw MalformedMap(where + "discontinuous at 0 = 1");
      }
    }
  }

  PLSpace space_;
  std::vector<PLPiece> pieces_;
};

inline constexpr double kCommuteTolerance = 1e-9;
inline constexpr std::size_t kCommuteSamples = 1024;

/// Throws NonCommutingError unless every pair commutes on the sample grid.
inline void require_commuting(const std::vector<PLMap>& gens) {
  if (gens.empty()) throw std::invalid_argument("need at least one generator");
  const PLSpace& space = gens.front().space();
  for (const auto& g : gens)
    if (g.space().kinds() != space.kinds()) throw MalformedMap("generators act on different spaces");
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      for (std::size_t c = 0; c < space.size(); ++c)
        for (std::size_t s = 0; s < kCommuteSamples; ++s) {
          const PLPoint p{c, static_cast<double>(s) / static_cast<double>(kCommuteSamples - 1)};
          const PLPoint a = gens[i](gens[j](p)), b = gens[j](gens[i](p));
          if (distance(space, a, b) > kCommuteTolerance)
            throw NonCommutingError("generators " + std::to_string(i) + " and " + std::to_string(j) +
                                    " do not commute at component " + std::to_string(c) + ", x = " +
                                    std::to_string(p.x));
        }
}

/// Orbit points tagged with the l1-norm of the exponent vector that produced them.
struct OrbitSample {
  PLPoint point;
  std::size_t norm = 0;
};

/// Images of x0 under every word with exponent-vector norm 1..max_total_length.
/// Words are enumerated with nondecreasing generator index, which is
/// exhaustive for commuting generators. No deduplication.
inline std::vector<OrbitSample> orbit_words(const std::vector<PLMap>& gens, const PLPoint& x0,
                                            std::size_t max_total_length) {
  struct Node {
    PLPoint p;
    std::size_t min_gen;
  };
  std::vector<OrbitSample> out;
  std::vector<Node> frontier{{x0, 0}};
  for (std::size_t len = 1; len <= max_total_length; ++len) {
    std::vector<Node> next;
    next.reserve(frontier.size() + 1);
    for (const auto& node : frontier)
      for (std::size_t i = node.min_gen; i < gens.size(); ++i) {
        PLPoint q = gens[i](node.p);
        out.push_back({q, len});
        next.push_back({q, i});
      }
    frontier = std::move(next);
  }
  return out;
}

/// Sorts by (component, coordinate) and merges points closer than `resolution`.
inline std::vector<PLPoint> dedupe(const PLSpace& space, std::vector<PLPoint> pts, double resolution = 1e-12) {
  std::sort(pts.begin(), pts.end(), [](const PLPoint& a, const PLPoint& b) {
    return a.component != b.component ? a.component < b.component : a.x < b.x;
  });
  std::vector<PLPoint> out;
  for (const auto& p : pts)
    if (out.empty() || out.back().component != p.component || p.x - out.back().x > resolution) out.push_back(p);
  // Wrap-around duplicates on circles.
  std::vector<PLPoint> merged;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const bool last_of_comp = i + 1 == out.size() || out[i + 1].component != out[i].component;
    if (last_of_comp && space.is_circle(out[i].component)) {
      std::size_t first = i;
      while (first > 0 && out[first - 1].component == out[i].component) --first;
      if (first != i && circle_distance(out[first].x, out[i].x) <= resolution) continue;
    }
    merged.push_back(out[i]);
  }
  return merged;
}

/// Orb(x0) truncated at exponent norm max_total_length, deduplicated at 1e-12.
inline std::vector<PLPoint> orbit_explore(const std::vector<PLMap>& gens, const PLPoint& x0,
                                          std::size_t max_total_length) {
  require_commuting(gens);
  std::vector<PLPoint> pts;
  for (const auto& s : orbit_words(gens, x0, max_total_length)) pts.push_back(s.point);
  return dedupe(gens.front().space(), std::move(pts));
}

}  // namespace minact
