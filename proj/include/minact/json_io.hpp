// JSON and CSV formats for the library types.
#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "minact/minact.hpp"

namespace minact::io {

using nlohmann::json;

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// 12 significant digits, parsed back so the stored double matches the text.
inline double round12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

inline std::string format12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::string rational_to_string(const Rational& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline Rational parse_rational(const std::string& s) {
  static const std::regex re(R"(\s*(-?\d+)\s*(?:/\s*(\d+))?\s*)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw ParseError("not a rational: " + s);
  const Int den = m[2].matched ? std::stoll(m[2].str()) : 1;
  if (den == 0) throw ParseError("zero denominator: " + s);
  return Rational(std::stoll(m[1].str()), den);
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// ---- basis ----

inline json basis_to_json(const IrrationalBasis& b) {
  json syms = json::array();
  for (const auto& e : b.entries()) syms.push_back({{"name", e.name}, {"value", e.decimal}});
  return {{"symbols", syms}};
}

inline BasisPtr basis_from_json(const json& j) {
  auto b = std::make_shared<IrrationalBasis>();
  try {
    for (const auto& s : j.at("symbols")) b->add(s.at("name").get<std::string>(), s.at("value").get<std::string>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("basis: ") + e.what());
  }
  return b;
}

/// Basis named by MINACT_BASIS, else the built-in one.
inline BasisPtr basis_from_environment() {
  const char* path = std::getenv("MINACT_BASIS");
  if (!path || !*path) return default_basis();
  return basis_from_json(read_json_file(path));
}

// ---- rotation numbers ----

inline json rotation_to_json(const RotationNumber& r) {
  json irr = json::object();
  for (const auto& [name, c] : r.coeffs()) irr[name] = rational_to_string(c);
  return {{"rat", rational_to_string(r.rational_part())}, {"irr", irr}, {"approx", round12(r.to_double())}};
}

inline RotationNumber rotation_from_json(const json& j, const BasisPtr& basis) {
  try {
    if (j.is_string()) return RotationNumber(parse_rational(j.get<std::string>()));
    Rational rat = parse_rational(j.at("rat").get<std::string>());
    std::map<std::string, Rational> coeffs;
    if (j.contains("irr"))
      for (const auto& [name, c] : j.at("irr").items()) coeffs[name] = parse_rational(c.get<std::string>());
    return RotationNumber(rat, coeffs, basis);
  } catch (const json::exception& e) {
    throw ParseError(std::string("rotation number: ") + e.what());
  }
}

// ---- groups ----

inline json group_to_json(const FgAbelianGroup& g) {
  return {{"free_rank", g.free_rank()}, {"invariant_factors", g.invariant_factors()}, {"name", g.to_string()}};
}

inline FgAbelianGroup group_from_json(const json& j) {
  try {
    if (j.contains("relations")) {
      const std::size_t n = j.at("ambient_rank").get<std::size_t>();
      const auto rels = j.at("relations").get<std::vector<IntVector>>();
      for (const auto& r : rels)
        if (r.size() != n) throw ParseError("relation has wrong length");
      return canonical_form(IntMatrix::from_columns(rels, n), n);
    }
    const auto free_rank = j.at("free_rank").get<std::size_t>();
    IntVector f = j.value("invariant_factors", IntVector{});
    // Accept any torsion orders and normalize.
    const std::size_t n = free_rank + f.size();
    std::vector<IntVector> rels;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i] < 1) throw ParseError("torsion orders must be positive");
      IntVector r(n, 0);
      r[free_rank + i] = f[i];
      rels.push_back(r);
    }
    return canonical_form(IntMatrix::from_columns(rels, n), n);
  } catch (const json::exception& e) {
    throw ParseError(std::string("group: ") + e.what());
  }
}

/// "Z", "Z^2", "Z+Z2+Z3", "Z6", "0", or a path to a group JSON file.
inline FgAbelianGroup parse_group_spec(const std::string& spec) {
  if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") return group_from_json(read_json_file(spec));
  if (spec == "0") return FgAbelianGroup();
  static const std::regex term(R"(Z(?:\^(\d+))?|Z(\d+))");
  if (spec.empty() || spec.back() == '+') throw ParseError("bad group spec: " + spec);
  std::size_t free_rank = 0;
  IntVector orders;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, '+')) {
    std::smatch m;
    if (!std::regex_match(tok, m, term)) throw ParseError("bad group term: " + tok);
    if (m[2].matched) {
      orders.push_back(std::stoll(m[2].str()));
    } else {
      free_rank += m[1].matched ? std::stoul(m[1].str()) : 1;
    }
  }
  return group_from_json({{"free_rank", free_rank}, {"invariant_factors", orders}});
}

inline CatalogGroup parse_catalog(const std::string& name, const std::vector<Int>& primes) {
  if (name == "torsion_circle") return {CatalogKind::TorsionOfCircle, {}};
  if (name == "prime_sum") return {CatalogKind::PrimeSum, primes};
  if (name == "rationals") return {CatalogKind::Rationals, {}};
  if (name == "prufer") return {CatalogKind::Prufer, primes};
  throw ParseError("unknown catalog group: " + name);
}

// ---- certificates ----

inline json matrix_to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return rows;
}

inline json certificate_to_json(const ExtensionCertificate& c) {
  json emb = json::array();
  for (const auto& r : c.embedding()) emb.push_back(rotation_to_json(r));
  return {{"group", group_to_json(c.group())},
          {"circles", c.quotient_order()},
          {"subgroup_generators", matrix_to_json(c.subgroup().generators.transpose())},
          {"subgroup_structure", group_to_json(c.subgroup_structure())},
          {"quotient", group_to_json(c.quotient())},
          {"quotient_map", matrix_to_json(c.quotient_map())},
          {"section", matrix_to_json(c.section())},
          {"embedding", emb}};
}

/// Rebuilds a certificate from its group and subgroup generators.
inline ExtensionCertificate certificate_from_json(const json& j, const BasisPtr& basis) {
  try {
    const FgAbelianGroup G = group_from_json(j.at("group"));
    const auto gens = j.at("subgroup_generators").get<std::vector<IntVector>>();
    const std::size_t n = G.ambient_rank();
    for (const auto& g : gens)
      if (g.size() != n) throw ParseError("subgroup generator has wrong length");
    const SubgroupWitness w = make_witness(G, IntMatrix::from_columns(gens, n));
    if (!w.index) throw ParseError("certificate subgroup has infinite index");
    if (j.contains("circles") && j.at("circles").get<Int>() != *w.index)
      throw ParseError("certificate subgroup index does not match the number of circles");
    if (!embeds_densely_in_circle(structure_of_subgroup(G, w)))
      throw ParseError("certificate subgroup does not embed densely in the circle");
    return ExtensionCertificate(G, w, basis);
  } catch (const json::exception& e) {
    throw ParseError(std::string("certificate: ") + e.what());
  }
}

// ---- actions ----

inline json action_to_json(const ConstructedAction& a) {
  const auto& ext = a.extension();
  const auto& K = ext.k_indexer();
  json cocycle = json::array();
  for (Int x = 0; x < K.size(); ++x)
    for (Int y = 0; y < K.size(); ++y)
      if (!ext.cocycle()(x, y).is_zero())
        cocycle.push_back({{"a", K.element(x)}, {"b", K.element(y)}, {"value", rotation_to_json(ext.cocycle()(x, y))}});
  json H = json::array();
  for (const auto& h : ext.h_generators()) H.push_back(rotation_to_json(h));
  json gens = json::array();
  for (const auto& g : a.generators()) gens.push_back({{"k", K.element(g.k)}, {"h", rotation_to_json(g.h)}});
  return {{"K", K.group().invariant_factors()}, {"cocycle", cocycle}, {"H", H}, {"generators", gens}};
}

/// Parses an action file without validating it (verify reports the problems).
inline ConstructedAction action_from_json(const json& j, const BasisPtr& basis) {
  try {
    IntVector factors = j.at("K").get<IntVector>();
    const FgAbelianGroup K(0, factors);
    FiniteIndexer idx(K);
    Cocycle f = Cocycle::zero(K);
    for (const auto& e : j.at("cocycle"))
      f.at(idx.index_of(e.at("a").get<IntVector>()), idx.index_of(e.at("b").get<IntVector>())) =
          rotation_from_json(e.at("value"), basis);
    std::vector<RotationNumber> H;
    for (const auto& h : j.at("H")) H.push_back(rotation_from_json(h, basis));
    ExtensionGroup ext(f, H);
    std::vector<ExtElement> gens;
    if (j.contains("generators")) {
      for (const auto& g : j.at("generators"))
        gens.push_back({idx.index_of(g.at("k").get<IntVector>()), rotation_from_json(g.at("h"), basis)});
    } else {
      gens = default_generators(ext);
    }
    return ConstructedAction(std::move(ext), std::move(gens));
  } catch (const json::exception& e) {
    throw ParseError(std::string("action: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("action: ") + e.what());
  }
}

// ---- PL maps ----

/// {"space": ["circle", "arc"], "generators": [[[[b, comp, v], ...] per component] per map]}
inline json pl_bundle_to_json(const std::vector<PLMap>& gens) {
  json space = json::array();
  for (auto k : gens.at(0).space().kinds()) space.push_back(k == ComponentKind::Circle ? "circle" : "arc");
  json maps = json::array();
  for (const auto& g : gens) {
    json comps = json::array();
    for (std::size_t c = 0; c < g.components(); ++c) {
      const auto& p = g.piece(c);
      json triples = json::array();
      for (std::size_t i = 0; i < p.breaks.size(); ++i)
        triples.push_back({round12(p.breaks[i]), p.target, round12(p.values[i])});
      comps.push_back(triples);
    }
    maps.push_back(comps);
  }
  return {{"space", space}, {"generators", maps}};
}

inline std::vector<PLMap> pl_bundle_from_json(const json& j) {
  try {
    std::vector<ComponentKind> kinds;
    for (const auto& k : j.at("space")) {
      const auto s = k.get<std::string>();
      if (s == "circle") kinds.push_back(ComponentKind::Circle);
      else if (s == "arc") kinds.push_back(ComponentKind::Arc);
      else throw MalformedMap("unknown component kind " + s);
    }
    const PLSpace space(kinds);
    std::vector<PLMap> out;
    for (const auto& m : j.at("generators")) {
      std::vector<PLPiece> pieces;
      for (const auto& comp : m) {
        PLPiece p;
        bool first = true;
        for (const auto& t : comp) {
          if (t.size() != 3) throw MalformedMap("breakpoint entries are [breakpoint, component, value]");
          const auto target = t[1].get<std::size_t>();
          if (!first && target != p.target) throw MalformedMap("one component must map into one component");
          p.target = target;
          first = false;
          p.breaks.push_back(t[0].get<double>());
          p.values.push_back(t[2].get<double>());
        }
        pieces.push_back(std::move(p));
      }
      out.emplace_back(space, std::move(pieces));
    }
    if (out.empty()) throw MalformedMap("bundle has no generators");
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("PL bundle: ") + e.what());
  }
}

// ---- reports ----

inline json report_to_json(const MinimalSetReport& r, double epsilon) {
  json v = {{"case", to_string(r.verdict)}};
  switch (r.verdict) {
    case Verdict::Finite: v["cardinality"] = r.cardinality; break;
    case Verdict::Circles: v["count"] = r.circle_count; break;
    case Verdict::CantorOnArc:
      v["component"] = r.arc_component;
      v["arc"] = {round12(r.arc_lo), round12(r.arc_hi)};
      v["full_circle"] = r.arc_is_full_circle;
      break;
  }
  json ev = {{"points", r.points.size()},
             {"max_gap", round12(r.max_gap)},
             {"gaps_over_2eps", r.gaps_over_2eps},
             {"isolation_radius", round12(r.isolation_radius)},
             {"min_separation", round12(r.min_separation)}};
  if (r.globally_perfect) ev["globally_perfect"] = *r.globally_perfect;
  return {{"verdict", v}, {"epsilon", round12(epsilon)}, {"evidence", ev}};
}

inline std::string cloud_csv(const std::vector<PLPoint>& pts) {
  std::string s = "component,angle\n";
  for (const auto& p : pts) s += std::to_string(p.component) + "," + format12(p.x) + "\n";
  return s;
}

/// Writes via a temporary file and rename.
inline void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw std::runtime_error("cannot rename to " + path);
}

}  // namespace minact::io
