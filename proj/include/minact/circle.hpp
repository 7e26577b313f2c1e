// Exact arithmetic on the circle R/Z over a declared basis of irrationals.
#pragma once

#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "minact/abelian_group.hpp"
#include "minact/int_matrix.hpp"

namespace minact {

using HighPrecision = boost::multiprecision::cpp_dec_float_50;

class BasisMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Symbols assumed Q-linearly independent together with 1. The assumption is
/// declared, never verified.
class IrrationalBasis {
 public:
  struct Entry {
    std::string name;
    std::string decimal;  // as supplied, >= 30 significant digits after the point
    HighPrecision value;
  };

  IrrationalBasis() = default;

  void add(std::string name, std::string decimal) {
    if (index_of(name)) throw std::invalid_argument("duplicate basis symbol: " + name);
    const auto dot = decimal.find('.');
    if (dot == std::string::npos || decimal.size() - dot - 1 < 30)
      throw std::invalid_argument("basis value for " + name + " needs at least 30 decimal digits");
    HighPrecision v(decimal);
    if (v <= 0 || v >= 1) throw std::invalid_argument("basis value for " + name + " must lie in (0,1)");
    entries_.push_back({std::move(name), std::move(decimal), v});
  }

  std::size_t size() const { return entries_.size(); }
  const Entry& operator[](std::size_t i) const { return entries_.at(i); }
  const std::vector<Entry>& entries() const { return entries_; }

  std::optional<std::size_t> index_of(const std::string& name) const {
    for (std::size_t i = 0; i < entries_.size(); ++i)
      if (entries_[i].name == name) return i;
    return std::nullopt;
  }

  const HighPrecision& value(const std::string& name) const {
    auto i = index_of(name);
    if (!i) throw BasisMismatch("symbol not in basis: " + name);
    return entries_[*i].value;
  }

  bool same_symbols(const IrrationalBasis& o) const {
    if (entries_.size() != o.entries_.size()) return false;
    for (std::size_t i = 0; i < entries_.size(); ++i)
      if (entries_[i].name != o.entries_[i].name || entries_[i].decimal != o.entries_[i].decimal) return false;
    return true;
  }

 private:
  std::vector<Entry> entries_;
};

using BasisPtr = std::shared_ptr<const IrrationalBasis>;

/// sqrt(2)-1, sqrt(3)-1, pi-3, sqrt(5)-2, sqrt(7)-2, sqrt(11)-3, sqrt(13)-3, sqrt(17)-4.
inline BasisPtr default_basis() {
  static const BasisPtr basis = [] {
    auto b = std::make_shared<IrrationalBasis>();
    b->add("alpha1", "0.414213562373095048801688724209698078569672");
    b->add("alpha2", "0.732050807568877293527446341505872366942805");
    b->add("alpha3", "0.141592653589793238462643383279502884197169");
    b->add("alpha4", "0.236067977499789696409173668731276235440618");
    b->add("alpha5", "0.645751311064590590501615753639260425710259");
    b->add("alpha6", "0.316624790355399849114932736670686683927089");
    b->add("alpha7", "0.605551275463989293119221267470495946251297");
    b->add("alpha8", "0.123105625617660549821409855974077025147199");
    return BasisPtr(b);
  }();
  return basis;
}

/// An element of R/Z: a rational in [0,1) plus a rational combination of
/// basis symbols. Canonical form is unique, so equality is structural.
class RotationNumber {
 public:
  RotationNumber() = default;
  explicit RotationNumber(Rational r) : rational_(reduce_mod1(r)) {}
  RotationNumber(Rational r, std::map<std::string, Rational> coeffs, BasisPtr basis)
      : rational_(reduce_mod1(r)), coeffs_(std::move(coeffs)), basis_(std::move(basis)) {
    std::erase_if(coeffs_, [](const auto& kv) { return kv.second.numerator() == 0; });
    if (basis_)
      for (const auto& [name, c] : coeffs_)
        if (!basis_->index_of(name)) throw BasisMismatch("symbol not in basis: " + name);
    if (coeffs_.empty()) basis_.reset();
  }

  static RotationNumber zero() { return RotationNumber(); }
  static RotationNumber symbol(const BasisPtr& basis, const std::string& name, Rational coeff = 1) {
    return RotationNumber(0, {{name, coeff}}, basis);
  }

  const Rational& rational_part() const { return rational_; }
  const std::map<std::string, Rational>& coeffs() const { return coeffs_; }
  const BasisPtr& basis() const { return basis_; }
  bool is_rational() const { return coeffs_.empty(); }
  bool is_zero() const { return coeffs_.empty() && rational_.numerator() == 0; }

  friend bool operator==(const RotationNumber& a, const RotationNumber& b) {
    return a.rational_ == b.rational_ && a.coeffs_ == b.coeffs_;
  }

  friend RotationNumber operator+(const RotationNumber& a, const RotationNumber& b) {
    auto basis = merge_basis(a.basis_, b.basis_);
    auto coeffs = a.coeffs_;
    for (const auto& [name, c] : b.coeffs_) coeffs[name] += c;
    return RotationNumber(a.rational_ + b.rational_, std::move(coeffs), std::move(basis));
  }
  friend RotationNumber operator-(const RotationNumber& a) {
    auto coeffs = a.coeffs_;
    for (auto& kv : coeffs) kv.second = -kv.second;
    return RotationNumber(-a.rational_, std::move(coeffs), a.basis_);
  }
  friend RotationNumber operator-(const RotationNumber& a, const RotationNumber& b) { return a + (-b); }
  RotationNumber& operator+=(const RotationNumber& o) { return *this = *this + o; }

  friend RotationNumber operator*(Int n, const RotationNumber& a) {
    auto coeffs = a.coeffs_;
    for (auto& kv : coeffs) kv.second *= n;
    return RotationNumber(a.rational_ * n, std::move(coeffs), a.basis_);
  }

  /// Value in [0,1) at the basis precision.
  HighPrecision high_precision_value() const {
    HighPrecision v = HighPrecision(rational_.numerator()) / HighPrecision(rational_.denominator());
    for (const auto& [name, c] : coeffs_) {
      if (!basis_) throw BasisMismatch("irrational part without a basis");
      v += basis_->value(name) * HighPrecision(c.numerator()) / HighPrecision(c.denominator());
    }
    v -= boost::multiprecision::floor(v);
    return v;
  }

  /// Rounded once to binary floating point.
  double to_double() const {
    double d = high_precision_value().convert_to<double>();
    return d >= 1.0 ? 0.0 : d;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << rational_.numerator();
    if (rational_.denominator() != 1) os << "/" << rational_.denominator();
    for (const auto& [name, c] : coeffs_) {
      os << (c.numerator() < 0 ? " - " : " + ");
      Rational a = c.numerator() < 0 ? -c : c;
      if (a != Rational(1)) {
        os << a.numerator();
        if (a.denominator() != 1) os << "/" << a.denominator();
        os << "*";
      }
      os << name;
    }
    return os.str();
  }

 private:
  static Rational reduce_mod1(Rational r) {
    Int fl = detail::floor_div(r.numerator(), r.denominator());
    return r - fl;
  }

  static BasisPtr merge_basis(const BasisPtr& a, const BasisPtr& b) {
    if (!a) return b;
    if (!b) return a;
    if (a != b && !a->same_symbols(*b)) throw BasisMismatch("rotation numbers over different bases");
    return a;
  }

  Rational rational_{0};
  std::map<std::string, Rational> coeffs_;
  BasisPtr basis_;
};

/// Order in R/Z, or nullopt for infinite order.
inline std::optional<Int> element_order(const RotationNumber& x) {
  if (!x.is_rational()) return std::nullopt;
  return x.rational_part().denominator();
}

/// A subgroup of R/Z is dense iff it is infinite; a finitely generated one is
/// infinite iff some generator has a nonzero irrational part.
inline bool subgroup_is_dense(const std::vector<RotationNumber>& gens) {
  if (gens.empty()) throw std::invalid_argument("subgroup_is_dense needs at least one generator");
  for (const auto& g : gens)
    if (!g.is_rational()) return true;
  return false;
}

/// A finitely generated abelian group is isomorphic to a dense subgroup of R/Z
/// iff it is infinite and its torsion subgroup is cyclic.
inline bool embeds_densely_in_circle(const FgAbelianGroup& H) {
  return H.free_rank() >= 1 && H.invariant_factors().size() <= 1;
}

/// Injective morphism H -> R/Z with dense image: free generators go to
/// distinct basis symbols, the cyclic torsion generator of order d to 1/d.
/// One entry per ambient generator of H, free generators first.
inline std::vector<RotationNumber> realize_embedding(const FgAbelianGroup& H, const BasisPtr& basis = default_basis()) {
  if (!embeds_densely_in_circle(H))
    throw std::invalid_argument("group " + H.to_string() + " does not embed densely in the circle");
  if (!basis || basis->size() < H.free_rank())
    throw std::invalid_argument("irrational basis too small for free rank " + std::to_string(H.free_rank()));
  std::vector<RotationNumber> out;
  for (std::size_t i = 0; i < H.free_rank(); ++i) out.push_back(RotationNumber::symbol(basis, (*basis)[i].name));
  for (Int d : H.invariant_factors()) out.emplace_back(Rational(1, d));
  return out;
}

}  // namespace minact
