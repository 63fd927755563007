#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>

#include <gmpxx.h>

#include "substar/diagram.hpp"

namespace substar {

using Rational = mpq_class;

/// u^a s_{min x} s_{min y}^* u^{-b} with L(x) = L(y).
/// A level-1 vertex stands for the projection onto paths with that root label,
/// so the unit is the sum of the level-1 diagonal monomials.
struct Monomial {
  Vertex x;
  Vertex y;
  std::int64_t a = 0;
  std::int64_t b = 0;

  /// Gauge degree l(x) - l(y).
  int degree() const { return static_cast<int>(x.level) - static_cast<int>(y.level); }
  Monomial adjoint() const { return {y, x, b, a}; }
  auto operator<=>(const Monomial&) const = default;
};

class Element {
 public:
  using Terms = std::map<Monomial, Rational>;

  Element() = default;
  explicit Element(const Monomial& m, const Rational& c = 1) { add(m, c); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  unsigned max_level() const;

  void add(const Monomial& m, const Rational& c);
  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Rational& c);

  friend Element operator+(Element x, const Element& y) { return x += y; }
  friend Element operator-(Element x, const Element& y) { return x -= y; }
  friend Element operator*(const Rational& c, Element x) { return x *= c; }
  bool operator==(const Element& o) const { return terms_ == o.terms_; }

 private:
  Terms terms_;
};

/// Symbolic calculus on the dense subalgebra spanned by the monomials.
class Algebra {
 public:
  /// Requires a proper substitution. The diagram must outlive the algebra.
  explicit Algebra(const Diagram& d);

  const Diagram& diagram() const { return d_; }

  Element one() const;
  Element u(std::int64_t k = 1) const;
  /// s_f for any finite path; a level-1 path gives a projection.
  Element s(const FinitePath& f) const;
  Element s_star(const FinitePath& f) const;
  Element e(const FinitePath& f) const;
  /// u^a s_f s_g^* u^{-b} for arbitrary paths.
  Element term(std::int64_t a, const FinitePath& f, const FinitePath& g, std::int64_t b) const;

  static Element adjoint(const Element& x);
  Element multiply(const Element& x, const Element& y) const;
  Element multiply(const Monomial& x, const Monomial& y) const;

  /// One level deeper through the Cuntz-Krieger sum.
  Element refine(const Monomial& m) const;
  /// Like refine, but trades the minimal-edge terms for wrap-around terms
  /// with larger exponents on both sides.
  Element expand(const Monomial& m) const;
  /// Refines every monomial until l(x) = level; level >= max_level(x).
  Element normalize(const Element& x, unsigned level) const;
  /// normalize at the largest level present.
  Element normalize(const Element& x) const;

  /// Gauge-invariant part: degree-0 monomials.
  static Element expectation_E(const Element& x);
  /// Diagonal part of a degree-0 element: a = b. Throws on nonzero degree.
  static Element expectation_F(const Element& x);
  static Element expectation_G(const Element& x);

  /// Recursion guard for multiply; exceeding it throws with a diagnostic.
  static constexpr unsigned kMaxExpansionDepth = 48;

 private:
  Element multiply(const Monomial& x, const Monomial& y, unsigned depth) const;
  Element contract(const Monomial& x, const Monomial& y) const;
  Monomial from_paths(std::int64_t a, const FinitePath& f, const FinitePath& g, std::int64_t b) const;

  const Diagram& d_;
};

std::string to_string(const Diagram& d, const Monomial& m);
std::string to_string(const Diagram& d, const Element& x);

}  // namespace substar
