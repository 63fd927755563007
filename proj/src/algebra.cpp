#include "substar/algebra.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace substar {

namespace {

std::int64_t add64(std::int64_t x, std::int64_t y) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(x, y, &r)) throw Error("exponent overflow");
  return r;
}

}  // namespace

unsigned Element::max_level() const {
  unsigned n = 1;
  for (const auto& [m, c] : terms_) n = std::max({n, m.x.level, m.y.level});
  return n;
}

void Element::add(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Element& Element::operator+=(const Element& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

Element& Element::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Algebra::Algebra(const Diagram& d) : d_(d) {
  if (!d.proper()) throw Error("the algebra needs a proper substitution");
}

Monomial Algebra::from_paths(std::int64_t a, const FinitePath& f, const FinitePath& g,
                             std::int64_t b) const {
  return {f.vertex(), g.vertex(), add64(a, d_.position(f)), add64(b, d_.position(g))};
}

Element Algebra::one() const { return u(0); }

Element Algebra::u(std::int64_t k) const {
  Element x;
  for (Letter t = 0; t < d_.substitution().size(); ++t) x.add({{t, 1}, {t, 1}, k, 0}, 1);
  return x;
}

Element Algebra::term(std::int64_t a, const FinitePath& f, const FinitePath& g, std::int64_t b) const {
  d_.require_valid(f);
  d_.require_valid(g);
  if (f.target() != g.target()) return {};
  return Element(from_paths(a, f, g, b));
}

Element Algebra::s(const FinitePath& f) const { return term(0, f, FinitePath{f.target(), {}}, 0); }

Element Algebra::s_star(const FinitePath& f) const { return adjoint(s(f)); }

Element Algebra::e(const FinitePath& f) const { return term(0, f, f, 0); }

Element Algebra::adjoint(const Element& x) {
  Element out;
  for (const auto& [m, c] : x.terms()) out.add(m.adjoint(), c);
  return out;
}

Element Algebra::refine(const Monomial& m) const {
  Element out;
  for (const auto& e : d_.edges_from(m.x.label)) {
    out.add({{e.target, m.x.level + 1},
             {e.target, m.y.level + 1},
             add64(m.a, d_.offset(e.target, e.index, m.x.level)),
             add64(m.b, d_.offset(e.target, e.index, m.y.level))},
            1);
  }
  return out;
}

Element Algebra::expand(const Monomial& m) const {
  Element out;
  const bool wraps = m.x.label == d_.first_letter();
  for (const auto& e : d_.edges_from(m.x.label)) {
    if (e.index == 0) continue;
    out.add({{e.target, m.x.level + 1},
             {e.target, m.y.level + 1},
             add64(m.a, d_.offset(e.target, e.index, m.x.level)),
             add64(m.b, d_.offset(e.target, e.index, m.y.level))},
            1);
  }
  if (wraps) {
    // Minimal edges all leave the first letter; their sum is conjugate by u
    // to the sum of maximal ones.
    for (Letter c = 0; c < d_.substitution().size(); ++c) {
      out.add({{c, m.x.level + 1},
               {c, m.y.level + 1},
               add64(m.a, d_.nu(c, m.x.level + 1)),
               add64(m.b, d_.nu(c, m.y.level + 1))},
              1);
    }
  }
  return out;
}

Element Algebra::normalize(const Element& x, unsigned level) const {
  if (level < x.max_level()) {
    throw Error(fmt::format("normalize: level {} below the largest level {}", level, x.max_level()));
  }
  Element out;
  Element work = x;
  while (!work.is_zero()) {
    Element next;
    for (const auto& [m, c] : work.terms()) {
      if (m.x.level >= level) {
        out.add(m, c);
        continue;
      }
      const auto refined = refine(m);
      for (const auto& [r, rc] : refined.terms()) next.add(r, c * rc);
    }
    work = std::move(next);
  }
  return out;
}

Element Algebra::normalize(const Element& x) const { return normalize(x, x.max_level()); }

Element Algebra::expectation_E(const Element& x) {
  Element out;
  for (const auto& [m, c] : x.terms()) {
    if (m.degree() == 0) out.add(m, c);
  }
  return out;
}

Element Algebra::expectation_F(const Element& x) {
  Element out;
  for (const auto& [m, c] : x.terms()) {
    if (m.degree() != 0) throw Error("expectation_F: element has nonzero gauge degree");
    if (m.a == m.b) out.add(m, c);
  }
  return out;
}

Element Algebra::expectation_G(const Element& x) { return expectation_F(expectation_E(x)); }

Element Algebra::multiply(const Element& x, const Element& y) const {
  Element out;
  for (const auto& [mx, cx] : x.terms()) {
    for (const auto& [my, cy] : y.terms()) {
      const Rational c = cx * cy;
      const auto prod = multiply(mx, my);
      for (const auto& [m, cm] : prod.terms()) out.add(m, c * cm);
    }
  }
  return out;
}

Element Algebra::multiply(const Monomial& x, const Monomial& y) const { return multiply(x, y, 0); }

Element Algebra::multiply(const Monomial& x, const Monomial& y, unsigned depth) const {
  if (depth > kMaxExpansionDepth) {
    throw Error(fmt::format("multiply: expansion depth {} exceeded for {} * {}", kMaxExpansionDepth,
                            to_string(d_, x), to_string(d_, y)));
  }
  const std::int64_t m = y.a - x.b;
  if (m >= 0 && m >= d_.nu(y.x)) {
    Element out;
    const auto expanded = expand(x);
    for (const auto& [t, c] : expanded.terms()) {
      const auto prod = multiply(t, y, depth + 1);
      for (const auto& [r, rc] : prod.terms()) out.add(r, c * rc);
    }
    return out;
  }
  if (m < 0 && -m >= d_.nu(x.y)) return adjoint(multiply(y.adjoint(), x.adjoint(), depth + 1));
  return contract(x, y);
}

// x = u^a1 s_x1 s_y1^* u^-b1, y = u^a2 s_x2 s_y2^* u^-b2 with the middle
// exponent inside the tower of the path it acts on.
Element Algebra::contract(const Monomial& x, const Monomial& y) const {
  const std::int64_t m = y.a - x.b;
  if (m >= 0) {
    const auto p = d_.path_at(y.x, m);
    const auto q = d_.minimal(x.y);
    if (q.level() == p.level()) {
      if (p != q) return {};
      return Element(Monomial{x.x, y.y, x.a, y.b});
    }
    if (q.level() < p.level()) {
      if (!is_prefix(q, p)) return {};
      const auto w = concat(d_.minimal(x.x), strip_prefix(q, p));
      return Element(Monomial{w.vertex(), y.y, add64(x.a, d_.position(w)), y.b});
    }
    if (!is_prefix(p, q)) return {};
    const auto w = concat(d_.minimal(y.y), strip_prefix(p, q));
    return Element(Monomial{x.x, w.vertex(), x.a, add64(y.b, d_.position(w))});
  }
  const auto q = d_.path_at(x.y, -m);
  const auto p = d_.minimal(y.x);
  if (p.level() >= q.level() || !is_prefix(p, q)) return {};
  const auto w = concat(d_.minimal(y.y), strip_prefix(p, q));
  return Element(Monomial{x.x, w.vertex(), x.a, add64(y.b, d_.position(w))});
}

std::string to_string(const Diagram& d, const Monomial& m) {
  const auto& sym = d.substitution().alphabet();
  return fmt::format("u^{} s[{}@{}] s[{}@{}]* u^{}", m.a, sym.symbol(m.x.label), m.x.level,
                     sym.symbol(m.y.label), m.y.level, -m.b);
}

std::string to_string(const Diagram& d, const Element& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : x.terms()) {
    if (!out.empty()) out += " + ";
    out += c.get_str() + "*" + to_string(d, m);
  }
  return out;
}

}  // namespace substar
