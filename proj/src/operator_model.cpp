#include "substar/operator_model.hpp"

#include <map>

#include <algorithm>

namespace substar {

OperatorModel::OperatorModel(const Diagram& d) : d_(d) {
  if (!d.proper()) throw Error("the operator model needs a proper substitution");
}

std::optional<TailPath> OperatorModel::s(const FinitePath& f, const TailPath& l) const {
  if (f.target() != l.prefix.root) return std::nullopt;
  return d_.canonical({concat(f, l.prefix), l.tail});
}

std::optional<TailPath> OperatorModel::s_star(const FinitePath& f, const TailPath& l) const {
  const auto ext = d_.extend(l, f.level() + 1);
  if (!is_prefix(f, ext.prefix)) return std::nullopt;
  return d_.canonical({strip_prefix(f, ext.prefix), l.tail});
}

std::optional<TailPath> OperatorModel::apply(const Monomial& m, const TailPath& l) const {
  auto p = s_star(d_.minimal(m.y), u(-m.b, l));
  if (!p) return std::nullopt;
  p = s(d_.minimal(m.x), *p);
  if (!p) return std::nullopt;
  return u(m.a, *p);
}

ModelVector OperatorModel::apply(const Element& x, const TailPath& l) const {
  // Terms share exponents and vertices, so u^{-b} l and the minimal paths are computed once each.
  std::map<std::int64_t, TailPath> shifted;
  std::map<Vertex, FinitePath> minimal;
  auto min_path = [&](const Vertex& v) -> const FinitePath& {
    auto it = minimal.find(v);
    if (it == minimal.end()) it = minimal.emplace(v, d_.minimal(v)).first;
    return it->second;
  };
  ModelVector out;
  for (const auto& [m, c] : x.terms()) {
    auto it = shifted.find(m.b);
    if (it == shifted.end()) it = shifted.emplace(m.b, u(-m.b, l)).first;
    auto p = s_star(min_path(m.y), it->second);
    if (p) p = s(min_path(m.x), *p);
    if (p) p = u(m.a, *p);
    if (p) {
      auto& slot = out[*p];
      slot += c;
      if (slot == 0) out.erase(*p);
    }
  }
  return out;
}

ModelVector OperatorModel::apply(const Element& x, const ModelVector& v) const {
  ModelVector out;
  for (const auto& [l, cl] : v) {
    for (const auto& [p, c] : apply(x, l)) {
      auto& slot = out[p];
      slot += cl * c;
      if (slot == 0) out.erase(p);
    }
  }
  return out;
}

std::vector<TailPath> probe_basis(const Diagram& d, unsigned max_level) {
  return d.tail_paths(max_level);
}

Verdict check_identity(const Algebra& alg, const Element& lhs, const Element& rhs,
                       unsigned probe_depth) {
  return check_identity(alg, lhs, rhs, probe_basis(alg.diagram(), probe_depth));
}

Verdict check_identity(const Algebra& alg, const Element& lhs, const Element& rhs,
                       const std::vector<TailPath>& basis) {
  const auto& d = alg.diagram();
  OperatorModel model(d);
  Verdict v;
  for (const auto& l : basis) {
    ++v.probes;
    if (model.apply(lhs, l) != model.apply(rhs, l)) {
      v.pass = false;
      v.witness = d.describe(l);
      break;
    }
  }
  const unsigned level = std::max(lhs.max_level(), rhs.max_level());
  v.coefficients_match = alg.normalize(lhs, level) == alg.normalize(rhs, level);
  return v;
}

}  // namespace substar
