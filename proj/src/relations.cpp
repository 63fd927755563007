#include "substar/relations.hpp"

namespace substar {

namespace {

OpSum one() { return {OpTerm{1, {}}}; }
OpSum zero() { return {}; }
OpSum gen(Op::Kind kind, const FinitePath& f) { return {OpTerm{1, {Op{kind, 0, f}}}}; }
OpSum S(const FinitePath& f) { return gen(Op::Kind::S, f); }
OpSum Star(const FinitePath& f) { return gen(Op::Kind::SStar, f); }
OpSum U(std::int64_t k) { return {OpTerm{1, {Op{Op::Kind::U, k, {}}}}}; }

OpSum operator*(const OpSum& x, const OpSum& y) {
  OpSum out;
  for (const auto& s : x) {
    for (const auto& t : y) {
      OpTerm p{s.coeff * t.coeff, s.word};
      p.word.insert(p.word.end(), t.word.begin(), t.word.end());
      out.push_back(std::move(p));
    }
  }
  return out;
}

OpSum& operator+=(OpSum& x, const OpSum& y) {
  x.insert(x.end(), y.begin(), y.end());
  return x;
}

OpSum operator-(OpSum x, const OpSum& y) {
  for (auto t : y) {
    t.coeff = -t.coeff;
    x.push_back(std::move(t));
  }
  return x;
}

OpSum adjoint(const OpSum& x) {
  OpSum out;
  for (const auto& t : x) {
    OpTerm r{t.coeff, {}};
    for (auto it = t.word.rbegin(); it != t.word.rend(); ++it) {
      Op op = *it;
      if (op.kind == Op::Kind::U) op.k = -op.k;
      else op.kind = op.kind == Op::Kind::S ? Op::Kind::SStar : Op::Kind::S;
      r.word.push_back(std::move(op));
    }
    out.push_back(std::move(r));
  }
  return out;
}

OpSum E(const FinitePath& f) { return S(f) * Star(f); }

}  // namespace

Element evaluate(const Algebra& alg, const OpSum& x) {
  Element out;
  for (const auto& t : x) {
    Element w = alg.one();
    for (const auto& op : t.word) {
      switch (op.kind) {
        case Op::Kind::U: w = alg.multiply(w, alg.u(op.k)); break;
        case Op::Kind::S: w = alg.multiply(w, alg.s(op.path)); break;
        case Op::Kind::SStar: w = alg.multiply(w, alg.s_star(op.path)); break;
      }
    }
    out += t.coeff * w;
  }
  return out;
}

ModelVector evaluate(const OperatorModel& model, const OpSum& x, const TailPath& l) {
  ModelVector out;
  for (const auto& t : x) {
    std::optional<TailPath> p = l;
    for (auto it = t.word.rbegin(); p && it != t.word.rend(); ++it) {
      switch (it->kind) {
        case Op::Kind::U: p = model.u(it->k, *p); break;
        case Op::Kind::S: p = model.s(it->path, *p); break;
        case Op::Kind::SStar: p = model.s_star(it->path, *p); break;
      }
    }
    if (!p) continue;
    auto& slot = out[*p];
    slot += t.coeff;
    if (slot == 0) out.erase(*p);
  }
  return out;
}

namespace {

class SuiteBuilder {
 public:
  explicit SuiteBuilder(const Diagram& d) : d_(d) {}

  void add(const std::string& family, const std::string& param, OpSum lhs, OpSum rhs) {
    out_.push_back({param.empty() ? family : family + "[" + param + "]", family, std::move(lhs),
                    std::move(rhs)});
  }

  std::vector<FinitePath> paths(unsigned n) const {
    if (n > 1) return d_.enumerate_paths(n);
    std::vector<FinitePath> out;
    for (Letter t = 0; t < d_.substitution().size(); ++t) out.push_back({t, {}});
    return out;
  }

  OpSum sum_extreme(unsigned n, bool max) const {
    OpSum out;
    for (Letter t = 0; t < d_.substitution().size(); ++t) {
      out += S(max ? d_.maximal({t, n}) : d_.minimal({t, n}));
    }
    return out;
  }

  // u e_f u^{-1} written with projections of the same level
  OpSum conjugate(const FinitePath& f) const {
    if (!d_.is_max(f)) return E(d_.successor(f));
    OpSum out;
    if (f.target() != d_.last_letter()) {
      for (const auto& g : d_.gadget_S(f)) out += E(d_.successor(g));
      return out;
    }
    out = one();
    for (const auto& g : paths(f.level())) {
      if (g != f) out = out - conjugate(g);
    }
    return out;
  }

  std::string name(const FinitePath& f) const { return d_.describe(f); }

  std::vector<Relation> take() { return std::move(out_); }

 private:
  const Diagram& d_;
  std::vector<Relation> out_;
};

}  // namespace

std::vector<Relation> relation_suite(const Diagram& d) {
  SuiteBuilder b(d);
  const auto letters = d.substitution().size();
  const auto p2 = b.paths(2);

  OpSum unit;
  for (const auto& f : p2) unit += E(f);
  b.add("unit", "", unit, one());

  for (const auto& g : p2) {
    OpSum rhs;
    for (const auto& f : p2) {
      if (f.root == g.target()) rhs += E(f);
    }
    b.add("source-projection", b.name(g), Star(g) * S(g), rhs);
  }

  for (unsigned n = 2; n <= 3; ++n) {
    for (const auto& f : b.paths(n)) {
      if (!d.is_max(f)) b.add("edge-successor", b.name(f), S(d.successor(f)), U(1) * S(f));
    }
    b.add("max-to-min", std::to_string(n), U(1) * b.sum_extreme(n, true),
          b.sum_extreme(n, false) * U(1));
  }

  for (const auto& f : p2) {
    for (unsigned n = 2; n <= 3; ++n) {
      for (const auto& g : b.paths(n)) {
        if (f.target() != g.target()) {
          b.add("orthogonal-ranges", b.name(f) + "," + b.name(g), S(f) * Star(g), zero());
        }
      }
    }
  }

  for (unsigned n = 2; n <= 3; ++n) {
    OpSum lhs;
    for (Letter t = 0; t < letters; ++t) lhs += E(d.maximal({t, n}));
    const auto m = b.sum_extreme(n, true);
    b.add("max-projections", std::to_string(n), lhs, m * adjoint(m));
  }

  for (unsigned n = 2; n <= 4; ++n) {
    for (Letter t = 0; t < letters; ++t) {
      const auto f = d.minimal({t, n});
      for (std::int64_t k = 0; k < d.nu(t, n); ++k) {
        b.add("min-orbit", b.name(f) + "," + std::to_string(k), U(k) * S(f),
              S(d.successor_power(f, k)));
      }
    }
  }

  for (unsigned n = 2; n <= 3; ++n) {
    for (unsigned m = 2; m <= 3; ++m) {
      for (Letter s = 0; s < letters; ++s) {
        for (Letter t = 0; t < letters; ++t) {
          const auto f = d.minimal({s, n});
          const auto g = d.minimal({t, m});
          for (std::int64_t k = 1 - d.nu(f.vertex()); k < d.nu(g.vertex()); ++k) {
            const auto p = k < 0 ? d.successor_power(f, -k) : f;
            const auto q = k < 0 ? g : d.successor_power(g, k);
            b.add("star-orbit", b.name(f) + "," + b.name(g) + "," + std::to_string(k),
                  Star(f) * U(k) * S(g), Star(p) * S(q));
          }
        }
      }
    }
  }

  for (unsigned n = 1; n <= 3; ++n) {
    for (const auto& f : b.paths(n)) {
      if (n > 1 && !d.is_min(f)) continue;
      const auto rhs = f.target() == d.first_letter() ? b.sum_extreme(n + 1, false) : zero();
      b.add("min-sum", b.name(f), S(f) * b.sum_extreme(2, false), rhs);
    }
  }

  for (unsigned n = 2; n <= 3; ++n) {
    for (unsigned m = 2; m <= 3; ++m) {
      for (Letter t = 0; t < letters; ++t) {
        const auto f = d.minimal({t, n});
        const auto g = d.minimal({t, m});
        OpSum rhs;
        for (const auto& h : p2) {
          if (d.is_max(h)) continue;
          const auto sh = d.successor(h);
          rhs += S(f) * E(sh) * Star(g);
        }
        if (t == d.first_letter()) {
          rhs += U(1) * b.sum_extreme(n + 1, true) * adjoint(b.sum_extreme(m + 1, true)) * U(-1);
        }
        b.add("split-product", b.name(f) + "," + b.name(g), S(f) * Star(g), rhs);
      }
    }
  }

  for (unsigned n = 2; n <= 3; ++n) {
    for (const auto& f : b.paths(n)) {
      b.add("conjugate-projection", b.name(f), U(1) * E(f) * U(-1), b.conjugate(f));
    }
  }

  b.add("projection-unit", "", unit, one());
  for (unsigned n = 2; n <= 3; ++n) {
    for (const auto& g : b.paths(n)) {
      OpSum rhs;
      for (const auto& h : p2) {
        if (h.root == g.target()) rhs += E(concat(g, h));
      }
      b.add("projection-refine", b.name(g), E(g), rhs);
    }
  }
  for (unsigned n = 2; n <= 4; ++n) {
    for (const auto& f : b.paths(n)) {
      if (!d.is_max(f)) b.add("projection-successor", b.name(f), E(d.successor(f)), U(1) * E(f) * U(-1));
    }
  }
  for (unsigned n = 2; n <= 5; ++n) {
    OpSum lhs;
    OpSum rhs;
    for (Letter t = 0; t < letters; ++t) {
      lhs += E(d.maximal({t, n}));
      rhs += E(d.minimal({t, n}));
    }
    b.add("projection-max-to-min", std::to_string(n), U(1) * lhs * U(-1), rhs);
  }
  return b.take();
}

Relation mutant_relation(const Diagram& d) {
  Letter t = 0;
  while (d.fiber_size(t) < 2) ++t;
  const auto f = d.minimal({t, 2});
  return {"mutant[" + d.describe(f) + "]", "mutant", S(d.successor(f)), U(2) * S(f)};
}

RelationResult check_relation(const Algebra& alg, const Relation& r, const std::vector<TailPath>& basis) {
  RelationResult out;
  out.id = r.id;
  out.family = r.family;
  out.symbolic = check_identity(alg, evaluate(alg, r.lhs), evaluate(alg, r.rhs), basis);
  OperatorModel model(alg.diagram());
  out.direct_pass = true;
  for (const auto& l : basis) {
    if (evaluate(model, r.lhs, l) != evaluate(model, r.rhs, l)) {
      out.direct_pass = false;
      out.witness = alg.diagram().describe(l);
      break;
    }
  }
  out.pass = out.symbolic.pass && out.direct_pass;
  if (out.witness.empty()) out.witness = out.symbolic.witness;
  return out;
}

std::vector<RelationResult> run_relations(const Algebra& alg, const std::vector<Relation>& rels,
                                          unsigned probe_depth) {
  const auto basis = probe_basis(alg.diagram(), probe_depth);
  std::vector<RelationResult> out;
  out.reserve(rels.size());
  for (const auto& r : rels) out.push_back(check_relation(alg, r, basis));
  return out;
}

}  // namespace substar
