#include "substar/gadget.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace substar {

Monomial random_gadget_monomial(const Diagram& d, unsigned N, std::mt19937_64& rng) {
  const Letter letters = d.substitution().size();
  for (;;) {
    const Letter t = static_cast<Letter>(rng() % letters);
    const unsigned other = N + static_cast<unsigned>(rng() % (N + 1));
    const bool swap = rng() % 2;
    const Vertex x{t, swap ? other : N}, y{t, swap ? N : other};
    const auto a = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(d.nu(x)));
    const auto b = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(d.nu(y)));
    const Monomial m{x, y, a, b};
    if (Algebra::expectation_G(Element(m)).is_zero()) return m;
  }
}

std::vector<TailPath> probes_through(const Diagram& d, const FinitePath& p, unsigned extra) {
  std::vector<FinitePath> layer{p};
  std::vector<TailPath> out;
  for (unsigned k = 0; k <= extra; ++k) {
    std::vector<FinitePath> next;
    for (const auto& f : layer) {
      out.push_back(d.canonical({f, Tail::Min}));
      out.push_back(d.canonical({f, Tail::Max}));
      if (k == extra || f.level() >= d.depth()) continue;
      for (const auto& e : d.edges_from(f.target())) {
        auto g = f;
        g.edges.push_back(e);
        next.push_back(std::move(g));
      }
    }
    layer = std::move(next);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

AnnihilationReport annihilation_check(const Algebra& alg, unsigned N, std::size_t count, std::uint64_t seed) {
  const auto& d = alg.diagram();
  std::mt19937_64 rng(seed);
  const auto paths = d.enumerate_paths(N);
  const Letter letters = d.substitution().size();
  AnnihilationReport r;
  r.N = N;
  for (std::size_t i = 0; i < count; ++i) {
    const Element x(random_gadget_monomial(d, N, rng));
    const auto& f = paths[rng() % paths.size()];
    const Letter v = static_cast<Letter>(rng() % letters);
    const auto p = d.gadget_p(f, v, N);
    const auto e = alg.e(p);
    const Element left = alg.multiply(e, x);
    const Element z = alg.multiply(left, e);
    ++r.samples;
    const bool symbolic = alg.normalize(z).is_zero();
    const auto verdict = check_identity(alg, z, Element(), probes_through(d, p, 2));
    if (!symbolic) ++r.symbolic_failures;
    if (!verdict.pass) ++r.operator_failures;
    if ((!symbolic || !verdict.pass) && r.first_failure.empty()) {
      r.first_failure = fmt::format("x = {}, p = {}", to_string(d, x), d.describe(p));
    }
  }
  return r;
}

CompressionReport compression_check(const Algebra& alg, unsigned N, std::size_t off_diagonal, std::uint64_t seed) {
  const auto& d = alg.diagram();
  std::mt19937_64 rng(seed);
  const auto paths = d.enumerate_paths(N);
  Element y;
  for (std::size_t i = 0; i < paths.size(); ++i) y += Rational(1, i == 0 ? 1 : 2) * alg.e(paths[i]);
  for (std::size_t i = 0; i < off_diagonal; ++i) y += Element(random_gadget_monomial(d, N, rng));
  CompressionReport r;
  r.N = N;
  r.y = to_string(d, y);
  r.p = d.gadget_family(paths.front(), N);
  Element z;
  for (const auto& p : r.p) z += alg.s(p);
  const Element zy = alg.multiply(Algebra::adjoint(z), y);
  const Element out = alg.multiply(zy, z);
  std::vector<TailPath> basis = probe_basis(d, 3);
  for (const auto& p : r.p) {
    const auto more = probes_through(d, p, 1);
    basis.insert(basis.end(), more.begin(), more.end());
  }
  r.verdict = check_identity(alg, out, alg.one(), basis);
  r.symbolic_one = alg.normalize(out) == alg.normalize(alg.one());
  return r;
}

}  // namespace substar
