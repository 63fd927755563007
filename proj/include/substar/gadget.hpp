#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "substar/operator_model.hpp"

namespace substar {

/// Random monomial of L^(N): minimal paths with the smaller level N and the
/// larger at most 2N, and G(x) = 0.
Monomial random_gadget_monomial(const Diagram& d, unsigned N, std::mt19937_64& rng);

/// Canonical paths through U(p): p extended by up to `extra` levels, both tails.
std::vector<TailPath> probes_through(const Diagram& d, const FinitePath& p, unsigned extra);

struct AnnihilationReport {
  unsigned N = 0;
  std::size_t samples = 0;
  std::size_t symbolic_failures = 0;  // e_p x e_p did not normalize to zero
  std::size_t operator_failures = 0;  // e_p x e_p acts nonzero on a probe
  std::string first_failure;
  bool pass() const { return symbolic_failures == 0 && operator_failures == 0; }
};

/// For each sampled x, checks e_{p(f,v)} x e_{p(f,v)} = 0 at a random f in P^(N), v in V^(1).
AnnihilationReport annihilation_check(const Algebra& alg, unsigned N, std::size_t count, std::uint64_t seed);

struct CompressionReport {
  unsigned N = 0;
  std::string y;               // the element Y
  std::vector<FinitePath> p;   // p_v, one per letter
  Verdict verdict;             // Z* Y Z against 1
  bool symbolic_one = false;   // normal form is literally 1
};

/// Y = sum_f c_f e_f + (G-free monomials), c = 1 at the first f of P^(N) and 1/2 elsewhere;
/// Z = sum_v s_{p(f, v)} for that f.
CompressionReport compression_check(const Algebra& alg, unsigned N, std::size_t off_diagonal, std::uint64_t seed);

}  // namespace substar
