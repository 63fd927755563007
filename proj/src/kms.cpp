#include "substar/kms.hpp"

#include <algorithm>
#include <random>

#include <fmt/format.h>

#include "substar/ktheory.hpp"

namespace substar {

namespace {

Real to_real(const Rational& q) { return Real(q.get_num().get_str()) / Real(q.get_den().get_str()); }

std::optional<PerronData> exact_perron(const Substitution& s, const IntMatrix& mt) {
  const std::size_t d = mt.rows();
  std::int64_t lo = INT64_MAX, hi = 0;
  for (std::size_t a = 0; a < d; ++a) {
    const auto len = static_cast<std::int64_t>(s.image(a).size());
    lo = std::min(lo, len);
    hi = std::max(hi, len);
  }
  // the Perron root lies between the smallest and largest row sums of M
  for (std::int64_t lam = lo; lam <= hi; ++lam) {
    IntMatrix shifted = mt;
    for (std::size_t i = 0; i < d; ++i) shifted(i, i) -= lam;
    const auto k = rational_kernel(shifted);
    if (k.cols() != 1) continue;
    int sign = 0;
    bool positive = true;
    for (std::size_t i = 0; i < d; ++i) {
      const int sg = sgn(k(i, 0));
      if (sg == 0 || (sign != 0 && sg != sign)) positive = false;
      sign = sg;
    }
    if (!positive) continue;
    PerronData p;
    p.exact = true;
    p.lambda = lam;
    Rational norm = 0;
    for (std::size_t a = 0; a < d; ++a) {
      p.v.emplace_back(sign * k(a, 0));
      norm += static_cast<long>(s.image(a).size()) * p.v.back();
    }
    for (auto& x : p.v) x = x * p.lambda / norm;
    p.lambda_lo = p.lambda_hi = to_real(p.lambda);
    for (const auto& x : p.v) p.v_approx.push_back(to_real(x));
    return p;
  }
  return std::nullopt;
}

}  // namespace

PerronData perron(const Substitution& s) {
  if (!is_primitive(s).primitive) throw Error("perron: substitution is not primitive");
  const auto mt = occurrence_int_matrix(s).transpose();
  if (auto p = exact_perron(s, mt)) return *p;

  const std::size_t d = mt.rows();
  std::vector<std::vector<Real>> m(d, std::vector<Real>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) m[i][j] = Real(mt(i, j).get_str());
  }
  auto apply = [&](const std::vector<Real>& x) {
    std::vector<Real> y(d, Real(0));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) y[i] += m[i][j] * x[j];
    }
    return y;
  };
  PerronData p;
  std::vector<Real> x(d, Real(1));
  const Real target("1e-45");
  for (int it = 0; it < 200000; ++it) {
    auto y = apply(x);
    Real lo = y[0] / x[0], hi = lo;
    for (std::size_t i = 1; i < d; ++i) {
      lo = std::min(lo, Real(y[i] / x[i]));
      hi = std::max(hi, Real(y[i] / x[i]));
    }
    // Collatz-Wielandt: min ratio <= lambda <= max ratio for positive x
    p.lambda_lo = lo;
    p.lambda_hi = hi;
    Real sum = 0;
    for (const auto& v : y) sum += v;
    for (std::size_t i = 0; i < d; ++i) x[i] = y[i] / sum;
    if (hi - lo <= target) break;
  }
  if (p.lambda_hi - p.lambda_lo > Real("1e-12")) throw Error("perron: enclosure did not reach 1e-12");
  const Real lambda = (p.lambda_lo + p.lambda_hi) / 2;
  Real norm = 0;
  for (std::size_t a = 0; a < d; ++a) norm += Real(static_cast<long>(s.image(a).size())) * x[a];
  for (std::size_t a = 0; a < d; ++a) p.v_approx.push_back(x[a] * lambda / norm);
  const auto mv = apply(p.v_approx);
  for (std::size_t a = 0; a < d; ++a) p.residual = std::max(p.residual, Real(abs(mv[a] - lambda * p.v_approx[a])));
  return p;
}

std::string TraceValue::to_string() const {
  if (exact) return exact->get_str();
  return fmt::format("{} +- {}", value.str(17), error.str(3));
}

Trace::Trace(const Diagram& d) : d_(d), perron_(substar::perron(d.substitution())) {
  if (!d.proper()) throw Error("the trace needs a proper substitution");
  n_ = is_para_periodic(d.substitution());
}

TraceValue Trace::cylinder_measure(const Vertex& x) const {
  TraceValue t;
  if (perron_.exact) {
    Rational scale = 1;
    for (unsigned i = 1; i < x.level; ++i) scale /= perron_.lambda;
    t.exact = perron_.v[x.label] * scale;
    t.value = to_real(*t.exact);
    return t;
  }
  const Real lambda = (perron_.lambda_lo + perron_.lambda_hi) / 2;
  t.value = perron_.v_approx[x.label] / pow(lambda, static_cast<int>(x.level) - 1);
  t.error = (perron_.lambda_hi - perron_.lambda_lo + perron_.residual) * x.level;
  return t;
}

TraceValue Trace::phi(const Element& x) const {
  TraceValue t;
  if (perron_.exact) t.exact = Rational(0);
  for (const auto& [m, c] : x.terms()) {
    if (m.degree() != 0 || m.a != m.b) continue;
    const auto mu = cylinder_measure(m.x);
    if (t.exact) *t.exact += c * *mu.exact;
    const Real rc = to_real(c);
    t.value += rc * mu.value;
    t.error += abs(rc) * mu.error;
  }
  if (t.exact) t.value = to_real(*t.exact);
  return t;
}

Rational Trace::phi_exact(const Element& x) const {
  if (!perron_.exact) throw Error("phi_exact: the Perron eigenvalue is irrational");
  return *phi(x).exact;
}

Element Trace::theta_i(const Element& x) const {
  if (!n_) throw Error("theta is only defined for para-periodic substitutions");
  Element out;
  for (const auto& [m, c] : x.terms()) {
    Rational scale = 1;
    for (int k = 0; k < std::abs(m.degree()); ++k) scale *= *n_;
    out.add(m, m.degree() > 0 ? Rational(c / scale) : Rational(c * scale));
  }
  return out;
}

bool Trace::kms_check(const Algebra& alg, const Element& x, const Element& y) const {
  return phi_exact(alg.multiply(x, y)) == phi_exact(alg.multiply(y, theta_i(x)));
}

const char* to_string(KmsBranch b) {
  switch (b) {
    case KmsBranch::Unbalanced: return "unbalanced";
    case KmsBranch::Mismatch: return "mismatch";
    case KmsBranch::Offset: return "offset";
    case KmsBranch::Match: return "match";
  }
  return "?";
}

KmsBranch classify_pair(const Monomial& x, const Monomial& y) {
  if (x.degree() + y.degree() != 0) return KmsBranch::Unbalanced;
  if (x.b != y.a || x.y != y.x) return KmsBranch::Mismatch;
  if (x.a != y.b) return KmsBranch::Offset;
  return KmsBranch::Match;
}

KmsReport kms_sample(const Algebra& alg, const Trace& trace, std::size_t count, std::uint64_t seed,
                     unsigned max_level) {
  const auto& d = alg.diagram();
  const Letter letters = d.substitution().size();
  std::mt19937_64 rng(seed);
  auto pick = [&](std::int64_t n) { return static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n)); };
  auto level = [&](unsigned lo) { return lo + static_cast<unsigned>(rng() % (max_level - lo + 1)); };
  auto windowed = [&](Letter t, unsigned lx, unsigned ly) {
    return Monomial{{t, lx}, {t, ly}, pick(d.nu(t, lx)), pick(d.nu(t, ly))};
  };
  KmsReport r;
  for (std::size_t i = 0; i < count; ++i) {
    const auto want = static_cast<KmsBranch>(i % kKmsBranches);
    const Letter s = pick(letters), t = pick(letters);
    Monomial x = windowed(s, level(1), level(1));
    while (want == KmsBranch::Offset && d.nu(x.x) < 2) x = windowed(s, level(2), x.y.level);
    Monomial y;
    switch (want) {
      case KmsBranch::Match:
        y = x.adjoint();
        break;
      case KmsBranch::Offset:
        y = x.adjoint();
        y.b = (x.a + 1 + pick(d.nu(x.x) - 1)) % d.nu(x.x);
        break;
      case KmsBranch::Mismatch:
        y = windowed(t, x.y.level, x.x.level);
        if (y.x == x.y && y.a == x.b) {
          if (d.nu(y.x) > 1) y.a = (y.a + 1) % d.nu(y.x);
          else y = windowed((t + 1) % letters, x.y.level, x.x.level);
        }
        break;
      case KmsBranch::Unbalanced: {
        unsigned ly = level(1);
        if (ly == x.x.level) ly = ly == max_level ? ly - 1 : ly + 1;
        y = windowed(t, x.y.level, ly);
        break;
      }
    }
    const auto got = classify_pair(x, y);
    ++r.per_branch[static_cast<std::size_t>(got)];
    ++r.pairs;
    if (!trace.kms_check(alg, Element(x), Element(y))) {
      if (r.failures++ == 0) r.first_failure = to_string(d, x) + " ; " + to_string(d, y);
    }
  }
  return r;
}

}  // namespace substar
