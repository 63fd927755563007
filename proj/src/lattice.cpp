#include "substar/lattice.hpp"

#include <algorithm>
#include <utility>

#include <fmt/format.h>

#include "substar/substitution.hpp"

namespace substar {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

IntMatrix IntMatrix::column(std::size_t j) const {
  IntMatrix c(rows_, 1);
  for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
  return c;
}

IntMatrix IntMatrix::hcat(const IntMatrix& o) const {
  if (o.rows_ != rows_) throw Error("hcat: row mismatch");
  IntMatrix out(rows_, cols_ + o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < o.cols_; ++j) out(i, cols_ + j) = o(i, j);
  }
  return out;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols_ != y.rows_) throw Error("matrix product: dimension mismatch");
  IntMatrix out(x.rows_, y.cols_);
  for (std::size_t i = 0; i < x.rows_; ++i) {
    for (std::size_t k = 0; k < x.cols_; ++k) {
      const Integer& v = x(i, k);
      if (v == 0) continue;
      for (std::size_t j = 0; j < y.cols_; ++j) out(i, j) += v * y(k, j);
    }
  }
  return out;
}

IntMatrix operator+(const IntMatrix& x, const IntMatrix& y) {
  if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw Error("matrix sum: dimension mismatch");
  IntMatrix out = x;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += y.data_[i];
  return out;
}

IntMatrix operator-(const IntMatrix& x, const IntMatrix& y) {
  if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw Error("matrix difference: dimension mismatch");
  IntMatrix out = x;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= y.data_[i];
  return out;
}

std::vector<std::vector<std::string>> IntMatrix::to_strings() const {
  std::vector<std::vector<std::string>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[i].push_back((*this)(i, j).get_str());
  }
  return out;
}

std::string IntMatrix::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) s += ",";
    s += "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) s += ",";
      s += (*this)(i, j).get_str();
    }
    s += "]";
  }
  return s + "]";
}

IntMatrix power(const IntMatrix& m, unsigned k) {
  if (m.rows() != m.cols()) throw Error("power: matrix not square");
  IntMatrix out = IntMatrix::identity(m.rows());
  IntMatrix base = m;
  while (k) {
    if (k & 1) out = out * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return out;
}

// Fraction-free elimination.
Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error("determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && a(r, k) == 0) ++r;
      if (r == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(r, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& m) { return hermite_normal_form(m).cols(); }

namespace {

void row_sub(IntMatrix& m, std::size_t i, std::size_t k, const Integer& q) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= q * m(k, j);
}

void col_sub(IntMatrix& m, std::size_t j, std::size_t k, const Integer& q) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) -= q * m(i, k);
}

void row_swap(IntMatrix& m, std::size_t i, std::size_t k) {
  if (i == k) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(i, j), m(k, j));
}

void col_swap(IntMatrix& m, std::size_t j, std::size_t k) {
  if (j == k) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, j), m(i, k));
}

void row_negate(IntMatrix& m, std::size_t i) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
}

void col_negate(IntMatrix& m, std::size_t j) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = -m(i, j);
}

}  // namespace

std::vector<Integer> SmithDecomposition::invariant_factors() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) out.push_back(S(i, i));
  return out;
}

SmithDecomposition smith_normal_form(const IntMatrix& m) {
  SmithDecomposition d{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols())};
  auto& S = d.S;
  const std::size_t n = std::min(m.rows(), m.cols());
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // pivot: smallest nonzero absolute value in the trailing block
      std::size_t pi = 0, pj = 0;
      bool found = false;
      for (std::size_t i = t; i < S.rows(); ++i) {
        for (std::size_t j = t; j < S.cols(); ++j) {
          if (S(i, j) != 0 && (!found || abs(S(i, j)) < abs(S(pi, pj)))) {
            pi = i;
            pj = j;
            found = true;
          }
        }
      }
      if (!found) return d;
      row_swap(S, t, pi);
      row_swap(d.U, t, pi);
      col_swap(S, t, pj);
      col_swap(d.V, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < S.rows(); ++i) {
        if (S(i, t) == 0) continue;
        const Integer q = S(i, t) / S(t, t);
        row_sub(S, i, t, q);
        row_sub(d.U, i, t, q);
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < S.cols(); ++j) {
        if (S(t, j) == 0) continue;
        const Integer q = S(t, j) / S(t, t);
        col_sub(S, j, t, q);
        col_sub(d.V, j, t, q);
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility: fold an offending row into the pivot row and retry
      bool divides = true;
      for (std::size_t i = t + 1; i < S.rows() && divides; ++i) {
        for (std::size_t j = t + 1; j < S.cols(); ++j) {
          if (S(i, j) % S(t, t) != 0) {
            row_sub(S, t, i, -1);
            row_sub(d.U, t, i, -1);
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (S(t, t) < 0) {
      row_negate(S, t);
      row_negate(d.U, t);
    }
  }
  return d;
}

AbelianGroup AbelianGroup::plus_z() const {
  AbelianGroup g = *this;
  ++g.free_rank;
  return g;
}

std::string AbelianGroup::to_string() const {
  std::vector<std::string> parts;
  if (free_rank == 1) parts.push_back("Z");
  if (free_rank > 1) parts.push_back(fmt::format("Z^{}", free_rank));
  for (const auto& t : torsion) parts.push_back("Z/" + t.get_str());
  if (parts.empty()) return "0";
  std::string s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
  return s;
}

AbelianGroup cokernel(const IntMatrix& m) {
  AbelianGroup g;
  const auto factors = smith_normal_form(m).invariant_factors();
  std::size_t nonzero = 0;
  for (const auto& f : factors) {
    if (f == 0) continue;
    ++nonzero;
    if (f > 1) g.torsion.push_back(f);
  }
  g.free_rank = m.rows() - nonzero;
  return g;
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix h = m;
  std::size_t k = 0;  // next pivot column
  for (std::size_t i = 0; i < h.rows() && k < h.cols(); ++i) {
    // gcd-combine columns k.. on row i into column k
    for (;;) {
      std::size_t best = h.cols();
      for (std::size_t j = k; j < h.cols(); ++j) {
        if (h(i, j) != 0 && (best == h.cols() || abs(h(i, j)) < abs(h(i, best)))) best = j;
      }
      if (best == h.cols()) break;
      col_swap(h, k, best);
      bool done = true;
      for (std::size_t j = k + 1; j < h.cols(); ++j) {
        if (h(i, j) == 0) continue;
        col_sub(h, j, k, h(i, j) / h(i, k));
        if (h(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (h(i, k) == 0) continue;
    if (h(i, k) < 0) col_negate(h, k);
    for (std::size_t j = 0; j < k; ++j) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(i, k).get_mpz_t());
      col_sub(h, j, k, q);
    }
    ++k;
  }
  IntMatrix out(h.rows(), k);
  for (std::size_t i = 0; i < h.rows(); ++i) {
    for (std::size_t j = 0; j < k; ++j) out(i, j) = h(i, j);
  }
  return out;
}

IntMatrix rational_kernel(const IntMatrix& m) {
  const auto d = smith_normal_form(m);
  std::size_t nonzero = 0;
  for (const auto& f : d.invariant_factors()) nonzero += f != 0 ? 1 : 0;
  IntMatrix basis(m.cols(), m.cols() - nonzero);
  for (std::size_t j = nonzero; j < m.cols(); ++j) {
    for (std::size_t i = 0; i < m.cols(); ++i) basis(i, j - nonzero) = d.V(i, j);
  }
  return hermite_normal_form(basis);
}

IntMatrix solve_hnf(const IntMatrix& basis, const IntMatrix& y) {
  IntMatrix x(basis.cols(), y.cols());
  std::vector<std::size_t> pivot_row;
  for (std::size_t j = 0, i = 0; j < basis.cols(); ++j) {
    while (basis(i, j) == 0) ++i;
    pivot_row.push_back(i);
  }
  for (std::size_t c = 0; c < y.cols(); ++c) {
    for (std::size_t j = 0; j < basis.cols(); ++j) {
      const std::size_t i = pivot_row[j];
      Integer r = y(i, c);
      for (std::size_t l = 0; l < j; ++l) r -= basis(i, l) * x(l, c);
      if (r % basis(i, j) != 0) throw Error("solve_hnf: vector not in the lattice");
      x(j, c) = r / basis(i, j);
    }
  }
  if (basis * x != y) throw Error("solve_hnf: vector not in the lattice");
  return x;
}

EventualRange eventual_range(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error("eventual_range: matrix not square");
  EventualRange e;
  IntMatrix p = IntMatrix::identity(m.rows());
  std::size_t r = m.rows();
  for (;;) {
    IntMatrix next = p * m;
    const std::size_t rn = rank(next);
    if (rn == r) break;
    p = std::move(next);
    r = rn;
    ++e.stage;
  }
  e.rank = r;
  e.basis = hermite_normal_form(p);
  if (r > 0) e.A = solve_hnf(e.basis, m * e.basis);
  return e;
}

}  // namespace substar
