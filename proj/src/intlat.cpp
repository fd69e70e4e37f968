#include "toricdiff/intlat.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace toricdiff {

IntVector to_int_vector(const std::vector<long long>& v) {
  IntVector out;
  out.reserve(v.size());
  for (long long x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

std::vector<long long> to_small_vector(const IntVector& v) {
  std::vector<long long> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.fits_slong_p()) throw Error("integer does not fit a machine word: " + x.get_str());
    out.push_back(x.get_si());
  }
  return out;
}

Integer dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw Error("dot: length mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::string to_string(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error("from_rows: ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  std::vector<IntVector> big;
  for (const auto& r : rows) big.push_back(to_int_vector(r));
  return from_rows(big, rows.empty() ? 0 : rows.front().size());
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::vector<long long>> rows) {
  return from_rows(std::vector<std::vector<long long>>(rows));
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& cols, std::size_t rows) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw Error("from_columns: column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntVector IntMatrix::apply(const IntVector& x) const {
  if (x.size() != cols_) throw Error("apply: dimension mismatch");
  IntVector y(rows_, Integer(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::negate_col(std::size_t j) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error("matrix product: dimension mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << " ";
      os << m(i, j).get_str();
    }
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// Smith normal form

std::size_t SmithDecomposition::rank() const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i)
    if (S(i, i) != 0) ++r;
  return r;
}

std::vector<Integer> SmithDecomposition::invariant_factors() const {
  std::vector<Integer> f;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i)
    if (S(i, i) != 0) f.push_back(S(i, i));
  return f;
}

namespace {

// Smallest |a_ij| != 0 in the trailing block starting at (t, t); ties broken
// by row-major position.
bool find_pivot(const IntMatrix& a, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Integer best;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      const Integer& x = a(i, j);
      if (x == 0) continue;
      Integer ax = abs(x);
      if (!found || ax < best) {
        best = ax;
        pi = i;
        pj = j;
        found = true;
      }
    }
  return found;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& input) {
  IntMatrix s = input;
  IntMatrix u = IntMatrix::identity(s.rows());
  IntMatrix v = IntMatrix::identity(s.cols());
  const std::size_t diag = std::min(s.rows(), s.cols());

  for (std::size_t t = 0; t < diag; ++t) {
    for (;;) {
      std::size_t pi = 0, pj = 0;
      if (!find_pivot(s, t, pi, pj)) break;
      s.swap_rows(t, pi);
      u.swap_rows(t, pi);
      s.swap_cols(t, pj);
      v.swap_cols(t, pj);

      bool dirty = false;
      for (std::size_t i = t + 1; i < s.rows(); ++i) {
        if (s(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), s(i, t).get_mpz_t(), s(t, t).get_mpz_t());
        s.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        if (s(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < s.cols(); ++j) {
        if (s(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), s(t, j).get_mpz_t(), s(t, t).get_mpz_t());
        s.add_col_multiple(j, t, -q);
        v.add_col_multiple(j, t, -q);
        if (s(t, j) != 0) dirty = true;
      }
      if (dirty) continue;

      // Divisibility: fold an offending row into the pivot row and retry.
      bool divides_all = true;
      for (std::size_t i = t + 1; i < s.rows() && divides_all; ++i)
        for (std::size_t j = t + 1; j < s.cols(); ++j)
          if (!mpz_divisible_p(s(i, j).get_mpz_t(), s(t, t).get_mpz_t())) {
            s.add_row_multiple(t, i, 1);
            u.add_row_multiple(t, i, 1);
            divides_all = false;
            break;
          }
      if (divides_all) break;
    }
    if (s(t, t) < 0) {
      s.negate_row(t);
      u.negate_row(t);
    }
  }
  return {std::move(u), std::move(s), std::move(v)};
}

Integer determinant(const IntMatrix& input) {
  if (input.rows() != input.cols()) throw Error("determinant of a non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IntMatrix a = input;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& a) { return smith_normal_form(a).rank(); }

// ---------------------------------------------------------------------------
// Hermite reduction and sublattices

std::vector<IntVector> canonical_basis(const std::vector<IntVector>& vectors, std::size_t ambient) {
  std::vector<IntVector> rows;
  for (const auto& v : vectors) {
    if (v.size() != ambient) throw Error("canonical_basis: vector length mismatch");
    rows.push_back(v);
  }
  std::size_t top = 0;
  for (std::size_t col = 0; col < ambient && top < rows.size(); ++col) {
    // Euclid on column `col` among rows[top..].
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = top; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        if (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col])) best = i;
      }
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool done = true;
      for (std::size_t i = top + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[top][col].get_mpz_t());
        for (std::size_t j = 0; j < ambient; ++j) rows[i][j] -= q * rows[top][j];
        if (rows[i][col] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[top][col] == 0) continue;
    if (rows[top][col] < 0)
      for (auto& x : rows[top]) x = -x;
    for (std::size_t i = 0; i < top; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[top][col].get_mpz_t());
      if (q != 0)
        for (std::size_t j = 0; j < ambient; ++j) rows[i][j] -= q * rows[top][j];
    }
    ++top;
  }
  rows.resize(top);
  std::sort(rows.begin(), rows.end());
  return rows;
}

Sublattice make_sublattice(const std::vector<IntVector>& generators, std::size_t ambient) {
  return {ambient, canonical_basis(generators, ambient)};
}

bool Sublattice::contains(const IntVector& v) const {
  if (v.size() != ambient_rank) return false;
  if (basis.empty()) return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
  IntMatrix cols = IntMatrix::from_columns(basis, ambient_rank);
  return solve_integer(cols, v).has_value();
}

bool Sublattice::orthogonal_to(const IntVector& v) const {
  for (const auto& b : basis)
    if (dot(b, v) != 0) return false;
  return true;
}

Sublattice kernel_basis(const IntMatrix& a) {
  SmithDecomposition snf = smith_normal_form(a);
  std::vector<IntVector> vecs;
  for (std::size_t j = snf.rank(); j < a.cols(); ++j) vecs.push_back(snf.V.column(j));
  return make_sublattice(vecs, a.cols());
}

CokernelInvariants cokernel_invariants(const IntMatrix& a) {
  SmithDecomposition snf = smith_normal_form(a);
  CokernelInvariants out;
  for (const auto& d : snf.invariant_factors())
    if (d != 1) out.torsion.push_back(d);
  out.free_rank = a.rows() - snf.rank();
  return out;
}

Sublattice orthogonal_complement(const Sublattice& l) {
  IntMatrix m = IntMatrix::from_rows(l.basis, l.ambient_rank);
  return kernel_basis(m);
}

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) throw Error("solve_integer: dimension mismatch");
  SmithDecomposition snf = smith_normal_form(a);
  IntVector ub = snf.U.apply(b);
  IntVector y(a.cols(), Integer(0));
  const std::size_t r = snf.rank();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i < r) {
      if (!mpz_divisible_p(ub[i].get_mpz_t(), snf.S(i, i).get_mpz_t())) return std::nullopt;
      y[i] = ub[i] / snf.S(i, i);
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return snf.V.apply(y);
}

}  // namespace toricdiff
