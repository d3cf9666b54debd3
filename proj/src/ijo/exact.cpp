#include "ijo/exact.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ijo/error.hpp"

namespace ijo {

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, mpz_class(0)) {}

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
    for (long v : row) data_.emplace_back(v);
  }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::transposed() const {
  IntegerMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntegerMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product dimension mismatch");
  IntegerMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const mpz_class& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string IntegerMatrix::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out << (j ? " " : "") << (*this)(i, j).get_str();
    out << '\n';
  }
  return out.str();
}

namespace {

void swap_rows(IntegerMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntegerMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row[target] += factor * row[source]
void add_row(IntegerMatrix& m, std::size_t target, std::size_t source, const mpz_class& factor) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(target, j) += factor * m(source, j);
}

void add_col(IntegerMatrix& m, std::size_t target, std::size_t source, const mpz_class& factor) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, target) += factor * m(i, source);
}

}  // namespace

std::size_t SnfDecomposition::rank() const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
    if (D(i, i) != 0) ++r;
  return r;
}

std::vector<mpz_class> SnfDecomposition::diagonal() const {
  std::vector<mpz_class> diag;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) diag.push_back(D(i, i));
  return diag;
}

SnfDecomposition smith_normal_form(const IntegerMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) throw Error(ErrorCode::InvalidArgument, "smith_normal_form of an empty matrix");
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntegerMatrix a = m;
  IntegerMatrix u = IntegerMatrix::identity(rows);
  IntegerMatrix v = IntegerMatrix::identity(cols);

  for (std::size_t s = 0; s < std::min(rows, cols); ++s) {
    for (;;) {
      // Smallest nonzero |entry| in the trailing block; ties go to the lowest
      // row, then the lowest column.
      bool found = false;
      std::size_t pi = s, pj = s;
      mpz_class best;
      for (std::size_t i = s; i < rows; ++i)
        for (std::size_t j = s; j < cols; ++j) {
          if (a(i, j) == 0) continue;
          mpz_class mag = abs(a(i, j));
          if (!found || mag < best) {
            found = true;
            best = mag;
            pi = i;
            pj = j;
          }
        }
      if (!found) goto done;

      swap_rows(a, s, pi);
      swap_rows(u, s, pi);
      swap_cols(a, s, pj);
      swap_cols(v, s, pj);

      bool clean = true;
      for (std::size_t i = s + 1; i < rows; ++i) {
        if (a(i, s) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), a(i, s).get_mpz_t(), a(s, s).get_mpz_t());
        if (q != 0) {
          add_row(a, i, s, -q);
          add_row(u, i, s, -q);
        }
        if (a(i, s) != 0) clean = false;
      }
      for (std::size_t j = s + 1; j < cols; ++j) {
        if (a(s, j) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), a(s, j).get_mpz_t(), a(s, s).get_mpz_t());
        if (q != 0) {
          add_col(a, j, s, -q);
          add_col(v, j, s, -q);
        }
        if (a(s, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the whole trailing block.
      bool divides = true;
      for (std::size_t i = s + 1; i < rows && divides; ++i)
        for (std::size_t j = s + 1; j < cols; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(s, s).get_mpz_t())) {
            add_row(a, s, i, 1);
            add_row(u, s, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (a(s, s) < 0) {
      for (std::size_t j = 0; j < cols; ++j) a(s, j) = -a(s, j);
      for (std::size_t j = 0; j < rows; ++j) u(s, j) = -u(s, j);
    }
  }
done:
  return SnfDecomposition{std::move(u), std::move(a), std::move(v)};
}

mpz_class determinant(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntegerMatrix a = m;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      swap_rows(a, k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::vector<std::vector<mpz_class>> left_kernel(const IntegerMatrix& m) {
  SnfDecomposition snf = smith_normal_form(m);
  std::vector<std::vector<mpz_class>> basis;
  for (std::size_t i = snf.rank(); i < m.rows(); ++i) {
    std::vector<mpz_class> row(m.rows());
    for (std::size_t j = 0; j < m.rows(); ++j) row[j] = snf.U(i, j);
    basis.push_back(std::move(row));
  }
  return basis;
}

mpz_class FiniteAbelianGroup::order() const {
  mpz_class o = 1;
  for (const auto& f : invariant_factors) o *= f;
  return o;
}

mpz_class FiniteAbelianGroup::exponent() const {
  return invariant_factors.empty() ? mpz_class(1) : invariant_factors.back();
}

FiniteAbelianGroup torus_kernel(const IntegerMatrix& b) {
  if (b.rows() != b.cols()) throw Error(ErrorCode::DimensionMismatch, "torus_kernel needs a square matrix");
  SnfDecomposition snf = smith_normal_form(b);
  if (snf.rank() < b.rows()) throw Error(ErrorCode::SingularMatrix, "matrix is singular");

  // B w in Z^n  <=>  D (V^-1 w) in Z^n, so w = V y with y_i in (1/d_i) Z.
  FiniteAbelianGroup group;
  for (std::size_t i = 0; i < b.rows(); ++i) {
    const mpz_class& factor = snf.D(i, i);
    if (factor == 1) continue;
    ResidueVector gen;
    gen.modulus = factor;
    for (std::size_t k = 0; k < b.rows(); ++k) {
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), snf.V(k, i).get_mpz_t(), factor.get_mpz_t());
      gen.numerators.push_back(r);
    }
    group.invariant_factors.push_back(factor);
    group.generators.push_back(std::move(gen));
  }
  return group;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t mod(const mpz_class& a, std::int64_t m) {
  mpz_class r;
  mpz_class mm(static_cast<long>(m));
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), mm.get_mpz_t());
  return r.get_si();
}

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m) {
  if (m == 1) return 0;
  __int128 result = 1;
  __int128 b = mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = result * b % m;
    b = b * b % m;
    exp >>= 1;
  }
  return static_cast<std::int64_t>(result);
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = mod(a, m), r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, s) = std::pair{s, old_s - q * s};
  }
  if (old_r != 1) throw Error(ErrorCode::InvalidArgument, std::to_string(a) + " is not invertible mod " + std::to_string(m));
  return mod(old_s, m);
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

std::vector<std::int64_t> prime_factors(mpz_class n) {
  n = abs(n);
  std::vector<std::int64_t> out;
  for (long f = 2; mpz_class(f) * f <= n; ++f) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(f))) {
      out.push_back(f);
      while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(f))) n /= f;
    }
  }
  if (n > 1) out.push_back(to_int64(n));
  return out;
}

std::int64_t to_int64(const mpz_class& v) {
  if (!v.fits_slong_p()) throw Error(ErrorCode::InvalidArgument, "integer " + v.get_str() + " exceeds 64-bit range");
  return v.get_si();
}

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotNormalizing: return "NotNormalizing";
    case ErrorCode::InvalidGroup: return "InvalidGroup";
    case ErrorCode::UnknownRule: return "UnknownRule";
    case ErrorCode::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

}  // namespace ijo
