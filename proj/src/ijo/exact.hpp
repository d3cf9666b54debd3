#pragma once

// Exact integer and modular linear algebra. Everything here is backed by GMP
// integers; no routine in this header touches floating point.

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace ijo {

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols);
  IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntegerMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  mpz_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntegerMatrix transposed() const;
  bool is_diagonal() const;

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
  friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> data_;
};

/// U * M * V = D with U, V unimodular and D diagonal. The nonzero diagonal
/// entries of D are nonnegative and each divides the next.
struct SnfDecomposition {
  IntegerMatrix U;
  IntegerMatrix D;
  IntegerMatrix V;

  std::size_t rank() const;
  std::vector<mpz_class> diagonal() const;
};

SnfDecomposition smith_normal_form(const IntegerMatrix& m);

/// Fraction-free (Bareiss) determinant.
mpz_class determinant(const IntegerMatrix& m);

/// Basis of the integer left kernel {l : l^T M = 0}, one vector per row.
std::vector<std::vector<mpz_class>> left_kernel(const IntegerMatrix& m);

/// An element of (Q/Z)^n written as numerators over a common modulus.
struct ResidueVector {
  std::vector<mpz_class> numerators;
  mpz_class modulus;
};

/// Finite abelian group in invariant-factor form, with one generator per
/// factor.
struct FiniteAbelianGroup {
  std::vector<mpz_class> invariant_factors;
  std::vector<ResidueVector> generators;

  mpz_class order() const;
  mpz_class exponent() const;
  bool is_cyclic() const { return invariant_factors.size() <= 1; }
};

/// The solution group {w in (Q/Z)^n : B w = 0 mod Z^n} of a square nonsingular
/// integer matrix. Its order is |det B|. Throws SingularMatrix when det B = 0.
FiniteAbelianGroup torus_kernel(const IntegerMatrix& b);

// small-integer helpers shared by the other modules

std::int64_t mod(std::int64_t a, std::int64_t m);
std::int64_t mod(const mpz_class& a, std::int64_t m);
std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m);
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);
bool is_prime(std::int64_t n);
std::vector<std::int64_t> prime_factors(mpz_class n);
std::int64_t to_int64(const mpz_class& v);

}  // namespace ijo
