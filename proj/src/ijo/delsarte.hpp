#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ijo/exact.hpp"

namespace ijo {

using ExponentRow = std::vector<int>;

/// A Delsarte hypersurface sum_k x^{row_k} = 0 in P^n: n+1 distinct exponent
/// rows of length n+1, each of total degree d. Coefficients are all 1.
class ExponentMatrix {
 public:
  ExponentMatrix(int degree, std::vector<ExponentRow> rows);

  /// Parses "n d" followed by n+1 rows of n+1 integers.
  static ExponentMatrix parse(const std::string& text);

  int n() const noexcept { return static_cast<int>(rows_.size()) - 1; }
  int degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return rows_.size(); }
  const std::vector<ExponentRow>& rows() const noexcept { return rows_; }
  const ExponentRow& row(std::size_t k) const { return rows_[k]; }

  IntegerMatrix to_integer_matrix() const;
  std::string to_text() const;

  friend bool operator==(const ExponentMatrix&, const ExponentMatrix&) = default;

 private:
  int degree_;
  std::vector<ExponentRow> rows_;
};

namespace presets {
ExponentMatrix klein_threefold();  // rows 3e_i + e_{i+1 mod 5}
ExponentMatrix fermat(int n, int d);
ExponentMatrix klein_curve();      // rows 3e_i + e_{i+1 mod 3}
ExponentMatrix cone_threefold();   // x_4 absent; singular at [0:0:0:0:1]
ExponentMatrix chain_threefold();  // 3e_0+e_1, ..., 3e_3+e_4, 4e_4
}  // namespace presets

/// Diagonal automorphism x_i -> zeta^{w_i} x_i with zeta = exp(2 pi i / N),
/// taken modulo scalars. common_weight is the shared weight of every
/// monomial of f.
struct WeightClass {
  std::int64_t modulus = 1;
  std::vector<std::int64_t> weights;
  std::int64_t common_weight = 0;

  /// Shift so weight_0 = 0, then take the lexicographically smallest unit
  /// multiple. The degree is needed to carry the common weight through the
  /// shift.
  WeightClass canonical(int degree) const;
  /// Order of the class in PGL (modulus divided by the gcd of the
  /// differences w_i - w_0).
  std::int64_t order() const;

  friend bool operator==(const WeightClass&, const WeightClass&) = default;
};

/// Variable permutation acting by x_i -> x_{image[i]}.
struct PermSymmetry {
  std::vector<int> image;

  bool is_identity() const;
  int order() const;
  ExponentRow apply(const ExponentRow& row) const;
  PermSymmetry compose(const PermSymmetry& inner) const;  // this after inner

  friend bool operator==(const PermSymmetry&, const PermSymmetry&) = default;
};

std::optional<std::int64_t> is_invariant(const ExponentMatrix& m, const std::vector<std::int64_t>& weights,
                                         std::int64_t modulus);

struct DiagonalGroup {
  FiniteAbelianGroup group;
  std::vector<WeightClass> generators;  // canonical, one per invariant factor
};

DiagonalGroup diagonal_symmetry_group(const ExponentMatrix& m);

/// Every variable permutation fixing the row set, in lexicographic order of
/// the image vector (identity first).
std::vector<PermSymmetry> permutation_symmetries(const ExponentMatrix& m);

/// The residue r (mod the order of w) with sigma(w) = r w + c (1,...,1),
/// where sigma(w)_i = w_{image[i]}. Throws NotNormalizing when no r exists.
std::int64_t conjugation_exponent(const ExponentMatrix& m, const WeightClass& w, const PermSymmetry& sigma);

// ---- smoothness ------------------------------------------------------------

enum class Smoothness { Smooth, Singular, Unsupported };

const char* to_string(Smoothness s) noexcept;

/// x^{exponent} = constant on the torus of a stratum.
struct BinomialEquation {
  int partial;                 // which derivative produced it
  std::vector<int> exponent;   // over all n+1 variables, zero outside the support
  mpq_class constant;
};

struct StratumReason {
  std::vector<int> support;
  std::string reason;
};

struct SingularWitness {
  std::vector<int> support;
  std::vector<BinomialEquation> system;
  std::vector<std::complex<double>> point;  // unit norm
  double gradient_norm = 0.0;
};

struct SmoothnessReport {
  Smoothness verdict = Smoothness::Smooth;
  std::optional<SingularWitness> witness;
  std::vector<StratumReason> certificate;  // one entry per representative stratum examined
  std::string unsupported_reason;
};

SmoothnessReport smoothness_check(const ExponentMatrix& m);

/// Gradient of f = sum_k x^{row_k} at a complex point.
std::vector<std::complex<double>> gradient(const ExponentMatrix& m, const std::vector<std::complex<double>>& x);

}  // namespace ijo
