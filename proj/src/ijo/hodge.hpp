#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "ijo/delsarte.hpp"

namespace ijo {

/// Primitive middle Hodge numbers h^{n-1-q,q} (q = 0..n-1) of a smooth degree
/// d hypersurface in P^n.
struct HodgeVector {
  int n = 0;
  int degree = 0;
  std::vector<std::int64_t> numbers;

  /// Dimension of the intermediate Jacobian: half the middle Betti number.
  /// Only meaningful when n - 1 is odd.
  std::int64_t jacobian_dimension() const;
};

/// Degree of the Jacobian-ring piece computing h^{n-1-q,q}: (q+1)d - n - 1.
int jacobian_degree(int n, int d, int q);

/// Coefficient of t^e in ((1 - t^{d-1}) / (1 - t))^{n+1}; zero for e < 0.
std::int64_t jacobian_ring_dimension(int n, int d, int e);

HodgeVector hodge_numbers(int n, int d);

using Monomial = std::vector<int>;

/// Graded reverse lexicographic comparison, a > b.
bool grevlex_greater(const Monomial& a, const Monomial& b);

/// All monomials of total degree e in `vars` variables, grevlex-descending.
std::vector<Monomial> monomials_of_degree(std::size_t vars, int e);

struct JacobianRingBasis {
  int degree = 0;
  std::vector<Monomial> monomials;  // grevlex-descending
};

JacobianRingBasis jacobian_ring_basis(const ExponentMatrix& m, int e);

struct CharacterMultiset {
  std::int64_t modulus = 1;
  std::map<std::int64_t, std::int64_t> multiplicity;  // exponent -> count

  std::int64_t total() const;
  friend bool operator==(const CharacterMultiset&, const CharacterMultiset&) = default;
};

/// Eigenvalue exponents of the diagonal automorphism w on the piece
/// H^{n-1-q,q}_prim, under the pullback convention on residue classes
/// A * Omega / f^{q+1}: a basis monomial alpha contributes
/// <alpha, w> + sum_i w_i - (q+1) mu  (mod N).
CharacterMultiset diagonal_character(const ExponentMatrix& m, const WeightClass& w, int q);

/// True iff the exponents present over all pieces generate Z/N, i.e. the
/// cyclic group generated by w acts faithfully. All pieces must share a
/// modulus.
bool faithfulness_check(std::span<const CharacterMultiset> pieces);

}  // namespace ijo
