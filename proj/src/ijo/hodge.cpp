#include "ijo/hodge.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "ijo/error.hpp"

namespace ijo {

std::int64_t HodgeVector::jacobian_dimension() const {
  std::int64_t total = 0;
  for (auto h : numbers) total += h;
  return total / 2;
}

int jacobian_degree(int n, int d, int q) { return (q + 1) * d - n - 1; }

std::int64_t jacobian_ring_dimension(int n, int d, int e) {
  if (e < 0) return 0;
  // (1 + t + ... + t^{d-2})^{n+1}, truncated at degree e.
  std::vector<mpz_class> poly(e + 1, 0);
  poly[0] = 1;
  for (int factor = 0; factor <= n; ++factor) {
    std::vector<mpz_class> next(e + 1, 0);
    for (int i = 0; i <= e; ++i) {
      if (poly[i] == 0) continue;
      for (int k = 0; k <= d - 2 && i + k <= e; ++k) next[i + k] += poly[i];
    }
    poly = std::move(next);
  }
  return to_int64(poly[e]);
}

HodgeVector hodge_numbers(int n, int d) {
  if (n < 2 || d < 2) throw Error(ErrorCode::InvalidArgument, "hodge_numbers needs n >= 2 and d >= 2");
  HodgeVector h{n, d, {}};
  for (int q = 0; q < n; ++q) h.numbers.push_back(jacobian_ring_dimension(n, d, jacobian_degree(n, d, q)));
  return h;
}

bool grevlex_greater(const Monomial& a, const Monomial& b) {
  const int da = std::accumulate(a.begin(), a.end(), 0);
  const int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da > db;
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

std::vector<Monomial> monomials_of_degree(std::size_t vars, int e) {
  std::vector<Monomial> out;
  if (e < 0) return out;
  Monomial current(vars, 0);
  auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
    if (i + 1 == vars) {
      current[i] = remaining;
      out.push_back(current);
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      current[i] = k;
      self(self, i + 1, remaining - k);
    }
  };
  rec(rec, 0, e);
  std::sort(out.begin(), out.end(), grevlex_greater);
  return out;
}

namespace {

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 0;
    for (int e : m) h = h * 131 + static_cast<std::size_t>(e);
    return h;
  }
};

using SparseRow = std::map<std::size_t, mpq_class>;  // column -> coefficient

// Incremental echelon form over Q; columns are ordered by decreasing monomial,
// so the pivot of each stored row is its leading monomial.
class Echelon {
 public:
  void insert(SparseRow row) {
    while (!row.empty()) {
      auto lead = row.begin();
      auto pivot = pivots_.find(lead->first);
      if (pivot == pivots_.end()) {
        const mpq_class scale = lead->second;
        for (auto& [col, v] : row) v /= scale;
        pivots_.emplace(lead->first, std::move(row));
        return;
      }
      const mpq_class factor = lead->second;
      for (const auto& [col, v] : pivot->second) {
        auto& slot = row[col];
        slot -= factor * v;
        if (slot == 0) row.erase(col);
      }
    }
  }
  bool is_pivot(std::size_t col) const { return pivots_.count(col) != 0; }
  std::size_t rank() const { return pivots_.size(); }

 private:
  std::map<std::size_t, SparseRow> pivots_;
};

// Standard monomials of degree e modulo the Jacobian ideal, grouped by weight
// block. Generators m * d_i f are weight-homogeneous, so elimination never
// mixes blocks.
std::map<std::int64_t, std::vector<Monomial>> standard_monomials(const ExponentMatrix& m, int e,
                                                                 const WeightClass* w) {
  const std::size_t vars = m.size();
  const std::int64_t modulus = w ? w->modulus : 1;
  auto weight_of = [&](const Monomial& a) -> std::int64_t {
    if (!w) return 0;
    __int128 acc = 0;
    for (std::size_t i = 0; i < vars; ++i) acc += static_cast<__int128>(a[i]) * mod(w->weights[i], modulus);
    return static_cast<std::int64_t>(acc % modulus);
  };

  const auto monomials = monomials_of_degree(vars, e);
  std::unordered_map<Monomial, std::size_t, MonomialHash> column;
  std::map<std::int64_t, std::vector<std::size_t>> block_columns;
  for (std::size_t c = 0; c < monomials.size(); ++c) {
    column.emplace(monomials[c], c);
    block_columns[weight_of(monomials[c])].push_back(c);
  }

  std::map<std::int64_t, Echelon> blocks;
  for (const auto& multiplier : monomials_of_degree(vars, e - (m.degree() - 1))) {
    for (std::size_t i = 0; i < vars; ++i) {
      SparseRow row;
      for (const auto& r : m.rows()) {
        if (r[i] == 0) continue;
        Monomial term = multiplier;
        for (std::size_t k = 0; k < vars; ++k) term[k] += r[k] - (k == i ? 1 : 0);
        row[column.at(term)] += r[i];
      }
      if (row.empty()) continue;
      const std::int64_t block = weight_of(monomials[row.begin()->first]);
      blocks[block].insert(std::move(row));
    }
  }

  std::map<std::int64_t, std::vector<Monomial>> out;
  for (const auto& [block, cols] : block_columns) {
    auto it = blocks.find(block);
    auto& basis = out[block];
    for (std::size_t c : cols)
      if (it == blocks.end() || !it->second.is_pivot(c)) basis.push_back(monomials[c]);
  }
  return out;
}

void check_dimension(const ExponentMatrix& m, int e, std::size_t found) {
  const std::int64_t expected = jacobian_ring_dimension(m.n(), m.degree(), e);
  if (static_cast<std::int64_t>(found) != expected)
    throw Error(ErrorCode::DimensionMismatch,
                "Jacobian ring in degree " + std::to_string(e) + " has dimension " + std::to_string(found) +
                    ", expected " + std::to_string(expected) + " (partials do not form a regular sequence)");
}

}  // namespace

JacobianRingBasis jacobian_ring_basis(const ExponentMatrix& m, int e) {
  JacobianRingBasis basis{e, {}};
  if (e < 0) return basis;
  for (auto& [block, monos] : standard_monomials(m, e, nullptr))
    basis.monomials.insert(basis.monomials.end(), monos.begin(), monos.end());
  std::sort(basis.monomials.begin(), basis.monomials.end(), grevlex_greater);
  check_dimension(m, e, basis.monomials.size());
  return basis;
}

std::int64_t CharacterMultiset::total() const {
  std::int64_t t = 0;
  for (const auto& [e, k] : multiplicity) t += k;
  return t;
}

CharacterMultiset diagonal_character(const ExponentMatrix& m, const WeightClass& w, int q) {
  const auto mu = is_invariant(m, w.weights, w.modulus);
  if (!mu) throw Error(ErrorCode::InvalidArgument, "weight class is not invariant for this matrix");
  if (q < 0 || q >= m.n()) throw Error(ErrorCode::InvalidArgument, "Hodge index q out of range");
  const std::int64_t modulus = w.modulus;
  CharacterMultiset chars{modulus, {}};
  const int e = jacobian_degree(m.n(), m.degree(), q);
  if (e < 0) return chars;

  std::int64_t weight_sum = 0;
  for (auto wi : w.weights) weight_sum = mod(weight_sum + mod(wi, modulus), modulus);
  const std::int64_t twist =
      mod(weight_sum - static_cast<std::int64_t>(static_cast<__int128>(q + 1) * *mu % modulus), modulus);

  std::size_t count = 0;
  for (const auto& [block, monos] : standard_monomials(m, e, &w)) {
    if (monos.empty()) continue;
    chars.multiplicity[mod(block + twist, modulus)] += static_cast<std::int64_t>(monos.size());
    count += monos.size();
  }
  check_dimension(m, e, count);
  return chars;
}

bool faithfulness_check(std::span<const CharacterMultiset> pieces) {
  if (pieces.empty()) return false;
  const std::int64_t modulus = pieces.front().modulus;
  std::int64_t g = modulus;
  for (const auto& piece : pieces) {
    if (piece.modulus != modulus) throw Error(ErrorCode::InvalidArgument, "character pieces have different moduli");
    for (const auto& [exponent, count] : piece.multiplicity)
      if (count > 0) g = std::gcd(g, mod(exponent, modulus));
  }
  return g == 1;
}

}  // namespace ijo
