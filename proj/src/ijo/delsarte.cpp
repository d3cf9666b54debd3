#include "ijo/delsarte.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "ijo/error.hpp"

namespace ijo {

ExponentMatrix::ExponentMatrix(int degree, std::vector<ExponentRow> rows) : degree_(degree), rows_(std::move(rows)) {
  if (rows_.size() < 2) throw Error(ErrorCode::InvalidArgument, "exponent matrix needs at least two rows");
  if (degree_ < 1) throw Error(ErrorCode::InvalidArgument, "degree must be positive");
  std::set<ExponentRow> seen;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const auto& row = rows_[k];
    if (row.size() != rows_.size())
      throw Error(ErrorCode::DimensionMismatch, "row " + std::to_string(k) + " has " + std::to_string(row.size()) +
                                                    " entries, expected " + std::to_string(rows_.size()));
    int sum = 0;
    for (int e : row) {
      if (e < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent in row " + std::to_string(k));
      sum += e;
    }
    if (sum != degree_)
      throw Error(ErrorCode::InvalidArgument,
                  "row " + std::to_string(k) + " sums to " + std::to_string(sum) + ", expected " + std::to_string(degree_));
    if (!seen.insert(row).second) throw Error(ErrorCode::InvalidArgument, "duplicate row " + std::to_string(k));
  }
}

ExponentMatrix ExponentMatrix::parse(const std::string& text) {
  std::istringstream in(text);
  long n = 0, d = 0;
  if (!(in >> n >> d)) throw Error(ErrorCode::Parse, "expected header \"n d\"");
  if (n < 1 || n > 16) throw Error(ErrorCode::Parse, "dimension n out of range: " + std::to_string(n));
  if (d < 1 || d > 64) throw Error(ErrorCode::Parse, "degree d out of range: " + std::to_string(d));
  std::vector<ExponentRow> rows(n + 1, ExponentRow(n + 1));
  for (auto& row : rows)
    for (int& e : row) {
      long v;
      if (!(in >> v)) throw Error(ErrorCode::Parse, "expected " + std::to_string((n + 1) * (n + 1)) + " matrix entries");
      if (v < 0 || v > d) throw Error(ErrorCode::Parse, "exponent out of range: " + std::to_string(v));
      e = static_cast<int>(v);
    }
  std::string trailing;
  if (in >> trailing) throw Error(ErrorCode::Parse, "unexpected trailing input: " + trailing);
  try {
    return ExponentMatrix(static_cast<int>(d), std::move(rows));
  } catch (const Error& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

IntegerMatrix ExponentMatrix::to_integer_matrix() const {
  IntegerMatrix m(size(), size());
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) m(i, j) = rows_[i][j];
  return m;
}

std::string ExponentMatrix::to_text() const {
  std::ostringstream out;
  out << n() << ' ' << degree_ << '\n';
  for (const auto& row : rows_) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
    out << '\n';
  }
  return out.str();
}

namespace presets {

namespace {
ExponentMatrix loop(int vars, int d) {
  std::vector<ExponentRow> rows(vars, ExponentRow(vars, 0));
  for (int i = 0; i < vars; ++i) {
    rows[i][i] = d - 1;
    rows[i][(i + 1) % vars] += 1;
  }
  return ExponentMatrix(d, std::move(rows));
}
}  // namespace

ExponentMatrix klein_threefold() { return loop(5, 4); }
ExponentMatrix klein_curve() { return loop(3, 4); }

ExponentMatrix fermat(int n, int d) {
  std::vector<ExponentRow> rows(n + 1, ExponentRow(n + 1, 0));
  for (int i = 0; i <= n; ++i) rows[i][i] = d;
  return ExponentMatrix(d, std::move(rows));
}

ExponentMatrix cone_threefold() {
  return ExponentMatrix(4, {{4, 0, 0, 0, 0}, {0, 4, 0, 0, 0}, {0, 0, 4, 0, 0}, {0, 0, 0, 4, 0}, {3, 1, 0, 0, 0}});
}

ExponentMatrix chain_threefold() {
  return ExponentMatrix(4, {{3, 1, 0, 0, 0}, {0, 3, 1, 0, 0}, {0, 0, 3, 1, 0}, {0, 0, 0, 3, 1}, {0, 0, 0, 0, 4}});
}

}  // namespace presets

// ---- weight classes --------------------------------------------------------

WeightClass WeightClass::canonical(int degree) const {
  WeightClass best;
  best.modulus = modulus;
  const std::int64_t shift = weights.empty() ? 0 : weights[0];
  std::vector<std::int64_t> shifted(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) shifted[i] = mod(weights[i] - shift, modulus);
  const std::int64_t mu = mod(common_weight - static_cast<std::int64_t>(static_cast<__int128>(degree) * shift % modulus), modulus);
  if (modulus == 1) {
    best.weights = std::move(shifted);
    return best;
  }
  std::int64_t best_unit = 1;
  for (std::int64_t u = 1; u < modulus; ++u) {
    if (std::gcd(u, modulus) != 1) continue;
    std::vector<std::int64_t> cand(shifted.size());
    for (std::size_t i = 0; i < shifted.size(); ++i)
      cand[i] = static_cast<std::int64_t>(static_cast<__int128>(u) * shifted[i] % modulus);
    if (best.weights.empty() || cand < best.weights) {
      best.weights = std::move(cand);
      best_unit = u;
    }
  }
  best.common_weight = static_cast<std::int64_t>(static_cast<__int128>(best_unit) * mu % modulus);
  return best;
}

std::int64_t WeightClass::order() const {
  std::int64_t g = modulus;
  for (std::int64_t w : weights) g = std::gcd(g, mod(w - weights[0], modulus));
  return modulus / g;
}

bool PermSymmetry::is_identity() const {
  for (std::size_t i = 0; i < image.size(); ++i)
    if (image[i] != static_cast<int>(i)) return false;
  return true;
}

int PermSymmetry::order() const {
  int ord = 1;
  std::vector<bool> seen(image.size(), false);
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = image[j]) {
      seen[j] = true;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

ExponentRow PermSymmetry::apply(const ExponentRow& row) const {
  // x^v -> prod x_{image[i]}^{v_i}
  ExponentRow out(row.size(), 0);
  for (std::size_t i = 0; i < row.size(); ++i) out[image[i]] = row[i];
  return out;
}

PermSymmetry PermSymmetry::compose(const PermSymmetry& inner) const {
  PermSymmetry out;
  out.image.resize(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) out.image[i] = image[inner.image[i]];
  return out;
}

std::optional<std::int64_t> is_invariant(const ExponentMatrix& m, const std::vector<std::int64_t>& weights,
                                         std::int64_t modulus) {
  if (weights.size() != m.size())
    throw Error(ErrorCode::DimensionMismatch, "weight vector has length " + std::to_string(weights.size()) +
                                                  ", expected " + std::to_string(m.size()));
  if (modulus < 1) throw Error(ErrorCode::InvalidArgument, "modulus must be positive");
  std::optional<std::int64_t> mu;
  for (const auto& row : m.rows()) {
    __int128 acc = 0;
    for (std::size_t i = 0; i < row.size(); ++i) acc += static_cast<__int128>(row[i]) * mod(weights[i], modulus);
    const auto weight = static_cast<std::int64_t>(acc % modulus);
    if (mu && *mu != weight) return std::nullopt;
    mu = weight;
  }
  return mu;
}

DiagonalGroup diagonal_symmetry_group(const ExponentMatrix& m) {
  const std::size_t n = m.size() - 1;
  if (determinant(m.to_integer_matrix()) == 0) throw Error(ErrorCode::SingularMatrix, "exponent matrix is singular");

  // Gauge w_0 = 0; the conditions (row_j - row_0) . w = 0 mod 1 for j >= 1
  // involve only columns 1..n.
  IntegerMatrix diff(n, n);
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t c = 1; c <= n; ++c) diff(j - 1, c - 1) = m.row(j)[c] - m.row(0)[c];

  DiagonalGroup out;
  out.group = torus_kernel(diff);
  for (const auto& gen : out.group.generators) {
    WeightClass w;
    w.modulus = to_int64(gen.modulus);
    w.weights.push_back(0);
    for (const auto& num : gen.numerators) w.weights.push_back(to_int64(num));
    w.common_weight = *is_invariant(m, w.weights, w.modulus);
    out.generators.push_back(w.canonical(m.degree()));
  }
  return out;
}

std::vector<PermSymmetry> permutation_symmetries(const ExponentMatrix& m) {
  const std::set<ExponentRow> row_set(m.rows().begin(), m.rows().end());
  std::vector<int> perm(m.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<PermSymmetry> out;
  do {
    PermSymmetry sigma{perm};
    bool ok = true;
    for (const auto& row : m.rows())
      if (!row_set.count(sigma.apply(row))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(std::move(sigma));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

namespace {

// Solves a x = b (mod m); returns (x0, m') with solutions x = x0 mod m', or
// nullopt.
std::optional<std::pair<std::int64_t, std::int64_t>> solve_linear(std::int64_t a, std::int64_t b, std::int64_t m) {
  a = mod(a, m);
  b = mod(b, m);
  const std::int64_t g = std::gcd(a, m);
  if (b % g != 0) return std::nullopt;
  const std::int64_t mm = m / g;
  if (mm == 1) return std::pair<std::int64_t, std::int64_t>{0, 1};
  const std::int64_t x = static_cast<std::int64_t>(static_cast<__int128>(b / g) * inverse_mod(a / g, mm) % mm);
  return std::pair<std::int64_t, std::int64_t>{x, mm};
}

}  // namespace

std::int64_t conjugation_exponent(const ExponentMatrix& m, const WeightClass& w, const PermSymmetry& sigma) {
  if (w.weights.size() != m.size() || sigma.image.size() != m.size())
    throw Error(ErrorCode::DimensionMismatch, "weight class or permutation has the wrong length");
  if (!is_invariant(m, w.weights, w.modulus)) throw Error(ErrorCode::InvalidArgument, "weight class is not invariant");
  const std::set<ExponentRow> row_set(m.rows().begin(), m.rows().end());
  for (const auto& row : m.rows())
    if (!row_set.count(sigma.apply(row))) throw Error(ErrorCode::InvalidArgument, "permutation is not a symmetry");

  // sigma(w)_i - sigma(w)_0 = r (w_i - w_0) mod N for every i; c is then
  // forced. Solutions form a single class r0 mod step, refined per equation.
  const std::int64_t big = w.modulus;
  std::int64_t r = 0, step = 1;
  for (std::size_t i = 1; i < m.size(); ++i) {
    const std::int64_t a = mod(w.weights[i] - w.weights[0], big);
    const std::int64_t b = mod(w.weights[sigma.image[i]] - w.weights[sigma.image[0]], big);
    const auto lhs = static_cast<std::int64_t>(static_cast<__int128>(a) * step % big);
    const auto rhs = mod(b - static_cast<std::int64_t>(static_cast<__int128>(a) * r % big), big);
    auto sol = solve_linear(lhs, rhs, big);
    if (!sol) throw Error(ErrorCode::NotNormalizing, "permutation does not normalize the weight class");
    r += step * sol->first;
    step *= sol->second;
  }
  const std::int64_t order = w.order();
  return mod(r, order);
}

std::vector<std::complex<double>> gradient(const ExponentMatrix& m, const std::vector<std::complex<double>>& x) {
  std::vector<std::complex<double>> grad(m.size(), 0.0);
  for (const auto& row : m.rows())
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] == 0) continue;
      std::complex<double> term = static_cast<double>(row[j]);
      for (std::size_t i = 0; i < row.size(); ++i) {
        const int e = row[i] - (i == j ? 1 : 0);
        for (int k = 0; k < e; ++k) term *= x[i];
      }
      grad[j] += term;
    }
  return grad;
}

const char* to_string(Smoothness s) noexcept {
  switch (s) {
    case Smoothness::Smooth: return "Smooth";
    case Smoothness::Singular: return "Singular";
    case Smoothness::Unsupported: return "Unsupported";
  }
  return "?";
}

}  // namespace ijo
