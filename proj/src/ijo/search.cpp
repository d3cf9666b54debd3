#include "ijo/search.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>

#include "ijo/certificate.hpp"
#include "ijo/error.hpp"
#include "ijo/hodge.hpp"
#include "ijo/parallel.hpp"

namespace ijo {

using ordered_json = nlohmann::ordered_json;

void SearchSpec::validate() const {
  if (n < 1 || n > kMaxN) throw Error(ErrorCode::InvalidArgument, "search: n must be in [1, " + std::to_string(kMaxN) + "]");
  if (degree < 2 || degree > kMaxDegree)
    throw Error(ErrorCode::InvalidArgument, "search: d must be in [2, " + std::to_string(kMaxDegree) + "]");
  if (n % 2 != 0)
    throw Error(ErrorCode::InvalidArgument, "search: n must be even so the middle cohomology has odd degree");
  if (threshold < 2) throw Error(ErrorCode::InvalidArgument, "search: threshold must be >= 2");
  if (ruleset.empty()) throw Error(ErrorCode::InvalidArgument, "search: empty ruleset");
  for (const auto& row : family) {
    if (row.size() != static_cast<std::size_t>(n + 1))
      throw Error(ErrorCode::InvalidArgument, "search: family row has wrong length");
    if (std::any_of(row.begin(), row.end(), [](int e) { return e < 0; }))
      throw Error(ErrorCode::InvalidArgument, "search: family row has a negative exponent");
    if (std::accumulate(row.begin(), row.end(), 0) != degree)
      throw Error(ErrorCode::InvalidArgument, "search: family row does not have degree d");
  }
}

std::vector<ExponentRow> SearchSpec::rows() const {
  std::vector<ExponentRow> out = family;
  if (out.empty()) {
    const int v = n + 1;
    for (int i = 0; i < v; ++i) {
      ExponentRow pure(v, 0);
      pure[i] = degree;
      out.push_back(pure);
      for (int j = 0; j < v; ++j) {
        if (j == i) continue;
        ExponentRow r(v, 0);
        r[i] = degree - 1;
        r[j] += 1;
        out.push_back(r);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

using Rows = std::vector<ExponentRow>;

Rows permuted_sorted(const Rows& rows, const std::vector<int>& perm) {
  Rows out(rows.size(), ExponentRow(perm.size()));
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (std::size_t c = 0; c < perm.size(); ++c) out[k][c] = rows[k][perm[c]];
  std::sort(out.begin(), out.end());
  return out;
}

Rows canonical_rows(const Rows& rows, std::size_t vars) {
  std::vector<int> perm(vars);
  std::iota(perm.begin(), perm.end(), 0);
  Rows best = permuted_sorted(rows, perm);
  while (std::next_permutation(perm.begin(), perm.end())) {
    Rows candidate = permuted_sorted(rows, perm);
    if (candidate < best) best = std::move(candidate);
  }
  return best;
}

}  // namespace

ExponentMatrix canonical_form(const ExponentMatrix& m) {
  return ExponentMatrix(m.degree(), canonical_rows(m.rows(), m.size()));
}

void for_each_canonical_matrix(const SearchSpec& spec, const std::function<void(const ExponentMatrix&)>& visit) {
  spec.validate();
  const Rows family = spec.rows();
  const std::size_t k = static_cast<std::size_t>(spec.n + 1);
  if (family.size() < k) return;
  // Index subsets in lexicographic order; family is sorted, so the chosen rows
  // are already sorted and a subset is canonical iff it equals its form.
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  Rows rows(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) rows[i] = family[idx[i]];
    if (canonical_rows(rows, k) == rows) visit(ExponentMatrix(spec.degree, rows));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == family.size() - k + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<ExponentMatrix> enumerate_matrices(const SearchSpec& spec) {
  std::vector<ExponentMatrix> out;
  for_each_canonical_matrix(spec, [&](const ExponentMatrix& m) { out.push_back(m); });
  // Subset order need not be canonical order.
  std::sort(out.begin(), out.end(), [](const ExponentMatrix& a, const ExponentMatrix& b) { return a.rows() < b.rows(); });
  return out;
}

namespace {

// The order-p element of the cyclic factor carrying p, as a class mod p.
WeightClass p_weight_class(const DiagonalGroup& dg, std::int64_t p, int degree) {
  for (std::size_t i = dg.generators.size(); i-- > 0;) {
    if (mod(dg.group.invariant_factors[i], p) != 0) continue;
    const WeightClass& g = dg.generators[i];
    WeightClass w;
    w.modulus = p;
    w.common_weight = mod(g.common_weight, p);
    for (auto x : g.weights) w.weights.push_back(mod(x, p));
    return w.canonical(degree);
  }
  throw Error(ErrorCode::InvalidArgument, "no factor of order divisible by p");
}

}  // namespace

CandidateReport evaluate_candidate(const ExponentMatrix& m, const SearchSpec& spec) {
  CandidateReport rep(m);
  rep.dimension = hodge_numbers(m.n(), m.degree()).jacobian_dimension();

  const SmoothnessReport smooth = smoothness_check(m);
  rep.smoothness = smooth.verdict;
  if (smooth.verdict != Smoothness::Smooth) {
    rep.reason = smooth.verdict == Smoothness::Singular ? "singular" : "smoothness unsupported: " + smooth.unsupported_reason;
    return rep;
  }

  DiagonalGroup dg;
  try {
    dg = diagonal_symmetry_group(m);
  } catch (const Error& e) {
    rep.reason = std::string("diagonal group: ") + e.what();
    return rep;
  }
  for (const auto& f : dg.group.invariant_factors) rep.diagonal_group.push_back(to_int64(f));

  const auto primes = prime_factors(dg.group.exponent());
  if (primes.empty()) {
    rep.reason = "trivial diagonal group";
    return rep;
  }
  const std::int64_t p = primes.back();
  if (p < spec.threshold || p <= rep.dimension) {
    rep.reason = "largest diagonal prime " + std::to_string(p) + " is below the threshold or not > N = " +
                 std::to_string(rep.dimension);
    return rep;
  }
  rep.p = p;
  const WeightClass w = p_weight_class(dg, p, m.degree());
  rep.weight_class = w;

  // Largest prime order q first; among generators of the same order the
  // smallest |r| in balanced form, so r does not depend on the orientation the
  // canonical form happened to pick.
  auto balanced = [p](std::int64_t r) { return r > p / 2 ? r - p : r; };
  auto abs64 = [](std::int64_t x) { return x < 0 ? -x : x; };
  for (const auto& sigma : permutation_symmetries(m)) {
    const int q = sigma.order();
    if (q < 2 || !is_prime(q)) continue;
    if (rep.q && *rep.q > q) continue;
    std::int64_t r = 0;
    try {
      r = balanced(mod(conjugation_exponent(m, w, sigma), p));
    } catch (const Error&) {
      continue;
    }
    if (r == 1) continue;
    if (rep.q && *rep.q == q && abs64(*rep.r) <= abs64(r)) continue;
    rep.q = q;
    rep.r = r;
    rep.permutation = sigma;
  }
  if (!rep.q) {
    rep.reason = "no prime-order permutation acts on the order-" + std::to_string(p) + " class by a nontrivial power";
    return rep;
  }

  std::vector<CharacterMultiset> pieces;
  for (int q = 0; q < m.n(); ++q) pieces.push_back(diagonal_character(m, w, q));
  rep.faithful = faithfulness_check(pieces);

  const ProblemInstance inst{rep.dimension, MetacyclicGroup::make(p, *rep.q, *rep.r), *rep.faithful};
  const ObstructionTrace trace = obstruct(inst, spec.ruleset);
  rep.verdict = trace.verdict;
  rep.certificate = certificate_json(trace);
  rep.hit = true;
  return rep;
}

std::vector<CandidateReport> evaluate_all(const SearchSpec& spec, unsigned threads) {
  const auto matrices = enumerate_matrices(spec);
  std::vector<std::optional<CandidateReport>> slots(matrices.size());
  parallel_for(matrices.size(), threads,
               [&](std::size_t i) { slots[i] = evaluate_candidate(matrices[i], spec); });
  std::vector<CandidateReport> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<CandidateReport> search(const SearchSpec& spec, unsigned threads) {
  std::vector<CandidateReport> hits;
  for (auto& rep : evaluate_all(spec, threads))
    if (rep.hit) hits.push_back(std::move(rep));
  std::stable_sort(hits.begin(), hits.end(), [](const CandidateReport& a, const CandidateReport& b) {
    const bool ca = a.verdict == Verdict::Contradiction, cb = b.verdict == Verdict::Contradiction;
    if (ca != cb) return ca;
    if (*a.p != *b.p) return *a.p > *b.p;
    return a.matrix.rows() < b.matrix.rows();
  });
  return hits;
}

std::string candidate_json_line(const CandidateReport& rep) {
  ordered_json j;
  j["v"] = kSearchSchemaVersion;
  j["n"] = rep.matrix.n();
  j["d"] = rep.matrix.degree();
  j["rows"] = rep.matrix.rows();
  j["smoothness"] = to_string(rep.smoothness);
  j["diagonal_group"] = rep.diagonal_group;
  j["N"] = rep.dimension;
  auto opt = [](const std::optional<std::int64_t>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
  j["p"] = opt(rep.p);
  j["q"] = opt(rep.q);
  j["r"] = opt(rep.r);
  if (rep.weight_class)
    j["weights"] = ordered_json{{"modulus", rep.weight_class->modulus},
                                {"w", rep.weight_class->weights},
                                {"mu", rep.weight_class->common_weight}};
  else
    j["weights"] = nullptr;
  j["permutation"] = rep.permutation ? ordered_json(rep.permutation->image) : ordered_json(nullptr);
  j["faithful"] = rep.faithful ? ordered_json(*rep.faithful) : ordered_json(nullptr);
  j["verdict"] = rep.verdict ? ordered_json(to_string(*rep.verdict)) : ordered_json(nullptr);
  j["hit"] = rep.hit;
  j["reason"] = rep.reason;
  j["certificate"] = rep.certificate.empty() ? ordered_json(nullptr) : ordered_json::parse(rep.certificate);
  return j.dump();
}

}  // namespace ijo
