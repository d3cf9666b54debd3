#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "ijo/certificate.hpp"
#include "ijo/error.hpp"
#include "ijo/hodge.hpp"
#include "ijo/search.hpp"

using namespace ijo;

namespace {

using Rows = std::vector<ExponentRow>;

Rows relabel(const Rows& rows, const std::vector<int>& perm) {
  Rows out;
  for (const auto& r : rows) {
    ExponentRow x(r.size());
    for (std::size_t c = 0; c < r.size(); ++c) x[c] = r[perm[c]];
    out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool contains(const std::vector<ExponentMatrix>& ms, const ExponentMatrix& m) {
  return std::find(ms.begin(), ms.end(), canonical_form(m)) != ms.end();
}

const CandidateReport* find_hit(const std::vector<CandidateReport>& hits, const ExponentMatrix& m) {
  const auto c = canonical_form(m);
  for (const auto& h : hits)
    if (h.matrix == c) return &h;
  return nullptr;
}

SearchSpec spec_for(int n, int d, std::int64_t threshold) {
  SearchSpec s;
  s.n = n;
  s.degree = d;
  s.threshold = threshold;
  return s;
}

}  // namespace

TEST_CASE("default family") {
  const auto rows = SearchSpec{}.rows();
  CHECK(rows.size() == 25);
  CHECK(std::is_sorted(rows.begin(), rows.end()));
  for (const auto& r : rows) CHECK(std::accumulate(r.begin(), r.end(), 0) == 4);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(spec_for(3, 4, 31).validate(), Error);   // odd n
  CHECK_THROWS_AS(spec_for(6, 4, 31).validate(), Error);   // beyond desk scale
  CHECK_THROWS_AS(spec_for(4, 6, 31).validate(), Error);
  CHECK_THROWS_AS(spec_for(4, 4, 1).validate(), Error);
  SearchSpec bad;
  bad.family = {{4, 0, 0, 0, 1}};
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("canonical form is idempotent and relabeling invariant") {
  const auto k = presets::klein_threefold();
  const auto c = canonical_form(k);
  CHECK(canonical_form(c) == c);
  std::vector<int> perm(5);
  std::iota(perm.begin(), perm.end(), 0);
  int seen = 0;
  do {
    CHECK(canonical_form(ExponentMatrix(4, relabel(k.rows(), perm))) == c);
    ++seen;
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(seen == 120);
}

TEST_CASE("enumeration contains the named examples") {
  const auto quartic3 = enumerate_matrices(SearchSpec{});
  CHECK(contains(quartic3, presets::klein_threefold()));
  CHECK(contains(quartic3, presets::fermat(4, 4)));
  CHECK(contains(quartic3, presets::chain_threefold()));
  const auto curves = enumerate_matrices(spec_for(2, 4, 7));
  CHECK(contains(curves, presets::klein_curve()));
  CHECK(contains(curves, presets::fermat(2, 4)));
}

TEST_CASE("isomorph rejection on the full quartic 3-fold family") {
  const auto ms = enumerate_matrices(SearchSpec{});
  // pairwise: no two emitted matrices are relabelings of each other
  std::map<std::vector<int>, std::vector<std::size_t>> buckets;  // cheap invariant: sorted column sums
  for (std::size_t i = 0; i < ms.size(); ++i) {
    std::vector<int> sums(5, 0);
    for (const auto& r : ms[i].rows())
      for (std::size_t c = 0; c < 5; ++c) sums[c] += r[c];
    std::sort(sums.begin(), sums.end());
    buckets[sums].push_back(i);
  }
  std::vector<int> perm(5);
  for (const auto& [key, idx] : buckets)
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        std::iota(perm.begin(), perm.end(), 0);
        bool related = false;
        do {
          related = relabel(ms[idx[a]].rows(), perm) == ms[idx[b]].rows();
        } while (!related && std::next_permutation(perm.begin(), perm.end()));
        CHECK_FALSE(related);
      }

  // completeness: every 5-subset of the family lands on an emitted matrix
  const auto family = SearchSpec{}.rows();
  const std::set<Rows> emitted = [&] {
    std::set<Rows> s;
    for (const auto& m : ms) s.insert(m.rows());
    return s;
  }();
  std::vector<char> pick(family.size(), 0);
  std::fill(pick.end() - 5, pick.end(), 1);
  std::size_t subsets = 0;
  do {
    Rows rows;
    for (std::size_t i = 0; i < family.size(); ++i)
      if (pick[i]) rows.push_back(family[i]);
    CHECK(emitted.count(canonical_form(ExponentMatrix(4, rows)).rows()) == 1);
    ++subsets;
  } while (std::next_permutation(pick.begin(), pick.end()));
  CHECK(subsets == 53130);
  CHECK(std::is_sorted(ms.begin(), ms.end(), [](const auto& a, const auto& b) { return a.rows() < b.rows(); }));
}

TEST_CASE("diagonal group order times degree equals |det| on the default family") {
  int nonsingular = 0;
  for (const auto& m : enumerate_matrices(SearchSpec{})) {
    const mpz_class det = abs(determinant(m.to_integer_matrix()));
    if (det == 0) {
      CHECK_THROWS_AS(diagonal_symmetry_group(m), Error);
      continue;
    }
    ++nonsingular;
    CHECK(diagonal_symmetry_group(m).group.order() * 4 == det);
  }
  CHECK(nonsingular > 100);
}

TEST_CASE("candidate evaluation") {
  const SearchSpec spec;
  const auto k = evaluate_candidate(canonical_form(presets::klein_threefold()), spec);
  REQUIRE(k.hit);
  CHECK(k.p == 61);
  CHECK(k.q == 5);
  CHECK(k.r == -3);
  CHECK(k.verdict == Verdict::Contradiction);
  CHECK(k.faithful == true);
  CHECK(k.dimension == 30);
  CHECK(verify_certificate(k.certificate).accepted);

  const auto f = evaluate_candidate(canonical_form(presets::fermat(4, 4)), spec);
  CHECK_FALSE(f.hit);
  CHECK(f.smoothness == Smoothness::Smooth);
  CHECK(f.diagonal_group == std::vector<std::int64_t>{4, 4, 4, 4});
  CHECK_FALSE(f.p.has_value());

  const auto cone = evaluate_candidate(presets::cone_threefold(), spec);
  CHECK_FALSE(cone.hit);
  CHECK(cone.smoothness == Smoothness::Singular);
  CHECK(cone.reason == "singular");
}

TEST_CASE("default search finds Klein with a contradiction") {
  const auto hits = search(SearchSpec{}, 2);
  REQUIRE_FALSE(hits.empty());
  const auto* k = find_hit(hits, presets::klein_threefold());
  REQUIRE(k != nullptr);
  CHECK(k->verdict == Verdict::Contradiction);
  CHECK(k == &hits.front());
  // ranking: Contradiction first, then p descending
  for (std::size_t i = 0; i + 1 < hits.size(); ++i) {
    const bool a = hits[i].verdict == Verdict::Contradiction, b = hits[i + 1].verdict == Verdict::Contradiction;
    CHECK(a >= b);
    if (a == b) CHECK(*hits[i].p >= *hits[i + 1].p);
  }
}

TEST_CASE("hits are reproduced by re-running the component operations") {
  for (const auto& h : search(SearchSpec{}, 1)) {
    REQUIRE(h.hit);
    CHECK(smoothness_check(h.matrix).verdict == Smoothness::Smooth);
    CHECK(h.dimension == hodge_numbers(4, 4).jacobian_dimension());
    const auto dg = diagonal_symmetry_group(h.matrix);
    CHECK(dg.group.exponent() % *h.p == 0);
    REQUIRE(h.weight_class.has_value());
    CHECK(is_invariant(h.matrix, h.weight_class->weights, *h.p).has_value());
    CHECK(mod(conjugation_exponent(h.matrix, *h.weight_class, *h.permutation), *h.p) == mod(*h.r, *h.p));
    CHECK(h.permutation->order() == *h.q);
    const auto trace = obstruct(ProblemInstance{h.dimension, MetacyclicGroup::make(*h.p, *h.q, *h.r), *h.faithful},
                                default_ruleset());
    CHECK(trace.verdict == *h.verdict);
    CHECK(certificate_json(trace) == h.certificate);
    CHECK(verify_certificate(h.certificate).accepted);
  }
}

TEST_CASE("threshold 1000 leaves nothing") { CHECK(search(spec_for(4, 4, 1000), 1).empty()); }

TEST_CASE("plane quartic search reports the Klein curve as inconclusive") {
  const auto hits = search(spec_for(2, 4, 7), 1);
  const auto* k = find_hit(hits, presets::klein_curve());
  REQUIRE(k != nullptr);
  CHECK(k->p == 7);
  CHECK(k->q == 3);
  CHECK(k->dimension == 3);
  CHECK(k->verdict == Verdict::Inconclusive);
}

TEST_CASE("output is deterministic across runs and thread counts") {
  auto render = [](unsigned threads) {
    std::string out;
    for (const auto& r : evaluate_all(SearchSpec{}, threads)) out += candidate_json_line(r) + "\n";
    return out;
  };
  const auto a = render(1);
  CHECK(a == render(1));
  CHECK(a == render(3));
}

TEST_CASE("json lines carry the schema version") {
  const auto hits = search(SearchSpec{}, 1);
  REQUIRE_FALSE(hits.empty());
  const auto j = nlohmann::json::parse(candidate_json_line(hits.front()));
  CHECK(j["v"] == kSearchSchemaVersion);
  CHECK(j["verdict"] == "Contradiction");
  CHECK(j["r"] == -3);
  CHECK(j["certificate"]["instance"]["r"] == 58);
}
