#include <doctest.h>

#include <numeric>
#include <random>
#include <utility>

#include "ijo/search.hpp"
#include "numeric_oracle.hpp"

using namespace ijo;

namespace {

bool numerically_singular(const ExponentMatrix& m) { return testing::find_singular_point(m).has_value(); }

}  // namespace

TEST_CASE("named examples") {
  CHECK(smoothness_check(presets::klein_threefold()).verdict == Smoothness::Smooth);
  CHECK(smoothness_check(presets::fermat(4, 4)).verdict == Smoothness::Smooth);
  CHECK(smoothness_check(presets::klein_curve()).verdict == Smoothness::Smooth);
  CHECK(smoothness_check(presets::fermat(2, 3)).verdict == Smoothness::Smooth);

  const auto cone = smoothness_check(presets::cone_threefold());
  REQUIRE(cone.verdict == Smoothness::Singular);
  REQUIRE(cone.witness.has_value());
  CHECK(cone.witness->gradient_norm < 1e-9);
  double norm = 0;
  for (const auto& z : cone.witness->point) norm += std::norm(z);
  CHECK(norm == doctest::Approx(1.0));
}

TEST_CASE("Klein torus stratum is ruled out by an inconsistent binomial system") {
  const auto rep = smoothness_check(presets::klein_threefold());
  bool seen = false;
  for (const auto& s : rep.certificate)
    if (s.support.size() == 5) {
      seen = true;
      CHECK(s.reason.find("-1/243") != std::string::npos);
    }
  CHECK(seen);
}

TEST_CASE("a singular point off the coordinate points gets a torus witness") {
  // x0^4 + x0^3 x1 + x2^4: on x2 = 0 the binary quartic x0^3 (x0 + x1) has a
  // triple root at x0 = 0, so [0:1:0] is singular.
  const ExponentMatrix m(4, {{4, 0, 0}, {3, 1, 0}, {0, 0, 4}});
  const auto rep = smoothness_check(m);
  REQUIRE(rep.verdict == Smoothness::Singular);
  CHECK(rep.witness->gradient_norm < 1e-9);
  CHECK(numerically_singular(m));
}

TEST_CASE("witness gradients vanish for every singular family member") {
  for (const auto& m : enumerate_matrices(SearchSpec{})) {
    const auto rep = smoothness_check(m);
    if (rep.verdict != Smoothness::Singular) continue;
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->gradient_norm < 1e-9);
    CHECK(gradient(m, rep.witness->point).size() == 5);
  }
}

TEST_CASE("exact verdict agrees with the numeric oracle on random family matrices") {
  const auto family = SearchSpec{}.rows();
  std::mt19937 rng(42);
  int compared = 0, smooth = 0;
  while (compared < 60) {
    std::vector<std::size_t> idx(family.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<ExponentRow> rows;
    for (int i = 0; i < 5; ++i) rows.push_back(family[idx[static_cast<std::size_t>(i)]]);
    const ExponentMatrix m(4, rows);
    const auto verdict = smoothness_check(m).verdict;
    if (verdict == Smoothness::Unsupported) continue;
    ++compared;
    smooth += verdict == Smoothness::Smooth;
    INFO(m.to_text());
    CHECK((verdict == Smoothness::Singular) == numerically_singular(m));
  }
  MESSAGE(compared << " compared, " << smooth << " smooth");
}

TEST_CASE("every smooth canonical family member is numerically smooth") {
  int smooth = 0;
  for (const auto& m : enumerate_matrices(SearchSpec{})) {
    if (smoothness_check(m).verdict != Smoothness::Smooth) continue;
    ++smooth;
    INFO(m.to_text());
    CHECK_FALSE(numerically_singular(m));
  }
  CHECK(smooth > 2);
}

TEST_CASE("the exact checker is total on the search families") {
  for (const auto& [n, d] : {std::pair{2, 4}, std::pair{2, 5}, std::pair{4, 4}}) {
    SearchSpec spec;
    spec.n = n;
    spec.degree = d;
    for (const auto& m : enumerate_matrices(spec)) CHECK(smoothness_check(m).verdict != Smoothness::Unsupported);
  }
}
