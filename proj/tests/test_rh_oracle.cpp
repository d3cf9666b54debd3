#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "ijo/error.hpp"
#include "ijo/rh_oracle.hpp"

using namespace ijo;

namespace {

// Independent check for Z/m: the group is abelian, so commutators vanish and
// a vector exists iff branch elements of the right orders sum to 0 and, when
// h = 0, generate Z/m.
bool cyclic_vector_exists(int m, int h, const std::vector<int>& periods) {
  if (h == 0 && periods.empty()) return false;
  auto order = [m](int x) { return m / std::gcd(x, m); };
  auto rec = [&](auto&& self, std::size_t j, int sum, int gen) -> bool {
    if (j == periods.size()) return sum == 0 && (h > 0 || gen == 1);
    for (int x = 0; x < m; ++x)
      if (order(x) == periods[j] && self(self, j + 1, (sum + x) % m, std::gcd(gen, x))) return true;
    return false;
  };
  return rec(rec, 0, 0, m);
}

// All signatures of genus g for a group whose element orders are `orders`.
std::vector<Signature> brute_signatures(int n, const std::vector<int>& orders, int g) {
  std::vector<Signature> out;
  for (int h = 0; h <= g; ++h) {
    std::vector<int> periods;
    auto rec = [&](auto&& self, std::size_t start, long t) -> void {
      if (t == 2L * g - 2) out.push_back({g, h, periods});
      for (std::size_t i = start; i < orders.size(); ++i) {
        const long next = t + n - n / orders[i];
        if (next > 2L * g - 2) continue;
        periods.push_back(orders[i]);
        self(self, i, next);
        periods.pop_back();
      }
    };
    rec(rec, 0, static_cast<long>(n) * (2L * h - 2));
  }
  std::sort(out.begin(), out.end(), [](const Signature& a, const Signature& b) {
    return std::tie(a.h, a.periods) < std::tie(b.h, b.periods);
  });
  return out;
}

std::vector<Signature> of_genus(const std::vector<Signature>& all, int g) {
  std::vector<Signature> out;
  for (const auto& s : all)
    if (s.genus == g) out.push_back(s);
  return out;
}

}  // namespace

TEST_CASE("group tables") {
  const auto g = GroupTable::metacyclic(7, 3, 2);
  CHECK(g.size() == 21);
  CHECK(g.is_associative());
  CHECK(g.element_orders() == std::vector<int>{3, 7});
  CHECK(g.class_representatives().size() == 5);
  CHECK(GroupTable::cyclic(12).class_representatives().size() == 12);
  CHECK(GroupTable::metacyclic(5, 4, 2).is_associative());
  const auto big = GroupTable::metacyclic(61, 5, -3);
  CHECK(big.size() == 305);
  CHECK(big.element_orders() == std::vector<int>{5, 61});
  for (int a = 0; a < big.size(); ++a) CHECK(big.mul(a, big.inverse(a)) == 0);
  CHECK_THROWS_AS(GroupTable::metacyclic(61, 5, 2), Error);
  CHECK_THROWS_AS(GroupTable::cyclic(5000), Error);
}

TEST_CASE("Riemann-Hurwitz arithmetic") {
  CHECK(riemann_hurwitz_value(7, 0, {7, 7, 7}) == 4);     // genus 3
  CHECK(riemann_hurwitz_value(305, 0, {5, 5, 5}) == 122);  // genus 62, far beyond 30
  CHECK_FALSE(riemann_hurwitz_value(10, 0, {3}).has_value());
}

TEST_CASE("signature enumeration agrees with brute force") {
  for (int m = 2; m <= 16; ++m) {
    const auto g = GroupTable::cyclic(m);
    const auto all = signatures_for_genus_range(g, 8);
    for (int genus = 2; genus <= 8; ++genus) {
      auto ours = of_genus(all, genus);
      for (const auto& s : ours) CHECK(riemann_hurwitz_value(m, s.h, s.periods) == 2L * genus - 2);
      CHECK(ours == brute_signatures(m, g.element_orders(), genus));
    }
  }
}

TEST_CASE("generating vectors for cyclic groups agree with the abelian oracle") {
  for (int m = 2; m <= 12; ++m) {
    const auto g = GroupTable::cyclic(m);
    for (const auto& s : signatures_for_genus_range(g, 6)) {
      INFO("Z/" << m << " " << s.to_string());
      const auto v = find_generating_vector(g, s);
      CHECK(v.has_value() == cyclic_vector_exists(m, s.h, s.periods));
      if (v) CHECK(is_generating_vector(g, s, *v));
    }
  }
}

TEST_CASE("witnesses for metacyclic groups pass the direct check") {
  for (const auto& g : {GroupTable::metacyclic(7, 3, 2), GroupTable::metacyclic(5, 4, 2), GroupTable::metacyclic(3, 2, 2)})
    for (const auto& s : signatures_for_genus_range(g, 7))
      if (const auto v = find_generating_vector(g, s)) CHECK(is_generating_vector(g, s, *v));
}

TEST_CASE("positive controls") {
  CHECK(exists_action(GroupTable::cyclic(7), 3));
  CHECK(exists_action(GroupTable::cyclic(5), 2));
  CHECK(exists_action(GroupTable::cyclic(10), 2));
  CHECK(exists_action(GroupTable::cyclic(14), 3));
  CHECK(exists_action(GroupTable::metacyclic(7, 3, 2), 3));  // inside the Klein quartic's 168
  const auto c = search_action(GroupTable::cyclic(7), 3);
  REQUIRE(c.realized.has_value());
  CHECK(c.realized->periods == std::vector<int>{7, 7, 7});
  CHECK(is_generating_vector(GroupTable::cyclic(7), *c.realized, *c.witness));
}

TEST_CASE("cyclic actions on genus 2") {
  // the classical list of cyclic orders on genus 2 surfaces
  const std::vector<int> orders{2, 3, 4, 5, 6, 8, 10};
  for (int m = 2; m <= 30; ++m)
    CHECK(exists_action(GroupTable::cyclic(m), 2) == (std::find(orders.begin(), orders.end(), m) != orders.end()));
}

TEST_CASE("Wiman bound at desk scale") {
  for (int genus = 2; genus <= 6; ++genus) {
    CHECK(exists_action(GroupTable::cyclic(4 * genus + 2), genus));  // sharp
    for (int m = 4 * genus + 3; m <= 4 * genus + 24; ++m) {
      INFO("Z/" << m << " on genus " << genus);
      CHECK_FALSE(exists_action(GroupTable::cyclic(m), genus));
    }
  }
}

TEST_CASE("Schweizer bound at desk scale") {
  struct G {
    int p, q, r;
  };
  const std::vector<G> groups{{7, 3, 2}, {13, 3, 3}, {19, 3, 7}, {11, 5, 3}, {31, 3, 5}, {37, 3, 10}, {43, 3, 6}};
  for (int genus = 4; genus <= 7; ++genus)
    for (const auto& [p, q, r] : groups) {
      if (p * q <= 9 * (genus - 1)) continue;
      INFO("Z/" << p << " x| Z/" << q << " on genus " << genus);
      CHECK_FALSE(exists_action(GroupTable::metacyclic(p, q, r), genus));
    }
}

TEST_CASE("order 305 group has no signature up to genus 30") {
  const auto g = GroupTable::metacyclic(61, 5, -3);
  for (int genus = 2; genus <= 30; ++genus) {
    const auto a = search_action(g, genus);
    CHECK(a.signatures.empty());
    CHECK_FALSE(a.realized.has_value());
  }
  CHECK(signatures_for_genus_range(g, 61).empty());
  const auto first = signatures_for_genus_range(g, 62);
  REQUIRE(first.size() == 1);
  CHECK(first[0].to_string() == "(0; 5,5,5)");
}

TEST_CASE("period order does not matter") {
  const auto z15 = GroupTable::cyclic(15);
  std::vector<int> periods{3, 5, 15};
  do {
    CHECK(has_generating_vector(z15, Signature{0, 0, periods}));
  } while (std::next_permutation(periods.begin(), periods.end()));
  const auto meta = GroupTable::metacyclic(7, 3, 2);
  periods = {3, 3, 7};
  const bool base = has_generating_vector(meta, Signature{0, 0, periods});
  CHECK(base);
  do {
    CHECK(has_generating_vector(meta, Signature{0, 0, periods}) == base);
  } while (std::next_permutation(periods.begin(), periods.end()));
}

TEST_CASE("frozen: Z/15 on genus 7") {
  const auto a = search_action(GroupTable::cyclic(15), 7);
  std::vector<std::string> sigs;
  for (const auto& s : a.signatures) sigs.push_back(s.to_string());
  // 12 = 15(2h-2) + sum of 10, 12, 14 for periods 3, 5, 15
  CHECK(sigs == std::vector<std::string>{"(0; 3,3,3,5)", "(0; 15,15,15)", "(1; 5)"});
  REQUIRE(a.realized.has_value());
  CHECK(a.realized->to_string() == "(0; 15,15,15)");
}

TEST_CASE("threaded search matches serial") {
  const auto g = GroupTable::metacyclic(7, 3, 2);
  for (int genus = 2; genus <= 8; ++genus) {
    const auto s1 = search_action(g, genus, 1), s4 = search_action(g, genus, 4);
    CHECK(s1.signatures == s4.signatures);
    CHECK(s1.realized.has_value() == s4.realized.has_value());
    if (s1.realized) CHECK(*s1.realized == *s4.realized);
  }
}
