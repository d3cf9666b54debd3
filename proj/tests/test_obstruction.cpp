#include <doctest.h>

#include <json.hpp>

#include "ijo/certificate.hpp"
#include "ijo/error.hpp"
#include "ijo/exact.hpp"
#include "ijo/obstruction.hpp"

using namespace ijo;
using nlohmann::ordered_json;

namespace {

ObstructionTrace klein(const RuleSet& rules = default_ruleset()) {
  return obstruct(ProblemInstance{30, MetacyclicGroup::make(61, 5, -3), true}, rules);
}

bool mentions(const ObstructionTrace& t, const std::string& needle) {
  for (const auto& s : t.steps)
    if (s.claim.find(needle) != std::string::npos) return true;
  return false;
}

// Closed-form truth table for R1-R7, written from the rule statements.
bool expected_contradiction(std::int64_t N, std::int64_t p, std::int64_t q, std::int64_t r, bool faithful) {
  if (!faithful || p <= N) return false;
  std::int64_t g = 1;
  if (p > 6) g = 2;
  if (g >= 2 && p % 2 == 1) g = std::max(g, (p + 1) / 4);
  if (g > N) return true;
  if (q * g <= N || r == 1) return false;
  return (p * q) % 2 == 1 && g >= 4 && p * q > 9 * (N - 1);
}

struct Instance {
  std::int64_t p, q, r;
};

std::vector<Instance> metacyclic_grid() {
  std::vector<Instance> out;
  for (std::int64_t p = 2; p < 140; ++p) {
    if (!is_prime(p)) continue;
    for (std::int64_t q : {2, 3, 5, 7, 11}) {
      for (std::int64_t r = 1; r < p; ++r)
        if (pow_mod(r, q, p) == 1 % p) out.push_back({p, q, r % p});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("main instance is a contradiction") {
  const auto t = klein();
  CHECK(t.verdict == Verdict::Contradiction);
  CHECK(t.blockers.empty());
  CHECK(mentions(t, "g >= 15"));
  CHECK(mentions(t, "305 > 261"));
  REQUIRE(t.steps.size() == 7);
  CHECK(t.steps.back().rule == Rule::R7);
  CHECK(t.instance.group.r == 58);
}

TEST_CASE("Hurwitz bound alone is not enough") {
  const auto t = klein(hurwitz_ruleset());
  CHECK(t.verdict == Verdict::Inconclusive);
  REQUIRE_FALSE(t.blockers.empty());
  CHECK(t.blockers.front().find("2436") != std::string::npos);
}

TEST_CASE("Klein curve instance stops short of Schweizer") {
  const auto t = obstruct(ProblemInstance{3, MetacyclicGroup::make(7, 3, 2), true}, default_ruleset());
  CHECK(t.verdict == Verdict::Inconclusive);
  REQUIRE_FALSE(t.blockers.empty());
  CHECK(t.blockers.front().find("g >= 4") != std::string::npos);
}

TEST_CASE("blockers name the first failing side condition") {
  const auto direct = obstruct(ProblemInstance{30, MetacyclicGroup::make(61, 5, 1), true}, default_ruleset());
  CHECK(direct.verdict == Verdict::Inconclusive);
  CHECK(direct.blockers.front().rfind("R6", 0) == 0);

  const auto unfaithful = obstruct(ProblemInstance{30, MetacyclicGroup::make(61, 5, -3), false}, default_ruleset());
  CHECK(unfaithful.blockers.front().rfind("R1", 0) == 0);
  CHECK(unfaithful.steps.empty());

  const auto small_p = obstruct(ProblemInstance{30, MetacyclicGroup::make(29, 7, 7), true}, default_ruleset());
  CHECK(small_p.blockers.front().rfind("R2", 0) == 0);

  // p = 71 > 4*15 + 2 gives g >= 18 > 17: closed by the genus gap.
  const auto gap = obstruct(ProblemInstance{17, MetacyclicGroup::make(71, 5, 5), true}, default_ruleset());
  CHECK(gap.verdict == Verdict::Contradiction);
  CHECK(gap.steps.back().claim == claims::genus_gap(18, 17));
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(MetacyclicGroup::make(1, 5, 1), Error);
  CHECK_THROWS_AS(obstruct(ProblemInstance{30, MetacyclicGroup::make(61, 5, 2), true}, default_ruleset()), Error);
  CHECK_THROWS_AS(obstruct(ProblemInstance{30, MetacyclicGroup::make(60, 5, 1), true}, default_ruleset()), Error);
  CHECK_THROWS_AS(obstruct(ProblemInstance{0, MetacyclicGroup::make(61, 5, -3), true}, default_ruleset()), Error);
  try {
    obstruct(ProblemInstance{30, MetacyclicGroup::make(61, 5, 2), true}, default_ruleset());
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidGroup);
  }
  const auto pre = check_preconditions(MetacyclicGroup::make(61, 5, -3));
  for (const auto& f : pre) CHECK(f.holds);
}

TEST_CASE("rule set parsing") {
  CHECK(parse_ruleset("R1-R7") == default_ruleset());
  CHECK(parse_ruleset("R1-R6,R8") == hurwitz_ruleset());
  CHECK(parse_ruleset(" r1 , R3 ") == RuleSet{Rule::R1, Rule::R3});
  CHECK_THROWS_AS(parse_ruleset("R9"), Error);
  CHECK_THROWS_AS(parse_ruleset("R5-R2"), Error);
  CHECK_THROWS_AS(parse_ruleset(""), Error);
  try {
    parse_rule("X1");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownRule);
  }
}

TEST_CASE("engine agrees with the closed-form truth table") {
  for (const auto& g : metacyclic_grid())
    for (std::int64_t N = 1; N <= 70; ++N)
      for (bool faithful : {true, false}) {
        const auto t = obstruct(ProblemInstance{N, MetacyclicGroup::make(g.p, g.q, g.r), faithful}, default_ruleset());
        INFO("N=" << N << " p=" << g.p << " q=" << g.q << " r=" << g.r);
        CHECK((t.verdict == Verdict::Contradiction) == expected_contradiction(N, g.p, g.q, g.r, faithful));
      }
}

TEST_CASE("monotonicity in N and in the rule set") {
  for (const auto& g : metacyclic_grid()) {
    const auto G = MetacyclicGroup::make(g.p, g.q, g.r);
    bool previous = true;  // Contradiction at N - 1
    for (std::int64_t N = 1; N <= 70; ++N) {
      const bool now = obstruct(ProblemInstance{N, G, true}, default_ruleset()).verdict == Verdict::Contradiction;
      if (now) CHECK(previous);
      previous = now;

      RuleSet all = default_ruleset();
      all.insert(Rule::R8);
      if (now) CHECK(obstruct(ProblemInstance{N, G, true}, all).verdict == Verdict::Contradiction);
      RuleSet fewer = default_ruleset();
      fewer.erase(Rule::R7);
      if (obstruct(ProblemInstance{N, G, true}, fewer).verdict == Verdict::Contradiction) CHECK(now);
    }
  }
}

TEST_CASE("every certificate replays, with the same verdict") {
  int contradictions = 0;
  for (const auto& g : metacyclic_grid())
    for (std::int64_t N = 1; N <= 70; N += 3)
      for (const auto& rules : {default_ruleset(), hurwitz_ruleset()}) {
        const auto t = obstruct(ProblemInstance{N, MetacyclicGroup::make(g.p, g.q, g.r), true}, rules);
        const auto check = verify_certificate(certificate_json(t));
        INFO(certificate_json(t));
        REQUIRE(check.accepted);
        CHECK(check.verdict == to_string(t.verdict));
        contradictions += t.verdict == Verdict::Contradiction;
      }
  CHECK(contradictions > 100);
}

TEST_CASE("tampered certificates are rejected") {
  const auto doc = ordered_json::parse(certificate_json(klein()));
  CHECK(verify_certificate(doc.dump()).accepted);

  auto tamper = [&](auto&& edit) {
    auto copy = doc;
    edit(copy);
    return verify_certificate(copy.dump());
  };
  CHECK_FALSE(tamper([](ordered_json& j) { j["instance"]["N"] = 40; }).accepted);
  CHECK_FALSE(tamper([](ordered_json& j) { j["instance"]["r"] = 2; }).accepted);
  CHECK_FALSE(tamper([](ordered_json& j) { j["instance"]["faithful"] = false; }).accepted);
  CHECK_FALSE(tamper([](ordered_json& j) { j["steps"][3]["claim"] = "61 <= 4g+2, so g >= 16"; }).accepted);
  CHECK_FALSE(tamper([](ordered_json& j) { j["steps"][3]["premises"]["g_lower"] = 3; }).accepted);
  CHECK_FALSE(tamper([](ordered_json& j) { j["steps"].erase(4); }).accepted);
  CHECK_FALSE(tamper([](ordered_json& j) { j["steps"].erase(6); }).accepted);  // verdict no longer supported
  CHECK_FALSE(tamper([](ordered_json& j) { j["verdict"] = "Inconclusive"; }).accepted);
  CHECK_FALSE(tamper([](ordered_json& j) { j["ruleset"] = ordered_json::array({"R1", "R2", "R3", "R4", "R5", "R6"}); }).accepted);
  CHECK_FALSE(tamper([](ordered_json& j) { j["v"] = 2; }).accepted);
  CHECK_FALSE(verify_certificate("{not json").accepted);
  CHECK_FALSE(verify_certificate("[]").accepted);

  // Swapping R7 for R8 on the main instance must fail the Hurwitz inequality.
  CHECK_FALSE(tamper([](ordered_json& j) {
                j["ruleset"].push_back("R8");
                j["steps"][6]["rule"] = "R8";
                j["steps"][6]["claim"] = claims::hurwitz(61, 5, 30);
              }).accepted);
}
