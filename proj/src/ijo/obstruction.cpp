#include "ijo/obstruction.hpp"

#include <algorithm>
#include <sstream>

#include "ijo/error.hpp"
#include "ijo/exact.hpp"

namespace ijo {

namespace {
constexpr std::int64_t kMaxPrime = std::int64_t{1} << 31;
constexpr std::int64_t kMaxDimension = 1'000'000'000;
constexpr std::int64_t kEllipticOrderBound = 6;

std::string num(std::int64_t v) { return std::to_string(v); }
}  // namespace

MetacyclicGroup MetacyclicGroup::make(std::int64_t p, std::int64_t q, std::int64_t r) {
  if (p < 2 || q < 2 || p >= kMaxPrime || q >= kMaxPrime)
    throw Error(ErrorCode::InvalidGroup, "p and q must lie in [2, 2^31)");
  return MetacyclicGroup{p, q, mod(r, p)};
}

std::vector<Finding> check_preconditions(const MetacyclicGroup& g) {
  if (pow_mod(g.r, g.q, g.p) != 1 % g.p)
    throw Error(ErrorCode::InvalidGroup, "r^q = " + num(pow_mod(g.r, g.q, g.p)) + " != 1 mod " + num(g.p) +
                                             " (r = " + num(g.r) + ", q = " + num(g.q) + ")");
  std::vector<Finding> out;
  out.push_back({"p_prime", is_prime(g.p), "p = " + num(g.p)});
  out.push_back({"q_prime", is_prime(g.q), "q = " + num(g.q)});
  out.push_back({"r_valid", true, num(g.r) + "^" + num(g.q) + " = 1 mod " + num(g.p)});
  out.push_back({"nontrivial_semidirect", g.nontrivial(),
                 g.nontrivial() ? "r = " + num(g.r) + " != 1, G is not a direct product"
                                : "r = 1, G is a direct product (R6 inapplicable)"});
  const bool odd = (g.order() % 2) == 1;
  out.push_back({"odd_order", odd, "|G| = " + num(g.order())});
  return out;
}

std::string to_string(Rule rule) { return "R" + std::to_string(static_cast<int>(rule)); }

Rule parse_rule(const std::string& id) {
  if (id.size() == 2 && (id[0] == 'R' || id[0] == 'r') && id[1] >= '1' && id[1] <= '8')
    return static_cast<Rule>(id[1] - '0');
  throw Error(ErrorCode::UnknownRule, "unknown rule id '" + id + "' (expected R1..R8)");
}

RuleSet parse_ruleset(const std::string& spec) {
  RuleSet out;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) continue;
    auto dash = item.find('-');
    if (dash == std::string::npos) {
      out.insert(parse_rule(item));
      continue;
    }
    const int lo = static_cast<int>(parse_rule(item.substr(0, dash)));
    const int hi = static_cast<int>(parse_rule(item.substr(dash + 1)));
    if (lo > hi) throw Error(ErrorCode::UnknownRule, "empty rule range '" + item + "'");
    for (int k = lo; k <= hi; ++k) out.insert(static_cast<Rule>(k));
  }
  if (out.empty()) throw Error(ErrorCode::UnknownRule, "empty ruleset");
  return out;
}

RuleSet default_ruleset() { return {Rule::R1, Rule::R2, Rule::R3, Rule::R4, Rule::R5, Rule::R6, Rule::R7}; }
RuleSet hurwitz_ruleset() { return {Rule::R1, Rule::R2, Rule::R3, Rule::R4, Rule::R5, Rule::R6, Rule::R8}; }

const char* to_string(Verdict v) noexcept { return v == Verdict::Contradiction ? "Contradiction" : "Inconclusive"; }

namespace claims {

std::string faithful_block(std::int64_t p) {
  return "Z/" + num(p) + " acts faithfully on some isotypic block A_1^n_1";
}
std::string single_factor(std::int64_t p, std::int64_t dim) {
  return num(p) + " > " + num(dim) + " >= n_1, so Z/" + num(p) +
         " acts faithfully on a single factor B = Jac(C_1) with g <= " + num(dim);
}
std::string elliptic_exclusion(std::int64_t p) { return num(p) + " > 6, so g >= 2"; }
std::string wiman(std::int64_t p, std::int64_t genus) {
  return num(p) + " <= 4g+2, so g >= " + num(genus);
}
std::string genus_gap(std::int64_t genus, std::int64_t dim) {
  return "g >= " + num(genus) + " > " + num(dim) + " >= g";
}
std::string orbit(std::int64_t q, std::int64_t genus, std::int64_t dim) {
  return num(q) + "*" + num(genus) + " = " + num(q * genus) + " > " + num(dim) + ", so the Z/" + num(q) +
         "-orbit of B has 1 element and B is G-invariant";
}
std::string semidirect(std::int64_t p, std::int64_t q, std::int64_t r) {
  return "r = " + num(r) + " != 1 mod " + num(p) + ", so G = Z/" + num(p) + " x| Z/" + num(q) +
         " acts faithfully on B";
}
std::string schweizer(std::int64_t p, std::int64_t q, std::int64_t dim) {
  return "|G| = " + num(p * q) + " > " + num(9 * (dim - 1)) + " = 9*(" + num(dim) + "-1) >= 9(g-1)";
}
std::string hurwitz(std::int64_t p, std::int64_t q, std::int64_t dim) {
  return "|G| = " + num(p * q) + " > " + num(84 * (dim - 1)) + " = 84*(" + num(dim) + "-1) >= 84(g-1)";
}

}  // namespace claims

ObstructionTrace obstruct(const ProblemInstance& instance, const RuleSet& ruleset) {
  const auto& g = instance.group;
  const std::int64_t dim = instance.dimension;
  if (dim < 1 || dim > kMaxDimension) throw Error(ErrorCode::InvalidArgument, "dimension must lie in [1, 1e9]");
  for (Rule rule : ruleset)
    if (static_cast<int>(rule) < 1 || static_cast<int>(rule) > 8) throw Error(ErrorCode::UnknownRule, "unknown rule");
  check_preconditions(g);
  if (!is_prime(g.p) || !is_prime(g.q)) throw Error(ErrorCode::InvalidGroup, "p and q must be prime");

  ObstructionTrace trace{instance, ruleset, {}, Verdict::Inconclusive, {}};
  auto has = [&](Rule r) { return ruleset.count(r) != 0; };
  auto step = [&](Rule rule, std::vector<std::pair<std::string, std::int64_t>> premises, std::string claim) {
    trace.steps.push_back({rule, std::move(premises), std::move(claim)});
  };
  auto block = [&](std::string why) {
    trace.blockers.push_back(std::move(why));
    return trace;
  };
  const bool odd_p = g.p % 2 == 1;
  const bool odd_group = g.order() % 2 == 1;

  if (!has(Rule::R1)) return block("R1 not in ruleset");
  if (!instance.faithful) return block("R1: the action is not assumed faithful");
  step(Rule::R1, {{"p", g.p}, {"faithful", 1}}, claims::faithful_block(g.p));

  if (!has(Rule::R2)) return block("R2 not in ruleset");
  if (g.p <= dim) return block("R2: p = " + num(g.p) + " <= N = " + num(dim) + ", S_n_1 may contain an element of order p");
  step(Rule::R2, {{"p", g.p}, {"N", dim}}, claims::single_factor(g.p, dim));

  std::int64_t genus = 1;
  if (has(Rule::R3) && g.p > kEllipticOrderBound) {
    genus = 2;
    step(Rule::R3, {{"p", g.p}, {"bound", kEllipticOrderBound}}, claims::elliptic_exclusion(g.p));
  }
  if (has(Rule::R4) && genus >= 2 && odd_p) {
    const std::int64_t wiman_genus = (g.p - 2 + 3) / 4;  // ceil((p - 2) / 4)
    const std::int64_t previous = genus;
    genus = std::max(genus, wiman_genus);
    step(Rule::R4, {{"p", g.p}, {"g_lower", previous}}, claims::wiman(g.p, genus));
  }

  if (genus > dim) {
    step(Rule::R2, {{"g_lower", genus}, {"N", dim}}, claims::genus_gap(genus, dim));
    trace.verdict = Verdict::Contradiction;
    return trace;
  }

  if (!has(Rule::R5)) return block("R5 not in ruleset");
  if (g.q * genus <= dim)
    return block("R5: q*g = " + num(g.q) + "*" + num(genus) + " = " + num(g.q * genus) + " <= N = " + num(dim) +
                 ", an orbit of size q is possible");
  step(Rule::R5, {{"q", g.q}, {"g_lower", genus}, {"N", dim}}, claims::orbit(g.q, genus, dim));

  if (!has(Rule::R6)) return block("R6 not in ruleset");
  if (!g.nontrivial()) return block("R6: r = 1 mod " + num(g.p) + ", G is a direct product");
  step(Rule::R6, {{"p", g.p}, {"q", g.q}, {"r", g.r}}, claims::semidirect(g.p, g.q, g.r));

  std::vector<std::string> pending;
  if (has(Rule::R7)) {
    if (!odd_group)
      pending.push_back("R7: |G| = " + num(g.order()) + " is even");
    else if (genus < 4)
      pending.push_back("R7: genus bound g >= " + num(genus) + " does not reach g >= 4");
    else if (g.order() <= 9 * (dim - 1))
      pending.push_back("R7: |G| = " + num(g.order()) + " <= " + num(9 * (dim - 1)) + " = 9*(" + num(dim) + "-1)");
    else {
      step(Rule::R7, {{"p", g.p}, {"q", g.q}, {"g_lower", genus}, {"N", dim}}, claims::schweizer(g.p, g.q, dim));
      trace.verdict = Verdict::Contradiction;
      return trace;
    }
  }
  if (has(Rule::R8)) {
    if (!odd_group)
      pending.push_back("R8: |G| = " + num(g.order()) + " is even");
    else if (genus < 2)
      pending.push_back("R8: genus bound g >= 2 not established");
    else if (g.order() <= 84 * (dim - 1))
      pending.push_back("R8: |G| = " + num(g.order()) + " <= " + num(84 * (dim - 1)) + " = 84*(" + num(dim) + "-1)");
    else {
      step(Rule::R8, {{"p", g.p}, {"q", g.q}, {"g_lower", genus}, {"N", dim}}, claims::hurwitz(g.p, g.q, dim));
      trace.verdict = Verdict::Contradiction;
      return trace;
    }
  }
  if (pending.empty()) pending.push_back("no order bound (R7 or R8) in ruleset");
  trace.blockers = std::move(pending);
  return trace;
}

}  // namespace ijo
