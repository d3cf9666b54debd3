#pragma once

// Rule engine deciding whether a faithful action of Z/p x| Z/q on an
// N-dimensional principally polarized abelian variety rules out a splitting
// into a product of Jacobians of curves.
//
// Rules (each with its side conditions):
//   R1  faithful Z/p descends faithfully to some isotypic block A_i^{n_i}
//   R2  p > N >= n_i: no permutation part, Z/p acts on a single factor B of genus g <= N
//   R3  genus-1 factors have no polarized automorphism of order > 6
//   R4  odd cyclic group on Jac(C), g >= 2: order <= 4g + 2
//   R5  Z/q-orbit of B has size 1 or q; size q impossible when q g > N
//   R6  nontrivial semidirect product + faithful Z/p on B => G faithful on B
//   R7  odd metacyclic group on Jac(C), g >= 4: |G| <= 9(g - 1)
//   R8  Hurwitz: |Aut(C)| <= 84(g - 1), g >= 2

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ijo {

struct MetacyclicGroup {
  std::int64_t p = 1;
  std::int64_t q = 1;
  std::int64_t r = 1;  // normalized to [0, p)

  static MetacyclicGroup make(std::int64_t p, std::int64_t q, std::int64_t r);
  std::int64_t order() const { return p * q; }
  bool nontrivial() const { return r != 1 % p; }
};

struct Finding {
  std::string name;
  bool holds;
  std::string detail;
};

/// Primality of p and q, validity of r, nontriviality and parity. Throws
/// InvalidGroup when r^q != 1 mod p.
std::vector<Finding> check_preconditions(const MetacyclicGroup& g);

struct ProblemInstance {
  std::int64_t dimension = 1;  // N = dim A
  MetacyclicGroup group;
  bool faithful = true;
};

enum class Rule { R1 = 1, R2, R3, R4, R5, R6, R7, R8 };
using RuleSet = std::set<Rule>;

std::string to_string(Rule rule);
Rule parse_rule(const std::string& id);  // throws UnknownRule
/// Accepts "R1,R2,R5", ranges "R1-R7", or a mix.
RuleSet parse_ruleset(const std::string& spec);
RuleSet default_ruleset();  // R1-R7
RuleSet hurwitz_ruleset();  // R1-R6, R8

struct TraceStep {
  Rule rule;
  std::vector<std::pair<std::string, std::int64_t>> premises;
  std::string claim;
};

enum class Verdict { Contradiction, Inconclusive };
const char* to_string(Verdict v) noexcept;

struct ObstructionTrace {
  ProblemInstance instance;
  RuleSet ruleset;
  std::vector<TraceStep> steps;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::string> blockers;  // first failing side condition first
};

ObstructionTrace obstruct(const ProblemInstance& instance, const RuleSet& ruleset);

// Claim templates shared by the engine and the certificate replay. They only
// format text; every inequality is decided by the caller.
namespace claims {
std::string faithful_block(std::int64_t p);
std::string single_factor(std::int64_t p, std::int64_t dim);
std::string elliptic_exclusion(std::int64_t p);
std::string wiman(std::int64_t p, std::int64_t genus);
std::string genus_gap(std::int64_t genus, std::int64_t dim);
std::string orbit(std::int64_t q, std::int64_t genus, std::int64_t dim);
std::string semidirect(std::int64_t p, std::int64_t q, std::int64_t r);
std::string schweizer(std::int64_t p, std::int64_t q, std::int64_t dim);
std::string hurwitz(std::int64_t p, std::int64_t q, std::int64_t dim);
}  // namespace claims

}  // namespace ijo
