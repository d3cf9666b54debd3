#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ijo/delsarte.hpp"
#include "ijo/obstruction.hpp"

namespace ijo {

struct SearchSpec {
  int n = 4;
  int degree = 4;
  std::int64_t threshold = 31;  // minimum prime for the diagonal group
  RuleSet ruleset = default_ruleset();
  /// Empty means the default family: d e_i and (d-1) e_i + e_j.
  std::vector<ExponentRow> family;

  static constexpr int kMaxN = 5;
  static constexpr int kMaxDegree = 5;

  void validate() const;
  std::vector<ExponentRow> rows() const;
};

/// Simultaneous relabeling canonical form: rows sorted ascending after a
/// column permutation, minimized lexicographically over all permutations.
ExponentMatrix canonical_form(const ExponentMatrix& m);

/// Visits one canonical representative per relabeling class of (n+1)-row
/// subsets of the family, in increasing canonical order.
void for_each_canonical_matrix(const SearchSpec& spec, const std::function<void(const ExponentMatrix&)>& visit);
std::vector<ExponentMatrix> enumerate_matrices(const SearchSpec& spec);

struct CandidateReport {
  explicit CandidateReport(ExponentMatrix m) : matrix(std::move(m)) {}

  ExponentMatrix matrix;
  Smoothness smoothness = Smoothness::Unsupported;
  std::vector<std::int64_t> diagonal_group;  // invariant factors
  std::int64_t dimension = 0;                // N, from the Hodge numbers
  std::optional<std::int64_t> p;
  std::optional<std::int64_t> q;
  std::optional<std::int64_t> r;               // balanced residue mod p
  std::optional<WeightClass> weight_class;        // the order-p class
  std::optional<PermSymmetry> permutation;        // the order-q symmetry
  std::optional<bool> faithful;
  std::optional<Verdict> verdict;
  std::string certificate;                        // JSON, empty for non-hits
  bool hit = false;
  std::string reason;                             // why it is not a hit
};

CandidateReport evaluate_candidate(const ExponentMatrix& m, const SearchSpec& spec);

/// Hits ranked by verdict (Contradiction first), then p descending, then
/// canonical matrix order.
std::vector<CandidateReport> search(const SearchSpec& spec, unsigned threads = 1);

/// Every evaluated candidate in canonical order, hits and non-hits alike.
std::vector<CandidateReport> evaluate_all(const SearchSpec& spec, unsigned threads = 1);

inline constexpr int kSearchSchemaVersion = 1;
std::string candidate_json_line(const CandidateReport& report);

}  // namespace ijo
