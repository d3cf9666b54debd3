#pragma once

// JSON and human-readable renderings of every operation, shared by the C API
// and therefore the CLI. The verdict string is what --expect compares with.

#include <optional>
#include <string>
#include <vector>

#include "ijo/delsarte.hpp"
#include "ijo/obstruction.hpp"
#include "ijo/rh_oracle.hpp"
#include "ijo/search.hpp"

namespace ijo {

struct Document {
  std::string json;
  std::string text;
  std::string verdict;
};

Document symmetry_document(const ExponentMatrix& m);
Document smoothness_document(const ExponentMatrix& m);
Document hodge_document(int n, int d);

/// Characters of a diagonal automorphism on every primitive middle piece. An
/// absent class means the generator of the largest cyclic factor of the
/// diagonal group. `only_q` restricts the listing to one piece.
Document character_document(const ExponentMatrix& m, const std::optional<WeightClass>& w, std::optional<int> only_q);

Document obstruction_document(const ObstructionTrace& trace);
Document certificate_check_document(const std::string& certificate_json);

struct RhQuery {
  int genus_min = 2;
  int genus_max = 2;
};
Document rh_document(const GroupTable& g, const RhQuery& query, unsigned threads);

/// JSON-lines, one hit per line. The text form is a ranked table.
Document search_document(const SearchSpec& spec, unsigned threads, bool include_non_hits);

}  // namespace ijo
