#include "ijobstruct/ijobstruct.h"

#include <charconv>
#include <new>
#include <optional>
#include <string>
#include <string_view>

#include "ijo/error.hpp"
#include "ijo/hodge.hpp"
#include "ijo/parallel.hpp"
#include "ijo/report.hpp"

struct ijo_matrix {
  ijo::ExponentMatrix m;
};

struct ijo_document {
  ijo::Document doc;
};

namespace {

thread_local std::string last_error;

ijo_status status_of(ijo::ErrorCode code) {
  using ijo::ErrorCode;
  switch (code) {
    case ErrorCode::Parse: return IJO_ERR_PARSE;
    case ErrorCode::SingularMatrix: return IJO_ERR_SINGULAR_MATRIX;
    case ErrorCode::NotNormalizing: return IJO_ERR_NOT_NORMALIZING;
    case ErrorCode::DimensionMismatch: return IJO_ERR_DIMENSION_MISMATCH;
    case ErrorCode::InvalidGroup: return IJO_ERR_INVALID_GROUP;
    case ErrorCode::UnknownRule: return IJO_ERR_UNKNOWN_RULE;
    case ErrorCode::Unsupported: return IJO_ERR_UNSUPPORTED;
    case ErrorCode::InvalidArgument: return IJO_ERR_INVALID_ARGUMENT;
  }
  return IJO_ERR_INTERNAL;
}

ijo_status fail(ijo_status s, std::string msg) {
  last_error = std::move(msg);
  return s;
}

template <class F>
ijo_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const ijo::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(IJO_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(IJO_ERR_INTERNAL, e.what());
  }
}

ijo_status emit(ijo::Document doc, ijo_document** out) {
  *out = new ijo_document{std::move(doc)};
  return IJO_OK;
}

ijo::RuleSet rules_or_default(const char* rules) {
  return rules ? ijo::parse_ruleset(rules) : ijo::default_ruleset();
}

// "cyclic:m" or "metacyclic:p,q,r"
ijo::GroupTable parse_group(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw ijo::Error(ijo::ErrorCode::Parse, "group must look like cyclic:m or metacyclic:p,q,r");
  const auto kind = spec.substr(0, colon);
  std::vector<long> args;
  auto rest = spec.substr(colon + 1);
  while (true) {
    long v = 0;
    const auto comma = rest.find(',');
    const auto tok = rest.substr(0, comma);
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty())
      throw ijo::Error(ijo::ErrorCode::Parse, "bad integer '" + std::string(tok) + "' in group spec");
    args.push_back(v);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  auto small = [](long v) {
    if (v < -ijo::GroupTable::kMaxOrder || v > ijo::GroupTable::kMaxOrder)
      throw ijo::Error(ijo::ErrorCode::InvalidArgument, "group parameter out of range");
    return static_cast<int>(v);
  };
  if (kind == "cyclic" && args.size() == 1) return ijo::GroupTable::cyclic(small(args[0]));
  if (kind == "metacyclic" && args.size() == 3)
    return ijo::GroupTable::metacyclic(small(args[0]), small(args[1]), small(args[2]));
  throw ijo::Error(ijo::ErrorCode::Parse, "group must look like cyclic:m or metacyclic:p,q,r");
}

}  // namespace

extern "C" {

const char* ijo_version(void) { return "1.0.0"; }

const char* ijo_status_name(ijo_status status) {
  switch (status) {
    case IJO_OK: return "ok";
    case IJO_ERR_PARSE: return "parse error";
    case IJO_ERR_SINGULAR_MATRIX: return "singular matrix";
    case IJO_ERR_NOT_NORMALIZING: return "not normalizing";
    case IJO_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case IJO_ERR_INVALID_GROUP: return "invalid group";
    case IJO_ERR_UNKNOWN_RULE: return "unknown rule";
    case IJO_ERR_UNSUPPORTED: return "unsupported";
    case IJO_ERR_INVALID_ARGUMENT: return "invalid argument";
    case IJO_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* ijo_last_error(void) { return last_error.c_str(); }

ijo_status ijo_matrix_parse(const char* text, ijo_matrix** out) {
  if (!text || !out) return fail(IJO_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    try {
      *out = new ijo_matrix{ijo::ExponentMatrix::parse(text)};
    } catch (const ijo::Error& e) {
      // A well-formed file describing an invalid matrix is still bad input.
      throw ijo::Error(ijo::ErrorCode::Parse, e.what());
    }
    return IJO_OK;
  });
}

ijo_status ijo_matrix_preset(const char* name, ijo_matrix** out) {
  if (!name || !out) return fail(IJO_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const std::string_view s(name);
    namespace P = ijo::presets;
    if (s == "klein") *out = new ijo_matrix{P::klein_threefold()};
    else if (s == "fermat") *out = new ijo_matrix{P::fermat(4, 4)};
    else if (s == "klein-curve") *out = new ijo_matrix{P::klein_curve()};
    else if (s == "cone") *out = new ijo_matrix{P::cone_threefold()};
    else if (s == "chain") *out = new ijo_matrix{P::chain_threefold()};
    else return fail(IJO_ERR_INVALID_ARGUMENT, "unknown preset '" + std::string(s) + "'");
    return IJO_OK;
  });
}

ijo_status ijo_matrix_from_rows(int n, int degree, const int* entries, ijo_matrix** out) {
  if (!entries || !out || n < 1 || n > 16) return fail(IJO_ERR_INVALID_ARGUMENT, "bad matrix arguments");
  return guarded([&] {
    std::vector<ijo::ExponentRow> rows(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) rows[k].assign(entries + k * (n + 1), entries + (k + 1) * (n + 1));
    *out = new ijo_matrix{ijo::ExponentMatrix(degree, std::move(rows))};
    return IJO_OK;
  });
}

int ijo_matrix_n(const ijo_matrix* m) { return m ? m->m.n() : -1; }
int ijo_matrix_degree(const ijo_matrix* m) { return m ? m->m.degree() : -1; }

int ijo_matrix_entry(const ijo_matrix* m, int row, int col) {
  if (!m || row < 0 || col < 0 || row > m->m.n() || col > m->m.n()) return -1;
  return m->m.row(static_cast<std::size_t>(row))[static_cast<std::size_t>(col)];
}

ijo_status ijo_matrix_canonical(const ijo_matrix* m, ijo_matrix** out) {
  if (!m || !out) return fail(IJO_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new ijo_matrix{ijo::canonical_form(m->m)};
    return IJO_OK;
  });
}

void ijo_matrix_free(ijo_matrix* m) { delete m; }

ijo_status ijo_symmetry(const ijo_matrix* m, ijo_document** out) {
  if (!m || !out) return fail(IJO_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { return emit(ijo::symmetry_document(m->m), out); });
}

ijo_status ijo_smoothness(const ijo_matrix* m, ijo_document** out) {
  if (!m || !out) return fail(IJO_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { return emit(ijo::smoothness_document(m->m), out); });
}

ijo_status ijo_hodge(int n, int degree, ijo_document** out) {
  if (!out) return fail(IJO_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { return emit(ijo::hodge_document(n, degree), out); });
}

ijo_status ijo_hodge_number(int n, int degree, int q, int64_t* out) {
  if (!out) return fail(IJO_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto h = ijo::hodge_numbers(n, degree);
    if (q < 0 || q >= n) return fail(IJO_ERR_INVALID_ARGUMENT, "q must be in [0, n-1]");
    *out = h.numbers[static_cast<std::size_t>(q)];
    return IJO_OK;
  });
}

ijo_status ijo_character(const ijo_matrix* m, const int64_t* weights, int64_t modulus, int q, ijo_document** out) {
  if (!m || !out) return fail(IJO_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::optional<ijo::WeightClass> w;
    if (weights) {
      if (modulus < 1) return fail(IJO_ERR_INVALID_ARGUMENT, "modulus must be positive");
      ijo::WeightClass c;
      c.modulus = modulus;
      for (std::size_t i = 0; i < m->m.size(); ++i) c.weights.push_back(ijo::mod(weights[i], modulus));
      w = c;
    }
    return emit(ijo::character_document(m->m, w, q < 0 ? std::nullopt : std::optional<int>(q)), out);
  });
}

ijo_status ijo_obstruct(const ijo_obstruct_params* params, ijo_document** out) {
  if (!params || !out) return fail(IJO_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const ijo::ProblemInstance inst{params->dimension, ijo::MetacyclicGroup::make(params->p, params->q, params->r),
                                    params->faithful != 0};
    return emit(ijo::obstruction_document(ijo::obstruct(inst, rules_or_default(params->rules))), out);
  });
}

ijo_status ijo_verify_certificate(const char* certificate_json, ijo_document** out) {
  if (!certificate_json || !out) return fail(IJO_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { return emit(ijo::certificate_check_document(certificate_json), out); });
}

ijo_status ijo_rh_oracle(const char* group, int genus_min, int genus_max, int threads, ijo_document** out) {
  if (!group || !out) return fail(IJO_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto g = parse_group(group);
    return emit(ijo::rh_document(g, {genus_min, genus_max}, ijo::resolve_threads(threads)), out);
  });
}

ijo_status ijo_search(const ijo_search_params* params, ijo_document** out) {
  if (!params || !out) return fail(IJO_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    ijo::SearchSpec spec;
    spec.n = params->n;
    spec.degree = params->degree;
    spec.threshold = params->threshold;
    spec.ruleset = rules_or_default(params->rules);
    return emit(ijo::search_document(spec, ijo::resolve_threads(params->threads), params->include_non_hits != 0), out);
  });
}

const char* ijo_document_json(const ijo_document* doc) { return doc ? doc->doc.json.c_str() : ""; }
const char* ijo_document_text(const ijo_document* doc) { return doc ? doc->doc.text.c_str() : ""; }
const char* ijo_document_verdict(const ijo_document* doc) { return doc ? doc->doc.verdict.c_str() : ""; }
void ijo_document_free(ijo_document* doc) { delete doc; }

}  // extern "C"
