#include "ijo/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>

#include "ijo/certificate.hpp"
#include "ijo/error.hpp"
#include "ijo/hodge.hpp"

namespace ijo {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string join(const std::vector<std::int64_t>& xs, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + std::to_string(xs[i]);
  return out;
}

template <class T>
std::string join_ints(const std::vector<T>& xs, const char* sep = ", ") {
  return join(std::vector<std::int64_t>(xs.begin(), xs.end()), sep);
}

ordered_json weight_json(const WeightClass& w) {
  return ordered_json{{"modulus", w.modulus}, {"weights", w.weights}, {"mu", w.common_weight}, {"order", w.order()}};
}

std::string weight_text(const WeightClass& w) {
  return "(" + join(w.weights) + ") mod " + std::to_string(w.modulus) + ", mu = " + std::to_string(w.common_weight);
}

ordered_json matrix_json(const ExponentMatrix& m) {
  return ordered_json{{"n", m.n()}, {"d", m.degree()}, {"rows", m.rows()}};
}

std::string mpz_list(const std::vector<mpz_class>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + xs[i].get_str();
  return out;
}

}  // namespace

Document symmetry_document(const ExponentMatrix& m) {
  const DiagonalGroup dg = diagonal_symmetry_group(m);
  const auto perms = permutation_symmetries(m);

  ordered_json j;
  j["matrix"] = matrix_json(m);
  j["det"] = determinant(m.to_integer_matrix()).get_str();
  std::vector<std::string> factors;
  for (const auto& f : dg.group.invariant_factors) factors.push_back(f.get_str());
  ordered_json diag{{"order", dg.group.order().get_str()}, {"invariant_factors", factors}, {"cyclic", dg.group.is_cyclic()}};
  auto gens = ordered_json::array();
  for (const auto& g : dg.generators) gens.push_back(weight_json(g));
  diag["generators"] = gens;
  j["diagonal"] = diag;

  std::ostringstream t;
  t << "diagonal group: order " << dg.group.order().get_str() << ", invariant factors [" << mpz_list(dg.group.invariant_factors)
    << "]\n";
  for (std::size_t i = 0; i < dg.generators.size(); ++i) t << "  generator " << i << ": " << weight_text(dg.generators[i]) << "\n";

  auto pj = ordered_json::array();
  t << "permutation symmetries: " << perms.size() << "\n";
  for (const auto& s : perms) {
    ordered_json e{{"image", s.image}, {"order", s.order()}};
    t << "  [" << join_ints(s.image) << "] order " << s.order();
    auto conj = ordered_json::array();
    for (const auto& g : dg.generators) {
      try {
        const auto r = conjugation_exponent(m, g, s);
        conj.push_back(r);
        t << ", r = " << r << " mod " << g.order();
      } catch (const Error&) {
        conj.push_back(nullptr);
        t << ", does not normalize";
      }
    }
    e["conjugation"] = conj;
    pj.push_back(e);
    t << "\n";
  }
  j["permutations"] = pj;
  return {j.dump(2) + "\n", t.str(), dg.group.is_cyclic() ? "cyclic" : "noncyclic"};
}

Document smoothness_document(const ExponentMatrix& m) {
  const SmoothnessReport rep = smoothness_check(m);
  ordered_json j;
  j["matrix"] = matrix_json(m);
  j["verdict"] = to_string(rep.verdict);
  std::ostringstream t;
  t << "verdict: " << to_string(rep.verdict) << "\n";
  if (rep.witness) {
    const auto& w = *rep.witness;
    auto pt = ordered_json::array();
    for (const auto& z : w.point) pt.push_back(ordered_json::array({z.real(), z.imag()}));
    j["witness"] = ordered_json{{"support", w.support}, {"point", pt}, {"gradient_norm", w.gradient_norm}};
    t << "witness on support {" << join_ints(w.support) << "}, |grad f| = " << w.gradient_norm << "\n  x = (";
    for (std::size_t i = 0; i < w.point.size(); ++i) t << (i ? ", " : "") << w.point[i].real() << "+" << w.point[i].imag() << "i";
    t << ")\n";
  } else {
    j["witness"] = nullptr;
  }
  if (rep.verdict == Smoothness::Unsupported) {
    j["unsupported_reason"] = rep.unsupported_reason;
    t << "unsupported: " << rep.unsupported_reason << "\n";
  }
  auto cert = ordered_json::array();
  for (const auto& s : rep.certificate) {
    cert.push_back(ordered_json{{"support", s.support}, {"reason", s.reason}});
    t << "  {" << join_ints(s.support) << "}: " << s.reason << "\n";
  }
  j["strata"] = cert;
  return {j.dump(2) + "\n", t.str(), to_string(rep.verdict)};
}

Document hodge_document(int n, int d) {
  const HodgeVector h = hodge_numbers(n, d);
  ordered_json j;
  j["n"] = n;
  j["d"] = d;
  auto nums = ordered_json::object();
  std::string text;
  for (int q = 0; q < n; ++q) {
    const std::string key = "h^{" + std::to_string(n - 1 - q) + "," + std::to_string(q) + "}";
    nums[key] = h.numbers[static_cast<std::size_t>(q)];
    text += (q ? " " : "") + key + "=" + std::to_string(h.numbers[static_cast<std::size_t>(q)]);
  }
  j["numbers"] = nums;
  if ((n - 1) % 2 == 1) j["jacobian_dimension"] = h.jacobian_dimension();
  return {j.dump(2) + "\n", text + "\n", std::to_string(h.jacobian_dimension())};
}

Document character_document(const ExponentMatrix& m, const std::optional<WeightClass>& given, std::optional<int> only_q) {
  WeightClass w;
  if (given) {
    if (!is_invariant(m, given->weights, given->modulus))
      throw Error(ErrorCode::InvalidArgument, "weight vector does not preserve f up to scalar");
    w = *given;
    w.common_weight = *is_invariant(m, given->weights, given->modulus);
  } else {
    const DiagonalGroup dg = diagonal_symmetry_group(m);
    if (dg.generators.empty()) throw Error(ErrorCode::InvalidArgument, "trivial diagonal group");
    w = dg.generators.back();
  }
  if (only_q && (*only_q < 0 || *only_q >= m.n()))
    throw Error(ErrorCode::InvalidArgument, "piece index q must be in [0, n-1]");

  std::vector<CharacterMultiset> pieces;
  for (int q = 0; q < m.n(); ++q) pieces.push_back(diagonal_character(m, w, q));
  const bool faithful = faithfulness_check(pieces);

  ordered_json j;
  j["matrix"] = matrix_json(m);
  j["class"] = weight_json(w);
  auto pj = ordered_json::array();
  std::ostringstream t;
  t << "class " << weight_text(w) << "\n";
  for (int q = 0; q < m.n(); ++q) {
    if (only_q && *only_q != q) continue;
    const auto& c = pieces[static_cast<std::size_t>(q)];
    auto mult = ordered_json::object();
    t << "h^{" << m.n() - 1 - q << "," << q << "} total " << c.total() << ":";
    for (const auto& [e, k] : c.multiplicity) {
      mult[std::to_string(e)] = k;
      t << " " << e << (k > 1 ? "^" + std::to_string(k) : "");
    }
    t << "\n";
    pj.push_back(ordered_json{{"q", q}, {"total", c.total()}, {"multiplicity", mult}});
  }
  j["pieces"] = pj;
  j["faithful"] = faithful;
  t << "faithful: " << (faithful ? "yes" : "no") << "\n";
  return {j.dump(2) + "\n", t.str(), faithful ? "faithful" : "unfaithful"};
}

Document obstruction_document(const ObstructionTrace& trace) {
  std::ostringstream t;
  const auto& g = trace.instance.group;
  t << "instance: N = " << trace.instance.dimension << ", G = Z/" << g.p << " x| Z/" << g.q << ", r = " << g.r
    << (trace.instance.faithful ? ", faithful" : ", not faithful") << "\n";
  for (const auto& s : trace.steps) t << "  " << to_string(s.rule) << ": " << s.claim << "\n";
  for (const auto& b : trace.blockers) t << "  blocked: " << b << "\n";
  t << "verdict: " << to_string(trace.verdict) << "\n";
  return {certificate_json(trace, 2) + "\n", t.str(), to_string(trace.verdict)};
}

Document certificate_check_document(const std::string& text) {
  const CertificateCheck c = verify_certificate(text);
  ordered_json j{{"accepted", c.accepted}, {"verdict", c.verdict}, {"lines", c.lines}};
  std::string t;
  for (const auto& l : c.lines) t += l + "\n";
  return {j.dump(2) + "\n", t, c.accepted ? "accepted" : "rejected"};
}

Document rh_document(const GroupTable& g, const RhQuery& query, unsigned threads) {
  if (query.genus_min < 2 || query.genus_max < query.genus_min || query.genus_max > kDefaultGenusCap)
    throw Error(ErrorCode::InvalidArgument,
                "genus range must satisfy 2 <= gmin <= gmax <= " + std::to_string(kDefaultGenusCap));
  ordered_json j;
  j["group"] = g.name();
  j["order"] = g.size();
  auto rows = ordered_json::array();
  std::ostringstream t;
  t << "group " << g.name() << " of order " << g.size() << "\n";
  bool any = false;
  for (int genus = query.genus_min; genus <= query.genus_max; ++genus) {
    const ActionSearch a = search_action(g, genus, threads);
    ordered_json row{{"genus", genus}};
    auto sigs = ordered_json::array();
    for (const auto& s : a.signatures) sigs.push_back(s.to_string());
    row["signatures"] = sigs;
    row["exists"] = a.realized.has_value();
    t << "  g = " << genus << ": " << a.signatures.size() << " signature(s)";
    if (a.realized) {
      any = true;
      row["realized"] = a.realized->to_string();
      auto lbl = [&](const std::vector<int>& xs) {
        auto arr = ordered_json::array();
        for (int x : xs) arr.push_back(g.label(x));
        return arr;
      };
      row["witness"] = ordered_json{{"a", lbl(a.witness->a)}, {"b", lbl(a.witness->b)}, {"c", lbl(a.witness->c)}};
      t << ", realized by " << a.realized->to_string() << " with c = (";
      for (std::size_t i = 0; i < a.witness->c.size(); ++i) t << (i ? ", " : "") << g.label(a.witness->c[i]);
      t << ")";
    } else {
      row["realized"] = nullptr;
      row["witness"] = nullptr;
      t << ", no action";
    }
    t << "\n";
    rows.push_back(row);
  }
  j["genera"] = rows;
  j["exists"] = any;
  return {j.dump(2) + "\n", t.str(), any ? "exists" : "none"};
}

Document search_document(const SearchSpec& spec, unsigned threads, bool include_non_hits) {
  const auto reports = include_non_hits ? evaluate_all(spec, threads) : search(spec, threads);
  std::string json, text;
  std::size_t hits = 0;
  std::ostringstream t;
  t << "rank verdict        p    q  r     N   rows\n";
  for (const auto& rep : reports) {
    json += candidate_json_line(rep) + "\n";
    if (!rep.hit) continue;
    ++hits;
    std::string rows;
    for (const auto& r : rep.matrix.rows()) rows += (rows.empty() ? "" : " ") + join_ints(r, "");
    char line[160];
    std::snprintf(line, sizeof line, "%4zu %-13s %4lld %4lld %-5lld %-4lld %s\n", hits, to_string(*rep.verdict),
                  static_cast<long long>(*rep.p), static_cast<long long>(*rep.q), static_cast<long long>(*rep.r),
                  static_cast<long long>(rep.dimension), rows.c_str());
    t << line;
  }
  t << hits << " hit(s)";
  if (include_non_hits) t << " among " << reports.size() << " candidates";
  t << "\n";
  return {json, t.str(), hits ? "hits" : "empty"};
}

}  // namespace ijo
