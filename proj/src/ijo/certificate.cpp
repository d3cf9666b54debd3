#include "ijo/certificate.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <set>

namespace ijo {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr const char* kNote =
    "Contradiction means no faithful action of G on a product of Jacobians of this dimension exists; "
    "via the Clemens-Griffiths criterion this excludes rationality of any 3-fold whose intermediate "
    "Jacobian carries such an action.";

}  // namespace

std::string certificate_json(const ObstructionTrace& trace, int indent) {
  ordered_json doc;
  doc["v"] = kCertificateVersion;
  doc["instance"] = ordered_json{{"N", trace.instance.dimension},
                                 {"p", trace.instance.group.p},
                                 {"q", trace.instance.group.q},
                                 {"r", trace.instance.group.r},
                                 {"faithful", trace.instance.faithful}};
  auto rules = ordered_json::array();
  for (Rule r : trace.ruleset) rules.push_back(to_string(r));
  doc["ruleset"] = rules;
  auto steps = ordered_json::array();
  for (const auto& s : trace.steps) {
    ordered_json premises = ordered_json::object();
    for (const auto& [k, v] : s.premises) premises[k] = v;
    steps.push_back(ordered_json{{"rule", to_string(s.rule)}, {"premises", premises}, {"claim", s.claim}});
  }
  doc["steps"] = steps;
  doc["verdict"] = to_string(trace.verdict);
  doc["blockers"] = trace.blockers;
  doc["note"] = kNote;
  return doc.dump(indent);
}

// The replay below deliberately re-implements every side condition from the
// rule statements instead of calling into the engine.
namespace {

bool prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

std::int64_t power_mod(std::int64_t b, std::int64_t e, std::int64_t m) {
  __int128 acc = 1 % m, base = ((b % m) + m) % m;
  for (; e > 0; e >>= 1) {
    if (e & 1) acc = acc * base % m;
    base = base * base % m;
  }
  return static_cast<std::int64_t>(acc);
}

struct Failure {
  std::string why;
};

std::int64_t integer_field(const ordered_json& obj, const char* key, std::int64_t lo, std::int64_t hi) {
  if (!obj.is_object() || !obj.contains(key)) throw Failure{std::string("missing field '") + key + "'"};
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw Failure{std::string("field '") + key + "' is not an integer"};
  const auto x = v.get<std::int64_t>();
  if (x < lo || x > hi) throw Failure{std::string("field '") + key + "' out of range"};
  return x;
}

void expect_keys(const ordered_json& obj, std::initializer_list<const char*> keys) {
  if (!obj.is_object() || obj.size() != keys.size()) throw Failure{"premises have unexpected shape"};
  for (const char* k : keys)
    if (!obj.contains(k)) throw Failure{std::string("premise '") + k + "' missing"};
}

void require(bool ok, const std::string& why) {
  if (!ok) throw Failure{why};
}

}  // namespace

CertificateCheck verify_certificate(const std::string& json_text) {
  CertificateCheck check;
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    check.lines.push_back(std::string("FAIL parse: ") + e.what());
    return check;
  }

  try {
    require(doc.is_object(), "certificate is not a JSON object");
    require(integer_field(doc, "v", 0, 1000) == kCertificateVersion, "unsupported certificate version");
    const auto& inst = doc.contains("instance") ? doc.at("instance") : throw Failure{"missing instance"};
    const std::int64_t N = integer_field(inst, "N", 1, 1'000'000'000);
    const std::int64_t p = integer_field(inst, "p", 2, (std::int64_t{1} << 31) - 1);
    const std::int64_t q = integer_field(inst, "q", 2, (std::int64_t{1} << 31) - 1);
    const std::int64_t r = integer_field(inst, "r", 0, p - 1);
    require(inst.contains("faithful") && inst.at("faithful").is_boolean(), "instance.faithful must be a boolean");
    const bool faithful = inst.at("faithful").get<bool>();
    require(prime(p) && prime(q), "p and q must be prime");
    require(power_mod(r, q, p) == 1, "r^q != 1 mod p");

    std::set<std::string> ruleset;
    require(doc.contains("ruleset") && doc.at("ruleset").is_array(), "missing ruleset");
    for (const auto& id : doc.at("ruleset")) {
      require(id.is_string(), "rule ids must be strings");
      const auto s = id.get<std::string>();
      require(s.size() == 2 && s[0] == 'R' && s[1] >= '1' && s[1] <= '8', "unknown rule id " + s);
      ruleset.insert(s);
    }

    require(doc.contains("steps") && doc.at("steps").is_array(), "missing steps");
    bool have_block = false, have_factor = false, invariant = false, semidirect = false, closed = false;
    std::int64_t genus = 1;
    int index = 0;
    for (const auto& step : doc.at("steps")) {
      ++index;
      require(!closed, "step after the argument was already closed");
      require(step.is_object() && step.contains("rule") && step.at("rule").is_string(), "malformed step");
      require(step.contains("premises") && step.contains("claim") && step.at("claim").is_string(), "malformed step");
      const auto rule = step.at("rule").get<std::string>();
      const auto& pr = step.at("premises");
      const auto claim = step.at("claim").get<std::string>();
      require(ruleset.count(rule) != 0, "rule " + rule + " used but not in ruleset");
      std::string expected;

      if (rule == "R1") {
        expect_keys(pr, {"p", "faithful"});
        require(integer_field(pr, "p", 2, p) == p && faithful && integer_field(pr, "faithful", 0, 1) == 1,
                "R1 premises do not match a faithful action of Z/p");
        expected = claims::faithful_block(p);
        have_block = true;
      } else if (rule == "R2" && pr.contains("g_lower")) {
        expect_keys(pr, {"g_lower", "N"});
        require(have_factor, "genus gap used before the single-factor step");
        require(integer_field(pr, "g_lower", 1, N + 1'000'000'000) == genus, "g_lower does not match the replayed bound");
        require(integer_field(pr, "N", 1, N) == N, "N does not match the instance");
        require(genus > N, "genus gap inequality fails");
        expected = claims::genus_gap(genus, N);
        closed = true;
      } else if (rule == "R2") {
        expect_keys(pr, {"p", "N"});
        require(have_block, "R2 used before R1");
        require(integer_field(pr, "p", 2, p) == p && integer_field(pr, "N", 1, N) == N, "R2 premises do not match");
        require(p > N, "R2 needs p > N");
        expected = claims::single_factor(p, N);
        have_factor = true;
      } else if (rule == "R3") {
        expect_keys(pr, {"p", "bound"});
        require(have_factor, "R3 used before R2");
        require(integer_field(pr, "p", 2, p) == p && integer_field(pr, "bound", 0, 1000) == 6, "R3 premises do not match");
        require(p > 6, "R3 needs p > 6");
        genus = std::max<std::int64_t>(genus, 2);
        expected = claims::elliptic_exclusion(p);
      } else if (rule == "R4") {
        expect_keys(pr, {"p", "g_lower"});
        require(have_factor, "R4 used before R2");
        require(integer_field(pr, "p", 2, p) == p, "R4 premises do not match");
        require(integer_field(pr, "g_lower", 0, 1'000'000'000) == genus, "g_lower does not match the replayed bound");
        require(genus >= 2, "R4 needs g >= 2");
        require(p % 2 == 1, "R4 needs an odd-order cyclic group");
        // smallest g with p <= 4g + 2
        std::int64_t wiman = (p + 1) / 4;
        if (p > 4 * wiman + 2) ++wiman;
        require(p <= 4 * wiman + 2 && (wiman == 0 || p > 4 * (wiman - 1) + 2), "R4 bound arithmetic");
        genus = std::max(genus, wiman);
        expected = claims::wiman(p, genus);
      } else if (rule == "R5") {
        expect_keys(pr, {"q", "g_lower", "N"});
        require(have_factor, "R5 used before R2");
        require(integer_field(pr, "q", 2, q) == q && integer_field(pr, "N", 1, N) == N, "R5 premises do not match");
        require(integer_field(pr, "g_lower", 0, N) == genus, "g_lower does not match the replayed bound");
        require(q * genus > N, "R5 inequality q*g > N fails");
        expected = claims::orbit(q, genus, N);
        invariant = true;
      } else if (rule == "R6") {
        expect_keys(pr, {"p", "q", "r"});
        require(invariant, "R6 used before R5");
        require(integer_field(pr, "p", 2, p) == p && integer_field(pr, "q", 2, q) == q &&
                    integer_field(pr, "r", 0, p - 1) == r,
                "R6 premises do not match");
        require(r != 1, "R6 needs a nontrivial semidirect product");
        expected = claims::semidirect(p, q, r);
        semidirect = true;
      } else if (rule == "R7" || rule == "R8") {
        expect_keys(pr, {"p", "q", "g_lower", "N"});
        require(semidirect, rule + " used before R6");
        require(integer_field(pr, "p", 2, p) == p && integer_field(pr, "q", 2, q) == q &&
                    integer_field(pr, "N", 1, N) == N,
                rule + " premises do not match");
        require(integer_field(pr, "g_lower", 0, N) == genus, "g_lower does not match the replayed bound");
        require((p * q) % 2 == 1, rule + " needs |G| odd");
        if (rule == "R7") {
          require(genus >= 4, "R7 needs g >= 4");
          require(p * q > 9 * (N - 1), "R7 inequality |G| > 9(N-1) fails");
          expected = claims::schweizer(p, q, N);
        } else {
          require(genus >= 2, "R8 needs g >= 2");
          require(p * q > 84 * (N - 1), "R8 inequality |G| > 84(N-1) fails");
          expected = claims::hurwitz(p, q, N);
        }
        closed = true;
      } else {
        throw Failure{"unknown rule " + rule};
      }
      require(claim == expected, "claim text differs from the one implied by the premises: expected '" + expected + "'");
      check.lines.push_back("ok   step " + std::to_string(index) + " " + rule + ": " + claim);
    }

    require(doc.contains("verdict") && doc.at("verdict").is_string(), "missing verdict");
    check.verdict = doc.at("verdict").get<std::string>();
    if (check.verdict == "Contradiction") {
      require(closed, "verdict Contradiction but no step closes the argument");
    } else if (check.verdict == "Inconclusive") {
      require(!closed, "verdict Inconclusive but the steps already close the argument");
    } else {
      throw Failure{"unknown verdict " + check.verdict};
    }
    check.accepted = true;
    check.lines.push_back("ACCEPTED: " + std::to_string(index) + " steps replayed, verdict " + check.verdict);
  } catch (const Failure& f) {
    check.accepted = false;
    check.lines.push_back("FAIL " + f.why);
  } catch (const std::exception& e) {
    check.accepted = false;
    check.lines.push_back(std::string("FAIL ") + e.what());
  }
  return check;
}

}  // namespace ijo
