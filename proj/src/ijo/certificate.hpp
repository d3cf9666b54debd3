#pragma once

#include <string>
#include <vector>

#include "ijo/obstruction.hpp"

namespace ijo {

inline constexpr int kCertificateVersion = 1;

/// Serializes a trace as a certificate document:
/// {"v", "instance": {N, p, q, r, faithful}, "ruleset", "steps": [{rule,
/// premises, claim}], "verdict", "blockers", "note"} with that key order.
std::string certificate_json(const ObstructionTrace& trace, int indent = -1);

struct CertificateCheck {
  bool accepted = false;
  std::string verdict;
  std::vector<std::string> lines;  // one per replayed step, then a summary
};

/// Replays a certificate from its JSON text. Each step is re-derived from its
/// recorded premises and the instance alone: premises must match the
/// instance and the running genus bound, side conditions are re-evaluated,
/// and the claim text must equal the one implied by the premises. A
/// Contradiction verdict is accepted only if the final step closes the
/// argument and all rules it depends on were replayed before it.
CertificateCheck verify_certificate(const std::string& json_text);

}  // namespace ijo
