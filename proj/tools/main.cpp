// ijobstruct command-line front end. Talks to the library only through the C API.

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ijobstruct/ijobstruct.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitExpectation = 1;
constexpr int kExitUsage = 2;

struct InputError {
  std::string message;
};

using MatrixPtr = std::unique_ptr<ijo_matrix, decltype(&ijo_matrix_free)>;
using DocumentPtr = std::unique_ptr<ijo_document, decltype(&ijo_document_free)>;

void check(ijo_status s) {
  if (s != IJO_OK) throw InputError{std::string(ijo_status_name(s)) + ": " + ijo_last_error()};
}

std::string read_all(const std::string& path) {
  if (path.empty() || path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError{"cannot open " + path};
  return {std::istreambuf_iterator<char>(in), {}};
}

struct MatrixSource {
  std::string path;
  std::string preset;
  std::string inline_text;

  void attach(CLI::App* cmd) {
    cmd->add_option("file", path, "Matrix file (\"n d\" then n+1 rows); stdin if omitted or -");
    auto* p = cmd->add_option("--preset", preset, "Built-in matrix")
                  ->check(CLI::IsMember({"klein", "fermat", "klein-curve", "cone", "chain"}));
    auto* m = cmd->add_option("--matrix", inline_text, "Inline matrix; ';' may separate rows");
    p->excludes(m);
  }

  MatrixPtr load() const {
    ijo_matrix* raw = nullptr;
    if (!preset.empty()) {
      check(ijo_matrix_preset(preset.c_str(), &raw));
    } else {
      std::string text = inline_text.empty() ? read_all(path) : inline_text;
      std::replace(text.begin(), text.end(), ';', '\n');
      check(ijo_matrix_parse(text.c_str(), &raw));
    }
    return MatrixPtr(raw, &ijo_matrix_free);
  }
};

std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::string tok;
  std::istringstream in(s);
  while (std::getline(in, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InputError{"bad integer '" + tok + "' in list"};
    }
  }
  return out;
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetry, Hodge and obstruction computations for Delsarte hypersurfaces"};
  app.require_subcommand(1);
  app.fallthrough();

  bool json = false, timestamp = false;
  std::string expect;
  int threads = 0;
  app.add_flag("--json", json, "Emit JSON instead of text");
  app.add_option("--expect", expect, "Exit 1 unless the verdict equals this word (case-insensitive)");
  app.add_option("--threads", threads, "Worker threads for search and rh-oracle (default: $IJOBSTRUCT_THREADS)")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--timestamp", timestamp, "Report the generation time on stderr");
  app.set_version_flag("--version", std::string(ijo_version()));

  MatrixSource sym_src, smooth_src, char_src;
  auto* sym = app.add_subcommand("symmetry", "Diagonal and permutation symmetries");
  sym_src.attach(sym);
  auto* smooth = app.add_subcommand("smooth", "Exact smoothness check with witness or certificate");
  smooth_src.attach(smooth);

  int hn = 4, hd = 4;
  auto* hodge = app.add_subcommand("hodge", "Primitive middle Hodge numbers of a smooth hypersurface");
  hodge->add_option("-n", hn, "Ambient dimension")->required();
  hodge->add_option("-d", hd, "Degree")->required();

  std::string char_weights;
  std::int64_t char_modulus = 0;
  int char_q = -1;
  auto* character = app.add_subcommand("character", "Characters of a diagonal automorphism on middle cohomology");
  char_src.attach(character);
  auto* wopt = character->add_option("--weights", char_weights, "Comma-separated weights (default: diagonal generator)");
  character->add_option("--modulus", char_modulus, "Modulus of the weights")->needs(wopt);
  wopt->needs(character->get_option("--modulus"));
  character->add_option("--q", char_q, "Only the piece h^{n-1-q,q}");

  std::int64_t dim = 0, op = 0, oq = 0, orr = 0;
  std::string rules;
  bool not_faithful = false;
  auto* obstruct = app.add_subcommand("obstruct", "Run the obstruction rules and emit a certificate");
  obstruct->add_option("--dim", dim, "Dimension N of the abelian variety")->required();
  obstruct->add_option("--p", op, "Prime order of the normal cyclic subgroup")->required();
  obstruct->add_option("--q", oq, "Prime order of the quotient")->required();
  obstruct->add_option("--r", orr, "Conjugation exponent, any representative mod p")->required();
  obstruct->add_option("--rules", rules, "Rule set, e.g. R1-R7 or R1-R6,R8");
  obstruct->add_flag("--not-faithful", not_faithful, "Do not assume Z/p acts faithfully");

  std::string group, metacyclic_args;
  int cyclic_m = 0, genus = 0, gmin = 0, gmax = 0;
  auto* rh = app.add_subcommand("rh-oracle", "Decide whether a small group acts on a surface of given genus");
  auto* g_group = rh->add_option("--group", group, "cyclic:m or metacyclic:p,q,r");
  auto* g_cyc = rh->add_option("--cyclic", cyclic_m, "Cyclic group of order m");
  auto* g_meta = rh->add_option("--metacyclic", metacyclic_args, "p,q,r");
  g_group->excludes(g_cyc)->excludes(g_meta);
  g_cyc->excludes(g_meta);
  auto* g_one = rh->add_option("--genus", genus, "Single genus");
  auto* g_lo = rh->add_option("--gmin", gmin, "Smallest genus of a range");
  auto* g_hi = rh->add_option("--gmax", gmax, "Largest genus of a range");
  g_one->excludes(g_lo)->excludes(g_hi);
  g_lo->needs(g_hi);
  g_hi->needs(g_lo);

  int sn = 4, sd = 4;
  std::int64_t threshold = 31;
  std::string search_rules;
  bool all = false;
  auto* search = app.add_subcommand("search", "Enumerate Delsarte hypersurfaces and rank them by the obstruction rules");
  search->add_option("-n", sn, "Ambient dimension (even)");
  search->add_option("-d", sd, "Degree");
  search->add_option("--threshold", threshold, "Minimum prime for the diagonal group");
  search->add_option("--rules", search_rules, "Rule set for the engine");
  search->add_flag("--all", all, "Also list non-hits");

  std::string cert_path;
  auto* verify = app.add_subcommand("verify-certificate", "Replay an obstruction certificate");
  verify->add_option("file", cert_path, "Certificate JSON; stdin if omitted or -");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    ijo_document* raw = nullptr;
    if (*sym) {
      check(ijo_symmetry(sym_src.load().get(), &raw));
    } else if (*smooth) {
      check(ijo_smoothness(smooth_src.load().get(), &raw));
    } else if (*hodge) {
      check(ijo_hodge(hn, hd, &raw));
    } else if (*character) {
      const auto m = char_src.load();
      std::vector<std::int64_t> w;
      if (!char_weights.empty()) {
        w = parse_int_list(char_weights);
        if (static_cast<int>(w.size()) != ijo_matrix_n(m.get()) + 1)
          throw InputError{"expected " + std::to_string(ijo_matrix_n(m.get()) + 1) + " weights"};
      }
      check(ijo_character(m.get(), w.empty() ? nullptr : w.data(), char_modulus, char_q, &raw));
    } else if (*obstruct) {
      ijo_obstruct_params params{dim, op, oq, orr, not_faithful ? 0 : 1, rules.empty() ? nullptr : rules.c_str()};
      check(ijo_obstruct(&params, &raw));
    } else if (*rh) {
      std::string spec = group;
      if (*g_cyc) spec = "cyclic:" + std::to_string(cyclic_m);
      if (*g_meta) spec = "metacyclic:" + metacyclic_args;
      if (spec.empty()) throw InputError{"rh-oracle needs --group, --cyclic or --metacyclic"};
      if (!*g_one && !*g_lo) throw InputError{"rh-oracle needs --genus or --gmin/--gmax"};
      const int lo = *g_one ? genus : gmin, hi = *g_one ? genus : gmax;
      check(ijo_rh_oracle(spec.c_str(), lo, hi, threads, &raw));
    } else if (*search) {
      ijo_search_params params{sn, sd, threshold, search_rules.empty() ? nullptr : search_rules.c_str(), threads,
                               all ? 1 : 0};
      check(ijo_search(&params, &raw));
    } else if (*verify) {
      check(ijo_verify_certificate(read_all(cert_path).c_str(), &raw));
    }
    const DocumentPtr doc(raw, &ijo_document_free);
    std::cout << (json ? ijo_document_json(doc.get()) : ijo_document_text(doc.get()));
    std::cout.flush();
    if (timestamp) std::cerr << "generated " << utc_now() << "\n";
    if (!expect.empty() && lower(expect) != lower(ijo_document_verdict(doc.get()))) {
      std::cerr << "expected verdict '" << expect << "', got '" << ijo_document_verdict(doc.get()) << "'\n";
      return kExitExpectation;
    }
    return kExitOk;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitUsage;
  }
}
