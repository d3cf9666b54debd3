#include "ijo/rh_oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "ijo/error.hpp"
#include "ijo/exact.hpp"
#include "ijo/parallel.hpp"

namespace ijo {

GroupTable::GroupTable(std::string name, int n, int p, std::vector<int> table)
    : name_(std::move(name)), n_(n), p_(p), table_(std::move(table)), inverse_(n), order_(n) {
  for (int a = 0; a < n_; ++a) {
    for (int b = 0; b < n_; ++b)
      if (mul(a, b) == 0) {
        inverse_[a] = b;
        break;
      }
    int k = 1;
    int x = a;
    while (x != 0) {
      x = mul(x, a);
      ++k;
    }
    order_[a] = k;
  }
}

GroupTable GroupTable::cyclic(int m) {
  if (m < 1 || m > kMaxOrder) throw Error(ErrorCode::InvalidArgument, "cyclic group order out of range");
  std::vector<int> table(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) table[static_cast<std::size_t>(a) * m + b] = (a + b) % m;
  return GroupTable("Z/" + std::to_string(m), m, m, std::move(table));
}

GroupTable GroupTable::metacyclic(int p, int q, int r) {
  if (p < 1 || q < 1 || static_cast<long>(p) * q > kMaxOrder)
    throw Error(ErrorCode::InvalidArgument, "metacyclic group order out of range");
  r = static_cast<int>(mod(r, p));
  if (pow_mod(r, q, p) != 1 % p) throw Error(ErrorCode::InvalidGroup, "r^q != 1 mod p");
  if (std::gcd(r, p) != 1 && p > 1) throw Error(ErrorCode::InvalidGroup, "r must be a unit mod p");
  const int n = p * q;
  std::vector<int> rpow(q);
  for (int j = 0; j < q; ++j) rpow[j] = static_cast<int>(pow_mod(r, j, p));
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const int i = x % p, j = x / p, i2 = y % p, j2 = y / p;
      const int ni = static_cast<int>((i + static_cast<long>(rpow[j]) * i2) % p);
      const int nj = (j + j2) % q;
      table[static_cast<std::size_t>(x) * n + y] = ni + p * nj;
    }
  return GroupTable("Z/" + std::to_string(p) + " x| Z/" + std::to_string(q) + " (r=" + std::to_string(r) + ")", n, p,
                    std::move(table));
}

std::vector<int> GroupTable::element_orders() const {
  std::set<int> s;
  for (int a = 0; a < n_; ++a)
    if (order_[a] > 1) s.insert(order_[a]);
  return {s.begin(), s.end()};
}

std::vector<int> GroupTable::class_representatives() const {
  std::vector<int> rep(n_, -1);
  std::vector<int> out;
  for (int a = 0; a < n_; ++a) {
    if (rep[a] != -1) continue;
    out.push_back(a);
    for (int x = 0; x < n_; ++x) rep[mul(mul(x, a), inverse(x))] = a;
  }
  return out;
}

bool GroupTable::is_associative() const {
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      for (int c = 0; c < n_; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
  return true;
}

std::string GroupTable::label(int a) const {
  if (p_ == n_) return std::to_string(a);
  return "(" + std::to_string(a % p_) + "," + std::to_string(a / p_) + ")";
}

std::string Signature::to_string() const {
  std::ostringstream out;
  out << "(" << h << ";";
  for (std::size_t i = 0; i < periods.size(); ++i) out << (i ? "," : " ") << periods[i];
  out << ")";
  return out.str();
}

std::optional<long> riemann_hurwitz_value(int group_order, int h, const std::vector<int>& periods) {
  long t = static_cast<long>(group_order) * (2L * h - 2);
  for (int m : periods) {
    if (m < 2 || group_order % m != 0) return std::nullopt;
    t += group_order - group_order / m;
  }
  return t;
}

std::vector<Signature> signatures_for_genus_range(const GroupTable& g, int gmax) {
  if (gmax < 2) throw Error(ErrorCode::InvalidArgument, "gmax must be at least 2");
  const long n = g.size();
  const long max_t = 2L * gmax - 2;
  const auto orders = g.element_orders();
  std::vector<Signature> out;
  std::vector<int> periods;

  for (int h = 0; n * (2L * h - 2) <= max_t; ++h) {
    auto rec = [&](auto&& self, std::size_t start, long t) -> void {
      if (t >= 2 && t % 2 == 0) out.push_back({static_cast<int>(t / 2 + 1), h, periods});
      for (std::size_t i = start; i < orders.size(); ++i) {
        const long next = t + n - n / orders[i];
        if (next > max_t) break;
        periods.push_back(orders[i]);
        self(self, i, next);
        periods.pop_back();
      }
    };
    rec(rec, 0, n * (2L * h - 2));
  }
  std::sort(out.begin(), out.end(), [](const Signature& a, const Signature& b) {
    return std::tie(a.genus, a.h, a.periods) < std::tie(b.genus, b.h, b.periods);
  });
  return out;
}

namespace {

// Interned subgroups, each stored as a membership bitmap with a generating set.
class SubgroupLattice {
 public:
  explicit SubgroupLattice(const GroupTable& g) : g_(g) {
    std::vector<char> trivial(g.size(), 0);
    trivial[0] = 1;
    intern(std::move(trivial), {});
  }

  int join(int sub, int x) {
    const long key = static_cast<long>(sub) * g_.size() + x;
    if (auto it = join_memo_.find(key); it != join_memo_.end()) return it->second;
    int result = sub;
    if (!members_[sub][x]) {
      auto gens = generators_[sub];
      gens.push_back(x);
      std::vector<char> in(g_.size(), 0);
      std::vector<int> frontier{0};
      in[0] = 1;
      while (!frontier.empty()) {
        const int y = frontier.back();
        frontier.pop_back();
        for (int s : gens) {
          const int z = g_.mul(y, s);
          if (!in[z]) {
            in[z] = 1;
            frontier.push_back(z);
          }
        }
      }
      result = intern(std::move(in), std::move(gens));
    }
    join_memo_.emplace(key, result);
    return result;
  }

  bool is_full(int sub) const { return sizes_[sub] == g_.size(); }

 private:
  int intern(std::vector<char> members, std::vector<int> gens) {
    auto [it, inserted] = index_.emplace(members, static_cast<int>(members_.size()));
    if (inserted) {
      sizes_.push_back(static_cast<int>(std::count(members.begin(), members.end(), 1)));
      members_.push_back(std::move(members));
      generators_.push_back(std::move(gens));
    }
    return it->second;
  }

  const GroupTable& g_;
  std::vector<std::vector<char>> members_;
  std::vector<std::vector<int>> generators_;
  std::vector<int> sizes_;
  std::map<std::vector<char>, int> index_;
  std::unordered_map<long, int> join_memo_;
};

struct Parent {
  int prefix;
  int sub;
  int x;
  int y;  // second element of a commutator pair, -1 for branch elements
};

using StateMap = std::map<std::pair<int, int>, Parent>;  // (prefix, subgroup) -> how reached

}  // namespace

std::optional<GeneratingVector> find_generating_vector(const GroupTable& g, const Signature& sig) {
  const int h = sig.h;
  const int k = static_cast<int>(sig.periods.size());
  if (h == 0 && k == 0) return std::nullopt;
  for (int m : sig.periods)
    if (m < 2) return std::nullopt;

  SubgroupLattice lattice(g);
  std::vector<StateMap> stages;
  stages.push_back({{{0, 0}, Parent{-1, -1, -1, -1}}});

  // Commutator transitions are shared by every state with the same subgroup.
  std::map<int, std::vector<std::tuple<int, int, int, int>>> pair_moves;
  auto moves_for = [&](int sub) -> const std::vector<std::tuple<int, int, int, int>>& {
    auto it = pair_moves.find(sub);
    if (it != pair_moves.end()) return it->second;
    std::set<std::pair<int, int>> seen;
    std::vector<std::tuple<int, int, int, int>> moves;
    for (int a = 0; a < g.size(); ++a) {
      const int sa = lattice.join(sub, a);
      for (int b = 0; b < g.size(); ++b) {
        const int comm = g.mul(g.mul(a, b), g.mul(g.inverse(a), g.inverse(b)));
        const int sb = lattice.join(sa, b);
        if (seen.insert({comm, sb}).second) moves.emplace_back(comm, sb, a, b);
      }
    }
    return pair_moves.emplace(sub, std::move(moves)).first->second;
  };

  for (int i = 0; i < h; ++i) {
    StateMap next;
    for (const auto& [state, parent] : stages.back()) {
      const auto [prefix, sub] = state;
      for (const auto& [comm, sub2, a, b] : moves_for(sub))
        next.try_emplace({g.mul(prefix, comm), sub2}, Parent{prefix, sub, a, b});
    }
    stages.push_back(std::move(next));
  }

  const auto reps = g.class_representatives();
  for (int j = 0; j + 1 < k; ++j) {
    const int m = sig.periods[j];
    std::vector<int> candidates;
    if (h == 0 && j == 0) {
      for (int x : reps)
        if (g.order(x) == m) candidates.push_back(x);
    } else {
      for (int x = 0; x < g.size(); ++x)
        if (g.order(x) == m) candidates.push_back(x);
    }
    StateMap next;
    for (const auto& [state, parent] : stages.back()) {
      const auto [prefix, sub] = state;
      for (int x : candidates) next.try_emplace({g.mul(prefix, x), lattice.join(sub, x)}, Parent{prefix, sub, x, -1});
    }
    stages.push_back(std::move(next));
  }

  std::optional<std::pair<int, int>> final_state;
  int last = -1;
  for (const auto& [state, parent] : stages.back()) {
    const auto [prefix, sub] = state;
    if (k == 0) {
      if (prefix == 0 && lattice.is_full(sub)) {
        final_state = state;
        break;
      }
    } else {
      const int c = g.inverse(prefix);
      if (g.order(c) == sig.periods.back() && lattice.is_full(lattice.join(sub, c))) {
        final_state = state;
        last = c;
        break;
      }
    }
  }
  if (!final_state) return std::nullopt;

  GeneratingVector v;
  auto state = *final_state;
  std::vector<int> cs;
  if (k > 0) cs.push_back(last);
  for (std::size_t s = stages.size() - 1; s > 0; --s) {
    const Parent& parent = stages[s].at(state);
    if (parent.y < 0) {
      cs.push_back(parent.x);
    } else {
      v.a.push_back(parent.x);
      v.b.push_back(parent.y);
    }
    state = {parent.prefix, parent.sub};
  }
  std::reverse(cs.begin(), cs.end());
  std::reverse(v.a.begin(), v.a.end());
  std::reverse(v.b.begin(), v.b.end());
  v.c = std::move(cs);
  return v;
}

bool has_generating_vector(const GroupTable& g, const Signature& sig) { return find_generating_vector(g, sig).has_value(); }

bool is_generating_vector(const GroupTable& g, const Signature& sig, const GeneratingVector& v) {
  if (static_cast<int>(v.a.size()) != sig.h || v.b.size() != v.a.size() || v.c.size() != sig.periods.size())
    return false;
  int product = 0;
  std::vector<int> gens;
  for (std::size_t i = 0; i < v.a.size(); ++i) {
    const int a = v.a[i], b = v.b[i];
    product = g.mul(product, g.mul(g.mul(a, b), g.mul(g.inverse(a), g.inverse(b))));
    gens.push_back(a);
    gens.push_back(b);
  }
  for (std::size_t j = 0; j < v.c.size(); ++j) {
    if (g.order(v.c[j]) != sig.periods[j]) return false;
    product = g.mul(product, v.c[j]);
    gens.push_back(v.c[j]);
  }
  if (product != 0) return false;
  std::vector<char> in(g.size(), 0);
  in[0] = 1;
  std::vector<int> frontier{0};
  int count = 1;
  while (!frontier.empty()) {
    const int y = frontier.back();
    frontier.pop_back();
    for (int s : gens) {
      const int z = g.mul(y, s);
      if (!in[z]) {
        in[z] = 1;
        ++count;
        frontier.push_back(z);
      }
    }
  }
  return count == g.size();
}

ActionSearch search_action(const GroupTable& g, int genus, unsigned threads) {
  if (genus < 2) throw Error(ErrorCode::InvalidArgument, "genus must be at least 2");
  ActionSearch result;
  result.genus = genus;
  for (auto& sig : signatures_for_genus_range(g, genus))
    if (sig.genus == genus) result.signatures.push_back(std::move(sig));

  std::vector<std::optional<GeneratingVector>> found(result.signatures.size());
  if (threads <= 1) {
    for (std::size_t i = 0; i < found.size(); ++i)
      if ((found[i] = find_generating_vector(g, result.signatures[i]))) break;
  } else {
    parallel_for(found.size(), threads, [&](std::size_t i) { found[i] = find_generating_vector(g, result.signatures[i]); });
  }
  for (std::size_t i = 0; i < found.size(); ++i)
    if (found[i]) {
      result.realized = result.signatures[i];
      result.witness = std::move(found[i]);
      break;
    }
  return result;
}

bool exists_action(const GroupTable& g, int genus, unsigned threads) { return search_action(g, genus, threads).realized.has_value(); }

}  // namespace ijo
