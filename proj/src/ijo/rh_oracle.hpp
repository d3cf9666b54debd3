#pragma once

// Brute-force decision of whether a small finite group acts on a compact
// Riemann surface of a given genus: enumerate Riemann-Hurwitz signatures,
// then search for a generating vector realizing one of them.

#include <optional>
#include <string>
#include <vector>

namespace ijo {

/// Finite group given by its multiplication table. Element 0 is the identity.
class GroupTable {
 public:
  static constexpr int kMaxOrder = 2048;

  static GroupTable cyclic(int m);
  /// Z/p x| Z/q with b a b^-1 = a^r; elements (i, j) = a^i b^j stored at
  /// index i + p j, multiplied as (i, j)(i', j') = (i + r^j i', j + j').
  static GroupTable metacyclic(int p, int q, int r);

  int size() const noexcept { return n_; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  int inverse(int a) const { return inverse_[a]; }
  int order(int a) const { return order_[a]; }
  /// Distinct orders > 1 of elements, ascending.
  std::vector<int> element_orders() const;
  /// Smallest element of each conjugacy class.
  std::vector<int> class_representatives() const;
  bool is_associative() const;

  const std::string& name() const noexcept { return name_; }
  std::string label(int a) const;

 private:
  GroupTable(std::string name, int n, int p, std::vector<int> table);

  std::string name_;
  int n_ = 0;
  int p_ = 1;  // element index i + p j for labelling
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<int> order_;
};

/// Quotient genus h and branch periods; genus is the covering surface genus
/// from 2g - 2 = |G| (2h - 2 + sum (1 - 1/m_i)).
struct Signature {
  int genus = 0;
  int h = 0;
  std::vector<int> periods;

  std::string to_string() const;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Riemann-Hurwitz value 2g - 2 for the signature, or nullopt if some period
/// does not divide |G|.
std::optional<long> riemann_hurwitz_value(int group_order, int h, const std::vector<int>& periods);

std::vector<Signature> signatures_for_genus_range(const GroupTable& g, int gmax);

struct GeneratingVector {
  std::vector<int> a, b, c;  // a_1..a_h, b_1..b_h, c_1..c_k
};

std::optional<GeneratingVector> find_generating_vector(const GroupTable& g, const Signature& sig);
bool has_generating_vector(const GroupTable& g, const Signature& sig);

/// Checks the defining conditions directly (product, orders, generation).
bool is_generating_vector(const GroupTable& g, const Signature& sig, const GeneratingVector& v);

struct ActionSearch {
  int genus = 0;
  std::vector<Signature> signatures;  // all candidates for this genus
  std::optional<Signature> realized;  // first candidate with a generating vector
  std::optional<GeneratingVector> witness;
};

inline constexpr int kDefaultGenusCap = 101;

ActionSearch search_action(const GroupTable& g, int genus, unsigned threads = 1);
bool exists_action(const GroupTable& g, int genus, unsigned threads = 1);

}  // namespace ijo
