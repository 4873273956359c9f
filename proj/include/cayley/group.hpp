#pragma once

#include <optional>
#include <string>
#include <vector>

namespace cayley {

using Elem = int;

// Finite group with a full multiplication table.  Elements are indices 0..order-1 in a
// fixed enumeration order, which is used for all per-site storage.
class Group {
public:
  enum class Kind { Cyclic, Symmetric, Torus, Table };

  static Group cyclic(int n);
  // Permutations of {1..n}, n <= 5.  The product pq applies p first, then q.
  static Group symmetric(int n);
  // Z_{m1} x ... x Z_{mk}, every modulus >= 3.
  static Group torus(const std::vector<int>& moduli);
  // Explicit Cayley table; validated for closure, identity, inverses and associativity.
  static Group from_table(const std::vector<std::vector<int>>& table);

  Kind kind() const { return kind_; }
  int order() const { return order_; }
  Elem identity() const { return identity_; }
  Elem mul(Elem a, Elem b) const { return table_[a * order_ + b]; }
  Elem inv(Elem a) const { return inverse_[a]; }
  // ad(h)k = h k h^-1
  Elem ad(Elem h, Elem k) const { return mul(mul(h, k), inv(h)); }
  bool abelian() const;

  const std::string& name(Elem a) const { return names_[a]; }
  std::optional<Elem> find(const std::string& name) const;
  // Parses a cycle string such as "(12)(34)" for symmetric groups.
  std::optional<Elem> parse_cycles(const std::string& s) const;

  const std::vector<int>& moduli() const { return moduli_; }
  std::vector<int> coords(Elem a) const;
  Elem from_coords(const std::vector<int>& c) const;

  std::vector<std::vector<int>> cayley_table() const {
    std::vector<std::vector<int>> t(order_);
    for (Elem a = 0; a < order_; ++a)
      for (Elem b = 0; b < order_; ++b) t[a].push_back(mul(a, b));
    return t;
  }

  // Descriptor string such as "cyclic:4" or "torus:[5,5]".
  std::string descriptor() const;

private:
  void finish();

  Kind kind_ = Kind::Table;
  int order_ = 0;
  Elem identity_ = 0;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<std::string> names_;
  std::vector<int> moduli_;
  std::vector<std::vector<int>> perms_;  // symmetric groups only, images of 0..n-1
};

}  // namespace cayley
