#include "cayley/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "cayley/error.hpp"

namespace cayley {

namespace {

std::string cycle_string(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<bool> seen(n, false);
  std::string out;
  for (int i = 0; i < n; ++i) {
    if (seen[i] || perm[i] == i) continue;
    out += '(';
    int j = i;
    while (!seen[j]) {
      seen[j] = true;
      out += std::to_string(j + 1);
      j = perm[j];
    }
    out += ')';
  }
  return out.empty() ? "e" : out;
}

int moved_points(const std::vector<int>& perm) {
  int k = 0;
  for (int i = 0; i < static_cast<int>(perm.size()); ++i) k += perm[i] != i;
  return k;
}

}  // namespace

void Group::finish() {
  inverse_.assign(order_, -1);
  for (Elem a = 0; a < order_; ++a)
    for (Elem b = 0; b < order_; ++b)
      if (mul(a, b) == identity_) inverse_[a] = b;
}

bool Group::abelian() const {
  for (Elem a = 0; a < order_; ++a)
    for (Elem b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

Group Group::cyclic(int n) {
  if (n < 1) throw Error(errc::kGroup, "cyclic group needs order >= 1");
  Group g;
  g.kind_ = Kind::Cyclic;
  g.order_ = n;
  g.moduli_ = {n};
  g.table_.resize(n * n);
  for (int a = 0; a < n; ++a) {
    g.names_.push_back(std::to_string(a));
    for (int b = 0; b < n; ++b) g.table_[a * n + b] = (a + b) % n;
  }
  g.finish();
  return g;
}

Group Group::symmetric(int n) {
  if (n < 1 || n > 5) throw Error(errc::kGroup, "symmetric group supported for 1 <= n <= 5");
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::sort(perms.begin(), perms.end(), [](const auto& a, const auto& b) {
    int ma = moved_points(a), mb = moved_points(b);
    if (ma != mb) return ma < mb;
    return cycle_string(a) < cycle_string(b);
  });
  Group g;
  g.kind_ = Kind::Symmetric;
  g.order_ = static_cast<int>(perms.size());
  g.moduli_ = {n};
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < g.order_; ++i) {
    index[perms[i]] = i;
    g.names_.push_back(cycle_string(perms[i]));
  }
  g.table_.resize(g.order_ * g.order_);
  for (int a = 0; a < g.order_; ++a)
    for (int b = 0; b < g.order_; ++b) {
      std::vector<int> c(n);
      for (int i = 0; i < n; ++i) c[i] = perms[b][perms[a][i]];  // a first, then b
      g.table_[a * g.order_ + b] = index.at(c);
    }
  g.perms_ = std::move(perms);
  g.finish();
  return g;
}

Group Group::torus(const std::vector<int>& moduli) {
  if (moduli.empty()) throw Error(errc::kGroup, "torus needs at least one modulus");
  for (int m : moduli)
    if (m < 3) throw Error(errc::kGroup, "torus modulus must be >= 3, got " + std::to_string(m));
  Group g;
  g.kind_ = Kind::Torus;
  g.moduli_ = moduli;
  g.order_ = 1;
  for (int m : moduli) g.order_ *= m;
  for (Elem a = 0; a < g.order_; ++a) {
    auto c = g.coords(a);
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    g.names_.push_back(s + ")");
  }
  g.table_.resize(static_cast<std::size_t>(g.order_) * g.order_);
  for (Elem a = 0; a < g.order_; ++a) {
    auto ca = g.coords(a);
    for (Elem b = 0; b < g.order_; ++b) {
      auto cb = g.coords(b);
      for (std::size_t i = 0; i < ca.size(); ++i) cb[i] = (ca[i] + cb[i]) % moduli[i];
      g.table_[a * g.order_ + b] = g.from_coords(cb);
    }
  }
  g.finish();
  return g;
}

Group Group::from_table(const std::vector<std::vector<int>>& table) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw Error(errc::kGroup, "empty multiplication table");
  Group g;
  g.kind_ = Kind::Table;
  g.order_ = n;
  g.moduli_ = {n};
  g.table_.resize(n * n);
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(table[a].size()) != n) throw Error(errc::kGroup, "table is not square");
    g.names_.push_back(std::to_string(a));
    for (int b = 0; b < n; ++b) {
      int v = table[a][b];
      if (v < 0 || v >= n) throw Error(errc::kGroup, "table entry out of range");
      g.table_[a * n + b] = v;
    }
  }
  int id = -1;
  for (int e = 0; e < n && id < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = g.mul(e, a) == a && g.mul(a, e) == a;
    if (ok) id = e;
  }
  if (id < 0) throw Error(errc::kGroup, "table has no identity element");
  g.identity_ = id;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
          throw Error(errc::kGroup, "table is not associative at (" + std::to_string(a) + "," +
                                        std::to_string(b) + "," + std::to_string(c) + ")");
  g.finish();
  for (int a = 0; a < n; ++a)
    if (g.inverse_[a] < 0 || g.mul(g.inverse_[a], a) != id)
      throw Error(errc::kGroup, "element " + std::to_string(a) + " has no inverse");
  return g;
}

std::optional<Elem> Group::find(const std::string& name) const {
  for (Elem a = 0; a < order_; ++a)
    if (names_[a] == name) return a;
  if (kind_ == Kind::Symmetric) return parse_cycles(name);
  return std::nullopt;
}

std::optional<Elem> Group::parse_cycles(const std::string& s) const {
  if (kind_ != Kind::Symmetric) return std::nullopt;
  const int n = moduli_[0];
  std::vector<int> result(n);
  std::iota(result.begin(), result.end(), 0);
  if (s == "e" || s == "()") return identity_;
  std::size_t i = 0;
  bool any = false;
  while (i < s.size()) {
    if (s[i] == ' ') {
      ++i;
      continue;
    }
    if (s[i] != '(') return std::nullopt;
    auto close = s.find(')', i);
    if (close == std::string::npos) return std::nullopt;
    std::vector<int> cyc;
    for (std::size_t k = i + 1; k < close; ++k) {
      char ch = s[k];
      if (ch == ' ' || ch == ',') continue;
      if (ch < '1' || ch - '1' >= n) return std::nullopt;
      cyc.push_back(ch - '1');
    }
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t k = 0; k < cyc.size(); ++k) perm[cyc[k]] = cyc[(k + 1) % cyc.size()];
    // Cycles written left to right are applied left to right.
    std::vector<int> next(n);
    for (int p = 0; p < n; ++p) next[p] = perm[result[p]];
    result = next;
    any = true;
    i = close + 1;
  }
  if (!any) return std::nullopt;
  for (Elem a = 0; a < order_; ++a)
    if (perms_[a] == result) return a;
  return std::nullopt;
}

std::vector<int> Group::coords(Elem a) const {
  std::vector<int> c(moduli_.size());
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    c[i] = a % moduli_[i];
    a /= moduli_[i];
  }
  return c;
}

Elem Group::from_coords(const std::vector<int>& c) const {
  Elem a = 0;
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    int v = ((c[i] % moduli_[i]) + moduli_[i]) % moduli_[i];
    a = a * moduli_[i] + v;
  }
  return a;
}

std::string Group::descriptor() const {
  switch (kind_) {
    case Kind::Cyclic:
      return "cyclic:" + std::to_string(order_);
    case Kind::Symmetric:
      return "symmetric:" + std::to_string(moduli_[0]);
    case Kind::Torus: {
      std::string s = "torus:[";
      for (std::size_t i = 0; i < moduli_.size(); ++i) s += (i ? "," : "") + std::to_string(moduli_[i]);
      return s + "]";
    }
    case Kind::Table:
      return "table:" + std::to_string(order_);
  }
  return "";
}

}  // namespace cayley
