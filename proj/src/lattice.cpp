#include "cayley/lattice.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "cayley/error.hpp"

namespace cayley {

const char* sector_name(Sector s) {
  switch (s) {
    case Sector::Biangle:
      return "biangle";
    case Sector::Triangle:
      return "triangle";
    case Sector::Quadrangle:
      return "quadrangle";
  }
  return "";
}

BicovarianceResult check_bicovariance(const Group& group, const std::vector<Elem>& arrows) {
  std::set<Elem> s(arrows.begin(), arrows.end());
  if (s.count(group.identity())) throw Error(errc::kGroup, "identity element among arrows");
  BicovarianceResult res;
  for (Elem h : arrows)
    for (Elem hp : arrows) {
      Elem fwd = group.ad(h, hp);
      if (!s.count(fwd)) res.violations.push_back({h, hp, fwd});
      Elem bwd = group.ad(group.inv(h), hp);
      if (!s.count(bwd) && bwd != fwd) res.violations.push_back({h, hp, bwd});
    }
  res.ok = res.violations.empty();
  return res;
}

Lattice::Lattice(Group group, std::vector<Elem> arrows)
    : group_(std::move(group)), arrows_(std::move(arrows)) {
  if (arrows_.empty()) throw Error(errc::kGroup, "arrow set is empty");
  arrow_of_.assign(group_.order(), -1);
  for (int a = 0; a < n(); ++a) {
    Elem h = arrows_[a];
    if (h < 0 || h >= group_.order()) throw Error(errc::kGroup, "arrow outside the group");
    if (arrow_of_[h] >= 0) throw Error(errc::kGroup, "duplicate arrow " + group_.name(h));
    arrow_of_[h] = a;
  }
  auto bic = check_bicovariance(group_, arrows_);
  if (!bic.ok) {
    const auto& v = bic.violations.front();
    throw Error(errc::kBicovariance, "arrow set is not bicovariant: ad(" + group_.name(v.h) + ")" +
                                         group_.name(v.h_prime) + " = " + group_.name(v.image));
  }
  const int k = n();
  ad_.resize(k * k);
  ad_inv_.resize(k * k);
  classes_.resize(k * k);
  std::map<Elem, int> chain_of;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      ad_[a * k + b] = arrow_of_[group_.ad(arrows_[a], arrows_[b])];
      ad_inv_[a * k + b] = arrow_of_[group_.ad(group_.inv(arrows_[a]), arrows_[b])];
      Elem p = group_.mul(arrows_[a], arrows_[b]);
      PairClass pc;
      if (p == group_.identity()) {
        pc.sector = Sector::Biangle;
      } else if (arrow_of_[p] >= 0) {
        pc.sector = Sector::Triangle;
        pc.product = arrow_of_[p];
      } else {
        pc.sector = Sector::Quadrangle;
        auto it = chain_of.find(p);
        if (it == chain_of.end()) {
          it = chain_of.emplace(p, static_cast<int>(chains_.size())).first;
          chains_.push_back(Chain{p, {}});
        }
        pc.chain = it->second;
        pc.chain_pos = chains_[it->second].length();
        chains_[it->second].pairs.emplace_back(a, b);
      }
      classes_[a * k + b] = pc;
    }
}

std::vector<std::pair<int, int>> Lattice::biangles() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n(); ++a)
    for (int b = 0; b < n(); ++b)
      if (product_class(a, b).sector == Sector::Biangle) out.emplace_back(a, b);
  return out;
}

std::vector<std::pair<int, int>> Lattice::triangles() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n(); ++a)
    for (int b = 0; b < n(); ++b)
      if (product_class(a, b).sector == Sector::Triangle) out.emplace_back(a, b);
  return out;
}

bool Lattice::generates() const {
  std::vector<bool> seen(order(), false);
  std::queue<Elem> q;
  q.push(group_.identity());
  seen[group_.identity()] = true;
  int count = 1;
  while (!q.empty()) {
    Elem g = q.front();
    q.pop();
    for (int a = 0; a < n(); ++a) {
      Elem x = step(g, a);
      if (!seen[x]) {
        seen[x] = true;
        ++count;
        q.push(x);
      }
    }
  }
  return count == order();
}

bool Lattice::hypercubic() const {
  if (group_.kind() != Group::Kind::Torus) return false;
  const int dim = static_cast<int>(group_.moduli().size());
  if (n() != dim) return false;
  for (int a = 0; a < dim; ++a) {
    std::vector<int> c(dim, 0);
    c[a] = 1;
    if (arrows_[a] != group_.from_coords(c)) return false;
  }
  return true;
}

}  // namespace cayley
