#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cayley/group.hpp"

namespace cayley {

struct BicovarianceViolation {
  Elem h;
  Elem h_prime;
  Elem image;  // ad(h)h' or ad(h^-1)h', whichever left S
};

struct BicovarianceResult {
  bool ok = true;
  std::vector<BicovarianceViolation> violations;
};

// ad(h)h' in S and ad(h^-1)h' in S for all h, h' in S.
BicovarianceResult check_bicovariance(const Group& group, const std::vector<Elem>& arrows);

enum class Sector { Biangle, Triangle, Quadrangle };

const char* sector_name(Sector s);

// Classification of an ordered pair of arrows.  For triangles `product` is the arrow
// index of h0 = h1 h2; for quadrangles `chain` indexes Lattice::chains().
struct PairClass {
  Sector sector;
  int product = -1;
  int chain = -1;
  int chain_pos = -1;
};

// Quadrangle chain: all ordered arrow pairs (a, b) with a b = g, in lattice order.
struct Chain {
  Elem g;
  std::vector<std::pair<int, int>> pairs;
  int length() const { return static_cast<int>(pairs.size()); }
};

// Group lattice (G, S) with the full biangle/triangle/quadrangle classification.
//
// Two index conventions appear for arrow pairs.  A *product pair* (a, b) refers to the
// word a then b with product h_a h_b.  A *cap pair* (x, y) labels the 2-form basis
// element theta^x cap theta^y, which belongs to the sector of the product h_y h_x; it
// corresponds to the product pair (x, ad(h_x^-1) h_y).  Both coincide on Abelian groups.
class Lattice {
public:
  Lattice(Group group, std::vector<Elem> arrows);

  const Group& group() const { return group_; }
  int order() const { return group_.order(); }
  int n() const { return static_cast<int>(arrows_.size()); }
  Elem arrow(int a) const { return arrows_[a]; }
  const std::vector<Elem>& arrows() const { return arrows_; }
  // Arrow index of an element, or -1.
  int arrow_index(Elem h) const { return arrow_of_[h]; }
  const std::string& arrow_name(int a) const { return group_.name(arrows_[a]); }

  // g h_a
  Elem step(Elem g, int a) const { return group_.mul(g, arrows_[a]); }
  // Arrow index of ad(h_a) h_b and ad(h_a^-1) h_b.
  int ad(int a, int b) const { return ad_[a * n() + b]; }
  int ad_inv(int a, int b) const { return ad_inv_[a * n() + b]; }

  const PairClass& product_class(int a, int b) const { return classes_[a * n() + b]; }
  // Product pair for the cap pair (x, y).
  std::pair<int, int> cap_to_product(int x, int y) const { return {x, ad_inv(x, y)}; }
  std::pair<int, int> product_to_cap(int a, int b) const { return {a, ad(a, b)}; }
  const PairClass& cap_class(int x, int y) const {
    auto [a, b] = cap_to_product(x, y);
    return product_class(a, b);
  }

  const std::vector<Chain>& chains() const { return chains_; }
  std::vector<std::pair<int, int>> biangles() const;
  std::vector<std::pair<int, int>> triangles() const;

  bool generates() const;
  bool hypercubic() const;  // torus group with the unit vectors (in order) as arrows

private:
  Group group_;
  std::vector<Elem> arrows_;
  std::vector<int> arrow_of_;
  std::vector<int> ad_;
  std::vector<int> ad_inv_;
  std::vector<PairClass> classes_;
  std::vector<Chain> chains_;
};

}  // namespace cayley
