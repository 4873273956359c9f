#pragma once

#include <stdexcept>
#include <vector>

#include "cayley/lattice.hpp"
#include "cayley/matrix.hpp"

namespace cayley {

// Function on the group: one value per element index.
template <class T>
struct ScalarField {
  std::vector<T> v;

  ScalarField() = default;
  explicit ScalarField(int order, T value = Num<T>::zero()) : v(order, value) {}
  explicit ScalarField(std::vector<T> values) : v(std::move(values)) {}

  int size() const { return static_cast<int>(v.size()); }
  T& operator[](Elem g) { return v[g]; }
  const T& operator[](Elem g) const { return v[g]; }

  static ScalarField indicator(int order, Elem at) {
    ScalarField f(order);
    f[at] = Num<T>::one();
    return f;
  }

  ScalarField& operator+=(const ScalarField& o) {
    for (int i = 0; i < size(); ++i) v[i] += o.v[i];
    return *this;
  }
  ScalarField& operator-=(const ScalarField& o) {
    for (int i = 0; i < size(); ++i) v[i] -= o.v[i];
    return *this;
  }
  friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
  friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
  friend ScalarField operator*(ScalarField a, const ScalarField& b) {
    for (int i = 0; i < a.size(); ++i) a.v[i] *= b.v[i];
    return a;
  }
  friend ScalarField operator*(const T& s, ScalarField a) {
    for (auto& x : a.v) x *= s;
    return a;
  }
  bool is_zero() const { return is_zero_vector(v); }
  bool approx_equal(const ScalarField& o) const {
    for (int i = 0; i < size(); ++i)
      if (!Num<T>::equal(v[i], o.v[i])) return false;
    return true;
  }
  friend bool operator==(const ScalarField& a, const ScalarField& b) { return a.v == b.v; }
};

// 1-form sum_h f_h theta^h; coef[h] is the coefficient field of theta^h.
template <class T>
struct OneForm {
  std::vector<ScalarField<T>> coef;

  OneForm() = default;
  OneForm(const Lattice& lat) : coef(lat.n(), ScalarField<T>(lat.order())) {}  // NOLINT

  static OneForm basis(const Lattice& lat, int h) {
    OneForm w(lat);
    w.coef[h] = ScalarField<T>(lat.order(), Num<T>::one());
    return w;
  }
  bool is_zero() const {
    for (const auto& c : coef)
      if (!c.is_zero()) return false;
    return true;
  }
  friend bool operator==(const OneForm& a, const OneForm& b) { return a.coef == b.coef; }
  OneForm& operator+=(const OneForm& o) {
    for (std::size_t i = 0; i < coef.size(); ++i) coef[i] += o.coef[i];
    return *this;
  }
  friend OneForm operator+(OneForm a, const OneForm& b) { return a += b; }
  friend OneForm operator-(OneForm a, const OneForm& b) {
    for (std::size_t i = 0; i < a.coef.size(); ++i) a.coef[i] -= b.coef[i];
    return a;
  }
};

// Coefficients of theta^x cap theta^y, indexed by the cap pair (x, y).
template <class T>
struct TwoForm {
  int n = 0;
  std::vector<ScalarField<T>> coef;

  TwoForm() = default;
  TwoForm(const Lattice& lat) : n(lat.n()), coef(lat.n() * lat.n(), ScalarField<T>(lat.order())) {}  // NOLINT

  ScalarField<T>& at(int x, int y) { return coef[x * n + y]; }
  const ScalarField<T>& at(int x, int y) const { return coef[x * n + y]; }
  bool is_zero() const {
    for (const auto& c : coef)
      if (!c.is_zero()) return false;
    return true;
  }
  bool approx_equal(const TwoForm& o) const {
    for (std::size_t i = 0; i < coef.size(); ++i)
      if (!coef[i].approx_equal(o.coef[i])) return false;
    return true;
  }
  friend bool operator==(const TwoForm& a, const TwoForm& b) { return a.coef == b.coef; }
  TwoForm& operator+=(const TwoForm& o) {
    for (std::size_t i = 0; i < coef.size(); ++i) coef[i] += o.coef[i];
    return *this;
  }
  TwoForm& operator-=(const TwoForm& o) {
    for (std::size_t i = 0; i < coef.size(); ++i) coef[i] -= o.coef[i];
    return *this;
  }
  friend TwoForm operator+(TwoForm a, const TwoForm& b) { return a += b; }
  friend TwoForm operator-(TwoForm a, const TwoForm& b) { return a -= b; }
};

// Raw (gauge-dependent) and gauge-fixed 2-forms share storage; the distinct type names
// keep the two from being mixed up in signatures.
template <class T>
struct TwoFormRaw : TwoForm<T> {
  using TwoForm<T>::TwoForm;
};
template <class T>
struct TwoFormCanonical : TwoForm<T> {
  using TwoForm<T>::TwoForm;
};

enum class TensorBasis { A, L };

// Rank-k tensor in the theta basis: coefficient per multi-index (h1..hk), row-major.
template <class T>
struct LTensor {
  int n = 0;
  int rank = 0;
  TensorBasis basis = TensorBasis::L;
  std::vector<ScalarField<T>> coef;

  LTensor() = default;
  LTensor(const Lattice& lat, int k, TensorBasis b = TensorBasis::L) : n(lat.n()), rank(k), basis(b) {
    int count = 1;
    for (int i = 0; i < k; ++i) count *= n;
    coef.assign(count, ScalarField<T>(lat.order()));
  }

  std::vector<int> unflatten(int idx) const {
    std::vector<int> out(rank);
    for (int i = rank; i-- > 0;) {
      out[i] = idx % n;
      idx /= n;
    }
    return out;
  }
  int flatten(const std::vector<int>& ix) const {
    int idx = 0;
    for (int i : ix) idx = idx * n + i;
    return idx;
  }
  friend bool operator==(const LTensor& a, const LTensor& b) {
    return a.rank == b.rank && a.basis == b.basis && a.coef == b.coef;
  }
};

// --- scalar functions -------------------------------------------------------------

// (R*_h f)(g) = f(g h) for any group element h.
template <class T>
ScalarField<T> pullback_elem(const Lattice& lat, Elem h, const ScalarField<T>& f) {
  ScalarField<T> out(lat.order());
  for (Elem g = 0; g < lat.order(); ++g) out[g] = f[lat.group().mul(g, h)];
  return out;
}

template <class T>
ScalarField<T> pullback(const Lattice& lat, int a, const ScalarField<T>& f) {
  return pullback_elem(lat, lat.arrow(a), f);
}

// ell_h f = R*_h f - f
template <class T>
ScalarField<T> ell_derivative(const Lattice& lat, int a, const ScalarField<T>& f) {
  return pullback(lat, a, f) - f;
}

// --- forms and tensors ---------------------------------------------------------------

// R*_h (f theta^k) = (R*_h f) theta^{ad(h)k}
template <class T>
OneForm<T> pullback(const Lattice& lat, int a, const OneForm<T>& w) {
  OneForm<T> out(lat);
  for (int k = 0; k < lat.n(); ++k) out.coef[lat.ad(a, k)] = pullback(lat, a, w.coef[k]);
  return out;
}

template <class T>
TwoFormRaw<T> pullback(const Lattice& lat, int a, const TwoForm<T>& w) {
  TwoFormRaw<T> out(lat);
  for (int x = 0; x < lat.n(); ++x)
    for (int y = 0; y < lat.n(); ++y) out.at(lat.ad(a, x), lat.ad(a, y)) = pullback(lat, a, w.at(x, y));
  return out;
}

// Factor-wise relabeling by ad(h) with coefficient pullback.
template <class T>
LTensor<T> pullback(const Lattice& lat, int a, const LTensor<T>& t) {
  if (t.basis != TensorBasis::L) throw std::invalid_argument("pullback expects an L-basis tensor");
  LTensor<T> out(lat, t.rank, t.basis);
  for (int idx = 0; idx < static_cast<int>(t.coef.size()); ++idx) {
    auto ix = t.unflatten(idx);
    for (int& i : ix) i = lat.ad(a, i);
    out.coef[out.flatten(ix)] = pullback(lat, a, t.coef[idx]);
  }
  return out;
}

template <class T>
LTensor<T> from_one_form(const Lattice& lat, const OneForm<T>& w) {
  LTensor<T> t(lat, 1);
  t.coef = w.coef;
  return t;
}

// Left-covariant tensor product: coefficients multiply pointwise.
template <class T>
LTensor<T> tensor_l(const Lattice& lat, const LTensor<T>& a, const LTensor<T>& b) {
  LTensor<T> out(lat, a.rank + b.rank);
  const int nb = static_cast<int>(b.coef.size());
  for (int i = 0; i < static_cast<int>(a.coef.size()); ++i)
    for (int j = 0; j < nb; ++j) out.coef[i * nb + j] = a.coef[i] * b.coef[j];
  return out;
}

// Rank-2 conversion between the A- and L-basis: gamma_{h,h'} = g_{h, ad(h)h'}.
template <class T>
LTensor<T> convert_tensor_basis(const Lattice& lat, const LTensor<T>& t, TensorBasis target) {
  if (t.rank != 2) throw std::invalid_argument("basis conversion implemented for rank 2");
  if (t.basis == target) return t;
  LTensor<T> out(lat, 2, target);
  for (int h = 0; h < lat.n(); ++h)
    for (int k = 0; k < lat.n(); ++k) {
      if (target == TensorBasis::A)
        out.coef[h * lat.n() + k] = t.coef[h * lat.n() + lat.ad(h, k)];
      else
        out.coef[h * lat.n() + k] = t.coef[h * lat.n() + lat.ad_inv(h, k)];
    }
  return out;
}

template <class T>
TwoFormRaw<T> cap_product(const Lattice& lat, const OneForm<T>& w1, const OneForm<T>& w2) {
  TwoFormRaw<T> out(lat);
  for (int x = 0; x < lat.n(); ++x)
    for (int y = 0; y < lat.n(); ++y) out.at(x, y) = w1.coef[x] * w2.coef[y];
  return out;
}

// Biangle/triangle coefficients are kept; each quadrangle coefficient becomes
// |g| psi(x,y) - sum over the chain of psi.
template <class T>
TwoFormCanonical<T> gauge_fix(const Lattice& lat, const TwoForm<T>& raw) {
  TwoFormCanonical<T> out(lat);
  out.coef = raw.coef;
  for (const auto& chain : lat.chains()) {
    ScalarField<T> total(lat.order());
    for (auto [a, b] : chain.pairs) {
      auto [x, y] = lat.product_to_cap(a, b);
      total += raw.at(x, y);
    }
    const T len = Num<T>::from_int(chain.length());
    for (auto [a, b] : chain.pairs) {
      auto [x, y] = lat.product_to_cap(a, b);
      out.at(x, y) = len * raw.at(x, y) - total;
    }
  }
  return out;
}

// Adds Psi times the 2-form relation sum_{h'h=g} theta^h cap theta^{h'} for chain c.
template <class T>
TwoFormRaw<T> add_relation(const Lattice& lat, const TwoForm<T>& raw, int chain, const ScalarField<T>& psi) {
  TwoFormRaw<T> out(lat);
  out.coef = raw.coef;
  for (auto [a, b] : lat.chains()[chain].pairs) {
    auto [x, y] = lat.product_to_cap(a, b);
    out.at(x, y) += psi;
  }
  return out;
}

template <class T>
OneForm<T> differential(const Lattice& lat, const ScalarField<T>& f) {
  OneForm<T> out(lat);
  for (int h = 0; h < lat.n(); ++h) out.coef[h] = ell_derivative(lat, h, f);
  return out;
}

// Raw Delta: Delta(f theta^k) = f sum_{h''h'=k} theta^{h'} cap theta^{h''}.
template <class T>
TwoFormRaw<T> delta_raw(const Lattice& lat, const OneForm<T>& w) {
  TwoFormRaw<T> out(lat);
  for (int x = 0; x < lat.n(); ++x)
    for (int y = 0; y < lat.n(); ++y) {
      const auto& pc = lat.cap_class(x, y);
      if (pc.sector == Sector::Triangle) out.at(x, y) += w.coef[pc.product];
    }
  return out;
}

template <class T>
TwoFormCanonical<T> delta_map(const Lattice& lat, const OneForm<T>& w) {
  return gauge_fix(lat, delta_raw(lat, w));
}

// d w = sum_h theta^h cap R*_h w + w cap theta - Delta(w), gauge fixed.
template <class T>
TwoFormCanonical<T> differential_on_1form(const Lattice& lat, const OneForm<T>& w) {
  TwoFormRaw<T> raw(lat);
  for (int h = 0; h < lat.n(); ++h) {
    OneForm<T> pw = pullback(lat, h, w);
    for (int k = 0; k < lat.n(); ++k) raw.at(h, k) += pw.coef[k];
  }
  for (int k = 0; k < lat.n(); ++k)
    for (int h = 0; h < lat.n(); ++h) raw.at(k, h) += w.coef[k];
  raw -= delta_raw(lat, w);
  return gauge_fix(lat, raw);
}

// Algebra product of a 1-form with a basis 1-form: (f theta^k) theta^h = f theta^k cap theta^{ad(k)h}.
template <class T>
TwoFormRaw<T> product_with_basis(const Lattice& lat, const OneForm<T>& w, int h) {
  TwoFormRaw<T> out(lat);
  for (int k = 0; k < lat.n(); ++k) out.at(k, lat.ad(k, h)) += w.coef[k];
  return out;
}

}  // namespace cayley
