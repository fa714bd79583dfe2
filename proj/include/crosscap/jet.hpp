#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "crosscap/errors.hpp"
#include "crosscap/scalar.hpp"

namespace crosscap {

inline constexpr int kDefaultOrder = 6;
inline constexpr int kMinUserOrder = 2;
inline constexpr int kMaxUserOrder = 10;

// Truncated bivariate polynomial sum c_ij u^i v^j over i+j <= order, plain
// monomial coefficients. order < 0 means no coefficient is known; this is
// what repeated differentiation of a low-order jet produces.
template <JetScalar T>
class Jet2 {
 public:
  explicit Jet2(int order = kDefaultOrder) : order_(order), c_(storage_size(order), zero()) {}

  static Jet2 constant(const T& value, int order = kDefaultOrder) {
    Jet2 j(order);
    if (order >= 0) j.c_[0] = value;
    return j;
  }
  static Jet2 monomial(int i, int j, const T& value, int order = kDefaultOrder) {
    Jet2 r(order);
    if (i + j <= order) r.c_[index(i, j)] = value;
    return r;
  }
  static Jet2 u(int order = kDefaultOrder) { return monomial(1, 0, one(), order); }
  static Jet2 v(int order = kDefaultOrder) { return monomial(0, 1, one(), order); }

  int order() const { return order_; }

  T coeff(int i, int j) const {
    if (i < 0 || j < 0 || i + j > order_) return zero();
    return c_[index(i, j)];
  }
  void set(int i, int j, const T& value) {
    if (i < 0 || j < 0 || i + j > order_)
      throw PreconditionError("monomial u^" + std::to_string(i) + " v^" + std::to_string(j) +
                              " exceeds jet order " + std::to_string(order_));
    c_[index(i, j)] = value;
  }
  void add_to(int i, int j, const T& value) {
    if (i + j <= order_) c_[index(i, j)] += value;
  }

  /// Value at the origin. Throws when the jet carries no information.
  T at0() const {
    if (order_ < 0) throw OrderExhausted("constant term requested from a jet of order " + std::to_string(order_));
    return c_[0];
  }

  Jet2 truncated(int n) const { return resized(std::min(n, order_)); }

  /// Reinterpret as a polynomial of the given order: truncates, or pads with
  /// zeros. Padding is only meaningful for exact polynomials.
  Jet2 resized(int n) const {
    Jet2 r(n);
    const int m = std::min(n, order_);
    for (int d = 0; d <= m; ++d)
      for (int j = 0; j <= d; ++j) r.c_[index(d - j, j)] = c_[index(d - j, j)];
    return r;
  }

  bool is_zero(const Tolerance& tol = {}) const {
    return std::all_of(c_.begin(), c_.end(), [&](const T& x) { return ScalarOps<T>::is_zero(x, tol); });
  }

  /// Largest total degree with a nonzero coefficient, or -1.
  int degree() const {
    for (int d = order_; d >= 0; --d)
      for (int j = 0; j <= d; ++j)
        if (!ScalarOps<T>::is_zero(c_[index(d - j, j)])) return d;
    return -1;
  }

  Jet2 operator-() const {
    Jet2 r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend Jet2 operator+(const Jet2& a, const Jet2& b) { return combine(a, b, false); }
  friend Jet2 operator-(const Jet2& a, const Jet2& b) { return combine(a, b, true); }
  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    const int n = std::min(a.order_, b.order_);
    Jet2 r(n);
    for (int da = 0; da <= n; ++da) {
      for (int ja = 0; ja <= da; ++ja) {
        const T& x = a.c_[index(da - ja, ja)];
        if (ScalarOps<T>::is_zero(x)) continue;
        for (int db = 0; db + da <= n; ++db) {
          for (int jb = 0; jb <= db; ++jb) {
            const T& y = b.c_[index(db - jb, jb)];
            if (ScalarOps<T>::is_zero(y)) continue;
            r.c_[index(da - ja + db - jb, ja + jb)] += x * y;
          }
        }
      }
    }
    return r;
  }
  friend Jet2 operator*(const T& s, const Jet2& a) {
    Jet2 r(a);
    for (auto& x : r.c_) x = s * x;
    return r;
  }
  Jet2& operator+=(const Jet2& o) { return *this = *this + o; }
  Jet2& operator-=(const Jet2& o) { return *this = *this - o; }
  Jet2& operator*=(const Jet2& o) { return *this = *this * o; }

  friend bool operator==(const Jet2& a, const Jet2& b) {
    if (a.order_ != b.order_) return false;
    for (std::size_t k = 0; k < a.c_.size(); ++k)
      if (!ScalarOps<T>::is_zero(a.c_[k] - b.c_[k])) return false;
    return true;
  }

  Jet2 partial_u() const {
    Jet2 r(order_ - 1);
    for (int d = 1; d <= order_; ++d)
      for (int j = 0; j < d; ++j) {
        const int i = d - j;
        r.c_[index(i - 1, j)] = ScalarOps<T>::from_int(i) * c_[index(i, j)];
      }
    return r;
  }
  Jet2 partial_v() const {
    Jet2 r(order_ - 1);
    for (int d = 1; d <= order_; ++d)
      for (int j = 1; j <= d; ++j) {
        const int i = d - j;
        r.c_[index(i, j - 1)] = ScalarOps<T>::from_int(j) * c_[index(i, j)];
      }
    return r;
  }

  template <class F>
  void for_each_nonzero(F&& fn) const {
    for (int d = 0; d <= order_; ++d)
      for (int j = 0; j <= d; ++j) {
        const T& x = c_[index(d - j, j)];
        if (!ScalarOps<T>::is_zero(x)) fn(d - j, j, x);
      }
  }

  template <JetScalar U, class Conv>
  Jet2<U> convert(Conv&& conv) const {
    Jet2<U> r(order_);
    for_each_nonzero([&](int i, int j, const T& x) { r.set(i, j, conv(x)); });
    return r;
  }

 private:
  static T zero() { return ScalarOps<T>::from_int(0); }
  static T one() { return ScalarOps<T>::from_int(1); }
  static std::size_t storage_size(int n) { return n < 0 ? 0 : static_cast<std::size_t>((n + 1) * (n + 2) / 2); }
  static std::size_t index(int i, int j) {
    const int d = i + j;
    return static_cast<std::size_t>(d * (d + 1) / 2 + j);
  }
  static Jet2 combine(const Jet2& a, const Jet2& b, bool subtract) {
    const int n = std::min(a.order_, b.order_);
    Jet2 r(n);
    for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = subtract ? T(a.c_[k] - b.c_[k]) : T(a.c_[k] + b.c_[k]);
    return r;
  }

  int order_;
  std::vector<T> c_;
};

template <JetScalar T>
Jet2<T> partial_u(const Jet2<T>& a) {
  return a.partial_u();
}
template <JetScalar T>
Jet2<T> partial_v(const Jet2<T>& a) {
  return a.partial_v();
}

template <JetScalar T>
using Vec3 = std::array<T, 3>;

template <JetScalar T>
T det3(const Vec3<T>& a, const Vec3<T>& b, const Vec3<T>& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - b[0] * (a[1] * c[2] - a[2] * c[1]) + c[0] * (a[1] * b[2] - a[2] * b[1]);
}

template <JetScalar T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
  return {T(a[1] * b[2] - a[2] * b[1]), T(a[2] * b[0] - a[0] * b[2]), T(a[0] * b[1] - a[1] * b[0])};
}

template <JetScalar T>
T dot(const Vec3<T>& a, const Vec3<T>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <JetScalar T>
bool is_zero_vec(const Vec3<T>& a, const Tolerance& tol = {}) {
  return ScalarOps<T>::is_zero(a[0], tol) && ScalarOps<T>::is_zero(a[1], tol) && ScalarOps<T>::is_zero(a[2], tol);
}

/// A triple of jets: the derivative of a map along a word of vector fields,
/// or the map itself.
template <JetScalar T>
struct JetVec3 {
  std::array<Jet2<T>, 3> c{Jet2<T>(kDefaultOrder), Jet2<T>(kDefaultOrder), Jet2<T>(kDefaultOrder)};

  JetVec3() = default;
  JetVec3(Jet2<T> a, Jet2<T> b, Jet2<T> d) : c{std::move(a), std::move(b), std::move(d)} {}

  int order() const { return std::min({c[0].order(), c[1].order(), c[2].order()}); }
  const Jet2<T>& operator[](std::size_t k) const { return c[k]; }
  Jet2<T>& operator[](std::size_t k) { return c[k]; }

  Vec3<T> at0() const { return {c[0].at0(), c[1].at0(), c[2].at0()}; }

  friend JetVec3 operator+(const JetVec3& a, const JetVec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
  friend JetVec3 operator-(const JetVec3& a, const JetVec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
  friend JetVec3 operator*(const Jet2<T>& s, const JetVec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
  friend bool operator==(const JetVec3& a, const JetVec3& b) { return a[0] == b[0] && a[1] == b[1] && a[2] == b[2]; }

  JetVec3 partial_u() const { return {c[0].partial_u(), c[1].partial_u(), c[2].partial_u()}; }
  JetVec3 partial_v() const { return {c[0].partial_v(), c[1].partial_v(), c[2].partial_v()}; }
  JetVec3 truncated(int n) const { return {c[0].truncated(n), c[1].truncated(n), c[2].truncated(n)}; }
};

/// Map-germ (R^2,0) -> (R^3,0) truncated at a common order.
template <JetScalar T>
class MapJet {
 public:
  MapJet() = default;
  MapJet(Jet2<T> f1, Jet2<T> f2, Jet2<T> f3) : jets_(std::move(f1), std::move(f2), std::move(f3)) { validate(); }
  explicit MapJet(JetVec3<T> jets) : jets_(std::move(jets)) { validate(); }

  int order() const { return jets_.order(); }
  const JetVec3<T>& jets() const { return jets_; }
  const Jet2<T>& operator[](std::size_t k) const { return jets_[k]; }

  friend bool operator==(const MapJet& a, const MapJet& b) { return a.jets_ == b.jets_; }

 private:
  void validate() {
    const int n = jets_.order();
    if (n < 0) throw PreconditionError("map-germ must have order >= 0");
    for (std::size_t k = 0; k < 3; ++k) jets_[k] = jets_[k].truncated(n);
    if (!is_zero_vec(jets_.at0())) throw PreconditionError("map-germ must send the origin to the origin (f(0,0) != 0)");
  }

  JetVec3<T> jets_;
};

template <JetScalar T>
Vec3<T> eval0(const MapJet<T>& f) {
  return f.jets().at0();
}

template <JetScalar T>
T det3_at0(const JetVec3<T>& a, const JetVec3<T>& b, const JetVec3<T>& c) {
  return det3(a.at0(), b.at0(), c.at0());
}

template <JetScalar T>
Vec3<T> cross_at0(const JetVec3<T>& a, const JetVec3<T>& b) {
  return cross(a.at0(), b.at0());
}

/// Jet-level 3x3 determinant of column triples.
template <JetScalar T>
Jet2<T> det3(const JetVec3<T>& a, const JetVec3<T>& b, const JetVec3<T>& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - b[0] * (a[1] * c[2] - a[2] * c[1]) + c[0] * (a[1] * b[2] - a[2] * b[1]);
}

template <JetScalar T>
struct Mat2 {
  std::array<std::array<T, 2>, 2> m;
  T det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
  static Mat2 identity() {
    const T z = ScalarOps<T>::from_int(0), o = ScalarOps<T>::from_int(1);
    return {{{{o, z}, {z, o}}}};
  }
};

template <JetScalar T>
struct Mat3 {
  std::array<std::array<T, 3>, 3> m;
  T det() const {
    return det3<T>({m[0][0], m[1][0], m[2][0]}, {m[0][1], m[1][1], m[2][1]}, {m[0][2], m[1][2], m[2][2]});
  }
  Vec3<T> operator*(const Vec3<T>& x) const {
    Vec3<T> r;
    for (int i = 0; i < 3; ++i) r[i] = m[i][0] * x[0] + m[i][1] * x[1] + m[i][2] * x[2];
    return r;
  }
};

/// Source-space polynomial map (u,v) -> (p1(u,v), p2(u,v)) with zero constant term.
template <JetScalar T>
class PolyMap2 {
 public:
  PolyMap2(Jet2<T> p1, Jet2<T> p2) : p_{std::move(p1), std::move(p2)} {
    if (!ScalarOps<T>::is_zero(p_[0].coeff(0, 0)) || !ScalarOps<T>::is_zero(p_[1].coeff(0, 0)))
      throw PreconditionError("source map must have zero constant term");
  }
  static PolyMap2 identity(int degree = 1) { return {Jet2<T>::u(degree), Jet2<T>::v(degree)}; }
  static PolyMap2 linear(const Mat2<T>& a) {
    Jet2<T> p1(1), p2(1);
    p1.set(1, 0, a.m[0][0]);
    p1.set(0, 1, a.m[0][1]);
    p2.set(1, 0, a.m[1][0]);
    p2.set(0, 1, a.m[1][1]);
    return {p1, p2};
  }

  const Jet2<T>& operator[](std::size_t k) const { return p_[k]; }
  Mat2<T> linear_part() const {
    return {{{{p_[0].coeff(1, 0), p_[0].coeff(0, 1)}, {p_[1].coeff(1, 0), p_[1].coeff(0, 1)}}}};
  }
  bool is_invertible(const Tolerance& tol = {}) const { return !ScalarOps<T>::is_zero(linear_part().det(), tol); }

 private:
  std::array<Jet2<T>, 2> p_;
};

/// Target-space polynomial map R^3 -> R^3 with zero constant term.
template <JetScalar T>
class PolyMap3 {
 public:
  struct Term {
    int i, j, k;
    T c;
  };

  PolyMap3() = default;
  explicit PolyMap3(std::array<std::vector<Term>, 3> comps) : comps_(std::move(comps)) {
    for (const auto& comp : comps_)
      for (const auto& t : comp)
        if (t.i + t.j + t.k == 0 && !ScalarOps<T>::is_zero(t.c))
          throw PreconditionError("target map must have zero constant term");
  }
  static PolyMap3 identity() {
    const T o = ScalarOps<T>::from_int(1);
    return PolyMap3({std::vector<Term>{{1, 0, 0, o}}, std::vector<Term>{{0, 1, 0, o}}, std::vector<Term>{{0, 0, 1, o}}});
  }

  const std::vector<Term>& component(std::size_t k) const { return comps_[k]; }
  int degree() const {
    int d = 0;
    for (const auto& comp : comps_)
      for (const auto& t : comp) d = std::max(d, t.i + t.j + t.k);
    return d;
  }
  Mat3<T> linear_part() const {
    Mat3<T> a;
    for (auto& row : a.m) row.fill(ScalarOps<T>::from_int(0));
    for (std::size_t r = 0; r < 3; ++r)
      for (const auto& t : comps_[r]) {
        if (t.i + t.j + t.k != 1) continue;
        a.m[r][t.i ? 0 : t.j ? 1 : 2] += t.c;
      }
    return a;
  }
  bool is_invertible(const Tolerance& tol = {}) const { return !ScalarOps<T>::is_zero(linear_part().det(), tol); }

 private:
  std::array<std::vector<Term>, 3> comps_;
};

namespace detail {
template <JetScalar T>
std::vector<Jet2<T>> powers(const Jet2<T>& x, int count, int order) {
  std::vector<Jet2<T>> p;
  p.reserve(static_cast<std::size_t>(count) + 1);
  p.push_back(Jet2<T>::constant(ScalarOps<T>::from_int(1), order));
  for (int k = 1; k <= count; ++k) p.push_back(p.back() * x);
  return p;
}
}  // namespace detail

/// a o p truncated at a.order().
template <JetScalar T>
Jet2<T> compose2(const Jet2<T>& a, const PolyMap2<T>& p) {
  const int n = a.order();
  Jet2<T> r(n);
  if (n < 0) return r;
  const auto pu = detail::powers(p[0].resized(n), n, n);
  const auto pv = detail::powers(p[1].resized(n), n, n);
  a.for_each_nonzero([&](int i, int j, const T& c) { r += c * (pu[i] * pv[j]); });
  return r;
}

template <JetScalar T>
MapJet<T> compose_map(const MapJet<T>& f, const PolyMap2<T>& p) {
  return MapJet<T>(compose2(f[0], p), compose2(f[1], p), compose2(f[2], p));
}

template <JetScalar T>
JetVec3<T> compose_vec(const JetVec3<T>& f, const PolyMap2<T>& p) {
  return {compose2(f[0], p), compose2(f[1], p), compose2(f[2], p)};
}

/// Phi o f, each component of Phi evaluated at (f1,f2,f3) in jet arithmetic.
template <JetScalar T>
JetVec3<T> post_compose(const PolyMap3<T>& phi, const JetVec3<T>& f) {
  const int n = f.order();
  const int d = phi.degree();
  const auto p0 = detail::powers(f[0].truncated(n), d, n);
  const auto p1 = detail::powers(f[1].truncated(n), d, n);
  const auto p2 = detail::powers(f[2].truncated(n), d, n);
  JetVec3<T> r{Jet2<T>(n), Jet2<T>(n), Jet2<T>(n)};
  for (std::size_t k = 0; k < 3; ++k)
    for (const auto& t : phi.component(k)) r[k] += t.c * (p0[t.i] * p1[t.j] * p2[t.k]);
  return r;
}

template <JetScalar T>
MapJet<T> post_compose(const PolyMap3<T>& phi, const MapJet<T>& f) {
  return MapJet<T>(post_compose(phi, f.jets()));
}

/// 1/a as a truncated series. Exact mode needs a(0) = 1.
template <JetScalar T>
Jet2<T> inv_series(const Jet2<T>& a) {
  const int n = a.order();
  const T c0 = a.at0();
  const T one = ScalarOps<T>::from_int(1);
  if constexpr (ScalarOps<T>::mode == Mode::Exact) {
    if (c0 != one) throw PreconditionError("inv_series needs constant term 1 in exact mode");
  } else {
    if (ScalarOps<T>::sign(c0) <= 0) throw PreconditionError("inv_series needs a positive constant term");
  }
  const T inv_c0 = one / c0;
  Jet2<T> e = inv_c0 * a - Jet2<T>::constant(one, n);  // a = c0 (1 + e)
  Jet2<T> term = Jet2<T>::constant(one, n);
  Jet2<T> sum = term;
  for (int k = 1; k <= n; ++k) {
    term = -(term * e);
    sum += term;
  }
  return inv_c0 * sum;
}

/// a^{-1/2} as a truncated binomial series. Exact mode needs a(0) = 1.
template <JetScalar T>
Jet2<T> invsqrt_series(const Jet2<T>& a) {
  const int n = a.order();
  const T c0 = a.at0();
  const T one = ScalarOps<T>::from_int(1);
  T scale = one;
  if constexpr (ScalarOps<T>::mode == Mode::Exact) {
    if (c0 != one) throw PreconditionError("invsqrt_series needs constant term 1 in exact mode");
  } else {
    if (ScalarOps<T>::sign(c0) <= 0) throw PreconditionError("invsqrt_series needs a positive constant term");
    scale = T(1.0 / std::sqrt(ScalarOps<T>::to_double(c0)));
  }
  const Jet2<T> e = (one / c0) * a - Jet2<T>::constant(one, n);
  // (1+e)^{-1/2} = sum_k binom(-1/2, k) e^k
  Jet2<T> power = Jet2<T>::constant(one, n);
  Jet2<T> sum = power;
  T binom = one;
  for (int k = 1; k <= n; ++k) {
    binom = binom * ScalarOps<T>::from_int(-(2 * k - 1)) / ScalarOps<T>::from_int(2 * k);
    power = power * e;
    sum += binom * power;
  }
  return scale * sum;
}

inline long factorial(int n) {
  long r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

/// Converts coefficients a_ij of sum a_ij/(i! j!) u^i v^j into a plain jet.
template <JetScalar T>
Jet2<T> from_divided_coeffs(const std::map<std::pair<int, int>, T>& table, int order) {
  Jet2<T> r(order);
  for (const auto& [ij, value] : table) {
    const auto [i, j] = ij;
    if (i < 0 || j < 0 || i + j > order)
      throw InputError("coefficient index (" + std::to_string(i) + "," + std::to_string(j) + ") outside order " +
                       std::to_string(order));
    r.set(i, j, value / ScalarOps<T>::from_int(factorial(i) * factorial(j)));
  }
  return r;
}

/// Canonical text form, e.g. "u^3*v + 1/2*v^2", accepted back by parse_poly.
template <JetScalar T>
std::string format_poly(const Jet2<T>& a) {
  std::string out;
  a.for_each_nonzero([&](int i, int j, const T& c) {
    std::string mono;
    if (i > 0) mono += i == 1 ? "u" : "u^" + std::to_string(i);
    if (j > 0) mono += (mono.empty() ? "" : "*") + std::string(j == 1 ? "v" : "v^" + std::to_string(j));
    const bool negative = ScalarOps<T>::sign(c) < 0;
    const T mag = negative ? T(-c) : c;
    std::string coef = ScalarOps<T>::format(mag);
    std::string term;
    if (mono.empty()) {
      term = coef;
    } else if (coef == "1") {
      term = mono;
    } else {
      term = coef + "*" + mono;
    }
    if (out.empty()) {
      out = negative ? "-" + term : term;
    } else {
      out += negative ? " - " + term : " + " + term;
    }
  });
  return out.empty() ? "0" : out;
}

}  // namespace crosscap
