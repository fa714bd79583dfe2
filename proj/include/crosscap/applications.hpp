#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crosscap/classifier.hpp"
#include "crosscap/normal_form_oracle.hpp"

namespace crosscap {

/// Univariate power series in v: coefficient k multiplies v^k.
template <JetScalar T>
struct Series1 {
  std::vector<T> c;

  Series1() = default;
  explicit Series1(std::vector<T> coeffs) : c(std::move(coeffs)) {}

  T at(std::size_t k) const { return k < c.size() ? c[k] : ScalarOps<T>::from_int(0); }
  /// k-th derivative at 0.
  T deriv0(int k) const { return ScalarOps<T>::from_int(factorial(k)) * at(static_cast<std::size_t>(k)); }
  int order() const { return static_cast<int>(c.size()) - 1; }

  static Series1 from_jet(const Jet2<T>& j) {
    for (int d = 0; d <= j.order(); ++d)
      for (int i = 1; i <= d; ++i)
        if (!ScalarOps<T>::is_zero(j.coeff(i, d - i)))
          throw InputError("univariate series must not depend on u");
    std::vector<T> c;
    for (int k = 0; k <= j.order(); ++k) c.push_back(j.coeff(0, k));
    return Series1(std::move(c));
  }
};

template <JetScalar T>
using VecSeries = std::vector<Vec3<T>>;  // coefficient k multiplies v^k

template <JetScalar T>
struct RuledFrame {
  VecSeries<T> a1, a2, a3;
};

/// Power-series solution of a1' = a2, a2' = -a1 + c3 a3, a3' = -c3 a2 with
/// a_i(0) = e_i, up to v^order.
template <JetScalar T>
RuledFrame<T> ruled_frame(const Series1<T>& c3, int order) {
  const T zero = ScalarOps<T>::from_int(0), one = ScalarOps<T>::from_int(1);
  RuledFrame<T> fr;
  fr.a1.assign(order + 1, {zero, zero, zero});
  fr.a2 = fr.a1;
  fr.a3 = fr.a1;
  fr.a1[0] = {one, zero, zero};
  fr.a2[0] = {zero, one, zero};
  fr.a3[0] = {zero, zero, one};
  for (int n = 0; n < order; ++n) {
    const T inv = one / ScalarOps<T>::from_int(n + 1);
    for (int x = 0; x < 3; ++x) {
      T s2 = -fr.a1[n][x];
      T s3 = zero;
      for (int k = 0; k <= n; ++k) {
        s2 += c3.at(k) * fr.a3[n - k][x];
        s3 -= c3.at(k) * fr.a2[n - k][x];
      }
      fr.a1[n + 1][x] = inv * fr.a2[n][x];
      fr.a2[n + 1][x] = inv * s2;
      fr.a3[n + 1][x] = inv * s3;
    }
  }
  return fr;
}

template <JetScalar T>
struct RuledData {
  Series1<T> gamma1, gamma3, c3;

  void validate() const {
    if (!ScalarOps<T>::is_zero(gamma3.at(0))) throw InputError("gamma3: gamma3(0) must vanish (singular point at the origin)");
  }
};

/// f(u,v) = gamma(v) + (u - G1(v)) a1(v), written in the basis a_i(0).
template <JetScalar T>
MapJet<T> ruled_map(const RuledData<T>& d, int order = kDefaultOrder) {
  d.validate();
  const RuledFrame<T> fr = ruled_frame(d.c3, order);
  const T zero = ScalarOps<T>::from_int(0);
  VecSeries<T> gamma(order + 1, {zero, zero, zero});
  std::vector<T> G1(order + 1, zero);
  for (int n = 0; n < order; ++n) {
    const T inv = ScalarOps<T>::from_int(1) / ScalarOps<T>::from_int(n + 1);
    G1[n + 1] = inv * d.gamma1.at(n);
    for (int x = 0; x < 3; ++x) {
      T s = zero;
      for (int k = 0; k <= n; ++k) s += d.gamma1.at(k) * fr.a1[n - k][x] + d.gamma3.at(k) * fr.a3[n - k][x];
      gamma[n + 1][x] = inv * s;
    }
  }
  std::array<Jet2<T>, 3> comp{Jet2<T>(order), Jet2<T>(order), Jet2<T>(order)};
  for (int n = 0; n <= order; ++n) {
    for (int x = 0; x < 3; ++x) {
      T s = gamma[n][x];
      for (int k = 0; k <= n; ++k) s -= G1[k] * fr.a1[n - k][x];
      comp[x].set(0, n, s);
      if (n + 1 <= order) comp[x].set(1, n, fr.a1[n][x]);
    }
  }
  return MapJet<T>(comp[0], comp[1], comp[2]);
}

/// A verdict together with the quantities it was decided from.
template <JetScalar T>
struct FormulaResult {
  Classification classification;
  std::vector<NamedValue<T>> values;
  std::string note;

  const T* value(const std::string& name) const {
    for (const auto& nv : values)
      if (nv.name == name) return &nv.value;
    return nullptr;
  }
};

/// The ruled-surface conditions evaluated in order: Whitney umbrella, S1, S2, B2, H2.
template <JetScalar T>
FormulaResult<T> ruled_classify_formulas(const RuledData<T>& d, const Tolerance& tol = {}) {
  d.validate();
  using O = ScalarOps<T>;
  const auto n = [](long k) { return O::from_int(k); };
  const T g1 = d.gamma1.deriv0(0), g1p = d.gamma1.deriv0(1), g1pp = d.gamma1.deriv0(2), g1ppp = d.gamma1.deriv0(3);
  const T g3p = d.gamma3.deriv0(1), g3pp = d.gamma3.deriv0(2), g3ppp = d.gamma3.deriv0(3), g3pppp = d.gamma3.deriv0(4);
  const T c3 = d.c3.deriv0(0), c3p = d.c3.deriv0(1), c3pp = d.c3.deriv0(2);
  FormulaResult<T> r;
  auto rec = [&](const std::string& name, const std::string& formula, const T& v) {
    r.values.push_back({name, formula, v});
    return v;
  };
  const auto zero = [&](const T& x) { return O::is_zero(x, tol); };
  rec("gamma3'(0)", "gamma3'(0)", g3p);
  rec("gamma1(0)", "gamma1(0)", g1);
  rec("gamma3''(0)", "gamma3''(0)", g3pp);
  if (!zero(g3p)) {
    r.classification = {Verdict::WhitneyUmbrella, ""};
    return r;
  }
  if (!zero(g1)) {
    const T s1 = rec("s1_factor", "gamma3''(0) (gamma3''(0) - 2 c3(0) gamma1(0))", g3pp * (g3pp - n(2) * c3 * g1));
    if (!zero(s1)) {
      r.classification = {O::sign(s1, tol) > 0 ? Verdict::S1Plus : Verdict::S1Minus, ""};
      return r;
    }
    if (zero(g3pp)) {
      const T s2 = rec("s2_factor", "c3(0) gamma1(0) gamma3'''(0)", c3 * g1 * g3ppp);
      if (!zero(c3)) {
        r.classification = zero(s2) ? Classification{Verdict::MoreDegenerate, "S-type with gamma3'''(0) = 0"}
                                    : Classification{Verdict::S2, ""};
        return r;
      }
      r.classification = {Verdict::MoreDegenerate, "gamma3''(0) = c3(0) = 0"};
      return r;
    }
    // B-type: c3(0) = gamma3''(0) / (2 gamma1(0)), gamma3''(0) != 0
    const T b = rec("b",
                    "ruled-surface B2 polynomial b",
                    n(-20) * c3p * c3p * g1 * g1 * g1 * g1 +
                        (n(-12) * c3pp * g3pp + n(20) * c3p * g3ppp) * g1 * g1 * g1 +
                        (n(-28) * c3p * g1p * g3pp - n(5) * g3ppp * g3ppp - n(24) * g3pp * g3pp + n(3) * g3pp * g3pppp) *
                            g1 * g1 +
                        n(2) * g3pp * (n(5) * g1p * g3ppp - n(3) * g1pp * g3pp) * g1 -
                        n(5) * g1p * g1p * g3pp * g3pp - n(3) * g3pp * g3pp * g3pp * g3pp);
    const int sb = O::sign(b, tol);
    r.classification = sb > 0   ? Classification{Verdict::B2Plus, ""}
                       : sb < 0 ? Classification{Verdict::B2Minus, ""}
                                : Classification{Verdict::MoreDegenerate, "B-type with b = 0"};
    return r;
  }
  // HP-type: gamma3'(0) = gamma1(0) = 0
  if (zero(g3pp)) {
    r.classification = {Verdict::MoreDegenerate, "gamma1(0) = gamma3'(0) = gamma3''(0) = 0"};
    return r;
  }
  const T h = rec("h", "ruled-surface H2 polynomial h",
                  n(24) * c3p * g3pp * g3pp * g3pp +
                      (c3 * g3ppp + n(3) * (n(5) * c3 * c3 + n(12)) * g1p + n(4) * g1ppp) * g3pp * g3pp +
                      (n(-4) * g1p * g3pppp - n(5) * g1pp * g3ppp + n(21) * c3 * g1p * g1pp + n(24) * c3p * g1p * g1p) * g3pp +
                      n(5) * g1p * (g3ppp * g3ppp - n(4) * c3 * g1p * g3ppp + n(3) * c3 * c3 * g1p * g1p));
  r.classification = zero(h) ? Classification{Verdict::MoreDegenerate, "H-type with h = 0"}
                             : Classification{Verdict::H2, ""};
  return r;
}

/// Monge-form coefficients a_ij (divided convention), a11 = 0.
template <JetScalar T>
struct MongeCoeffs {
  std::map<std::pair<int, int>, T> a;

  T A(int i, int j) const {
    const auto it = a.find({i, j});
    return it == a.end() ? ScalarOps<T>::from_int(0) : it->second;
  }
  Jet2<T> jet(int order) const {
    std::map<std::pair<int, int>, T> kept;
    for (const auto& [ij, v] : a)
      if (ij.first + ij.second <= order) kept.emplace(ij, v);
    return from_divided_coeffs(kept, order);
  }
  void validate(int lo, int hi) const {
    for (const auto& [ij, v] : a) {
      const int d = ij.first + ij.second;
      if (d < lo || d > hi)
        throw InputError("a" + std::to_string(ij.first) + std::to_string(ij.second) + ": index outside " +
                         std::to_string(lo) + " <= i+j <= " + std::to_string(hi));
    }
    if (!ScalarOps<T>::is_zero(A(1, 1))) throw InputError("a11: must be zero (principal directions along the axes)");
  }
  void validate_center() const {
    validate(2, 6);
    if (ScalarOps<T>::is_zero(A(0, 2))) throw InputError("a02: must be nonzero for a center map");
    if (ScalarOps<T>::is_zero(A(2, 0) - A(0, 2))) throw InputError("a20: must differ from a02 for a center map");
  }
};

/// c = f - (f . nu) nu for f = (u, v, k + a), k = -1/a02, with the unit normal
/// nu = (-a_u, -a_v, 1) / sqrt(1 + a_u^2 + a_v^2); translated to the origin.
template <JetScalar T>
MapJet<T> center_map(const MongeCoeffs<T>& m, int order = kDefaultOrder) {
  m.validate_center();
  const Jet2<T> a = m.jet(order + 1);
  const T k = ScalarOps<T>::from_int(-1) / m.A(0, 2);
  const Jet2<T> au = a.partial_u(), av = a.partial_v();
  const Jet2<T> one = Jet2<T>::constant(ScalarOps<T>::from_int(1), order);
  const Jet2<T> s = invsqrt_series(one + au * au + av * av);
  const JetVec3<T> nu{-(s * au), -(s * av), s};
  const JetVec3<T> f{Jet2<T>::u(order), Jet2<T>::v(order), Jet2<T>::constant(k, order) + a.truncated(order)};
  const Jet2<T> rho = f[0] * nu[0] + f[1] * nu[1] + f[2] * nu[2];
  JetVec3<T> c = f - rho * nu;
  const Vec3<T> c0 = c.at0();
  for (int x = 0; x < 3; ++x) c[x] -= Jet2<T>::constant(c0[x], order);
  return MapJet<T>(c);
}

/// Center-map conditions: S1 from a03 (-a12^2 + a03 a21), S2 from the polynomial s.
template <JetScalar T>
FormulaResult<T> center_classify_formulas(const MongeCoeffs<T>& m, const Tolerance& tol = {}) {
  m.validate_center();
  using O = ScalarOps<T>;
  const auto n = [](long k) { return O::from_int(k); };
  const T a02 = m.A(0, 2), a20 = m.A(2, 0), a03 = m.A(0, 3), a12 = m.A(1, 2), a21 = m.A(2, 1);
  const T a04 = m.A(0, 4), a13 = m.A(1, 3), a22 = m.A(2, 2), a31 = m.A(3, 1);
  FormulaResult<T> r;
  auto rec = [&](const std::string& name, const std::string& formula, const T& v) {
    r.values.push_back({name, formula, v});
    return v;
  };
  rec("a03", "a03", a03);
  if (O::is_zero(a03, tol)) {
    r.classification = {Verdict::MoreDegenerate, "a03 = 0: not SB-type"};
    return r;
  }
  const T disc = rec("s1_discriminant", "-a12^2 + a03 a21", -a12 * a12 + a03 * a21);
  if (!O::is_zero(disc, tol)) {
    r.classification = {O::sign(disc, tol) > 0 ? Verdict::S1Minus : Verdict::S1Plus, ""};
    return r;
  }
  const T s = rec("s",
                  "3 a02^3 a12^3 - a04 a12^3 + 3 a12^2 a13 a03 + (3 a02 a12 a20^2 - 3 a12 a22) a03^2 + a31 a03^3",
                  n(3) * a02 * a02 * a02 * a12 * a12 * a12 - a04 * a12 * a12 * a12 + n(3) * a12 * a12 * a13 * a03 +
                      (n(3) * a02 * a12 * a20 * a20 - n(3) * a12 * a22) * a03 * a03 + a31 * a03 * a03 * a03);
  r.classification = O::is_zero(s, tol) ? Classification{Verdict::MoreDegenerate, "S-type with s = 0"}
                                        : Classification{Verdict::S2, ""};
  return r;
}

/// Angle of the folding plane as (cos, sin).
template <JetScalar T>
struct FoldAngle {
  T cos, sin;
};

/// (u, v^2, f3) with f3(u,v) = a(u cos + v sin, v cos - u sin).
template <JetScalar T>
MapJet<T> folded_map(const MongeCoeffs<T>& m, const FoldAngle<T>& th, int order = kDefaultOrder) {
  m.validate(2, 5);
  const Jet2<T> a = m.jet(order);
  Jet2<T> x(1), y(1);
  x.set(1, 0, th.cos);
  x.set(0, 1, th.sin);
  y.set(1, 0, T(-th.sin));
  y.set(0, 1, th.cos);
  const Jet2<T> f3 = compose2(a, PolyMap2<T>(x, y));
  return MapJet<T>(Jet2<T>::u(order), Jet2<T>::monomial(0, 2, ScalarOps<T>::from_int(1), order), f3);
}

template <JetScalar T>
struct FoldedInvariants {
  T h11, h22, r_s, r_b;
};

template <JetScalar T>
FoldedInvariants<T> folded_invariants(const MongeCoeffs<T>& m, const FoldAngle<T>& th) {
  const auto n = [](long k) { return ScalarOps<T>::from_int(k); };
  const auto a = [&](int i, int j) { return m.A(i, j); };
  const T c = th.cos, s = th.sin;
  auto pw = [](const T& x, int k) {
    T r = ScalarOps<T>::from_int(1);
    for (int i = 0; i < k; ++i) r = r * x;
    return r;
  };
  auto cs = [&](int i, int j) { return T(pw(c, i) * pw(s, j)); };
  FoldedInvariants<T> out;
  out.h11 = -a(2, 1) * cs(3, 0) + (n(2) * a(1, 2) - a(3, 0)) * cs(2, 1) - (a(0, 3) - n(2) * a(2, 1)) * cs(1, 2) -
            a(1, 2) * cs(0, 3);
  out.h22 = a(0, 3) * cs(3, 0) + n(3) * a(1, 2) * cs(2, 1) + n(3) * a(2, 1) * cs(1, 2) + a(3, 0) * cs(0, 3);
  out.r_s = -a(3, 1) * cs(4, 0) + (n(3) * a(2, 2) - a(4, 0)) * cs(3, 1) + n(3) * (-a(1, 3) + a(3, 1)) * cs(2, 2) +
            (a(0, 4) - n(3) * a(2, 2)) * cs(1, 3) + a(1, 3) * cs(0, 4);
  out.r_b =
      (n(5) * a(1, 3) * a(1, 3) - n(3) * a(0, 5) * a(2, 1)) * cs(8, 0) +
      (n(6) * a(0, 5) * a(1, 2) - n(10) * a(0, 4) * a(1, 3) - n(15) * a(1, 4) * a(2, 1) + n(30) * a(1, 3) * a(2, 2) -
       n(3) * a(0, 5) * a(3, 0)) *
          cs(7, 1) +
      (n(5) * a(0, 4) * a(0, 4) - n(3) * a(0, 3) * a(0, 5) - n(30) * a(1, 3) * a(1, 3) + n(30) * a(1, 2) * a(1, 4) +
       n(6) * a(0, 5) * a(2, 1) - n(30) * a(0, 4) * a(2, 2) + n(45) * a(2, 2) * a(2, 2) - n(30) * a(2, 1) * a(2, 3) -
       n(15) * a(1, 4) * a(3, 0) + n(30) * a(1, 3) * a(3, 1)) *
          cs(6, 2) +
      (n(-3) * a(0, 5) * a(1, 2) +
       n(5) * (n(-3) * a(0, 3) * a(1, 4) + n(6) * a(1, 4) * a(2, 1) - n(24) * a(1, 3) * a(2, 2) +
               n(12) * a(1, 2) * a(2, 3) - n(6) * a(2, 3) * a(3, 0) + n(6) * a(0, 4) * (a(1, 3) - a(3, 1)) +
               n(18) * a(2, 2) * a(3, 1) - n(6) * a(2, 1) * a(3, 2) + n(2) * a(1, 3) * a(4, 0))) *
          cs(5, 3) +
      n(5) *
          (n(9) * a(1, 3) * a(1, 3) + n(6) * a(0, 4) * a(2, 2) - n(18) * a(2, 2) * a(2, 2) -
           n(6) * a(0, 3) * a(2, 3) + n(12) * a(2, 1) * a(2, 3) - n(20) * a(1, 3) * a(3, 1) +
           n(9) * a(3, 1) * a(3, 1) - n(3) * a(1, 2) * (a(1, 4) - n(4) * a(3, 2)) - n(6) * a(3, 0) * a(3, 2) -
           n(2) * a(0, 4) * a(4, 0) + n(6) * a(2, 2) * a(4, 0) - n(3) * a(2, 1) * a(4, 1)) *
          cs(4, 4) +
      (n(90) * a(1, 3) * a(2, 2) - n(30) * a(1, 2) * a(2, 3) + n(10) * a(0, 4) * a(3, 1) -
       n(120) * a(2, 2) * a(3, 1) - n(30) * a(0, 3) * a(3, 2) + n(60) * a(2, 1) * a(3, 2) -
       n(30) * a(1, 3) * a(4, 0) + n(30) * a(3, 1) * a(4, 0) + n(30) * a(1, 2) * a(4, 1) -
       n(15) * a(3, 0) * a(4, 1) - n(3) * a(2, 1) * a(5, 0)) *
          cs(3, 5) +
      (n(45) * a(2, 2) * a(2, 2) + n(30) * a(1, 3) * a(3, 1) - n(30) * a(3, 1) * a(3, 1) -
       n(30) * a(1, 2) * a(3, 2) - n(30) * a(2, 2) * a(4, 0) + n(5) * a(4, 0) * a(4, 0) -
       n(15) * a(0, 3) * a(4, 1) + n(30) * a(2, 1) * a(4, 1) + n(6) * a(1, 2) * a(5, 0) -
       n(3) * a(3, 0) * a(5, 0)) *
          cs(2, 6) +
      (n(30) * a(2, 2) * a(3, 1) - n(10) * a(3, 1) * a(4, 0) - n(15) * a(1, 2) * a(4, 1) -
       n(3) * a(0, 3) * a(5, 0) + n(6) * a(2, 1) * a(5, 0)) *
          cs(1, 7) +
      (n(5) * a(3, 1) * a(3, 1) - n(3) * a(1, 2) * a(5, 0)) * cs(0, 8);
  return out;
}

/// Folded-surface verdict from the closed-form invariants. Valid when the
/// folding plane contains a principal direction or the point is umbilic.
template <JetScalar T>
FormulaResult<T> folded_classify_formulas(const MongeCoeffs<T>& m, const FoldAngle<T>& th, const Tolerance& tol = {}) {
  m.validate(2, 5);
  using O = ScalarOps<T>;
  FormulaResult<T> r;
  auto rec = [&](const std::string& name, const std::string& formula, const T& v) {
    r.values.push_back({name, formula, v});
    return v;
  };
  const T cross_term = rec("uv_term", "(a20 - a02) cos sin", (m.A(2, 0) - m.A(0, 2)) * th.cos * th.sin);
  if (!O::is_zero(cross_term, tol)) {
    r.classification = {Verdict::WhitneyUmbrella, ""};
    r.note = "non-umbilic point, folding plane off the principal directions";
    return r;
  }
  const FoldedInvariants<T> inv = folded_invariants(m, th);
  rec("h11", "folded h11", inv.h11);
  rec("h22", "folded h22", inv.h22);
  const bool s_nz = !O::is_zero(inv.h11, tol);
  const bool b_nz = !O::is_zero(inv.h22, tol);
  if (s_nz && b_nz) {
    r.classification = {O::sign(inv.h11 * inv.h22, tol) < 0 ? Verdict::S1Plus : Verdict::S1Minus, ""};
    return r;
  }
  if (!s_nz && b_nz) {
    rec("r_s", "folded r_s", inv.r_s);
    r.classification = O::is_zero(inv.r_s, tol) ? Classification{Verdict::MoreDegenerate, "h11 = 0, r_s = 0"}
                                               : Classification{Verdict::S2, ""};
    return r;
  }
  if (s_nz && !b_nz) {
    rec("r_b", "folded r_b", inv.r_b);
    const int sb = O::sign(inv.r_b, tol);
    r.classification = sb < 0   ? Classification{Verdict::B2Plus, ""}
                       : sb > 0 ? Classification{Verdict::B2Minus, ""}
                                : Classification{Verdict::MoreDegenerate, "h22 = 0, r_b = 0"};
    return r;
  }
  r.classification = {Verdict::MoreDegenerate, "h11 = h22 = 0"};
  return r;
}

/// SB normal-form coefficients read off (u, v^2, f3) after v -> v / sqrt(2)
/// rescaling; exact-mode only.
inline SBNormalCoeffs sb_coeffs_from_folded(const MapJet<Rational>& f) {
  SBNormalCoeffs c;
  const Jet2<Rational>& f3 = f[2];
  // Target changes remove the quadratic part and the pure u^i terms of f3.
  // The rescaling v -> v/sqrt(2) that turns v^2 into v^2/2 multiplies a_ij by
  // 2^(-j/2); every S/B condition is a nonvanishing test or the sign of a
  // weighted-homogeneous expression, so it is read off the unscaled values.
  for (int d = 3; d <= std::min(5, f3.order()); ++d)
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      if (i > 0 && j == 0) continue;
      const Rational value = f3.coeff(i, j) * Rational(factorial(i) * factorial(j));
      if (sgn(value) != 0) c.a[{i, j}] = value;
    }
  return c;
}

}  // namespace crosscap
