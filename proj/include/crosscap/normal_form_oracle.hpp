#pragma once

#include <map>
#include <string>
#include <utility>

#include "crosscap/classifier.hpp"

namespace crosscap {

using CoeffTable = std::map<std::pair<int, int>, Rational>;

inline Rational coeff_or_zero(const CoeffTable& t, int i, int j) {
  const auto it = t.find({i, j});
  return it == t.end() ? Rational(0) : it->second;
}

/// Germ (u, v^2/2 + b(v), a(u,v)) with divided coefficients a_ij, 3 <= i+j <= 5,
/// a30 = a40 = a50 = 0, and b(v) = b03 v^3/3! + b04 v^4/4! + b05 v^5/5!.
struct SBNormalCoeffs {
  CoeffTable a;
  Rational b03 = 0, b04 = 0, b05 = 0;

  Rational A(int i, int j) const { return coeff_or_zero(a, i, j); }
  void validate() const;
};

/// Germ (u, uv + a(u,v), b(u,v)) with divided coefficients, 3 <= i+j <= 5.
struct HNormalCoeffs {
  CoeffTable a, b;

  Rational A(int i, int j) const { return coeff_or_zero(a, i, j); }
  Rational B(int i, int j) const { return coeff_or_zero(b, i, j); }
  void validate() const;
};

struct SkbkResult {
  Classification classification;
  Rational b2_value;  // 3 a05 a21 - 5 a13^2
};

/// Coefficient conditions for S2 and B2+- on SB normal forms. Germs with
/// a21 a03 != 0 are S1; the sign follows -a21 a03 (the product of the
/// diagonal Hessian entries of phi).
SkbkResult skbk_classify(const SBNormalCoeffs& c);

struct H2CheckResult {
  Classification classification;
  Rational c;             // the polynomial c of the H2 condition
  Rational c_special;     // b03 (4 a05 b03 - 5 a04 b04), meaningful when a12 = a03 = 0
  bool special_case = false;
};

H2CheckResult h2_check(const HNormalCoeffs& c);

/// Polynomial c of the H2 condition.
Rational h2_polynomial(const HNormalCoeffs& c);

MapJet<Rational> to_map_jet(const SBNormalCoeffs& c, int order = kDefaultOrder);
MapJet<Rational> to_map_jet(const HNormalCoeffs& c, int order = kDefaultOrder);

}  // namespace crosscap
