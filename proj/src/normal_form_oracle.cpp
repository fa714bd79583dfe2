#include "crosscap/normal_form_oracle.hpp"

namespace crosscap {

namespace {

void check_range(const CoeffTable& t, const std::string& letter, int lo, int hi) {
  for (const auto& [ij, value] : t) {
    const auto [i, j] = ij;
    if (i < 0 || j < 0 || i + j < lo || i + j > hi)
      throw InputError(letter + std::to_string(i) + std::to_string(j) + ": index outside " + std::to_string(lo) +
                       " <= i+j <= " + std::to_string(hi));
  }
}

Jet2<Rational> divided(const CoeffTable& t, int order) {
  CoeffTable kept;
  for (const auto& [ij, value] : t)
    if (ij.first + ij.second <= order) kept.emplace(ij, value);
  return from_divided_coeffs(kept, order);
}

}  // namespace

void SBNormalCoeffs::validate() const {
  check_range(a, "a", 3, 5);
  for (int i = 3; i <= 5; ++i)
    if (sgn(A(i, 0)) != 0) throw InputError("a" + std::to_string(i) + "0 must be zero in the SB normal form");
}

void HNormalCoeffs::validate() const {
  check_range(a, "a", 3, 5);
  check_range(b, "b", 3, 5);
}

SkbkResult skbk_classify(const SBNormalCoeffs& c) {
  c.validate();
  const Rational a21 = c.A(2, 1), a03 = c.A(0, 3), a31 = c.A(3, 1);
  const Rational a05 = c.A(0, 5), a13 = c.A(1, 3);
  SkbkResult r;
  r.b2_value = 3 * a05 * a21 - 5 * a13 * a13;
  if (sgn(a21) != 0 && sgn(a03) != 0) {
    r.classification = {sgn(a21) * sgn(a03) > 0 ? Verdict::S1Plus : Verdict::S1Minus, ""};
  } else if (sgn(a21) == 0 && sgn(a03) != 0) {
    r.classification = sgn(a31) != 0 ? Classification{Verdict::S2, ""}
                                     : Classification{Verdict::MoreDegenerate, "a21 = 0, a03 != 0, a31 = 0"};
  } else if (sgn(a03) == 0 && sgn(a21) != 0) {
    const int s = sgn(r.b2_value);
    r.classification = s > 0   ? Classification{Verdict::B2Plus, ""}
                       : s < 0 ? Classification{Verdict::B2Minus, ""}
                               : Classification{Verdict::MoreDegenerate, "a03 = 0, 3 a05 a21 - 5 a13^2 = 0"};
  } else {
    r.classification = {Verdict::MoreDegenerate, "a21 = a03 = 0"};
  }
  return r;
}

Rational h2_polynomial(const HNormalCoeffs& c) {
  const Rational a03 = c.A(0, 3), a04 = c.A(0, 4), a05 = c.A(0, 5), a12 = c.A(1, 2);
  const Rational b03 = c.B(0, 3), b04 = c.B(0, 4), b05 = c.B(0, 5), b12 = c.B(1, 2);
  return (4 * a05 - 10 * a04 * a12) * b03 * b03 +
         (-5 * a04 * b04 - 4 * a03 * b05 + 10 * a03 * a12 * b04 + 10 * a03 * a04 * b12) * b03 +
         a03 * (5 * b04 * b04 - 10 * a03 * b04 * b12);
}

H2CheckResult h2_check(const HNormalCoeffs& c) {
  c.validate();
  H2CheckResult r;
  const Rational b03 = c.B(0, 3);
  r.c = h2_polynomial(c);
  r.special_case = sgn(c.A(1, 2)) == 0 && sgn(c.A(0, 3)) == 0;
  r.c_special = b03 * (4 * c.A(0, 5) * b03 - 5 * c.A(0, 4) * c.B(0, 4));
  if (sgn(b03) == 0) {
    r.classification = {Verdict::MoreDegenerate, "b03 = 0: not H-type"};
    return r;
  }
  const Rational& decisive = r.special_case ? r.c_special : r.c;
  r.classification = sgn(decisive) != 0 ? Classification{Verdict::H2, ""}
                                        : Classification{Verdict::MoreDegenerate, "b03 != 0, c = 0"};
  return r;
}

MapJet<Rational> to_map_jet(const SBNormalCoeffs& c, int order) {
  c.validate();
  CoeffTable b{{{0, 2}, Rational(1)}, {{0, 3}, c.b03}, {{0, 4}, c.b04}, {{0, 5}, c.b05}};
  return MapJet<Rational>(Jet2<Rational>::u(order), divided(b, order), divided(c.a, order));
}

MapJet<Rational> to_map_jet(const HNormalCoeffs& c, int order) {
  c.validate();
  return MapJet<Rational>(Jet2<Rational>::u(order),
                          Jet2<Rational>::monomial(1, 1, Rational(1), order) + divided(c.a, order), divided(c.b, order));
}

}  // namespace crosscap
