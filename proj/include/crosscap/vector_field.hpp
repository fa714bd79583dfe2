#pragma once

#include <string>
#include <utility>
#include <vector>

#include "crosscap/jet.hpp"

namespace crosscap {

enum class FrameLevel { Untagged, Adapted, SB2, S3, B3, H2, H4 };

inline const char* to_string(FrameLevel level) {
  switch (level) {
    case FrameLevel::Untagged: return "untagged";
    case FrameLevel::Adapted: return "adapted";
    case FrameLevel::SB2: return "SB-2";
    case FrameLevel::S3: return "S-3";
    case FrameLevel::B3: return "B-3";
    case FrameLevel::H2: return "H-2";
    case FrameLevel::H4: return "H-4";
  }
  return "?";
}

/// zeta = a d/du + b d/dv. The coefficients are polynomials: when a field acts
/// on a jet of order n they are read as exact polynomials at order n - 1.
template <JetScalar T>
struct VectorFieldJet {
  Jet2<T> a;
  Jet2<T> b;
  FrameLevel level = FrameLevel::Untagged;
  std::string name = "zeta";

  static VectorFieldJet du(int order = 1) {
    return {Jet2<T>::constant(ScalarOps<T>::from_int(1), order), Jet2<T>(order), FrameLevel::Untagged, "du"};
  }
  static VectorFieldJet dv(int order = 1) {
    return {Jet2<T>(order), Jet2<T>::constant(ScalarOps<T>::from_int(1), order), FrameLevel::Untagged, "dv"};
  }

  std::array<T, 2> at0() const { return {a.at0(), b.at0()}; }
  bool vanishes_at0(const Tolerance& tol = {}) const {
    return ScalarOps<T>::is_zero(a.at0(), tol) && ScalarOps<T>::is_zero(b.at0(), tol);
  }
  int order() const { return std::min(a.order(), b.order()); }
  bool same_coefficients(const VectorFieldJet& o) const {
    const int n = std::max(order(), o.order());
    return a.resized(n) == o.a.resized(n) && b.resized(n) == o.b.resized(n);
  }
};

template <JetScalar T>
struct FramePair {
  VectorFieldJet<T> xi;
  VectorFieldJet<T> eta;
  FrameLevel level = FrameLevel::Untagged;

  T det0() const { return xi.a.at0() * eta.b.at0() - xi.b.at0() * eta.a.at0(); }
};

/// Directional derivative of a scalar jet.
template <JetScalar T>
Jet2<T> apply(const VectorFieldJet<T>& z, const Jet2<T>& g) {
  const int n = g.order() - 1;
  if (n < 0) throw OrderExhausted("derivative along " + z.name + " of a jet of order " + std::to_string(g.order()));
  return z.a.resized(n) * g.partial_u() + z.b.resized(n) * g.partial_v();
}

template <JetScalar T>
JetVec3<T> apply(const VectorFieldJet<T>& z, const JetVec3<T>& f) {
  return {apply(z, f[0]), apply(z, f[1]), apply(z, f[2])};
}

template <JetScalar T>
JetVec3<T> apply(const VectorFieldJet<T>& z, const MapJet<T>& f) {
  return apply(z, f.jets());
}

template <JetScalar T>
std::string word_name(const std::vector<VectorFieldJet<T>>& word) {
  std::string s;
  for (const auto& z : word) s += (s.empty() ? "" : " ") + z.name;
  return s.empty() ? "(empty)" : s;
}

/// apply_word([z3, z2, z1], F) = z3(z2(z1 F)): the last entry acts first.
template <JetScalar T>
JetVec3<T> apply_word(const std::vector<VectorFieldJet<T>>& word, const JetVec3<T>& f) {
  JetVec3<T> r = f;
  try {
    for (auto it = word.rbegin(); it != word.rend(); ++it) r = apply(*it, r);
  } catch (const OrderExhausted& e) {
    throw OrderExhausted("word [" + word_name(word) + "] exhausts a jet of order " + std::to_string(f.order()));
  }
  return r;
}

template <JetScalar T>
JetVec3<T> apply_word(const std::vector<VectorFieldJet<T>>& word, const MapJet<T>& f) {
  return apply_word(word, f.jets());
}

template <JetScalar T>
Jet2<T> apply_word(const std::vector<VectorFieldJet<T>>& word, const Jet2<T>& g) {
  Jet2<T> r = g;
  for (auto it = word.rbegin(); it != word.rend(); ++it) r = apply(*it, r);
  return r;
}

/// Lie bracket [z1, z2]; exact for polynomial coefficients.
template <JetScalar T>
VectorFieldJet<T> bracket(const VectorFieldJet<T>& z1, const VectorFieldJet<T>& z2) {
  const int n = std::max(1, z1.order() + z2.order());
  VectorFieldJet<T> p{z1.a.resized(n + 1), z1.b.resized(n + 1), z1.level, z1.name};
  VectorFieldJet<T> q{z2.a.resized(n + 1), z2.b.resized(n + 1), z2.level, z2.name};
  return {apply(p, q.a) - apply(q, p.a), apply(p, q.b) - apply(q, p.b), FrameLevel::Untagged,
          "[" + z1.name + "," + z2.name + "]"};
}

}  // namespace crosscap
