#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "crosscap/classifier.hpp"

namespace crosscap {

struct FuzzConfig {
  std::uint64_t seed = 1;
  int trials = 100;
  int bound = 9;   // numerators in [-bound, bound], denominators in [1, bound]
  int degree = 3;  // total degree of the random diffeomorphisms
  int order = kDefaultOrder;

  void validate() const {
    if (trials < 1) throw InputError("trials: must be at least 1");
    if (bound < 1) throw InputError("bound: must be at least 1");
    if (degree < 1 || degree > order) throw InputError("degree: must lie in 1..order");
  }
};

/// Per-trial generator derived from the run seed, independent of execution order.
inline std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return std::mt19937_64(z);
}

inline Rational random_rational(std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<long> num(-bound, bound);
  std::uniform_int_distribution<long> den(1, bound);
  return make_rational(num(rng), den(rng));
}

inline Rational random_nonzero_rational(std::mt19937_64& rng, int bound) {
  for (;;) {
    Rational r = random_rational(rng, bound);
    if (sgn(r) != 0) return r;
  }
}

/// Random (u,v) -> (p1, p2), zero constant term, invertible linear part.
inline PolyMap2<Rational> random_source_diffeo(const FuzzConfig& cfg, std::mt19937_64& rng) {
  for (;;) {
    Jet2<Rational> p1(cfg.degree), p2(cfg.degree);
    for (int d = 1; d <= cfg.degree; ++d)
      for (int j = 0; j <= d; ++j) {
        p1.set(d - j, j, random_rational(rng, cfg.bound));
        p2.set(d - j, j, random_rational(rng, cfg.bound));
      }
    PolyMap2<Rational> p(p1, p2);
    if (p.is_invertible()) return p;
  }
}

/// Random R^3 -> R^3 polynomial map, zero constant term, invertible linear part.
inline PolyMap3<Rational> random_target_diffeo(const FuzzConfig& cfg, std::mt19937_64& rng) {
  for (;;) {
    std::array<std::vector<PolyMap3<Rational>::Term>, 3> comps;
    for (auto& comp : comps)
      for (int d = 1; d <= cfg.degree; ++d)
        for (int i = 0; i <= d; ++i)
          for (int j = 0; i + j <= d; ++j) {
            Rational c = random_rational(rng, cfg.bound);
            if (sgn(c) != 0) comp.push_back({i, j, d - i - j, c});
          }
    PolyMap3<Rational> phi(comps);
    if (phi.is_invertible()) return phi;
  }
}

/// phi_t o f o phi_s.
template <JetScalar T>
MapJet<T> act(const MapJet<T>& f, const PolyMap2<T>& phi_s, const PolyMap3<T>& phi_t) {
  return compose_map(post_compose(phi_t, f), phi_s);
}

/// The seven normal forms of the classification table, exact, at the given order.
struct NamedGerm {
  std::string name;
  Verdict expected;
  MapJet<Rational> germ;
};

inline std::vector<NamedGerm> normal_forms(int order = kDefaultOrder) {
  using J = Jet2<Rational>;
  const auto m = [order](int i, int j, long c = 1) { return J::monomial(i, j, Rational(c), order); };
  const J u = m(1, 0), v2 = m(0, 2);
  return {
      {"S0 (u, v^2, uv)", Verdict::WhitneyUmbrella, {u, v2, m(1, 1)}},
      {"S1+ (u, v^2, v(u^2 + v^2))", Verdict::S1Plus, {u, v2, m(2, 1) + m(0, 3)}},
      {"S1- (u, v^2, v(-u^2 + v^2))", Verdict::S1Minus, {u, v2, m(0, 3) - m(2, 1)}},
      {"S2 (u, v^2, v(u^3 + v^2))", Verdict::S2, {u, v2, m(3, 1) + m(0, 3)}},
      {"B2+ (u, v^2, v(u^2 + v^4))", Verdict::B2Plus, {u, v2, m(2, 1) + m(0, 5)}},
      {"B2- (u, v^2, v(u^2 - v^4))", Verdict::B2Minus, {u, v2, m(2, 1) - m(0, 5)}},
      {"H2 (u, uv + v^5, v^3)", Verdict::H2, {u, m(1, 1) + m(0, 5), m(0, 3)}},
  };
}

enum class PushforwardRule { T1 = 1, T2, T3, T4, T5, T6, T7 };

/// A word applied right to left, with its letters optionally identified as
/// members of an adapted pair.
template <JetScalar T>
struct PushforwardCase {
  std::vector<VectorFieldJet<T>> word;
  std::optional<FramePair<T>> pair;  // needed for T4..T7
};

namespace detail {

template <JetScalar T>
bool is_null(const VectorFieldJet<T>& z, const MapJet<T>& f, const Tolerance& tol) {
  if (z.vanishes_at0(tol)) return false;
  const auto& F = f.jets();
  Vec3<T> d;
  const auto fu = F.partial_u().at0(), fv = F.partial_v().at0();
  const T a = z.a.at0(), b = z.b.at0();
  for (int k = 0; k < 3; ++k) d[k] = a * fu[k] + b * fv[k];
  return is_zero_vec(d, tol);
}

template <JetScalar T>
bool pair_level_holds(const MapJet<T>& f, const FramePair<T>& p, FrameLevel need, const Tolerance& tol) {
  const auto z = [&](std::vector<VectorFieldJet<T>> w) { return is_zero_vec(apply_word(w, f).at0(), tol); };
  const auto& X = p.xi;
  const auto& E = p.eta;
  switch (need) {
    case FrameLevel::SB2:
      return is_sb_type(f, tol) && z({X, E}) && z({E, X}) && is_null(E, f, tol);
    case FrameLevel::S3:
      return pair_level_holds(f, p, FrameLevel::SB2, tol) && z({X, X, E}) && z({X, E, X}) && z({E, X, X});
    case FrameLevel::B3:
      return pair_level_holds(f, p, FrameLevel::SB2, tol) && z({E, E, E});
    case FrameLevel::H2:
      return is_hp_type(f, tol) && z({E, E}) && is_null(E, f, tol);
    default:
      return false;
  }
}

}  // namespace detail

/// Which of the rules T-1..T-7 covers the case, or nullopt.
template <JetScalar T>
std::optional<PushforwardRule> pushforward_rule(const MapJet<T>& f, const PushforwardCase<T>& c,
                                                const Tolerance& tol = {}) {
  const auto& w = c.word;
  const std::size_t n = w.size();
  // word = [z_n, ..., z_1]; z_1 acts first
  const auto z = [&](std::size_t k) -> const VectorFieldJet<T>& { return w[n - k]; };
  if (n == 1) return PushforwardRule::T1;
  if (n == 2 && (detail::is_null(z(1), f, tol) || detail::is_null(z(2), f, tol))) return PushforwardRule::T2;
  if (n == 3 && detail::is_null(z(1), f, tol) && detail::is_null(z(3), f, tol)) return PushforwardRule::T3;
  if (!c.pair) return std::nullopt;
  const auto& P = *c.pair;
  std::size_t etas = 0;
  for (const auto& x : w) {
    if (x.same_coefficients(P.eta)) {
      ++etas;
    } else if (!x.same_coefficients(P.xi)) {
      return std::nullopt;
    }
  }
  if (n == 3 && etas == 1 && detail::pair_level_holds(f, P, FrameLevel::SB2, tol)) return PushforwardRule::T4;
  if (n == 4 && etas == 1 && detail::pair_level_holds(f, P, FrameLevel::S3, tol)) return PushforwardRule::T5;
  if (n == 4 && etas == 3 && detail::pair_level_holds(f, P, FrameLevel::B3, tol)) return PushforwardRule::T6;
  if (n == 5 && etas == 5 && detail::pair_level_holds(f, P, FrameLevel::H2, tol)) return PushforwardRule::T7;
  return std::nullopt;
}

/// word(Phi o f)(0) == J_Phi(0) word(f)(0), with no hypothesis check.
template <JetScalar T>
bool pushforward_identity_holds(const MapJet<T>& f, const PolyMap3<T>& phi, const std::vector<VectorFieldJet<T>>& word,
                                const Tolerance& tol = {}) {
  const Vec3<T> lhs = apply_word(word, post_compose(phi, f.jets())).at0();
  const Vec3<T> rhs = phi.linear_part() * apply_word(word, f).at0();
  return is_zero_vec(Vec3<T>{T(lhs[0] - rhs[0]), T(lhs[1] - rhs[1]), T(lhs[2] - rhs[2])}, tol);
}

/// Checks the pushforward identity for a case covered by one of T-1..T-7.
template <JetScalar T>
bool check_target_pushforward(const MapJet<T>& f, const PolyMap3<T>& phi, const PushforwardCase<T>& c,
                              const Tolerance& tol = {}) {
  if (!pushforward_rule(f, c, tol))
    throw PreconditionError("word [" + word_name(c.word) + "] matches none of the hypotheses T-1..T-7");
  return pushforward_identity_holds(f, phi, c.word, tol);
}

}  // namespace crosscap
