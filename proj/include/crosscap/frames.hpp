#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "crosscap/jet.hpp"
#include "crosscap/vector_field.hpp"

namespace crosscap {

/// Result of bringing df_0 into the form f_v(0) = 0, f_u(0) != 0.
template <JetScalar T>
struct Normalization {
  int rank = 1;                         // rank of df_0
  std::optional<MapJet<T>> germ;        // f o L, present when rank == 1
  Mat2<T> L = Mat2<T>::identity();      // (u,v) -> L (u,v)
};

namespace detail {

template <JetScalar T>
double mag(const T& x) {
  return ScalarOps<T>::magnitude(x);
}

template <JetScalar T>
bool vec_zero(const Vec3<T>& x, const Tolerance& tol) {
  return is_zero_vec(x, tol);
}

template <JetScalar T>
std::size_t largest_entry(const Vec3<T>& x) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < 3; ++k)
    if (mag(x[k]) > mag(x[best])) best = k;
  return best;
}

}  // namespace detail

/// Solves t = x * w (w != 0). Returns nullopt when t is not a multiple of w.
template <JetScalar T>
std::optional<T> solve_span1(const Vec3<T>& t, const Vec3<T>& w, const Tolerance& tol = {}) {
  const std::size_t k = detail::largest_entry(w);
  if (ScalarOps<T>::is_zero(w[k], tol)) return std::nullopt;
  const T x = t[k] / w[k];
  for (std::size_t r = 0; r < 3; ++r)
    if (!ScalarOps<T>::is_zero(t[r] - x * w[r], tol)) return std::nullopt;
  return x;
}

/// Solves t = x w1 + y w2 using the 2x2 row subsystem of largest determinant,
/// then checks the remaining row.
template <JetScalar T>
std::optional<std::pair<T, T>> solve_span2(const Vec3<T>& t, const Vec3<T>& w1, const Vec3<T>& w2,
                                           const Tolerance& tol = {}) {
  static constexpr int rows[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  int best = -1;
  double best_mag = -1;
  T best_det = ScalarOps<T>::from_int(0);
  for (int p = 0; p < 3; ++p) {
    const int i = rows[p][0], j = rows[p][1];
    const T d = w1[i] * w2[j] - w1[j] * w2[i];
    if (ScalarOps<T>::is_zero(d, tol)) continue;
    if (detail::mag(d) > best_mag) {
      best = p;
      best_mag = detail::mag(d);
      best_det = d;
    }
  }
  if (best < 0) return std::nullopt;
  const int i = rows[best][0], j = rows[best][1];
  const T x = (t[i] * w2[j] - t[j] * w2[i]) / best_det;
  const T y = (w1[i] * t[j] - w1[j] * t[i]) / best_det;
  for (std::size_t r = 0; r < 3; ++r)
    if (!ScalarOps<T>::is_zero(t[r] - x * w1[r] - y * w2[r], tol)) return std::nullopt;
  return std::make_pair(x, y);
}

/// Solves t = x w1 + y w2 + z w3 by Cramer's rule.
template <JetScalar T>
std::optional<std::array<T, 3>> solve_span3(const Vec3<T>& t, const Vec3<T>& w1, const Vec3<T>& w2,
                                            const Vec3<T>& w3, const Tolerance& tol = {}) {
  const T d = det3(w1, w2, w3);
  if (ScalarOps<T>::is_zero(d, tol)) return std::nullopt;
  return std::array<T, 3>{det3(t, w2, w3) / d, det3(w1, t, w3) / d, det3(w1, w2, t) / d};
}

template <JetScalar T>
int rank_at0(const MapJet<T>& f, const Tolerance& tol = {}) {
  const auto fu = f.jets().partial_u().at0();
  const auto fv = f.jets().partial_v().at0();
  if (!detail::vec_zero(cross(fu, fv), tol)) return 2;
  if (detail::vec_zero(fu, tol) && detail::vec_zero(fv, tol)) return 0;
  return 1;
}

/// Precomposes with a linear map so that d/dv spans ker df_0.
template <JetScalar T>
Normalization<T> linear_normalize(const MapJet<T>& f, const Tolerance& tol = {}) {
  Normalization<T> out;
  out.rank = rank_at0(f, tol);
  if (out.rank != 1) return out;
  const auto fu = f.jets().partial_u().at0();
  const auto fv = f.jets().partial_v().at0();
  const T zero = ScalarOps<T>::from_int(0), one = ScalarOps<T>::from_int(1);
  if (detail::vec_zero(fv, tol)) {
    out.L = Mat2<T>::identity();
  } else if (detail::vec_zero(fu, tol)) {
    out.L = {{{{zero, one}, {one, zero}}}};
  } else {
    const auto lambda = solve_span1(fv, fu, tol);
    if (!lambda) throw PreconditionError("rank-one differential with independent columns");
    out.L = {{{{one, T(-*lambda)}, {zero, one}}}};
  }
  out.germ = compose_map(f, PolyMap2<T>::linear(out.L));
  return out;
}

/// Frame parameters of the adapted-pair constructions.
template <JetScalar T>
struct FrameParams {
  std::optional<T> alpha, beta, alpha1, beta1, delta1;
};

template <JetScalar T>
struct AdaptedFrame {
  FramePair<T> pair;
  FrameParams<T> params;
};

namespace detail {

template <JetScalar T>
Jet2<T> poly(std::initializer_list<std::tuple<int, int, T>> terms, int order = 3) {
  Jet2<T> r(order);
  for (const auto& [i, j, c] : terms) r.add_to(i, j, c);
  return r;
}

template <JetScalar T>
VectorFieldJet<T> field(Jet2<T> a, Jet2<T> b, FrameLevel level, std::string name) {
  return {std::move(a), std::move(b), level, std::move(name)};
}

template <JetScalar T>
T num(long n, long d = 1) {
  return ScalarOps<T>::from_int(n) / ScalarOps<T>::from_int(d);
}

template <JetScalar T>
void require_normalized(const MapJet<T>& f, const Tolerance& tol) {
  if (!vec_zero(f.jets().partial_v().at0(), tol) || vec_zero(f.jets().partial_u().at0(), tol))
    throw PreconditionError("germ is not linearly normalized (need f_v(0) = 0, f_u(0) != 0)");
}

}  // namespace detail

template <JetScalar T>
FramePair<T> coordinate_pair(int order = 1) {
  auto xi = VectorFieldJet<T>::du(order);
  auto eta = VectorFieldJet<T>::dv(order);
  xi.name = "xi";
  eta.name = "eta";
  xi.level = eta.level = FrameLevel::Adapted;
  return {xi, eta, FrameLevel::Adapted};
}

template <JetScalar T>
bool is_sb_type(const MapJet<T>& f, const Tolerance& tol = {}) {
  const auto& F = f.jets();
  return !detail::vec_zero(cross(F.partial_u().at0(), F.partial_v().partial_v().at0()), tol);
}

template <JetScalar T>
bool is_hp_type(const MapJet<T>& f, const Tolerance& tol = {}) {
  const auto& F = f.jets();
  return !is_sb_type(f, tol) && !detail::vec_zero(cross(F.partial_u().at0(), F.partial_u().partial_v().at0()), tol);
}

/// phi(xi, eta) = det(xi f, eta f, eta^2 f) as a jet of order N - 2.
template <JetScalar T>
Jet2<T> phi(const MapJet<T>& f, const FramePair<T>& p) {
  const auto xf = apply(p.xi, f);
  const auto ef = apply(p.eta, f);
  const auto eef = apply(p.eta, ef);
  return det3(xf, ef, eef);
}

template <JetScalar T>
struct PhiHessian {
  T xi2, xieta, etaxi, eta2;  // xi xi phi, xi eta phi, eta xi phi, eta eta phi at 0
};

/// Second derivatives of phi along the fields themselves.
template <JetScalar T>
PhiHessian<T> second_derivatives_phi(const MapJet<T>& f, const FramePair<T>& p) {
  const Jet2<T> g = phi(f, p);
  const Jet2<T> xg = apply(p.xi, g);
  const Jet2<T> eg = apply(p.eta, g);
  return {apply(p.xi, xg).at0(), apply(p.xi, eg).at0(), apply(p.eta, xg).at0(), apply(p.eta, eg).at0()};
}

/// (1 - alpha v) du - beta dv, -alpha u du + dv, with f_uv = alpha f_u + beta f_vv at 0.
template <JetScalar T>
AdaptedFrame<T> sb2_adapt(const MapJet<T>& f, const Tolerance& tol = {}) {
  detail::require_normalized(f, tol);
  if (!is_sb_type(f, tol)) throw PreconditionError("sb2_adapt needs an SB-type germ (f_u x f_vv != 0 at 0)");
  const auto& F = f.jets();
  const auto fu = F.partial_u().at0();
  const auto fvv = F.partial_v().partial_v().at0();
  const auto fuv = F.partial_u().partial_v().at0();
  if (!ScalarOps<T>::is_zero(det3(fu, fvv, fuv), tol))
    throw PreconditionError("sb2_adapt: germ is a Whitney umbrella (det(f_u, f_vv, f_uv)(0) != 0)");
  const auto ab = solve_span2(fuv, fu, fvv, tol);
  if (!ab) throw PreconditionError("sb2_adapt: f_uv(0) is not in span{f_u(0), f_vv(0)}");
  const auto [alpha, beta] = *ab;
  using detail::num;
  const T one = num<T>(1);
  auto xi = detail::field<T>(detail::poly<T>({{0, 0, one}, {0, 1, T(-alpha)}}, 1),
                             detail::poly<T>({{0, 0, T(-beta)}}, 1), FrameLevel::SB2, "xi");
  auto eta = detail::field<T>(detail::poly<T>({{1, 0, T(-alpha)}}, 1), detail::poly<T>({{0, 0, one}}, 1),
                              FrameLevel::SB2, "eta");
  AdaptedFrame<T> out{{xi, eta, FrameLevel::SB2}, {}};
  out.params.alpha = alpha;
  out.params.beta = beta;
  return out;
}

namespace detail {
template <JetScalar T>
PhiHessian<T> sb_hessian(const MapJet<T>& f, const Tolerance& tol) {
  return second_derivatives_phi(f, sb2_adapt(f, tol).pair);
}
}  // namespace detail

/// S-3 adapted pair. Both stages start from the coordinate fields of the
/// normalized germ: first alpha, beta, then alpha1, beta1 from
/// xi~^2 eta~ f = alpha1 xi~ f + beta1 eta~^2 f at 0 with the SB-2 pair.
template <JetScalar T>
AdaptedFrame<T> s3_adapt(const MapJet<T>& f, const Tolerance& tol = {}) {
  const AdaptedFrame<T> sb = sb2_adapt(f, tol);
  const PhiHessian<T> h = second_derivatives_phi(f, sb.pair);
  if (!ScalarOps<T>::is_zero(h.xi2, tol) || ScalarOps<T>::is_zero(h.eta2, tol))
    throw PreconditionError("s3_adapt needs an S-type germ (xi^2 phi(0) = 0, eta^2 phi(0) != 0)");
  const auto& X = sb.pair.xi;
  const auto& E = sb.pair.eta;
  const auto t = apply_word<T>({X, X, E}, f).at0();
  const auto w1 = apply(X, f).at0();
  const auto w2 = apply_word<T>({E, E}, f).at0();
  const auto s = solve_span2(t, w1, w2, tol);
  if (!s) throw PreconditionError("s3_adapt: xi^2 eta f(0) is not in span{xi f(0), eta^2 f(0)}");
  const auto [a1, b1] = *s;
  const T alpha = *sb.params.alpha, beta = *sb.params.beta;
  using detail::num;
  const T one = num<T>(1);
  // a1 = 1 - alpha v + (-alpha1 - alpha^2 beta) u v,   b1 = -beta - beta1 u
  // c1 = -alpha u - alpha1 u^2 / 2,                      d1 = 1
  auto xi = detail::field<T>(
      detail::poly<T>({{0, 0, one}, {0, 1, T(-alpha)}, {1, 1, T(-a1 - alpha * alpha * beta)}}, 2),
      detail::poly<T>({{0, 0, T(-beta)}, {1, 0, T(-b1)}}, 2), FrameLevel::S3, "xi");
  auto eta = detail::field<T>(detail::poly<T>({{1, 0, T(-alpha)}, {2, 0, T(-a1 / num<T>(2))}}, 2),
                              detail::poly<T>({{0, 0, one}}, 2), FrameLevel::S3, "eta");
  AdaptedFrame<T> out{{xi, eta, FrameLevel::S3}, sb.params};
  out.params.alpha1 = a1;
  out.params.beta1 = b1;
  return out;
}

/// B-3 adapted pair from eta~^3 f = alpha1 xi~ f + beta1 eta~^2 f at 0.
template <JetScalar T>
AdaptedFrame<T> b3_adapt(const MapJet<T>& f, const Tolerance& tol = {}) {
  const AdaptedFrame<T> sb = sb2_adapt(f, tol);
  const PhiHessian<T> h = second_derivatives_phi(f, sb.pair);
  if (ScalarOps<T>::is_zero(h.xi2, tol) || !ScalarOps<T>::is_zero(h.eta2, tol))
    throw PreconditionError("b3_adapt needs a B-type germ (eta^2 phi(0) = 0, xi^2 phi(0) != 0)");
  const auto& X = sb.pair.xi;
  const auto& E = sb.pair.eta;
  const auto t = apply_word<T>({E, E, E}, f).at0();
  const auto w1 = apply(X, f).at0();
  const auto w2 = apply_word<T>({E, E}, f).at0();
  const auto s = solve_span2(t, w1, w2, tol);
  if (!s) throw PreconditionError("b3_adapt: eta^3 f(0) is not in span{xi f(0), eta^2 f(0)}");
  const auto [a1, b1] = *s;
  const T alpha = *sb.params.alpha;
  using detail::num;
  const T one = num<T>(1);
  // c1 = -alpha u - alpha1 v^2 / 2,   d1 = 1 - beta1 v / 3
  auto xi = X;
  xi.level = FrameLevel::B3;
  auto eta = detail::field<T>(detail::poly<T>({{1, 0, T(-alpha)}, {0, 2, T(-a1 / num<T>(2))}}, 2),
                              detail::poly<T>({{0, 0, one}, {0, 1, T(-b1 / num<T>(3))}}, 2), FrameLevel::B3, "eta");
  AdaptedFrame<T> out{{xi, eta, FrameLevel::B3}, sb.params};
  out.params.alpha1 = a1;
  out.params.beta1 = b1;
  return out;
}

/// H-2 adapted pair (du, -alpha v du + dv) with f_vv = alpha f_u at 0.
template <JetScalar T>
AdaptedFrame<T> h2_adapt(const MapJet<T>& f, const Tolerance& tol = {}) {
  detail::require_normalized(f, tol);
  if (!is_hp_type(f, tol))
    throw PreconditionError("h2_adapt needs an HP-type germ (f_u x f_vv = 0, f_u x f_uv != 0 at 0)");
  const auto& F = f.jets();
  const auto alpha = solve_span1(F.partial_v().partial_v().at0(), F.partial_u().at0(), tol);
  if (!alpha) throw PreconditionError("h2_adapt: f_vv(0) is not a multiple of f_u(0)");
  using detail::num;
  const T one = num<T>(1);
  auto xi = detail::field<T>(detail::poly<T>({{0, 0, one}}, 1), Jet2<T>(1), FrameLevel::H2, "xi");
  auto eta = detail::field<T>(detail::poly<T>({{0, 1, T(-*alpha)}}, 1), detail::poly<T>({{0, 0, one}}, 1),
                              FrameLevel::H2, "eta");
  AdaptedFrame<T> out{{xi, eta, FrameLevel::H2}, {}};
  out.params.alpha = *alpha;
  return out;
}

/// det(xi f, xi eta f, eta^3 f)(0) for an H-2 adapted pair.
template <JetScalar T>
T h_type_det(const MapJet<T>& f, const FramePair<T>& p) {
  return det3(apply(p.xi, f).at0(), apply_word<T>({p.xi, p.eta}, f).at0(), apply_word<T>({p.eta, p.eta, p.eta}, f).at0());
}

/// H-4 adapted pair from eta~^4 f = alpha1 xi f + beta1 xi eta~ f + delta1 eta~^3 f at 0.
template <JetScalar T>
AdaptedFrame<T> h4_adapt(const MapJet<T>& f, const Tolerance& tol = {}) {
  const AdaptedFrame<T> h2 = h2_adapt(f, tol);
  const auto& X = h2.pair.xi;
  const auto& E = h2.pair.eta;
  const auto w1 = apply(X, f).at0();
  const auto w2 = apply_word<T>({X, E}, f).at0();
  const auto w3 = apply_word<T>({E, E, E}, f).at0();
  if (ScalarOps<T>::is_zero(det3(w1, w2, w3), tol))
    throw PreconditionError("h4_adapt needs an H-type germ (det(xi f, xi eta f, eta^3 f)(0) != 0)");
  const auto s = solve_span3(apply_word<T>({E, E, E, E}, f).at0(), w1, w2, w3, tol);
  if (!s) throw PreconditionError("h4_adapt: basis solve failed");
  const auto [a1, b1, d1] = *s;
  const T alpha = *h2.params.alpha;
  using detail::num;
  const T one = num<T>(1);
  // c1 = -alpha v + (-3 beta1 + 4 alpha delta1)/24 v^2 + (-alpha1/6 - beta1 delta1/48) v^3
  // d1 = 1 - delta1 v / 6
  const T c2 = (num<T>(-3) * b1 + num<T>(4) * alpha * d1) / num<T>(24);
  const T c3 = -a1 / num<T>(6) - b1 * d1 / num<T>(48);
  auto xi = X;
  xi.level = FrameLevel::H4;
  auto eta = detail::field<T>(detail::poly<T>({{0, 1, T(-alpha)}, {0, 2, c2}, {0, 3, c3}}, 3),
                              detail::poly<T>({{0, 0, one}, {0, 1, T(-d1 / num<T>(6))}}, 3), FrameLevel::H4, "eta");
  AdaptedFrame<T> out{{xi, eta, FrameLevel::H4}, h2.params};
  out.params.alpha1 = a1;
  out.params.beta1 = b1;
  out.params.delta1 = d1;
  return out;
}

}  // namespace crosscap
