#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crosscap/frames.hpp"

namespace crosscap {

enum class Verdict {
  Regular,
  Corank2,
  WhitneyUmbrella,
  S1Plus,
  S1Minus,
  S2,
  B2Plus,
  B2Minus,
  H2,
  MoreDegenerate,
};

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Regular: return "Regular";
    case Verdict::Corank2: return "Corank2";
    case Verdict::WhitneyUmbrella: return "WhitneyUmbrella";
    case Verdict::S1Plus: return "S1Plus";
    case Verdict::S1Minus: return "S1Minus";
    case Verdict::S2: return "S2";
    case Verdict::B2Plus: return "B2Plus";
    case Verdict::B2Minus: return "B2Minus";
    case Verdict::H2: return "H2";
    case Verdict::MoreDegenerate: return "MoreDegenerate";
  }
  return "?";
}

inline std::optional<Verdict> verdict_from_string(const std::string& s) {
  for (int k = 0; k <= static_cast<int>(Verdict::MoreDegenerate); ++k)
    if (s == to_string(static_cast<Verdict>(k))) return static_cast<Verdict>(k);
  return std::nullopt;
}

struct Classification {
  Verdict verdict = Verdict::MoreDegenerate;
  std::string reason;  // set for MoreDegenerate

  bool definite() const { return verdict != Verdict::MoreDegenerate; }
  friend bool operator==(const Classification& a, const Classification& b) { return a.verdict == b.verdict; }
  std::string str() const { return reason.empty() ? to_string(verdict) : std::string(to_string(verdict)) + " (" + reason + ")"; }
};

/// A named scalar together with the formula that produced it.
template <JetScalar T>
struct NamedValue {
  std::string name;
  std::string formula;
  T value;
};

template <JetScalar T>
struct TraceEntry {
  std::string predicate;
  std::string formula;
  T value;       // the tested quantity; vector tests record the squared norm
  bool holds;    // outcome of the predicate (nonzero test unless noted)
};

template <JetScalar T>
struct Certificate {
  Mode mode = ScalarOps<T>::mode;
  double eps = Tolerance{}.eps;
  std::vector<TraceEntry<T>> trace;
  std::vector<NamedValue<T>> invariants;
  FrameParams<T> params;
  std::optional<Mat2<T>> L;
  std::optional<MapJet<T>> normalized;
  FrameLevel frame_level = FrameLevel::Untagged;

  const T* invariant(const std::string& name) const {
    for (const auto& nv : invariants)
      if (nv.name == name) return &nv.value;
    return nullptr;
  }
};

template <JetScalar T>
struct ClassifyResult {
  Classification classification;
  Certificate<T> certificate;
};

namespace detail {

template <JetScalar T>
T norm2(const Vec3<T>& x) {
  return dot(x, x);
}

template <JetScalar T>
class Recorder {
 public:
  Recorder(Certificate<T>& c, const Tolerance& tol) : c_(c), tol_(tol) {}

  T value(const std::string& name, const std::string& formula, const T& v) {
    c_.invariants.push_back({name, formula, v});
    return v;
  }
  bool nonzero(const std::string& predicate, const std::string& formula, const T& v) {
    const bool holds = !ScalarOps<T>::is_zero(v, tol_);
    c_.trace.push_back({predicate, formula, v, holds});
    return holds;
  }
  bool nonzero_vec(const std::string& predicate, const std::string& formula, const Vec3<T>& v) {
    const bool holds = !is_zero_vec(v, tol_);
    c_.trace.push_back({predicate, formula, norm2(v), holds});
    return holds;
  }

 private:
  Certificate<T>& c_;
  const Tolerance& tol_;
};

inline Classification more_degenerate(std::string reason) { return {Verdict::MoreDegenerate, std::move(reason)}; }

}  // namespace detail

/// B-criterion value -5 d1^2 + 3 d2 d3 with d1 = det(xi f, eta^2 f, eta^3 xi f),
/// d2 = det(xi f, eta^2 f, eta xi^2 f), d3 = det(xi f, eta^2 f, eta^5 f), all at 0.
template <JetScalar T>
struct B2Dets {
  T d1, d2, d3, value;
};

template <JetScalar T>
B2Dets<T> b2_dets(const MapJet<T>& f, const FramePair<T>& p) {
  const auto& X = p.xi;
  const auto& E = p.eta;
  const auto xf = apply(X, f).at0();
  const auto e2f = apply_word<T>({E, E}, f).at0();
  const T d1 = det3(xf, e2f, apply_word<T>({E, E, E, X}, f).at0());
  const T d2 = det3(xf, e2f, apply_word<T>({E, X, X}, f).at0());
  const T d3 = det3(xf, e2f, apply_word<T>({E, E, E, E, E}, f).at0());
  return {d1, d2, d3, T(ScalarOps<T>::from_int(-5) * d1 * d1 + ScalarOps<T>::from_int(3) * d2 * d3)};
}

/// det(xi f, xi^3 eta f, eta^2 f)(0).
template <JetScalar T>
T s2_det(const MapJet<T>& f, const FramePair<T>& p) {
  const auto& X = p.xi;
  const auto& E = p.eta;
  return det3(apply(X, f).at0(), apply_word<T>({X, X, X, E}, f).at0(), apply_word<T>({E, E}, f).at0());
}

/// det(xi f, eta^5 f, eta^3 f)(0).
template <JetScalar T>
T h2_det(const MapJet<T>& f, const FramePair<T>& p) {
  const auto& X = p.xi;
  const auto& E = p.eta;
  return det3(apply(X, f).at0(), apply_word<T>({E, E, E, E, E}, f).at0(), apply_word<T>({E, E, E}, f).at0());
}

/// Recognition of Whitney umbrella, S1+-, S2, B2+-, H2 on a truncated germ.
/// The certificate stores every tested quantity and the normalized germ.
template <JetScalar T>
ClassifyResult<T> classify(const MapJet<T>& f_in, const Tolerance& tol = {}) {
  ClassifyResult<T> out;
  Certificate<T>& cert = out.certificate;
  cert.eps = tol.eps;
  detail::Recorder<T> rec(cert, tol);
  Classification& cls = out.classification;

  const Normalization<T> norm = linear_normalize(f_in, tol);
  {
    const auto& F = f_in.jets();
    rec.nonzero_vec("rank2", "f_u x f_v (0)", cross(F.partial_u().at0(), F.partial_v().at0()));
  }
  if (norm.rank == 2) {
    cls = {Verdict::Regular, ""};
    return out;
  }
  if (norm.rank == 0) {
    cls = {Verdict::Corank2, ""};
    return out;
  }
  cert.L = norm.L;
  const MapJet<T>& f = *norm.germ;
  cert.normalized = f;
  const auto& F = f.jets();
  const auto fu = F.partial_u().at0();
  const auto fvv = F.partial_v().partial_v().at0();
  const auto fuv = F.partial_u().partial_v().at0();

  if (rec.nonzero_vec("sb_type", "f_u x f_vv (0)", cross(fu, fvv))) {
    const T wdet = rec.value("whitney_det", "det(f_u, f_vv, f_uv)(0)", det3(fu, fvv, fuv));
    if (rec.nonzero("whitney", "det(f_u, f_vv, f_uv)(0)", wdet)) {
      cls = {Verdict::WhitneyUmbrella, ""};
      return out;
    }
    const AdaptedFrame<T> sb = sb2_adapt(f, tol);
    cert.params = sb.params;
    cert.frame_level = FrameLevel::SB2;
    const PhiHessian<T> h = second_derivatives_phi(f, sb.pair);
    rec.value("xi2phi", "xi xi phi(0)", h.xi2);
    rec.value("xieta_phi", "xi eta phi(0)", h.xieta);
    rec.value("etaxi_phi", "eta xi phi(0)", h.etaxi);
    rec.value("eta2phi", "eta eta phi(0)", h.eta2);
    if (!ScalarOps<T>::is_zero(h.xieta, tol) || !ScalarOps<T>::is_zero(h.etaxi, tol))
      throw PreconditionError("SB-2 pair with nonzero mixed second derivative of phi");
    const bool a_nz = rec.nonzero("xi2phi", "xi xi phi(0)", h.xi2);
    const bool c_nz = rec.nonzero("eta2phi", "eta eta phi(0)", h.eta2);
    if (a_nz && c_nz) {
      const T prod = h.xi2 * h.eta2;
      rec.value("hess_det", "xi xi phi(0) * eta eta phi(0)", prod);
      cls = {ScalarOps<T>::sign(prod, tol) < 0 ? Verdict::S1Plus : Verdict::S1Minus, ""};
      return out;
    }
    if (!a_nz && c_nz) {
      const AdaptedFrame<T> s3 = s3_adapt(f, tol);
      cert.params = s3.params;
      cert.frame_level = FrameLevel::S3;
      const T d = rec.value("s2_det", "det(xi f, xi^3 eta f, eta^2 f)(0)", s2_det(f, s3.pair));
      if (rec.nonzero("s2", "det(xi f, xi^3 eta f, eta^2 f)(0)", d)) {
        cls = {Verdict::S2, ""};
      } else {
        cls = detail::more_degenerate("S-type with det(xi f, xi^3 eta f, eta^2 f)(0) = 0");
      }
      return out;
    }
    if (a_nz && !c_nz) {
      const AdaptedFrame<T> b3 = b3_adapt(f, tol);
      cert.params = b3.params;
      cert.frame_level = FrameLevel::B3;
      const B2Dets<T> b = b2_dets(f, b3.pair);
      rec.value("b2_d1", "det(xi f, eta^2 f, eta^3 xi f)(0)", b.d1);
      rec.value("b2_d2", "det(xi f, eta^2 f, eta xi^2 f)(0)", b.d2);
      rec.value("b2_d3", "det(xi f, eta^2 f, eta^5 f)(0)", b.d3);
      rec.value("b2_value", "-5 b2_d1^2 + 3 b2_d2 b2_d3", b.value);
      if (rec.nonzero("b2", "-5 b2_d1^2 + 3 b2_d2 b2_d3", b.value)) {
        cls = {ScalarOps<T>::sign(b.value, tol) > 0 ? Verdict::B2Plus : Verdict::B2Minus, ""};
      } else {
        cls = detail::more_degenerate("B-type with -5 b2_d1^2 + 3 b2_d2 b2_d3 = 0");
      }
      return out;
    }
    cls = detail::more_degenerate("SB-type with xi^2 phi(0) = eta^2 phi(0) = 0");
    return out;
  }

  if (!rec.nonzero_vec("hp_type", "f_u x f_uv (0)", cross(fu, fuv))) {
    cls = detail::more_degenerate("2-jet (u,0,0)");
    return out;
  }
  const AdaptedFrame<T> h2 = h2_adapt(f, tol);
  cert.params = h2.params;
  cert.frame_level = FrameLevel::H2;
  const T hd = rec.value("h_type_det", "det(xi f, xi eta f, eta^3 f)(0)", h_type_det(f, h2.pair));
  if (!rec.nonzero("h_type", "det(xi f, xi eta f, eta^3 f)(0)", hd)) {
    cls = detail::more_degenerate("P-type or worse");
    return out;
  }
  const AdaptedFrame<T> h4 = h4_adapt(f, tol);
  cert.params = h4.params;
  cert.frame_level = FrameLevel::H4;
  const T d = rec.value("h2_det", "det(xi f, eta^5 f, eta^3 f)(0)", h2_det(f, h4.pair));
  if (rec.nonzero("h2", "det(xi f, eta^5 f, eta^3 f)(0)", d)) {
    cls = {Verdict::H2, ""};
  } else {
    cls = detail::more_degenerate("H-type with det(xi f, eta^5 f, eta^3 f)(0) = 0");
  }
  return out;
}

/// Recomputes every recorded invariant from the stored normalized germ.
/// Returns an empty string on success, otherwise a description of the first mismatch.
template <JetScalar T>
std::string verify_certificate(const ClassifyResult<T>& r, const Tolerance& tol = {}) {
  const auto& cert = r.certificate;
  if (!cert.normalized) {
    if (r.classification.verdict == Verdict::Regular || r.classification.verdict == Verdict::Corank2) return "";
    return "certificate has no normalized germ";
  }
  const ClassifyResult<T> again = classify(*cert.normalized, tol);
  if (again.classification.verdict != r.classification.verdict)
    return std::string("verdict changed: ") + to_string(again.classification.verdict);
  if (!again.certificate.L) return "stored germ is not of rank one";
  const Mat2<T> id = Mat2<T>::identity();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (!ScalarOps<T>::is_zero(again.certificate.L->m[i][j] - id.m[i][j], tol)) return "stored germ is not normalized";
  if (again.certificate.invariants.size() != cert.invariants.size()) return "invariant list differs";
  for (std::size_t k = 0; k < cert.invariants.size(); ++k) {
    const auto& a = cert.invariants[k];
    const auto& b = again.certificate.invariants[k];
    if (a.name != b.name || !ScalarOps<T>::is_zero(a.value - b.value, tol))
      return "invariant " + a.name + " does not reproduce";
  }
  return "";
}

}  // namespace crosscap
