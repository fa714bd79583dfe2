#pragma once

#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "crosscap/applications.hpp"
#include "crosscap/classifier.hpp"

namespace crosscap {

using Json = nlohmann::ordered_json;

inline const char* mode_name(Mode m) { return m == Mode::Exact ? "exact" : "float"; }

template <JetScalar T>
Json frame_json(const FrameParams<T>& p, FrameLevel level) {
  Json j;
  j["level"] = to_string(level);
  const auto put = [&](const char* name, const std::optional<T>& v) {
    if (v) j[name] = to_string(*v);
  };
  put("alpha", p.alpha);
  put("beta", p.beta);
  put("alpha1", p.alpha1);
  put("beta1", p.beta1);
  put("delta1", p.delta1);
  return j;
}

template <JetScalar T>
Json certificate_json(const ClassifyResult<T>& r) {
  const auto& c = r.certificate;
  Json j;
  j["verdict"] = to_string(r.classification.verdict);
  if (!r.classification.reason.empty()) j["reason"] = r.classification.reason;
  j["mode"] = mode_name(c.mode);
  if (c.mode == Mode::Float) j["eps"] = c.eps;
  Json trace = Json::array();
  for (const auto& t : c.trace)
    trace.push_back({{"predicate", t.predicate}, {"formula", t.formula}, {"value", to_string(t.value)}, {"holds", t.holds}});
  j["trace"] = trace;
  Json inv = Json::object();
  for (const auto& nv : c.invariants) inv[nv.name] = {{"formula", nv.formula}, {"value", to_string(nv.value)}};
  j["invariants"] = inv;
  j["frame"] = frame_json(c.params, c.frame_level);
  Json norm = Json::object();
  if (c.L) {
    norm["L"] = Json::array({Json::array({to_string(c.L->m[0][0]), to_string(c.L->m[0][1])}),
                             Json::array({to_string(c.L->m[1][0]), to_string(c.L->m[1][1])})});
  }
  if (c.normalized) {
    norm["order"] = c.normalized->order();
    norm["germ"] = {{"f1", format_poly((*c.normalized)[0])},
                    {"f2", format_poly((*c.normalized)[1])},
                    {"f3", format_poly((*c.normalized)[2])}};
  }
  j["normalization"] = norm;
  return j;
}

template <JetScalar T>
Json formula_json(const FormulaResult<T>& r) {
  Json j;
  j["verdict"] = to_string(r.classification.verdict);
  if (!r.classification.reason.empty()) j["reason"] = r.classification.reason;
  Json vals = Json::object();
  for (const auto& nv : r.values) vals[nv.name] = {{"formula", nv.formula}, {"value", to_string(nv.value)}};
  j["values"] = vals;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

/// Human-readable rendering of a certificate JSON object.
inline std::string certificate_text(const Json& j, const std::string& indent = "") {
  std::ostringstream os;
  os << indent << "verdict: " << j["verdict"].get<std::string>();
  if (j.contains("reason")) os << " (" << j["reason"].get<std::string>() << ")";
  os << "\n" << indent << "mode: " << j["mode"].get<std::string>() << "\n";
  const auto& n = j["normalization"];
  if (n.contains("L"))
    os << indent << "normalization: L = [[" << n["L"][0][0].get<std::string>() << ", " << n["L"][0][1].get<std::string>()
       << "], [" << n["L"][1][0].get<std::string>() << ", " << n["L"][1][1].get<std::string>() << "]]\n";
  if (n.contains("germ"))
    for (const char* k : {"f1", "f2", "f3"}) os << indent << "  " << k << " = " << n["germ"][k].get<std::string>() << "\n";
  const auto& fr = j["frame"];
  os << indent << "frame: " << fr["level"].get<std::string>();
  for (const char* k : {"alpha", "beta", "alpha1", "beta1", "delta1"})
    if (fr.contains(k)) os << "  " << k << " = " << fr[k].get<std::string>();
  os << "\n" << indent << "trace:\n";
  for (const auto& t : j["trace"])
    os << indent << "  " << t["predicate"].get<std::string>() << ": " << t["formula"].get<std::string>() << " = "
       << t["value"].get<std::string>() << (t["holds"].get<bool>() ? "  [nonzero]" : "  [zero]") << "\n";
  os << indent << "invariants:\n";
  for (const auto& [name, v] : j["invariants"].items())
    os << indent << "  " << name << " = " << v["value"].get<std::string>() << "    (" << v["formula"].get<std::string>() << ")\n";
  return os.str();
}

inline std::string formula_text(const Json& j, const std::string& indent = "") {
  std::ostringstream os;
  os << indent << "verdict: " << j["verdict"].get<std::string>();
  if (j.contains("reason")) os << " (" << j["reason"].get<std::string>() << ")";
  os << "\n";
  if (j.contains("note")) os << indent << "note: " << j["note"].get<std::string>() << "\n";
  for (const auto& [name, v] : j["values"].items())
    os << indent << "  " << name << " = " << v["value"].get<std::string>() << "    (" << v["formula"].get<std::string>() << ")\n";
  return os.str();
}

}  // namespace crosscap
