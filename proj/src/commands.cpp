#include "crosscap/commands.hpp"

#include <future>
#include <sstream>

#include "crosscap/parser.hpp"

namespace crosscap {

namespace {

int exit_for(const Classification& c) { return c.definite() ? kExitDefinite : kExitMoreDegenerate; }

template <JetScalar T>
std::string verify_or_empty(const ClassifyResult<T>& r, const CommandOptions& opt) {
  return opt.verify ? verify_certificate(r) : std::string();
}

template <JetScalar T>
CommandOutput render_generic(const ClassifyResult<T>& r, const CommandOptions& opt, const MapSpecDoc& doc) {
  CommandOutput out;
  out.data = certificate_json(r);
  if (!doc.warnings.empty()) out.data["warnings"] = doc.warnings;
  out.exit_code = exit_for(r.classification);
  std::ostringstream os;
  for (const auto& w : doc.warnings) os << "warning: " << w << "\n";
  os << certificate_text(out.data);
  if (opt.verify) {
    const std::string err = verify_or_empty(r, opt);
    out.data["verified"] = err.empty();
    if (!err.empty()) {
      out.data["verify_error"] = err;
      out.exit_code = kExitDisagreement;
      os << "verify: FAILED (" << err << ")\n";
    } else {
      os << "verify: ok\n";
    }
  }
  out.text = os.str();
  return out;
}

template <JetScalar T>
CommandOutput render_pair(const std::string& kind, const FormulaResult<T>& formula, const ClassifyResult<T>& generic,
                          const CommandOptions& opt, const MapSpecDoc& doc) {
  CommandOutput out;
  const bool agree = formula.classification.verdict == generic.classification.verdict;
  out.data["kind"] = kind;
  out.data["formula"] = formula_json(formula);
  out.data["generic"] = certificate_json(generic);
  out.data["agree"] = agree;
  if (!doc.warnings.empty()) out.data["warnings"] = doc.warnings;
  std::ostringstream os;
  for (const auto& w : doc.warnings) os << "warning: " << w << "\n";
  os << "formula verdict: " << to_string(formula.classification.verdict) << "\n";
  os << "generic verdict: " << to_string(generic.classification.verdict) << "\n";
  os << "agreement: " << (agree ? "yes" : "NO") << "\n";
  os << "[formula]\n" << formula_text(out.data["formula"], "  ");
  os << "[generic]\n" << certificate_text(out.data["generic"], "  ");
  out.exit_code = agree ? exit_for(generic.classification) : kExitDisagreement;
  if (opt.verify) {
    const std::string err = verify_or_empty(generic, opt);
    out.data["verified"] = err.empty();
    if (!err.empty()) {
      out.data["verify_error"] = err;
      out.exit_code = kExitDisagreement;
      os << "verify: FAILED (" << err << ")\n";
    } else {
      os << "verify: ok\n";
    }
  }
  out.text = os.str();
  return out;
}

MapSpecDoc parse_kind(const std::string& text, DocKind want) {
  MapSpecDoc doc = parse_doc(text);
  if (doc.kind != want)
    throw InputError(std::string("expected a [") + to_string(want) + "] document, got [" + to_string(doc.kind) + "]");
  return doc;
}

}  // namespace

CommandOutput cmd_classify(const std::string& doc_text, const CommandOptions& opt) {
  const MapSpecDoc doc = parse_doc(doc_text);
  if (doc.kind == DocKind::Folded && doc.theta_float) {
    const auto th = FoldAngle<Approx>{Approx(doc.theta_float->first), Approx(doc.theta_float->second)};
    return render_generic(classify(folded_map(doc_monge_float(doc), th, doc.order)), opt, doc);
  }
  return render_generic(classify(doc_map(doc)), opt, doc);
}

CommandOutput cmd_ruled(const std::string& doc_text, const CommandOptions& opt) {
  const MapSpecDoc doc = parse_kind(doc_text, DocKind::Ruled);
  const auto data = doc_ruled(doc);
  return render_pair("ruled", ruled_classify_formulas(data), classify(ruled_map(data, doc.order)), opt, doc);
}

CommandOutput cmd_center(const std::string& doc_text, const CommandOptions& opt) {
  const MapSpecDoc doc = parse_kind(doc_text, DocKind::Center);
  const auto m = doc_monge(doc);
  return render_pair("center", center_classify_formulas(m), classify(center_map(m, doc.order)), opt, doc);
}

CommandOutput cmd_folded(const std::string& doc_text, const CommandOptions& opt) {
  const MapSpecDoc doc = parse_kind(doc_text, DocKind::Folded);
  if (doc.theta_float) {
    const auto m = doc_monge_float(doc);
    const auto th = FoldAngle<Approx>{Approx(doc.theta_float->first), Approx(doc.theta_float->second)};
    return render_pair("folded", folded_classify_formulas(m, th), classify(folded_map(m, th, doc.order)), opt, doc);
  }
  const auto m = doc_monge(doc);
  const auto th = FoldAngle<Rational>{doc.theta_exact->first, doc.theta_exact->second};
  return render_pair("folded", folded_classify_formulas(m, th), classify(folded_map(m, th, doc.order)), opt, doc);
}

CommandOutput cmd_oracle(const std::string& doc_text, const CommandOptions& opt) {
  const MapSpecDoc doc = parse_doc(doc_text);
  FormulaResult<Rational> formula;
  if (doc.kind == DocKind::SBNormal) {
    const SkbkResult r = skbk_classify(doc_sb_normal(doc));
    formula.classification = r.classification;
    formula.values.push_back({"b2_value", "3 a05 a21 - 5 a13^2", r.b2_value});
  } else if (doc.kind == DocKind::HNormal) {
    const auto c = doc_h_normal(doc);
    const H2CheckResult r = h2_check(c);
    formula.classification = r.classification;
    formula.values.push_back({"b03", "b03", c.B(0, 3)});
    formula.values.push_back({"c", "H2 polynomial c", r.c});
    if (r.special_case) formula.values.push_back({"c_special", "b03 (4 a05 b03 - 5 a04 b04)", r.c_special});
  } else {
    throw InputError("oracle expects an [sb-normal] or [h-normal] document");
  }
  return render_pair(to_string(doc.kind), formula, classify(doc_map(doc)), opt, doc);
}

CommandOutput cmd_fuzz(const FuzzOptions& fo, const CommandOptions& opt) {
  const FuzzConfig& cfg = fo.config;
  cfg.validate();
  const auto forms = normal_forms(cfg.order);
  struct TrialResult {
    bool ok;
    std::string got;
  };
  auto run_trial = [&](int t) {
    auto rng = trial_rng(cfg.seed, static_cast<std::uint64_t>(t));
    const auto& nf = forms[static_cast<std::size_t>(t) % forms.size()];
    const auto phi_s = random_source_diffeo(cfg, rng);
    const auto phi_t = random_target_diffeo(cfg, rng);
    const auto r = classify(act(nf.germ, phi_s, phi_t));
    return TrialResult{r.classification.verdict == nf.expected, to_string(r.classification.verdict)};
  };
  std::vector<TrialResult> results(static_cast<std::size_t>(cfg.trials));
  const int jobs = std::max(1, fo.jobs);
  std::vector<std::future<void>> workers;
  for (int w = 0; w < jobs; ++w)
    workers.push_back(std::async(std::launch::async, [&, w] {
      for (int t = w; t < cfg.trials; t += jobs) results[static_cast<std::size_t>(t)] = run_trial(t);
    }));
  for (auto& f : workers) f.get();

  CommandOutput out;
  int ok = 0;
  Json failures = Json::array();
  std::ostringstream os;
  for (int t = 0; t < cfg.trials; ++t) {
    const auto& r = results[static_cast<std::size_t>(t)];
    if (r.ok) {
      ++ok;
      continue;
    }
    const auto& nf = forms[static_cast<std::size_t>(t) % forms.size()];
    failures.push_back({{"trial", t}, {"form", nf.name}, {"expected", to_string(nf.expected)}, {"got", r.got}});
    os << "trial " << t << ": " << nf.name << " classified as " << r.got << "\n";
  }
  os << ok << "/" << cfg.trials << " invariant\n";
  out.data = {{"seed", cfg.seed}, {"trials", cfg.trials}, {"degree", cfg.degree}, {"bound", cfg.bound},
              {"invariant", ok}, {"failures", failures}};
  out.text = os.str();
  out.exit_code = ok == cfg.trials ? kExitDefinite : kExitDisagreement;
  (void)opt;
  return out;
}

}  // namespace crosscap
