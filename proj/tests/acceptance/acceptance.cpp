// Acceptance checks, one per criterion. Usage: acceptance [--criterion N]

#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include <CLI11.hpp>

#include "../support/generators.hpp"
#include "crosscap/parser.hpp"
#include "crosscap/report.hpp"

using namespace crosscap;
using namespace crosscap::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void fail(const std::string& why) {
    pass = false;
    notes.push_back("FAIL " + why);
  }
  void note(const std::string& s) { notes.push_back(s); }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

/// Runs fn(i) for i in [0, n) on all cores; fn must be thread-safe.
void parallel_for(int n, const std::function<void(int)>& fn) {
  const int jobs = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<int> next{0};
  std::vector<std::future<void>> workers;
  for (int w = 0; w < jobs; ++w)
    workers.push_back(std::async(std::launch::async, [&] {
      for (int i = next++; i < n; i = next++) fn(i);
    }));
  for (auto& f : workers) f.get();
}

/// Thread-safe failure collector that keeps the first few messages.
class Failures {
 public:
  void add(const std::string& s) {
    std::lock_guard<std::mutex> lock(m_);
    ++count_;
    if (first_.size() < 5) first_.push_back(s);
  }
  int count() const { return count_; }
  void report(Outcome& out, const std::string& what) const {
    if (count_ == 0) return;
    out.fail(what + ": " + std::to_string(count_) + " failures");
    for (const auto& s : first_) out.note("  e.g. " + s);
  }

 private:
  std::mutex m_;
  int count_ = 0;
  std::vector<std::string> first_;
};

std::string germ_text(const M& f) {
  return "(" + format_poly(f[0]) + ", " + format_poly(f[1]) + ", " + format_poly(f[2]) + ")";
}

std::string str(const Q& x) { return to_string(x); }

// ---------------------------------------------------------------------------
// 1. Normal-form golden suite

Outcome criterion1() {
  Outcome out;
  const auto t0 = Clock::now();
  const auto forms = normal_forms();
  std::map<Verdict, ClassifyResult<Q>> results;
  for (const auto& nf : forms) {
    const auto r = classify(nf.germ);
    results.emplace(nf.expected, r);
    out.expect(r.classification.verdict == nf.expected,
               nf.name + " classified as " + std::string(to_string(r.classification.verdict)));
    out.expect(verify_certificate(r).empty(), nf.name + " certificate does not re-verify");
  }
  const auto anchor = [&](Verdict v, const char* name, const Q& want) {
    const Q* got = results.at(v).certificate.invariant(name);
    out.expect(got && *got == want, std::string(to_string(v)) + " " + name + " != " + str(want));
    if (got) out.note(std::string(to_string(v)) + " " + name + " = " + str(*got));
  };
  anchor(Verdict::S2, "s2_det", Q(-12));
  anchor(Verdict::B2Plus, "b2_value", Q(2880));
  anchor(Verdict::H2, "h2_det", Q(720));
  const double dt = seconds_since(t0);
  out.note("runtime " + std::to_string(dt) + " s (limit 1 s)");
  out.expect(dt < 1.0, "runtime over 1 s");
  return out;
}

// ---------------------------------------------------------------------------
// 2. A-equivalence invariance

Outcome criterion2() {
  Outcome out;
  const auto t0 = Clock::now();
  const int per_form = 500;
  const auto forms = normal_forms();
  const int total = per_form * static_cast<int>(forms.size());
  FuzzConfig cfg;
  cfg.seed = 20240601;
  cfg.degree = 3;
  cfg.bound = 9;
  Failures bad;
  parallel_for(total, [&](int t) {
    auto rng = trial_rng(cfg.seed, static_cast<std::uint64_t>(t));
    const auto& nf = forms[static_cast<std::size_t>(t) % forms.size()];
    const auto g = act(nf.germ, random_source_diffeo(cfg, rng), random_target_diffeo(cfg, rng));
    const Verdict got = generic_verdict(g);
    if (got != nf.expected) bad.add("trial " + std::to_string(t) + " " + nf.name + " -> " + to_string(got));
  });
  bad.report(out, "classification changed under a random action");
  const double dt = seconds_since(t0);
  out.note(std::to_string(total - bad.count()) + "/" + std::to_string(total) + " invariant (" +
           std::to_string(per_form) + " per normal form, degree 3, |p|,|q| <= 9)");
  out.note("runtime " + std::to_string(dt) + " s (limit 300 s)");
  out.expect(dt < 300.0, "runtime over 5 min");
  return out;
}

// ---------------------------------------------------------------------------
// 3. Frame invariants on random germs

bool zero_at0(const M& f, const std::vector<VectorFieldJet<Q>>& w) { return is_zero_vec(apply_word(w, f).at0()); }

Outcome criterion3() {
  Outcome out;
  const int per_branch = 200;
  Failures a, b, c, d, e;
  int b_checked = 0;
  std::mutex count_m;
  const std::vector<Branch> branches = {Branch::S1, Branch::S, Branch::B, Branch::H};
  parallel_for(per_branch * static_cast<int>(branches.size()), [&](int t) {
    const Branch br = branches[static_cast<std::size_t>(t) % branches.size()];
    auto rng = trial_rng(3003, static_cast<std::uint64_t>(t));
    const M f = random_normalized(br, rng);
    const std::string tag = std::string(branch_name(br)) + " " + germ_text(f);
    if (br == Branch::H) {
      const auto h2 = h2_adapt(f);
      if (!detail::pair_level_holds(f, h2.pair, FrameLevel::H2, {})) e.add("H-2 " + tag);
      const auto h4 = h4_adapt(f);
      const auto& E = h4.pair.eta;
      if (!detail::pair_level_holds(f, h4.pair, FrameLevel::H2, {}) || !zero_at0(f, {E, E, E, E})) e.add("H-4 " + tag);
      return;
    }
    const auto sb = sb2_adapt(f);
    const auto& X = sb.pair.xi;
    const auto& E = sb.pair.eta;
    if (!detail::pair_level_holds(f, sb.pair, FrameLevel::SB2, {})) e.add("SB-2 " + tag);
    // (a) mixed second derivatives of phi
    const auto h = second_derivatives_phi(f, sb.pair);
    if (h.xieta != 0 || h.etaxi != 0) a.add(tag);
    // (b) eta^2 phi(0) = det(xi f, eta^2 f, eta^3 f)(0)
    const auto xf = apply(X, f).at0();
    const auto e2f = apply_word<Q>({E, E}, f).at0();
    if (h.eta2 != det3(xf, e2f, apply_word<Q>({E, E, E}, f).at0())) b.add(tag);
    // (c) nonvanishing of the three xi^2 eta determinants together with xi^2 phi(0)
    const bool nz = h.xi2 != 0;
    for (const auto& w : std::vector<std::vector<VectorFieldJet<Q>>>{{X, X, E}, {X, E, X}, {E, X, X}})
      if ((det3(xf, apply_word(w, f).at0(), e2f) != 0) != nz) c.add(tag + " word " + word_name(w));
    if (br == Branch::S) {
      const auto s3 = s3_adapt(f);
      const auto& X3 = s3.pair.xi;
      const auto& E3 = s3.pair.eta;
      if (!detail::pair_level_holds(f, s3.pair, FrameLevel::SB2, {}) || !zero_at0(f, {E3, X3, X3}) ||
          !zero_at0(f, {X3, E3, X3}) || !zero_at0(f, {X3, X3, E3}))
        e.add("S-3 " + tag);
    }
    if (br == Branch::B) {
      const auto b3 = b3_adapt(f);
      if (!detail::pair_level_holds(f, b3.pair, FrameLevel::B3, {})) e.add("B-3 " + tag);
      // (d) admissible words in the B2 criterion give equal determinants
      const auto& XB = b3.pair.xi;
      const auto& EB = b3.pair.eta;
      const auto xbf = apply(XB, f).at0();
      const auto eb2f = apply_word<Q>({EB, EB}, f).at0();
      const auto slot = [&](const std::vector<VectorFieldJet<Q>>& w) { return det3(xbf, eb2f, apply_word(w, f).at0()); };
      const Q d1 = slot({EB, EB, EB, XB});
      for (const auto& w : std::vector<std::vector<VectorFieldJet<Q>>>{{XB, EB, EB, EB}, {EB, XB, EB, EB}, {EB, EB, XB, EB}})
        if (slot(w) != d1) d.add(tag + " eta^3 xi slot, word " + word_name(w));
      const Q d2 = slot({EB, XB, XB});
      for (const auto& w : std::vector<std::vector<VectorFieldJet<Q>>>{{XB, EB, XB}, {XB, XB, EB}})
        if (slot(w) != d2) d.add(tag + " eta xi^2 slot, word " + word_name(w));
      std::lock_guard<std::mutex> lock(count_m);
      ++b_checked;
    }
  });
  a.report(out, "(a) mixed Hessian of phi");
  b.report(out, "(b) eta^2 phi(0) = det(xi f, eta^2 f, eta^3 f)(0)");
  c.report(out, "(c) xi^2 eta determinant equivalence");
  d.report(out, "(d) B2 word freedom");
  e.report(out, "(e) frame vanishing conditions");
  out.note(std::to_string(per_branch) + " germs per branch (S1, S, B, H) in general position");
  out.note("(a)-(c) on " + std::to_string(3 * per_branch) + " SB germs, (d) on " + std::to_string(b_checked) +
           " B germs, (e) SB-2/S-3/B-3/H-2/H-4 pairs");
  return out;
}

// ---------------------------------------------------------------------------
// 4. Target pushforward identities

VectorFieldJet<Q> random_field(std::mt19937_64& rng, bool null, const std::string& name) {
  VectorFieldJet<Q> z{random_poly(rng, 0, 2, 2, 4), random_poly(rng, 0, 2, 2, 4), FrameLevel::Untagged, name};
  if (null) {
    z.a.set(0, 0, Q(0));
    z.b.set(0, 0, rnd_nz(rng, 4));
  }
  return z;
}

Outcome criterion4() {
  Outcome out;
  const int per_rule = 100;
  FuzzConfig cfg;
  cfg.degree = 3;
  cfg.bound = 5;
  Failures bad;
  std::array<std::atomic<int>, 8> fails{};
  parallel_for(7 * per_rule, [&](int t) {
    const int rule = t / per_rule + 1;
    auto rng = trial_rng(4004, static_cast<std::uint64_t>(t));
    PushforwardCase<Q> pc;
    M f = random_normalized(Branch::S1, rng);
    std::uniform_int_distribution<int> pos(0, 3);
    switch (rule) {
      case 1:
        f = random_normalized(static_cast<Branch>(t % 5), rng);
        pc.word = {random_field(rng, false, "z1")};
        break;
      case 2: {
        const bool first = pos(rng) % 2 == 0;
        pc.word = {random_field(rng, !first, "z2"), random_field(rng, first, "z1")};
        break;
      }
      case 3:
        pc.word = {random_field(rng, true, "z3"), random_field(rng, false, "z2"), random_field(rng, true, "z1")};
        break;
      case 4: {
        const Branch br = std::array{Branch::S1, Branch::S, Branch::B}[static_cast<std::size_t>(t % 3)];
        f = random_normalized(br, rng);
        pc.pair = sb2_adapt(f).pair;
        pc.word = {pc.pair->xi, pc.pair->xi, pc.pair->xi};
        pc.word[static_cast<std::size_t>(pos(rng) % 3)] = pc.pair->eta;
        break;
      }
      case 5:
        f = random_normalized(Branch::S, rng);
        pc.pair = s3_adapt(f).pair;
        pc.word = {pc.pair->xi, pc.pair->xi, pc.pair->xi, pc.pair->xi};
        pc.word[static_cast<std::size_t>(pos(rng))] = pc.pair->eta;
        break;
      case 6:
        f = random_normalized(Branch::B, rng);
        pc.pair = b3_adapt(f).pair;
        pc.word = {pc.pair->eta, pc.pair->eta, pc.pair->eta, pc.pair->eta};
        pc.word[static_cast<std::size_t>(pos(rng))] = pc.pair->xi;
        break;
      case 7:
        f = random_normalized(Branch::H, rng);
        pc.pair = h2_adapt(f).pair;
        pc.word = std::vector<VectorFieldJet<Q>>(5, pc.pair->eta);
        break;
    }
    const auto phi = random_target_diffeo(cfg, rng);
    const auto matched = pushforward_rule(f, pc);
    if (!matched || static_cast<int>(*matched) != rule) {
      bad.add("T-" + std::to_string(rule) + " hypotheses not recognised for word [" + word_name(pc.word) + "]");
      return;
    }
    if (!check_target_pushforward(f, phi, pc)) ++fails[static_cast<std::size_t>(rule)];
    if (!check_target_pushforward(f, phi, pc)) bad.add("T-" + std::to_string(rule) + " identity fails, word [" + word_name(pc.word) + "]");
  });
  bad.report(out, "pushforward identities");
  out.note(std::to_string(7 * per_rule - bad.count()) + "/" + std::to_string(7 * per_rule) +
           " instances hold (100 per rule T-1..T-7, random cubic Phi)");
  std::string per_rule_line = "failures per rule:";
  for (int k = 1; k <= 7; ++k) per_rule_line += " T-" + std::to_string(k) + " " + std::to_string(fails[static_cast<std::size_t>(k)].load());
  out.note(per_rule_line);
  {
    // T-3 leaves the term d^2 Phi(z2 f, z3 z1 f), which need not vanish when z1, z3 are null.
    using J = Jet2<Q>;
    const M g(J::u(), J::monomial(0, 2, Q(1)), J::monomial(0, 3, Q(1)));
    using Term = PolyMap3<Q>::Term;
    std::array<std::vector<Term>, 3> comps;
    comps[0] = {Term{1, 0, 0, Q(1)}};
    comps[1] = {Term{0, 1, 0, Q(1)}};
    comps[2] = {Term{0, 0, 1, Q(1)}, Term{1, 1, 0, Q(1)}};
    const PolyMap3<Q> phi(comps);
    const auto du = VectorFieldJet<Q>::du(), dv = VectorFieldJet<Q>::dv();
    const PushforwardCase<Q> pc{{dv, du, dv}, std::nullopt};
    const bool covered = pushforward_rule(g, pc).has_value();
    const bool holds = pushforward_identity_holds(g, phi, pc.word);
    out.note(std::string("T-3 counterexample: f = (u, v^2, v^3), word [dv du dv], Phi = (x, y, z + xy): ") +
             (covered ? "covered by T-3" : "not covered") + ", identity " + (holds ? "holds" : "fails") +
             " (lhs third component " + str(apply_word(pc.word, post_compose(phi, g.jets())).at0()[2]) + ", rhs 0)");
  }

  // Negative control: [xi, xi] on the S1+ normal form has no null letter, and
  // Phi = (x, y, z + x^2) contributes d^2 Phi(xi f, xi f) = (0, 0, 2).
  const M f = normal_forms()[1].germ;
  const auto p = coordinate_pair<Q>();
  using Term = PolyMap3<Q>::Term;
  std::array<std::vector<Term>, 3> comps;
  comps[0] = {Term{1, 0, 0, Q(1)}};
  comps[1] = {Term{0, 1, 0, Q(1)}};
  comps[2] = {Term{0, 0, 1, Q(1)}, Term{2, 0, 0, Q(1)}};
  const PolyMap3<Q> phi(comps);
  const std::vector<VectorFieldJet<Q>> w = {p.xi, p.xi};
  const bool holds = pushforward_identity_holds(f, phi, w);
  bool rejected = false;
  try {
    check_target_pushforward<Q>(f, phi, {w, p});
  } catch (const PreconditionError&) {
    rejected = true;
  }
  out.expect(!holds, "negative control: identity unexpectedly holds");
  out.expect(rejected, "negative control: hypotheses not rejected");
  out.note(std::string("negative control [xi xi] on S1+ with Phi = (x, y, z + x^2): identity ") +
           (holds ? "holds" : "fails") + ", hypothesis check " + (rejected ? "rejects" : "accepts") + " the word");
  return out;
}

// ---------------------------------------------------------------------------
// 5. Application formulas against the generic classifier

Outcome criterion5() {
  Outcome out;
  const auto t0 = Clock::now();
  const int n = 200;
  {
    Failures bad;
    const std::vector<RuledBranch> branches = {RuledBranch::WU, RuledBranch::S1, RuledBranch::S2, RuledBranch::B2,
                                               RuledBranch::H2};
    std::array<std::atomic<int>, 5> definite{};
    parallel_for(n * 5, [&](int t) {
      const auto br = branches[static_cast<std::size_t>(t / n)];
      auto rng = trial_rng(5005, static_cast<std::uint64_t>(t));
      const auto d = random_ruled(br, rng);
      const auto formula = ruled_classify_formulas(d);
      const Verdict g = generic_verdict(ruled_map(d));
      if (formula.classification.verdict != g)
        bad.add(std::string(ruled_branch_name(br)) + ": formula " + to_string(formula.classification.verdict) +
                ", generic " + to_string(g));
      if (formula.classification.definite()) ++definite[static_cast<std::size_t>(t / n)];
    });
    bad.report(out, "ruled surfaces");
    std::string counts;
    for (std::size_t k = 0; k < 5; ++k)
      counts += std::string(k ? ", " : "") + ruled_branch_name(branches[k]) + " " + std::to_string(definite[k].load());
    out.note("ruled: " + std::to_string(5 * n - bad.count()) + "/" + std::to_string(5 * n) +
             " agree (definite verdicts per branch: " + counts + ")");
  }
  {
    Failures bad, forbidden;
    parallel_for(n, [&](int t) {
      const auto br = t < n / 2 ? CenterBranch::S1 : t < 4 * n / 5 ? CenterBranch::S2 : CenterBranch::NotSB;
      auto rng = trial_rng(5006, static_cast<std::uint64_t>(t));
      const auto m = random_center(br, rng);
      const auto formula = center_classify_formulas(m);
      const Verdict g = generic_verdict(center_map(m));
      if (formula.classification.verdict != g)
        bad.add(std::string("formula ") + to_string(formula.classification.verdict) + ", generic " + to_string(g));
      if (g == Verdict::WhitneyUmbrella || g == Verdict::B2Plus || g == Verdict::B2Minus || g == Verdict::H2)
        forbidden.add(to_string(g));
    });
    bad.report(out, "center maps");
    forbidden.report(out, "center maps with a forbidden verdict");
    out.note("center: " + std::to_string(n - bad.count()) + "/" + std::to_string(n) +
             " agree, WU/B2/H2 occurrences: " + std::to_string(forbidden.count()));
  }
  {
    Failures bad;
    const FoldAngle<Q> zero{Q(1), Q(0)};
    parallel_for(n, [&](int t) {
      const auto br = static_cast<FoldBranch>(t % 3);
      auto rng = trial_rng(5007, static_cast<std::uint64_t>(t));
      const auto m = random_folded(br, zero, rng);
      const M f = folded_map(m, zero);
      const Verdict formula = folded_classify_formulas(m, zero).classification.verdict;
      const Verdict g = generic_verdict(f);
      const Verdict oracle = skbk_classify(sb_coeffs_from_folded(f)).classification.verdict;
      if (formula != g || oracle != g)
        bad.add(std::string("formula ") + to_string(formula) + ", skbk " + to_string(oracle) + ", generic " + to_string(g));
    });
    bad.report(out, "folded surfaces at theta = 0");
    out.note("folded theta = 0: " + std::to_string(n - bad.count()) + "/" + std::to_string(n) +
             " agree across formula, skbk_classify and the generic classifier");
  }
  {
    Failures bad;
    const FoldAngle<Q> th{make_rational(3, 5), make_rational(4, 5)};
    parallel_for(n, [&](int t) {
      const auto br = static_cast<FoldBranch>(t % 3);
      auto rng = trial_rng(5008, static_cast<std::uint64_t>(t));
      const auto m = random_folded(br, th, rng);
      const Verdict formula = folded_classify_formulas(m, th).classification.verdict;
      const Verdict g = generic_verdict(folded_map(m, th));
      if (formula != g) bad.add(std::string("formula ") + to_string(formula) + ", generic " + to_string(g));
    });
    bad.report(out, "folded umbilic surfaces at (cos, sin) = (3/5, 4/5)");
    out.note("folded umbilic (3/5, 4/5): " + std::to_string(n - bad.count()) + "/" + std::to_string(n) + " agree");
  }
  const double dt = seconds_since(t0);
  out.note("runtime " + std::to_string(dt) + " s (limit 600 s)");
  out.expect(dt < 600.0, "runtime over 10 min");
  return out;
}

// ---------------------------------------------------------------------------
// 6. Normal-form oracles against the generic classifier

Outcome criterion6() {
  Outcome out;
  const int n = 300;
  {
    Failures bad;
    std::atomic<int> agree_b03_zero{0}, total_b03_zero{0};
    std::mutex ex_m;
    std::string example;
    parallel_for(n, [&](int t) {
      auto rng = trial_rng(6006, static_cast<std::uint64_t>(t));
      SBNormalCoeffs c;
      for (int d = 3; d <= 5; ++d)
        for (int j = 1; j <= d; ++j) c.a[{d - j, j}] = rnd(rng, 4);
      c.b03 = t % 4 == 0 ? Q(0) : rnd(rng, 4);
      c.b04 = rnd(rng, 4);
      c.b05 = rnd(rng, 4);
      switch (t % 3) {
        case 0:  // S1 region
          c.a[{2, 1}] = rnd_nz(rng, 4);
          c.a[{0, 3}] = rnd_nz(rng, 4);
          break;
        case 1:  // S: a21 = 0, a03 != 0, a31 free (zero every fifth time)
          c.a[{2, 1}] = 0;
          c.a[{0, 3}] = rnd_nz(rng, 4);
          if (t % 5 == 0) c.a[{3, 1}] = 0;
          break;
        default:  // B: a03 = 0, a21 != 0
          c.a[{0, 3}] = 0;
          c.a[{2, 1}] = rnd_nz(rng, 4);
          break;
      }
      const auto r = skbk_classify(c);
      const Verdict g = generic_verdict(to_map_jet(c));
      if (sgn(c.b03) == 0) {
        ++total_b03_zero;
        if (r.classification.verdict == g) ++agree_b03_zero;
      }
      if (r.classification.verdict != g) {
        std::ostringstream os;
        os << "skbk " << to_string(r.classification.verdict) << ", generic " << to_string(g) << " at a21=" << c.A(2, 1)
           << " a05=" << c.A(0, 5) << " a13=" << c.A(1, 3) << " b03=" << c.b03;
        bad.add(os.str());
      }
    });
    bad.report(out, "skbk_classify");
    out.note("skbk_classify: " + std::to_string(n - bad.count()) + "/" + std::to_string(n) +
             " agree over the full SB normal-form domain; on the b03 = 0 slice " +
             std::to_string(agree_b03_zero.load()) + "/" + std::to_string(total_b03_zero.load()));
  }
  {
    Failures bad;
    std::atomic<int> special{0};
    parallel_for(n, [&](int t) {
      auto rng = trial_rng(6007, static_cast<std::uint64_t>(t));
      HNormalCoeffs c;
      for (int d = 3; d <= 5; ++d)
        for (int j = 0; j <= d; ++j) {
          c.a[{d - j, j}] = rnd(rng, 4);
          c.b[{d - j, j}] = rnd(rng, 4);
        }
      if (t % 4 == 0) {
        c.a[{1, 2}] = 0;
        c.a[{0, 3}] = 0;
        ++special;
      }
      if (t % 10 == 1) c.b[{0, 3}] = 0;
      const auto r = h2_check(c);
      const Verdict g = generic_verdict(to_map_jet(c));
      if (r.classification.verdict != g)
        bad.add(std::string("h2_check ") + to_string(r.classification.verdict) + ", generic " + to_string(g));
    });
    bad.report(out, "h2_check");
    out.note("h2_check: " + std::to_string(n - bad.count()) + "/" + std::to_string(n) + " agree (" +
             std::to_string(special.load()) + " with a12 = a03 = 0)");
  }
  return out;
}

// ---------------------------------------------------------------------------
// 7. Sign-convention report

Outcome criterion7() {
  Outcome out;
  const std::string dir = std::string(CROSSCAP_SOURCE_DIR) + "/docs/";
  std::ifstream in(dir + "sign_report.json");
  if (!in) {
    out.fail("docs/sign_report.json is missing");
    return out;
  }
  out.expect(std::ifstream(dir + "sign_conventions.md").good(), "docs/sign_conventions.md is missing");
  const Json rep = Json::parse(in);
  out.note("report generated by " + rep.value("generated_by", std::string("?")));

  // normal forms and wiring
  for (const auto& nf : normal_forms()) {
    for (const auto& row : rep["normal_forms"]) {
      if (row["name"] != to_string(nf.expected)) continue;
      const auto r = classify(nf.germ);
      const auto lookup = [&](const std::string& key) -> std::optional<Q> {
        if (const Q* q = r.certificate.invariant(key)) return *q;
        if (key == "hess_det") return Q(*r.certificate.invariant("xi2phi") * *r.certificate.invariant("eta2phi"));
        return std::nullopt;
      };
      for (const auto& [key, value] : row.items()) {
        if (key == "name" || key == "germ") continue;
        const auto got = lookup(key);
        out.expect(got && str(*got) == value.get<std::string>(),
                   row["name"].get<std::string>() + " " + key + ": report " + value.get<std::string>() + ", library " +
                       (got ? str(*got) : std::string("missing")));
      }
    }
  }
  const auto& w = rep["wiring"]["S1"];
  out.expect(w["hess_det_S1Plus"] == "-48" && w["hess_det_S1Minus"] == "48", "report does not record -48 / +48");
  out.expect(w["rule"] == "S1Plus iff det hess phi(0) < 0", "unexpected S1 wiring in the report");
  out.note("det hess phi(0): S1+ " + w["hess_det_S1Plus"].get<std::string>() + ", S1- " +
           w["hess_det_S1Minus"].get<std::string>() + "; wiring: " + w["rule"].get<std::string>());

  using Eval = std::function<std::tuple<Q, Verdict, Verdict>(const Json&)>;
  const auto check_rows = [&](const std::string& section, Verdict plus, Verdict minus, const Eval& eval) {
    const auto& s = rep[section];
    const std::string op = s["plus_when"];
    int rows = 0;
    for (const auto& row : s["samples"]) {
      const auto [q, formula, generic] = eval(row);
      const std::string want = row["verdict"];
      out.expect(str(q) == row["quantity"].get<std::string>(),
                 section + ": quantity " + str(q) + " vs report " + row["quantity"].get<std::string>());
      out.expect(to_string(formula) == want && to_string(generic) == want,
                 section + ": report " + want + ", formula " + to_string(formula) + ", generic " + to_string(generic));
      if (want == to_string(plus) || want == to_string(minus)) {
        const bool plus_side = op == ">" ? sgn(q) > 0 : sgn(q) < 0;
        out.expect(plus_side == (want == to_string(plus)),
                   section + ": sample contradicts '" + to_string(plus) + " iff quantity " + op + " 0'");
      }
      ++rows;
    }
    out.note(section + ": " + to_string(plus) + " iff " + s["quantity"].get<std::string>() + " " + op + " 0 (" +
             std::to_string(rows) + " samples)");
  };
  const auto rat = [](const Json& j) { return parse_rational(j.get<std::string>()); };
  const auto series = [](const Json& j) { return Series1<Q>::from_jet(parse_poly(j.get<std::string>()).jet); };
  const auto monge = [&](const Json& a) {
    MongeCoeffs<Q> m;
    for (const auto& [k, v] : a.items()) m.a[{k[1] - '0', k[2] - '0'}] = rat(v);
    return m;
  };
  check_rows("ruled", Verdict::S1Plus, Verdict::S1Minus, [&](const Json& row) {
    const RuledData<Q> d{series(row["gamma1"]), series(row["gamma3"]), series(row["c3"])};
    const auto f = ruled_classify_formulas(d);
    const Q* q = f.value("s1_factor");
    return std::make_tuple(q ? *q : Q(0), f.classification.verdict, generic_verdict(ruled_map(d)));
  });
  check_rows("center", Verdict::S1Plus, Verdict::S1Minus, [&](const Json& row) {
    const auto m = monge(row["a"]);
    const auto f = center_classify_formulas(m);
    const Q* q = f.value("s1_discriminant");
    return std::make_tuple(q ? *q : Q(0), f.classification.verdict, generic_verdict(center_map(m)));
  });
  const auto folded_eval = [&](const Json& row, bool b_type) {
    const auto m = monge(row["a"]);
    const FoldAngle<Q> th{rat(row["theta_cos"]), rat(row["theta_sin"])};
    const auto inv = folded_invariants(m, th);
    const Q q = b_type ? inv.r_b : Q(inv.h11 * inv.h22);
    return std::make_tuple(q, folded_classify_formulas(m, th).classification.verdict, generic_verdict(folded_map(m, th)));
  };
  check_rows("folded_s1", Verdict::S1Plus, Verdict::S1Minus, [&](const Json& row) { return folded_eval(row, false); });
  check_rows("folded_b2", Verdict::B2Plus, Verdict::B2Minus, [&](const Json& row) { return folded_eval(row, true); });
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-7)")->check(CLI::Range(1, 7));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"normal-form golden suite", criterion1},
      {"A-equivalence invariance", criterion2},
      {"frame invariants", criterion3},
      {"target pushforward identities", criterion4},
      {"application agreement", criterion5},
      {"oracle agreement", criterion6},
      {"sign-convention report", criterion7},
  };
  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (only != 0 && only != id) continue;
    Outcome out;
    try {
      out = criteria[k].second();
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    for (const auto& note : out.notes) std::cout << "  " << note << "\n";
    std::cout << "criterion " << id << " (" << criteria[k].first << "): " << (out.pass ? "PASS" : "FAIL") << std::endl;
    all = all && out.pass;
  }
  return all ? 0 : 1;
}
