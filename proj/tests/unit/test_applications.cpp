#include <doctest.h>

#include "../support/generators.hpp"

using namespace crosscap;
using namespace crosscap::testing;

TEST_CASE("ruled frame stays orthonormal to the series order") {
  std::mt19937_64 rng(401);
  const int n = 7;
  const auto c3 = random_series(rng, n, 4);
  const auto fr = ruled_frame(c3, n);
  // the Gram matrix is constant: every coefficient of degree >= 1 vanishes
  const auto gram = [&](const VecSeries<Q>& x, const VecSeries<Q>& y, int k) {
    Q s = 0;
    for (int i = 0; i <= k; ++i) s += dot(x[static_cast<std::size_t>(i)], y[static_cast<std::size_t>(k - i)]);
    return s;
  };
  for (int k = 1; k <= n; ++k) {
    CHECK(gram(fr.a1, fr.a1, k) == Q(0));
    CHECK(gram(fr.a1, fr.a2, k) == Q(0));
    CHECK(gram(fr.a2, fr.a3, k) == Q(0));
    CHECK(gram(fr.a3, fr.a3, k) == Q(0));
  }
}

TEST_CASE("ruled-surface formulas match the classifier on every branch") {
  std::mt19937_64 rng(403);
  for (RuledBranch b : {RuledBranch::WU, RuledBranch::S1, RuledBranch::S2, RuledBranch::B2, RuledBranch::H2}) {
    for (int t = 0; t < 10; ++t) {
      CAPTURE(ruled_branch_name(b));
      const auto d = random_ruled(b, rng);
      const auto formula = ruled_classify_formulas(d);
      CHECK(formula.classification.verdict == generic_verdict(ruled_map(d)));
    }
  }
}

TEST_CASE("ruled data must be singular at the origin") {
  RuledData<Q> d{Series1<Q>({Q(1)}), Series1<Q>({Q(1)}), Series1<Q>({Q(0)})};
  CHECK_THROWS_AS(ruled_classify_formulas(d), InputError);
}

TEST_CASE("center map examples") {
  MongeCoeffs<Q> m;
  m.a = {{{0, 2}, Q(1)}, {{2, 0}, Q(2)}, {{0, 3}, Q(1)}, {{2, 1}, Q(1)}};
  auto f = center_classify_formulas(m);
  CHECK(f.classification.verdict == Verdict::S1Minus);
  CHECK(generic_verdict(center_map(m)) == Verdict::S1Minus);
  m.a = {{{0, 2}, Q(1)}, {{2, 0}, Q(2)}, {{0, 3}, Q(1)}, {{3, 1}, Q(1)}};
  f = center_classify_formulas(m);
  CHECK(f.classification.verdict == Verdict::S2);
  CHECK(*f.value("s") == Q(1));
  CHECK(generic_verdict(center_map(m)) == Verdict::S2);
}

TEST_CASE("center maps need a02 != 0 and a20 != a02") {
  MongeCoeffs<Q> m;
  m.a = {{{0, 2}, Q(1)}, {{2, 0}, Q(1)}};
  CHECK_THROWS_AS(center_map(m), InputError);
  m.a = {{{2, 0}, Q(1)}};
  CHECK_THROWS_AS(center_map(m), InputError);
}

TEST_CASE("center-map formulas match the classifier") {
  std::mt19937_64 rng(409);
  for (CenterBranch b : {CenterBranch::S1, CenterBranch::S2, CenterBranch::NotSB}) {
    for (int t = 0; t < 8; ++t) {
      const auto m = random_center(b, rng);
      const Verdict g = generic_verdict(center_map(m));
      CHECK(center_classify_formulas(m).classification.verdict == g);
      CHECK(g != Verdict::WhitneyUmbrella);
      CHECK(g != Verdict::H2);
    }
  }
}

TEST_CASE("folded surface example at theta = 0") {
  MongeCoeffs<Q> m;
  m.a = {{{0, 2}, Q(1)}, {{2, 0}, Q(2)}, {{0, 3}, Q(1)}, {{3, 1}, Q(2)}};
  const FoldAngle<Q> th{Q(1), Q(0)};
  CHECK(folded_classify_formulas(m, th).classification.verdict == Verdict::S2);
  CHECK(generic_verdict(folded_map(m, th)) == Verdict::S2);
}

TEST_CASE("folded formulas match the classifier at an exact rational angle") {
  std::mt19937_64 rng(419);
  const FoldAngle<Q> th{make_rational(3, 5), make_rational(4, 5)};
  for (FoldBranch b : {FoldBranch::S1, FoldBranch::S, FoldBranch::B}) {
    for (int t = 0; t < 8; ++t) {
      const auto m = random_folded(b, th, rng);
      CHECK(folded_classify_formulas(m, th).classification.verdict == generic_verdict(folded_map(m, th)));
    }
  }
}

TEST_CASE("folding off the principal directions gives a Whitney umbrella") {
  MongeCoeffs<Q> m;
  m.a = {{{0, 2}, Q(1)}, {{2, 0}, Q(2)}, {{0, 3}, Q(1)}};
  const FoldAngle<Q> th{make_rational(3, 5), make_rational(4, 5)};
  CHECK(folded_classify_formulas(m, th).classification.verdict == Verdict::WhitneyUmbrella);
  CHECK(generic_verdict(folded_map(m, th)) == Verdict::WhitneyUmbrella);
}

TEST_CASE("float-mode folding at an irrational angle") {
  // umbilic point, theta = pi/4: h11 = 0 is imposed through a12
  const double c = std::sqrt(0.5), s = std::sqrt(0.5);
  MongeCoeffs<Approx> m;
  m.a = {{{0, 2}, Approx(1.0)}, {{2, 0}, Approx(1.0)}, {{0, 3}, Approx(1.0)}, {{2, 1}, Approx(0.5)},
         {{3, 0}, Approx(-2.0)}, {{3, 1}, Approx(1.0)}, {{1, 3}, Approx(-1.0)}};
  const FoldAngle<Approx> th{Approx(c), Approx(s)};
  m.a[{1, 2}] = Approx(0.0);
  const auto base = folded_invariants(m, th).h11.value;
  m.a[{1, 2}] = Approx(-base / (2 * c * c * s - s * s * s));
  const auto formula = folded_classify_formulas(m, th);
  CHECK(formula.classification.verdict == classify(folded_map(m, th)).classification.verdict);
}
