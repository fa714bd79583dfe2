#include <doctest.h>

#include "../support/generators.hpp"

using namespace crosscap;
using namespace crosscap::testing;

namespace {

VectorFieldJet<Q> random_field(std::mt19937_64& rng, int degree, const std::string& name) {
  return {random_poly(rng, 0, degree, degree, 4), random_poly(rng, 0, degree, degree, 4), FrameLevel::Untagged, name};
}

}  // namespace

TEST_CASE("coordinate fields act as partial derivatives") {
  std::mt19937_64 rng(3);
  const J g = random_poly(rng, 0, 6, 6, 5);
  CHECK(apply(VectorFieldJet<Q>::du(), g) == g.partial_u());
  CHECK(apply(VectorFieldJet<Q>::dv(), g) == g.partial_v());
}

TEST_CASE("words apply right to left") {
  // xi = u d/dv, eta = d/du on g = v: xi eta g = 0 but eta xi g = 1
  auto xi = VectorFieldJet<Q>{J(3), J::u(3), FrameLevel::Untagged, "xi"};
  auto eta = VectorFieldJet<Q>::du(3);
  const J g = J::v(4);
  CHECK(apply_word<Q>({xi, eta}, g).at0() == Q(0));
  CHECK(apply_word<Q>({eta, xi}, g).at0() == Q(1));
  CHECK(apply_word<Q>({eta, xi}, g) == apply(eta, apply(xi, g)));
}

TEST_CASE("fields are derivations") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    const auto z = random_field(rng, 3, "z");
    const J a = random_poly(rng, 0, 6, 6, 5), b = random_poly(rng, 0, 6, 6, 5);
    CHECK(apply(z, a * b) == apply(z, a) * b.truncated(5) + a.truncated(5) * apply(z, b));
  }
}

TEST_CASE("bracket acts as the commutator") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 30; ++t) {
    const auto x = random_field(rng, 2, "x"), y = random_field(rng, 2, "y");
    const J g = random_poly(rng, 0, 7, 7, 5);
    const J lhs = apply_word<Q>({x, y}, g) - apply_word<Q>({y, x}, g);
    CHECK(lhs == apply(bracket(x, y), g).truncated(5));
  }
}

TEST_CASE("an overlong word reports the exhausted word") {
  const M f(J::u(2), J::monomial(0, 2, Q(1), 2), J(2));
  const auto e = VectorFieldJet<Q>::dv();
  try {
    apply_word<Q>({e, e, e}, f);
    FAIL("expected OrderExhausted");
  } catch (const OrderExhausted& ex) {
    CHECK(std::string(ex.what()).find("dv dv dv") != std::string::npos);
  }
}
