#include <doctest.h>

#include "crosscap/commands.hpp"

using namespace crosscap;

namespace {

const char* kS2 = "[map]\nf1 = u\nf2 = v^2\nf3 = v*(u^3+v^2)\n";

}  // namespace

TEST_CASE("classify prints the verdict, the trace and the invariants") {
  CommandOptions opt;
  opt.verify = true;
  const auto out = cmd_classify(kS2, opt);
  CHECK(out.exit_code == kExitDefinite);
  CHECK(out.data["verdict"] == "S2");
  CHECK(out.data["invariants"]["s2_det"]["value"] == "-12");
  CHECK(out.data["verified"] == true);
  CHECK(out.text.rfind("verdict: S2", 0) == 0);
  CHECK(out.text.find("s2_det = -12") != std::string::npos);
  CHECK(out.text.find("verify: ok") != std::string::npos);
  for (const char* key : {"verdict", "trace", "invariants", "frame", "normalization"}) CHECK(out.data.contains(key));
}

TEST_CASE("exit codes") {
  CHECK(cmd_classify("[map]\nf1 = u\nf2 = v^2\nf3 = v^3\n").exit_code == kExitMoreDegenerate);
  CHECK(guarded([] { return cmd_classify("[map]\nf1 = u**2\n"); }).exit_code == kExitInputError);
  CHECK(guarded([] { return cmd_ruled(kS2); }).exit_code == kExitInputError);
}

TEST_CASE("folded command reports both verdicts") {
  const auto out = cmd_folded("[folded]\na02 = 1\na20 = 2\na21 = 0\na03 = 1\na31 = 2\n");
  CHECK(out.exit_code == kExitDefinite);
  CHECK(out.data["formula"]["verdict"] == "S2");
  CHECK(out.data["generic"]["verdict"] == "S2");
  CHECK(out.data["agree"] == true);
}

TEST_CASE("oracle command on both normal-form families") {
  auto out = cmd_oracle("[sb-normal]\na21 = 1\na05 = 3\n");
  CHECK(out.data["formula"]["verdict"] == "B2Plus");
  CHECK(out.data["agree"] == true);
  out = cmd_oracle("[h-normal]\na05 = 1\nb03 = 1\n");
  CHECK(out.data["formula"]["verdict"] == "H2");
  CHECK(out.exit_code == kExitDefinite);
}

TEST_CASE("fuzz output is ordered and deterministic") {
  FuzzOptions one, four;
  one.config.seed = four.config.seed = 9;
  one.config.trials = four.config.trials = 21;
  four.jobs = 4;
  const auto a = cmd_fuzz(one), b = cmd_fuzz(four);
  CHECK(a.text == b.text);
  CHECK(a.data == b.data);
  CHECK(a.text == "21/21 invariant\n");
}
