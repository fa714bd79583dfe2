#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "crosscap/commands.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw crosscap::InputError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int emit(const crosscap::CommandOutput& out, bool json) {
  if (json)
    std::cout << out.data.dump(2) << "\n";
  else
    (out.exit_code == crosscap::kExitInputError ? std::cerr : std::cout) << out.text;
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace crosscap;
  CLI::App app{"Classify corank-1 singularities of maps from the plane to 3-space"};
  app.require_subcommand(1);
  CommandOptions opt;
  app.add_flag("--json", opt.json, "Emit one JSON object instead of text");

  std::string path;
  using Cmd = CommandOutput (*)(const std::string&, const CommandOptions&);
  struct DocCommand {
    const char* name;
    const char* help;
    Cmd fn;
  };
  const DocCommand doc_commands[] = {
      {"classify", "Classify the germ described by a document of any kind", cmd_classify},
      {"ruled", "Ruled surface: closed-form verdict and generic verdict", cmd_ruled},
      {"center", "Center map of a Monge surface: closed-form and generic verdicts", cmd_center},
      {"folded", "Folded Monge surface: closed-form and generic verdicts", cmd_folded},
      {"oracle", "Normal-form coefficient oracle (sb-normal or h-normal)", cmd_oracle},
  };
  Cmd chosen = nullptr;
  for (const auto& dc : doc_commands) {
    auto* sub = app.add_subcommand(dc.name, dc.help);
    sub->add_option("path", path, "Input document")->required();
    sub->add_flag("--verify", opt.verify, "Recompute every invariant from the normalized germ");
    sub->add_flag("--json", opt.json, "Emit one JSON object instead of text");
    sub->callback([&chosen, fn = dc.fn] { chosen = fn; });
  }

  FuzzOptions fo;
  auto* fuzz = app.add_subcommand("fuzz", "Random A-actions on the built-in normal forms");
  fuzz->add_option("--seed", fo.config.seed, "Base seed")->capture_default_str();
  fuzz->add_option("--trials", fo.config.trials, "Number of trials")->capture_default_str();
  fuzz->add_option("--degree", fo.config.degree, "Degree of the random diffeomorphisms")->capture_default_str();
  fuzz->add_option("--bound", fo.config.bound, "Bound on numerators and denominators")->capture_default_str();
  fuzz->add_option("--order", fo.config.order, "Jet order")->capture_default_str();
  fuzz->add_option("--jobs", fo.jobs, "Worker threads")->capture_default_str();
  fuzz->add_flag("--json", opt.json, "Emit one JSON object instead of text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInputError;
  }

  if (fuzz->parsed()) return emit(guarded([&] { return cmd_fuzz(fo, opt); }), opt.json);
  return emit(guarded([&] { return chosen(read_file(path), opt); }), opt.json);
}
