#pragma once

#include <cstdint>
#include <string>

#include "crosscap/fuzz.hpp"
#include "crosscap/report.hpp"

namespace crosscap {

/// Exit codes shared by every command.
enum ExitCode : int {
  kExitDefinite = 0,
  kExitInputError = 1,
  kExitMoreDegenerate = 2,
  kExitDisagreement = 3,
};

struct CommandOptions {
  bool json = false;
  bool verify = false;
};

struct CommandOutput {
  int exit_code = kExitDefinite;
  Json data;          // machine-readable result
  std::string text;   // rendering printed by the CLI
};

/// Each command takes the text of an input document.
CommandOutput cmd_classify(const std::string& doc_text, const CommandOptions& opt = {});
CommandOutput cmd_ruled(const std::string& doc_text, const CommandOptions& opt = {});
CommandOutput cmd_center(const std::string& doc_text, const CommandOptions& opt = {});
CommandOutput cmd_folded(const std::string& doc_text, const CommandOptions& opt = {});
CommandOutput cmd_oracle(const std::string& doc_text, const CommandOptions& opt = {});

struct FuzzOptions {
  FuzzConfig config;
  int jobs = 1;
};

/// Random A-actions on the built-in normal forms; trial t uses form t mod 7.
CommandOutput cmd_fuzz(const FuzzOptions& fo, const CommandOptions& opt = {});

/// Runs cmd on the text and converts library errors into exit code 1.
template <class F>
CommandOutput guarded(F&& cmd) {
  try {
    return cmd();
  } catch (const Error& e) {
    CommandOutput out;
    out.exit_code = kExitInputError;
    out.data = {{"error", e.what()}};
    out.text = std::string("error: ") + e.what() + "\n";
    return out;
  }
}

}  // namespace crosscap
