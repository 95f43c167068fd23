#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace afrel::cli {

enum class Status { Ok, InvalidInput, NoConvergence, Refused };

std::string status_name(Status s);

struct CommandResult {
  Status status = Status::Ok;
  nlohmann::json payload;  // null when there is nothing to print
  std::vector<std::string> diagnostics;

  // 0 ok, 1 invalid-input or refused, 2 no-convergence.
  int exit_code() const noexcept;
  // Payload as sorted-key JSON plus a newline; empty for a null payload.
  std::string render() const;
};

// argv without the program name, e.g. {"kms", "--sft", "s.json", ...}.
// Never throws: every failure becomes a status with diagnostics.
CommandResult run(const std::vector<std::string>& args);

// Library operation -> the one subcommand that exposes it.
struct Coverage {
  std::string module;
  std::string operation;
  std::string subcommand;
};

const std::vector<Coverage>& operation_coverage();
std::vector<std::string> subcommands();

}  // namespace afrel::cli
