#include <iostream>
#include <string>
#include <vector>

#include "afrel/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const afrel::cli::CommandResult r = afrel::cli::run(args);
  std::cout << r.render();
  for (const auto& d : r.diagnostics) {
    if (r.status == afrel::cli::Status::Ok)
      std::cerr << d << "\n";
    else
      std::cerr << afrel::cli::status_name(r.status) << ": " << d << "\n";
  }
  return r.exit_code();
}
