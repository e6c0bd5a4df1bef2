#include <string>
#include <vector>

#include "trigraph/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return trigraph::cli::run_cli(std::move(args));
}
