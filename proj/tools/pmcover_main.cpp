#include <string>
#include <vector>

#include "pmcover/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pmc::run_cli(args);
}
