#include <vector>

#include "nslame/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nslame::run_cli(args);
}
