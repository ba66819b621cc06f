#include <vector>

#include "stgcs/cli_io.hpp"

int main(int argc, char** argv) {
  return stgcs::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
