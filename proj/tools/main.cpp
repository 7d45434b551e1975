#include <vector>

#include "fid/cli.hpp"

int main(int argc, char** argv) {
  return fid::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
