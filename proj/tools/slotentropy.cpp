#include <string>
#include <vector>

#include "slotentropy/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return slotentropy::cli::run(args);
}
