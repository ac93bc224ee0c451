#include <string>
#include <vector>

#include "ffdot/cli.hpp"

int main(int argc, char** argv) {
  return ffdot::ffdot_main(std::vector<std::string>(argv + 1, argv + argc));
}
