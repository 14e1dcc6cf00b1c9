#include <iostream>

#include "gptlab/cli.hpp"

int main(int argc, char** argv) {
  int code = 0;
  const auto cfg = gptlab::cli::parse_args(argc, argv, std::cout, std::cerr, code);
  if (!cfg) return code;
  return gptlab::cli::run(*cfg, std::cout, std::cerr);
}
