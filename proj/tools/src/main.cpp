#include <iostream>

#include "dvkit_cli/cli.hpp"

int main(int argc, char** argv) {
  auto parsed = dvkit::cli::parse_args(argc, argv, std::cout, std::cerr);
  if (const int* code = std::get_if<int>(&parsed)) return *code;
  return dvkit::cli::run(std::get<dvkit::cli::RunConfig>(parsed), std::cout, std::cerr);
}
