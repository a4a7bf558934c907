#include "cli.hpp"

int main(int argc, char** argv) {
  return ordsparse::cli::run_cli(argc, argv);
}
