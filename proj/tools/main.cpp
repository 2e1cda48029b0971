#include <cstdlib>
#include <iostream>

#include <omp.h>

#include "cli.hpp"

int main(int argc, char** argv) {
  if (const char* t = std::getenv("QSOREP_THREADS")) {
    const int threads = std::atoi(t);
    if (threads > 0) omp_set_num_threads(threads);
  }
  return qsorep::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
