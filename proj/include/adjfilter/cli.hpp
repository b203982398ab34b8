#pragma once

// Command-line front end: compute, compare and verify.

#include <iosfwd>
#include <string>
#include <vector>

#include "adjfilter/rootsys.hpp"

namespace adjfilter {

enum class OutputFormat { Json, Csv, Text };

struct JobSpec {
  std::vector<Family> families;
  int rank_lo = 0;
  int rank_hi = 0;
  unsigned long long prime = 3;
  OutputFormat format = OutputFormat::Json;
  bool oracle = false;
};

// "5" or "2..8"; throws InvalidArgument.
std::pair<int, int> parse_rank_range(const std::string& text);

// ADJFILTER_THREADS if set and positive, else the hardware concurrency.
unsigned job_threads();

// Exit codes: 0 ok, 1 verification failure, 2 bad input.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace adjfilter
