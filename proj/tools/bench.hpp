#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace locsim::tools {

struct BenchConfig {
  std::string suite;
  std::vector<std::size_t> sizes;
  std::vector<std::uint64_t> seeds;
  std::size_t degree = 0;  // 0 picks the suite default
  double C = 1.0;
  unsigned c_exponent = 3;
  std::string ids = "random";
  std::size_t steps = 64;
  std::size_t trunc = 0;
  std::size_t retries = 100000;
};

// `rounds` is a string because Brooks round counts overflow 64 bits.
struct BenchRow {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string rounds;
  std::uint64_t palette = 0;
  double wall_ms = 0;
  bool verified = false;
};

bool known_suite(const std::string& name);
const std::vector<std::string>& suite_names();

/// Rows run in parallel and come back sorted by (n, seed).
std::vector<BenchRow> run_bench(const BenchConfig& config);

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);
void write_json(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace locsim::tools
