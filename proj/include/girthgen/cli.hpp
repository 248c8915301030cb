#pragma once

#include "girthgen/bipartite.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace girthgen {

enum class ExitCode : int {
  ok = 0,
  error = 1,
  /// Bad flags, malformed input or parameters no graph can satisfy.
  infeasible = 2,
  /// Every retry ended in FAIL.
  fail_exhausted = 3,
  budget_exceeded = 4,
};

struct RunConfig {
  /// gen, gen-bip, estimate, enumerate, validate or bench.
  std::string command;
  std::size_t n = 0;
  std::size_t m = 0;
  int k = 3;
  /// Degree file for gen-bip, and for validate in bipartite mode.
  std::string degree_file;
  std::uint64_t seed = 0;
  std::size_t retries = 1;
  std::uint64_t samples = 10000;
  /// edgelist, alist or json.
  std::string format = "edgelist";
  /// Graph or report destination; empty means stdout.
  std::string output;
  /// JSON run record destination for gen and gen-bip.
  std::string record;
  /// Cap on enumeration and cycle work; unset means GIRTHGEN_BUDGET or 1e8.
  std::optional<double> budget;
  /// estimate: also run the exact enumerator.
  bool exact = false;
  /// enumerate: write every member to this file, one edge list per line.
  std::string list;
  /// bench: vertex counts and steps timed per run.
  std::vector<std::size_t> ladder{250, 500, 1000};
  std::size_t bench_steps = 20;
};

/// Budget in force for `config`: the flag, else GIRTHGEN_BUDGET, else 1e8.
double effective_budget(const RunConfig &config);

/// Executes one subcommand. Results go to `out` (or the configured files),
/// diagnostics and advisories to `err`. Returns the process exit status.
int run(const RunConfig &config, std::ostream &out, std::ostream &err);

/// Parses argv with the subcommand grammar and calls run().
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// Two lines of whitespace-separated positive integers: left then right
/// degrees. Throws ParseError or DegreeSumMismatch.
DegreeSequence parse_degree_file(const std::string &path);
DegreeSequence parse_degree_text(std::istream &in);

/// Writes `content` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::string &path, const std::string &content);

} // namespace girthgen
