#pragma once

// The gfcoh command surface. Every command returns a canonical JSON document;
// run() adds flag parsing, table rendering and the exit-code contract:
//   0 ok, 1 mismatch or internal assertion, 2 bad input, 3 quaternionic, 4 infeasible.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gfc/char_classes.hpp"
#include "gfc/json_io.hpp"

namespace gfc::cli {

struct JobConfig {
  std::string command;
  std::string input;  // path or inline JSON
  int max_degree = 4;
  std::optional<std::string> mode;
  std::string format = "json";  // json | table
  unsigned jobs = 1;
  std::optional<std::uint64_t> seed;  // accepted for reproducible randomized runs; no command consumes it
  std::size_t r = 0, s = 0, dim_v0 = 0, dim_w = 0;
};

/// Decomposition of the whole action (identity on Decomposition input).
rep::Decomposition decompose(const io::Action& a);
/// Closure of a list of generators (or validation of a full element list).
rep::FiniteMatrixGroup matrix_group(const io::Action& a);

io::Json cmd_decompose(const io::Action& a);
io::Json cmd_cohomology(const rep::Decomposition& d, int max_degree, cc::Mode mode, unsigned jobs = 1);
/// Contains "match"; run() exits 1 when it is false.
io::Json cmd_oracle(const rep::Decomposition& d, int max_degree, unsigned jobs = 1);
io::Json cmd_classes(const io::Action& a, std::optional<cc::Mode> mode, int max_degree, unsigned jobs = 1);
io::Json cmd_invariants(std::size_t r, std::size_t s, std::size_t dim_v0, std::size_t dim_w);

/// Plain-text rendering of a command's document.
std::string render_table(const std::string& command, const io::Json& doc);

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Exit code for an exception escaping a command.
int exit_code(const std::exception& e);

}  // namespace gfc::cli
