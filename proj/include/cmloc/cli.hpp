#pragma once

// Problem files, the task runner behind the cmloc tool, and fixture emission.
//
// Problem-file grammar (one statement per line, '#' starts a comment):
//
//   ring NAME: [p=PRIME] vars=V1,V2,...
//   ideal NAME: POLY, POLY, ...
//   module NAME [over RING]: gens=G1,G2,... [valid_below=L]
//   relation NAME: POLY, ...          one relation column, one entry per generator
//   extension NAME: N=MOD M=MOD [E=MOD]
//   cocycle NAME: POLY, ...           one column of the cocycle, rank(N) entries
//   iota NAME: POLY, ...              image of one generator of N, rank(E) entries
//   pi NAME: POLY, ...                image of one generator of E, rank(M) entries
//   policy: [base=B] [buffer=B] [window=W] [cap=C] [seed=S] [trials=T]
//   task: VERB ARG...
//
// A module reference is a module name or EXT.N, EXT.E, EXT.M.

#include <climits>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cmloc/artinian.hpp"
#include "cmloc/families.hpp"

namespace cmloc {

/// Malformed problem file or configuration; maps to exit status 2.
class ProblemError : public std::runtime_error {
 public:
  ProblemError(const std::string& what, int line = 0, int column = 0);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

struct RingBlock {
  std::string name;
  std::optional<std::uint32_t> p;
  std::vector<std::string> vars;
  std::vector<std::string> ideal;
};

struct ModuleBlock {
  std::string name;
  std::string ring;
  std::vector<std::string> gens;
  std::vector<std::vector<std::string>> relations;
  int valid_below = INT_MAX;
};

struct ExtensionBlock {
  std::string name;
  std::string n, e, m;
  std::vector<std::vector<std::string>> cocycle, iota, pi;
};

struct RunConfig {
  TruncationPolicy policy;
  std::uint64_t seed = 0;
  int trials = 5;
  std::uint32_t p = kDefaultPrime;
};

/// Command-line values that take precedence over the policy line.
struct Overrides {
  std::optional<std::uint32_t> p;
  std::optional<std::uint64_t> seed;
  std::optional<int> base, buffer, window, cap, trials;
};

struct ProblemFile {
  std::vector<std::string> comments;
  std::vector<RingBlock> rings;
  std::vector<ModuleBlock> modules;
  std::vector<ExtensionBlock> extensions;
  RunConfig config;
  std::vector<std::string> tasks;
};

ProblemFile parse_problem(std::string_view text);
/// Canonical text; parse_problem(format_problem(f)) formats to the same text.
std::string format_problem(const ProblemFile& f);

/// Task verbs and their argument counts (-1: one or more).
const std::vector<std::pair<std::string, int>>& task_verbs();

struct RunResult {
  std::string json;
  int exit_code = 0;
};

/// Runs every task in order. Reference and configuration errors throw
/// ProblemError; a failing task is reported in the JSON and sets exit code 1.
RunResult run(const ProblemFile& f, const Overrides& overrides = {});

/// "kind=hypersurface-sci vars=x,y g=x i=2 h=1 u=y n=0..4 ..." as accepted by `cmloc fixture`.
FamilySpec parse_family_spec(std::string_view text);
std::string format_family_spec(const FamilySpec& f);

/// Self-contained problem file for a family; the family line is kept as a leading comment.
ProblemFile emit_fixture(const FamilySpec& spec, const RunConfig& config = {});

}  // namespace cmloc
