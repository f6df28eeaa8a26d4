// cmloc: run problem files and emit family fixtures.
//
//   cmloc run FILE [--out REPORT] [policy flags]
//   cmloc fixture "kind=... key=value ..." [--out FILE] [policy flags]
//
// Exit status: 0 ok, 1 some task failed, 2 parse or configuration error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "cmloc/cli.hpp"

namespace {

int write_out(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "cmloc: cannot write " << path << "\n";
    return 2;
  }
  out << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hilbert coefficients, e^T, T-split classes and CM certificates over local rings"};
  app.require_subcommand(1);

  cmloc::Overrides o;
  std::string out_path;
  auto add_policy_flags = [&](CLI::App* cmd) {
    cmd->add_option("--p", o.p, "Prime for rings that do not set p");
    cmd->add_option("--seed", o.seed, "Seed for random linear forms");
    cmd->add_option("--trunc-base", o.base, "Smallest truncation level");
    cmd->add_option("--buffer", o.buffer, "Levels added above the degree of interest");
    cmd->add_option("--window", o.window, "Consecutive agreeing levels needed");
    cmd->add_option("--cap", o.cap, "Largest level offset tried");
    cmd->add_option("--trials", o.trials, "Random trials for CM and superficial searches");
    cmd->add_option("--out", out_path, "Output path ('-' for stdout)");
  };

  std::string problem_path;
  CLI::App* run_cmd = app.add_subcommand("run", "Run every task in a problem file");
  run_cmd->add_option("file", problem_path, "Problem file")->required();
  add_policy_flags(run_cmd);

  std::string spec_text;
  CLI::App* fixture_cmd = app.add_subcommand("fixture", "Write a problem file for a family");
  fixture_cmd->add_option("spec", spec_text, "Family spec: kind=... key=value ...")->required();
  add_policy_flags(fixture_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run_cmd) {
      std::ifstream in(problem_path, std::ios::binary);
      if (!in) {
        std::cerr << "cmloc: cannot read " << problem_path << "\n";
        return 2;
      }
      std::stringstream buf;
      buf << in.rdbuf();
      const cmloc::ProblemFile f = cmloc::parse_problem(buf.str());
      const cmloc::RunResult r = cmloc::run(f, o);
      if (const int w = write_out(r.json, out_path)) return w;
      return r.exit_code;
    }
    cmloc::FamilySpec spec = cmloc::parse_family_spec(spec_text);
    if (o.seed) spec.seed = *o.seed;
    if (o.p) spec.p = *o.p;
    cmloc::RunConfig config;
    if (o.base) config.policy.base = *o.base;
    if (o.buffer) config.policy.buffer = *o.buffer;
    if (o.window) config.policy.window = *o.window;
    if (o.cap) config.policy.cap = *o.cap;
    if (o.trials) config.trials = *o.trials;
    config.policy.validate();
    return write_out(cmloc::format_problem(cmloc::emit_fixture(spec, config)), out_path);
  } catch (const cmloc::ProblemError& e) {
    std::cerr << "cmloc: " << e.what() << "\n";
    return 2;
  } catch (const cmloc::ParseError& e) {
    std::cerr << "cmloc: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "cmloc: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "cmloc: " << e.what() << "\n";
    return 1;
  }
}
