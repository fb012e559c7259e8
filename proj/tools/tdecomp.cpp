#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "tdecomp/cli.hpp"

namespace {

struct Args {
  std::string file;
  std::string mode = "algebraic";
  std::string format = "text";
  bool verify = false;
  bool trace = false;
  std::uint64_t seed = 0;
  std::size_t max_branches = 10000;
};

void add_job_options(CLI::App& app, Args& a, bool with_mode) {
  app.add_option("file", a.file, "Job file ('-' reads standard input)")->required();
  if (with_mode)
    app.add_option("--mode", a.mode, "algebraic or differential")
        ->check(CLI::IsMember({"algebraic", "differential"}));
  app.add_option("--format", a.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--verify", a.verify, "Run the verification oracles; exit 1 if they fail");
  app.add_option("--seed", a.seed, "Seed for the verification sampling");
  app.add_option("--max-branches", a.max_branches, "Branch cap of the decomposition");
  app.add_flag("--trace", a.trace, "Include the branch tree");
}

int run(const Args& a) {
  std::string text;
  if (a.file == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(a.file);
    if (!in) {
      std::cerr << "cannot open " << a.file << "\n";
      return tdecomp::exit_code::other_error;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  tdecomp::Job job;
  job.mode = a.mode == "differential" ? tdecomp::JobMode::differential : tdecomp::JobMode::algebraic;
  job.format = a.format == "json" ? tdecomp::OutputFormat::json : tdecomp::OutputFormat::text;
  job.verify = a.verify;
  job.trace = a.trace;
  job.seed = a.seed;
  job.max_branches = a.max_branches;
  auto r = tdecomp::run_file(text, job);
  (r.exit_code == tdecomp::exit_code::parse_error || r.exit_code >= tdecomp::exit_code::inconsistent ? std::cerr
                                                                                                       : std::cout)
      << r.output;
  return r.exit_code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Triangular decomposition of algebraic and ordinary differential polynomial systems.\n"
               "Job file: 'order: x < y < z' on the first line, then one polynomial per line; '#' starts a\n"
               "comment. Derivatives (differential mode): y', y'', y^(3).\n"
               "Exit codes: 0 ok, 1 verification failed, 2 parse error, 3 inconsistent, 4 branch limit, 5 other errors."};
  app.require_subcommand(1);
  Args alg, diff, generic;
  auto* a = app.add_subcommand("decompose-alg", "Decompose an algebraic system into regular chains");
  add_job_options(*a, alg, false);
  auto* d = app.add_subcommand("decompose-diff", "Decompose an ordinary differential system into saturated chains");
  add_job_options(*d, diff, false);
  diff.mode = "differential";
  auto* r = app.add_subcommand("run", "Decompose in the mode given by --mode");
  add_job_options(*r, generic, true);
  CLI11_PARSE(app, argc, argv);
  if (a->parsed()) return run(alg);
  if (d->parsed()) return run(diff);
  return run(generic);
}
