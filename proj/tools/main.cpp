#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "wittlift/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"wittlift: truncated Witt vectors, group cohomology over Z/p^r, "
               "and Kummer-theoretic lifting checks"};
  app.require_subcommand(1);

  wittlift::RunOptions opt;
  std::string path;
  bool seedless = false;

  auto* run = app.add_subcommand("run", "run a single problem file");
  run->add_option("file", path, "problem description file")->required();
  run->add_flag("--json", opt.json, "emit a JSON report");
  run->add_flag("--timing", opt.timing, "include wall-clock timing in the report");
  run->add_flag("--lenient", opt.lenient, "exit 0 even on a negative verdict");
  run->add_option("--bound", opt.bound, "enumeration cap for searches");
  run->add_option("--task", opt.task_override, "override the task in the file");
  run->add_flag("--seedless", seedless, "assert that no randomness is used (always true)");

  auto* corpus = app.add_subcommand("corpus", "run the built-in acceptance corpus");
  corpus->add_flag("--json", opt.json, "emit a JSON report");
  corpus->add_flag("--timing", opt.timing, "include per-criterion timing");
  corpus->add_flag("--lenient", opt.lenient, "exit 0 even with failures");
  corpus->add_option("--filter", opt.filter, "only run criteria whose name contains this");
  corpus->add_flag("--seedless", seedless, "assert that no randomness is used (always true)");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    std::ifstream in(path);
    if (!in) {
      std::cerr << "error: cannot open '" << path << "'\n";
      return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    auto result = wittlift::run_problem_text(buf.str(), opt);
    std::cout << result.output;
    return result.exit_code;
  }
  auto result = wittlift::run_corpus(opt);
  std::cout << result.output;
  return result.exit_code;
}
