#include <doctest.h>

#include "wittlift/report.hpp"

using namespace wittlift;

namespace {
RunOptions json_opt() {
  RunOptions o;
  o.json = true;
  return o;
}
}  // namespace

TEST_CASE("cyclotomic fixture through the problem runner") {
  std::string text =
      "task cyclotomic-check\n"
      "prime 2\n"
      "depth 1\n"
      "degree 1\n"
      "group cyclic 2\n"
      "character 1 3\n";
  auto r = run_problem_text(text, RunOptions{});
  CHECK(r.exit_code == 0);
  CHECK(r.verdict);

  std::string neg =
      "task cyclotomic-check\nprime 2\ndepth 1\ndegree 1\ngroup cyclic 2\ncharacter 1 1\n";
  auto rn = run_problem_text(neg, RunOptions{});
  CHECK(rn.exit_code == 1);
  CHECK(!rn.verdict);
  RunOptions lenient;
  lenient.lenient = true;
  CHECK(run_problem_text(neg, lenient).exit_code == 0);
}

TEST_CASE("fit task emits the two matrices") {
  std::string text =
      "task fit\n"
      "prime 2\n"
      "group trivial 1\n"
      "algebra truncated 2 2\n"
      "action trivial\n";
  auto r = run_problem_text(text, json_opt());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"m\": 1") != std::string::npos);
  CHECK(r.output.find("\"f\"") != std::string::npos);
  CHECK(r.output.find("\"g\"") != std::string::npos);
}

TEST_CASE("lift task round trip") {
  std::string text =
      "task lift\n"
      "prime 2\n"
      "depth 1\n"
      "level 1\n"
      "group cyclic 2\n"
      "character 1 3\n"
      "algebra prime\n"
      "action trivial\n"
      "class index 1\n";
  auto r = run_problem_text(text, json_opt());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"revalidated\": true") != std::string::npos);
}

TEST_CASE("malformed input exits 2 with a diagnostic") {
  auto r = run_problem_text("task cyclotomic-check\ngroup cyclic\n", RunOptions{});
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("line 2") != std::string::npos);

  auto r2 = run_problem_text("prime 2\n", RunOptions{});
  CHECK(r2.exit_code == 2);

  auto r3 = run_problem_text("task nonsense\n", RunOptions{});
  CHECK(r3.exit_code == 2);
}

TEST_CASE("reports are byte-identical across runs") {
  std::string text =
      "task smooth-check\nprime 2\ngroup cyclic 2\nalgebra prime\naction trivial\n";
  auto a = run_problem_text(text, json_opt());
  auto b = run_problem_text(text, json_opt());
  CHECK(a.output == b.output);

  std::string laurent =
      "task laurent\nprime 2\ndepth 1\ngroup cyclic 2\ncharacter 1 3\nlaurent-level 2\n";
  auto c = run_problem_text(laurent, json_opt());
  auto d = run_problem_text(laurent, json_opt());
  CHECK(c.output == d.output);
  CHECK(c.verdict);
}

TEST_CASE("cyclothymic search task") {
  std::string text =
      "task cyclothymic-search\n"
      "prime 2\n"
      "depth 1\n"
      "degree 1\n"
      "group cyclic 2\n"
      "instance-subgroup 0 1\n"
      "instance-class 0 1\n";
  auto r = run_problem_text(text, json_opt());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"found\": true") != std::string::npos);
  CHECK(r.output.find("3") != std::string::npos);  // the sign character appears
}

TEST_CASE("kummer identity task") {
  std::string text =
      "task kummer-identity\n"
      "prime 2\n"
      "group cyclic 2\n"
      "character 1 3\n"
      "class index 1\n";
  auto r = run_problem_text(text, json_opt());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"identity_holds\": true") != std::string::npos);
}

TEST_CASE("cohomology task lists orders") {
  std::string text =
      "task cohomology\n"
      "prime 2\n"
      "level 2\n"
      "degree 2\n"
      "group cyclic 2\n"
      "character 1 3\n";
  auto r = run_problem_text(text, json_opt());
  CHECK(r.exit_code == 0);
}

TEST_CASE("task override flag") {
  // a file written for cyclotomic-check re-run as a cohomology listing
  std::string text =
      "task cyclotomic-check\nprime 2\ndepth 1\nlevel 2\ndegree 1\n"
      "group cyclic 2\ncharacter 1 3\n";
  RunOptions opt;
  opt.json = true;
  opt.task_override = "cohomology";
  auto r = run_problem_text(text, opt);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"task\": \"cohomology\"") != std::string::npos);
}

TEST_CASE("corpus filter") {
  RunOptions opt;
  opt.json = true;
  opt.filter = "witt-ring";
  auto r = run_corpus(opt);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("witt-ring-iso") != std::string::npos);
  CHECK(r.output.find("theorem-a") == std::string::npos);
}
