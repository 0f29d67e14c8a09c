#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "pagevar/closed_form.hpp"

namespace {

struct RunResult {
  std::string out;
  int code;
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  const std::string cmd =
      env_prefix + std::string(PAGEVAR_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  return {out, WIFEXITED(status) ? WEXITSTATUS(status) : -1};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace

TEST_CASE("closed-form variance through the pipe") {
  const RunResult r = run_cli("variance --m 2 --n 2 --format csv");
  CHECK(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<std::string>{"m", "n", "path", "quantity",
                                            "value", "error", "agrees"});
  CHECK(rows[1][0] == "2");
  CHECK(rows[1][2] == "closed-form");
  CHECK(rows[1][3] == "variance");
  CHECK(std::stod(rows[1][4]) ==
        doctest::Approx(0.032124297741465824).epsilon(1e-13));
  CHECK(rows[1][6] == "true");
}

TEST_CASE("deterministic side prints an exact zero") {
  const RunResult r = run_cli("variance --m 1 --n 9 --format csv");
  CHECK(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][4] == "0");
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli("variance --m 3 --n 2").code == 2);       // m > n
  CHECK(run_cli("variance --m 2").code == 2);             // missing --n
  CHECK(run_cli("nonsense --m 2 --n 2").code == 2);       // unknown command
  CHECK(run_cli("mean --m 2 --n 3 --format yaml").code == 2);
  CHECK(run_cli("table --m 5 --n-max 4").code == 2);      // empty sweep
  CHECK(run_cli("oracle-m2 --n 1").code == 2);            // n below support
  CHECK(run_cli("verify-mc --m 2 --n 2 --samples 10").code == 2);
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("mean --help").code == 0);
}

TEST_CASE("agreement failure flips the exit code to 1") {
  const RunResult ok = run_cli("verify-derivatives --m 2 --n 3 --format csv");
  CHECK(ok.code == 0);
  const RunResult strict =
      run_cli("verify-derivatives --m 2 --n 3 --tolerance 1e-18 --format csv");
  CHECK(strict.code == 1);
  // rows are still emitted, with agrees=false somewhere
  CHECK(strict.out.find("false") != std::string::npos);
}

TEST_CASE("non-convergence exits with 3") {
  // A single extrapolation level leaves the second-moment residual around
  // 1e-5, far above the internal 1e-7 acceptance bound.
  const RunResult r = run_cli("verify-derivatives --m 2 --n 4 --levels 1");
  CHECK(r.code == 3);
  CHECK(r.out.empty());  // diagnostics go to stderr, not the row stream
}

TEST_CASE("quadrature oracle agrees at tight tolerance") {
  const RunResult r = run_cli("oracle-m2 --n 3 --tolerance 1e-9 --format csv");
  CHECK(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 3);  // header + mean + second-moment
  CHECK(std::stod(rows[1][4]) == doctest::Approx(0.45).epsilon(1e-10));
}

TEST_CASE("monte carlo output is byte-identical for a fixed seed") {
  const std::string args =
      "verify-mc --m 2 --n 2 --samples 2000 --batches 10 --seed 7 --format csv";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  // The seed environment variable is honored, and the flag wins over it.
  const RunResult via_env =
      run_cli("verify-mc --m 2 --n 2 --samples 2000 --batches 10 --format csv",
              "PAGEVAR_SEED=7 ");
  CHECK(via_env.out == a.out);
  const RunResult flag_wins =
      run_cli(args, "PAGEVAR_SEED=12345 ");
  CHECK(flag_wins.out == a.out);
}

TEST_CASE("table rows are sorted and complete") {
  const RunResult r = run_cli("table --n-max 4 --format csv");
  CHECK(r.code == 0);
  const auto rows = parse_csv(r.out);
  // 10 dim pairs with 1 <= m <= n <= 4, two quantities each, plus a header.
  REQUIRE(rows.size() == 21);
  using Key = std::tuple<int, int, std::string, std::string>;
  Key prev{0, 0, "", ""};
  for (size_t i = 1; i < rows.size(); ++i) {
    Key cur{std::stoi(rows[i][0]), std::stoi(rows[i][1]), rows[i][2],
            rows[i][3]};
    CHECK(prev < cur);
    prev = cur;
  }
}

TEST_CASE("json output round-trips bit-for-bit") {
  const RunResult r = run_cli("mean --m 3 --n 4");
  CHECK(r.code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 1);
  const double value = doc[0]["value"].get<double>();
  // %.17g serialization must reproduce the library's double exactly.
  CHECK(value == pagevar::page_mean(pagevar::SystemDims(3, 4)));
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  CHECK(nlohmann::json::parse(buf).get<double>() == value);
  CHECK(doc[0]["m"] == 3);
  CHECK(doc[0]["n"] == 4);
  CHECK(doc[0]["path"] == "closed-form");
  CHECK(doc[0]["agrees"] == true);
}

TEST_CASE("second-moment command matches the library") {
  const RunResult r = run_cli("second-moment --m 2 --n 3 --format csv");
  CHECK(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(std::stod(rows[1][4]) ==
        doctest::Approx(0.22390772693225276).epsilon(1e-13));
}
