// End-to-end tests driving the installed CLI binary (path injected by the
// build as PROLATEKIT_CLI_PATH).
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "doctest.h"
#include "prolatekit/prolate.hpp"

namespace {

const std::string kCli = PROLATEKIT_CLI_PATH;

int run(const std::string& args) {
  const std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// parse a CSV produced by the CLI: skip the provenance comment, return rows
std::vector<std::vector<std::string>> rows_of(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

struct TempDir {
  std::string path;
  TempDir() {
    char tmpl[] = "/tmp/prolatekit_cli_XXXXXX";
    REQUIRE(mkdtemp(tmpl) != nullptr);
    path = tmpl;
  }
  ~TempDir() { std::system(("rm -rf " + path).c_str()); }
  std::string file(const std::string& name) const { return path + "/" + name; }
};

}  // namespace

TEST_CASE("cli: basis subcommand writes a loadable JSON basis") {
  TempDir td;
  const std::string out = td.file("b.json");
  REQUIRE(run("basis --family fourier --c 10 --K 60 --out " + out) == 0);
  const prolatekit::prolate::ProlateBasis b =
      prolatekit::prolate::prolate_from_json(slurp(out));
  CHECK(b.K == 60);
  CHECK(b.lambdas.size() == 60);
  CHECK(b.c.c == doctest::Approx(10.0));
  for (int i = 1; i < b.K; ++i) CHECK(b.lambdas(i) < b.lambdas(i - 1));
}

TEST_CASE("cli: config errors exit with code 2") {
  CHECK(run("basis --family fourier") == 2);           // missing --c
  CHECK(run("basis --family hankel --c 10") == 2);     // missing --alpha
  CHECK(run("basis --family martian --c 10") == 2);    // unknown family
  CHECK(run("frobnicate") == 2);                       // unknown subcommand
  CHECK(run("project --route sinc --c 10 --function builtin:bump:1 "
            "--grid nonsense") == 2);
  CHECK(run("apweight --beta -0.5 --p 0.5 --depth 6") == 2);  // p <= 1
  CHECK(run("expand --basis /nonexistent.json --function builtin:psi:0 "
            "--N 5") == 4);                            // I/O failure
  CHECK(run("project --route sinc --c 10 --function /nonexistent.csv "
            "--grid 0:1:8") == 4);
}

TEST_CASE("cli: expand on builtin:psi:3 gives the delta coefficient column") {
  TempDir td;
  const std::string bj = td.file("b.json");
  const std::string out = td.file("coef.csv");
  REQUIRE(run("basis --family fourier --c 10 --K 60 --out " + bj) == 0);
  REQUIRE(run("expand --basis " + bj +
              " --function builtin:psi:3 --N 10 --out " + out) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("# prolatekit") == 0);
  CHECK(text.find("config-hash=") != std::string::npos);
  const auto rows = rows_of(text);
  REQUIRE(rows.size() == 12);  // header + 11 coefficients
  CHECK(rows[0] == std::vector<std::string>{"n", "coefficient", "tail"});
  for (int n = 0; n <= 10; ++n) {
    const double a = std::stod(rows[n + 1][1]);
    CHECK(std::abs(a - (n == 3 ? 1.0 : 0.0)) < 1e-6);
  }
}

TEST_CASE("cli: project sinc route reproduces an in-band Gaussian") {
  TempDir td;
  const std::string out = td.file("proj.csv");
  REQUIRE(run("project --route sinc --c 10 --function builtin:bump:1 "
              "--grid 0:2:9 --out " +
              out) == 0);
  const auto rows = rows_of(slurp(out));
  REQUIRE(rows.size() == 10);
  CHECK(rows[0] == std::vector<std::string>{"x", "value"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double x = std::stod(rows[i][0]);
    const double v = std::stod(rows[i][1]);
    CHECK(std::abs(v - std::exp(-x * x)) < 1e-6);
  }
}

TEST_CASE("cli: two-column CSV ingestion") {
  TempDir td;
  const std::string in = td.file("f.csv");
  {
    std::ofstream f(in);
    f << "# sampled Gaussian\n";
    for (int i = 0; i <= 4000; ++i) {
      const double x = -20.0 + 0.01 * i;
      f << x << "," << std::exp(-x * x) << "\n";
    }
  }
  const std::string out = td.file("proj.csv");
  REQUIRE(run("project --route sinc --c 10 --function " + in +
              " --grid 0:1:5 --out " + out) == 0);
  const auto rows = rows_of(slurp(out));
  REQUIRE(rows.size() == 6);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double x = std::stod(rows[i][0]);
    CHECK(std::abs(std::stod(rows[i][1]) - std::exp(-x * x)) < 1e-5);
  }
}

TEST_CASE("cli: rates emits fitted slopes near the predicted exponents") {
  TempDir td;
  const std::string out = td.file("rates.csv");
  REQUIRE(run("rates --p 1.5,2,3 --nmax 80 --out " + out) == 0);
  const auto rows = rows_of(slurp(out));
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double p = std::stod(rows[i][0]);
    const double slope = std::stod(rows[i][1]);
    CHECK(std::abs(slope - (-1.0 + 1.0 / p)) < 0.1);
  }
}

TEST_CASE("cli: apweight flags the non-integrable endpoint weight") {
  TempDir td;
  const std::string good = td.file("good.csv");
  const std::string bad = td.file("bad.csv");
  REQUIRE(run("apweight --beta -0.5 --p 2 --depth 8 --out " + good) == 0);
  REQUIRE(run("apweight --beta -1 --p 2 --depth 8 --out " + bad) == 0);
  const auto g = rows_of(slurp(good));
  const auto b = rows_of(slurp(bad));
  REQUIRE(g.size() >= 3);
  CHECK(g.back()[2] == "0");  // bounded weight never diverges
  CHECK(b.back()[2] == "1");  // omega = 1/x is flagged
}

TEST_CASE("cli: normscan reports nondecreasing running max") {
  TempDir td;
  const std::string out = td.file("scan.csv");
  REQUIRE(run("normscan --op fourier --c 10 --p 2 --q 2 --count 4 --out " +
              out) == 0);
  const auto rows = rows_of(slurp(out));
  REQUIRE(rows.size() == 5);
  double prev = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double rm = std::stod(rows[i][4]);
    CHECK(rm >= prev);
    prev = rm;
  }
}

TEST_CASE("cli: repeated runs are byte-identical") {
  TempDir td;
  const std::string b1 = td.file("b1.json"), b2 = td.file("b2.json");
  REQUIRE(run("basis --family hankel --alpha 0.5 --c 10 --K 40 --out " + b1) ==
          0);
  REQUIRE(run("basis --family hankel --alpha 0.5 --c 10 --K 40 --out " + b2) ==
          0);
  CHECK(slurp(b1) == slurp(b2));

  const std::string c1 = td.file("c1.csv"), c2 = td.file("c2.csv");
  REQUIRE(run("expand --basis " + b1 +
              " --function builtin:jn:2 --N 10 --out " + c1) == 0);
  REQUIRE(run("expand --basis " + b1 +
              " --function builtin:jn:2 --N 10 --out " + c2) == 0);
  CHECK(slurp(c1) == slurp(c2));

  const std::string p1 = td.file("p1.csv"), p2 = td.file("p2.csv");
  REQUIRE(run("project --route lommel --c 10 --alpha 0.5 "
              "--function builtin:fejer --grid 0.1:2:33 --out " +
              p1) == 0);
  REQUIRE(run("project --route lommel --c 10 --alpha 0.5 "
              "--function builtin:fejer --grid 0.1:2:33 --out " +
              p2) == 0);
  CHECK(slurp(p1) == slurp(p2));
}
