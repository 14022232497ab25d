#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#ifndef SPHSPEC_CLI
#error "SPHSPEC_CLI must point at the command-line binary"
#endif

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(SPHSPEC_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("table examples") {
  const Run a = run("table --n 3 --k 1 --family symmetric --operator higher-spin --jmax 0 --format csv");
  CHECK(a.code == 0);
  CHECK(a.out ==
        "eps,j,q,eig_num,eig_den,multiplicity,weight\n"
        "+1,0,0,5,6,6,3/2;1/2\n"
        "-1,0,0,-5,6,6,3/2;-1/2\n"
        "+1,0,1,5,2,4,3/2;3/2\n"
        "-1,0,1,-5,2,4,3/2;-3/2\n");

  const Run b = run("table --n 4 --k 1 --family symmetric --operator higher-spin-squared --jmax 0");
  CHECK(b.code == 0);
  const auto doc = nlohmann::json::parse(b.out);
  REQUIRE(doc["entries"].size() == 2);
  CHECK(doc["entries"][0]["eigenvalue"] == nlohmann::json::array({9, 4}));
  CHECK(doc["entries"][1]["eigenvalue"] == nlohmann::json::array({9, 1}));

  const Run c = run("table --n 3 --k 0 --family form --operator D-odd --order-2r 3 --jmax 1 --format csv");
  CHECK(c.code == 0);
  CHECK(c.out.find("+1,0,,15,8,") != std::string::npos);
  CHECK(c.out.find("-1,0,,-15,8,") != std::string::npos);
  CHECK(c.out.find("+1,1,,105,8,") != std::string::npos);
  CHECK(c.out.find("-1,1,,-105,8,") != std::string::npos);
}

TEST_CASE("eigen examples") {
  CHECK(run("eigen --n 5 --k 1 --family form --operator TTstar --j 0 --q 0").out == "24/5\n");
  CHECK(run("eigen --n 3 --k 0 --family symmetric --operator higher-spin --j 0 --eps +1").out == "3/2\n");
  CHECK(run("eigen --n 5 --k 1 --family form --operator P_k --j 0 --q 1 --eps +1").out == "35/2\n");
  CHECK(run("eigen --n 5 --k 1 --family form --operator P_k --j 0 --q 1 --eps -1").out == "-35/2\n");
  CHECK(run("eigen --n 3 --k 0 --family form --operator Z --order-2r 3 --j 1 --float").out == "7/1\n7\n");
  const Run real = run("eigen --n 3 --k 0 --family form --operator Z --order-2r 2.5 --j 1 --float");
  CHECK(real.code == 0);
  CHECK(std::stod(real.out) == doctest::Approx(13.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("exit codes") {
  CHECK(run("").code == 1);
  CHECK(run("table --k 1 --operator higher-spin --jmax 0").code == 1);
  CHECK(run("table --n 3 --operator dirac --jmax 0").code == 1);
  CHECK(run("table --n 3 --operator D-odd --family form --jmax 0").code == 1);
  CHECK(run("table --n 5 --k 3 --family form --operator Z --order-2r 3 --jmax 1").code == 2);
  CHECK(run("table --n 4 --k 1 --family symmetric --operator higher-spin --jmax 1").code == 2);
  CHECK(run("table --n 5 --k 1 --family form --operator D-odd --order-2r 4 --jmax 1").code == 2);
  CHECK(run("table --n 5 --k 1 --operator higher-spin --jmax 1 --chirality +").code == 2);
  CHECK(run("eigen --n 3 --k 1 --operator higher-spin --j 0 --q 5").code == 2);
  CHECK(run("verify --suite diagrams --n-range 2..4").code == 2);
  CHECK(run("--help").code == 0);

  const Run pole = run("table --n 4 --k 0 --family form --operator Z --order-2r 7 --jmax 3 --format csv");
  CHECK(pole.code == 4);
  CHECK(pole.out.find(",2,,pole,pole,") != std::string::npos);
  const Run strict = run("table --n 4 --k 0 --family form --operator Z --order-2r 7 --jmax 3 --strict");
  CHECK(strict.code == 4);
  CHECK(strict.out.empty());
  CHECK(run("eigen --n 4 --k 0 --family form --operator Z --order-2r 7 --j 2").code == 4);
}

TEST_CASE("byte determinism and file sink") {
  const std::string args = "table --n 7 --k 2 --family form --operator D-odd --order-2r 5 --jmax 40";
  const Run a = run(args + " --threads 1");
  const Run b = run(args + " --threads 3");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto path = std::filesystem::temp_directory_path() / "sphspec_cli_test.json";
  CHECK(run(args + " --out " + path.string()).code == 0);
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == a.out);
  std::filesystem::remove(path);
}

TEST_CASE("verify examples") {
  for (const char* args : {"verify --suite diagrams --n-range 3..9 --k-max 3 --jmax 10",
                           "verify --suite lichnerowicz --n-range 3..9 --k-max 3 --jmax 10",
                           "verify --suite factored-identity --n-range 5..9 --k-max 3 --l-max 3 --jmax 10"}) {
    const Run r = run(args);
    CHECK_MESSAGE(r.code == 0, args);
    CHECK(nlohmann::json::parse(r.out)["pass"] == true);
  }
}

}
