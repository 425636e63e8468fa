#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(GPEGAP_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::current_path() / "cli_scratch" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("exit code 0 on success") {
  const auto r = run("asym box --lengths 2 --beta 1000 --regime strong");
  CHECK(r.code == 0);
  CHECK(r.out.find("265.40711984999") != std::string::npos);
  CHECK(run("--version").code == 0);
}

TEST_CASE("exit code 2 on configuration errors") {
  CHECK(run("solve --no-such-flag").code == 2);
  CHECK(run("solve --bc robin").code == 2);
  CHECK(run("solve --potential tabulated --potential-file /nonexistent").code == 2);
  CHECK(run("solve --bc neumann --lengths 2 --excited vortex").code == 2);
  CHECK(run("asym box --lengths 2 --beta 0.5 --regime strong").code == 2);
  CHECK(run("gap-sweep --lengths 2 --beta-min 5 --beta-max 1").code == 2);
  CHECK(run("figure no-such-recipe").code == 2);
  CHECK(run("--config /nonexistent.ini solve").code == 2);
}

TEST_CASE("exit code 3 on convergence failure") {
  const auto r = run("solve --lengths 2 --beta 10 --max-iter 2");
  CHECK(r.code == 3);
  CHECK(r.out.find("\"status\": \"not-converged\"") != std::string::npos);
}

TEST_CASE("exit code 4 on partial sweeps") {
  const auto dir = scratch("partial");
  const auto r = run("gap-sweep --lengths 2 --n 128 --betas 0,10 --max-iter 3 --csv " +
                     (dir / "s.csv").string());
  CHECK(r.code == 4);
  const auto csv = slurp(dir / "s.csv");
  CHECK(csv.find(",ok") != std::string::npos);
  CHECK(csv.find("failed") != std::string::npos);
}

TEST_CASE("golden CSV header") {
  const auto r = run("gap-sweep --bc periodic --lengths 1 --n 64 --betas 0,1 --json /dev/null");
  REQUIRE(r.code == 0);
  const auto golden = slurp(fs::path(GOLDEN_DIR) / "golden_header.csv");
  CHECK(r.out.substr(0, golden.size()) == golden);
  CHECK(r.out.find("\n0,0,0,") != std::string::npos);
}

TEST_CASE("single-threaded runs are byte-identical") {
  const auto dir = scratch("determinism");
  {
    std::ofstream cfg(dir / "run.ini");
    cfg << "[gap-sweep]\nlengths=2\nn=256\nbetas=[0, 0.5, 5, 50]\ncompare=true\n";
  }
  for (const char* tag : {"a", "b"}) {
    const auto r = run("--config " + (dir / "run.ini").string() + " gap-sweep --jobs 1 --csv " +
                       (dir / (std::string(tag) + ".csv")).string());
    REQUIRE(r.code == 0);
  }
  const auto a = slurp(dir / "a.csv");
  CHECK(!a.empty());
  CHECK(a == slurp(dir / "b.csv"));
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
}

TEST_CASE("config round trip and flag precedence") {
  const auto dir = scratch("config");
  const auto first = run("gap-sweep --bc neumann --lengths 2 --n 200 --betas 0,4 --slack 0.01 "
                         "--dump-config");
  REQUIRE(first.code == 0);
  {
    std::ofstream out(dir / "dump.ini");
    out << first.out;
  }
  const auto cfg = (dir / "dump.ini").string();
  const auto second = run("--config " + cfg + " gap-sweep --dump-config");
  CHECK(second.code == 0);
  CHECK(second.out == first.out);
  const auto third = run("gap-sweep --config " + cfg + " --n 100 --dump-config");
  CHECK(third.out.find("n=100") != std::string::npos);
  CHECK(third.out.find("n=200") == std::string::npos);
  CHECK(third.out.find("bc=\"neumann\"") != std::string::npos);
}

TEST_CASE("solve writes reports and fields") {
  const auto dir = scratch("solve");
  const auto rep = (dir / "r.json").string();
  const auto field = (dir / "phi.bin").string();
  const auto r = run("solve --bc periodic --lengths 1 --n 64 --beta 10 --history -o " + rep +
                     " --field " + field);
  REQUIRE(r.code == 0);
  const auto text = slurp(rep);
  CHECK((text.find("\"energy\": 5.0") != std::string::npos ||
         text.find("\"energy\": 4.99999999999") != std::string::npos));
  CHECK(text.find("\"energy_history\"") != std::string::npos);
  CHECK(fs::file_size(field) == 64 * sizeof(double));
  CHECK(fs::exists(field + ".hdr"));
}

TEST_CASE("figure recipe writes series and a manifest") {
  const auto dir = scratch("figure");
  const auto r = run("figure periodic-gaps --out " + dir.string());
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "periodic-gaps.manifest.json"));
  CHECK(fs::exists(dir / "periodic-gaps_numeric.dat"));
  CHECK(fs::exists(dir / "periodic-gaps_exact.dat"));
}
