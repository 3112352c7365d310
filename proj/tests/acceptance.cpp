// Runs the example corpus twice through the command-line tool. Criteria 1 to 10 are
// read from the first run's JSON; criterion 11 compares the two files byte for byte.
// Prints one line per criterion and exits non-zero if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "json.hpp"

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_corpus(const std::filesystem::path& out, const std::filesystem::path& log) {
  const std::string cmd = std::string("\"") + CONES_BIN + "\" examples run-all --json \"" + out.string() + "\" > \"" +
                          log.string() + "\" 2>&1";
  return std::system(cmd.c_str());
}

}  // namespace

int main() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("conelab_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path a = dir / "run1.json";
  const fs::path b = dir / "run2.json";

  const auto t0 = std::chrono::steady_clock::now();
  const int rc1 = run_corpus(a, dir / "run1.log");
  const auto t1 = std::chrono::steady_clock::now();
  const int rc2 = run_corpus(b, dir / "run2.log");
  const double secs = std::chrono::duration<double>(t1 - t0).count();

  int failures = 0;
  nlohmann::json results;
  try {
    results = nlohmann::json::parse(slurp(a));
  } catch (const std::exception& e) {
    std::cout << "could not read corpus results (exit " << rc1 << "): " << e.what() << '\n' << slurp(dir / "run1.log");
    return 1;
  }
  bool seen[11] = {};
  for (const auto& c : results.at("criteria")) {
    const int id = c.at("id").get<int>();
    const bool ok = c.at("passed").get<bool>();
    if (id >= 1 && id <= 10) seen[id] = true;
    failures += ok ? 0 : 1;
    std::printf("criterion %2d: %s  %s: %s\n", id, ok ? "PASS" : "FAIL", c.at("title").get<std::string>().c_str(),
                c.at("summary").get<std::string>().c_str());
  }
  for (int id = 1; id <= 10; ++id) {
    if (!seen[id]) {
      ++failures;
      std::printf("criterion %2d: FAIL  missing from the corpus output\n", id);
    }
  }
  const std::string ja = slurp(a);
  const std::string jb = slurp(b);
  const bool same = rc1 == 0 && rc2 == 0 && !ja.empty() && ja == jb;
  failures += same ? 0 : 1;
  std::printf("criterion 11: %s  repeatability: two runs give %s JSON (%zu bytes)\n", same ? "PASS" : "FAIL",
              same ? "byte-identical" : "different", ja.size());
  std::printf("corpus run time: %.1f s per run\n", secs);
  if (failures == 0) fs::remove_all(dir);
  return failures == 0 ? 0 : 1;
}
