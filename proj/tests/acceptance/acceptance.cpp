// One line per acceptance criterion; exit status is the number of failures.
#include <cstdio>
#include <cstring>
#include <exception>
#include <set>
#include <string>

#include "tuttebraid/checks.hpp"

using namespace tuttebraid;

int main(int argc, char** argv) {
  // acceptance [-v] [check ...]
  bool verbose = false;
  std::set<std::string> only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "-v") == 0) verbose = true;
    else only.insert(argv[i]);
  }
  int failed = 0, ran = 0;
  for (const auto& info : check_registry()) {
    if (!only.empty() && !only.count(info.name)) continue;
    ++ran;
    CheckResult r;
    std::string err;
    try {
      r = run_check(info.name);
    } catch (const std::exception& e) {
      r.name = info.name;
      r.criterion = info.criterion;
      err = e.what();
    }
    failed += !r.pass;
    std::printf("%s  criterion %2d  %-16s %s (%.2f s)%s%s\n", r.pass ? "PASS" : "FAIL", info.criterion,
                info.name.c_str(), info.summary.c_str(), r.seconds, err.empty() ? "" : "  error: ", err.c_str());
    if (verbose || !r.pass) std::printf("      %s\n", r.to_json(true).dump().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", ran - failed, ran);
  return failed;
}
