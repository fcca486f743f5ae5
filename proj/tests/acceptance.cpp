// Acceptance battery at full profile. One line per criterion; exit status is
// nonzero if any criterion fails.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "locclab/verification.hpp"

int main(int argc, char** argv) {
  locclab::VerificationOptions opt;
  opt.profile = locclab::Profile::Full;
  opt.fixture_dir = LOCCLAB_FIXTURE_DIR;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--quick") opt.profile = locclab::Profile::Quick;
    else if (a == "--regenerate") opt.fixture_dir.clear();
    else if (a == "--seed" && i + 1 < argc) opt.seed = std::strtoull(argv[++i], nullptr, 10);
    else {
      std::fprintf(stderr, "usage: locclab_acceptance [--quick] [--regenerate] [--seed N]\n");
      return 2;
    }
  }
  opt.on_result = [](const locclab::CriterionResult& r) {
    std::printf("%-4s %s  %-44s %s (%.2fs)\n", r.id.c_str(), r.passed ? "PASS" : "FAIL", r.title.c_str(),
                r.detail.c_str(), r.seconds);
    std::fflush(stdout);
  };
  const auto report = locclab::verify_paper(opt);
  int failed = 0;
  for (const auto& c : report.criteria) failed += c.passed ? 0 : 1;
  std::printf("%zu criteria, %d failed\n", report.criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
