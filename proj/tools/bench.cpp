// Times the property suite with the parallel trial driver against the serial
// reference driver on the same seed. The two must produce byte-identical
// reports; the benchmark aborts if they ever diverge.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "pcalc/verifier.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double run_once(const pcalc::VerifierConfig& cfg, std::string& report_text) {
  auto t0 = std::chrono::steady_clock::now();
  pcalc::VerifyReport rep = pcalc::run_verifier(cfg);
  auto t1 = std::chrono::steady_clock::now();
  report_text = rep.to_text();
  if (!rep.all_passed()) {
    std::fprintf(stderr, "property suite failed, benchmark aborted:\n%s", report_text.c_str());
    std::exit(1);
  }
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  pcalc::VerifierConfig cfg;
  cfg.trials = 400;
  if (argc > 1) cfg.trials = std::atoi(argv[1]);
  if (argc > 2) cfg.seed = std::strtoull(argv[2], nullptr, 10);

#ifdef _OPENMP
  int threads = omp_get_max_threads();
#else
  int threads = 1;
#endif
  std::printf("trials per property: %d, seed %llu, %d thread(s)\n", cfg.trials,
              (unsigned long long)cfg.seed, threads);

  std::string serial_report, parallel_report;

  cfg.parallel = false;
  double serial_s = run_once(cfg, serial_report);
  std::printf("serial:   %8.3f s\n", serial_s);

  cfg.parallel = true;
  double parallel_s = run_once(cfg, parallel_report);
  std::printf("parallel: %8.3f s\n", parallel_s);

  if (serial_report != parallel_report) {
    std::fprintf(stderr, "serial and parallel reports differ; the drivers are not equivalent\n");
    return 1;
  }
  std::printf("reports byte-identical, speedup %.2fx\n", serial_s / parallel_s);
  return 0;
}
