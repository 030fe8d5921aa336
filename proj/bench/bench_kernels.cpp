// wall-clock timings of the parallel kernels against their serial references
#include "fixtures.hpp"

#include <CLI11.hpp>

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>

using namespace presafe;

namespace {

double median_ms(int reps, const std::function<void()>& f) {
  std::vector<double> t;
  for (int i = 0; i < reps; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    t.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-28s serial %9.3f ms  parallel %9.3f ms  speedup %5.2fx\n", name, serial, parallel, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kernel benchmarks"};
  int reps = 20;
  app.add_option("--reps", reps, "repetitions per measurement")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  std::printf("threads: %d, reps: %d\n", omp_get_max_threads(), reps);
  auto d = fixtures::driver_analysis();
  auto bad = synthesis::identity_trace(d.cex.events.size());

  row("classify_traces (driver)",
      median_ms(reps, [&] { synthesis::classify_traces_serial(d.nhood, d.cex, *d.np, *d.p); }),
      median_ms(reps, [&] { synthesis::classify_traces(d.nhood, d.cex, *d.np, *d.p); }));
  row("generalize (driver)",
      median_ms(reps, [&] { synthesis::generalize_serial(d.cex.events, bad, d.nhood, d.cls); }),
      median_ms(reps, [&] { synthesis::generalize(d.cex.events, bad, d.nhood, d.cls); }));

  // end-to-end figures for context
  auto program = fixtures::load("running_example");
  std::printf("%-28s %9.3f ms\n", "verify (running example)",
              median_ms(std::max(1, reps / 10), [&] { synthesis::verify(program, program, {}); }));
  std::printf("%-28s %9.3f ms\n", "synthesize (running example)",
              median_ms(std::max(1, reps / 10), [&] { synthesis::synthesize(program); }));
  return 0;
}
