// Serial vs OpenMP disease-mask kernels.
//   bench_mask [--resolution 64 256 1024] [--reps 20] [--threads N]

#include <omp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <vector>

#include "benefit/noise.hpp"

using namespace benefit;

namespace {

template <typename F>
double best_ms(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    best = std::min(best, ms);
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Disease mask kernel benchmark"};
  std::vector<int> sizes = {64, 256, 1024};
  int reps = 20;
  int threads = 0;
  app.add_option("--resolution", sizes, "Grid sizes")->check(CLI::Range(16, 8192));
  app.add_option("--reps", reps, "Repetitions, best time reported")->check(CLI::PositiveNumber);
  app.add_option("--threads", threads, "OpenMP threads (default: runtime choice)")->check(CLI::NonNegativeNumber);
  CLI11_PARSE(app, argc, argv);
  if (threads > 0) omp_set_num_threads(threads);

  const DiseaseMaskParams p{0.65, 5.0, 0x5eedull};
  std::printf("threads %d\n", omp_get_max_threads());
  std::printf("%10s %12s %12s %8s %s\n", "resolution", "serial_ms", "openmp_ms", "speedup", "identical");
  int bad = 0;
  for (int n : sizes) {
    double fs = 0.0, fp = 0.0;
    const double ts = best_ms(reps, [&] { fs = disease_mask_fraction_reference(p, n); });
    const double tp = best_ms(reps, [&] { fp = disease_mask_fraction(p, n); });
    const bool same = fs == fp && noise_grid(p, n) == noise_grid_reference(p, n);
    bad += same ? 0 : 1;
    std::printf("%10d %12.3f %12.3f %8.2f %s\n", n, ts, tp, ts / tp, same ? "yes" : "NO");
  }

  // one snapshot's worth of plants at the shipped resolution
  const int plants = 60;
  const double ts = best_ms(reps, [&] {
    for (int i = 0; i < plants; ++i) disease_mask_fraction_reference({0.65, 5.0, static_cast<std::uint64_t>(i)}, 64);
  });
  const double tp = best_ms(reps, [&] {
    for (int i = 0; i < plants; ++i) disease_mask_fraction({0.65, 5.0, static_cast<std::uint64_t>(i)}, 64);
  });
  std::printf("%d plants x 64x64: serial %.3f ms, openmp %.3f ms\n", plants, ts, tp);
  return bad == 0 ? 0 : 1;
}
