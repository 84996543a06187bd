#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sympten/random.hpp"
#include "sympten/serial.hpp"
#include "sympten/symp_map.hpp"
#include "sympten/verify.hpp"

using namespace sympten;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void row(const char* name, double serial_ms, double parallel_ms, double maxdiff) {
  std::printf("%-34s %10.2f %10.2f %8.2fx   %.3e\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms, maxdiff);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (compiled without OpenMP)\n");
#endif
  std::printf("%-34s %10s %10s %9s   %s\n", "kernel", "serial/ms", "omp/ms", "speedup",
              "max|diff|");

  std::mt19937_64 rng(2024);
  SympSpace big(6);
  auto t4 = random_tensor<double>(big, 4, rng);
  auto g = random_symplectic<double>(big, 1);
  const int reps = 60;

  {
    auto t0 = Clock::now();
    Tensor<double> rs = t4;
    for (int r = 0; r < reps; ++r)
      for (int s = 0; s < 4; ++s) rs = serial::mode_apply(rs, g.matrix, s);
    double serial_ms = ms_since(t0);
    t0 = Clock::now();
    Tensor<double> rp = t4;
    for (int r = 0; r < reps; ++r)
      for (int s = 0; s < 4; ++s) rp = mode_apply(rp, g.matrix, s);
    double par_ms = ms_since(t0);
    row("group action (order 4, n=6)", serial_ms, par_ms, (rs - rp).max_abs());
  }
  {
    auto t0 = Clock::now();
    Tensor<double> rs(big, 4);
    for (int r = 0; r < reps; ++r) rs += serial::antisymmetrize(t4, {0, 1, 2, 3});
    double serial_ms = ms_since(t0);
    t0 = Clock::now();
    Tensor<double> rp(big, 4);
    for (int r = 0; r < reps; ++r) rp += antisymmetrize(t4, {0, 1, 2, 3});
    double par_ms = ms_since(t0);
    row("4-slot antisymmetrizer (n=6)", serial_ms, par_ms, (rs - rp).max_abs());
  }
  {
    auto t0 = Clock::now();
    double accs = 0;
    for (int r = 0; r < reps; ++r) {
      auto c = serial::contract_omega(t4, 1, 3, OmegaIndex::raise);
      accs += c.max_abs();
    }
    double serial_ms = ms_since(t0);
    t0 = Clock::now();
    double accp = 0;
    for (int r = 0; r < reps; ++r) {
      auto c = contract_omega(t4, 1, 3, OmegaIndex::raise);
      accp += c.max_abs();
    }
    double par_ms = ms_since(t0);
    row("omega contraction (order 4)", serial_ms, par_ms, std::abs(accs - accp));
  }
  {
    auto chart = make_nonclosed_chart();
    auto c = random_almost_symplectic_connection(chart, 7);
    auto pts = chart->validation_lattice(7, 3);
    auto t0 = Clock::now();
    double vs = 0;
    for (int r = 0; r < 3; ++r) vs = max_nabla_omega_serial(c, pts);
    double serial_ms = ms_since(t0);
    t0 = Clock::now();
    double vp = 0;
    for (int r = 0; r < 3; ++r) vp = max_nabla_omega(c, pts);
    double par_ms = ms_since(t0);
    row("lattice sweep (2417 points)", serial_ms, par_ms, std::abs(vs - vp));
  }
  return 0;
}
