// Compares the OpenMP kernels against their serial references: the
// Legendre-sum sweep, brute-force variety enumeration, and Schoof's
// per-ell tasks. Build target: bench_kernels; `make bench` runs it.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "ffcount/counting.hpp"
#include "ffcount/schoof.hpp"
#include "ffcount/zetalab.hpp"

using namespace ffcount;

namespace {

using Clock = std::chrono::steady_clock;

double time_ms(const std::function<void()>& fn) {
  auto t0 = Clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void row(const char* kernel, const char* mode, double ms, const Int& result) {
  std::printf("%-22s %-10s %10.1f ms   result %s\n", kernel, mode, ms,
              result.get_str().c_str());
}

}  // namespace

int main() {
  std::printf("threads available: %d\n\n", omp_get_max_threads());
  Rng rng(1);

  {
    auto fp = FieldCtx::make((Int(1) << 25) + 35);  // prime
    Curve E = Curve::make_short(fp, fp->from_int(2), fp->from_int(7));
    Int n_par, n_ser;
    omp_set_num_threads(1);
    double one = time_ms([&] { n_ser = count_naive(E).n_points; });
    omp_set_num_threads(omp_get_num_procs());
    double par = time_ms([&] { n_par = count_naive(E).n_points; });
    row("legendre-sweep", "1-thread", one, n_ser);
    row("legendre-sweep", "parallel", par, n_par);
    if (n_par != n_ser) return 1;
  }

  {
    VarietySystem sys =
        parse_variety("331,1 ; 3 ; 1:2,0,0+1:0,2,0+330:0,0,2+5:0,0,0");
    Int n_par, n_ser;
    double ser =
        time_ms([&] { n_ser = brute_force_variety_count_serial(sys, 1); });
    double par = time_ms([&] { n_par = brute_force_variety_count(sys, 1); });
    row("variety-enumeration", "serial", ser, n_ser);
    row("variety-enumeration", "parallel", par, n_par);
    if (n_par != n_ser) return 1;
  }

  {
    Int p = next_prime(Int(1) << 36);
    auto fp = FieldCtx::make(p);
    Curve E = Curve::make_short(fp, fp->from_int(11), fp->from_int(13));
    Int n_par, n_ser;
    double ser = time_ms([&] { n_ser = schoof_count(E, false).n_points; });
    double par = time_ms([&] { n_par = schoof_count(E, true).n_points; });
    row("schoof-per-ell", "serial", ser, n_ser);
    row("schoof-per-ell", "parallel", par, n_par);
    if (n_par != n_ser) return 1;
  }

  return 0;
}
