// Benchmark of the OpenMP kernels against their serial references: the sparse
// polynomial multiply, and the per-chart singular-locus scan used by the
// verifier.
#include <chrono>
#include <iostream>
#include <random>

#include <enriq/verify.hpp>

using namespace enriq;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Poly random_poly(const RegistryPtr& reg, const FieldPtr& F, int terms, int maxdeg,
                 std::mt19937_64& rng) {
  std::vector<Term> ts;
  for (int i = 0; i < terms; ++i) {
    Expo e(reg->size(), 0);
    for (auto& x : e) x = (int)(rng() % (maxdeg + 1));
    std::uint64_t c = rng() & ((1ULL << F->degree()) - 1);
    if (c == 0) c = 1;
    ts.push_back(Term{std::move(e), c});
  }
  return Poly::from_terms(reg, F, std::move(ts));
}

void bench_mul() {
  auto reg = Registry::make({"x", "y", "z", "t"});
  FieldPtr F = Field::canonical(8);
  std::mt19937_64 rng(7);
  std::cout << "sparse multiply (GF(2^8), 4 variables)\n";
  std::cout << "  terms   serial_ms   parallel_ms   speedup\n";
  for (int terms : {64, 128, 256, 512, 1024}) {
    Poly a = random_poly(reg, F, terms, 24, rng);
    Poly b = random_poly(reg, F, terms, 24, rng);
    auto t0 = Clock::now();
    Poly s = poly_mul_serial(a, b);
    double serial = ms_since(t0);
    t0 = Clock::now();
    Poly p = poly_mul_parallel(a, b);
    double parallel = ms_since(t0);
    if (!(s == p)) {
      std::cerr << "KERNEL MISMATCH\n";
      std::exit(1);
    }
    std::printf("  %5d   %9.2f   %11.2f   %6.2fx\n", (int)a.nterms(), serial, parallel,
                serial / parallel);
  }
}

void bench_verify() {
  std::cout << "\nbuiltin singular-point scans (atlas preparation + solve)\n";
  std::cout << "  example          serial_ms   parallel_ms\n";
  for (const char* name : {"12A1", "3D4", "D12"}) {
    const ExampleCase& ex = builtin_case(name);
    Poly::set_parallel(false);
    auto t0 = Clock::now();
    {
      Atlas a = ex.atlas;
      a.prepare();
      singular_points(a);
    }
    double serial = ms_since(t0);
    Poly::set_parallel(true);
    t0 = Clock::now();
    {
      Atlas a = ex.atlas;
      a.prepare();
      singular_points(a);
    }
    double parallel = ms_since(t0);
    std::printf("  %-15s  %9.2f   %11.2f\n", name, serial, parallel);
  }
}

} // namespace

int main() {
  bench_mul();
  bench_verify();
  return 0;
}
