// Compares the OpenMP kernels against their serial counterparts on
// mid-size workloads and checks that both produce identical results.
#include <chrono>
#include <iostream>
#include <random>

#include "excov/canon.hpp"
#include "excov/enumerate.hpp"
#include "excov/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace excov;
using h_clock = std::chrono::steady_clock;

namespace {

double seconds_since(h_clock::time_point start) {
    return std::chrono::duration<double>(h_clock::now() - start).count();
}

void bench_enumeration() {
    std::cout << "enumeration v=4 k=5\n";
    double serial_time = 0;
    size_t classes_serial = 0, classes_parallel = 0;
    {
        EnumerateOptions opts;
        opts.jobs = 1;
        const auto t0 = h_clock::now();
        classes_serial = build_catalogue(4, 5, opts).members.size();
        serial_time = seconds_since(t0);
        std::cout << "  jobs=1: " << serial_time << " s, " << classes_serial << " classes\n";
    }
    {
        EnumerateOptions opts;
        opts.jobs = 0;  // runtime default
        const auto t0 = h_clock::now();
        classes_parallel = build_catalogue(4, 5, opts).members.size();
        const double t = seconds_since(t0);
        std::cout << "  jobs=auto: " << t << " s, " << classes_parallel << " classes, speedup "
                  << serial_time / t << "x\n";
    }
    std::cout << "  results match: " << (classes_serial == classes_parallel ? "yes" : "NO") << "\n";
}

void bench_canonicalization() {
    std::cout << "canonicalization throughput (42x4, v=6)\n";
    EnumerateOptions opts;
    const auto k3 = build_catalogue(5, 3, opts);
    // build a pool of transformed arrays so the canonicalizer sees fresh input
    std::mt19937 rng(1);
    std::vector<Array> pool;
    for (int i = 0; i < 2000; ++i) {
        const Array& a = k3.members[rng() % k3.members.size()];
        std::vector<Symbol> sigma(a.v);
        std::iota(sigma.begin(), sigma.end(), Symbol{0});
        std::shuffle(sigma.begin(), sigma.end(), rng);
        std::vector<int> rho(a.n_cols);
        std::iota(rho.begin(), rho.end(), 0);
        std::shuffle(rho.begin(), rho.end(), rng);
        pool.push_back(transform(a, sigma, rho));
    }
    const auto t0 = h_clock::now();
    std::uint64_t checksum = 0;
    for (const auto& a : pool) checksum += canonical_form(a).representative.entries[0];
    const double t = seconds_since(t0);
    std::cout << "  " << pool.size() / t << " arrays/s (checksum " << checksum << ")\n";
}

void bench_verification() {
    std::cout << "verification 42x5, v=6, strength 2\n";
    const EnumerateOptions opts;
    const auto cat = build_catalogue(4, 5, opts);
    std::vector<Array> arrays;
    for (int rep = 0; rep < 200; ++rep)
        for (const auto& m : cat.members) arrays.push_back(m);
    const auto t0 = h_clock::now();
    std::uint64_t passes = 0;
    for (const auto& a : arrays) passes += verify_cax(a, 2, true).pass;
    const double fast_t = seconds_since(t0);
    const auto t1 = h_clock::now();
    std::uint64_t passes_ref = 0;
    for (const auto& a : arrays) passes_ref += verify_cax_reference(a, 2, true).pass;
    const double ref_t = seconds_since(t1);
    std::cout << "  pair-matrix: " << arrays.size() / fast_t << " arrays/s; reference scan: "
              << arrays.size() / ref_t << " arrays/s\n";
    std::cout << "  results match: " << (passes == passes_ref ? "yes" : "NO") << "\n";
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::cout << "threads available: " << omp_get_max_threads() << "\n";
#endif
    bench_enumeration();
    bench_canonicalization();
    bench_verification();
    return 0;
}
