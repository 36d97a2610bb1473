// Benchmark of the OpenMP kernels against their serial reference
// implementations: the Monte Carlo trial loop and the sphere-grid sweep.
// Both must produce identical results; the table reports the speedup.

#include <chrono>
#include <cstdio>
#include <vector>

#include "convdist/events.hpp"
#include "convdist/ldi.hpp"
#include "convdist/oracle.hpp"
#include "convdist/rng.hpp"
#include "convdist/samplers.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace convdist;

namespace {

double seconds(std::chrono::steady_clock::time_point a,
               std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

void report(const char* name, double serial_s, double parallel_s, bool equal) {
    std::printf("%-28s %10.3fs %10.3fs %8.2fx   %s\n", name, serial_s,
                parallel_s, serial_s / parallel_s,
                equal ? "results identical" : "RESULTS DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel kernels run serially\n");
#endif
    std::printf("%-28s %11s %11s %9s\n", "kernel", "serial", "parallel",
                "speedup");

    {
        LdiExperiment exp;
        exp.process =
            ProcessSpec::binomial(GroundSpace::finite_alphabet(10), 30, 0.5);
        exp.event =
            EventSet::count_upper(Region::alphabet_subset({0, 1, 2, 3}), 6);
        exp.distance = DistanceKind::Binomial;
        exp.s_grid = {0.5, 1.0, 2.0};
        exp.trials = 4000;
        exp.seed = 7;

        exp.parallel = false;
        auto t0 = std::chrono::steady_clock::now();
        const auto serial_rows = run_ldi(exp);
        auto t1 = std::chrono::steady_clock::now();
        exp.parallel = true;
        const auto parallel_rows = run_ldi(exp);
        auto t2 = std::chrono::steady_clock::now();

        bool equal = serial_rows.size() == parallel_rows.size();
        for (std::size_t i = 0; equal && i < serial_rows.size(); ++i)
            equal = serial_rows[i].a_hits == parallel_rows[i].a_hits &&
                    serial_rows[i].not_as_hits == parallel_rows[i].not_as_hits;
        report("ldi trial loop", seconds(t0, t1), seconds(t1, t2), equal);
    }

    {
        std::vector<std::vector<double>> vecs;
        Rng rng(99);
        for (int i = 0; i < 12; ++i) {
            std::vector<double> v(5);
            for (auto& c : v) c = rng.next_double() * 2.0;
            vecs.push_back(std::move(v));
        }
        sphere_grid_oracle(vecs, 21);  // spin up the worker team
        auto t0 = std::chrono::steady_clock::now();
        const double serial = sphere_grid_oracle_serial(vecs, 55);
        auto t1 = std::chrono::steady_clock::now();
        const double parallel = sphere_grid_oracle(vecs, 55);
        auto t2 = std::chrono::steady_clock::now();
        report("sphere grid sweep", seconds(t0, t1), seconds(t1, t2),
               serial == parallel);
    }

    return 0;
}
