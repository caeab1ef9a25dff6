// Benchmark: OpenMP kernels against their serial direct-definition
// references. Run from the build tree: ./bench/bench_kernels [threads]

#include <chrono>
#include <functional>
#include <cstdio>
#include <cstdlib>

#include "ffharm/fourier.hpp"
#include "ffharm/operators.hpp"
#include "ffharm/parallel.hpp"
#include "ffharm/reference.hpp"
#include "ffharm/rng.hpp"

using namespace ffharm;

namespace {

double time_s(const std::function<void()>& fn, int reps) {
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    for (int i = 0; i < reps; ++i) fn();
    return std::chrono::duration<double>(clock::now() - t0).count() / reps;
}

GridFunction random_grid(FieldPtr f, int d, Side side, std::uint64_t seed) {
    GridFunction g(std::move(f), d, side);
    Rng rng(seed);
    for (std::uint64_t i = 0; i < g.size(); ++i)
        g[i] = cplx(2 * rng.uniform() - 1, 2 * rng.uniform() - 1);
    return g;
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-28s %10.3f ms %10.3f ms %8.2fx\n", name, serial * 1e3, parallel * 1e3,
                serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) set_threads(std::atoi(argv[1]));
    std::printf("threads: %d\n", max_threads());
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial ref", "parallel", "speedup");

    {
        // transforms at q=13, d=3 (dense reference is O(q^{2d}))
        FieldPtr f = build_field_q(13);
        GridFunction g = random_grid(f, 3, Side::dual, 1);
        row("transform q=13 d=3",
            time_s([&] { reference::transform_dual(g); }, 2),
            time_s([&] { transform_dual(g); }, 20));
    }
    {
        FieldPtr f = build_field_q(23);
        GridFunction g = random_grid(f, 3, Side::dual, 2);
        // the reference would take minutes here; compare axis passes with
        // one thread against the full thread count instead
        int full = max_threads();
        set_threads(1);
        double serial = time_s([&] { transform_dual(g); }, 5);
        set_threads(full);
        double par = time_s([&] { transform_dual(g); }, 5);
        row("axis-pass q=23 d=3 (1 vs N)", serial, par);
    }
    {
        FieldPtr f = build_field_q(11);
        auto form = QuadraticForm::diagonal(f, {1, 2, 3, f->minus_one()});
        Variety v = enumerate_variety(form);
        GridFunction fp = random_grid(f, 4, Side::primal, 3);
        row("average q=11 d=4",
            time_s([&] { reference::average(fp, v); }, 2),
            time_s([&] { average(fp, v, AveragePath::direct); }, 2));
        row("average (multiplier path)",
            time_s([&] { reference::average(fp, v); }, 2),
            time_s([&] { average(fp, v, AveragePath::multiplier); }, 10));
    }
    {
        FieldPtr f = build_field_q(13);
        auto form = QuadraticForm::diagonal(f, {1, 2, 3, 4, f->minus_one()});
        row("enumerate q=13 d=5",
            time_s([&] { reference::enumerate_points(form); }, 2),
            time_s([&] { enumerate_variety(form); }, 2));
    }
    {
        FieldPtr f = build_field_q(7);
        auto form = QuadraticForm::diagonal(f, {1, 2, 3, f->minus_one()});
        Variety v = enumerate_variety(form);
        row("sigma-inv point sum q=7 d=4",
            time_s([&] { reference::sigma_inv(v); }, 2),
            time_s([&] { sigma_inv_bruteforce(v); }, 2));
        row("sigma-inv transform route",
            time_s([&] { reference::sigma_inv(v); }, 2),
            time_s([&] { sigma_inv_transform(v); }, 10));
    }
    return 0;
}
