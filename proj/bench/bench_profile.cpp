#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <omp.h>

#include "csf/fixtures.hpp"
#include "csf/isoperimetry.hpp"
#include "csf/numerics.hpp"

// Times the OpenMP arc search against the serial reference on one fixture.
// Usage: bench_profile [fixture] [vertices] [grid] [repeats]
int main(int argc, char** argv)
{
    std::string name = argc > 1 ? argv[1] : "ellipse4";
    std::size_t n = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 512;
    std::size_t grid = argc > 3 ? std::strtoul(argv[3], nullptr, 10) : 200;
    int repeats = argc > 4 ? std::atoi(argv[4]) : 3;

    csf::SampledCurve c = csf::fixture(name, n);
    auto g = csf::open_grid(0.0, csf::pi, grid);

    auto best_time = [&](bool parallel, bool exterior, csf::Profile& out) {
        csf::GenericOptions opt;
        opt.parallel = parallel;
        double best = 1e300;
        for (int r = 0; r < repeats; ++r) {
            auto t0 = std::chrono::steady_clock::now();
            out = exterior ? csf::exterior_generic_profile(c, g, opt) : csf::generic_profile(c, g, opt);
            best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        }
        return best;
    };

    std::printf("fixture %s, %zu vertices, %zu areas, %d threads, best of %d\n", name.c_str(), n, grid,
                omp_get_max_threads(), repeats);
    for (bool exterior : {false, true}) {
        csf::Profile serial, parallel;
        double ts = best_time(false, exterior, serial);
        double tp = best_time(true, exterior, parallel);
        bool same = serial.f == parallel.f;
        std::printf("%-8s serial %.3f s  parallel %.3f s  speedup %.2f  identical %s\n", exterior ? "exterior" : "interior",
                    ts, tp, ts / tp, same ? "yes" : "no");
        if (!same) return 1;
    }
    return 0;
}
