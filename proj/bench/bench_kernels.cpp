// Timings of the OpenMP kernels against their serial references:
// associativity scan, fusion enumeration, plane matrix products.

#include <chrono>
#include <cstdio>

#include "camorph/fusion.hpp"
#include "camorph/realization.hpp"

using namespace camorph;

namespace {

template <typename F>
double seconds(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-28s %10.3fs %10.3fs %8.2fx\n", name, serial, parallel,
                parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main() {
    std::printf("%-28s %11s %11s %9s\n", "kernel", "serial", "parallel", "speedup");

    {
        DegreeSpec s;
        s.degrees.push_back(Rat(1));
        for (int i = 1; i < 20; ++i) s.degrees.push_back(Rat(1 + i % 4));
        s.epsilon = -1;
        CAlgebra a = construct(s);
        double ts = seconds([&] { verify_associativity_serial(a); });
        double tp = seconds([&] { verify_associativity(a); });
        row("associativity nu=20", ts, tp);
    }
    {
        DegreeSpec s;
        s.degrees = {Rat(1), Rat(1), Rat(1), Rat(2), Rat(2), Rat(2), Rat(4), Rat(4), Rat(4), Rat(4)};
        s.epsilon = -1;
        CAlgebra a = construct(s);
        double ts = seconds([&] { fuse_all_serial(a); });
        double tp = seconds([&] { fuse_all(a); });
        row("fuse-all nu=10 (B9=21147)", ts, tp);
    }
    {
        AffinePlane plane = build_plane(11);
        double ts = seconds([&] { matrix_algebra_serial(plane); });
        double tp = seconds([&] { matrix_algebra(plane); });
        row("plane products q=11", ts, tp);
    }
    return 0;
}
