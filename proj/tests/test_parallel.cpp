#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "camorph/fusion.hpp"
#include "camorph/realization.hpp"

using namespace camorph;

// The OpenMP kernels must agree with their serial references bit for bit,
// independently of the worker count.

TEST_CASE("associativity scan: parallel equals serial") {
    DegreeSpec s{{Rat(1), Rat(1), Rat(2), Rat(4), Rat(4), Rat(6)}, -1};
    CAlgebra a = construct(s);
    VerificationReport serial = verify_associativity_serial(a);
    for (int jobs : {0, 1, 2, 3}) {
        VerificationReport par = verify_associativity(a, jobs);
        CHECK(par.ok() == serial.ok());
        CHECK(par.checks.front().failures == serial.checks.front().failures);
    }

    // and on a failing input, identical counts and identical first witness
    std::vector<QuadNum> c;
    for (std::size_t r = 0; r < a.size(); ++r)
        for (std::size_t ss = 0; ss < a.size(); ++ss)
            for (std::size_t t = 0; t < a.size(); ++t) {
                QuadNum v = a.c(r, ss, t);
                if (r == 2 && ss == 3 && t == 1) v += QuadNum(Rat(1, 3));
                c.push_back(v);
            }
    CAlgebra bad(a.labels(), a.identity(), a.star_perm(), a.radicand(), std::move(c));
    VerificationReport sref = verify_associativity_serial(bad);
    REQUIRE_FALSE(sref.ok());
    for (int jobs : {1, 2, 4}) {
        VerificationReport par = verify_associativity(bad, jobs);
        CHECK(par.checks.front().failures == sref.checks.front().failures);
        REQUIRE_FALSE(par.checks.front().witnesses.empty());
        CHECK(par.checks.front().witnesses.front().where ==
              sref.checks.front().witnesses.front().where);
    }
}

TEST_CASE("fuse_all: parallel equals serial") {
    CAlgebra a = construct(DegreeSpec{{Rat(1), Rat(1), Rat(2), Rat(2), Rat(4), Rat(4)}, -1});
    FuseAllSummary serial = fuse_all_serial(a);
    CHECK(serial.total == 52);  // Bell(5)
    for (int jobs : {1, 2, 3}) {
        FuseAllSummary par = fuse_all(a, 12, jobs);
        CHECK(par.total == serial.total);
        CHECK(par.closed == serial.closed);
        CHECK(par.fusions_amorphic == serial.fusions_amorphic);
        CHECK(nlohmann::json(par).dump() == nlohmann::json(serial).dump());
    }
}

TEST_CASE("fuse_all failures are deterministic across worker counts") {
    // 7-cycle distance scheme: symmetric, not amorphic, so some partitions
    // fail; the failure list must not depend on scheduling
    const int n = 7;
    std::vector<std::vector<int>> basis(4, std::vector<int>(n * n, 0));
    for (int i = 0; i < n; ++i) basis[0][i * n + i] = 1;
    for (int dist = 1; dist <= 3; ++dist)
        for (int i = 0; i < n; ++i) {
            basis[dist][i * n + (i + dist) % n] = 1;
            basis[dist][i * n + (i - dist + n) % n] = 1;
        }
    std::vector<QuadNum> c(4 * 4 * 4, QuadNum(0));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            std::vector<int> prod(n * n, 0);
            for (int u = 0; u < n; ++u)
                for (int w = 0; w < n; ++w)
                    if (basis[i][u * n + w])
                        for (int v = 0; v < n; ++v) prod[u * n + v] += basis[j][w * n + v];
            std::vector<int> coeff(4, -1);
            for (int cell = 0; cell < n * n; ++cell)
                for (int k = 0; k < 4; ++k)
                    if (basis[k][cell]) {
                        if (coeff[k] == -1) coeff[k] = prod[cell];
                        break;
                    }
            for (int k = 0; k < 4; ++k) c[(i * 4 + j) * 4 + k] = QuadNum(coeff[k]);
        }
    CAlgebra scheme({"e", "d1", "d2", "d3"}, 0, {0, 1, 2, 3}, 7, std::move(c));
    FuseAllSummary serial = fuse_all_serial(scheme);
    REQUIRE_FALSE(serial.failures.empty());
    for (int jobs : {1, 2, 3}) {
        FuseAllSummary par = fuse_all(scheme, 12, jobs);
        CHECK(nlohmann::json(par).dump() == nlohmann::json(serial).dump());
    }
}

TEST_CASE("matrix products: parallel equals serial") {
    for (long q : {3L, 5L}) {
        AffinePlane plane = build_plane(q);
        CAlgebra serial = matrix_algebra_serial(plane);
        for (int jobs : {1, 2}) {
            CAlgebra par = matrix_algebra(plane, jobs);
            CHECK(equivalent_entrywise(par, serial));
            CHECK(canonical_dump(nlohmann::json(par)) == canonical_dump(nlohmann::json(serial)));
        }
    }
}
