#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "camorph/fusion.hpp"
#include "camorph/realization.hpp"

using namespace camorph;

namespace {

DegreeSpec spec_of(std::vector<Rat> d, int eps) { return DegreeSpec{std::move(d), eps}; }

// Distance scheme of the 7-cycle, extracted from actual circulant matrix
// products: symmetric, commutative, 4-dimensional and not amorphic.
CAlgebra seven_cycle_scheme() {
    const int n = 7;
    auto mat = [&](int dist) {
        std::vector<int> m(n * n, 0);
        for (int i = 0; i < n; ++i) {
            m[i * n + (i + dist) % n] = 1;
            m[i * n + (i - dist + n) % n] = 1;
        }
        return m;
    };
    std::vector<std::vector<int>> basis{std::vector<int>(n * n, 0), mat(1), mat(2), mat(3)};
    for (int i = 0; i < n; ++i) basis[0][i * n + i] = 1;

    std::vector<QuadNum> c(4 * 4 * 4, QuadNum(0));
    auto owner = [&](int cell) {
        for (int k = 0; k < 4; ++k)
            if (basis[k][cell]) return k;
        return -1;
    };
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            std::vector<int> prod(n * n, 0);
            for (int u = 0; u < n; ++u)
                for (int w = 0; w < n; ++w)
                    if (basis[i][u * n + w])
                        for (int v = 0; v < n; ++v) prod[u * n + v] += basis[j][w * n + v];
            std::vector<int> coeff(4, -1);
            for (int cell = 0; cell < n * n; ++cell) {
                int k = owner(cell);
                REQUIRE(k >= 0);
                if (coeff[k] == -1)
                    coeff[k] = prod[cell];
                else
                    REQUIRE(coeff[k] == prod[cell]);  // products decompose over the basis
            }
            for (int k = 0; k < 4; ++k) c[(i * 4 + j) * 4 + k] = QuadNum(coeff[k]);
        }
    return CAlgebra({"e", "d1", "d2", "d3"}, 0, {0, 1, 2, 3}, 7, std::move(c));
}

// Group algebra of the cyclic group of order 4: commutative, not symmetric.
CAlgebra c4_group_algebra() {
    const std::size_t m = 4;
    std::vector<QuadNum> c(m * m * m, QuadNum(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) c[(i * m + j) * m + (i + j) % m] = QuadNum(1);
    return CAlgebra({"e", "g", "g2", "g3"}, 0, {0, 3, 2, 1}, 4, std::move(c));
}

}  // namespace

TEST_CASE("coarsest partition fuses any C-algebra to dimension 2") {
    CAlgebra a = construct(spec_of({1, 1, 2, 4}, -1));
    Partition pi;
    pi.classes.push_back({0});
    pi.classes.push_back({1, 2, 3});
    FuseResult r = fuse(a, pi);
    REQUIRE(std::holds_alternative<CAlgebra>(r));
    const CAlgebra& f = std::get<CAlgebra>(r);
    CHECK(f.size() == 2);
    DegreeVector dv = degrees(f);
    CHECK(dv.d[1] == QuadNum(7));  // n - 1
    CHECK(verify_axioms(f).ok());
    CHECK(classify(f).trivial);
    CHECK(is_amorphic(f).ok());
}

TEST_CASE("singleton partition returns the algebra itself") {
    CAlgebra a = construct(spec_of({1, 2, 2, 2, 2}, -1));
    Partition pi;
    for (std::size_t i = 0; i < a.size(); ++i) pi.classes.push_back({i});
    FuseResult r = fuse(a, pi);
    REQUIRE(std::holds_alternative<CAlgebra>(r));
    CHECK(equivalent_entrywise(std::get<CAlgebra>(r), a));
}

TEST_CASE("pair fusion of the order-3 affine algebra has invariant ({1,2,2,4}, -1)") {
    CAlgebra a = construct(spec_of({1, 2, 2, 2, 2}, -1));
    Partition pi;
    pi.classes = {{0}, {1}, {2}, {3, 4}};
    FuseResult r = fuse(a, pi);
    REQUIRE(std::holds_alternative<CAlgebra>(r));
    const CAlgebra& f = std::get<CAlgebra>(r);
    CHECK(f.size() == 4);
    CHECK(is_amorphic(f).ok());
    CHECK(recover_spec(f) == spec_of({1, 2, 2, 4}, -1));
    // degrees add over classes, n is preserved
    CHECK(degrees(f).n == degrees(a).n);
}

TEST_CASE("partition validation") {
    CAlgebra a = construct(spec_of({1, 1, 1, 1}, -1));
    Partition no_e;
    no_e.classes = {{0, 1}, {2, 3}};
    CHECK_THROWS_AS(fuse(a, no_e), std::invalid_argument);
    Partition overlap;
    overlap.classes = {{0}, {1, 2}, {2, 3}};
    CHECK_THROWS_AS(fuse(a, overlap), std::invalid_argument);
    Partition incomplete;
    incomplete.classes = {{0}, {1, 2}};
    CHECK_THROWS_AS(fuse(a, incomplete), std::invalid_argument);

    nlohmann::json j = nlohmann::json{{"classes", {{3, 1}, {0}, {2}}}};
    Partition p = j.get<Partition>();
    CHECK(p.classes == std::vector<std::vector<std::size_t>>{{0}, {1, 3}, {2}});
}

TEST_CASE("star violation is rejected for non-symmetric algebras") {
    CAlgebra c4 = c4_group_algebra();
    CHECK(verify_axioms(c4).ok());
    CHECK(verify_associativity(c4).ok());
    CHECK_FALSE(classify(c4).symmetric);
    CHECK(classify(c4).commutative);
    CHECK_FALSE(is_amorphic(c4).ok());  // nontrivial non-symmetric

    Partition bad;
    bad.classes = {{0}, {1, 2}, {3}};  // star image {g,g2} -> {g3,g2} is no class
    CHECK_THROWS_AS(fuse(c4, bad), std::domain_error);

    Partition good;
    good.classes = {{0}, {1, 3}, {2}};  // star-closed and multiplicatively closed
    FuseResult r = fuse(c4, good);
    REQUIRE(std::holds_alternative<CAlgebra>(r));
    CHECK(verify_axioms(std::get<CAlgebra>(r)).ok());
}

TEST_CASE("fuse_all enumerates every partition of the order-2 affine algebra") {
    FuseAllSummary s = fuse_all(construct(spec_of({1, 1, 1, 1}, -1)));
    CHECK(s.total == 5);  // Bell(3)
    CHECK(s.closed == 5);
    CHECK(s.fusions_amorphic == 5);
    CHECK(s.failures.empty());
}

TEST_CASE("fuse_all on the order-3 affine algebra: 15 partitions, all amorphic") {
    FuseAllSummary s = fuse_all(construct(spec_of({1, 2, 2, 2, 2}, -1)));
    CHECK(s.total == 15);  // Bell(4)
    CHECK(s.closed == 15);
    CHECK(s.fusions_amorphic == 15);
}

TEST_CASE("fuse_all flags the non-amorphic 7-cycle scheme") {
    CAlgebra sc = seven_cycle_scheme();
    CHECK(verify_axioms(sc).ok());
    CHECK(verify_associativity(sc).ok());
    CHECK_FALSE(is_amorphic(sc).ok());
    FuseAllSummary s = fuse_all(sc);
    CHECK(s.total == 5);
    CHECK(s.closed < s.total);
    CHECK_FALSE(s.failures.empty());
}

TEST_CASE("fuse_all respects the enumeration cap") {
    CAlgebra a = construct(spec_of({1, 2, 2, 2, 2}, -1));
    CHECK_THROWS_AS(fuse_all(a, 4), std::domain_error);
}

TEST_CASE("exhaustive closure at dimension 7") {
    for (int eps : {-1, +1}) {
        FuseAllSummary s = fuse_all(construct(spec_of({1, 1, 1, 2, 2, 3, 3}, eps)));
        CHECK(s.total == 203);  // Bell(6)
        CHECK(s.closed == 203);
        CHECK(s.fusions_amorphic == 203);
    }
}

TEST_CASE("sampled partitions above the exhaustive range stay closed") {
    CAlgebra a = construct(spec_of({1, 1, 2, 2, 3, 3, 4, 4, 5}, -1));
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::size_t> nclasses(1, 4);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t k = nclasses(rng);
        Partition pi;
        pi.classes.assign(k + 1, {});
        pi.classes[0].push_back(0);
        std::vector<bool> used(k, false);
        for (std::size_t x = 1; x < a.size(); ++x) {
            std::size_t cls = std::uniform_int_distribution<std::size_t>(0, k - 1)(rng);
            pi.classes[cls + 1].push_back(x);
            used[cls] = true;
        }
        std::erase_if(pi.classes, [](const auto& c) { return c.empty(); });
        FuseResult r = fuse(a, pi);
        CHECK(std::holds_alternative<CAlgebra>(r));
        if (auto* f = std::get_if<CAlgebra>(&r)) CHECK(is_amorphic(*f).ok());
    }
}

TEST_CASE("fusions of an amorphic algebra keep epsilon") {
    for (int eps : {-1, +1}) {
        CAlgebra a = construct(spec_of({1, 1, 2, 4, 4}, eps));
        FuseAllSummary s = fuse_all(a);
        CHECK(s.all_closed());
        // spot-check a nontrivial 4-class fusion
        Partition pi;
        pi.classes = {{0}, {1}, {2}, {3, 4}};
        FuseResult r = fuse(a, pi);
        REQUIRE(std::holds_alternative<CAlgebra>(r));
        CHECK(recover_spec(std::get<CAlgebra>(r)).epsilon == eps);
    }
}

TEST_CASE("fission of the order-3 affine algebra at d = 1") {
    CAlgebra a = construct(spec_of({1, 2, 2, 2, 2}, -1));
    Fission f = fission(a, Rat(1));
    CHECK(f.parent.size() == 9);  // nu = (9-1)/1 + 1
    CHECK(classify(f.parent).homogeneous);
    CHECK(recover_spec(f.parent).epsilon == -1);
    REQUIRE(f.pi.classes.size() == 5);
    for (std::size_t i = 1; i < 5; ++i) CHECK(f.pi.classes[i].size() == 2);
    FuseResult r = fuse(f.parent, f.pi);
    REQUIRE(std::holds_alternative<CAlgebra>(r));
    CHECK(equivalent_entrywise(std::get<CAlgebra>(r), a));
}

TEST_CASE("identity fission of a homogeneous algebra") {
    CAlgebra a = construct(spec_of({1, 5, 5, 5}, +1));
    Fission f = fission(a, Rat(5));
    CHECK(f.parent.size() == a.size());
    CHECK(equivalent_entrywise(f.parent, a));
    for (const auto& cls : f.pi.classes) CHECK(cls.size() == 1);
}

TEST_CASE("integer-constant algebras fission into a generalized affine parent") {
    // fused order-3 affine: integer constants, d = sqrt(9) - 1 = 2
    CAlgebra a = construct(spec_of({1, 2, 2, 4}, -1));
    Fission f = fission(a, Rat(2));
    CHECK(f.parent.size() == 5);
    CHECK(equivalent_entrywise(f.parent, generalized_affine(Rat(9), -1)));
}

TEST_CASE("divisibility failures are rejected") {
    CAlgebra a = construct(spec_of({1, 2, 2, 2, 2}, -1));
    CHECK_THROWS_AS(fission(a, Rat(3, 2)), std::domain_error);
    CHECK_THROWS_AS(fission(a, Rat(4)), std::domain_error);
    CHECK_THROWS_AS(fission(a, Rat(-1)), std::invalid_argument);
}

TEST_CASE("rational fission witness") {
    CAlgebra a = construct(spec_of({1, Rat(3, 2), Rat(3, 2), 3}, -1));
    Rat d = rational_fission_witness(a);
    CHECK(d == Rat(1, 2));
    Fission f = fission(a, d);
    CHECK(f.parent.size() == 13);  // nu = 2n - 1 at n = 7
    FuseResult r = fuse(f.parent, f.pi);
    REQUIRE(std::holds_alternative<CAlgebra>(r));
    CHECK(equivalent_entrywise(std::get<CAlgebra>(r), a.with_identity_first()));

    CHECK(rational_fission_witness(construct(spec_of({1, 2, 2, 4}, -1))) == Rat(1));

    CAlgebra b = construct(spec_of({1, Rat(2, 3), Rat(2, 3), Rat(2, 3)}, -1));
    CHECK(rational_fission_witness(b) == Rat(1, 3));
    Fission fb = fission(b, Rat(1, 3));
    CHECK(fb.parent.size() == 7);
}

TEST_CASE("fuse-all summary serializes") {
    FuseAllSummary s = fuse_all(seven_cycle_scheme());
    nlohmann::json j = s;
    CHECK(j.at("total").get<unsigned long long>() == 5);
    CHECK(j.at("closed").get<unsigned long long>() == s.closed);
    CHECK_FALSE(j.at("failures").empty());
}
