#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "camorph/calgebra.hpp"

using namespace camorph;

namespace {

// Affine algebra of order q written out from the product pattern
// r_i^2 = (q-1) r_0 + (q-2) r_i, r_i r_j = sum_{k != 0,i,j} r_k,
// independently of any library construction path.
CAlgebra affine_by_hand(long q) {
    const std::size_t m = static_cast<std::size_t>(q) + 2;
    std::vector<QuadNum> c(m * m * m, QuadNum(0));
    auto at = [&](std::size_t r, std::size_t s, std::size_t t) -> QuadNum& {
        return c[(r * m + s) * m + t];
    };
    for (std::size_t s = 0; s < m; ++s) {
        at(0, s, s) = QuadNum(1);
        at(s, 0, s) = QuadNum(1);
    }
    for (std::size_t i = 1; i < m; ++i)
        for (std::size_t j = 1; j < m; ++j) {
            if (i == j) {
                at(i, i, 0) = QuadNum(q - 1);
                at(i, i, i) = QuadNum(q - 2);
            } else {
                for (std::size_t k = 1; k < m; ++k)
                    if (k != i && k != j) at(i, j, k) = QuadNum(1);
            }
        }
    std::vector<std::string> labels(m);
    labels[0] = "e";
    for (std::size_t i = 1; i < m; ++i) labels[i] = "B" + std::to_string(i);
    std::vector<std::size_t> star(m);
    for (std::size_t i = 0; i < m; ++i) star[i] = i;
    const std::int64_t rad = static_cast<std::int64_t>(q) * q;
    for (auto& x : c) x = x.with_radicand(rad);
    return CAlgebra(std::move(labels), 0, std::move(star), rad, std::move(c));
}

CAlgebra perturb(const CAlgebra& a, std::size_t r, std::size_t s, std::size_t t, const QuadNum& delta) {
    const std::size_t m = a.size();
    std::vector<QuadNum> c;
    c.reserve(m * m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k) {
                QuadNum v = a.c(i, j, k);
                if (i == r && j == s && k == t) v += delta;
                c.push_back(v);
            }
    return CAlgebra(a.labels(), a.identity(), a.star_perm(), a.radicand(), std::move(c));
}

}  // namespace

TEST_CASE("affine q=2 passes all axioms") {
    CAlgebra a = affine_by_hand(2);
    VerificationReport rep = verify_axioms(a);
    CHECK(rep.ok());
    CHECK(verify_associativity(a).ok());
    CHECK(check_triangle_identities(a).ok());

    DegreeVector dv = degrees(a);
    CHECK(dv.n == QuadNum(4));
    for (std::size_t r = 1; r < 4; ++r) CHECK(dv.d[r] == QuadNum(1));
}

TEST_CASE("broken degree slot is reported with a witness") {
    CAlgebra a = perturb(affine_by_hand(2), 1, 1, 0, QuadNum(-1));  // c(r,r*,e) = 0
    VerificationReport rep = verify_axioms(a);
    CHECK_FALSE(rep.ok());
    const CheckResult* c3 = rep.find("C3_degree_slot");
    REQUIRE(c3 != nullptr);
    CHECK_FALSE(c3->pass);
    REQUIRE_FALSE(c3->witnesses.empty());
    CHECK(c3->witnesses.front().where == std::vector<std::size_t>{1, 1});
    CHECK_THROWS_AS(degrees(a), std::domain_error);
}

TEST_CASE("a single perturbed constant breaks associativity with a witness") {
    CAlgebra bad = perturb(affine_by_hand(3), 1, 2, 3, QuadNum(1));
    VerificationReport rep = verify_associativity(bad);
    CHECK_FALSE(rep.ok());
    REQUIRE_FALSE(rep.checks.front().witnesses.empty());
    CHECK(rep.checks.front().witnesses.front().where.size() == 4);
    CHECK(verify_associativity_serial(bad).checks.front().failures ==
          rep.checks.front().failures);
}

TEST_CASE("triangle identities on affine q=3") {
    CAlgebra a = affine_by_hand(3);
    CHECK(check_triangle_identities(a).ok());
    DegreeVector dv = degrees(a);
    // d_t c_{r,s}^t = 2 * 1 = 2 for distinct nonidentity r,s,t
    CHECK(dv.d[3] * a.c(1, 2, 3) == QuadNum(2));
    CHECK(dv.d[1] * a.c(2, 3, 1) == QuadNum(2));
}

TEST_CASE("classification flags") {
    CAlgebra a = affine_by_hand(3);
    ClassifyFlags f = classify(a);
    CHECK(f.symmetric);
    CHECK(f.commutative);
    CHECK(f.homogeneous);
    CHECK_FALSE(f.trivial);
}

TEST_CASE("one-dimensional algebra") {
    std::vector<QuadNum> c{QuadNum(1)};
    CAlgebra one({"e"}, 0, {0}, 0, std::move(c));
    CHECK(verify_axioms(one).ok());
    DegreeVector dv = degrees(one);
    CHECK(dv.n == QuadNum(1));
    CHECK(classify(one).trivial);
}

TEST_CASE("structural validation in the constructor") {
    std::vector<QuadNum> c(8, QuadNum(0));
    CHECK_THROWS_AS(CAlgebra({"e", "x"}, 0, {1, 0}, 0, c), std::invalid_argument);  // star(e) != e
    CHECK_THROWS_AS(CAlgebra({"e", "x"}, 0, {0, 0}, 0, c), std::invalid_argument);  // not a permutation
    CHECK_THROWS_AS(CAlgebra({"e", "x"}, 0, {0, 1}, 0, std::vector<QuadNum>(7, QuadNum(0))),
                    std::invalid_argument);  // tensor shape
    CHECK_THROWS_AS(CAlgebra({"e", "x"}, 2, {0, 1}, 0, c), std::invalid_argument);  // e out of range
}

TEST_CASE("JSON round-trip is byte-stable") {
    CAlgebra a = affine_by_hand(3);
    nlohmann::json j = a;
    CAlgebra back = algebra_from_json(j);
    CHECK(equivalent_entrywise(a, back));
    CHECK(back.labels() == a.labels());
    CHECK(canonical_dump(nlohmann::json(back)) == canonical_dump(j));

    nlohmann::json broken = j;
    broken["c"][0].erase(0);
    CHECK_THROWS_AS(algebra_from_json(broken), std::invalid_argument);
}

TEST_CASE("permuted relabeling preserves verification and moves the identity") {
    CAlgebra a = affine_by_hand(3);
    CAlgebra p = a.permuted({2, 0, 1, 3, 4});
    CHECK(p.identity() == 1);
    CHECK(verify_axioms(p).ok());
    CHECK(verify_associativity(p).ok());
    CAlgebra q = p.with_identity_first();
    CHECK(q.identity() == 0);
    CHECK(equivalent_entrywise(q, a));  // homogeneous: any degree-order matches
}
