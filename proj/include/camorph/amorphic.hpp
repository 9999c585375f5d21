#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "camorph/calgebra.hpp"
#include "camorph/quadnum.hpp"
#include "camorph/rational.hpp"

namespace camorph {

// Degree multiset D (rational entries, 1 in D, at least 4 of them) plus the
// sign epsilon: together the full isomorphism invariant of a nontrivial
// amorphic C-algebra.
struct DegreeSpec {
    std::vector<Rat> degrees;
    int epsilon = -1;

    Rat total() const;
    // Throws std::invalid_argument when 1 not in D, |D| < 4, an entry is not
    // positive, epsilon not in {-1,+1}, or sqrt(n) + epsilon <= 0.
    void validate() const;
    // Multiset equality.
    friend bool operator==(const DegreeSpec& x, const DegreeSpec& y);
};

void to_json(nlohmann::json& j, const DegreeSpec& s);
void from_json(const nlohmann::json& j, DegreeSpec& s);

// The unique nontrivial amorphic C-algebra with invariant (D, epsilon):
// off-diagonal constants d_r d_s / (sqrt(n)+eps)^2, diagonal slots from the
// closed forms in terms of d_r and d'_r = n-1-d_r, remaining slots forced by
// (C3) and the triangle identities. Basis: identity first, then degrees
// ascending, labels "<prefix>1".."<prefix>k".
CAlgebra construct(const DegreeSpec& spec, const std::string& label_prefix = "r");

// For symmetric algebras: c_{r,s}^u constant over u in R^# \ {r,s} for every
// pair r,s in R^# (r = s allowed). Nontrivial non-symmetric algebras fail;
// dimension <= 3 always passes.
VerificationReport is_amorphic(const CAlgebra& a);

// Inverse of construct: reads D off the degrees and solves
// (sqrt(n)+eps)^2 = d_r d_s / c_{r,s}^t on an off-diagonal slot.
// Throws on trivial algebras, irrational degrees, or when no sign matches.
DegreeSpec recover_spec(const CAlgebra& a);

// Homogeneous algebra with d = sqrt(n)+eps and constants
// (1, eps+1, eps(3-sqrt(n))+1) by multiplicity pattern; n must be a perfect
// square integer with nu = sqrt(n)-eps+1 >= 4.
CAlgebra generalized_affine(const Rat& n, int epsilon);

struct LatinParams {
    QuadNum m;               // sqrt(n)
    std::vector<QuadNum> g;  // per basis element, d_r = g_r (m + eps); g_e unused
    int epsilon = -1;        // -1: Latin square type, +1: negative Latin square type
};

// Requires a nontrivial amorphic algebra with perfect-square n; verifies
// d_r = g_r(m+eps), c_{r,r}^r = (g_r+eps)(g_r+2eps) - eps m - 2 and
// c_{r,r}^s = g_r(g_r+eps) exactly for every r.
LatinParams latin_params(const CAlgebra& a);

struct AutGroup {
    std::vector<std::vector<std::size_t>> classes;  // {e} first, then by degree value
    Int order;                                      // product of class-size factorials
};

// Aut = all permutations preserving each degree class; requires nontrivial
// amorphic input. Spot-checks adjacent transpositions inside classes against
// the structure constants.
AutGroup aut_group(const CAlgebra& a);

bool permutation_preserves_constants(const CAlgebra& a, const std::vector<std::size_t>& perm);

struct TableCheck {
    bool is_table = true;
    std::vector<Witness> witnesses;  // entries with negative sign, capped
};

// Exact nonnegativity scan of the whole tensor.
TableCheck table_check(const CAlgebra& a);

struct TableRegion {
    long nu = 0;
    int epsilon = -1;
    Rat d;
    Rat n;              // 1 + (nu-1) d
    QuadNum theta;      // -(1 + eps sqrt(n))
    bool disc_real = false;
    double d_minus = 0, d_plus = 0;  // roots of the degree quadratic (float display)
    bool ineq_linear = false;        // d >= theta
    bool ineq_quadratic = false;     // 2d^2 - 3d(n-1-Q) + (n-1)^2 - (n+1)Q >= 0
    bool in_region = false;
    std::string family;              // "lower", "upper" or ""
};

// Pointwise feasibility of the homogeneous class (nu, d, eps) as a table
// algebra; exact inequalities, float root display.
TableRegion table_region(long nu, int epsilon, const Rat& d);

void to_json(nlohmann::json& j, const TableRegion& t);
void to_json(nlohmann::json& j, const AutGroup& g);
void to_json(nlohmann::json& j, const TableCheck& t);

}  // namespace camorph
