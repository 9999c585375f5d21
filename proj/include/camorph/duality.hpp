#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "camorph/calgebra.hpp"

namespace camorph {

// Character table of a commutative (here: symmetric) C-algebra, exact after
// snapping. P is indexed (r, s^), Q is (s^, r) with
// Q_{s^,r} = d_{s^} P_{r,s^} / d_r; both satisfy PQ = QP = nI exactly.
struct EigenData {
    std::vector<std::vector<QuadNum>> chi;  // chi[s^][r], trivial character first
    std::vector<QuadNum> dual_degrees;      // d_{s^} = n / sum_r chi(r)^2 / d_r
    QuadNum n;

    std::size_t dim() const { return chi.size(); }
    const QuadNum& P(std::size_t r, std::size_t shat) const { return chi[shat][r]; }
    QuadNum Q(std::size_t shat, std::size_t r) const;
};

void to_json(nlohmann::json& j, const EigenData& e);

// All one-dimensional *-representations. Floating seeds (deterministic from
// `seed`), snap to Q(sqrt(n)) within 1e-9, then mandatory exact verification
// of the homomorphism identity; a degenerate seed is resampled (at most 20
// times). Throws when a character does not land in Q(sqrt(n)) (out of the
// supported class) or when the input is not symmetric.
EigenData characters(const CAlgebra& a, unsigned seed = 42);

// Dual structure constants
//   c^_{u^,v^}^{w^} = (d_{u^} d_{v^} / n) sum_r P_{r,u^} P_{r,v^} P_{r,w^} / d_r^2
// on the characters of a commutative table algebra; output passes the axioms.
CAlgebra dual_algebra(const CAlgebra& a, unsigned seed = 42);

struct SelfDualityReport {
    bool dual_degrees_match = false;   // multiset of dual degrees equals the primal one
    bool spec_match = false;           // recovered (D, eps) of the dual equals the primal
    bool dual_dual_equal = false;      // dual of the dual reproduces the input
    bool ok() const { return dual_degrees_match && spec_match && dual_dual_equal; }
};

// For homogeneous amorphic table algebras; throws std::domain_error when the
// hypotheses fail.
SelfDualityReport verify_selfduality(const CAlgebra& a, unsigned seed = 42);

void to_json(nlohmann::json& j, const SelfDualityReport& r);

}  // namespace camorph
