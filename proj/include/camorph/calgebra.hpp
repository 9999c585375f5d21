#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "camorph/quadnum.hpp"
#include "camorph/verification.hpp"

namespace camorph {

struct DegreeVector {
    std::vector<QuadNum> d;  // d[r] = c(r, r*, e)
    QuadNum n;               // sum of degrees
};

struct ClassifyFlags {
    bool symmetric = false;
    bool commutative = false;
    bool homogeneous = false;
    bool trivial = false;  // dimension <= 3
};

// Finite-dimensional algebra with distinguished basis, identity index e,
// involution star and a dense structure-constant tensor c[r][s][t] over
// Q(sqrt(radicand)); immutable after construction. Structural shape (sizes,
// star a permutation-involution fixing e) is validated here; the algebra
// axioms are checked by verify_axioms.
class CAlgebra {
public:
    CAlgebra(std::vector<std::string> labels, std::size_t e, std::vector<std::size_t> star,
             std::int64_t radicand, std::vector<QuadNum> tensor);

    std::size_t size() const { return labels_.size(); }
    std::size_t identity() const { return e_; }
    std::size_t star(std::size_t r) const { return star_[r]; }
    const std::vector<std::size_t>& star_perm() const { return star_; }
    const std::string& label(std::size_t r) const { return labels_[r]; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::int64_t radicand() const { return rad_; }

    const QuadNum& c(std::size_t r, std::size_t s, std::size_t t) const {
        return c_[(r * labels_.size() + s) * labels_.size() + t];
    }

    // Basis relabeling: position i of the result is old position perm[i].
    CAlgebra permuted(const std::vector<std::size_t>& perm) const;
    // Same algebra with the identity moved to index 0 (basis order otherwise kept).
    CAlgebra with_identity_first() const;

private:
    std::vector<std::string> labels_;
    std::size_t e_;
    std::vector<std::size_t> star_;
    std::int64_t rad_;
    std::vector<QuadNum> c_;
};

// Axioms: star involution fixing e (C1), realness (C2, by construction),
// c(r,s,e) = d_r delta_{r*,s} with d_r > 0 (C3), two-sided unit slots, and
// (C4) in the form sum_t d_t c_{r,s}^t = d_r d_s.
VerificationReport verify_axioms(const CAlgebra& a);

// sum_v c_{r,s}^v c_{v,t}^u = sum_v c_{r,v}^u c_{s,t}^v for all (r,s,t,u).
VerificationReport verify_associativity(const CAlgebra& a, int jobs = 0);
VerificationReport verify_associativity_serial(const CAlgebra& a);

// d_t c_{r,s}^{t*} = d_r c_{s,t}^{r*} = d_s c_{t,r}^{s*} for all triples.
VerificationReport check_triangle_identities(const CAlgebra& a);

// Reads degrees off the e-slot; throws std::domain_error when the (C3)
// consequences d_e = 1, d_r = d_{r*}, d_r > 0 fail.
DegreeVector degrees(const CAlgebra& a);

ClassifyFlags classify(const CAlgebra& a);

// Value-level comparison ignoring labels: same dimension, identity, star,
// and structure constants entrywise.
bool equivalent_entrywise(const CAlgebra& x, const CAlgebra& y);

// {"labels": [...], "e": i, "star": [...], "n": radicand, "c": [[[QuadNum]]]}
void to_json(nlohmann::json& j, const CAlgebra& a);
CAlgebra algebra_from_json(const nlohmann::json& j);

std::string canonical_dump(const nlohmann::json& j);

}  // namespace camorph
