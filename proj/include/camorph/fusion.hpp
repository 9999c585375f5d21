#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "camorph/amorphic.hpp"
#include "camorph/calgebra.hpp"

namespace camorph {

// Partition of the basis indices with the identity in a singleton class.
// Canonical form: members ascending inside each class, classes ordered by
// smallest member.
struct Partition {
    std::vector<std::vector<std::size_t>> classes;

    void canonicalize();
    // Throws std::invalid_argument unless classes are disjoint, cover
    // 0..size-1 and {e} is a class on its own.
    void validate(std::size_t size, std::size_t e) const;
};

void to_json(nlohmann::json& j, const Partition& p);
void from_json(const nlohmann::json& j, Partition& p);

struct NotClosed {
    std::size_t class_r = 0, class_s = 0;  // class indices in the partition
    std::size_t t1 = 0, t2 = 0;            // basis indices with differing coefficients
    std::string detail;
};

using FuseResult = std::variant<CAlgebra, NotClosed>;

// Class-sum fusion: sums sigma_R sigma_S and requires the coefficient to be
// constant on every class. Throws std::domain_error when star does not
// permute the classes (A_pi is then not *-closed).
FuseResult fuse(const CAlgebra& a, const Partition& pi);

struct FuseAllFailure {
    unsigned long long index = 0;  // position in the enumeration stream
    Partition pi;
    std::string reason;
};

struct FuseAllSummary {
    unsigned long long total = 0;
    unsigned long long closed = 0;
    unsigned long long fusions_amorphic = 0;  // closed fusions passing the amorphic criterion
    std::vector<FuseAllFailure> failures;     // capped at CheckResult::kMaxWitnesses
    bool all_closed() const { return closed == total; }
};

// Enumerates every partition of R^# (identity kept apart), Bell(|R|-1) of
// them, fusing each; closed fusions are also run through the amorphic
// criterion. Throws when |R| exceeds the cap.
FuseAllSummary fuse_all(const CAlgebra& a, std::size_t cap = 12, int jobs = 0);
FuseAllSummary fuse_all_serial(const CAlgebra& a, std::size_t cap = 12);

void to_json(nlohmann::json& j, const FuseAllSummary& s);

struct Fission {
    CAlgebra parent;
    Partition pi;  // partition of the parent's basis
};

// Builds the homogeneous parent in the class (nu, d) with nu = (n-1)/d + 1
// and the block partition with |C_r| = d_r/d, then checks that fusing the
// parent reproduces the input exactly. All d_r/d must be positive integers.
Fission fission(const CAlgebra& a, const Rat& d);

// d = 1/N with N the lcm of the degree denominators; fission(a, d) succeeds
// for every algebra with rational degrees.
Rat rational_fission_witness(const CAlgebra& a);

}  // namespace camorph
