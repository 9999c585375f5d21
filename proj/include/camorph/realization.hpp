#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "camorph/calgebra.hpp"

namespace camorph {

// Finite affine plane given by its lines over points 0..n_points-1; in a
// plane of order q every line carries q points (q+1 holds only in the
// projective closure), |P| = q^2, |L| = q^2 + q, and the q+1 parallel
// classes partition the point set.
struct AffinePlane {
    long q = 0;
    std::size_t n_points = 0;
    std::vector<std::vector<std::size_t>> lines;
    std::vector<std::vector<std::size_t>> parallel_classes;  // line indices per class
};

// Coordinate construction over F_q, q prime: lines y = ax+b plus verticals,
// parallel classes by slope. Throws for non-prime q (prime powers only via
// load_plane with explicit incidence data).
AffinePlane build_plane(long q);

// {"q": order, "lines": [[point indices]]}; verifies the plane axioms,
// infers parallel classes from disjointness and checks that parallelism is
// an equivalence with q+1 classes of q lines.
AffinePlane load_plane(const nlohmann::json& j);

void to_json(nlohmann::json& j, const AffinePlane& p);

// Parallel-class adjacency algebra: r_0 = I, (r_i)_{uv} = 1 iff the line
// through u != v lies in class i. Extracts the structure constants from the
// integer matrix products, requiring every product to decompose over the
// basis and to match (q-1)r_0 + (q-2)r_i resp. sum_{k != 0,i,j} r_k.
CAlgebra matrix_algebra(const AffinePlane& plane, int jobs = 0);
CAlgebra matrix_algebra_serial(const AffinePlane& plane);

struct CrossValidation {
    bool equal = false;
    bool realized_amorphic = false;
    bool constructed_amorphic = false;
    bool ok() const { return equal && realized_amorphic && constructed_amorphic; }
};

// matrix_algebra(build_plane(q)) against the closed-form algebra with
// degrees {1, q-1 (q+1 times)} and sign -1, entrywise.
CrossValidation cross_validate(long q, int jobs = 0);

}  // namespace camorph
