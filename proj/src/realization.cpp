#include "camorph/realization.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "camorph/amorphic.hpp"

namespace camorph {

namespace {

bool is_prime(long q) {
    if (q < 2) return false;
    for (long p = 2; p * p <= q; ++p)
        if (q % p == 0) return false;
    return true;
}

using Mask = std::vector<std::uint64_t>;

Mask line_mask(const std::vector<std::size_t>& line, std::size_t n_points) {
    Mask m((n_points + 63) / 64, 0);
    for (std::size_t p : line) m[p / 64] |= std::uint64_t(1) << (p % 64);
    return m;
}

bool masks_intersect(const Mask& x, const Mask& y) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] & y[i]) return true;
    return false;
}

// (A1): two distinct points on exactly one common line; (A2): for p not on l
// a unique line through p disjoint from l; (A3): a non-collinear triple.
void verify_axioms_or_throw(const AffinePlane& plane) {
    const std::size_t np = plane.n_points;
    const std::size_t nl = plane.lines.size();
    if (np < 3 || nl == 0) throw std::invalid_argument("plane too small");

    std::vector<std::vector<std::size_t>> through(np);
    for (std::size_t l = 0; l < nl; ++l) {
        std::vector<std::size_t> sorted = plane.lines[l];
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("line " + std::to_string(l) + " repeats a point");
        for (std::size_t p : plane.lines[l]) {
            if (p >= np) throw std::invalid_argument("point index out of range");
            through[p].push_back(l);
        }
    }

    std::vector<Mask> masks;
    masks.reserve(nl);
    for (const auto& line : plane.lines) masks.push_back(line_mask(line, np));

    // (A1)
    std::vector<std::vector<std::size_t>> line_of(np, std::vector<std::size_t>(np, SIZE_MAX));
    for (std::size_t l = 0; l < nl; ++l)
        for (std::size_t i = 0; i < plane.lines[l].size(); ++i)
            for (std::size_t j = i + 1; j < plane.lines[l].size(); ++j) {
                std::size_t u = plane.lines[l][i], v = plane.lines[l][j];
                if (line_of[u][v] != SIZE_MAX)
                    throw std::invalid_argument("(A1) violated: points " + std::to_string(u) + "," +
                                                std::to_string(v) + " lie on lines " +
                                                std::to_string(line_of[u][v]) + " and " +
                                                std::to_string(l));
                line_of[u][v] = line_of[v][u] = l;
            }
    for (std::size_t u = 0; u < np; ++u)
        for (std::size_t v = u + 1; v < np; ++v)
            if (line_of[u][v] == SIZE_MAX)
                throw std::invalid_argument("(A1) violated: no line through points " +
                                            std::to_string(u) + "," + std::to_string(v));

    // (A2)
    for (std::size_t p = 0; p < np; ++p) {
        Mask pmask((np + 63) / 64, 0);
        pmask[p / 64] |= std::uint64_t(1) << (p % 64);
        for (std::size_t l = 0; l < nl; ++l) {
            if (masks_intersect(masks[l], pmask)) continue;
            std::size_t parallels = 0;
            for (std::size_t l2 : through[p])
                if (!masks_intersect(masks[l2], masks[l])) ++parallels;
            if (parallels != 1)
                throw std::invalid_argument("(A2) violated: point " + std::to_string(p) + ", line " +
                                            std::to_string(l) + " has " + std::to_string(parallels) +
                                            " parallels");
        }
    }

    // (A3)
    bool found = false;
    for (std::size_t l = 0; l < nl && !found; ++l)
        if (plane.lines[l].size() < np) found = true;
    if (!found) throw std::invalid_argument("(A3) violated: all points are collinear");
}

std::vector<std::vector<std::size_t>> infer_parallel_classes(const AffinePlane& plane) {
    const std::size_t nl = plane.lines.size();
    std::vector<Mask> masks;
    masks.reserve(nl);
    for (const auto& line : plane.lines) masks.push_back(line_mask(line, plane.n_points));

    std::vector<std::vector<std::size_t>> classes;
    std::vector<long> cls(nl, -1);
    for (std::size_t l = 0; l < nl; ++l) {
        if (cls[l] != -1) continue;
        std::vector<std::size_t> group{l};
        cls[l] = static_cast<long>(classes.size());
        for (std::size_t l2 = l + 1; l2 < nl; ++l2)
            if (cls[l2] == -1 && !masks_intersect(masks[l], masks[l2])) {
                cls[l2] = cls[l];
                group.push_back(l2);
            }
        // parallel must be transitive: members pairwise disjoint
        for (std::size_t i = 0; i < group.size(); ++i)
            for (std::size_t j = i + 1; j < group.size(); ++j)
                if (masks_intersect(masks[group[i]], masks[group[j]]))
                    throw std::invalid_argument("parallelism is not transitive (lines " +
                                                std::to_string(group[i]) + "," +
                                                std::to_string(group[j]) + "): not an affine plane");
        classes.push_back(std::move(group));
    }
    return classes;
}

void check_counts(const AffinePlane& plane) {
    const long q = plane.q;
    if (plane.n_points != static_cast<std::size_t>(q) * q)
        throw std::invalid_argument("expected q^2 = " + std::to_string(q * q) + " points, found " +
                                    std::to_string(plane.n_points));
    if (plane.lines.size() != static_cast<std::size_t>(q) * (q + 1))
        throw std::invalid_argument("expected q^2+q lines");
    if (plane.parallel_classes.size() != static_cast<std::size_t>(q) + 1)
        throw std::invalid_argument("expected q+1 parallel classes");
    for (const auto& cls : plane.parallel_classes) {
        if (cls.size() != static_cast<std::size_t>(q))
            throw std::invalid_argument("parallel class of size != q");
        std::size_t covered = 0;
        for (std::size_t l : cls) covered += plane.lines[l].size();
        if (covered != plane.n_points)
            throw std::invalid_argument("parallel class does not partition the points");
    }
    for (const auto& line : plane.lines)
        if (line.size() != static_cast<std::size_t>(q))
            throw std::invalid_argument("line with " + std::to_string(line.size()) +
                                        " points; order-q lines carry q points");
}

}  // namespace

AffinePlane build_plane(long q) {
    if (!is_prime(q))
        throw std::invalid_argument("build_plane: q = " + std::to_string(q) +
                                    " is not prime; load composite orders from incidence data");
    AffinePlane plane;
    plane.q = q;
    plane.n_points = static_cast<std::size_t>(q) * q;
    auto pt = [q](long x, long y) { return static_cast<std::size_t>(x * q + y); };

    // slope classes y = ax + b, then the vertical class x = c
    for (long a = 0; a < q; ++a) {
        std::vector<std::size_t> cls;
        for (long b = 0; b < q; ++b) {
            std::vector<std::size_t> line;
            for (long x = 0; x < q; ++x) line.push_back(pt(x, (a * x + b) % q));
            cls.push_back(plane.lines.size());
            plane.lines.push_back(std::move(line));
        }
        plane.parallel_classes.push_back(std::move(cls));
    }
    std::vector<std::size_t> vertical;
    for (long c = 0; c < q; ++c) {
        std::vector<std::size_t> line;
        for (long y = 0; y < q; ++y) line.push_back(pt(c, y));
        vertical.push_back(plane.lines.size());
        plane.lines.push_back(std::move(line));
    }
    plane.parallel_classes.push_back(std::move(vertical));

    verify_axioms_or_throw(plane);
    check_counts(plane);
    return plane;
}

AffinePlane load_plane(const nlohmann::json& j) {
    AffinePlane plane;
    plane.q = j.at("q").get<long>();
    plane.lines = j.at("lines").get<std::vector<std::vector<std::size_t>>>();
    std::size_t maxp = 0;
    for (const auto& line : plane.lines)
        for (std::size_t p : line) maxp = std::max(maxp, p + 1);
    plane.n_points = maxp;
    verify_axioms_or_throw(plane);
    plane.parallel_classes = infer_parallel_classes(plane);
    // classes deterministic: ordered by smallest line index already
    check_counts(plane);
    return plane;
}

void to_json(nlohmann::json& j, const AffinePlane& p) {
    j = nlohmann::json{{"q", p.q}, {"lines", p.lines}};
}

namespace {

CAlgebra matrix_algebra_impl(const AffinePlane& plane, int jobs, bool parallel) {
    const long q = plane.q;
    const std::size_t np = plane.n_points;
    const std::size_t m = plane.parallel_classes.size() + 1;  // r_0 .. r_{q+1}

    // 0/1 basis matrices; basis[0] = identity
    std::vector<std::vector<int>> basis(m, std::vector<int>(np * np, 0));
    for (std::size_t u = 0; u < np; ++u) basis[0][u * np + u] = 1;
    for (std::size_t i = 1; i < m; ++i)
        for (std::size_t l : plane.parallel_classes[i - 1])
            for (std::size_t a = 0; a < plane.lines[l].size(); ++a)
                for (std::size_t b = 0; b < plane.lines[l].size(); ++b) {
                    std::size_t u = plane.lines[l][a], v = plane.lines[l][b];
                    if (u != v) basis[i][u * np + v] = 1;
                }

    // which basis element covers each cell (the supports partition P x P)
    std::vector<std::size_t> owner(np * np, SIZE_MAX);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t cell = 0; cell < np * np; ++cell)
            if (basis[i][cell]) {
                if (owner[cell] != SIZE_MAX)
                    throw std::invalid_argument("basis supports overlap; bad plane data");
                owner[cell] = i;
            }
    for (std::size_t cell = 0; cell < np * np; ++cell)
        if (owner[cell] == SIZE_MAX)
            throw std::invalid_argument("basis supports do not cover P x P; bad plane data");

    for (std::size_t i = 1; i < m; ++i) {
        for (std::size_t u = 0; u < np; ++u) {
            if (basis[i][u * np + u] != 0)
                throw std::invalid_argument("basis matrix has a nonzero diagonal");
            long row = 0;
            for (std::size_t v = 0; v < np; ++v) {
                row += basis[i][u * np + v];
                if (basis[i][u * np + v] != basis[i][v * np + u])
                    throw std::invalid_argument("basis matrix is not symmetric");
            }
            if (row != q - 1) throw std::invalid_argument("basis row sum != q-1");
        }
    }

    std::vector<long> cvals(m * m * m, 0);
    auto extract_pair = [&](std::size_t i, std::size_t j) {
        std::vector<long> prod(np * np, 0);
        for (std::size_t u = 0; u < np; ++u)
            for (std::size_t w = 0; w < np; ++w) {
                if (!basis[i][u * np + w]) continue;
                const int* rowj = &basis[j][w * np];
                long* rowp = &prod[u * np];
                for (std::size_t v = 0; v < np; ++v) rowp[v] += rowj[v];
            }
        // decompose over the basis: coefficient must be constant per support
        std::vector<long> coeff(m, -1);
        for (std::size_t cell = 0; cell < np * np; ++cell) {
            std::size_t k = owner[cell];
            if (coeff[k] == -1)
                coeff[k] = prod[cell];
            else if (coeff[k] != prod[cell])
                throw std::invalid_argument("product r_" + std::to_string(i) + " r_" +
                                            std::to_string(j) +
                                            " is not in the span of the basis; bad plane data");
        }
        // product pattern of an affine plane of order q
        for (std::size_t k = 0; k < m; ++k) {
            long want;
            if (i == j)
                want = (k == 0) ? q - 1 : (k == i) ? q - 2 : 0;
            else
                want = (k == 0 || k == i || k == j) ? 0 : 1;
            if (coeff[k] != want)
                throw std::invalid_argument("affine product pattern violated at (" + std::to_string(i) +
                                            "," + std::to_string(j) + "," + std::to_string(k) + ")");
            cvals[(i * m + j) * m + k] = coeff[k];
        }
    };

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 1; i < m; ++i)
        for (std::size_t j = 1; j < m; ++j) pairs.emplace_back(i, j);
#ifdef _OPENMP
    if (parallel) {
        std::string error;  // exceptions must not unwind out of the omp region
#pragma omp parallel for schedule(dynamic) num_threads(jobs > 0 ? jobs : omp_get_max_threads())
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            try {
                extract_pair(pairs[p].first, pairs[p].second);
            } catch (const std::exception& ex) {
#pragma omp critical
                if (error.empty()) error = ex.what();
            }
        }
        if (!error.empty()) throw std::invalid_argument(error);
    } else
#else
    (void)jobs;
    (void)parallel;
#endif
    {
        for (const auto& [i, j] : pairs) extract_pair(i, j);
    }

    for (std::size_t s = 0; s < m; ++s) {
        cvals[(0 * m + s) * m + s] = 1;
        cvals[(s * m + 0) * m + s] = 1;
    }

    const std::int64_t rad = static_cast<std::int64_t>(q) * q;
    std::vector<QuadNum> c;
    c.reserve(m * m * m);
    for (long v : cvals) c.push_back(QuadNum(Rat(v), Rat(0), rad));

    std::vector<std::string> labels(m);
    labels[0] = "e";
    for (std::size_t i = 1; i < m; ++i) labels[i] = "B" + std::to_string(i);
    std::vector<std::size_t> star(m);
    for (std::size_t i = 0; i < m; ++i) star[i] = i;
    return CAlgebra(std::move(labels), 0, std::move(star), rad, std::move(c));
}

}  // namespace

CAlgebra matrix_algebra(const AffinePlane& plane, int jobs) {
    return matrix_algebra_impl(plane, jobs, true);
}

CAlgebra matrix_algebra_serial(const AffinePlane& plane) {
    return matrix_algebra_impl(plane, 0, false);
}

CrossValidation cross_validate(long q, int jobs) {
    CrossValidation cv;
    CAlgebra realized = matrix_algebra(build_plane(q), jobs);
    DegreeSpec spec;
    spec.epsilon = -1;
    spec.degrees.push_back(Rat(1));
    for (long i = 0; i <= q; ++i) spec.degrees.push_back(Rat(q - 1));
    CAlgebra constructed = construct(spec);
    cv.equal = equivalent_entrywise(realized, constructed);
    cv.realized_amorphic = is_amorphic(realized).ok();
    cv.constructed_amorphic = is_amorphic(constructed).ok();
    return cv;
}

}  // namespace camorph
