#include "camorph/duality.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "camorph/amorphic.hpp"

namespace camorph {

namespace {

// --- dense symmetric eigensolver (cyclic Jacobi) ---------------------------

struct Eigen {
    std::vector<double> values;   // descending
    std::vector<double> vectors;  // column i = eigenvector of values[i], row-major m x m
};

Eigen jacobi_eigen(std::vector<double> s, std::size_t m) {
    std::vector<double> v(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) v[i * m + i] = 1.0;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = p + 1; q < m; ++q) off += s[p * m + q] * s[p * m + q];
        if (off < 1e-26) break;
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = p + 1; q < m; ++q) {
                double apq = s[p * m + q];
                if (std::fabs(apq) < 1e-300) continue;
                double theta = (s[q * m + q] - s[p * m + p]) / (2 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), sn = t * c;
                for (std::size_t k = 0; k < m; ++k) {
                    double skp = s[k * m + p], skq = s[k * m + q];
                    s[k * m + p] = c * skp - sn * skq;
                    s[k * m + q] = sn * skp + c * skq;
                }
                for (std::size_t k = 0; k < m; ++k) {
                    double spk = s[p * m + k], sqk = s[q * m + k];
                    s[p * m + k] = c * spk - sn * sqk;
                    s[q * m + k] = sn * spk + c * sqk;
                }
                for (std::size_t k = 0; k < m; ++k) {
                    double vkp = v[k * m + p], vkq = v[k * m + q];
                    v[k * m + p] = c * vkp - sn * vkq;
                    v[k * m + q] = sn * vkp + c * vkq;
                }
            }
    }
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return s[x * m + x] > s[y * m + y]; });
    Eigen out;
    out.values.resize(m);
    out.vectors.resize(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        out.values[i] = s[order[i] * m + order[i]];
        for (std::size_t k = 0; k < m; ++k) out.vectors[k * m + i] = v[k * m + order[i]];
    }
    return out;
}

// --- snapping floats into Q(sqrt(n)) ---------------------------------------

constexpr double kSnapTol = 1e-9;

// best rational approximation via continued fractions; exact verification
// downstream rejects any false accept.
bool snap_rational(double x, Rat& out) {
    const Int kDenCap("10000000");
    double v = x;
    Int p0(0), q0(1), p1(1), q1(0);
    for (int it = 0; it < 64; ++it) {
        if (std::fabs(v) > 1e18) return false;
        Int a(static_cast<long>(std::floor(v)));
        Int p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > kDenCap) return false;
        Rat cand(p2, q2);
        cand.canonicalize();
        if (std::fabs(rat_to_double(cand) - x) <= kSnapTol) {
            out = cand;
            return true;
        }
        double frac = v - std::floor(v);
        if (frac < 1e-15) return false;
        v = 1.0 / frac;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    return false;
}

// Textbook LLL (delta = 3/4) with exact rational Gram-Schmidt; tiny fixed
// dimension, used as an integer-relation finder for (1, sqrt(rad), x).
void lll_reduce(std::vector<std::vector<Int>>& b) {
    const std::size_t n = b.size();
    const std::size_t dim = b[0].size();

    std::vector<std::vector<Rat>> gs(n, std::vector<Rat>(dim));
    std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n, Rat(0)));
    std::vector<Rat> norm(n, Rat(0));
    auto recompute = [&]() {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < dim; ++k) gs[i][k] = Rat(b[i][k]);
            for (std::size_t j = 0; j < i; ++j) {
                Rat num(0);
                for (std::size_t k = 0; k < dim; ++k) num += Rat(b[i][k]) * gs[j][k];
                mu[i][j] = (norm[j] == 0) ? Rat(0) : Rat(num / norm[j]);
                for (std::size_t k = 0; k < dim; ++k) gs[i][k] -= mu[i][j] * gs[j][k];
            }
            norm[i] = Rat(0);
            for (const auto& x : gs[i]) norm[i] += x * x;
        }
    };
    auto nearest = [](const Rat& r) {
        Int c, den2 = 2 * r.get_den();
        Int twice = 2 * r.get_num() + r.get_den();
        mpz_fdiv_q(c.get_mpz_t(), twice.get_mpz_t(), den2.get_mpz_t());
        return c;
    };

    recompute();
    std::size_t k = 1;
    int guard = 0;
    while (k < n && ++guard < 10000) {
        for (std::size_t j = k; j-- > 0;) {
            Int c = nearest(mu[k][j]);
            if (c != 0) {
                for (std::size_t idx = 0; idx < dim; ++idx) b[k][idx] -= c * b[j][idx];
                recompute();
            }
        }
        if (norm[k] >= (Rat(3, 4) - mu[k][k - 1] * mu[k][k - 1]) * norm[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            recompute();
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
}

// snap x to a + b*sqrt(rad); rad not a perfect square here
bool snap_quadratic(double x, std::int64_t rad, QuadNum& out) {
    const double scale = 1e12;
    const double sq = std::sqrt(static_cast<double>(rad));
    auto to_int = [](double v) {
        Int r;
        mpz_set_d(r.get_mpz_t(), std::round(v));
        return r;
    };
    std::vector<std::vector<Int>> basis = {
        {Int(1), Int(0), Int(0), to_int(scale)},
        {Int(0), Int(1), Int(0), to_int(scale * sq)},
        {Int(0), Int(0), Int(1), to_int(-scale * x)},
    };
    lll_reduce(basis);

    for (const auto& row : basis) {
        const Int &p = row[0], &q = row[1], &s = row[2];
        if (s == 0) continue;
        Rat a(p, s), bq(q, s);
        a.canonicalize();
        bq.canonicalize();
        QuadNum cand(a, bq, rad);
        if (std::fabs(cand.to_double() - x) <= kSnapTol) {
            out = cand;
            return true;
        }
    }
    return false;
}

bool snap_value(double x, std::int64_t rad, bool rad_square, QuadNum& out) {
    if (rad_square) {  // the field degenerates to Q
        Rat r;
        if (!snap_rational(x, r)) return false;
        out = QuadNum(r).with_radicand(rad);
        return true;
    }
    return snap_quadratic(x, rad, out);
}

// For an amorphic algebra every nontrivial character satisfies the exact
// quadratic chi(r)^2 = d_r + c_{r,r}^r chi(r) + c0_r (-1 - chi(r)) with c0_r
// the common off-diagonal slot (nontrivial characters kill the all-sum, so
// sum_{u != e} chi(u) = -1). The possible values of chi(r) are therefore the
// exact roots plus d_r itself; snapping reduces to nearest-candidate
// selection, which no floating-point precision cliff can break.
std::vector<std::vector<QuadNum>> character_candidates(const CAlgebra& a, const DegreeVector& dv) {
    const std::size_t m = a.size();
    const std::size_t e = a.identity();
    std::vector<std::vector<QuadNum>> cands(m);
    for (std::size_t r = 0; r < m; ++r) {
        if (r == e) {
            cands[r] = {QuadNum(1)};
            continue;
        }
        QuadNum c0(0);
        for (std::size_t u = 0; u < m; ++u)
            if (u != e && u != r) {
                c0 = a.c(r, r, u);
                break;
            }
        QuadNum lin = a.c(r, r, r) - c0;           // chi^2 - lin*chi - cst = 0
        QuadNum cst = dv.d[r] - c0;
        QuadNum disc = lin * lin + QuadNum(4) * cst;
        cands[r].push_back(dv.d[r]);
        if (auto root = disc.sqrt_in_field()) {
            QuadNum half{Rat(1, 2)};
            cands[r].push_back(half * (lin + *root));
            cands[r].push_back(half * (lin - *root));
        }
    }
    return cands;
}

bool snap_to_candidates(double x, const std::vector<QuadNum>& cands, QuadNum& out) {
    const QuadNum* best = nullptr;
    double best_err = kSnapTol;
    for (const QuadNum& c : cands) {
        double err = std::fabs(c.to_double() - x);
        if (err <= best_err) {
            best_err = err;
            best = &c;
        }
    }
    if (!best) return false;
    out = *best;
    return true;
}

}  // namespace

QuadNum EigenData::Q(std::size_t shat, std::size_t r) const {
    // trivial character = degree map, kept first
    return dual_degrees[shat] * chi[shat][r] / chi[0][r];
}

void to_json(nlohmann::json& j, const EigenData& e) {
    const std::size_t m = e.dim();
    nlohmann::json pj = nlohmann::json::array(), qj = nlohmann::json::array();
    for (std::size_t r = 0; r < m; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t s = 0; s < m; ++s) row.push_back(e.P(r, s));
        pj.push_back(std::move(row));
    }
    for (std::size_t s = 0; s < m; ++s) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t r = 0; r < m; ++r) row.push_back(e.Q(s, r));
        qj.push_back(std::move(row));
    }
    j = nlohmann::json{{"P", std::move(pj)},
                       {"Q", std::move(qj)},
                       {"dual_degrees", e.dual_degrees},
                       {"n", e.n}};
}

EigenData characters(const CAlgebra& a, unsigned seed) {
    const std::size_t m = a.size();
    ClassifyFlags flags = classify(a);
    if (!flags.commutative) throw std::domain_error("characters: algebra is not commutative");
    if (!flags.symmetric)
        throw std::domain_error(
            "characters: non-symmetric algebras have complex characters outside Q(sqrt(n)); "
            "out of the supported class");
    DegreeVector dv = degrees(a);
    const std::int64_t rad = a.radicand();
    const bool rad_square = int_is_perfect_square(Int(static_cast<long>(rad)));

    // exact per-element value sets, available exactly when a is amorphic
    std::vector<std::vector<QuadNum>> cands;
    if (is_amorphic(a).ok()) cands = character_candidates(a, dv);

    // S_r = D^{1/2} M_r D^{-1/2} with (M_r)_{t,s} = c_{r,s}^t is symmetric:
    // left multiplication is self-adjoint for the degree form when star = id.
    std::vector<double> sqd(m);
    for (std::size_t i = 0; i < m; ++i) sqd[i] = std::sqrt(dv.d[i].to_double());
    std::vector<std::vector<double>> srs(m, std::vector<double>(m * m));
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t t = 0; t < m; ++t)
            for (std::size_t s = 0; s < m; ++s)
                srs[r][t * m + s] = sqd[t] * a.c(r, s, t).to_double() / sqd[s];

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(1.0, 2.0);
    std::string last_error = "no attempt";

    for (int attempt = 0; attempt < 20; ++attempt) {
        std::vector<double> mix(m * m, 0.0);
        for (std::size_t r = 0; r < m; ++r) {
            double w = unif(rng);
            for (std::size_t k = 0; k < m * m; ++k) mix[k] += w * srs[r][k];
        }
        Eigen eig = jacobi_eigen(std::move(mix), m);

        // chi_i(r) = v_i^T S_r v_i (diagonal of the congruence by the eigenbasis)
        std::vector<std::vector<QuadNum>> chi(m, std::vector<QuadNum>(m));
        bool snapped = true;
        for (std::size_t i = 0; i < m && snapped; ++i)
            for (std::size_t r = 0; r < m && snapped; ++r) {
                double val = 0;
                for (std::size_t t = 0; t < m; ++t) {
                    double acc = 0;
                    for (std::size_t s = 0; s < m; ++s)
                        acc += srs[r][t * m + s] * eig.vectors[s * m + i];
                    val += eig.vectors[t * m + i] * acc;
                }
                bool got = cands.empty() ? snap_value(val, rad, rad_square, chi[i][r])
                                         : snap_to_candidates(val, cands[r], chi[i][r]);
                if (!got) {
                    snapped = false;
                    last_error = "character value " + std::to_string(val) +
                                 " does not snap into Q(sqrt(" + std::to_string(rad) + "))";
                }
            }
        if (!snapped) continue;

        // mandatory exact verification of the homomorphism identity
        bool exact = true;
        for (std::size_t i = 0; i < m && exact; ++i)
            for (std::size_t r = 0; r < m && exact; ++r)
                for (std::size_t s = 0; s < m && exact; ++s) {
                    QuadNum lhs = chi[i][r] * chi[i][s];
                    QuadNum rhs(0);
                    for (std::size_t t = 0; t < m; ++t) rhs += a.c(r, s, t) * chi[i][t];
                    if (lhs != rhs) {
                        exact = false;
                        last_error = "snapped values fail the exact homomorphism identity";
                    }
                }
        if (!exact) continue;

        bool distinct = true;
        for (std::size_t i = 0; i < m && distinct; ++i)
            for (std::size_t j = i + 1; j < m && distinct; ++j)
                if (chi[i] == chi[j]) {
                    distinct = false;
                    last_error = "repeated eigenvalue cluster (degenerate seed)";
                }
        if (!distinct) continue;
        bool trivial_found = false;
        for (std::size_t i = 0; i < m; ++i)
            if (chi[i] == dv.d) trivial_found = true;
        if (!trivial_found) {
            last_error = "trivial character (degree map) missing";
            continue;
        }

        // order: trivial first, then ascending lexicographic by exact values
        std::sort(chi.begin(), chi.end(), [&](const auto& x, const auto& y) {
            if (x == dv.d) return !(y == dv.d);
            if (y == dv.d) return false;
            for (std::size_t r = 0; r < m; ++r) {
                int s = (x[r] - y[r]).sign();
                if (s != 0) return s < 0;
            }
            return false;
        });

        EigenData ed;
        ed.chi = std::move(chi);
        ed.n = dv.n;
        ed.dual_degrees.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            QuadNum denom(0);
            for (std::size_t r = 0; r < m; ++r) denom += ed.chi[i][r] * ed.chi[i][r] / dv.d[r];
            ed.dual_degrees[i] = dv.n / denom;
        }

        // internal gates: dual degree total, orthogonality, PQ = nI
        QuadNum total(0);
        for (const auto& dd : ed.dual_degrees) total += dd;
        if (total != dv.n) throw std::logic_error("characters: dual degrees do not sum to n");
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                QuadNum dot(0);
                for (std::size_t r = 0; r < m; ++r) dot += ed.chi[i][r] * ed.chi[j][r] / dv.d[r];
                QuadNum want = (i == j) ? dv.n / ed.dual_degrees[i] : QuadNum(0);
                if (dot != want) throw std::logic_error("characters: orthogonality gate failed");
            }
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t s = 0; s < m; ++s) {
                QuadNum acc(0);
                for (std::size_t i = 0; i < m; ++i) acc += ed.P(r, i) * ed.Q(i, s);
                QuadNum want = (r == s) ? dv.n : QuadNum(0);
                if (acc != want) throw std::logic_error("characters: PQ != nI");
            }
        return ed;
    }
    throw std::domain_error("characters: " + last_error);
}

CAlgebra dual_algebra(const CAlgebra& a, unsigned seed) {
    if (!table_check(a).is_table)
        throw std::domain_error("dual_algebra: input has negative constants (not a table algebra)");
    EigenData ed = characters(a, seed);
    DegreeVector dv = degrees(a);
    const std::size_t m = a.size();

    std::vector<QuadNum> c(m * m * m, QuadNum(0));
    QuadNum ninv = dv.n.inverse();
    for (std::size_t u = 0; u < m; ++u)
        for (std::size_t v = 0; v < m; ++v)
            for (std::size_t w = 0; w < m; ++w) {
                QuadNum acc(0);
                for (std::size_t r = 0; r < m; ++r)
                    acc += ed.P(r, u) * ed.P(r, v) * ed.P(r, w) / (dv.d[r] * dv.d[r]);
                c[(u * m + v) * m + w] = ed.dual_degrees[u] * ed.dual_degrees[v] * ninv * acc;
            }

    std::vector<std::string> labels(m);
    labels[0] = "e";
    for (std::size_t i = 1; i < m; ++i) labels[i] = "ch" + std::to_string(i);
    std::vector<std::size_t> star(m);
    for (std::size_t i = 0; i < m; ++i) star[i] = i;
    for (auto& x : c) x = x.with_radicand(a.radicand());
    CAlgebra dual(std::move(labels), 0, std::move(star), a.radicand(), std::move(c));
    if (!verify_axioms(dual).ok())
        throw std::logic_error("dual_algebra: dual constants fail the C-algebra axioms");
    return dual;
}

SelfDualityReport verify_selfduality(const CAlgebra& a, unsigned seed) {
    ClassifyFlags flags = classify(a);
    if (flags.trivial) throw std::domain_error("verify_selfduality: algebra is trivial");
    if (!flags.homogeneous) throw std::domain_error("verify_selfduality: algebra is not homogeneous");
    if (!is_amorphic(a).ok()) throw std::domain_error("verify_selfduality: algebra is not amorphic");
    if (!table_check(a).is_table)
        throw std::domain_error("verify_selfduality: algebra is not a table algebra");

    CAlgebra primal = a.with_identity_first();
    CAlgebra dual = dual_algebra(primal, seed);
    SelfDualityReport rep;

    DegreeVector dp = degrees(primal), dd = degrees(dual);
    auto key = [](const DegreeVector& v) {
        std::vector<std::string> k;
        for (const auto& x : v.d) k.push_back(x.str());
        std::sort(k.begin(), k.end());
        return k;
    };
    rep.dual_degrees_match = key(dp) == key(dd);
    rep.spec_match = recover_spec(dual) == recover_spec(primal);
    rep.dual_dual_equal = equivalent_entrywise(dual_algebra(dual, seed), primal);
    return rep;
}

void to_json(nlohmann::json& j, const SelfDualityReport& r) {
    j = nlohmann::json{{"dual_degrees_match", r.dual_degrees_match},
                       {"spec_match", r.spec_match},
                       {"dual_dual_equal", r.dual_dual_equal},
                       {"ok", r.ok()}};
}

}  // namespace camorph
