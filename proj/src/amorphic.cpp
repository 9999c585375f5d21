#include "camorph/amorphic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace camorph {

namespace {

// mpq arithmetic assumes lowest terms; normalize anything caller-provided
Rat canon(Rat x) {
    x.canonicalize();
    return x;
}

}  // namespace

Rat DegreeSpec::total() const {
    Rat n(0);
    for (const auto& d : degrees) n += canon(d);
    return n;
}

void DegreeSpec::validate() const {
    if (epsilon != 1 && epsilon != -1) throw std::invalid_argument("epsilon must be -1 or +1");
    if (degrees.size() < 4)
        throw std::invalid_argument("degree multiset needs at least 4 entries (nontrivial)");
    bool has_one = false;
    for (const auto& raw : degrees) {
        Rat d = canon(raw);
        if (d <= 0) throw std::invalid_argument("degree " + rat_str(d) + " is not positive");
        if (d == 1) has_one = true;
    }
    if (!has_one) throw std::invalid_argument("degree multiset must contain 1");
    QuadNum root = QuadNum::sqrt_of(total());
    if ((root + QuadNum(epsilon)).sign() <= 0)
        throw std::invalid_argument("sqrt(n) + epsilon is not positive");
}

bool operator==(const DegreeSpec& x, const DegreeSpec& y) {
    if (x.epsilon != y.epsilon || x.degrees.size() != y.degrees.size()) return false;
    auto a = x.degrees, b = y.degrees;
    for (auto& v : a) v.canonicalize();
    for (auto& v : b) v.canonicalize();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

void to_json(nlohmann::json& j, const DegreeSpec& s) {
    std::vector<std::string> d;
    d.reserve(s.degrees.size());
    for (const auto& x : s.degrees) d.push_back(rat_str(x));
    j = nlohmann::json{{"D", std::move(d)}, {"epsilon", s.epsilon}};
}

void from_json(const nlohmann::json& j, DegreeSpec& s) {
    s.degrees.clear();
    for (const auto& entry : j.at("D")) s.degrees.push_back(parse_rat(entry.get<std::string>()));
    s.epsilon = j.at("epsilon").get<int>();
}

CAlgebra construct(const DegreeSpec& spec, const std::string& label_prefix) {
    spec.validate();
    Rat n = spec.total();
    QuadNum root = QuadNum::sqrt_of(n);
    const std::int64_t rad = root.is_rational() ? int_to_i64_checked(n.get_num() * n.get_den())
                                                : root.radicand();

    // basis: e first, then remaining degrees ascending
    std::vector<Rat> rest;
    rest.reserve(spec.degrees.size());
    for (const auto& d : spec.degrees) rest.push_back(canon(d));
    rest.erase(std::find(rest.begin(), rest.end(), Rat(1)));
    std::sort(rest.begin(), rest.end());

    const std::size_t m = rest.size() + 1;
    std::vector<QuadNum> d(m);
    d[0] = QuadNum(1);
    for (std::size_t i = 1; i < m; ++i) d[i] = QuadNum(rest[i - 1]);

    QuadNum q = (root + QuadNum(spec.epsilon)) * (root + QuadNum(spec.epsilon));
    QuadNum qinv = q.inverse();
    QuadNum nq(n);

    // factor_r = 1 + (d_r - d'_r)/Q with d'_r = n - 1 - d_r
    std::vector<QuadNum> dprime(m), factor(m);
    for (std::size_t r = 1; r < m; ++r) {
        dprime[r] = nq - QuadNum(1) - d[r];
        factor[r] = QuadNum(1) + (d[r] - dprime[r]) * qinv;
    }
    Rat half(1, 2);

    std::vector<QuadNum> c(m * m * m, QuadNum(0));
    auto at = [&](std::size_t r, std::size_t s, std::size_t t) -> QuadNum& {
        return c[(r * m + s) * m + t];
    };
    for (std::size_t s = 0; s < m; ++s) {
        at(0, s, s) = QuadNum(1);
        at(s, 0, s) = QuadNum(1);
    }
    for (std::size_t r = 1; r < m; ++r) at(r, r, 0) = d[r];
    for (std::size_t r = 1; r < m; ++r)
        for (std::size_t s = 1; s < m; ++s)
            for (std::size_t t = 1; t < m; ++t) {
                if (r == s) {
                    at(r, s, t) = (t == r) ? QuadNum(half) * (-dprime[r]) * factor[r] + d[r] - QuadNum(1)
                                           : QuadNum(half) * d[r] * factor[r];
                } else if (t == r) {
                    at(r, s, t) = QuadNum(half) * d[s] * factor[r];
                } else if (t == s) {
                    at(r, s, t) = QuadNum(half) * d[r] * factor[s];
                } else {
                    at(r, s, t) = d[r] * d[s] * qinv;
                }
            }

    std::vector<std::string> labels(m);
    labels[0] = "e";
    for (std::size_t i = 1; i < m; ++i) labels[i] = label_prefix + std::to_string(i);
    std::vector<std::size_t> star(m);
    for (std::size_t i = 0; i < m; ++i) star[i] = i;
    for (auto& x : c) x = x.with_radicand(rad);
    return CAlgebra(std::move(labels), 0, std::move(star), rad, std::move(c));
}

VerificationReport is_amorphic(const CAlgebra& a) {
    const std::size_t m = a.size();
    const std::size_t e = a.identity();
    VerificationReport rep;
    auto& chk = rep.add("amorphic_criterion");
    if (m <= 3) return rep;  // trivial amorphic

    for (std::size_t r = 0; r < m; ++r)
        if (a.star(r) != r) {
            chk.fail({r}, "nontrivial amorphic C-algebras are symmetric; star(" +
                              std::to_string(r) + ") = " + std::to_string(a.star(r)));
            return rep;
        }

    for (std::size_t r = 0; r < m; ++r) {
        if (r == e) continue;
        for (std::size_t s = 0; s < m; ++s) {
            if (s == e) continue;
            const QuadNum* common = nullptr;
            std::size_t u0 = 0;
            for (std::size_t u = 0; u < m; ++u) {
                if (u == e || u == r || u == s) continue;
                if (!common) {
                    common = &a.c(r, s, u);
                    u0 = u;
                } else if (a.c(r, s, u) != *common) {
                    chk.fail({r, s, u0, u}, "c(r,s,u) = " + common->str() + " vs c(r,s,v) = " +
                                                a.c(r, s, u).str());
                }
            }
        }
    }
    return rep;
}

DegreeSpec recover_spec(const CAlgebra& a) {
    const std::size_t m = a.size();
    const std::size_t e = a.identity();
    if (m <= 3) throw std::domain_error("recover_spec: algebra is trivial (dimension <= 3)");
    DegreeVector dv = degrees(a);

    DegreeSpec spec;
    spec.degrees.reserve(m);
    for (std::size_t r = 0; r < m; ++r) {
        if (!dv.d[r].is_rational())
            throw std::domain_error("recover_spec: irrational degree " + dv.d[r].str() +
                                    " outside the rational interchange class");
        spec.degrees.push_back(dv.d[r].rational_part());
    }
    std::sort(spec.degrees.begin(), spec.degrees.end());

    // three distinct non-identity indices
    std::vector<std::size_t> idx;
    for (std::size_t r = 0; r < m && idx.size() < 3; ++r)
        if (r != e) idx.push_back(r);
    const QuadNum& c0 = a.c(idx[0], idx[1], idx[2]);
    if (c0.is_zero()) throw std::domain_error("recover_spec: zero off-diagonal constant");
    QuadNum target = dv.d[idx[0]] * dv.d[idx[1]] / c0;  // (sqrt(n)+eps)^2

    QuadNum root = QuadNum::sqrt_of(dv.n.rational_part());
    for (int eps : {-1, +1}) {
        QuadNum cand = (root + QuadNum(eps)) * (root + QuadNum(eps));
        if (cand == target) {
            spec.epsilon = eps;
            return spec;
        }
    }
    throw std::domain_error("recover_spec: (sqrt(n)+eps)^2 = " + target.str() +
                            " matches neither sign; input is not a constructed amorphic algebra");
}

CAlgebra generalized_affine(const Rat& n_in, int epsilon) {
    if (epsilon != 1 && epsilon != -1) throw std::invalid_argument("epsilon must be -1 or +1");
    Rat n = canon(n_in);
    Rat root;
    if (!rat_is_perfect_square(n, &root) || !rat_is_integer(n) || !rat_is_integer(root))
        throw std::invalid_argument("generalized affine algebra needs a perfect-square integer n");
    Rat d = root + epsilon;  // d = sqrt(n) + eps
    if (d <= 0) throw std::invalid_argument("sqrt(n) + epsilon is not positive");
    Rat nu_rat = (n - 1) / d + 1;
    if (!rat_is_integer(nu_rat) || nu_rat < 4)
        throw std::invalid_argument("nu = (n-1)/d + 1 = " + rat_str(nu_rat) + " must be an integer >= 4");
    const std::size_t nu = static_cast<std::size_t>(nu_rat.get_num().get_ui());
    const std::int64_t rad = int_to_i64_checked(n.get_num());

    Rat c3(1);                        // |{r,s,t}| = 3
    Rat c2 = Rat(epsilon) + 1;        // |{r,s,t}| = 2
    Rat c1 = Rat(epsilon) * (3 - root) + 1;  // |{r,s,t}| = 1

    std::vector<QuadNum> c(nu * nu * nu, QuadNum(0));
    auto at = [&](std::size_t r, std::size_t s, std::size_t t) -> QuadNum& {
        return c[(r * nu + s) * nu + t];
    };
    for (std::size_t s = 0; s < nu; ++s) {
        at(0, s, s) = QuadNum(1);
        at(s, 0, s) = QuadNum(1);
    }
    for (std::size_t r = 1; r < nu; ++r) at(r, r, 0) = QuadNum(d);
    for (std::size_t r = 1; r < nu; ++r)
        for (std::size_t s = 1; s < nu; ++s)
            for (std::size_t t = 1; t < nu; ++t) {
                std::size_t distinct = 1 + (s != r) + (t != r && t != s);
                at(r, s, t) = QuadNum(distinct == 3 ? c3 : distinct == 2 ? c2 : c1);
            }

    std::vector<std::string> labels(nu);
    labels[0] = "e";
    for (std::size_t i = 1; i < nu; ++i) labels[i] = "r" + std::to_string(i);
    std::vector<std::size_t> star(nu);
    for (std::size_t i = 0; i < nu; ++i) star[i] = i;
    for (auto& x : c) x = x.with_radicand(rad);
    return CAlgebra(std::move(labels), 0, std::move(star), rad, std::move(c));
}

LatinParams latin_params(const CAlgebra& a) {
    if (a.size() <= 3) throw std::domain_error("latin_params: algebra is trivial");
    if (!is_amorphic(a).ok()) throw std::domain_error("latin_params: algebra is not amorphic");
    DegreeVector dv = degrees(a);
    if (!dv.n.is_rational()) throw std::domain_error("latin_params: irrational total degree");
    Rat root;
    if (!rat_is_perfect_square(dv.n.rational_part(), &root))
        throw std::domain_error("latin_params: n = " + dv.n.str() +
                                " is not a perfect square; no strongly regular interpretation");
    DegreeSpec spec = recover_spec(a);
    const int eps = spec.epsilon;

    LatinParams lp;
    lp.m = QuadNum(root);
    lp.epsilon = eps;
    lp.g.assign(a.size(), QuadNum(0));
    QuadNum me = lp.m + QuadNum(eps);
    const std::size_t e = a.identity();
    for (std::size_t r = 0; r < a.size(); ++r) {
        if (r == e) continue;
        QuadNum g = dv.d[r] / me;
        lp.g[r] = g;
        // Latin-square identities for the basis graph of r
        QuadNum want_rrr = (g + QuadNum(eps)) * (g + QuadNum(2 * eps)) - QuadNum(eps) * lp.m - QuadNum(2);
        if (a.c(r, r, r) != want_rrr)
            throw std::domain_error("latin_params: c(r,r,r) = " + a.c(r, r, r).str() +
                                    " != (g+eps)(g+2eps) - eps*m - 2 = " + want_rrr.str());
        QuadNum want_rrs = g * (g + QuadNum(eps));
        for (std::size_t s = 0; s < a.size(); ++s) {
            if (s == e || s == r) continue;
            if (a.c(r, r, s) != want_rrs)
                throw std::domain_error("latin_params: c(r,r,s) = " + a.c(r, r, s).str() +
                                        " != g(g+eps) = " + want_rrs.str());
        }
    }
    return lp;
}

bool permutation_preserves_constants(const CAlgebra& a, const std::vector<std::size_t>& perm) {
    const std::size_t m = a.size();
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t s = 0; s < m; ++s)
            for (std::size_t t = 0; t < m; ++t)
                if (a.c(perm[r], perm[s], perm[t]) != a.c(r, s, t)) return false;
    return true;
}

AutGroup aut_group(const CAlgebra& a) {
    if (a.size() <= 3) throw std::domain_error("aut_group: algebra is trivial");
    if (!is_amorphic(a).ok()) throw std::domain_error("aut_group: algebra is not amorphic");
    DegreeVector dv = degrees(a);
    const std::size_t e = a.identity();

    // classes keyed by degree value, ascending; {e} first
    std::vector<std::size_t> rest;
    for (std::size_t r = 0; r < a.size(); ++r)
        if (r != e) rest.push_back(r);
    std::stable_sort(rest.begin(), rest.end(), [&](std::size_t x, std::size_t y) {
        return (dv.d[x] - dv.d[y]).sign() < 0;
    });

    AutGroup g;
    g.classes.push_back({e});
    for (std::size_t i = 0; i < rest.size();) {
        std::vector<std::size_t> cls{rest[i]};
        std::size_t j = i + 1;
        while (j < rest.size() && dv.d[rest[j]] == dv.d[rest[i]]) cls.push_back(rest[j++]);
        g.classes.push_back(std::move(cls));
        i = j;
    }
    g.order = 1;
    for (const auto& cls : g.classes) {
        Int f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(cls.size()));
        g.order *= f;
    }

    // adjacent transpositions inside each class must fix the tensor
    for (const auto& cls : g.classes) {
        for (std::size_t i = 0; i + 1 < cls.size(); ++i) {
            std::vector<std::size_t> perm(a.size());
            for (std::size_t k = 0; k < a.size(); ++k) perm[k] = k;
            std::swap(perm[cls[i]], perm[cls[i + 1]]);
            if (!permutation_preserves_constants(a, perm))
                throw std::domain_error("aut_group: degree-class transposition (" +
                                        std::to_string(cls[i]) + " " + std::to_string(cls[i + 1]) +
                                        ") does not preserve the constants");
        }
    }
    return g;
}

TableCheck table_check(const CAlgebra& a) {
    const std::size_t m = a.size();
    TableCheck tc;
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t s = 0; s < m; ++s)
            for (std::size_t t = 0; t < m; ++t)
                if (a.c(r, s, t).sign() < 0) {
                    tc.is_table = false;
                    if (tc.witnesses.size() < CheckResult::kMaxWitnesses)
                        tc.witnesses.push_back(Witness{{r, s, t}, a.c(r, s, t).str()});
                }
    return tc;
}

TableRegion table_region(long nu, int epsilon, const Rat& d_in) {
    if (nu < 4) throw std::invalid_argument("nu must be >= 4");
    if (epsilon != 1 && epsilon != -1) throw std::invalid_argument("epsilon must be -1 or +1");
    Rat d = canon(d_in);
    if (d <= 0) throw std::invalid_argument("d must be positive");

    TableRegion t;
    t.nu = nu;
    t.epsilon = epsilon;
    t.d = d;
    t.n = 1 + Rat(nu - 1) * d;

    QuadNum root = QuadNum::sqrt_of(t.n);
    QuadNum eps(epsilon);
    QuadNum q = (root + eps) * (root + eps);
    QuadNum nq(t.n);
    QuadNum dq{Rat(d)};

    t.theta = -(QuadNum(1) + eps * root);
    t.ineq_linear = (dq - t.theta).sign() >= 0;

    // 2d^2 - 3d(n-1-Q) + (n-1)^2 - (n+1)Q >= 0, all in Q(sqrt(n))
    QuadNum lin = nq - QuadNum(1) - q;
    QuadNum f = QuadNum(2) * dq * dq - QuadNum(3) * dq * lin +
                (nq - QuadNum(1)) * (nq - QuadNum(1)) - (nq + QuadNum(1)) * q;
    t.ineq_quadratic = f.sign() >= 0;
    t.in_region = t.ineq_linear && t.ineq_quadratic;

    double sn = std::sqrt(rat_to_double(t.n));
    double disc = 9.0 + 4.0 * epsilon * sn;
    t.disc_real = disc >= 0;
    if (t.disc_real) {
        double front = (1.0 + epsilon * sn) / 2.0;
        t.d_minus = front * (-3.0 * epsilon - std::sqrt(disc));
        t.d_plus = front * (-3.0 * epsilon + std::sqrt(disc));
        if (t.d_minus > t.d_plus) std::swap(t.d_minus, t.d_plus);
    }
    if (t.in_region) {
        // vertex of the quadratic: 3(n-1-Q)/4; left branch is "lower"
        QuadNum vertex = QuadNum(Rat(3, 4)) * lin;
        t.family = (dq - vertex).sign() <= 0 ? "lower" : "upper";
    }
    return t;
}

void to_json(nlohmann::json& j, const TableRegion& t) {
    j = nlohmann::json{{"nu", t.nu},
                       {"epsilon", t.epsilon},
                       {"d", rat_str(t.d)},
                       {"n", rat_str(t.n)},
                       {"theta", t.theta},
                       {"disc_real", t.disc_real},
                       {"d_minus", t.d_minus},
                       {"d_plus", t.d_plus},
                       {"in_region", t.in_region},
                       {"family", t.family}};
}

void to_json(nlohmann::json& j, const AutGroup& g) {
    j = nlohmann::json{{"classes", g.classes}, {"order", g.order.get_str()}};
}

void to_json(nlohmann::json& j, const TableCheck& t) {
    j = nlohmann::json{{"is_table", t.is_table}, {"witnesses", t.witnesses}};
}

}  // namespace camorph
