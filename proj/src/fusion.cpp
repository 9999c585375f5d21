#include "camorph/fusion.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace camorph {

void Partition::canonicalize() {
    for (auto& cls : classes) std::sort(cls.begin(), cls.end());
    std::sort(classes.begin(), classes.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
}

void Partition::validate(std::size_t size, std::size_t e) const {
    std::vector<int> hit(size, 0);
    bool e_alone = false;
    for (const auto& cls : classes) {
        if (cls.empty()) throw std::invalid_argument("empty partition class");
        for (std::size_t x : cls) {
            if (x >= size) throw std::invalid_argument("partition index out of range");
            if (hit[x]++) throw std::invalid_argument("partition classes are not disjoint");
        }
        if (cls.size() == 1 && cls.front() == e) e_alone = true;
    }
    for (std::size_t x = 0; x < size; ++x)
        if (!hit[x]) throw std::invalid_argument("partition does not cover the basis");
    if (!e_alone) throw std::invalid_argument("identity must form a singleton class");
}

void to_json(nlohmann::json& j, const Partition& p) { j = nlohmann::json{{"classes", p.classes}}; }

void from_json(const nlohmann::json& j, Partition& p) {
    p.classes = j.at("classes").get<std::vector<std::vector<std::size_t>>>();
    p.canonicalize();
}

namespace {

// Core fusion with every failure mode reported as NotClosed; the public
// wrapper turns the star violation into an exception.
FuseResult fuse_core(const CAlgebra& a, const Partition& pi, bool* star_violation) {
    const std::size_t m = a.size();
    const std::size_t k = pi.classes.size();
    if (star_violation) *star_violation = false;

    std::vector<std::size_t> cls_of(m);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t x : pi.classes[i]) cls_of[x] = i;

    // star must permute the classes
    std::vector<std::size_t> star_cls(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t img = cls_of[a.star(pi.classes[i].front())];
        for (std::size_t x : pi.classes[i])
            if (cls_of[a.star(x)] != img) {
                if (star_violation) *star_violation = true;
                return NotClosed{i, i, x, pi.classes[i].front(), "star does not preserve the partition"};
            }
        star_cls[i] = img;
    }

    std::size_t e_cls = cls_of[a.identity()];
    std::vector<QuadNum> c(k * k * k, QuadNum(0));
    std::vector<QuadNum> coeff(m);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            for (auto& x : coeff) x = QuadNum(0);
            for (std::size_t r : pi.classes[i])
                for (std::size_t s : pi.classes[j])
                    for (std::size_t t = 0; t < m; ++t) {
                        const QuadNum& v = a.c(r, s, t);
                        if (!v.is_zero()) coeff[t] += v;
                    }
            for (std::size_t l = 0; l < k; ++l) {
                const auto& cls = pi.classes[l];
                const QuadNum& first = coeff[cls.front()];
                for (std::size_t idx = 1; idx < cls.size(); ++idx)
                    if (coeff[cls[idx]] != first)
                        return NotClosed{i, j, cls.front(), cls[idx],
                                         "coefficient " + first.str() + " vs " +
                                             coeff[cls[idx]].str() + " within one class"};
                c[(i * k + j) * k + l] = first;
            }
        }

    std::vector<std::string> labels(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::string s;
        for (std::size_t x : pi.classes[i]) {
            if (!s.empty()) s += "+";
            s += a.label(x);
        }
        labels[i] = std::move(s);
    }
    return CAlgebra(std::move(labels), e_cls, std::move(star_cls), a.radicand(), std::move(c));
}

}  // namespace

FuseResult fuse(const CAlgebra& a, const Partition& pi_in) {
    Partition pi = pi_in;
    pi.canonicalize();
    pi.validate(a.size(), a.identity());
    bool star_violation = false;
    FuseResult res = fuse_core(a, pi, &star_violation);
    if (star_violation)
        throw std::domain_error("fusion: star does not preserve the partition; A_pi is not *-closed");
    return res;
}

namespace {

// Restricted growth strings enumerate set partitions of {0..k-1} in a
// deterministic stream.
bool next_rgs(std::vector<std::size_t>& a, std::vector<std::size_t>& maxv) {
    const std::size_t k = a.size();
    for (std::size_t i = k; i-- > 1;) {
        if (a[i] <= maxv[i - 1]) {
            ++a[i];
            maxv[i] = std::max(maxv[i], a[i]);
            for (std::size_t j = i + 1; j < k; ++j) {
                a[j] = 0;
                maxv[j] = maxv[i];
            }
            return true;
        }
    }
    return false;
}

Partition rgs_to_partition(const std::vector<std::size_t>& rgs, const std::vector<std::size_t>& rest,
                           std::size_t e) {
    std::size_t nclasses = rgs.empty() ? 0 : *std::max_element(rgs.begin(), rgs.end()) + 1;
    Partition pi;
    pi.classes.assign(nclasses + 1, {});
    pi.classes[0].push_back(e);
    for (std::size_t i = 0; i < rgs.size(); ++i) pi.classes[rgs[i] + 1].push_back(rest[i]);
    pi.canonicalize();
    return pi;
}

FuseAllSummary fuse_all_impl(const CAlgebra& a, std::size_t cap, int jobs, bool parallel) {
    if (a.size() > cap)
        throw std::domain_error("fuse_all: dimension " + std::to_string(a.size()) +
                                " exceeds the enumeration cap " + std::to_string(cap));
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (i != a.identity()) rest.push_back(i);

    FuseAllSummary sum;
    const std::size_t k = rest.size();
    std::vector<std::size_t> rgs(k, 0), maxv(k, 0);
    bool more = !rest.empty();
    unsigned long long index = 0;

    auto eval = [&](const Partition& pi, unsigned long long idx, FuseAllSummary& local) {
        ++local.total;
        FuseResult res = fuse_core(a, pi, nullptr);
        if (std::holds_alternative<NotClosed>(res)) {
            const auto& nc = std::get<NotClosed>(res);
            if (local.failures.size() < CheckResult::kMaxWitnesses)
                local.failures.push_back(FuseAllFailure{idx, pi, "not closed: " + nc.detail});
            return;
        }
        ++local.closed;
        if (is_amorphic(std::get<CAlgebra>(res)).ok())
            ++local.fusions_amorphic;
        else if (local.failures.size() < CheckResult::kMaxWitnesses)
            local.failures.push_back(FuseAllFailure{idx, pi, "fusion fails the amorphic criterion"});
    };

    if (rest.empty()) {  // 1-dimensional algebra: the empty partition of R^#
        Partition pi;
        pi.classes.push_back({a.identity()});
        eval(pi, index++, sum);
        return sum;
    }

#ifdef _OPENMP
    if (parallel) {
        constexpr std::size_t kBatch = 2048;
        std::vector<Partition> batch;
        batch.reserve(kBatch);
        while (more) {
            batch.clear();
            unsigned long long base = index;
            do {
                batch.push_back(rgs_to_partition(rgs, rest, a.identity()));
                ++index;
                more = next_rgs(rgs, maxv);
            } while (more && batch.size() < kBatch);

            std::vector<FuseAllSummary> locals(batch.size());
#pragma omp parallel for schedule(dynamic) num_threads(jobs > 0 ? jobs : omp_get_max_threads())
            for (std::size_t i = 0; i < batch.size(); ++i) eval(batch[i], base + i, locals[i]);
            for (auto& loc : locals) {
                sum.total += loc.total;
                sum.closed += loc.closed;
                sum.fusions_amorphic += loc.fusions_amorphic;
                for (auto& f : loc.failures)
                    if (sum.failures.size() < CheckResult::kMaxWitnesses)
                        sum.failures.push_back(std::move(f));
            }
        }
        return sum;
    }
#else
    (void)jobs;
    (void)parallel;
#endif
    while (more) {
        eval(rgs_to_partition(rgs, rest, a.identity()), index++, sum);
        more = next_rgs(rgs, maxv);
    }
    return sum;
}

}  // namespace

FuseAllSummary fuse_all(const CAlgebra& a, std::size_t cap, int jobs) {
    return fuse_all_impl(a, cap, jobs, true);
}

FuseAllSummary fuse_all_serial(const CAlgebra& a, std::size_t cap) {
    return fuse_all_impl(a, cap, 0, false);
}

void to_json(nlohmann::json& j, const FuseAllSummary& s) {
    nlohmann::json fails = nlohmann::json::array();
    for (const auto& f : s.failures)
        fails.push_back(nlohmann::json{{"index", f.index}, {"partition", f.pi}, {"reason", f.reason}});
    j = nlohmann::json{{"total", s.total},
                       {"closed", s.closed},
                       {"fusions_amorphic", s.fusions_amorphic},
                       {"failures", std::move(fails)}};
}

Fission fission(const CAlgebra& a_in, const Rat& d_in) {
    Rat d = d_in;
    d.canonicalize();
    if (d <= 0) throw std::invalid_argument("fission: d must be positive");
    CAlgebra a = a_in.with_identity_first();
    DegreeSpec spec = recover_spec(a);  // also rejects trivial/irrational inputs
    DegreeVector dv = degrees(a);

    std::vector<unsigned long> block(a.size(), 0);
    Rat nu_rat(1);
    for (std::size_t r = 1; r < a.size(); ++r) {
        Rat q = dv.d[r].rational_part() / d;
        if (!rat_is_integer(q) || q < 1)
            throw std::domain_error("fission: d_r/d = " + rat_str(q) + " is not a positive integer");
        block[r] = q.get_num().get_ui();
        nu_rat += q;
    }
    if (!rat_is_integer(nu_rat))
        throw std::logic_error("fission: nu = " + rat_str(nu_rat) + " is not an integer");

    const std::size_t nu = nu_rat.get_num().get_ui();
    DegreeSpec parent_spec;
    parent_spec.epsilon = spec.epsilon;
    parent_spec.degrees.assign(nu - 1, d);
    parent_spec.degrees.push_back(Rat(1));
    CAlgebra parent = construct(parent_spec, "x");

    Partition pi;
    pi.classes.push_back({0});
    std::size_t next = 1;
    for (std::size_t r = 1; r < a.size(); ++r) {
        std::vector<std::size_t> cls;
        for (unsigned long i = 0; i < block[r]; ++i) cls.push_back(next++);
        pi.classes.push_back(std::move(cls));
    }
    if (next != nu) throw std::logic_error("fission: block sizes do not add up to nu - 1");

    FuseResult fused = fuse(parent, pi);
    if (!std::holds_alternative<CAlgebra>(fused))
        throw std::logic_error("fission: parent fusion is not closed");
    if (!equivalent_entrywise(std::get<CAlgebra>(fused), a))
        throw std::logic_error("fission: parent fusion does not reproduce the input");
    return Fission{std::move(parent), std::move(pi)};
}

Rat rational_fission_witness(const CAlgebra& a) {
    DegreeVector dv = degrees(a);
    Int n(1);
    for (std::size_t r = 0; r < a.size(); ++r) {
        if (r == a.identity()) continue;
        if (!dv.d[r].is_rational())
            throw std::domain_error("rational_fission_witness: irrational degree " + dv.d[r].str());
        Int den = dv.d[r].rational_part().get_den();
        mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), den.get_mpz_t());
    }
    return Rat(1, n);
}

}  // namespace camorph
