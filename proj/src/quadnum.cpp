#include "camorph/quadnum.hpp"

#include <cmath>
#include <stdexcept>

namespace camorph {

QuadNum::QuadNum(Rat a, Rat b, std::int64_t rad) : a_(std::move(a)), b_(std::move(b)), rad_(rad) {
    if (rad < 0) throw std::invalid_argument("negative radicand");
    // mpq arithmetic and comparison require lowest terms
    a_.canonicalize();
    b_.canonicalize();
    canonicalize();
}

QuadNum::QuadNum(Rat v) : a_(std::move(v)), b_(0), rad_(0) { a_.canonicalize(); }

void QuadNum::canonicalize() {
    if (b_ == 0) return;
    Int n(static_cast<long>(rad_));
    if (int_is_perfect_square(n)) {
        a_ += b_ * Rat(int_isqrt(n));
        b_ = 0;
    }
}

QuadNum QuadNum::sqrt_of(const Rat& x) {
    if (x < 0) throw std::domain_error("sqrt of negative rational");
    Int rad = x.get_num() * x.get_den();
    std::int64_t rad64 = int_to_i64_checked(rad);
    // sqrt(p/q) = sqrt(p*q)/q
    return QuadNum(Rat(0), Rat(1, x.get_den()), rad64);
}

std::int64_t QuadNum::merged_radicand(const QuadNum& x, const QuadNum& y) {
    if (x.b_ != 0 && y.b_ != 0) {
        if (x.rad_ != y.rad_)
            throw std::domain_error("radicand mismatch: sqrt(" + std::to_string(x.rad_) +
                                    ") vs sqrt(" + std::to_string(y.rad_) + ")");
        return x.rad_;
    }
    if (x.b_ != 0) return x.rad_;
    if (y.b_ != 0) return y.rad_;
    return x.rad_ == y.rad_ ? x.rad_ : 0;
}

QuadNum& QuadNum::operator+=(const QuadNum& rhs) {
    rad_ = merged_radicand(*this, rhs);
    a_ += rhs.a_;
    b_ += rhs.b_;
    return *this;
}

QuadNum& QuadNum::operator-=(const QuadNum& rhs) {
    rad_ = merged_radicand(*this, rhs);
    a_ -= rhs.a_;
    b_ -= rhs.b_;
    return *this;
}

QuadNum& QuadNum::operator*=(const QuadNum& rhs) {
    std::int64_t rad = merged_radicand(*this, rhs);
    if (b_ == 0) {  // rational * general
        b_ = a_ * rhs.b_;
        a_ *= rhs.a_;
        rad_ = rad;
        return *this;
    }
    if (rhs.b_ == 0) {
        a_ *= rhs.a_;
        b_ *= rhs.a_;
        rad_ = rad;
        return *this;
    }
    // (a + b sqrt n)(c + d sqrt n) = (ac + bdn) + (ad + bc) sqrt n
    Rat n(static_cast<long>(rad));
    Rat na = a_ * rhs.a_ + b_ * rhs.b_ * n;
    Rat nb = a_ * rhs.b_ + b_ * rhs.a_;
    a_ = std::move(na);
    b_ = std::move(nb);
    rad_ = rad;
    return *this;
}

QuadNum QuadNum::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in Q(sqrt(n))");
    if (b_ == 0) return QuadNum(1 / a_, Rat(0), rad_);
    Rat n(static_cast<long>(rad_));
    Rat norm = a_ * a_ - n * b_ * b_;  // nonzero: rad is not a perfect square
    return QuadNum(a_ / norm, -b_ / norm, rad_);
}

QuadNum& QuadNum::operator/=(const QuadNum& rhs) { return *this *= rhs.inverse(); }

std::optional<QuadNum> QuadNum::sqrt_in_field() const {
    if (sign() < 0) return std::nullopt;
    if (b_ == 0) {
        // rational target: either sqrt(a) rational, or a/n a rational square
        Rat root;
        if (rat_is_perfect_square(a_, &root)) return QuadNum(root, Rat(0), rad_);
        if (rad_ > 0) {
            Rat quotient = a_ / Rat(static_cast<long>(rad_));
            if (rat_is_perfect_square(quotient, &root)) return QuadNum(Rat(0), root, rad_);
        }
        return std::nullopt;
    }
    // (x + y sqrt n)^2 = a + b sqrt n: x^2 and n y^2 are roots of
    // z^2 - a z + n b^2 / 4, rational iff the norm a^2 - n b^2 is a square
    Rat n(static_cast<long>(rad_));
    Rat norm = a_ * a_ - n * b_ * b_;
    Rat s;
    if (!rat_is_perfect_square(norm, &s)) return std::nullopt;
    const Rat sum_half = (a_ + s) / 2, diff_half = (a_ - s) / 2;
    for (const Rat& x2 : {sum_half, diff_half}) {
        Rat x;
        if (x2 <= 0 || !rat_is_perfect_square(x2, &x)) continue;
        Rat y = b_ / (2 * x);
        QuadNum cand(x, y, rad_);
        if (cand * cand == *this) return cand.sign() >= 0 ? cand : -cand;
    }
    return std::nullopt;
}

int QuadNum::sign() const {
    int sa = sgn(a_), sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;  // sqrt(rad) > 0 whenever b survives canonicalization
    if (sa == sb) return sa;
    // opposite signs: |a| vs |b| sqrt(n) decided by a^2 vs n b^2
    Rat n(static_cast<long>(rad_));
    int cmp = sgn(a_ * a_ - n * b_ * b_);
    if (cmp == 0) return 0;
    return cmp > 0 ? sa : sb;
}

bool operator==(const QuadNum& x, const QuadNum& y) {
    if (x.b_ == 0 && y.b_ == 0) return x.a_ == y.a_;
    if (x.b_ == 0 || y.b_ == 0) return false;  // irrational != rational
    if (x.a_ != y.a_) return false;
    if (x.rad_ == y.rad_) return x.b_ == y.b_;
    // same value across radicand tags iff b_x sqrt(nx) = b_y sqrt(ny)
    return sgn(x.b_) == sgn(y.b_) &&
           x.b_ * x.b_ * Rat(static_cast<long>(x.rad_)) == y.b_ * y.b_ * Rat(static_cast<long>(y.rad_));
}

double QuadNum::to_double() const {
    return rat_to_double(a_) + rat_to_double(b_) * std::sqrt(static_cast<double>(rad_));
}

std::string QuadNum::str() const {
    if (b_ == 0) return rat_str(a_);
    std::string s;
    if (a_ != 0) s = rat_str(a_);
    if (b_ > 0 && !s.empty()) s += "+";
    if (b_ == -1)
        s += "-";
    else if (b_ != 1)
        s += rat_str(b_) + "*";
    s += "sqrt(" + std::to_string(rad_) + ")";
    return s;
}

QuadNum QuadNum::with_radicand(std::int64_t rad) const {
    if (b_ != 0 && rad_ != rad)
        throw std::domain_error("radicand mismatch: cannot re-tag sqrt(" + std::to_string(rad_) +
                                ") as sqrt(" + std::to_string(rad) + ")");
    QuadNum r = *this;
    r.rad_ = rad;
    return r;
}

void to_json(nlohmann::json& j, const QuadNum& x) {
    j = nlohmann::json{{"a", rat_str(x.rational_part())},
                       {"b", rat_str(x.radical_part())},
                       {"n", x.radicand()}};
}

void from_json(const nlohmann::json& j, QuadNum& x) {
    Rat a = parse_rat(j.at("a").get<std::string>());
    Rat b = parse_rat(j.at("b").get<std::string>());
    std::int64_t rad = j.at("n").get<std::int64_t>();
    x = QuadNum(std::move(a), std::move(b), rad);
}

}  // namespace camorph
