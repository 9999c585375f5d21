#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "camorph/rational.hpp"

namespace camorph {

// Exact element a + b*sqrt(rad) of the real quadratic field Q(sqrt(rad)).
// rad is a nonnegative integer shared across a whole algebra; a perfect-square
// radicand is folded into the rational part on construction, so b != 0 implies
// rad is not a perfect square. Mixed-radicand arithmetic is allowed only when
// one operand is rational (b == 0).
class QuadNum {
public:
    QuadNum() : a_(0), b_(0), rad_(0) {}
    QuadNum(long v) : a_(v), b_(0), rad_(0) {}  // NOLINT: implicit by design
    QuadNum(Rat v);                             // NOLINT: implicit by design
    QuadNum(Rat a, Rat b, std::int64_t rad);

    // sqrt(x) for rational x >= 0, exact: rational when x is a perfect
    // square, otherwise (1/q)*sqrt(p*q) for x = p/q in lowest terms.
    static QuadNum sqrt_of(const Rat& x);

    const Rat& rational_part() const { return a_; }
    const Rat& radical_part() const { return b_; }
    std::int64_t radicand() const { return rad_; }
    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    // Exact sign of the real number a + b*sqrt(rad), no floating point:
    // when sgn(a) != sgn(b), compare a^2 against rad*b^2.
    int sign() const;

    bool is_integer() const { return b_ == 0 && rat_is_integer(a_); }
    bool is_nonneg_integer() const { return is_integer() && a_ >= 0; }

    QuadNum conjugate() const { return QuadNum(a_, -b_, rad_); }

    // 1/x via the conjugate: (a - b*sqrt(n)) / (a^2 - n*b^2). Throws on zero.
    QuadNum inverse() const;

    // Exact square root within the same field, when it exists: y >= 0 with
    // y^2 = *this and y in Q(sqrt(rad)). For a + b*sqrt(n) with b != 0 this
    // needs the norm a^2 - n b^2 to be a rational square.
    std::optional<QuadNum> sqrt_in_field() const;

    double to_double() const;
    std::string str() const;

    // Re-tags a rational value with an algebra-level radicand; throws if the
    // value is irrational over a different radicand.
    QuadNum with_radicand(std::int64_t rad) const;

    QuadNum operator-() const { return QuadNum(-a_, -b_, rad_); }
    QuadNum& operator+=(const QuadNum& rhs);
    QuadNum& operator-=(const QuadNum& rhs);
    QuadNum& operator*=(const QuadNum& rhs);
    QuadNum& operator/=(const QuadNum& rhs);

    friend QuadNum operator+(QuadNum lhs, const QuadNum& rhs) { return lhs += rhs; }
    friend QuadNum operator-(QuadNum lhs, const QuadNum& rhs) { return lhs -= rhs; }
    friend QuadNum operator*(QuadNum lhs, const QuadNum& rhs) { return lhs *= rhs; }
    friend QuadNum operator/(QuadNum lhs, const QuadNum& rhs) { return lhs /= rhs; }

    // Exact value equality (works across radicand tags).
    friend bool operator==(const QuadNum& x, const QuadNum& y);
    friend bool operator!=(const QuadNum& x, const QuadNum& y) { return !(x == y); }

private:
    void canonicalize();
    static std::int64_t merged_radicand(const QuadNum& x, const QuadNum& y);

    Rat a_, b_;
    std::int64_t rad_;
};

// {"a": "p/q", "b": "p/q", "n": radicand}
void to_json(nlohmann::json& j, const QuadNum& x);
void from_json(const nlohmann::json& j, QuadNum& x);

}  // namespace camorph
