#include "camorph/rational.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

namespace camorph {

Rat parse_rat(std::string_view text) {
    // strip surrounding whitespace
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw std::invalid_argument("empty rational literal");

    auto is_int_token = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char ch : s)
            if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
        return true;
    };

    std::string_view num = text, den = "1";
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    if (!is_int_token(num) || !is_int_token(den))
        throw std::invalid_argument("bad rational literal: '" + std::string(text) + "'");

    Int p(std::string(num), 10), q(std::string(den), 10);
    if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rat r(p, q);
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

bool int_is_perfect_square(const Int& m) {
    if (m < 0) return false;
    return mpz_perfect_square_p(m.get_mpz_t()) != 0;
}

Int int_isqrt(const Int& m) {
    if (m < 0) throw std::domain_error("isqrt of negative integer");
    Int r;
    mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
    return r;
}

bool rat_is_perfect_square(const Rat& x, Rat* root) {
    if (x < 0) return false;
    if (!int_is_perfect_square(x.get_num()) || !int_is_perfect_square(x.get_den())) return false;
    if (root) {
        Rat r(int_isqrt(x.get_num()), int_isqrt(x.get_den()));
        r.canonicalize();
        *root = r;
    }
    return true;
}

std::int64_t int_to_i64_checked(const Int& m) {
    if (!m.fits_slong_p())
        throw std::domain_error("integer out of supported range: " + m.get_str());
    long v = m.get_si();
    if (v < std::numeric_limits<std::int64_t>::min() || v > std::numeric_limits<std::int64_t>::max())
        throw std::domain_error("integer out of supported range: " + m.get_str());
    return static_cast<std::int64_t>(v);
}

}  // namespace camorph
