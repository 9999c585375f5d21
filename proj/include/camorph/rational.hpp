#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace camorph {

using Int = mpz_class;
using Rat = mpq_class;

// Parses "p", "-p" or "p/q" (lowest terms not required). Throws
// std::invalid_argument on anything else, including a zero denominator.
Rat parse_rat(std::string_view text);

// "p" when the denominator is 1, "p/q" otherwise. Inverse of parse_rat.
std::string rat_str(const Rat& x);

inline bool rat_is_integer(const Rat& x) { return x.get_den() == 1; }

inline double rat_to_double(const Rat& x) { return x.get_d(); }

bool int_is_perfect_square(const Int& m);

// Floor of the square root; m must be nonnegative.
Int int_isqrt(const Int& m);

// True iff x = (p/q)^2 for a rational p/q; if so *root is set to p/q >= 0.
bool rat_is_perfect_square(const Rat& x, Rat* root = nullptr);

std::int64_t int_to_i64_checked(const Int& m);

}  // namespace camorph
