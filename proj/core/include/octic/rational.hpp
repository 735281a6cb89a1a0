#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace octic {

using Integer = mpz_class;
/// Arbitrary-precision rational, always canonical (lowest terms, positive denominator).
using Rat = mpq_class;

Rat make_rat(long num, long den = 1);

/// Parses "p/q" or "p" (decimal). Throws std::invalid_argument on malformed input.
Rat parse_rat(std::string_view text);

/// Canonical "p/q" form; integers are written with denominator 1.
std::string format_rat(const Rat& r);

inline int sign(const Rat& r) { return sgn(r); }
inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

/// Nonnegative rational square root if one exists.
std::optional<Rat> rat_sqrt(const Rat& r);

Integer floor_rat(const Rat& r);

}  // namespace octic
