#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace fillvol {

using Rational = mpq_class;

// Parses a base-10 "p/q" (or bare integer) token. Returns nullopt on
// malformed input or zero denominator; the result is canonicalized.
std::optional<Rational> parseRational(const std::string& token);

// Canonical "p/q" (or bare integer) form; inverse of parseRational.
std::string emitRational(const Rational& value);

// Nearest rational with denominator 2^bits. Radius grids are seeded with
// these so denominators stay dyadic until clipping introduces cut points.
Rational dyadicApprox(double value, int bits = 24);

// num/den in canonical form. GMP's two-argument constructor does not
// canonicalize, and mpq arithmetic requires canonical operands; always build
// literal fractions through this.
inline Rational ratio(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace fillvol
