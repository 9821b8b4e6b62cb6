#include "fillvol/rational.hpp"

#include <cmath>

namespace fillvol {

std::optional<Rational> parseRational(const std::string& token) {
    if (token.empty()) return std::nullopt;
    const auto slash = token.find('/');
    try {
        mpz_class num, den;
        if (slash == std::string::npos) {
            if (num.set_str(token, 10) != 0) return std::nullopt;
            den = 1;
        } else {
            if (slash == 0 || slash + 1 >= token.size()) return std::nullopt;
            if (num.set_str(token.substr(0, slash), 10) != 0) return std::nullopt;
            if (den.set_str(token.substr(slash + 1), 10) != 0) return std::nullopt;
            if (den == 0) return std::nullopt;
        }
        Rational q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

std::string emitRational(const Rational& value) {
    return value.get_str();
}

Rational dyadicApprox(double value, int bits) {
    if (!std::isfinite(value)) value = 0.0;
    while (bits > 0 && std::abs(std::ldexp(value, bits)) >= 0x1.0p62) --bits;
    mpz_class den = 1;
    den <<= bits;
    const double scaled = std::round(std::ldexp(value, bits));
    mpz_class num;
    num = static_cast<long>(scaled);
    Rational q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace fillvol
