#include "dbx/numeric.hpp"

#include <cctype>

namespace dbx {

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw precondition_error("empty number literal");
    const auto bad = [&]() -> precondition_error {
        return precondition_error("cannot parse number literal \"" + text +
                                  "\" (expected integer, decimal, or p/q)");
    };
    const std::size_t slash = text.find('/');
    if (slash != std::string::npos) {
        try {
            BigInt p(text.substr(0, slash));
            BigInt q(text.substr(slash + 1));
            if (q == 0) throw precondition_error("zero denominator in \"" + text + "\"");
            return Rational(p) / Rational(q);
        } catch (const std::exception&) {
            throw bad();
        }
    }
    std::size_t i = 0;
    if (text[i] == '+' || text[i] == '-') ++i;
    std::string digits;
    long frac_digits = -1;
    for (; i < text.size(); ++i) {
        if (text[i] == '.') {
            if (frac_digits >= 0) throw bad();
            frac_digits = 0;
        } else if (std::isdigit(static_cast<unsigned char>(text[i]))) {
            digits.push_back(text[i]);
            if (frac_digits >= 0) ++frac_digits;
        } else {
            throw bad();
        }
    }
    if (digits.empty()) throw bad();
    BigInt mantissa(digits);
    Rational value(mantissa);
    if (frac_digits > 0) {
        value /= Rational(boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac_digits)));
    }
    if (text[0] == '-') value = -value;
    return value;
}

std::string format_real(const Real& value, unsigned precision_bits) {
    return value.str(bits_to_digits10(precision_bits), std::ios_base::dec);
}

} // namespace dbx
