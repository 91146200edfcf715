#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdint>
#include <string>

#include "dbx/errors.hpp"

namespace dbx {

// Variable-precision binary float. Precision is set per thread via
// precision_scope before any values are created.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

inline unsigned bits_to_digits10(unsigned bits) {
    return static_cast<unsigned>(bits * 0.3010299956639812) + 3;
}

// Sets the working precision for Real values created in this thread while
// alive, restoring the previous precision on destruction.
class precision_scope {
public:
    explicit precision_scope(unsigned precision_bits)
        : saved_(Real::default_precision()) {
        Real::default_precision(bits_to_digits10(precision_bits));
    }
    ~precision_scope() { Real::default_precision(saved_); }
    precision_scope(const precision_scope&) = delete;
    precision_scope& operator=(const precision_scope&) = delete;

private:
    unsigned saved_;
};

// Parses "p/q", an integer, or a plain decimal ("1.5", "-0.25") exactly.
// Scientific notation is rejected; decimals become p/10^k.
Rational parse_rational(const std::string& text);

// Decimal rendering with enough digits for the given binary precision.
std::string format_real(const Real& value, unsigned precision_bits);

// ---- scalar adaptors so numeric kernels can run on double, Real or Rational ----

template <typename S>
struct scalar_ops;

template <>
struct scalar_ops<double> {
    static double from_rational(const Rational& r) { return static_cast<double>(r); }
    static double from_long(long v) { return static_cast<double>(v); }
    static double abs(double v) { return std::fabs(v); }
    static constexpr bool exact = false;
    static double epsilon(unsigned /*precision_bits*/) { return 0x1p-50; }
};

template <>
struct scalar_ops<Real> {
    static Real from_rational(const Rational& r) { return Real(r); }
    static Real from_long(long v) { return Real(v); }
    static Real abs(const Real& v) { return boost::multiprecision::abs(v); }
    static constexpr bool exact = false;
    static Real epsilon(unsigned precision_bits) {
        return boost::multiprecision::ldexp(Real(1), -static_cast<int>(precision_bits) + 2);
    }
};

template <>
struct scalar_ops<Rational> {
    static Rational from_rational(const Rational& r) { return r; }
    static Rational from_long(long v) { return Rational(v); }
    static Rational abs(const Rational& v) { return boost::multiprecision::abs(v); }
    static constexpr bool exact = true;
    static Rational epsilon(unsigned /*precision_bits*/) { return Rational(0); }
};

} // namespace dbx
