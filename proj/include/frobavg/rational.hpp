#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>

namespace frobavg {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

BigInt ipow(const BigInt& base, unsigned long exp);
BigInt ipow(unsigned long base, unsigned long exp);

std::string to_string(const BigInt& n);
/// Decimal rendering with `digits` significant digits.
std::string to_decimal(const Rational& r, int digits = 30);

/// Exact value `value * q^(half_power/2)`.
///
/// Carries the half-integral powers of q that appear in C_infinity and the
/// main term without ever rounding. When q is a perfect square the half
/// power is folded into the rational part.
class HalfPowerRational {
public:
    HalfPowerRational() = default;
    HalfPowerRational(unsigned long q, Rational value, int half_power = 0);

    unsigned long q() const { return q_; }
    const Rational& value() const { return value_; }
    int half_power() const { return half_power_; }

    /// Same number with half_power in {0, 1}; used for comparisons and output.
    HalfPowerRational canonical() const;

    HalfPowerRational operator*(const HalfPowerRational& o) const;
    HalfPowerRational operator/(const HalfPowerRational& o) const;
    HalfPowerRational operator*(const Rational& r) const;

    bool operator==(const HalfPowerRational& o) const;

    /// Exact rational value; throws std::domain_error when a sqrt(q) remains.
    Rational to_rational() const;
    bool is_rational() const;

    std::string decimal(int digits = 30) const;

private:
    void normalize();

    unsigned long q_ = 1;
    Rational value_{0};
    int half_power_ = 0;
};

}  // namespace frobavg
