#include "frobavg/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace frobavg {

namespace {

using Float = boost::multiprecision::mpf_float_100;

bool perfect_square(unsigned long q, unsigned long& root) {
    auto r = static_cast<unsigned long>(std::llround(std::sqrt(static_cast<double>(q))));
    for (unsigned long c = r > 0 ? r - 1 : 0; c <= r + 1; ++c) {
        if (c * c == q) {
            root = c;
            return true;
        }
    }
    return false;
}

std::string render(const Float& f, int digits) {
    return f.str(digits, std::ios_base::fmtflags(0));
}

}  // namespace

BigInt ipow(const BigInt& base, unsigned long exp) {
    return boost::multiprecision::pow(base, static_cast<unsigned>(exp));
}

BigInt ipow(unsigned long base, unsigned long exp) {
    BigInt r;
    mpz_ui_pow_ui(r.backend().data(), base, exp);
    return r;
}

std::string to_string(const BigInt& n) { return n.str(); }

std::string to_decimal(const Rational& r, int digits) {
    Float f(r);
    return render(f, digits);
}

HalfPowerRational::HalfPowerRational(unsigned long q, Rational value, int half_power)
    : q_(q), value_(std::move(value)), half_power_(half_power) {
    if (q_ < 2) throw std::invalid_argument("HalfPowerRational: q must be >= 2");
    normalize();
}

void HalfPowerRational::normalize() {
    unsigned long root = 0;
    if (half_power_ != 0 && perfect_square(q_, root)) {
        Rational scale = Rational(ipow(root, static_cast<unsigned long>(std::abs(half_power_))));
        value_ = half_power_ > 0 ? Rational(value_ * scale) : Rational(value_ / scale);
        half_power_ = 0;
        return;
    }
    while (half_power_ >= 2) {
        value_ *= q_;
        half_power_ -= 2;
    }
    while (half_power_ <= -2) {
        value_ /= q_;
        half_power_ += 2;
    }
}

HalfPowerRational HalfPowerRational::canonical() const {
    HalfPowerRational r = *this;
    if (r.half_power_ == -1) {
        r.value_ /= q_;
        r.half_power_ = 1;
    }
    return r;
}

HalfPowerRational HalfPowerRational::operator*(const HalfPowerRational& o) const {
    if (o.q_ != q_) throw std::invalid_argument("HalfPowerRational: mismatched q");
    return {q_, value_ * o.value_, half_power_ + o.half_power_};
}

HalfPowerRational HalfPowerRational::operator/(const HalfPowerRational& o) const {
    if (o.q_ != q_) throw std::invalid_argument("HalfPowerRational: mismatched q");
    if (o.value_ == 0) throw std::domain_error("HalfPowerRational: division by zero");
    return {q_, value_ / o.value_, half_power_ - o.half_power_};
}

HalfPowerRational HalfPowerRational::operator*(const Rational& r) const {
    return {q_, value_ * r, half_power_};
}

bool HalfPowerRational::operator==(const HalfPowerRational& o) const {
    auto a = canonical();
    auto b = o.canonical();
    return a.q_ == b.q_ && a.half_power_ == b.half_power_ && a.value_ == b.value_;
}

bool HalfPowerRational::is_rational() const { return half_power_ == 0 || value_ == 0; }

Rational HalfPowerRational::to_rational() const {
    if (!is_rational()) throw std::domain_error("HalfPowerRational: value carries sqrt(q)");
    return value_;
}

std::string HalfPowerRational::decimal(int digits) const {
    Float f(value_);
    if (half_power_ != 0) {
        Float s = boost::multiprecision::sqrt(Float(q_));
        f = half_power_ > 0 ? Float(f * s) : Float(f / s);
    }
    return render(f, digits);
}

}  // namespace frobavg
