#pragma once

#include "frobavg/galois_field.hpp"
#include "frobavg/rational.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace frobavg {

/// An element of A = F_q[T], little-endian coefficients, no trailing zeros.
class Poly {
public:
    using Elem = GaloisField::Elem;

    /// deg(0).
    static constexpr int kDegreeOfZero = std::numeric_limits<int>::min();

    explicit Poly(FieldPtr field);
    Poly(FieldPtr field, std::vector<Elem> coeffs);

    static Poly constant(FieldPtr field, Elem c);
    static Poly monomial(FieldPtr field, Elem c, int k);
    static Poly T(FieldPtr field) { return monomial(std::move(field), 1, 1); }
    /// Integer-coefficient shorthand, e.g. from_ints(f, {1, 0, 1}) = T^2 + 1.
    static Poly from_ints(FieldPtr field, std::initializer_list<std::int64_t> coeffs);

    const FieldPtr& field_ptr() const { return field_; }
    const GaloisField& field() const { return *field_; }
    std::uint32_t q() const { return field_->order(); }

    int degree() const { return c_.empty() ? kDegreeOfZero : static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    /// Leading coefficient; sgn(0) = 0.
    Elem sgn() const { return c_.empty() ? 0 : c_.back(); }
    Elem coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0; }
    const std::vector<Elem>& coeffs() const { return c_; }

    /// |a| = q^deg a, |0| = 0.
    BigInt norm() const;

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator/(const Poly& o) const { return divrem(*this, o).first; }
    Poly operator%(const Poly& o) const;
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly scaled(Elem c) const;
    Poly monic() const;
    Poly derivative() const;
    Elem eval(Elem x) const;
    Poly pow(unsigned e) const;

    /// Divisibility test; divisor must be nonzero.
    bool divides(const Poly& other) const;

    static std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);

    /// Canonical order: by degree, then lexicographic on the coefficient sequence.
    std::strong_ordering operator<=>(const Poly& o) const;
    bool operator==(const Poly& o) const;

    std::size_t hash() const;

private:
    void trim();
    void check_field(const Poly& o) const;

    FieldPtr field_;
    std::vector<Elem> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

struct ExtendedGcd {
    Poly g, s, t;  // g = s*a + t*b, g monic (or zero)
};
ExtendedGcd ext_gcd(const Poly& a, const Poly& b);

/// base^e mod m.
Poly powmod(const Poly& base, const BigInt& e, const Poly& m);
Poly powmod(const Poly& base, std::uint64_t e, const Poly& m);

/// Integer encoding of a polynomial of degree < n: sum c_i q^i.
std::uint64_t poly_index(const Poly& p);
Poly poly_from_index(FieldPtr field, std::uint64_t index);

/// Calls fn on every monic polynomial of degree `degree`, in canonical order.
void for_each_monic(const FieldPtr& field, int degree, const std::function<void(const Poly&)>& fn);
/// Calls fn on every polynomial of degree < `bound` (including 0), in index order.
void for_each_below(const FieldPtr& field, int bound, const std::function<void(const Poly&)>& fn);

struct PolyHash {
    std::size_t operator()(const Poly& p) const { return p.hash(); }
};

/// Sparse text form, e.g. `T^2+2*T+1`; zero is `0`.
std::string format_poly(const Poly& p);
/// Parses the sparse form (integer or `g^j` coefficients, `+`/`-` separated
/// terms) or the compact little-endian form `[c0,c1,...]`.
Poly parse_poly(const FieldPtr& field, const std::string& text);

}  // namespace frobavg
