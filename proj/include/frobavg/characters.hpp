#pragma once

#include "frobavg/drinfeld.hpp"

#include <map>
#include <vector>

namespace frobavg {

/// Element of Z[zeta_n], stored as integer coefficients of zeta^0..zeta^{n-1}
/// (i.e. modulo X^n - 1). Equality means equality in Z[zeta_n], tested by
/// reducing modulo the n-th cyclotomic polynomial.
class Cyclotomic {
public:
    explicit Cyclotomic(std::uint64_t n);
    static Cyclotomic root(std::uint64_t n, std::uint64_t k);
    static Cyclotomic integer(std::uint64_t n, const BigInt& c);

    std::uint64_t order() const { return n_; }
    const std::vector<BigInt>& coeffs() const { return c_; }

    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic scaled(const BigInt& c) const;
    /// Complex conjugate: zeta -> zeta^{-1}.
    Cyclotomic conj() const;
    void add_root(std::uint64_t k, const BigInt& c = 1);

    bool is_zero() const;
    bool operator==(const Cyclotomic& o) const { return (*this - o).is_zero(); }
    /// The rational integer this equals, if any.
    std::optional<BigInt> as_integer() const;

    /// Real part under zeta = exp(2 pi i / n), as a decimal string.
    std::string real_decimal(int digits = 30) const;
    /// Sign of the real number this equals; requires conj() == *this.
    /// Exact: zero is detected algebraically, a nonzero value is separated
    /// from 0 by 1/H^{phi(n)-1} with H the coefficient 1-norm.
    int real_sign() const;

private:
    std::vector<BigInt> reduced() const;

    std::uint64_t n_;
    std::vector<BigInt> c_;
};

/// Integer coefficients of the n-th cyclotomic polynomial, low degree first.
std::vector<BigInt> cyclotomic_polynomial(std::uint64_t n);

/// chi(gen^j) = zeta^{k j} with gen the generator of the log tables of F_p
/// and zeta = exp(2 pi i / (|p| - 1)).
class DirichletCharModP {
public:
    DirichletCharModP(FpPtr field, std::uint64_t k);

    const FpField& field() const { return *field_; }
    std::uint64_t exponent() const { return k_; }
    std::uint64_t order() const { return field_->order() - 1; }
    bool is_principal() const { return k_ == 0; }

    /// Exponent e with chi(n) = zeta^e, or nullopt when p | n.
    std::optional<std::uint64_t> exponent_at(const Poly& n) const;
    Cyclotomic operator()(const Poly& n) const;

private:
    FpPtr field_;
    std::uint64_t k_;
};

/// All |p| - 1 characters, principal first.
std::vector<DirichletCharModP> all_characters(const FpPtr& field);

/// sum of chi(f) over monic f with z' <= deg f <= z.
Cyclotomic char_sum(const DirichletCharModP& chi, int z_lo, int z_hi);

/// |S|^2 <= q^z 4^x for S = char_sum(chi, z', z).
bool char_sum_bound_holds(const DirichletCharModP& chi, int z_lo, int z_hi);

/// sum_chi |sum_n a_n chi(n)|^2 == phi(p) sum_{f coprime to p} |sum_{n = f mod p} a_n|^2.
/// Keys of `coefficients` are monic.
bool orthogonality_check(const FpPtr& field, const std::map<Poly, BigInt>& coefficients);

struct OrthogonalitySides {
    BigInt lhs;
    BigInt rhs;
};
OrthogonalitySides orthogonality_sides(const FpPtr& field, const std::map<Poly, BigInt>& coefficients);

}  // namespace frobavg
