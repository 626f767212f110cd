#pragma once

#include "frobavg/arith.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace frobavg {

/// d = f^2 D with f monic and D squarefree (sgn D = sgn d).
struct DiscriminantDecomp {
    Poly d;
    Poly f;
    Poly D;
    Factorization f_factors;  // primes of f with their exponents
    Factorization D_factors;
};

DiscriminantDecomp decompose_discriminant(const Poly& d);

/// deg D odd, or deg D even with sgn D a nonsquare. Throws on d = 0.
bool is_imaginary_discriminant(const Poly& d);

/// c^2 d with sgn in {1, smallest nonsquare}; h and chi are unchanged.
Poly canonical_discriminant(const Poly& d);

/// Legendre symbol (D / l) for a monic prime l, by Euler's criterion.
int legendre(const Poly& D, const Poly& l);

/// The quadratic character chi_d, completely multiplicative.
class QuadChar {
public:
    /// Throws std::invalid_argument unless d is an imaginary discriminant.
    explicit QuadChar(const Poly& d);

    const DiscriminantDecomp& decomposition() const { return dec_; }
    int at_prime(const Poly& l) const;
    int operator()(const Poly& n) const;

private:
    DiscriminantDecomp dec_;
    mutable std::mutex mu_;
    mutable std::map<Poly, int> cache_;
};

int chi(const Poly& d, const Poly& n);

/// Coefficients c(k) of L(u, chi_d) = sum_k c(k) u^k for k < deg d.
///
/// Computed from point counts S_m = sum_{alpha in F_{q^m}} eta(D(alpha)) and
/// the functional equation, times the local factors at primes dividing f.
/// For nonconstant D the series is a polynomial of degree < deg d; for a
/// constant D the truncation is returned.
std::vector<BigInt> l_coefficients(const Poly& d);

/// Same coefficients by summing chi_d(n) over monic n of each degree; slow.
std::vector<BigInt> l_coefficients_direct(const Poly& d, int count);

/// sum_{k < deg d} c(k) q^{-k}. Throws for non-imaginary d.
Rational l_value_at_one(const Poly& d);

/// Concurrent memo of h keyed by canonical discriminant, with a text file form
/// of one `canonical-d<TAB>h` record per line.
class ClassNumberCache {
public:
    std::optional<BigInt> find(const Poly& canonical_d) const;
    void insert(const Poly& canonical_d, const BigInt& h);
    std::size_t size() const;

    void load(const std::string& path, const FieldPtr& field);
    void save(const std::string& path) const;

private:
    mutable std::mutex mu_;
    std::map<std::string, BigInt> map_;
};

/// h(d). Class number formula for nonconstant fundamental part, ratio formula
/// from h(D) = 1 with unit index q+1 when D is a constant.
BigInt class_number(const Poly& d, ClassNumberCache* cache = nullptr);

/// h(d) via h(D) and the ratio formula with unit index 1 (nonconstant D only).
Rational class_number_ratio_route(const Poly& d);
/// q^{(deg d-1)/2} L or 2 q^{deg d/2}/(q+1) L, as an exact rational.
Rational class_number_formula_route(const Poly& d);

/// a^2 - 4up.
Poly mass_discriminant(const Poly& a, GaloisField::Elem u, const Poly& p);

/// Throws std::invalid_argument if (a, u, p) is outside the mass formula's hypotheses.
void check_mass_arguments(const Poly& a, GaloisField::Elem u, const Poly& p);

/// H_p = sum over monic f with f^2 | a^2 - 4up of h((a^2 - 4up)/f^2).
BigInt hurwitz_mass(const Poly& a, GaloisField::Elem u, const Poly& p, ClassNumberCache* cache = nullptr);

/// Monic f with f^2 | d.
std::vector<Poly> square_divisors(const Poly& d);

}  // namespace frobavg
