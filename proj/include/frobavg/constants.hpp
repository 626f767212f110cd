#pragma once

#include "frobavg/arith.hpp"

#include <string>

namespace frobavg {

struct TruncationParams {
    int U = 6;               // max deg r
    int V = 8;               // max deg v
    int max_prime_deg = 12;  // Euler product cutoff
};

/// Defaults for q: U = 6, V = 8, and the largest Euler cutoff <= 12 whose
/// exact product stays within a fixed bit budget (12 for q = 3).
TruncationParams default_truncation(std::uint64_t q);

/// 1/(q^{1/2}(q-1)) for odd x, 1/((q+1)(q-1)) for even x.
HalfPowerRational c_infinity(std::uint64_t q, bool x_odd);

/// kappa(l^k) = 1 for k even, |l| for k odd; v monic.
BigInt kappa(const Poly& v);

enum class CMode { brute, closed };

/// c(a; v, r): the sum of chi_sigma(v) over sigma in (A/v)^* with
/// gcd(sigma r^2 - a^2, v) = 1, chi_sigma(v) the product of Legendre symbols
/// (sigma/l)^k over l^k || v. Requires gcd(r, a) = 1 and v, r monic.
BigInt c_avr(const Poly& a, const Poly& v, const Poly& r, CMode mode = CMode::closed);

/// c(a; l^k, l^j) from the prime-power table; `l_divides_a` selects the row.
BigInt c_prime_power(const BigInt& norm_l, int k, bool l_divides_r, bool l_divides_a);

enum class CRoute { euler, doublesum };

Rational constant_C(const Poly& a, const TruncationParams& params, CRoute route);
inline Rational constant_C(const Poly& a, CRoute route = CRoute::euler) {
    return constant_C(a, default_truncation(a.q()), route);
}

/// Explicit double sum over monic r (deg <= U, gcd(r, a) = 1) and v (deg <= V)
/// using c_avr; the oracle for the generating-function route.
Rational constant_C_explicit(const Poly& a, int U, int V, CMode mode);

/// Upper bound on |C(a) - euler value| for cutoff M.
Rational euler_tail_bound(std::uint64_t q, int M, const Rational& euler_value);
/// Upper bound on |C(a) - double sum| at (U, V), from |c(a;v,r)| <= |v|/kappa(v).
Rational doublesum_tail_bound(std::uint64_t q, int U, int V);
/// sum over alpha, beta >= 0 of 1/(kappa(l^alpha) Q^beta phi(l^{alpha+2beta})), |l| = Q.
Rational doublesum_local_factor(const BigInt& Q);

/// C_inf C(a) q^{x/2} / x.
HalfPowerRational main_term(int x, const Poly& a, const Rational& C_of_a);
HalfPowerRational main_term(int x, const Poly& a, const TruncationParams& params);

}  // namespace frobavg
