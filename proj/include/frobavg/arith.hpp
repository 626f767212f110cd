#pragma once

#include "frobavg/poly.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace frobavg {

/// Irreducibility of a polynomial of positive degree (Ben-Or: no factor of
/// degree k divides gcd(T^{q^k} - T, f) for k <= deg f / 2).
bool is_irreducible(const Poly& f);

/// All monic irreducibles of degree x, in canonical order.
std::vector<Poly> enumerate_primes(const FieldPtr& field, int x);

/// Number of monic irreducibles of degree x over F_q (necklace count).
BigInt count_monic_irreducibles(std::uint64_t q, int x);

struct Factorization {
    GaloisField::Elem unit = 1;
    std::vector<std::pair<Poly, int>> factors;  // monic primes, canonical order
};

/// Complete factorization; throws std::domain_error for the zero polynomial.
Factorization factor(const Poly& a);
Poly expand(const Factorization& f, const FieldPtr& field);

/// f = c * prod s_i^i with s_i squarefree and pairwise coprime.
/// Returns (i, s_i) for nonconstant s_i.
std::vector<std::pair<int, Poly>> squarefree_decomposition(const Poly& f);
bool is_squarefree(const Poly& f);

/// #(A/aA)^*.
BigInt euler_phi(const Poly& a);
BigInt euler_phi(const Factorization& f);

/// Exact number of monic irreducibles of degree x congruent to `a` modulo m.
std::uint64_t count_primes_in_ap(const FieldPtr& field, int x, const Poly& m, const Poly& a);
std::uint64_t count_primes_in_ap(const std::vector<Poly>& primes, const Poly& m, const Poly& a);

}  // namespace frobavg
