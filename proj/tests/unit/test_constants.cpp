#include "doctest.h"

#include "frobavg/constants.hpp"

#include <random>

using namespace frobavg;

namespace {

Poly P(const FieldPtr& f, const char* s) { return parse_poly(f, s); }

Rational rabs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace

TEST_CASE("kappa") {
    auto F = GaloisField::create(3);
    CHECK(kappa(P(F, "T")) == 3);
    CHECK(kappa(P(F, "T^2")) == 1);
    CHECK(kappa(P(F, "1")) == 1);
    CHECK(kappa(P(F, "T^3") * P(F, "T+1").pow(2)) == 3);
    CHECK(kappa(P(F, "T^3") * P(F, "T^2+1")) == 27);
}

TEST_CASE("c_avr examples") {
    auto F = GaloisField::create(3);
    const Poly one = P(F, "1"), T = P(F, "T");
    for (auto mode : {CMode::brute, CMode::closed}) {
        CHECK(c_avr(one, T, one, mode) == -1);
        CHECK(c_avr(T, T, one, mode) == 0);
        CHECK(c_avr(one, P(F, "T^2"), T, mode) == 6);
        CHECK(c_avr(one, one, one, mode) == 1);
    }
    CHECK_THROWS_AS(c_avr(T, T, T), std::invalid_argument);
    CHECK_THROWS_AS(c_avr(one, P(F, "2*T"), one), std::invalid_argument);
}

TEST_CASE("c_avr closed form equals the character sum") {
    for (std::uint32_t q : {3u, 5u}) {
        auto F = GaloisField::create(q);
        const int top = q == 3 ? 3 : 2;
        std::vector<Poly> as = {P(F, "0"), P(F, "1"), P(F, "T"), P(F, "T+1"), P(F, "2*T^2+1")};
        std::vector<Poly> rs = {P(F, "1"), P(F, "T"), P(F, "T+1"), P(F, "T^2")};
        for (const auto& a : as)
            for (const auto& r : rs) {
                if (!gcd(r, a).is_one()) continue;
                for (int d = 0; d <= top; ++d)
                    for_each_monic(F, d, [&](const Poly& v) {
                        const BigInt c = c_avr(a, v, r, CMode::brute);
                        CHECK(c == c_avr(a, v, r, CMode::closed));
                        CHECK(abs(c) * kappa(v) <= v.norm());
                    });
            }
    }
}

TEST_CASE("c_avr is multiplicative in v") {
    auto F = GaloisField::create(3);
    std::mt19937_64 rng(5);
    const Poly a = P(F, "T+2"), r = P(F, "T");
    for (int i = 0; i < 40; ++i) {
        Poly v = poly_from_index(F, 1 + rng() % 40).monic();
        Poly w = poly_from_index(F, 1 + rng() % 40).monic();
        if (!gcd(v, w).is_one()) continue;
        CHECK(c_avr(a, v * w, r, CMode::brute) == c_avr(a, v, r, CMode::brute) * c_avr(a, w, r, CMode::brute));
    }
}

TEST_CASE("euler product") {
    auto F = GaloisField::create(3);
    TruncationParams p;
    p.max_prime_deg = 1;
    // three degree-one primes, none dividing 1, each giving 3*5/(8*2)
    const Rational f = Rational(15, 16);
    CHECK(constant_C(P(F, "1"), p, CRoute::euler) == f * f * f);
    // T divides a: that prime contributes 9/8
    CHECK(constant_C(P(F, "T"), p, CRoute::euler) == Rational(9, 8) * f * f);

    // C(0) = zeta_A(2) = 1/(1 - 1/q)
    const Rational c0 = constant_C(P(F, "0"));
    CHECK(rabs(c0 - Rational(3, 2)) <= Rational(1, 59049));
    CHECK(c0 < Rational(3, 2));
    CHECK(default_truncation(3).max_prime_deg == 12);
    CHECK(default_truncation(5).max_prime_deg >= 6);

    // the cutoff tail bound covers the step from M to M + 4
    for (const char* s : {"0", "1", "T", "T^2+1"}) {
        const Poly a = P(F, s);
        TruncationParams lo, hi;
        lo.max_prime_deg = 4;
        hi.max_prime_deg = 8;
        const Rational e4 = constant_C(a, lo, CRoute::euler), e8 = constant_C(a, hi, CRoute::euler);
        CHECK(rabs(e8 - e4) <= euler_tail_bound(3, 4, e4));
    }
}

TEST_CASE("double sum generating function equals the explicit double sum") {
    for (std::uint32_t q : {3u, 5u}) {
        auto F = GaloisField::create(q);
        const int U = q == 3 ? 2 : 1, V = q == 3 ? 3 : 2;
        TruncationParams p;
        p.U = U;
        p.V = V;
        for (const char* s : {"0", "1", "T", "T^2+T"}) {
            const Poly a = P(F, s);
            const Rational gf = constant_C(a, p, CRoute::doublesum);
            CHECK(gf == constant_C_explicit(a, U, V, CMode::closed));
            CHECK(gf == constant_C_explicit(a, U, V, CMode::brute));
        }
    }
}

TEST_CASE("local factor of the majorant") {
    for (unsigned long Q : {3ul, 4ul, 5ul, 7ul, 8ul, 9ul, 11ul, 13ul, 16ul, 25ul, 27ul, 81ul, 243ul, 59049ul}) {
        const Rational g = doublesum_local_factor(Q);
        // (g - 1) Q^2 <= 5 and decreasing in Q
        CHECK((g - 1) * Rational(Q * Q) <= 5);
        // partial sums of the defining series approach g from below
        Rational partial = 0;
        for (int al = 0; al <= 12; ++al)
            for (int be = 0; be <= 6; ++be) {
                const BigInt kap = al % 2 ? BigInt(Q) : BigInt(1);
                const int n = al + 2 * be;
                const BigInt phi = n == 0 ? BigInt(1) : BigInt(ipow(Q, static_cast<unsigned long>(n - 1)) * (Q - 1));
                partial += Rational(BigInt(1), kap * ipow(Q, static_cast<unsigned long>(be)) * phi);
            }
        CHECK(partial < g);
        CHECK(g - partial < Rational(BigInt(1), ipow(Q, 10)));
    }
}

TEST_CASE("routes agree within their tails") {
    for (std::uint32_t q : {3u, 5u}) {
        auto F = GaloisField::create(q);
        const auto params = default_truncation(q);
        const Rational tds = doublesum_tail_bound(q, params.U, params.V);
        CHECK(tds > 0);
        for (const char* s : {"0", "1", "T"}) {
            const Poly a = P(F, s);
            const Rational e = constant_C(a, params, CRoute::euler);
            const Rational d = constant_C(a, params, CRoute::doublesum);
            CHECK(rabs(e - d) <= tds + euler_tail_bound(q, params.max_prime_deg, e));
        }
    }
}

TEST_CASE("c_infinity and main term") {
    CHECK(c_infinity(9, true).to_rational() == Rational(1, 24));
    CHECK(c_infinity(9, false).to_rational() == Rational(1, 80));
    CHECK(c_infinity(3, false).to_rational() == Rational(1, 8));
    const auto odd = c_infinity(3, true);
    CHECK(odd.value() == Rational(1, 2));
    CHECK(odd.half_power() == -1);

    auto F = GaloisField::create(3);
    const auto m = main_term(2, P(F, "0"), Rational(3, 2));
    CHECK(m.is_rational());
    CHECK(m.to_rational() == Rational(9, 32));
    const auto m3 = main_term(3, P(F, "0"), Rational(3, 2));
    CHECK(m3.to_rational() == Rational(3, 4));
    CHECK_THROWS_AS(main_term(0, P(F, "0"), Rational(1)), std::invalid_argument);
}
