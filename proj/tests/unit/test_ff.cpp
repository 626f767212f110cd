#include "doctest.h"

#include "frobavg/arith.hpp"
#include "frobavg/residue_field.hpp"

#include <random>
#include <set>

using namespace frobavg;

namespace {

Poly P(const FieldPtr& f, const char* s) { return parse_poly(f, s); }

// Independent irreducibility oracle: trial division by every monic polynomial
// of degree 1..deg/2.
bool irreducible_by_trial_division(const Poly& f) {
    bool found = false;
    for (int d = 1; 2 * d <= f.degree() && !found; ++d)
        for_each_monic(f.field_ptr(), d, [&](const Poly& g) {
            if (!found && (f % g).is_zero()) found = true;
        });
    return !found;
}

long long mobius_count(long long q, int x) {
    auto mu = [](int n) {
        int r = 1;
        for (int p = 2; p <= n; ++p) {
            if (n % p) continue;
            n /= p;
            if (n % p == 0) return 0;
            r = -r;
        }
        return r;
    };
    long long total = 0;
    for (int d = 1; d <= x; ++d) {
        if (x % d) continue;
        long long pw = 1;
        for (int i = 0; i < x / d; ++i) pw *= q;
        total += mu(d) * pw;
    }
    return total / x;
}

Poly random_poly(const FieldPtr& f, std::mt19937_64& rng, int max_deg) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<std::uint32_t> coef(0, f->order() - 1);
    std::vector<GaloisField::Elem> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : c) x = coef(rng);
    return Poly(f, c);
}

}  // namespace

TEST_CASE("galois field axioms hold exhaustively for small q") {
    for (std::uint32_t q : {3u, 5u, 9u, 25u, 27u}) {
        auto F = GaloisField::create(q);
        CHECK(F->order() == q);
        for (GaloisField::Elem a = 0; a < q; ++a) {
            CHECK(F->add(a, F->neg(a)) == 0);
            if (a != 0) CHECK(F->mul(a, F->inv(a)) == 1);
            for (GaloisField::Elem b = 0; b < q; ++b) {
                CHECK(F->add(a, b) == F->add(b, a));
                for (GaloisField::Elem c = 0; c < q; c += (q > 9 ? 4 : 1))
                    CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
            }
        }
        // squares: (q+1)/2 values including 0
        std::set<GaloisField::Elem> squares;
        for (GaloisField::Elem a = 0; a < q; ++a) squares.insert(F->mul(a, a));
        CHECK(squares.size() == (q + 1) / 2);
    }
    CHECK_THROWS(GaloisField::create(4));
    CHECK_THROWS(GaloisField::create(15));
}

TEST_CASE("poly core conventions") {
    auto F = GaloisField::create(3);
    Poly zero(F);
    CHECK(zero.degree() == Poly::kDegreeOfZero);
    CHECK(zero.norm() == 0);
    CHECK(zero.sgn() == 0);
    CHECK(gcd(P(F, "T^2+2*T"), P(F, "T")) == P(F, "T"));
    CHECK(P(F, "T^3+1").norm() == 27);
    CHECK(P(F, "2*T^2+1").sgn() == 2);
    CHECK_FALSE(P(F, "2*T^2+1").is_monic());
    CHECK_THROWS_AS(Poly::divrem(P(F, "T"), zero), std::domain_error);

    auto [q, r] = Poly::divrem(P(F, "T^4+T+2"), P(F, "2*T^2+1"));
    CHECK(r.degree() < 2);
    CHECK(q * P(F, "2*T^2+1") + r == P(F, "T^4+T+2"));
}

TEST_CASE("poly text format") {
    auto F = GaloisField::create(3);
    CHECK(format_poly(P(F, "T^2 + 2*T + 1")) == "T^2+2*T+1");
    CHECK(format_poly(P(F, "[1,2,1]")) == "T^2+2*T+1");
    CHECK(format_poly(P(F, "T-1")) == "T+2");
    CHECK(format_poly(Poly(F)) == "0");
    CHECK_THROWS(parse_poly(F, "T^"));
    CHECK_THROWS(parse_poly(F, "3*T"));

    auto F9 = GaloisField::create(9);
    auto g = F9->generator();
    Poly p = Poly::monomial(F9, g, 2) + Poly::constant(F9, F9->pow(g, 5));
    CHECK(format_poly(p) == "g*T^2+g^5");
    CHECK(parse_poly(F9, "g*T^2+g^5") == p);

    std::mt19937_64 rng(7);
    for (auto field : {F, F9, GaloisField::create(25)}) {
        for (int i = 0; i < 200; ++i) {
            Poly a = random_poly(field, rng, 6);
            CHECK(parse_poly(field, format_poly(a)) == a);
        }
    }
}

TEST_CASE("enumerate_primes") {
    auto F = GaloisField::create(3);
    auto p1 = enumerate_primes(F, 1);
    REQUIRE(p1.size() == 3);
    CHECK(p1[0] == P(F, "T"));
    CHECK(p1[1] == P(F, "T+1"));
    CHECK(p1[2] == P(F, "T+2"));

    auto p2 = enumerate_primes(F, 2);
    CHECK(p2.size() == 3);
    CHECK(std::find(p2.begin(), p2.end(), P(F, "T^2+1")) != p2.end());
    std::size_t brute = 0;
    for_each_monic(F, 2, [&](const Poly& f) { brute += irreducible_by_trial_division(f) ? 1 : 0; });
    CHECK(brute == 3);
    CHECK(std::is_sorted(p2.begin(), p2.end()));
    CHECK_THROWS(enumerate_primes(F, 0));

    for (std::uint32_t q : {3u, 5u}) {
        auto Fq = GaloisField::create(q);
        for (int x = 1; x <= 6; ++x) {
            auto primes = enumerate_primes(Fq, x);
            CHECK(static_cast<long long>(primes.size()) == mobius_count(q, x));
            CHECK(count_monic_irreducibles(q, x) == mobius_count(q, x));
            std::set<std::uint64_t> seen;
            for (const auto& p : primes) seen.insert(poly_index(p));
            CHECK(seen.size() == primes.size());
        }
    }
    // Ben-Or agrees with trial division over all monic polynomials of degree <= 4 over F_3
    for (int d = 1; d <= 4; ++d)
        for_each_monic(F, d, [&](const Poly& f) { CHECK(is_irreducible(f) == irreducible_by_trial_division(f)); });
}

TEST_CASE("factor") {
    auto F = GaloisField::create(3);
    auto f1 = factor(P(F, "T^2+2*T"));
    CHECK(f1.unit == 1);
    REQUIRE(f1.factors.size() == 2);
    CHECK(f1.factors[0] == std::make_pair(P(F, "T"), 1));
    CHECK(f1.factors[1] == std::make_pair(P(F, "T+2"), 1));

    auto f2 = factor(P(F, "2*T^2"));
    CHECK(f2.unit == 2);
    REQUIRE(f2.factors.size() == 1);
    CHECK(f2.factors[0] == std::make_pair(P(F, "T"), 2));

    auto f3 = factor(P(F, "T^2+1"));
    REQUIRE(f3.factors.size() == 1);
    CHECK(f3.factors[0] == std::make_pair(P(F, "T^2+1"), 1));

    CHECK_THROWS_AS(factor(Poly(F)), std::domain_error);

    // p-th powers and mixed multiplicities
    auto f4 = factor(P(F, "T^3+2").pow(2) * P(F, "T^2+1"));
    REQUIRE(f4.factors.size() == 2);
    CHECK(f4.factors[0] == std::make_pair(P(F, "T+2"), 6));

    // randomized round trip: factor(product of primes) recovers the product
    for (std::uint32_t q : {3u, 5u, 9u}) {
        auto Fq = GaloisField::create(q);
        std::vector<Poly> pool;
        for (int d = 1; d <= 3; ++d)
            for (auto& p : enumerate_primes(Fq, d)) pool.push_back(p);
        std::mt19937_64 rng(q);
        for (int trial = 0; trial < 60; ++trial) {
            std::map<std::uint64_t, std::pair<Poly, int>> chosen;
            int n = 1 + static_cast<int>(rng() % 4);
            for (int i = 0; i < n; ++i) {
                const Poly& p = pool[rng() % pool.size()];
                auto key = poly_index(p) + (static_cast<std::uint64_t>(p.degree()) << 40);
                auto it = chosen.find(key);
                if (it == chosen.end())
                    chosen.emplace(key, std::make_pair(p, 1 + static_cast<int>(rng() % 4)));
                else
                    it->second.second += 1;
            }
            Factorization expect;
            expect.unit = static_cast<GaloisField::Elem>(1 + rng() % (q - 1));
            for (auto& [k, v] : chosen) expect.factors.push_back(v);
            std::sort(expect.factors.begin(), expect.factors.end(),
                      [](const auto& l, const auto& r) { return l.first < r.first; });
            Poly product = expand(expect, Fq);
            auto got = factor(product);
            CHECK(got.unit == expect.unit);
            CHECK(got.factors == expect.factors);
        }
    }
}

TEST_CASE("euler_phi") {
    auto F = GaloisField::create(3);
    CHECK(euler_phi(P(F, "T")) == 2);
    CHECK(euler_phi(P(F, "T^2")) == 6);
    CHECK_THROWS(euler_phi(Poly(F)));

    // brute-force count of units for small moduli
    for (int d = 1; d <= 3; ++d)
        for_each_monic(F, d, [&](const Poly& m) {
            long long units = 0;
            for_each_below(F, d, [&](const Poly& r) { units += gcd(r, m).is_one() ? 1 : 0; });
            CHECK(euler_phi(m) == units);
        });

    // phi(vw) = phi(v) phi(w) gcd / phi(gcd), exhaustive over monic v, w of degree <= 3
    std::vector<Poly> monics;
    for (int d = 0; d <= 3; ++d) for_each_monic(F, d, [&](const Poly& m) { monics.push_back(m); });
    for (const auto& v : monics)
        for (const auto& w : monics) {
            Poly g = gcd(v, w);
            Rational lhs(euler_phi(v * w));
            Rational rhs = Rational(euler_phi(v) * euler_phi(w)) * Rational(g.norm()) / Rational(euler_phi(g));
            CHECK(lhs == rhs);
            if (g.is_one()) CHECK(euler_phi(v * w) == euler_phi(v) * euler_phi(w));
        }
}

TEST_CASE("count_primes_in_ap") {
    auto F = GaloisField::create(3);
    CHECK(count_primes_in_ap(F, 1, P(F, "T"), P(F, "1")) == 1);
    CHECK(count_primes_in_ap(F, 2, P(F, "T+1"), P(F, "1")) == 1);
    CHECK_THROWS_AS(count_primes_in_ap(F, 2, P(F, "T"), P(F, "T")), std::invalid_argument);
    // residues partition the coprime primes
    auto primes = enumerate_primes(F, 4);
    std::uint64_t total = 0;
    for_each_below(F, 2, [&](const Poly& r) {
        if (gcd(r, P(F, "T^2+1")).is_one()) total += count_primes_in_ap(primes, P(F, "T^2+1"), r);
    });
    CHECK(total == primes.size());
}

TEST_CASE("residue field frobenius fixes the field") {
    for (std::uint32_t q : {3u, 9u}) {
        auto F = GaloisField::create(q);
        for (int x = 1; x <= 2; ++x) {
            for (const auto& p : enumerate_primes(F, x)) {
                ResidueField R(p);
                const BigInt qx = R.order();
                for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(qx); ++i) {
                    auto a = R.from_index(i);
                    CHECK(R.pow(a, qx) == a);
                    CHECK(R.frobenius(a, 1) == R.pow(a, BigInt(q)));
                    CHECK(R.frobenius(a, x) == a);
                    if (!R.is_zero(a)) CHECK(R.mul(a, R.inv(a)) == R.one());
                }
            }
        }
    }
    auto F = GaloisField::create(3);
    CHECK_THROWS_AS(ResidueField(P(F, "T^2+2*T")), std::invalid_argument);
    CHECK_THROWS_AS(ResidueField(P(F, "2*T+1")), std::invalid_argument);
}

TEST_CASE("tabulated residue field matches residue arithmetic") {
    auto F = GaloisField::create(3);
    ResidueField R(P(F, "T^3+2*T+1"));
    auto G = tabulate(R);
    CHECK(G->order() == 27);
    for (std::uint32_t a = 0; a < 27; ++a)
        for (std::uint32_t b = 0; b < 27; ++b) {
            CHECK(G->mul(a, b) == R.index(R.mul(R.from_index(a), R.from_index(b))));
            CHECK(G->add(a, b) == R.index(R.add(R.from_index(a), R.from_index(b))));
        }
}
