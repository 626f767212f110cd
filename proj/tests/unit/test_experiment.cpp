#include "doctest.h"

#include "frobavg/experiment.hpp"

using namespace frobavg;

namespace {

Poly P(const FieldPtr& f, const char* s) { return parse_poly(f, s); }

// direct count: reduce every (g, Delta) of the box mod every prime
Rational naive_S(int x, const BoxSpec& box, const Poly& a, GaloisField::Elem u) {
    const auto& F = a.field_ptr();
    std::vector<Poly> gs, ds;
    for_each_below(F, box.A, [&](const Poly& g) { gs.push_back(g); });
    for_each_below(F, box.B, [&](const Poly& d) {
        if (!d.is_zero()) ds.push_back(d);
    });
    BigInt total = 0;
    for (const auto& p : enumerate_primes(F, x)) {
        auto K = FpField::create(p);
        for (const auto& g : gs)
            for (const auto& d : ds) {
                if (p.divides(d)) continue;
                if (frobenius_charpoly(FiniteDrinfeldModule(K, K->hat(g), K->hat(d))) == CharPolyFrob{a, u}) total += 1;
            }
    }
    return Rational(total, BigInt(gs.size() * ds.size()));
}

std::vector<GaloisField::Elem> admissible_u(const GaloisField& F, int x) {
    std::vector<GaloisField::Elem> out;
    for (GaloisField::Elem u = 1; u < F.order(); ++u)
        if (x % 2 == 1 || !F.is_square(F.neg(F.mul(F.from_int(4), u)))) out.push_back(u);
    return out;
}

}  // namespace

TEST_CASE("box size") {
    CHECK(box_size(3, {1, 1}) == 6);
    CHECK(box_size(5, {2, 3}) == 25 * 124);
    CHECK_THROWS_AS(box_size(3, {0, 1}), std::invalid_argument);
}

TEST_CASE("empirical S against direct reduction") {
    auto F = GaloisField::create(3);
    struct Case {
        int x;
        BoxSpec box;
        const char* a;
        GaloisField::Elem u;
    };
    for (const Case& c : {Case{1, {1, 1}, "0", 2}, Case{1, {1, 1}, "0", 1}, Case{1, {2, 2}, "0", 1},
                          Case{2, {1, 3}, "1", 1}, Case{2, {2, 2}, "2", 1}, Case{3, {2, 1}, "T", 2}}) {
        const Poly a = P(F, c.a);
        CHECK(empirical_S(c.x, c.box, a, c.u) == naive_S(c.x, c.box, a, c.u));
    }
    CHECK_THROWS_AS(empirical_S(2, {2, 2}, P(F, "T"), 1), std::invalid_argument);
    CHECK_THROWS_AS(empirical_S(1, {1, 1}, P(F, "0"), 0), std::invalid_argument);
    CHECK_THROWS_AS(empirical_S(1, {30, 1}, P(F, "0"), 1), std::invalid_argument);
}

TEST_CASE("classnumber S examples") {
    auto F = GaloisField::create(3);
    CHECK(classnumber_S(1, P(F, "0"), 1) == Rational(1, 2));
    auto rows = mass_counts(2, P(F, "1"), 1);
    bool seen = false;
    for (const auto& r : rows)
        if (r.p == P(F, "T^2+1")) {
            CHECK(r.H == 2);
            seen = true;
        }
    CHECK(seen);
    CHECK_THROWS_AS(classnumber_S(2, P(F, "0"), 2), std::invalid_argument);  // -8 = 1 is a square
}

TEST_CASE("full-box identity and the route relation") {
    for (std::uint32_t q : {3u, 5u}) {
        auto F = GaloisField::create(q);
        for (int x = 1; x <= 2; ++x) {
            const BoxSpec box{x, x};
            const BigInt N = ipow(static_cast<unsigned long>(q), static_cast<unsigned long>(x)) - 1;
            for (auto u : admissible_u(*F, x))
                for_each_below(F, (x + 1) / 2, [&](const Poly& a) {
                    CHECK(exact_identity_check(x, box, a, u));
                    // each class of gamma != 0 has N/(q-1) members, each gamma = 0 class N/gcd(N, q^2-1)
                    const auto mass = mass_counts(x, a, u);
                    const BigInt g0 = N / BigInt(std::gcd(static_cast<std::uint64_t>(N), std::uint64_t(q) * q - 1));
                    BigInt expected = 0;
                    for (const auto& r : mass) {
                        REQUIRE(r.I.has_value());
                        CHECK(r.H - *r.I <= q * q - 1);
                        CHECK(*r.I >= 0);
                        expected += *r.I * (N / (q - 1)) + (r.H - *r.I) * g0;
                    }
                    CHECK(empirical_S(x, box, a, u) == Rational(expected, box_size(q, box)));
                    if (x % 2 == 1) CHECK(empirical_S(x, box, a, u) == classnumber_S(x, a, u));
                });
        }
    }
    auto F = GaloisField::create(3);
    CHECK_THROWS_AS(exact_identity_check(1, {2, 1}, P(F, "0"), 1), std::invalid_argument);
}

TEST_CASE("per-u slices are uniform at q=3, x=1, a=0") {
    auto F = GaloisField::create(3);
    CHECK(classnumber_S(1, P(F, "0"), 1) == classnumber_S(1, P(F, "0"), 2));
    CHECK(empirical_S(1, {1, 1}, P(F, "0"), 1) == empirical_S(1, {1, 1}, P(F, "0"), 2));
}

TEST_CASE("L-value form") {
    auto F = GaloisField::create(3);
    // odd x: the class number formula carries through exactly
    for (int x : {1, 3}) {
        auto rows = mass_counts(x, P(F, "0"), 1);
        for (const auto& r : rows) CHECK(r.formula_consistent);
        CHECK(l_value_form(x, rows).to_rational() == classnumber_S(x, P(F, "0"), 1));
    }
    // even x with nonconstant fundamental parts: the form is half the class-number sum
    auto rows = mass_counts(2, P(F, "0"), 1);
    CHECK(2 * l_value_form(2, rows).to_rational() == classnumber_S(2, P(F, "0"), 1));
}

TEST_CASE("threads do not change results") {
    auto F = GaloisField::create(3);
    const Poly a = P(F, "1");
    CHECK(empirical_S(3, {2, 3}, a, 1, 1) == empirical_S(3, {2, 3}, a, 1, 3));
    ClassNumberCache c1, c2;
    CHECK(classnumber_S(4, a, 1, &c1, 1) == classnumber_S(4, a, 1, &c2, 4));
}

TEST_CASE("run_experiment") {
    ExperimentConfig cfg;
    cfg.q = 3;
    cfg.x = 3;
    cfg.a = "1";
    cfg.u = 2;
    cfg.threads = 2;
    ClassNumberCache cache;
    const auto r1 = run_experiment(cfg, &cache);
    const auto r2 = run_experiment(cfg);
    CHECK(to_json(r1).dump() == to_json(r2).dump());
    CHECK(r1.exact_identity.value());
    CHECK(*r1.empirical_S == *r1.classnumber_S);
    CHECK(r1.main_term->half_power() == 0);
    const auto j = to_json(r1);
    CHECK(j["schema"] == 1);
    CHECK(j["hypotheses"]["label"] == "outside theorem hypotheses");
    CHECK(j["primes"].size() == 8);

    auto F17 = GaloisField::create(17);
    CHECK(hypothesis_flags(17, 4, {8, 8}, P(F17, "T")).within());
    CHECK_FALSE(hypothesis_flags(3, 4, {8, 8}, P(GaloisField::create(3), "T")).within());
    CHECK_FALSE(hypothesis_flags(17, 4, {2, 2}, P(F17, "T")).within());

    const auto csv = to_csv({r1});
    CHECK(csv.rfind("x,route,num,den,half_power,decimal\n", 0) == 0);
    CHECK(csv.find("3,main,") != std::string::npos);

    cfg.u = 0;
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
    cfg.u = 2;
    cfg.x = 2;
    cfg.a = "0";
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}
