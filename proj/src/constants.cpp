#include "frobavg/constants.hpp"

#include "frobavg/quadratic.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace frobavg {

namespace {

// bit budget for the exact Euler product numerator
constexpr double kEulerBitBudget = 8.0 * 1024 * 1024;
// eps(Q) = g(Q) - 1 <= kLocalG / Q^2 for every Q >= 3 (checked by the tests)
constexpr unsigned kLocalG = 5;

BigInt phi_prime_power(const BigInt& Q, int n) {
    if (n == 0) return 1;
    return ipow(Q, static_cast<unsigned long>(n - 1)) * (Q - 1);
}

Rational rpow(const Rational& r, const BigInt& e) {
    if (e == 0) return 1;
    const auto n = static_cast<unsigned long>(e);
    return Rational(ipow(numerator(r), n), ipow(denominator(r), n));
}

// Truncated series in X (deg r) and Y (deg v).
struct Bivar {
    int U, V;
    std::vector<Rational> c;

    Bivar(int u, int v) : U(u), V(v), c(static_cast<std::size_t>((u + 1) * (v + 1)), 0) {}
    static Bivar one(int u, int v) {
        Bivar b(u, v);
        b.c[0] = 1;
        return b;
    }
    Rational& at(int i, int j) { return c[static_cast<std::size_t>(i * (V + 1) + j)]; }
    const Rational& at(int i, int j) const { return c[static_cast<std::size_t>(i * (V + 1) + j)]; }

    Bivar operator*(const Bivar& o) const {
        Bivar r(U, V);
        for (int i = 0; i <= U; ++i)
            for (int j = 0; j <= V; ++j) {
                const Rational& a = at(i, j);
                if (a == 0) continue;
                for (int k = 0; i + k <= U; ++k)
                    for (int l = 0; j + l <= V; ++l) {
                        const Rational& b = o.at(k, l);
                        if (b != 0) r.at(i + k, j + l) += a * b;
                    }
            }
        return r;
    }

    Bivar pow(BigInt e) const {
        Bivar result = one(U, V), base = *this;
        while (e > 0) {
            if (bit_test(e, 0)) result = result * base;
            e >>= 1;
            if (e > 0) base = base * base;
        }
        return result;
    }

    Rational total() const {
        Rational s = 0;
        for (const auto& v : c) s += v;
        return s;
    }
};

// distinct primes of a, counted by degree; empty for a = 0
std::map<int, BigInt> prime_degree_counts(const Poly& a) {
    std::map<int, BigInt> out;
    if (a.is_zero()) return out;
    for (const auto& [l, e] : factor(a).factors) out[l.degree()] += 1;
    return out;
}

// product over primes of the local series built by `local(Q, divides_a)`
template <class Local>
Bivar local_product(const Poly& a, int U, int V, Local local) {
    const std::uint64_t q = a.q();
    const auto counts = prime_degree_counts(a);
    Bivar total = Bivar::one(U, V);
    for (int k = 1; k <= std::max(U, V); ++k) {
        const BigInt Q = ipow(static_cast<unsigned long>(q), static_cast<unsigned long>(k));
        const BigInt N = count_monic_irreducibles(q, k);
        BigInt d = 0;
        if (a.is_zero()) {
            d = N;
        } else if (auto it = counts.find(k); it != counts.end()) {
            d = it->second;
        }
        if (d > 0) total = total * local(Q, k, true).pow(d);
        if (N - d > 0) total = total * local(Q, k, false).pow(N - d);
    }
    return total;
}

}  // namespace

TruncationParams default_truncation(std::uint64_t q) {
    TruncationParams p;
    double bits = 0;
    int M = 0;
    for (int k = 1; k <= 12; ++k) {
        bits += static_cast<double>(count_monic_irreducibles(q, k)) * 3.0 * k * std::log2(static_cast<double>(q));
        if (bits > kEulerBitBudget) break;
        M = k;
    }
    p.max_prime_deg = std::max(M, 1);
    return p;
}

HalfPowerRational c_infinity(std::uint64_t q, bool x_odd) {
    if (x_odd) return HalfPowerRational(q, Rational(1, q - 1), -1);
    return HalfPowerRational(q, Rational(BigInt(1), BigInt(q + 1) * (q - 1)), 0);
}

BigInt kappa(const Poly& v) {
    if (v.is_zero()) throw std::invalid_argument("kappa: zero input");
    BigInt r = 1;
    for (const auto& [l, e] : factor(v).factors)
        if (e % 2) r *= l.norm();
    return r;
}

BigInt c_prime_power(const BigInt& Q, int k, bool l_divides_r, bool l_divides_a) {
    if (k == 0) return 1;
    const BigInt base = ipow(Q, static_cast<unsigned long>(k - 1));
    const bool even = k % 2 == 0;
    if (l_divides_r || l_divides_a) return even ? BigInt(base * (Q - 1)) : BigInt(0);
    return even ? BigInt(base * (Q - 2)) : BigInt(-base);
}

BigInt c_avr(const Poly& a, const Poly& v, const Poly& r, CMode mode) {
    if (!v.is_monic() || !r.is_monic()) throw std::invalid_argument("c_avr: v and r must be monic");
    if (!gcd(r, a).is_one()) throw std::invalid_argument("c_avr: gcd(r, a) must be 1");
    if (v.degree() == 0) return 1;
    const auto fac = factor(v);
    if (mode == CMode::closed) {
        BigInt c = 1;
        for (const auto& [l, k] : fac.factors) c *= c_prime_power(l.norm(), k, l.divides(r), l.divides(a));
        return c;
    }
    const Poly a2 = a * a, r2 = r * r;
    long long s = 0;
    for_each_below(v.field_ptr(), v.degree(), [&](const Poly& sigma) {
        if (!gcd(sigma, v).is_one()) return;
        if (!gcd(sigma * r2 - a2, v).is_one()) return;
        int chi_v = 1;
        for (const auto& [l, k] : fac.factors)
            if (k % 2 == 1) chi_v *= legendre(sigma, l);
        s += chi_v;
    });
    return BigInt(s);
}

Rational constant_C(const Poly& a, const TruncationParams& params, CRoute route) {
    const std::uint64_t q = a.q();
    if (route == CRoute::euler) {
        const int M = params.max_prime_deg;
        if (M < 1) throw std::invalid_argument("constant_C: max_prime_deg must be >= 1");
        const auto counts = prime_degree_counts(a);
        BigInt num = 1, den = 1;
        for (int k = 1; k <= M; ++k) {
            const BigInt Q = ipow(static_cast<unsigned long>(q), static_cast<unsigned long>(k));
            const BigInt N = count_monic_irreducibles(q, k);
            BigInt d = 0;
            if (a.is_zero()) {
                d = N;
            } else if (auto it = counts.find(k); it != counts.end()) {
                d = it->second;
            }
            const BigInt Q2m1 = Q * Q - 1;
            const auto dn = static_cast<unsigned long>(d), nn = static_cast<unsigned long>(N - d);
            num *= ipow(Q * Q, dn) * ipow(Q * (Q * Q - Q - 1), nn);
            den *= ipow(Q2m1, dn) * ipow(Q2m1 * (Q - 1), nn);
        }
        return Rational(num, den);
    }
    if (params.U < 0 || params.V < 0) throw std::invalid_argument("constant_C: U and V must be >= 0");
    const int U = params.U, V = params.V;
    auto local = [&](const BigInt& Q, int k, bool divides_a) {
        Bivar b(U, V);
        for (int beta = 0; k * beta <= U; ++beta) {
            if (divides_a && beta > 0) break;
            for (int alpha = 0; k * alpha <= V; ++alpha) {
                const BigInt c = c_prime_power(Q, alpha, beta > 0, divides_a);
                if (c == 0) continue;
                const BigInt den = ipow(Q, static_cast<unsigned long>(alpha + beta)) * phi_prime_power(Q, alpha + 2 * beta);
                b.at(k * beta, k * alpha) = Rational(c, den);
            }
        }
        return b;
    };
    return local_product(a, U, V, local).total();
}

Rational constant_C_explicit(const Poly& a, int U, int V, CMode mode) {
    const auto& F = a.field_ptr();
    std::vector<Poly> rs, vs;
    for (int d = 0; d <= U; ++d)
        for_each_monic(F, d, [&](const Poly& r) {
            if (gcd(r, a).is_one()) rs.push_back(r);
        });
    for (int d = 0; d <= V; ++d) for_each_monic(F, d, [&](const Poly& v) { vs.push_back(v); });
    Rational s = 0;
    for (const auto& r : rs)
        for (const auto& v : vs) {
            const BigInt c = c_avr(a, v, r, mode);
            if (c == 0) continue;
            s += Rational(c, r.norm() * v.norm() * euler_phi(v * r * r));
        }
    return s;
}

Rational euler_tail_bound(std::uint64_t q, int M, const Rational& euler_value) {
    const Rational qm = Rational(1) / Rational(ipow(static_cast<unsigned long>(q), static_cast<unsigned long>(M)));
    const Rational q2 = Rational(1) / Rational(ipow(static_cast<unsigned long>(q), static_cast<unsigned long>(2 * (M + 1))));
    const Rational s = qm / Rational(BigInt(M + 1) * (q - 1)) / (1 - q2);
    if (s >= 1) throw std::invalid_argument("euler_tail_bound: cutoff too small");
    return abs(euler_value) * s / (1 - s);
}

Rational doublesum_tail_bound(std::uint64_t q, int U, int V) {
    const int K0 = std::max(U, V);
    // sum over the box of G(v, r) = 1/(kappa(v) |r| phi(v r^2)), via the same local product
    const Poly one = Poly::constant(GaloisField::create(static_cast<std::uint32_t>(q)), 1);
    auto local = [&](const BigInt& Q, int k, bool) {
        Bivar b(U, V);
        for (int beta = 0; k * beta <= U; ++beta)
            for (int alpha = 0; k * alpha <= V; ++alpha) {
                const BigInt kap = alpha % 2 ? Q : BigInt(1);
                b.at(k * beta, k * alpha) =
                    Rational(BigInt(1), kap * ipow(Q, static_cast<unsigned long>(beta)) * phi_prime_power(Q, alpha + 2 * beta));
            }
        return b;
    };
    const Rational box = local_product(one, U, V, local).total();

    // all (v, r): exact through degree K0, then prod (1 + eps) <= 1/(1 - y)
    Rational full = 1;
    for (int k = 1; k <= K0; ++k) {
        const BigInt Q = ipow(static_cast<unsigned long>(q), static_cast<unsigned long>(k));
        full *= rpow(doublesum_local_factor(Q), count_monic_irreducibles(q, k));
    }
    const Rational y = Rational(BigInt(kLocalG), ipow(static_cast<unsigned long>(q), static_cast<unsigned long>(K0)) *
                                                       BigInt(K0 + 1) * (q - 1));
    full /= (1 - y);
    return full - box;
}

Rational doublesum_local_factor(const BigInt& Q) {
    const Rational q2 = Rational(1) / Rational(Q * Q);
    const Rational q3 = q2 / Rational(Q);
    const Rational A = (1 + q2) / (1 - q2);
    return 1 + Rational(Q, Q - 1) * (A / (1 - q3) - 1);
}

HalfPowerRational main_term(int x, const Poly& a, const Rational& C_of_a) {
    if (x < 1) throw std::invalid_argument("main_term: x must be >= 1");
    const std::uint64_t q = a.q();
    return c_infinity(q, x % 2 == 1) * HalfPowerRational(q, C_of_a / x, x);
}

HalfPowerRational main_term(int x, const Poly& a, const TruncationParams& params) {
    return main_term(x, a, constant_C(a, params, CRoute::euler));
}

}  // namespace frobavg
