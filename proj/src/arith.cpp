#include "frobavg/arith.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace frobavg {

namespace {

int mobius(int n) {
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        result = -result;
    }
    if (n > 1) result = -result;
    return result;
}

// a^{1/p} for the characteristic p: inverse Frobenius, a^(q/p).
GaloisField::Elem prime_root(const GaloisField& F, GaloisField::Elem a) {
    return F.pow(a, F.order() / F.characteristic());
}

Poly pth_root(const Poly& c) {
    const auto& F = c.field();
    const int p = static_cast<int>(F.characteristic());
    std::vector<GaloisField::Elem> out(static_cast<std::size_t>(c.degree() / p) + 1, 0);
    for (int k = 0; k <= c.degree(); ++k) {
        if (c.coeff(k) == 0) continue;
        if (k % p != 0) throw std::logic_error("pth_root: not a p-th power");
        out[k / p] = prime_root(F, c.coeff(k));
    }
    return Poly(c.field_ptr(), std::move(out));
}

void sfd_monic(const Poly& f, int scale, std::map<int, Poly>& out) {
    if (f.degree() <= 0) return;
    Poly c = gcd(f, f.derivative());
    Poly w = f / c;
    int i = 1;
    while (!w.is_one()) {
        Poly y = gcd(w, c);
        Poly z = w / y;
        if (z.degree() > 0) {
            auto it = out.find(i * scale);
            if (it == out.end())
                out.emplace(i * scale, z);
            else
                it->second *= z;
        }
        ++i;
        w = y;
        c = c / y;
    }
    if (!c.is_one()) sfd_monic(pth_root(c), scale * static_cast<int>(f.field().characteristic()), out);
}

// Splits a squarefree monic g into (k-degree part, k) pieces.
std::vector<std::pair<Poly, int>> distinct_degree(Poly g) {
    std::vector<std::pair<Poly, int>> parts;
    const auto& field = g.field_ptr();
    const Poly t = Poly::T(field);
    Poly h = t % g;
    for (int k = 1; 2 * k <= g.degree(); ++k) {
        h = powmod(h, static_cast<std::uint64_t>(g.q()), g);
        Poly d = gcd(g, h - t);
        if (!d.is_one()) {
            parts.emplace_back(d, k);
            g = g / d;
            h = h % g;
        }
    }
    if (g.degree() > 0) parts.emplace_back(g, g.degree());
    return parts;
}

void equal_degree(const Poly& g, int k, std::vector<Poly>& out) {
    if (g.degree() == k) {
        out.push_back(g);
        return;
    }
    const auto& field = g.field_ptr();
    const BigInt e = (ipow(static_cast<unsigned long>(g.q()), static_cast<unsigned long>(k)) - 1) / 2;
    const Poly one = Poly::constant(field, 1);
    // Deterministic sweep of candidate splitters T, T+1, ...; some residue of
    // degree < deg g separates any two distinct prime factors.
    for (std::uint64_t idx = g.q();; ++idx) {
        Poly r = poly_from_index(field, idx);
        if (r.degree() >= g.degree()) throw std::logic_error("equal_degree: no splitting element found");
        Poly d = gcd(g, powmod(r, e, g) - one);
        if (d.degree() > 0 && d.degree() < g.degree()) {
            equal_degree(d, k, out);
            equal_degree(g / d, k, out);
            return;
        }
    }
}

}  // namespace

bool is_irreducible(const Poly& f) {
    if (f.degree() <= 0) return false;
    if (f.degree() == 1) return true;
    Poly g = f.monic();
    const Poly t = Poly::T(g.field_ptr());
    Poly h = t;
    for (int k = 1; 2 * k <= g.degree(); ++k) {
        h = powmod(h, static_cast<std::uint64_t>(g.q()), g);
        if (!gcd(h - t, g).is_one()) return false;
    }
    return true;
}

std::vector<Poly> enumerate_primes(const FieldPtr& field, int x) {
    if (x < 1) throw std::invalid_argument("enumerate_primes: degree must be >= 1");
    std::vector<Poly> primes;
    for_each_monic(field, x, [&](const Poly& f) {
        if (is_irreducible(f)) primes.push_back(f);
    });
    return primes;
}

BigInt count_monic_irreducibles(std::uint64_t q, int x) {
    if (x < 1) return 0;
    BigInt total = 0;
    for (int d = 1; d <= x; ++d) {
        if (x % d != 0) continue;
        int mu = mobius(d);
        if (mu == 0) continue;
        BigInt term = ipow(static_cast<unsigned long>(q), static_cast<unsigned long>(x / d));
        total += mu > 0 ? term : BigInt(-term);
    }
    return total / x;
}

std::vector<std::pair<int, Poly>> squarefree_decomposition(const Poly& f) {
    if (f.is_zero()) throw std::domain_error("squarefree_decomposition: zero polynomial");
    std::map<int, Poly> parts;
    sfd_monic(f.monic(), 1, parts);
    return {parts.begin(), parts.end()};
}

bool is_squarefree(const Poly& f) {
    if (f.is_zero()) return false;
    for (const auto& [mult, part] : squarefree_decomposition(f))
        if (mult > 1) return false;
    return true;
}

Factorization factor(const Poly& a) {
    if (a.is_zero()) throw std::domain_error("factor: zero polynomial");
    Factorization result;
    result.unit = a.sgn();
    for (const auto& [mult, part] : squarefree_decomposition(a)) {
        for (const auto& [piece, k] : distinct_degree(part)) {
            std::vector<Poly> primes;
            equal_degree(piece, k, primes);
            for (auto& p : primes) result.factors.emplace_back(std::move(p), mult);
        }
    }
    std::sort(result.factors.begin(), result.factors.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    return result;
}

Poly expand(const Factorization& f, const FieldPtr& field) {
    Poly r = Poly::constant(field, f.unit);
    for (const auto& [p, e] : f.factors) r *= p.pow(static_cast<unsigned>(e));
    return r;
}

BigInt euler_phi(const Factorization& f) {
    BigInt r = 1;
    for (const auto& [p, e] : f.factors) {
        BigInt n = p.norm();
        r *= ipow(n, static_cast<unsigned long>(e - 1)) * (n - 1);
    }
    return r;
}

BigInt euler_phi(const Poly& a) { return euler_phi(factor(a)); }

std::uint64_t count_primes_in_ap(const std::vector<Poly>& primes, const Poly& m, const Poly& a) {
    if (m.is_zero()) throw std::invalid_argument("count_primes_in_ap: zero modulus");
    if (!gcd(m, a).is_one()) throw std::invalid_argument("count_primes_in_ap: gcd(m, a) != 1");
    const Poly target = a % m;
    std::uint64_t count = 0;
    for (const auto& p : primes)
        if (p % m == target) ++count;
    return count;
}

std::uint64_t count_primes_in_ap(const FieldPtr& field, int x, const Poly& m, const Poly& a) {
    if (m.is_zero()) throw std::invalid_argument("count_primes_in_ap: zero modulus");
    if (!gcd(m, a).is_one()) throw std::invalid_argument("count_primes_in_ap: gcd(m, a) != 1");
    return count_primes_in_ap(enumerate_primes(field, x), m, a);
}

}  // namespace frobavg
