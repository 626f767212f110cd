#include "frobavg/quadratic.hpp"

#include "frobavg/residue_field.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace frobavg {

namespace {

using Elem = GaloisField::Elem;

// Self-check runs when the point count over F_{q^{deg D + 1}} is this small.
constexpr std::uint64_t kSelfCheckPoints = 4096;

// F_{q^m} as a table field whose encodings 0..q-1 are the base field.
FieldPtr extension_field(const FieldPtr& base, int m) {
    if (m == 1) return base;
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, int>, FieldPtr> memo;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(base->order(), m);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::optional<Poly> modulus;
    for_each_monic(base, m, [&](const Poly& f) {
        if (!modulus && is_irreducible(f)) modulus = f;
    });
    FieldPtr table = tabulate(ResidueField(*modulus));
    memo.emplace(key, table);
    return table;
}

// sum over alpha in F_{q^m} of eta(D(alpha))
BigInt point_sum(const Poly& D, int m) {
    const BigInt points = ipow(static_cast<unsigned long>(D.q()), static_cast<unsigned long>(m));
    if (points > GaloisField::kMaxTableOrder) throw std::invalid_argument("point_sum: extension too large");
    FieldPtr K = extension_field(D.field_ptr(), m);
    const auto& c = D.coeffs();
    long long s = 0;
    for (Elem alpha = 0; alpha < K->order(); ++alpha) {
        Elem v = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) v = K->add(K->mul(v, alpha), *it);
        s += K->quadratic_character(v);
    }
    return BigInt(s);
}

// k b_k = sum_{m=1}^k S_m b_{k-m}
std::vector<BigInt> newton(const std::vector<BigInt>& S, int count) {
    std::vector<BigInt> b(static_cast<std::size_t>(count), 0);
    if (count == 0) return b;
    b[0] = 1;
    for (int k = 1; k < count; ++k) {
        BigInt acc = 0;
        for (int m = 1; m <= k; ++m) acc += S[m] * b[k - m];
        if (acc % k != 0) throw std::logic_error("l_coefficients: non-integral Newton step");
        b[k] = acc / k;
    }
    return b;
}

std::vector<BigInt> poly_mul_trunc(const std::vector<BigInt>& a, const std::vector<BigInt>& b, std::size_t len) {
    std::vector<BigInt> r(len, 0);
    for (std::size_t i = 0; i < a.size() && i < len; ++i)
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j) r[i + j] += a[i] * b[j];
    return r;
}

// L(u, chi_D) for squarefree nonconstant D from point sums up to the genus,
// completed by the functional equation. Length deg D.
std::vector<BigInt> fundamental_l(const Poly& D) {
    const int n = D.degree();
    const BigInt q = D.q();
    const bool odd = n % 2 == 1;
    const int g = odd ? (n - 1) / 2 : (n - 2) / 2;
    std::vector<BigInt> S(static_cast<std::size_t>(g) + 1, 0);
    for (int m = 1; m <= g; ++m) {
        S[m] = point_sum(D, m);
        // curve count: the inert place at infinity has 1 + (-1)^m points
        if (!odd) S[m] += (m % 2 == 0) ? 1 : -1;
    }
    std::vector<BigInt> b = newton(S, g + 1);
    b.resize(static_cast<std::size_t>(2 * g) + 1);
    for (int k = 0; k < g; ++k) b[2 * g - k] = ipow(q, static_cast<unsigned long>(g - k)) * b[k];
    if (odd) return b;
    return poly_mul_trunc(b, {BigInt(1), BigInt(1)}, static_cast<std::size_t>(n));
}

// Newton without the functional equation; coefficients 0..deg D + 1.
std::vector<BigInt> fundamental_l_full(const Poly& D) {
    const int n = D.degree();
    std::vector<BigInt> S(static_cast<std::size_t>(n) + 2, 0);
    for (int m = 1; m <= n + 1; ++m) S[m] = point_sum(D, m);
    return newton(S, n + 2);
}

}  // namespace

DiscriminantDecomp decompose_discriminant(const Poly& d) {
    if (d.is_zero()) throw std::invalid_argument("discriminant must be nonzero");
    auto fac = factor(d);
    DiscriminantDecomp out{d, Poly::constant(d.field_ptr(), 1), Poly::constant(d.field_ptr(), fac.unit), {}, {}};
    for (const auto& [l, e] : fac.factors) {
        if (e / 2 > 0) {
            out.f *= l.pow(static_cast<unsigned>(e / 2));
            out.f_factors.factors.emplace_back(l, e / 2);
        }
        if (e % 2) {
            out.D *= l;
            out.D_factors.factors.emplace_back(l, 1);
        }
    }
    out.D_factors.unit = fac.unit;
    return out;
}

bool is_imaginary_discriminant(const Poly& d) {
    if (d.is_zero()) throw std::invalid_argument("is_imaginary_discriminant: zero input");
    const auto dec = decompose_discriminant(d);
    if (dec.D.degree() % 2 == 1) return true;
    return !d.field().is_square(dec.D.sgn());
}

Poly canonical_discriminant(const Poly& d) {
    if (d.is_zero()) throw std::invalid_argument("canonical_discriminant: zero input");
    const auto& F = d.field();
    const Elem s = d.sgn();
    if (F.is_square(s)) return d.scaled(F.inv(s));
    Elem n0 = 1;
    while (F.is_square(n0)) ++n0;
    return d.scaled(F.div(n0, s));
}

int legendre(const Poly& D, const Poly& l) {
    const Poly r = D % l;
    if (r.is_zero()) return 0;
    const Poly v = powmod(r, BigInt((l.norm() - 1) / 2), l);
    if (v.is_one()) return 1;
    if (v == Poly::constant(l.field_ptr(), l.field().neg(1))) return -1;
    throw std::logic_error("legendre: Euler criterion gave a non-unit");
}

namespace {

DiscriminantDecomp imaginary_decomposition(const Poly& d) {
    if (!is_imaginary_discriminant(d))
        throw std::invalid_argument("chi: " + format_poly(d) + " is not an imaginary discriminant");
    return decompose_discriminant(d);
}

}  // namespace

QuadChar::QuadChar(const Poly& d) : dec_(imaginary_decomposition(d)) {}

int QuadChar::at_prime(const Poly& l) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(l);
        if (it != cache_.end()) return it->second;
    }
    int v = l.divides(dec_.f) ? 0 : legendre(dec_.D, l);
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(l, v);
    return v;
}

int QuadChar::operator()(const Poly& n) const {
    if (n.is_zero()) return 0;
    int v = 1;
    for (const auto& [l, e] : factor(n).factors) {
        const int c = at_prime(l);
        if (c == 0) return 0;
        if (c < 0 && e % 2) v = -v;
    }
    return v;
}

int chi(const Poly& d, const Poly& n) { return QuadChar(d)(n); }

std::vector<BigInt> l_coefficients(const Poly& d) {
    if (!is_imaginary_discriminant(d))
        throw std::invalid_argument("l_value: " + format_poly(d) + " is not an imaginary discriminant");
    const auto dec = decompose_discriminant(d);
    const BigInt q = d.q();
    const std::size_t len = static_cast<std::size_t>(std::max(d.degree(), 1));

    std::vector<BigInt> L;
    if (dec.D.degree() == 0) {
        // chi_D(l) = (-1)^{deg l}: L = 1/(1 + q u)
        BigInt c = 1;
        for (std::size_t k = 0; k < len; ++k) {
            L.push_back(c);
            c *= -q;
        }
    } else {
        L = fundamental_l(dec.D);
        const BigInt check_points = ipow(q, static_cast<unsigned long>(dec.D.degree() + 1));
        if (check_points <= kSelfCheckPoints) {
            auto full = fundamental_l_full(dec.D);
            std::vector<BigInt> head(full.begin(), full.begin() + dec.D.degree());
            if (head != L || full[dec.D.degree()] != 0 || full[dec.D.degree() + 1] != 0)
                throw std::logic_error("l_value: self-check failed for " + format_poly(dec.D));
        }
    }
    for (const auto& [l, e] : dec.f_factors.factors) {
        const int c = legendre(dec.D, l);
        if (c == 0) continue;
        std::vector<BigInt> local(static_cast<std::size_t>(l.degree()) + 1, 0);
        local[0] = 1;
        local.back() = -c;
        L = poly_mul_trunc(L, local, len);
    }
    L.resize(len, 0);
    return L;
}

std::vector<BigInt> l_coefficients_direct(const Poly& d, int count) {
    QuadChar chi_d(d);
    std::vector<BigInt> c;
    for (int k = 0; k < count; ++k) {
        long long s = 0;
        for_each_monic(d.field_ptr(), k, [&](const Poly& n) { s += chi_d(n); });
        c.emplace_back(s);
    }
    return c;
}

Rational l_value_at_one(const Poly& d) {
    const auto c = l_coefficients(d);
    Rational r = 0;
    BigInt qk = 1;
    for (const auto& ck : c) {
        r += Rational(ck, qk);
        qk *= d.q();
    }
    return r;
}

Rational class_number_formula_route(const Poly& d) {
    const Rational L = l_value_at_one(d);
    const unsigned long q = d.q();
    const int n = d.degree();
    if (n % 2 == 1) return Rational(ipow(q, static_cast<unsigned long>((n - 1) / 2))) * L;
    return Rational(2 * ipow(q, static_cast<unsigned long>(n / 2)), BigInt(q + 1)) * L;
}

Rational class_number_ratio_route(const Poly& d) {
    if (!is_imaginary_discriminant(d)) throw std::invalid_argument("class_number: not an imaginary discriminant");
    const auto dec = decompose_discriminant(d);
    const unsigned long q = d.q();
    Rational hD = 1;
    Rational index = 1;
    if (dec.D.degree() > 0) {
        hD = class_number_formula_route(dec.D);
    } else {
        if (dec.f.is_one()) return 1;
        index = q + 1;
    }
    Rational r = hD * Rational(dec.f.norm()) / index;
    for (const auto& [l, e] : dec.f_factors.factors) r *= 1 - Rational(legendre(dec.D, l)) / Rational(l.norm());
    return r;
}

BigInt class_number(const Poly& d, ClassNumberCache* cache) {
    if (!is_imaginary_discriminant(d))
        throw std::invalid_argument("class_number: " + format_poly(d) + " is not an imaginary discriminant");
    const Poly key = canonical_discriminant(d);
    if (cache) {
        if (auto h = cache->find(key)) return *h;
    }
    const auto dec = decompose_discriminant(key);
    const Rational h = dec.D.degree() == 0 ? class_number_ratio_route(key) : class_number_formula_route(key);
    if (denominator(h) != 1 || h <= 0)
        throw std::logic_error("class_number: non-integral value " + h.str() + " for " + format_poly(d));
    const BigInt out = numerator(h);
    if (cache) cache->insert(key, out);
    return out;
}

Poly mass_discriminant(const Poly& a, GaloisField::Elem u, const Poly& p) {
    const auto& F = p.field();
    return a * a - p.scaled(F.mul(F.from_int(4), u));
}

void check_mass_arguments(const Poly& a, GaloisField::Elem u, const Poly& p) {
    const auto& F = p.field();
    if (!a.field().same_as(F)) throw std::invalid_argument("mass: field mismatch");
    if (u == 0 || u >= F.order()) throw std::invalid_argument("mass: u must be a nonzero scalar");
    if (!p.is_monic() || !is_irreducible(p)) throw std::invalid_argument("mass: p must be a monic prime");
    const int x = p.degree();
    if (!a.is_zero() && 2 * a.degree() >= x)
        throw std::invalid_argument("mass: deg a must be < x/2 (the boundary case is unsupported)");
    if (x % 2 == 0 && F.is_square(F.neg(F.mul(F.from_int(4), u))))
        throw std::invalid_argument("mass: x even requires -4u to be a nonsquare");
}

std::vector<Poly> square_divisors(const Poly& d) {
    const auto fac = factor(d);
    std::vector<Poly> out{Poly::constant(d.field_ptr(), 1)};
    for (const auto& [l, e] : fac.factors) {
        std::vector<Poly> next;
        for (const auto& f : out) {
            Poly cur = f;
            for (int k = 0; 2 * k <= e; ++k) {
                next.push_back(cur);
                cur *= l;
            }
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

BigInt hurwitz_mass(const Poly& a, GaloisField::Elem u, const Poly& p, ClassNumberCache* cache) {
    check_mass_arguments(a, u, p);
    const Poly d = mass_discriminant(a, u, p);
    BigInt total = 0;
    for (const auto& f : square_divisors(d)) total += class_number(d / (f * f), cache);
    return total;
}

std::optional<BigInt> ClassNumberCache::find(const Poly& canonical_d) const {
    const std::string key = format_poly(canonical_d);
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    return it->second;
}

void ClassNumberCache::insert(const Poly& canonical_d, const BigInt& h) {
    const std::string key = format_poly(canonical_d);
    std::lock_guard<std::mutex> lock(mu_);
    map_.emplace(key, h);
}

std::size_t ClassNumberCache::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return map_.size();
}

void ClassNumberCache::load(const std::string& path, const FieldPtr& field) {
    std::ifstream in(path);
    if (!in) return;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) throw std::runtime_error("class number cache: malformed line: " + line);
        Poly d = parse_poly(field, line.substr(0, tab));
        insert(canonical_discriminant(d), BigInt(line.substr(tab + 1)));
    }
}

void ClassNumberCache::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("class number cache: cannot write " + path);
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto& [k, h] : map_) out << k << '\t' << h << '\n';
}

}  // namespace frobavg
