#include "frobavg/residue_field.hpp"

#include "frobavg/arith.hpp"

#include <stdexcept>

namespace frobavg {

ResidueField::ResidueField(Poly modulus) : modulus_(std::move(modulus)) {
    if (!modulus_.is_monic() || !is_irreducible(modulus_))
        throw std::invalid_argument("ResidueField: modulus must be monic irreducible, got " + format_poly(modulus_));
    x_ = modulus_.degree();
    const auto& F = base();
    const std::size_t n = static_cast<std::size_t>(x_);

    Poly tq = powmod(Poly::T(base_ptr()), static_cast<std::uint64_t>(q()), modulus_);
    std::vector<Elem> m1(n * n, 0);
    Poly col = Poly::constant(base_ptr(), 1);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t r = 0; r < n; ++r) m1[r * n + j] = col.coeff(static_cast<int>(r));
        col = (col * tq) % modulus_;
    }
    std::vector<Elem> id(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) id[i * n + i] = 1;
    frob_.push_back(id);
    for (int i = 1; i < x_; ++i) {
        const auto& prev = frob_.back();
        std::vector<Elem> next(n * n, 0);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t k = 0; k < n; ++k) {
                Elem a = m1[r * n + k];
                if (a == 0) continue;
                for (std::size_t c = 0; c < n; ++c) next[r * n + c] = F.add(next[r * n + c], F.mul(a, prev[k * n + c]));
            }
        frob_.push_back(std::move(next));
    }
}

ResidueField::Residue ResidueField::one() const {
    Residue r = zero();
    r[0] = 1;
    return r;
}

ResidueField::Residue ResidueField::scalar(Elem c) const {
    Residue r = zero();
    r[0] = c;
    return r;
}

ResidueField::Residue ResidueField::t_hat() const { return reduce(Poly::T(base_ptr())); }

ResidueField::Residue ResidueField::reduce(const Poly& a) const {
    if (!a.field().same_as(base())) throw std::invalid_argument("ResidueField: field mismatch");
    Poly r = a % modulus_;
    Residue out = zero();
    for (int i = 0; i <= r.degree(); ++i) out[i] = r.coeff(i);
    return out;
}

Poly ResidueField::lift(const Residue& r) const { return Poly(base_ptr(), r); }

bool ResidueField::is_zero(const Residue& r) const {
    for (Elem c : r)
        if (c != 0) return false;
    return true;
}

std::optional<ResidueField::Elem> ResidueField::as_scalar(const Residue& r) const {
    for (std::size_t i = 1; i < r.size(); ++i)
        if (r[i] != 0) return std::nullopt;
    return r[0];
}

ResidueField::Residue ResidueField::add(const Residue& a, const Residue& b) const {
    Residue r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = base().add(a[i], b[i]);
    return r;
}

ResidueField::Residue ResidueField::sub(const Residue& a, const Residue& b) const {
    Residue r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = base().sub(a[i], b[i]);
    return r;
}

ResidueField::Residue ResidueField::neg(const Residue& a) const {
    Residue r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = base().neg(a[i]);
    return r;
}

ResidueField::Residue ResidueField::scale(Elem c, const Residue& a) const {
    Residue r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = base().mul(c, a[i]);
    return r;
}

ResidueField::Residue ResidueField::mul(const Residue& a, const Residue& b) const {
    const auto& F = base();
    const int n = x_;
    std::vector<Elem> prod(static_cast<std::size_t>(2 * n - 1), 0);
    for (int i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < n; ++j) prod[i + j] = F.add(prod[i + j], F.mul(a[i], b[j]));
    }
    // modulus is monic: T^n = -sum m_k T^k
    const auto& m = modulus_.coeffs();
    for (int d = 2 * n - 2; d >= n; --d) {
        Elem top = prod[d];
        if (top == 0) continue;
        prod[d] = 0;
        for (int k = 0; k < n; ++k) prod[d - n + k] = F.sub(prod[d - n + k], F.mul(top, m[k]));
    }
    prod.resize(static_cast<std::size_t>(n));
    return prod;
}

ResidueField::Residue ResidueField::inv(const Residue& a) const {
    if (is_zero(a)) throw std::domain_error("ResidueField: inverse of zero");
    auto eg = ext_gcd(lift(a), modulus_);
    return reduce(eg.s);
}

ResidueField::Residue ResidueField::pow(const Residue& a, const BigInt& e) const {
    if (e < 0) return pow(inv(a), -e);
    Residue result = one();
    if (e == 0) return result;
    const auto top = static_cast<long>(boost::multiprecision::msb(e));
    for (long i = top; i >= 0; --i) {
        result = mul(result, result);
        if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i))) result = mul(result, a);
    }
    return result;
}

ResidueField::Residue ResidueField::frobenius(const Residue& a, int i) const {
    i %= x_;
    if (i < 0) i += x_;
    if (i == 0) return a;
    const auto& M = frob_[static_cast<std::size_t>(i)];
    const auto& F = base();
    const std::size_t n = static_cast<std::size_t>(x_);
    Residue out(n, 0);
    for (std::size_t c = 0; c < n; ++c) {
        if (a[c] == 0) continue;
        for (std::size_t r = 0; r < n; ++r) out[r] = F.add(out[r], F.mul(M[r * n + c], a[c]));
    }
    return out;
}

std::uint64_t ResidueField::index(const Residue& r) const {
    std::uint64_t idx = 0;
    for (auto it = r.rbegin(); it != r.rend(); ++it) idx = idx * q() + *it;
    return idx;
}

ResidueField::Residue ResidueField::from_index(std::uint64_t idx) const {
    Residue r = zero();
    for (int i = 0; i < x_; ++i) {
        r[i] = static_cast<Elem>(idx % q());
        idx /= q();
    }
    return r;
}

FieldPtr tabulate(const ResidueField& field) {
    const BigInt big_order = field.order();
    if (big_order > GaloisField::kMaxTableOrder)
        throw std::invalid_argument("tabulate: residue field too large for tables");
    const auto order = static_cast<std::uint64_t>(big_order);
    if (field.degree() == 1) return field.base_ptr();

    std::vector<std::uint64_t> prime_divisors;
    std::uint64_t n = order - 1;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        prime_divisors.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) prime_divisors.push_back(n);

    ResidueField::Residue gen;
    for (std::uint64_t idx = 1; idx < order; ++idx) {
        auto cand = field.from_index(idx);
        bool primitive = true;
        for (auto r : prime_divisors) {
            auto v = field.pow(cand, BigInt((order - 1) / r));
            if (v == field.one()) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            gen = cand;
            break;
        }
    }
    if (gen.empty()) throw std::logic_error("tabulate: no primitive element");

    std::vector<GaloisField::Elem> powers;
    powers.reserve(order - 1);
    auto cur = field.one();
    for (std::uint64_t k = 0; k + 1 < order; ++k) {
        powers.push_back(static_cast<GaloisField::Elem>(field.index(cur)));
        cur = field.mul(cur, gen);
    }
    return GaloisField::from_powers(std::move(powers), field.base().characteristic(),
                                    [&field](GaloisField::Elem a, GaloisField::Elem b) {
                                        return static_cast<GaloisField::Elem>(
                                            field.index(field.add(field.from_index(a), field.from_index(b))));
                                    });
}

}  // namespace frobavg
