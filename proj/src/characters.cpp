#include "frobavg/characters.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <stdexcept>

namespace frobavg {

namespace {

using Real = boost::multiprecision::cpp_bin_float_100;

// a mod b for integer polynomials with b monic.
std::vector<BigInt> poly_rem_monic(std::vector<BigInt> a, const std::vector<BigInt>& b) {
    const std::size_t db = b.size() - 1;
    for (std::size_t i = a.size(); i-- > db;) {
        if (a[i] == 0) continue;
        const BigInt c = a[i];
        for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    a.resize(std::min(a.size(), db));
    return a;
}

std::vector<BigInt> poly_div_exact(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    std::vector<BigInt> rem = a;
    const std::size_t db = b.size() - 1;
    std::vector<BigInt> quot(a.size() - db, 0);
    for (std::size_t i = a.size(); i-- > db;) {
        const BigInt c = rem[i];
        quot[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] -= c * b[j];
    }
    for (const auto& r : rem)
        if (r != 0) throw std::logic_error("cyclotomic_polynomial: inexact division");
    return quot;
}

}  // namespace

std::vector<BigInt> cyclotomic_polynomial(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("cyclotomic_polynomial: n must be positive");
    std::vector<BigInt> p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (std::uint64_t d = 1; d < n; ++d)
        if (n % d == 0) p = poly_div_exact(p, cyclotomic_polynomial(d));
    return p;
}

Cyclotomic::Cyclotomic(std::uint64_t n) : n_(n), c_(n, 0) {
    if (n == 0) throw std::invalid_argument("Cyclotomic: order must be positive");
}

Cyclotomic Cyclotomic::root(std::uint64_t n, std::uint64_t k) {
    Cyclotomic z(n);
    z.add_root(k);
    return z;
}

Cyclotomic Cyclotomic::integer(std::uint64_t n, const BigInt& c) {
    Cyclotomic z(n);
    z.c_[0] = c;
    return z;
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    Cyclotomic r = *this;
    r += o;
    return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    if (o.n_ != n_) throw std::invalid_argument("Cyclotomic: order mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + o.scaled(-1); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    if (o.n_ != n_) throw std::invalid_argument("Cyclotomic: order mismatch");
    Cyclotomic r(n_);
    for (std::uint64_t i = 0; i < n_; ++i) {
        if (c_[i] == 0) continue;
        for (std::uint64_t j = 0; j < n_; ++j)
            if (o.c_[j] != 0) r.c_[(i + j) % n_] += c_[i] * o.c_[j];
    }
    return r;
}

Cyclotomic Cyclotomic::scaled(const BigInt& c) const {
    Cyclotomic r = *this;
    for (auto& v : r.c_) v *= c;
    return r;
}

Cyclotomic Cyclotomic::conj() const {
    Cyclotomic r(n_);
    for (std::uint64_t i = 0; i < n_; ++i) r.c_[(n_ - i) % n_] = c_[i];
    return r;
}

void Cyclotomic::add_root(std::uint64_t k, const BigInt& c) { c_[k % n_] += c; }

std::vector<BigInt> Cyclotomic::reduced() const { return poly_rem_monic(c_, cyclotomic_polynomial(n_)); }

bool Cyclotomic::is_zero() const {
    for (const auto& v : reduced())
        if (v != 0) return false;
    return true;
}

std::optional<BigInt> Cyclotomic::as_integer() const {
    auto r = reduced();
    for (std::size_t i = 1; i < r.size(); ++i)
        if (r[i] != 0) return std::nullopt;
    return r.empty() ? BigInt(0) : r[0];
}

std::string Cyclotomic::real_decimal(int digits) const {
    const Real two_pi = 2 * boost::math::constants::pi<Real>();
    Real s = 0;
    for (std::uint64_t i = 0; i < n_; ++i)
        if (c_[i] != 0) s += Real(c_[i]) * cos(two_pi * Real(i) / Real(n_));
    return s.str(digits);
}

int Cyclotomic::real_sign() const {
    if (!(conj() == *this)) throw std::invalid_argument("real_sign: value is not real");
    if (is_zero()) return 0;
    BigInt H = 0;
    for (const auto& v : c_) H += abs(v);
    const std::size_t phi = cyclotomic_polynomial(n_).size() - 1;
    // separation 1/H^{phi-1} must sit well above the working precision
    const double needed = static_cast<double>(phi > 0 ? phi - 1 : 0) * std::log10(static_cast<double>(H) + 1.0) + 10;
    if (needed > 90) throw std::runtime_error("real_sign: value needs more than the available precision");
    const Real two_pi = 2 * boost::math::constants::pi<Real>();
    Real s = 0;
    for (std::uint64_t i = 0; i < n_; ++i)
        if (c_[i] != 0) s += Real(c_[i]) * cos(two_pi * Real(i) / Real(n_));
    const Real sep = 1 / pow(Real(H), static_cast<int>(phi > 0 ? phi - 1 : 0));
    if (abs(s) < sep / 2) throw std::logic_error("real_sign: numeric value inside the separation bound");
    return s > 0 ? 1 : -1;
}

DirichletCharModP::DirichletCharModP(FpPtr field, std::uint64_t k) : field_(std::move(field)), k_(k) {
    if (!field_) throw std::invalid_argument("DirichletCharModP: null field");
    k_ %= order();
}

std::optional<std::uint64_t> DirichletCharModP::exponent_at(const Poly& n) const {
    const auto r = field_->hat(n);
    if (r == 0) return std::nullopt;
    return (k_ * field_->table().log(r)) % order();
}

Cyclotomic DirichletCharModP::operator()(const Poly& n) const {
    Cyclotomic z(order());
    if (auto e = exponent_at(n)) z.add_root(*e);
    return z;
}

std::vector<DirichletCharModP> all_characters(const FpPtr& field) {
    std::vector<DirichletCharModP> out;
    for (std::uint64_t k = 0; k + 1 < field->order(); ++k) out.emplace_back(field, k);
    return out;
}

Cyclotomic char_sum(const DirichletCharModP& chi, int z_lo, int z_hi) {
    if (chi.is_principal()) throw std::invalid_argument("char_sum: principal character");
    if (z_lo < 0 || z_hi > chi.field().x()) throw std::invalid_argument("char_sum: need 0 <= z' and z <= deg p");
    Cyclotomic s(chi.order());
    for (int k = z_lo; k <= z_hi; ++k)
        for_each_monic(chi.field().base_ptr(), k, [&](const Poly& f) {
            if (auto e = chi.exponent_at(f)) s.add_root(*e);
        });
    return s;
}

bool char_sum_bound_holds(const DirichletCharModP& chi, int z_lo, int z_hi) {
    const Cyclotomic s = char_sum(chi, z_lo, z_hi);
    const BigInt bound = ipow(static_cast<unsigned long>(chi.field().q()), static_cast<unsigned long>(std::max(z_hi, 0))) *
                         ipow(4ul, static_cast<unsigned long>(chi.field().x()));
    const Cyclotomic gap = Cyclotomic::integer(chi.order(), bound) - s * s.conj();
    return gap.is_zero() || gap.real_sign() > 0;
}

OrthogonalitySides orthogonality_sides(const FpPtr& field, const std::map<Poly, BigInt>& coefficients) {
    const std::uint64_t N = field->order() - 1;
    Cyclotomic lhs(N);
    for (const auto& chi : all_characters(field)) {
        Cyclotomic t(N);
        for (const auto& [n, a] : coefficients)
            if (auto e = chi.exponent_at(n)) t.add_root(*e, a);
        lhs += t * t.conj();
    }
    auto lhs_int = lhs.as_integer();
    if (!lhs_int) throw std::logic_error("orthogonality: left side is not an integer");

    std::map<FpField::Elem, BigInt> classes;
    for (const auto& [n, a] : coefficients) {
        const auto r = field->hat(n);
        if (r != 0) classes[r] += a;
    }
    BigInt rhs = 0;
    for (const auto& [r, s] : classes) rhs += s * s;
    return {*lhs_int, rhs * N};
}

bool orthogonality_check(const FpPtr& field, const std::map<Poly, BigInt>& coefficients) {
    const auto sides = orthogonality_sides(field, coefficients);
    return sides.lhs == sides.rhs;
}

}  // namespace frobavg
