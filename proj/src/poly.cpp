#include "frobavg/poly.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace frobavg {

Poly::Poly(FieldPtr field) : field_(std::move(field)) {
    if (!field_) throw std::invalid_argument("Poly: null field");
}

Poly::Poly(FieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
    if (!field_) throw std::invalid_argument("Poly: null field");
    for (Elem c : c_)
        if (c >= field_->order()) throw std::invalid_argument("Poly: coefficient out of range");
    trim();
}

Poly Poly::constant(FieldPtr field, Elem c) { return Poly(std::move(field), {c}); }

Poly Poly::monomial(FieldPtr field, Elem c, int k) {
    if (k < 0) throw std::invalid_argument("Poly::monomial: negative exponent");
    std::vector<Elem> v(static_cast<std::size_t>(k) + 1, 0);
    v[k] = c;
    return Poly(std::move(field), std::move(v));
}

Poly Poly::from_ints(FieldPtr field, std::initializer_list<std::int64_t> coeffs) {
    std::vector<Elem> v;
    v.reserve(coeffs.size());
    for (auto c : coeffs) v.push_back(field->from_int(c));
    return Poly(std::move(field), std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

void Poly::check_field(const Poly& o) const {
    if (!field_->same_as(*o.field_)) throw std::invalid_argument("Poly: field mismatch");
}

BigInt Poly::norm() const {
    if (is_zero()) return 0;
    return ipow(static_cast<unsigned long>(q()), static_cast<unsigned long>(degree()));
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = field_->neg(c);
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    check_field(o);
    const auto& F = *field_;
    Poly r(field_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
        Elem a = i < c_.size() ? c_[i] : 0;
        Elem b = i < o.c_.size() ? o.c_[i] : 0;
        r.c_[i] = F.add(a, b);
    }
    r.trim();
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    check_field(o);
    const auto& F = *field_;
    Poly r(field_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
        Elem a = i < c_.size() ? c_[i] : 0;
        Elem b = i < o.c_.size() ? o.c_[i] : 0;
        r.c_[i] = F.sub(a, b);
    }
    r.trim();
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    check_field(o);
    Poly r(field_);
    if (is_zero() || o.is_zero()) return r;
    const auto& F = *field_;
    const std::size_t n = c_.size() + o.c_.size() - 1;
    if (F.is_prime_field()) {
        const std::uint64_t p = F.order();
        std::vector<std::uint64_t> acc(n, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) acc[i + j] += static_cast<std::uint64_t>(c_[i]) * o.c_[j];
            if ((i & 255) == 255)
                for (auto& a : acc) a %= p;
        }
        r.c_.resize(n);
        for (std::size_t k = 0; k < n; ++k) r.c_[k] = static_cast<Elem>(acc[k] % p);
    } else {
        r.c_.assign(n, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] = F.add(r.c_[i + j], F.mul(c_[i], o.c_[j]));
        }
    }
    r.trim();
    return r;
}

std::pair<Poly, Poly> Poly::divrem(const Poly& a, const Poly& b) {
    a.check_field(b);
    if (b.is_zero()) throw std::domain_error("Poly::divrem: division by the zero polynomial");
    const auto& F = *a.field_;
    Poly quot(a.field_);
    if (a.degree() < b.degree()) return {quot, a};
    std::vector<Elem> rem = a.c_;
    const int db = b.degree();
    const Elem inv_lead = F.inv(b.c_.back());
    quot.c_.assign(static_cast<std::size_t>(a.degree() - db) + 1, 0);
    for (int d = a.degree(); d >= db; --d) {
        Elem top = rem[d];
        if (top == 0) continue;
        Elem t = F.mul(top, inv_lead);
        quot.c_[d - db] = t;
        for (int i = 0; i <= db; ++i) rem[d - db + i] = F.sub(rem[d - db + i], F.mul(t, b.c_[i]));
    }
    rem.resize(static_cast<std::size_t>(db));
    Poly r(a.field_);
    r.c_ = std::move(rem);
    r.trim();
    quot.trim();
    return {quot, r};
}

Poly Poly::operator%(const Poly& o) const {
    check_field(o);
    if (o.is_zero()) throw std::domain_error("Poly: remainder by the zero polynomial");
    if (degree() < o.degree()) return *this;
    const auto& F = *field_;
    std::vector<Elem> rem = c_;
    const int db = o.degree();
    const Elem inv_lead = F.inv(o.c_.back());
    for (int d = degree(); d >= db; --d) {
        Elem top = rem[d];
        if (top == 0) continue;
        Elem t = F.mul(top, inv_lead);
        for (int i = 0; i <= db; ++i) rem[d - db + i] = F.sub(rem[d - db + i], F.mul(t, o.c_[i]));
    }
    rem.resize(static_cast<std::size_t>(db));
    Poly r(field_);
    r.c_ = std::move(rem);
    r.trim();
    return r;
}

Poly Poly::scaled(Elem c) const {
    Poly r = *this;
    for (auto& x : r.c_) x = field_->mul(x, c);
    r.trim();
    return r;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(field_->inv(sgn()));
}

Poly Poly::derivative() const {
    Poly r(field_);
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        r.c_[i - 1] = field_->mul(c_[i], field_->from_int(static_cast<std::int64_t>(i)));
    r.trim();
    return r;
}

Poly::Elem Poly::eval(Elem x) const {
    Elem acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = field_->add(field_->mul(acc, x), *it);
    return acc;
}

Poly Poly::pow(unsigned e) const {
    Poly result = constant(field_, 1);
    Poly base = *this;
    while (e > 0) {
        if (e & 1u) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

bool Poly::divides(const Poly& other) const { return (other % *this).is_zero(); }

std::strong_ordering Poly::operator<=>(const Poly& o) const {
    if (auto c = degree() <=> o.degree(); c != 0) return c;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (auto c = c_[i] <=> o.c_[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

bool Poly::operator==(const Poly& o) const { return c_ == o.c_ && field_->order() == o.field_->order(); }

std::size_t Poly::hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ull ^ c_.size();
    for (Elem c : c_) h = (h ^ c) * 0x100000001b3ull;
    return h;
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

ExtendedGcd ext_gcd(const Poly& a, const Poly& b) {
    const auto& field = a.field_ptr();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::constant(field, 1), s1(field);
    Poly t0(field), t1 = Poly::constant(field, 1);
    while (!r1.is_zero()) {
        auto [quot, rem] = Poly::divrem(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(rem);
        Poly s2 = s0 - quot * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = t0 - quot * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    auto inv = a.field().inv(r0.sgn());
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

Poly powmod(const Poly& base, const BigInt& e, const Poly& m) {
    if (e < 0) throw std::domain_error("powmod: negative exponent");
    Poly result = Poly::constant(base.field_ptr(), 1) % m;
    if (e == 0) return result;
    Poly b = base % m;
    const auto top = static_cast<long>(boost::multiprecision::msb(e));
    for (long i = top; i >= 0; --i) {
        result = (result * result) % m;
        if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i))) result = (result * b) % m;
    }
    return result;
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& m) {
    Poly result = Poly::constant(base.field_ptr(), 1) % m;
    Poly b = base % m;
    while (e > 0) {
        if (e & 1u) result = (result * b) % m;
        e >>= 1;
        if (e) b = (b * b) % m;
    }
    return result;
}

std::uint64_t poly_index(const Poly& p) {
    std::uint64_t idx = 0;
    const std::uint64_t q = p.q();
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) idx = idx * q + *it;
    return idx;
}

Poly poly_from_index(FieldPtr field, std::uint64_t index) {
    const std::uint64_t q = field->order();
    std::vector<Poly::Elem> c;
    while (index > 0) {
        c.push_back(static_cast<Poly::Elem>(index % q));
        index /= q;
    }
    return Poly(std::move(field), std::move(c));
}

void for_each_monic(const FieldPtr& field, int degree, const std::function<void(const Poly&)>& fn) {
    if (degree < 0) return;
    const std::uint64_t q = field->order();
    std::uint64_t count = 1;
    for (int i = 0; i < degree; ++i) count *= q;
    std::vector<Poly::Elem> c(static_cast<std::size_t>(degree) + 1, 0);
    c[degree] = 1;
    for (std::uint64_t code = 0; code < count; ++code) {
        // c_0 is the most significant digit: lexicographic order on (c_0, c_1, ...).
        std::uint64_t r = code;
        for (int i = degree - 1; i >= 0; --i) {
            c[i] = static_cast<Poly::Elem>(r % q);
            r /= q;
        }
        fn(Poly(field, c));
    }
}

void for_each_below(const FieldPtr& field, int bound, const std::function<void(const Poly&)>& fn) {
    if (bound <= 0) return;
    const std::uint64_t q = field->order();
    std::uint64_t count = 1;
    for (int i = 0; i < bound; ++i) count *= q;
    for (std::uint64_t code = 0; code < count; ++code) fn(poly_from_index(field, code));
}

std::string format_poly(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    const auto& F = p.field();
    for (int k = p.degree(); k >= 0; --k) {
        auto c = p.coeff(k);
        if (c == 0) continue;
        if (!out.empty()) out += '+';
        if (k == 0) {
            out += format_scalar(F, c);
            continue;
        }
        if (c != 1) out += format_scalar(F, c) + "*";
        out += "T";
        if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
}

namespace {

Poly parse_term(const FieldPtr& field, const std::string& term, const std::string& whole) {
    auto bad = [&] { return std::invalid_argument("parse_poly: cannot parse '" + whole + "'"); };
    if (term.empty()) throw bad();
    auto tpos = term.find('T');
    if (tpos == std::string::npos) return Poly::constant(field, parse_scalar(*field, term));
    std::string coef = term.substr(0, tpos);
    if (!coef.empty() && coef.back() == '*') coef.pop_back();
    GaloisField::Elem c = coef.empty() ? 1 : parse_scalar(*field, coef);
    std::string rest = term.substr(tpos + 1);
    int k = 1;
    if (!rest.empty()) {
        if (rest[0] != '^' || rest.size() == 1) throw bad();
        std::size_t pos = 0;
        k = std::stoi(rest.substr(1), &pos);
        if (pos != rest.size() - 1 || k < 0) throw bad();
    }
    return Poly::monomial(field, c, k);
}

}  // namespace

Poly parse_poly(const FieldPtr& field, const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw std::invalid_argument("parse_poly: empty input");

    if (s.front() == '[') {
        if (s.back() != ']') throw std::invalid_argument("parse_poly: unterminated list '" + text + "'");
        std::vector<Poly::Elem> c;
        std::string body = s.substr(1, s.size() - 2);
        std::size_t start = 0;
        while (!body.empty() && start <= body.size()) {
            auto comma = body.find(',', start);
            std::string item = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            c.push_back(parse_scalar(*field, item));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return Poly(field, std::move(c));
    }

    Poly result(field);
    std::size_t i = 0;
    while (i < s.size()) {
        bool negate = false;
        if (s[i] == '+' || s[i] == '-') {
            negate = s[i] == '-';
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        Poly t = parse_term(field, s.substr(i, j - i), text);
        result += negate ? -t : t;
        i = j;
    }
    return result;
}

}  // namespace frobavg
