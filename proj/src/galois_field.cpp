#include "frobavg/galois_field.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

namespace frobavg {

namespace {

constexpr std::uint32_t kNoLog = std::numeric_limits<std::uint32_t>::max();

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint32_t add_digits(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    std::uint32_t r = 0, scale = 1;
    while (a != 0 || b != 0) {
        r += ((a % p + b % p) % p) * scale;
        a /= p;
        b /= p;
        scale *= p;
    }
    return r;
}

// Powers of T modulo the monic polynomial T^e + sum c[i] T^i over F_p, or
// an empty vector when T is not primitive.
std::vector<std::uint32_t> powers_of_t(const std::vector<std::uint32_t>& low, std::uint32_t p) {
    const std::size_t e = low.size();
    std::uint32_t order = 1;
    for (std::size_t i = 0; i < e; ++i) order *= p;

    std::vector<std::uint32_t> digits(e, 0);
    digits[0] = 1;
    std::vector<std::uint32_t> powers;
    powers.reserve(order - 1);
    for (std::uint32_t k = 0; k + 1 < order; ++k) {
        std::uint32_t idx = 0, scale = 1;
        for (std::size_t i = 0; i < e; ++i) {
            idx += digits[i] * scale;
            scale *= p;
        }
        if (k > 0 && idx == 1) return {};
        powers.push_back(idx);
        // multiply by T
        std::uint32_t top = digits[e - 1];
        for (std::size_t i = e - 1; i > 0; --i) digits[i] = digits[i - 1];
        digits[0] = 0;
        for (std::size_t i = 0; i < e; ++i) digits[i] = (digits[i] + (p - low[i]) * top) % p;
    }
    return powers;
}

}  // namespace

std::shared_ptr<const GaloisField> GaloisField::create(std::uint32_t q) {
    if (q < 3 || q > kMaxBaseOrder || q % 2 == 0)
        throw std::invalid_argument("GaloisField: q must be an odd prime power <= 65536");
    std::uint32_t p = 2;
    while (q % p != 0) ++p;
    unsigned e = 0;
    for (std::uint32_t r = q; r > 1; r /= p) {
        if (r % p != 0) throw std::invalid_argument("GaloisField: q must be a prime power");
        ++e;
    }
    if (!is_prime(p)) throw std::invalid_argument("GaloisField: q must be a prime power");

    std::vector<Elem> powers;
    if (e == 1) {
        for (Elem g = 2; g < q; ++g) {
            std::vector<Elem> pw;
            pw.reserve(q - 1);
            std::uint64_t v = 1;
            bool ok = true;
            for (std::uint32_t k = 0; k + 1 < q; ++k) {
                if (k > 0 && v == 1) {
                    ok = false;
                    break;
                }
                pw.push_back(static_cast<Elem>(v));
                v = v * g % q;
            }
            if (ok && v == 1) {
                powers = std::move(pw);
                break;
            }
        }
    } else {
        // First monic polynomial of degree e (lexicographic on low coefficients)
        // for which T is primitive; then g = T.
        std::vector<std::uint32_t> low(e, 0);
        for (std::uint32_t code = 0; powers.empty(); ++code) {
            std::uint32_t c = code;
            for (unsigned i = 0; i < e; ++i) {
                low[i] = c % p;
                c /= p;
            }
            if (low[0] == 0) continue;
            powers = powers_of_t(low, p);
        }
    }
    if (powers.size() != q - 1) throw std::logic_error("GaloisField: no primitive element found");

    auto f = std::shared_ptr<GaloisField>(new GaloisField());
    f->order_ = q;
    f->characteristic_ = p;
    f->degree_ = e;
    f->canonical_ = true;
    f->build_tables(std::move(powers), [p](Elem a, Elem b) { return add_digits(a, b, p); });
    return f;
}

std::shared_ptr<const GaloisField> GaloisField::from_powers(std::vector<Elem> powers,
                                                            std::uint32_t characteristic,
                                                            const std::function<Elem(Elem, Elem)>& add) {
    const std::size_t order = powers.size() + 1;
    if (order > kMaxTableOrder) throw std::invalid_argument("GaloisField: table too large");
    auto f = std::shared_ptr<GaloisField>(new GaloisField());
    f->order_ = static_cast<std::uint32_t>(order);
    f->characteristic_ = characteristic;
    unsigned e = 0;
    for (std::size_t r = order; r > 1; r /= characteristic) ++e;
    f->degree_ = e;
    f->build_tables(std::move(powers), add);
    return f;
}

void GaloisField::build_tables(std::vector<Elem> powers, const std::function<Elem(Elem, Elem)>& add_fn) {
    const std::uint32_t n = order_ - 1;
    log_.assign(order_, kNoLog);
    for (std::uint32_t k = 0; k < n; ++k) {
        if (powers[k] >= order_ || log_[powers[k]] != kNoLog)
            throw std::logic_error("GaloisField: power table is not a permutation");
        log_[powers[k]] = k;
    }
    exp_.resize(2 * static_cast<std::size_t>(n));
    for (std::uint32_t k = 0; k < n; ++k) exp_[k] = exp_[k + n] = powers[k];
    zech_.assign(n, kNoLog);
    for (std::uint32_t k = 0; k < n; ++k) {
        Elem s = add_fn(1, powers[k]);
        zech_[k] = s == 0 ? kNoLog : log_[s];
        if (s == 0) minus_one_ = powers[k];
    }
}

GaloisField::Elem GaloisField::add(Elem a, Elem b) const {
    if (is_prime_field()) {
        Elem s = a + b;
        return s >= order_ ? s - order_ : s;
    }
    if (a == 0) return b;
    if (b == 0) return a;
    const std::uint32_t n = order_ - 1;
    std::uint32_t la = log_[a], lb = log_[b];
    std::uint32_t k = lb >= la ? lb - la : lb + n - la;
    std::uint32_t z = zech_[k];
    if (z == kNoLog) return 0;
    return exp_[la + z];
}

GaloisField::Elem GaloisField::neg(Elem a) const {
    if (a == 0) return 0;
    if (is_prime_field()) return order_ - a;
    return mul(a, minus_one_);
}

GaloisField::Elem GaloisField::mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (is_prime_field())
        return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % order_);
    return exp_[log_[a] + log_[b]];
}

GaloisField::Elem GaloisField::inv(Elem a) const {
    if (a == 0) throw std::domain_error("GaloisField: inverse of zero");
    const std::uint32_t n = order_ - 1;
    std::uint32_t l = log_[a];
    return exp_[l == 0 ? 0 : n - l];
}

GaloisField::Elem GaloisField::pow(Elem a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    const std::uint64_t n = order_ - 1;
    return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % n)) % n];
}

std::uint32_t GaloisField::log(Elem a) const {
    if (a == 0 || a >= order_) throw std::domain_error("GaloisField: log of zero");
    return log_[a];
}

int GaloisField::quadratic_character(Elem a) const {
    if (a == 0) return 0;
    return log_[a] % 2 == 0 ? 1 : -1;
}

GaloisField::Elem GaloisField::from_int(std::int64_t n) const {
    std::int64_t p = characteristic_;
    std::int64_t r = n % p;
    if (r < 0) r += p;
    return static_cast<Elem>(r);
}

bool GaloisField::same_as(const GaloisField& o) const {
    if (this == &o) return true;
    return canonical_ && o.canonical_ && order_ == o.order_;
}

std::string format_scalar(const GaloisField& f, GaloisField::Elem a) {
    if (f.is_prime_field() || a <= 1) return std::to_string(a);
    std::uint32_t l = f.log(a);
    if (l == 1) return "g";
    return "g^" + std::to_string(l);
}

GaloisField::Elem parse_scalar(const GaloisField& f, const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("parse_scalar: empty scalar");
    bool negate = false;
    if (s[0] == '-') {
        negate = true;
        s.erase(0, 1);
    } else if (s[0] == '+') {
        s.erase(0, 1);
    }
    if (s.empty()) throw std::invalid_argument("parse_scalar: bad scalar '" + text + "'");
    GaloisField::Elem v = 0;
    if (s[0] == 'g') {
        std::uint64_t j = 1;
        if (s.size() > 1) {
            if (s[1] != '^' || s.size() == 2) throw std::invalid_argument("parse_scalar: bad scalar '" + text + "'");
            std::size_t pos = 0;
            j = std::stoull(s.substr(2), &pos);
            if (pos != s.size() - 2) throw std::invalid_argument("parse_scalar: bad scalar '" + text + "'");
        }
        v = f.exp(j);
    } else {
        std::size_t pos = 0;
        unsigned long long n = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("parse_scalar: bad scalar '" + text + "'");
        if (n >= f.order()) throw std::invalid_argument("parse_scalar: scalar out of range '" + text + "'");
        v = static_cast<GaloisField::Elem>(n);
    }
    return negate ? f.neg(v) : v;
}

}  // namespace frobavg
