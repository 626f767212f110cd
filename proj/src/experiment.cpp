#include "frobavg/experiment.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace frobavg {

namespace {

using Real = boost::multiprecision::cpp_bin_float_50;

// fn(i) for i < n, spread over `threads` workers; results land in slot i
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next++;
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!err) err = std::current_exception();
                next = n;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(threads, n); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

void check_common(int x, const Poly& a, GaloisField::Elem u) {
    if (x < 1) throw std::invalid_argument("x must be >= 1");
    if (!a.is_zero() && 2 * a.degree() >= x) throw std::invalid_argument("deg a must be < x/2");
    if (u == 0 || u >= a.q()) throw std::invalid_argument("u must be a nonzero element of F_q");
}

Real real_value(const HalfPowerRational& v) {
    Real r = Real(numerator(v.value())) / Real(denominator(v.value()));
    if (v.half_power() != 0) r *= pow(sqrt(Real(v.q())), v.half_power());
    return r;
}

std::string render(const Real& r) { return r.str(20); }

// C(a) is the slow part of a trend run; keep one value per (q, a, cutoff)
Rational cached_constant(const Poly& a, const TruncationParams& t) {
    static std::mutex mu;
    static std::map<std::tuple<std::uint32_t, std::string, int>, Rational> memo;
    const auto key = std::make_tuple(a.q(), format_poly(a), t.max_prime_deg);
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
    }
    Rational c = constant_C(a, t, CRoute::euler);
    std::lock_guard<std::mutex> lock(mu);
    memo.emplace(key, c);
    return c;
}

}  // namespace

BigInt box_size(std::uint64_t q, const BoxSpec& box) {
    if (box.A < 1 || box.B < 1) throw std::invalid_argument("box bounds must be >= 1");
    return ipow(static_cast<unsigned long>(q), static_cast<unsigned long>(box.A)) *
           (ipow(static_cast<unsigned long>(q), static_cast<unsigned long>(box.B)) - 1);
}

std::vector<EmpiricalPrime> empirical_counts(int x, const BoxSpec& box, const Poly& a, GaloisField::Elem u,
                                             unsigned threads) {
    check_common(x, a, u);
    const std::uint64_t q = a.q();
    box_size(q, box);
    const BigInt sideA = ipow(static_cast<unsigned long>(q), static_cast<unsigned long>(box.A));
    const BigInt sideB = ipow(static_cast<unsigned long>(q), static_cast<unsigned long>(box.B));
    if (sideA > kMaxBoxSide || sideB > kMaxBoxSide) throw std::invalid_argument("box too large to enumerate");
    if (ipow(static_cast<unsigned long>(q), static_cast<unsigned long>(2 * x)) > kMaxIsoPairs)
        throw std::invalid_argument("x too large to enumerate modules");

    const auto& F = a.field_ptr();
    const auto primes = enumerate_primes(F, x);
    const CharPolyFrob target{a, u};
    std::vector<EmpiricalPrime> out(primes.size(), EmpiricalPrime{Poly(F), 0, 0});

    parallel_for(primes.size(), threads, [&](std::size_t i) {
        const auto K = FpField::create(primes[i]);
        const auto& Kt = K->table();
        const std::uint64_t Q = K->order();
        const auto cls = classify_modules(K);
        std::vector<char> match(cls.classes.size(), 0);
        BigInt weight = 0;
        for (std::size_t c = 0; c < cls.classes.size(); ++c)
            if (cls.classes[c].charpoly == target) {
                match[c] = 1;
                weight += cls.classes[c].size;
            }

        // residues of c T^k, then histograms of g and Delta mod p
        const int top = std::max(box.A, box.B);
        std::vector<std::vector<FpField::Elem>> mono(static_cast<std::size_t>(top));
        for (int k = 0; k < top; ++k)
            for (std::uint32_t c = 0; c < q; ++c) mono[k].push_back(K->hat(Poly::monomial(F, c, k)));
        auto histogram = [&](int deg_bound, bool skip_zero) {
            std::vector<std::uint64_t> h(Q, 0);
            const auto n = static_cast<std::uint64_t>(ipow(static_cast<unsigned long>(q), static_cast<unsigned long>(deg_bound)));
            for (std::uint64_t idx = skip_zero ? 1 : 0; idx < n; ++idx) {
                FpField::Elem r = 0;
                std::uint64_t m = idx;
                for (int k = 0; m > 0; ++k, m /= q) r = Kt.add(r, mono[k][m % q]);
                ++h[r];
            }
            return h;
        };
        const auto hg = histogram(box.A, false);
        const auto hd = histogram(box.B, true);

        std::uint64_t count = 0;
        for (std::uint64_t g = 0; g < Q; ++g) {
            if (hg[g] == 0) continue;
            std::uint64_t row = 0;
            for (std::uint64_t d = 1; d < Q; ++d) {
                if (hd[d] == 0) continue;
                if (match[cls.class_of[g * Q + d]]) row += hd[d];
            }
            count += hg[g] * row;
        }
        out[i] = EmpiricalPrime{primes[i], BigInt(count), weight};
    });
    return out;
}

Rational empirical_S(int x, const BoxSpec& box, const Poly& a, GaloisField::Elem u, unsigned threads) {
    BigInt total = 0;
    for (const auto& row : empirical_counts(x, box, a, u, threads)) total += row.box_count;
    return Rational(total, box_size(a.q(), box));
}

bool exact_identity_check(int x, const BoxSpec& box, const Poly& a, GaloisField::Elem u, unsigned threads) {
    if (box.A != x || box.B != x) throw std::invalid_argument("exact identity needs A = B = x");
    for (const auto& row : empirical_counts(x, box, a, u, threads))
        if (row.box_count != row.class_weight) return false;
    return true;
}

void check_admissible(int x, const Poly& a, GaloisField::Elem u) {
    check_common(x, a, u);
    const auto& F = a.field();
    if (x % 2 == 0 && F.is_square(F.neg(F.mul(F.from_int(4), u))))
        throw std::invalid_argument("x even needs -4u nonsquare");
}

std::vector<MassPrime> mass_counts(int x, const Poly& a, GaloisField::Elem u, ClassNumberCache* cache,
                                   unsigned threads) {
    check_admissible(x, a, u);
    const auto& F = a.field_ptr();
    const std::uint64_t q = a.q();
    const auto primes = enumerate_primes(F, x);
    const CharPolyFrob target{a, u};
    const bool small = ipow(static_cast<unsigned long>(q), static_cast<unsigned long>(x)) <= kMaxGammaZeroField;
    std::vector<MassPrime> out(primes.size(), MassPrime{Poly(F), 0, std::nullopt, 0, true});

    parallel_for(primes.size(), threads, [&](std::size_t i) {
        const Poly& p = primes[i];
        MassPrime row{p, hurwitz_mass(a, u, p, cache), std::nullopt, 0, true};
        const Poly d = mass_discriminant(a, u, p);
        for (const auto& f : square_divisors(d)) {
            const Poly R = d / (f * f);
            row.l_sum += l_value_at_one(R) / Rational(f.norm());
            if (decompose_discriminant(R).D.degree() > 0 &&
                Rational(class_number(R, cache)) != class_number_formula_route(R))
                row.formula_consistent = false;
        }
        if (small) {
            // gamma = 0 classes: delta modulo (q^2 - 1)-th powers
            const auto K = FpField::create(p);
            const std::uint64_t N = K->order() - 1;
            const std::uint64_t cosets = std::gcd(N, q * q - 1);
            BigInt zero_classes = 0;
            for (std::uint64_t j = 0; j < cosets; ++j)
                if (frobenius_charpoly(FiniteDrinfeldModule(K, 0, K->table().exp(j))) == target) zero_classes += 1;
            row.I = row.H - zero_classes;
        }
        out[i] = std::move(row);
    });
    return out;
}

Rational classnumber_S(int x, const Poly& a, GaloisField::Elem u, ClassNumberCache* cache, unsigned threads) {
    BigInt total = 0;
    for (const auto& row : mass_counts(x, a, u, cache, threads)) total += row.H;
    const std::uint64_t q = a.q();
    return Rational(total, BigInt(q - 1) * ipow(static_cast<unsigned long>(q), static_cast<unsigned long>(x)));
}

HalfPowerRational l_value_form(int x, const std::vector<MassPrime>& rows) {
    if (rows.empty()) throw std::invalid_argument("l_value_form: no primes");
    const std::uint64_t q = rows.front().p.q();
    Rational s = 0;
    for (const auto& r : rows) s += r.l_sum;
    return c_infinity(q, x % 2 == 1) * HalfPowerRational(q, s, -x);
}

HypothesisFlags hypothesis_flags(std::uint64_t q, int x, const BoxSpec& box, const Poly& a) {
    HypothesisFlags f;
    f.q_large = q >= 17;
    const double lq = std::log(static_cast<double>(q)), lx = std::log(static_cast<double>(x));
    const double each = std::log(4.0) / lq * x + lx;
    const double sum = (0.5 + std::log(16.0) / lq) * x + lx;
    f.box_bounds = box.A > each && box.B > each && box.A + box.B > sum;
    f.deg_a = a.is_zero() || 2 * a.degree() < x;
    return f;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, ClassNumberCache* cache) {
    const auto F = GaloisField::create(cfg.q);
    const Poly a = parse_poly(F, cfg.a);
    check_common(cfg.x, a, cfg.u);
    if (cfg.classnumber) check_admissible(cfg.x, a, cfg.u);

    ExperimentReport rep;
    rep.config = cfg;
    rep.box = cfg.box.value_or(BoxSpec{cfg.x, cfg.x});
    rep.box_size = box_size(cfg.q, rep.box);
    rep.flags = hypothesis_flags(cfg.q, cfg.x, rep.box, a);
    const unsigned threads = std::max(1u, cfg.threads);

    if (cfg.empirical) {
        try {
            rep.empirical_rows = empirical_counts(cfg.x, rep.box, a, cfg.u, threads);
            BigInt total = 0;
            for (const auto& r : rep.empirical_rows) total += r.box_count;
            rep.empirical_S = Rational(total, rep.box_size);
            if (rep.box.A == cfg.x && rep.box.B == cfg.x) {
                bool ok = true;
                for (const auto& r : rep.empirical_rows) ok = ok && r.box_count == r.class_weight;
                rep.exact_identity = ok;
            }
        } catch (const std::invalid_argument& e) {
            rep.empirical_note = e.what();
        }
    }
    if (cfg.classnumber) {
        rep.mass_rows = mass_counts(cfg.x, a, cfg.u, cache, threads);
        BigInt total = 0;
        for (const auto& r : rep.mass_rows) {
            total += r.H;
            rep.formula_consistent = rep.formula_consistent && r.formula_consistent;
        }
        rep.classnumber_S =
            Rational(total, BigInt(cfg.q - 1) * ipow(static_cast<unsigned long>(cfg.q), static_cast<unsigned long>(cfg.x)));
        rep.l_form = l_value_form(cfg.x, rep.mass_rows);
    }
    if (cfg.main) {
        rep.C_a = cached_constant(a, cfg.truncation.value_or(default_truncation(cfg.q)));
        rep.main_term = main_term(cfg.x, a, *rep.C_a);
    }
    return rep;
}

nlohmann::json exact_json(const Rational& r) {
    return {{"num", to_string(numerator(r))}, {"den", to_string(denominator(r))}, {"half_power", 0},
            {"decimal", to_decimal(r, 20)}};
}

nlohmann::json exact_json(const HalfPowerRational& r) {
    const auto c = r.canonical();
    return {{"num", to_string(numerator(c.value()))},
            {"den", to_string(denominator(c.value()))},
            {"half_power", c.half_power()},
            {"decimal", c.decimal(20)}};
}

nlohmann::json to_json(const ExperimentReport& rep) {
    using nlohmann::json;
    const auto& c = rep.config;
    json j;
    j["schema"] = 1;
    j["parameters"] = {{"q", c.q}, {"x", c.x}, {"a", c.a}, {"u", c.u}, {"deg_g_bound", rep.box.A},
                       {"deg_delta_bound", rep.box.B}};
    j["box_size"] = to_string(rep.box_size);
    j["hypotheses"] = {{"q_at_least_17", rep.flags.q_large},
                       {"box_bounds", rep.flags.box_bounds},
                       {"deg_a", rep.flags.deg_a},
                       {"label", rep.flags.within() ? "within theorem hypotheses" : "outside theorem hypotheses"}};
    json routes = json::object();
    routes["empirical"] = rep.empirical_S ? exact_json(*rep.empirical_S) : json(nullptr);
    if (!rep.empirical_note.empty()) routes["empirical_note"] = rep.empirical_note;
    routes["classnumber"] = rep.classnumber_S ? exact_json(*rep.classnumber_S) : json(nullptr);
    routes["l_value_form"] = rep.l_form ? exact_json(*rep.l_form) : json(nullptr);
    routes["C_a"] = rep.C_a ? exact_json(*rep.C_a) : json(nullptr);
    routes["main_term"] = rep.main_term ? exact_json(*rep.main_term) : json(nullptr);
    j["routes"] = routes;

    json diag = json::object();
    if (rep.classnumber_S && rep.main_term) {
        const Real cn = Real(numerator(*rep.classnumber_S)) / Real(denominator(*rep.classnumber_S));
        const Real mt = real_value(*rep.main_term);
        diag["classnumber_over_main"] = render(cn / mt);
        diag["error_term"] = render(cn - mt);
    }
    if (rep.empirical_S && rep.classnumber_S && *rep.classnumber_S != 0)
        diag["empirical_over_classnumber"] = to_decimal(*rep.empirical_S / *rep.classnumber_S, 20);
    if (rep.l_form && rep.classnumber_S && *rep.classnumber_S != 0)
        diag["l_value_form_over_classnumber"] = render(real_value(*rep.l_form) /
                                                       (Real(numerator(*rep.classnumber_S)) / Real(denominator(*rep.classnumber_S))));
    j["diagnostics"] = diag;
    j["exact_identity"] = rep.exact_identity ? json(*rep.exact_identity) : json(nullptr);
    j["class_number_formula_consistent"] = rep.formula_consistent;

    std::map<std::string, json> by_prime;
    std::vector<std::string> order;
    auto slot = [&](const Poly& p) -> json& {
        const std::string key = format_poly(p);
        if (!by_prime.count(key)) {
            order.push_back(key);
            by_prime[key] = {{"p", key}};
        }
        return by_prime[key];
    };
    for (const auto& r : rep.empirical_rows) {
        auto& s = slot(r.p);
        s["box_count"] = to_string(r.box_count);
        s["class_weight"] = to_string(r.class_weight);
    }
    for (const auto& r : rep.mass_rows) {
        auto& s = slot(r.p);
        s["H"] = to_string(r.H);
        s["I"] = r.I ? json(to_string(*r.I)) : json(nullptr);
        s["l_sum"] = {{"num", to_string(numerator(r.l_sum))}, {"den", to_string(denominator(r.l_sum))}};
    }
    json primes = json::array();
    for (const auto& k : order) primes.push_back(by_prime[k]);
    j["primes"] = primes;
    return j;
}

std::string to_csv(const std::vector<ExperimentReport>& reports) {
    std::ostringstream os;
    os << "x,route,num,den,half_power,decimal\n";
    auto row = [&](int x, const char* route, const nlohmann::json& e) {
        os << x << ',' << route << ',' << e["num"].get<std::string>() << ',' << e["den"].get<std::string>() << ','
           << e["half_power"].get<int>() << ',' << e["decimal"].get<std::string>() << '\n';
    };
    for (const auto& r : reports) {
        if (r.empirical_S) row(r.config.x, "empirical", exact_json(*r.empirical_S));
        if (r.classnumber_S) row(r.config.x, "classnumber", exact_json(*r.classnumber_S));
        if (r.l_form) row(r.config.x, "l_value_form", exact_json(*r.l_form));
        if (r.main_term) row(r.config.x, "main", exact_json(*r.main_term));
    }
    return os.str();
}

}  // namespace frobavg
