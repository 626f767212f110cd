#include "frobavg/drinfeld.hpp"

#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace frobavg {

FpField::FpField(Poly p) : residue_(std::move(p)) {
    if (residue_.order() > GaloisField::kMaxTableOrder)
        throw std::invalid_argument("FpField: |p| exceeds the table limit");
    table_ = tabulate(residue_);
    const std::uint64_t n = table_->order() - 1;
    std::uint64_t cur = 1 % n;
    for (int i = 0; i < residue_.degree(); ++i) {
        qpow_.push_back(cur);
        cur = (cur * q()) % n;
    }
}

std::shared_ptr<const FpField> FpField::create(const Poly& p) {
    return std::shared_ptr<const FpField>(new FpField(p));
}

FpField::Elem FpField::hat(const Poly& a) const {
    return static_cast<Elem>(residue_.index(residue_.reduce(a)));
}

Poly FpField::lift(Elem a) const { return residue_.lift(residue_.from_index(a)); }

FpField::Elem FpField::frobenius(Elem a, int i) const {
    if (a == 0) return 0;
    i %= x();
    if (i < 0) i += x();
    const std::uint64_t n = order() - 1;
    return table_->exp((static_cast<std::uint64_t>(table_->log(a)) * qpow_[static_cast<std::size_t>(i)]) % n);
}

std::vector<FpField::Elem> FpField::coords(Elem a) const {
    std::vector<Elem> out(static_cast<std::size_t>(x()));
    for (auto& c : out) {
        c = a % q();
        a /= q();
    }
    return out;
}

TwistedPoly::TwistedPoly(FpPtr field) : field_(std::move(field)) {}

TwistedPoly::TwistedPoly(FpPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
    trim();
}

TwistedPoly TwistedPoly::constant(FpPtr field, Elem c) { return TwistedPoly(std::move(field), {c}); }

TwistedPoly TwistedPoly::tau_power(FpPtr field, int k, Elem c) {
    std::vector<Elem> v(static_cast<std::size_t>(k) + 1, 0);
    v.back() = c;
    return TwistedPoly(std::move(field), std::move(v));
}

void TwistedPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

void TwistedPoly::check_field(const TwistedPoly& o) const {
    if (!field_->same_as(*o.field_)) throw std::invalid_argument("TwistedPoly: field mismatch");
}

TwistedPoly TwistedPoly::operator+(const TwistedPoly& o) const {
    check_field(o);
    const auto& F = field_->table();
    std::vector<Elem> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
    return TwistedPoly(field_, std::move(r));
}

TwistedPoly TwistedPoly::operator-(const TwistedPoly& o) const {
    check_field(o);
    const auto& F = field_->table();
    std::vector<Elem> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
    return TwistedPoly(field_, std::move(r));
}

TwistedPoly TwistedPoly::operator*(const TwistedPoly& o) const { return tw_mul(*this, o); }

TwistedPoly TwistedPoly::left_scaled(Elem alpha) const {
    const auto& F = field_->table();
    std::vector<Elem> r(c_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.mul(alpha, c_[i]);
    return TwistedPoly(field_, std::move(r));
}

TwistedPoly TwistedPoly::shifted(int k) const {
    if (is_zero()) return *this;
    std::vector<Elem> r(static_cast<std::size_t>(k), 0);
    r.insert(r.end(), c_.begin(), c_.end());
    return TwistedPoly(field_, std::move(r));
}

TwistedPoly TwistedPoly::pow(unsigned e) const {
    TwistedPoly result = constant(field_, 1);
    TwistedPoly base = *this;
    while (e) {
        if (e & 1u) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

bool TwistedPoly::operator==(const TwistedPoly& o) const { return field_->same_as(*o.field_) && c_ == o.c_; }

TwistedPoly tw_mul(const TwistedPoly& f, const TwistedPoly& g) {
    if (!f.field().same_as(g.field())) throw std::invalid_argument("tw_mul: field mismatch");
    if (f.is_zero() || g.is_zero()) return TwistedPoly(f.field_ptr());
    const auto& K = f.field();
    const auto& F = K.table();
    std::vector<TwistedPoly::Elem> r(static_cast<std::size_t>(f.degree() + g.degree()) + 1, 0);
    for (int i = 0; i <= f.degree(); ++i) {
        const auto alpha = f.coeff(i);
        if (alpha == 0) continue;
        for (int j = 0; j <= g.degree(); ++j) {
            const auto beta = g.coeff(j);
            if (beta == 0) continue;
            r[i + j] = F.add(r[i + j], F.mul(alpha, K.frobenius(beta, i)));
        }
    }
    return TwistedPoly(f.field_ptr(), std::move(r));
}

std::string format_twisted(const TwistedPoly& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = f.degree(); i >= 0; --i) {
        if (f.coeff(i) == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << f.field().format(f.coeff(i)) << ")";
        if (i == 1) os << "*tau";
        if (i > 1) os << "*tau^" << i;
    }
    return os.str();
}

FiniteDrinfeldModule::FiniteDrinfeldModule(FpPtr f, FpField::Elem g, FpField::Elem d)
    : field(std::move(f)), gamma(g), delta(d) {
    if (!field) throw std::invalid_argument("FiniteDrinfeldModule: null field");
    if (delta == 0) throw std::invalid_argument("FiniteDrinfeldModule: delta must be nonzero");
    if (gamma >= field->order() || delta >= field->order())
        throw std::invalid_argument("FiniteDrinfeldModule: element out of range");
}

TwistedPoly phi_T(const FiniteDrinfeldModule& m) {
    const Poly t = Poly::T(m.field->base_ptr());
    return TwistedPoly(m.field, {m.field->hat(t), m.gamma, m.delta});
}

TwistedPoly phi_image(const FiniteDrinfeldModule& m, const Poly& n) {
    if (n.is_zero()) return TwistedPoly(m.field);
    const TwistedPoly pt = phi_T(m);
    TwistedPoly acc(m.field);
    for (int i = n.degree(); i >= 0; --i) acc = acc * pt + TwistedPoly::constant(m.field, n.coeff(i));
    return acc;
}

namespace {

using Elem = GaloisField::Elem;

// Solves M y = b over F; returns nullopt unless the solution exists and is unique.
std::optional<std::vector<Elem>> solve_unique(const GaloisField& F, std::vector<std::vector<Elem>> rows,
                                              std::size_t n) {
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        const Elem inv = F.inv(rows[rank][col]);
        for (auto& v : rows[rank]) v = F.mul(v, inv);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            const Elem f = rows[r][col];
            for (std::size_t c = col; c <= n; ++c) rows[r][c] = F.sub(rows[r][c], F.mul(f, rows[rank][c]));
        }
        pivot_col.push_back(col);
        ++rank;
    }
    if (rank < n) return std::nullopt;
    for (std::size_t r = rank; r < rows.size(); ++r)
        if (rows[r][n] != 0) return std::nullopt;
    std::vector<Elem> y(n, 0);
    for (std::size_t r = 0; r < rank; ++r) y[pivot_col[r]] = rows[r][n];
    return y;
}

}  // namespace

CharPolyFrob frobenius_charpoly(const FiniteDrinfeldModule& m) {
    const FpField& K = *m.field;
    const GaloisField& F = K.base();
    const int x = K.x();
    const int half = x / 2;
    const std::size_t n = static_cast<std::size_t>(half) + 2;

    // columns: a_0..a_half, u
    std::vector<TwistedPoly> cols;
    const TwistedPoly pt = phi_T(m);
    TwistedPoly cur = TwistedPoly::constant(m.field, 1);
    for (int i = 0; i <= half; ++i) {
        cols.push_back(cur.shifted(x));
        cur = cur * pt;
    }
    cols.push_back(phi_image(m, K.modulus()));
    const TwistedPoly rhs = TwistedPoly::tau_power(m.field, 1).pow(static_cast<unsigned>(2 * x));

    // sum a_i (phi_{T^i} tau^x) - u phi_p = tau^{2x}, coordinate by coordinate
    std::vector<std::vector<Elem>> rows;
    for (int j = 0; j <= 2 * x; ++j) {
        std::vector<std::vector<Elem>> col_coords;
        for (const auto& c : cols) col_coords.push_back(K.coords(c.coeff(j)));
        const auto r = K.coords(rhs.coeff(j));
        for (int k = 0; k < x; ++k) {
            std::vector<Elem> row(n + 1);
            for (std::size_t c = 0; c + 1 < n; ++c) row[c] = col_coords[c][k];
            row[n - 1] = F.neg(col_coords[n - 1][k]);
            row[n] = r[k];
            rows.push_back(std::move(row));
        }
    }
    auto sol = solve_unique(F, std::move(rows), n);
    if (!sol) throw std::logic_error("frobenius_charpoly: singular or inconsistent system");
    CharPolyFrob cp{Poly(K.base_ptr(), std::vector<Elem>(sol->begin(), sol->end() - 1)), sol->back()};
    if (cp.u == 0) throw std::logic_error("frobenius_charpoly: solved u is zero");
    return cp;
}

bool frobenius_identity_holds(const FiniteDrinfeldModule& m, const CharPolyFrob& cp) {
    const int x = m.field->x();
    const TwistedPoly tau = TwistedPoly::tau_power(m.field, 1);
    TwistedPoly lhs = tau.pow(static_cast<unsigned>(2 * x)) - phi_image(m, cp.a).shifted(x) +
                      phi_image(m, m.field->modulus()).left_scaled(cp.u);
    return lhs.is_zero();
}

GaloisField::Elem power_residue_symbol(FpField::Elem g, const FpField& field) {
    if (g == 0) throw std::invalid_argument("power_residue_symbol: zero input");
    const Elem v = field.table().pow(g, (field.order() - 1) / (field.q() - 1));
    if (v >= field.q()) throw std::logic_error("power_residue_symbol: value outside F_q");
    return v;
}

bool iso_test_via_residues(const FiniteDrinfeldModule& m1, const FiniteDrinfeldModule& m2) {
    if (!m1.field->same_as(*m2.field)) throw std::invalid_argument("iso_test_via_residues: field mismatch");
    if (m1.gamma == 0 || m2.gamma == 0 || m1.delta == 0 || m2.delta == 0)
        throw std::invalid_argument("iso_test_via_residues: residues must be nonzero");
    const auto& F = m1.field->table();
    const Elem ratio = F.div(m2.gamma, m1.gamma);
    if (power_residue_symbol(ratio, *m1.field) != 1) return false;
    return F.pow(ratio, m1.field->q() + 1) == F.div(m2.delta, m1.delta);
}

bool iso_equivalent(const FiniteDrinfeldModule& m1, const FiniteDrinfeldModule& m2) {
    if (!m1.field->same_as(*m2.field)) throw std::invalid_argument("iso_equivalent: field mismatch");
    const bool z1 = m1.gamma == 0, z2 = m2.gamma == 0;
    if (z1 != z2) return false;
    if (!z1) return iso_test_via_residues(m1, m2);
    const auto& F = m1.field->table();
    const std::uint64_t n = F.order() - 1;
    const std::uint64_t q = m1.field->q();
    const std::uint64_t g = std::gcd(n, q * q - 1);
    return F.log(F.div(m2.delta, m1.delta)) % g == 0;
}

IsoClassification classify_modules(const FpPtr& field, std::uint64_t max_pairs) {
    const std::uint64_t Q = field->order();
    if (Q * Q > max_pairs) throw std::invalid_argument("classify_modules: |p|^2 exceeds the enumeration guard");
    const auto& F = field->table();
    const std::uint64_t q = field->q();
    const Elem g = F.generator();
    const Elem step_gamma = F.pow(g, q - 1);
    const Elem step_delta = F.pow(g, q * q - 1);

    IsoClassification out;
    out.class_of.assign(Q * Q, IsoClassification::kNoClass);
    for (Elem gamma = 0; gamma < Q; ++gamma) {
        for (Elem delta = 1; delta < Q; ++delta) {
            if (out.class_of[gamma * Q + delta] != IsoClassification::kNoClass) continue;
            const auto id = static_cast<std::uint32_t>(out.classes.size());
            std::uint64_t size = 0;
            Elem cg = gamma, cd = delta;
            do {
                out.class_of[cg * Q + cd] = id;
                ++size;
                cg = F.mul(cg, step_gamma);
                cd = F.mul(cd, step_delta);
            } while (cg != gamma || cd != delta);
            out.classes.push_back({gamma, delta, size, frobenius_charpoly(FiniteDrinfeldModule(field, gamma, delta))});
        }
    }
    return out;
}

std::vector<IsoClass> enumerate_iso_classes(const FpPtr& field, std::uint64_t max_pairs) {
    return classify_modules(field, max_pairs).classes;
}

}  // namespace frobavg
