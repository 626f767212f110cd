#pragma once

#include "frobavg/residue_field.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace frobavg {

/// F_p = A/pA with log tables, the coefficient field of F_p{tau}.
///
/// Elements use the ResidueField index encoding, so F_q sits inside as the
/// encodings 0..q-1 and F_q-coordinates are the base-q digits.
class FpField {
public:
    using Elem = GaloisField::Elem;

    /// Throws std::invalid_argument unless p is monic irreducible and q^deg p
    /// fits the table limit.
    static std::shared_ptr<const FpField> create(const Poly& p);

    const ResidueField& residue() const { return residue_; }
    const Poly& modulus() const { return residue_.modulus(); }
    const GaloisField& table() const { return *table_; }
    const GaloisField& base() const { return residue_.base(); }
    const FieldPtr& base_ptr() const { return residue_.base_ptr(); }
    std::uint32_t q() const { return residue_.q(); }
    int x() const { return residue_.degree(); }
    /// |p|.
    std::uint32_t order() const { return table_->order(); }

    /// Reduction a -> a mod p.
    Elem hat(const Poly& a) const;
    Poly lift(Elem a) const;
    /// a^{q^i}.
    Elem frobenius(Elem a, int i) const;
    /// F_q-coordinates (base-q digits), length x.
    std::vector<Elem> coords(Elem a) const;
    /// Scalar c in F_q times a.
    Elem scale(Elem c, Elem a) const { return table_->mul(c, a); }

    bool same_as(const FpField& o) const { return this == &o || modulus() == o.modulus(); }

    std::string format(Elem a) const { return format_poly(lift(a)); }
    Elem parse(const std::string& text) const { return hat(parse_poly(base_ptr(), text)); }

private:
    explicit FpField(Poly p);

    ResidueField residue_;
    FieldPtr table_;
    std::vector<std::uint64_t> qpow_;  // q^i mod (|p| - 1)
};

using FpPtr = std::shared_ptr<const FpField>;

/// Element of F_p{tau}; coefficient i belongs to tau^i.
class TwistedPoly {
public:
    using Elem = FpField::Elem;

    explicit TwistedPoly(FpPtr field);
    TwistedPoly(FpPtr field, std::vector<Elem> coeffs);

    static TwistedPoly constant(FpPtr field, Elem c);
    static TwistedPoly tau_power(FpPtr field, int k, Elem c = 1);

    const FpPtr& field_ptr() const { return field_; }
    const FpField& field() const { return *field_; }
    int degree() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Elem coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0; }
    const std::vector<Elem>& coeffs() const { return c_; }

    TwistedPoly operator+(const TwistedPoly& o) const;
    TwistedPoly operator-(const TwistedPoly& o) const;
    TwistedPoly operator*(const TwistedPoly& o) const;
    /// alpha * f for alpha in F_p (left multiplication).
    TwistedPoly left_scaled(Elem alpha) const;
    /// f * tau^k.
    TwistedPoly shifted(int k) const;
    TwistedPoly pow(unsigned e) const;

    bool operator==(const TwistedPoly& o) const;

private:
    void trim();
    void check_field(const TwistedPoly& o) const;

    FpPtr field_;
    std::vector<Elem> c_;
};

/// (alpha tau^i)(beta tau^j) = alpha beta^{q^i} tau^{i+j}, extended bilinearly.
TwistedPoly tw_mul(const TwistedPoly& f, const TwistedPoly& g);
std::string format_twisted(const TwistedPoly& f);

/// The rank-2 module T -> T^ + gamma tau + delta tau^2 over F_p.
struct FiniteDrinfeldModule {
    FiniteDrinfeldModule(FpPtr field, FpField::Elem gamma, FpField::Elem delta);

    FpPtr field;
    FpField::Elem gamma;
    FpField::Elem delta;
};

/// X^2 - a X + u p.
struct CharPolyFrob {
    Poly a;
    GaloisField::Elem u;

    bool operator==(const CharPolyFrob& o) const { return u == o.u && a == o.a; }
};

TwistedPoly phi_T(const FiniteDrinfeldModule& m);
/// phi_n by Horner evaluation.
TwistedPoly phi_image(const FiniteDrinfeldModule& m, const Poly& n);

/// The unique (a, u) with deg a <= x/2 and tau^{2x} - phi_a tau^x + u phi_p = 0.
/// Throws std::logic_error if the linear system is singular or inconsistent.
CharPolyFrob frobenius_charpoly(const FiniteDrinfeldModule& m);
/// Recomputes the identity in F_p{tau}.
bool frobenius_identity_holds(const FiniteDrinfeldModule& m, const CharPolyFrob& cp);

/// g^{(|p|-1)/(q-1)}, an element of F_q^*.
GaloisField::Elem power_residue_symbol(FpField::Elem g, const FpField& field);

bool iso_equivalent(const FiniteDrinfeldModule& m1, const FiniteDrinfeldModule& m2);
/// Residue form of the isomorphism test; all of gamma_i, delta_i must be nonzero.
bool iso_test_via_residues(const FiniteDrinfeldModule& m1, const FiniteDrinfeldModule& m2);

struct IsoClass {
    FpField::Elem gamma;  // representative with the smallest (gamma, delta) encoding
    FpField::Elem delta;
    std::uint64_t size;
    CharPolyFrob charpoly;
};

struct IsoClassification {
    std::vector<IsoClass> classes;
    /// class index of the pair (gamma, delta), indexed gamma * |p| + delta;
    /// kNoClass when delta = 0.
    std::vector<std::uint32_t> class_of;
    static constexpr std::uint32_t kNoClass = 0xffffffffu;
};

/// Largest |p|^2 accepted by the enumeration.
inline constexpr std::uint64_t kMaxIsoPairs = 1ull << 26;

/// All isomorphism classes of rank-2 modules over F_p, with their charpolys.
/// Throws std::invalid_argument when |p|^2 exceeds `max_pairs`.
IsoClassification classify_modules(const FpPtr& field, std::uint64_t max_pairs = kMaxIsoPairs);
std::vector<IsoClass> enumerate_iso_classes(const FpPtr& field, std::uint64_t max_pairs = kMaxIsoPairs);

}  // namespace frobavg
