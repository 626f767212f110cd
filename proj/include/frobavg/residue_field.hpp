#pragma once

#include "frobavg/poly.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace frobavg {

/// F_p = A/pA for a monic irreducible p of degree x.
///
/// Elements are dense coordinate vectors of length x in the basis
/// 1, T, ..., T^{x-1} over F_q. The q-power Frobenius is F_q-linear, so its
/// iterates are stored as x-by-x matrices.
class ResidueField {
public:
    using Elem = GaloisField::Elem;
    using Residue = std::vector<Elem>;

    /// Throws std::invalid_argument unless `modulus` is monic irreducible.
    explicit ResidueField(Poly modulus);

    const Poly& modulus() const { return modulus_; }
    int degree() const { return x_; }
    const GaloisField& base() const { return *modulus_.field_ptr(); }
    const FieldPtr& base_ptr() const { return modulus_.field_ptr(); }
    std::uint32_t q() const { return modulus_.q(); }
    /// |p| = q^x.
    BigInt order() const { return modulus_.norm(); }

    Residue zero() const { return Residue(static_cast<std::size_t>(x_), 0); }
    Residue one() const;
    Residue scalar(Elem c) const;
    /// Image of T.
    Residue t_hat() const;
    Residue reduce(const Poly& a) const;
    Poly lift(const Residue& r) const;

    bool is_zero(const Residue& r) const;
    /// The F_q value when r lies in the constant subfield.
    std::optional<Elem> as_scalar(const Residue& r) const;

    Residue add(const Residue& a, const Residue& b) const;
    Residue sub(const Residue& a, const Residue& b) const;
    Residue neg(const Residue& a) const;
    Residue scale(Elem c, const Residue& a) const;
    Residue mul(const Residue& a, const Residue& b) const;
    Residue inv(const Residue& a) const;
    Residue pow(const Residue& a, const BigInt& e) const;

    /// a^{q^i}.
    Residue frobenius(const Residue& a, int i) const;

    /// Encoding sum r_i q^i in [0, q^x).
    std::uint64_t index(const Residue& r) const;
    Residue from_index(std::uint64_t idx) const;

private:
    Poly modulus_;
    int x_ = 0;
    // frob_[i] is the matrix of a -> a^{q^i}, row-major x*x.
    std::vector<std::vector<Elem>> frob_;
};

/// Multiplicative table for the residue field, making it a GaloisField with
/// the `index` encoding (constants keep their F_q encoding).
FieldPtr tabulate(const ResidueField& field);

}  // namespace frobavg
