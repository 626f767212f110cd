#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace frobavg {

/// A finite field of odd order Q, elements encoded as integers 0..Q-1.
///
/// The encoding is the base-p digit vector of the element in a fixed
/// polynomial basis over the subfield used to build the table (the prime
/// field for `create`). 0 and 1 encode zero and one, and integers below the
/// characteristic encode the prime subfield. Multiplication and addition go
/// through discrete-log, antilog and Zech tables.
class GaloisField {
public:
    using Elem = std::uint32_t;

    static constexpr std::uint32_t kMaxBaseOrder = 1u << 16;
    static constexpr std::uint32_t kMaxTableOrder = 1u << 24;

    /// F_q for an odd prime power q <= 2^16.
    static std::shared_ptr<const GaloisField> create(std::uint32_t q);

    /// Table field from the successive powers of a primitive element.
    ///
    /// `powers[k]` is the encoding of g^k for k in [0, Q-1); `add` adds two
    /// encodings. Used to tabulate extensions F_{q^m} built as residue fields.
    static std::shared_ptr<const GaloisField> from_powers(std::vector<Elem> powers,
                                                          std::uint32_t characteristic,
                                                          const std::function<Elem(Elem, Elem)>& add);

    std::uint32_t order() const { return order_; }
    std::uint32_t characteristic() const { return characteristic_; }
    /// Degree over the prime field.
    unsigned degree() const { return degree_; }
    bool is_prime_field() const { return order_ == characteristic_; }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const;

    Elem generator() const { return exp_[1 % (order_ - 1)]; }
    /// Discrete log to the base `generator()`; `a` must be nonzero.
    std::uint32_t log(Elem a) const;
    Elem exp(std::uint64_t k) const { return exp_[k % (order_ - 1)]; }

    /// +1 for nonzero squares, -1 for nonsquares, 0 for zero.
    int quadratic_character(Elem a) const;
    bool is_square(Elem a) const { return quadratic_character(a) >= 0; }

    /// Image of an integer in the prime subfield.
    Elem from_int(std::int64_t n) const;

    /// Same table and same encoding.
    bool same_as(const GaloisField& o) const;

private:
    GaloisField() = default;
    void build_tables(std::vector<Elem> powers, const std::function<Elem(Elem, Elem)>& add);

    std::uint32_t order_ = 0;
    std::uint32_t characteristic_ = 0;
    unsigned degree_ = 0;
    bool canonical_ = false;
    Elem minus_one_ = 0;
    std::vector<Elem> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> zech_;  // log(1 + g^k), kNoLog when 1 + g^k = 0
};

using FieldPtr = std::shared_ptr<const GaloisField>;

/// Text form of a scalar: decimal in a prime field, `g^j` otherwise.
std::string format_scalar(const GaloisField& f, GaloisField::Elem a);
/// Accepts a decimal encoding or `g`, `g^j`, optionally prefixed by '-'.
GaloisField::Elem parse_scalar(const GaloisField& f, const std::string& text);

}  // namespace frobavg
