#pragma once

#include "frobavg/constants.hpp"
#include "frobavg/drinfeld.hpp"
#include "frobavg/quadratic.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace frobavg {

/// Box(A, B) = {(g, Delta): deg g < A, deg Delta < B, Delta != 0}.
struct BoxSpec {
    int A = 1;
    int B = 1;
};

/// q^A (q^B - 1).
BigInt box_size(std::uint64_t q, const BoxSpec& box);

/// Largest q^A or q^B the empirical route will enumerate.
inline constexpr std::uint64_t kMaxBoxSide = 1ull << 24;

struct EmpiricalPrime {
    Poly p;
    /// #{(g, Delta) in the box: p does not divide Delta, charpoly of the reduction = (a, u)}
    BigInt box_count;
    /// sum of the sizes of the isomorphism classes over F_p with charpoly (a, u)
    BigInt class_weight;
};

/// Per-prime counts for the empirical route, in prime order.
std::vector<EmpiricalPrime> empirical_counts(int x, const BoxSpec& box, const Poly& a, GaloisField::Elem u,
                                             unsigned threads = 1);
/// (1/#Box) sum_p box_count.
Rational empirical_S(int x, const BoxSpec& box, const Poly& a, GaloisField::Elem u, unsigned threads = 1);

/// Requires A = B = x; true when box_count = class_weight at every prime.
bool exact_identity_check(int x, const BoxSpec& box, const Poly& a, GaloisField::Elem u, unsigned threads = 1);

struct MassPrime {
    Poly p;
    BigInt H;
    /// H minus the classes with a gamma = 0 representative; only for |p| <= kMaxGammaZeroField
    std::optional<BigInt> I;
    /// sum over monic r with r^2 | a^2 - 4up of L(1, chi_R)/|r|
    Rational l_sum;
    /// h(R) matches the class number formula for every R with nonconstant fundamental part
    bool formula_consistent = true;
};

inline constexpr std::uint64_t kMaxGammaZeroField = 1ull << 16;

/// x even requires -4u nonsquare; throws std::invalid_argument otherwise.
void check_admissible(int x, const Poly& a, GaloisField::Elem u);

std::vector<MassPrime> mass_counts(int x, const Poly& a, GaloisField::Elem u, ClassNumberCache* cache = nullptr,
                                   unsigned threads = 1);
/// (1/((q-1) q^x)) sum_p H_p.
Rational classnumber_S(int x, const Poly& a, GaloisField::Elem u, ClassNumberCache* cache = nullptr,
                       unsigned threads = 1);
/// C_inf q^{-x/2} sum_p l_sum.
HalfPowerRational l_value_form(int x, const std::vector<MassPrime>& rows);

/// Hypotheses of the asymptotic: q >= 17 and the two box inequalities.
struct HypothesisFlags {
    bool q_large = false;
    bool box_bounds = false;
    bool deg_a = false;
    bool within() const { return q_large && box_bounds && deg_a; }
};
HypothesisFlags hypothesis_flags(std::uint64_t q, int x, const BoxSpec& box, const Poly& a);

struct ExperimentConfig {
    std::uint32_t q = 3;
    int x = 1;
    std::string a = "0";
    GaloisField::Elem u = 1;
    std::optional<BoxSpec> box;  // defaults to A = B = x
    bool empirical = true;
    bool classnumber = true;
    bool main = true;
    unsigned threads = 1;
    std::optional<TruncationParams> truncation;
};

struct ExperimentReport {
    ExperimentConfig config;
    BoxSpec box;
    BigInt box_size;
    HypothesisFlags flags;
    std::optional<Rational> empirical_S;
    std::string empirical_note;  // why the route was skipped, if it was
    std::optional<Rational> classnumber_S;
    std::optional<HalfPowerRational> l_form;
    std::optional<Rational> C_a;
    std::optional<HalfPowerRational> main_term;
    std::optional<bool> exact_identity;
    bool formula_consistent = true;
    std::vector<EmpiricalPrime> empirical_rows;
    std::vector<MassPrime> mass_rows;
};

ExperimentReport run_experiment(const ExperimentConfig& config, ClassNumberCache* cache = nullptr);

nlohmann::json to_json(const ExperimentReport& report);
/// Header then rows x, route, num, den, half_power, decimal.
std::string to_csv(const std::vector<ExperimentReport>& reports);

/// {"num", "den", "half_power", "decimal"}.
nlohmann::json exact_json(const Rational& r);
nlohmann::json exact_json(const HalfPowerRational& r);

}  // namespace frobavg
