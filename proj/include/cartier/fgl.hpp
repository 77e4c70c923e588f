#ifndef CARTIER_FGL_HPP
#define CARTIER_FGL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>

#include <cartier/series.hpp>

namespace cartier
{

// One-dimensional commutative formal group law F(X, Y) = X + Y + sum a_ij X^i Y^j,
// truncated at total degree N. Instances are only produced by the validating
// constructors, so every FormalGroupLaw satisfies the axioms up to degree N.
class FormalGroupLaw
{
public:
    static FormalGroupLaw additive(const Ring &ring, std::uint32_t N);
    static FormalGroupLaw multiplicative(const Ring &ring, std::uint32_t N);
    // X + Y + sum a_ij X^i Y^j from a table of (i, j, a_ij), validated.
    static FormalGroupLaw from_coefficients(const Ring &ring, std::uint32_t N,
                                            const std::vector<std::tuple<std::uint32_t, std::uint32_t, RingElement>> &a);

    const Ring &ring() const noexcept
    {
        return F_.ring();
    }
    std::uint32_t truncation() const noexcept
    {
        return F_.truncation();
    }
    // Series in the variables (X, Y).
    const TruncatedSeries &series() const noexcept
    {
        return F_;
    }
    RingElement coefficient(std::uint32_t i, std::uint32_t j) const;
    // Nonzero a_ij with i, j >= 1, in grlex order of X^i Y^j.
    std::vector<std::tuple<std::uint32_t, std::uint32_t, RingElement>> coefficient_table() const;

    // F(a, b) for two series sharing a context.
    TruncatedSeries apply(const TruncatedSeries &a, const TruncatedSeries &b) const;

    bool operator==(const FormalGroupLaw &other) const
    {
        return F_ == other.F_;
    }

    std::string format() const
    {
        return F_.format();
    }
    // {"ring": ..., "N": N, "coeffs": [[i, j, "a_ij"], ...]}
    nlohmann::json to_json() const;
    static FormalGroupLaw from_json(const nlohmann::json &j);

private:
    explicit FormalGroupLaw(TruncatedSeries F) : F_(std::move(F)) {}
    friend FormalGroupLaw check_fgl_axioms(const TruncatedSeries &F);

    TruncatedSeries F_;
};

// First failed axiom of a candidate law, if any. Axioms are tried in the
// order commutativity, unit, associativity; monomial is rendered in X, Y, Z.
struct AxiomReport {
    bool valid = true;
    std::string axiom;
    std::string monomial;
    std::string discrepancy;

    nlohmann::json to_json() const;
};

AxiomReport fgl_axiom_report(const TruncatedSeries &F);
// Validates F (variables X, Y) or throws AxiomViolation carrying the report.
FormalGroupLaw check_fgl_axioms(const TruncatedSeries &F);

// iota(X) with F(X, iota(X)) = 0, by undetermined coefficients.
TruncatedSeries formal_inverse(const FormalGroupLaw &G);
// [n](X) for any integer n, univariate in X.
TruncatedSeries n_series(const FormalGroupLaw &G, long n);

struct Height {
    // When infinite, [p](X) vanished identically up to degree `truncation`.
    bool infinite = false;
    std::uint32_t value = 0;
    std::uint32_t truncation = 0;

    std::string format() const;
};

Height height(const FormalGroupLaw &G);

// Logarithm from the invariant differential; needs 1..N to be units.
TruncatedSeries fgl_log(const FormalGroupLaw &G);
// exp(l(X) + l(Y)) where exp is the reversion of l; l(X) = X + O(X^2).
FormalGroupLaw fgl_exp(const TruncatedSeries &l);

// lambda^{-1} F(lambda X, lambda Y) over ring[lambda].
FormalGroupLaw deform_to_normal_cone(const FormalGroupLaw &G, const std::string &var = "lambda");
FormalGroupLaw base_change(const FormalGroupLaw &G, const RingMap &phi);
// phi^{-1}(F(phi(X), phi(Y))) for a univariate phi = uX + ... with u a unit.
FormalGroupLaw conjugate(const FormalGroupLaw &G, const TruncatedSeries &phi);

// "Ĝ_a" or "Ĝ_m" when the law is literally one of the two standard laws.
std::optional<std::string> standard_law_name(const FormalGroupLaw &G);

} // namespace cartier

#endif
