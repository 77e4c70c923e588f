#ifndef CARTIER_SERIES_HPP
#define CARTIER_SERIES_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <cartier/ring.hpp>

namespace cartier
{

// Multivariate power series over a Ring, truncated at total degree N.
//
// Terms are kept sparse in canonical grlex order with no zero coefficients
// and no exponent vector of degree above N. Binary operations require the
// same ring, variable list and N (MismatchedContext otherwise).
class TruncatedSeries
{
public:
    TruncatedSeries(Ring ring, std::vector<std::string> vars, std::uint32_t N);

    static TruncatedSeries zero(const Ring &ring, std::vector<std::string> vars, std::uint32_t N)
    {
        return TruncatedSeries(ring, std::move(vars), N);
    }
    static TruncatedSeries constant(const Ring &ring, std::vector<std::string> vars, std::uint32_t N,
                                    const RingElement &c);
    static TruncatedSeries variable(const Ring &ring, std::vector<std::string> vars, std::uint32_t N,
                                    std::size_t index);
    // Terms of degree > N are dropped; repeated monomials are summed.
    static TruncatedSeries from_terms(const Ring &ring, std::vector<std::string> vars, std::uint32_t N,
                                      std::vector<PolyTerm> terms);
    // Univariate series from coefficients c_0, c_1, ...
    static TruncatedSeries univariate(const Ring &ring, std::string var, std::uint32_t N,
                                      const std::vector<RingElement> &coeffs);

    const Ring &ring() const noexcept
    {
        return ring_;
    }
    const std::vector<std::string> &variables() const noexcept
    {
        return vars_;
    }
    std::uint32_t truncation() const noexcept
    {
        return N_;
    }
    const std::vector<PolyTerm> &terms() const noexcept
    {
        return terms_;
    }
    bool is_zero() const noexcept
    {
        return terms_.empty();
    }
    bool same_context(const TruncatedSeries &other) const;

    RingElement coefficient(const Monomial &m) const;
    RingElement constant_term() const;
    // Lowest total degree carrying a nonzero term; N + 1 for the zero series.
    std::uint32_t order() const;

    TruncatedSeries operator+(const TruncatedSeries &other) const;
    TruncatedSeries operator-(const TruncatedSeries &other) const;
    TruncatedSeries operator-() const;
    TruncatedSeries operator*(const TruncatedSeries &other) const;
    TruncatedSeries scale(const RingElement &c) const;
    TruncatedSeries pow(std::uint64_t e) const;
    // Coefficientwise division by a unit integer.
    TruncatedSeries div_integer(const Integer &n) const;

    // Same terms, lower truncation.
    TruncatedSeries truncated(std::uint32_t N) const;
    // Re-home into a context with more variables; variable i goes to position map[i].
    TruncatedSeries embed(std::vector<std::string> vars, std::span<const std::size_t> map) const;
    // Apply a ring map coefficientwise.
    TruncatedSeries map_coefficients(const RingMap &phi) const;
    // Partial derivative with respect to variable i.
    TruncatedSeries derivative(std::size_t i) const;
    // Substitute a ring element for variable i (the variable stays in the context).
    TruncatedSeries evaluate_at(std::size_t i, const RingElement &value) const;

    bool operator==(const TruncatedSeries &other) const;

    std::string format() const;
    // {"ring": ..., "vars": [...], "N": N, "terms": [[[exps], "coeff"], ...]}
    nlohmann::json to_json() const;
    static TruncatedSeries from_json(const nlohmann::json &j);

private:
    void check_context(const TruncatedSeries &other) const;

    Ring ring_;
    std::vector<std::string> vars_;
    std::uint32_t N_;
    std::vector<PolyTerm> terms_;
};

// f(args[0], ..., args[k-1]) truncated at the arguments' N. f has k variables;
// every argument lives in one shared context and has zero constant term
// (NonNilpotentSubstitution otherwise). f's truncation must be at least N.
TruncatedSeries series_compose(const TruncatedSeries &f, std::span<const TruncatedSeries> args);

// Compositional inverse of a univariate f with f(0) = 0 and unit linear term.
TruncatedSeries series_reversion(const TruncatedSeries &f);

} // namespace cartier

#endif
