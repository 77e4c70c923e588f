#ifndef CARTIER_RING_HPP
#define CARTIER_RING_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include <cartier/errors.hpp>
#include <cartier/monomial.hpp>

namespace cartier
{

using Integer = mpz_class;
using Rational = mpq_class;

struct PolyTerm;

// Value of an exact ring element. The representation is canonical for the
// ring it belongs to, so structural equality is ring equality:
//   Integers, IntegersMod  -> Integer (residues reduced into [0, m))
//   Rationals              -> Rational (canonicalized)
//   MonicQuotient          -> dense coefficient vector of length deg(f)
//   PolynomialExtension    -> sparse grlex-sorted terms, no zero coefficients
// Elements carry no ring pointer; all arithmetic goes through a Ring.
class RingElement
{
public:
    using Dense = std::vector<RingElement>;
    using Sparse = std::vector<PolyTerm>;

    RingElement() : rep_(Integer(0)) {}
    explicit RingElement(Integer v) : rep_(std::move(v)) {}
    explicit RingElement(Rational v) : rep_(std::move(v)) {}
    explicit RingElement(Dense v) : rep_(std::make_shared<const Dense>(std::move(v))) {}
    explicit RingElement(Sparse v) : rep_(std::make_shared<const Sparse>(std::move(v))) {}

    bool operator==(const RingElement &other) const;

    const Integer *as_integer() const
    {
        return std::get_if<Integer>(&rep_);
    }
    const Rational *as_rational() const
    {
        return std::get_if<Rational>(&rep_);
    }
    const Dense *as_dense() const
    {
        auto p = std::get_if<std::shared_ptr<const Dense>>(&rep_);
        return p ? p->get() : nullptr;
    }
    const Sparse *as_sparse() const
    {
        auto p = std::get_if<std::shared_ptr<const Sparse>>(&rep_);
        return p ? p->get() : nullptr;
    }

private:
    std::variant<Integer, Rational, std::shared_ptr<const Dense>, std::shared_ptr<const Sparse>> rep_;
};

struct PolyTerm {
    Monomial mono;
    RingElement coeff;
    bool operator==(const PolyTerm &) const = default;
};

enum class RingKind { Integers, Rationals, IntegersMod, PolynomialExtension, MonicQuotient };

// Handle to an immutable ring descriptor. Cheap to copy; equality is
// structural.
class Ring
{
public:
    static Ring integers();
    static Ring rationals();
    static Ring integers_mod(const Integer &m);
    static Ring polynomial(const Ring &base, std::vector<std::string> vars);
    // base[var]/(f) for f = var^d + c_{d-1} var^{d-1} + ... + c_0 given as the
    // full low-to-high coefficient list (leading entry must be one).
    static Ring monic_quotient(const Ring &base, std::string var, std::vector<RingElement> monic,
                               bool known_field = false);
    // base[var]/(var^e)
    static Ring truncated(const Ring &base, std::string var, unsigned e);
    // F_{p^k} as F_p[a]/(f) with f the first monic irreducible in lexicographic order.
    static Ring galois_field(std::uint64_t p, unsigned k, std::string var = "a");

    // "Z", "Q", "Zmod:M", "Z/M", "GF(q)", "poly:BASE:v1,v2", "BASE[v1,v2]",
    // "BASE[v]/(v^e)"; the suffix "[eps]" means dual numbers BASE[eps]/(eps^2).
    static Ring parse(std::string_view text);

    RingKind kind() const noexcept;
    Integer characteristic() const;
    bool is_field() const;
    bool is_finite() const;
    bool is_torsion_free() const;
    Ring base() const;                              // PolynomialExtension, MonicQuotient
    const std::vector<std::string> &variables() const; // own variables only
    const Integer &modulus() const;                 // IntegersMod
    const std::vector<RingElement> &quotient_modulus() const; // MonicQuotient
    std::size_t quotient_degree() const;
    // Every variable name visible through the base chain, outermost first.
    std::vector<std::string> all_variable_names() const;
    std::string name() const;

    bool operator==(const Ring &other) const;

    RingElement zero() const;
    RingElement one() const;
    RingElement from_integer(const Integer &v) const;
    RingElement from_int(long v) const
    {
        return from_integer(Integer(v));
    }
    // Errors with NonInvertibleInteger if the denominator is not a unit.
    RingElement from_rational(const Rational &v) const;
    // Polynomial generator (PolynomialExtension) or class of the quotient variable.
    RingElement generator(std::size_t index = 0) const;
    RingElement generator(std::string_view name) const;

    RingElement add(const RingElement &a, const RingElement &b) const;
    RingElement sub(const RingElement &a, const RingElement &b) const;
    RingElement neg(const RingElement &a) const;
    RingElement mul(const RingElement &a, const RingElement &b) const;
    RingElement mul_integer(const RingElement &a, const Integer &n) const;
    RingElement pow(const RingElement &a, std::uint64_t e) const;
    bool is_zero(const RingElement &a) const;
    bool is_one(const RingElement &a) const;
    bool equal(const RingElement &a, const RingElement &b) const
    {
        return a == b;
    }
    bool is_unit(const RingElement &a) const;
    RingElement inverse(const RingElement &a) const;
    // a / n, permitted only when n is a unit of the ring.
    RingElement div_integer(const RingElement &a, const Integer &n) const;
    bool is_integer_unit(const Integer &n) const;

    // PolynomialExtension only.
    const RingElement::Sparse &terms(const RingElement &a) const;
    RingElement from_terms(std::vector<PolyTerm> terms) const;
    // MonicQuotient only.
    const RingElement::Dense &coefficients(const RingElement &a) const;
    // Constant part (PolynomialExtension/MonicQuotient) as a base element.
    RingElement constant_term(const RingElement &a) const;

    // Finite rings only, in a fixed deterministic order (zero first).
    std::vector<RingElement> elements() const;
    std::optional<Integer> cardinality() const;

    // Display form; residues print bare.
    std::string format(const RingElement &a) const;
    // Coefficient-string form for JSON; residues print as "r mod m".
    std::string serialize(const RingElement &a) const;
    RingElement parse_element(std::string_view text) const;

    nlohmann::json to_json() const;
    static Ring from_json(const nlohmann::json &j);

    struct Desc;

private:
    explicit Ring(std::shared_ptr<const Desc> d) : d_(std::move(d)) {}
    std::shared_ptr<const Desc> d_;
};

// Structure-preserving map between coefficient rings. Built from the
// canonical map on prime subrings plus images of polynomial generators.
class RingMap
{
public:
    // Z -> anything, Q -> ring where used denominators are units (checked on
    // application), Z/m -> Z/d for d | m, R -> R[vars], R -> R[v]/(f), and the
    // identity; IllFormedRingMap otherwise.
    static RingMap canonical(const Ring &source, const Ring &target);
    // Source must be a PolynomialExtension; its variables go to the given
    // images, its base through canonical(base, target).
    static RingMap evaluate(const Ring &source, const Ring &target, std::vector<RingElement> images);
    static RingMap compose(const RingMap &first, const RingMap &second);

    const Ring &source() const noexcept
    {
        return source_;
    }
    const Ring &target() const noexcept
    {
        return target_;
    }
    RingElement operator()(const RingElement &a) const;

private:
    enum class Mode { Identity, FromIntegers, FromRationals, FromResidues, Evaluate, QuotientEvaluate, Composite };
    RingMap(Mode mode, Ring s, Ring t) : mode_(mode), source_(std::move(s)), target_(std::move(t)) {}
    Mode mode_;
    Ring source_;
    Ring target_;
    std::vector<RingElement> images_;
    std::shared_ptr<const RingMap> base_map_;
    std::shared_ptr<const RingMap> then_;
};

bool is_prime(std::uint64_t n);

// Joins (coefficient text, basis text) pairs as "c*b + ...", with "1" as the
// unit basis name.
std::string format_linear_combination(const std::vector<std::pair<std::string, std::string>> &parts);
// "c*x^2 + y - 1" with terms printed in the order given.
std::string format_terms(const Ring &coeffs, const std::vector<PolyTerm> &terms,
                         const std::vector<std::string> &names);

} // namespace cartier

#endif
