#ifndef CARTIER_DUAL_HPP
#define CARTIER_DUAL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <cartier/algebra.hpp>
#include <cartier/fgl.hpp>

namespace cartier
{

// Divided-power coalgebra on x^[0..N]: Δ(x^[n]) = sum_{i+j=n} x^[i] ⊗ x^[j],
// ε(x^[n]) = δ_{n,0}, x^[n] of weight -n.
class DividedPowerCoalgebra
{
public:
    DividedPowerCoalgebra(Ring ring, std::uint32_t N) : ring_(std::move(ring)), N_(N) {}

    const Ring &ring() const noexcept
    {
        return ring_;
    }
    std::uint32_t truncation() const noexcept
    {
        return N_;
    }
    // Pairs (i, j) with x^[i] ⊗ x^[j] in Δ(x^[n]).
    std::vector<std::pair<std::uint32_t, std::uint32_t>> comultiply(std::uint32_t n) const;
    RingElement counit(std::uint32_t n) const;
    static int weight(std::uint32_t n)
    {
        return -static_cast<int>(n);
    }

    // Coassociativity, counit laws and weight preservation on the basis.
    bool check() const;

private:
    Ring ring_;
    std::uint32_t N_;
};

// Coefficient vector over x^[0..N].
using DpVec = std::vector<RingElement>;

// The divided-power coalgebra with a commutative product x^[i] x^[j] =
// sum_k c^k_ij x^[k], defined for i + j <= N (the truncation keeps x^[0..N]
// and the products that can be read off F up to degree N), and an antipode.
class DividedPowerHopf
{
public:
    // mul[i][j] for i + j <= N; antipode[n] = S(x^[n]).
    DividedPowerHopf(Ring ring, std::uint32_t N, std::vector<std::vector<DpVec>> mul, std::vector<DpVec> antipode);

    const DividedPowerCoalgebra &coalgebra() const noexcept
    {
        return C_;
    }
    const Ring &ring() const noexcept
    {
        return C_.ring();
    }
    std::uint32_t truncation() const noexcept
    {
        return C_.truncation();
    }
    // c^k_ij; IndexOutOfRange if i + j > N.
    const RingElement &constant(std::uint32_t i, std::uint32_t j, std::uint32_t k) const;
    const DpVec &product(std::uint32_t i, std::uint32_t j) const;
    const DpVec &antipode(std::uint32_t n) const
    {
        return S_.at(n);
    }
    // Product of two elements; terms x^[i] x^[j] with i + j > N must have a
    // zero coefficient product (IndexOutOfRange otherwise).
    DpVec multiply(const DpVec &a, const DpVec &b) const;
    DpVec basis(std::uint32_t n) const;

    // Copy with one structure constant replaced, for negative controls.
    DividedPowerHopf with_constant(std::uint32_t i, std::uint32_t j, std::uint32_t k, RingElement c) const;
    // Apply a ring map to every constant.
    DividedPowerHopf map_coefficients(const RingMap &phi) const;
    bool operator==(const DividedPowerHopf &other) const;

    // x^[1] x^[1] = x^[1] + 2 x^[2]
    std::string format_product(std::uint32_t i, std::uint32_t j) const;
    std::string format(const DpVec &v) const;

    // {"ring", "N", "mul": [[i, j, [[k, "c"], ...]], ...], "antipode": [[n, [[m, "c"], ...]], ...]}
    nlohmann::json to_json() const;
    // Raw table, not checked; use hopf_axiom_report on the result.
    static DividedPowerHopf from_json(const nlohmann::json &j);

private:
    DividedPowerCoalgebra C_;
    std::vector<std::vector<DpVec>> mul_;
    std::vector<DpVec> S_;
};

// First failing axiom: "unit", "commutativity", "associativity",
// "counit_multiplicative", "bialgebra", "antipode", "antipode_involution".
struct HopfReport {
    bool valid = true;
    std::string axiom;
    std::vector<std::uint32_t> witness;

    nlohmann::json to_json() const;
};
HopfReport hopf_axiom_report(const DividedPowerHopf &H);

// Constants c^k_ij = [X^i Y^j] F(X, Y)^k and the antipode dual to the formal
// inverse. The Hopf axioms are verified before returning (HopfAxiomFailure).
DividedPowerHopf cartier_dual(const FormalGroupLaw &G);

// Weight bookkeeping: x^[n] has weight -n and the variable lambda (if the
// coefficient ring has it) the given weight. Each term of c^k_ij must satisfy
// -i - j = -k + lambda_weight * deg_lambda.
struct WeightReport {
    bool homogeneous = true;
    int lambda_weight = -1;
    std::size_t checked = 0;
    // i, j, k and the offending coefficient term when inhomogeneous
    std::vector<std::uint32_t> witness;
    std::string term;

    nlohmann::json to_json() const;
};
WeightReport weight_report(const DividedPowerHopf &H, const std::string &lambda = "lambda", int lambda_weight = -1);
// As weight_report, throwing WeightInhomogeneity on failure.
WeightReport filtered_dual_weights(const DividedPowerHopf &H, const std::string &lambda = "lambda",
                                   int lambda_weight = -1);

// Pairing between R[[X]] and the divided powers, <X^a, x^[n]> = δ_an.
struct PairingReport {
    bool ok = true;
    // "product", "coproduct" or "antipode" with (i, j, k)
    std::string identity;
    std::vector<std::uint32_t> witness;

    nlohmann::json to_json() const;
};
// <f g, X^k> = <f ⊗ g, F(X, Y)^k>, <Δ f, X^i ⊗ X^j> = <f, X^{i+j}> and
// <S f, X^m> = <f, ι(X)^m> for all basis elements up to degree N.
PairingReport dual_pairing_check(const FormalGroupLaw &G, const DividedPowerHopf &H);

// Degrees n <= n_max for which every monomial of F(X, Y)^n has total degree
// >= n. PreservationFailure on the first degree that fails.
std::vector<std::uint32_t> comultiplication_preserves_adic(const FormalGroupLaw &G, std::uint32_t n_max);

// Augmented algebra from a ring: a finite field k as the one-dimensional
// algebra, or k[v]/(f) with f(0) = 0 as a univariate algebra.
PresentedAlgebra augmented_algebra(const Ring &ring);

struct GrouplikePoints {
    // parameters a with g_a = sum a^n x^[n] grouplike, in enumeration order
    std::vector<Vec> parameters;
    // table[i][j] = index of the parameter of g_i g_j
    std::vector<std::vector<std::size_t>> table;
    // the parameters are exactly the nilpotent elements of A
    bool equals_nilradical = false;
    // g_a g_b = g_{F(a, b)} for every pair
    bool law_matches = false;

    nlohmann::json to_json(const PresentedAlgebra &A) const;
};
// Grouplike elements of H ⊗ A for a finite augmented algebra A whose
// augmentation ideal m (generated by A's generators) is nilpotent. Found by
// enumerating x^[1]-coefficients; every other coefficient is then forced.
// NonNilpotentAugmentation if m is not nilpotent, IndeterminateAtTruncation
// if m^{N+1} != 0, RingNotFinite for infinite A.
GrouplikePoints grouplike_points(const FormalGroupLaw &G, const DividedPowerHopf &H, const PresentedAlgebra &A);

} // namespace cartier

#endif
