#ifndef CARTIER_FILTRATION_HPP
#define CARTIER_FILTRATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <cartier/algebra.hpp>
#include <cartier/fgl.hpp>

namespace cartier
{

// One level of a filtration: the ideal as a subspace plus the generators it
// was given by.
struct FiltrationLevel {
    Subspace space;
    std::vector<Vec> gens;
};

// Descending multiplicative chain of ideals A = F^0 ⊇ F^1 ⊇ ... ⊇ F^top,
// with F^n = A for n <= 0 and F^n = 0 for n > top (the truncation). The
// constructor checks that each level is an ideal, that the chain descends,
// and that F^a F^b ⊆ F^{a+b} on generator products for a + b <= top.
class FilteredAlgebra
{
public:
    // levels[n-1] generates F^n for n = 1..top.
    static FilteredAlgebra from_chain(PresentedAlgebra A, const std::vector<std::vector<Vec>> &levels);
    // F^n = I^n for n = 1..top. ImproperIdeal if I = A.
    static FilteredAlgebra adic(PresentedAlgebra A, const std::vector<Vec> &ideal_gens, std::uint32_t top);
    // F^1 = 0.
    static FilteredAlgebra trivial(PresentedAlgebra A);

    const PresentedAlgebra &algebra() const noexcept
    {
        return A_;
    }
    std::uint32_t top() const noexcept
    {
        return static_cast<std::uint32_t>(levels_.size());
    }
    // F^n for any integer n.
    const Subspace &level(long n) const;
    // Generators of F^n (basis of A for n <= 0, empty above top).
    std::vector<Vec> level_generators(long n) const;
    std::vector<std::size_t> dimensions() const;

    // The truncation is consistent with lim F^n = 0: every product
    // F^a F^b with a, b >= 1 and a + b = top + 1 vanishes.
    bool is_complete() const;

    // {"algebra": ..., "chain": {"1": [...], ...}, "N_top": top}
    nlohmann::json to_json() const;
    // Keys <= 0 must describe all of A (NotDiscrete otherwise); a key missing
    // from 1..N_top repeats the level below it.
    static FilteredAlgebra from_json(const nlohmann::json &j);

private:
    FilteredAlgebra(PresentedAlgebra A, std::vector<FiltrationLevel> levels);

    PresentedAlgebra A_;
    std::vector<FiltrationLevel> levels_;
    Subspace full_;
    Subspace zero_;
};

// gr^n = F^n / F^{n+1} for n = 0..top with the induced product. Basis
// element names are "[m]_n" for a representative m of weight n.
GradedAlgebra associated_graded(const FilteredAlgebra &FA);

struct UnicityReport {
    bool certified = false;
    // "F1_in_I" or "gr_generated_in_weight_1" when a hypothesis fails.
    std::string failed_hypothesis;
    std::string detail;
    std::uint32_t top = 0;
    std::vector<std::size_t> filtration_gr_dims;
    std::vector<std::size_t> adic_gr_dims;
    // n with F^n = I^n verified, for the certificate
    std::vector<std::uint32_t> checked_levels;

    nlohmann::json to_json() const;
};

// Checks the hypotheses of the adic unicity statement for FA against the
// ideal I and, when they hold, verifies F^n = I^n for every n. Throws
// NotComplete if FA is not complete and TheoremViolation if the hypotheses
// hold but some F^n differs from I^n.
UnicityReport check_adic_unicity(const FilteredAlgebra &FA, const std::vector<Vec> &ideal_gens);

// Rees algebra ⊕ F^n t^{-n} at truncation: weight -n component F^n for
// n = 0..top, t acting by inclusion F^{n+1} -> F^n; in positive t-degree the
// components are copies of A.
class ReesAlgebra
{
public:
    explicit ReesAlgebra(FilteredAlgebra FA) : FA_(std::move(FA)) {}

    const FilteredAlgebra &filtered() const noexcept
    {
        return FA_;
    }
    // dim of the weight -n component, n = 0..top
    std::vector<std::size_t> component_dimensions() const;

    struct Fiber {
        PresentedAlgebra algebra;
        // weight of each basis element (all zero for the fiber at 1)
        std::vector<int> weights;
        // columns: images of the fiber's basis in the comparison algebra
        std::vector<Vec> iso;
        IsoCheck check;
        std::vector<std::size_t> dimensions;
    };
    // Fiber at t = 1 compared with A, via the map sending x t^{-n} to x.
    Fiber fiber_at_one() const;
    // Fiber at t = 0 compared with associated_graded(FA).
    Fiber fiber_at_zero() const;

private:
    FilteredAlgebra FA_;
};

// For the adic filtration on k[x]/(x^{N+1}) with I = (x) and a law G over k
// truncated at N: the comultiplication of the Rees generator u = x t^{-1},
// written as a law over k[t]. Each term c X^i Y^j of G contributes
// c t^{w-1} U^i V^j with w the filtration weight of x^i ⊗ x^j.
FormalGroupLaw rees_comultiplication(const FilteredAlgebra &FA, const FormalGroupLaw &G, const std::string &t = "t");

// Fibers of k[t1, t2] / ((t1 + t2)(t1 - t2)) over k[t] via t -> t1.
struct S0Fibers {
    PresentedAlgebra at_one;  // k[t2]/(t2^2 - 1)
    PresentedAlgebra at_zero; // k[t2]/(t2^2)
    PresentedAlgebra split;   // k x k
    PresentedAlgebra dual_numbers;
    std::vector<Vec> iso_one;  // at_one -> split
    std::vector<Vec> iso_zero; // at_zero -> dual_numbers
    IsoCheck check_one;
    IsoCheck check_zero;
};
// CharacteristicTwo in characteristic 2, where the fiber at 1 does not split.
S0Fibers s0_fil_fibers(const Ring &k);

} // namespace cartier

#endif
