#ifndef CARTIER_ALGEBRA_HPP
#define CARTIER_ALGEBRA_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <cartier/linalg.hpp>

namespace cartier
{

// Finite-dimensional commutative algebra over a field k, stored as a basis
// with structure constants. Presented algebras also remember generators and
// relations so elements can be parsed from text.
class PresentedAlgebra
{
public:
    // k[gens] / (rels + all monomials of degree > N). Relations are polynomial
    // expressions in the generators.
    static PresentedAlgebra truncated(const Ring &k, std::vector<std::string> gens, std::vector<std::string> rels,
                                      std::uint32_t N);
    // k[gen] / (f) for a monic f given by coefficients c_0..c_d (c_d = 1).
    static PresentedAlgebra univariate(const Ring &k, const std::string &gen, const std::vector<RingElement> &monic);
    // Raw structure constants: table[i][j] = basis_i * basis_j.
    static PresentedAlgebra from_table(const Ring &k, std::vector<std::string> basis_names,
                                       std::vector<std::vector<Vec>> table, Vec unit);
    // A x B with componentwise product; basis names get suffixes (1) and (2).
    static PresentedAlgebra product(const PresentedAlgebra &a, const PresentedAlgebra &b);

    const Ring &field() const noexcept
    {
        return k_;
    }
    std::size_t dimension() const noexcept
    {
        return names_.size();
    }
    const std::vector<std::string> &basis_names() const noexcept
    {
        return names_;
    }
    const std::vector<std::string> &generators() const noexcept
    {
        return gens_;
    }
    const std::vector<std::string> &relations() const noexcept
    {
        return rels_;
    }
    std::uint32_t truncation() const noexcept
    {
        return N_;
    }
    // Exponent vectors of the basis monomials (empty for from_table algebras).
    const std::vector<Monomial> &basis_monomials() const noexcept
    {
        return monos_;
    }

    Vec zero() const;
    const Vec &one() const noexcept
    {
        return unit_;
    }
    Vec basis_vector(std::size_t i) const;
    Vec generator(const std::string &name) const;
    // Image of a monomial in the generators.
    Vec monomial(const Monomial &m) const;
    // Polynomial expression in the generators.
    Vec element(const std::string &text) const;

    Vec add(const Vec &a, const Vec &b) const;
    Vec sub(const Vec &a, const Vec &b) const;
    Vec scale(const RingElement &c, const Vec &a) const;
    Vec mul(const Vec &a, const Vec &b) const;
    Vec pow(const Vec &a, std::uint64_t e) const;
    const Vec &product_of_basis(std::size_t i, std::size_t j) const
    {
        return table_[i][j];
    }

    // Ideal generated by the given elements, as a subspace.
    Subspace ideal(const std::vector<Vec> &gens) const;
    // span{ g * v : g in gens_of_left, v in basis(right) }; equals the ideal
    // product when gens_of_left generates the left ideal and right is an ideal.
    Subspace ideal_product(const std::vector<Vec> &gens_of_left, const Subspace &right) const;
    bool is_ideal(const Subspace &s) const;
    // Smallest n >= 1 with v^n = 0, or 0 if v is not nilpotent.
    std::uint32_t nilpotency_index(const Vec &v) const;

    std::string format(const Vec &v) const;
    nlohmann::json to_json() const;
    static PresentedAlgebra from_json(const nlohmann::json &j, std::uint32_t default_N);

private:
    PresentedAlgebra(Ring k) : k_(std::move(k)) {}
    void check(const Vec &v) const;

    Ring k_;
    std::vector<std::string> gens_;
    std::vector<std::string> rels_;
    std::uint32_t N_ = 0;
    std::vector<Monomial> monos_;
    std::vector<std::string> names_;
    // table_[i][j] holds basis_i * basis_j; sparse_[i][j] lists its nonzero entries
    std::vector<std::vector<Vec>> table_;
    std::vector<std::vector<std::vector<std::pair<std::size_t, RingElement>>>> sparse_;
    Vec unit_;
    // truncated algebras: normal form data for monomials of degree <= N
    std::vector<Monomial> ambient_;
    std::vector<Vec> ambient_image_;
    bool univariate_ = false;
    std::vector<RingElement> monic_;

    void build_sparse();
};

// Graded algebra: a finite-dimensional algebra whose basis elements carry
// weights, with products landing in the summed weight.
struct GradedAlgebra {
    PresentedAlgebra algebra;
    std::vector<int> weights;

    // Dimension of each weight from 0 up to the largest weight present.
    std::vector<std::size_t> dimensions() const;
    // Products of basis elements land in the summed weight.
    bool is_graded() const;
};

// Checks that the square matrix m (column i = image of basis_i of a,
// in coordinates of b) is a unital algebra isomorphism a -> b.
struct IsoCheck {
    bool bijective = false;
    bool unital = false;
    bool multiplicative = false;
    bool ok() const
    {
        return bijective && unital && multiplicative;
    }
};
IsoCheck check_algebra_iso(const PresentedAlgebra &a, const PresentedAlgebra &b, const std::vector<Vec> &columns);

} // namespace cartier

#endif
