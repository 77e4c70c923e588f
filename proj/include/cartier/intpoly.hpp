#ifndef CARTIER_INTPOLY_HPP
#define CARTIER_INTPOLY_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <cartier/ring.hpp>

namespace cartier
{

// Integer polynomial in up to kSlots variables with exponents below 2^kBits,
// packed into one 128-bit key per monomial. Built for the Witt structure
// polynomials, where the term counts get large and the variable count stays
// small. Callers are responsible for keeping exponents in range.
class IntPoly
{
public:
    using Key = unsigned __int128;
    static constexpr unsigned kSlots = 12;
    static constexpr unsigned kBits = 10;
    static constexpr std::uint32_t kMaxExponent = (1u << kBits) - 1;

    IntPoly() = default;
    static IntPoly constant(const Integer &c);
    static IntPoly variable(unsigned slot, std::uint32_t power = 1);

    static Key key_of(unsigned slot, std::uint32_t power)
    {
        return static_cast<Key>(power) << (kBits * slot);
    }
    static std::uint32_t exponent(Key k, unsigned slot)
    {
        return static_cast<std::uint32_t>(k >> (kBits * slot)) & kMaxExponent;
    }

    // Terms sorted by key, no zero coefficients.
    const std::vector<std::pair<Key, Integer>> &terms() const noexcept
    {
        return terms_;
    }
    std::size_t size() const noexcept
    {
        return terms_.size();
    }
    bool is_zero() const noexcept
    {
        return terms_.empty();
    }
    Integer coefficient(Key k) const;

    IntPoly operator+(const IntPoly &o) const;
    IntPoly operator-(const IntPoly &o) const;
    IntPoly operator-() const;
    IntPoly operator*(const IntPoly &o) const;
    IntPoly scale(const Integer &c) const;
    IntPoly pow(std::uint64_t e) const;
    // Exact division; returns false (leaving *this untouched) if some
    // coefficient is not divisible by d.
    bool divide_exact(const Integer &d);

    bool operator==(const IntPoly &o) const = default;

    // Value at the given slot images in a ring (integer coefficients mapped in).
    RingElement evaluate(const Ring &ring, const std::vector<RingElement> &slots) const;

    // Terms with monomials re-indexed: display variable k is slot slot_of[k].
    std::vector<PolyTerm> to_terms(const std::vector<unsigned> &slot_of) const;
    std::string format(const std::vector<std::string> &names, const std::vector<unsigned> &slot_of) const;

private:
    static IntPoly from_sorted(std::vector<std::pair<Key, Integer>> terms);

    std::vector<std::pair<Key, Integer>> terms_;
};

} // namespace cartier

#endif
