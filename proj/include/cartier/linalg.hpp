#ifndef CARTIER_LINALG_HPP
#define CARTIER_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include <cartier/ring.hpp>

namespace cartier
{

using Vec = std::vector<RingElement>;

Vec zero_vector(const Ring &k, std::size_t n);
Vec unit_vector(const Ring &k, std::size_t n, std::size_t i);
bool is_zero_vector(const Ring &k, const Vec &v);

// Subspace of k^n kept in reduced row echelon form. Each row also records
// how it was combined from the vectors handed to insert() when built with
// tracking, which is what coordinates() needs. k must be a field.
class Subspace
{
public:
    Subspace(Ring k, std::size_t ambient, bool tracked = false);
    static Subspace span(const Ring &k, std::size_t ambient, const std::vector<Vec> &gens, bool tracked = false);
    static Subspace full(const Ring &k, std::size_t ambient);

    const Ring &field() const noexcept
    {
        return k_;
    }
    std::size_t ambient() const noexcept
    {
        return n_;
    }
    std::size_t dimension() const noexcept
    {
        return rows_.size();
    }
    bool is_zero() const noexcept
    {
        return rows_.empty();
    }
    const std::vector<Vec> &basis() const noexcept
    {
        return rows_;
    }
    const std::vector<std::size_t> &pivots() const noexcept
    {
        return pivots_;
    }
    // Columns without a pivot; their unit vectors span a complement.
    std::vector<std::size_t> free_columns() const;

    // Adds v; returns true if the dimension grew.
    bool insert(const Vec &v);
    // v minus its component along the pivot columns.
    Vec reduce(const Vec &v) const;
    bool contains(const Vec &v) const;
    bool contains(const Subspace &other) const;
    // Equality of subspaces (RREF is canonical), ignoring tracking data.
    bool operator==(const Subspace &other) const
    {
        return n_ == other.n_ && rows_ == other.rows_;
    }
    Subspace operator+(const Subspace &other) const;

    // Coefficients c with v = sum c_i g_i over the vectors g_i that were
    // inserted (including dependent ones, which get coefficient 0), or nullopt.
    std::optional<Vec> coordinates(const Vec &v) const;
    std::size_t inserted() const noexcept
    {
        return inserted_;
    }

private:
    Ring k_;
    std::size_t n_;
    bool tracked_ = false;
    std::size_t inserted_ = 0;
    std::vector<Vec> rows_;
    std::vector<Vec> combos_;
    std::vector<std::size_t> pivots_;
};

// Rank of a list of vectors over a field.
std::size_t rank(const Ring &k, std::size_t ambient, const std::vector<Vec> &rows);

} // namespace cartier

#endif
