#ifndef CARTIER_MONOMIAL_HPP
#define CARTIER_MONOMIAL_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace cartier
{

// Exponent vector over an ordered list of variables.
class Monomial
{
public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
    Monomial(std::initializer_list<std::uint32_t> exps) : exps_(exps) {}
    explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

    static Monomial variable(std::size_t nvars, std::size_t index, std::uint32_t power = 1)
    {
        Monomial m(nvars);
        m.exps_[index] = power;
        return m;
    }

    std::size_t size() const noexcept
    {
        return exps_.size();
    }
    std::uint32_t operator[](std::size_t i) const
    {
        return exps_[i];
    }
    std::uint32_t &operator[](std::size_t i)
    {
        return exps_[i];
    }
    const std::vector<std::uint32_t> &exponents() const noexcept
    {
        return exps_;
    }

    std::uint64_t degree() const noexcept
    {
        std::uint64_t d = 0;
        for (auto e : exps_)
            d += e;
        return d;
    }
    bool is_one() const noexcept
    {
        for (auto e : exps_)
            if (e != 0)
                return false;
        return true;
    }
    bool divides(const Monomial &other) const
    {
        for (std::size_t i = 0; i < exps_.size(); ++i)
            if (exps_[i] > other.exps_[i])
                return false;
        return true;
    }

    Monomial operator*(const Monomial &other) const
    {
        Monomial r(*this);
        for (std::size_t i = 0; i < exps_.size(); ++i)
            r.exps_[i] += other.exps_[i];
        return r;
    }

    // Requires divides(other).
    Monomial quotient(const Monomial &divisor) const
    {
        Monomial r(*this);
        for (std::size_t i = 0; i < exps_.size(); ++i)
            r.exps_[i] -= divisor.exps_[i];
        return r;
    }

    bool operator==(const Monomial &) const = default;
    auto operator<=>(const Monomial &) const = default;

    // "x^2*y" style; "1" for the unit monomial.
    std::string format(const std::vector<std::string> &names, const char *times = "*") const;

private:
    std::vector<std::uint32_t> exps_;
};

// Canonical order used for storage and serialization: ascending total degree,
// and within one degree descending lexicographic (x^2 < x*y < y^2 for x > y).
inline bool grlex_less(const Monomial &a, const Monomial &b)
{
    const auto da = a.degree(), db = b.degree();
    if (da != db)
        return da < db;
    return b.exponents() < a.exponents();
}

struct GrlexLess {
    bool operator()(const Monomial &a, const Monomial &b) const
    {
        return grlex_less(a, b);
    }
};

// All monomials in nvars variables of total degree <= max_degree, grlex order.
std::vector<Monomial> monomials_up_to(std::size_t nvars, std::uint32_t max_degree);

} // namespace cartier

#endif
