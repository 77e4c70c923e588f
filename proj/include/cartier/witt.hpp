#ifndef CARTIER_WITT_HPP
#define CARTIER_WITT_HPP

#include <cstdint>
#include <vector>

#include <cartier/intpoly.hpp>
#include <cartier/ring.hpp>

namespace cartier
{

// Variable layout of the universal polynomials: X_i sits in IntPoly slot i,
// Y_i in slot kWittYSlot + i. This bounds the supported length to 6 and
// requires p^(n-1) <= IntPoly::kMaxExponent.
inline constexpr unsigned kWittYSlot = 6;
inline constexpr unsigned kWittMaxLength = 6;

// Throws InvalidArgument unless (p, n) fits the packed layout and p is prime.
void check_witt_size(std::uint64_t p, unsigned n);

// w_i = sum_{j <= i} p^j X_j^{p^{i-j}}; `offset` shifts the slots (kWittYSlot for Y).
IntPoly witt_polynomial(std::uint64_t p, unsigned i, unsigned offset = 0);

// Universal polynomials, all of length n. Sum and product are in X, Y; negation
// in X. Results are cached per p and shared by all callers.
const std::vector<IntPoly> &witt_sum_polys(std::uint64_t p, unsigned n);
const std::vector<IntPoly> &witt_prod_polys(std::uint64_t p, unsigned n);
const std::vector<IntPoly> &witt_neg_polys(std::uint64_t p, unsigned n);
// Frobenius polynomials F_0..F_{n-2} in X_0..X_{n-1}: w_i(F) = w_{i+1}(X).
const std::vector<IntPoly> &witt_frobenius_polys(std::uint64_t p, unsigned n);

// Names and slot map for displaying a structure polynomial of length n.
std::vector<std::string> witt_variable_names(unsigned n, bool with_y);
std::vector<unsigned> witt_slot_map(unsigned n, bool with_y);

struct WittContext {
    std::uint64_t p = 2;
    unsigned n = 1;
    Ring ring = Ring::integers();

    WittContext() = default;
    WittContext(std::uint64_t p, unsigned n, Ring ring);

    bool operator==(const WittContext &o) const
    {
        return p == o.p && n == o.n && ring == o.ring;
    }
};

class WittVector
{
public:
    WittVector(WittContext ctx, std::vector<RingElement> components);
    static WittVector zero(const WittContext &ctx);
    static WittVector one(const WittContext &ctx);
    // [a] = (a, 0, ..., 0)
    static WittVector teichmuller(const WittContext &ctx, const RingElement &a);

    const WittContext &context() const noexcept
    {
        return ctx_;
    }
    const std::vector<RingElement> &components() const noexcept
    {
        return comps_;
    }
    const RingElement &operator[](std::size_t i) const
    {
        return comps_.at(i);
    }
    bool operator==(const WittVector &o) const
    {
        return ctx_ == o.ctx_ && comps_ == o.comps_;
    }
    std::string format() const;
    nlohmann::json to_json() const;

private:
    WittContext ctx_;
    std::vector<RingElement> comps_;
};

WittVector witt_add(const WittVector &a, const WittVector &b);
WittVector witt_neg(const WittVector &a);
WittVector witt_sub(const WittVector &a, const WittVector &b);
WittVector witt_mul(const WittVector &a, const WittVector &b);
// n * a by repeated doubling
WittVector witt_scalar(const WittVector &a, const Integer &n);

// Ghost components w_0..w_{n-1} evaluated in the coefficient ring.
std::vector<RingElement> ghost_components(const WittVector &a);

// In characteristic p: componentwise p-th power, same length. Otherwise the
// universal Frobenius polynomials, length n - 1.
WittVector frobenius(const WittVector &a);
// (x_0, ..., x_{n-1}) -> (0, x_0, ..., x_{n-2})
WittVector verschiebung(const WittVector &a);
// Restriction to the first m components.
WittVector truncate(const WittVector &a, unsigned m);

// Fix = ker(F - 1) over a finite ring of characteristic p, in the canonical
// enumeration order (components vary with x_0 fastest, ring elements in
// Ring::elements order).
std::vector<WittVector> fix_points(const WittContext &ctx);

enum class ScalarAction {
    Teichmuller,  // F(x) = [t^{p-1}] * x (Witt multiplication)
    Componentwise // F(x)_i = t^{p-1} * x_i
};

std::vector<WittVector> sekiguchi_suwa_kernel(const WittContext &ctx, const RingElement &t,
                                              ScalarAction action = ScalarAction::Teichmuller);

// Additive order of a; throws InvalidArgument if it exceeds `limit`.
Integer additive_order(const WittVector &a, std::uint64_t limit = 1u << 20);

} // namespace cartier

#endif
