#ifndef CARTIER_GENERATORS_HPP
#define CARTIER_GENERATORS_HPP

// Seeded random inputs shared by the property tests and the acceptance runner.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <cartier/algebra.hpp>
#include <cartier/fgl.hpp>

namespace cartier::gen
{

// X + b_2 X^2 + ... + b_N X^N with small random coefficients.
inline TruncatedSeries random_strict_iso(const Ring &r, std::uint32_t N, std::mt19937_64 &rng)
{
    std::vector<RingElement> c(N + 1, r.zero());
    if (N >= 1)
        c[1] = r.one();
    std::uniform_int_distribution<long> d(-3, 3);
    for (std::uint32_t i = 2; i <= N; ++i)
        c[i] = r.from_int(d(rng));
    return TruncatedSeries::univariate(r, "X", N, c);
}

// A law from the additive, multiplicative or X + Y + aXY families, conjugated
// by a random strict isomorphism.
inline FormalGroupLaw random_law(const Ring &r, std::uint32_t N, std::mt19937_64 &rng)
{
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<long> d(-4, 4);
    FormalGroupLaw base = FormalGroupLaw::additive(r, N);
    switch (kind(rng)) {
    case 0: break;
    case 1: base = FormalGroupLaw::multiplicative(r, N); break;
    default: base = FormalGroupLaw::from_coefficients(r, N, {{1, 1, r.from_int(d(rng))}}); break;
    }
    return conjugate(base, random_strict_iso(r, N, rng));
}

// k[x_1..x_v] / (monomial relations) truncated at degree N, basis <= 64.
struct MonomialAlgebra {
    std::vector<std::string> gens;
    std::vector<Monomial> relations;
    std::uint32_t N = 0;
};

inline MonomialAlgebra random_monomial_algebra(std::mt19937_64 &rng)
{
    static const std::vector<std::string> names{"x", "y", "z"};
    std::uniform_int_distribution<std::size_t> nvars(1, 3);
    std::bernoulli_distribution coin(0.5);
    for (;;) {
        MonomialAlgebra m;
        const auto nv = nvars(rng);
        m.gens.assign(names.begin(), names.begin() + static_cast<long>(nv));
        m.N = std::uniform_int_distribution<std::uint32_t>(2, nv == 1 ? 9 : nv == 2 ? 7 : 5)(rng);
        for (std::size_t i = 0; i < nv; ++i)
            if (coin(rng)) {
                Monomial r(nv);
                r[i] = std::uniform_int_distribution<std::uint32_t>(2, m.N)(rng);
                m.relations.push_back(r);
            }
        for (std::size_t i = 0; i < nv; ++i)
            for (std::size_t j = i + 1; j < nv; ++j)
                if (coin(rng) && coin(rng)) {
                    Monomial r(nv);
                    r[i] = r[j] = 1;
                    m.relations.push_back(r);
                }
        // standard monomials, counted directly
        std::size_t dim = 0;
        for (const auto &mono : monomials_up_to(nv, m.N)) {
            bool killed = false;
            for (const auto &r : m.relations)
                killed = killed || r.divides(mono);
            dim += !killed;
        }
        if (dim <= 64)
            return m;
    }
}

inline PresentedAlgebra build(const Ring &k, const MonomialAlgebra &m)
{
    std::vector<std::string> rels;
    for (const auto &r : m.relations)
        rels.push_back(r.format(m.gens));
    return PresentedAlgebra::truncated(k, m.gens, rels, m.N);
}

// Random combination of basis elements of positive degree.
inline Vec random_augmentation_element(const PresentedAlgebra &A, std::mt19937_64 &rng)
{
    std::uniform_int_distribution<long> c(-3, 3);
    const auto &k = A.field();
    for (;;) {
        auto v = A.zero();
        for (std::size_t i = 0; i < A.dimension(); ++i)
            if (A.basis_monomials()[i].degree() > 0 && c(rng) > 1)
                v[i] = k.from_int(c(rng));
        if (!is_zero_vector(k, v))
            return v;
    }
}

inline std::vector<Vec> random_ideal_generators(const PresentedAlgebra &A, std::mt19937_64 &rng)
{
    std::vector<Vec> gens;
    for (auto n = std::uniform_int_distribution<std::size_t>(1, A.generators().size())(rng); n > 0; --n)
        gens.push_back(random_augmentation_element(A, rng));
    return gens;
}

// Chain with F^n generated by all n-fold products of the generators of I plus
// one random combination of them. Equal to the I-adic filtration, though
// built without taking ideal powers.
inline std::vector<std::vector<Vec>> product_chain(const PresentedAlgebra &A, const std::vector<Vec> &I,
                                                   std::uint32_t top, std::mt19937_64 &rng)
{
    std::uniform_int_distribution<long> c(-2, 2);
    const auto &k = A.field();
    std::vector<std::vector<Vec>> chain;
    std::vector<Vec> products{A.one()};
    std::vector<std::size_t> last{0}; // index of the last factor, to enumerate multisets
    for (std::uint32_t n = 1; n <= top; ++n) {
        std::vector<Vec> next;
        std::vector<std::size_t> next_last;
        for (std::size_t p = 0; p < products.size(); ++p)
            for (std::size_t g = last[p]; g < I.size(); ++g) {
                next.push_back(A.mul(products[p], I[g]));
                next_last.push_back(g);
            }
        products = std::move(next);
        last = std::move(next_last);
        auto level = products;
        auto mix = A.zero();
        for (const auto &v : products)
            mix = A.add(mix, A.scale(k.from_int(c(rng)), v));
        level.push_back(mix);
        std::shuffle(level.begin(), level.end(), rng);
        chain.push_back(std::move(level));
    }
    return chain;
}

} // namespace cartier::gen

#endif
