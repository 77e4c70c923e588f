// Shared generators and brute-force oracles for the unit tests.
#ifndef CARTIER_TESTS_SUPPORT_HPP
#define CARTIER_TESTS_SUPPORT_HPP

#include <algorithm>
#include <map>
#include <random>

#include <cartier/fgl.hpp>
#include <cartier/filtration.hpp>
#include <cartier/generators.hpp>
#include <cartier/ring.hpp>
#include <cartier/series.hpp>

namespace cartier::testing
{

inline RingElement random_element(const Ring &r, std::mt19937_64 &rng, int spread = 5)
{
    std::uniform_int_distribution<long> d(-spread, spread);
    switch (r.kind()) {
    case RingKind::Integers:
    case RingKind::IntegersMod: return r.from_int(d(rng));
    case RingKind::Rationals: {
        long den = 0;
        while (den == 0)
            den = d(rng);
        return r.from_rational(Rational(d(rng), den > 0 ? den : -den));
    }
    case RingKind::PolynomialExtension: {
        auto b = r.base();
        auto acc = r.zero();
        std::uniform_int_distribution<int> nterms(0, 3), ex(0, 2);
        for (int i = nterms(rng); i > 0; --i) {
            auto t = r.from_terms({{Monomial::variable(r.variables().size(), 0, ex(rng)), random_element(b, rng, spread)}});
            acc = r.add(acc, t);
        }
        return acc;
    }
    case RingKind::MonicQuotient: {
        auto b = r.base();
        RingElement::Dense coeffs;
        for (std::size_t i = 0; i < r.quotient_degree(); ++i)
            coeffs.push_back(random_element(b, rng, spread));
        return RingElement(std::move(coeffs));
    }
    }
    return r.zero();
}

inline TruncatedSeries random_series(const Ring &r, const std::vector<std::string> &vars, std::uint32_t N,
                                     std::size_t max_terms, std::mt19937_64 &rng, bool zero_constant = false)
{
    std::uniform_int_distribution<std::size_t> count(0, max_terms);
    std::uniform_int_distribution<std::uint32_t> ex(0, N);
    std::vector<PolyTerm> terms;
    for (std::size_t i = count(rng); i > 0; --i) {
        Monomial m(vars.size());
        for (std::size_t v = 0; v < vars.size(); ++v)
            m[v] = ex(rng) / static_cast<std::uint32_t>(vars.size());
        if (zero_constant && m.is_one())
            continue;
        terms.push_back({m, random_element(r, rng)});
    }
    return TruncatedSeries::from_terms(r, vars, N, terms);
}

// Naive double-loop convolution, independent of the series kernel.
inline std::map<Monomial, RingElement> brute_product(const TruncatedSeries &a, const TruncatedSeries &b)
{
    const auto &r = a.ring();
    std::map<Monomial, RingElement> out;
    for (const auto &s : a.terms())
        for (const auto &t : b.terms()) {
            auto m = s.mono * t.mono;
            if (m.degree() > a.truncation())
                continue;
            auto c = r.mul(s.coeff, t.coeff);
            auto it = out.find(m);
            if (it == out.end())
                out.emplace(m, c);
            else
                it->second = r.add(it->second, c);
        }
    for (auto it = out.begin(); it != out.end();)
        it = r.is_zero(it->second) ? out.erase(it) : std::next(it);
    return out;
}

inline std::map<Monomial, RingElement> as_map(const TruncatedSeries &s)
{
    std::map<Monomial, RingElement> out;
    for (const auto &t : s.terms())
        out.emplace(t.mono, t.coeff);
    return out;
}

using gen::build;
using gen::MonomialAlgebra;
using gen::product_chain;
using gen::random_augmentation_element;
using gen::random_ideal_generators;
using gen::random_law;
using gen::random_monomial_algebra;
using gen::random_strict_iso;

} // namespace cartier::testing

#endif
