#include <doctest.h>

#include <cartier/errors.hpp>
#include <cartier/filtration.hpp>

#include "support.hpp"

using namespace cartier;
using cartier::testing::build;
using cartier::testing::MonomialAlgebra;

namespace
{

const Ring Q = Ring::rationals();

ErrorKind kind_of(const auto &f)
{
    try {
        f();
    } catch (const Error &e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InvalidArgument;
}

std::vector<Vec> elements(const PresentedAlgebra &A, std::initializer_list<const char *> texts)
{
    std::vector<Vec> out;
    for (auto t : texts)
        out.push_back(A.element(t));
    return out;
}

// Dimension of the span of standard monomials of degree >= n, which is
// dim m^n for a monomial algebra and its maximal ideal m.
std::size_t monomial_power_dim(const MonomialAlgebra &m, std::uint32_t n)
{
    std::size_t out = 0;
    for (const auto &mono : monomials_up_to(m.gens.size(), m.N)) {
        bool killed = false;
        for (const auto &r : m.relations)
            killed = killed || r.divides(mono);
        out += !killed && mono.degree() >= n;
    }
    return out;
}

} // namespace

TEST_CASE("subspaces")
{
    auto F3 = Ring::integers_mod(3);
    auto v = [&](std::initializer_list<long> xs) {
        Vec out;
        for (auto x : xs)
            out.push_back(F3.from_int(x));
        return out;
    };
    Subspace s(F3, 3, true);
    CHECK(s.insert(v({1, 1, 0})));
    CHECK(s.insert(v({0, 1, 1})));
    CHECK_FALSE(s.insert(v({1, 2, 1})));
    CHECK(s.dimension() == 2);
    CHECK(s.contains(v({1, 0, 2})));
    CHECK_FALSE(s.contains(v({1, 0, 0})));
    auto c = s.coordinates(v({1, 0, 2}));
    REQUIRE(c);
    CHECK(c->size() == 3);
    // 1*(1,1,0) + 2*(0,1,1) = (1,0,2)
    CHECK((*c)[0] == F3.from_int(1));
    CHECK((*c)[1] == F3.from_int(2));
    CHECK(s.free_columns() == std::vector<std::size_t>{2});
    CHECK(Subspace::full(F3, 3).contains(s));
    CHECK(s + Subspace::span(F3, 3, {v({0, 0, 1})}) == Subspace::full(F3, 3));
    CHECK(kind_of([] { Subspace(Ring::integers(), 2); }) == ErrorKind::UnsupportedRing);
}

TEST_CASE("presented algebras")
{
    auto A = PresentedAlgebra::truncated(Q, {"x", "y"}, {"x^3", "y^3", "x*y"}, 6);
    CHECK(A.dimension() == 5);
    CHECK(A.format(A.mul(A.element("x + y"), A.element("x - y"))) == "-y^2 + x^2");
    CHECK(A.is_ideal(A.ideal({A.element("x")})));
    CHECK(A.nilpotency_index(A.element("x + y")) == 3);
    CHECK(A.nilpotency_index(A.element("1 + x")) == 0);

    // binomial relation: x^2 = y in degree <= 4
    auto B = PresentedAlgebra::truncated(Q, {"x", "y"}, {"x^2 - y"}, 4);
    CHECK(B.mul(B.element("x"), B.element("x")) == B.element("y"));
    CHECK(B.dimension() == 5); // 1, x, x^2, x^3, x^4

    auto U = PresentedAlgebra::univariate(Q, "t", {Q.from_int(-1), Q.zero(), Q.one()});
    CHECK(U.mul(U.generator("t"), U.generator("t")) == U.one());
    auto J = PresentedAlgebra::from_json(A.to_json(), 0);
    CHECK(J.dimension() == A.dimension());
    CHECK(PresentedAlgebra::from_json(U.to_json(), 0).mul(U.generator("t"), U.generator("t")) == U.one());
    CHECK(kind_of([] { PresentedAlgebra::truncated(Ring::integers(), {"x"}, {}, 3); }) == ErrorKind::UnsupportedRing);

    auto P = PresentedAlgebra::product(U, A);
    CHECK(P.dimension() == 7);
    CHECK(P.basis_names()[0] == "1(1)");
}

TEST_CASE("adic filtrations")
{
    SUBCASE("k[x]/(x^5)")
    {
        auto A = PresentedAlgebra::truncated(Q, {"x"}, {"x^5"}, 4);
        auto FA = FilteredAlgebra::adic(A, {A.element("x")}, 4);
        for (long n = 1; n <= 4; ++n) {
            auto xn = A.element("x^" + std::to_string(n));
            CHECK(FA.level(n) == A.ideal({xn}));
        }
        CHECK(FA.level(5).is_zero());
        CHECK(FA.level(0).dimension() == 5);
        CHECK(FA.level(-3).dimension() == 5);
        CHECK(FA.dimensions() == std::vector<std::size_t>{5, 4, 3, 2, 1});
        CHECK(FA.is_complete());
        CHECK(kind_of([&] { FilteredAlgebra::adic(A, {A.element("1 + x")}, 4); }) == ErrorKind::ImproperIdeal);
    }
    SUBCASE("k[x,y]/(x^3, y^3, xy)")
    {
        auto A = PresentedAlgebra::truncated(Q, {"x", "y"}, {"x^3", "y^3", "x*y"}, 4);
        auto FA = FilteredAlgebra::adic(A, elements(A, {"x", "y"}), 3);
        CHECK(FA.level(2) == Subspace::span(Q, A.dimension(), elements(A, {"x^2", "y^2"})));
        CHECK(FA.level(3).is_zero());
        CHECK(FA.is_complete());
    }
    SUBCASE("k[x,y]/(x^3, y^3) is complete at N_top = 4")
    {
        auto A = PresentedAlgebra::truncated(Q, {"x", "y"}, {"x^3", "y^3"}, 8);
        CHECK(A.dimension() == 9);
        CHECK(FilteredAlgebra::adic(A, elements(A, {"x", "y"}), 4).is_complete());
        CHECK_FALSE(FilteredAlgebra::adic(A, elements(A, {"x", "y"}), 3).is_complete());
    }
    SUBCASE("constant filtration is not complete")
    {
        auto A = PresentedAlgebra::truncated(Q, {"x"}, {"x^3"}, 2);
        auto FA = FilteredAlgebra::from_chain(A, {{A.one()}, {A.one()}, {A.one()}});
        CHECK_FALSE(FA.is_complete());
    }
    SUBCASE("powers of the maximal ideal match the monomial count")
    {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 30; ++trial) {
            auto m = testing::random_monomial_algebra(rng);
            auto A = build(Q, m);
            std::vector<Vec> gens;
            for (const auto &g : m.gens)
                gens.push_back(A.generator(g));
            auto FA = FilteredAlgebra::adic(A, gens, m.N);
            for (std::uint32_t n = 0; n <= m.N + 1; ++n)
                CHECK(FA.level(n).dimension() == monomial_power_dim(m, n));
            // multiplicativity on generator products
            for (std::uint32_t a = 1; a <= m.N; ++a)
                for (std::uint32_t b = 1; a + b <= m.N; ++b)
                    for (const auto &g : FA.level_generators(a))
                        for (const auto &h : FA.level(b).basis())
                            CHECK(FA.level(a + b).contains(A.mul(g, h)));
            CHECK(FA.is_complete());
        }
    }
}

TEST_CASE("filtration validation and JSON")
{
    auto A = PresentedAlgebra::truncated(Q, {"x"}, {"x^5"}, 4);
    CHECK(kind_of([&] { FilteredAlgebra::from_chain(A, {elements(A, {"x^2"}), elements(A, {"x"})}); }) ==
          ErrorKind::NotFiltered);
    CHECK_NOTHROW(FilteredAlgebra::from_chain(A, {elements(A, {"x^3"}), elements(A, {"x^3"})}));
    // (x) then (x^3) descends but x * x is not in F^2
    CHECK(kind_of([&] { FilteredAlgebra::from_chain(A, {elements(A, {"x"}), elements(A, {"x^3"})}); }) ==
          ErrorKind::NotFiltered);

    auto j = nlohmann::json::parse(R"({"algebra": {"gens": ["x"], "rels": ["x^5"]},
                                       "chain": {"0": ["1"], "1": ["x"], "2": ["x^2"], "4": ["x^3"]}, "N_top": 4})");
    auto FA = FilteredAlgebra::from_json(j);
    CHECK(FA.dimensions() == std::vector<std::size_t>{5, 4, 3, 3, 2});
    auto back = FilteredAlgebra::from_json(FA.to_json());
    CHECK(back.dimensions() == FA.dimensions());

    j["chain"]["0"] = nlohmann::json::array({"x"});
    CHECK(kind_of([&] { FilteredAlgebra::from_json(j); }) == ErrorKind::NotDiscrete);
    CHECK(kind_of([] { FilteredAlgebra::from_json(nlohmann::json::parse(R"({"chain": {}})")); }) ==
          ErrorKind::ParseError);
}

TEST_CASE("associated graded")
{
    SUBCASE("adic on k[x]/(x^5) is k[x]/(x^5) regraded")
    {
        auto A = PresentedAlgebra::truncated(Q, {"x"}, {"x^5"}, 4);
        auto gr = associated_graded(FilteredAlgebra::adic(A, {A.element("x")}, 4));
        CHECK(gr.dimensions() == std::vector<std::size_t>{1, 1, 1, 1, 1});
        CHECK(gr.is_graded());
        CHECK(gr.algebra.basis_names()[1] == "[x]_1");
        // generated in weight 1: [x]^n spans weight n
        auto x = gr.algebra.basis_vector(1);
        for (std::uint32_t n = 1; n <= 4; ++n)
            CHECK(gr.algebra.pow(x, n) == gr.algebra.basis_vector(n));
        CHECK(is_zero_vector(Q, gr.algebra.pow(x, 5)));
    }
    SUBCASE("trivial filtration")
    {
        auto A = PresentedAlgebra::truncated(Q, {"x", "y"}, {"x^2", "y^2"}, 2);
        auto gr = associated_graded(FilteredAlgebra::trivial(A));
        CHECK(gr.dimensions() == std::vector<std::size_t>{4});
        CHECK(gr.algebra.dimension() == A.dimension());
    }
    SUBCASE("gr dimensions are successive quotients")
    {
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 20; ++trial) {
            auto m = testing::random_monomial_algebra(rng);
            auto A = build(Q, m);
            auto FA = FilteredAlgebra::adic(A, testing::random_ideal_generators(A, rng), m.N);
            auto gr = associated_graded(FA);
            CHECK(gr.is_graded());
            auto dims = gr.dimensions();
            dims.resize(m.N + 1, 0);
            for (std::uint32_t n = 0; n <= m.N; ++n)
                CHECK(dims[n] == FA.level(n).dimension() - FA.level(n + 1).dimension());
        }
    }
}

TEST_CASE("adic unicity")
{
    auto A = PresentedAlgebra::truncated(Q, {"x", "y"}, {"x^3", "y^3"}, 8);
    const auto I = elements(A, {"x", "y"});
    auto power = [&](std::uint32_t n) {
        auto s = FilteredAlgebra::adic(A, I, 5).level(n);
        return s.basis();
    };

    SUBCASE("adic filtration is certified")
    {
        auto rep = check_adic_unicity(FilteredAlgebra::adic(A, I, 4), I);
        CHECK(rep.certified);
        CHECK(rep.checked_levels == std::vector<std::uint32_t>{1, 2, 3, 4});
        CHECK(rep.filtration_gr_dims == std::vector<std::size_t>{1, 2, 3, 2, 1});
    }
    SUBCASE("F^1 = I^2 fails the weight-1 hypothesis")
    {
        // F^n = I^{n+1}
        std::vector<std::vector<Vec>> chain;
        for (std::uint32_t n = 1; n <= 3; ++n)
            chain.push_back(power(n + 1));
        auto rep = check_adic_unicity(FilteredAlgebra::from_chain(A, chain), I);
        CHECK_FALSE(rep.certified);
        CHECK(rep.failed_hypothesis == "gr_generated_in_weight_1");
    }
    SUBCASE("doubled speed F^n = I^{2n} fails the weight-1 hypothesis")
    {
        std::vector<std::vector<Vec>> chain{power(2), power(4)};
        auto rep = check_adic_unicity(FilteredAlgebra::from_chain(A, chain), I);
        CHECK_FALSE(rep.certified);
        CHECK(rep.failed_hypothesis == "gr_generated_in_weight_1");
    }
    SUBCASE("F^1 outside I")
    {
        auto rep = check_adic_unicity(FilteredAlgebra::adic(A, I, 4), elements(A, {"x", "y^2"}));
        CHECK(rep.failed_hypothesis == "F1_in_I");
    }
    SUBCASE("incomplete input")
    {
        CHECK(kind_of([&] { check_adic_unicity(FilteredAlgebra::adic(A, I, 3), I); }) == ErrorKind::NotComplete);
    }
    SUBCASE("random product chains are certified")
    {
        std::mt19937_64 rng(2024);
        for (int trial = 0; trial < 40; ++trial) {
            auto m = testing::random_monomial_algebra(rng);
            auto B = build(Q, m);
            auto gens = testing::random_ideal_generators(B, rng);
            auto FA = FilteredAlgebra::from_chain(B, testing::product_chain(B, gens, m.N, rng));
            auto rep = check_adic_unicity(FA, gens);
            CHECK(rep.certified);
        }
    }
    SUBCASE("random valid chains never contradict the statement")
    {
        std::mt19937_64 rng(77);
        int certified = 0, rejected = 0;
        for (int trial = 0; trial < 60; ++trial) {
            auto m = testing::random_monomial_algebra(rng);
            auto B = build(Q, m);
            auto gens = testing::random_ideal_generators(B, rng);
            // random sub-chain: F^n generated by a random subset of I^n plus I^{n+1}
            auto adic = FilteredAlgebra::adic(B, gens, m.N);
            std::vector<std::vector<Vec>> chain;
            std::bernoulli_distribution keep(0.7);
            for (std::uint32_t n = 1; n <= m.N; ++n) {
                auto level = adic.level(n + 1).basis();
                for (const auto &v : adic.level(n).basis())
                    if (keep(rng))
                        level.push_back(v);
                chain.push_back(level);
            }
            try {
                auto FA = FilteredAlgebra::from_chain(B, chain);
                if (!FA.is_complete())
                    continue;
                auto rep = check_adic_unicity(FA, gens);
                if (rep.certified) {
                    ++certified;
                    for (std::uint32_t n = 1; n <= m.N; ++n)
                        CHECK(FA.level(n) == adic.level(n));
                } else {
                    ++rejected;
                }
            } catch (const Error &e) {
                CHECK(e.kind() == ErrorKind::NotFiltered);
            }
        }
        CHECK(certified + rejected > 0);
    }
}

TEST_CASE("Rees fibers")
{
    SUBCASE("k[x]/(x^5)")
    {
        auto A = PresentedAlgebra::truncated(Q, {"x"}, {"x^5"}, 4);
        ReesAlgebra R(FilteredAlgebra::adic(A, {A.element("x")}, 4));
        CHECK(R.component_dimensions() == std::vector<std::size_t>{5, 4, 3, 2, 1});
        auto one = R.fiber_at_one();
        CHECK(one.check.ok());
        CHECK(one.algebra.dimension() == 5);
        auto zero = R.fiber_at_zero();
        CHECK(zero.check.ok());
        CHECK(zero.dimensions == std::vector<std::size_t>{1, 1, 1, 1, 1});
        CHECK(GradedAlgebra{zero.algebra, zero.weights}.is_graded());
    }
    SUBCASE("trivial filtration")
    {
        auto A = PresentedAlgebra::truncated(Q, {"x", "y"}, {"x^2", "x*y", "y^3"}, 3);
        ReesAlgebra R(FilteredAlgebra::trivial(A));
        auto zero = R.fiber_at_zero();
        CHECK(zero.check.ok());
        CHECK(zero.algebra.dimension() == A.dimension());
        CHECK(R.fiber_at_one().check.ok());
    }
    SUBCASE("random adic filtrations")
    {
        std::mt19937_64 rng(31);
        for (int trial = 0; trial < 20; ++trial) {
            auto m = testing::random_monomial_algebra(rng);
            auto A = build(Q, m);
            auto FA = FilteredAlgebra::adic(A, testing::random_ideal_generators(A, rng), m.N);
            ReesAlgebra R(FA);
            auto one = R.fiber_at_one();
            auto zero = R.fiber_at_zero();
            CHECK(one.check.ok());
            CHECK(zero.check.ok());
            auto gr = associated_graded(FA).dimensions();
            CHECK(zero.dimensions == gr);
        }
    }
}

TEST_CASE("Rees comultiplication")
{
    std::mt19937_64 rng(9);
    for (std::uint32_t N : {3u, 5u, 7u}) {
        auto A = PresentedAlgebra::truncated(Q, {"x"}, {}, N);
        auto FA = FilteredAlgebra::adic(A, {A.element("x")}, N);
        auto Gm = FormalGroupLaw::multiplicative(Q, N);
        auto family = rees_comultiplication(FA, Gm);
        CHECK(family.coefficient(1, 1) == family.ring().generator(0));
        CHECK(family == deform_to_normal_cone(Gm, "t"));
        for (int trial = 0; trial < 5; ++trial) {
            auto G = testing::random_law(Q, N, rng);
            CHECK(rees_comultiplication(FA, G) == deform_to_normal_cone(G, "t"));
        }
    }
    auto A = PresentedAlgebra::truncated(Q, {"x"}, {}, 4);
    auto FA = FilteredAlgebra::adic(A, {A.element("x^2")}, 2);
    CHECK(kind_of([&] { rees_comultiplication(FA, FormalGroupLaw::multiplicative(Q, 4)); }) ==
          ErrorKind::InvalidArgument);
}

TEST_CASE("S0 fibers")
{
    for (const auto &k : {Q, Ring::integers_mod(3), Ring::galois_field(5, 2)}) {
        auto f = s0_fil_fibers(k);
        CHECK(f.check_one.ok());
        CHECK(f.check_zero.ok());
        // e = (1 + t2)/2 is a nontrivial idempotent of the fiber at 1
        auto half = k.inverse(k.from_int(2));
        auto e = f.at_one.scale(half, f.at_one.add(f.at_one.one(), f.at_one.generator("t2")));
        CHECK(f.at_one.mul(e, e) == e);
        CHECK(e != f.at_one.one());
        auto t2 = f.at_zero.generator("t2");
        CHECK(is_zero_vector(k, f.at_zero.mul(t2, t2)));
        CHECK(f.split.dimension() == 2);
    }
    CHECK(kind_of([] { s0_fil_fibers(Ring::integers_mod(2)); }) == ErrorKind::CharacteristicTwo);
    CHECK(kind_of([] { s0_fil_fibers(Ring::galois_field(2, 3)); }) == ErrorKind::CharacteristicTwo);
}
