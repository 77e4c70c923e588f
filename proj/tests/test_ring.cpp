#include <doctest.h>

#include "support.hpp"

using namespace cartier;
using cartier::testing::brute_product;
using cartier::testing::random_element;
using cartier::testing::random_series;

namespace
{

std::vector<Ring> sample_rings()
{
    auto z = Ring::integers();
    return {z,
            Ring::rationals(),
            Ring::integers_mod(6),
            Ring::integers_mod(7),
            Ring::polynomial(z, {"lambda"}),
            Ring::polynomial(Ring::integers_mod(5), {"t"}),
            Ring::galois_field(3, 2),
            Ring::truncated(Ring::integers_mod(3), "eps", 2),
            Ring::truncated(Ring::rationals(), "e", 3)};
}

TruncatedSeries x_series(const Ring &r, std::uint32_t N, const std::vector<long> &coeffs)
{
    std::vector<RingElement> c;
    for (auto v : coeffs)
        c.push_back(r.from_int(v));
    return TruncatedSeries::univariate(r, "x", N, c);
}

} // namespace

TEST_CASE("ring axioms hold on random triples for every ring kind")
{
    std::mt19937_64 rng(7);
    for (const auto &r : sample_rings()) {
        CAPTURE(r.name());
        for (int trial = 0; trial < 60; ++trial) {
            auto a = random_element(r, rng), b = random_element(r, rng), c = random_element(r, rng);
            CHECK(r.add(a, b) == r.add(b, a));
            CHECK(r.mul(a, b) == r.mul(b, a));
            CHECK(r.add(r.add(a, b), c) == r.add(a, r.add(b, c)));
            CHECK(r.mul(r.mul(a, b), c) == r.mul(a, r.mul(b, c)));
            CHECK(r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c)));
            CHECK(r.add(a, r.neg(a)) == r.zero());
            CHECK(r.sub(a, b) == r.add(a, r.neg(b)));
            CHECK(r.mul(a, r.one()) == a);
        }
    }
}

TEST_CASE("inverses in finite fields and truncated rings")
{
    auto gf9 = Ring::galois_field(3, 2);
    CHECK(gf9.name() == "GF(9)");
    CHECK(gf9.is_field());
    auto elems = gf9.elements();
    REQUIRE(elems.size() == 9);
    for (const auto &a : elems) {
        if (gf9.is_zero(a)) {
            CHECK_FALSE(gf9.is_unit(a));
            continue;
        }
        CHECK(gf9.mul(a, gf9.inverse(a)) == gf9.one());
    }
    // F_9^* is cyclic of order 8: some element has order exactly 8
    bool found = false;
    for (const auto &a : elems) {
        if (gf9.is_zero(a))
            continue;
        int order = 1;
        auto x = a;
        while (!(x == gf9.one())) {
            x = gf9.mul(x, a);
            ++order;
        }
        found = found || order == 8;
    }
    CHECK(found);

    auto dual = Ring::truncated(Ring::integers(), "eps", 3);
    auto u = dual.parse_element("1 + 2*eps + eps^2");
    CHECK(dual.is_unit(u));
    CHECK(dual.mul(u, dual.inverse(u)) == dual.one());
    CHECK_FALSE(dual.is_unit(dual.parse_element("2 + eps")));
}

TEST_CASE("division by integers only when they are units")
{
    auto z = Ring::integers();
    CHECK_THROWS_AS(z.div_integer(z.from_int(6), 3), Error);
    auto z4 = Ring::integers_mod(4);
    try {
        z4.div_integer(z4.one(), 2);
        FAIL("expected NonInvertibleInteger");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::NonInvertibleInteger);
    }
    CHECK(z4.div_integer(z4.one(), 3) == z4.from_int(3));
    auto q = Ring::rationals();
    CHECK(q.format(q.div_integer(q.one(), 6)) == "1/6");
    auto f5t = Ring::polynomial(Ring::integers_mod(5), {"t"});
    CHECK(f5t.format(f5t.div_integer(f5t.parse_element("t + 1"), 2)) == "3*t + 3");
}

TEST_CASE("ring descriptors parse and serialize")
{
    CHECK(Ring::parse("Z") == Ring::integers());
    CHECK(Ring::parse("Q") == Ring::rationals());
    CHECK(Ring::parse("Zmod:12") == Ring::integers_mod(12));
    CHECK(Ring::parse("Z/12") == Ring::integers_mod(12));
    CHECK(Ring::parse("GF(5)") == Ring::integers_mod(5));
    CHECK(Ring::parse("GF(4)") == Ring::galois_field(2, 2));
    CHECK(Ring::parse("Z[lambda]") == Ring::polynomial(Ring::integers(), {"lambda"}));
    CHECK(Ring::parse("poly:Zmod:3:s,t") == Ring::polynomial(Ring::integers_mod(3), {"s", "t"}));
    CHECK(Ring::parse("GF(3)[eps]") == Ring::truncated(Ring::integers_mod(3), "eps", 2));
    CHECK(Ring::parse("F2[e]/(e^4)") == Ring::truncated(Ring::integers_mod(2), "e", 4));
    CHECK_THROWS_AS(Ring::parse("Zmod:1"), Error);
    CHECK_THROWS_AS(Ring::parse("GF(6)"), Error);
    CHECK_THROWS_AS(Ring::polynomial(Ring::polynomial(Ring::integers(), {"x"}), {"x"}), Error);

    for (const auto &r : sample_rings())
        CHECK(Ring::from_json(r.to_json()) == r);

    auto z5 = Ring::integers_mod(5);
    CHECK(z5.serialize(z5.from_int(-1)) == "4 mod 5");
    CHECK(z5.parse_element("4 mod 5") == z5.from_int(4));
    CHECK_THROWS_AS(z5.parse_element("4 mod 7"), Error);
    auto zl = Ring::parse("Z[lambda]");
    CHECK(zl.format(zl.parse_element("(lambda - 1)^2")) == "lambda^2 - 2*lambda + 1");
    CHECK_THROWS_AS(zl.parse_element("mu"), Error);
}

TEST_CASE("ring maps")
{
    auto z = Ring::integers();
    auto zl = Ring::polynomial(z, {"lambda"});
    auto f3 = Ring::integers_mod(3);
    auto f3l = Ring::polynomial(f3, {"lambda"});
    auto a = zl.parse_element("4*lambda^2 - lambda + 7");
    CHECK(f3l.format(RingMap::canonical(zl, f3l)(a)) == "lambda^2 + 2*lambda + 1");
    CHECK(RingMap::evaluate(zl, z, {z.from_int(2)})(a) == z.from_int(21));
    CHECK_THROWS_AS(RingMap::canonical(Ring::integers_mod(3), Ring::integers_mod(2)), Error);
    CHECK_THROWS_AS(RingMap::canonical(Ring::rationals(), z), Error);
    auto q_to_f2 = RingMap::canonical(Ring::rationals(), Ring::integers_mod(2));
    CHECK(q_to_f2(RingElement(Rational(1, 3))) == Ring::integers_mod(2).one());
    CHECK_THROWS_AS(q_to_f2(RingElement(Rational(1, 2))), Error);
    // Z/9 -> Z/3 reduction
    CHECK(RingMap::canonical(Ring::integers_mod(9), f3)(Ring::integers_mod(9).from_int(7)) == f3.one());
}

TEST_CASE("series_mul examples")
{
    auto z = Ring::integers();
    SUBCASE("difference of squares")
    {
        auto p = x_series(z, 2, {1, 1}) * x_series(z, 2, {1, -1});
        CHECK(p == x_series(z, 2, {1, 0, -1}));
    }
    SUBCASE("degree overflow")
    {
        auto x = x_series(z, 1, {0, 1});
        CHECK((x * x).is_zero());
    }
    SUBCASE("square over Z/2 against the convolution oracle")
    {
        auto f2 = Ring::integers_mod(2);
        auto a = x_series(f2, 2, {1, 1, 1});
        auto expected = brute_product(a, a);
        CHECK(expected.size() == 2); // oracle: 1 + x^2
        CHECK(cartier::testing::as_map(a * a) == expected);
        CHECK(a * a == x_series(f2, 2, {1, 0, 1}));
    }
    SUBCASE("context mismatch")
    {
        CHECK_THROWS_AS(x_series(z, 2, {1}) * x_series(z, 3, {1}), Error);
        CHECK_THROWS_AS(x_series(z, 2, {1}) + x_series(Ring::rationals(), 2, {1}), Error);
    }
}

TEST_CASE("series_mul agrees with the naive convolution oracle")
{
    std::mt19937_64 rng(11);
    for (const auto &r : sample_rings()) {
        for (std::uint32_t N = 0; N <= 6; ++N) {
            for (const auto &vars : {std::vector<std::string>{"x"}, std::vector<std::string>{"x", "y"},
                                     std::vector<std::string>{"x", "y", "z"}}) {
                auto a = random_series(r, vars, N, 8, rng);
                auto b = random_series(r, vars, N, 8, rng);
                CHECK(cartier::testing::as_map(a * b) == brute_product(a, b));
            }
        }
    }
}

TEST_CASE("truncation is a ring map")
{
    std::mt19937_64 rng(3);
    auto r = Ring::polynomial(Ring::integers(), {"s"});
    for (int trial = 0; trial < 30; ++trial) {
        auto a = random_series(r, {"x", "y"}, 6, 10, rng);
        auto b = random_series(r, {"x", "y"}, 6, 10, rng);
        for (std::uint32_t M = 0; M <= 6; ++M) {
            CHECK((a * b).truncated(M) == a.truncated(M) * b.truncated(M));
            CHECK((a + b).truncated(M) == a.truncated(M) + b.truncated(M));
        }
    }
}

TEST_CASE("series_compose examples")
{
    auto z = Ring::integers();
    SUBCASE("renaming")
    {
        auto f = x_series(z, 4, {0, 1, 1});
        auto y = TruncatedSeries::variable(z, {"y"}, 4, 0);
        const TruncatedSeries args[] = {y};
        auto g = series_compose(f, args);
        CHECK(g.format() == "y + y^2");
    }
    SUBCASE("identity")
    {
        auto f = TruncatedSeries::variable(z, {"x"}, 4, 0);
        auto xy = TruncatedSeries::from_terms(z, {"x", "y"}, 4,
                                              {{Monomial{1, 0}, z.one()}, {Monomial{0, 1}, z.one()},
                                               {Monomial{1, 1}, z.one()}});
        const TruncatedSeries args[] = {xy};
        CHECK(series_compose(f, args) == xy);
    }
    SUBCASE("x^2 after x + x^2")
    {
        // direct expansion: (x + x^2)^2 = x^2 + 2x^3 + x^4
        auto f = x_series(z, 3, {0, 0, 1});
        const TruncatedSeries args[] = {x_series(z, 3, {0, 1, 1})};
        CHECK(series_compose(f, args) == x_series(z, 3, {0, 0, 1, 2}));
    }
    SUBCASE("nonzero constant term is rejected")
    {
        const TruncatedSeries args[] = {x_series(z, 3, {1, 1})};
        try {
            series_compose(x_series(z, 3, {0, 1}), args);
            FAIL("expected NonNilpotentSubstitution");
        } catch (const Error &e) {
            CHECK(e.kind() == ErrorKind::NonNilpotentSubstitution);
        }
    }
}

namespace
{

// Undetermined coefficients solved by exhaustive linear solve over Q: the
// coefficient of x^n in f(g) is linear in g_n once g_1..g_{n-1} are fixed.
std::vector<Rational> reversion_oracle(const std::vector<Rational> &f, std::uint32_t N)
{
    std::vector<Rational> g(N + 1, 0);
    g[1] = 1 / f[1];
    for (std::uint32_t n = 2; n <= N; ++n) {
        // expand f(g) with plain Rational polynomial arithmetic
        std::vector<Rational> total(N + 1, 0), pw(N + 1, 0);
        pw[0] = 1;
        for (std::uint32_t k = 1; k < f.size() && k <= N; ++k) {
            std::vector<Rational> next(N + 1, 0);
            for (std::uint32_t i = 0; i <= N; ++i)
                for (std::uint32_t j = 0; i + j <= N; ++j)
                    next[i + j] += pw[i] * g[j];
            pw = next;
            for (std::uint32_t i = 0; i <= N; ++i)
                total[i] += f[k] * pw[i];
        }
        g[n] = -total[n] / f[1];
    }
    return g;
}

} // namespace

TEST_CASE("series_reversion examples")
{
    auto z = Ring::integers();
    CHECK(series_reversion(x_series(z, 5, {0, 1})) == x_series(z, 5, {0, 1}));

    auto oracle = reversion_oracle({0, 1, 1}, 3);
    CHECK(oracle == std::vector<Rational>{0, 1, -1, 2});
    CHECK(series_reversion(x_series(z, 3, {0, 1, 1})) == x_series(z, 3, {0, 1, -1, 2}));

    // f = -x + x^2 over Q: the oracle gives g = -x + x^2
    auto q = Ring::rationals();
    auto oracle2 = reversion_oracle({0, -1, 1}, 2);
    CHECK(oracle2 == std::vector<Rational>{0, -1, 1});
    CHECK(series_reversion(x_series(q, 2, {0, -1, 1})) == x_series(q, 2, {0, -1, 1}));

    try {
        series_reversion(x_series(z, 3, {0, 2, 1}));
        FAIL("expected NonUnitLinearTerm");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::NonUnitLinearTerm);
    }
}

TEST_CASE("reversion round-trips through composition")
{
    std::mt19937_64 rng(5);
    for (const auto &r : {Ring::integers(), Ring::rationals(), Ring::integers_mod(7), Ring::galois_field(2, 3)}) {
        for (int trial = 0; trial < 15; ++trial) {
            const std::uint32_t N = 1 + trial % 8;
            auto f = random_series(r, {"x"}, N, 6, rng, true);
            // force a unit linear coefficient
            auto lin = r.is_field() ? r.one() : r.from_int(trial % 2 ? 1 : -1);
            if (r.kind() == RingKind::Rationals)
                lin = r.from_rational(Rational(trial + 2, 3));
            f = f - TruncatedSeries::from_terms(r, {"x"}, N, {{Monomial{1}, f.coefficient(Monomial{1})}}) +
                TruncatedSeries::from_terms(r, {"x"}, N, {{Monomial{1}, lin}});
            auto g = series_reversion(f);
            const TruncatedSeries ga[] = {g}, fa[] = {f};
            auto x = TruncatedSeries::variable(r, {"x"}, N, 0);
            CHECK(series_compose(f, ga) == x);
            CHECK(series_compose(g, fa) == x);
        }
    }
}

TEST_CASE("series JSON is canonical")
{
    std::mt19937_64 rng(9);
    for (const auto &r : sample_rings()) {
        auto s = random_series(r, {"x", "y"}, 5, 12, rng);
        auto back = TruncatedSeries::from_json(s.to_json());
        CHECK(back == s);
        CHECK(back.to_json().dump() == s.to_json().dump());
    }
    auto j = nlohmann::json::parse(R"({"ring":"Z","vars":["x","y"],"N":2,"terms":[[[0,1],"1"],[[1,0],"1"],[[3,0],"5"]]})");
    auto s = TruncatedSeries::from_json(j);
    CHECK(s.terms().size() == 2);
    CHECK(s.to_json()["terms"].dump() == R"([[[1,0],"1"],[[0,1],"1"]])");
}
