#include <doctest.h>

#include <map>
#include <thread>

#include <cartier/witt.hpp>

#include "support.hpp"

using namespace cartier;

namespace
{

// Exact-rational ghost inversion on plain exponent-vector maps, sharing no
// code with IntPoly. Variables: X_0..X_{n-1}, Y_0..Y_{n-1}.
using QPoly = std::map<std::vector<unsigned>, Rational>;

QPoly q_add(const QPoly &a, const QPoly &b, const Rational &scale = 1)
{
    QPoly out = a;
    for (const auto &[m, c] : b) {
        out[m] += scale * c;
        if (out[m] == 0)
            out.erase(m);
    }
    return out;
}

QPoly q_mul(const QPoly &a, const QPoly &b)
{
    QPoly out;
    for (const auto &[ma, ca] : a)
        for (const auto &[mb, cb] : b) {
            auto m = ma;
            for (std::size_t i = 0; i < m.size(); ++i)
                m[i] += mb[i];
            out[m] += ca * cb;
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

QPoly q_pow(const QPoly &a, unsigned e, std::size_t nv)
{
    QPoly out{{std::vector<unsigned>(nv, 0), Rational(1)}};
    for (unsigned i = 0; i < e; ++i)
        out = q_mul(out, a);
    return out;
}

QPoly q_ghost(unsigned p, unsigned i, unsigned offset, std::size_t nv)
{
    QPoly w;
    unsigned pj = 1, e = 1;
    for (unsigned k = 0; k < i; ++k)
        e *= p;
    for (unsigned j = 0; j <= i; ++j) {
        std::vector<unsigned> m(nv, 0);
        m[offset + j] = e;
        w[m] = pj;
        pj *= p;
        e /= p;
    }
    return w;
}

std::vector<QPoly> q_structure(unsigned p, unsigned n, bool product)
{
    const std::size_t nv = 2 * n;
    std::vector<QPoly> out;
    for (unsigned i = 0; i < n; ++i) {
        auto target = product ? q_mul(q_ghost(p, i, 0, nv), q_ghost(p, i, n, nv))
                              : q_add(q_ghost(p, i, 0, nv), q_ghost(p, i, n, nv));
        unsigned pj = 1, e = 1;
        for (unsigned k = 0; k < i; ++k)
            e *= p;
        for (unsigned j = 0; j < i; ++j) {
            target = q_add(target, q_pow(out[j], e, nv), Rational(-static_cast<long>(pj)));
            pj *= p;
            e /= p;
        }
        for (auto &[m, c] : target)
            c /= pj;
        out.push_back(target);
    }
    return out;
}

QPoly from_intpoly(const IntPoly &f, unsigned n)
{
    QPoly out;
    for (const auto &t : f.to_terms(witt_slot_map(n, true))) {
        std::vector<unsigned> m(2 * n);
        for (unsigned i = 0; i < 2 * n; ++i)
            m[i] = t.mono[i];
        out[m] = Rational(*t.coeff.as_integer());
    }
    return out;
}

WittVector random_vector(const WittContext &ctx, std::mt19937_64 &rng)
{
    std::vector<RingElement> c;
    for (unsigned i = 0; i < ctx.n; ++i)
        c.push_back(cartier::testing::random_element(ctx.ring, rng, 4));
    return WittVector(ctx, c);
}

WittVector vec(const WittContext &ctx, const std::vector<long> &c)
{
    std::vector<RingElement> out;
    for (auto v : c)
        out.push_back(ctx.ring.from_int(v));
    return WittVector(ctx, out);
}

} // namespace

TEST_CASE("ghost polynomials")
{
    CHECK(witt_polynomial(2, 0) == IntPoly::variable(0));
    CHECK(witt_polynomial(2, 1) == IntPoly::variable(0, 2) + IntPoly::variable(1).scale(2));
    CHECK(witt_polynomial(3, 2) ==
          IntPoly::variable(0, 9) + IntPoly::variable(1, 3).scale(3) + IntPoly::variable(2).scale(9));
    CHECK_THROWS_AS(witt_polynomial(2, 7), Error);
    CHECK_THROWS_AS(WittContext(4, 2, Ring::integers()), Error);
    CHECK_THROWS_AS(WittContext(5, 6, Ring::integers()), Error);
}

TEST_CASE("structure polynomials match the rational ghost-inversion oracle")
{
    for (unsigned p : {2u, 3u}) {
        const unsigned n = 3;
        auto qs = q_structure(p, n, false);
        auto qp = q_structure(p, n, true);
        for (unsigned i = 0; i < n; ++i) {
            CAPTURE(p);
            CAPTURE(i);
            for (const auto &[m, c] : qs[i])
                CHECK(c.get_den() == 1);
            CHECK(from_intpoly(witt_sum_polys(p, n)[i], n) == qs[i]);
            CHECK(from_intpoly(witt_prod_polys(p, n)[i], n) == qp[i]);
        }
    }
    auto names = witt_variable_names(2, true);
    auto slots = witt_slot_map(2, true);
    CHECK(witt_sum_polys(2, 2)[0].format(names, slots) == "X_0 + Y_0");
    CHECK(witt_prod_polys(2, 2)[0].format(names, slots) == "X_0*Y_0");
    CHECK(witt_sum_polys(2, 2)[1].format(names, slots) == "X_1 + Y_1 - X_0*Y_0");
    for (unsigned p : {2u, 3u, 5u}) {
        auto expected = IntPoly::variable(0, p) * IntPoly::variable(kWittYSlot + 1) +
                        IntPoly::variable(1) * IntPoly::variable(kWittYSlot, p) +
                        (IntPoly::variable(1) * IntPoly::variable(kWittYSlot + 1)).scale(p);
        CHECK(witt_prod_polys(p, 2)[1] == expected);
    }
}

TEST_CASE("structure polynomials are integral and ghost-natural")
{
    struct Case {
        unsigned p, n;
    };
    for (auto [p, n] : {Case{2, 5}, Case{3, 4}, Case{5, 3}}) {
        CAPTURE(p);
        const auto &S = witt_sum_polys(p, n);
        const auto &P = witt_prod_polys(p, n);
        const auto &Ng = witt_neg_polys(p, n);
        for (unsigned i = 0; i < n; ++i) {
            IntPoly ws, wp, wn;
            for (unsigned j = 0; j <= i; ++j) {
                Integer pj, e;
                mpz_ui_pow_ui(pj.get_mpz_t(), p, j);
                mpz_ui_pow_ui(e.get_mpz_t(), p, i - j);
                ws = ws + S[j].pow(e.get_ui()).scale(pj);
                wp = wp + P[j].pow(e.get_ui()).scale(pj);
                wn = wn + Ng[j].pow(e.get_ui()).scale(pj);
            }
            CHECK(ws == witt_polynomial(p, i) + witt_polynomial(p, i, kWittYSlot));
            CHECK(wp == witt_polynomial(p, i) * witt_polynomial(p, i, kWittYSlot));
            CHECK(wn == -witt_polynomial(p, i));
        }
    }
    // odd p: negation is componentwise
    for (const auto &f : witt_neg_polys(3, 3))
        CHECK(f.size() == 1);
}

TEST_CASE("structure polynomial cache is safe under concurrent first use")
{
    std::vector<const std::vector<IntPoly> *> seen(4);
    std::vector<std::thread> threads;
    for (int i = 0; i < 4; ++i)
        threads.emplace_back([&seen, i] { seen[i] = &witt_prod_polys(7, 2); });
    for (auto &t : threads)
        t.join();
    for (int i = 1; i < 4; ++i)
        CHECK(seen[i] == seen[0]);
}

TEST_CASE("Witt arithmetic")
{
    WittContext z2(2, 2, Ring::integers());
    CHECK(witt_add(vec(z2, {1, 0}), vec(z2, {1, 0})) == vec(z2, {2, -1}));
    CHECK(witt_add(vec(z2, {3, 5}), WittVector::zero(z2)) == vec(z2, {3, 5}));

    std::mt19937_64 rng(12);
    for (const auto &r : {Ring::integers(), Ring::rationals(), Ring::polynomial(Ring::integers(), {"s"})}) {
        for (unsigned p : {2u, 3u}) {
            WittContext ctx(p, 3, r);
            for (int trial = 0; trial < 8; ++trial) {
                auto a = random_vector(ctx, rng), b = random_vector(ctx, rng);
                auto ga = ghost_components(a), gb = ghost_components(b);
                auto gs = ghost_components(witt_add(a, b)), gp = ghost_components(witt_mul(a, b));
                for (unsigned i = 0; i < ctx.n; ++i) {
                    CHECK(gs[i] == r.add(ga[i], gb[i]));
                    CHECK(gp[i] == r.mul(ga[i], gb[i]));
                }
                CHECK(witt_add(a, witt_neg(a)) == WittVector::zero(ctx));
                // Teichmuller is multiplicative
                auto ta = WittVector::teichmuller(ctx, a[0]), tb = WittVector::teichmuller(ctx, b[0]);
                CHECK(witt_mul(ta, tb) == WittVector::teichmuller(ctx, r.mul(a[0], b[0])));
                CHECK(witt_mul(a, WittVector::one(ctx)) == a);
            }
        }
    }

    // ring axioms over a finite ring
    WittContext f3(3, 3, Ring::integers_mod(3));
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_vector(f3, rng), b = random_vector(f3, rng), c = random_vector(f3, rng);
        CHECK(witt_add(witt_add(a, b), c) == witt_add(a, witt_add(b, c)));
        CHECK(witt_mul(witt_mul(a, b), c) == witt_mul(a, witt_mul(b, c)));
        CHECK(witt_mul(a, witt_add(b, c)) == witt_add(witt_mul(a, b), witt_mul(a, c)));
        CHECK(witt_mul(a, b) == witt_mul(b, a));
    }
    CHECK_THROWS_AS(witt_add(vec(z2, {1, 0}), vec(WittContext(3, 2, Ring::integers()), {1, 0})), Error);
}

TEST_CASE("Frobenius and Verschiebung")
{
    std::mt19937_64 rng(13);
    SUBCASE("over the integers")
    {
        WittContext z3(2, 3, Ring::integers());
        CHECK(frobenius(verschiebung(WittVector::one(z3))) == vec(WittContext(2, 2, Ring::integers()), {2, -1}));
        for (unsigned p : {2u, 3u}) {
            WittContext ctx(p, 4, Ring::integers());
            WittContext shorter(p, 3, Ring::integers());
            for (int trial = 0; trial < 6; ++trial) {
                auto x = random_vector(ctx, rng), y = random_vector(ctx, rng);
                auto fx = frobenius(x);
                auto gx = ghost_components(x), gfx = ghost_components(fx);
                for (unsigned i = 0; i + 1 < ctx.n; ++i)
                    CHECK(gfx[i] == gx[i + 1]);
                CHECK(frobenius(WittVector::teichmuller(ctx, x[0])) ==
                      WittVector::teichmuller(shorter, Ring::integers().pow(x[0], p)));
                CHECK(frobenius(witt_add(x, y)) == witt_add(fx, frobenius(y)));
                CHECK(frobenius(witt_mul(x, y)) == witt_mul(fx, frobenius(y)));
                CHECK(frobenius(verschiebung(x)) == witt_scalar(truncate(x, 3), p));
                auto gv = ghost_components(verschiebung(x));
                CHECK(Ring::integers().is_zero(gv[0]));
                for (unsigned i = 1; i < ctx.n; ++i)
                    CHECK(gv[i] == Ring::integers().mul_integer(gx[i - 1], p));
            }
        }
        CHECK(frobenius(WittVector::zero(z3)) == WittVector::zero(WittContext(2, 2, Ring::integers())));
    }
    SUBCASE("in characteristic p")
    {
        for (unsigned p : {2u, 3u, 5u}) {
            auto fp = Ring::integers_mod(p);
            auto zp = Ring::integers();
            WittContext ctx(p, 3, fp), lift(p, 3, zp);
            auto reduce = RingMap::canonical(zp, fp);
            for (int trial = 0; trial < 6; ++trial) {
                auto x = random_vector(lift, rng);
                std::vector<RingElement> xr;
                for (const auto &c : x.components())
                    xr.push_back(reduce(c));
                WittVector xp(ctx, xr);
                // componentwise p-th power agrees with the universal polynomials reduced mod p
                auto fz = frobenius(x);
                auto fx = frobenius(xp);
                for (unsigned i = 0; i + 1 < ctx.n; ++i)
                    CHECK(fx[i] == reduce(fz[i]));
                for (unsigned i = 0; i < ctx.n; ++i)
                    CHECK(fx[i] == fp.pow(xp[i], p));
                auto px = witt_scalar(xp, p);
                CHECK(frobenius(verschiebung(xp)) == px);
                CHECK(verschiebung(frobenius(xp)) == px);
                auto y = random_vector(ctx, rng);
                CHECK(verschiebung(witt_add(xp, y)) == witt_add(verschiebung(xp), verschiebung(y)));
                CHECK(frobenius(witt_mul(xp, y)) == witt_mul(fx, frobenius(y)));
            }
        }
    }
}

TEST_CASE("fixed points of Frobenius")
{
    for (unsigned p : {2u, 3u}) {
        for (unsigned n = 1; n <= 3; ++n) {
            WittContext ctx(p, n, Ring::integers_mod(p));
            auto fix = fix_points(ctx);
            std::size_t expected = 1;
            for (unsigned i = 0; i < n; ++i)
                expected *= p;
            CHECK(fix.size() == expected);
            CHECK(fix.front() == WittVector::zero(ctx));
            Integer max_order = 0;
            for (const auto &x : fix)
                max_order = std::max(max_order, additive_order(x));
            CHECK(max_order == Integer(static_cast<unsigned long>(expected)));
        }
    }
    WittContext gf4(2, 1, Ring::galois_field(2, 2));
    auto fix = fix_points(gf4);
    CHECK(fix.size() == 2);
    WittContext gf9(3, 2, Ring::galois_field(3, 2));
    auto fix9 = fix_points(gf9);
    CHECK(fix9.size() == 9);
    for (const auto &a : fix9)
        for (const auto &b : fix9) {
            auto s = witt_add(a, b);
            CHECK(frobenius(s) == s);
        }
    CHECK_THROWS_AS(fix_points(WittContext(2, 1, Ring::integers())), Error);
    CHECK_THROWS_AS(fix_points(WittContext(2, 1, Ring::integers_mod(3))), Error);
}

TEST_CASE("Sekiguchi-Suwa kernel")
{
    std::mt19937_64 rng(14);
    for (unsigned p : {2u, 3u}) {
        auto fp = Ring::integers_mod(p);
        for (unsigned n = 1; n <= 3; ++n) {
            WittContext ctx(p, n, fp);
            CHECK(sekiguchi_suwa_kernel(ctx, fp.one()) == fix_points(ctx));
        }
        auto k0 = sekiguchi_suwa_kernel(WittContext(p, 1, fp), fp.zero());
        REQUIRE(k0.size() == 1);
        CHECK(k0[0] == WittVector::zero(WittContext(p, 1, fp)));

        auto eps = Ring::truncated(fp, "eps", 2);
        auto ke = sekiguchi_suwa_kernel(WittContext(p, 1, eps), eps.zero());
        CHECK(ke.size() == p);
        for (const auto &x : ke)
            CHECK(eps.is_zero(eps.mul(x[0], x[0])));
    }

    // the componentwise reduction of [c] * x used by the kernel
    for (const auto &r : {Ring::integers_mod(3), Ring::galois_field(2, 2), Ring::truncated(Ring::integers_mod(2), "e", 2)}) {
        const auto p = static_cast<unsigned>(r.characteristic().get_ui());
        WittContext ctx(p, 3, r);
        for (int trial = 0; trial < 10; ++trial) {
            auto x = random_vector(ctx, rng);
            auto c = cartier::testing::random_element(r, rng);
            auto prod = witt_mul(WittVector::teichmuller(ctx, c), x);
            auto s = c;
            for (unsigned i = 0; i < ctx.n; ++i) {
                CHECK(prod[i] == r.mul(s, x[i]));
                s = r.pow(s, p);
            }
        }
        // kernel elements satisfy the defining equation through Witt multiplication
        auto t = r.elements().back();
        auto c = r.pow(t, p - 1);
        for (const auto &x : sekiguchi_suwa_kernel(ctx, t))
            CHECK(frobenius(x) == witt_mul(WittVector::teichmuller(ctx, c), x));
    }

    // componentwise scaling differs from the Teichmuller action once n > 1
    auto gf4 = Ring::galois_field(2, 2);
    WittContext ctx(2, 2, gf4);
    auto a = gf4.generator(0);
    auto teich = sekiguchi_suwa_kernel(ctx, a, ScalarAction::Teichmuller);
    auto comp = sekiguchi_suwa_kernel(ctx, a, ScalarAction::Componentwise);
    CHECK(teich.size() == 4);
    CHECK(comp.size() == 4);
    CHECK_FALSE(teich == comp);
}
