#include <doctest.h>

#include <cartier/dual.hpp>
#include <cartier/errors.hpp>

#include "support.hpp"

using namespace cartier;

namespace
{

const Ring Z = Ring::integers();

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

Integer binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

// Coefficients of C(y, i) C(y, j) in the basis C(y, k), by forward
// differences of the values at y = 0..i+j.
std::vector<Integer> binomial_product(long i, long j)
{
    std::vector<Integer> out;
    for (long k = 0; k <= i + j; ++k) {
        Integer c = 0;
        for (long m = 0; m <= k; ++m) {
            Integer term = binomial(k, m) * binomial(m, i) * binomial(m, j);
            c += (k - m) % 2 == 0 ? term : Integer(-term);
        }
        out.push_back(c);
    }
    return out;
}

} // namespace

TEST_CASE("divided-power coalgebra")
{
    DividedPowerCoalgebra C(Z, 6);
    CHECK(C.check());
    CHECK(C.comultiply(2).size() == 3);
    CHECK(C.counit(0) == Z.one());
    CHECK(C.counit(3) == Z.zero());
    CHECK(DividedPowerCoalgebra::weight(4) == -4);
}

TEST_CASE("dual of the multiplicative law is the integer-valued polynomial ring")
{
    const std::uint32_t N = 8;
    auto H = cartier_dual(FormalGroupLaw::multiplicative(Z, N));
    CHECK(H.format_product(1, 1) == "x^[1] * x^[1] = x^[1] + 2*x^[2]");
    for (std::uint32_t i = 0; i <= N; ++i)
        for (std::uint32_t j = 0; i + j <= N; ++j) {
            auto oracle = binomial_product(i, j);
            for (std::uint32_t k = 0; k <= N; ++k) {
                Integer expect = k < oracle.size() ? oracle[k] : Integer(0);
                CHECK(H.constant(i, j, k) == Z.from_integer(expect));
            }
        }
}

TEST_CASE("dual of the additive law is the divided power algebra")
{
    for (const auto &r : {Z, Ring::rationals(), Ring::integers_mod(2), Ring::integers_mod(3)}) {
        const std::uint32_t N = 8;
        auto H = cartier_dual(FormalGroupLaw::additive(r, N));
        for (std::uint32_t i = 0; i <= N; ++i)
            for (std::uint32_t j = 0; i + j <= N; ++j)
                for (std::uint32_t k = 0; k <= N; ++k)
                    CHECK(H.constant(i, j, k) == (k == i + j ? r.from_integer(binomial(i + j, i)) : r.zero()));
    }
    // in characteristic 2, x^[1]^2 = 2 x^[2] = 0
    auto H2 = cartier_dual(FormalGroupLaw::additive(Ring::integers_mod(2), 4));
    CHECK(H2.format(H2.product(1, 1)) == "0");
}

TEST_CASE("dual of the deformation family")
{
    const std::uint32_t N = 6;
    auto family = deform_to_normal_cone(FormalGroupLaw::multiplicative(Z, N));
    auto H = cartier_dual(family);
    const auto &R = H.ring();
    CHECK(H.format_product(1, 1) == "x^[1] * x^[1] = lambda*x^[1] + 2*x^[2]");

    // c^k_ij(lambda) = lambda^{i+j-k} c^k_ij(1)
    auto Hm = cartier_dual(FormalGroupLaw::multiplicative(Z, N));
    auto lambda = R.generator(0);
    for (std::uint32_t i = 0; i <= N; ++i)
        for (std::uint32_t j = 0; i + j <= N; ++j)
            for (std::uint32_t k = 0; k <= i + j; ++k)
                CHECK(H.constant(i, j, k) == R.mul(R.from_integer(*Hm.constant(i, j, k).as_integer()),
                                                   R.pow(lambda, i + j - k)));

    // specializations lambda -> 1 and lambda -> 0
    auto at = [&](long v) { return RingMap::evaluate(R, Z, {Z.from_int(v)}); };
    CHECK(H.map_coefficients(at(1)) == Hm);
    CHECK(H.map_coefficients(at(0)) == cartier_dual(FormalGroupLaw::additive(Z, N)));
}

TEST_CASE("weights")
{
    const std::uint32_t N = 6;
    auto family = cartier_dual(deform_to_normal_cone(FormalGroupLaw::multiplicative(Z, N)));
    auto rep = filtered_dual_weights(family);
    CHECK(rep.homogeneous);
    CHECK(rep.checked > 0);
    // with lambda in weight +1 the bookkeeping fails at x^[1] x^[1] -> lambda x^[1]
    auto plus = weight_report(family, "lambda", 1);
    CHECK_FALSE(plus.homogeneous);
    CHECK(plus.witness == std::vector<std::uint32_t>{1, 1, 1});

    CHECK(filtered_dual_weights(cartier_dual(FormalGroupLaw::additive(Z, N))).homogeneous);
    CHECK(kind_of([&] { filtered_dual_weights(cartier_dual(FormalGroupLaw::multiplicative(Z, N))); }) ==
          ErrorKind::WeightInhomogeneity);
    auto edited = family.with_constant(1, 2, 1, family.ring().one());
    CHECK(kind_of([&] { filtered_dual_weights(edited); }) == ErrorKind::WeightInhomogeneity);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        auto G = testing::random_law(Z, N, rng);
        CHECK(filtered_dual_weights(cartier_dual(deform_to_normal_cone(G))).homogeneous);
    }
}

TEST_CASE("Hopf axioms and pairing")
{
    auto Gm = FormalGroupLaw::multiplicative(Z, 4);
    auto Hm = cartier_dual(Gm);
    CHECK(hopf_axiom_report(Hm).valid);
    CHECK(dual_pairing_check(Gm, Hm).ok);
    auto Ga = FormalGroupLaw::additive(Z, 6);
    CHECK(dual_pairing_check(Ga, cartier_dual(Ga)).ok);

    auto bad = Hm.with_constant(1, 2, 2, Z.from_int(7));
    auto pr = dual_pairing_check(Gm, bad);
    CHECK_FALSE(pr.ok);
    CHECK(pr.identity == "product");
    CHECK(pr.witness == std::vector<std::uint32_t>{1, 2, 2});
    CHECK_FALSE(hopf_axiom_report(bad).valid);

    // S is dual to iota(X) = -X + X^2 - ...
    CHECK(Hm.format(Hm.antipode(1)) == "-x^[1]");
    CHECK(Hm.format(Hm.antipode(2)) == "x^[1] + x^[2]");

    std::mt19937_64 rng(17);
    for (const auto &r : {Z, Ring::integers_mod(5), Ring::galois_field(2, 2)})
        for (int trial = 0; trial < 6; ++trial) {
            auto G = testing::random_law(r, 7, rng);
            auto H = cartier_dual(G);
            CHECK(dual_pairing_check(G, H).ok);
            CHECK(DividedPowerHopf::from_json(H.to_json()) == H);
        }
}

TEST_CASE("base change")
{
    std::mt19937_64 rng(23);
    for (std::uint64_t p : {2, 3, 5}) {
        auto Fp = Ring::integers_mod(p);
        auto phi = RingMap::canonical(Z, Fp);
        for (int trial = 0; trial < 5; ++trial) {
            auto G = testing::random_law(Z, 6, rng);
            CHECK(cartier_dual(base_change(G, phi)) == cartier_dual(G).map_coefficients(phi));
        }
    }
}

TEST_CASE("comultiplication preserves the adic filtration")
{
    auto Gm = FormalGroupLaw::multiplicative(Z, 8);
    CHECK(comultiplication_preserves_adic(Gm, 2) == std::vector<std::uint32_t>{1, 2});
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 10; ++trial)
        CHECK(comultiplication_preserves_adic(testing::random_law(Z, 8, rng), 8).size() == 8);
    CHECK(kind_of([&] { comultiplication_preserves_adic(Gm, 9); }) == ErrorKind::IndexOutOfRange);
}

TEST_CASE("grouplike points")
{
    SUBCASE("dual numbers over F_3")
    {
        auto F3 = Ring::integers_mod(3);
        auto G = FormalGroupLaw::multiplicative(Z, 3);
        auto H = cartier_dual(G);
        auto A = augmented_algebra(Ring::truncated(F3, "eps", 2));
        auto pts = grouplike_points(G, H, A);
        CHECK(pts.parameters.size() == 3);
        CHECK(pts.equals_nilradical);
        CHECK(pts.law_matches);
        // (a eps)(b eps) -> (a + b) eps
        for (std::size_t s = 0; s < 3; ++s)
            for (std::size_t t = 0; t < 3; ++t)
                CHECK(pts.parameters[pts.table[s][t]] == A.add(pts.parameters[s], pts.parameters[t]));
    }
    SUBCASE("a field has only the counit point")
    {
        auto G = FormalGroupLaw::multiplicative(Z, 3);
        auto pts = grouplike_points(G, cartier_dual(G), augmented_algebra(Ring::galois_field(3, 2)));
        CHECK(pts.parameters.size() == 1);
        CHECK(pts.law_matches);
    }
    SUBCASE("F_2[eps]/(eps^4)")
    {
        auto G = FormalGroupLaw::multiplicative(Z, 4);
        auto A = augmented_algebra(Ring::truncated(Ring::integers_mod(2), "eps", 4));
        auto pts = grouplike_points(G, cartier_dual(G), A);
        CHECK(pts.parameters.size() == 8);
        CHECK(pts.equals_nilradical);
        CHECK(pts.law_matches);
        for (std::size_t s = 0; s < 8; ++s)
            for (std::size_t t = 0; t < 8; ++t) {
                const auto &a = pts.parameters[s], &b = pts.parameters[t];
                CHECK(pts.parameters[pts.table[s][t]] == A.add(A.add(a, b), A.mul(a, b)));
            }
        auto G2 = FormalGroupLaw::multiplicative(Z, 2);
        CHECK(kind_of([&] { grouplike_points(G2, cartier_dual(G2), A); }) == ErrorKind::IndeterminateAtTruncation);
    }
    SUBCASE("random laws")
    {
        std::mt19937_64 rng(41);
        auto A = augmented_algebra(Ring::truncated(Ring::integers_mod(3), "eps", 3));
        for (int trial = 0; trial < 4; ++trial) {
            auto G = testing::random_law(Z, 4, rng);
            auto pts = grouplike_points(G, cartier_dual(G), A);
            CHECK(pts.parameters.size() == 9);
            CHECK(pts.equals_nilradical);
            CHECK(pts.law_matches);
        }
    }
    SUBCASE("rejections")
    {
        auto G = FormalGroupLaw::multiplicative(Z, 3);
        auto H = cartier_dual(G);
        auto F2 = Ring::integers_mod(2);
        // v^2 = v: the augmentation ideal (v) is idempotent
        auto idem = PresentedAlgebra::univariate(F2, "v", {F2.zero(), F2.one(), F2.one()});
        CHECK(kind_of([&] { grouplike_points(G, H, idem); }) == ErrorKind::NonNilpotentAugmentation);
        auto dual_Q = augmented_algebra(Ring::truncated(Ring::rationals(), "eps", 2));
        CHECK(kind_of([&] { grouplike_points(G, H, dual_Q); }) == ErrorKind::RingNotFinite);
        CHECK(kind_of([&] { augmented_algebra(Z); }) == ErrorKind::UnsupportedRing);
    }
}
