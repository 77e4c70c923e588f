#include <cartier/dual.hpp>

#include <map>

#include <cartier/errors.hpp>

namespace cartier
{

namespace
{

DpVec zero_dp(const Ring &r, std::uint32_t N)
{
    return DpVec(N + 1, r.zero());
}

std::string basis_name(std::uint32_t k)
{
    return k == 0 ? "1" : "x^[" + std::to_string(k) + "]";
}

std::vector<TruncatedSeries> powers(const TruncatedSeries &f, std::uint32_t count)
{
    std::vector<TruncatedSeries> out{TruncatedSeries::constant(f.ring(), f.variables(), f.truncation(), f.ring().one())};
    for (std::uint32_t k = 1; k <= count; ++k)
        out.push_back(out.back() * f);
    return out;
}

nlohmann::json sparse_json(const Ring &r, const DpVec &v)
{
    auto out = nlohmann::json::array();
    for (std::size_t k = 0; k < v.size(); ++k)
        if (!r.is_zero(v[k]))
            out.push_back({k, r.serialize(v[k])});
    return out;
}

DpVec parse_sparse(const Ring &r, std::uint32_t N, const nlohmann::json &j)
{
    auto v = zero_dp(r, N);
    if (!j.is_array())
        throw Error(ErrorKind::ParseError, "expected a list of [k, \"c\"] pairs");
    for (const auto &e : j) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned())
            throw Error(ErrorKind::ParseError, "expected a [k, \"c\"] pair");
        auto k = e[0].get<std::uint32_t>();
        if (k > N)
            throw Error(ErrorKind::IndexOutOfRange, "basis index beyond the truncation", {{"k", k}});
        v[k] = r.add(v[k], r.parse_element(e[1].is_string() ? e[1].get<std::string>() : e[1].dump()));
    }
    return v;
}

} // namespace

std::vector<std::pair<std::uint32_t, std::uint32_t>> DividedPowerCoalgebra::comultiply(std::uint32_t n) const
{
    if (n > N_)
        throw Error(ErrorKind::IndexOutOfRange, "basis index beyond the truncation", {{"n", n}});
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::uint32_t i = 0; i <= n; ++i)
        out.emplace_back(i, n - i);
    return out;
}

RingElement DividedPowerCoalgebra::counit(std::uint32_t n) const
{
    return n == 0 ? ring_.one() : ring_.zero();
}

bool DividedPowerCoalgebra::check() const
{
    for (std::uint32_t n = 0; n <= N_; ++n) {
        // (Δ ⊗ id)Δ and (id ⊗ Δ)Δ as multisets of index triples
        std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, int> left, right;
        for (auto [a, b] : comultiply(n)) {
            for (auto [c, d] : comultiply(a))
                ++left[{c, d, b}];
            for (auto [c, d] : comultiply(b))
                ++right[{a, c, d}];
            if (weight(a) + weight(b) != weight(n))
                return false;
        }
        if (left != right)
            return false;
        // (ε ⊗ id)Δ = id = (id ⊗ ε)Δ
        auto lc = zero_dp(ring_, N_), rc = zero_dp(ring_, N_);
        for (auto [a, b] : comultiply(n)) {
            lc[b] = ring_.add(lc[b], counit(a));
            rc[a] = ring_.add(rc[a], counit(b));
        }
        auto e = zero_dp(ring_, N_);
        e[n] = ring_.one();
        if (lc != e || rc != e)
            return false;
    }
    return true;
}

DividedPowerHopf::DividedPowerHopf(Ring ring, std::uint32_t N, std::vector<std::vector<DpVec>> mul,
                                   std::vector<DpVec> antipode)
    : C_(std::move(ring), N), mul_(std::move(mul)), S_(std::move(antipode))
{
    bool ok = mul_.size() == N + 1 && S_.size() == N + 1;
    for (std::uint32_t i = 0; ok && i <= N; ++i) {
        ok = mul_[i].size() == N + 1 - i && S_[i].size() == N + 1;
        for (const auto &v : mul_[i])
            ok = ok && v.size() == N + 1;
    }
    if (!ok)
        throw Error(ErrorKind::MismatchedContext, "structure tables do not match the truncation");
}

const DpVec &DividedPowerHopf::product(std::uint32_t i, std::uint32_t j) const
{
    if (i + j > truncation())
        throw Error(ErrorKind::IndexOutOfRange, "product x^[i] x^[j] with i + j beyond the truncation",
                    {{"i", i}, {"j", j}});
    return mul_[i][j];
}

const RingElement &DividedPowerHopf::constant(std::uint32_t i, std::uint32_t j, std::uint32_t k) const
{
    const auto &p = product(i, j);
    if (k > truncation())
        throw Error(ErrorKind::IndexOutOfRange, "basis index beyond the truncation", {{"k", k}});
    return p[k];
}

DpVec DividedPowerHopf::basis(std::uint32_t n) const
{
    auto v = zero_dp(ring(), truncation());
    v.at(n) = ring().one();
    return v;
}

DpVec DividedPowerHopf::multiply(const DpVec &a, const DpVec &b) const
{
    const auto &r = ring();
    const auto N = truncation();
    auto out = zero_dp(r, N);
    for (std::uint32_t p = 0; p <= N; ++p) {
        if (r.is_zero(a[p]))
            continue;
        for (std::uint32_t q = 0; q <= N; ++q) {
            if (r.is_zero(b[q]))
                continue;
            const auto c = r.mul(a[p], b[q]);
            if (r.is_zero(c))
                continue;
            const auto &prod = product(p, q);
            for (std::uint32_t k = 0; k <= N; ++k)
                if (!r.is_zero(prod[k]))
                    out[k] = r.add(out[k], r.mul(c, prod[k]));
        }
    }
    return out;
}

DividedPowerHopf DividedPowerHopf::with_constant(std::uint32_t i, std::uint32_t j, std::uint32_t k,
                                                 RingElement c) const
{
    (void)constant(i, j, k);
    auto copy = *this;
    copy.mul_[i][j][k] = std::move(c);
    return copy;
}

DividedPowerHopf DividedPowerHopf::map_coefficients(const RingMap &phi) const
{
    if (!(phi.source() == ring()))
        throw Error(ErrorKind::MismatchedContext, "ring map source differs from the coefficient ring");
    auto map_vec = [&](const DpVec &v) {
        DpVec out;
        for (const auto &c : v)
            out.push_back(phi(c));
        return out;
    };
    auto mul = mul_;
    for (auto &row : mul)
        for (auto &v : row)
            v = map_vec(v);
    std::vector<DpVec> S;
    for (const auto &v : S_)
        S.push_back(map_vec(v));
    return DividedPowerHopf(phi.target(), truncation(), std::move(mul), std::move(S));
}

bool DividedPowerHopf::operator==(const DividedPowerHopf &other) const
{
    return ring() == other.ring() && truncation() == other.truncation() && mul_ == other.mul_ && S_ == other.S_;
}

std::string DividedPowerHopf::format(const DpVec &v) const
{
    std::vector<std::pair<std::string, std::string>> parts;
    for (std::uint32_t k = 0; k < v.size(); ++k)
        if (!ring().is_zero(v[k]))
            parts.emplace_back(ring().format(v[k]), basis_name(k));
    return format_linear_combination(parts);
}

std::string DividedPowerHopf::format_product(std::uint32_t i, std::uint32_t j) const
{
    return basis_name(i) + " * " + basis_name(j) + " = " + format(product(i, j));
}

nlohmann::json DividedPowerHopf::to_json() const
{
    const auto &r = ring();
    auto mul = nlohmann::json::array();
    for (std::uint32_t i = 0; i <= truncation(); ++i)
        for (std::uint32_t j = 0; i + j <= truncation(); ++j)
            mul.push_back({i, j, sparse_json(r, mul_[i][j])});
    auto S = nlohmann::json::array();
    for (std::uint32_t n = 0; n <= truncation(); ++n)
        S.push_back({n, sparse_json(r, S_[n])});
    return {{"ring", r.to_json()}, {"N", truncation()}, {"mul", mul}, {"antipode", S}};
}

DividedPowerHopf DividedPowerHopf::from_json(const nlohmann::json &j)
{
    if (!j.is_object() || !j.contains("N") || !j.at("N").is_number_unsigned() || !j.contains("mul"))
        throw Error(ErrorKind::ParseError, "dual JSON needs \"N\" and \"mul\"");
    const auto r = j.contains("ring") ? Ring::from_json(j.at("ring")) : Ring::integers();
    const auto N = j.at("N").get<std::uint32_t>();
    std::vector<std::vector<DpVec>> mul(N + 1);
    for (std::uint32_t i = 0; i <= N; ++i)
        mul[i].assign(N + 1 - i, zero_dp(r, N));
    for (const auto &e : j.at("mul")) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned())
            throw Error(ErrorKind::ParseError, "\"mul\" entries are [i, j, [[k, \"c\"], ...]]");
        auto a = e[0].get<std::uint32_t>(), b = e[1].get<std::uint32_t>();
        if (a + b > N)
            throw Error(ErrorKind::IndexOutOfRange, "product beyond the truncation", {{"i", a}, {"j", b}});
        mul[a][b] = parse_sparse(r, N, e[2]);
    }
    std::vector<DpVec> S(N + 1, zero_dp(r, N));
    for (const auto &e : j.value("antipode", nlohmann::json::array())) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || e[0].get<std::uint32_t>() > N)
            throw Error(ErrorKind::ParseError, "\"antipode\" entries are [n, [[m, \"c\"], ...]]");
        S[e[0].get<std::uint32_t>()] = parse_sparse(r, N, e[1]);
    }
    return DividedPowerHopf(r, N, std::move(mul), std::move(S));
}

nlohmann::json HopfReport::to_json() const
{
    nlohmann::json j{{"valid", valid}};
    if (!valid)
        j.update({{"axiom", axiom}, {"witness", witness}});
    return j;
}

HopfReport hopf_axiom_report(const DividedPowerHopf &H)
{
    const auto &r = H.ring();
    const auto N = H.truncation();
    auto fail = [](std::string axiom, std::vector<std::uint32_t> w) { return HopfReport{false, std::move(axiom), std::move(w)}; };

    if (!H.coalgebra().check())
        return fail("coalgebra", {});
    for (std::uint32_t j = 0; j <= N; ++j)
        if (H.product(0, j) != H.basis(j))
            return fail("unit", {0, j});
    for (std::uint32_t i = 0; i <= N; ++i)
        for (std::uint32_t j = 0; i + j <= N; ++j)
            if (H.product(i, j) != H.product(j, i))
                return fail("commutativity", {i, j});
    for (std::uint32_t i = 0; i <= N; ++i)
        for (std::uint32_t j = 0; i + j <= N; ++j)
            for (std::uint32_t l = 0; i + j + l <= N; ++l)
                if (H.multiply(H.product(i, j), H.basis(l)) != H.multiply(H.basis(i), H.product(j, l)))
                    return fail("associativity", {i, j, l});
    for (std::uint32_t i = 0; i <= N; ++i)
        for (std::uint32_t j = 0; i + j <= N; ++j) {
            auto expect = i == 0 && j == 0 ? r.one() : r.zero();
            if (H.constant(i, j, 0) != expect)
                return fail("counit_multiplicative", {i, j});
        }
    // Δ(x^[i] x^[j]) = Δ(x^[i]) Δ(x^[j]), compared as coefficient matrices on x^[p] ⊗ x^[q]
    for (std::uint32_t i = 0; i <= N; ++i)
        for (std::uint32_t j = 0; i + j <= N; ++j) {
            const auto n = i + j;
            std::vector<std::vector<RingElement>> lhs(n + 1, std::vector<RingElement>(n + 1, r.zero())), rhs = lhs;
            for (std::uint32_t k = 0; k <= n; ++k)
                for (auto [p, q] : H.coalgebra().comultiply(k))
                    lhs[p][q] = r.add(lhs[p][q], H.constant(i, j, k));
            for (auto [i1, i2] : H.coalgebra().comultiply(i))
                for (auto [j1, j2] : H.coalgebra().comultiply(j)) {
                    const auto &a = H.product(i1, j1);
                    const auto &b = H.product(i2, j2);
                    for (std::uint32_t p = 0; p <= i1 + j1; ++p)
                        for (std::uint32_t q = 0; q <= i2 + j2; ++q)
                            if (!r.is_zero(a[p]) && !r.is_zero(b[q]))
                                rhs[p][q] = r.add(rhs[p][q], r.mul(a[p], b[q]));
                }
            for (std::uint32_t p = 0; p <= n; ++p)
                for (std::uint32_t q = 0; q <= n; ++q)
                    if (lhs[p][q] != rhs[p][q])
                        return fail("bialgebra", {i, j, p, q});
        }
    // m (S ⊗ id) Δ = η ε = m (id ⊗ S) Δ
    for (std::uint32_t n = 0; n <= N; ++n) {
        auto left = zero_dp(r, N), right = zero_dp(r, N);
        for (auto [a, b] : H.coalgebra().comultiply(n)) {
            auto l = H.multiply(H.antipode(a), H.basis(b));
            auto rr = H.multiply(H.basis(a), H.antipode(b));
            for (std::uint32_t k = 0; k <= N; ++k) {
                left[k] = r.add(left[k], l[k]);
                right[k] = r.add(right[k], rr[k]);
            }
        }
        auto expect = zero_dp(r, N);
        expect[0] = H.coalgebra().counit(n);
        if (left != expect || right != expect)
            return fail("antipode", {n});
    }
    for (std::uint32_t n = 0; n <= N; ++n) {
        auto twice = zero_dp(r, N);
        const auto &s = H.antipode(n);
        for (std::uint32_t m = 0; m <= N; ++m)
            if (!r.is_zero(s[m]))
                for (std::uint32_t k = 0; k <= N; ++k)
                    twice[k] = r.add(twice[k], r.mul(s[m], H.antipode(m)[k]));
        if (twice != H.basis(n))
            return fail("antipode_involution", {n});
    }
    return {};
}

DividedPowerHopf cartier_dual(const FormalGroupLaw &G)
{
    const auto &r = G.ring();
    const auto N = G.truncation();
    const auto Fk = powers(G.series(), N);
    std::vector<std::vector<DpVec>> mul(N + 1);
    for (std::uint32_t i = 0; i <= N; ++i)
        for (std::uint32_t j = 0; i + j <= N; ++j) {
            auto v = zero_dp(r, N);
            for (std::uint32_t k = 0; k <= N; ++k)
                v[k] = Fk[k].coefficient(Monomial{i, j});
            mul[i].push_back(std::move(v));
        }
    // <S x^[n], X^m> = <x^[n], ι(X)^m>
    const auto iota = powers(formal_inverse(G), N);
    std::vector<DpVec> S(N + 1, zero_dp(r, N));
    for (std::uint32_t n = 0; n <= N; ++n)
        for (std::uint32_t m = 0; m <= N; ++m)
            S[n][m] = iota[m].coefficient(Monomial{n});
    DividedPowerHopf H(r, N, std::move(mul), std::move(S));
    auto rep = hopf_axiom_report(H);
    if (!rep.valid)
        throw Error(ErrorKind::HopfAxiomFailure, "dual fails the " + rep.axiom + " axiom", rep.to_json());
    return H;
}

nlohmann::json WeightReport::to_json() const
{
    nlohmann::json j{{"homogeneous", homogeneous}, {"lambda_weight", lambda_weight}, {"checked_terms", checked}};
    if (!homogeneous)
        j.update({{"witness", witness}, {"term", term}});
    return j;
}

WeightReport weight_report(const DividedPowerHopf &H, const std::string &lambda, int lambda_weight)
{
    const auto &r = H.ring();
    const auto N = H.truncation();
    std::optional<std::size_t> slot;
    if (r.kind() == RingKind::PolynomialExtension) {
        const auto &vars = r.variables();
        for (std::size_t v = 0; v < vars.size(); ++v)
            if (vars[v] == lambda)
                slot = v;
    }
    WeightReport rep;
    rep.lambda_weight = lambda_weight;
    for (std::uint32_t i = 0; i <= N; ++i)
        for (std::uint32_t j = 0; i + j <= N; ++j)
            for (std::uint32_t k = 0; k <= N; ++k) {
                const auto &c = H.constant(i, j, k);
                if (r.is_zero(c))
                    continue;
                const int lhs = DividedPowerCoalgebra::weight(i) + DividedPowerCoalgebra::weight(j);
                auto check = [&](long deg, std::string term) {
                    ++rep.checked;
                    if (rep.homogeneous && lhs != DividedPowerCoalgebra::weight(k) + lambda_weight * deg) {
                        rep.homogeneous = false;
                        rep.witness = {i, j, k};
                        rep.term = std::move(term);
                    }
                };
                if (slot) {
                    for (const auto &t : r.terms(c))
                        check(t.mono[*slot], r.format(r.from_terms({t})));
                } else {
                    check(0, r.format(c));
                }
            }
    return rep;
}

WeightReport filtered_dual_weights(const DividedPowerHopf &H, const std::string &lambda, int lambda_weight)
{
    auto rep = weight_report(H, lambda, lambda_weight);
    if (!rep.homogeneous)
        throw Error(ErrorKind::WeightInhomogeneity,
                    "structure constant of x^[" + std::to_string(rep.witness[0]) + "] * x^[" +
                        std::to_string(rep.witness[1]) + "] at x^[" + std::to_string(rep.witness[2]) +
                        "] is not weight-homogeneous",
                    rep.to_json());
    return rep;
}

nlohmann::json PairingReport::to_json() const
{
    nlohmann::json j{{"ok", ok}};
    if (!ok)
        j.update({{"identity", identity}, {"witness", witness}});
    return j;
}

PairingReport dual_pairing_check(const FormalGroupLaw &G, const DividedPowerHopf &H)
{
    if (!(G.ring() == H.ring()) || G.truncation() != H.truncation())
        throw Error(ErrorKind::MismatchedContext, "law and dual have different rings or truncations");
    const auto &r = G.ring();
    const auto N = G.truncation();
    PairingReport rep;
    auto fail = [&](std::string identity, std::vector<std::uint32_t> w) {
        rep.ok = false;
        rep.identity = std::move(identity);
        rep.witness = std::move(w);
        return rep;
    };
    // <x^[i] x^[j], X^k> = <x^[i] ⊗ x^[j], F(X, Y)^k>
    auto Fk = TruncatedSeries::constant(r, G.series().variables(), N, r.one());
    for (std::uint32_t k = 0; k <= N; ++k) {
        for (std::uint32_t i = 0; i <= N; ++i)
            for (std::uint32_t j = 0; i + j <= N; ++j)
                if (H.constant(i, j, k) != Fk.coefficient(Monomial{i, j}))
                    return fail("product", {i, j, k});
        Fk = Fk * G.series();
    }
    // <Δ x^[n], X^i ⊗ X^j> = <x^[n], X^i X^j>
    auto X = TruncatedSeries::variable(r, {"X"}, N, 0);
    for (std::uint32_t n = 0; n <= N; ++n) {
        std::vector<std::vector<RingElement>> delta(N + 1, std::vector<RingElement>(N + 1, r.zero()));
        for (auto [a, b] : H.coalgebra().comultiply(n))
            delta[a][b] = r.add(delta[a][b], r.one());
        for (std::uint32_t i = 0; i <= N; ++i)
            for (std::uint32_t j = 0; i + j <= N; ++j)
                if (delta[i][j] != (X.pow(i) * X.pow(j)).coefficient(Monomial{n}))
                    return fail("coproduct", {n, i, j});
    }
    // <S x^[n], X^m> = <x^[n], ι(X)^m>
    const auto iota = formal_inverse(G);
    auto im = TruncatedSeries::constant(r, {"X"}, N, r.one());
    for (std::uint32_t m = 0; m <= N; ++m) {
        for (std::uint32_t n = 0; n <= N; ++n)
            if (H.antipode(n)[m] != im.coefficient(Monomial{n}))
                return fail("antipode", {n, m});
        im = im * iota;
    }
    return rep;
}

std::vector<std::uint32_t> comultiplication_preserves_adic(const FormalGroupLaw &G, std::uint32_t n_max)
{
    if (n_max > G.truncation())
        throw Error(ErrorKind::IndexOutOfRange, "degree beyond the truncation of the law",
                    {{"n", n_max}, {"N", G.truncation()}});
    std::vector<std::uint32_t> out;
    auto Fn = G.series();
    for (std::uint32_t n = 1; n <= n_max; ++n) {
        for (const auto &t : Fn.terms())
            if (t.mono.degree() < n)
                throw Error(ErrorKind::PreservationFailure,
                            "F(X, Y)^" + std::to_string(n) + " has a term of degree below " + std::to_string(n),
                            {{"n", n}, {"monomial", t.mono.format({"X", "Y"})}});
        out.push_back(n);
        Fn = Fn * G.series();
    }
    return out;
}

PresentedAlgebra augmented_algebra(const Ring &ring)
{
    if (ring.is_field())
        return PresentedAlgebra::from_table(ring, {"1"}, {{{ring.one()}}}, {ring.one()});
    if (ring.kind() == RingKind::MonicQuotient && ring.base().is_field()) {
        const auto &f = ring.quotient_modulus();
        if (!ring.base().is_zero(f.front()))
            throw Error(ErrorKind::InvalidArgument,
                        "no augmentation sending " + ring.variables().front() + " to 0 on " + ring.name());
        return PresentedAlgebra::univariate(ring.base(), ring.variables().front(), f);
    }
    throw Error(ErrorKind::UnsupportedRing, "expected a field or k[v]/(f), got " + ring.name());
}

nlohmann::json GrouplikePoints::to_json(const PresentedAlgebra &A) const
{
    auto pts = nlohmann::json::array();
    for (const auto &a : parameters)
        pts.push_back(A.format(a));
    return {{"count", parameters.size()},
            {"parameters", pts},
            {"table", table},
            {"equals_nilradical", equals_nilradical},
            {"law_matches", law_matches}};
}

GrouplikePoints grouplike_points(const FormalGroupLaw &G, const DividedPowerHopf &H, const PresentedAlgebra &A)
{
    const auto &k = A.field();
    const auto N = H.truncation();
    if (!(G.ring() == H.ring()) || G.truncation() != N)
        throw Error(ErrorKind::MismatchedContext, "law and dual have different rings or truncations");
    if (!k.is_finite())
        throw Error(ErrorKind::RingNotFinite, "grouplike enumeration needs a finite algebra, got one over " + k.name());
    const auto d = A.dimension();
    const auto q = static_cast<std::size_t>(k.cardinality()->get_ui());
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) {
        if (total > (std::size_t{1} << 20) / q)
            throw Error(ErrorKind::InvalidArgument, "algebra too large to enumerate", {{"dimension", d}});
        total *= q;
    }

    // augmentation ideal and its powers
    std::vector<Vec> m_gens;
    for (const auto &g : A.generators())
        m_gens.push_back(A.generator(g));
    auto power = A.ideal(m_gens);
    std::uint32_t e = 1; // power == m^e
    while (!power.is_zero()) {
        auto next = A.ideal_product(m_gens, power);
        if (next == power)
            throw Error(ErrorKind::NonNilpotentAugmentation, "the augmentation ideal of the base is not nilpotent");
        power = std::move(next);
        ++e;
    }
    // m^e = 0 with e minimal (e = 1 for m = 0)
    if (e > N + 1)
        throw Error(ErrorKind::IndeterminateAtTruncation,
                    "the augmentation ideal needs N >= " + std::to_string(e - 1) + " to pair with the dual",
                    {{"N", N}, {"nilpotency", e}});

    const auto phi = RingMap::canonical(H.ring(), k);
    const auto field_elems = k.elements();
    auto element_at = [&](std::size_t index) {
        Vec v(d);
        for (std::size_t i = 0; i < d; ++i) {
            v[i] = field_elems[index % q];
            index /= q;
        }
        return v;
    };
    auto key = [&](const Vec &v) {
        std::string s;
        for (const auto &c : v)
            s += k.serialize(c) + ";";
        return s;
    };

    GrouplikePoints out;
    std::map<std::string, std::size_t> index_of;
    std::vector<std::vector<Vec>> coeffs; // g_a as coefficients a_n in A
    std::vector<bool> nilpotent(total);
    std::size_t nil_count = 0;
    bool nil_match = true;
    for (std::size_t idx = 0; idx < total; ++idx) {
        const auto a = element_at(idx);
        const bool is_nil = A.nilpotency_index(a) != 0;
        nil_count += is_nil;
        // a_0 = 1 by the counit, a_n = a_1 a_{n-1} from the (1, n-1) component of Δ(g) = g ⊗ g
        std::vector<Vec> g{A.one(), a};
        for (std::uint32_t n = 2; n <= N; ++n)
            g.push_back(A.mul(a, g.back()));
        g.resize(N + 1);
        // remaining components: a_{i+j} = a_i a_j inside the truncation, a_i a_j = 0 beyond it
        bool grouplike = true;
        for (std::uint32_t i = 0; grouplike && i <= N; ++i)
            for (std::uint32_t j = 0; grouplike && j <= N; ++j) {
                auto prod = A.mul(g[i], g[j]);
                grouplike = i + j <= N ? prod == g[i + j] : is_zero_vector(k, prod);
            }
        if (grouplike != is_nil)
            nil_match = false;
        if (!grouplike)
            continue;
        index_of[key(a)] = out.parameters.size();
        out.parameters.push_back(a);
        coeffs.push_back(std::move(g));
    }
    out.equals_nilradical = nil_match && nil_count == out.parameters.size();

    // law coefficients in A, then F(a, b) and g_a g_b
    std::vector<std::tuple<std::uint32_t, std::uint32_t, RingElement>> law{{1, 0, k.one()}, {0, 1, k.one()}};
    for (const auto &[i, j, c] : G.coefficient_table())
        law.emplace_back(i, j, phi(c));
    const auto count = out.parameters.size();
    out.table.assign(count, std::vector<std::size_t>(count, 0));
    out.law_matches = true;
    for (std::size_t s = 0; s < count; ++s)
        for (std::size_t t = 0; t < count; ++t) {
            const auto &ga = coeffs[s], &gb = coeffs[t];
            auto F = A.zero();
            for (const auto &[i, j, c] : law)
                F = A.add(F, A.scale(c, A.mul(ga[i], gb[j])));
            std::vector<Vec> prod(N + 1, A.zero());
            for (std::uint32_t i = 0; i <= N; ++i)
                for (std::uint32_t j = 0; i + j <= N; ++j) {
                    auto ab = A.mul(ga[i], gb[j]);
                    if (is_zero_vector(k, ab))
                        continue;
                    const auto &c = H.product(i, j);
                    for (std::uint32_t n = 0; n <= N; ++n)
                        if (!H.ring().is_zero(c[n]))
                            prod[n] = A.add(prod[n], A.scale(phi(c[n]), ab));
                }
            auto it = index_of.find(key(F));
            if (it == index_of.end() || prod != coeffs[it->second]) {
                out.law_matches = false;
                continue;
            }
            out.table[s][t] = it->second;
        }
    return out;
}

} // namespace cartier
