#include <cartier/fgl.hpp>

#include <cartier/errors.hpp>

namespace cartier
{

namespace
{

const std::vector<std::string> kXY{"X", "Y"};
const std::vector<std::string> kXYZ{"X", "Y", "Z"};
const std::vector<std::string> kX{"X"};

// Univariate series in X built from the Y-free part of a series in (X, Y).
TruncatedSeries y_free_part(const TruncatedSeries &s, std::uint32_t N)
{
    std::vector<PolyTerm> out;
    for (const auto &t : s.terms())
        if (t.mono[1] == 0)
            out.push_back({Monomial{t.mono[0]}, t.coeff});
    return TruncatedSeries::from_terms(s.ring(), kX, N, std::move(out));
}

// 1/u for a univariate u with unit constant term.
TruncatedSeries unit_inverse(const TruncatedSeries &u)
{
    const auto &r = u.ring();
    const auto N = u.truncation();
    std::vector<RingElement> a(N + 1, r.zero()), b(N + 1, r.zero());
    for (const auto &t : u.terms())
        a[t.mono[0]] = t.coeff;
    const auto inv0 = r.inverse(a[0]);
    b[0] = inv0;
    for (std::uint32_t n = 1; n <= N; ++n) {
        auto acc = r.zero();
        for (std::uint32_t k = 1; k <= n; ++k)
            if (!r.is_zero(a[k]))
                acc = r.add(acc, r.mul(a[k], b[n - k]));
        b[n] = r.neg(r.mul(acc, inv0));
    }
    return TruncatedSeries::univariate(r, u.variables()[0], N, b);
}

// First grlex term at which two series in one context differ.
std::optional<PolyTerm> first_difference(const TruncatedSeries &lhs, const TruncatedSeries &rhs)
{
    auto d = lhs - rhs;
    if (d.is_zero())
        return std::nullopt;
    return d.terms().front();
}

AxiomReport violation(std::string axiom, const PolyTerm &t, const Ring &r, const std::vector<std::string> &names)
{
    AxiomReport rep;
    rep.valid = false;
    rep.axiom = std::move(axiom);
    rep.monomial = t.mono.format(names);
    rep.discrepancy = r.serialize(t.coeff);
    return rep;
}

void require_xy(const TruncatedSeries &F)
{
    if (F.variables() != kXY)
        throw Error(ErrorKind::MismatchedContext, "a formal group law is a series in the variables X, Y");
}

} // namespace

nlohmann::json AxiomReport::to_json() const
{
    if (valid)
        return {{"valid", true}};
    return {{"valid", false}, {"axiom", axiom}, {"monomial", monomial}, {"discrepancy", discrepancy}};
}

AxiomReport fgl_axiom_report(const TruncatedSeries &F)
{
    require_xy(F);
    const auto &r = F.ring();
    const auto N = F.truncation();

    const std::size_t swap[] = {1, 0};
    if (auto d = first_difference(F, F.embed(kXY, swap)))
        return violation("commutativity", *d, r, kXY);

    // F(X, 0) = X; F(0, Y) = Y then follows from commutativity.
    auto x = TruncatedSeries::variable(r, kXY, N, 0);
    if (auto d = first_difference(F.evaluate_at(1, r.zero()), x))
        return violation("unit", *d, r, kXY);

    const std::size_t xy[] = {0, 1}, yz[] = {1, 2};
    auto X = TruncatedSeries::variable(r, kXYZ, N, 0);
    auto Z = TruncatedSeries::variable(r, kXYZ, N, 2);
    const TruncatedSeries left_args[] = {F.embed(kXYZ, xy), Z};
    const TruncatedSeries right_args[] = {X, F.embed(kXYZ, yz)};
    if (auto d = first_difference(series_compose(F, left_args), series_compose(F, right_args)))
        return violation("associativity", *d, r, kXYZ);
    return {};
}

FormalGroupLaw check_fgl_axioms(const TruncatedSeries &F)
{
    auto rep = fgl_axiom_report(F);
    if (!rep.valid)
        throw Error(ErrorKind::AxiomViolation,
                    rep.axiom + " fails at " + rep.monomial + " (discrepancy " + rep.discrepancy + ")", rep.to_json());
    return FormalGroupLaw(F);
}

FormalGroupLaw FormalGroupLaw::additive(const Ring &ring, std::uint32_t N)
{
    return from_coefficients(ring, N, {});
}

FormalGroupLaw FormalGroupLaw::multiplicative(const Ring &ring, std::uint32_t N)
{
    return from_coefficients(ring, N, {{1, 1, ring.one()}});
}

FormalGroupLaw FormalGroupLaw::from_coefficients(
    const Ring &ring, std::uint32_t N, const std::vector<std::tuple<std::uint32_t, std::uint32_t, RingElement>> &a)
{
    std::vector<PolyTerm> terms{{Monomial{1, 0}, ring.one()}, {Monomial{0, 1}, ring.one()}};
    for (const auto &[i, j, c] : a) {
        if (i == 0 || j == 0)
            throw Error(ErrorKind::InvalidArgument, "coefficient table lists a_ij with i, j >= 1 only");
        terms.push_back({Monomial{i, j}, c});
    }
    return check_fgl_axioms(TruncatedSeries::from_terms(ring, kXY, N, std::move(terms)));
}

RingElement FormalGroupLaw::coefficient(std::uint32_t i, std::uint32_t j) const
{
    return F_.coefficient(Monomial{i, j});
}

std::vector<std::tuple<std::uint32_t, std::uint32_t, RingElement>> FormalGroupLaw::coefficient_table() const
{
    std::vector<std::tuple<std::uint32_t, std::uint32_t, RingElement>> out;
    for (const auto &t : F_.terms())
        if (t.mono[0] > 0 && t.mono[1] > 0)
            out.emplace_back(t.mono[0], t.mono[1], t.coeff);
    return out;
}

TruncatedSeries FormalGroupLaw::apply(const TruncatedSeries &a, const TruncatedSeries &b) const
{
    const TruncatedSeries args[] = {a, b};
    return series_compose(F_, args);
}

nlohmann::json FormalGroupLaw::to_json() const
{
    auto coeffs = nlohmann::json::array();
    for (const auto &[i, j, c] : coefficient_table())
        coeffs.push_back({i, j, ring().serialize(c)});
    return {{"ring", ring().to_json()}, {"N", truncation()}, {"coeffs", coeffs}};
}

FormalGroupLaw FormalGroupLaw::from_json(const nlohmann::json &j)
{
    if (!j.is_object() || !j.contains("N"))
        throw Error(ErrorKind::ParseError, "law JSON needs at least an \"N\" field");
    auto ring = j.contains("ring") ? Ring::from_json(j.at("ring")) : Ring::integers();
    std::uint32_t N = 0;
    try {
        N = j.at("N").get<std::uint32_t>();
    } catch (const nlohmann::json::exception &) {
        throw Error(ErrorKind::ParseError, "\"N\" must be a nonnegative integer");
    }
    std::vector<std::tuple<std::uint32_t, std::uint32_t, RingElement>> a;
    for (const auto &row : j.value("coeffs", nlohmann::json::array())) {
        if (!row.is_array() || row.size() != 3 || !row[0].is_number_unsigned() || !row[1].is_number_unsigned())
            throw Error(ErrorKind::ParseError, "coefficient rows have the form [i, j, \"a_ij\"]");
        RingElement c;
        if (row[2].is_string())
            c = ring.parse_element(row[2].get<std::string>());
        else if (row[2].is_number_integer())
            c = ring.from_int(row[2].get<long>());
        else
            throw Error(ErrorKind::ParseError, "coefficient must be a string or an integer");
        a.emplace_back(row[0].get<std::uint32_t>(), row[1].get<std::uint32_t>(), c);
    }
    return from_coefficients(ring, N, a);
}

TruncatedSeries formal_inverse(const FormalGroupLaw &G)
{
    const auto &r = G.ring();
    const auto N = G.truncation();
    // F(X, iota + b X^n) = F(X, iota) + b X^n + O(X^{n+1}), so b_n cancels the
    // degree-n coefficient of F(X, iota_{<n}).
    std::vector<RingElement> b(N + 1, r.zero());
    if (N >= 1)
        b[1] = r.neg(r.one());
    auto X = TruncatedSeries::variable(r, kX, N, 0);
    for (std::uint32_t n = 2; n <= N; ++n) {
        auto iota = TruncatedSeries::univariate(r, "X", N, b);
        auto c = G.apply(X, iota).coefficient(Monomial{n});
        b[n] = r.neg(c);
    }
    return TruncatedSeries::univariate(r, "X", N, b);
}

TruncatedSeries n_series(const FormalGroupLaw &G, long n)
{
    const auto &r = G.ring();
    const auto N = G.truncation();
    auto result = TruncatedSeries::zero(r, kX, N);
    auto base = TruncatedSeries::variable(r, kX, N, 0);
    unsigned long m = n < 0 ? 0UL - static_cast<unsigned long>(n) : static_cast<unsigned long>(n);
    // double-and-add; F is commutative and associative up to N
    while (m > 0) {
        if (m & 1)
            result = G.apply(result, base);
        m >>= 1;
        if (m)
            base = G.apply(base, base);
    }
    if (n < 0) {
        const TruncatedSeries args[] = {result};
        result = series_compose(formal_inverse(G), args);
    }
    return result;
}

std::string Height::format() const
{
    if (infinite)
        return "infinity at truncation " + std::to_string(truncation);
    return std::to_string(value);
}

Height height(const FormalGroupLaw &G)
{
    const auto &r = G.ring();
    const auto ch = r.characteristic();
    if (ch == 0 || !ch.fits_ulong_p() || !is_prime(ch.get_ui()))
        throw Error(ErrorKind::NotPrimeCharacteristic,
                    "height needs a ring of prime characteristic; " + r.name() + " has characteristic " + ch.get_str());
    const auto p = ch.get_ui();
    const auto N = G.truncation();
    if (N < p)
        throw Error(ErrorKind::IndeterminateAtTruncation,
                    "[p] is only known to degree " + std::to_string(N) + " < p = " + std::to_string(p));
    auto ps = n_series(G, static_cast<long>(p));
    if (ps.is_zero())
        return {true, 0, N};
    const auto &lead = ps.terms().front();
    const auto d = lead.mono[0];
    std::uint32_t h = 0;
    for (std::uint64_t q = 1; q < d; q *= p)
        ++h;
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < h; ++i)
        q *= p;
    if (q != d || !r.is_unit(lead.coeff))
        throw Error(ErrorKind::IndeterminateAtTruncation,
                    "leading term " + r.format(lead.coeff) + "*X^" + std::to_string(d) +
                        " of [p] is not a unit times a power of X^p",
                    {{"degree", d}, {"coefficient", r.serialize(lead.coeff)}});
    return {false, h, N};
}

TruncatedSeries fgl_log(const FormalGroupLaw &G)
{
    const auto &r = G.ring();
    const auto N = G.truncation();
    if (N == 0)
        return TruncatedSeries::zero(r, kX, 0);
    // invariant differential 1 / (dF/dY)(X, 0), needed to degree N - 1
    auto dF = y_free_part(G.series().derivative(1), N - 1);
    auto omega = unit_inverse(dF);
    std::vector<PolyTerm> out;
    for (const auto &t : omega.terms())
        out.push_back({Monomial{t.mono[0] + 1}, r.div_integer(t.coeff, t.mono[0] + 1)});
    return TruncatedSeries::from_terms(r, kX, N, std::move(out));
}

FormalGroupLaw fgl_exp(const TruncatedSeries &l)
{
    if (l.variables().size() != 1)
        throw Error(ErrorKind::MismatchedContext, "a logarithm is a univariate series");
    const auto &r = l.ring();
    const auto N = l.truncation();
    if (!r.is_zero(l.constant_term()) || (N >= 1 && !r.is_one(l.coefficient(Monomial{1}))))
        throw Error(ErrorKind::InvalidArgument, "a logarithm must have the form X + (higher order terms)");
    auto e = series_reversion(l);
    const std::size_t x[] = {0}, y[] = {1};
    const TruncatedSeries sum[] = {l.embed(kXY, x) + l.embed(kXY, y)};
    return check_fgl_axioms(series_compose(e, sum));
}

FormalGroupLaw deform_to_normal_cone(const FormalGroupLaw &G, const std::string &var)
{
    const auto &r = G.ring();
    auto rl = Ring::polynomial(r, {var});
    auto to_rl = RingMap::canonical(r, rl);
    auto lambda = rl.generator(0);
    std::vector<std::tuple<std::uint32_t, std::uint32_t, RingElement>> a;
    for (const auto &[i, j, c] : G.coefficient_table())
        a.emplace_back(i, j, rl.mul(to_rl(c), rl.pow(lambda, i + j - 1)));
    return FormalGroupLaw::from_coefficients(rl, G.truncation(), a);
}

FormalGroupLaw base_change(const FormalGroupLaw &G, const RingMap &phi)
{
    return check_fgl_axioms(G.series().map_coefficients(phi));
}

FormalGroupLaw conjugate(const FormalGroupLaw &G, const TruncatedSeries &phi)
{
    const auto &r = G.ring();
    const auto N = G.truncation();
    if (phi.variables().size() != 1 || !(phi.ring() == r) || phi.truncation() != N)
        throw Error(ErrorKind::MismatchedContext, "conjugating series must be univariate over the law's ring");
    auto inv = series_reversion(phi);
    const std::size_t x[] = {0}, y[] = {1};
    auto F = G.apply(phi.embed(kXY, x), phi.embed(kXY, y));
    const TruncatedSeries args[] = {F};
    auto H = series_compose(inv, args);
    return check_fgl_axioms(H);
}

std::optional<std::string> standard_law_name(const FormalGroupLaw &G)
{
    auto table = G.coefficient_table();
    if (table.empty())
        return "Ĝ_a";
    if (table.size() == 1 && std::get<0>(table[0]) == 1 && std::get<1>(table[0]) == 1 &&
        G.ring().is_one(std::get<2>(table[0])))
        return "Ĝ_m";
    return std::nullopt;
}

} // namespace cartier
