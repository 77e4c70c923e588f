#include <cartier/ring.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>

namespace cartier
{

struct Ring::Desc {
    RingKind kind = RingKind::Integers;
    Integer modulus;
    std::shared_ptr<const Desc> base;
    std::vector<std::string> vars;
    std::vector<RingElement> monic; // low-to-high, leading one included
    bool field = false;
    std::string label;
};

bool RingElement::operator==(const RingElement &other) const
{
    if (rep_.index() != other.rep_.index())
        return false;
    if (auto a = as_integer())
        return *a == *other.as_integer();
    if (auto a = as_rational())
        return *a == *other.as_rational();
    if (auto a = as_dense())
        return *a == *other.as_dense();
    return *as_sparse() == *other.as_sparse();
}

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

namespace
{

[[noreturn]] void fail(ErrorKind kind, const std::string &msg)
{
    throw Error(kind, msg);
}

Integer mod_floor(const Integer &a, const Integer &m)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

} // namespace

// ---------------------------------------------------------------------------
// construction

Ring Ring::integers()
{
    static const auto d = [] {
        auto p = std::make_shared<Desc>();
        p->kind = RingKind::Integers;
        return p;
    }();
    return Ring(d);
}

Ring Ring::rationals()
{
    static const auto d = [] {
        auto p = std::make_shared<Desc>();
        p->kind = RingKind::Rationals;
        p->field = true;
        return p;
    }();
    return Ring(d);
}

Ring Ring::integers_mod(const Integer &m)
{
    if (m < 2)
        fail(ErrorKind::InvalidArgument, "IntegersMod requires m >= 2");
    auto p = std::make_shared<Desc>();
    p->kind = RingKind::IntegersMod;
    p->modulus = m;
    p->field = m.fits_ulong_p() && is_prime(m.get_ui());
    return Ring(p);
}

Ring Ring::polynomial(const Ring &base, std::vector<std::string> vars)
{
    if (vars.empty())
        fail(ErrorKind::InvalidArgument, "polynomial extension needs at least one variable");
    auto seen = base.all_variable_names();
    for (const auto &v : vars) {
        if (v.empty() || std::find(seen.begin(), seen.end(), v) != seen.end())
            fail(ErrorKind::InvalidArgument, "duplicate or empty variable name '" + v + "'");
        seen.push_back(v);
    }
    auto p = std::make_shared<Desc>();
    p->kind = RingKind::PolynomialExtension;
    p->base = base.d_;
    p->vars = std::move(vars);
    return Ring(p);
}

Ring Ring::monic_quotient(const Ring &base, std::string var, std::vector<RingElement> monic, bool known_field)
{
    if (monic.size() < 2 || !base.is_one(monic.back()))
        fail(ErrorKind::InvalidArgument, "quotient modulus must be monic of degree >= 1");
    auto seen = base.all_variable_names();
    if (var.empty() || std::find(seen.begin(), seen.end(), var) != seen.end())
        fail(ErrorKind::InvalidArgument, "duplicate or empty variable name '" + var + "'");
    auto p = std::make_shared<Desc>();
    p->kind = RingKind::MonicQuotient;
    p->base = base.d_;
    p->vars = {std::move(var)};
    p->monic = std::move(monic);
    p->field = known_field;
    return Ring(p);
}

Ring Ring::truncated(const Ring &base, std::string var, unsigned e)
{
    if (e == 0)
        fail(ErrorKind::InvalidArgument, "truncation exponent must be positive");
    std::vector<RingElement> f(e + 1, base.zero());
    f[e] = base.one();
    return monic_quotient(base, std::move(var), std::move(f), e == 1 && base.is_field());
}

namespace
{

using SmallPoly = std::vector<std::uint64_t>; // low-to-high, mod p

// Remainder of a modulo monic b over F_p.
SmallPoly small_rem(SmallPoly a, const SmallPoly &b, std::uint64_t p)
{
    const auto db = b.size() - 1;
    while (a.size() > db) {
        const auto c = a.back();
        const auto shift = a.size() - 1 - db;
        if (c != 0)
            for (std::size_t i = 0; i <= db; ++i)
                a[shift + i] = (a[shift + i] + (p - c) * b[i]) % p;
        a.pop_back();
    }
    return a;
}

bool small_irreducible(const SmallPoly &f, std::uint64_t p)
{
    const auto d = f.size() - 1;
    for (std::size_t k = 1; 2 * k <= d; ++k) {
        // every monic g of degree k
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < k; ++i)
            count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            SmallPoly g(k + 1, 0);
            auto t = idx;
            for (std::size_t i = 0; i < k; ++i) {
                g[i] = t % p;
                t /= p;
            }
            g[k] = 1;
            auto r = small_rem(f, g, p);
            if (std::all_of(r.begin(), r.end(), [](auto x) { return x == 0; }))
                return false;
        }
    }
    return true;
}

} // namespace

Ring Ring::galois_field(std::uint64_t p, unsigned k, std::string var)
{
    if (!is_prime(p))
        fail(ErrorKind::InvalidArgument, "GF(q) requires q to be a prime power");
    if (k == 0)
        fail(ErrorKind::InvalidArgument, "GF degree must be positive");
    auto fp = integers_mod(Integer(static_cast<unsigned long>(p)));
    if (k == 1)
        return fp;
    std::uint64_t count = 1;
    for (unsigned i = 0; i < k; ++i)
        count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        SmallPoly f(k + 1, 0);
        auto t = idx;
        for (unsigned i = 0; i < k; ++i) {
            f[i] = t % p;
            t /= p;
        }
        f[k] = 1;
        if (!small_irreducible(f, p))
            continue;
        std::vector<RingElement> monic;
        for (auto c : f)
            monic.push_back(fp.from_integer(Integer(static_cast<unsigned long>(c))));
        auto r = monic_quotient(fp, std::move(var), std::move(monic), true);
        auto d = std::make_shared<Desc>(*r.d_);
        d->label = "GF(" + std::to_string(count) + ")";
        return Ring(d);
    }
    fail(ErrorKind::InvalidArgument, "no irreducible polynomial found");
}

// ---------------------------------------------------------------------------
// descriptor queries

RingKind Ring::kind() const noexcept
{
    return d_->kind;
}

Integer Ring::characteristic() const
{
    switch (d_->kind) {
    case RingKind::Integers:
    case RingKind::Rationals: return 0;
    case RingKind::IntegersMod: return d_->modulus;
    default: return base().characteristic();
    }
}

bool Ring::is_field() const
{
    return d_->field;
}

bool Ring::is_finite() const
{
    switch (d_->kind) {
    case RingKind::IntegersMod: return true;
    case RingKind::MonicQuotient: return base().is_finite();
    default: return false;
    }
}

bool Ring::is_torsion_free() const
{
    switch (d_->kind) {
    case RingKind::Integers:
    case RingKind::Rationals: return true;
    case RingKind::IntegersMod: return false;
    default: return base().is_torsion_free();
    }
}

Ring Ring::base() const
{
    if (!d_->base)
        fail(ErrorKind::UnsupportedRing, "ring " + name() + " has no base ring");
    return Ring(d_->base);
}

const std::vector<std::string> &Ring::variables() const
{
    return d_->vars;
}

const Integer &Ring::modulus() const
{
    if (d_->kind != RingKind::IntegersMod)
        fail(ErrorKind::UnsupportedRing, "ring " + name() + " is not Z/m");
    return d_->modulus;
}

const std::vector<RingElement> &Ring::quotient_modulus() const
{
    if (d_->kind != RingKind::MonicQuotient)
        fail(ErrorKind::UnsupportedRing, "ring " + name() + " is not a monic quotient");
    return d_->monic;
}

std::size_t Ring::quotient_degree() const
{
    return quotient_modulus().size() - 1;
}

std::vector<std::string> Ring::all_variable_names() const
{
    std::vector<std::string> out = d_->vars;
    if (d_->base) {
        auto rest = base().all_variable_names();
        out.insert(out.end(), rest.begin(), rest.end());
    }
    return out;
}

std::string Ring::name() const
{
    if (!d_->label.empty())
        return d_->label;
    switch (d_->kind) {
    case RingKind::Integers: return "Z";
    case RingKind::Rationals: return "Q";
    case RingKind::IntegersMod: return "Z/" + d_->modulus.get_str();
    case RingKind::PolynomialExtension: {
        std::string s = base().name() + "[";
        for (std::size_t i = 0; i < d_->vars.size(); ++i)
            s += (i ? "," : "") + d_->vars[i];
        return s + "]";
    }
    case RingKind::MonicQuotient: {
        auto b = base();
        auto poly = Ring::polynomial(b, d_->vars);
        std::vector<PolyTerm> terms;
        for (std::size_t i = d_->monic.size(); i-- > 0;)
            if (!b.is_zero(d_->monic[i]))
                terms.push_back({Monomial{static_cast<std::uint32_t>(i)}, d_->monic[i]});
        std::reverse(terms.begin(), terms.end());
        return b.name() + "[" + d_->vars[0] + "]/(" + poly.format(RingElement(std::move(terms))) + ")";
    }
    }
    return "?";
}

bool Ring::operator==(const Ring &other) const
{
    if (d_ == other.d_)
        return true;
    const auto &a = *d_, &b = *other.d_;
    if (a.kind != b.kind || a.modulus != b.modulus || a.vars != b.vars || a.monic != b.monic)
        return false;
    if (static_cast<bool>(a.base) != static_cast<bool>(b.base))
        return false;
    return !a.base || Ring(a.base) == Ring(b.base);
}

// ---------------------------------------------------------------------------
// elements

RingElement Ring::zero() const
{
    return from_integer(0);
}

RingElement Ring::one() const
{
    return from_integer(1);
}

RingElement Ring::from_integer(const Integer &v) const
{
    switch (d_->kind) {
    case RingKind::Integers: return RingElement(v);
    case RingKind::Rationals: return RingElement(Rational(v));
    case RingKind::IntegersMod: return RingElement(mod_floor(v, d_->modulus));
    case RingKind::PolynomialExtension: {
        auto c = base().from_integer(v);
        if (base().is_zero(c))
            return RingElement(RingElement::Sparse{});
        return RingElement(RingElement::Sparse{{Monomial(d_->vars.size()), std::move(c)}});
    }
    case RingKind::MonicQuotient: {
        auto b = base();
        RingElement::Dense out(quotient_degree(), b.zero());
        out[0] = b.from_integer(v);
        return RingElement(std::move(out));
    }
    }
    return {};
}

RingElement Ring::from_rational(const Rational &v) const
{
    return div_integer(from_integer(v.get_num()), v.get_den());
}

RingElement Ring::generator(std::size_t index) const
{
    if (d_->kind == RingKind::PolynomialExtension) {
        if (index >= d_->vars.size())
            fail(ErrorKind::IndexOutOfRange, "generator index out of range");
        return RingElement(
            RingElement::Sparse{{Monomial::variable(d_->vars.size(), index), base().one()}});
    }
    if (d_->kind == RingKind::MonicQuotient && index == 0) {
        auto b = base();
        RingElement::Dense out(quotient_degree(), b.zero());
        if (out.size() > 1)
            out[1] = b.one();
        else
            out[0] = b.neg(d_->monic[0]);
        return RingElement(std::move(out));
    }
    fail(ErrorKind::UnsupportedRing, "ring " + name() + " has no generator " + std::to_string(index));
}

namespace
{

RingElement lift_from_base(const Ring &r, RingElement b)
{
    if (r.kind() == RingKind::PolynomialExtension) {
        if (r.base().is_zero(b))
            return RingElement(RingElement::Sparse{});
        return RingElement(RingElement::Sparse{{Monomial(r.variables().size()), std::move(b)}});
    }
    RingElement::Dense out(r.quotient_degree(), r.base().zero());
    out[0] = std::move(b);
    return RingElement(std::move(out));
}

} // namespace

RingElement Ring::generator(std::string_view nm) const
{
    for (std::size_t i = 0; i < d_->vars.size(); ++i)
        if (d_->vars[i] == nm)
            return generator(i);
    if (d_->base)
        return lift_from_base(*this, base().generator(nm));
    fail(ErrorKind::ParseError, "unknown variable '" + std::string(nm) + "' in ring " + name());
}

namespace
{

using Sparse = RingElement::Sparse;
using Dense = RingElement::Dense;

Sparse sparse_combine(const Ring &base, const Sparse &a, const Sparse &b, bool subtract)
{
    Sparse out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && grlex_less(a[i].mono, b[j].mono))) {
            out.push_back(a[i++]);
        } else if (i == a.size() || grlex_less(b[j].mono, a[i].mono)) {
            out.push_back({b[j].mono, subtract ? base.neg(b[j].coeff) : b[j].coeff});
            ++j;
        } else {
            auto c = subtract ? base.sub(a[i].coeff, b[j].coeff) : base.add(a[i].coeff, b[j].coeff);
            if (!base.is_zero(c))
                out.push_back({a[i].mono, std::move(c)});
            ++i;
            ++j;
        }
    }
    return out;
}

} // namespace

RingElement Ring::add(const RingElement &a, const RingElement &b) const
{
    switch (d_->kind) {
    case RingKind::Integers: return RingElement(Integer(*a.as_integer() + *b.as_integer()));
    case RingKind::Rationals: return RingElement(Rational(*a.as_rational() + *b.as_rational()));
    case RingKind::IntegersMod: {
        Integer r = *a.as_integer() + *b.as_integer();
        if (r >= d_->modulus)
            r -= d_->modulus;
        return RingElement(std::move(r));
    }
    case RingKind::PolynomialExtension: return RingElement(sparse_combine(base(), *a.as_sparse(), *b.as_sparse(), false));
    case RingKind::MonicQuotient: {
        auto bs = base();
        const auto &x = *a.as_dense(), &y = *b.as_dense();
        Dense out(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            out[i] = bs.add(x[i], y[i]);
        return RingElement(std::move(out));
    }
    }
    return {};
}

RingElement Ring::neg(const RingElement &a) const
{
    switch (d_->kind) {
    case RingKind::Integers: return RingElement(Integer(-*a.as_integer()));
    case RingKind::Rationals: return RingElement(Rational(-*a.as_rational()));
    case RingKind::IntegersMod: {
        const auto &x = *a.as_integer();
        return RingElement(x == 0 ? Integer(0) : Integer(d_->modulus - x));
    }
    case RingKind::PolynomialExtension: {
        auto bs = base();
        Sparse out = *a.as_sparse();
        for (auto &t : out)
            t.coeff = bs.neg(t.coeff);
        return RingElement(std::move(out));
    }
    case RingKind::MonicQuotient: {
        auto bs = base();
        Dense out = *a.as_dense();
        for (auto &c : out)
            c = bs.neg(c);
        return RingElement(std::move(out));
    }
    }
    return {};
}

RingElement Ring::sub(const RingElement &a, const RingElement &b) const
{
    switch (d_->kind) {
    case RingKind::Integers: return RingElement(Integer(*a.as_integer() - *b.as_integer()));
    case RingKind::Rationals: return RingElement(Rational(*a.as_rational() - *b.as_rational()));
    case RingKind::PolynomialExtension: return RingElement(sparse_combine(base(), *a.as_sparse(), *b.as_sparse(), true));
    default: return add(a, neg(b));
    }
}

RingElement Ring::mul(const RingElement &a, const RingElement &b) const
{
    switch (d_->kind) {
    case RingKind::Integers: return RingElement(Integer(*a.as_integer() * *b.as_integer()));
    case RingKind::Rationals: return RingElement(Rational(*a.as_rational() * *b.as_rational()));
    case RingKind::IntegersMod: return RingElement(mod_floor(*a.as_integer() * *b.as_integer(), d_->modulus));
    case RingKind::PolynomialExtension: {
        auto bs = base();
        const auto &x = *a.as_sparse(), &y = *b.as_sparse();
        if (x.empty() || y.empty())
            return RingElement(Sparse{});
        std::map<Monomial, RingElement, GrlexLess> acc;
        for (const auto &s : x)
            for (const auto &t : y) {
                auto m = s.mono * t.mono;
                auto c = bs.mul(s.coeff, t.coeff);
                auto it = acc.find(m);
                if (it == acc.end())
                    acc.emplace(std::move(m), std::move(c));
                else
                    it->second = bs.add(it->second, c);
            }
        Sparse out;
        out.reserve(acc.size());
        for (auto &[m, c] : acc)
            if (!bs.is_zero(c))
                out.push_back({m, c});
        return RingElement(std::move(out));
    }
    case RingKind::MonicQuotient: {
        auto bs = base();
        const auto &x = *a.as_dense(), &y = *b.as_dense();
        const auto d = x.size();
        Dense prod(2 * d - 1, bs.zero());
        for (std::size_t i = 0; i < d; ++i) {
            if (bs.is_zero(x[i]))
                continue;
            for (std::size_t j = 0; j < d; ++j)
                if (!bs.is_zero(y[j]))
                    prod[i + j] = bs.add(prod[i + j], bs.mul(x[i], y[j]));
        }
        for (std::size_t k = prod.size(); k-- > d;) {
            if (bs.is_zero(prod[k]))
                continue;
            const auto c = prod[k];
            for (std::size_t i = 0; i < d; ++i)
                prod[k - d + i] = bs.sub(prod[k - d + i], bs.mul(c, d_->monic[i]));
        }
        prod.resize(d);
        return RingElement(std::move(prod));
    }
    }
    return {};
}

RingElement Ring::mul_integer(const RingElement &a, const Integer &n) const
{
    if (d_->kind == RingKind::Integers)
        return RingElement(Integer(*a.as_integer() * n));
    return mul(a, from_integer(n));
}

RingElement Ring::pow(const RingElement &a, std::uint64_t e) const
{
    RingElement result = one();
    RingElement base_el = a;
    while (e) {
        if (e & 1)
            result = mul(result, base_el);
        e >>= 1;
        if (e)
            base_el = mul(base_el, base_el);
    }
    return result;
}

bool Ring::is_zero(const RingElement &a) const
{
    if (auto x = a.as_integer())
        return *x == 0;
    if (auto x = a.as_rational())
        return *x == 0;
    if (auto x = a.as_sparse())
        return x->empty();
    auto bs = base();
    for (const auto &c : *a.as_dense())
        if (!bs.is_zero(c))
            return false;
    return true;
}

bool Ring::is_one(const RingElement &a) const
{
    return a == one();
}

namespace
{

// Solve a*y = 1 in base[v]/(f) over a base field by elimination on the
// multiplication-by-a matrix; returns nullopt when a is not a unit.
std::optional<RingElement> quotient_inverse_over_field(const Ring &r, const RingElement &a)
{
    auto bs = r.base();
    const auto d = r.quotient_degree();
    // columns: a * v^j
    std::vector<Dense> cols;
    auto vj = r.one();
    const auto v = r.generator(std::size_t{0});
    for (std::size_t j = 0; j < d; ++j) {
        cols.push_back(r.coefficients(r.mul(a, vj)));
        vj = r.mul(vj, v);
    }
    // augmented rows
    std::vector<Dense> m(d, Dense(d + 1, bs.zero()));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j)
            m[i][j] = cols[j][i];
        m[i][d] = i == 0 ? bs.one() : bs.zero();
    }
    for (std::size_t c = 0; c < d; ++c) {
        std::size_t piv = c;
        while (piv < d && bs.is_zero(m[piv][c]))
            ++piv;
        if (piv == d)
            return std::nullopt;
        std::swap(m[c], m[piv]);
        auto inv = bs.inverse(m[c][c]);
        for (auto &x : m[c])
            x = bs.mul(x, inv);
        for (std::size_t i = 0; i < d; ++i) {
            if (i == c || bs.is_zero(m[i][c]))
                continue;
            auto f = m[i][c];
            for (std::size_t j = 0; j <= d; ++j)
                m[i][j] = bs.sub(m[i][j], bs.mul(f, m[c][j]));
        }
    }
    Dense y(d);
    for (std::size_t i = 0; i < d; ++i)
        y[i] = m[i][d];
    return RingElement(std::move(y));
}

bool modulus_is_pure_power(const Ring &r)
{
    const auto &f = r.quotient_modulus();
    auto bs = r.base();
    for (std::size_t i = 0; i + 1 < f.size(); ++i)
        if (!bs.is_zero(f[i]))
            return false;
    return true;
}

} // namespace

bool Ring::is_unit(const RingElement &a) const
{
    switch (d_->kind) {
    case RingKind::Integers: return abs(*a.as_integer()) == 1;
    case RingKind::Rationals: return *a.as_rational() != 0;
    case RingKind::IntegersMod: {
        Integer g;
        mpz_gcd(g.get_mpz_t(), a.as_integer()->get_mpz_t(), d_->modulus.get_mpz_t());
        return g == 1;
    }
    case RingKind::PolynomialExtension: {
        // units of R[x] over the supported coefficient rings are the constant units
        const auto &t = *a.as_sparse();
        return t.size() == 1 && t[0].mono.is_one() && base().is_unit(t[0].coeff);
    }
    case RingKind::MonicQuotient: {
        auto bs = base();
        if (modulus_is_pure_power(*this))
            return bs.is_unit((*a.as_dense())[0]);
        if (bs.is_field())
            return quotient_inverse_over_field(*this, a).has_value();
        fail(ErrorKind::UnsupportedRing, "unit test not supported in " + name());
    }
    }
    return false;
}

RingElement Ring::inverse(const RingElement &a) const
{
    if (!is_unit(a))
        fail(ErrorKind::InvalidArgument, format(a) + " is not a unit in " + name());
    switch (d_->kind) {
    case RingKind::Integers: return a;
    case RingKind::Rationals: return RingElement(Rational(1 / *a.as_rational()));
    case RingKind::IntegersMod: {
        Integer r;
        mpz_invert(r.get_mpz_t(), a.as_integer()->get_mpz_t(), d_->modulus.get_mpz_t());
        return RingElement(std::move(r));
    }
    case RingKind::PolynomialExtension: {
        const auto &t = *a.as_sparse();
        return RingElement(Sparse{{t[0].mono, base().inverse(t[0].coeff)}});
    }
    case RingKind::MonicQuotient: {
        auto bs = base();
        if (bs.is_field() && !modulus_is_pure_power(*this))
            return *quotient_inverse_over_field(*this, a);
        // power series inversion modulo v^d
        const auto &x = *a.as_dense();
        const auto d = x.size();
        Dense y(d, bs.zero());
        const auto inv0 = bs.inverse(x[0]);
        y[0] = inv0;
        for (std::size_t k = 1; k < d; ++k) {
            auto s = bs.zero();
            for (std::size_t i = 1; i <= k; ++i)
                s = bs.add(s, bs.mul(x[i], y[k - i]));
            y[k] = bs.neg(bs.mul(inv0, s));
        }
        return RingElement(std::move(y));
    }
    }
    return {};
}

bool Ring::is_integer_unit(const Integer &n) const
{
    switch (d_->kind) {
    case RingKind::Integers: return abs(n) == 1;
    case RingKind::Rationals: return n != 0;
    case RingKind::IntegersMod: {
        Integer g;
        mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d_->modulus.get_mpz_t());
        return g == 1;
    }
    default: return base().is_integer_unit(n);
    }
}

RingElement Ring::div_integer(const RingElement &a, const Integer &n) const
{
    if (!is_integer_unit(n))
        throw Error(ErrorKind::NonInvertibleInteger,
                    "division by " + n.get_str() + " is not permitted in " + name(), {{"divisor", n.get_str()}});
    switch (d_->kind) {
    case RingKind::Integers: return RingElement(Integer(*a.as_integer() * n));
    case RingKind::Rationals: return RingElement(Rational(*a.as_rational() / Rational(n)));
    case RingKind::IntegersMod: return mul(a, inverse(from_integer(n)));
    case RingKind::PolynomialExtension: {
        auto bs = base();
        Sparse out = *a.as_sparse();
        for (auto &t : out)
            t.coeff = bs.div_integer(t.coeff, n);
        return RingElement(std::move(out));
    }
    case RingKind::MonicQuotient: {
        auto bs = base();
        Dense out = *a.as_dense();
        for (auto &c : out)
            c = bs.div_integer(c, n);
        return RingElement(std::move(out));
    }
    }
    return {};
}

const RingElement::Sparse &Ring::terms(const RingElement &a) const
{
    if (d_->kind != RingKind::PolynomialExtension)
        fail(ErrorKind::UnsupportedRing, "terms() requires a polynomial ring");
    return *a.as_sparse();
}

RingElement Ring::from_terms(std::vector<PolyTerm> in) const
{
    if (d_->kind != RingKind::PolynomialExtension)
        fail(ErrorKind::UnsupportedRing, "from_terms() requires a polynomial ring");
    auto bs = base();
    std::map<Monomial, RingElement, GrlexLess> acc;
    for (auto &t : in) {
        if (t.mono.size() != d_->vars.size())
            fail(ErrorKind::MismatchedContext, "monomial arity does not match ring variables");
        auto it = acc.find(t.mono);
        if (it == acc.end())
            acc.emplace(t.mono, t.coeff);
        else
            it->second = bs.add(it->second, t.coeff);
    }
    Sparse out;
    for (auto &[m, c] : acc)
        if (!bs.is_zero(c))
            out.push_back({m, c});
    return RingElement(std::move(out));
}

const RingElement::Dense &Ring::coefficients(const RingElement &a) const
{
    if (d_->kind != RingKind::MonicQuotient)
        fail(ErrorKind::UnsupportedRing, "coefficients() requires a monic quotient");
    return *a.as_dense();
}

RingElement Ring::constant_term(const RingElement &a) const
{
    if (d_->kind == RingKind::MonicQuotient)
        return (*a.as_dense())[0];
    if (d_->kind == RingKind::PolynomialExtension) {
        const auto &t = *a.as_sparse();
        if (!t.empty() && t[0].mono.is_one())
            return t[0].coeff;
        return base().zero();
    }
    return a;
}

std::optional<Integer> Ring::cardinality() const
{
    if (d_->kind == RingKind::IntegersMod)
        return d_->modulus;
    if (d_->kind == RingKind::MonicQuotient) {
        auto b = base().cardinality();
        if (!b)
            return std::nullopt;
        Integer c;
        mpz_pow_ui(c.get_mpz_t(), b->get_mpz_t(), quotient_degree());
        return c;
    }
    return std::nullopt;
}

std::vector<RingElement> Ring::elements() const
{
    auto card = cardinality();
    if (!card)
        fail(ErrorKind::RingNotFinite, "ring " + name() + " is not finite");
    if (*card > 10'000'000)
        fail(ErrorKind::InvalidArgument, "ring " + name() + " is too large to enumerate");
    std::vector<RingElement> out;
    if (d_->kind == RingKind::IntegersMod) {
        for (Integer i = 0; i < d_->modulus; ++i)
            out.emplace_back(i);
        return out;
    }
    auto bs = base();
    const auto be = bs.elements();
    const auto d = quotient_degree();
    std::vector<std::size_t> idx(d, 0);
    while (true) {
        Dense v(d);
        for (std::size_t i = 0; i < d; ++i)
            v[i] = be[idx[i]];
        out.emplace_back(std::move(v));
        std::size_t k = 0;
        while (k < d && ++idx[k] == be.size())
            idx[k++] = 0;
        if (k == d)
            break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// text

namespace
{

bool atomic_text(const std::string &s)
{
    return s.find(' ') == std::string::npos;
}

std::string join_terms(const std::vector<std::pair<std::string, std::string>> &terms)
{
    // terms: (coefficient text, monomial text or "1")
    if (terms.empty())
        return "0";
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto &[c, m] = terms[i];
        std::string t;
        if (m == "1")
            t = atomic_text(c) ? c : "(" + c + ")";
        else if (c == "1")
            t = m;
        else if (c == "-1")
            t = "-" + m;
        else
            t = (atomic_text(c) ? c : "(" + c + ")") + "*" + m;
        if (i == 0)
            out = t;
        else if (t[0] == '-')
            out += " - " + t.substr(1);
        else
            out += " + " + t;
    }
    return out;
}

} // namespace

std::string format_linear_combination(const std::vector<std::pair<std::string, std::string>> &parts)
{
    return join_terms(parts);
}

std::string format_terms(const Ring &coeffs, const std::vector<PolyTerm> &terms,
                         const std::vector<std::string> &names)
{
    std::vector<std::pair<std::string, std::string>> parts;
    for (const auto &t : terms)
        parts.emplace_back(coeffs.format(t.coeff), t.mono.format(names));
    return join_terms(parts);
}

std::string Ring::format(const RingElement &a) const
{
    switch (d_->kind) {
    case RingKind::Integers:
    case RingKind::IntegersMod: return a.as_integer()->get_str();
    case RingKind::Rationals: return a.as_rational()->get_str();
    case RingKind::PolynomialExtension: {
        auto bs = base();
        std::vector<std::pair<std::string, std::string>> parts;
        const auto &t = *a.as_sparse();
        for (auto it = t.rbegin(); it != t.rend(); ++it)
            parts.emplace_back(bs.format(it->coeff), it->mono.format(d_->vars));
        return join_terms(parts);
    }
    case RingKind::MonicQuotient: {
        auto bs = base();
        std::vector<std::pair<std::string, std::string>> parts;
        const auto &c = *a.as_dense();
        for (std::size_t i = c.size(); i-- > 0;)
            if (!bs.is_zero(c[i]))
                parts.emplace_back(bs.format(c[i]), Monomial{static_cast<std::uint32_t>(i)}.format(d_->vars));
        return join_terms(parts);
    }
    }
    return "?";
}

std::string Ring::serialize(const RingElement &a) const
{
    if (d_->kind == RingKind::IntegersMod)
        return a.as_integer()->get_str() + " mod " + d_->modulus.get_str();
    return format(a);
}

namespace
{

class ElementParser
{
public:
    ElementParser(const Ring &ring, std::string_view text) : ring_(ring), text_(text) {}

    RingElement parse()
    {
        auto v = expr();
        skip();
        if (pos_ != text_.size())
            error("unexpected trailing input");
        return v;
    }

private:
    [[noreturn]] void error(const std::string &msg) const
    {
        throw Error(ErrorKind::ParseError,
                    "cannot parse '" + std::string(text_) + "' in " + ring_.name() + ": " + msg);
    }
    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool accept(char c)
    {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    Integer number()
    {
        skip();
        auto start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (start == pos_)
            error("expected a number");
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }
    RingElement expr()
    {
        bool negate = false;
        if (accept('-'))
            negate = true;
        else
            accept('+');
        auto v = term();
        if (negate)
            v = ring_.neg(v);
        while (true) {
            if (accept('+'))
                v = ring_.add(v, term());
            else if (accept('-'))
                v = ring_.sub(v, term());
            else
                return v;
        }
    }
    RingElement term()
    {
        auto v = factor();
        while (true) {
            if (accept('*')) {
                v = ring_.mul(v, factor());
            } else if (accept('/')) {
                v = ring_.div_integer(v, number());
            } else {
                return v;
            }
        }
    }
    RingElement factor()
    {
        auto v = primary();
        if (accept('^')) {
            auto e = number();
            if (!e.fits_ulong_p())
                error("exponent too large");
            v = ring_.pow(v, e.get_ui());
        }
        return v;
    }
    RingElement primary()
    {
        skip();
        if (pos_ >= text_.size())
            error("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto v = expr();
            if (!accept(')'))
                error("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return ring_.from_integer(number());
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            auto start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            return ring_.generator(text_.substr(start, pos_ - start));
        }
        error(std::string("unexpected character '") + c + "'");
    }

    const Ring &ring_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

RingElement Ring::parse_element(std::string_view text) const
{
    static const std::regex residue(R"(^\s*(-?\d+)\s+mod\s+(\d+)\s*$)");
    std::match_results<std::string_view::const_iterator> m;
    if (std::regex_match(text.begin(), text.end(), m, residue)) {
        Integer r(m[1].str()), mod(m[2].str());
        if (d_->kind != RingKind::IntegersMod || mod != d_->modulus)
            throw Error(ErrorKind::ParseError,
                        "residue '" + std::string(text) + "' does not belong to " + name());
        return from_integer(r);
    }
    return ElementParser(*this, text).parse();
}

nlohmann::json Ring::to_json() const
{
    nlohmann::json j;
    switch (d_->kind) {
    case RingKind::Integers: j["kind"] = "Integers"; break;
    case RingKind::Rationals: j["kind"] = "Rationals"; break;
    case RingKind::IntegersMod:
        j["kind"] = "IntegersMod";
        j["m"] = d_->modulus.get_str();
        break;
    case RingKind::PolynomialExtension:
        j["kind"] = "PolynomialExtension";
        j["base"] = base().to_json();
        j["vars"] = d_->vars;
        break;
    case RingKind::MonicQuotient: {
        j["kind"] = "MonicQuotient";
        j["base"] = base().to_json();
        j["var"] = d_->vars[0];
        auto mod = nlohmann::json::array();
        for (const auto &c : d_->monic)
            mod.push_back(base().serialize(c));
        j["modulus"] = mod;
        j["field"] = d_->field;
        if (!d_->label.empty())
            j["label"] = d_->label;
        break;
    }
    }
    return j;
}

Ring Ring::from_json(const nlohmann::json &j)
{
    if (j.is_string())
        return parse(j.get<std::string>());
    if (!j.is_object() || !j.contains("kind"))
        fail(ErrorKind::ParseError, "ring descriptor must be a string or an object with 'kind'");
    const auto kind = j.at("kind").get<std::string>();
    auto as_integer = [](const nlohmann::json &v) {
        return v.is_string() ? Integer(v.get<std::string>()) : Integer(v.get<long>());
    };
    if (kind == "Integers")
        return integers();
    if (kind == "Rationals")
        return rationals();
    if (kind == "IntegersMod")
        return integers_mod(as_integer(j.at("m")));
    if (kind == "PolynomialExtension")
        return polynomial(from_json(j.at("base")), j.at("vars").get<std::vector<std::string>>());
    if (kind == "MonicQuotient") {
        auto b = from_json(j.at("base"));
        std::vector<RingElement> mod;
        for (const auto &c : j.at("modulus"))
            mod.push_back(b.parse_element(c.get<std::string>()));
        auto r = monic_quotient(b, j.at("var").get<std::string>(), std::move(mod), j.value("field", false));
        if (j.contains("label")) {
            auto d = std::make_shared<Desc>(*r.d_);
            d->label = j.at("label").get<std::string>();
            return Ring(d);
        }
        return r;
    }
    fail(ErrorKind::ParseError, "unknown ring kind '" + kind + "'");
}

Ring Ring::parse(std::string_view text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    auto bad = [&](const std::string &why) -> Ring {
        throw Error(ErrorKind::ParseError, "cannot parse ring '" + std::string(text) + "': " + why);
    };
    if (s.rfind("poly:", 0) == 0) {
        auto rest = s.substr(5);
        auto colon = rest.rfind(':');
        if (colon == std::string::npos)
            return bad("expected poly:BASE:vars");
        std::vector<std::string> vars;
        std::string cur;
        for (char c : rest.substr(colon + 1)) {
            if (c == ',') {
                vars.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        vars.push_back(cur);
        return polynomial(parse(rest.substr(0, colon)), vars);
    }
    // atom
    std::size_t pos = 0;
    Ring r = integers();
    auto read_int = [&](std::size_t &p) {
        auto start = p;
        while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p])))
            ++p;
        if (start == p)
            bad("expected an integer");
        return Integer(s.substr(start, p - start));
    };
    if (s.rfind("Zmod:", 0) == 0) {
        pos = 5;
        r = integers_mod(read_int(pos));
    } else if (s.rfind("GF(", 0) == 0) {
        pos = 3;
        auto q = read_int(pos);
        if (pos >= s.size() || s[pos] != ')')
            return bad("expected ')'");
        ++pos;
        if (!q.fits_ulong_p())
            return bad("field too large");
        auto qv = q.get_ui();
        std::uint64_t p = 0;
        for (std::uint64_t d = 2; d <= qv; ++d)
            if (qv % d == 0) {
                p = d;
                break;
            }
        unsigned k = 0;
        auto t = qv;
        while (p && t % p == 0) {
            t /= p;
            ++k;
        }
        if (p == 0 || t != 1)
            return bad("GF(q) requires a prime power q");
        r = galois_field(p, k);
    } else if (s.rfind("Z/", 0) == 0) {
        pos = 2;
        r = integers_mod(read_int(pos));
    } else if (s.rfind("F", 0) == 0 && s.size() > 1 && std::isdigit(static_cast<unsigned char>(s[1]))) {
        pos = 1;
        auto p = read_int(pos);
        if (!p.fits_ulong_p() || !is_prime(p.get_ui()))
            return bad("F_p requires a prime");
        r = integers_mod(p);
    } else if (s.rfind("Z", 0) == 0) {
        pos = 1;
        r = integers();
    } else if (s.rfind("Q", 0) == 0) {
        pos = 1;
        r = rationals();
    } else {
        return bad("unknown base ring");
    }
    // suffixes
    while (pos < s.size()) {
        if (s[pos] != '[')
            return bad("unexpected '" + s.substr(pos) + "'");
        auto close = s.find(']', pos);
        if (close == std::string::npos)
            return bad("missing ']'");
        std::vector<std::string> vars;
        std::string cur;
        for (char c : s.substr(pos + 1, close - pos - 1)) {
            if (c == ',') {
                vars.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        vars.push_back(cur);
        pos = close + 1;
        if (pos < s.size() && s[pos] == '/') {
            // [v]/(v^e)
            if (vars.size() != 1)
                return bad("quotient needs exactly one variable");
            static const std::regex power(R"(^/\(([A-Za-z_][A-Za-z0-9_]*)\^(\d+)\))");
            std::smatch m;
            auto tail = s.substr(pos);
            if (!std::regex_search(tail, m, power) || m[1].str() != vars[0])
                return bad("expected /(" + vars[0] + "^e)");
            r = truncated(r, vars[0], static_cast<unsigned>(std::stoul(m[2].str())));
            pos += m[0].length();
        } else if (vars.size() == 1 && vars[0] == "eps") {
            r = truncated(r, "eps", 2);
        } else {
            r = polynomial(r, vars);
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// ring maps

RingMap RingMap::canonical(const Ring &source, const Ring &target)
{
    if (source == target)
        return RingMap(Mode::Identity, source, target);
    switch (source.kind()) {
    case RingKind::Integers: return RingMap(Mode::FromIntegers, source, target);
    case RingKind::Rationals:
        if (target.characteristic() == 0 && !target.is_integer_unit(2) )
            break; // Q -> Z-like targets are not ring maps
        return RingMap(Mode::FromRationals, source, target);
    case RingKind::IntegersMod: {
        auto c = target.characteristic();
        if (c != 0 && source.modulus() % c == 0)
            return RingMap(Mode::FromResidues, source, target);
        break;
    }
    case RingKind::PolynomialExtension: {
        std::vector<RingElement> images;
        try {
            for (const auto &v : source.variables())
                images.push_back(target.generator(v));
        } catch (const Error &) {
            break;
        }
        return evaluate(source, target, std::move(images));
    }
    case RingKind::MonicQuotient: {
        RingMap m(Mode::QuotientEvaluate, source, target);
        try {
            m.base_map_ = std::make_shared<RingMap>(canonical(source.base(), target));
            m.images_ = {target.generator(source.variables()[0])};
        } catch (const Error &) {
            break;
        }
        // the image of the variable must satisfy the modulus
        auto acc = target.zero();
        auto pw = target.one();
        for (const auto &c : source.quotient_modulus()) {
            acc = target.add(acc, target.mul((*m.base_map_)(c), pw));
            pw = target.mul(pw, m.images_[0]);
        }
        if (!target.is_zero(acc))
            break;
        return m;
    }
    }
    throw Error(ErrorKind::IllFormedRingMap, "no canonical ring map " + source.name() + " -> " + target.name());
}

RingMap RingMap::evaluate(const Ring &source, const Ring &target, std::vector<RingElement> images)
{
    if (source.kind() != RingKind::PolynomialExtension)
        throw Error(ErrorKind::IllFormedRingMap, "evaluation map needs a polynomial source ring");
    if (images.size() != source.variables().size())
        throw Error(ErrorKind::IllFormedRingMap, "expected one image per variable of " + source.name());
    RingMap m(Mode::Evaluate, source, target);
    m.base_map_ = std::make_shared<RingMap>(canonical(source.base(), target));
    m.images_ = std::move(images);
    return m;
}

RingMap RingMap::compose(const RingMap &first, const RingMap &second)
{
    if (!(first.target() == second.source()))
        throw Error(ErrorKind::IllFormedRingMap, "ring maps do not compose");
    RingMap m(Mode::Composite, first.source(), second.target());
    m.base_map_ = std::make_shared<RingMap>(first);
    m.then_ = std::make_shared<RingMap>(second);
    return m;
}

RingElement RingMap::operator()(const RingElement &a) const
{
    switch (mode_) {
    case Mode::Identity: return a;
    case Mode::FromIntegers:
    case Mode::FromResidues: return target_.from_integer(*a.as_integer());
    case Mode::FromRationals: {
        try {
            return target_.from_rational(*a.as_rational());
        } catch (const Error &e) {
            throw Error(ErrorKind::IllFormedRingMap,
                        "rational " + a.as_rational()->get_str() + " has no image in " + target_.name());
        }
    }
    case Mode::Evaluate: {
        auto result = target_.zero();
        const auto nv = images_.size();
        std::vector<std::vector<RingElement>> powers(nv);
        for (const auto &t : *a.as_sparse()) {
            auto term = (*base_map_)(t.coeff);
            for (std::size_t i = 0; i < nv; ++i) {
                const auto e = t.mono[i];
                if (e == 0)
                    continue;
                auto &pw = powers[i];
                if (pw.empty())
                    pw.push_back(target_.one());
                while (pw.size() <= e)
                    pw.push_back(target_.mul(pw.back(), images_[i]));
                term = target_.mul(term, pw[e]);
            }
            result = target_.add(result, term);
        }
        return result;
    }
    case Mode::QuotientEvaluate: {
        auto result = target_.zero();
        auto pw = target_.one();
        for (const auto &c : *a.as_dense()) {
            result = target_.add(result, target_.mul((*base_map_)(c), pw));
            pw = target_.mul(pw, images_[0]);
        }
        return result;
    }
    case Mode::Composite: return (*then_)((*base_map_)(a));
    }
    return a;
}

} // namespace cartier
