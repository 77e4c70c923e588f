#include <cartier/witt.hpp>

#include <map>
#include <memory>
#include <mutex>

#include <cartier/errors.hpp>

namespace cartier
{

namespace
{

enum class PolyKind { Sum, Product, Negation, Frobenius };

const char *kind_name(PolyKind k)
{
    switch (k) {
    case PolyKind::Sum: return "sum";
    case PolyKind::Product: return "product";
    case PolyKind::Negation: return "negation";
    case PolyKind::Frobenius: return "Frobenius";
    }
    return "";
}

Integer ipow(std::uint64_t p, unsigned e)
{
    Integer out;
    mpz_ui_pow_ui(out.get_mpz_t(), p, e);
    return out;
}

IntPoly ghost_target(PolyKind kind, std::uint64_t p, unsigned i)
{
    switch (kind) {
    case PolyKind::Sum: return witt_polynomial(p, i) + witt_polynomial(p, i, kWittYSlot);
    case PolyKind::Product: return witt_polynomial(p, i) * witt_polynomial(p, i, kWittYSlot);
    case PolyKind::Negation: return -witt_polynomial(p, i);
    case PolyKind::Frobenius: return witt_polynomial(p, i + 1);
    }
    return {};
}

// Ghost inversion state for one (kind, p): Q_0..Q_{k-1} and, for each j,
// Q_j^{p^{k-1-j}}, ready to be raised once more for the next index.
struct Inversion {
    std::vector<IntPoly> polys;
    std::vector<IntPoly> powers;

    void extend(PolyKind kind, std::uint64_t p, unsigned count)
    {
        while (polys.size() < count) {
            const auto i = static_cast<unsigned>(polys.size());
            auto rest = ghost_target(kind, p, i);
            for (unsigned j = 0; j < i; ++j) {
                powers[j] = powers[j].pow(p);
                rest = rest - powers[j].scale(ipow(p, j));
            }
            if (!rest.divide_exact(ipow(p, i)))
                throw Error(ErrorKind::IntegralityFailure,
                            std::string("Witt ") + kind_name(kind) + " polynomial " + std::to_string(i) +
                                " is not integral for p = " + std::to_string(p),
                            {{"p", p}, {"index", i}, {"kind", kind_name(kind)}});
            polys.push_back(rest);
            powers.push_back(std::move(rest));
        }
    }
};

struct Cache {
    std::mutex mu;
    std::map<std::pair<PolyKind, std::uint64_t>, Inversion> state;
    std::map<std::tuple<PolyKind, std::uint64_t, unsigned>, std::unique_ptr<const std::vector<IntPoly>>> done;
};

Cache &cache()
{
    static Cache c;
    return c;
}

const std::vector<IntPoly> &cached_polys(PolyKind kind, std::uint64_t p, unsigned count, unsigned n)
{
    check_witt_size(p, n);
    auto &c = cache();
    std::lock_guard lock(c.mu);
    auto key = std::make_tuple(kind, p, n);
    auto it = c.done.find(key);
    if (it != c.done.end())
        return *it->second;
    auto &st = c.state[{kind, p}];
    st.extend(kind, p, count);
    auto polys = std::make_unique<const std::vector<IntPoly>>(st.polys.begin(), st.polys.begin() + count);
    return *c.done.emplace(key, std::move(polys)).first->second;
}

void check_same(const WittVector &a, const WittVector &b)
{
    if (!(a.context() == b.context()))
        throw Error(ErrorKind::MismatchedContext, "Witt vectors live in different contexts");
}

std::vector<RingElement> slots_of(const WittVector &a, const WittVector *b)
{
    const auto &r = a.context().ring;
    std::vector<RingElement> slots(IntPoly::kSlots, r.zero());
    for (unsigned i = 0; i < a.context().n; ++i) {
        slots[i] = a[i];
        if (b)
            slots[kWittYSlot + i] = (*b)[i];
    }
    return slots;
}

WittVector apply_polys(const std::vector<IntPoly> &polys, const WittContext &out, const std::vector<RingElement> &slots)
{
    std::vector<RingElement> comps;
    comps.reserve(polys.size());
    for (const auto &q : polys)
        comps.push_back(q.evaluate(out.ring, slots));
    return WittVector(out, std::move(comps));
}

bool has_characteristic(const Ring &r, std::uint64_t p)
{
    return r.characteristic() == Integer(static_cast<unsigned long>(p));
}

void require_finite_char_p(const WittContext &ctx)
{
    if (!ctx.ring.is_finite())
        throw Error(ErrorKind::RingNotFinite, ctx.ring.name() + " is not finite; enumeration needs a finite ring");
    if (!has_characteristic(ctx.ring, ctx.p))
        throw Error(ErrorKind::NotPrimeCharacteristic,
                    ctx.ring.name() + " does not have characteristic " + std::to_string(ctx.p));
}

// Cartesian product of per-component candidate lists, x_0 varying fastest.
std::vector<WittVector> product_of(const WittContext &ctx, const std::vector<std::vector<RingElement>> &choices)
{
    std::vector<WittVector> out;
    std::size_t total = 1;
    for (const auto &c : choices)
        total *= c.size();
    out.reserve(total);
    std::vector<std::size_t> idx(ctx.n, 0);
    for (std::size_t count = 0; count < total; ++count) {
        std::vector<RingElement> comps(ctx.n);
        for (unsigned i = 0; i < ctx.n; ++i)
            comps[i] = choices[i][idx[i]];
        out.emplace_back(ctx, std::move(comps));
        for (unsigned i = 0; i < ctx.n; ++i) {
            if (++idx[i] < choices[i].size())
                break;
            idx[i] = 0;
        }
    }
    return out;
}

} // namespace

void check_witt_size(std::uint64_t p, unsigned n)
{
    if (!is_prime(p))
        throw Error(ErrorKind::InvalidArgument, "p = " + std::to_string(p) + " is not prime");
    if (n < 1 || n > kWittMaxLength)
        throw Error(ErrorKind::InvalidArgument,
                    "Witt length must be between 1 and " + std::to_string(kWittMaxLength));
    std::uint64_t top = 1;
    for (unsigned i = 1; i < n; ++i) {
        top *= p;
        if (top > IntPoly::kMaxExponent)
            throw Error(ErrorKind::InvalidArgument, "p^(n-1) = " + std::to_string(p) + "^" + std::to_string(n - 1) +
                                                        " exceeds the supported exponent range");
    }
}

IntPoly witt_polynomial(std::uint64_t p, unsigned i, unsigned offset)
{
    if (i >= kWittMaxLength)
        throw Error(ErrorKind::IndexOutOfRange, "ghost component index " + std::to_string(i) + " out of range");
    IntPoly w;
    for (unsigned j = 0; j <= i; ++j) {
        auto e = ipow(p, i - j);
        if (e > IntPoly::kMaxExponent)
            throw Error(ErrorKind::IndexOutOfRange, "ghost exponent exceeds the supported range");
        w = w + IntPoly::variable(offset + j, static_cast<std::uint32_t>(e.get_ui())).scale(ipow(p, j));
    }
    return w;
}

const std::vector<IntPoly> &witt_sum_polys(std::uint64_t p, unsigned n)
{
    return cached_polys(PolyKind::Sum, p, n, n);
}

const std::vector<IntPoly> &witt_prod_polys(std::uint64_t p, unsigned n)
{
    return cached_polys(PolyKind::Product, p, n, n);
}

const std::vector<IntPoly> &witt_neg_polys(std::uint64_t p, unsigned n)
{
    return cached_polys(PolyKind::Negation, p, n, n);
}

const std::vector<IntPoly> &witt_frobenius_polys(std::uint64_t p, unsigned n)
{
    return cached_polys(PolyKind::Frobenius, p, n - 1, n);
}

std::vector<std::string> witt_variable_names(unsigned n, bool with_y)
{
    std::vector<std::string> names;
    for (unsigned i = 0; i < n; ++i)
        names.push_back("X_" + std::to_string(i));
    if (with_y)
        for (unsigned i = 0; i < n; ++i)
            names.push_back("Y_" + std::to_string(i));
    return names;
}

std::vector<unsigned> witt_slot_map(unsigned n, bool with_y)
{
    std::vector<unsigned> slots;
    for (unsigned i = 0; i < n; ++i)
        slots.push_back(i);
    if (with_y)
        for (unsigned i = 0; i < n; ++i)
            slots.push_back(kWittYSlot + i);
    return slots;
}

WittContext::WittContext(std::uint64_t p_, unsigned n_, Ring ring_) : p(p_), n(n_), ring(std::move(ring_))
{
    check_witt_size(p, n);
}

WittVector::WittVector(WittContext ctx, std::vector<RingElement> components)
    : ctx_(std::move(ctx)), comps_(std::move(components))
{
    if (comps_.size() != ctx_.n)
        throw Error(ErrorKind::MismatchedContext, "expected " + std::to_string(ctx_.n) + " Witt components, got " +
                                                      std::to_string(comps_.size()));
}

WittVector WittVector::zero(const WittContext &ctx)
{
    return WittVector(ctx, std::vector<RingElement>(ctx.n, ctx.ring.zero()));
}

WittVector WittVector::one(const WittContext &ctx)
{
    return teichmuller(ctx, ctx.ring.one());
}

WittVector WittVector::teichmuller(const WittContext &ctx, const RingElement &a)
{
    std::vector<RingElement> c(ctx.n, ctx.ring.zero());
    c[0] = a;
    return WittVector(ctx, std::move(c));
}

std::string WittVector::format() const
{
    std::string out = "(";
    for (std::size_t i = 0; i < comps_.size(); ++i) {
        if (i)
            out += ", ";
        out += ctx_.ring.format(comps_[i]);
    }
    return out + ")";
}

nlohmann::json WittVector::to_json() const
{
    auto comps = nlohmann::json::array();
    for (const auto &c : comps_)
        comps.push_back(ctx_.ring.serialize(c));
    return comps;
}

WittVector witt_add(const WittVector &a, const WittVector &b)
{
    check_same(a, b);
    const auto &ctx = a.context();
    return apply_polys(witt_sum_polys(ctx.p, ctx.n), ctx, slots_of(a, &b));
}

WittVector witt_neg(const WittVector &a)
{
    const auto &ctx = a.context();
    return apply_polys(witt_neg_polys(ctx.p, ctx.n), ctx, slots_of(a, nullptr));
}

WittVector witt_sub(const WittVector &a, const WittVector &b)
{
    return witt_add(a, witt_neg(b));
}

WittVector witt_mul(const WittVector &a, const WittVector &b)
{
    check_same(a, b);
    const auto &ctx = a.context();
    return apply_polys(witt_prod_polys(ctx.p, ctx.n), ctx, slots_of(a, &b));
}

WittVector witt_scalar(const WittVector &a, const Integer &n)
{
    auto result = WittVector::zero(a.context());
    auto base = n < 0 ? witt_neg(a) : a;
    Integer m = abs(n);
    while (m > 0) {
        if (mpz_odd_p(m.get_mpz_t()))
            result = witt_add(result, base);
        m >>= 1;
        if (m > 0)
            base = witt_add(base, base);
    }
    return result;
}

std::vector<RingElement> ghost_components(const WittVector &a)
{
    const auto &ctx = a.context();
    auto slots = slots_of(a, nullptr);
    std::vector<RingElement> out;
    for (unsigned i = 0; i < ctx.n; ++i)
        out.push_back(witt_polynomial(ctx.p, i).evaluate(ctx.ring, slots));
    return out;
}

WittVector frobenius(const WittVector &a)
{
    const auto &ctx = a.context();
    if (has_characteristic(ctx.ring, ctx.p)) {
        std::vector<RingElement> comps;
        for (const auto &c : a.components())
            comps.push_back(ctx.ring.pow(c, ctx.p));
        return WittVector(ctx, std::move(comps));
    }
    if (ctx.n < 2)
        throw Error(ErrorKind::InvalidArgument,
                    "outside characteristic p the Frobenius drops one component; length 1 leaves nothing");
    WittContext out(ctx.p, ctx.n - 1, ctx.ring);
    return apply_polys(witt_frobenius_polys(ctx.p, ctx.n), out, slots_of(a, nullptr));
}

WittVector verschiebung(const WittVector &a)
{
    const auto &ctx = a.context();
    std::vector<RingElement> comps{ctx.ring.zero()};
    for (unsigned i = 0; i + 1 < ctx.n; ++i)
        comps.push_back(a[i]);
    return WittVector(ctx, std::move(comps));
}

WittVector truncate(const WittVector &a, unsigned m)
{
    const auto &ctx = a.context();
    if (m < 1 || m > ctx.n)
        throw Error(ErrorKind::IndexOutOfRange, "cannot truncate length " + std::to_string(ctx.n) + " to " +
                                                    std::to_string(m));
    return WittVector(WittContext(ctx.p, m, ctx.ring),
                      std::vector<RingElement>(a.components().begin(), a.components().begin() + m));
}

std::vector<WittVector> fix_points(const WittContext &ctx)
{
    require_finite_char_p(ctx);
    // F is componentwise in characteristic p, so F(x) = x splits into x_i^p = x_i.
    std::vector<RingElement> roots;
    for (const auto &x : ctx.ring.elements())
        if (ctx.ring.pow(x, ctx.p) == x)
            roots.push_back(x);
    return product_of(ctx, std::vector<std::vector<RingElement>>(ctx.n, roots));
}

std::vector<WittVector> sekiguchi_suwa_kernel(const WittContext &ctx, const RingElement &t, ScalarAction action)
{
    require_finite_char_p(ctx);
    const auto &r = ctx.ring;
    const auto c = r.pow(t, ctx.p - 1);
    const auto elements = r.elements();
    // [c] * x = (c x_0, c^p x_1, c^{p^2} x_2, ...), so both actions are
    // componentwise conditions x_i^p = s_i x_i.
    std::vector<std::vector<RingElement>> choices(ctx.n);
    auto s = c;
    for (unsigned i = 0; i < ctx.n; ++i) {
        const auto &scalar = action == ScalarAction::Teichmuller ? s : c;
        for (const auto &x : elements)
            if (r.pow(x, ctx.p) == r.mul(scalar, x))
                choices[i].push_back(x);
        s = r.pow(s, ctx.p);
    }
    return product_of(ctx, choices);
}

Integer additive_order(const WittVector &a, std::uint64_t limit)
{
    auto zero = WittVector::zero(a.context());
    auto x = a;
    Integer order = 1;
    while (!(x == zero)) {
        if (order >= limit)
            throw Error(ErrorKind::InvalidArgument, "additive order exceeds " + std::to_string(limit));
        x = witt_add(x, a);
        ++order;
    }
    return order;
}

} // namespace cartier
