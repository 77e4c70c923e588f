#include <cartier/series.hpp>

#include <algorithm>
#include <map>

namespace cartier
{

TruncatedSeries::TruncatedSeries(Ring ring, std::vector<std::string> vars, std::uint32_t N)
    : ring_(std::move(ring)), vars_(std::move(vars)), N_(N)
{
}

TruncatedSeries TruncatedSeries::constant(const Ring &ring, std::vector<std::string> vars, std::uint32_t N,
                                          const RingElement &c)
{
    TruncatedSeries s(ring, std::move(vars), N);
    if (!ring.is_zero(c))
        s.terms_.push_back({Monomial(s.vars_.size()), c});
    return s;
}

TruncatedSeries TruncatedSeries::variable(const Ring &ring, std::vector<std::string> vars, std::uint32_t N,
                                          std::size_t index)
{
    TruncatedSeries s(ring, std::move(vars), N);
    if (index >= s.vars_.size())
        throw Error(ErrorKind::IndexOutOfRange, "series variable index out of range");
    if (N >= 1)
        s.terms_.push_back({Monomial::variable(s.vars_.size(), index), ring.one()});
    return s;
}

TruncatedSeries TruncatedSeries::from_terms(const Ring &ring, std::vector<std::string> vars, std::uint32_t N,
                                            std::vector<PolyTerm> terms)
{
    TruncatedSeries s(ring, std::move(vars), N);
    std::map<Monomial, RingElement, GrlexLess> acc;
    for (auto &t : terms) {
        if (t.mono.size() != s.vars_.size())
            throw Error(ErrorKind::MismatchedContext, "term arity does not match the series variables");
        if (t.mono.degree() > N)
            continue;
        auto it = acc.find(t.mono);
        if (it == acc.end())
            acc.emplace(std::move(t.mono), std::move(t.coeff));
        else
            it->second = ring.add(it->second, t.coeff);
    }
    for (auto &[m, c] : acc)
        if (!ring.is_zero(c))
            s.terms_.push_back({m, c});
    return s;
}

TruncatedSeries TruncatedSeries::univariate(const Ring &ring, std::string var, std::uint32_t N,
                                            const std::vector<RingElement> &coeffs)
{
    std::vector<PolyTerm> terms;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        terms.push_back({Monomial{static_cast<std::uint32_t>(i)}, coeffs[i]});
    return from_terms(ring, {std::move(var)}, N, std::move(terms));
}

bool TruncatedSeries::same_context(const TruncatedSeries &other) const
{
    return N_ == other.N_ && vars_ == other.vars_ && ring_ == other.ring_;
}

void TruncatedSeries::check_context(const TruncatedSeries &other) const
{
    if (!same_context(other))
        throw Error(ErrorKind::MismatchedContext,
                    "series contexts differ: " + ring_.name() + "/N=" + std::to_string(N_) + " vs " +
                        other.ring_.name() + "/N=" + std::to_string(other.N_));
}

RingElement TruncatedSeries::coefficient(const Monomial &m) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const PolyTerm &t, const Monomial &x) { return grlex_less(t.mono, x); });
    if (it != terms_.end() && it->mono == m)
        return it->coeff;
    return ring_.zero();
}

RingElement TruncatedSeries::constant_term() const
{
    if (!terms_.empty() && terms_.front().mono.is_one())
        return terms_.front().coeff;
    return ring_.zero();
}

std::uint32_t TruncatedSeries::order() const
{
    return terms_.empty() ? N_ + 1 : static_cast<std::uint32_t>(terms_.front().mono.degree());
}

namespace
{

std::vector<PolyTerm> merge(const Ring &ring, const std::vector<PolyTerm> &a, const std::vector<PolyTerm> &b,
                            bool subtract)
{
    std::vector<PolyTerm> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && grlex_less(a[i].mono, b[j].mono))) {
            out.push_back(a[i++]);
        } else if (i == a.size() || grlex_less(b[j].mono, a[i].mono)) {
            out.push_back({b[j].mono, subtract ? ring.neg(b[j].coeff) : b[j].coeff});
            ++j;
        } else {
            auto c = subtract ? ring.sub(a[i].coeff, b[j].coeff) : ring.add(a[i].coeff, b[j].coeff);
            if (!ring.is_zero(c))
                out.push_back({a[i].mono, std::move(c)});
            ++i;
            ++j;
        }
    }
    return out;
}

// Dense accumulation keyed by the mixed-radix index sum e_i (N+1)^i. Exponent
// sums never carry because every surviving product has degree <= N.
class Accumulator
{
public:
    Accumulator(const Ring &ring, std::size_t nvars, std::uint32_t N) : ring_(ring), nvars_(nvars), radix_(N + 1)
    {
        std::uint64_t size = 1;
        for (std::size_t i = 0; i < nvars && size <= kDenseLimit; ++i)
            size *= radix_;
        dense_ = size <= kDenseLimit;
        if (dense_) {
            slots_.resize(size);
            used_.assign(size, false);
        }
    }

    std::uint64_t index(const Monomial &m) const
    {
        std::uint64_t idx = 0;
        for (std::size_t i = nvars_; i-- > 0;)
            idx = idx * radix_ + m[i];
        return idx;
    }

    void add(const Monomial &m, std::uint64_t idx, RingElement c)
    {
        if (dense_) {
            if (!used_[idx]) {
                used_[idx] = true;
                touched_.push_back(idx);
                slots_[idx] = std::move(c);
            } else {
                slots_[idx] = ring_.add(slots_[idx], c);
            }
            return;
        }
        auto it = sparse_.find(m);
        if (it == sparse_.end())
            sparse_.emplace(m, std::move(c));
        else
            it->second = ring_.add(it->second, c);
    }

    std::vector<PolyTerm> take()
    {
        std::vector<PolyTerm> out;
        if (dense_) {
            out.reserve(touched_.size());
            for (auto idx : touched_) {
                if (ring_.is_zero(slots_[idx]))
                    continue;
                Monomial m(nvars_);
                auto t = idx;
                for (std::size_t i = 0; i < nvars_; ++i) {
                    m[i] = static_cast<std::uint32_t>(t % radix_);
                    t /= radix_;
                }
                out.push_back({std::move(m), std::move(slots_[idx])});
            }
            std::sort(out.begin(), out.end(), [](const PolyTerm &a, const PolyTerm &b) {
                return grlex_less(a.mono, b.mono);
            });
        } else {
            for (auto &[m, c] : sparse_)
                if (!ring_.is_zero(c))
                    out.push_back({m, std::move(c)});
        }
        return out;
    }

    bool dense() const
    {
        return dense_;
    }

private:
    static constexpr std::uint64_t kDenseLimit = std::uint64_t(1) << 22;
    const Ring &ring_;
    std::size_t nvars_;
    std::uint64_t radix_;
    bool dense_ = false;
    std::vector<RingElement> slots_;
    std::vector<bool> used_;
    std::vector<std::uint64_t> touched_;
    std::map<Monomial, RingElement, GrlexLess> sparse_;
};

} // namespace

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries &other) const
{
    check_context(other);
    TruncatedSeries s(ring_, vars_, N_);
    s.terms_ = merge(ring_, terms_, other.terms_, false);
    return s;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries &other) const
{
    check_context(other);
    TruncatedSeries s(ring_, vars_, N_);
    s.terms_ = merge(ring_, terms_, other.terms_, true);
    return s;
}

TruncatedSeries TruncatedSeries::operator-() const
{
    TruncatedSeries s(*this);
    for (auto &t : s.terms_)
        t.coeff = ring_.neg(t.coeff);
    return s;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries &other) const
{
    check_context(other);
    TruncatedSeries s(ring_, vars_, N_);
    if (terms_.empty() || other.terms_.empty())
        return s;
    Accumulator acc(ring_, vars_.size(), N_);
    std::vector<std::uint64_t> other_idx;
    other_idx.reserve(other.terms_.size());
    for (const auto &t : other.terms_)
        other_idx.push_back(acc.dense() ? acc.index(t.mono) : 0);
    for (const auto &a : terms_) {
        const auto da = a.mono.degree();
        if (da > N_)
            break;
        const auto ia = acc.dense() ? acc.index(a.mono) : 0;
        for (std::size_t j = 0; j < other.terms_.size(); ++j) {
            const auto &b = other.terms_[j];
            if (da + b.mono.degree() > N_)
                break; // terms are degree-sorted
            auto c = ring_.mul(a.coeff, b.coeff);
            if (acc.dense())
                acc.add(Monomial(), ia + other_idx[j], std::move(c));
            else
                acc.add(a.mono * b.mono, 0, std::move(c));
        }
    }
    s.terms_ = acc.take();
    return s;
}

TruncatedSeries TruncatedSeries::scale(const RingElement &c) const
{
    TruncatedSeries s(ring_, vars_, N_);
    for (const auto &t : terms_) {
        auto v = ring_.mul(t.coeff, c);
        if (!ring_.is_zero(v))
            s.terms_.push_back({t.mono, std::move(v)});
    }
    return s;
}

TruncatedSeries TruncatedSeries::pow(std::uint64_t e) const
{
    auto result = constant(ring_, vars_, N_, ring_.one());
    auto b = *this;
    while (e) {
        if (e & 1)
            result = result * b;
        e >>= 1;
        if (e) {
            if (b.order() > N_)
                break;
            b = b * b;
        }
    }
    return result;
}

TruncatedSeries TruncatedSeries::div_integer(const Integer &n) const
{
    TruncatedSeries s(*this);
    for (auto &t : s.terms_)
        t.coeff = ring_.div_integer(t.coeff, n);
    return s;
}

TruncatedSeries TruncatedSeries::truncated(std::uint32_t N) const
{
    if (N > N_)
        throw Error(ErrorKind::MismatchedContext, "cannot raise the truncation of a series");
    TruncatedSeries s(ring_, vars_, N);
    for (const auto &t : terms_) {
        if (t.mono.degree() > N)
            break;
        s.terms_.push_back(t);
    }
    return s;
}

TruncatedSeries TruncatedSeries::embed(std::vector<std::string> vars, std::span<const std::size_t> map) const
{
    if (map.size() != vars_.size())
        throw Error(ErrorKind::MismatchedContext, "embedding map must cover every variable");
    std::vector<PolyTerm> out;
    out.reserve(terms_.size());
    for (const auto &t : terms_) {
        Monomial m(vars.size());
        for (std::size_t i = 0; i < map.size(); ++i)
            m[map[i]] += t.mono[i];
        out.push_back({std::move(m), t.coeff});
    }
    return from_terms(ring_, std::move(vars), N_, std::move(out));
}

TruncatedSeries TruncatedSeries::map_coefficients(const RingMap &phi) const
{
    if (!(phi.source() == ring_))
        throw Error(ErrorKind::IllFormedRingMap, "ring map source " + phi.source().name() +
                                                     " does not match series ring " + ring_.name());
    std::vector<PolyTerm> out;
    out.reserve(terms_.size());
    for (const auto &t : terms_)
        out.push_back({t.mono, phi(t.coeff)});
    return from_terms(phi.target(), vars_, N_, std::move(out));
}

TruncatedSeries TruncatedSeries::derivative(std::size_t i) const
{
    std::vector<PolyTerm> out;
    for (const auto &t : terms_) {
        if (t.mono[i] == 0)
            continue;
        Monomial m = t.mono;
        const auto e = m[i]--;
        out.push_back({std::move(m), ring_.mul_integer(t.coeff, Integer(e))});
    }
    return from_terms(ring_, vars_, N_, std::move(out));
}

TruncatedSeries TruncatedSeries::evaluate_at(std::size_t i, const RingElement &value) const
{
    std::vector<PolyTerm> out;
    for (const auto &t : terms_) {
        Monomial m = t.mono;
        const auto e = m[i];
        m[i] = 0;
        out.push_back({std::move(m), ring_.mul(t.coeff, ring_.pow(value, e))});
    }
    return from_terms(ring_, vars_, N_, std::move(out));
}

bool TruncatedSeries::operator==(const TruncatedSeries &other) const
{
    return same_context(other) && terms_ == other.terms_;
}

std::string TruncatedSeries::format() const
{
    return format_terms(ring_, terms_, vars_);
}

nlohmann::json TruncatedSeries::to_json() const
{
    nlohmann::json j;
    j["ring"] = ring_.to_json();
    j["vars"] = vars_;
    j["N"] = N_;
    auto arr = nlohmann::json::array();
    for (const auto &t : terms_)
        arr.push_back({t.mono.exponents(), ring_.serialize(t.coeff)});
    j["terms"] = arr;
    return j;
}

TruncatedSeries TruncatedSeries::from_json(const nlohmann::json &j)
{
    try {
        const auto ring = j.contains("ring") ? Ring::from_json(j.at("ring")) : Ring::integers();
        auto vars = j.at("vars").get<std::vector<std::string>>();
        const auto N = j.at("N").get<std::uint32_t>();
        std::vector<PolyTerm> terms;
        for (const auto &t : j.at("terms")) {
            Monomial m(t.at(0).get<std::vector<std::uint32_t>>());
            if (m.size() != vars.size())
                throw Error(ErrorKind::ParseError, "exponent vector arity does not match vars");
            const auto &c = t.at(1);
            auto coeff = c.is_string() ? ring.parse_element(c.get<std::string>()) : ring.from_int(c.get<long>());
            terms.push_back({std::move(m), std::move(coeff)});
        }
        return from_terms(ring, std::move(vars), N, std::move(terms));
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorKind::ParseError, std::string("malformed series JSON: ") + e.what());
    }
}

// ---------------------------------------------------------------------------

TruncatedSeries series_compose(const TruncatedSeries &f, std::span<const TruncatedSeries> args)
{
    const auto k = f.variables().size();
    if (args.size() != k || k == 0)
        throw Error(ErrorKind::MismatchedContext, "composition arity mismatch: f has " + std::to_string(k) +
                                                      " variables, got " + std::to_string(args.size()) +
                                                      " arguments");
    const auto &ctx = args[0];
    for (const auto &a : args) {
        if (!ctx.same_context(a))
            throw Error(ErrorKind::MismatchedContext, "arguments differ in context");
        if (!a.ring().is_zero(a.constant_term()))
            throw Error(ErrorKind::NonNilpotentSubstitution,
                        "substituted series has nonzero constant term: " + a.format());
    }
    if (!(f.ring() == ctx.ring()))
        throw Error(ErrorKind::MismatchedContext, "outer series ring differs from argument ring");
    const auto N = ctx.truncation();
    if (f.truncation() < N)
        throw Error(ErrorKind::MismatchedContext, "outer series is truncated below the argument truncation");
    const auto &ring = ctx.ring();
    const auto &vars = ctx.variables();

    // powers[j][e] = args[j]^e, filled on demand
    std::vector<std::vector<TruncatedSeries>> powers(k);
    auto power = [&](std::size_t j, std::uint32_t e) -> const TruncatedSeries & {
        auto &pw = powers[j];
        if (pw.empty())
            pw.push_back(TruncatedSeries::constant(ring, vars, N, ring.one()));
        while (pw.size() <= e)
            pw.push_back(pw.back() * args[j]);
        return pw[e];
    };

    // group by exponent of the first variable, Horner in args[0]
    std::map<std::uint32_t, std::vector<const PolyTerm *>> by_first;
    for (const auto &t : f.terms())
        if (t.mono.degree() <= N)
            by_first[t.mono[0]].push_back(&t);
    if (by_first.empty())
        return TruncatedSeries::zero(ring, vars, N);

    const auto top = by_first.rbegin()->first;
    auto result = TruncatedSeries::zero(ring, vars, N);
    for (std::uint32_t e0 = top + 1; e0-- > 0;) {
        if (e0 != top)
            result = result * args[0];
        auto it = by_first.find(e0);
        if (it == by_first.end())
            continue;
        for (const auto *t : it->second) {
            auto term = TruncatedSeries::constant(ring, vars, N, t->coeff);
            bool first = true;
            for (std::size_t j = 1; j < k; ++j) {
                if (t->mono[j] == 0)
                    continue;
                if (first) {
                    term = power(j, t->mono[j]).scale(t->coeff);
                    first = false;
                } else {
                    term = term * power(j, t->mono[j]);
                }
            }
            result = result + term;
        }
    }
    return result;
}

TruncatedSeries series_reversion(const TruncatedSeries &f)
{
    if (f.variables().size() != 1)
        throw Error(ErrorKind::MismatchedContext, "reversion needs a univariate series");
    const auto &ring = f.ring();
    const auto N = f.truncation();
    if (!ring.is_zero(f.constant_term()))
        throw Error(ErrorKind::NonNilpotentSubstitution, "reversion needs f(0) = 0");
    const auto a1 = f.coefficient(Monomial{1});
    if (!ring.is_unit(a1))
        throw Error(ErrorKind::NonUnitLinearTerm,
                    "linear coefficient " + ring.format(a1) + " is not a unit in " + ring.name());
    const auto inv = ring.inverse(a1);
    const auto &vars = f.variables();
    auto g = TruncatedSeries::variable(ring, vars, N, 0).scale(inv);
    for (std::uint32_t n = 2; n <= N; ++n) {
        const TruncatedSeries arg[] = {g};
        const auto c = series_compose(f, arg).coefficient(Monomial{n});
        if (ring.is_zero(c))
            continue;
        g = g - TruncatedSeries::from_terms(ring, vars, N, {{Monomial{n}, ring.mul(c, inv)}});
    }
    return g;
}

} // namespace cartier
