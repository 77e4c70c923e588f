#include <cartier/intpoly.hpp>

#include <algorithm>
#include <span>
#include <unordered_map>

namespace cartier
{

namespace
{

using Key = IntPoly::Key;
using TermVec = std::vector<std::pair<Key, Integer>>;

struct KeyHash {
    std::size_t operator()(Key k) const noexcept
    {
        auto lo = static_cast<std::uint64_t>(k), hi = static_cast<std::uint64_t>(k >> 64);
        std::uint64_t h = lo * 0x9E3779B97F4A7C15ULL ^ (hi + 0x632BE59BD9B4E019ULL + (lo >> 29));
        return static_cast<std::size_t>(h ^ (h >> 31));
    }
};

// Product of blocks small enough for one hash table.
constexpr std::size_t kBlockWork = std::size_t(1) << 21;

TermVec merge_add(const TermVec &a, const TermVec &b, bool negate_b)
{
    TermVec out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, negate_b ? Integer(-b[j].second) : b[j].second);
            ++j;
        } else {
            Integer c = negate_b ? Integer(a[i].second - b[j].second) : Integer(a[i].second + b[j].second);
            if (c != 0)
                out.emplace_back(a[i].first, std::move(c));
            ++i;
            ++j;
        }
    }
    return out;
}

TermVec multiply_spans(std::span<const std::pair<Key, Integer>> a, std::span<const std::pair<Key, Integer>> b)
{
    if (a.size() < b.size())
        std::swap(a, b);
    if (b.empty())
        return {};
    if (a.size() > 1 && a.size() * b.size() > kBlockWork) {
        // divide and conquer on the longer operand keeps each hash table small
        const auto half = a.size() / 2;
        return merge_add(multiply_spans(a.first(half), b), multiply_spans(a.subspan(half), b), false);
    }
    std::unordered_map<Key, Integer, KeyHash> acc;
    acc.reserve(std::min(a.size() * b.size(), kBlockWork));
    for (const auto &[ka, ca] : a)
        for (const auto &[kb, cb] : b) {
            auto &slot = acc[ka + kb];
            mpz_addmul(slot.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
        }
    TermVec out;
    out.reserve(acc.size());
    for (auto &[k, c] : acc)
        if (c != 0)
            out.emplace_back(k, std::move(c));
    std::sort(out.begin(), out.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
    return out;
}

} // namespace

IntPoly IntPoly::from_sorted(TermVec terms)
{
    IntPoly p;
    p.terms_ = std::move(terms);
    return p;
}

IntPoly IntPoly::constant(const Integer &c)
{
    IntPoly p;
    if (c != 0)
        p.terms_.emplace_back(Key(0), c);
    return p;
}

IntPoly IntPoly::variable(unsigned slot, std::uint32_t power)
{
    IntPoly p;
    p.terms_.emplace_back(key_of(slot, power), Integer(1));
    return p;
}

Integer IntPoly::coefficient(Key k) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                               [](const auto &t, Key key) { return t.first < key; });
    return it != terms_.end() && it->first == k ? it->second : Integer(0);
}

IntPoly IntPoly::operator+(const IntPoly &o) const
{
    return from_sorted(merge_add(terms_, o.terms_, false));
}

IntPoly IntPoly::operator-(const IntPoly &o) const
{
    return from_sorted(merge_add(terms_, o.terms_, true));
}

IntPoly IntPoly::operator-() const
{
    auto out = terms_;
    for (auto &t : out)
        t.second = -t.second;
    return from_sorted(std::move(out));
}

IntPoly IntPoly::operator*(const IntPoly &o) const
{
    return from_sorted(multiply_spans(terms_, o.terms_));
}

IntPoly IntPoly::scale(const Integer &c) const
{
    if (c == 0)
        return {};
    auto out = terms_;
    for (auto &t : out)
        t.second *= c;
    return from_sorted(std::move(out));
}

IntPoly IntPoly::pow(std::uint64_t e) const
{
    IntPoly result = constant(1), base = *this;
    while (e) {
        if (e & 1)
            result = result * base;
        e >>= 1;
        if (e)
            base = base * base;
    }
    return result;
}

bool IntPoly::divide_exact(const Integer &d)
{
    for (const auto &t : terms_)
        if (!mpz_divisible_p(t.second.get_mpz_t(), d.get_mpz_t()))
            return false;
    for (auto &t : terms_)
        mpz_divexact(t.second.get_mpz_t(), t.second.get_mpz_t(), d.get_mpz_t());
    return true;
}

RingElement IntPoly::evaluate(const Ring &ring, const std::vector<RingElement> &slots) const
{
    std::vector<std::unordered_map<std::uint32_t, RingElement>> powers(kSlots);
    auto power = [&](unsigned s, std::uint32_t e) -> const RingElement & {
        auto it = powers[s].find(e);
        if (it == powers[s].end())
            it = powers[s].emplace(e, ring.pow(slots.at(s), e)).first;
        return it->second;
    };
    auto acc = ring.zero();
    for (const auto &[k, c] : terms_) {
        auto term = ring.from_integer(c);
        for (unsigned s = 0; s < kSlots && !ring.is_zero(term); ++s)
            if (auto e = exponent(k, s))
                term = ring.mul(term, power(s, e));
        acc = ring.add(acc, term);
    }
    return acc;
}

std::vector<PolyTerm> IntPoly::to_terms(const std::vector<unsigned> &slot_of) const
{
    std::vector<PolyTerm> out;
    out.reserve(terms_.size());
    for (const auto &[k, c] : terms_) {
        Monomial m(slot_of.size());
        for (std::size_t v = 0; v < slot_of.size(); ++v)
            m[v] = exponent(k, slot_of[v]);
        out.push_back({std::move(m), RingElement(c)});
    }
    std::sort(out.begin(), out.end(), [](const PolyTerm &a, const PolyTerm &b) { return grlex_less(a.mono, b.mono); });
    return out;
}

std::string IntPoly::format(const std::vector<std::string> &names, const std::vector<unsigned> &slot_of) const
{
    return format_terms(Ring::integers(), to_terms(slot_of), names);
}

} // namespace cartier
