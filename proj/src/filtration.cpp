#include <cartier/filtration.hpp>

#include <algorithm>

#include <cartier/errors.hpp>

namespace cartier
{

namespace
{

// Representatives of gr^n = F^n / F^{n+1} and, per weight, a tracked span of
// (representatives, basis of F^{n+1}) used to read off gr coordinates.
struct GradedData {
    std::vector<std::vector<Vec>> reps;
    std::vector<Subspace> coords;

    // coordinates of v in F^n modulo F^{n+1}, in terms of reps[n]
    Vec gr_coordinates(std::size_t n, const Vec &v) const
    {
        auto c = coords[n].coordinates(v);
        if (!c)
            throw Error(ErrorKind::NotFiltered, "element expected in F^" + std::to_string(n) + " is not there");
        return Vec(c->begin(), c->begin() + static_cast<long>(reps[n].size()));
    }
};

GradedData graded_data(const FilteredAlgebra &FA)
{
    const auto &A = FA.algebra();
    const auto &k = A.field();
    const auto top = FA.top();
    GradedData g;
    for (std::uint32_t n = 0; n <= top; ++n) {
        const auto &next = FA.level(n + 1);
        Subspace s = next;
        std::vector<Vec> reps;
        for (const auto &v : FA.level(n).basis())
            if (s.insert(v))
                reps.push_back(v);
        Subspace tracked(k, A.dimension(), true);
        for (const auto &v : reps)
            tracked.insert(v);
        for (const auto &v : next.basis())
            tracked.insert(v);
        g.reps.push_back(std::move(reps));
        g.coords.push_back(std::move(tracked));
    }
    return g;
}

} // namespace

FilteredAlgebra::FilteredAlgebra(PresentedAlgebra A, std::vector<FiltrationLevel> levels)
    : A_(std::move(A)), levels_(std::move(levels)), full_(Subspace::full(A_.field(), A_.dimension())),
      zero_(A_.field(), A_.dimension())
{
}

FilteredAlgebra FilteredAlgebra::from_chain(PresentedAlgebra A, const std::vector<std::vector<Vec>> &gens)
{
    std::vector<FiltrationLevel> levels;
    for (const auto &g : gens)
        levels.push_back({A.ideal(g), g});
    const auto top = levels.size();
    for (std::size_t n = 1; n < top; ++n)
        if (!levels[n - 1].space.contains(levels[n].space))
            throw Error(ErrorKind::NotFiltered,
                        "F^" + std::to_string(n + 1) + " is not contained in F^" + std::to_string(n), {{"level", n + 1}});
    for (std::size_t a = 1; a <= top; ++a)
        for (std::size_t b = a; a + b <= top; ++b)
            for (const auto &g : levels[a - 1].gens)
                for (const auto &h : levels[b - 1].gens)
                    if (!levels[a + b - 1].space.contains(A.mul(g, h)))
                        throw Error(ErrorKind::NotFiltered,
                                    "F^" + std::to_string(a) + " F^" + std::to_string(b) + " is not inside F^" +
                                        std::to_string(a + b),
                                    {{"a", a}, {"b", b}, {"product", A.format(A.mul(g, h))}});
    return FilteredAlgebra(std::move(A), std::move(levels));
}

FilteredAlgebra FilteredAlgebra::adic(PresentedAlgebra A, const std::vector<Vec> &ideal_gens, std::uint32_t top)
{
    auto I = A.ideal(ideal_gens);
    if (I.dimension() == A.dimension())
        throw Error(ErrorKind::ImproperIdeal, "the ideal is the whole algebra");
    std::vector<FiltrationLevel> levels;
    if (top >= 1)
        levels.push_back({I, ideal_gens});
    for (std::uint32_t n = 2; n <= top; ++n) {
        auto next = A.ideal_product(ideal_gens, levels.back().space);
        auto gens = next.basis();
        levels.push_back({std::move(next), std::move(gens)});
    }
    return FilteredAlgebra(std::move(A), std::move(levels));
}

FilteredAlgebra FilteredAlgebra::trivial(PresentedAlgebra A)
{
    return FilteredAlgebra(std::move(A), {});
}

const Subspace &FilteredAlgebra::level(long n) const
{
    if (n <= 0)
        return full_;
    if (n > static_cast<long>(levels_.size()))
        return zero_;
    return levels_[static_cast<std::size_t>(n - 1)].space;
}

std::vector<Vec> FilteredAlgebra::level_generators(long n) const
{
    if (n <= 0) {
        std::vector<Vec> out;
        for (std::size_t i = 0; i < A_.dimension(); ++i)
            out.push_back(A_.basis_vector(i));
        return out;
    }
    if (n > static_cast<long>(levels_.size()))
        return {};
    return levels_[static_cast<std::size_t>(n - 1)].gens;
}

std::vector<std::size_t> FilteredAlgebra::dimensions() const
{
    std::vector<std::size_t> out{A_.dimension()};
    for (const auto &l : levels_)
        out.push_back(l.space.dimension());
    return out;
}

bool FilteredAlgebra::is_complete() const
{
    const long t = static_cast<long>(top());
    for (long a = 1; a <= t; ++a)
        if (!A_.ideal_product(level_generators(a), level(t + 1 - a)).is_zero())
            return false;
    return true;
}

nlohmann::json FilteredAlgebra::to_json() const
{
    nlohmann::json chain = nlohmann::json::object();
    for (std::size_t n = 0; n < levels_.size(); ++n) {
        auto gens = nlohmann::json::array();
        for (const auto &g : levels_[n].gens)
            gens.push_back(A_.format(g));
        chain[std::to_string(n + 1)] = gens;
    }
    return {{"algebra", A_.to_json()}, {"chain", chain}, {"N_top", top()}};
}

FilteredAlgebra FilteredAlgebra::from_json(const nlohmann::json &j)
{
    if (!j.is_object() || !j.contains("algebra") || !j.contains("N_top") || !j.at("N_top").is_number_unsigned())
        throw Error(ErrorKind::ParseError, "filtered algebra JSON needs \"algebra\" and \"N_top\"");
    const auto top = j.at("N_top").get<std::uint32_t>();
    auto A = PresentedAlgebra::from_json(j.at("algebra"), top);
    auto parse_list = [&](const nlohmann::json &list) {
        if (!list.is_array())
            throw Error(ErrorKind::ParseError, "chain entries are lists of elements");
        std::vector<Vec> out;
        for (const auto &e : list) {
            if (!e.is_string())
                throw Error(ErrorKind::ParseError, "chain elements are strings");
            out.push_back(A.element(e.get<std::string>()));
        }
        return out;
    };
    std::vector<std::vector<Vec>> levels(top);
    std::vector<bool> seen(top, false);
    const auto chain = j.value("chain", nlohmann::json::object());
    if (!chain.is_object())
        throw Error(ErrorKind::ParseError, "\"chain\" must be an object keyed by level");
    for (const auto &[key, list] : chain.items()) {
        long n = 0;
        try {
            std::size_t used = 0;
            n = std::stol(key, &used);
            if (used != key.size())
                throw std::invalid_argument(key);
        } catch (const std::exception &) {
            throw Error(ErrorKind::ParseError, "chain key \"" + key + "\" is not an integer");
        }
        auto gens = parse_list(list);
        if (n <= 0) {
            if (A.ideal(gens).dimension() != A.dimension())
                throw Error(ErrorKind::NotDiscrete,
                            "F^" + key + " must be the whole algebra for a filtration indexed from 0", {{"level", n}});
            continue;
        }
        if (n > static_cast<long>(top)) {
            if (!A.ideal(gens).is_zero())
                throw Error(ErrorKind::NotComplete, "F^" + key + " above N_top must vanish", {{"level", n}});
            continue;
        }
        levels[static_cast<std::size_t>(n - 1)] = std::move(gens);
        seen[static_cast<std::size_t>(n - 1)] = true;
    }
    for (std::uint32_t n = 0; n < top; ++n)
        if (!seen[n]) {
            if (n == 0)
                throw Error(ErrorKind::ParseError, "chain must give F^1");
            levels[n] = levels[n - 1];
        }
    return from_chain(std::move(A), levels);
}

GradedAlgebra associated_graded(const FilteredAlgebra &FA)
{
    const auto &A = FA.algebra();
    const auto &k = A.field();
    const auto g = graded_data(FA);
    std::vector<std::size_t> offset;
    std::vector<std::string> names;
    std::vector<int> weights;
    std::size_t d = 0;
    for (std::size_t n = 0; n < g.reps.size(); ++n) {
        offset.push_back(d);
        for (const auto &r : g.reps[n]) {
            names.push_back("[" + A.format(r) + "]_" + std::to_string(n));
            weights.push_back(static_cast<int>(n));
        }
        d += g.reps[n].size();
    }
    std::vector<std::vector<Vec>> table(d, std::vector<Vec>(d, zero_vector(k, d)));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const auto wi = static_cast<std::size_t>(weights[i]), wj = static_cast<std::size_t>(weights[j]);
            const auto w = wi + wj;
            if (w >= g.reps.size())
                continue;
            auto prod = A.mul(g.reps[wi][i - offset[wi]], g.reps[wj][j - offset[wj]]);
            auto c = g.gr_coordinates(w, prod);
            std::copy(c.begin(), c.end(), table[i][j].begin() + static_cast<long>(offset[w]));
        }
    auto unit = zero_vector(k, d);
    auto c = g.gr_coordinates(0, A.one());
    std::copy(c.begin(), c.end(), unit.begin());
    return {PresentedAlgebra::from_table(k, std::move(names), std::move(table), std::move(unit)), std::move(weights)};
}

nlohmann::json UnicityReport::to_json() const
{
    nlohmann::json j{{"certified", certified},
                     {"N_top", top},
                     {"gr_dims", filtration_gr_dims},
                     {"adic_gr_dims", adic_gr_dims}};
    if (certified)
        j["checked_levels"] = checked_levels;
    else
        j["failed_hypothesis"] = failed_hypothesis;
    if (!detail.empty())
        j["detail"] = detail;
    return j;
}

UnicityReport check_adic_unicity(const FilteredAlgebra &FA, const std::vector<Vec> &ideal_gens)
{
    const auto &A = FA.algebra();
    if (!FA.is_complete())
        throw Error(ErrorKind::NotComplete,
                    "the filtration is not complete at truncation N_top = " + std::to_string(FA.top()));
    auto I = A.ideal(ideal_gens);
    if (I.dimension() == A.dimension())
        throw Error(ErrorKind::ImproperIdeal, "the ideal is the whole algebra");
    const auto top = FA.top();
    UnicityReport rep;
    rep.top = top;

    // I^0 .. I^{top+1}
    std::vector<Subspace> powers{Subspace::full(A.field(), A.dimension()), I};
    for (std::uint32_t n = 2; n <= top + 1; ++n)
        powers.push_back(A.ideal_product(ideal_gens, powers.back()));
    for (std::uint32_t n = 0; n <= top; ++n) {
        rep.filtration_gr_dims.push_back(FA.level(n).dimension() - FA.level(n + 1).dimension());
        rep.adic_gr_dims.push_back(powers[n].dimension() - powers[n + 1].dimension());
    }
    if (!powers[top + 1].is_zero())
        rep.adic_gr_dims.push_back(powers[top + 1].dimension());

    if (!I.contains(FA.level(1))) {
        rep.failed_hypothesis = "F1_in_I";
        rep.detail = "F^1 is not contained in I";
        return rep;
    }
    if (rep.filtration_gr_dims != rep.adic_gr_dims) {
        rep.failed_hypothesis = "gr_generated_in_weight_1";
        for (std::size_t n = 0; n < rep.adic_gr_dims.size(); ++n) {
            auto f = n < rep.filtration_gr_dims.size() ? rep.filtration_gr_dims[n] : 0;
            if (f != rep.adic_gr_dims[n]) {
                rep.detail = "weight " + std::to_string(n) + ": dim gr = " + std::to_string(f) + ", expected " +
                             std::to_string(rep.adic_gr_dims[n]) + " from Sym of the weight-1 part";
                break;
            }
        }
        return rep;
    }
    // surjectivity of gr^1 ⊗ gr^{n-1} -> gr^n
    const auto f1 = FA.level_generators(1);
    for (std::uint32_t n = 2; n <= top; ++n) {
        auto image = A.ideal_product(f1, FA.level(n - 1)) + FA.level(n + 1);
        if (!image.contains(FA.level(n))) {
            rep.failed_hypothesis = "gr_generated_in_weight_1";
            rep.detail = "weight " + std::to_string(n) + " is not generated by weight 1";
            return rep;
        }
    }
    for (std::uint32_t n = 1; n <= top; ++n) {
        if (!(FA.level(n) == powers[n]))
            throw Error(ErrorKind::TheoremViolation,
                        "hypotheses hold but F^" + std::to_string(n) + " differs from I^" + std::to_string(n),
                        {{"level", n}});
        rep.checked_levels.push_back(n);
    }
    rep.certified = true;
    return rep;
}

std::vector<std::size_t> ReesAlgebra::component_dimensions() const
{
    return FA_.dimensions();
}

ReesAlgebra::Fiber ReesAlgebra::fiber_at_one() const
{
    const auto &A = FA_.algebra();
    const auto &k = A.field();
    const auto top = FA_.top();
    // V = ⊕_{n=0}^{top} F^n with F^n in the coordinates of its echelon basis
    std::vector<std::size_t> offset;
    std::vector<Subspace> tracked;
    std::size_t D = 0;
    for (std::uint32_t n = 0; n <= top; ++n) {
        offset.push_back(D);
        tracked.push_back(Subspace::span(k, A.dimension(), FA_.level(n).basis(), true));
        D += FA_.level(n).dimension();
    }
    auto embed = [&](std::uint32_t n, const Vec &v) {
        auto c = tracked[n].coordinates(v);
        if (!c)
            throw Error(ErrorKind::NotFiltered, "element not in F^" + std::to_string(n));
        auto out = zero_vector(k, D);
        std::copy(c->begin(), c->end(), out.begin() + static_cast<long>(offset[n]));
        return out;
    };
    // relations t * v = v: v in F^{n+1} sits in both component n+1 and component n
    Subspace R(k, D);
    for (std::uint32_t n = 0; n < top; ++n)
        for (const auto &v : FA_.level(n + 1).basis()) {
            auto lo = embed(n, v), hi = embed(n + 1, v);
            for (std::size_t i = 0; i < D; ++i)
                lo[i] = k.sub(lo[i], hi[i]);
            R.insert(lo);
        }
    const auto free = R.free_columns();
    std::vector<std::size_t> component(D), local(D);
    for (std::uint32_t n = 0; n <= top; ++n)
        for (std::size_t i = 0; i < FA_.level(n).dimension(); ++i) {
            component[offset[n] + i] = n;
            local[offset[n] + i] = i;
        }
    auto to_fiber = [&](const Vec &v) {
        auto r = R.reduce(v);
        Vec out;
        for (auto c : free)
            out.push_back(r[c]);
        return out;
    };
    std::vector<std::string> names;
    std::vector<Vec> reps; // element of A for each fiber basis vector
    std::vector<std::uint32_t> weight;
    for (auto c : free) {
        const auto n = component[c];
        const auto &v = FA_.level(n).basis()[local[c]];
        names.push_back("(" + A.format(v) + ")t^-" + std::to_string(n));
        reps.push_back(v);
        weight.push_back(n);
    }
    const auto d = free.size();
    std::vector<std::vector<Vec>> table(d, std::vector<Vec>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const auto w = weight[i] + weight[j];
            auto prod = A.mul(reps[i], reps[j]);
            // products beyond the top weight vanish at truncation
            table[i][j] = w > top ? zero_vector(k, d) : to_fiber(embed(w, prod));
        }
    auto unit = to_fiber(embed(0, A.one()));
    Fiber f{PresentedAlgebra::from_table(k, std::move(names), std::move(table), std::move(unit)),
            std::vector<int>(d, 0),
            reps,
            {},
            {d}};
    f.check = check_algebra_iso(f.algebra, A, f.iso);
    return f;
}

ReesAlgebra::Fiber ReesAlgebra::fiber_at_zero() const
{
    const auto &A = FA_.algebra();
    const auto &k = A.field();
    const auto top = FA_.top();
    // weight -n: F^n / t F^{n+1}, computed in the echelon coordinates of F^n
    std::vector<Subspace> tracked, image;
    std::vector<std::vector<std::size_t>> free;
    for (std::uint32_t n = 0; n <= top; ++n) {
        tracked.push_back(Subspace::span(k, A.dimension(), FA_.level(n).basis(), true));
        Subspace im(k, FA_.level(n).dimension());
        for (const auto &v : FA_.level(n + 1).basis())
            im.insert(*tracked[n].coordinates(v));
        free.push_back(im.free_columns());
        image.push_back(std::move(im));
    }
    std::vector<std::size_t> offset;
    std::vector<std::string> names;
    std::vector<int> weights;
    std::vector<Vec> reps;
    std::size_t d = 0;
    for (std::uint32_t n = 0; n <= top; ++n) {
        offset.push_back(d);
        for (auto c : free[n]) {
            const auto &v = FA_.level(n).basis()[c];
            names.push_back("(" + A.format(v) + ")t^-" + std::to_string(n));
            weights.push_back(static_cast<int>(n));
            reps.push_back(v);
        }
        d += free[n].size();
    }
    auto to_fiber = [&](std::uint32_t n, const Vec &v) {
        auto out = zero_vector(k, d);
        if (n > top)
            return out;
        auto c = tracked[n].coordinates(v);
        if (!c)
            throw Error(ErrorKind::NotFiltered, "element not in F^" + std::to_string(n));
        auto r = image[n].reduce(*c);
        for (std::size_t i = 0; i < free[n].size(); ++i)
            out[offset[n] + i] = r[free[n][i]];
        return out;
    };
    std::vector<std::vector<Vec>> table(d, std::vector<Vec>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            table[i][j] = to_fiber(static_cast<std::uint32_t>(weights[i] + weights[j]), A.mul(reps[i], reps[j]));
    auto unit = to_fiber(0, A.one());
    Fiber f{PresentedAlgebra::from_table(k, std::move(names), std::move(table), std::move(unit)), weights, {}, {}, {}};
    GradedAlgebra fiber_graded{f.algebra, weights};
    f.dimensions = fiber_graded.dimensions();

    // comparison with the associated graded, weight by weight
    const auto gr = associated_graded(FA_);
    const auto g = graded_data(FA_);
    std::vector<std::size_t> gr_offset;
    std::size_t acc = 0;
    for (const auto &r : g.reps) {
        gr_offset.push_back(acc);
        acc += r.size();
    }
    for (std::size_t i = 0; i < d; ++i) {
        const auto n = static_cast<std::size_t>(weights[i]);
        auto col = zero_vector(k, gr.algebra.dimension());
        auto c = g.gr_coordinates(n, reps[i]);
        std::copy(c.begin(), c.end(), col.begin() + static_cast<long>(gr_offset[n]));
        f.iso.push_back(std::move(col));
    }
    f.check = check_algebra_iso(f.algebra, gr.algebra, f.iso);
    if (f.check.ok() && gr.weights != weights)
        f.check.bijective = false;
    return f;
}

FormalGroupLaw rees_comultiplication(const FilteredAlgebra &FA, const FormalGroupLaw &G, const std::string &t)
{
    const auto &A = FA.algebra();
    if (A.generators().size() != 1)
        throw Error(ErrorKind::InvalidArgument, "the Rees comultiplication needs a one-generator algebra");
    if (!(G.ring() == A.field()))
        throw Error(ErrorKind::MismatchedContext, "law and algebra are over different rings");
    // filtration weight of x^i: the largest n <= top with x^i in F^n
    auto weight = [&](std::uint32_t i) {
        auto v = A.monomial(Monomial{i});
        std::uint32_t w = 0;
        while (w < FA.top() && FA.level(w + 1).contains(v))
            ++w;
        return w;
    };
    if (weight(1) != 1)
        throw Error(ErrorKind::InvalidArgument, "the generator must have filtration weight exactly 1");
    const auto &k = G.ring();
    auto kt = Ring::polynomial(k, {t});
    auto to_kt = RingMap::canonical(k, kt);
    std::vector<std::tuple<std::uint32_t, std::uint32_t, RingElement>> table;
    for (const auto &[i, j, c] : G.coefficient_table()) {
        const auto w = weight(i) + weight(j);
        table.emplace_back(i, j, kt.mul(to_kt(c), kt.pow(kt.generator(0), w - 1)));
    }
    return FormalGroupLaw::from_coefficients(kt, G.truncation(), table);
}

S0Fibers s0_fil_fibers(const Ring &k)
{
    if (!k.is_field())
        throw Error(ErrorKind::UnsupportedRing, "S0 fibers are computed over a field, got " + k.name());
    if (k.characteristic() == 2)
        throw Error(ErrorKind::CharacteristicTwo,
                    "in characteristic 2, (t1 + t2)(t1 - t2) = (t1 + t2)^2 and the fiber at 1 is k[e]/(e^2), not k x k");
    // eliminating t1 = c leaves k[t2] / (t2^2 - c^2)
    auto fiber = [&](const RingElement &c) {
        return PresentedAlgebra::univariate(k, "t2", {k.neg(k.mul(c, c)), k.zero(), k.one()});
    };
    auto at_one = fiber(k.one());
    auto at_zero = fiber(k.zero());
    auto kk = PresentedAlgebra::from_table(
        k, {"e1", "e2"},
        {{{k.one(), k.zero()}, {k.zero(), k.zero()}}, {{k.zero(), k.zero()}, {k.zero(), k.one()}}},
        {k.one(), k.one()});
    auto dual = PresentedAlgebra::univariate(k, "eps", {k.zero(), k.zero(), k.one()});
    // 1 -> e1 + e2, t2 -> e1 - e2 (so e1, e2 = (1 ± t2)/2)
    std::vector<Vec> iso_one{{k.one(), k.one()}, {k.one(), k.neg(k.one())}};
    std::vector<Vec> iso_zero{{k.one(), k.zero()}, {k.zero(), k.one()}};
    auto c1 = check_algebra_iso(at_one, kk, iso_one);
    auto c0 = check_algebra_iso(at_zero, dual, iso_zero);
    return {std::move(at_one), std::move(at_zero), std::move(kk), std::move(dual), iso_one, iso_zero, c1, c0};
}

} // namespace cartier
