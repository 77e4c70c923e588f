#include <cartier/algebra.hpp>

#include <algorithm>
#include <map>

#include <cartier/errors.hpp>

namespace cartier
{

namespace
{

std::vector<std::string> monomial_names(const std::vector<Monomial> &monos, const std::vector<std::string> &gens)
{
    std::vector<std::string> out;
    for (const auto &m : monos)
        out.push_back(m.format(gens));
    return out;
}

} // namespace

PresentedAlgebra PresentedAlgebra::truncated(const Ring &k, std::vector<std::string> gens,
                                             std::vector<std::string> rels, std::uint32_t N)
{
    if (!k.is_field())
        throw Error(ErrorKind::UnsupportedRing, "algebras are taken over a field, got " + k.name());
    if (gens.empty())
        throw Error(ErrorKind::InvalidArgument, "an algebra presentation needs at least one generator");
    PresentedAlgebra A(k);
    A.gens_ = gens;
    A.rels_ = rels;
    A.N_ = N;
    const auto poly = Ring::polynomial(k, gens);
    const auto nv = gens.size();

    A.ambient_ = monomials_up_to(nv, N);
    const auto M = A.ambient_.size();
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < M; ++i)
        index.emplace(A.ambient_[i], i);
    // column c holds ambient monomial M-1-c, so pivots land on the largest monomials
    auto column = [&](const Monomial &m) { return M - 1 - index.at(m); };

    Subspace J(k, M);
    for (const auto &text : rels) {
        const auto r = poly.parse_element(text);
        const auto &terms = poly.terms(r);
        if (terms.empty())
            continue;
        std::uint64_t low = terms.front().mono.degree();
        for (const auto &t : terms)
            low = std::min(low, t.mono.degree());
        if (low > N)
            continue;
        for (const auto &m : monomials_up_to(nv, N - low)) {
            auto v = zero_vector(k, M);
            bool any = false;
            for (const auto &t : terms) {
                auto mt = m * t.mono;
                if (mt.degree() > N)
                    continue;
                v[column(mt)] = k.add(v[column(mt)], t.coeff);
                any = true;
            }
            if (any)
                J.insert(v);
        }
    }

    // standard monomials: the free columns, listed in ascending grlex order
    std::vector<std::size_t> basis_ambient;
    for (auto c : J.free_columns())
        basis_ambient.push_back(M - 1 - c);
    std::sort(basis_ambient.begin(), basis_ambient.end());
    std::vector<std::size_t> basis_pos(M, SIZE_MAX);
    for (std::size_t b = 0; b < basis_ambient.size(); ++b) {
        basis_pos[basis_ambient[b]] = b;
        A.monos_.push_back(A.ambient_[basis_ambient[b]]);
    }
    A.names_ = monomial_names(A.monos_, gens);
    const auto d = basis_ambient.size();
    A.ambient_image_.reserve(M);
    for (std::size_t i = 0; i < M; ++i) {
        auto r = J.reduce(unit_vector(k, M, M - 1 - i));
        auto img = zero_vector(k, d);
        for (std::size_t c = 0; c < M; ++c)
            if (!k.is_zero(r[c]))
                img[basis_pos[M - 1 - c]] = r[c];
        A.ambient_image_.push_back(std::move(img));
    }
    A.table_.assign(d, std::vector<Vec>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            A.table_[i][j] = A.monomial(A.monos_[i] * A.monos_[j]);
    A.unit_ = A.monomial(Monomial(nv));
    A.build_sparse();
    return A;
}

PresentedAlgebra PresentedAlgebra::univariate(const Ring &k, const std::string &gen,
                                              const std::vector<RingElement> &monic)
{
    if (!k.is_field())
        throw Error(ErrorKind::UnsupportedRing, "algebras are taken over a field, got " + k.name());
    if (monic.size() < 2 || !k.is_one(monic.back()))
        throw Error(ErrorKind::InvalidArgument, "expected a monic polynomial of degree >= 1");
    PresentedAlgebra A(k);
    A.gens_ = {gen};
    A.univariate_ = true;
    A.monic_ = monic;
    const auto d = monic.size() - 1;
    A.N_ = static_cast<std::uint32_t>(d - 1);
    auto poly = Ring::polynomial(k, {gen});
    std::vector<PolyTerm> terms;
    for (std::size_t i = 0; i < monic.size(); ++i)
        if (!k.is_zero(monic[i]))
            terms.push_back({Monomial{static_cast<std::uint32_t>(i)}, monic[i]});
    A.rels_ = {poly.format(poly.from_terms(terms))};
    for (std::size_t i = 0; i < d; ++i)
        A.monos_.push_back(Monomial{static_cast<std::uint32_t>(i)});
    A.names_ = monomial_names(A.monos_, A.gens_);
    A.table_.assign(d, std::vector<Vec>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            A.table_[i][j] = A.monomial(Monomial{static_cast<std::uint32_t>(i + j)});
    A.unit_ = unit_vector(k, d, 0);
    A.build_sparse();
    return A;
}

PresentedAlgebra PresentedAlgebra::from_table(const Ring &k, std::vector<std::string> basis_names,
                                              std::vector<std::vector<Vec>> table, Vec unit)
{
    if (!k.is_field())
        throw Error(ErrorKind::UnsupportedRing, "algebras are taken over a field, got " + k.name());
    const auto d = basis_names.size();
    if (table.size() != d || unit.size() != d)
        throw Error(ErrorKind::MismatchedContext, "structure table does not match the basis size");
    for (const auto &row : table) {
        if (row.size() != d)
            throw Error(ErrorKind::MismatchedContext, "structure table does not match the basis size");
        for (const auto &v : row)
            if (v.size() != d)
                throw Error(ErrorKind::MismatchedContext, "structure table does not match the basis size");
    }
    PresentedAlgebra A(k);
    A.names_ = std::move(basis_names);
    A.table_ = std::move(table);
    A.unit_ = std::move(unit);
    A.build_sparse();
    return A;
}

PresentedAlgebra PresentedAlgebra::product(const PresentedAlgebra &a, const PresentedAlgebra &b)
{
    if (!(a.k_ == b.k_))
        throw Error(ErrorKind::MismatchedContext, "product of algebras over different fields");
    const auto &k = a.k_;
    const auto da = a.dimension(), db = b.dimension(), d = da + db;
    std::vector<std::string> names;
    for (const auto &n : a.names_)
        names.push_back(n + "(1)");
    for (const auto &n : b.names_)
        names.push_back(n + "(2)");
    std::vector<std::vector<Vec>> table(d, std::vector<Vec>(d, zero_vector(k, d)));
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j)
            std::copy(a.table_[i][j].begin(), a.table_[i][j].end(), table[i][j].begin());
    for (std::size_t i = 0; i < db; ++i)
        for (std::size_t j = 0; j < db; ++j)
            std::copy(b.table_[i][j].begin(), b.table_[i][j].end(), table[da + i][da + j].begin() + da);
    auto unit = zero_vector(k, d);
    std::copy(a.unit_.begin(), a.unit_.end(), unit.begin());
    std::copy(b.unit_.begin(), b.unit_.end(), unit.begin() + da);
    return from_table(k, std::move(names), std::move(table), std::move(unit));
}

void PresentedAlgebra::build_sparse()
{
    const auto d = dimension();
    sparse_.assign(d, std::vector<std::vector<std::pair<std::size_t, RingElement>>>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t c = 0; c < d; ++c)
                if (!k_.is_zero(table_[i][j][c]))
                    sparse_[i][j].emplace_back(c, table_[i][j][c]);
}

void PresentedAlgebra::check(const Vec &v) const
{
    if (v.size() != dimension())
        throw Error(ErrorKind::MismatchedContext, "element has the wrong number of coordinates");
}

Vec PresentedAlgebra::zero() const
{
    return zero_vector(k_, dimension());
}

Vec PresentedAlgebra::basis_vector(std::size_t i) const
{
    if (i >= dimension())
        throw Error(ErrorKind::IndexOutOfRange, "basis index out of range");
    return unit_vector(k_, dimension(), i);
}

Vec PresentedAlgebra::generator(const std::string &name) const
{
    auto it = std::find(gens_.begin(), gens_.end(), name);
    if (it == gens_.end())
        throw Error(ErrorKind::ParseError, "unknown generator " + name);
    return monomial(Monomial::variable(gens_.size(), static_cast<std::size_t>(it - gens_.begin())));
}

Vec PresentedAlgebra::monomial(const Monomial &m) const
{
    if (gens_.empty())
        throw Error(ErrorKind::InvalidArgument, "this algebra has no generators");
    if (m.size() != gens_.size())
        throw Error(ErrorKind::MismatchedContext, "monomial has the wrong number of variables");
    if (univariate_) {
        // x^e by repeated multiplication by x with reduction by the monic relation
        const auto d = dimension();
        auto v = unit_vector(k_, d, 0);
        for (std::uint32_t e = 0; e < m[0]; ++e) {
            Vec next = zero_vector(k_, d);
            const auto top = v[d - 1];
            for (std::size_t i = d - 1; i > 0; --i)
                next[i] = v[i - 1];
            if (!k_.is_zero(top))
                for (std::size_t i = 0; i < d; ++i)
                    next[i] = k_.sub(next[i], k_.mul(top, monic_[i]));
            v = std::move(next);
        }
        return v;
    }
    if (m.degree() > N_)
        return zero();
    auto it = std::lower_bound(ambient_.begin(), ambient_.end(), m, GrlexLess{});
    return ambient_image_.at(static_cast<std::size_t>(it - ambient_.begin()));
}

Vec PresentedAlgebra::element(const std::string &text) const
{
    if (gens_.empty())
        throw Error(ErrorKind::InvalidArgument, "this algebra has no generators to parse with");
    const auto poly = Ring::polynomial(k_, gens_);
    const auto parsed = poly.parse_element(text);
    auto out = zero();
    for (const auto &t : poly.terms(parsed))
        out = add(out, scale(t.coeff, monomial(t.mono)));
    return out;
}

Vec PresentedAlgebra::add(const Vec &a, const Vec &b) const
{
    check(a);
    check(b);
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = k_.add(a[i], b[i]);
    return out;
}

Vec PresentedAlgebra::sub(const Vec &a, const Vec &b) const
{
    check(a);
    check(b);
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = k_.sub(a[i], b[i]);
    return out;
}

Vec PresentedAlgebra::scale(const RingElement &c, const Vec &a) const
{
    check(a);
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = k_.mul(c, a[i]);
    return out;
}

Vec PresentedAlgebra::mul(const Vec &a, const Vec &b) const
{
    check(a);
    check(b);
    const auto d = dimension();
    auto out = zero();
    for (std::size_t i = 0; i < d; ++i) {
        if (k_.is_zero(a[i]))
            continue;
        for (std::size_t j = 0; j < d; ++j) {
            if (k_.is_zero(b[j]) || sparse_[i][j].empty())
                continue;
            const auto c = k_.mul(a[i], b[j]);
            for (const auto &[idx, s] : sparse_[i][j])
                out[idx] = k_.add(out[idx], k_.mul(c, s));
        }
    }
    return out;
}

Vec PresentedAlgebra::pow(const Vec &a, std::uint64_t e) const
{
    Vec result = one(), base = a;
    while (e) {
        if (e & 1)
            result = mul(result, base);
        e >>= 1;
        if (e)
            base = mul(base, base);
    }
    return result;
}

Subspace PresentedAlgebra::ideal(const std::vector<Vec> &gens) const
{
    const auto d = dimension();
    Subspace s(k_, d);
    for (const auto &g : gens) {
        check(g);
        for (std::size_t j = 0; j < d; ++j)
            s.insert(mul(g, basis_vector(j)));
    }
    return s;
}

Subspace PresentedAlgebra::ideal_product(const std::vector<Vec> &gens_of_left, const Subspace &right) const
{
    Subspace s(k_, dimension());
    for (const auto &g : gens_of_left)
        for (const auto &v : right.basis())
            s.insert(mul(g, v));
    return s;
}

bool PresentedAlgebra::is_ideal(const Subspace &s) const
{
    for (const auto &v : s.basis())
        for (std::size_t j = 0; j < dimension(); ++j)
            if (!s.contains(mul(v, basis_vector(j))))
                return false;
    return true;
}

std::uint32_t PresentedAlgebra::nilpotency_index(const Vec &v) const
{
    auto p = v;
    for (std::uint32_t n = 1; n <= dimension() + 1; ++n) {
        if (is_zero_vector(k_, p))
            return n;
        p = mul(p, v);
    }
    return 0;
}

std::string PresentedAlgebra::format(const Vec &v) const
{
    check(v);
    std::vector<std::pair<std::string, std::string>> parts;
    // highest basis element first, like polynomial output
    for (std::size_t i = v.size(); i-- > 0;)
        if (!k_.is_zero(v[i]))
            parts.emplace_back(k_.format(v[i]), names_[i]);
    return format_linear_combination(parts);
}

nlohmann::json PresentedAlgebra::to_json() const
{
    nlohmann::json j{{"ring", k_.to_json()}};
    if (gens_.empty()) {
        j["basis"] = names_;
        return j;
    }
    j["gens"] = gens_;
    j["rels"] = rels_;
    if (univariate_) {
        auto c = nlohmann::json::array();
        for (const auto &x : monic_)
            c.push_back(k_.serialize(x));
        j["monic"] = c;
    } else {
        j["N"] = N_;
    }
    return j;
}

PresentedAlgebra PresentedAlgebra::from_json(const nlohmann::json &j, std::uint32_t default_N)
{
    if (!j.is_object() || !j.contains("gens") || !j.at("gens").is_array())
        throw Error(ErrorKind::ParseError, "algebra JSON needs a \"gens\" list");
    auto k = j.contains("ring") ? Ring::from_json(j.at("ring")) : Ring::rationals();
    std::vector<std::string> gens, rels;
    try {
        gens = j.at("gens").get<std::vector<std::string>>();
        rels = j.value("rels", std::vector<std::string>{});
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorKind::ParseError, std::string("malformed algebra JSON: ") + e.what());
    }
    if (j.contains("monic")) {
        if (gens.size() != 1)
            throw Error(ErrorKind::ParseError, "a monic presentation has exactly one generator");
        std::vector<RingElement> c;
        for (const auto &x : j.at("monic"))
            c.push_back(k.parse_element(x.is_string() ? x.get<std::string>() : x.dump()));
        return univariate(k, gens[0], c);
    }
    std::uint32_t N = default_N;
    if (j.contains("N")) {
        if (!j.at("N").is_number_unsigned())
            throw Error(ErrorKind::ParseError, "\"N\" must be a nonnegative integer");
        N = j.at("N").get<std::uint32_t>();
    }
    return truncated(k, gens, rels, N);
}

std::vector<std::size_t> GradedAlgebra::dimensions() const
{
    int top = weights.empty() ? -1 : *std::max_element(weights.begin(), weights.end());
    std::vector<std::size_t> out(static_cast<std::size_t>(top + 1), 0);
    for (auto w : weights)
        ++out.at(static_cast<std::size_t>(w));
    return out;
}

bool GradedAlgebra::is_graded() const
{
    const auto &k = algebra.field();
    const auto d = algebra.dimension();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const auto &p = algebra.product_of_basis(i, j);
            for (std::size_t c = 0; c < d; ++c)
                if (!k.is_zero(p[c]) && weights[c] != weights[i] + weights[j])
                    return false;
        }
    return true;
}

IsoCheck check_algebra_iso(const PresentedAlgebra &a, const PresentedAlgebra &b, const std::vector<Vec> &columns)
{
    IsoCheck out;
    const auto &k = b.field();
    if (columns.size() != a.dimension())
        return out;
    for (const auto &c : columns)
        if (c.size() != b.dimension())
            return out;
    auto apply = [&](const Vec &v) {
        auto img = b.zero();
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!k.is_zero(v[i]))
                img = b.add(img, b.scale(v[i], columns[i]));
        return img;
    };
    out.bijective = a.dimension() == b.dimension() && rank(k, b.dimension(), columns) == b.dimension();
    out.unital = apply(a.one()) == b.one();
    out.multiplicative = true;
    for (std::size_t i = 0; i < a.dimension() && out.multiplicative; ++i)
        for (std::size_t j = i; j < a.dimension() && out.multiplicative; ++j)
            out.multiplicative = apply(a.product_of_basis(i, j)) == b.mul(columns[i], columns[j]);
    return out;
}

} // namespace cartier
