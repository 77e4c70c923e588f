#include <cartier/linalg.hpp>

#include <algorithm>

#include <cartier/errors.hpp>

namespace cartier
{

Vec zero_vector(const Ring &k, std::size_t n)
{
    return Vec(n, k.zero());
}

Vec unit_vector(const Ring &k, std::size_t n, std::size_t i)
{
    auto v = zero_vector(k, n);
    v.at(i) = k.one();
    return v;
}

bool is_zero_vector(const Ring &k, const Vec &v)
{
    return std::all_of(v.begin(), v.end(), [&](const RingElement &x) { return k.is_zero(x); });
}

namespace
{

// dst -= c * src, skipping zero entries of src
void axpy(const Ring &k, Vec &dst, const RingElement &c, const Vec &src)
{
    for (std::size_t i = 0; i < src.size(); ++i)
        if (!k.is_zero(src[i]))
            dst[i] = k.sub(dst[i], k.mul(c, src[i]));
}

void scale_in_place(const Ring &k, Vec &v, const RingElement &c)
{
    for (auto &x : v)
        if (!k.is_zero(x))
            x = k.mul(c, x);
}

} // namespace

Subspace::Subspace(Ring k, std::size_t ambient, bool tracked) : k_(std::move(k)), n_(ambient), tracked_(tracked)
{
    if (!k_.is_field())
        throw Error(ErrorKind::UnsupportedRing, "linear algebra needs a field, got " + k_.name());
}

Subspace Subspace::span(const Ring &k, std::size_t ambient, const std::vector<Vec> &gens, bool tracked)
{
    Subspace s(k, ambient, tracked);
    for (const auto &g : gens)
        s.insert(g);
    return s;
}

Subspace Subspace::full(const Ring &k, std::size_t ambient)
{
    Subspace s(k, ambient);
    for (std::size_t i = 0; i < ambient; ++i)
        s.insert(unit_vector(k, ambient, i));
    return s;
}

std::vector<std::size_t> Subspace::free_columns() const
{
    std::vector<std::size_t> out;
    std::size_t p = 0;
    for (std::size_t c = 0; c < n_; ++c) {
        if (p < pivots_.size() && pivots_[p] == c) {
            ++p;
            continue;
        }
        out.push_back(c);
    }
    return out;
}

Vec Subspace::reduce(const Vec &v) const
{
    if (v.size() != n_)
        throw Error(ErrorKind::MismatchedContext, "vector length does not match the ambient space");
    Vec r = v;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const auto &c = r[pivots_[i]];
        if (!k_.is_zero(c)) {
            auto cc = c;
            axpy(k_, r, cc, rows_[i]);
        }
    }
    return r;
}

bool Subspace::insert(const Vec &v)
{
    if (v.size() != n_)
        throw Error(ErrorKind::MismatchedContext, "vector length does not match the ambient space");
    const std::size_t id = inserted_++;
    Vec combo;
    if (tracked_) {
        for (auto &c : combos_)
            c.push_back(k_.zero());
        combo = unit_vector(k_, inserted_, id);
    }
    Vec r = v;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        auto c = r[pivots_[i]];
        if (!k_.is_zero(c)) {
            axpy(k_, r, c, rows_[i]);
            if (tracked_)
                axpy(k_, combo, c, combos_[i]);
        }
    }
    auto it = std::find_if(r.begin(), r.end(), [&](const RingElement &x) { return !k_.is_zero(x); });
    if (it == r.end())
        return false;
    const auto col = static_cast<std::size_t>(it - r.begin());
    const auto inv = k_.inverse(*it);
    scale_in_place(k_, r, inv);
    scale_in_place(k_, combo, inv);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        auto c = rows_[i][col];
        if (!k_.is_zero(c)) {
            axpy(k_, rows_[i], c, r);
            if (tracked_)
                axpy(k_, combos_[i], c, combo);
        }
    }
    auto pos = static_cast<std::size_t>(std::lower_bound(pivots_.begin(), pivots_.end(), col) - pivots_.begin());
    pivots_.insert(pivots_.begin() + pos, col);
    rows_.insert(rows_.begin() + pos, std::move(r));
    if (tracked_)
        combos_.insert(combos_.begin() + pos, std::move(combo));
    return true;
}

bool Subspace::contains(const Vec &v) const
{
    return is_zero_vector(k_, reduce(v));
}

bool Subspace::contains(const Subspace &other) const
{
    return std::all_of(other.rows_.begin(), other.rows_.end(), [&](const Vec &v) { return contains(v); });
}

Subspace Subspace::operator+(const Subspace &other) const
{
    Subspace s(k_, n_);
    for (const auto &v : rows_)
        s.insert(v);
    for (const auto &v : other.rows_)
        s.insert(v);
    return s;
}

std::optional<Vec> Subspace::coordinates(const Vec &v) const
{
    if (!tracked_)
        throw Error(ErrorKind::InvalidArgument, "coordinates need a subspace built with tracking");
    Vec t = v;
    auto out = zero_vector(k_, inserted_);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        auto c = t[pivots_[i]];
        if (!k_.is_zero(c)) {
            axpy(k_, t, c, rows_[i]);
            // v = sum c_i row_i and row_i = sum combo_i[j] g_j
            for (std::size_t j = 0; j < inserted_; ++j)
                if (!k_.is_zero(combos_[i][j]))
                    out[j] = k_.add(out[j], k_.mul(c, combos_[i][j]));
        }
    }
    if (!is_zero_vector(k_, t))
        return std::nullopt;
    return out;
}

std::size_t rank(const Ring &k, std::size_t ambient, const std::vector<Vec> &rows)
{
    return Subspace::span(k, ambient, rows).dimension();
}

} // namespace cartier
