#include <cartier/monomial.hpp>

#include <algorithm>

namespace cartier
{

std::string Monomial::format(const std::vector<std::string> &names, const char *times) const
{
    std::string out;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        if (exps_[i] == 0)
            continue;
        if (!out.empty())
            out += times;
        out += names.at(i);
        if (exps_[i] > 1)
            out += "^" + std::to_string(exps_[i]);
    }
    return out.empty() ? "1" : out;
}

namespace
{

void fill(std::vector<Monomial> &out, Monomial &cur, std::size_t index, std::uint32_t remaining)
{
    if (index + 1 == cur.size()) {
        cur[index] = remaining;
        out.push_back(cur);
        return;
    }
    for (std::uint32_t e = remaining + 1; e-- > 0;) {
        cur[index] = e;
        fill(out, cur, index + 1, remaining - e);
    }
    cur[index] = 0;
}

} // namespace

std::vector<Monomial> monomials_up_to(std::size_t nvars, std::uint32_t max_degree)
{
    std::vector<Monomial> out;
    if (nvars == 0) {
        out.emplace_back(0);
        return out;
    }
    Monomial cur(nvars);
    for (std::uint32_t d = 0; d <= max_degree; ++d)
        fill(out, cur, 0, d);
    return out;
}

} // namespace cartier
