#include <cartier/cli.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <cartier/dual.hpp>
#include <cartier/errors.hpp>
#include <cartier/fgl.hpp>
#include <cartier/filtration.hpp>
#include <cartier/verify.hpp>
#include <cartier/witt.hpp>

namespace cartier::cli
{

namespace
{

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string command;
    std::optional<unsigned> N;
    std::string ring;
    std::string format = "table";
    std::uint64_t seed = 0;
    std::string out;
    std::string inline_json;
    std::string file;
    std::string law;
    bool timing = false;
    // witt
    std::uint64_t p = 0;
    unsigned n = 0;
    std::string t = "1";
    std::string action = "teichmuller";
    // fgl
    long k = 2;
    std::string var = "lambda";
    // dual
    std::string algebra;
    int weight = -1;
    // rees
    int at = 1;
    // verify-paper
    bool rerun = true;
};

// What a command hands back for printing.
struct Output {
    json result = json::object();
    std::vector<std::string> lines;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    // manifest context
    std::string ring = "-";
    json p = nullptr;
    json N = nullptr;
    bool rejected = false;
};

json characteristic_of(const Ring &r)
{
    const auto c = r.characteristic();
    return c.fits_ulong_p() ? json(c.get_ui()) : json(c.get_str());
}

void set_context(Output &o, const Ring &r, std::optional<std::uint32_t> N)
{
    o.ring = r.name();
    o.p = characteristic_of(r);
    if (N)
        o.N = *N;
}

void check_N(std::uint32_t N)
{
    if (N > max_truncation())
        throw UsageError("truncation " + std::to_string(N) + " exceeds the maximum " +
                         std::to_string(max_truncation()) + " (set CARTIER_LAB_MAX_N to raise it)");
}

json read_input(const Options &o)
{
    std::string text;
    if (!o.inline_json.empty() && !o.file.empty())
        throw UsageError("give either --inline or --file, not both");
    if (!o.inline_json.empty()) {
        text = o.inline_json;
    } else if (!o.file.empty()) {
        std::ifstream in(o.file);
        if (!in)
            throw UsageError("cannot read " + o.file);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    } else {
        throw UsageError("this command needs --inline JSON or --file PATH");
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw Error(ErrorKind::ParseError, std::string("input is not valid JSON: ") + e.what());
    }
}

Ring ring_or(const Options &o, const Ring &fallback)
{
    return o.ring.empty() ? fallback : Ring::parse(o.ring);
}

// A law from --law gm|ga or from JSON; --ring and --N fill fields the JSON omits.
json law_json(const Options &o)
{
    if (!o.law.empty()) {
        if (!o.inline_json.empty() || !o.file.empty())
            throw UsageError("--law cannot be combined with --inline or --file");
        json j{{"N", o.N.value_or(8)}, {"coeffs", json::array()}};
        if (o.law == "gm")
            j["coeffs"].push_back({1u, 1u, "1"});
        else if (o.law != "ga")
            throw UsageError("--law is gm or ga");
        if (!o.ring.empty())
            j["ring"] = o.ring;
        return j;
    }
    auto j = read_input(o);
    if (!j.is_object())
        throw Error(ErrorKind::ParseError, "law JSON must be an object");
    if (!j.contains("ring") && !o.ring.empty())
        j["ring"] = o.ring;
    if (!j.contains("N") && o.N)
        j["N"] = *o.N;
    return j;
}

FormalGroupLaw read_law(const Options &o, Output &out)
{
    auto j = law_json(o);
    if (j.contains("N") && j.at("N").is_number_unsigned())
        check_N(j.at("N").get<std::uint32_t>());
    auto G = FormalGroupLaw::from_json(j);
    set_context(out, G.ring(), G.truncation());
    return G;
}

void series_output(Output &out, const std::string &label, const TruncatedSeries &s)
{
    out.result[label] = s.format();
    out.result["series"] = s.to_json();
    out.lines.push_back(label + " = " + s.format());
}

void law_output(Output &out, const FormalGroupLaw &G)
{
    out.result["law"] = G.to_json();
    out.result["F"] = G.format();
    out.lines.push_back("F(X, Y) = " + G.format());
    out.header = {"i", "j", "a_ij"};
    for (const auto &[i, j, c] : G.coefficient_table())
        out.rows.push_back({std::to_string(i), std::to_string(j), G.ring().serialize(c)});
}

// ---------------------------------------------------------------------------
// fgl

Output fgl_check(const Options &o)
{
    Output out;
    auto j = law_json(o);
    if (j.contains("N") && j.at("N").is_number_unsigned())
        check_N(j.at("N").get<std::uint32_t>());
    try {
        auto G = FormalGroupLaw::from_json(j);
        set_context(out, G.ring(), G.truncation());
        auto name = standard_law_name(G);
        out.result = {{"valid", true}, {"name", name ? json(*name) : json(nullptr)}, {"F", G.format()}};
        out.lines.push_back(name ? "valid; " + *name : "valid");
        out.lines.push_back("F(X, Y) = " + G.format());
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::AxiomViolation)
            throw;
        auto ring = j.contains("ring") ? Ring::from_json(j.at("ring")) : Ring::integers();
        set_context(out, ring, j.value("N", 0u));
        out.rejected = true;
        out.result = e.details();
        out.result["valid"] = false;
        out.lines.push_back(std::string("invalid; ") + e.what());
    }
    return out;
}

Output fgl_inverse(const Options &o)
{
    Output out;
    auto G = read_law(o, out);
    series_output(out, "iota(X)", formal_inverse(G));
    return out;
}

Output fgl_nseries(const Options &o)
{
    Output out;
    auto G = read_law(o, out);
    series_output(out, "[" + std::to_string(o.k) + "](X)", n_series(G, o.k));
    out.result["n"] = o.k;
    return out;
}

Output fgl_height(const Options &o)
{
    Output out;
    auto G = read_law(o, out);
    auto h = height(G);
    out.result = {{"height", h.infinite ? json("infinity") : json(h.value)},
                  {"infinite", h.infinite},
                  {"truncation", h.truncation},
                  {"p", out.p}};
    out.lines.push_back("height " + h.format());
    return out;
}

Output fgl_deform(const Options &o)
{
    Output out;
    auto G = read_law(o, out);
    auto D = deform_to_normal_cone(G, o.var);
    law_output(out, D);
    out.ring = D.ring().name();
    return out;
}

Output fgl_log(const Options &o)
{
    Output out;
    auto G = read_law(o, out);
    series_output(out, "log(X)", fgl_log(G));
    return out;
}

Output fgl_exp(const Options &o)
{
    Output out;
    auto j = read_input(o);
    // also accepts the JSON output of `fgl log`
    if (j.is_object() && j.contains("result"))
        j = j.at("result");
    if (j.is_object() && j.contains("series"))
        j = j.at("series");
    if (j.is_object() && !j.contains("ring") && !o.ring.empty())
        j["ring"] = o.ring;
    auto l = TruncatedSeries::from_json(j);
    check_N(l.truncation());
    set_context(out, l.ring(), l.truncation());
    law_output(out, fgl_exp(l));
    return out;
}

// ---------------------------------------------------------------------------
// witt

void require_witt_args(const Options &o)
{
    if (o.p == 0 || o.n == 0)
        throw UsageError("witt commands need -p and -n");
    check_witt_size(o.p, o.n);
}

Output witt_polys(const Options &o, bool product)
{
    require_witt_args(o);
    Output out;
    out.ring = "Z";
    out.p = o.p;
    const auto &polys = product ? witt_prod_polys(o.p, o.n) : witt_sum_polys(o.p, o.n);
    const auto names = witt_variable_names(o.n, true);
    const auto slots = witt_slot_map(o.n, true);
    const std::string letter = product ? "P" : "S";
    auto list = json::array();
    out.header = {"index", "terms", "polynomial"};
    for (std::size_t i = 0; i < polys.size(); ++i) {
        auto text = polys[i].format(names, slots);
        list.push_back(text);
        out.lines.push_back(letter + "_" + std::to_string(i) + " = " + text);
        out.rows.push_back({std::to_string(i), std::to_string(polys[i].size()), text});
    }
    out.result = {{"p", o.p}, {"n", o.n}, {product ? "product" : "sum", list}};
    return out;
}

Output witt_fix(const Options &o)
{
    require_witt_args(o);
    Output out;
    WittContext ctx(o.p, o.n, ring_or(o, Ring::integers_mod(o.p)));
    set_context(out, ctx.ring, std::nullopt);
    auto pts = fix_points(ctx);
    auto list = json::array();
    out.header = {"element", "order"};
    for (const auto &x : pts) {
        auto order = additive_order(x).get_str();
        list.push_back({{"element", x.to_json()}, {"order", order}});
        out.rows.push_back({x.format(), order});
    }
    out.result = {{"p", o.p}, {"n", o.n}, {"size", pts.size()}, {"points", list}};
    out.lines.push_back("Fix has " + std::to_string(pts.size()) + " points in W_" + std::to_string(o.n) + "(" +
                        ctx.ring.name() + ")");
    for (const auto &row : out.rows)
        out.lines.push_back("  " + row[0] + "  order " + row[1]);
    return out;
}

Output witt_kernel(const Options &o)
{
    require_witt_args(o);
    Output out;
    WittContext ctx(o.p, o.n, ring_or(o, Ring::integers_mod(o.p)));
    set_context(out, ctx.ring, std::nullopt);
    ScalarAction action;
    if (o.action == "teichmuller")
        action = ScalarAction::Teichmuller;
    else if (o.action == "componentwise")
        action = ScalarAction::Componentwise;
    else
        throw UsageError("--action is teichmuller or componentwise");
    auto t = ctx.ring.parse_element(o.t);
    auto pts = sekiguchi_suwa_kernel(ctx, t, action);
    auto list = json::array();
    out.header = {"element"};
    out.lines.push_back("kernel at t = " + ctx.ring.format(t) + " has " + std::to_string(pts.size()) + " points");
    for (const auto &x : pts) {
        list.push_back(x.to_json());
        out.rows.push_back({x.format()});
        out.lines.push_back("  " + x.format());
    }
    out.result = {{"p", o.p}, {"n", o.n}, {"t", ctx.ring.serialize(t)}, {"action", o.action},
                  {"size", pts.size()}, {"points", list}};
    return out;
}

// ---------------------------------------------------------------------------
// filtration and rees

// Filtered JSON; a missing "chain" with an "ideal" list means the adic filtration.
FilteredAlgebra read_filtered(const Options &o, Output &out, std::vector<Vec> *ideal)
{
    auto j = read_input(o);
    if (!j.is_object())
        throw Error(ErrorKind::ParseError, "filtered algebra JSON must be an object");
    if (j.contains("algebra") && j.at("algebra").is_object() && !j.at("algebra").contains("ring") && !o.ring.empty())
        j["algebra"]["ring"] = o.ring;
    if (!j.contains("N_top") && o.N)
        j["N_top"] = *o.N;
    if (j.contains("N_top") && j.at("N_top").is_number_unsigned())
        check_N(j.at("N_top").get<std::uint32_t>());
    std::optional<FilteredAlgebra> FA;
    if (!j.contains("chain") && j.contains("ideal")) {
        if (!j.contains("algebra") || !j.contains("N_top") || !j.at("N_top").is_number_unsigned())
            throw Error(ErrorKind::ParseError, "filtered algebra JSON needs \"algebra\" and \"N_top\"");
        auto top = j.at("N_top").get<std::uint32_t>();
        auto A = PresentedAlgebra::from_json(j.at("algebra"), top);
        std::vector<Vec> gens;
        for (const auto &g : j.at("ideal"))
            gens.push_back(A.element(g.get<std::string>()));
        FA = FilteredAlgebra::adic(A, gens, top);
    } else {
        FA = FilteredAlgebra::from_json(j);
    }
    if (ideal) {
        if (!j.contains("ideal") || !j.at("ideal").is_array())
            throw UsageError("this command needs an \"ideal\" list in the input");
        for (const auto &g : j.at("ideal")) {
            if (!g.is_string())
                throw Error(ErrorKind::ParseError, "ideal generators are strings");
            ideal->push_back(FA->algebra().element(g.get<std::string>()));
        }
    }
    set_context(out, FA->algebra().field(), FA->top());
    return *FA;
}

json dims_json(const std::vector<std::size_t> &d)
{
    return json(d);
}

std::string dims_text(const std::vector<std::size_t> &d)
{
    std::string s;
    for (std::size_t i = 0; i < d.size(); ++i)
        s += (i ? " " : "") + std::to_string(d[i]);
    return s;
}

void dims_rows(Output &out, const std::vector<std::size_t> &d)
{
    out.header = {"weight", "dimension"};
    for (std::size_t i = 0; i < d.size(); ++i)
        out.rows.push_back({std::to_string(i), std::to_string(d[i])});
}

Output filtration_gr(const Options &o)
{
    Output out;
    auto FA = read_filtered(o, out, nullptr);
    auto gr = associated_graded(FA);
    auto dims = gr.dimensions();
    auto basis = json::array();
    for (std::size_t b = 0; b < gr.algebra.dimension(); ++b)
        basis.push_back({{"name", gr.algebra.basis_names()[b]}, {"weight", gr.weights[b]}});
    out.result = {{"level_dimensions", FA.dimensions()},
                  {"gr_dimensions", dims_json(dims)},
                  {"complete", FA.is_complete()},
                  {"graded", gr.is_graded()},
                  {"basis", basis}};
    out.lines.push_back("dim F^n, n = 0..top+1: " + dims_text(FA.dimensions()));
    out.lines.push_back("dim gr_n: " + dims_text(dims));
    out.lines.push_back(std::string("complete: ") + (FA.is_complete() ? "yes" : "no"));
    dims_rows(out, dims);
    return out;
}

Output filtration_unicity(const Options &o)
{
    Output out;
    std::vector<Vec> I;
    auto FA = read_filtered(o, out, &I);
    auto rep = check_adic_unicity(FA, I);
    out.result = rep.to_json();
    out.rejected = !rep.certified;
    if (rep.certified)
        out.lines.push_back("certified: F^n = I^n for n <= " + std::to_string(rep.top));
    else
        out.lines.push_back("not certified: hypothesis " + rep.failed_hypothesis + " fails; " + rep.detail);
    out.lines.push_back("dim gr (filtration): " + dims_text(rep.filtration_gr_dims));
    out.lines.push_back("dim gr (I-adic):     " + dims_text(rep.adic_gr_dims));
    return out;
}

Output filtration_s0fil(const Options &o)
{
    Output out;
    auto k = ring_or(o, Ring::rationals());
    set_context(out, k, std::nullopt);
    auto f = s0_fil_fibers(k);
    out.result = {{"fiber_1", f.at_one.to_json()},
                  {"fiber_0", f.at_zero.to_json()},
                  {"fiber_1_is_k_x_k", f.check_one.ok()},
                  {"fiber_0_is_dual_numbers", f.check_zero.ok()}};
    out.lines.push_back("fiber at t = 1: k[t2]/(t2^2 - 1) = k x k: " + std::string(f.check_one.ok() ? "yes" : "no"));
    out.lines.push_back("fiber at t = 0: k[t2]/(t2^2) = k[e]/e^2: " + std::string(f.check_zero.ok() ? "yes" : "no"));
    out.rejected = !(f.check_one.ok() && f.check_zero.ok());
    return out;
}

Output rees_build(const Options &o)
{
    Output out;
    auto FA = read_filtered(o, out, nullptr);
    ReesAlgebra R(FA);
    auto dims = R.component_dimensions();
    out.result = {{"component_dimensions", dims_json(dims)}, {"filtered", FA.to_json()}};
    out.lines.push_back("dim of the t^-n component, n = 0..top: " + dims_text(dims));
    dims_rows(out, dims);
    return out;
}

Output rees_fiber(const Options &o)
{
    if (o.at != 0 && o.at != 1)
        throw UsageError("--at is 0 or 1");
    Output out;
    auto FA = read_filtered(o, out, nullptr);
    ReesAlgebra R(FA);
    auto f = o.at == 1 ? R.fiber_at_one() : R.fiber_at_zero();
    auto iso = json::array();
    for (const auto &col : f.iso)
        iso.push_back(FA.algebra().format(col));
    out.result = {{"at", o.at},
                  {"dimensions", dims_json(f.dimensions)},
                  {"basis", f.algebra.basis_names()},
                  {"weights", f.weights},
                  {"isomorphism", {{"bijective", f.check.bijective},
                                   {"unital", f.check.unital},
                                   {"multiplicative", f.check.multiplicative}}}};
    if (o.at == 1)
        out.result["images"] = iso;
    const std::string target = o.at == 1 ? "A" : "gr A";
    out.lines.push_back("fiber at t = " + std::to_string(o.at) + " isomorphic to " + target + ": " +
                        (f.check.ok() ? "yes" : "no"));
    out.lines.push_back("dimensions by weight: " + dims_text(f.dimensions));
    dims_rows(out, f.dimensions);
    out.rejected = !f.check.ok();
    return out;
}

// ---------------------------------------------------------------------------
// dual

void hopf_rows(Output &out, const DividedPowerHopf &H)
{
    out.header = {"i", "j", "k", "c"};
    const auto &r = H.ring();
    const auto N = H.truncation();
    for (std::uint32_t i = 1; i <= N; ++i)
        for (std::uint32_t j = i; i + j <= N; ++j) {
            out.lines.push_back(H.format_product(i, j));
            for (std::uint32_t k = 0; k <= N; ++k)
                if (!r.is_zero(H.constant(i, j, k)))
                    out.rows.push_back(
                        {std::to_string(i), std::to_string(j), std::to_string(k), r.serialize(H.constant(i, j, k))});
        }
}

Output dual_build(const Options &o)
{
    Output out;
    auto G = read_law(o, out);
    auto H = cartier_dual(G);
    out.result = H.to_json();
    hopf_rows(out, H);
    for (std::uint32_t n = 1; n <= H.truncation(); ++n)
        out.lines.push_back("S(x^[" + std::to_string(n) + "]) = " + H.format(H.antipode(n)));
    return out;
}

Output dual_check(const Options &o)
{
    Output out;
    auto j = o.law.empty() ? read_input(o) : json::object();
    if (j.contains("mul")) {
        // a raw Hopf table: axioms only
        auto H = DividedPowerHopf::from_json(j);
        check_N(H.truncation());
        set_context(out, H.ring(), H.truncation());
        auto rep = hopf_axiom_report(H);
        out.result = {{"hopf", rep.to_json()}};
        out.rejected = !rep.valid;
        out.lines.push_back(rep.valid ? "Hopf axioms hold" : "Hopf axiom " + rep.axiom + " fails");
        return out;
    }
    auto G = read_law(o, out);
    auto H = cartier_dual(G);
    auto hopf = hopf_axiom_report(H);
    auto pairing = dual_pairing_check(G, H);
    out.result = {{"hopf", hopf.to_json()}, {"pairing", pairing.to_json()}};
    out.rejected = !hopf.valid || !pairing.ok;
    out.lines.push_back(hopf.valid ? "Hopf axioms hold" : "Hopf axiom " + hopf.axiom + " fails");
    out.lines.push_back(pairing.ok ? "pairing with R[[X]] is perfect up to degree " + std::to_string(G.truncation())
                                   : "pairing fails at the " + pairing.identity + " identity");
    return out;
}

Output dual_weights(const Options &o)
{
    Output out;
    auto j = o.law.empty() ? read_input(o) : json::object();
    std::optional<DividedPowerHopf> H;
    if (j.contains("mul")) {
        H = DividedPowerHopf::from_json(j);
        check_N(H->truncation());
        set_context(out, H->ring(), H->truncation());
    } else {
        H = cartier_dual(read_law(o, out));
    }
    auto rep = weight_report(*H, o.var, o.weight);
    out.result = rep.to_json();
    out.rejected = !rep.homogeneous;
    if (rep.homogeneous) {
        out.lines.push_back("weight-homogeneous with " + o.var + " in weight " + std::to_string(o.weight));
    } else {
        const auto &w = rep.witness;
        out.lines.push_back("not weight-homogeneous: x^[" + std::to_string(w.at(0)) + "] * x^[" +
                            std::to_string(w.at(1)) + "] has the term " + rep.term + " on x^[" +
                            std::to_string(w.at(2)) + "]");
    }
    return out;
}

Output dual_grouplikes(const Options &o)
{
    if (o.algebra.empty())
        throw UsageError("dual grouplikes needs --algebra RING, e.g. 'Zmod:3[eps]'");
    Output out;
    auto G = read_law(o, out);
    auto H = cartier_dual(G);
    auto A = augmented_algebra(Ring::parse(o.algebra));
    auto pts = grouplike_points(G, H, A);
    out.result = pts.to_json(A);
    out.result["algebra"] = o.algebra;
    out.header = {"parameter"};
    out.lines.push_back(std::to_string(pts.parameters.size()) + " grouplike points over " + o.algebra);
    for (const auto &a : pts.parameters) {
        out.rows.push_back({A.format(a)});
        out.lines.push_back("  a = " + A.format(a));
    }
    out.lines.push_back(std::string("equal to the nilradical: ") + (pts.equals_nilradical ? "yes" : "no"));
    out.lines.push_back(std::string("products follow F: ") + (pts.law_matches ? "yes" : "no"));
    out.rejected = !pts.law_matches;
    return out;
}

// ---------------------------------------------------------------------------
// output

json manifest(const Options &o, const Output &out)
{
    return {{"tool", kToolName}, {"version", kVersion}, {"command", o.command}, {"ring", out.ring},
            {"p", out.p},        {"N", out.N},          {"seed", o.seed}};
}

std::string csv_field(const std::string &s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s)
        q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string manifest_comment(const json &m)
{
    std::string s = "#";
    for (const char *key : {"tool", "version", "command", "ring", "p", "N", "seed", "wall_time_s"}) {
        if (!m.contains(key))
            continue;
        const auto &v = m.at(key);
        s += std::string(" ") + key + "=" + (v.is_string() ? v.get<std::string>() : v.is_null() ? "-" : v.dump());
    }
    return s;
}

std::string render(const Options &o, const Output &out, double seconds)
{
    auto m = manifest(o, out);
    if (o.timing)
        m["wall_time_s"] = seconds;
    std::ostringstream s;
    if (o.format == "json") {
        s << json{{"manifest", m}, {"result", out.result}}.dump(2) << "\n";
    } else if (o.format == "csv") {
        s << manifest_comment(m) << "\n";
        auto header = out.header;
        auto rows = out.rows;
        if (rows.empty()) {
            header = {"key", "value"};
            for (const auto &[key, value] : out.result.items())
                rows.push_back({key, value.is_string() ? value.get<std::string>() : value.dump()});
        }
        for (std::size_t i = 0; i < header.size(); ++i)
            s << (i ? "," : "") << csv_field(header[i]);
        s << "\n";
        for (const auto &row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                s << (i ? "," : "") << csv_field(row[i]);
            s << "\n";
        }
    } else {
        s << manifest_comment(m) << "\n";
        for (const auto &line : out.lines)
            s << line << "\n";
    }
    return s.str();
}

void write_file(const std::filesystem::path &path, const std::string &text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text))
        throw UsageError("cannot write " + path.string());
}

std::string criterion_file(int id)
{
    std::ostringstream s;
    s << "criterion_" << std::setw(2) << std::setfill('0') << id << ".json";
    return s.str();
}

int verify_paper(const Options &o, std::ostream &out, std::ostream &err)
{
    const auto start = std::chrono::steady_clock::now();
    auto suite = verify::run_suite(o.seed, o.rerun);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    auto criteria = json::array();
    auto timing = json::array();
    for (const auto &c : suite.criteria) {
        criteria.push_back({{"id", c.id}, {"title", c.title}, {"passed", c.passed}, {"summary", c.summary}});
        timing.push_back({{"id", c.id},
                          {"seconds", c.seconds},
                          {"limit_seconds", c.limit_seconds},
                          {"within_limit", c.ok() || !c.passed}});
    }
    json m{{"tool", kToolName}, {"version", kVersion}, {"command", "verify-paper"}, {"seed", o.seed},
           {"criteria", criteria}};

    if (!o.out.empty()) {
        std::filesystem::path dir(o.out);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec)
            throw UsageError("cannot create " + dir.string() + ": " + ec.message());
        write_file(dir / "manifest.json", m.dump(2) + "\n");
        for (const auto &c : suite.criteria)
            write_file(dir / criterion_file(c.id), json{{"id", c.id}, {"artifact", c.artifact}}.dump(2) + "\n");
        write_file(dir / "timing.json", json{{"wall_time_s", seconds}, {"criteria", timing}}.dump(2) + "\n");
    }

    if (o.format == "json") {
        if (o.timing)
            m["wall_time_s"] = seconds;
        out << m.dump(2) << "\n";
    } else {
        for (const auto &c : suite.criteria)
            out << verify::format_line(c) << "\n";
        out << (suite.all_ok() ? "all criteria pass" : "some criteria fail") << "\n";
    }
    if (o.timing)
        err << "wall time " << seconds << " s\n";
    return suite.all_ok() ? kExitOk : kExitRejected;
}

} // namespace

unsigned max_truncation()
{
    if (const char *v = std::getenv("CARTIER_LAB_MAX_N")) {
        char *end = nullptr;
        const auto n = std::strtoul(v, &end, 10);
        if (end != v && *end == '\0' && n > 0 && n < 4096)
            return static_cast<unsigned>(n);
    }
    return 16;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Formal group laws, Witt vectors, filtrations and Cartier duality", kToolName};
    app.require_subcommand(1);
    Options o;
    std::function<Output(const Options &)> action;
    bool is_verify = false;

    auto common = [&](CLI::App *sub) {
        sub->add_option("--N", o.N, "Truncation degree");
        sub->add_option("--ring", o.ring, "Coefficient ring: Z, Q, Zmod:M, GF(q), poly:BASE:vars, BASE[eps], ...");
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "table", "csv"}));
        sub->add_option("--seed", o.seed, "Seed recorded in the manifest");
        sub->add_option("--out", o.out, "Write output to this path instead of stdout");
        sub->add_flag("--timing", o.timing, "Add wall time to the manifest");
    };
    auto input = [&](CLI::App *sub) {
        sub->add_option("--inline", o.inline_json, "Input JSON text");
        sub->add_option("--file", o.file, "Input JSON file");
    };
    auto law_input = [&](CLI::App *sub) {
        input(sub);
        sub->add_option("--law", o.law, "Standard law instead of JSON input: gm or ga");
    };
    auto leaf = [&](CLI::App *parent, const std::string &name, const std::string &help,
                    std::function<Output(const Options &)> f) {
        auto *sub = parent->add_subcommand(name, help);
        common(sub);
        sub->callback([&, name, parent, f] {
            o.command = parent->get_name() + " " + name;
            action = f;
        });
        return sub;
    };

    auto *fgl = app.add_subcommand("fgl", "One-dimensional formal group laws")->require_subcommand(1);
    law_input(leaf(fgl, "check", "Check the axioms", fgl_check));
    law_input(leaf(fgl, "inverse", "Formal inverse", fgl_inverse));
    auto *ns = leaf(fgl, "nseries", "n-series [n](X)", fgl_nseries);
    law_input(ns);
    ns->add_option("-k,--n", o.k, "Multiplier n")->default_val(2);
    law_input(leaf(fgl, "height", "Height over a ring of characteristic p", fgl_height));
    auto *deform = leaf(fgl, "deform", "Deformation to the normal cone", fgl_deform);
    law_input(deform);
    deform->add_option("--var", o.var, "Deformation parameter name")->default_val("lambda");
    law_input(leaf(fgl, "log", "Logarithm", fgl_log));
    input(leaf(fgl, "exp", "Law from a logarithm series", fgl_exp));

    auto *witt = app.add_subcommand("witt", "p-typical Witt vectors")->require_subcommand(1);
    auto witt_args = [&](CLI::App *sub) {
        sub->add_option("-p", o.p, "Prime")->required();
        sub->add_option("-n", o.n, "Length")->required();
    };
    witt_args(leaf(witt, "sum-poly", "Sum structure polynomials", [](const Options &x) { return witt_polys(x, false); }));
    witt_args(
        leaf(witt, "prod-poly", "Product structure polynomials", [](const Options &x) { return witt_polys(x, true); }));
    witt_args(leaf(witt, "fix", "Fixed points of Frobenius", witt_fix));
    auto *kernel = leaf(witt, "kernel", "Kernel of F - t^(p-1)", witt_kernel);
    witt_args(kernel);
    kernel->add_option("--t", o.t, "Parameter t in the ring")->default_val("1");
    kernel->add_option("--action", o.action, "Scalar action: teichmuller or componentwise")->default_val("teichmuller");

    auto *filt = app.add_subcommand("filtration", "Filtered algebras")->require_subcommand(1);
    input(leaf(filt, "gr", "Associated graded", filtration_gr));
    input(leaf(filt, "unicity", "Compare with the I-adic filtration", filtration_unicity));
    leaf(filt, "s0fil", "Fibers of the filtered 0-sphere", filtration_s0fil);

    auto *rees = app.add_subcommand("rees", "Rees construction")->require_subcommand(1);
    input(leaf(rees, "build", "Rees algebra component dimensions", rees_build));
    auto *fiber = leaf(rees, "fiber", "Fiber at t = 1 or t = 0", rees_fiber);
    input(fiber);
    fiber->add_option("--at", o.at, "0 or 1")->default_val(1);

    auto *dual = app.add_subcommand("dual", "Cartier duality")->require_subcommand(1);
    law_input(leaf(dual, "build", "Divided-power Hopf algebra of a law", dual_build));
    law_input(leaf(dual, "check", "Hopf axioms and the pairing", dual_check));
    auto *gl = leaf(dual, "grouplikes", "Grouplike points over a finite augmented algebra", dual_grouplikes);
    law_input(gl);
    gl->add_option("--algebra", o.algebra, "Augmented algebra as a ring, e.g. 'Zmod:3[eps]'");
    auto *weights = leaf(dual, "weights", "Weight homogeneity of a dual", dual_weights);
    law_input(weights);
    weights->add_option("--var", o.var, "Weighted coefficient variable")->default_val("lambda");
    weights->add_option("--weight", o.weight, "Weight of that variable")->default_val(-1);

    auto *vp = app.add_subcommand("verify-paper", "Run the acceptance suite");
    std::uint64_t verify_seed = 42;
    vp->add_option("--seed", verify_seed, "Seed")->capture_default_str();
    vp->add_option("--out", o.out, "Directory for the manifest and artifacts");
    vp->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "table"}));
    vp->add_flag("--timing", o.timing, "Add wall time to the printed manifest");
    vp->add_flag("!--no-rerun", o.rerun, "Skip the in-process determinism rerun");
    vp->callback([&] {
        is_verify = true;
        o.seed = verify_seed;
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (is_verify)
            return verify_paper(o, out, err);
        if (o.N)
            check_N(*o.N);
        const auto start = std::chrono::steady_clock::now();
        Output result = action(o);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const auto text = render(o, result, seconds);
        if (o.out.empty())
            out << text;
        else
            write_file(o.out, text);
        return result.rejected ? kExitRejected : kExitOk;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error &e) {
        if (!is_mathematical(e.kind())) {
            err << "error: " << error_kind_name(e.kind()) << ": " << e.what() << "\n";
            return kExitUsage;
        }
        Output rejected;
        if (!o.ring.empty())
            rejected.ring = o.ring;
        if (o.N)
            rejected.N = *o.N;
        rejected.result = e.report();
        rejected.lines.push_back(std::string("rejected: ") + std::string(error_kind_name(e.kind())) + ": " + e.what());
        rejected.rejected = true;
        out << render(o, rejected, 0);
        return kExitRejected;
    }
}

} // namespace cartier::cli
