// Runs the acceptance suite through the command-line interface and prints one
// PASS/FAIL line per criterion. Exit status is nonzero if any line fails.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

#include <cartier/cli.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{

std::string slurp(const fs::path &p)
{
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int run_cli(const std::vector<std::string> &args, std::string &out)
{
    std::ostringstream o, e;
    const int code = cartier::cli::run(args, o, e);
    out = o.str();
    if (!e.str().empty())
        std::cerr << e.str();
    return code;
}

void line(int id, bool ok, double seconds, const std::string &text)
{
    std::printf("criterion %2d %s %7.2fs  %s\n", id, ok ? "PASS" : "FAIL", seconds, text.c_str());
    std::fflush(stdout);
}

} // namespace

int main()
{
    const auto root = fs::temp_directory_path() / ("cartier-acceptance-" + std::to_string(::getpid()));
    const auto first = root / "run1", second = root / "run2";
    fs::remove_all(root);
    bool all = true;
    std::string out;

    // `fgl deform` on the multiplicative law, as a user would run it
    const int deform_code = run_cli({"fgl", "deform", "--law", "gm", "--N", "8"}, out);
    const bool deform_ok = deform_code == 0 && out.find("\nF(X, Y) = X + Y + lambda*X*Y\n") != std::string::npos;

    const int code1 = run_cli({"verify-paper", "--seed", "42", "--no-rerun", "--out", first.string()}, out);
    const auto manifest = json::parse(slurp(first / "manifest.json"));
    const auto timing = json::parse(slurp(first / "timing.json"));
    std::map<int, json> times;
    for (const auto &t : timing.at("criteria"))
        times[t.at("id").get<int>()] = t;

    for (const auto &c : manifest.at("criteria")) {
        const int id = c.at("id").get<int>();
        const auto &t = times.at(id);
        const double seconds = t.at("seconds").get<double>();
        const double limit = t.at("limit_seconds").get<double>();
        bool ok = c.at("passed").get<bool>() && (limit <= 0 || seconds <= limit);
        std::string text = c.at("title").get<std::string>() + ": " + c.at("summary").get<std::string>();
        if (limit > 0)
            text += " [limit " + std::to_string(static_cast<int>(limit)) + " s]";
        if (id == 1) {
            ok = ok && deform_ok;
            text += deform_ok ? "; CLI fgl deform agrees" : "; CLI fgl deform output differs";
        }
        all = all && ok;
        line(id, ok, seconds, text);
    }

    // determinism: a second run must reproduce manifest and artifacts byte for byte
    const auto start = std::chrono::steady_clock::now();
    const int code2 = run_cli({"verify-paper", "--seed", "42", "--no-rerun", "--out", second.string()}, out);
    std::vector<std::string> differing;
    std::size_t compared = 0;
    for (const auto &entry : fs::directory_iterator(first)) {
        const auto name = entry.path().filename().string();
        if (name == "timing.json")
            continue;
        ++compared;
        if (!fs::exists(second / name) || slurp(entry.path()) != slurp(second / name))
            differing.push_back(name);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool same = differing.empty() && compared > 1 && code1 == code2;
    std::string text = "determinism: verify-paper --seed 42 twice, " + std::to_string(compared) + " files compared";
    for (const auto &d : differing)
        text += ", " + d + " differs";
    line(12, same, seconds, text);
    all = all && same && code1 == 0;

    fs::remove_all(root);
    std::printf("%s\n", all ? "acceptance: all criteria pass" : "acceptance: FAILED");
    return all ? 0 : 1;
}
