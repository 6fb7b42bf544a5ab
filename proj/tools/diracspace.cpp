#include "diracspace/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace diracspace;

namespace {

struct FileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Expression flags accept either the text itself or a file holding it.
std::string expr_or_file(const std::string& arg) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) return read_file(arg);
    return arg;
}

nlohmann::ordered_json to_json(const CheckSpec& spec, const CheckRecord& r) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["command"] = spec.command;
    j["check"] = r.check;
    j["status"] = r.pass ? "pass" : "fail";
    if (r.informational) j["informational"] = true;
    j["seed"] = spec.seed;
    j["trials"] = spec.trials;
    for (const auto& [k, v] : r.fields) std::visit([&, &k = k](const auto& x) { j[k] = x; }, v);
    j["witnesses"] = r.witnesses;
    return j;
}

std::string to_text(const CheckRecord& r) {
    std::ostringstream os;
    os << r.check;
    for (const auto& [k, v] : r.fields) {
        os << " " << k << "=";
        std::visit([&](const auto& x) {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, bool>) os << (x ? "true" : "false");
            else os << x;
        }, v);
    }
    os << ": " << (r.pass ? "PASS" : "FAIL") << (r.informational ? " (informational)" : "") << "\n";
    for (const auto& w : r.witnesses) os << "  " << w << "\n";
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact checks for higher Dirac structures and their L-infinity algebras"};
    app.require_subcommand(1);

    CheckSpec spec;
    std::string format = "json";
    std::string H, sigma, B, lambda, file, expr, point;
    int p = -1;

    const std::vector<std::pair<std::string, std::string>> commands{
        {"check-linfty", "L-infinity relations of the Getzler or observables family"},
        {"check-dirac", "isotropy, involutivity and pointwise Nambu conditions of a presentation file"},
        {"check-morphism", "Lie 2-algebra morphism, m_lambda, gauge or prequantization checks"},
        {"lagrangian-roundtrip", "to_pair/from_pair round trip on random Lagrangian subspaces"},
        {"multidirac-tiers", "tier formula against the brute-force orthogonal"},
        {"oracle-compare", "Getzler brackets against the derived-bracket oracle"},
        {"parse", "parse and normalize an expression"}};
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--dim", spec.dim, "dimension of the coordinate patch");
        sub->add_option("--p", p, "form degree p of E^p");
        sub->add_option("--r", spec.r, "degree r of the Getzler family");
        sub->add_option("--H", H, "closed (r+1)-form twist, expression or file");
        sub->add_option("--sigma", sigma, "2-form of the canonical morphism, expression or file");
        sub->add_option("--B", B, "r-form of the gauge transformation, expression or file");
        sub->add_option("--lambda", lambda, "rational scale of m_lambda");
        sub->add_option("--arity-max", spec.arity_max, "largest arity to check");
        sub->add_option("--trials", spec.trials, "random samples per check");
        sub->add_option("--seed", spec.seed, "sample seed")->envname("DIRACSPACE_SEED");
        sub->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));
        sub->add_flag("--allow-nonclosed", spec.allow_nonclosed, "accept non-closed H or sigma (negative controls)");
        sub->add_option("--file", file, "presentation file (expression file for parse)");
        sub->add_option("--point", point, "evaluation point, space separated rationals");
        if (name == "check-linfty") sub->add_option("--family", spec.family, "getzler or observables");
        if (name == "check-morphism") sub->add_flag("--prequantize", spec.prequantize, "prequantization with omega = sigma");
        if (name == "parse") sub->add_option("expr", expr, "expression text");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        spec.command = app.get_subcommands().front()->get_name();
        if (p >= 0) spec.p = p;
        if (!H.empty()) spec.H = expr_or_file(H);
        if (!sigma.empty()) spec.sigma = expr_or_file(sigma);
        if (!B.empty()) spec.B = expr_or_file(B);
        if (!lambda.empty()) spec.lambda = lambda;
        if (!file.empty()) {
            if (spec.command == "parse") spec.expr = read_file(file);
            else spec.presentation = read_file(file);
        }
        if (!expr.empty()) spec.expr = expr;
        std::istringstream ps(point);
        for (std::string w; ps >> w;) spec.point.push_back(Rat::parse(w));

        auto records = run_suite(spec);
        for (const auto& r : records) {
            if (format == "json") std::cout << to_json(spec, r).dump() << "\n";
            else std::cout << to_text(r);
        }
        return suite_passed(records) ? 0 : 1;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
