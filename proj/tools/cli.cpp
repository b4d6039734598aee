#include "cli.hpp"

#include "blflux/classifier.hpp"
#include "blflux/error.hpp"
#include "blflux/flux.hpp"
#include "blflux/format.hpp"
#include "blflux/models.hpp"
#include "blflux/report.hpp"
#include "blflux/riemann.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace blflux::cli {

namespace {

namespace fs = std::filesystem;
using models::ModelExpr;
using models::ModelPair;
using nlohmann::json;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Role { a, b };

// Inline expression first; a readable model file otherwise.
ModelExpr resolve_model(const std::string& arg, Role role) {
    try {
        return models::parse(arg);
    } catch (const ParseError& inline_error) {
        std::error_code ec;
        if (!fs::is_regular_file(arg, ec)) throw;
        std::ifstream in(arg);
        if (!in) throw InputError("cannot read model file '" + arg + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        const auto spec = models::parse_spec(buf.str());
        const auto& first = role == Role::a ? spec.m_a : spec.m_b;
        const auto& second = role == Role::a ? spec.m_b : spec.m_a;
        if (first) return *first;
        if (second) return *second;
        throw InputError("model file '" + arg + "' defines neither m_a nor m_b");
    }
}

std::optional<models::ModelSpec> read_spec_file(const std::string& arg) {
    try {
        models::parse(arg);
        return std::nullopt;
    } catch (const ParseError&) {
    }
    std::error_code ec;
    if (!fs::is_regular_file(arg, ec)) return std::nullopt;
    std::ifstream in(arg);
    if (!in) throw InputError("cannot read model file '" + arg + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return models::parse_spec(buf.str());
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    return out;
}

void finish_output(std::ofstream& out, const fs::path& path) {
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void write_csv_file(const fs::path& path, const std::vector<flux::Sample>& rows) {
    auto out = open_output(path);
    report::write_csv(out, rows);
    finish_output(out, path);
}

void write_svg_file(const fs::path& path, const report::Series& series) {
    auto out = open_output(path);
    report::write_svg(out, series);
    finish_output(out, path);
}

// --- check ----------------------------------------------------------------

struct CheckArgs {
    std::string model;
    int grid = 4096;
    double eps = 1e-6;
    bool json = false;
};

int cmd_check(const CheckArgs& args, std::ostream& out) {
    classifier::CheckOptions opt;
    opt.grid_n = args.grid;
    opt.eps = args.eps;
    if (opt.grid_n < 100) throw InputError("--grid must be >= 100");
    if (!(opt.eps > 0 && opt.eps < 1e-3)) throw InputError("--eps must be in (0, 1e-3)");

    std::vector<std::pair<std::string, ModelExpr>> targets;
    if (auto spec = read_spec_file(args.model)) {
        if (spec->m_a) targets.emplace_back("m_a", *spec->m_a);
        if (spec->m_b) targets.emplace_back("m_b", *spec->m_b);
        if (targets.empty()) throw InputError("model file defines neither m_a nor m_b");
    } else {
        targets.emplace_back("m", models::parse(args.model));
    }

    bool all_in = true;
    json doc = json::object();
    for (const auto& [name, m] : targets) {
        const auto rep = classifier::check_conditions(m, opt);
        all_in = all_in && rep.in_class_M;
        if (args.json) {
            json j = report::to_json(rep);
            j["model"] = m.to_string();
            if (targets.size() == 1) {
                doc = j;
            } else {
                doc[name] = j;
            }
        } else {
            if (targets.size() > 1) out << "[" << name << "]\n";
            out << "model: " << m.to_string() << '\n';
            report::write_text(out, rep);
        }
    }
    if (args.json) out << doc.dump(2) << '\n';
    return all_in ? exit_ok : exit_negative;
}

// --- analyze --------------------------------------------------------------

struct AnalyzeArgs {
    std::vector<std::string> models;
    std::string csv;
    std::string svg;
    int grid = 8192;
    double tol = 1e-12;
    bool json = false;
};

ModelPair resolve_pair(const std::vector<std::string>& args) {
    if (args.size() == 2) {
        return {resolve_model(args[0], Role::a), resolve_model(args[1], Role::b)};
    }
    if (args.size() == 1) {
        if (auto spec = read_spec_file(args[0])) {
            if (!spec->m_a && !spec->m_b) throw InputError("model file defines neither m_a nor m_b");
            const ModelExpr a = spec->m_a ? *spec->m_a : *spec->m_b;
            const ModelExpr b = spec->m_b ? *spec->m_b : *spec->m_a;
            return {a, b};
        }
        const ModelExpr m = models::parse(args[0]);
        return {m, m};
    }
    throw InputError("expected <expr_a> <expr_b> or a model file");
}

int cmd_analyze(const AnalyzeArgs& args, std::ostream& out) {
    flux::ScanOptions opt;
    opt.grid_n = args.grid;
    opt.tol = args.tol;
    if (opt.grid_n < 1000) throw InputError("--grid must be >= 1000");
    if (!(opt.tol > 0)) throw InputError("--tol must be positive");

    const ModelPair pair = resolve_pair(args.models);
    const auto analysis = flux::inflection_points(pair, opt);
    if (args.json) {
        json j = report::to_json(analysis);
        j["m_a"] = pair.m_a.to_string();
        j["m_b"] = pair.m_b.to_string();
        out << j.dump(2) << '\n';
    } else {
        out << "m_a: " << pair.m_a.to_string() << '\n' << "m_b: " << pair.m_b.to_string() << '\n';
        report::write_text(out, analysis);
    }

    if (!args.csv.empty() || !args.svg.empty()) {
        const auto rows = flux::tabulate(pair, opt.grid_n, opt.eps);
        if (!args.csv.empty()) write_csv_file(args.csv, rows);
        if (!args.svg.empty()) {
            report::Series series{"f", {}, {}};
            for (const auto& r : rows) {
                series.x.push_back(r.s);
                series.y.push_back(r.f);
            }
            write_svg_file(args.svg, series);
        }
    }
    return analysis.s_shaped ? exit_ok : exit_negative;
}

// --- figures --------------------------------------------------------------

struct FiguresArgs {
    std::string out_dir;
    bool svg = false;
    int rows = 1001;
};

int cmd_figures(const FiguresArgs& args, std::ostream& out) {
    if (args.rows < 3) throw InputError("--rows must be >= 3");
    const fs::path dir(args.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create directory '" + dir.string() + "'");

    const std::vector<ModelExpr> mobilities = {models::counterexample_exp(),
                                               models::counterexample_poly10(),
                                               models::counterexample_poly30()};
    json manifest = json::array();
    for (std::size_t k = 0; k < mobilities.size(); ++k) {
        const ModelPair pair{mobilities[k], mobilities[k]};
        const std::string stem = "pair" + std::to_string(k + 1);
        const auto analysis = flux::inflection_points(pair);
        const auto rows = flux::tabulate(pair, args.rows);

        std::vector<flux::Sample> f_rows, f2_rows;
        {
            auto f_out = open_output(dir / (stem + "_f.csv"));
            f_out << "s,f\n";
            for (const auto& r : rows) f_out << format_double(r.s) << ',' << format_double(r.f) << '\n';
            finish_output(f_out, dir / (stem + "_f.csv"));
            auto f2_out = open_output(dir / (stem + "_f2.csv"));
            f2_out << "s,f2\n";
            for (const auto& r : rows) f2_out << format_double(r.s) << ',' << format_double(r.f2) << '\n';
            finish_output(f2_out, dir / (stem + "_f2.csv"));
        }
        if (args.svg) {
            report::Series f_series{"f: m = " + mobilities[k].to_string(), {}, {}};
            report::Series f2_series{"f'': m = " + mobilities[k].to_string(), {}, {}};
            for (const auto& r : rows) {
                f_series.x.push_back(r.s);
                f_series.y.push_back(r.f);
                // f'' blows up at the ends for s^1.1 mobilities; plot the interior.
                if (r.s >= 0.05 && r.s <= 0.95) {
                    f2_series.x.push_back(r.s);
                    f2_series.y.push_back(r.f2);
                }
            }
            write_svg_file(dir / (stem + "_f.svg"), f_series);
            write_svg_file(dir / (stem + "_f2.svg"), f2_series);
        }

        json inflections = json::array();
        for (const auto& p : analysis.inflections) inflections.push_back(p.s);
        manifest.push_back({{"pair", k + 1},
                            {"m_a", mobilities[k].to_string()},
                            {"m_b", mobilities[k].to_string()},
                            {"f_file", stem + "_f.csv"},
                            {"f2_file", stem + "_f2.csv"},
                            {"inflection_count", analysis.inflections.size()},
                            {"inflections", inflections},
                            {"f3_at_half", analysis.f3_at_half ? json(*analysis.f3_at_half) : json(nullptr)}});
        out << stem << ": " << analysis.inflections.size() << " inflection points\n";
    }
    auto mf = open_output(dir / "manifest.json");
    mf << manifest.dump(2) << '\n';
    finish_output(mf, dir / "manifest.json");
    return exit_ok;
}

// --- riemann --------------------------------------------------------------

struct RiemannArgs {
    std::string model_a;
    std::string model_b;
    double s_left = 0.0;
    double s_right = 0.0;
    std::string profile;
    int profile_points = 1001;
    bool json = false;
};

int cmd_riemann(const RiemannArgs& args, std::ostream& out) {
    for (double s : {args.s_left, args.s_right}) {
        if (!(s >= 0.0 && s <= 1.0)) throw InputError("states must lie in [0, 1]");
    }
    if (args.profile_points < 2) throw InputError("--points must be >= 2");
    const ModelPair pair{resolve_model(args.model_a, Role::a), resolve_model(args.model_b, Role::b)};
    const auto fan = riemann::solve({args.s_left, args.s_right, riemann::pair_flux(pair)});

    if (args.json) {
        out << report::to_json(fan).dump(2) << '\n';
    } else {
        report::write_text(out, fan);
    }

    if (!args.profile.empty()) {
        double lo = -1.0, hi = 1.0;
        if (!fan.waves.empty()) {
            lo = fan.waves.front().speed_lo;
            hi = fan.waves.back().speed_hi;
            const double pad = std::max(0.1 * (hi - lo), 0.1);
            lo -= pad;
            hi += pad;
        }
        auto p = open_output(args.profile);
        p << "xi,s\n";
        for (int i = 0; i < args.profile_points; ++i) {
            const double xi = lo + (hi - lo) * i / (args.profile_points - 1);
            p << format_double(xi) << ',' << format_double(riemann::evaluate(fan, xi)) << '\n';
        }
        finish_output(p, args.profile);
    }
    return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Buckley-Leverett fractional-flow analysis"};
    app.require_subcommand(1);

    CheckArgs check;
    auto* check_cmd = app.add_subcommand("check", "Check conditions C1-C4 for a mobility model");
    check_cmd->add_option("model", check.model, "Expression or model file")->required();
    check_cmd->add_option("--grid", check.grid, "Grid points");
    check_cmd->add_option("--eps", check.eps, "Clip distance from 0 and 1");
    check_cmd->add_flag("--json", check.json, "JSON output");

    AnalyzeArgs analyze;
    auto* analyze_cmd = app.add_subcommand("analyze", "Locate inflection points of f");
    analyze_cmd->add_option("models", analyze.models, "<expr_a> <expr_b> or a model file")
        ->required()
        ->expected(1, 2);
    analyze_cmd->add_option("--csv", analyze.csv, "Write s,f,f2 table");
    analyze_cmd->add_option("--svg", analyze.svg, "Write a plot of f");
    analyze_cmd->add_option("--grid", analyze.grid, "Grid points");
    analyze_cmd->add_option("--tol", analyze.tol, "Bisection tolerance");
    analyze_cmd->add_flag("--json", analyze.json, "JSON output");

    FiguresArgs figures;
    auto* figures_cmd = app.add_subcommand("figures", "Write counterexample figure data");
    figures_cmd->add_option("--out", figures.out_dir, "Output directory")->required();
    figures_cmd->add_flag("--svg", figures.svg, "Also write SVG plots");
    figures_cmd->add_option("--rows", figures.rows, "Rows per table");

    RiemannArgs rp;
    auto* riemann_cmd = app.add_subcommand("riemann", "Solve a Riemann problem");
    riemann_cmd->add_option("expr_a", rp.model_a)->required();
    riemann_cmd->add_option("expr_b", rp.model_b)->required();
    riemann_cmd->add_option("sL", rp.s_left)->required();
    riemann_cmd->add_option("sR", rp.s_right)->required();
    riemann_cmd->add_option("--profile", rp.profile, "Write xi,s profile");
    riemann_cmd->add_option("--points", rp.profile_points, "Profile samples");
    riemann_cmd->add_flag("--json", rp.json, "JSON output");

    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    }

    try {
        if (*check_cmd) return cmd_check(check, out);
        if (*analyze_cmd) return cmd_analyze(analyze, out);
        if (*figures_cmd) return cmd_figures(figures, out);
        if (*riemann_cmd) return cmd_riemann(rp, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const std::exception& e) {
        // Parse, domain, parameter and option errors.
        err << "error: " << e.what() << '\n';
        return exit_input;
    }
    return exit_input;
}

}  // namespace blflux::cli
