// Command-line front end: analyze, orientations, regimes, simulate, diagram.
//
// Exit codes: 0 success, 2 path-file parse error, 3 analysis or I/O error,
// 4 enumeration budget or cap exceeded.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rtl/diagram.hpp"
#include "rtl/montecarlo.hpp"
#include "rtl/pareto.hpp"
#include "rtl/pathspec.hpp"
#include "rtl/probability.hpp"
#include "rtl/report.hpp"
#include "rtl/timing.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitAnalysis = 3;
constexpr int kExitBudget = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw rtl::pathspec::ParseError(0, 0, "cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

rtl::AppClass parse_class_flag(const std::string& s) {
    if (s == "B") return rtl::AppClass::B;
    if (s == "C") return rtl::AppClass::C;
    if (s == "T") return rtl::AppClass::T;
    throw std::invalid_argument("unknown class '" + s + "' (expected B, C, or T)");
}

std::vector<rtl::Rational> parse_latency_args(const std::vector<std::string>& args) {
    std::vector<rtl::Rational> out;
    out.reserve(args.size());
    for (const std::string& a : args) {
        auto r = rtl::Rational::parse(a);
        if (!r || !(*r > rtl::Rational(0)))
            throw std::invalid_argument("malformed latency '" + a + "'");
        out.push_back(*r);
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Repeater path timing: wait analysis, Pareto checks, probability regimes"};
    app.require_subcommand(1);

    // analyze
    std::string analyze_file;
    std::string analyze_class;
    std::string analyze_pattern;
    std::string analyze_units;
    bool analyze_canonical = false;
    auto* analyze = app.add_subcommand("analyze", "evaluate a path file and print a wait report");
    analyze->add_option("file", analyze_file, "path description file")->required();
    analyze->add_option("--class", analyze_class, "override application class (B|C|T)");
    analyze->add_option("--pattern", analyze_pattern,
                        "override timing pattern (flat|forward|bell_matched|ridge_fold|valley_fold)");
    analyze->add_option("--units", analyze_units, "latency unit label, display only");
    analyze->add_flag("--canonical", analyze_canonical,
                      "print the canonical re-emission of the parsed file and exit");

    // orientations
    std::vector<std::string> orient_latencies;
    std::string orient_class = "T";
    bool orient_neutral = false;
    std::size_t orient_top = 0;
    std::size_t orient_cap = 12;
    auto* orientations =
        app.add_subcommand("orientations", "rank link orientation vectors by matched path wait");
    orientations->add_option("latency", orient_latencies, "per-hop latencies")->required();
    orientations->add_option("--class", orient_class, "application class (B|C|T), default T");
    orientations->add_flag("--allow-neutral", orient_neutral,
                           "include zero-polarity links (3^h vectors instead of 2^h)");
    orientations->add_option("--top", orient_top, "print only the first K rows (0 = all)");
    orientations->add_option("--cap", orient_cap, "maximum hop count to enumerate (default 12)");

    // regimes
    double regimes_pr = 0.01;
    std::int64_t regimes_nt = 1460;
    int regimes_n = 7, regimes_k = 1, regimes_d = 3;
    double regimes_alpha_target = 0.999;
    double regimes_epsilon = 0.01;
    double regimes_link_target = 0.99;
    std::size_t regimes_hops = 1;
    auto* regimes = app.add_subcommand("regimes", "probability regime boundaries and requirements");
    regimes->add_option("--pr", regimes_pr, "per-trial reception probability (default 0.01)");
    regimes->add_option("--nt", regimes_nt, "transmitter qubits per burst (default 1460)");
    regimes->add_option("--n", regimes_n, "code block size (default 7)");
    regimes->add_option("--k", regimes_k, "code logical qubits (default 1)");
    regimes->add_option("--d", regimes_d, "code distance (default 3)");
    regimes->add_option("--alpha-target", regimes_alpha_target,
                        "direct-transmission success target (default 0.999)");
    regimes->add_option("--epsilon", regimes_epsilon, "perfect-regime margin (default 0.01)");
    regimes->add_option("--link-target", regimes_link_target,
                        "per-link cascade target (default 0.99)");
    regimes->add_option("--hops", regimes_hops,
                        "spread the alpha target across this many block operations (default 1)");

    // simulate
    std::string simulate_file;
    std::uint64_t simulate_bursts = 100'000;
    std::uint64_t simulate_seed = 42;
    unsigned simulate_workers = 0;
    int simulate_n = 7;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo burst simulation of a path file");
    simulate->add_option("file", simulate_file, "path description file")->required();
    simulate->add_option("--bursts", simulate_bursts, "number of bursts (default 100000)");
    simulate->add_option("--seed", simulate_seed, "random seed (default 42)");
    simulate->add_option("--workers", simulate_workers, "worker threads (default: hardware)");
    simulate->add_option("--n", simulate_n, "code block size per link (default 7)");

    // diagram
    std::string diagram_file;
    std::string diagram_out;
    double diagram_scale = 60.0;
    auto* diagram = app.add_subcommand("diagram", "write an SVG timing diagram for a path file");
    diagram->add_option("file", diagram_file, "path description file")->required();
    diagram->add_option("--out", diagram_out, "output SVG path")->required();
    diagram->add_option("--scale", diagram_scale, "pixels per latency unit (default 60)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) {
            rtl::pathspec::PathSpec spec = rtl::pathspec::parse_path_file(read_file(analyze_file));
            if (!analyze_class.empty()) spec.app_class = parse_class_flag(analyze_class);
            if (!analyze_pattern.empty()) {
                auto p = rtl::pathspec::parse_pattern_name(analyze_pattern);
                if (!p)
                    throw std::invalid_argument("unknown pattern '" + analyze_pattern + "'");
                spec.pattern = *p;
                spec.custom_fires.clear();
            }
            if (analyze_canonical) {
                std::cout << rtl::pathspec::canonical_text(spec);
                return 0;
            }
            std::cout << rtl::report::analyze(spec.path, spec.schedule(), spec.app_class,
                                              analyze_units);
        } else if (*orientations) {
            auto latencies = parse_latency_args(orient_latencies);
            auto cls = parse_class_flag(orient_class);
            auto ranking = rtl::pareto::best_orientations(latencies, cls, orient_neutral, orient_cap);
            std::cout << rtl::report::orientations(latencies, ranking, cls, orient_top);
        } else if (*regimes) {
            rtl::CodeParams code{regimes_n, regimes_k, regimes_d};
            code.validate();
            std::cout << rtl::report::regimes(regimes_pr, regimes_nt, code, regimes_alpha_target,
                                              regimes_epsilon, regimes_link_target, regimes_hops);
        } else if (*simulate) {
            rtl::pathspec::PathSpec spec = rtl::pathspec::parse_path_file(read_file(simulate_file));
            rtl::mc::SimConfig config;
            config.path = spec.path;
            config.code = rtl::CodeParams{simulate_n, 1, 1};
            config.bursts = simulate_bursts;
            config.seed = simulate_seed;
            rtl::mc::SimResult result = rtl::mc::simulate(config, simulate_workers);
            std::cout << rtl::report::simulate(config, result);
        } else if (*diagram) {
            rtl::pathspec::PathSpec spec = rtl::pathspec::parse_path_file(read_file(diagram_file));
            std::string svg = rtl::svg::render_timing_diagram(spec.path, spec.schedule(),
                                                              spec.app_class, diagram_scale);
            std::ofstream out(diagram_out, std::ios::binary | std::ios::trunc);
            if (!out) throw std::invalid_argument("cannot write output file '" + diagram_out + "'");
            out << svg;
            if (!out.flush())
                throw std::invalid_argument("failed writing output file '" + diagram_out + "'");
        }
    } catch (const rtl::pathspec::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const rtl::pareto::BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitAnalysis;
    }
    return 0;
}
