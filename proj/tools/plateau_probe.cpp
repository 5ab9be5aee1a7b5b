// plateau-probe: batch runner for the Hessian-variance experiments.
//
//   plateau-probe <scale|depth|shots|spectrum|optimize|bounds> [flags]
//
// Each command writes <prefix>_<table>.csv files plus <prefix>_manifest.json
// into --out (prefix = preset name, or the command name). Named presets load a
// full configuration; any flag given explicitly overrides the preset value.

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "plateau/experiments.hpp"

namespace {

using namespace plateau;

struct Common {
    std::string out = "out";
    std::uint64_t seed = kDefaultBaseSeed;
    std::size_t threads = 0;
    std::string preset;
    std::string graph = "chain";
};

std::size_t default_threads() {
    if (const char* env = std::getenv("PLATEAU_PROBE_THREADS")) {
        try {
            return static_cast<std::size_t>(std::stoul(env));
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring invalid PLATEAU_PROBE_THREADS='" << env << "'\n";
        }
    }
    return 0;  // hardware concurrency
}

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--out", c.out, "Output directory")->capture_default_str();
    cmd->add_option("--seed", c.seed, "Base seed")->capture_default_str();
    cmd->add_option("--threads", c.threads, "Worker threads (0 = all cores; default from PLATEAU_PROBE_THREADS)")
        ->capture_default_str();
    cmd->add_option("--preset", c.preset, "Named configuration");
    cmd->add_option("--graph", c.graph, "Interaction graph: chain|ring|grid2d|complete")->capture_default_str();
}

std::vector<CostKind> parse_costs(const std::vector<std::string>& names) {
    std::vector<CostKind> out;
    for (const auto& n : names) out.push_back(parse_cost_kind(n));
    return out;
}

std::pair<std::size_t, std::size_t> parse_entry(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw CLI::ValidationError("--entry", "expected j,k");
    try {
        return {std::stoul(s.substr(0, comma)), std::stoul(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--entry", "expected two nonnegative integers j,k");
    }
}

[[noreturn]] void unknown_preset(const std::string& cmd, const std::string& name) {
    throw CLI::ValidationError("--preset", "'" + name + "' is not a preset of '" + cmd + "'");
}

template <class T>
void set_if(const CLI::Option* opt, T& target, const T& value) {
    if (opt->count() > 0) target = value;
}

ScaleConfig scale_preset(const std::string& name) {
    ScaleConfig c;
    if (name.empty() || name == "fig2") return c;
    if (name == "fig2-desk") {
        c.n_max = 12;
        return c;
    }
    if (name == "fig3" || name == "fig3-desk") {
        c.costs = {CostKind::Tfim, CostKind::Global};
        c.n_min = 4;
        c.n_max = name == "fig3" ? 14 : 12;
        c.seeds = 150;
        return c;
    }
    unknown_preset("scale", name);
}

DepthConfig depth_preset(const std::string& name) {
    DepthConfig c;
    if (name.empty() || name == "fig4") return c;
    if (name == "fig4-desk") {
        c.n = 10;
        c.depth_max = 8;
        c.seeds = 100;
        return c;
    }
    unknown_preset("depth", name);
}

ShotsConfig shots_preset(const std::string& name) {
    ShotsConfig c;
    if (name.empty() || name == "fig5") {
        c.ns = {4, 6, 8, 10, 12, 14, 16};
        return c;
    }
    if (name == "fig5-desk") {
        c.ns = {4, 6, 8};
        c.seeds = 100;
        return c;
    }
    unknown_preset("shots", name);
}

SpectrumConfig spectrum_preset(const std::string& name) {
    SpectrumConfig c;
    if (name.empty() || name == "fig6-desk" || name == "fig7-desk") return c;
    if (name == "fig6") {
        c.ns = {10, 16};
        return c;
    }
    if (name == "fig7") {
        c.ns = {6, 8, 10, 12, 14, 16};
        return c;
    }
    unknown_preset("spectrum", name);
}

OptimizeConfig optimize_preset(const std::string& name) {
    OptimizeConfig c;
    if (name.empty() || name == "fig8-desk") {
        c.iterations = name.empty() ? 200 : 100;
        return c;
    }
    if (name == "fig8") {
        c.n = 18;
        c.depth = 8;
        return c;
    }
    unknown_preset("optimize", name);
}

void report(const std::string& cmd, const Common& common, const ExperimentOutput& out) {
    const std::string prefix = common.preset.empty() ? cmd : common.preset;
    write_outputs(common.out, prefix, cmd, common.seed, out);
    for (const auto& [name, table] : out.tables) {
        std::cout << common.out << "/" << prefix << "_" << name << ".csv (" << table.row_count() << " rows)\n";
    }
    std::cout << common.out << "/" << prefix << "_manifest.json\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hessian-entry variance laboratory for layered variational circuits"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version());

    Common common;
    common.threads = default_threads();

    // scale ------------------------------------------------------------------
    auto* scale = app.add_subcommand("scale", "Variance vs system size (n sweep at fixed L)");
    add_common(scale, common);
    std::vector<std::string> s_cost;
    std::size_t s_nmin = 0, s_nmax = 0, s_depth = 0, s_seeds = 0, s_shots = 0;
    std::string s_entry;
    auto* o_s_cost = scale->add_option("--cost", s_cost, "global|local|tfim (comma list)")->delimiter(',');
    auto* o_s_nmin = scale->add_option("--n-min", s_nmin, "Smallest n");
    auto* o_s_nmax = scale->add_option("--n-max", s_nmax, "Largest n");
    auto* o_s_depth = scale->add_option("--depth", s_depth, "Layers L");
    auto* o_s_seeds = scale->add_option("--seeds", s_seeds, "Initializations per point")->check(CLI::PositiveNumber);
    auto* o_s_entry = scale->add_option("--entry", s_entry, "Hessian entry j,k (0-based); (j,j) is always included");
    auto* o_s_shots = scale->add_option("--shots", s_shots, "Shots per shifted evaluation (default: exact)")
                          ->check(CLI::PositiveNumber);

    // depth ------------------------------------------------------------------
    auto* depth = app.add_subcommand("depth", "Variance vs depth (L sweep at fixed n)");
    add_common(depth, common);
    std::vector<std::string> d_cost;
    std::size_t d_n = 0, d_lmin = 0, d_lmax = 0, d_seeds = 0, d_shots = 0;
    std::string d_entry;
    auto* o_d_cost = depth->add_option("--cost", d_cost, "global|local|tfim (comma list)")->delimiter(',');
    auto* o_d_n = depth->add_option("--n", d_n, "Qubits");
    auto* o_d_lmin = depth->add_option("--l-min", d_lmin, "Smallest L (0 allowed)");
    auto* o_d_lmax = depth->add_option("--l-max", d_lmax, "Largest L");
    auto* o_d_seeds = depth->add_option("--seeds", d_seeds, "Initializations per point")->check(CLI::PositiveNumber);
    auto* o_d_entry = depth->add_option("--entry", d_entry, "Hessian entry j,k (0-based)");
    auto* o_d_shots = depth->add_option("--shots", d_shots, "Shots per shifted evaluation")->check(CLI::PositiveNumber);

    // shots ------------------------------------------------------------------
    auto* shots = app.add_subcommand("shots", "Finite-shot two-term model and N(eps)");
    add_common(shots, common);
    std::vector<std::string> h_cost;
    std::vector<std::size_t> h_ns, h_grid;
    std::size_t h_depth = 0, h_seeds = 0;
    double h_eps = 0.0;
    std::string h_entry;
    auto* o_h_cost = shots->add_option("--cost", h_cost, "global|local|tfim (comma list)")->delimiter(',');
    auto* o_h_ns = shots->add_option("--n", h_ns, "System sizes (comma list)")->delimiter(',');
    auto* o_h_depth = shots->add_option("--depth", h_depth, "Layers L");
    auto* o_h_seeds = shots->add_option("--seeds", h_seeds, "Initializations")->check(CLI::PositiveNumber);
    auto* o_h_grid = shots->add_option("--shots-grid", h_grid, "Shot counts (comma list)")->delimiter(',');
    auto* o_h_eps = shots->add_option("--epsilon", h_eps, "Absolute tolerance for N(eps)")->check(CLI::PositiveNumber);
    auto* o_h_entry = shots->add_option("--entry", h_entry, "Hessian entry j,k (0-based)");

    // spectrum ---------------------------------------------------------------
    auto* spectrum = app.add_subcommand("spectrum", "Full-Hessian eigenvalues, lambda_RMS and Deg_eps");
    add_common(spectrum, common);
    std::vector<std::string> p_cost;
    std::vector<std::size_t> p_ns;
    std::size_t p_depth = 0, p_seeds = 0;
    double p_eps = 0.0;
    auto* o_p_cost = spectrum->add_option("--cost", p_cost, "global|local|tfim (comma list)")->delimiter(',');
    auto* o_p_ns = spectrum->add_option("--n", p_ns, "System sizes (comma list)")->delimiter(',');
    auto* o_p_depth = spectrum->add_option("--depth", p_depth, "Layers L");
    auto* o_p_seeds = spectrum->add_option("--seeds", p_seeds, "Initializations")->check(CLI::PositiveNumber);
    auto* o_p_eps = spectrum->add_option("--epsilon", p_eps, "Near-zero threshold")->check(CLI::PositiveNumber);

    // optimize ---------------------------------------------------------------
    auto* optimize = app.add_subcommand("optimize", "SGD / QNG trajectories with finite-shot gradients");
    add_common(optimize, common);
    std::vector<std::string> t_cost, t_opt;
    std::size_t t_n = 0, t_depth = 0, t_shots = 0, t_iters = 0, t_seeds = 0;
    double t_sgd = 0.0, t_qng = 0.0, t_lambda = 0.0;
    auto* o_t_cost = optimize->add_option("--cost", t_cost, "global|local|tfim (comma list)")->delimiter(',');
    auto* o_t_opt = optimize->add_option("--optimizer", t_opt, "sgd|qng (comma list)")->delimiter(',');
    auto* o_t_n = optimize->add_option("--n", t_n, "Qubits");
    auto* o_t_depth = optimize->add_option("--depth", t_depth, "Layers L");
    auto* o_t_shots = optimize->add_option("--shots", t_shots, "Shots per shifted evaluation (0 = exact gradients)");
    auto* o_t_iters = optimize->add_option("--iterations", t_iters, "Update steps");
    auto* o_t_seeds = optimize->add_option("--seeds", t_seeds, "Independent runs")->check(CLI::PositiveNumber);
    auto* o_t_sgd = optimize->add_option("--sgd-step", t_sgd, "SGD step size")->check(CLI::NonNegativeNumber);
    auto* o_t_qng = optimize->add_option("--qng-step", t_qng, "QNG step size")->check(CLI::NonNegativeNumber);
    auto* o_t_lambda = optimize->add_option("--lambda", t_lambda, "QNG metric regularization")->check(CLI::PositiveNumber);

    // bounds -----------------------------------------------------------------
    auto* bounds = app.add_subcommand("bounds", "Theory-side bounds and shot budgets");
    add_common(bounds, common);
    std::vector<std::size_t> b_ns, b_depths;
    std::vector<double> b_etas;
    std::size_t b_k = 0, b_r = 0;
    double b_eps = 0.0, b_cloc = 0.0;
    std::vector<std::string> b_empirical;
    auto* o_b_ns = bounds->add_option("--n", b_ns, "System sizes (comma list)")->delimiter(',');
    auto* o_b_depths = bounds->add_option("--depth", b_depths, "Depths (comma list)")->delimiter(',');
    auto* o_b_etas = bounds->add_option("--eta", b_etas, "Relative tolerances in (0,1] (comma list)")->delimiter(',');
    auto* o_b_k = bounds->add_option("--k", b_k, "Term locality");
    auto* o_b_r = bounds->add_option("--r", b_r, "Gate locality");
    auto* o_b_eps = bounds->add_option("--epsilon", b_eps, "Absolute tolerance")->check(CLI::PositiveNumber);
    auto* o_b_cloc = bounds->add_option("--c-loc", b_cloc, "Local-bound constant")->check(CLI::NonNegativeNumber);
    auto* o_b_emp = bounds->add_option("--empirical", b_empirical, "Ensemble variance CSVs to attach")
                        ->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        const GraphFamily family = parse_graph_family(common.graph);
        if (scale->parsed()) {
            auto c = scale_preset(common.preset);
            if (o_s_cost->count()) c.costs = parse_costs(s_cost);
            set_if(o_s_nmin, c.n_min, s_nmin);
            set_if(o_s_nmax, c.n_max, s_nmax);
            set_if(o_s_depth, c.depth, s_depth);
            set_if(o_s_seeds, c.seeds, s_seeds);
            if (o_s_entry->count()) std::tie(c.entry_j, c.entry_k) = parse_entry(s_entry);
            if (o_s_shots->count()) c.shots = s_shots;
            if (c.n_min > c.n_max) throw CLI::ValidationError("--n-min", "must not exceed --n-max");
            c.family = family;
            c.base_seed = common.seed;
            c.threads = common.threads;
            report("scale", common, run_scale(c));
        } else if (depth->parsed()) {
            auto c = depth_preset(common.preset);
            if (o_d_cost->count()) c.costs = parse_costs(d_cost);
            set_if(o_d_n, c.n, d_n);
            set_if(o_d_lmin, c.depth_min, d_lmin);
            set_if(o_d_lmax, c.depth_max, d_lmax);
            set_if(o_d_seeds, c.seeds, d_seeds);
            if (o_d_entry->count()) std::tie(c.entry_j, c.entry_k) = parse_entry(d_entry);
            if (o_d_shots->count()) c.shots = d_shots;
            if (c.depth_min > c.depth_max) throw CLI::ValidationError("--l-min", "must not exceed --l-max");
            c.family = family;
            c.base_seed = common.seed;
            c.threads = common.threads;
            report("depth", common, run_depth(c));
        } else if (shots->parsed()) {
            auto c = shots_preset(common.preset);
            if (o_h_cost->count()) c.costs = parse_costs(h_cost);
            set_if(o_h_ns, c.ns, h_ns);
            set_if(o_h_depth, c.depth, h_depth);
            set_if(o_h_seeds, c.seeds, h_seeds);
            set_if(o_h_grid, c.shot_grid, h_grid);
            set_if(o_h_eps, c.epsilon, h_eps);
            if (o_h_entry->count()) std::tie(c.entry_j, c.entry_k) = parse_entry(h_entry);
            c.family = family;
            c.base_seed = common.seed;
            c.threads = common.threads;
            report("shots", common, run_shots(c));
        } else if (spectrum->parsed()) {
            auto c = spectrum_preset(common.preset);
            if (o_p_cost->count()) c.costs = parse_costs(p_cost);
            set_if(o_p_ns, c.ns, p_ns);
            set_if(o_p_depth, c.depth, p_depth);
            set_if(o_p_seeds, c.seeds, p_seeds);
            set_if(o_p_eps, c.epsilon, p_eps);
            c.family = family;
            c.base_seed = common.seed;
            c.threads = common.threads;
            report("spectrum", common, run_spectrum(c));
        } else if (optimize->parsed()) {
            auto c = optimize_preset(common.preset);
            if (o_t_cost->count()) c.costs = parse_costs(t_cost);
            if (o_t_opt->count()) {
                c.optimizers.clear();
                for (const auto& o : t_opt) c.optimizers.push_back(parse_optimizer(o));
            }
            set_if(o_t_n, c.n, t_n);
            set_if(o_t_depth, c.depth, t_depth);
            if (o_t_shots->count()) c.shots = t_shots == 0 ? std::nullopt : std::optional<std::size_t>(t_shots);
            set_if(o_t_iters, c.iterations, t_iters);
            set_if(o_t_seeds, c.seeds, t_seeds);
            set_if(o_t_sgd, c.sgd_step, t_sgd);
            set_if(o_t_qng, c.qng_step, t_qng);
            set_if(o_t_lambda, c.lambda_reg, t_lambda);
            c.family = family;
            c.base_seed = common.seed;
            c.threads = common.threads;
            report("optimize", common, run_optimize(c));
        } else if (bounds->parsed()) {
            if (!common.preset.empty()) unknown_preset("bounds", common.preset);
            BoundsConfig c;
            set_if(o_b_ns, c.ns, b_ns);
            set_if(o_b_depths, c.depths, b_depths);
            set_if(o_b_etas, c.etas, b_etas);
            set_if(o_b_k, c.k, b_k);
            set_if(o_b_r, c.r, b_r);
            set_if(o_b_eps, c.epsilon, b_eps);
            set_if(o_b_cloc, c.c_loc, b_cloc);
            for (const auto& p : b_empirical) c.empirical_csvs.emplace_back(p);
            c.family = family;
            report("bounds", common, run_bounds(c));
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
