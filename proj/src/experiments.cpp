#include "plateau/experiments.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <tuple>

#include "plateau/bounds.hpp"
#include "plateau/fit.hpp"
#include "plateau/parallel.hpp"
#include "plateau/spectral.hpp"

namespace plateau {

std::vector<std::string> ensemble_csv_header() {
    return {"n", "L", "cost_kind", "entry_j", "entry_k", "mode", "shots", "n_seeds", "var_hat", "ci_lo", "ci_hi"};
}

std::vector<std::pair<std::size_t, std::size_t>> hessian_entries(std::size_t j, std::size_t k) {
    std::vector<std::pair<std::size_t, std::size_t>> out{{j, j}};
    if (k != j) out.emplace_back(j, k);
    return out;
}

std::vector<std::size_t> geometric_grid(std::size_t lo, std::size_t hi, std::size_t factor) {
    if (lo == 0 || factor < 2 || lo > hi) throw std::invalid_argument("invalid geometric grid");
    std::vector<std::size_t> g;
    for (std::size_t x = lo; x <= hi; x *= factor) g.push_back(x);
    return g;
}

namespace {

std::string mode_cell(const std::optional<std::size_t>& shots) { return shots ? "shots" : "exact"; }

void check_cost_sizes(const std::vector<CostKind>& costs, std::size_t n_min) {
    if (costs.empty()) throw std::invalid_argument("no cost kinds selected");
    for (auto c : costs) {
        if (c == CostKind::Tfim && n_min < 3) throw std::invalid_argument("tfim cost needs n >= 3");
    }
    if (n_min < 1) throw std::invalid_argument("n must be at least 1");
}

nlohmann::json cost_names(const std::vector<CostKind>& costs) {
    nlohmann::json j = nlohmann::json::array();
    for (auto c : costs) j.push_back(to_string(c));
    return j;
}

CsvTable cost_variance_table() {
    return CsvTable({"n", "L", "cost_kind", "entry_j", "entry_k", "hessian_var", "cost_var_mean", "cost_var_max",
                     "quad_form_gap", "transference_bound", "local_bound"});
}

struct PointResult {
    double var_hat = 0.0;
    double cost_var = 0.0;
};

// One (n, L, cost, entry) ensemble and its rows. Entries outside the
// parameter range are identically zero (the cost does not depend on them).
PointResult ensemble_point(const EnsembleSpec& spec, CsvTable& variance, CsvTable& cost_var) {
    const std::size_t m = spec.n * spec.depth;
    PointResult res;
    std::vector<std::string> row{cell(spec.n), cell(spec.depth), to_string(spec.cost), cell(spec.j), cell(spec.k),
                                 mode_cell(spec.shots), cell(spec.shots.value_or(0)), cell(spec.n_seeds)};
    if (spec.j >= m || spec.k >= m) {
        for (int i = 0; i < 3; ++i) row.push_back(cell(0.0));
        variance.add_row(std::move(row));
        cost_var.add_row({cell(spec.n), cell(spec.depth), to_string(spec.cost), cell(spec.j), cell(spec.k), cell(0.0),
                          cell(0.0), cell(0.0), cell(0.0), cell(0.0), ""});
        return res;
    }
    const auto stats = run_ensemble(spec);
    res.var_hat = stats.var_hat;
    res.cost_var = stats.cost_variance();
    row.push_back(cell(stats.var_hat));
    row.push_back(cell(stats.ci95.lo));
    row.push_back(cell(stats.ci95.hi));
    variance.add_row(std::move(row));

    const auto shifted = stats.shifted_cost_variances();
    const double max_var = *std::max_element(shifted.begin(), shifted.end());
    std::string local_bound;
    if (spec.cost != CostKind::Global) {
        const auto obs = make_cost_observable(spec.cost, spec.n);
        const auto graph = InteractionGraph::make(spec.family, spec.n);
        // Traced constant: (sum|w|)^2 = 1 times a per-term variance bound of 1.
        local_bound = cell(local_variance_bound(spec.n, obs.locality(), 2, spec.depth, graph, 1.0).bound);
    }
    cost_var.add_row({cell(spec.n), cell(spec.depth), to_string(spec.cost), cell(spec.j), cell(spec.k),
                      cell(stats.var_hat), cell(res.cost_var), cell(max_var),
                      cell(covariance_quadratic_check(stats, stats.rule)), cell(transference_bound(max_var, stats.rule)),
                      local_bound});
    return res;
}

void add_fit_rows(CsvTable& fits, CostKind cost, std::size_t j, std::size_t k, const std::string& quantity,
                  const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (y[i] > 0.0) {
            xs.push_back(x[i]);
            ys.push_back(y[i]);
        }
    }
    if (xs.size() < 3) return;
    for (auto model : {FitModel::ExpInN, FitModel::PowerInN}) {
        const auto f = fit_scaling(xs, ys, model);
        fits.add_row({to_string(cost), cell(j), cell(k), quantity, to_string(model), cell(f.first), cell(f.second),
                      cell(f.r_squared), cell(xs.size())});
    }
}

}  // namespace

ExperimentOutput run_scale(const ScaleConfig& c) {
    if (c.n_min > c.n_max) throw std::invalid_argument("--n-min must not exceed --n-max");
    if (c.seeds < 2) throw std::invalid_argument("need at least 2 seeds");
    check_cost_sizes(c.costs, c.n_min);
    ExperimentOutput out;
    CsvTable variance(ensemble_csv_header());
    CsvTable cost_var = cost_variance_table();
    CsvTable fits({"cost_kind", "entry_j", "entry_k", "quantity", "model", "c", "exponent", "r_squared", "points"});
    for (auto cost : c.costs) {
        for (const auto& [j, k] : hessian_entries(c.entry_j, c.entry_k)) {
            std::vector<double> ns, hv, cv;
            for (std::size_t n = c.n_min; n <= c.n_max; ++n) {
                EnsembleSpec spec;
                spec.n = n;
                spec.depth = c.depth;
                spec.family = c.family;
                spec.cost = cost;
                spec.j = j;
                spec.k = k;
                spec.n_seeds = c.seeds;
                spec.base_seed = c.base_seed;
                spec.shots = c.shots;
                spec.threads = c.threads;
                const auto r = ensemble_point(spec, variance, cost_var);
                ns.push_back(static_cast<double>(n));
                hv.push_back(r.var_hat);
                cv.push_back(r.cost_var);
            }
            add_fit_rows(fits, cost, j, k, "hessian", ns, hv);
            if (j == k) add_fit_rows(fits, cost, j, k, "cost", ns, cv);
        }
    }
    out.tables["variance"] = std::move(variance);
    out.tables["cost_variance"] = std::move(cost_var);
    out.tables["fits"] = std::move(fits);
    out.config = {{"costs", cost_names(c.costs)},
                  {"n_min", c.n_min},
                  {"n_max", c.n_max},
                  {"L", c.depth},
                  {"seeds", c.seeds},
                  {"entry", {c.entry_j, c.entry_k}},
                  {"graph_family", to_string(c.family)},
                  {"mode", mode_cell(c.shots)},
                  {"shots", c.shots.value_or(0)},
                  {"variance_estimator", "unbiased (n-1)"},
                  {"bootstrap_resamples", kDefaultBootstrapResamples},
                  {"initialization", "iid uniform [0, 2pi)"}};
    return out;
}

ExperimentOutput run_depth(const DepthConfig& c) {
    if (c.depth_min > c.depth_max) throw std::invalid_argument("--l-min must not exceed --l-max");
    if (c.seeds < 2) throw std::invalid_argument("need at least 2 seeds");
    check_cost_sizes(c.costs, c.n);
    ExperimentOutput out;
    CsvTable variance(ensemble_csv_header());
    CsvTable cost_var = cost_variance_table();
    for (auto cost : c.costs) {
        for (const auto& [j, k] : hessian_entries(c.entry_j, c.entry_k)) {
            for (std::size_t depth = c.depth_min; depth <= c.depth_max; ++depth) {
                EnsembleSpec spec;
                spec.n = c.n;
                spec.depth = depth;
                spec.family = c.family;
                spec.cost = cost;
                spec.j = j;
                spec.k = k;
                spec.n_seeds = c.seeds;
                spec.base_seed = c.base_seed;
                spec.shots = c.shots;
                spec.threads = c.threads;
                ensemble_point(spec, variance, cost_var);
            }
        }
    }
    out.tables["variance"] = std::move(variance);
    out.tables["cost_variance"] = std::move(cost_var);
    out.config = {{"costs", cost_names(c.costs)},
                  {"n", c.n},
                  {"L_min", c.depth_min},
                  {"L_max", c.depth_max},
                  {"seeds", c.seeds},
                  {"entry", {c.entry_j, c.entry_k}},
                  {"graph_family", to_string(c.family)},
                  {"mode", mode_cell(c.shots)},
                  {"shots", c.shots.value_or(0)},
                  {"variance_estimator", "unbiased (n-1)"},
                  {"bootstrap_resamples", kDefaultBootstrapResamples}};
    return out;
}

ExperimentOutput run_shots(const ShotsConfig& c) {
    if (c.ns.empty()) throw std::invalid_argument("no system sizes selected");
    if (c.shot_grid.size() < 3) throw std::invalid_argument("the two-term fit needs at least 3 shot counts");
    if (c.seeds < 2) throw std::invalid_argument("need at least 2 seeds");
    if (!(c.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    check_cost_sizes(c.costs, *std::min_element(c.ns.begin(), c.ns.end()));
    for (auto s : c.shot_grid) {
        if (s == 0) throw std::invalid_argument("shot counts must be positive");
    }
    ExperimentOutput out;
    CsvTable variance(ensemble_csv_header());
    CsvTable noise({"n", "L", "cost_kind", "entry_j", "entry_k", "shots", "var_total", "mean_shot_var",
                    "exact_var"});
    CsvTable fit_table({"n", "L", "cost_kind", "entry_j", "entry_k", "a", "b", "r_squared", "exact_var",
                        "exact_ci_lo", "exact_ci_hi", "c_s", "epsilon", "n_eps"});
    for (auto cost : c.costs) {
        for (std::size_t n : c.ns) {
            EnsembleSpec spec;
            spec.n = n;
            spec.depth = c.depth;
            spec.family = c.family;
            spec.cost = cost;
            spec.j = c.entry_j;
            spec.k = c.entry_k;
            spec.n_seeds = c.seeds;
            spec.base_seed = c.base_seed;
            spec.threads = c.threads;
            const auto exact = run_ensemble(spec);
            variance.add_row({cell(n), cell(c.depth), to_string(cost), cell(spec.j), cell(spec.k), "exact", cell(std::size_t{0}),
                              cell(c.seeds), cell(exact.var_hat), cell(exact.ci95.lo), cell(exact.ci95.hi)});
            std::vector<double> xs, ys;
            for (std::size_t shots : c.shot_grid) {
                spec.shots = shots;
                const auto st = run_ensemble(spec);
                variance.add_row({cell(n), cell(c.depth), to_string(cost), cell(spec.j), cell(spec.k), "shots",
                                  cell(shots), cell(c.seeds), cell(st.var_hat), cell(st.ci95.lo), cell(st.ci95.hi)});
                noise.add_row({cell(n), cell(c.depth), to_string(cost), cell(spec.j), cell(spec.k), cell(shots),
                               cell(st.var_hat), cell(st.mean_shot_variance()), cell(exact.var_hat)});
                xs.push_back(static_cast<double>(shots));
                ys.push_back(st.var_hat);
            }
            const auto fit = fit_scaling(xs, ys, FitModel::TwoTermInShots);
            const auto n_eps = absolute_shots(c.epsilon, fit);
            fit_table.add_row({cell(n), cell(c.depth), to_string(cost), cell(spec.j), cell(spec.k), cell(fit.a()),
                               cell(fit.b()), cell(fit.r_squared), cell(exact.var_hat), cell(exact.ci95.lo),
                               cell(exact.ci95.hi), cell(exact.rule.c_s()), cell(c.epsilon),
                               n_eps ? cell(*n_eps) : std::string("unreachable")});
        }
    }
    out.tables["variance"] = std::move(variance);
    out.tables["shot_noise"] = std::move(noise);
    out.tables["shot_fit"] = std::move(fit_table);
    out.config = {{"costs", cost_names(c.costs)},
                  {"ns", c.ns},
                  {"L", c.depth},
                  {"seeds", c.seeds},
                  {"shot_grid", c.shot_grid},
                  {"entry", {c.entry_j, c.entry_k}},
                  {"epsilon", c.epsilon},
                  {"graph_family", to_string(c.family)},
                  {"shot_protocol", "fresh shots per shifted evaluation; N shots per measurement group"},
                  {"two_term_fit", "nonnegative least squares, residuals relative to each variance"}};
    return out;
}

ExperimentOutput run_spectrum(const SpectrumConfig& c) {
    if (c.ns.empty()) throw std::invalid_argument("no system sizes selected");
    if (c.seeds < 1) throw std::invalid_argument("need at least 1 seed");
    check_cost_sizes(c.costs, *std::min_element(c.ns.begin(), c.ns.end()));
    ExperimentOutput out;
    CsvTable eig({"cost_kind", "n", "L", "seed", "index", "eigenvalue"});
    CsvTable summary({"cost_kind", "n", "L", "n_seeds", "M", "epsilon", "lambda_rms", "deg_eps"});
    for (auto cost : c.costs) {
        for (std::size_t n : c.ns) {
            const Circuit circuit = build_hardware_efficient(n, c.depth, c.family);
            if (circuit.param_count > kDefaultHessianCap) {
                throw std::invalid_argument("M = " + std::to_string(circuit.param_count) + " exceeds the Hessian cap " +
                                            std::to_string(kDefaultHessianCap));
            }
            if (circuit.param_count == 0) throw std::invalid_argument("spectrum needs at least one parameter");
            const Observable obs = make_cost_observable(cost, n);
            std::vector<SpectralSummary> per_seed(c.seeds);
            parallel_for(c.seeds, c.threads, [&](std::size_t s) {
                const auto theta = draw_initialization(circuit.param_count, c.base_seed, s);
                per_seed[s] = hessian_spectrum(circuit, obs, theta, c.epsilon);
            });
            for (std::size_t s = 0; s < c.seeds; ++s) {
                for (std::size_t i = 0; i < per_seed[s].eigenvalues.size(); ++i) {
                    eig.add_row({to_string(cost), cell(n), cell(c.depth), cell(s), cell(i),
                                 cell(per_seed[s].eigenvalues[i])});
                }
            }
            const auto pooled = pool_spectra(per_seed);
            summary.add_row({to_string(cost), cell(n), cell(c.depth), cell(c.seeds), cell(circuit.param_count),
                             cell(c.epsilon), cell(pooled.lambda_rms), cell(pooled.deg_eps)});
        }
    }
    out.tables["eigenvalues"] = std::move(eig);
    out.tables["spectral_summary"] = std::move(summary);
    out.config = {{"costs", cost_names(c.costs)}, {"ns", c.ns},           {"L", c.depth},
                  {"seeds", c.seeds},             {"epsilon", c.epsilon}, {"graph_family", to_string(c.family)}};
    return out;
}

ExperimentOutput run_optimize(const OptimizeConfig& c) {
    check_cost_sizes(c.costs, c.n);
    if (c.optimizers.empty()) throw std::invalid_argument("no optimizers selected");
    ExperimentOutput out;
    CsvTable traj_table({"optimizer", "cost_kind", "n", "L", "shots", "step_size", "iteration", "mean_cost",
                         "std_cost"});
    CsvTable seeds_table({"optimizer", "cost_kind", "seed", "iteration", "cost"});
    nlohmann::json accounting = nlohmann::json::array();
    for (auto opt : c.optimizers) {
        for (auto cost : c.costs) {
            TrajectoryConfig t = TrajectoryConfig::defaults(opt);
            t.n = c.n;
            t.depth = c.depth;
            t.family = c.family;
            t.cost = cost;
            t.step_size = opt == Optimizer::Sgd ? c.sgd_step : c.qng_step;
            t.shots = c.shots;
            t.iterations = c.iterations;
            t.n_seeds = c.seeds;
            t.lambda_reg = c.lambda_reg;
            t.base_seed = c.base_seed;
            t.threads = c.threads;
            const auto tr = run_trajectory(t);
            for (const auto& r : tr.records) {
                traj_table.add_row({to_string(opt), to_string(cost), cell(c.n), cell(c.depth),
                                    cell(c.shots.value_or(0)), cell(t.step_size), cell(r.iteration),
                                    cell(r.mean_cost), cell(r.std_cost)});
            }
            for (std::size_t s = 0; s < tr.seed_costs.size(); ++s) {
                for (std::size_t it = 0; it < tr.seed_costs[s].size(); ++it) {
                    seeds_table.add_row({to_string(opt), to_string(cost), cell(s), cell(it),
                                         cell(tr.seed_costs[s][it])});
                }
            }
            accounting.push_back({{"optimizer", to_string(opt)},
                                  {"cost_kind", to_string(cost)},
                                  {"gradient_shifted_evaluations_per_iteration", tr.shifted_evaluations_per_iteration},
                                  {"gradient_shots_per_iteration", tr.shots_per_iteration},
                                  {"metric_shots_per_iteration", 0},
                                  {"metric", opt == Optimizer::Qng ? "exact Fubini-Study from derivative states"
                                                                   : "none"}});
        }
    }
    out.tables["trajectory"] = std::move(traj_table);
    out.tables["seed_costs"] = std::move(seeds_table);
    out.extra = {{"oracle_accounting", accounting}};
    nlohmann::json opts = nlohmann::json::array();
    for (auto o : c.optimizers) opts.push_back(to_string(o));
    out.config = {{"costs", cost_names(c.costs)},
                  {"optimizers", opts},
                  {"n", c.n},
                  {"L", c.depth},
                  {"shots", c.shots ? nlohmann::json(*c.shots) : nlohmann::json("exact")},
                  {"iterations", c.iterations},
                  {"seeds", c.seeds},
                  {"sgd_step", c.sgd_step},
                  {"qng_step", c.qng_step},
                  {"lambda_reg", c.lambda_reg},
                  {"graph_family", to_string(c.family)},
                  {"reported_cost", "exact (noiseless)"},
                  {"hyperparameters", "artifact defaults; not specified by the source experiments"}};
    return out;
}

namespace {

// (cost_kind, n, L, diagonal?) -> exact-mode variance from a prior ensemble CSV.
using EmpiricalKey = std::tuple<std::string, std::size_t, std::size_t, bool>;

std::map<EmpiricalKey, double> load_empirical(const std::vector<std::filesystem::path>& paths) {
    std::map<EmpiricalKey, double> out;
    for (const auto& p : paths) {
        if (!std::filesystem::exists(p)) throw std::runtime_error("missing referenced CSV: " + p.string());
        const auto t = CsvTable::read(p);
        const auto cn = t.column("n"), cl = t.column("L"), cc = t.column("cost_kind"), cj = t.column("entry_j"),
                   ck = t.column("entry_k"), cm = t.column("mode"), cv = t.column("var_hat");
        for (const auto& row : t.rows()) {
            if (row[cm] != "exact") continue;
            const EmpiricalKey key{row[cc], std::stoul(row[cn]), std::stoul(row[cl]), row[cj] == row[ck]};
            out[key] = std::stod(row[cv]);
        }
    }
    return out;
}

}  // namespace

ExperimentOutput run_bounds(const BoundsConfig& c) {
    if (c.ns.empty() || c.depths.empty() || c.etas.empty()) throw std::invalid_argument("empty bounds grid");
    const auto empirical = load_empirical(c.empirical_csvs);
    ExperimentOutput out;
    CsvTable table({"regime", "n", "L", "graph_family", "k", "r", "eta", "entry", "V_G", "dep_max_degree",
                    "variance_bound", "transference_bound", "empirical_variance", "resolution_shots",
                    "resolution_shots_at_bound", "sound"});
    nlohmann::json reports = nlohmann::json::array();
    for (auto regime : {Regime::Local, Regime::Global}) {
        for (std::size_t n : c.ns) {
            for (std::size_t depth : c.depths) {
                for (bool diagonal : {true, false}) {
                    for (double eta : c.etas) {
                        BoundInputs in;
                        in.n = n;
                        in.k = regime == Regime::Local ? c.k : n;
                        in.r = c.r;
                        in.depth = depth;
                        in.family = c.family;
                        in.eta = eta;
                        in.c_loc = c.c_loc;
                        in.sigma_sq = c.sigma_sq;
                        in.diagonal_entry = diagonal;
                        std::optional<double> emp;
                        const EmpiricalKey key{regime == Regime::Local ? "local" : "global", n, depth, diagonal};
                        if (auto it = empirical.find(key); it != empirical.end()) emp = it->second;
                        const auto rep = make_bound_report(regime, in, emp);
                        reports.push_back(to_json(rep));
                        table.add_row({to_string(regime), cell(n), cell(depth), to_string(c.family), cell(in.k),
                                       cell(c.r), cell(eta), diagonal ? "diagonal" : "off_diagonal",
                                       cell(rep.growth_value), cell(rep.dep_max_degree), cell(rep.variance_bound),
                                       cell(rep.transference), emp ? cell(*emp) : "",
                                       rep.resolution_shots ? cell(*rep.resolution_shots) : "",
                                       rep.resolution_shots_at_bound ? cell(*rep.resolution_shots_at_bound) : "",
                                       rep.sound ? (*rep.sound ? "true" : "false") : ""});
                    }
                }
            }
        }
    }
    nlohmann::json abs_shots = nlohmann::json::array();
    for (bool diagonal : {true, false}) {
        const auto rule = diagonal ? ShiftRule::diagonal(0) : ShiftRule::off_diagonal(0, 1);
        const auto n_eps = absolute_shots(c.epsilon, rule, c.sigma_sq);
        abs_shots.push_back({{"entry", diagonal ? "diagonal" : "off_diagonal"},
                             {"c_s", rule.c_s()},
                             {"epsilon", c.epsilon},
                             {"sigma_sq", c.sigma_sq},
                             {"n_eps_noise_only", n_eps ? nlohmann::json(*n_eps) : nlohmann::json("unreachable")}});
    }
    out.tables["bounds"] = std::move(table);
    out.extra = {{"reports", reports}, {"absolute_shots", abs_shots}};
    nlohmann::json csvs = nlohmann::json::array();
    for (const auto& p : c.empirical_csvs) csvs.push_back(p.string());
    out.config = {{"ns", c.ns},
                  {"depths", c.depths},
                  {"graph_family", to_string(c.family)},
                  {"k", c.k},
                  {"r", c.r},
                  {"etas", c.etas},
                  {"epsilon", c.epsilon},
                  {"c_loc", c.c_loc},
                  {"sigma_sq", c.sigma_sq},
                  {"empirical_csvs", csvs}};
    return out;
}

}  // namespace plateau
