#include "plateau/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "plateau/derivatives.hpp"
#include "plateau/ensemble.hpp"
#include "plateau/rng.hpp"
#include "plateau/stats.hpp"
#include "plateau/statevector.hpp"

namespace plateau {

DependencyGraph build_dependency_graph(const Observable& obs, const InteractionGraph& graph, std::size_t r,
                                       std::size_t depth) {
    if (!obs.term_wise_local()) throw std::invalid_argument("dependency graph needs a term-wise local observable");
    if (graph.n_vertices() != obs.n_qubits()) throw std::invalid_argument("graph / observable size mismatch");
    const auto& terms = obs.terms();
    DependencyGraph dep;
    dep.threshold = obs.locality() + 2 * r * depth;
    dep.adjacency.resize(terms.size());
    std::vector<std::vector<std::size_t>> supports;
    supports.reserve(terms.size());
    for (const auto& t : terms) supports.push_back(t.support());
    for (std::size_t v = 0; v < terms.size(); ++v) {
        for (std::size_t w = v + 1; w < terms.size(); ++w) {
            const auto d = graph_distance(graph, supports[v], supports[w]);
            if (d && *d <= dep.threshold) {
                dep.adjacency[v].push_back(w);
                dep.adjacency[w].push_back(v);
            }
        }
    }
    for (const auto& adj : dep.adjacency) dep.max_degree = std::max(dep.max_degree, adj.size());
    return dep;
}

std::optional<std::size_t> growth_dimension(GraphFamily family) {
    switch (family) {
        case GraphFamily::Chain:
        case GraphFamily::Ring: return 1;
        case GraphFamily::Grid2D: return 2;
        case GraphFamily::Complete: return std::nullopt;
    }
    return std::nullopt;
}

LocalBound local_variance_bound(std::size_t n, std::size_t k, std::size_t r, std::size_t depth,
                                const InteractionGraph& graph, double c_loc) {
    if (n == 0) throw std::invalid_argument("local bound needs n >= 1");
    if (c_loc < 0.0) throw std::invalid_argument("c_loc must be nonnegative");
    LocalBound b;
    b.radius = k + 2 * r * depth;
    b.growth = growth_function(graph, b.radius);
    b.bound = c_loc * static_cast<double>(b.growth) / static_cast<double>(n);
    if (const auto dim = growth_dimension(graph.family())) {
        b.polynomial_form = c_loc * std::pow(static_cast<double>(b.radius), static_cast<double>(*dim)) /
                            static_cast<double>(n);
    }
    return b;
}

double dependency_variance_bound(const DependencyGraph& dep, double per_term_var_bound, std::size_t n) {
    if (n == 0) throw std::invalid_argument("dependency bound needs n >= 1");
    if (per_term_var_bound < 0.0 || per_term_var_bound > 1.0) {
        throw std::invalid_argument("per-term variance bound must lie in [0, 1]");
    }
    return static_cast<double>(dep.max_degree + 1) * per_term_var_bound / static_cast<double>(n);
}

CovarianceCutoff covariance_cutoff_check(const Circuit& circuit, const PauliTerm& a, const PauliTerm& b,
                                         std::size_t n_seeds, std::uint64_t base_seed, std::size_t threads) {
    if (a.is_identity() || b.is_identity()) throw std::invalid_argument("cutoff check needs non-identity terms");
    const auto sa = a.support();
    const auto sb = b.support();
    CovarianceCutoff out;
    out.distance = graph_distance(circuit.graph, sa, sb);
    out.beyond_cutoff = !out.distance || *out.distance > 2 * circuit.gate_locality * circuit.depth;

    const auto cone_a = backward_lightcone(circuit, sa);
    const auto cone_b = backward_lightcone(circuit, sb);
    std::vector<std::size_t> shared;
    std::set_intersection(cone_a.params.begin(), cone_a.params.end(), cone_b.params.begin(), cone_b.params.end(),
                          std::back_inserter(shared));
    out.parameter_sets_disjoint = shared.empty();

    const auto obs_a = make_single_term(circuit.n_qubits, a);
    const auto obs_b = make_single_term(circuit.n_qubits, b);
    const auto xa = cost_samples(circuit, obs_a, n_seeds, base_seed, {}, threads);
    const auto xb = cost_samples(circuit, obs_b, n_seeds, base_seed, {}, threads);
    out.covariance = sample_covariance(xa, xb);
    out.standard_error = covariance_standard_error(xa, xb);
    return out;
}

double transference_bound(double v, const ShiftRule& rule) {
    if (v < 0.0) throw std::invalid_argument("variance must be nonnegative");
    const double s = rule.abs_weight_sum();
    return s * s * v;
}

double haar_variance_formula(const Observable& obs) {
    if (obs.n_qubits() > kHaarMaxQubits) throw std::invalid_argument("Haar oracle supports at most 10 qubits");
    // Merge equal Pauli strings; distinct non-identity strings are trace-orthogonal,
    // so Tr(O^2)/d is the sum of squared merged weights and Tr(O)/d the identity weight.
    std::map<std::pair<std::uint64_t, std::uint64_t>, double> merged;
    for (const auto& t : obs.terms()) merged[{t.x_mask(), t.z_mask()}] += t.coeff;
    double trace_per_dim = 0.0;
    double square_per_dim = 0.0;
    for (const auto& [key, c] : merged) {
        if (key.first == 0 && key.second == 0) trace_per_dim = c;
        square_per_dim += c * c;
    }
    const double d = std::ldexp(1.0, static_cast<int>(obs.n_qubits()));
    return (square_per_dim - trace_per_dim * trace_per_dim) / (d + 1.0);
}

HaarOracle haar_variance_oracle(const Observable& obs, std::size_t n_samples, std::uint64_t seed) {
    if (n_samples < 3) throw std::invalid_argument("Haar Monte Carlo needs at least 3 samples");
    HaarOracle out;
    out.formula = haar_variance_formula(obs);
    const std::size_t dim = std::size_t{1} << obs.n_qubits();
    Rng rng(seed);
    std::vector<double> values(n_samples);
    std::vector<cplx> amps(dim);
    for (auto& v : values) {
        double norm_sq = 0.0;
        for (auto& a : amps) {
            const double re = rng.normal();
            const double im = rng.normal();
            a = {re, im};
            norm_sq += re * re + im * im;
        }
        const double inv = 1.0 / std::sqrt(norm_sq);
        std::vector<cplx> normalized(amps);
        for (auto& a : normalized) a *= inv;
        v = expectation(Statevector::from_amplitudes(std::move(normalized)), obs);
    }
    out.monte_carlo = sample_variance(values);
    out.standard_error = variance_standard_error(values);
    return out;
}

NormScaleBounds norm_scale_bounds(double entry_var_bound, double entry_mean_bound, std::size_t m) {
    if (entry_var_bound < 0.0 || entry_mean_bound < 0.0) throw std::invalid_argument("bounds must be nonnegative");
    const double second_moment = entry_var_bound + entry_mean_bound * entry_mean_bound;
    const double md = static_cast<double>(m);
    return {md * md * second_moment, md * std::sqrt(second_moment)};
}

namespace {

// ceil that forgives ratios a hair above an integer from rounding in the inputs.
double tolerant_ceil_real(double x) { return std::max(1.0, std::ceil(x * (1.0 - 1e-12))); }

std::size_t tolerant_ceil(double x) {
    const double c = tolerant_ceil_real(x);
    if (!(c < 0x1.0p63)) throw std::overflow_error("shot count exceeds 64-bit range");
    return static_cast<std::size_t>(c);
}

}  // namespace

std::optional<double> resolution_shots_real(double var, const ShiftRule& rule, double sigma_sq, double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must lie in (0, 1]");
    if (sigma_sq < 0.0) throw std::invalid_argument("sigma^2 must be nonnegative");
    if (!(var > 0.0)) return std::nullopt;
    return tolerant_ceil_real(rule.c_s() * sigma_sq / (eta * var));
}

std::optional<std::size_t> resolution_shots(double var, const ShiftRule& rule, double sigma_sq, double eta) {
    const auto real = resolution_shots_real(var, rule, sigma_sq, eta);
    if (!real) return std::nullopt;
    return tolerant_ceil(*real);
}

std::optional<std::size_t> absolute_shots(double epsilon, double a, double b) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (a < 0.0 || b < 0.0) throw std::invalid_argument("two-term model needs nonnegative a and b");
    const double target = epsilon * epsilon;
    if (b == 0.0) return a <= target ? std::optional<std::size_t>(1) : std::nullopt;
    if (a >= target) return std::nullopt;
    return tolerant_ceil(b / (target - a));
}

std::optional<std::size_t> absolute_shots(double epsilon, const FitResult& fit) {
    if (fit.model != FitModel::TwoTermInShots) throw std::invalid_argument("absolute shots need a two-term fit");
    return absolute_shots(epsilon, fit.a(), fit.b());
}

std::optional<std::size_t> absolute_shots(double epsilon, const ShiftRule& rule, double sigma_sq) {
    return absolute_shots(epsilon, 0.0, rule.c_s() * sigma_sq);
}

std::string to_string(Regime regime) { return regime == Regime::Global ? "global" : "local"; }

BoundReport make_bound_report(Regime regime, const BoundInputs& in, std::optional<double> empirical_variance) {
    if (in.n == 0) throw std::invalid_argument("bound report needs n >= 1");
    const auto graph = InteractionGraph::make(in.family, in.n);
    const auto rule = in.diagonal_entry ? ShiftRule::diagonal(0) : ShiftRule::off_diagonal(0, 1);
    BoundReport rep;
    rep.regime = regime;
    rep.inputs = in;
    rep.transference = transference_bound(in.sigma_sq, rule);
    if (regime == Regime::Local) {
        const auto lb = local_variance_bound(in.n, in.k, in.r, in.depth, graph, in.c_loc);
        rep.growth_value = lb.growth;
        rep.variance_bound = lb.bound;
        rep.dep_max_degree = build_dependency_graph(make_local_z_average(in.n), graph, in.r, in.depth).max_degree;
    } else {
        rep.growth_value = growth_function(graph, in.n + 2 * in.r * in.depth);
        rep.dep_max_degree = 0;
        const double d = std::ldexp(1.0, static_cast<int>(std::min<std::size_t>(in.n, 1000)));
        rep.variance_bound = transference_bound(1.0 / (d + 1.0), rule);
    }
    rep.resolution_shots_at_bound = resolution_shots_real(rep.variance_bound, rule, in.sigma_sq, in.eta);
    if (empirical_variance) {
        rep.empirical_variance = empirical_variance;
        try {
            rep.resolution_shots = resolution_shots(*empirical_variance, rule, in.sigma_sq, in.eta);
        } catch (const std::overflow_error&) {
            rep.resolution_overflow = true;
        }
        rep.sound = *empirical_variance <= rep.variance_bound;
    }
    return rep;
}

nlohmann::json to_json(const BoundReport& r) {
    nlohmann::json j;
    j["regime"] = to_string(r.regime);
    j["inputs"] = {{"n", r.inputs.n},
                   {"k", r.inputs.k},
                   {"r", r.inputs.r},
                   {"L", r.inputs.depth},
                   {"graph_family", to_string(r.inputs.family)},
                   {"eta", r.inputs.eta},
                   {"c_loc", r.inputs.c_loc},
                   {"sigma_sq", r.inputs.sigma_sq},
                   {"entry", r.inputs.diagonal_entry ? "diagonal" : "off_diagonal"}};
    j["V_G"] = r.growth_value;
    j["dep_max_degree"] = r.dep_max_degree;
    j["variance_bound"] = r.variance_bound;
    j["transference_bound"] = r.transference;
    auto opt_num = [](const auto& v) -> nlohmann::json { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    j["empirical_variance"] = opt_num(r.empirical_variance);
    j["resolution_shots"] = r.empirical_variance ? opt_num(r.resolution_shots) : nlohmann::json(nullptr);
    j["resolution_shots_at_bound"] = opt_num(r.resolution_shots_at_bound);
    if (r.empirical_variance && !r.resolution_shots) {
        j["resolution_status"] = r.resolution_overflow ? "beyond_64bit_budget" : "unresolvable";
    }
    j["sound"] = opt_num(r.sound);
    return j;
}

}  // namespace plateau
