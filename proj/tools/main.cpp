// Command-line surface: graph generation, equilibrium reports, Gibbs/bound
// sweeps, minimal-rationality solving, and trajectory simulation.
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "coordlab/dynamics.hpp"
#include "coordlab/equilibrium.hpp"
#include "coordlab/errors.hpp"
#include "coordlab/game.hpp"
#include "coordlab/graph.hpp"

namespace {

using coordlab::ActionProfile;
using coordlab::GameSpec;
using coordlab::Graph;
using nlohmann::json;

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open graph file: " + path);
    json j;
    in >> j;
    return coordlab::graph_from_json(j);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    out << text;
}

void check_feasible(int n, int k) {
    if (k < 2 || k > n - 1)
        throw coordlab::InfeasibleDegree("degree must satisfy 2 <= k <= n-1");
    if (n % 2 == 1 && k % 2 == 1)
        throw coordlab::InfeasibleDegree("n*k must be even: no regular graph exists");
}

std::vector<double> beta_grid(double lo, double hi, int count, const std::string& scale) {
    if (count < 1) throw std::invalid_argument("beta count must be >= 1");
    if (!(lo >= 0)) throw std::invalid_argument("beta grid must be nonnegative");
    if (hi < lo) throw std::invalid_argument("beta grid max must be >= min");
    if (scale == "log" && !(lo > 0))
        throw std::invalid_argument("log-scale beta grid needs min > 0");
    std::vector<double> grid;
    grid.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
        grid.push_back(scale == "log" ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t);
    }
    return grid;
}

std::string format_row(int n, int k, double theta, double beta, double g_exact,
                       double g_lower_bound, double expected_potential) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", n, k, theta,
                  beta, g_exact, g_lower_bound, expected_potential);
    return buf;
}

void cmd_graph_gen(int n, int k, const std::string& out_path) {
    const Graph g = coordlab::generate_circulant(n, k);
    write_text(out_path, coordlab::graph_to_json(g).dump(2) + "\n");
    const coordlab::Spectrum s = coordlab::spectrum(g);
    std::printf("wrote %s: n=%d k=%d edges=%lld\n", out_path.c_str(), g.vertex_count(),
                g.degree(), static_cast<long long>(g.edge_count()));
    std::printf("lambda_1 = %.12g  multiplicity = %d\n", s.eigenvalues(0),
                s.multiplicity_of_top);
}

void cmd_equilibria(const std::string& graph_path, double theta,
                    const std::string& out_path) {
    const GameSpec spec{load_graph(graph_path), theta};
    const json j = coordlab::report_to_json(spec, coordlab::enumerate_maximizers(spec));
    std::cout << j.dump(2) << "\n";
    if (!out_path.empty()) write_text(out_path, j.dump(2) + "\n");
}

void cmd_sweep(int n, double theta, const std::vector<int>& degrees, double bmin,
               double bmax, int bcount, const std::string& scale,
               std::optional<double> delta, const std::string& out_path) {
    if (degrees.empty()) throw std::invalid_argument("at least one degree is required");
    for (int k : degrees) check_feasible(n, k);  // reject before any computation
    const std::vector<double> betas = beta_grid(bmin, bmax, bcount, scale);

    std::string csv = "n,k,theta,beta,g_exact,g_lower_bound,expected_potential\n";
    for (int k : degrees) {
        const GameSpec spec{coordlab::generate_circulant(n, k), theta};
        const bool degenerate = coordlab::is_degenerate_theta(spec);
        const bool zeros_optimal = theta > coordlab::theta_threshold(spec);
        for (double beta : betas) {
            const coordlab::GibbsTable t = coordlab::gibbs_exact(spec, beta);
            const double g_exact =
                degenerate ? t.consensus_mass_0 + t.consensus_mass_1
                           : (zeros_optimal ? t.consensus_mass_0 : t.consensus_mass_1);
            csv += format_row(n, k, theta, beta, g_exact,
                              coordlab::gibbs_lower_bound(n, k, theta, beta),
                              t.expected_potential);
        }
        if (delta) {
            const double bisected = coordlab::beta_min(spec, *delta);
            const double closed = coordlab::beta_bound_closed_form(n, k, theta, *delta);
            std::printf("k=%d beta_min=%.17g closed_form_bound=%.17g\n", k, bisected,
                        closed);
        }
    }
    write_text(out_path, csv);
}

void cmd_beta_min(const std::string& graph_path, double theta, double delta,
                  const std::string& out_path) {
    const GameSpec spec{load_graph(graph_path), theta};
    const double bisected = coordlab::beta_min(spec, delta);
    const double closed = coordlab::beta_bound_closed_form(
        spec.graph.vertex_count(), spec.graph.degree(), theta, delta);
    std::printf("beta_min = %.12g  closed_form_bound = %.12g\n", bisected, closed);
    // The closed form must dominate the bisection value up to the bisection
    // width.
    if (closed < bisected - 1e-6)
        throw std::runtime_error("closed-form bound fell below the bisection value");
    const json j{{"beta_min", bisected},
                 {"closed_form_bound", closed},
                 {"theta", theta},
                 {"delta", delta}};
    std::cout << j.dump(2) << "\n";
    if (!out_path.empty()) write_text(out_path, j.dump(2) + "\n");
}

void cmd_simulate(const std::string& graph_path, double theta, double beta,
                  std::int64_t steps, std::uint64_t seed, int replicas,
                  std::optional<std::int64_t> burn_in, const std::string& init_hex,
                  const std::string& out_path) {
    const GameSpec spec{load_graph(graph_path), theta};
    coordlab::LLLConfig cfg;
    cfg.beta = beta;
    cfg.steps = steps;
    cfg.seed = seed;
    cfg.replicas = replicas;
    cfg.burn_in = burn_in;
    if (!init_hex.empty())
        cfg.initial_profile = ActionProfile::from_hex(init_hex, spec.graph.vertex_count());
    const coordlab::TrajectoryStats stats = coordlab::simulate(spec, cfg);

    json j{{"visit_fraction_at_astar", stats.visit_fraction_at_astar},
           {"final_profile", stats.final_profile.to_hex()},
           {"theta", theta},
           {"beta", beta},
           {"steps", steps},
           {"seed", seed},
           {"replicas", replicas},
           {"burn_in", burn_in ? *burn_in : coordlab::default_burn_in(steps)}};
    if (!stats.empirical_distribution.empty())
        j["empirical_distribution"] = stats.empirical_distribution;
    std::cout << j.dump(2) << "\n";
    if (!out_path.empty()) write_text(out_path, j.dump(2) + "\n");
}

void cmd_bound(int n, int k, double theta, double beta, std::optional<double> delta) {
    json j{{"n", n},
           {"k", k},
           {"theta", theta},
           {"beta", beta},
           {"lower_bound", coordlab::gibbs_lower_bound(n, k, theta, beta)},
           {"log_lower_bound", coordlab::log_gibbs_lower_bound(n, k, theta, beta)}};
    if (delta) {
        j["delta"] = *delta;
        j["beta_bound"] = coordlab::beta_bound_closed_form(n, k, theta, *delta);
    }
    std::cout << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coordination games on regular graphs: exact potentials, "
                 "stationary analysis, and learning dynamics"};
    app.require_subcommand(1);

    // graph gen
    auto* graph_cmd = app.add_subcommand("graph", "graph construction utilities");
    graph_cmd->require_subcommand(1);
    auto* gen = graph_cmd->add_subcommand("gen", "generate a canonical circulant graph");
    int gen_n = 0, gen_k = 0;
    std::string gen_out = "graph.json";
    gen->add_option("--n", gen_n, "vertex count")->required();
    gen->add_option("--k", gen_k, "degree")->required();
    gen->add_option("--out", gen_out, "output JSON path (default graph.json)");
    gen->callback([&] { cmd_graph_gen(gen_n, gen_k, gen_out); });

    // equilibria
    auto* eq = app.add_subcommand("equilibria",
                                  "exhaustive Nash and potential-maximizer report");
    std::string eq_graph, eq_out;
    double eq_theta = 0;
    eq->add_option("--graph", eq_graph, "graph JSON path")->required();
    eq->add_option("--theta", eq_theta, "task difficulty")->required();
    eq->add_option("--out", eq_out, "also write the JSON report here");
    eq->callback([&] { cmd_equilibria(eq_graph, eq_theta, eq_out); });

    // sweep
    auto* sweep = app.add_subcommand(
        "sweep", "per-(k, beta) stationary masses, bounds, and expected potential");
    int sw_n = 0, sw_count = 0;
    double sw_theta = 0, sw_bmin = 0, sw_bmax = 0;
    std::vector<int> sw_degrees;
    std::string sw_scale = "linear", sw_out = "sweep.csv", sw_spec;
    double sw_delta_value = 0;
    auto* spec_opt = sweep->add_option("--spec", sw_spec, "sweep spec JSON file");
    auto* n_opt = sweep->add_option("--n", sw_n, "vertex count");
    sweep->add_option("--theta", sw_theta, "task difficulty");
    sweep->add_option("--degrees", sw_degrees, "degrees to sweep");
    sweep->add_option("--beta-min", sw_bmin, "beta grid start");
    sweep->add_option("--beta-max", sw_bmax, "beta grid end");
    sweep->add_option("--beta-count", sw_count, "beta grid size");
    sweep->add_option("--beta-scale", sw_scale, "linear or log")
        ->check(CLI::IsMember({"linear", "log"}));
    auto* delta_opt =
        sweep->add_option("--delta", sw_delta_value,
                          "also print beta_min and the closed-form bound per degree");
    sweep->add_option("--out", sw_out, "output CSV path (default sweep.csv)");
    spec_opt->excludes(n_opt);
    sweep->callback([&] {
        std::optional<double> delta;
        if (*delta_opt) delta = sw_delta_value;
        if (!sw_spec.empty()) {
            std::ifstream in(sw_spec);
            if (!in) throw std::invalid_argument("cannot open sweep spec: " + sw_spec);
            json j;
            in >> j;
            const auto& betas = j.at("betas");
            if (j.contains("delta")) delta = j["delta"].get<double>();
            cmd_sweep(j.at("n").get<int>(), j.at("theta").get<double>(),
                      j.at("degrees").get<std::vector<int>>(),
                      betas.at("min").get<double>(), betas.at("max").get<double>(),
                      betas.at("count").get<int>(),
                      betas.value("scale", std::string("linear")), delta,
                      j.value("output_path", std::string("sweep.csv")));
        } else {
            cmd_sweep(sw_n, sw_theta, sw_degrees, sw_bmin, sw_bmax, sw_count, sw_scale,
                      delta, sw_out);
        }
    });

    // beta-min
    auto* bm = app.add_subcommand(
        "beta-min", "bisect the smallest beta reaching stationary mass 1 - delta");
    std::string bm_graph, bm_out;
    double bm_theta = 0, bm_delta = 0;
    bm->add_option("--graph", bm_graph, "graph JSON path")->required();
    bm->add_option("--theta", bm_theta, "task difficulty")->required();
    bm->add_option("--delta", bm_delta, "target miss probability")->required();
    bm->add_option("--out", bm_out, "also write the JSON result here");
    bm->callback([&] { cmd_beta_min(bm_graph, bm_theta, bm_delta, bm_out); });

    // simulate
    auto* sim = app.add_subcommand("simulate", "run asynchronous softmax revisions");
    std::string sim_graph, sim_init, sim_out;
    double sim_theta = 0, sim_beta = 0;
    std::int64_t sim_steps = 0, sim_burn_value = 0;
    std::uint64_t sim_seed = 0;
    int sim_replicas = 1;
    sim->add_option("--graph", sim_graph, "graph JSON path")->required();
    sim->add_option("--theta", sim_theta, "task difficulty")->required();
    sim->add_option("--beta", sim_beta, "rationality")->required();
    sim->add_option("--steps", sim_steps, "revisions per replica")->required();
    sim->add_option("--seed", sim_seed, "master seed")->required();
    sim->add_option("--replicas", sim_replicas, "independent chains (default 1)");
    auto* burn_opt = sim->add_option("--burn-in", sim_burn_value,
                                     "discarded prefix (default max(steps/100, 10^4))");
    sim->add_option("--init", sim_init, "initial profile as hex (default uniform random)");
    sim->add_option("--out", sim_out, "also write the JSON stats here");
    sim->callback([&] {
        std::optional<std::int64_t> burn;
        if (*burn_opt) burn = sim_burn_value;
        cmd_simulate(sim_graph, sim_theta, sim_beta, sim_steps, sim_seed, sim_replicas,
                     burn, sim_init, sim_out);
    });

    // bound
    auto* bound = app.add_subcommand(
        "bound", "closed-form stationary-mass lower bound (no graph file needed)");
    int bo_n = 0, bo_k = 0;
    double bo_theta = 0, bo_beta = 0, bo_delta_value = 0;
    bound->add_option("--n", bo_n, "vertex count")->required();
    bound->add_option("--k", bo_k, "degree")->required();
    bound->add_option("--theta", bo_theta, "task difficulty")->required();
    bound->add_option("--beta", bo_beta, "rationality")->required();
    auto* bo_delta =
        bound->add_option("--delta", bo_delta_value, "also report the sufficient beta");
    bound->callback([&] {
        std::optional<double> delta;
        if (*bo_delta) delta = bo_delta_value;
        cmd_bound(bo_n, bo_k, bo_theta, bo_beta, delta);
    });

    try {
        app.parse(argc, argv);
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const coordlab::TooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const coordlab::DegenerateTheta& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const coordlab::InfeasibleDegree& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const coordlab::DegreeSaturated& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const coordlab::AugmentationNotFound& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const coordlab::Disconnected& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
