// Command-line front end: simulate | sweep | attack | accountant | verify | pilot.
// Exit codes: 0 success, 1 configuration error, 2 invariant violation.
#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <iostream>

#include "adlab/attacks.hpp"
#include "adlab/instances.hpp"
#include "adlab/json_io.hpp"
#include "adlab/privacy.hpp"
#include "adlab/session.hpp"
#include "adlab/sweep.hpp"
#include "adlab/truncation.hpp"

using namespace adlab;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitInvariant = 2;

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json j;
    in >> j;
    return experiment_config_from_json(j);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path.string());
    out << text;
}

std::vector<std::uint64_t> seed_range(std::uint64_t first, int count) {
    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < count; ++i) seeds.push_back(first + static_cast<std::uint64_t>(i));
    return seeds;
}

int run_simulate(const std::string& config_path, std::uint64_t seed_override, bool has_seed,
                 const std::string& out_dir, const std::string& format) {
    ExperimentConfig config = load_config(config_path);
    if (has_seed) config.seed = seed_override;
    RunResult result;
    const SessionRecord rec = run_session(config, &result);

    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    if (format == "csv" || format == "both") {
        std::ofstream csv(dir / "transcript.csv");
        rec.transcript.write_csv(csv);
    }
    if (format == "json" || format == "both") {
        write_file(dir / "transcript.json", rec.transcript.to_json());
    }
    write_file(dir / "dataset.json", dataset_to_json(rec.dataset).dump());
    if (config.mechanism.is_noisy()) {
        // audit sidecar: raw noise draws per round
        std::ofstream noise_csv(dir / "noise.csv");
        noise_csv << "t";
        for (int j = 0; j < config.mechanism.d_q; ++j) noise_csv << ",noise_" << j;
        noise_csv << "\n";
        noise_csv.precision(17);
        for (const auto& r : rec.transcript.rounds) {
            noise_csv << r.t;
            for (double v : r.noise) noise_csv << "," << v;
            noise_csv << "\n";
        }
    }
    json summary;
    summary["max_error"] = result.max_error;
    summary["accuracy_rate"] = result.accuracy_rate;
    summary["rounds"] = config.rounds;
    summary["config_hash"] = result.config_hash;
    summary["wall_ms"] = result.wall_ms;
    write_file(dir / "result.json", summary.dump(2));
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

// Expands `--axis /json/pointer=v1,v2` patches into a config cross product.
std::vector<json> expand_axes(const json& base, const std::vector<std::string>& axes) {
    std::vector<json> configs{base};
    for (const auto& axis : axes) {
        const auto eq = axis.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("axis must look like /pointer=v1,v2,...");
        }
        const nlohmann::json::json_pointer pointer(axis.substr(0, eq));
        std::vector<double> values;
        std::stringstream ss(axis.substr(eq + 1));
        for (std::string item; std::getline(ss, item, ',');) values.push_back(std::stod(item));
        if (values.empty()) throw std::invalid_argument("axis has no values: " + axis);
        std::vector<json> next;
        for (const auto& c : configs) {
            for (const double v : values) {
                json patched = c;
                patched[pointer] = v;
                next.push_back(std::move(patched));
            }
        }
        configs = std::move(next);
    }
    return configs;
}

int run_sweep(const std::string& config_path, const std::vector<std::int64_t>& t_axis,
              std::uint64_t seed0, int n_seeds, const std::string& out_dir, int threads,
              const std::vector<std::string>& axes) {
    std::ifstream in(config_path);
    if (!in) throw std::invalid_argument("cannot open config file: " + config_path);
    json base;
    in >> base;
    const auto configs = expand_axes(base, axes);
    const auto seeds = seed_range(seed0, n_seeds);
    std::cout << "sweep points: " << configs.size() << " configs x " << t_axis.size()
              << " t-values x " << seeds.size()
              << " seeds = " << configs.size() * t_axis.size() * seeds.size() << " rows\n";
    std::filesystem::create_directories(out_dir);
    json index = json::array();
    for (std::size_t i = 0; i < configs.size(); ++i) {
        const ExperimentConfig config = experiment_config_from_json(configs[i]);
        const SweepTable table = scaling_sweep(config, t_axis, seeds, threads);
        const std::string name =
            configs.size() == 1 ? "sweep.csv" : "sweep_" + std::to_string(i) + ".csv";
        std::ofstream csv(std::filesystem::path(out_dir) / name);
        table.write_csv(csv);
        index.push_back({{"file", name}, {"config_hash", config_hash(config)}});
        std::cout << "wrote " << table.rows.size() << " rows to " << name << "\n";
    }
    if (configs.size() > 1) {
        write_file(std::filesystem::path(out_dir) / "sweep_index.json", index.dump(2));
    }
    return kExitOk;
}

int run_accountant(const std::string& op, const json& args) {
    json out;
    out["op"] = op;
    if (op == "gaussian_dp") {
        const DpParams p = gaussian_dp(args.at("sigma"), args.at("n"), args.at("d_q"),
                                       args.at("beta"));
        out["alpha"] = p.alpha;
        out["beta"] = p.beta;
    } else if (op == "strong_compose") {
        const DpParams p =
            strong_compose(args.at("k"), args.at("alpha"), args.at("beta"), args.at("beta_prime"));
        out["alpha"] = p.alpha;
        out["beta"] = p.beta;
    } else if (op == "linear_compose") {
        const auto alphas = args.at("alphas").get<std::vector<double>>();
        const auto betas = args.at("betas").get<std::vector<double>>();
        if (alphas.size() != betas.size()) {
            throw std::invalid_argument("linear_compose: alphas/betas length mismatch");
        }
        std::vector<DpParams> parts;
        for (std::size_t i = 0; i < alphas.size(); ++i) parts.push_back({alphas[i], betas[i]});
        const DpParams p = linear_compose(parts);
        out["alpha"] = p.alpha;
        out["beta"] = p.beta;
    } else if (op == "history_dp") {
        const DpParams p = history_dp({args.at("alpha"), args.at("beta")},
                                      make_depth(args.at("k")), args.at("beta_prime"));
        out["alpha"] = p.alpha;
        out["beta"] = p.beta;
    } else if (op == "sigma_for") {
        out["sigma"] = sigma_for(args.at("eps"), args.at("delta"), args.at("t"), args.at("d_q"));
    } else if (op == "depth_progressive") {
        const auto k = depth_progressive(args.at("lambda"), args.at("L"), args.at("C1"),
                                         args.at("grid_delta"));
        out["k_real"] = k.k_real;
        out["k_int"] = k.k_int;
    } else if (op == "depth_conservative_b") {
        const auto k =
            depth_conservative_b(args.at("lambda"), args.at("D"), args.at("grid_delta"));
        out["k_real"] = k.k_real;
        out["k_int"] = k.k_int;
    } else if (op == "depth_continuous") {
        const auto k = depth_continuous(args.at("lambda"), args.at("D"), args.at("d"),
                                        args.at("lambda_min"), args.at("eps"));
        out["k_real"] = k.k_real;
        out["k_int"] = k.k_int;
    } else if (op == "depth_conservative_a") {
        const auto sched = schedule_from_json(args.at("schedule"));
        const auto k = depth_conservative_a(sched, args.at("grid_delta"), args.at("C1"),
                                            args.value("t_max", std::int64_t{100000}));
        out["k_real"] = k.k_real;
        out["k_int"] = k.k_int;
        out["saturated"] = k.saturated;
    } else if (op == "plan_samples") {
        out["n"] = plan_samples(args.at("eps"), args.at("delta"), make_depth(args.at("k")),
                                args.at("d_q"), args.at("t"), args.value("multiplier", 1.0));
    } else {
        throw std::invalid_argument("accountant: unknown op " + op);
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int run_verify(const std::string& config_path, int trials, int identity_seeds) {
    const ExperimentConfig config = load_config(config_path);
    Analyst analyst(config.analyst);
    const Dataset data =
        sample_dataset(config.distribution, std::min<std::size_t>(config.n, 500),
                       Rng::derive_seed(config.seed, 3));
    const ClassReport rep = verify_class(analyst, trials, config.seed, &data.points);
    json j;
    j["family"] = rep.family;
    j["applicable"] = rep.applicable;
    j["declared_contraction"] = rep.declared_contraction;
    j["max_state_ratio"] = rep.max_state_ratio;
    j["max_answer_ratio"] = rep.max_answer_ratio;
    j["max_empirical_ratio"] = rep.max_empirical_ratio;
    j["quantization_slack"] = rep.quantization_slack;
    j["violations"] = rep.violations;
    if (!rep.note.empty()) j["note"] = rep.note;

    bool identity_ok = true;
    if (config.analyst.grid_mode() &&
        config.analyst.analyst_class() != AnalystClass::Adversarial) {
        const IdentityReport idr =
            identity_depth_check(config, seed_range(config.seed, identity_seeds));
        j["identity"] = {{"k", idr.depth_k},
                         {"k_real", idr.depth_k_real},
                         {"rounds_checked", idr.rounds_checked},
                         {"identical", idr.identical},
                         {"query_mismatches", idr.query_mismatches}};
        if (!idr.identical) {
            identity_ok = false;
            json cx = json::array();
            for (const auto& c : idr.counterexamples) {
                cx.push_back({{"seed", c.seed},
                              {"t", c.t},
                              {"full", c.full_coords},
                              {"truncated", c.truncated_coords}});
            }
            j["identity"]["counterexamples"] = cx;
        }
    }
    std::cout << j.dump(2) << "\n";
    return (rep.violations == 0 && identity_ok) ? kExitOk : kExitInvariant;
}

int run_attack(const std::string& kind, const json& args) {
    json out;
    out["attack"] = kind;
    int code = kExitOk;
    if (kind == "overfit") {
        const auto res = overfit_attack(args.at("n"), args.at("t"), args.at("seed"));
        out["final_error"] = res.final_error;
        out["hoeffding_baseline"] = res.hoeffding_baseline;
        out["final_true_mean"] = res.final_true_mean;
    } else if (kind == "counterexample") {
        const auto res = counterexample_demo(args.at("t"), args.at("bits"), args.at("seed"));
        out["exact"] = res.exact;
        out["mismatches"] = res.mismatches;
        out["precision_failure"] = res.precision_failure;
        if (!res.note.empty()) out["note"] = res.note;
        if (!res.exact && !res.precision_failure) code = kExitInvariant;
    } else if (kind == "interleave") {
        const auto res = interleave_demo(args.at("lambda"), args.at("digits"), args.at("t"),
                                         args.at("grid_delta"), args.at("seed"));
        out["continuous_exact"] = res.continuous_exact;
        out["grid_recovered"] = res.grid_recovered;
        out["grid_mismatches"] = res.grid_mismatches;
        if (!res.continuous_exact) code = kExitInvariant;
    } else {
        throw std::invalid_argument("attack: unknown kind " + kind);
    }
    std::cout << out.dump(2) << "\n";
    return code;
}

// Measures what the frozen thresholds in the acceptance suite rest on:
// identity failure rates for spectral-radius-heavy cores, and the overfit
// attack's scale at the acceptance operating point.
int run_pilot() {
    json out;
    {
        json ident = json::array();
        for (const double lambda : {0.3, 0.6, 0.9}) {
            for (const bool dense : {false, true}) {
                ExperimentConfig config;
                config.distribution = UniformBox::unit(4);
                config.n = 500;
                config.rounds = 200;
                config.mechanism.kind = MechanismKind::RoundedEmpirical;
                config.mechanism.round_eps = 1.0;
                config.mechanism.d_q = 2;
                config.analyst = make_random_progressive_linear(4, 2, lambda, NormSpec::l2(),
                                                                1e-3, 4, 811, dense);
                const auto rep = identity_depth_check(config, seed_range(100, 5));
                ident.push_back({{"lambda", lambda},
                                 {"core", dense ? "dense-orthogonal" : "structured-nilpotent"},
                                 {"k", rep.depth_k},
                                 {"identical", rep.identical},
                                 {"rounds_checked", rep.rounds_checked},
                                 {"counterexamples", rep.counterexamples.size()}});
            }
        }
        out["identity_pilot"] = ident;
    }
    {
        json rows = json::array();
        for (const std::int64_t t : {50, 200, 800}) {
            double mean = 0.0;
            const int seeds = 20;
            for (int s = 0; s < seeds; ++s) {
                mean += overfit_attack(400, static_cast<int>(t), 9000 + s).final_error;
            }
            mean /= seeds;
            rows.push_back({{"t", t}, {"n", 400}, {"mean_final_error", mean}});
        }
        out["overfit_pilot"] = rows;
        out["hoeffding_baseline_n400"] = std::sqrt(std::log(2.0) / 800.0);
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adaptive-analyst simulation laboratory"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", format = "csv";
    std::uint64_t seed = 0;
    bool has_seed = false;

    auto* sim = app.add_subcommand("simulate", "run one analyst-mechanism session");
    sim->add_option("--config", config_path)->required();
    sim->add_option("--seed", seed);
    sim->add_option("--out", out_dir);
    sim->add_option("--format", format)->check(CLI::IsMember({"csv", "json", "both"}));

    std::vector<std::int64_t> t_axis{10, 100, 1000};
    int n_seeds = 10, threads = 2, trials = 2000, identity_seeds = 3;
    std::uint64_t seed0 = 1;
    auto* sw = app.add_subcommand("sweep", "cross-product scaling runs");
    sw->add_option("--config", config_path)->required();
    sw->add_option("--t-axis", t_axis)->delimiter(',');
    sw->add_option("--seeds", n_seeds);
    sw->add_option("--seed0", seed0);
    sw->add_option("--out", out_dir);
    sw->add_option("--threads", threads);
    std::vector<std::string> sweep_axes;
    sw->add_option("--axis", sweep_axes, "extra axis as /json/pointer=v1,v2,...");

    std::string attack_kind;
    double lambda = 0.9, grid_delta = 1e-3;
    int bits = 16, digits = 6, attack_t = 20;
    std::uint64_t attack_seed = 1;
    std::size_t attack_n = 400;
    auto* at = app.add_subcommand("attack", "overfit / counterexample / interleave demos");
    at->add_option("kind", attack_kind)->required()
        ->check(CLI::IsMember({"overfit", "counterexample", "interleave"}));
    at->add_option("--n", attack_n);
    at->add_option("--t", attack_t);
    at->add_option("--bits", bits);
    at->add_option("--digits", digits);
    at->add_option("--lambda", lambda);
    at->add_option("--grid-delta", grid_delta);
    at->add_option("--seed", attack_seed);

    std::string op;
    double a_sigma = 0.1, a_beta = 1e-5, a_alpha = 0.1, a_beta_prime = 0.01, a_eps = 0.1,
           a_delta = 0.05, a_lambda = 0.5, a_lip = 1.0, a_c1 = 1.0, a_grid = 0.01, a_radius = 10.0,
           a_lambda_min = 1.0, a_mult = 1.0, a_k = 1.0, a_sched_scale = 1.0, a_sched_ratio = 0.5,
           a_sched_exp = 1.0;
    std::int64_t a_n = 100, a_t = 100, a_tmax = 100000;
    int a_dq = 1, a_d = 1;
    std::string a_sched_kind = "exponential";
    auto* ac = app.add_subcommand("accountant", "evaluate a privacy-accounting operation");
    ac->add_option("--op", op)->required();
    ac->add_option("--sigma", a_sigma);
    ac->add_option("--beta", a_beta);
    ac->add_option("--alpha", a_alpha);
    std::vector<double> a_alphas, a_betas;
    ac->add_option("--alphas", a_alphas)->delimiter(',');
    ac->add_option("--betas", a_betas)->delimiter(',');
    ac->add_option("--beta-prime", a_beta_prime);
    ac->add_option("--eps", a_eps);
    ac->add_option("--delta", a_delta);
    ac->add_option("--lambda", a_lambda);
    ac->add_option("--L", a_lip);
    ac->add_option("--C1", a_c1);
    ac->add_option("--grid-delta", a_grid);
    ac->add_option("--D", a_radius);
    ac->add_option("--lambda-min", a_lambda_min);
    ac->add_option("--multiplier", a_mult);
    ac->add_option("--k", a_k);
    ac->add_option("--n", a_n);
    ac->add_option("--t", a_t);
    ac->add_option("--t-max", a_tmax);
    ac->add_option("--d_q", a_dq);
    ac->add_option("--d", a_d);
    ac->add_option("--schedule-kind", a_sched_kind);
    ac->add_option("--schedule-scale", a_sched_scale);
    ac->add_option("--schedule-ratio", a_sched_ratio);
    ac->add_option("--schedule-exponent", a_sched_exp);

    auto* ver = app.add_subcommand("verify", "class and truncation invariant suites");
    ver->add_option("--config", config_path)->required();
    ver->add_option("--trials", trials);
    ver->add_option("--identity-seeds", identity_seeds);

    auto* pil = app.add_subcommand("pilot", "re-derive the frozen empirical thresholds");

    CLI11_PARSE(app, argc, argv);
    has_seed = sim->count("--seed") > 0;

    try {
        if (sim->parsed()) return run_simulate(config_path, seed, has_seed, out_dir, format);
        if (sw->parsed()) {
            return run_sweep(config_path, t_axis, seed0, n_seeds, out_dir, threads, sweep_axes);
        }
        if (at->parsed()) {
            json args{{"n", attack_n},     {"t", attack_t},
                      {"bits", bits},      {"digits", digits},
                      {"lambda", lambda},  {"grid_delta", grid_delta},
                      {"seed", attack_seed}};
            return run_attack(attack_kind, args);
        }
        if (ac->parsed()) {
            json args{{"sigma", a_sigma},
                      {"beta", a_beta},
                      {"alpha", a_alpha},
                      {"alphas", a_alphas},
                      {"betas", a_betas},
                      {"beta_prime", a_beta_prime},
                      {"eps", a_eps},
                      {"delta", a_delta},
                      {"lambda", a_lambda},
                      {"L", a_lip},
                      {"C1", a_c1},
                      {"grid_delta", a_grid},
                      {"D", a_radius},
                      {"lambda_min", a_lambda_min},
                      {"multiplier", a_mult},
                      {"k", a_k},
                      {"n", a_n},
                      {"t", a_t},
                      {"t_max", a_tmax},
                      {"d_q", a_dq},
                      {"d", a_d},
                      {"schedule",
                       {{"kind", a_sched_kind},
                        {"scale", a_sched_scale},
                        {"ratio", a_sched_ratio},
                        {"exponent", a_sched_exp}}}};
            return run_accountant(op, args);
        }
        if (ver->parsed()) return run_verify(config_path, trials, identity_seeds);
        if (pil->parsed()) return run_pilot();
    } catch (const EscapeError& e) {
        std::cerr << "invariant violation: state escaped the declared ball at round " << e.round()
                  << "\n";
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
