// claycop: Clayton copula sampling, parameter estimation and experiment
// harness. Exit codes: 0 success, 1 usage error, 2 runtime error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "claycop/copula.hpp"
#include "claycop/csv.hpp"
#include "claycop/estimators.hpp"
#include "claycop/experiments.hpp"
#include "claycop/intervals.hpp"
#include "claycop/pseudo.hpp"
#include "claycop/stats.hpp"

namespace {

using namespace claycop;

std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t seed) {
    if (opt->count() > 0) return seed;
    if (const char* env = std::getenv("CLAYCOP_SEED"))
        return std::strtoull(env, nullptr, 10);
    return seed;
}

// Writes either to the named file or, for "-", to stdout.
void with_output(const std::string& path,
                 const std::function<void(std::ostream&)>& fn) {
    if (path == "-") {
        fn(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw CsvError("cannot write " + path);
    fn(out);
}

void add_ai_flags(CLI::App* cmd, AiConfig& cfg) {
    cmd->add_option("--burn-in", cfg.burn_in_steps, "Burn-in steps")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tail", cfg.tail_steps, "Tail collection steps")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--eta", cfg.smoothing_eta,
                    "Exponential smoothing coefficient in (0,1]")
        ->check(CLI::Range(1e-9, 1.0));
    cmd->add_option("--retry-limit", cfg.replica_retry_limit,
                    "Replica redraw limit");
    cmd->add_option("--bracket-lo", cfg.bracket_lo, "Alpha bracket lower end");
    cmd->add_option("--bracket-hi", cfg.bracket_hi, "Alpha bracket upper end");
    cmd->add_flag("--uniform-seeds", cfg.uniform_seed_draw,
                  "Draw bootstrap seeds uniformly instead of from the "
                  "plotting-position pool");
}

int run(int argc, char** argv) {
    CLI::App app{"Clayton copula parameter inference toolkit"};
    app.require_subcommand(1);

    // --- sample ---------------------------------------------------------
    auto* sample_cmd =
        app.add_subcommand("sample", "Draw copula pairs as CSV (u1,u2)");
    double s_alpha = 1.0;
    int s_m = 100;
    std::uint64_t s_seed = 0;
    std::string s_out = "-";
    sample_cmd->add_option("--alpha", s_alpha, "Clayton parameter")
        ->required()
        ->check(CLI::PositiveNumber);
    sample_cmd->add_option("-m,--size", s_m, "Number of pairs")
        ->required()
        ->check(CLI::PositiveNumber);
    auto* s_seed_opt = sample_cmd->add_option("--seed", s_seed, "Master seed");
    sample_cmd->add_option("-o,--out", s_out, "Output path ('-' for stdout)");

    // --- pseudo ---------------------------------------------------------
    auto* pseudo_cmd = app.add_subcommand(
        "pseudo", "Kendall pseudo-sample of a bivariate CSV");
    std::string p_in;
    std::string p_out = "-";
    pseudo_cmd->add_option("-i,--input", p_in, "Input CSV (x1,x2 or u1,u2)")
        ->required();
    pseudo_cmd->add_option("-o,--out", p_out, "Output path ('-' for stdout)");

    // --- estimate -------------------------------------------------------
    auto* est_cmd =
        app.add_subcommand("estimate", "Estimate alpha from a sample CSV");
    std::string e_method;
    std::string e_in;
    std::uint64_t e_seed = 0;
    double e_true_alpha = 0.0;
    int e_replicas = 300;
    std::string e_trace;
    std::string e_population;
    AiConfig e_cfg;
    est_cmd->add_option("--method", e_method, "mle | ai | dummy")
        ->required()
        ->check(CLI::IsMember({"mle", "ai", "dummy"}));
    est_cmd->add_option("-i,--input", e_in, "Input CSV (x1,x2 or u1,u2)")
        ->required();
    auto* e_seed_opt = est_cmd->add_option("--seed", e_seed, "Master seed");
    auto* e_true_opt = est_cmd->add_option(
        "--true-alpha", e_true_alpha, "Known alpha (dummy method only)");
    est_cmd->add_option("--replicas", e_replicas,
                        "Bootstrap replicas (dummy method)")
        ->check(CLI::PositiveNumber);
    est_cmd->add_option("--trace", e_trace, "Write mean-field trace CSV");
    est_cmd->add_option("--population", e_population,
                        "Write bootstrap population CSV");
    add_ai_flags(est_cmd, e_cfg);

    // --- ci -------------------------------------------------------------
    auto* ci_cmd = app.add_subcommand(
        "ci", "Confidence interval for alpha from a sample CSV");
    std::string c_in;
    std::uint64_t c_seed = 0;
    double c_level = 0.9;
    int c_replicas = 300;
    int c_pools = 3;
    double c_true_alpha = 0.0;
    std::string c_out;
    AiConfig c_cfg;
    ci_cmd->add_option("-i,--input", c_in, "Input CSV (x1,x2 or u1,u2)")
        ->required();
    auto* c_seed_opt = ci_cmd->add_option("--seed", c_seed, "Master seed");
    ci_cmd->add_option("--level", c_level, "Confidence level")
        ->check(CLI::Range(1e-6, 1.0 - 1e-6));
    ci_cmd->add_option("--replicas", c_replicas, "Replicas per population")
        ->check(CLI::PositiveNumber);
    ci_cmd->add_option("--pools", c_pools, "Resample populations to merge")
        ->check(CLI::PositiveNumber);
    auto* c_true_opt = ci_cmd->add_option("--true-alpha", c_true_alpha,
                                          "Known alpha, for coverage flag");
    ci_cmd->add_option("-o,--out", c_out, "Write interval CSV");
    add_ai_flags(ci_cmd, c_cfg);

    // --- experiment -----------------------------------------------------
    auto* exp_cmd =
        app.add_subcommand("experiment", "Run the experimental plan");
    std::string x_plan;
    std::string x_mode = "fixed-point";
    std::string x_out_dir = ".";
    int x_jobs = 1;
    std::uint64_t x_seed = 0;
    bool x_hist = false;
    exp_cmd->add_option("--plan", x_plan, "Plan JSON (defaults when omitted)");
    exp_cmd->add_option("--mode", x_mode, "dummy | fixed-point")
        ->check(CLI::IsMember({"dummy", "fixed-point"}));
    exp_cmd->add_option("--jobs", x_jobs, "Worker threads")
        ->check(CLI::PositiveNumber);
    exp_cmd->add_option("--out-dir", x_out_dir, "Output directory");
    auto* x_seed_opt =
        exp_cmd->add_option("--seed", x_seed, "Master seed override");
    exp_cmd->add_flag("--histograms", x_hist, "Also write histograms.csv");

    // --- demo-sklar -----------------------------------------------------
    auto* demo_cmd = app.add_subcommand(
        "demo-sklar",
        "Compose margins through the copula and report the Kendall fit");
    double d_alpha = 0.8;
    int d_m = 1000;
    std::uint64_t d_seed = 0;
    double d_lambda = 44.0;
    double d_mu = 0.5;
    double d_sigma = 0.15;
    std::string d_out = "-";
    demo_cmd->add_option("--alpha", d_alpha, "Clayton parameter")
        ->check(CLI::PositiveNumber);
    demo_cmd->add_option("-m,--size", d_m, "Sample size")
        ->check(CLI::PositiveNumber);
    auto* d_seed_opt = demo_cmd->add_option("--seed", d_seed, "Master seed");
    demo_cmd->add_option("--lambda", d_lambda,
                         "Negative-exponential rate of margin 1")
        ->check(CLI::PositiveNumber);
    demo_cmd->add_option("--mu", d_mu, "Gaussian mean of margin 2");
    demo_cmd->add_option("--sigma", d_sigma, "Gaussian stdev of margin 2")
        ->check(CLI::PositiveNumber);
    demo_cmd->add_option("-o,--out", d_out, "Output path ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // uniform usage-error code
    }

    if (sample_cmd->parsed()) {
        RandomStream stream(resolve_seed(s_seed_opt, s_seed));
        const Alpha alpha(s_alpha);
        with_output(s_out, [&](std::ostream& out) {
            out << "u1,u2\n";
            for (int i = 0; i < s_m; ++i) {
                const UnitPair p = sample_pair(alpha, stream);
                out << format_double(p.u1) << ',' << format_double(p.u2)
                    << "\n";
            }
        });
        return 0;
    }

    if (pseudo_cmd->parsed()) {
        const PseudoSample pseudo = pseudo_sample(read_bivariate_csv(p_in));
        with_output(p_out, [&](std::ostream& out) {
            out << "i,t\n";
            for (std::size_t i = 0; i < pseudo.size(); ++i)
                out << i + 1 << ',' << format_double(pseudo.t[i]) << "\n";
        });
        return 0;
    }

    if (est_cmd->parsed()) {
        if (e_method == "dummy" && e_true_opt->count() == 0) {
            std::cerr << "estimate: --method dummy requires --true-alpha\n";
            return 1;
        }
        const PseudoSample pseudo = pseudo_sample(read_bivariate_csv(e_in));
        const std::uint64_t seed = resolve_seed(e_seed_opt, e_seed);
        if (e_method == "mle") {
            const MleResult res =
                mle(pseudo, e_cfg.bracket_lo, e_cfg.bracket_hi);
            std::cout << "alpha_hat = " << format_double(res.alpha) << "\n";
            if (res.boundary_warning)
                std::cerr << "warning: maximizer near bracket boundary\n";
        } else if (e_method == "dummy") {
            RandomStream stream(seed);
            const DummyResult res = dummy_ai_estimate(
                pseudo, Alpha(e_true_alpha), e_replicas, stream, e_cfg);
            std::cout << "alpha_hat = " << format_double(res.estimate)
                      << "\n";
            if (!e_population.empty())
                write_population_csv(e_population, res.population.estimates);
        } else {
            RandomStream stream(seed);
            const AiResult res = ai_estimate(pseudo, e_cfg, stream);
            std::cout << "alpha_hat = " << format_double(res.estimate)
                      << "\n";
            std::cout << "mle_init = " << format_double(res.init.alpha)
                      << "\n";
            if (!e_trace.empty()) {
                with_output(e_trace, [&](std::ostream& out) {
                    out << "step,alpha1,alpha2,alpha_smoothed\n";
                    for (const auto& st : res.trace.steps)
                        out << st.step << ',' << format_double(st.alpha1)
                            << ',' << format_double(st.alpha2) << ','
                            << format_double(st.alpha_smoothed) << "\n";
                });
            }
            if (!e_population.empty())
                write_population_csv(e_population, res.tail.estimates);
        }
        return 0;
    }

    if (ci_cmd->parsed()) {
        const PseudoSample pseudo = pseudo_sample(read_bivariate_csv(c_in));
        const std::uint64_t seed = resolve_seed(c_seed_opt, c_seed);
        RandomStream est_stream(seed, 0);
        const AiResult res = ai_estimate(pseudo, c_cfg, est_stream);
        std::vector<BootstrapPopulation> pools;
        pools.reserve(static_cast<std::size_t>(c_pools));
        for (int k = 0; k < c_pools; ++k) {
            RandomStream pool_stream(seed, 1 + static_cast<std::uint64_t>(k));
            pools.push_back(ci_resample_population(
                pseudo, Alpha(res.estimate), c_replicas, pool_stream, c_cfg));
        }
        const ConfidenceInterval ci = confidence_interval(pools, c_level);
        std::cout << "alpha_tilde = " << format_double(res.estimate) << "\n"
                  << "interval = [" << format_double(ci.lower) << ", "
                  << format_double(ci.upper) << "] at level "
                  << format_double(ci.level) << "\n";
        if (!c_out.empty()) {
            with_output(c_out, [&](std::ostream& out) {
                out << "sample_id,lower,upper,level,contains_truth\n";
                out << 0 << ',' << format_double(ci.lower) << ','
                    << format_double(ci.upper) << ','
                    << format_double(ci.level) << ',';
                if (c_true_opt->count() > 0)
                    out << (ci.lower <= c_true_alpha &&
                                    c_true_alpha <= ci.upper
                                ? 1
                                : 0);
                out << "\n";
            });
        }
        return 0;
    }

    if (exp_cmd->parsed()) {
        ExperimentPlan plan;
        if (!x_plan.empty()) {
            std::ifstream in(x_plan);
            if (!in) {
                std::cerr << "experiment: cannot open plan " << x_plan
                          << "\n";
                return 1;
            }
            std::stringstream buf;
            buf << in.rdbuf();
            try {
                plan = plan_from_json_text(buf.str());
            } catch (const std::exception& e) {
                std::cerr << "experiment: invalid plan: " << e.what() << "\n";
                return 1;
            }
        }
        if (x_seed_opt->count() > 0)
            plan.master_seed = x_seed;
        else if (x_plan.empty())
            plan.master_seed = resolve_seed(x_seed_opt, plan.master_seed);
        const RunMode mode =
            x_mode == "dummy" ? RunMode::dummy : RunMode::fixed_point;

        std::filesystem::create_directories(x_out_dir);
        const auto results = run_plan(plan, mode, x_jobs);
        const std::filesystem::path dir(x_out_dir);
        write_aggregate_csv((dir / "aggregate.csv").string(), results);
        write_detail_csv((dir / "detail.csv").string(), results);
        if (x_hist)
            write_histograms_csv((dir / "histograms.csv").string(), results);
        std::ofstream plan_out(dir / "plan_used.json");
        plan_out << plan_to_json_text(plan) << "\n";
        int failures = 0;
        for (const auto& cell : results) failures += cell.failures;
        std::cout << results.size() << " cells written to " << x_out_dir
                  << " (" << failures << " failed samples)\n";
        return 0;
    }

    if (demo_cmd->parsed()) {
        RandomStream stream(resolve_seed(d_seed_opt, d_seed));
        const Alpha alpha(d_alpha);
        const MarginSpec m1{MarginSpec::Kind::negative_exponential, d_lambda,
                            0.0, 1.0};
        const MarginSpec m2{MarginSpec::Kind::gaussian, 1.0, d_mu, d_sigma};
        const BivariateSample sample =
            sklar_compose(m1, m2, alpha, d_m, stream);
        with_output(d_out, [&](std::ostream& out) {
            out << "x1,x2\n";
            for (const auto& p : sample.points)
                out << format_double(p[0]) << ',' << format_double(p[1])
                    << "\n";
        });
        const PseudoSample pseudo = pseudo_sample(sample);
        const double dist = kolmogorov_distance(
            pseudo.t, [&](double t) { return kendall_cdf(alpha, t); });
        std::cerr << "kendall_sup_distance = " << format_double(dist) << "\n";
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
