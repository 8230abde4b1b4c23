#include "claycop/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "claycop/copula.hpp"
#include "claycop/csv.hpp"
#include "claycop/stats.hpp"

namespace claycop {

double MarginSpec::quantile(double u) const {
    switch (kind) {
        case Kind::negative_exponential:
            return -std::log1p(-u) / lambda;
        case Kind::gaussian:
            return mu + sigma * normal_quantile(u);
    }
    throw std::logic_error("MarginSpec: unknown kind");
}

std::uint64_t substream_for(double alpha, int m, int sample, int role) {
    const std::uint64_t cell_key =
        RandomStream::mix64(std::bit_cast<std::uint64_t>(alpha)) ^
        RandomStream::mix64(static_cast<std::uint64_t>(m) +
                            0x243F6A8885A308D3ULL);
    return RandomStream::mix64(cell_key ^
                               (static_cast<std::uint64_t>(sample) * 8 +
                                static_cast<std::uint64_t>(role)));
}

namespace {

// Fixed role indices for the per-sample substreams.
constexpr int kRoleGenerate = 0;
constexpr int kRoleEstimate = 1;
constexpr int kRoleCiResample = 2;

void run_sample(double alpha, int m, const ExperimentPlan& plan, RunMode mode,
                int s, SampleRecord& rec, BootstrapPopulation& ci_pop) {
    rec.sample_id = s;
    try {
        const Alpha a(alpha);
        RandomStream gen(plan.master_seed,
                         substream_for(alpha, m, s, kRoleGenerate));
        BivariateSample sample;
        sample.points.reserve(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) {
            const UnitPair p = sample_pair(a, gen);
            sample.points.push_back({p.u1, p.u2});
        }
        const PseudoSample pseudo = pseudo_sample(sample);

        const MleResult ml =
            mle(pseudo, plan.ai.bracket_lo, plan.ai.bracket_hi);
        rec.mle_estimate = ml.alpha;
        rec.mle_boundary = ml.boundary_warning;

        RandomStream est(plan.master_seed,
                         substream_for(alpha, m, s, kRoleEstimate));
        if (mode == RunMode::dummy) {
            rec.ai_estimate =
                dummy_ai_estimate(pseudo, a, plan.replicas, est, plan.ai)
                    .estimate;
        } else {
            const AiResult res = ai_estimate(pseudo, plan.ai, est);
            rec.ai_estimate = res.estimate;
            RandomStream ci(plan.master_seed,
                            substream_for(alpha, m, s, kRoleCiResample));
            ci_pop = ci_resample_population(pseudo, Alpha(res.estimate),
                                            plan.replicas, ci, plan.ai);
        }
    } catch (const std::exception& e) {
        rec.failed = true;
        rec.error = e.what();
    }
}

}  // namespace

CellResult run_cell(double alpha, int m, const ExperimentPlan& plan,
                    RunMode mode, int jobs) {
    const int n = plan.samples_per_cell;
    CellResult cell;
    cell.alpha = alpha;
    cell.m = m;
    cell.mode = mode;
    cell.records.resize(static_cast<std::size_t>(n));
    std::vector<BootstrapPopulation> ci_pops(static_cast<std::size_t>(n));

    const auto worker = [&](int first) {
        for (int s = first; s < n; s += std::max(jobs, 1))
            run_sample(alpha, m, plan, mode, s,
                       cell.records[static_cast<std::size_t>(s)],
                       ci_pops[static_cast<std::size_t>(s)]);
    };
    if (jobs <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(jobs));
        for (int j = 0; j < jobs; ++j) threads.emplace_back(worker, j);
        for (auto& t : threads) t.join();
    }

    // Level-ci_level intervals from the pooling of three consecutive
    // samples' resample populations.
    std::vector<ConfidenceInterval> intervals;
    if (mode == RunMode::fixed_point) {
        for (int s = 0; s + 2 < n; ++s) {
            bool usable = true;
            for (int k = s; k < s + 3; ++k)
                usable = usable && !cell.records[static_cast<std::size_t>(k)]
                                        .failed;
            if (!usable) continue;
            const BootstrapPopulation triple[3] = {
                ci_pops[static_cast<std::size_t>(s)],
                ci_pops[static_cast<std::size_t>(s + 1)],
                ci_pops[static_cast<std::size_t>(s + 2)]};
            const ConfidenceInterval ci =
                confidence_interval(triple, plan.ci_level);
            cell.records[static_cast<std::size_t>(s)].interval = ci;
            intervals.push_back(ci);
        }
        if (!intervals.empty())
            cell.coverage_rate = coverage(intervals, Alpha(alpha));
        cell.interval_count = static_cast<int>(intervals.size());
    }

    std::vector<double> ai;
    std::vector<double> ml;
    for (const auto& rec : cell.records) {
        if (rec.failed) {
            ++cell.failures;
            continue;
        }
        ai.push_back(rec.ai_estimate);
        ml.push_back(rec.mle_estimate);
    }
    if (!ai.empty()) {
        cell.ai_mean = mean(ai);
        cell.ai_std = sample_stdev(ai);
        cell.mle_mean = mean(ml);
        cell.mle_std = sample_stdev(ml);
    }
    cell.degenerate_std = ai.size() < 2;
    return cell;
}

std::vector<CellResult> run_plan(const ExperimentPlan& plan, RunMode mode,
                                 int jobs) {
    std::vector<CellResult> results;
    results.reserve(plan.alphas.size() * plan.sizes.size());
    for (double alpha : plan.alphas)
        for (int m : plan.sizes)
            results.push_back(run_cell(alpha, m, plan, mode, jobs));
    return results;
}

BivariateSample sklar_compose(const MarginSpec& margin1,
                              const MarginSpec& margin2, Alpha alpha, int m,
                              RandomStream& stream) {
    BivariateSample sample;
    sample.points.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        const UnitPair p = sample_pair(alpha, stream);
        sample.points.push_back(
            {margin1.quantile(p.u1), margin2.quantile(p.u2)});
    }
    return sample;
}

ExperimentPlan plan_from_json_text(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    ExperimentPlan plan;
    plan.alphas = j.value("alphas", plan.alphas);
    plan.sizes = j.value("sizes", plan.sizes);
    plan.samples_per_cell = j.value("samples_per_cell", plan.samples_per_cell);
    plan.replicas = j.value("replicas", plan.replicas);
    plan.ci_level = j.value("ci_level", plan.ci_level);
    plan.master_seed = j.value("master_seed", plan.master_seed);
    if (j.contains("ai_config")) {
        const auto& c = j.at("ai_config");
        plan.ai.burn_in_steps = c.value("burn_in_steps", plan.ai.burn_in_steps);
        plan.ai.tail_steps = c.value("tail_steps", plan.ai.tail_steps);
        plan.ai.smoothing_eta = c.value("smoothing_eta", plan.ai.smoothing_eta);
        plan.ai.replica_retry_limit =
            c.value("replica_retry_limit", plan.ai.replica_retry_limit);
        if (c.contains("alpha_bracket")) {
            plan.ai.bracket_lo = c.at("alpha_bracket").at(0).get<double>();
            plan.ai.bracket_hi = c.at("alpha_bracket").at(1).get<double>();
        }
        plan.ai.uniform_seed_draw =
            c.value("uniform_seed_draw", plan.ai.uniform_seed_draw);
    }
    if (plan.alphas.empty() || plan.sizes.empty() ||
        plan.samples_per_cell < 1 || plan.replicas < 1 ||
        plan.ai.burn_in_steps < 1 || plan.ai.tail_steps < 1 ||
        !(plan.ai.smoothing_eta > 0.0 && plan.ai.smoothing_eta <= 1.0) ||
        !(plan.ai.bracket_lo < plan.ai.bracket_hi) ||
        !(plan.ci_level > 0.0 && plan.ci_level < 1.0))
        throw std::invalid_argument("invalid experiment plan");
    for (double a : plan.alphas)
        if (!(a > 0.0)) throw std::invalid_argument("plan alphas must be > 0");
    for (int m : plan.sizes)
        if (m < 2) throw std::invalid_argument("plan sizes must be >= 2");
    return plan;
}

std::string plan_to_json_text(const ExperimentPlan& plan) {
    nlohmann::json j;
    j["alphas"] = plan.alphas;
    j["sizes"] = plan.sizes;
    j["samples_per_cell"] = plan.samples_per_cell;
    j["replicas"] = plan.replicas;
    j["ci_level"] = plan.ci_level;
    j["master_seed"] = plan.master_seed;
    j["ai_config"] = {
        {"burn_in_steps", plan.ai.burn_in_steps},
        {"tail_steps", plan.ai.tail_steps},
        {"smoothing_eta", plan.ai.smoothing_eta},
        {"replica_retry_limit", plan.ai.replica_retry_limit},
        {"alpha_bracket", {plan.ai.bracket_lo, plan.ai.bracket_hi}},
        {"uniform_seed_draw", plan.ai.uniform_seed_draw},
    };
    return j.dump(2);
}

namespace {

const char* mode_name(RunMode mode) {
    return mode == RunMode::dummy ? "dummy" : "fixed-point";
}

}  // namespace

void write_aggregate_csv(const std::string& path,
                         const std::vector<CellResult>& results) {
    std::ofstream out(path);
    if (!out) throw CsvError("cannot write " + path);
    out << "alpha,m,mode,ai_mean,ai_std,mle_mean,mle_std,coverage\n";
    for (const auto& cell : results) {
        out << format_double(cell.alpha) << ',' << cell.m << ','
            << mode_name(cell.mode) << ',' << format_double(cell.ai_mean)
            << ',' << format_double(cell.ai_std) << ','
            << format_double(cell.mle_mean) << ','
            << format_double(cell.mle_std) << ',';
        if (cell.mode == RunMode::fixed_point)
            out << format_double(cell.coverage_rate);
        out << "\n";
    }
}

void write_detail_csv(const std::string& path,
                      const std::vector<CellResult>& results) {
    std::ofstream out(path);
    if (!out) throw CsvError("cannot write " + path);
    out << "alpha,m,sample_id,ai_estimate,mle_estimate,ci_lower,ci_upper,"
           "failed\n";
    for (const auto& cell : results) {
        for (const auto& rec : cell.records) {
            out << format_double(cell.alpha) << ',' << cell.m << ','
                << rec.sample_id << ',';
            if (!rec.failed)
                out << format_double(rec.ai_estimate) << ','
                    << format_double(rec.mle_estimate);
            else
                out << ',';
            out << ',';
            if (rec.interval)
                out << format_double(rec.interval->lower) << ','
                    << format_double(rec.interval->upper);
            else
                out << ',';
            out << ',' << (rec.failed ? 1 : 0) << "\n";
        }
    }
}

void write_histograms_csv(const std::string& path,
                          const std::vector<CellResult>& results, int bins) {
    std::ofstream out(path);
    if (!out) throw CsvError("cannot write " + path);
    out << "alpha,m,estimator,bin_lo,bin_hi,count\n";
    for (const auto& cell : results) {
        for (const char* which : {"ai", "mle"}) {
            std::vector<double> values;
            for (const auto& rec : cell.records) {
                if (rec.failed) continue;
                values.push_back(which == std::string("ai")
                                     ? rec.ai_estimate
                                     : rec.mle_estimate);
            }
            if (values.empty()) continue;
            const auto [lo_it, hi_it] =
                std::minmax_element(values.begin(), values.end());
            const double lo = *lo_it;
            const double width = std::max(*hi_it - lo, 1e-12) /
                                 static_cast<double>(bins);
            std::vector<int> counts(static_cast<std::size_t>(bins), 0);
            for (double v : values) {
                auto b = static_cast<std::size_t>((v - lo) / width);
                if (b >= counts.size()) b = counts.size() - 1;
                ++counts[b];
            }
            for (int b = 0; b < bins; ++b)
                out << format_double(cell.alpha) << ',' << cell.m << ','
                    << which << ',' << format_double(lo + b * width) << ','
                    << format_double(lo + (b + 1) * width) << ','
                    << counts[static_cast<std::size_t>(b)] << "\n";
        }
    }
}

}  // namespace claycop
