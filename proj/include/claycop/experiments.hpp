#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "claycop/estimators.hpp"
#include "claycop/intervals.hpp"
#include "claycop/pseudo.hpp"
#include "claycop/rng.hpp"
#include "claycop/types.hpp"

namespace claycop {

/// Marginal distribution for the Sklar composition demo.
struct MarginSpec {
    enum class Kind { negative_exponential, gaussian };

    Kind kind = Kind::negative_exponential;
    double lambda = 1.0;  // rate, F(x) = 1 - exp(-lambda x)
    double mu = 0.0;
    double sigma = 1.0;

    double quantile(double u) const;
};

/// The alpha x m grid with per-cell sample counts and replica budget.
struct ExperimentPlan {
    std::vector<double> alphas{0.8, 1.7, 3.0, 5.0};
    std::vector<int> sizes{20, 30, 100};
    int samples_per_cell = 50;
    int replicas = 300;
    double ci_level = 0.9;
    AiConfig ai;
    std::uint64_t master_seed = 0;
};

enum class RunMode { dummy, fixed_point };

struct SampleRecord {
    int sample_id;
    bool failed = false;
    std::string error;
    double ai_estimate = 0.0;
    double mle_estimate = 0.0;
    bool mle_boundary = false;
    std::optional<ConfidenceInterval> interval;  // fixed-point mode only
};

struct CellResult {
    double alpha;
    int m;
    RunMode mode;
    std::vector<SampleRecord> records;
    double ai_mean = 0.0;
    double ai_std = 0.0;
    double mle_mean = 0.0;
    double mle_std = 0.0;
    double coverage_rate = 0.0;  // fixed-point mode only
    int interval_count = 0;
    int failures = 0;
    bool degenerate_std = false;  // fewer than 2 usable records
};

/// Runs one grid cell: samples_per_cell samples of size m at the true
/// alpha, MLE plus the dummy or fixed-point estimator on each, and (in
/// fixed-point mode) level ci_level intervals from three-consecutive-
/// sample pooling. Each sample owns substreams derived from the master
/// seed and fixed indices, so results never depend on execution order or
/// the number of workers.
CellResult run_cell(double alpha, int m, const ExperimentPlan& plan,
                    RunMode mode, int jobs = 1);

std::vector<CellResult> run_plan(const ExperimentPlan& plan, RunMode mode,
                                 int jobs = 1);

/// Draws copula pairs and pushes them through the margin quantile
/// functions.
BivariateSample sklar_compose(const MarginSpec& margin1,
                              const MarginSpec& margin2, Alpha alpha, int m,
                              RandomStream& stream);

/// Substream derivation for one (cell, sample, role) slot. Keyed on the
/// cell's (alpha, m) values, not its plan position, so a restricted plan
/// reproduces the full run's numbers.
std::uint64_t substream_for(double alpha, int m, int sample, int role);

ExperimentPlan plan_from_json_text(const std::string& text);
std::string plan_to_json_text(const ExperimentPlan& plan);

/// aggregate.csv / detail.csv / histograms.csv writers.
void write_aggregate_csv(const std::string& path,
                         const std::vector<CellResult>& results);
void write_detail_csv(const std::string& path,
                      const std::vector<CellResult>& results);
void write_histograms_csv(const std::string& path,
                          const std::vector<CellResult>& results,
                          int bins = 20);

}  // namespace claycop
