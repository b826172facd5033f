#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "newscycle/aco.hpp"

namespace newscycle::bench {

struct SeedOutcome {
    std::uint64_t seed = 0;
    double final_length = 0.0;
    std::optional<int> iterations_to_target;  // 1-based; absent if never reached
    std::vector<double> trace;                // kept for CSV export, not serialized
};

struct BenchReport {
    std::string instance;
    std::string arm;  // "variant" or "baseline"
    aco::SolverConfig config;
    double target = 0.0;
    std::vector<SeedOutcome> rows;  // one per seed, in seed order
};

// 1-based index of the first trace entry <= target; absent if never reached.
std::optional<int> iterations_to_target(std::span<const double> trace, double target);

// Runs both arms over every seed. Requires >= 10 distinct seeds and that the
// two configs agree on everything except the negative-trail parameters — an
// uncontrolled comparison is refused. Seed runs may execute on `threads`
// workers; reports are assembled in seed order either way.
std::pair<BenchReport, BenchReport> run_benchmark(const tsp::TspInstance& inst,
                                                  const aco::SolverConfig& variant_config,
                                                  const aco::SolverConfig& baseline_config,
                                                  std::span<const std::uint64_t> seeds,
                                                  double target, int threads = 1);

struct ComparisonSummary {
    struct Arm {
        double median_final = 0.0;
        std::optional<double> median_iterations;  // over seeds that reached target
        int missed_target = 0;
    };
    struct PairedSample {
        std::uint64_t seed = 0;
        int variant_iterations = 0;
        int baseline_iterations = 0;
        int difference = 0;  // variant - baseline
    };

    std::string instance;
    double target = 0.0;
    Arm variant, baseline;
    std::vector<PairedSample> paired;          // both arms reached the target
    std::vector<std::uint64_t> excluded_seeds; // one arm missed: flagged, not paired
    int positive_differences = 0;  // variant slower
    int negative_differences = 0;  // variant faster
    int zero_differences = 0;      // ties, excluded from the sign test
    double sign_test_p = 1.0;      // two-sided exact binomial
};

// Paired convergence comparison; throws if the reports disagree on instance,
// target, or seed set.
ComparisonSummary compare(const BenchReport& variant, const BenchReport& baseline);

// Two-sided exact sign test for `positive` successes out of n = positive +
// negative under p = 1/2. Returns 1 when n == 0.
double sign_test_p_value(int positive, int negative);

nlohmann::json to_json(const BenchReport& report);
nlohmann::json to_json(const ComparisonSummary& summary);

}  // namespace newscycle::bench
