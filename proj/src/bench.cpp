#include "newscycle/bench.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <thread>

namespace newscycle::bench {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("run_benchmark: " + what);
}

void require_shared(bool equal, const char* field) {
    if (!equal) {
        throw std::invalid_argument(
            std::string("run_benchmark: variant and baseline configs differ on shared "
                        "parameter '") +
            field + "' — the comparison would be confounded");
    }
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const auto n = values.size();
    return n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

}  // namespace

std::optional<int> iterations_to_target(std::span<const double> trace, double target) {
    if (trace.empty()) throw std::invalid_argument("iterations_to_target: empty trace");
    if (!(target > 0.0)) throw std::invalid_argument("iterations_to_target: target must be > 0");
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (trace[i] <= target) return static_cast<int>(i) + 1;
    }
    return std::nullopt;
}

std::pair<BenchReport, BenchReport> run_benchmark(const tsp::TspInstance& inst,
                                                  const aco::SolverConfig& variant_config,
                                                  const aco::SolverConfig& baseline_config,
                                                  std::span<const std::uint64_t> seeds,
                                                  double target, int threads) {
    require(seeds.size() >= 10, "need at least 10 seeds, got " + std::to_string(seeds.size()));
    require(std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() == seeds.size(),
            "seeds must be distinct");
    require(target > 0.0, "target must be > 0");
    require_shared(variant_config.ants == baseline_config.ants, "ants");
    require_shared(variant_config.alpha == baseline_config.alpha, "alpha");
    require_shared(variant_config.beta == baseline_config.beta, "beta");
    require_shared(variant_config.rho_pos == baseline_config.rho_pos, "rho_pos");
    require_shared(variant_config.q0 == baseline_config.q0, "q0");
    require_shared(variant_config.iterations == baseline_config.iterations, "iterations");

    BenchReport variant{inst.name, "variant", variant_config, target, {}};
    BenchReport baseline{inst.name, "baseline", baseline_config, target, {}};
    variant.rows.resize(seeds.size());
    baseline.rows.resize(seeds.size());

    auto run_seed = [&](std::size_t k) {
        const std::uint64_t seed = seeds[k];
        auto vc = variant_config;
        vc.seed = seed;
        auto bc = baseline_config;
        bc.seed = seed;
        const auto vr = aco::run(inst, vc);
        const auto br = aco::run_acs_baseline(inst, bc);
        variant.rows[k] = {seed, vr.best.length, iterations_to_target(vr.trace, target),
                           vr.trace};
        baseline.rows[k] = {seed, br.best.length, iterations_to_target(br.trace, target),
                            br.trace};
    };

    if (threads > 1) {
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) {
            workers.emplace_back([&, t] {
                for (std::size_t k = static_cast<std::size_t>(t); k < seeds.size();
                     k += static_cast<std::size_t>(threads)) {
                    run_seed(k);
                }
            });
        }
        for (auto& worker : workers) worker.join();
    } else {
        for (std::size_t k = 0; k < seeds.size(); ++k) run_seed(k);
    }
    return {std::move(variant), std::move(baseline)};
}

double sign_test_p_value(int positive, int negative) {
    const int n = positive + negative;
    if (n == 0) return 1.0;
    const int k = std::min(positive, negative);
    // 2 * P(X <= k), X ~ Binomial(n, 1/2), capped at 1.
    long double coeff = 1.0L;  // C(n, 0)
    long double tail = 1.0L;
    for (int i = 1; i <= k; ++i) {
        coeff = coeff * static_cast<long double>(n - i + 1) / static_cast<long double>(i);
        tail += coeff;
    }
    const long double p = 2.0L * tail * std::pow(0.5L, n);
    return static_cast<double>(std::min(p, 1.0L));
}

ComparisonSummary compare(const BenchReport& variant, const BenchReport& baseline) {
    if (variant.instance != baseline.instance) {
        throw std::invalid_argument("compare: reports are for different instances");
    }
    if (variant.target != baseline.target) {
        throw std::invalid_argument("compare: reports use different targets");
    }
    if (variant.rows.size() != baseline.rows.size()) {
        throw std::invalid_argument("compare: reports have different seed counts");
    }
    for (std::size_t k = 0; k < variant.rows.size(); ++k) {
        if (variant.rows[k].seed != baseline.rows[k].seed) {
            throw std::invalid_argument("compare: seed sets differ");
        }
    }

    ComparisonSummary summary;
    summary.instance = variant.instance;
    summary.target = variant.target;

    auto fill_arm = [](const BenchReport& report) {
        ComparisonSummary::Arm arm;
        std::vector<double> finals, iters;
        for (const auto& row : report.rows) {
            finals.push_back(row.final_length);
            if (row.iterations_to_target) {
                iters.push_back(static_cast<double>(*row.iterations_to_target));
            } else {
                ++arm.missed_target;
            }
        }
        arm.median_final = median(std::move(finals));
        if (!iters.empty()) arm.median_iterations = median(std::move(iters));
        return arm;
    };
    summary.variant = fill_arm(variant);
    summary.baseline = fill_arm(baseline);

    for (std::size_t k = 0; k < variant.rows.size(); ++k) {
        const auto& v = variant.rows[k];
        const auto& b = baseline.rows[k];
        if (!v.iterations_to_target || !b.iterations_to_target) {
            summary.excluded_seeds.push_back(v.seed);
            continue;
        }
        const int diff = *v.iterations_to_target - *b.iterations_to_target;
        summary.paired.push_back({v.seed, *v.iterations_to_target, *b.iterations_to_target,
                                  diff});
        if (diff > 0) {
            ++summary.positive_differences;
        } else if (diff < 0) {
            ++summary.negative_differences;
        } else {
            ++summary.zero_differences;
        }
    }
    summary.sign_test_p =
        sign_test_p_value(summary.positive_differences, summary.negative_differences);
    return summary;
}

nlohmann::json to_json(const BenchReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
        nlohmann::json r{{"seed", row.seed}, {"final_length", row.final_length}};
        if (row.iterations_to_target) {
            r["iterations_to_target"] = *row.iterations_to_target;
        } else {
            r["iterations_to_target"] = nullptr;
        }
        rows.push_back(std::move(r));
    }
    return nlohmann::json{{"instance", report.instance},
                          {"arm", report.arm},
                          {"config", aco::config_to_json(report.config)},
                          {"target", report.target},
                          {"rows", std::move(rows)}};
}

nlohmann::json to_json(const ComparisonSummary& summary) {
    auto arm_json = [](const ComparisonSummary::Arm& arm) {
        nlohmann::json j{{"median_final", arm.median_final},
                         {"missed_target", arm.missed_target}};
        if (arm.median_iterations) {
            j["median_iterations_to_target"] = *arm.median_iterations;
        } else {
            j["median_iterations_to_target"] = nullptr;
        }
        return j;
    };
    nlohmann::json paired = nlohmann::json::array();
    for (const auto& sample : summary.paired) {
        paired.push_back({{"seed", sample.seed},
                          {"variant", sample.variant_iterations},
                          {"baseline", sample.baseline_iterations},
                          {"difference", sample.difference}});
    }
    return nlohmann::json{{"instance", summary.instance},
                          {"target", summary.target},
                          {"variant", arm_json(summary.variant)},
                          {"baseline", arm_json(summary.baseline)},
                          {"paired", std::move(paired)},
                          {"excluded_seeds", summary.excluded_seeds},
                          {"sign_test",
                           {{"positive", summary.positive_differences},
                            {"negative", summary.negative_differences},
                            {"ties", summary.zero_differences},
                            {"p_value", summary.sign_test_p}}}};
}

}  // namespace newscycle::bench
