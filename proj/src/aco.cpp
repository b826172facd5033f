#include "newscycle/aco.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <thread>

namespace newscycle::aco {

namespace {

void bounds(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("SolverConfig: ") + what);
}

// Exponent fast paths keep the variant and baseline arithmetic identical and
// keep pow out of the inner loop for the default parameters.
inline double trail_pow(double x, double e) {
    if (e == 1.0) return x;
    if (e == 0.0) return 1.0;
    return std::pow(x, e);
}

inline double no_entry_penalty(double tau_neg, double gamma) {
    if (gamma == 0.0) return 1.0;
    const double base = 1.0 + tau_neg;
    if (gamma == 1.0) return 1.0 / base;
    return std::pow(base, -gamma);
}

inline double variant_weight(const SolverState& s, int i, int j) {
    return trail_pow(s.field.tau_pos(i, j), s.config.alpha) * s.heuristic_pow(i, j) *
           no_entry_penalty(s.field.tau_neg(i, j), s.config.gamma);
}

inline double baseline_weight(const SolverState& s, int i, int j) {
    return trail_pow(s.field.tau_pos(i, j), s.config.alpha) * s.heuristic_pow(i, j);
}

// One construction step sequence shared by both code paths so the RNG draw
// order is fixed: start city, then per step one exploit/explore draw and one
// roulette draw when exploring.
template <typename WeightFn>
tsp::Tour construct_with(const SolverState& state, rng::Xoshiro256StarStar& ant_rng,
                         WeightFn&& weight) {
    const int n = state.instance.n();
    tsp::Tour tour;
    tour.order.reserve(static_cast<std::size_t>(n));
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    std::vector<double> w(static_cast<std::size_t>(n), 0.0);

    int current = static_cast<int>(ant_rng.next_below(static_cast<std::uint32_t>(n)));
    visited[static_cast<std::size_t>(current)] = 1;
    tour.order.push_back(current);

    for (int step = 1; step < n; ++step) {
        const double q = ant_rng.next_double();
        double total = 0.0;
        double best_w = -1.0;
        int best_j = -1;
        for (int j = 0; j < n; ++j) {
            if (visited[static_cast<std::size_t>(j)]) {
                w[static_cast<std::size_t>(j)] = 0.0;
                continue;
            }
            const double wj = weight(state, current, j);
            w[static_cast<std::size_t>(j)] = wj;
            total += wj;
            if (wj > best_w) {  // strict: ties keep the lowest index
                best_w = wj;
                best_j = j;
            }
        }
        int chosen = best_j;
        if (q >= state.config.q0) {
            const double r = ant_rng.next_double() * total;
            double cumulative = 0.0;
            chosen = -1;
            for (int j = 0; j < n; ++j) {
                if (visited[static_cast<std::size_t>(j)]) continue;
                cumulative += w[static_cast<std::size_t>(j)];
                chosen = j;  // falls through to the last feasible city
                if (r < cumulative) break;
            }
        }
        visited[static_cast<std::size_t>(chosen)] = 1;
        tour.order.push_back(chosen);
        current = chosen;
    }
    tour.length = tsp::tour_length(state.instance.cost, tour.order);
    return tour;
}

template <typename Fn>
void for_each_edge(const tsp::Tour& tour, Fn&& fn) {
    const auto& o = tour.order;
    for (std::size_t k = 0; k + 1 < o.size(); ++k) fn(o[k], o[k + 1]);
    fn(o.back(), o.front());
}

void refresh_best(SolverState& state, std::span<const tsp::Tour> tours) {
    for (const auto& tour : tours) {
        if (state.best.order.empty() || tour.length < state.best.length) {
            state.best = tour;
        }
    }
}

void update_pheromones_impl(SolverState& state, std::span<const tsp::Tour> tours,
                            bool with_negative) {
    if (tours.empty()) throw std::invalid_argument("update_pheromones: no tours");
    refresh_best(state, tours);

    const auto& cfg = state.config;
    state.field.tau_pos *= (1.0 - cfg.rho_pos);
    if (with_negative) state.field.tau_neg *= (1.0 - cfg.rho_neg);

    const double deposit = cfg.rho_pos / std::max(state.best.length, kCostEpsilon);
    for_each_edge(state.best, [&](int i, int j) {
        state.field.tau_pos(i, j) += deposit;
        state.field.tau_pos(j, i) = state.field.tau_pos(i, j);
    });

    if (!with_negative) return;

    std::size_t best_idx = 0, worst_idx = 0;
    for (std::size_t k = 1; k < tours.size(); ++k) {
        if (tours[k].length < tours[best_idx].length) best_idx = k;
        if (tours[k].length > tours[worst_idx].length) worst_idx = k;
    }
    const int n = state.instance.n();
    std::vector<char> on_best(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    for_each_edge(tours[best_idx], [&](int i, int j) {
        on_best[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                static_cast<std::size_t>(j)] = 1;
        on_best[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) +
                static_cast<std::size_t>(i)] = 1;
    });
    for_each_edge(tours[worst_idx], [&](int i, int j) {
        if (on_best[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                    static_cast<std::size_t>(j)]) {
            return;
        }
        const double marked =
            std::min(state.field.tau_neg(i, j) + cfg.neg_deposit, cfg.tau_neg_max);
        state.field.tau_neg(i, j) = marked;
        state.field.tau_neg(j, i) = marked;
    });
}

SolveResult run_engine(const tsp::TspInstance& inst, const SolverConfig& config,
                       bool with_negative) {
    SolverState state = init_solver(inst, config);
    const auto& cfg = state.config;
    const int ants = cfg.ants;

    std::vector<tsp::Tour> tours(static_cast<std::size_t>(ants));
    auto construct_one = [&](std::uint64_t iteration, int ant) {
        auto stream = rng::make_stream(cfg.seed, iteration, static_cast<std::uint64_t>(ant));
        tours[static_cast<std::size_t>(ant)] =
            with_negative ? construct_with(state, stream, variant_weight)
                          : construct_with(state, stream, baseline_weight);
    };

    SolveResult result;
    result.instance_name = inst.name;
    result.algorithm = with_negative ? "double-pheromone" : "acs-baseline";
    result.config = cfg;
    result.seed = cfg.seed;
    result.trace.reserve(static_cast<std::size_t>(cfg.iterations));

    for (int iteration = 0; iteration < cfg.iterations; ++iteration) {
        if (cfg.threads > 1) {
            std::vector<std::thread> workers;
            const int stride = cfg.threads;
            workers.reserve(static_cast<std::size_t>(stride));
            for (int t = 0; t < stride; ++t) {
                workers.emplace_back([&, t] {
                    for (int a = t; a < ants; a += stride) {
                        construct_one(static_cast<std::uint64_t>(iteration), a);
                    }
                });
            }
            for (auto& worker : workers) worker.join();
        } else {
            for (int a = 0; a < ants; ++a) {
                construct_one(static_cast<std::uint64_t>(iteration), a);
            }
        }
        for (const auto& tour : tours) apply_local_update(state, tour);
        update_pheromones_impl(state, tours, with_negative);
        result.trace.push_back(state.best.length);
        result.iterations_run = iteration + 1;
        if (cfg.target_length && state.best.length <= *cfg.target_length) break;
    }
    result.best = state.best;
    return result;
}

std::string format_double(double value) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, end);
}

}  // namespace

void SolverConfig::validate() const {
    bounds(ants >= 0, "ants must be >= 0 (0 = one per city)");
    bounds(alpha >= 0.0, "alpha must be >= 0");
    bounds(beta >= 0.0, "beta must be >= 0");
    bounds(gamma >= 0.0, "gamma must be >= 0");
    bounds(rho_pos > 0.0 && rho_pos < 1.0, "rho_pos must be in (0,1)");
    bounds(rho_neg > 0.0 && rho_neg < 1.0, "rho_neg must be in (0,1)");
    bounds(q0 >= 0.0 && q0 <= 1.0, "q0 must be in [0,1]");
    bounds(neg_deposit >= 0.0, "neg_deposit must be >= 0");
    bounds(tau_neg_max > 0.0, "tau_neg_max must be > 0");
    bounds(iterations >= 1, "iterations must be >= 1");
    bounds(threads >= 1, "threads must be >= 1");
    bounds(!target_length || *target_length > 0.0, "target_length must be > 0");
}

SolverState init_solver(const tsp::TspInstance& inst, const SolverConfig& config) {
    config.validate();
    const int n = inst.n();
    if (n < 3) {
        throw InfeasibleError("solver needs at least 3 cities, got " + std::to_string(n));
    }
    SolverState state;
    state.instance = inst;
    state.config = config;
    if (state.config.ants == 0) state.config.ants = n;

    const double nn_length = tsp::nearest_neighbour(inst, 0).length;
    state.field.tau0 = 1.0 / (n * std::max(nn_length, kCostEpsilon));
    state.field.tau_pos = Eigen::MatrixXd::Constant(n, n, state.field.tau0);
    state.field.tau_neg = Eigen::MatrixXd::Zero(n, n);
    state.heuristic_pow = inst.cost.unaryExpr([beta = config.beta](double c) {
        return std::pow(1.0 / std::max(c, kCostEpsilon), beta);
    });
    state.best.length = std::numeric_limits<double>::infinity();
    return state;
}

Eigen::VectorXd transition_weights(const SolverState& state, int current,
                                   const std::vector<char>& visited) {
    const int n = state.instance.n();
    if (current < 0 || current >= n) throw std::out_of_range("current city out of range");
    if (visited.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("visited mask has wrong size");
    }
    Eigen::VectorXd weights = Eigen::VectorXd::Zero(n);
    bool any = false;
    for (int j = 0; j < n; ++j) {
        if (j == current || visited[static_cast<std::size_t>(j)]) continue;
        weights(j) = variant_weight(state, current, j);
        any = true;
    }
    if (!any) throw std::invalid_argument("transition_weights: all cities visited");
    return weights;
}

tsp::Tour construct_tour(const SolverState& state, rng::Xoshiro256StarStar& ant_rng) {
    return construct_with(state, ant_rng, variant_weight);
}

void apply_local_update(SolverState& state, const tsp::Tour& tour) {
    const auto& cfg = state.config;
    for_each_edge(tour, [&](int i, int j) {
        const double updated =
            (1.0 - cfg.rho_pos) * state.field.tau_pos(i, j) + cfg.rho_pos * state.field.tau0;
        state.field.tau_pos(i, j) = updated;
        state.field.tau_pos(j, i) = updated;
    });
}

void update_pheromones(SolverState& state, std::span<const tsp::Tour> iteration_tours) {
    update_pheromones_impl(state, iteration_tours, true);
}

SolveResult run(const tsp::TspInstance& inst, const SolverConfig& config) {
    return run_engine(inst, config, true);
}

SolveResult run_acs_baseline(const tsp::TspInstance& inst, const SolverConfig& config) {
    return run_engine(inst, config, false);
}

DocumentCycle cycle_corpus(const qanalysis::DistanceMatrix& matrix,
                           const SolverConfig& config) {
    const int n = matrix.n();
    if (n < 3) {
        throw InfeasibleError("cycle needs at least 3 documents, got " + std::to_string(n));
    }
    auto inst = tsp::from_matrix("corpus", matrix.entries, tsp::Source::QAnalysis);
    DocumentCycle cycle;
    cycle.solve = run(inst, config);

    const auto& order = cycle.solve.best.order;
    const auto id_of = [&](int pos) -> const std::string& {
        return matrix.ids[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])];
    };
    int pivot = 0;
    for (int k = 1; k < n; ++k) {
        if (id_of(k) < id_of(pivot)) pivot = k;
    }
    std::vector<int> canonical(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        canonical[static_cast<std::size_t>(k)] =
            order[static_cast<std::size_t>((pivot + k) % n)];
    }
    const auto& ids = matrix.ids;
    if (ids[static_cast<std::size_t>(canonical[1])] >
        ids[static_cast<std::size_t>(canonical[static_cast<std::size_t>(n) - 1])]) {
        std::reverse(canonical.begin() + 1, canonical.end());
    }

    cycle.ids.reserve(static_cast<std::size_t>(n));
    cycle.hop_distances.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const int a = canonical[static_cast<std::size_t>(k)];
        const int b = canonical[static_cast<std::size_t>((k + 1) % n)];
        cycle.ids.push_back(ids[static_cast<std::size_t>(a)]);
        cycle.hop_distances.push_back(matrix.entries(a, b));
    }
    cycle.total_length = cycle.solve.best.length;
    return cycle;
}

nlohmann::json config_to_json(const SolverConfig& config) {
    nlohmann::json j{{"ants", config.ants},
                     {"alpha", config.alpha},
                     {"beta", config.beta},
                     {"gamma", config.gamma},
                     {"rho_pos", config.rho_pos},
                     {"rho_neg", config.rho_neg},
                     {"q0", config.q0},
                     {"neg_deposit", config.neg_deposit},
                     {"tau_neg_max", config.tau_neg_max},
                     {"iterations", config.iterations},
                     {"seed", config.seed},
                     {"threads", config.threads}};
    if (config.target_length) {
        j["target_length"] = *config.target_length;
    } else {
        j["target_length"] = nullptr;
    }
    return j;
}

SolverConfig config_from_json(const nlohmann::json& j) {
    SolverConfig config;
    config.ants = j.at("ants").get<int>();
    config.alpha = j.at("alpha").get<double>();
    config.beta = j.at("beta").get<double>();
    config.gamma = j.at("gamma").get<double>();
    config.rho_pos = j.at("rho_pos").get<double>();
    config.rho_neg = j.at("rho_neg").get<double>();
    config.q0 = j.at("q0").get<double>();
    config.neg_deposit = j.at("neg_deposit").get<double>();
    config.tau_neg_max = j.at("tau_neg_max").get<double>();
    config.iterations = j.at("iterations").get<int>();
    config.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("threads")) config.threads = j.at("threads").get<int>();
    if (j.contains("target_length") && !j.at("target_length").is_null()) {
        config.target_length = j.at("target_length").get<double>();
    }
    return config;
}

nlohmann::json to_json(const SolveResult& result) {
    return nlohmann::json{{"instance", result.instance_name},
                          {"algorithm", result.algorithm},
                          {"config", config_to_json(result.config)},
                          {"seed", result.seed},
                          {"best_order", result.best.order},
                          {"best_length", result.best.length},
                          {"iterations_run", result.iterations_run},
                          {"trace", result.trace}};
}

std::string trace_csv(std::span<const double> trace) {
    std::string out = "iteration,best_so_far\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
        out += std::to_string(i + 1);
        out += ',';
        out += format_double(trace[i]);
        out += '\n';
    }
    return out;
}

}  // namespace newscycle::aco
