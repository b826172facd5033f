#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "newscycle/qanalysis.hpp"
#include "newscycle/rng.hpp"
#include "newscycle/tsp.hpp"

namespace newscycle::aco {

struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolverConfig {
    int ants = 0;                // 0 = one ant per city
    double alpha = 1.0;          // attraction-trail exponent
    double beta = 2.0;           // heuristic exponent
    double gamma = 1.0;          // no-entry penalty exponent
    double rho_pos = 0.1;        // attraction evaporation, in (0,1)
    double rho_neg = 0.05;       // no-entry evaporation, in (0,1)
    double q0 = 0.9;             // exploitation probability
    double neg_deposit = 1.0;    // no-entry deposit per marked edge
    double tau_neg_max = 10.0;   // clamp so no edge becomes forbidden
    int iterations = 2000;
    std::uint64_t seed = 1;
    int threads = 1;             // ants per iteration may construct in parallel
    std::optional<double> target_length;  // optional early stop

    void validate() const;  // throws std::invalid_argument on any bound breach
    bool operator==(const SolverConfig&) const = default;
};

// Paired trails. tau_pos attracts; tau_neg is the no-entry signal deposited on
// unrewarding edges. Both stay symmetric; tau_pos stays strictly positive and
// tau_neg stays within [0, tau_neg_max].
struct PheromoneField {
    Eigen::MatrixXd tau_pos;
    Eigen::MatrixXd tau_neg;
    double tau0 = 0.0;
};

struct SolverState {
    tsp::TspInstance instance;
    SolverConfig config;  // ants resolved
    PheromoneField field;
    Eigen::MatrixXd heuristic_pow;  // (1 / max(cost, eps))^beta, precomputed
    tsp::Tour best;                 // best-so-far; empty until first update
};

// Guard against zero-cost edges (identical documents) and zero-length tours.
inline constexpr double kCostEpsilon = 1e-9;

// tau0 = 1 / (n * L_nn); tau_pos uniform at tau0; tau_neg all zero.
SolverState init_solver(const tsp::TspInstance& inst, const SolverConfig& config);

// Unnormalized selection weights from `current` over unvisited cities:
// w_ij = tau_pos^alpha * eta^beta * (1 + tau_neg)^(-gamma). Visited cities get
// weight 0; the caller normalizes.
Eigen::VectorXd transition_weights(const SolverState& state, int current,
                                   const std::vector<char>& visited);

// Builds one Hamiltonian cycle against a frozen pheromone snapshot using the
// pseudo-random proportional rule: with probability q0 take the argmax weight
// (ties to the lowest index), otherwise sample proportionally. The ACS local
// update for the constructed tour is applied separately, in ant-index order,
// via apply_local_update — that is what keeps parallel and serial ants
// bit-identical.
tsp::Tour construct_tour(const SolverState& state, rng::Xoshiro256StarStar& ant_rng);

// tau_pos <- (1-rho_pos)*tau_pos + rho_pos*tau0 on every edge of the tour.
void apply_local_update(SolverState& state, const tsp::Tour& tour);

// Global phase: refreshes best-so-far, evaporates both trails, deposits
// rho_pos/best_length on the best-so-far edges, and marks every edge of the
// iteration-worst tour that the iteration-best tour does not use with
// neg_deposit (clamped to tau_neg_max).
void update_pheromones(SolverState& state, std::span<const tsp::Tour> iteration_tours);

struct SolveResult {
    std::string instance_name;
    std::string algorithm;  // "double-pheromone" or "acs-baseline"
    tsp::Tour best;
    std::vector<double> trace;  // best-so-far length after each iteration
    int iterations_run = 0;
    SolverConfig config;
    std::uint64_t seed = 0;
};

SolveResult run(const tsp::TspInstance& inst, const SolverConfig& config);

// Classic single-pheromone ACS under the same positive-trail rules; ignores
// the negative-trail machinery entirely. With gamma = 0 and neg_deposit = 0
// `run` reproduces this trajectory bit for bit.
SolveResult run_acs_baseline(const tsp::TspInstance& inst, const SolverConfig& config);

struct DocumentCycle {
    std::vector<std::string> ids;        // cycle order, canonical rotation
    std::vector<double> hop_distances;   // hop k: ids[k] -> ids[(k+1) % n]
    double total_length = 0.0;
    SolveResult solve;
};

// Wraps a q-analysis distance matrix as a TSP instance, solves it, and
// canonicalizes the cycle to start at the lexicographically smallest id with
// its smaller neighbour second.
DocumentCycle cycle_corpus(const qanalysis::DistanceMatrix& matrix,
                           const SolverConfig& config);

nlohmann::json config_to_json(const SolverConfig& config);
SolverConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SolveResult& result);
std::string trace_csv(std::span<const double> trace);

}  // namespace newscycle::aco
