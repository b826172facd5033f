#pragma once

#include <Eigen/Dense>

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace newscycle::tsp {

enum class Source { TsplibEuc2d, TsplibExplicit, QAnalysis, Synthetic };

const char* source_name(Source source);

// Symmetric nonnegative cost matrix with zero diagonal. For EUC_2D instances
// the node coordinates are kept so serialization round-trips.
struct TspInstance {
    std::string name;
    Source source = Source::Synthetic;
    Eigen::MatrixXd cost;
    Eigen::Matrix<double, Eigen::Dynamic, 2> coords;  // rows == n for EUC_2D, else 0

    int n() const { return static_cast<int>(cost.rows()); }
};

struct Tour {
    std::vector<int> order;  // permutation of 0..n-1
    double length = 0.0;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// TSPLIB subset: EDGE_WEIGHT_TYPE EUC_2D, or EXPLICIT with FULL_MATRIX,
// UPPER_ROW or LOWER_DIAG_ROW. EUC_2D costs use the TSPLIB convention
// nint(d) = floor(d + 0.5).
TspInstance parse_tsplib(const std::string& text);
TspInstance load_tsplib_file(const std::string& path);
std::string serialize_tsplib(const TspInstance& inst);

TspInstance from_matrix(std::string name, Eigen::MatrixXd cost, Source source);

// Builds an instance from 2-D points; with round_costs the TSPLIB integer
// rounding is applied, otherwise exact Euclidean distances are kept.
TspInstance from_points(std::string name,
                        const Eigen::Matrix<double, Eigen::Dynamic, 2>& points,
                        bool round_costs);

// Cycle cost including the closing edge. Throws if order is not a permutation
// of 0..n-1.
double tour_length(const Eigen::MatrixXd& cost, std::span<const int> order);
inline double tour_length(const TspInstance& inst, std::span<const int> order) {
    return tour_length(inst.cost, order);
}

// Exact optimum by exhaustive search, n <= 10. City 0 is fixed and reversed
// duplicates are skipped; ties resolve to the lexicographically smallest
// order.
Tour brute_force_optimum(const TspInstance& inst);

// Greedy tour from `start`; distance ties break to the lowest city index.
Tour nearest_neighbour(const TspInstance& inst, int start);

// CSV catalog "instance,best_known" of reference optima.
std::map<std::string, double> load_optimum_catalog(const std::string& path);

}  // namespace newscycle::tsp
