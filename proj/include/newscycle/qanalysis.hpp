#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "newscycle/corpus.hpp"

namespace newscycle::qanalysis {

// Document-keyword incidence. Row i is the simplex of document i: the set of
// keywords it carries, of top dimension |K_i| - 1. shared_counts(i,j) caches
// |K_i ∩ K_j| so every pairwise query is O(1) after construction.
struct IncidenceStructure {
    std::vector<std::string> doc_ids;
    std::vector<std::string> vocabulary;  // sorted union of all keywords
    Eigen::MatrixXi membership;           // docs x keywords, entries in {0,1}
    Eigen::MatrixXi shared_counts;        // membership * membershipᵀ

    int docs() const { return static_cast<int>(membership.rows()); }
    int keywords() const { return static_cast<int>(membership.cols()); }
};

enum class Policy { Mean, Max };

IncidenceStructure build_incidence(const corpus::Corpus& corpus);

// q̂_i = |K_i| - 1, the dimension of document i's own simplex.
int top_dimension(const IncidenceStructure& inc, int i);

// q_ij = |K_i ∩ K_j| - 1; -1 encodes disjointness. shared_face_dim(i,i) = q̂_i.
int shared_face_dim(const IncidenceStructure& inc, int i, int j);

// (q̂_i - q_ij) / (q_ij + 1); nullopt when the pair is disjoint. Zero exactly
// when K_i ⊆ K_j. Not symmetric.
std::optional<double> eccentricity_directed(const IncidenceStructure& inc, int i, int j);

// Symmetrized eccentricity; nullopt when disjoint; zero on the diagonal.
std::optional<double> dissimilarity(const IncidenceStructure& inc, int i, int j,
                                    Policy policy);

struct DistanceMatrix {
    std::vector<std::string> ids;
    Eigen::MatrixXd entries;
    double cap = 0.0;  // finite substitute used for disjoint pairs

    int n() const { return static_cast<int>(entries.rows()); }
};

// Symmetric matrix of dissimilarities with disjoint pairs replaced by
// cap = 1 + max finite off-diagonal entry (cap = 1 when everything is
// disjoint). Requires at least 2 documents.
DistanceMatrix distance_matrix(const IncidenceStructure& inc, Policy policy);

// Partition of the documents with q̂_i >= q into q-connectivity classes:
// transitive closures of "shares a face of dimension >= q". Components and
// their members are listed in ascending index order.
std::vector<std::vector<int>> q_components(const IncidenceStructure& inc, int q);

// Component counts for q = max q̂ down to 0.
std::vector<int> structure_vector(const IncidenceStructure& inc);

std::string to_csv(const DistanceMatrix& dm);
nlohmann::json to_json(const DistanceMatrix& dm);

}  // namespace newscycle::qanalysis
