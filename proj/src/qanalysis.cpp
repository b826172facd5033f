#include "newscycle/qanalysis.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>
#include <stdexcept>

namespace newscycle::qanalysis {

namespace {

void check_index(const IncidenceStructure& inc, int i) {
    if (i < 0 || i >= inc.docs()) {
        throw std::out_of_range("document index " + std::to_string(i) +
                                " out of range [0," + std::to_string(inc.docs()) + ")");
    }
}

std::string csv_field(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_double(double value) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, end);
}

struct DisjointSet {
    std::vector<int> parent;

    explicit DisjointSet(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
};

}  // namespace

IncidenceStructure build_incidence(const corpus::Corpus& corpus) {
    if (corpus.documents.empty()) {
        throw std::invalid_argument("build_incidence: empty corpus");
    }
    IncidenceStructure inc;
    std::set<std::string> vocab;
    for (const auto& doc : corpus.documents) {
        if (doc.keywords.empty()) {
            throw std::invalid_argument("build_incidence: document '" + doc.id +
                                        "' has no keywords (corpus not validated)");
        }
        vocab.insert(doc.keywords.begin(), doc.keywords.end());
    }
    inc.vocabulary.assign(vocab.begin(), vocab.end());

    const int n = static_cast<int>(corpus.documents.size());
    const int k = static_cast<int>(inc.vocabulary.size());
    inc.doc_ids.reserve(static_cast<std::size_t>(n));
    inc.membership = Eigen::MatrixXi::Zero(n, k);
    for (int i = 0; i < n; ++i) {
        const auto& doc = corpus.documents[static_cast<std::size_t>(i)];
        inc.doc_ids.push_back(doc.id);
        for (const auto& kw : doc.keywords) {
            const auto it = std::lower_bound(inc.vocabulary.begin(), inc.vocabulary.end(), kw);
            inc.membership(i, static_cast<int>(it - inc.vocabulary.begin())) = 1;
        }
    }
    inc.shared_counts = inc.membership * inc.membership.transpose();
    return inc;
}

int top_dimension(const IncidenceStructure& inc, int i) {
    check_index(inc, i);
    return inc.shared_counts(i, i) - 1;
}

int shared_face_dim(const IncidenceStructure& inc, int i, int j) {
    check_index(inc, i);
    check_index(inc, j);
    return inc.shared_counts(i, j) - 1;
}

std::optional<double> eccentricity_directed(const IncidenceStructure& inc, int i, int j) {
    const int q_ij = shared_face_dim(inc, i, j);
    if (q_ij < 0) return std::nullopt;
    const int q_hat = inc.shared_counts(i, i) - 1;
    return static_cast<double>(q_hat - q_ij) / static_cast<double>(q_ij + 1);
}

std::optional<double> dissimilarity(const IncidenceStructure& inc, int i, int j,
                                    Policy policy) {
    const auto forward = eccentricity_directed(inc, i, j);
    if (!forward) return std::nullopt;
    const auto backward = eccentricity_directed(inc, j, i);
    return policy == Policy::Mean ? (*forward + *backward) / 2.0
                                  : std::max(*forward, *backward);
}

DistanceMatrix distance_matrix(const IncidenceStructure& inc, Policy policy) {
    const int n = inc.docs();
    if (n < 2) {
        throw std::invalid_argument("distance_matrix needs at least 2 documents");
    }
    DistanceMatrix dm;
    dm.ids = inc.doc_ids;
    dm.entries = Eigen::MatrixXd::Zero(n, n);

    double max_finite = 0.0;
    std::vector<std::pair<int, int>> disjoint;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (const auto d = dissimilarity(inc, i, j, policy)) {
                dm.entries(i, j) = *d;
                dm.entries(j, i) = *d;
                max_finite = std::max(max_finite, *d);
            } else {
                disjoint.emplace_back(i, j);
            }
        }
    }
    const bool all_disjoint =
        disjoint.size() == static_cast<std::size_t>(n) * (n - 1) / 2;
    dm.cap = all_disjoint ? 1.0 : 1.0 + max_finite;
    for (const auto& [i, j] : disjoint) {
        dm.entries(i, j) = dm.cap;
        dm.entries(j, i) = dm.cap;
    }
    return dm;
}

std::vector<std::vector<int>> q_components(const IncidenceStructure& inc, int q) {
    if (q < 0) throw std::invalid_argument("q_components: q must be >= 0");
    const int n = inc.docs();
    std::vector<int> eligible;
    for (int i = 0; i < n; ++i) {
        if (inc.shared_counts(i, i) - 1 >= q) eligible.push_back(i);
    }
    DisjointSet dsu(n);
    for (std::size_t a = 0; a < eligible.size(); ++a) {
        for (std::size_t b = a + 1; b < eligible.size(); ++b) {
            const int i = eligible[a], j = eligible[b];
            if (inc.shared_counts(i, j) - 1 >= q) dsu.unite(i, j);
        }
    }
    std::vector<std::vector<int>> components;
    std::vector<int> root_slot(static_cast<std::size_t>(n), -1);
    for (int i : eligible) {  // ascending, so components sort by first member
        const int root = dsu.find(i);
        if (root_slot[static_cast<std::size_t>(root)] < 0) {
            root_slot[static_cast<std::size_t>(root)] = static_cast<int>(components.size());
            components.emplace_back();
        }
        components[static_cast<std::size_t>(root_slot[static_cast<std::size_t>(root)])]
            .push_back(i);
    }
    return components;
}

std::vector<int> structure_vector(const IncidenceStructure& inc) {
    if (inc.docs() == 0) throw std::invalid_argument("structure_vector: empty incidence");
    int q_max = 0;
    for (int i = 0; i < inc.docs(); ++i) {
        q_max = std::max(q_max, inc.shared_counts(i, i) - 1);
    }
    std::vector<int> counts;
    counts.reserve(static_cast<std::size_t>(q_max) + 1);
    for (int q = q_max; q >= 0; --q) {
        counts.push_back(static_cast<int>(q_components(inc, q).size()));
    }
    return counts;
}

std::string to_csv(const DistanceMatrix& dm) {
    std::string out;
    for (int i = 0; i < dm.n(); ++i) {
        if (i) out += ',';
        out += csv_field(dm.ids[static_cast<std::size_t>(i)]);
    }
    out += '\n';
    for (int i = 0; i < dm.n(); ++i) {
        for (int j = 0; j < dm.n(); ++j) {
            if (j) out += ',';
            out += format_double(dm.entries(i, j));
        }
        out += '\n';
    }
    return out;
}

nlohmann::json to_json(const DistanceMatrix& dm) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < dm.n(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < dm.n(); ++j) row.push_back(dm.entries(i, j));
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"ids", dm.ids}, {"cap", dm.cap}, {"rows", std::move(rows)}};
}

}  // namespace newscycle::qanalysis
