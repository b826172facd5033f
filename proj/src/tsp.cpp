#include "newscycle/tsp.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace newscycle::tsp {

namespace {

std::string trim(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = text.find_last_not_of(" \t\r\n");
    return text.substr(first, last - first + 1);
}

// TSPLIB nint: round half up.
double tsplib_round(double d) { return std::floor(d + 0.5); }

std::string format_double(double value) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, end);
}

void check_square_symmetric(const Eigen::MatrixXd& cost) {
    if (cost.rows() != cost.cols()) throw ParseError("cost matrix is not square");
    for (Eigen::Index i = 0; i < cost.rows(); ++i) {
        if (cost(i, i) != 0.0) throw ParseError("cost matrix has a nonzero diagonal");
        for (Eigen::Index j = i + 1; j < cost.cols(); ++j) {
            if (cost(i, j) != cost(j, i)) throw ParseError("cost matrix is asymmetric");
            if (cost(i, j) < 0.0) throw ParseError("cost matrix has a negative entry");
        }
    }
}

void validate_permutation(std::span<const int> order, int n) {
    if (static_cast<int>(order.size()) != n) {
        throw std::invalid_argument("tour has " + std::to_string(order.size()) +
                                    " cities, instance has " + std::to_string(n));
    }
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int city : order) {
        if (city < 0 || city >= n || seen[static_cast<std::size_t>(city)]) {
            throw std::invalid_argument("tour is not a permutation of 0.." +
                                        std::to_string(n - 1));
        }
        seen[static_cast<std::size_t>(city)] = 1;
    }
}

}  // namespace

const char* source_name(Source source) {
    switch (source) {
        case Source::TsplibEuc2d: return "tsplib-euc2d";
        case Source::TsplibExplicit: return "tsplib-explicit";
        case Source::QAnalysis: return "qanalysis";
        case Source::Synthetic: return "synthetic";
    }
    return "unknown";
}

TspInstance parse_tsplib(const std::string& text) {
    std::istringstream in(text);
    std::string line;

    std::string name;
    int dimension = -1;
    std::string weight_type;
    std::string weight_format;
    std::vector<double> coords_flat;
    std::vector<double> weights;
    bool saw_coords = false, saw_weights = false;

    auto read_numbers = [&in](std::vector<double>& into, std::size_t count,
                              const char* what) {
        double value;
        while (into.size() < count && in >> value) into.push_back(value);
        if (into.size() < count) {
            throw ParseError(std::string("truncated ") + what + ": expected " +
                             std::to_string(count) + " values, got " +
                             std::to_string(into.size()));
        }
    };

    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        if (line == "EOF") break;

        const auto colon = line.find(':');
        std::string key = trim(colon == std::string::npos ? line : line.substr(0, colon));
        std::string value = colon == std::string::npos ? "" : trim(line.substr(colon + 1));

        if (key == "NAME") {
            name = value;
        } else if (key == "TYPE") {
            if (value != "TSP") throw ParseError("unsupported problem type: " + value);
        } else if (key == "DIMENSION") {
            try {
                dimension = std::stoi(value);
            } catch (const std::exception&) {
                throw ParseError("invalid DIMENSION value: " + value);
            }
            if (dimension < 1) throw ParseError("invalid DIMENSION");
        } else if (key == "EDGE_WEIGHT_TYPE") {
            if (value != "EUC_2D" && value != "EXPLICIT") {
                throw ParseError("unsupported EDGE_WEIGHT_TYPE: " + value);
            }
            weight_type = value;
        } else if (key == "EDGE_WEIGHT_FORMAT") {
            weight_format = value;
        } else if (key == "NODE_COORD_SECTION") {
            if (dimension < 1) throw ParseError("NODE_COORD_SECTION before DIMENSION");
            read_numbers(coords_flat, static_cast<std::size_t>(dimension) * 3,
                         "NODE_COORD_SECTION");
            saw_coords = true;
        } else if (key == "EDGE_WEIGHT_SECTION") {
            if (dimension < 1) throw ParseError("EDGE_WEIGHT_SECTION before DIMENSION");
            if (weight_format.empty()) throw ParseError("missing EDGE_WEIGHT_FORMAT");
            const auto n = static_cast<std::size_t>(dimension);
            std::size_t expected;
            if (weight_format == "FULL_MATRIX") {
                expected = n * n;
            } else if (weight_format == "UPPER_ROW") {
                expected = n * (n - 1) / 2;
            } else if (weight_format == "LOWER_DIAG_ROW") {
                expected = n * (n + 1) / 2;
            } else {
                throw ParseError("unsupported EDGE_WEIGHT_FORMAT: " + weight_format);
            }
            read_numbers(weights, expected, "EDGE_WEIGHT_SECTION");
            saw_weights = true;
        } else if (key == "COMMENT" || key == "DISPLAY_DATA_TYPE" ||
                   key == "NODE_COORD_TYPE") {
            // informational
        } else if (key == "DISPLAY_DATA_SECTION") {
            if (dimension < 1) throw ParseError("DISPLAY_DATA_SECTION before DIMENSION");
            std::vector<double> ignored;
            read_numbers(ignored, static_cast<std::size_t>(dimension) * 3,
                         "DISPLAY_DATA_SECTION");
        } else {
            throw ParseError("unrecognized TSPLIB key: " + key);
        }
    }

    if (dimension < 1) throw ParseError("missing DIMENSION");
    if (weight_type.empty()) throw ParseError("missing EDGE_WEIGHT_TYPE");

    TspInstance inst;
    inst.name = name;
    const int n = dimension;

    if (weight_type == "EUC_2D") {
        if (!saw_coords) throw ParseError("EUC_2D instance without NODE_COORD_SECTION");
        inst.source = Source::TsplibEuc2d;
        inst.coords.resize(n, 2);
        for (int i = 0; i < n; ++i) {
            inst.coords(i, 0) = coords_flat[static_cast<std::size_t>(i) * 3 + 1];
            inst.coords(i, 1) = coords_flat[static_cast<std::size_t>(i) * 3 + 2];
        }
        inst.cost = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const double dx = inst.coords(i, 0) - inst.coords(j, 0);
                const double dy = inst.coords(i, 1) - inst.coords(j, 1);
                const double d = tsplib_round(std::sqrt(dx * dx + dy * dy));
                inst.cost(i, j) = d;
                inst.cost(j, i) = d;
            }
        }
    } else {
        if (!saw_weights) throw ParseError("EXPLICIT instance without EDGE_WEIGHT_SECTION");
        inst.source = Source::TsplibExplicit;
        inst.cost = Eigen::MatrixXd::Zero(n, n);
        std::size_t k = 0;
        if (weight_format == "FULL_MATRIX") {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) inst.cost(i, j) = weights[k++];
        } else if (weight_format == "UPPER_ROW") {
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    inst.cost(i, j) = weights[k];
                    inst.cost(j, i) = weights[k];
                    ++k;
                }
            }
        } else {  // LOWER_DIAG_ROW
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j <= i; ++j) {
                    inst.cost(i, j) = weights[k];
                    inst.cost(j, i) = weights[k];
                    ++k;
                }
            }
        }
        check_square_symmetric(inst.cost);
    }
    return inst;
}

TspInstance load_tsplib_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read TSPLIB file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    auto inst = parse_tsplib(buf.str());
    if (inst.name.empty()) {
        const auto slash = path.find_last_of("/\\");
        auto stem = slash == std::string::npos ? path : path.substr(slash + 1);
        const auto dot = stem.find_last_of('.');
        inst.name = dot == std::string::npos ? stem : stem.substr(0, dot);
    }
    return inst;
}

std::string serialize_tsplib(const TspInstance& inst) {
    std::ostringstream out;
    out << "NAME: " << inst.name << "\n";
    out << "TYPE: TSP\n";
    out << "DIMENSION: " << inst.n() << "\n";
    if (inst.source == Source::TsplibEuc2d && inst.coords.rows() == inst.n()) {
        out << "EDGE_WEIGHT_TYPE: EUC_2D\n";
        out << "NODE_COORD_SECTION\n";
        for (int i = 0; i < inst.n(); ++i) {
            out << (i + 1) << ' ' << format_double(inst.coords(i, 0)) << ' '
                << format_double(inst.coords(i, 1)) << "\n";
        }
    } else {
        out << "EDGE_WEIGHT_TYPE: EXPLICIT\n";
        out << "EDGE_WEIGHT_FORMAT: FULL_MATRIX\n";
        out << "EDGE_WEIGHT_SECTION\n";
        for (int i = 0; i < inst.n(); ++i) {
            for (int j = 0; j < inst.n(); ++j) {
                if (j) out << ' ';
                out << format_double(inst.cost(i, j));
            }
            out << "\n";
        }
    }
    out << "EOF\n";
    return out.str();
}

TspInstance from_matrix(std::string name, Eigen::MatrixXd cost, Source source) {
    check_square_symmetric(cost);
    TspInstance inst;
    inst.name = std::move(name);
    inst.source = source;
    inst.cost = std::move(cost);
    return inst;
}

TspInstance from_points(std::string name,
                        const Eigen::Matrix<double, Eigen::Dynamic, 2>& points,
                        bool round_costs) {
    const auto n = points.rows();
    TspInstance inst;
    inst.name = std::move(name);
    inst.source = round_costs ? Source::TsplibEuc2d : Source::Synthetic;
    inst.coords = points;
    inst.cost = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double d = (points.row(i) - points.row(j)).norm();
            const double c = round_costs ? tsplib_round(d) : d;
            inst.cost(i, j) = c;
            inst.cost(j, i) = c;
        }
    }
    return inst;
}

double tour_length(const Eigen::MatrixXd& cost, std::span<const int> order) {
    const int n = static_cast<int>(cost.rows());
    validate_permutation(order, n);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        total += cost(order[k], order[k + 1]);
    }
    total += cost(order[order.size() - 1], order[0]);
    return total;
}

Tour brute_force_optimum(const TspInstance& inst) {
    const int n = inst.n();
    if (n > 10) {
        throw std::invalid_argument("brute_force_optimum is limited to n <= 10, got n = " +
                                    std::to_string(n));
    }
    if (n < 3) throw std::invalid_argument("cycle problems need n >= 3");

    std::vector<int> rest(static_cast<std::size_t>(n - 1));
    for (int i = 1; i < n; ++i) rest[static_cast<std::size_t>(i - 1)] = i;

    std::vector<int> order(static_cast<std::size_t>(n));
    order[0] = 0;
    Tour best;
    best.length = std::numeric_limits<double>::infinity();
    do {
        // each undirected cycle appears once: skip the reversed direction
        if (rest.front() > rest.back()) continue;
        std::copy(rest.begin(), rest.end(), order.begin() + 1);
        const double len = tour_length(inst.cost, order);
        if (len < best.length ||
            (len == best.length && order < best.order)) {
            best.length = len;
            best.order = order;
        }
    } while (std::next_permutation(rest.begin(), rest.end()));
    return best;
}

Tour nearest_neighbour(const TspInstance& inst, int start) {
    const int n = inst.n();
    if (start < 0 || start >= n) throw std::invalid_argument("start city out of range");
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    Tour tour;
    tour.order.reserve(static_cast<std::size_t>(n));
    int current = start;
    visited[static_cast<std::size_t>(current)] = 1;
    tour.order.push_back(current);
    for (int step = 1; step < n; ++step) {
        int next = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j) {
            if (visited[static_cast<std::size_t>(j)]) continue;
            if (inst.cost(current, j) < best) {
                best = inst.cost(current, j);
                next = j;
            }
        }
        visited[static_cast<std::size_t>(next)] = 1;
        tour.order.push_back(next);
        current = next;
    }
    tour.length = tour_length(inst.cost, tour.order);
    return tour;
}

std::map<std::string, double> load_optimum_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read optimum catalog: " + path);
    std::map<std::string, double> catalog;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;
        if (line_no == 1 && line == "instance,best_known") continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ParseError(path + ": line " + std::to_string(line_no) +
                             ": expected 'instance,best_known'");
        }
        try {
            catalog[trim(line.substr(0, comma))] = std::stod(line.substr(comma + 1));
        } catch (const std::exception&) {
            throw ParseError(path + ": line " + std::to_string(line_no) +
                             ": invalid best_known value");
        }
    }
    return catalog;
}

}  // namespace newscycle::tsp
