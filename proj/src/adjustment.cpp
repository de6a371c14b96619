#include "pubcausal/adjustment.hpp"

#include <algorithm>
#include <map>

#include "pubcausal/common.hpp"

namespace pubcausal {

size_t DiscreteTable::column(const std::string& name) const {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw DataError("column not in data: " + name);
    return static_cast<size_t>(it - names.begin());
}

namespace {

constexpr size_t kMaxLevels = 8;

void check_levels(const std::vector<double>& column, const std::string& name) {
    std::vector<double> levels;
    for (double v : column) {
        if (std::find(levels.begin(), levels.end(), v) == levels.end()) {
            levels.push_back(v);
            if (levels.size() > kMaxLevels)
                throw DataError("column '" + name + "' has more than 8 levels");
        }
    }
}

struct StratumCounts {
    size_t total = 0;        // rows with PA = z
    size_t with_x = 0;       // rows with PA = z, X = x_val
    size_t with_x_and_y = 0; // rows with PA = z, X = x_val, Y = y_val
    size_t with_y = 0;       // rows with PA = z, Y = y_val
};

}  // namespace

double do_effect(const DiscreteTable& data, const std::vector<size_t>& parent_columns,
                 size_t x_column, double x_val, size_t y_column, double y_val) {
    const size_t n = data.row_count();
    if (n == 0) throw DataError("do_effect: empty data");
    check_levels(data.columns[x_column], data.names[x_column]);
    for (size_t pc : parent_columns) check_levels(data.columns[pc], data.names[pc]);

    if (parent_columns.empty()) {
        size_t with_x = 0, with_x_and_y = 0, with_y = 0;
        for (size_t r = 0; r < n; ++r) {
            if (data.columns[y_column][r] == y_val) ++with_y;
            if (data.columns[x_column][r] == x_val) {
                ++with_x;
                if (data.columns[y_column][r] == y_val) ++with_x_and_y;
            }
        }
        if (with_x == 0)
            return static_cast<double>(with_y) / static_cast<double>(n);  // no support at all
        return static_cast<double>(with_x_and_y) / static_cast<double>(with_x);
    }

    std::map<std::vector<double>, StratumCounts> strata;
    std::vector<double> key(parent_columns.size());
    for (size_t r = 0; r < n; ++r) {
        for (size_t k = 0; k < parent_columns.size(); ++k)
            key[k] = data.columns[parent_columns[k]][r];
        StratumCounts& s = strata[key];
        ++s.total;
        const bool y_match = data.columns[y_column][r] == y_val;
        if (y_match) ++s.with_y;
        if (data.columns[x_column][r] == x_val) {
            ++s.with_x;
            if (y_match) ++s.with_x_and_y;
        }
    }

    double prob = 0.0;
    for (const auto& [z, s] : strata) {
        const double p_z = static_cast<double>(s.total) / static_cast<double>(n);
        if (s.with_x > 0) {
            prob += p_z * static_cast<double>(s.with_x_and_y) / static_cast<double>(s.with_x);
        } else {
            // zero (x, z) support: condition on the stratum alone
            prob += p_z * static_cast<double>(s.with_y) / static_cast<double>(s.total);
        }
    }
    return prob;
}

double do_effect(const Cpdag& graph, const DiscreteTable& data, const std::string& x, double x_val,
                 const std::string& y, double y_val) {
    const size_t x_col = data.column(x);
    const size_t y_col = data.column(y);
    const auto it = std::find(graph.variables.begin(), graph.variables.end(), x);
    if (it == graph.variables.end()) throw DataError("variable not in graph: " + x);
    const size_t xv = static_cast<size_t>(it - graph.variables.begin());
    std::vector<size_t> parents;
    for (size_t pa : graph.parents(xv)) parents.push_back(data.column(graph.variables[pa]));
    return do_effect(data, parents, x_col, x_val, y_col, y_val);
}

double do_effect(const EnsembleGraph& graph, const DiscreteTable& data, const std::string& x,
                 double x_val, const std::string& y, double y_val) {
    std::vector<size_t> parents;
    for (const auto& e : graph.edges) {
        if (e.orientation == EdgeOrientation::forward && e.b == x)
            parents.push_back(data.column(e.a));
        else if (e.orientation == EdgeOrientation::backward && e.a == x)
            parents.push_back(data.column(e.b));
    }
    return do_effect(data, parents, data.column(x), x_val, data.column(y), y_val);
}

}  // namespace pubcausal
