#pragma once

#include <string>
#include <vector>

#include "pubcausal/graph.hpp"

namespace pubcausal {

// Discrete dataset: named columns of level values (small integers stored
// as doubles, at most 8 distinct levels each where required).
struct DiscreteTable {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;

    size_t column(const std::string& name) const;  // throws DataError when absent
    size_t row_count() const { return columns.empty() ? 0 : columns[0].size(); }
};

// Interventional probability P(y | do(x = x_val)) by stratifying on the
// parent configuration z of x:
//   sum_z P(y | x = x_val, z) P(z)
// Strata without (x = x_val, z) support fall back to P(y | z).
double do_effect(const DiscreteTable& data, const std::vector<size_t>& parent_columns,
                 size_t x_column, double x_val, size_t y_column, double y_val);

// Parents of x supplied by a discovery graph.
double do_effect(const Cpdag& graph, const DiscreteTable& data, const std::string& x, double x_val,
                 const std::string& y, double y_val);
double do_effect(const EnsembleGraph& graph, const DiscreteTable& data, const std::string& x,
                 double x_val, const std::string& y, double y_val);

}  // namespace pubcausal
