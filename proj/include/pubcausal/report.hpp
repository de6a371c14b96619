#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pubcausal/trends.hpp"

namespace pubcausal {

void write_grid_csv(const std::string& path, const PersistenceGrid& grid);
void render_grid_svg(const std::string& path, const PersistenceGrid& grid);

void write_overlap_csv(const std::string& path, const OverlapSummary& overlap);

void write_series_csv(const std::string& path, const EffectTimeSeries& series);
// Diverging shading: positive cells red-family, negative blue-family,
// intensity proportional to |estimate| clamped at 1.
void render_series_svg(const std::string& path, const EffectTimeSeries& series);

using YearPct = std::pair<int, std::optional<double>>;
void write_persistence_pct_csv(const std::string& path, const std::vector<YearPct>& pcts);
void render_persistence_pct_svg(const std::string& path, const std::vector<YearPct>& pcts);

void write_recurrent_csv(const std::string& path, const std::vector<RecurrentEdge>& edges);

struct ReportBundle {
    int year_min = 2014;
    int year_max = 2019;
    std::vector<PersistenceGrid> grids;
    std::optional<OverlapSummary> overlap;
    std::vector<EffectTimeSeries> series;
    std::vector<YearPct> persistence_pcts;
    std::vector<RecurrentEdge> recurrent;
};

// Writes every report as "{report}_{year_range}.{csv,svg}" under out_dir.
// Returns the file names written, in order.
std::vector<std::string> render_reports(const ReportBundle& bundle, const std::string& out_dir);

}  // namespace pubcausal
