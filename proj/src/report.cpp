#include "pubcausal/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pubcausal/common.hpp"
#include "pubcausal/csv.hpp"

namespace pubcausal {

namespace {

constexpr int kCell = 28;
constexpr int kLabelWidth = 220;
constexpr int kHeader = 24;

std::string svg_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

// diverging fill: red family for positive, blue family for negative,
// intensity |v| clamped at 1
std::string diverging_fill(double v) {
    const int k = static_cast<int>(std::lround(155.0 * std::min(std::fabs(v), 1.0)));
    std::ostringstream ss;
    if (v >= 0.0) ss << "rgb(255," << 255 - k << "," << 255 - k << ")";
    else ss << "rgb(" << 255 - k << "," << 255 - k << ",255)";
    return ss.str();
}

void open_svg(std::ostringstream& ss, int width, int height) {
    ss << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
       << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write report file: " + path);
    out << content;
    if (!out) throw DataError("write failed: " + path);
}

std::string cell_text(double v) { return format_estimate2(v); }

}  // namespace

void write_grid_csv(const std::string& path, const PersistenceGrid& grid) {
    std::vector<std::string> header = {"entity"};
    for (int y : grid.years) header.push_back(std::to_string(y));
    header.push_back("total");
    std::vector<std::vector<std::string>> rows;
    for (size_t r = 0; r < grid.entities.size(); ++r) {
        std::vector<std::string> row = {grid.entities[r]};
        for (size_t c = 0; c < grid.years.size(); ++c)
            row.push_back(grid.present[r][c] ? "1" : "0");
        row.push_back(std::to_string(grid.totals[r]));
        rows.push_back(std::move(row));
    }
    write_csv_file(path, header, rows);
}

void render_grid_svg(const std::string& path, const PersistenceGrid& grid) {
    const int width = kLabelWidth + kCell * static_cast<int>(grid.years.size()) + 60;
    const int height = kHeader + kCell * static_cast<int>(grid.entities.size()) + 8;
    std::ostringstream ss;
    open_svg(ss, width, height);
    for (size_t c = 0; c < grid.years.size(); ++c) {
        ss << "<text x=\"" << kLabelWidth + kCell * static_cast<int>(c) + kCell / 2
           << "\" y=\"16\" font-size=\"11\" text-anchor=\"middle\">" << grid.years[c]
           << "</text>\n";
    }
    for (size_t r = 0; r < grid.entities.size(); ++r) {
        const int y = kHeader + kCell * static_cast<int>(r);
        ss << "<text x=\"" << kLabelWidth - 6 << "\" y=\"" << y + kCell / 2 + 4
           << "\" font-size=\"11\" text-anchor=\"end\">" << svg_escape(grid.entities[r])
           << "</text>\n";
        for (size_t c = 0; c < grid.years.size(); ++c) {
            const int x = kLabelWidth + kCell * static_cast<int>(c);
            ss << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << kCell << "\" height=\""
               << kCell << "\" fill=\"" << (grid.present[r][c] ? "rgb(70,130,180)" : "white")
               << "\" stroke=\"rgb(96,96,96)\"/>\n";
        }
        ss << "<text x=\"" << kLabelWidth + kCell * static_cast<int>(grid.years.size()) + 8
           << "\" y=\"" << y + kCell / 2 + 4 << "\" font-size=\"11\">" << grid.totals[r]
           << "</text>\n";
    }
    ss << "</svg>\n";
    write_file(path, ss.str());
}

void write_overlap_csv(const std::string& path, const OverlapSummary& overlap) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& e : overlap.retire_only) rows.push_back({"retire_only", e});
    for (const auto& e : overlap.maintain_only) rows.push_back({"maintain_only", e});
    for (const auto& e : overlap.both) rows.push_back({"both", e});
    write_csv_file(path, {"partition", "entity"}, rows);
}

void write_series_csv(const std::string& path, const EffectTimeSeries& series) {
    std::vector<std::string> header = {"method"};
    for (int y : series.years) header.push_back(std::to_string(y));
    std::vector<std::vector<std::string>> rows;
    for (size_t m = 0; m < series.methods.size(); ++m) {
        std::vector<std::string> row = {series.methods[m]};
        for (size_t y = 0; y < series.years.size(); ++y)
            row.push_back(format_double(series.rendered_at(m, y)));
        rows.push_back(std::move(row));
    }
    std::vector<std::string> mean_row = {"mean"};
    for (size_t y = 0; y < series.years.size(); ++y)
        mean_row.push_back(format_double(series.rendered_at(series.methods.size(), y)));
    rows.push_back(std::move(mean_row));
    write_csv_file(path, header, rows);
}

void render_series_svg(const std::string& path, const EffectTimeSeries& series) {
    const size_t n_rows = series.methods.size() + 1;
    const int cell_w = 52;
    const int width = kLabelWidth + cell_w * static_cast<int>(series.years.size()) + 8;
    const int height = kHeader + kCell * static_cast<int>(n_rows) + 28;
    std::ostringstream ss;
    open_svg(ss, width, height);
    ss << "<text x=\"8\" y=\"14\" font-size=\"11\">" << svg_escape(series.treatment) << " -> "
       << svg_escape(series.outcome) << "</text>\n";
    for (size_t c = 0; c < series.years.size(); ++c) {
        ss << "<text x=\"" << kLabelWidth + cell_w * static_cast<int>(c) + cell_w / 2
           << "\" y=\"" << kHeader + 12 << "\" font-size=\"11\" text-anchor=\"middle\">"
           << series.years[c] << "</text>\n";
    }
    for (size_t m = 0; m < n_rows; ++m) {
        const int y = kHeader + 16 + kCell * static_cast<int>(m);
        const std::string label = m < series.methods.size() ? series.methods[m] : "mean";
        ss << "<text x=\"" << kLabelWidth - 6 << "\" y=\"" << y + kCell / 2 + 4
           << "\" font-size=\"11\" text-anchor=\"end\">" << svg_escape(label) << "</text>\n";
        for (size_t c = 0; c < series.years.size(); ++c) {
            const double v = series.rendered_at(m, c);
            const int x = kLabelWidth + cell_w * static_cast<int>(c);
            ss << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell_w
               << "\" height=\"" << kCell << "\" fill=\"" << diverging_fill(v)
               << "\" stroke=\"rgb(96,96,96)\"/>\n";
            ss << "<text x=\"" << x + cell_w / 2 << "\" y=\"" << y + kCell / 2 + 4
               << "\" font-size=\"10\" text-anchor=\"middle\">" << cell_text(v) << "</text>\n";
        }
    }
    ss << "</svg>\n";
    write_file(path, ss.str());
}

void write_persistence_pct_csv(const std::string& path, const std::vector<YearPct>& pcts) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& [year, pct] : pcts)
        rows.push_back({std::to_string(year), pct ? format_double(*pct) : ""});
    write_csv_file(path, {"year", "pct_continuing"}, rows);
}

void render_persistence_pct_svg(const std::string& path, const std::vector<YearPct>& pcts) {
    const int bar_w = 44;
    const int plot_h = 140;
    const int width = 48 + bar_w * static_cast<int>(pcts.size()) + 8;
    const int height = plot_h + 48;
    double max_pct = 1.0;
    for (const auto& [y, p] : pcts)
        if (p) max_pct = std::max(max_pct, *p);
    std::ostringstream ss;
    open_svg(ss, width, height);
    for (size_t i = 0; i < pcts.size(); ++i) {
        const auto& [year, pct] = pcts[i];
        const int x = 48 + bar_w * static_cast<int>(i);
        if (pct) {
            const int h = static_cast<int>(std::lround(plot_h * (*pct / max_pct)));
            ss << "<rect x=\"" << x + 4 << "\" y=\"" << 16 + plot_h - h << "\" width=\""
               << bar_w - 8 << "\" height=\"" << h << "\" fill=\"rgb(120,160,220)\"/>\n";
            ss << "<text x=\"" << x + bar_w / 2 << "\" y=\"" << 12 + plot_h - h
               << "\" font-size=\"10\" text-anchor=\"middle\">" << format_estimate2(*pct)
               << "</text>\n";
        }
        ss << "<text x=\"" << x + bar_w / 2 << "\" y=\"" << plot_h + 32
           << "\" font-size=\"11\" text-anchor=\"middle\">" << year << "</text>\n";
    }
    ss << "</svg>\n";
    write_file(path, ss.str());
}

void write_recurrent_csv(const std::string& path, const std::vector<RecurrentEdge>& edges) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& e : edges) {
        std::string years;
        for (size_t i = 0; i < e.years.size(); ++i) {
            if (i) years.push_back(';');
            years += std::to_string(e.years[i]);
        }
        rows.push_back({e.cause, e.effect, e.oriented ? "1" : "0", years});
    }
    write_csv_file(path, {"cause", "effect", "oriented", "years"}, rows);
}

std::vector<std::string> render_reports(const ReportBundle& bundle, const std::string& out_dir) {
    const std::string span =
        std::to_string(bundle.year_min) + "-" + std::to_string(bundle.year_max);
    std::vector<std::string> written;
    auto emit = [&](const std::string& name) {
        written.push_back(name);
        return out_dir + "/" + name;
    };
    for (const auto& grid : bundle.grids) {
        write_grid_csv(emit("persistence_" + grid.outcome_family + "_" + span + ".csv"), grid);
        render_grid_svg(emit("persistence_" + grid.outcome_family + "_" + span + ".svg"), grid);
    }
    if (bundle.overlap) write_overlap_csv(emit("overlap_" + span + ".csv"), *bundle.overlap);
    for (const auto& series : bundle.series) {
        const std::string stem = "effects_" + slugify(series.treatment) + "__" +
                                 slugify(series.outcome) + "_" + span;
        write_series_csv(emit(stem + ".csv"), series);
        render_series_svg(emit(stem + ".svg"), series);
    }
    write_persistence_pct_csv(emit("persistence_pct_" + span + ".csv"), bundle.persistence_pcts);
    render_persistence_pct_svg(emit("persistence_pct_" + span + ".svg"), bundle.persistence_pcts);
    write_recurrent_csv(emit("recurrent_edges_" + span + ".csv"), bundle.recurrent);
    return written;
}

}  // namespace pubcausal
