#include "pubcausal/collab.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "pubcausal/common.hpp"
#include "pubcausal/csv.hpp"

namespace pubcausal {

YearGraph build_yearly_graph(const std::vector<CorpusRow>& rows, int year) {
    YearGraph g;
    g.year = year;

    std::map<std::string, std::vector<std::string>> paper_authors;
    std::set<std::string> authors;
    for (const auto& row : rows) {
        if (row.year != year) continue;
        paper_authors[row.paper_id].push_back(row.author_id);
        authors.insert(row.author_id);
    }
    g.nodes.assign(authors.begin(), authors.end());
    for (size_t i = 0; i < g.nodes.size(); ++i) g.index[g.nodes[i]] = i;
    g.adjacency.resize(g.nodes.size());

    for (const auto& [paper_id, names] : paper_authors) {
        for (size_t i = 0; i < names.size(); ++i) {
            for (size_t j = i + 1; j < names.size(); ++j) {
                const size_t a = g.index[names[i]];
                const size_t b = g.index[names[j]];
                if (a == b) continue;
                g.adjacency[a][b] += 1;
                g.adjacency[b][a] += 1;
            }
        }
    }
    return g;
}

std::map<std::string, double> pagerank(const YearGraph& graph, double damping, double tol) {
    std::map<std::string, double> out;
    const size_t n = graph.node_count();
    if (n == 0) return out;

    std::vector<double> weight_sum(n, 0.0);
    for (size_t u = 0; u < n; ++u)
        for (const auto& [v, m] : graph.adjacency[u]) weight_sum[u] += m;

    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<double> pr(n, inv_n), next(n, 0.0);
    for (int iter = 0; iter < 1000; ++iter) {
        double dangling = 0.0;
        for (size_t u = 0; u < n; ++u)
            if (weight_sum[u] == 0.0) dangling += pr[u];
        const double base = (1.0 - damping) * inv_n + damping * dangling * inv_n;
        std::fill(next.begin(), next.end(), base);
        for (size_t u = 0; u < n; ++u) {
            if (weight_sum[u] == 0.0) continue;
            const double share = damping * pr[u] / weight_sum[u];
            for (const auto& [v, m] : graph.adjacency[u]) next[v] += share * m;
        }
        double l1 = 0.0;
        for (size_t u = 0; u < n; ++u) l1 += std::fabs(next[u] - pr[u]);
        pr.swap(next);
        if (l1 < tol) break;
    }
    for (size_t u = 0; u < n; ++u) out[graph.nodes[u]] = pr[u];
    return out;
}

std::map<std::string, double> degree_centrality(const YearGraph& graph) {
    std::map<std::string, double> out;
    const size_t n = graph.node_count();
    for (size_t u = 0; u < n; ++u) {
        out[graph.nodes[u]] =
            n > 1 ? static_cast<double>(graph.adjacency[u].size()) / static_cast<double>(n - 1)
                  : 0.0;
    }
    return out;
}

namespace {

// papers of one author up to `year`, and the authors of each paper
struct CumulativeView {
    std::vector<std::string> papers;
    std::map<std::string, std::vector<std::string>> paper_authors;
};

CumulativeView cumulative_view(const std::vector<CorpusRow>& rows, const std::string& author_id,
                               int year) {
    CumulativeView view;
    std::set<std::string> author_papers;
    for (const auto& row : rows) {
        if (row.year > year) continue;
        if (row.author_id == author_id) author_papers.insert(row.paper_id);
    }
    for (const auto& row : rows) {
        if (row.year > year) continue;
        if (author_papers.count(row.paper_id)) view.paper_authors[row.paper_id].push_back(row.author_id);
    }
    view.papers.assign(author_papers.begin(), author_papers.end());
    return view;
}

}  // namespace

DiversityFeatures coauthor_diversity_features(const std::vector<CorpusRow>& rows,
                                              const std::string& author_id, int year) {
    const CumulativeView view = cumulative_view(rows, author_id, year);
    std::map<std::string, int> shared;  // co-author -> papers together
    for (const auto& [paper, authors] : view.paper_authors) {
        for (const auto& a : authors)
            if (a != author_id) shared[a] += 1;
    }
    DiversityFeatures f;
    f.n_coauthors = static_cast<int>(shared.size());
    if (f.n_coauthors == 0) return f;
    double total_shared = 0.0;
    for (const auto& [a, c] : shared) total_shared += c;
    f.avg_papers_per_coauthor = total_shared / static_cast<double>(f.n_coauthors);
    const double n_total = static_cast<double>(view.papers.size());
    if (n_total > 0) f.coauthor_likelihood = f.avg_papers_per_coauthor / n_total;
    return f;
}

CareerFeatures author_career_features(const std::vector<CorpusRow>& rows,
                                      const std::string& author_id, int year) {
    std::map<int, int> per_year;
    std::set<std::string> seen;
    for (const auto& row : rows) {
        if (row.author_id != author_id || row.year > year) continue;
        if (seen.insert(row.paper_id).second) per_year[row.year] += 1;
    }
    if (per_year.empty())
        throw DataError("author '" + author_id + "' has no papers at or before " +
                        std::to_string(year));
    CareerFeatures f;
    const int first = per_year.begin()->first;
    f.years_since_first = year - first;
    for (const auto& [y, c] : per_year) {
        f.n_papers_total += c;
        if (y == year - 1) f.n_papers_last_year += c;
        if (y >= year - 5 && y <= year - 1) f.n_papers_last_5y += c;
    }
    return f;
}

std::vector<AuthorYearStats> build_author_year_stats(const std::vector<CorpusRow>& rows,
                                                     const std::vector<int>& years) {
    // author -> year -> distinct paper count, and author -> co-author shared
    // counts accumulated in year order
    std::map<std::string, std::map<int, int>> papers_per_year;
    std::map<std::string, std::map<std::string, int>> shared;
    std::map<int, std::map<std::string, std::set<std::string>>> papers_by_year;  // year -> paper -> authors
    for (const auto& row : rows)
        papers_by_year[row.year][row.paper_id].insert(row.author_id);

    std::vector<int> sorted_years = years;
    std::sort(sorted_years.begin(), sorted_years.end());
    sorted_years.erase(std::unique(sorted_years.begin(), sorted_years.end()), sorted_years.end());

    std::vector<AuthorYearStats> out;
    int cursor = papers_by_year.empty() ? 0 : papers_by_year.begin()->first;
    for (int target : sorted_years) {
        // advance cumulative structures through `target`
        for (; cursor <= target; ++cursor) {
            const auto it = papers_by_year.find(cursor);
            if (it == papers_by_year.end()) continue;
            for (const auto& [paper, authors] : it->second) {
                for (const auto& a : authors) {
                    papers_per_year[a][cursor] += 1;
                    for (const auto& b : authors)
                        if (a != b) shared[a][b] += 1;
                }
            }
        }

        const YearGraph graph = build_yearly_graph(rows, target);
        const auto pr = pagerank(graph);
        const auto cent = degree_centrality(graph);

        const auto it = papers_by_year.find(target);
        if (it == papers_by_year.end()) continue;
        std::set<std::string> active;
        for (const auto& [paper, authors] : it->second) active.insert(authors.begin(), authors.end());

        for (const auto& author : active) {
            AuthorYearStats s;
            s.author_id = author;
            s.year = target;
            s.centrality = cent.count(author) ? cent.at(author) : 0.0;
            s.pagerank = pr.count(author) ? pr.at(author) : 0.0;

            const auto& yearly = papers_per_year[author];
            const int first = yearly.begin()->first;
            s.career.years_since_first = target - first;
            for (const auto& [y, c] : yearly) {
                s.career.n_papers_total += c;
                if (y == target - 1) s.career.n_papers_last_year += c;
                if (y >= target - 5 && y <= target - 1) s.career.n_papers_last_5y += c;
            }

            const auto& co = shared[author];
            s.diversity.n_coauthors = static_cast<int>(co.size());
            if (!co.empty()) {
                double total = 0.0;
                for (const auto& [b, c] : co) total += c;
                s.diversity.avg_papers_per_coauthor = total / static_cast<double>(co.size());
                s.diversity.coauthor_likelihood =
                    s.diversity.avg_papers_per_coauthor / static_cast<double>(s.career.n_papers_total);
            }
            out.push_back(std::move(s));
        }
    }
    return out;
}

void write_network_csv(const std::string& path, const std::vector<AuthorYearStats>& stats) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(stats.size());
    for (const auto& s : stats) {
        rows.push_back({s.author_id, std::to_string(s.year), format_double(s.centrality),
                        format_double(s.pagerank), std::to_string(s.diversity.n_coauthors),
                        format_double(s.diversity.avg_papers_per_coauthor),
                        format_double(s.diversity.coauthor_likelihood),
                        std::to_string(s.career.years_since_first),
                        std::to_string(s.career.n_papers_total),
                        std::to_string(s.career.n_papers_last_year),
                        std::to_string(s.career.n_papers_last_5y)});
    }
    write_csv_file(path, split(kNetworkCsvHeader, ','), rows);
}

std::vector<AuthorYearStats> read_network_csv(const std::string& path) {
    const CsvTable csv = read_csv_file(path);
    if (csv_join(csv.header) != kNetworkCsvHeader)
        throw DataError("unexpected network CSV header in " + path);
    std::vector<AuthorYearStats> out;
    out.reserve(csv.rows.size());
    for (const auto& row : csv.rows) {
        if (row.size() != 11) throw DataError("network CSV record needs 11 fields");
        AuthorYearStats s;
        s.author_id = row[0];
        s.year = std::stoi(row[1]);
        s.centrality = std::stod(row[2]);
        s.pagerank = std::stod(row[3]);
        s.diversity.n_coauthors = std::stoi(row[4]);
        s.diversity.avg_papers_per_coauthor = std::stod(row[5]);
        s.diversity.coauthor_likelihood = std::stod(row[6]);
        s.career.years_since_first = std::stoi(row[7]);
        s.career.n_papers_total = std::stoi(row[8]);
        s.career.n_papers_last_year = std::stoi(row[9]);
        s.career.n_papers_last_5y = std::stoi(row[10]);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace pubcausal
