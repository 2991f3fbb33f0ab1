#include "seconet/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "seconet/error.hpp"

namespace seconet {
namespace {

constexpr const char* kSummaryHeader =
    "sweep_id,seed,strategy,avg_degree,gamma,aspl,clustering_sq,clustering_tri,peak_inc,peak_day,cum_inc,"
    "peak_inc_f,peak_day_f,cum_inc_f,peak_inc_m,peak_day_m,cum_inc_m";

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Quote a field when it could break the row.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c == '\n' || c == '\r' ? ' ' : c;
    }
    return out + '"';
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else if (c != '\r') {
            fields.back() += c;
        }
    }
    return fields;
}

void append_cohort(std::string& row, const CohortMetrics& m) {
    row += ',' + std::to_string(m.peak_incidence) + ',' + std::to_string(m.peak_prevalence_day) + ',' +
           std::to_string(m.cumulative_incidence);
}

void append_counts(std::string& row, const CompartmentCounts& c) {
    for (int v : c) row += ',' + std::to_string(v);
}

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    out.flush();
    if (!out) throw IoError("write failed for " + path);
}

void write_edges_csv(const ContactNetwork& net, const std::string& path) {
    std::string s = "female_id,male_id,created_at,expected_duration,kind\n";
    for (const auto& r : net.links()) {
        s += std::to_string(r.female) + ',' + std::to_string(r.male) + ',' + std::to_string(r.created_at) + ',' +
             num(r.expected_duration) + ',' + (r.kind == LinkKind::primary ? "primary" : "secondary") + '\n';
    }
    write_text_file(path, s);
}

void write_nodes_csv(const ContactNetwork& net, const std::string& path) {
    std::string s = "id,age,gender,delta,lsp,join_time\n";
    for (const auto& p : net.persons()) {
        s += std::to_string(p.id) + ',' + std::to_string(p.age) + ',' + (p.gender == Gender::female ? "F" : "M") +
             ',' + num(p.mean_rel_duration) + ',' + std::to_string(p.lsp) + ',' +
             (p.join_time ? std::to_string(*p.join_time) : std::string()) + '\n';
    }
    write_text_file(path, s);
}

std::string format_daily_csv(std::span<const DailyCounts> series) {
    std::string s = "day,S,I,R,V,S_f,I_f,R_f,V_f,S_m,I_m,R_m,V_m,new_inf,new_inf_f,new_inf_m\n";
    for (const auto& d : series) {
        std::string row = std::to_string(d.day);
        append_counts(row, d.total);
        append_counts(row, d.female);
        append_counts(row, d.male);
        row += ',' + std::to_string(d.new_infections) + ',' + std::to_string(d.new_infections_female) + ',' +
               std::to_string(d.new_infections_male) + '\n';
        s += row;
    }
    return s;
}

void write_daily_csv(std::span<const DailyCounts> series, const std::string& path) {
    write_text_file(path, format_daily_csv(series));
}

void write_sessions_csv(std::span<const SessionRecord> sessions, const std::string& path) {
    std::string s = "day,strategy,doses_available,doses_used,chosen_ids\n";
    for (const auto& r : sessions) {
        s += std::to_string(r.day) + ',' + std::string(to_string(r.strategy)) + ',' +
             std::to_string(r.doses_available) + ',' + std::to_string(r.chosen.size()) + ',';
        for (std::size_t i = 0; i < r.chosen.size(); ++i) {
            if (i) s += ' ';
            s += std::to_string(r.chosen[i]);
        }
        s += '\n';
    }
    write_text_file(path, s);
}

void write_scores_csv(const CentralityScores& scores, const std::string& path) {
    std::string s = "node_id,score\n";
    char buf[40];
    for (std::size_t i = 0; i < scores.values.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", scores.values[i]);
        s += std::to_string(i) + ',' + buf + '\n';
    }
    write_text_file(path, s);
}

void write_topology_json(const TopologySummary& t, std::size_t links, std::size_t nodes, const std::string& path) {
    nlohmann::ordered_json j;
    j["nodes"] = nodes;
    j["links"] = links;
    j["avg_degree"] = t.average_degree;
    j["gamma"] = t.powerlaw_exponent ? nlohmann::ordered_json(*t.powerlaw_exponent) : nlohmann::ordered_json();
    j["aspl"] = t.avg_shortest_path;
    j["clustering_sq"] = t.clustering_square;
    j["clustering_tri"] = t.clustering_triangle;
    write_text_file(path, j.dump(2) + "\n");
}

std::string format_summary(std::vector<SummaryRecord> records) {
    sort_records(records);
    bool any_error = false;
    for (const auto& r : records) any_error |= !r.error.empty();
    std::string s = kSummaryHeader;
    if (any_error) s += ",error";
    s += '\n';
    for (const auto& r : records) {
        std::string row = std::to_string(r.sweep_id) + ',' + std::to_string(r.seed) + ',' +
                          std::string(to_string(r.strategy));
        if (r.error.empty()) {
            const auto& t = r.topology;
            row += ',' + num(t.average_degree) + ',' + (t.powerlaw_exponent ? num(*t.powerlaw_exponent) : "") + ',' +
                   num(t.avg_shortest_path) + ',' + num(t.clustering_square) + ',' + num(t.clustering_triangle);
            append_cohort(row, r.metrics.overall);
            append_cohort(row, r.metrics.female);
            append_cohort(row, r.metrics.male);
        } else {
            row += std::string(14, ',');
        }
        if (any_error) row += ',' + csv_field(r.error);
        s += row + '\n';
    }
    return s;
}

void write_summary(const std::vector<SummaryRecord>& records, const std::string& path) {
    write_text_file(path, format_summary(records));
}

std::vector<SummaryRecord> parse_summary(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw IoError("summary CSV is empty");
    auto header = split_csv_line(line);
    const auto expected = split_csv_line(kSummaryHeader);
    if (header.size() < expected.size() || !std::equal(expected.begin(), expected.end(), header.begin())) {
        throw IoError("summary CSV header does not match");
    }
    const bool has_error = header.size() == expected.size() + 1;
    std::vector<SummaryRecord> out;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto f = split_csv_line(line);
        if (f.size() != header.size()) throw IoError("summary CSV line " + std::to_string(line_no) + ": wrong field count");
        try {
            SummaryRecord r;
            r.sweep_id = std::stoi(f[0]);
            r.seed = std::stoull(f[1]);
            r.strategy = parse_strategy(f[2]);
            if (has_error) r.error = f.back();
            if (r.error.empty()) {
                r.topology.average_degree = std::stod(f[3]);
                if (!f[4].empty()) r.topology.powerlaw_exponent = std::stod(f[4]);
                r.topology.avg_shortest_path = std::stod(f[5]);
                r.topology.clustering_square = std::stod(f[6]);
                r.topology.clustering_triangle = std::stod(f[7]);
                CohortMetrics* cohorts[] = {&r.metrics.overall, &r.metrics.female, &r.metrics.male};
                for (int c = 0; c < 3; ++c) {
                    cohorts[c]->peak_incidence = std::stoi(f[8 + 3 * c]);
                    cohorts[c]->peak_prevalence_day = std::stoi(f[9 + 3 * c]);
                    cohorts[c]->cumulative_incidence = std::stoi(f[10 + 3 * c]);
                }
            }
            out.push_back(std::move(r));
        } catch (const std::logic_error&) {
            throw IoError("summary CSV line " + std::to_string(line_no) + ": malformed value");
        }
    }
    return out;
}

std::vector<SummaryRecord> read_summary(const std::string& path) { return parse_summary(read_text_file(path)); }

}  // namespace seconet
