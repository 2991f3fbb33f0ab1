#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "seconet/centrality.hpp"
#include "seconet/epidemic.hpp"
#include "seconet/harness.hpp"
#include "seconet/network.hpp"
#include "seconet/topology.hpp"

namespace seconet {

// All writers throw IoError when the file cannot be written.

// female_id,male_id,created_at,expected_duration,kind
void write_edges_csv(const ContactNetwork& net, const std::string& path);
// id,age,gender,delta,lsp,join_time
void write_nodes_csv(const ContactNetwork& net, const std::string& path);
// day,S,I,R,V,S_f,I_f,R_f,V_f,S_m,I_m,R_m,V_m,new_inf,new_inf_f,new_inf_m
void write_daily_csv(std::span<const DailyCounts> series, const std::string& path);
// day,strategy,doses_available,doses_used,chosen_ids (space separated)
void write_sessions_csv(std::span<const SessionRecord> sessions, const std::string& path);
// node_id,score
void write_scores_csv(const CentralityScores& scores, const std::string& path);
void write_topology_json(const TopologySummary& t, std::size_t links, std::size_t nodes, const std::string& path);

std::string format_daily_csv(std::span<const DailyCounts> series);

// Summary CSV. Records are written in canonical order; a trailing `error`
// column appears only when at least one record failed.
std::string format_summary(std::vector<SummaryRecord> records);
void write_summary(const std::vector<SummaryRecord>& records, const std::string& path);
std::vector<SummaryRecord> parse_summary(const std::string& text);
std::vector<SummaryRecord> read_summary(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace seconet
