#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "seconet/harness.hpp"

namespace seconet {

// Column names accepted on each axis, as in the summary CSV.
const std::vector<std::string>& topology_metric_names();
const std::vector<std::string>& epidemic_metric_names();

// Throws ConfigError for an unknown name. Missing values (gamma) give nullopt.
std::optional<double> topology_metric(const SummaryRecord& r, std::string_view name);
double epidemic_metric(const SummaryRecord& r, std::string_view name);

struct Bin {
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;
    double mean = 0.0;  // of y; meaningless when count == 0
};

// Equal-width bins over [lo, hi]; the last bin is closed on the right.
std::vector<Bin> binned_means(std::span<const std::pair<double, double>> points, double lo, double hi, int bins);

struct PlotOptions {
    int bins = 8;
    int width = 800;
    int height = 560;
};

// Self-contained SVG: per-run markers plus binned-mean lines, one series per
// strategy present in the records, legend in strategy-list order.
std::string render_plot(std::span<const SummaryRecord> records, std::string_view epi_metric,
                        std::string_view topo_metric, const PlotOptions& opt = {});
void write_plot(std::span<const SummaryRecord> records, std::string_view epi_metric, std::string_view topo_metric,
                const std::string& path, const PlotOptions& opt = {});

}  // namespace seconet
