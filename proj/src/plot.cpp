#include "seconet/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "seconet/error.hpp"
#include "seconet/io.hpp"

namespace seconet {
namespace {

// One colour per strategy, in strategy-list order.
constexpr const char* kColors[] = {"#000000", "#e69f00", "#56b4e9", "#009e73",
                                   "#d55e00", "#0072b2", "#cc79a7", "#999933"};

std::string fmt(double v, const char* spec = "%.4g") {
    char buf[32];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string join_names(const std::vector<std::string>& names) {
    std::string s;
    for (const auto& n : names) s += (s.empty() ? "" : ", ") + n;
    return s;
}

}  // namespace

const std::vector<std::string>& topology_metric_names() {
    static const std::vector<std::string> names{"avg_degree", "gamma", "aspl", "clustering_sq", "clustering_tri"};
    return names;
}

const std::vector<std::string>& epidemic_metric_names() {
    static const std::vector<std::string> names{"peak_inc",   "peak_day",   "cum_inc",   "peak_inc_f", "peak_day_f",
                                                "cum_inc_f",  "peak_inc_m", "peak_day_m", "cum_inc_m"};
    return names;
}

std::optional<double> topology_metric(const SummaryRecord& r, std::string_view name) {
    const auto& t = r.topology;
    if (name == "avg_degree") return t.average_degree;
    if (name == "gamma") return t.powerlaw_exponent;
    if (name == "aspl") return t.avg_shortest_path;
    if (name == "clustering_sq") return t.clustering_square;
    if (name == "clustering_tri") return t.clustering_triangle;
    throw ConfigError("unknown topology metric '" + std::string(name) + "' (valid: " +
                      join_names(topology_metric_names()) + ")");
}

double epidemic_metric(const SummaryRecord& r, std::string_view name) {
    const auto& names = epidemic_metric_names();
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) {
        throw ConfigError("unknown epidemiological metric '" + std::string(name) + "' (valid: " + join_names(names) +
                          ")");
    }
    const auto idx = it - names.begin();
    const CohortMetrics& c = idx < 3 ? r.metrics.overall : idx < 6 ? r.metrics.female : r.metrics.male;
    switch (idx % 3) {
        case 0: return c.peak_incidence;
        case 1: return c.peak_prevalence_day;
        default: return c.cumulative_incidence;
    }
}

std::vector<Bin> binned_means(std::span<const std::pair<double, double>> points, double lo, double hi, int bins) {
    if (bins < 1) throw ConfigError("bin count must be >= 1");
    std::vector<Bin> out(static_cast<std::size_t>(bins));
    const double width = (hi - lo) / bins;
    for (int b = 0; b < bins; ++b) {
        out[static_cast<std::size_t>(b)].lo = lo + b * width;
        out[static_cast<std::size_t>(b)].hi = b + 1 == bins ? hi : lo + (b + 1) * width;
    }
    std::vector<double> sums(out.size(), 0.0);
    for (auto [x, y] : points) {
        if (x < lo || x > hi) continue;
        int b = width > 0.0 ? static_cast<int>((x - lo) / width) : 0;
        b = std::clamp(b, 0, bins - 1);
        ++out[static_cast<std::size_t>(b)].count;
        sums[static_cast<std::size_t>(b)] += y;
    }
    for (std::size_t b = 0; b < out.size(); ++b) {
        if (out[b].count) out[b].mean = sums[b] / out[b].count;
    }
    return out;
}

std::string render_plot(std::span<const SummaryRecord> records, std::string_view epi_metric,
                        std::string_view topo_metric, const PlotOptions& opt) {
    if (records.empty()) throw ConfigError("nothing to plot: no records");
    // Validate names before touching data so a typo is reported even when
    // every record failed.
    topology_metric(records.front(), topo_metric);
    epidemic_metric(records.front(), epi_metric);

    std::map<int, std::vector<std::pair<double, double>>> series;  // keyed by strategy list position
    for (const auto& r : records) {
        if (!r.error.empty()) continue;
        auto x = topology_metric(r, topo_metric);
        if (!x) continue;
        series[static_cast<int>(r.strategy)].emplace_back(*x, epidemic_metric(r, epi_metric));
    }

    double xlo = INFINITY, xhi = -INFINITY, ylo = INFINITY, yhi = -INFINITY;
    for (const auto& [s, pts] : series) {
        for (auto [x, y] : pts) {
            xlo = std::min(xlo, x), xhi = std::max(xhi, x);
            ylo = std::min(ylo, y), yhi = std::max(yhi, y);
        }
    }
    const bool empty = series.empty();
    if (empty) xlo = 0, xhi = 1, ylo = 0, yhi = 1;
    const double data_xlo = xlo, data_xhi = xhi;
    auto pad = [](double& lo, double& hi) {
        double span = hi - lo;
        if (span <= 0.0) span = std::max(1.0, std::abs(lo));
        lo -= 0.05 * span;
        hi += 0.05 * span;
    };
    pad(xlo, xhi);
    pad(ylo, yhi);

    const double left = 80, right = 190, top = 40, bottom = 60;
    const double pw = opt.width - left - right, ph = opt.height - top - bottom;
    auto sx = [&](double x) { return left + (x - xlo) / (xhi - xlo) * pw; };
    auto sy = [&](double y) { return top + ph - (y - ylo) / (yhi - ylo) * ph; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opt.width) + "\" height=\"" +
           std::to_string(opt.height) + "\" viewBox=\"0 0 " + std::to_string(opt.width) + ' ' +
           std::to_string(opt.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<rect x=\"" + fmt(left) + "\" y=\"" + fmt(top) + "\" width=\"" + fmt(pw) + "\" height=\"" + fmt(ph) +
           "\" fill=\"none\" stroke=\"#333\"/>\n";

    for (int i = 0; i <= 5; ++i) {
        double xv = xlo + (xhi - xlo) * i / 5.0, yv = ylo + (yhi - ylo) * i / 5.0;
        svg += "<text x=\"" + fmt(sx(xv)) + "\" y=\"" + fmt(top + ph + 18) + "\" text-anchor=\"middle\">" + fmt(xv) +
               "</text>\n";
        svg += "<text x=\"" + fmt(left - 6) + "\" y=\"" + fmt(sy(yv) + 4) + "\" text-anchor=\"end\">" + fmt(yv) +
               "</text>\n";
    }
    svg += "<text x=\"" + fmt(left + pw / 2) + "\" y=\"" + fmt(opt.height - 15.0) + "\" text-anchor=\"middle\">" +
           escape(topo_metric) + "</text>\n";
    svg += "<text transform=\"translate(20," + fmt(top + ph / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
           escape(epi_metric) + "</text>\n";

    int legend_row = 0;
    for (const auto& [s, pts] : series) {
        const std::string color = kColors[s % 8];
        const std::string name{to_string(static_cast<Strategy>(s))};
        svg += "<g class=\"series\" data-strategy=\"" + name + "\">\n";
        for (auto [x, y] : pts) {
            svg += "<circle cx=\"" + fmt(sx(x)) + "\" cy=\"" + fmt(sy(y)) + "\" r=\"2.5\" fill=\"" + color +
                   "\" fill-opacity=\"0.45\"/>\n";
        }
        std::string path;
        for (const auto& b : binned_means(pts, data_xlo, data_xhi, opt.bins)) {
            if (!b.count) continue;
            const double xc = data_xhi > data_xlo ? (b.lo + b.hi) / 2 : data_xlo;
            path += (path.empty() ? "M" : " L") + fmt(sx(xc)) + ',' + fmt(sy(b.mean));
        }
        svg += "<path class=\"binned-mean\" d=\"" + path + "\" fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"2\"/>\n</g>\n";

        const double ly = top + 10 + 18 * legend_row++;
        svg += "<g class=\"legend-entry\"><rect x=\"" + fmt(left + pw + 15) + "\" y=\"" + fmt(ly - 8) +
               "\" width=\"12\" height=\"12\" fill=\"" + color + "\"/><text x=\"" + fmt(left + pw + 33) + "\" y=\"" +
               fmt(ly + 2) + "\">" + name + "</text></g>\n";
    }
    svg += "</svg>\n";
    return svg;
}

void write_plot(std::span<const SummaryRecord> records, std::string_view epi_metric, std::string_view topo_metric,
                const std::string& path, const PlotOptions& opt) {
    write_text_file(path, render_plot(records, epi_metric, topo_metric, opt));
}

}  // namespace seconet
