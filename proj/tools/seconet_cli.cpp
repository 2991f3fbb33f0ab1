#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "seconet/centrality.hpp"
#include "seconet/config.hpp"
#include "seconet/error.hpp"
#include "seconet/harness.hpp"
#include "seconet/io.hpp"
#include "seconet/log.hpp"
#include "seconet/plot.hpp"
#include "seconet/topology.hpp"

namespace fs = std::filesystem;
using namespace seconet;

namespace {

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out = ".";
    std::optional<int> replicates;
    std::vector<std::string> strategies;
    int parallel = 1;
};

ScenarioConfig scenario_for(const Common& c, bool require_config) {
    ScenarioConfig s;
    if (!c.config.empty()) {
        s = load_scenario(c.config);
    } else if (require_config) {
        throw ConfigError("--config is required (initial prevalence has no default)");
    }
    if (c.seed) s.seed = *c.seed;
    if (c.replicates) s.replicates = *c.replicates;
    if (!c.strategies.empty()) {
        s.strategies.clear();
        for (const auto& name : c.strategies) s.strategies.push_back(parse_strategy(name));
    }
    s.validate();
    return s;
}

fs::path out_dir(const Common& c) {
    fs::path dir(c.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + c.out + ": " + ec.message());
    return dir;
}

void add_common(CLI::App* cmd, Common& c, bool with_strategy, bool with_sweep_flags) {
    cmd->add_option("--config", c.config, "scenario JSON file");
    cmd->add_option("--seed", c.seed, "base seed (overrides the config)");
    cmd->add_option("--out", c.out, "output directory")->capture_default_str();
    if (with_strategy) cmd->add_option("--strategy", c.strategies, "vaccination strategy: " + valid_strategy_names());
    if (with_sweep_flags) {
        cmd->add_option("--replicates", c.replicates, "replicates per sweep point and strategy");
        cmd->add_option("--parallel", c.parallel, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    }
}

int run_generate(const Common& c, const std::vector<std::string>& score_kinds) {
    auto s = scenario_for(c, false);
    auto growth = s.sweep.front().apply(s.growth);
    auto net = grow_network(growth, s.seed);
    auto dir = out_dir(c);
    write_edges_csv(net, (dir / "edges.csv").string());
    write_nodes_csv(net, (dir / "nodes.csv").string());
    write_topology_json(summarize_topology(net), net.links().size(), net.size(), (dir / "topology.json").string());
    std::vector<char> none(net.size(), 0);
    for (const auto& name : score_kinds) {
        auto kind = parse_centrality(name);
        write_scores_csv(compute_centrality(kind, net, none), (dir / ("scores_" + name + ".csv")).string());
    }
    return 0;
}

int run_simulate(const Common& c) {
    auto s = scenario_for(c, true);
    if (s.strategies.size() != 1) {
        if (!c.strategies.empty()) throw ConfigError("simulate takes exactly one --strategy");
        s.strategies = {Strategy::none};
    }
    const Strategy strategy = s.strategies.front();
    auto growth = s.sweep.front().apply(s.growth);
    auto run = run_simulation(growth, s.epidemic, s.vaccination, strategy, s.seed);
    auto dir = out_dir(c);
    write_daily_csv(run.series, (dir / "daily.csv").string());
    write_sessions_csv(run.sessions, (dir / "sessions.csv").string());
    SummaryRecord rec;
    rec.seed = s.seed;
    rec.strategy = strategy;
    rec.topology = summarize_topology(run.network);
    rec.metrics = compute_metrics(run.series);
    write_summary({rec}, (dir / "summary.csv").string());
    return 0;
}

int run_sweep(const Common& c) {
    auto s = scenario_for(c, true);
    auto records = sweep(s, c.parallel);
    auto dir = out_dir(c);
    write_summary(records, (dir / "summary.csv").string());
    std::size_t failed = 0;
    for (const auto& r : records) failed += !r.error.empty();
    if (failed) std::cerr << failed << " of " << records.size() << " runs failed; see the error column\n";
    return 0;
}

int run_plot(const Common& c, const std::string& input, const std::string& epi, const std::string& topo,
             int bins) {
    PlotOptions opt;
    opt.bins = bins;
    auto records = read_summary(input);
    // Resolve names first so an unknown metric is a usage error.
    SummaryRecord probe;
    topology_metric(probe, topo);
    epidemic_metric(probe, epi);
    auto dir = out_dir(c);
    write_plot(records, epi, topo, (dir / (epi + "_vs_" + topo + ".svg")).string(), opt);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    log::init_from_env();
    CLI::App app{"Bipartite contact network growth and HPV vaccination simulator"};
    app.require_subcommand(1);

    Common common;
    std::vector<std::string> score_kinds;
    std::string plot_input = "summary.csv", plot_epi = "peak_inc", plot_topo = "avg_degree";
    int plot_bins = 8;

    auto* gen = app.add_subcommand("generate", "grow one network and export it with its topology summary");
    add_common(gen, common, false, false);
    gen->add_option("--scores", score_kinds, "also export centrality scores: degree, betweenness, closeness, "
                                             "percolation, eigenvector");

    auto* sim = app.add_subcommand("simulate", "run one simulation and write the per-day counts");
    add_common(sim, common, true, false);

    auto* swp = app.add_subcommand("sweep", "run every sweep point x strategy x replicate");
    add_common(swp, common, true, true);

    auto* plt = app.add_subcommand("plot", "plot a summary CSV as SVG");
    add_common(plt, common, false, false);
    plt->add_option("--input", plot_input, "summary CSV")->capture_default_str();
    plt->add_option("--epi", plot_epi, "epidemiological metric (y axis)")->capture_default_str();
    plt->add_option("--topo", plot_topo, "topology metric (x axis)")->capture_default_str();
    plt->add_option("--bins", plot_bins, "binned-mean bin count")->check(CLI::PositiveNumber)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (gen->parsed()) return run_generate(common, score_kinds);
        if (sim->parsed()) return run_simulate(common);
        if (swp->parsed()) return run_sweep(common);
        if (plt->parsed()) return run_plot(common, plot_input, plot_epi, plot_topo, plot_bins);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
