#include "seconet/graph.hpp"

#include <algorithm>
#include <queue>

namespace seconet {

void Graph::canonicalize() {
    for (auto& a : adj_) std::sort(a.begin(), a.end());
}

namespace {

GraphSnapshot build(const ContactNetwork& net, bool joined_only) {
    GraphSnapshot s;
    s.index_of.assign(net.size(), -1);
    for (const auto& p : net.persons()) {
        if (joined_only && !p.join_time) continue;
        s.index_of[static_cast<std::size_t>(p.id)] = static_cast<int>(s.person_of.size());
        s.person_of.push_back(p.id);
    }
    s.graph = Graph(s.person_of.size());
    for (const auto& r : net.links()) {
        s.graph.add_edge(s.index_of[static_cast<std::size_t>(r.female)], s.index_of[static_cast<std::size_t>(r.male)]);
    }
    s.graph.canonicalize();
    return s;
}

}  // namespace

GraphSnapshot full_snapshot(const ContactNetwork& net) { return build(net, false); }
GraphSnapshot joined_snapshot(const ContactNetwork& net) { return build(net, true); }

std::vector<int> component_labels(const Graph& g) {
    std::vector<int> label(g.size(), -1);
    int next = 0;
    std::queue<int> q;
    for (int s = 0; s < static_cast<int>(g.size()); ++s) {
        if (label[static_cast<std::size_t>(s)] >= 0) continue;
        label[static_cast<std::size_t>(s)] = next;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : g.neighbors(v)) {
                if (label[static_cast<std::size_t>(w)] < 0) {
                    label[static_cast<std::size_t>(w)] = next;
                    q.push(w);
                }
            }
        }
        ++next;
    }
    return label;
}

}  // namespace seconet
