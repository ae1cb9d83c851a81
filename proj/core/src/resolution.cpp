#include "psc/resolution.hpp"

namespace psc {

Graph Graph::triangle_with_loop() {
    Graph g;
    g.vertices = 3;
    //            range, source
    g.edges = {{0, 0},   // loop at 0
               {1, 0},   // 0 -> 1
               {2, 1},   // 1 -> 2
               {0, 2}};  // 2 -> 0
    return g;
}

std::vector<GraphPath> GraphFamily::paths_of_length(std::uint64_t n) const {
    std::vector<GraphPath> out;
    for (std::uint32_t v = 0; v < graph.vertices; ++v) out.push_back(GraphPath{{}, v});
    for (std::uint64_t step = 0; step < n; ++step) {
        std::vector<GraphPath> next;
        for (const auto& mu : out)
            for (std::uint32_t e = 0; e < graph.edges.size(); ++e) {
                if (graph.edges[e].source != range_of(mu)) continue;  // extend the travel
                GraphPath ext = mu;
                ext.edges.push_back(e);
                next.push_back(std::move(ext));
            }
        out = std::move(next);
        if (out.size() > 200000) throw std::domain_error("paths_of_length: too many paths");
    }
    return out;
}

}  // namespace psc
