#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cadrigid {

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Color { Red, Black };

inline const char* color_name(Color c) { return c == Color::Red ? "red" : "black"; }

/// Frame signature [a,b]; k = a+b columns per body. Body-and-bar in
/// dimension d is all-black with (a,b) = (1, k-1), k = d(d+1)/2.
struct FrameSignature {
    int a = 1;
    int b = 2;
    int k() const { return a + b; }
};

/// One edge of a bicolored multigraph. Vertices are 0-based internally;
/// loops have tail == head. For non-loops tail < head is the base
/// orientation; algorithms that direct edges keep their own flags.
struct Edge {
    std::string id;
    int tail = 0;
    int head = 0;
    Color color = Color::Black;
    bool is_loop() const { return tail == head; }
};

/// Bicolored multigraph G = (V, R ⊔ B). The edge list order is the base
/// ordering; every downstream sign computation references it. Immutable
/// after construction.
class BicoloredMultigraph {
public:
    BicoloredMultigraph() = default;
    BicoloredMultigraph(int vertex_count, std::vector<Edge> edges)
        : n_(vertex_count), edges_(std::move(edges)) {
        if (n_ <= 0) throw GraphError("vertex count must be positive");
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            Edge& e = edges_[i];
            if (e.tail < 0 || e.tail >= n_ || e.head < 0 || e.head >= n_)
                throw GraphError("edge '" + e.id + "' references vertex out of range");
            if (e.tail > e.head) std::swap(e.tail, e.head);
            if (!id_to_index_.emplace(e.id, i).second)
                throw GraphError("duplicate edge id '" + e.id + "'");
        }
    }

    int vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(std::size_t i) const { return edges_[i]; }

    std::size_t index_of(const std::string& id) const {
        auto it = id_to_index_.find(id);
        if (it == id_to_index_.end()) throw GraphError("unknown edge id '" + id + "'");
        return it->second;
    }
    bool has_edge(const std::string& id) const { return id_to_index_.count(id) > 0; }

    bool all_black() const {
        return std::all_of(edges_.begin(), edges_.end(),
                           [](const Edge& e) { return e.color == Color::Black; });
    }
    bool has_loops() const {
        return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_loop(); });
    }
    std::size_t loop_count() const {
        return std::count_if(edges_.begin(), edges_.end(),
                             [](const Edge& e) { return e.is_loop(); });
    }

private:
    int n_ = 1;
    std::vector<Edge> edges_;
    std::map<std::string, std::size_t> id_to_index_;
};

struct TieDownLoop {
    std::string id;
    int vertex = 0;  // 0-based
    Color color = Color::Black;
};

/// k added self-loops pinning the trivial motions. Standard puts all k at
/// one vertex; generalized places one loop per forest component.
struct TieDown {
    enum class Kind { Standard, Generalized };
    Kind kind = Kind::Standard;
    int vertex = 0;                   // standard: the pinned vertex (0-based)
    std::vector<TieDownLoop> loops;   // generalized: explicit placement
};

inline TieDown standard_tie_down(int vertex) {
    TieDown t;
    t.kind = TieDown::Kind::Standard;
    t.vertex = vertex;
    return t;
}

/// Materialize a tie-down as explicit loops (ids "~t0", "~t1", ...). For a
/// standard tie-down this is k black loops at the chosen vertex.
inline std::vector<TieDownLoop> tie_down_loops(const TieDown& t, const FrameSignature& sig) {
    if (t.kind == TieDown::Kind::Generalized) return t.loops;
    std::vector<TieDownLoop> out;
    for (int i = 0; i < sig.k(); ++i)
        out.push_back({"~t" + std::to_string(i), t.vertex, Color::Black});
    return out;
}

/// The graph together with its tie-down loops appended as loop edges.
inline BicoloredMultigraph with_tie_down(const BicoloredMultigraph& g, const TieDown& t,
                                         const FrameSignature& sig) {
    std::vector<Edge> edges = g.edges();
    for (const auto& l : tie_down_loops(t, sig)) {
        if (l.vertex < 0 || l.vertex >= g.vertex_count())
            throw GraphError("tie-down loop vertex out of range");
        edges.push_back({l.id, l.vertex, l.vertex, l.color});
    }
    return BicoloredMultigraph(g.vertex_count(), std::move(edges));
}

/// Surjection old-vertex → new-vertex plus the removed edge ids.
struct ContractionMap {
    std::vector<int> vertex_map;          // size = old n, values in [0, new n)
    std::vector<std::string> removed_edges;
};

/// Contract the subgraph spanned by `block` (edge ids). The block's vertex
/// span must induce a connected subgraph. Block edges are removed, other
/// edges are re-targeted (edges that become loops are kept as loops), and
/// the base ordering of surviving edges is preserved. The smallest merged
/// vertex index represents the merged vertex.
inline std::pair<BicoloredMultigraph, ContractionMap> contract(const BicoloredMultigraph& g,
                                                               const std::set<std::string>& block) {
    std::set<int> span;
    std::vector<bool> in_block(g.edge_count(), false);
    for (const auto& id : block) {
        const Edge& e = g.edge(g.index_of(id));
        in_block[g.index_of(id)] = true;
        span.insert(e.tail);
        span.insert(e.head);
    }
    if (span.empty()) throw GraphError("contract: empty block");

    // Connectivity of the induced span via block edges.
    {
        std::map<int, std::vector<int>> adj;
        for (const auto& id : block) {
            const Edge& e = g.edge(g.index_of(id));
            adj[e.tail].push_back(e.head);
            adj[e.head].push_back(e.tail);
        }
        std::set<int> seen;
        std::vector<int> stack{*span.begin()};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (!seen.insert(v).second) continue;
            for (int w : adj[v]) stack.push_back(w);
        }
        if (seen != span) throw GraphError("contract: block is not connected");
    }

    const int rep = *span.begin();
    ContractionMap cm;
    cm.vertex_map.assign(g.vertex_count(), -1);
    int next = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (span.count(v) && v != rep) continue;  // merged away
        cm.vertex_map[v] = next++;
    }
    for (int v : span) cm.vertex_map[v] = cm.vertex_map[rep];

    std::vector<Edge> edges;
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        if (in_block[i]) {
            cm.removed_edges.push_back(g.edge(i).id);
            continue;
        }
        Edge e = g.edge(i);
        e.tail = cm.vertex_map[e.tail];
        e.head = cm.vertex_map[e.head];
        edges.push_back(e);
    }
    return {BicoloredMultigraph(next, std::move(edges)), cm};
}

/// Induced subgraph on a vertex set, renumbered densely; keeps base
/// ordering. Second result maps new vertex index → old.
inline std::pair<BicoloredMultigraph, std::vector<int>> induced_subgraph(
    const BicoloredMultigraph& g, const std::set<int>& vertices) {
    if (vertices.empty()) throw GraphError("induced_subgraph: empty vertex set");
    std::vector<int> old_of;
    std::map<int, int> new_of;
    for (int v : vertices) {
        if (v < 0 || v >= g.vertex_count()) throw GraphError("induced_subgraph: vertex out of range");
        new_of[v] = static_cast<int>(old_of.size());
        old_of.push_back(v);
    }
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        if (!vertices.count(e.tail) || !vertices.count(e.head)) continue;
        Edge f = e;
        f.tail = new_of[e.tail];
        f.head = new_of[e.head];
        edges.push_back(f);
    }
    return {BicoloredMultigraph(static_cast<int>(old_of.size()), std::move(edges)), old_of};
}

/// Replace every loop by an edge to a fresh apex vertex r = n. A looped
/// graph is a valid generalized tie-down exactly when the apexed graph is
/// [a,b]-tight, and circuits of the looped structure are circuits of the
/// apexed graph with r-edges read back as loops.
inline BicoloredMultigraph apexed(const BicoloredMultigraph& g) {
    std::vector<Edge> edges;
    const int r = g.vertex_count();
    for (const Edge& e : g.edges()) {
        Edge f = e;
        if (f.is_loop()) f.head = r;  // tail stays the loop vertex (< r)
        edges.push_back(f);
    }
    return BicoloredMultigraph(r + 1, std::move(edges));
}

}  // namespace cadrigid
