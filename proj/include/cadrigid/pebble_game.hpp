#pragma once

#include <algorithm>
#include <cassert>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cadrigid/graph.hpp"

namespace cadrigid {

enum class PebbleColor { Aqua, Black };

enum class Verdict { Tight, Sparse, DependentContainsSpanningTight, Dependent };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Tight: return "tight";
        case Verdict::Sparse: return "sparse";
        case Verdict::DependentContainsSpanningTight: return "dependent_contains_spanning_tight";
        default: return "dependent";
    }
}

/// Snapshot of a pebble game: accepted edges with their current tail and
/// covering pebble color, plus free pebbles per vertex.
struct PebbleConfiguration {
    struct DirectedEdge {
        int tail = -1;                         // current tail vertex, -1 = not in H
        PebbleColor cover = PebbleColor::Black;
    };
    int vertex_count = 0;
    std::vector<DirectedEdge> edges;           // aligned with graph base ordering
    std::vector<int> free_aqua, free_black;
};

struct SparsityResult {
    Verdict verdict = Verdict::Tight;
    std::vector<std::string> rejected;
    int free_pebbles = 0;
    PebbleConfiguration config;
};

struct PebbleGameOptions {
    bool cache_blocked_regions = true;  // O(1) rejection inside known tight regions
    std::function<void()> move_observer;  // test hook, fired after every elementary move
};

namespace detail {

enum class Demand { Aqua, Black, Any };

/// The [a,b]-pebble game. Runs on loop-free bicolored graphs; callers apex
/// looped graphs first. The uncolored (k,l) game lives in its own class
/// below; this one requires a >= 1 and b >= 1.
class AbPebbleEngine {
public:
    AbPebbleEngine(const BicoloredMultigraph& g, FrameSignature sig, PebbleGameOptions opt = {})
        : g_(g), a_(sig.a), b_(sig.b), opt_(opt) {
        if (a_ < 1 || b_ < 1) throw GraphError("[a,b]-pebble game requires a >= 1 and b >= 1");
        if (g.has_loops()) throw GraphError("[a,b]-pebble game input must be loop-free (apex first)");
        const int n = g.vertex_count();
        free_aqua_.assign(n, a_);
        free_black_.assign(n, b_);
        out_.assign(n, {});
        tail_.assign(g.edge_count(), -1);
        cover_.assign(g.edge_count(), PebbleColor::Black);
        stamp_aqua_.assign(n, 0);
        stamp_black_.assign(n, 0);
        component_.assign(n, -1);
    }

    int k() const { return a_ + b_; }

    bool try_add(std::size_t ei) {
        const Edge& e = g_.edge(ei);
        const int i = std::min(e.tail, e.head), j = std::max(e.tail, e.head);
        if (opt_.cache_blocked_regions && component_[i] >= 0 && component_[i] == component_[j])
            return false;

        // Collect k pebbles on i (aqua quota first), then top up j.
        while (free_aqua_[i] < a_ && collect_one(i, Demand::Aqua, j)) {}
        while (total(i) < k() && collect_one(i, Demand::Any, j)) {}
        if (e.color == Color::Red)
            while (free_aqua_[i] + free_aqua_[j] < a_ + 1 && collect_one(j, Demand::Aqua, i)) {}
        while (total(i) + total(j) < k() + 1 && collect_one(j, Demand::Any, i)) {}

        const int pair_total = total(i) + total(j);
        const int pair_aqua = free_aqua_[i] + free_aqua_[j];
        bool ok = pair_total >= k() + 1 && (e.color != Color::Red || pair_aqua >= a_ + 1);
        if (!ok) {
            if (opt_.cache_blocked_regions) note_blocked_region(i, j, e.color);
            return false;
        }

        PebbleColor c;
        if (e.color == Color::Red) {
            c = PebbleColor::Aqua;
        } else {
            const int pair_black = free_black_[i] + free_black_[j];
            c = pair_black >= b_ + 1 ? PebbleColor::Black : PebbleColor::Aqua;
        }
        int t = has_free(i, c) ? i : j;
        assert(has_free(t, c));
        take_free(t, c);
        tail_[ei] = t;
        cover_[ei] = c;
        insert_out(t, static_cast<int>(ei));
        moved();
        return true;
    }

    SparsityResult run(const std::vector<std::size_t>* order = nullptr) {
        SparsityResult res;
        for (std::size_t idx = 0; idx < g_.edge_count(); ++idx) {
            std::size_t ei = order ? (*order)[idx] : idx;
            if (!try_add(ei)) res.rejected.push_back(g_.edge(ei).id);
        }
        res.free_pebbles = 0;
        for (int v = 0; v < g_.vertex_count(); ++v) res.free_pebbles += total(v);
        if (res.rejected.empty())
            res.verdict = res.free_pebbles == k() ? Verdict::Tight : Verdict::Sparse;
        else
            res.verdict = res.free_pebbles == k() ? Verdict::DependentContainsSpanningTight
                                                  : Verdict::Dependent;
        res.config = snapshot();
        return res;
    }

    /// Theorem-style circuit extraction: collect k pebbles on the lower
    /// endpoint, exhaust collection on the other, then take the vertices
    /// reachable from it via allowed paths. Call on the final state with a
    /// rejected edge; mutates the configuration (copy the engine first if
    /// the state matters).
    std::set<int> circuit_reach(std::size_t ei) {
        const Edge& e = g_.edge(ei);
        const int i = std::min(e.tail, e.head), j = std::max(e.tail, e.head);
        while (free_aqua_[i] < a_ && collect_one(i, Demand::Aqua, j)) {}
        while (total(i) < k() && collect_one(i, Demand::Any, j)) {}
        if (total(i) < k())
            throw GraphError("circuit extraction: cannot collect k pebbles on endpoint");
        Demand d0 = Demand::Any;
        if (e.color == Color::Red) {
            while (free_aqua_[i] + free_aqua_[j] < a_ + 1 && collect_one(j, Demand::Aqua, i)) {}
            if (free_aqua_[i] + free_aqua_[j] < a_ + 1) d0 = Demand::Aqua;
        }
        while (total(i) + total(j) < k() + 1 && collect_one(j, Demand::Any, i)) {}
        if (total(i) + total(j) >= k() + 1 &&
            (e.color != Color::Red || free_aqua_[i] + free_aqua_[j] >= a_ + 1))
            throw GraphError("circuit extraction: edge is not rejected under this configuration");

        std::set<int> reach;
        reach_from(j, d0, reach);
        reach.insert(j);
        if (!reach.count(i))
            throw GraphError("circuit extraction: endpoint not reachable (internal error)");
        return reach;
    }

    bool collect_all_on(int v) {
        while (free_aqua_[v] < a_ && collect_one(v, Demand::Aqua, -1)) {}
        while (total(v) < k() && collect_one(v, Demand::Any, -1)) {}
        return total(v) == k();
    }

    PebbleConfiguration snapshot() const {
        PebbleConfiguration c;
        c.vertex_count = g_.vertex_count();
        c.free_aqua = free_aqua_;
        c.free_black = free_black_;
        c.edges.resize(g_.edge_count());
        for (std::size_t i = 0; i < g_.edge_count(); ++i)
            c.edges[i] = {tail_[i], cover_[i]};
        return c;
    }

private:
    const BicoloredMultigraph& g_;
    int a_, b_;
    PebbleGameOptions opt_;
    std::vector<int> free_aqua_, free_black_;
    std::vector<std::vector<int>> out_;  // sorted out-edge indices per vertex
    std::vector<int> tail_;              // -1 = not added
    std::vector<PebbleColor> cover_;
    std::vector<unsigned> stamp_aqua_, stamp_black_;
    unsigned stamp_ = 0;
    std::vector<int> component_;
    int next_component_ = 0;

    void moved() {
        if (opt_.move_observer) opt_.move_observer();
    }

    int total(int v) const { return free_aqua_[v] + free_black_[v]; }
    bool has_free(int v, PebbleColor c) const {
        return c == PebbleColor::Aqua ? free_aqua_[v] > 0 : free_black_[v] > 0;
    }
    void take_free(int v, PebbleColor c) {
        (c == PebbleColor::Aqua ? free_aqua_[v] : free_black_[v])--;
    }
    void give_free(int v, PebbleColor c) {
        (c == PebbleColor::Aqua ? free_aqua_[v] : free_black_[v])++;
    }

    void insert_out(int v, int ei) {
        auto& lst = out_[v];
        lst.insert(std::lower_bound(lst.begin(), lst.end(), ei), ei);
    }
    void remove_out(int v, int ei) {
        auto& lst = out_[v];
        lst.erase(std::find(lst.begin(), lst.end(), ei));
    }
    int head_of(int ei) const {
        const Edge& e = g_.edge(ei);
        return tail_[ei] == e.tail ? e.head : e.tail;
    }

    /// A black out-edge of v (other than `exclude`) whose cover is `c`, or -1.
    int black_out_with_cover(int v, PebbleColor c, int exclude) const {
        for (int ei : out_[v])
            if (ei != exclude && g_.edge(ei).color == Color::Black && cover_[ei] == c) return ei;
        return -1;
    }

    /// Can vertex w hand over a free pebble satisfying demand d?
    bool can_supply(int w, Demand d, int protect) const {
        if (w == protect) return false;
        switch (d) {
            case Demand::Any: return total(w) > 0;
            case Demand::Aqua: return free_aqua_[w] > 0;
            case Demand::Black: return free_black_[w] > 0;
        }
        return false;
    }

    /// Reversing out-edge ei of w frees the pebble currently covering it
    /// onto w; traversal is allowed only when that color meets demand d.
    /// Aqua searches therefore walk the aqua-covered subgraph X (red edges
    /// included) and black searches walk Y, so reversals only ever reorient
    /// a class, never change its edge set.
    bool can_route(int /*w*/, int ei, Demand d) const {
        if (d == Demand::Any) return true;
        const PebbleColor delivered =
            g_.edge(ei).color == Color::Red ? PebbleColor::Aqua : cover_[ei];
        return d == Demand::Aqua ? delivered == PebbleColor::Aqua
                                 : delivered == PebbleColor::Black;
    }

    bool marked(int v, Demand d) const {
        return (d == Demand::Aqua ? stamp_aqua_[v] : stamp_black_[v]) == stamp_;
    }
    void mark(int v, Demand d) {
        (d == Demand::Aqua ? stamp_aqua_[v] : stamp_black_[v]) = stamp_;
    }

    /// Demand a reversal of ei places on its head: red edges need an aqua
    /// pebble, black edges a pebble of their current cover color, so the
    /// aqua/black edge classes only change through explicit swaps/flips.
    Demand reversal_demand(int ei) const {
        if (g_.edge(ei).color == Color::Red) return Demand::Aqua;
        return cover_[ei] == PebbleColor::Aqua ? Demand::Aqua : Demand::Black;
    }

    // DFS for a reversible path delivering a pebble of color `want` to
    // `root`. Restriction (1) of the search is implicit in can_route: under
    // an aqua demand at a vertex whose aqua quota is fully spent on red
    // out-edges, only those red edges pass. Restriction (2) is the pair of
    // per-vertex marks, one per incoming demand.
    bool collect_one(int root, Demand want, int protect) {
        ++stamp_;
        mark(root, Demand::Aqua);  // a cycle back to the root makes no progress
        mark(root, Demand::Black);
        std::vector<int> path;
        if (dfs_edges(root, want, protect, path)) {
            unwind(root, want, path);
            return true;
        }
        return false;
    }

    bool dfs_edges(int w, Demand dw, int protect, std::vector<int>& path) {
        for (int ei : out_[w]) {
            if (!can_route(w, ei, dw)) continue;
            const int z = head_of(ei);
            const Demand dz = reversal_demand(ei);
            if (marked(z, dz)) continue;
            mark(z, dz);
            path.push_back(ei);
            if (can_supply(z, dz, protect)) return true;
            if (dfs_edges(z, dz, protect, path)) return true;
            path.pop_back();
        }
        return false;
    }

    void unwind(int /*root*/, Demand /*want*/, const std::vector<int>& path) {
        for (std::size_t s = path.size(); s-- > 0;) {
            const int ei = path[s];
            const int w = tail_[ei], z = head_of(ei);
            // Reverse ei: z re-covers it with a pebble of the same color,
            // the old cover frees onto w.
            const PebbleColor cz =
                g_.edge(ei).color == Color::Red ? PebbleColor::Aqua : cover_[ei];
            assert(has_free(z, cz));
            take_free(z, cz);
            const PebbleColor freed = cover_[ei];
            cover_[ei] = cz;
            remove_out(w, ei);
            tail_[ei] = z;
            insert_out(z, ei);
            give_free(w, freed);
            moved();
        }
    }

    void reach_from(int v, Demand d0, std::set<int>& reach) {
        ++stamp_;
        mark(v, d0);
        reach_rec(v, d0, reach);
    }
    void reach_rec(int w, Demand dw, std::set<int>& reach) {
        for (int ei : out_[w]) {
            if (!can_route(w, ei, dw)) continue;
            const int z = head_of(ei);
            const Demand dz = g_.edge(ei).color == Color::Red ? Demand::Aqua : Demand::Any;
            if (marked(z, dz)) continue;
            mark(z, dz);
            reach.insert(z);
            reach_rec(z, dz, reach);
        }
    }

    // After a failed collection the explored region holds no spare pebbles;
    // edges inside it can be rejected without searching again.
    void note_blocked_region(int i, int j, Color) {
        std::set<int> reach;
        reach_from(i, Demand::Any, reach);
        reach.insert(i);
        std::set<int> reach2;
        reach_from(j, Demand::Any, reach2);
        reach.insert(reach2.begin(), reach2.end());
        reach.insert(j);
        int free_outside_pair = 0;
        for (int v : reach)
            if (v != i && v != j) free_outside_pair += total(v);
        if (free_outside_pair > 0) return;
        if (total(i) + total(j) > k()) return;
        const int id = next_component_++;
        for (int v : reach) component_[v] = id;
    }
};

/// Lee–Streinu style uncolored (k,l)-pebble game, 1 <= l <= k+1. Used
/// color-blind for body-and-bar (l = k) and inside the factoring recursion
/// (l = k+1).
class UncoloredPebbleEngine {
public:
    UncoloredPebbleEngine(const BicoloredMultigraph& g, int k, int ell, PebbleGameOptions opt = {})
        : g_(g), k_(k), ell_(ell), opt_(opt) {
        if (k < 1 || ell < 1 || ell > k + 1) throw GraphError("unsupported (k,l) signature");
        if (g.has_loops()) throw GraphError("uncolored pebble game input must be loop-free");
        const int n = g.vertex_count();
        free_.assign(n, k_);
        out_.assign(n, {});
        tail_.assign(g.edge_count(), -1);
        stamp_v_.assign(n, 0);
        component_.assign(n, -1);
    }

    bool try_add(std::size_t ei) {
        const Edge& e = g_.edge(ei);
        const int i = std::min(e.tail, e.head), j = std::max(e.tail, e.head);
        if (opt_.cache_blocked_regions && component_[i] >= 0 && component_[i] == component_[j])
            return false;
        while (free_[i] < k_ && collect_one(i, j)) {}
        while (free_[i] + free_[j] < ell_ + 1 && collect_one(j, i)) {}
        if (free_[i] + free_[j] < ell_ + 1) {
            if (opt_.cache_blocked_regions) note_blocked_region(i, j);
            return false;
        }
        int t = free_[i] > 0 ? i : j;
        --free_[t];
        tail_[ei] = t;
        insert_out(t, static_cast<int>(ei));
        return true;
    }

    SparsityResult run(const std::vector<std::size_t>* order = nullptr) {
        SparsityResult res;
        for (std::size_t idx = 0; idx < g_.edge_count(); ++idx) {
            std::size_t ei = order ? (*order)[idx] : idx;
            if (!try_add(ei)) res.rejected.push_back(g_.edge(ei).id);
        }
        res.free_pebbles = 0;
        for (int v = 0; v < g_.vertex_count(); ++v) res.free_pebbles += free_[v];
        if (res.rejected.empty())
            res.verdict = res.free_pebbles == ell_ ? Verdict::Tight : Verdict::Sparse;
        else
            res.verdict = res.free_pebbles == ell_ ? Verdict::DependentContainsSpanningTight
                                                   : Verdict::Dependent;
        res.config = snapshot();
        return res;
    }

    std::set<int> circuit_reach(std::size_t ei) {
        const Edge& e = g_.edge(ei);
        const int i = std::min(e.tail, e.head), j = std::max(e.tail, e.head);
        while (free_[i] < k_ && collect_one(i, j)) {}
        if (free_[i] < k_) throw GraphError("circuit extraction: cannot collect k pebbles");
        while (free_[i] + free_[j] < ell_ + 1 && collect_one(j, i)) {}
        if (free_[i] + free_[j] >= ell_ + 1)
            throw GraphError("circuit extraction: edge is not rejected under this configuration");
        std::set<int> reach;
        ++stamp_;
        reach_rec(j, reach);
        reach.insert(j);
        if (!reach.count(i)) throw GraphError("circuit extraction: endpoint not reachable");
        return reach;
    }

    bool collect_all_on(int v) {
        while (free_[v] < k_ && collect_one(v, -1)) {}
        return free_[v] == k_;
    }

    PebbleConfiguration snapshot() const {
        PebbleConfiguration c;
        c.vertex_count = g_.vertex_count();
        c.free_black = free_;
        c.free_aqua.assign(g_.vertex_count(), 0);
        c.edges.resize(g_.edge_count());
        for (std::size_t i = 0; i < g_.edge_count(); ++i)
            c.edges[i] = {tail_[i], PebbleColor::Black};
        return c;
    }

private:
    const BicoloredMultigraph& g_;
    int k_, ell_;
    PebbleGameOptions opt_;
    std::vector<int> free_;
    std::vector<std::vector<int>> out_;
    std::vector<int> tail_;
    std::vector<unsigned> stamp_v_;
    unsigned stamp_ = 0;
    std::vector<int> component_;
    int next_component_ = 0;

    void insert_out(int v, int ei) {
        auto& lst = out_[v];
        lst.insert(std::lower_bound(lst.begin(), lst.end(), ei), ei);
    }
    void remove_out(int v, int ei) {
        auto& lst = out_[v];
        lst.erase(std::find(lst.begin(), lst.end(), ei));
    }
    int head_of(int ei) const {
        const Edge& e = g_.edge(ei);
        return tail_[ei] == e.tail ? e.head : e.tail;
    }

    bool collect_one(int root, int protect) {
        ++stamp_;
        stamp_v_[root] = stamp_;
        std::vector<int> path;
        if (!dfs(root, protect, path)) return false;
        for (std::size_t s = path.size(); s-- > 0;) {
            const int ei = path[s];
            const int w = tail_[ei], z = head_of(ei);
            --free_[z];
            remove_out(w, ei);
            tail_[ei] = z;
            insert_out(z, ei);
            ++free_[w];
        }
        return true;
    }

    bool dfs(int w, int protect, std::vector<int>& path) {
        for (int ei : out_[w]) {
            const int z = head_of(ei);
            if (stamp_v_[z] == stamp_) continue;
            stamp_v_[z] = stamp_;
            path.push_back(ei);
            if (z != protect && free_[z] > 0) return true;
            if (dfs(z, protect, path)) return true;
            path.pop_back();
        }
        return false;
    }

    void reach_rec(int w, std::set<int>& reach) {
        for (int ei : out_[w]) {
            const int z = head_of(ei);
            if (stamp_v_[z] == stamp_) continue;
            stamp_v_[z] = stamp_;
            reach.insert(z);
            reach_rec(z, reach);
        }
    }

    void note_blocked_region(int i, int j) {
        std::set<int> reach;
        ++stamp_;
        reach_rec(i, reach);
        reach_rec(j, reach);
        reach.insert(i);
        reach.insert(j);
        int outside = 0;
        for (int v : reach)
            if (v != i && v != j) outside += free_[v];
        if (outside > 0 || free_[i] + free_[j] > ell_) return;
        const int id = next_component_++;
        for (int v : reach) component_[v] = id;
    }
};

}  // namespace detail

/// Decide [a,b]-sparsity of a bicolored multigraph. Looped graphs are
/// handled through the apex construction; returned configurations then
/// refer to the apexed graph.
inline SparsityResult play(const BicoloredMultigraph& g, FrameSignature sig,
                           PebbleGameOptions opt = {}) {
    if (g.has_loops()) {
        BicoloredMultigraph ga = apexed(g);
        detail::AbPebbleEngine eng(ga, sig, opt);
        return eng.run();
    }
    detail::AbPebbleEngine eng(g, sig, opt);
    return eng.run();
}

/// Color-blind (k,k) decision for all-black graphs (body-and-bar).
inline SparsityResult play_uncolored(const BicoloredMultigraph& g, int k,
                                     PebbleGameOptions opt = {}) {
    if (!g.all_black()) throw GraphError("play_uncolored: red edge present");
    if (g.has_loops()) {
        BicoloredMultigraph ga = apexed(g);
        detail::UncoloredPebbleEngine eng(ga, k, k, opt);
        return eng.run();
    }
    detail::UncoloredPebbleEngine eng(g, k, k, opt);
    return eng.run();
}

/// Fundamental circuit of a rejected edge in the [a,b]-matroid: the edge
/// set H' with H' + e minimally dependent. Replays the game to the final
/// configuration, then extracts the circuit per the reachability recipe.
inline std::set<std::string> fundamental_circuit(const BicoloredMultigraph& g, FrameSignature sig,
                                                 const std::string& rejected_id,
                                                 PebbleGameOptions opt = {}) {
    const BicoloredMultigraph* gp = &g;
    std::optional<BicoloredMultigraph> ga;
    if (g.has_loops()) {
        ga = apexed(g);
        gp = &*ga;
    }
    detail::AbPebbleEngine eng(*gp, sig, opt);
    SparsityResult res = eng.run();
    if (std::find(res.rejected.begin(), res.rejected.end(), rejected_id) == res.rejected.end())
        throw GraphError("fundamental_circuit: edge '" + rejected_id + "' was not rejected");
    std::set<int> verts = eng.circuit_reach(gp->index_of(rejected_id));
    PebbleConfiguration cfg = eng.snapshot();
    std::set<std::string> out;
    for (std::size_t i = 0; i < gp->edge_count(); ++i) {
        const Edge& e = gp->edge(i);
        if (e.id == rejected_id || cfg.edges[i].tail < 0) continue;
        if (verts.count(e.tail) && verts.count(e.head)) out.insert(e.id);
    }
    return out;
}

}  // namespace cadrigid
