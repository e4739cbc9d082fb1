#pragma once

// Shared fixtures and random generators for the test suites.

#include <random>
#include <string>
#include <vector>

#include "cadrigid/graph.hpp"
#include "cadrigid/labeling.hpp"

namespace fixtures {

using namespace cadrigid;

inline Edge mk(const std::string& id, int tail1, int head1, Color c = Color::Black) {
    return {id, tail1 - 1, head1 - 1, c};
}

/// Doubled triangle: pairs {a,b} on 12, {c,d} on 23, {e,f} on 13. 2D
/// body-and-bar, k = 3.
inline BicoloredMultigraph doubled_triangle() {
    return BicoloredMultigraph(3, {mk("a", 1, 2), mk("b", 1, 2), mk("c", 2, 3), mk("d", 2, 3),
                                   mk("e", 1, 3), mk("f", 1, 3)});
}

/// Doubled K4 with three red edges: the red pair {c,d} on vertices 3-4 plus
/// a red copy on 1-2. [2,2]-tight.
inline BicoloredMultigraph doubled_k4() {
    return BicoloredMultigraph(
        4, {mk("a", 1, 2, Color::Red), mk("b", 1, 2), mk("c", 3, 4, Color::Red),
            mk("d", 3, 4, Color::Red), mk("e", 1, 3), mk("f", 1, 3), mk("g", 1, 4), mk("h", 1, 4),
            mk("i", 2, 3), mk("j", 2, 3), mk("k", 2, 4), mk("l", 2, 4)});
}

/// Two doubled triangles joined by three connector bars; (3,3)-tight on 6
/// bodies. Factors into the two triangles plus the contracted triple edge.
inline BicoloredMultigraph two_triangle_chain() {
    return BicoloredMultigraph(
        6, {mk("a", 1, 2), mk("b", 1, 2), mk("c", 2, 3), mk("d", 2, 3), mk("e", 1, 3),
            mk("f", 1, 3), mk("g", 4, 5), mk("h", 4, 5), mk("i", 5, 6), mk("j", 5, 6),
            mk("k", 4, 6), mk("l", 4, 6), mk("m", 1, 4), mk("n", 2, 5), mk("o", 3, 6)});
}

/// Single-braced doubled 4-cycle: pairs {a,b} 12, {c,d} 23, {e,f} 34,
/// {g,h} 41, brace i on 13. Irreducible 3-frame.
inline BicoloredMultigraph braced_doubled_4cycle() {
    return BicoloredMultigraph(4, {mk("a", 1, 2), mk("b", 1, 2), mk("c", 2, 3), mk("d", 2, 3),
                                   mk("e", 3, 4), mk("f", 3, 4), mk("g", 1, 4), mk("h", 1, 4),
                                   mk("i", 1, 3)});
}

/// Quadrupled triangle: {a..d} on 12, {e..h} on 13, {i..l} on 23; a
/// generically minimally rigid 6-frame.
inline BicoloredMultigraph quadrupled_triangle() {
    return BicoloredMultigraph(
        3, {mk("a", 1, 2), mk("b", 1, 2), mk("c", 1, 2), mk("d", 1, 2), mk("e", 1, 3),
            mk("f", 1, 3), mk("g", 1, 3), mk("h", 1, 3), mk("i", 2, 3), mk("j", 2, 3),
            mk("k", 2, 3), mk("l", 2, 3)});
}

/// Chain of doubled triangles sharing one vertex between consecutive
/// blocks; (3,3)-tight with 2^blocks fan diagrams.
inline BicoloredMultigraph triangle_chain(int blocks) {
    std::vector<Edge> edges;
    int next = 0;
    for (int b = 0; b < blocks; ++b) {
        const int u = 2 * b, v = 2 * b + 1, w = 2 * b + 2;
        auto add = [&](int x, int y) {
            edges.push_back({"e" + std::to_string(next++), x, y, Color::Black});
        };
        add(u, v); add(u, v); add(v, w); add(v, w); add(u, w); add(u, w);
    }
    return BicoloredMultigraph(2 * blocks + 1, std::move(edges));
}

/// Random (k,k)-tight graph via vertex additions: every new vertex arrives
/// with k edges to earlier vertices.
inline BicoloredMultigraph random_tight(int k, int n, std::mt19937_64& rng) {
    std::vector<Edge> edges;
    int next = 0;
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> pick(0, v - 1);
        for (int c = 0; c < k; ++c)
            edges.push_back({"e" + std::to_string(next++), pick(rng), v, Color::Black});
    }
    return BicoloredMultigraph(n, std::move(edges));
}

/// Random loop-free bicolored multigraph.
inline BicoloredMultigraph random_bicolored(int n, int m, double red_prob, std::mt19937_64& rng) {
    std::vector<Edge> edges;
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::uniform_real_distribution<double> real(0.0, 1.0);
    for (int i = 0; i < m; ++i) {
        int u = pick(rng), v = pick(rng);
        while (u == v) v = pick(rng);
        edges.push_back({"e" + std::to_string(i), u, v,
                         real(rng) < red_prob ? Color::Red : Color::Black});
    }
    return BicoloredMultigraph(n, std::move(edges));
}

}  // namespace fixtures
