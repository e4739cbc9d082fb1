#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cadrigid/graph.hpp"

namespace cadrigid::oracle {

/// Exhaustive (k,l)-sparsity: every nonempty vertex subset V' spans at most
/// k n' - l edges. Exponential in n; test use only.
inline bool is_kl_sparse_exhaustive(const BicoloredMultigraph& g, int k, int ell) {
    const int n = g.vertex_count();
    if (n > 24) throw GraphError("exhaustive sparsity check limited to n <= 24");
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
        int nprime = __builtin_popcount(s);
        long cap = static_cast<long>(k) * nprime - ell;
        long count = 0;
        for (const Edge& e : g.edges())
            if ((s >> e.tail & 1) && (s >> e.head & 1)) ++count;
        if (count > cap) return false;
    }
    return true;
}

inline bool is_kl_tight_exhaustive(const BicoloredMultigraph& g, int k, int ell) {
    return is_kl_sparse_exhaustive(g, k, ell) &&
           static_cast<long>(g.edge_count()) ==
               static_cast<long>(k) * g.vertex_count() - ell;
}

/// Brute-force [a,b]-sparsity per the definition: some subset B' of the
/// black edges makes R ∪ B' (a,a)-sparse and B \ B' (b,b)-sparse. Ground
/// truth for tests; exponential in the number of black edges.
inline bool sparsity_oracle(const BicoloredMultigraph& g, FrameSignature sig) {
    if (g.has_loops()) return false;  // (a,a)-sparse graphs carry no loops
    const int n = g.vertex_count();
    if (n > 20) throw GraphError("sparsity_oracle limited to n <= 20");
    std::vector<int> black, red;
    for (std::size_t i = 0; i < g.edge_count(); ++i)
        (g.edge(i).color == Color::Black ? black : red).push_back(static_cast<int>(i));
    if (black.size() > 20) throw GraphError("sparsity_oracle limited to 20 black edges");

    // Per vertex-subset masks over the black list and red count.
    const std::uint32_t vsets = 1u << n;
    std::vector<std::uint32_t> bmask(vsets, 0);
    std::vector<int> rcount(vsets, 0);
    std::vector<int> popc(vsets, 0);
    for (std::uint32_t s = 1; s < vsets; ++s) {
        popc[s] = __builtin_popcount(s);
        for (std::size_t bi = 0; bi < black.size(); ++bi) {
            const Edge& e = g.edge(black[bi]);
            if ((s >> e.tail & 1) && (s >> e.head & 1)) bmask[s] |= 1u << bi;
        }
        for (int ri : red) {
            const Edge& e = g.edge(ri);
            if ((s >> e.tail & 1) && (s >> e.head & 1)) ++rcount[s];
        }
    }

    const std::uint32_t bsets = 1u << black.size();
    for (std::uint32_t bp = 0; bp < bsets; ++bp) {
        bool ok = true;
        for (std::uint32_t s = 1; s < vsets && ok; ++s) {
            const int np = popc[s];
            const int aqua = rcount[s] + __builtin_popcount(bmask[s] & bp);
            if (aqua > sig.a * np - sig.a) { ok = false; break; }
            const int blk = __builtin_popcount(bmask[s] & ~bp);
            if (blk > sig.b * np - sig.b) ok = false;
        }
        if (ok) return true;
    }
    return false;
}

namespace detail {

constexpr std::int64_t kPrime = 2147483647;  // 2^31 - 1

inline std::size_t modp_rank(std::vector<std::vector<std::int64_t>>& m) {
    const std::size_t rows = m.size();
    if (rows == 0) return 0;
    const std::size_t cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        // Normalize pivot row.
        std::int64_t inv = 1, base = m[r][c], exp = kPrime - 2;
        while (exp) {
            if (exp & 1) inv = inv * base % kPrime;
            base = base * base % kPrime;
            exp >>= 1;
        }
        for (std::size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv % kPrime;
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            std::int64_t f = m[i][c];
            for (std::size_t j = c; j < cols; ++j)
                m[i][j] = ((m[i][j] - f * m[r][j]) % kPrime + kPrime) % kPrime;
        }
        ++r;
    }
    return r;
}

}  // namespace detail

/// Algebraic-route sparsity oracle: the edge rows of the rigidity matrix at
/// a random specialization are independent iff the graph is [a,b]-sparse.
/// Full rank at any specialization certifies sparsity; a deficient rank is
/// retried, so a "dependent" answer is wrong with negligible probability.
inline bool sparsity_oracle_rank(const BicoloredMultigraph& g, FrameSignature sig,
                                 std::mt19937_64& rng, int retries = 3) {
    if (g.has_loops()) return false;
    const int k = sig.k(), n = g.vertex_count();
    const std::size_t m = g.edge_count();
    if (m > static_cast<std::size_t>(k) * n) return false;
    std::uniform_int_distribution<std::int64_t> dist(1, detail::kPrime - 1);
    for (int t = 0; t < retries; ++t) {
        std::vector<std::vector<std::int64_t>> mat(m, std::vector<std::int64_t>(k * n, 0));
        for (std::size_t i = 0; i < m; ++i) {
            const Edge& e = g.edge(i);
            const int limit = e.color == Color::Red ? sig.a : k;
            for (int c = 0; c < limit; ++c) {
                std::int64_t v = dist(rng);
                mat[i][e.tail * k + c] = v;
                mat[i][e.head * k + c] = (detail::kPrime - v) % detail::kPrime;
            }
        }
        if (detail::modp_rank(mat) == m) return true;
    }
    return false;
}

/// Dispatching oracle used by the randomized agreement tests: exact brute
/// force when the black edge set is small, the rank route otherwise.
inline bool sparse_reference(const BicoloredMultigraph& g, FrameSignature sig,
                             std::mt19937_64& rng) {
    std::size_t blacks = 0;
    for (const Edge& e : g.edges())
        if (e.color == Color::Black) ++blacks;
    if (blacks <= 14 && g.vertex_count() <= 12) return sparsity_oracle(g, sig);
    return sparsity_oracle_rank(g, sig, rng);
}

/// All out-degree-exactly-k orientations (loops point out of their vertex);
/// in colored mode only orientations with at most a red out-edges per
/// vertex count. Each orientation is an edge-id → tail map.
inline std::vector<std::map<std::string, int>> brute_force_fans(const BicoloredMultigraph& g,
                                                                FrameSignature sig,
                                                                bool colored) {
    const int k = sig.k(), n = g.vertex_count();
    std::vector<std::map<std::string, int>> fans;
    std::vector<int> outdeg(n, 0), redout(n, 0);
    std::vector<int> choice(g.edge_count(), -1);

    auto rec = [&](auto&& self, std::size_t ei) -> void {
        if (ei == g.edge_count()) {
            for (int v = 0; v < n; ++v)
                if (outdeg[v] != k) return;
            std::map<std::string, int> fan;
            for (std::size_t i = 0; i < g.edge_count(); ++i) {
                const Edge& e = g.edge(i);
                fan[e.id] = choice[i] == 0 ? e.tail : e.head;
            }
            fans.push_back(std::move(fan));
            return;
        }
        const Edge& e = g.edge(ei);
        const bool red = e.color == Color::Red;
        for (int c = 0; c < (e.is_loop() ? 1 : 2); ++c) {
            const int t = c == 0 ? e.tail : e.head;
            if (outdeg[t] == k) continue;
            if (colored && red && redout[t] == sig.a) continue;
            ++outdeg[t];
            if (red) ++redout[t];
            choice[ei] = c;
            self(self, ei + 1);
            if (red) --redout[t];
            --outdeg[t];
        }
        choice[ei] = -1;
    };
    rec(rec, 0);
    return fans;
}

}  // namespace cadrigid::oracle
