#pragma once

#include <map>
#include <random>
#include <string>

#include "cadrigid/graph.hpp"
#include "cadrigid/rational.hpp"

namespace cadrigid {

/// Map edge-id → k-vector of exact rationals. Red edges must be zero in
/// the last b coordinates; enforced at validation time so labels can be
/// assembled incrementally.
class EdgeLabeling {
public:
    explicit EdgeLabeling(int k = 0) : k_(k) {}

    int k() const { return k_; }

    void set(const std::string& id, RatVec v) {
        if (static_cast<int>(v.size()) != k_) throw GraphError("label '" + id + "' has wrong length");
        labels_[id] = std::move(v);
    }
    bool has(const std::string& id) const { return labels_.count(id) > 0; }
    const RatVec& get(const std::string& id) const {
        auto it = labels_.find(id);
        if (it == labels_.end()) throw GraphError("missing label for edge '" + id + "'");
        return it->second;
    }
    const std::map<std::string, RatVec>& all() const { return labels_; }

    /// Red labels must vanish in the last b coordinates.
    void validate(const BicoloredMultigraph& g, const FrameSignature& sig) const {
        for (const Edge& e : g.edges()) {
            const RatVec& v = get(e.id);
            if (e.color == Color::Red)
                for (int c = sig.a; c < sig.k(); ++c)
                    if (v[c] != 0)
                        throw GraphError("red edge '" + e.id + "' has nonzero coordinate " +
                                         std::to_string(c + 1));
        }
    }

private:
    int k_ = 0;
    std::map<std::string, RatVec> labels_;
};

/// Homogeneous line coordinates through two distinct 2D rational points.
inline RatVec bar_label_2d(const RatVec& p1, const RatVec& p2) {
    if (p1 == p2) throw GraphError("bar endpoints coincide");
    // cross((x1,y1,1), (x2,y2,1))
    return {p1[1] - p2[1], p2[0] - p1[0], p1[0] * p2[1] - p1[1] * p2[0]};
}

/// Plücker coordinates (direction; moment) of the 3D line through two
/// distinct rational points; satisfies d·m = 0 exactly by construction.
inline RatVec bar_label_3d(const RatVec& p1, const RatVec& p2) {
    if (p1 == p2) throw GraphError("bar endpoints coincide");
    RatVec d = {p2[0] - p1[0], p2[1] - p1[1], p2[2] - p1[2]};
    RatVec m = {p1[1] * p2[2] - p1[2] * p2[1], p1[2] * p2[0] - p1[0] * p2[2],
                p1[0] * p2[1] - p1[1] * p2[0]};
    return {d[0], d[1], d[2], m[0], m[1], m[2]};
}

/// Random labeling with small integer entries; red edges get their zero
/// suffix. Generic with probability 1 for the identities tested here.
inline EdgeLabeling random_labeling(const BicoloredMultigraph& g, const FrameSignature& sig,
                                    std::mt19937_64& rng, long bound = 9, bool fractions = false) {
    EdgeLabeling lab(sig.k());
    for (const Edge& e : g.edges()) {
        RatVec v(sig.k(), Rat(0));
        const int limit = e.color == Color::Red ? sig.a : sig.k();
        for (int c = 0; c < limit; ++c) v[c] = random_small_rational(rng, bound, fractions);
        lab.set(e.id, std::move(v));
    }
    return lab;
}

}  // namespace cadrigid
