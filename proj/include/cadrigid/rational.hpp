#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace cadrigid {

using Rat = mpq_class;
using Int = mpz_class;
using RatVec = std::vector<Rat>;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parse "num", "num/den" or "-num/den" into an exact rational.
inline Rat parse_rational(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    try {
        Rat q(s);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational literal: '" + s + "'");
    }
}

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

inline bool is_integral(const Rat& q) { return q.get_den() == 1; }

/// Uniform random integer-valued rational in [-bound, bound], nonzero-biased
/// enough for genericity; used to sample labelings.
inline Rat random_small_rational(std::mt19937_64& rng, long bound = 9, bool fractions = false) {
    std::uniform_int_distribution<long> num(-bound, bound);
    if (!fractions) return Rat(num(rng));
    std::uniform_int_distribution<long> den(1, bound);
    Rat q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

inline double to_double(const Rat& q) { return q.get_d(); }

}  // namespace cadrigid
