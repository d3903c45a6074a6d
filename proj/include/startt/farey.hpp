#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "startt/rational.hpp"

namespace startt {

// Shortest +m (mod n) walk from r ending at s, inclusive.
struct OrbitSegment {
    std::int64_t modulus = 0;
    std::int64_t step = 0;
    std::vector<std::int64_t> members;

    bool contains(std::int64_t x) const;
};

// Left and right Farey parents of x in (0, 1/2). Error: OutOfRange.
std::pair<Rational, Rational> farey_parents(const Rational& x);

// (0 = u_1/v_1, ..., u_a/v_a) with u_a/v_a = LFP(x), each term the LFP of its
// successor. Error: OutOfRange.
std::vector<Rational> left_farey_sequence(const Rational& x);

OrbitSegment orbit_segment(const Rational& mn, std::int64_t r, std::int64_t s);

// Increasing bijection (0,1) -> (u/v, p/q) for Farey neighbours u/v < p/q.
// Errors: NotNeighbours, OutOfRange.
Rational xi_map(const Rational& uv, const Rational& pq, const Rational& rs);

// Inverse of xi_map on (u/v, p/q).
Rational xi_inverse(const Rational& uv, const Rational& pq, const Rational& mn);

// Admissible integers k in [0, m-1]: [k+1, m-1] and the walk from k to 0 are
// disjoint. Computed by the LFP recursion, cross-checked against the direct
// definition when NDEBUG is off. Error: OutOfRange.
std::vector<std::int64_t> admissible_set(const Rational& mn);

// Direct-definition route, exposed for the dual-route tests.
std::vector<std::int64_t> admissible_set_direct(const Rational& mn);

} // namespace startt
