#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "startt/height.hpp"
#include "startt/rational.hpp"
#include "startt/symbolic.hpp"

namespace startt {

// A point of the orbit: s-th point of edge r counted from the initial
// (valence-1) end.
struct Label {
    std::int32_t r = 0;
    std::int32_t s = 0;
    friend bool operator==(const Label& a, const Label& b) { return a.r == b.r && a.s == b.s; }
    friend bool operator!=(const Label& a, const Label& b) { return !(a == b); }
    friend bool operator<(const Label& a, const Label& b) {
        return a.r != b.r ? a.r < b.r : a.s < b.s;
    }
    std::string str() const { return "(" + std::to_string(r) + "," + std::to_string(s) + ")"; }
};

enum class PointClass : char { A = 'A', B = 'B', C = 'C' };

// The combinatorial data of a star-orbit: per-edge point counts, the orbit
// permutation as a single cycle, and the fold partition of the e_0 points.
struct StarData {
    Rational slope;                       // m/n
    std::vector<std::int64_t> counts;     // N_0 .. N_{n-1}
    std::vector<std::int32_t> next;       // pi over flattened labels
    std::vector<PointClass> classes;      // class of (0,s), s < N_0

    std::int64_t n() const { return slope.den; }
    std::int64_t m() const { return slope.num; }
    std::int64_t period() const;

    std::int32_t id(const Label& l) const;
    Label label(std::int32_t id) const;
    Label pi(const Label& l) const { return label(next[id(l)]); }
    Label pi_inv(const Label& l) const;

    std::int64_t k() const { return pi({0, 0}).r; }
    PointClass gamma() const { return classes[0]; }
    std::int64_t c_index() const; // the unique C element of {0..N_0-1}

    // Cycle listing from (0,0); classes rendered as suffix tags.
    std::vector<Label> cycle_from_origin() const;
    std::string canonical_str() const;

    friend bool operator==(const StarData& a, const StarData& b) {
        return a.slope == b.slope && a.counts == b.counts && a.next == b.next &&
               a.classes == b.classes;
    }
};

// Image edge path of f_{m/n} on edge r: the fold word on e_0, a single edge
// otherwise. Letters are (edge, reversed).
std::vector<std::pair<std::int64_t, bool>> star_edge_image(const Rational& mn, std::int64_t r);

struct Validation {
    bool ok = true;
    std::string violated; // name of the first failed clause

    explicit operator bool() const { return ok; }
};

// Structural soundness plus the LD clauses for the class (m/n, k, gamma).
Validation validate_data(const StarData& d, std::int64_t k, PointClass gamma);

// validate_data against the (k, gamma) the data itself carries.
Validation validate_data(const StarData& d);
bool is_legal(const StarData& d);
void require_legal(const StarData& d); // IllegalData

// alpha/beta sides of the non-endpoint points: walking the cycle backwards
// from the C point, membership flips exactly at (0, s in A).
enum class SideSet : char { alpha = 'a', beta = 'b', none = '.' };

struct SidePartition {
    std::vector<SideSet> side; // per flattened label; endpoints get none
    std::vector<Label> alpha() const;
    std::vector<Label> beta() const;
};

SidePartition side_partition(const StarData& d);

// Combinatorial train-track conditions; the equivalent primed forms are
// recomputed as a cross-check and must agree.
Validation train_track_conditions(const StarData& d);
bool is_train_track(const StarData& d);

// In/out orientations of the threading arc at the non-endpoint points.
enum class IOSet : char { in = 'I', out = 'O', none = '.' };

struct IOPartition {
    std::vector<IOSet> side; // per flattened label; endpoints get none
    std::vector<Label> in() const;
    std::vector<Label> out() const;
};

IOPartition io_partition(const StarData& d); // HalfSlope for m/n = 1/2

// Horseshoe code of the orbit, read from (n-m, 0). For slope 1/2 the direct
// two-edge reading is used.
Word horseshoe_code(const StarData& d);

// Slope-1/2 data of a horseshoe orbit from its maximal code: positions from
// the unimodal order of the itineraries. Error: NotMaximal.
StarData horseshoe_data(const Word& code);

// Renormalization between the two-edge star and the (m/n, m-1, B) family.
StarData renormalize_phi(const StarData& d, const Rational& mn); // IllegalInput
StarData renormalize_psi(const StarData& d);                     // IllegalInput

// Explicit train-track orbits: the B family over admissible k_i (1 <= i <
// alpha, 1-based) parameterized by p/q in (0,1), and the A family (2 <= i <=
// alpha). Errors: BadIndex, NotCoprime.
StarData build_tt_orbit_b(const Rational& mn, std::size_t i, const Rational& pq);
StarData build_tt_orbit_a(const Rational& mn, std::size_t i);

// All legal data with period <= max_period, sorted by period then canonical
// serialization. tt_only keeps the train-track sublist.
std::vector<StarData> enumerate_orbits(const Rational& mn, std::int64_t max_period,
                                       bool tt_only = false, unsigned jobs = 1);

// --- truncated-map image path of the e_0 segment (shared by the Markov
// rotation graph and the Bestvina-Handel construction) ---

struct PathToken {
    enum Kind { traverse, fold } kind = traverse;
    std::int32_t r = 0;
    std::int32_t t = 0;    // interval index for traverse, 0 for fold
    bool down = false;     // traverse direction: toward the initial point
};

struct MasterPath {
    std::vector<PathToken> tokens;
    std::vector<std::size_t> cuts; // cuts[s] = token index where the image of
                                   // (0,s)'s segment begins; cuts[0] == 0
};

MasterPath master_path(const StarData& d);

} // namespace startt
