#pragma once

#include <optional>
#include <utility>

#include "startt/farey.hpp"
#include "startt/rational.hpp"
#include "startt/symbolic.hpp"

namespace startt {

enum class HeightMode { terminated, shortcut_half, limit };

struct HeightResult {
    Rational value;
    HeightMode mode = HeightMode::terminated;
};

// Nested-interval height of an eventually periodic sequence. Sequences
// starting 0 or 11 take the 1/2 shortcut; when the interval chain never
// separates the exact cycle limit is returned with mode=limit.
// Error: FinitelyManyOnes.
HeightResult height_of_sequence(const Seq& c);

// Height of the periodic orbit with the given maximal code (final-symbol
// adjustment applied first when \overline{code} lacks 010).
// Error: NotMaximal.
Rational orbit_height(const Word& code);

// The word of length n+1 attached to q = m/n in (0, 1/2]: both the run-length
// formula and the lattice-line rule are computed and must agree.
// Error: OutOfRange.
Word prefix_word(const Rational& q);

// Decoration of q: prefix_word(q) with leading 10 and trailing 01 removed;
// the star decoration (is_star) when q = 1/2.
struct Decoration {
    bool is_star = false;
    Word word;

    friend bool operator==(const Decoration& a, const Decoration& b) {
        return a.is_star == b.is_star && (a.is_star || a.word == b.word);
    }
    std::string str() const { return is_star ? "*" : (word.empty() ? "(empty)" : word); }
};

Decoration star_decoration(const Rational& q);

struct ParsedCode {
    Rational height;
    Word prefix;
    Decoration decoration;
    Word joints; // the one or two wildcard symbols actually present
};

// Splits a maximal code into prefix, wildcard joints and decoration.
// Errors: NotMaximal, FiniteOrderType.
ParsedCode parse_code(const Word& code);

// Least compatible height of a decoration: min over the shifts of
// \overline{10w0}; 1/2 for the star decoration.
Rational decoration_height(const Decoration& w);

// Some((u/v, m/n)) iff the code matches prefix(u/v) ? star_decoration(m/n) ?
// with u/v < m/n (the period-v+2 patterns when m/n = 1/2). Error: NotMaximal.
std::optional<std::pair<Rational, Rational>> star_family_check(const Word& code);

} // namespace startt
