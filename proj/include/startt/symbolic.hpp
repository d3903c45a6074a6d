#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "startt/error.hpp"

namespace startt {

// Finite binary words are strings over '0'/'1'.
using Word = std::string;

void check_word(const Word& w); // throws BadSymbol on anything but 0/1

// Eventually periodic one-sided sequence pre (per)^infinity, kept canonical:
// the period is primitive and the preperiod is shortest possible, so value
// equality is structural equality.
struct Seq {
    Word pre;
    Word per;

    Seq() = default;
    Seq(Word pre_, Word per_);

    char at(std::size_t i) const {
        if (i < pre.size()) return pre[i];
        return per[(i - pre.size()) % per.size()];
    }

    Seq shifted() const; // drops the first symbol

    friend bool operator==(const Seq& a, const Seq& b) {
        return a.pre == b.pre && a.per == b.per;
    }
    friend bool operator!=(const Seq& a, const Seq& b) { return !(a == b); }

    std::string str() const { return pre + "(" + per + ")"; }
};

Seq periodic(const Word& w); // \overline{w}
Seq parse_seq(const std::string& text); // "pre(per)" or "word" meaning \overline{word}

// Kneading order: at the first index where x and y differ, 0 < 1 if the
// common prefix holds an even number of 1s, reversed if odd.
// Returns -1, 0, +1.
int unimodal_compare(const Seq& x, const Seq& y);

// First-difference comparison of finite words under the same parity rule.
// Requires a difference within the common length.
int unimodal_compare_words(const Word& a, const Word& b);

// True iff \overline{w} strictly exceeds all its nontrivial shifts.
bool is_maximal_code(const Word& w);

// Run pair 0^kappa 1^mu with kappa >= 0, mu in {1,2}; mu = 1 only when the
// following kappa is positive.
struct Block {
    std::int64_t kappa = 0;
    std::int64_t mu = 0;
    friend bool operator==(const Block& a, const Block& b) {
        return a.kappa == b.kappa && a.mu == b.mu;
    }
};

// c = 1 0^{k1} 1^{m1} 0^{k2} 1^{m2} ... with the block stream eventually
// periodic: blocks[tail_start .. tail_start+cycle_len) repeats forever.
struct BlockForm {
    std::vector<Block> blocks;
    std::size_t tail_start = 0;
    std::size_t cycle_len = 0;

    const Block& at(std::size_t i) const {
        if (i < blocks.size()) return blocks[i];
        return blocks[tail_start + (i - tail_start) % cycle_len];
    }
};

// Errors: StartsWithZeroOrEleven, FinitelyManyOnes.
BlockForm block_decompose(const Seq& c);

// Inverse of block_decompose on its domain (used by tests).
Seq block_reassemble(const BlockForm& f);

} // namespace startt
