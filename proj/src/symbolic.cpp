#include "startt/symbolic.hpp"
#include "startt/rational.hpp"

#include <algorithm>
#include <numeric>

namespace startt {

Rational parse_rational(const std::string& text) {
    auto bad = [&] { fail("BadRational", "cannot parse '" + text + "'"); };
    std::size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(text), 1);
        std::int64_t n = std::stoll(text.substr(0, slash));
        std::int64_t d = std::stoll(text.substr(slash + 1));
        if (d <= 0 || n < 0) bad();
        return Rational(n, d);
    } catch (const std::logic_error&) {
        bad();
    }
    return {};
}

void check_word(const Word& w) {
    for (char c : w)
        if (c != '0' && c != '1') fail("BadSymbol", "word may contain only 0 and 1");
}

namespace {

Word primitive_root(const Word& w) {
    for (std::size_t d = 1; d <= w.size() / 2; ++d) {
        if (w.size() % d != 0) continue;
        bool ok = true;
        for (std::size_t i = d; i < w.size() && ok; ++i) ok = w[i] == w[i - d];
        if (ok) return w.substr(0, d);
    }
    return w;
}

} // namespace

Seq::Seq(Word pre_, Word per_) : pre(std::move(pre_)), per(std::move(per_)) {
    check_word(pre);
    check_word(per);
    if (per.empty()) fail("EmptyPeriod", "periodic part must be nonempty");
    per = primitive_root(per);
    while (!pre.empty() && pre.back() == per.back()) {
        per = per.back() + per.substr(0, per.size() - 1);
        pre.pop_back();
    }
}

Seq Seq::shifted() const {
    if (!pre.empty()) return Seq(pre.substr(1), per);
    return Seq("", per.substr(1) + per.substr(0, 1));
}

Seq periodic(const Word& w) { return Seq("", w); }

Seq parse_seq(const std::string& text) {
    std::size_t open = text.find('(');
    if (open == std::string::npos) return periodic(text);
    if (text.back() != ')') fail("BadSequence", "expected pre(period)");
    return Seq(text.substr(0, open), text.substr(open + 1, text.size() - open - 2));
}

int unimodal_compare(const Seq& x, const Seq& y) {
    std::size_t bound = std::max(x.pre.size(), y.pre.size()) +
                        std::lcm(x.per.size(), y.per.size());
    bool even = true;
    for (std::size_t i = 0; i < bound; ++i) {
        char a = x.at(i), b = y.at(i);
        if (a != b) {
            int natural = a < b ? -1 : 1;
            return even ? natural : -natural;
        }
        if (a == '1') even = !even;
    }
    return 0;
}

int unimodal_compare_words(const Word& a, const Word& b) {
    std::size_t n = std::min(a.size(), b.size());
    bool even = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] != b[i]) {
            int natural = a[i] < b[i] ? -1 : 1;
            return even ? natural : -natural;
        }
        if (a[i] == '1') even = !even;
    }
    internal_error("words agree within the shorter length");
}

bool is_maximal_code(const Word& w) {
    check_word(w);
    if (w.empty()) fail("EmptyWord", "code must be nonempty");
    Seq full = periodic(w);
    Word rot = w;
    for (std::size_t i = 1; i < w.size(); ++i) {
        rot = rot.substr(1) + rot[0];
        if (unimodal_compare(full, periodic(rot)) <= 0) return false;
    }
    return true;
}

BlockForm block_decompose(const Seq& c) {
    if (c.per.find('1') == std::string::npos)
        fail("FinitelyManyOnes", "sequence has finitely many 1s");
    if (c.at(0) == '0' || c.at(1) == '1')
        fail("StartsWithZeroOrEleven", "height shortcut applies; no block form");

    BlockForm form;
    std::size_t pos = 1; // the leading 1 is consumed
    // A block starts either at a 0 (reading kappa > 0) or inside a 1-run
    // (kappa = 0). The parse state is just the current position, so the
    // stream cycles once a position phase in the periodic part repeats.
    std::vector<std::ptrdiff_t> seen(c.per.size(), -1);
    for (;;) {
        if (pos >= c.pre.size()) {
            std::size_t phase = (pos - c.pre.size()) % c.per.size();
            if (seen[phase] >= 0) {
                form.tail_start = static_cast<std::size_t>(seen[phase]);
                form.cycle_len = form.blocks.size() - form.tail_start;
                return form;
            }
            seen[phase] = static_cast<std::ptrdiff_t>(form.blocks.size());
        }
        Block b;
        while (c.at(pos) == '0') { ++b.kappa; ++pos; }
        // 1-run: consume at most two; a leftover run continues as kappa=0.
        ++pos;
        b.mu = 1;
        if (c.at(pos) == '1') { b.mu = 2; ++pos; }
        form.blocks.push_back(b);
    }
}

Seq block_reassemble(const BlockForm& f) {
    auto emit = [](Word& out, const Block& b) {
        out.append(static_cast<std::size_t>(b.kappa), '0');
        out.append(static_cast<std::size_t>(b.mu), '1');
    };
    Word pre = "1";
    for (std::size_t i = 0; i < f.tail_start; ++i) emit(pre, f.blocks[i]);
    Word per;
    for (std::size_t i = f.tail_start; i < f.tail_start + f.cycle_len; ++i)
        emit(per, f.blocks[i]);
    return Seq(pre, per);
}

} // namespace startt
