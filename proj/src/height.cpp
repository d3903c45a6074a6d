#include "startt/height.hpp"

#include <algorithm>

namespace startt {

namespace {

struct Interval { // (lo, hi]
    Rational lo, hi;
};

Interval nth_interval(std::int64_t r, std::int64_t kappa_sum) {
    return {Rational(r, 2 * r + kappa_sum), Rational(r, 2 * r - 1 + kappa_sum)};
}

} // namespace

HeightResult height_of_sequence(const Seq& c) {
    if (c.per.find('1') == std::string::npos)
        fail("FinitelyManyOnes", "sequence has finitely many 1s");
    if (c.at(0) == '0' || c.at(1) == '1')
        return {Rational(1, 2), HeightMode::shortcut_half};

    BlockForm form = block_decompose(c);

    // Exact limit of r/(2r + sum kappa) over the periodic block cycle.
    std::int64_t cycle_kappa = 0;
    for (std::size_t i = form.tail_start; i < form.tail_start + form.cycle_len; ++i)
        cycle_kappa += form.blocks[i].kappa;
    Rational limit(static_cast<std::int64_t>(form.cycle_len),
                   2 * static_cast<std::int64_t>(form.cycle_len) + cycle_kappa);

    // Past the preperiod plus two full cycles every per-residue endpoint
    // sequence is monotone toward the limit, so the outcome is decided.
    std::size_t cutoff = form.tail_start + 2 * form.cycle_len + 1;

    std::int64_t kappa_sum = form.at(0).kappa;
    Interval cap = nth_interval(1, kappa_sum);
    for (std::size_t s = 1;; ++s) {
        if (form.at(s - 1).mu == 1) return {cap.hi, HeightMode::terminated};
        kappa_sum += form.at(s).kappa;
        Interval next = nth_interval(static_cast<std::int64_t>(s) + 1, kappa_sum);
        if (next.hi <= cap.lo) return {cap.lo, HeightMode::terminated};
        if (next.lo >= cap.hi) return {cap.hi, HeightMode::terminated};
        cap.lo = std::max(cap.lo, next.lo);
        cap.hi = std::min(cap.hi, next.hi);
        if (s >= cutoff) {
            if (cap.lo > limit) return {cap.lo, HeightMode::terminated};
            if (cap.hi < limit) return {cap.hi, HeightMode::terminated};
            return {limit, HeightMode::limit};
        }
    }
}

Rational orbit_height(const Word& code) {
    if (!is_maximal_code(code)) fail("NotMaximal", "'" + code + "' is not a maximal code");
    Word doubled = code + code + code.substr(0, 2);
    Word adjusted = code;
    if (doubled.find("010") == std::string::npos && adjusted.back() == '1')
        adjusted.back() = '0';
    return height_of_sequence(periodic(adjusted)).value;
}

Word prefix_word(const Rational& q) {
    if (!(Rational(0, 1) < q && q <= Rational(1, 2)))
        fail("OutOfRange", "prefix word needs a rational in (0, 1/2]");
    std::int64_t m = q.num, n = q.den;

    Word by_runs = "1";
    for (std::int64_t i = 1; i <= m; ++i) {
        std::int64_t kappa = i == 1 ? n / m - 1 : (i * n) / m - ((i - 1) * n) / m - 2;
        by_runs.append(static_cast<std::size_t>(kappa), '0');
        by_runs.append(i < m ? 2 : 1, '1');
    }

    // Lattice rule: s_i = 1 iff the segment from (0,0) to (n,m) crosses a
    // horizontal lattice line at some x strictly inside (i-1, i+1).
    Word by_line;
    for (std::int64_t i = 0; i <= n; ++i) {
        bool hit = false;
        for (std::int64_t j = 0; j <= m && !hit; ++j)
            hit = (i - 1) * m < j * n && j * n < (i + 1) * m;
        by_line.push_back(hit ? '1' : '0');
    }
    if (by_runs != by_line) internal_error("prefix word constructions disagree for " + q.str());
    return by_runs;
}

Decoration star_decoration(const Rational& q) {
    if (!(Rational(0, 1) < q && q <= Rational(1, 2)))
        fail("OutOfRange", "decoration needs a rational in (0, 1/2]");
    if (q == Rational(1, 2)) return {true, ""};
    Word c = prefix_word(q);
    return {false, c.substr(2, c.size() - 4)};
}

ParsedCode parse_code(const Word& code) {
    Rational q = orbit_height(code); // also checks maximality
    std::size_t n = static_cast<std::size_t>(q.den);
    std::size_t len = code.size();
    if (len == n)
        fail("FiniteOrderType", "period equals the height denominator; rigid rotation");
    if (len < n + 2) internal_error("maximal code shorter than prefix plus joints");

    ParsedCode parsed;
    parsed.height = q;
    parsed.prefix = prefix_word(q);
    if (code.compare(0, n + 1, parsed.prefix) != 0)
        internal_error("code does not start with its height prefix");
    if (len == n + 2) {
        parsed.decoration = {true, ""};
        parsed.joints = code.substr(n + 1, 1);
    } else {
        parsed.decoration = {false, code.substr(n + 2, len - n - 3)};
        parsed.joints = {code[n + 1], code[len - 1]};
    }
    return parsed;
}

Rational decoration_height(const Decoration& w) {
    if (w.is_star) return Rational(1, 2);
    Seq s = periodic("10" + w.word + "0");
    Rational best = height_of_sequence(s).value;
    for (std::size_t i = 0; i + 1 < w.word.size() + 3; ++i) {
        s = s.shifted();
        best = std::min(best, height_of_sequence(s).value);
    }
    return best;
}

std::optional<std::pair<Rational, Rational>> star_family_check(const Word& code) {
    ParsedCode parsed;
    try {
        parsed = parse_code(code);
    } catch (const DomainError& e) {
        if (e.code() == "FiniteOrderType") return std::nullopt;
        throw;
    }
    if (parsed.decoration.is_star) {
        if (parsed.height < Rational(1, 2))
            return std::make_pair(parsed.height, Rational(1, 2));
        return std::nullopt;
    }
    // A decoration word determines at most one candidate: 10 w 01 must be the
    // prefix word of m/n with n = |w|+3 and m half the count of 1s.
    Word candidate = "10" + parsed.decoration.word + "01";
    std::int64_t n = static_cast<std::int64_t>(candidate.size()) - 1;
    std::int64_t ones = static_cast<std::int64_t>(std::count(candidate.begin(), candidate.end(), '1'));
    if (ones % 2 != 0) return std::nullopt;
    std::int64_t m = ones / 2;
    if (m <= 0 || 2 * m >= n || std::gcd(m, n) != 1) return std::nullopt;
    Rational mn(m, n);
    if (prefix_word(mn) != candidate) return std::nullopt;
    if (!(parsed.height < mn)) return std::nullopt;
    return std::make_pair(parsed.height, mn);
}

} // namespace startt
