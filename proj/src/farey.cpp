#include "startt/farey.hpp"

#include <algorithm>
#include <cassert>

namespace startt {

bool OrbitSegment::contains(std::int64_t x) const {
    return std::find(members.begin(), members.end(), x) != members.end();
}

namespace {

void require_open_half(const Rational& x, const char* who) {
    if (!(Rational(0, 1) < x && x < Rational(1, 2)))
        fail("OutOfRange", std::string(who) + " needs a rational strictly between 0 and 1/2");
}

} // namespace

std::pair<Rational, Rational> farey_parents(const Rational& x) {
    require_open_half(x, "farey_parents");
    std::int64_t m = x.num, n = x.den;
    // LFP u/v is the unique fraction with m v - n u = 1 and 0 < v < n.
    std::int64_t v = 0;
    for (std::int64_t t = 1; t < n; ++t)
        if ((m * t) % n == 1) { v = t; break; }
    if (v == 0) internal_error("no modular inverse; fraction not in lowest terms?");
    std::int64_t u = (m * v - 1) / n;
    Rational lfp(u, v), rfp(m - u, n - v);
    if (mediant(lfp, rfp) != x) internal_error("parent mediant mismatch");
    return {lfp, rfp};
}

std::vector<Rational> left_farey_sequence(const Rational& x) {
    require_open_half(x, "left_farey_sequence");
    std::vector<Rational> seq;
    Rational cur = x;
    while (cur.num != 0) {
        cur = farey_parents(cur).first;
        seq.push_back(cur);
        if (cur.num == 0) break;
        if (!(Rational(0, 1) < cur && cur < Rational(1, 2))) break;
    }
    std::reverse(seq.begin(), seq.end());
    return seq;
}

OrbitSegment orbit_segment(const Rational& mn, std::int64_t r, std::int64_t s) {
    std::int64_t n = mn.den, m = mn.num;
    if (r < 0 || r >= n || s < 0 || s >= n)
        fail("OutOfRange", "orbit segment endpoints must be residues mod n");
    OrbitSegment seg;
    seg.modulus = n;
    seg.step = m;
    std::int64_t cur = r;
    seg.members.push_back(cur);
    while (cur != s) {
        cur = (cur + m) % n;
        seg.members.push_back(cur);
    }
    return seg;
}

Rational xi_map(const Rational& uv, const Rational& pq, const Rational& rs) {
    if (pq.num * uv.den - uv.num * pq.den != 1)
        fail("NotNeighbours", uv.str() + " and " + pq.str() + " are not Farey neighbours");
    if (!(Rational(0, 1) < rs && rs < Rational(1, 1)))
        fail("OutOfRange", "xi argument must lie strictly between 0 and 1");
    std::int64_t r = rs.num, s = rs.den;
    return Rational(r * pq.num + (s - r) * uv.num, r * pq.den + (s - r) * uv.den);
}

Rational xi_inverse(const Rational& uv, const Rational& pq, const Rational& mn) {
    if (pq.num * uv.den - uv.num * pq.den != 1)
        fail("NotNeighbours", uv.str() + " and " + pq.str() + " are not Farey neighbours");
    if (!(uv < mn && mn < pq))
        fail("OutOfRange", mn.str() + " is not inside (" + uv.str() + ", " + pq.str() + ")");
    std::int64_t m = mn.num, n = mn.den;
    std::int64_t r = uv.den * m - uv.num * n;
    std::int64_t s = (uv.den - pq.den) * m + (pq.num - uv.num) * n;
    return Rational(r, s);
}

std::vector<std::int64_t> admissible_set_direct(const Rational& mn) {
    require_open_half(mn, "admissible_set");
    std::int64_t m = mn.num;
    std::vector<std::int64_t> result;
    for (std::int64_t k = 0; k < m; ++k) {
        OrbitSegment seg = orbit_segment(mn, k, 0);
        bool ok = true;
        for (std::int64_t r = k + 1; r < m && ok; ++r) ok = !seg.contains(r);
        if (ok) result.push_back(k);
    }
    return result;
}

std::vector<std::int64_t> admissible_set(const Rational& mn) {
    require_open_half(mn, "admissible_set");
    std::int64_t m = mn.num;
    std::vector<std::int64_t> result;
    if (m == 1) {
        result = {0};
    } else {
        Rational uv = farey_parents(mn).first;
        std::vector<std::int64_t> inner = admissible_set(uv);
        OrbitSegment right = orbit_segment(mn, mn.num, mn.den - 1);
        for (std::int64_t k = 0; k + 1 < m; ++k) {
            if (right.contains(k)) continue;
            std::int64_t psi = k;
            for (std::int64_t x : right.members)
                if (x <= k) --psi;
            if (std::binary_search(inner.begin(), inner.end(), psi)) result.push_back(k);
        }
        result.push_back(m - 1);
    }
#ifndef NDEBUG
    assert(result == admissible_set_direct(mn));
#endif
    return result;
}

} // namespace startt
