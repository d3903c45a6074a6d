#include "startt/stardata.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace startt {

std::int64_t StarData::period() const {
    std::int64_t p = 0;
    for (std::int64_t c : counts) p += c;
    return p;
}

std::int32_t StarData::id(const Label& l) const {
    std::int32_t base = 0;
    for (std::int32_t r = 0; r < l.r; ++r) base += static_cast<std::int32_t>(counts[r]);
    return base + l.s;
}

Label StarData::label(std::int32_t id) const {
    std::int32_t r = 0;
    while (id >= counts[r]) { id -= static_cast<std::int32_t>(counts[r]); ++r; }
    return {r, id};
}

Label StarData::pi_inv(const Label& l) const {
    std::int32_t target = id(l);
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(next.size()); ++i)
        if (next[i] == target) return label(i);
    internal_error("pi is not a bijection");
}

std::int64_t StarData::c_index() const {
    for (std::size_t s = 0; s < classes.size(); ++s)
        if (classes[s] == PointClass::C) return static_cast<std::int64_t>(s);
    internal_error("no C point");
}

std::vector<Label> StarData::cycle_from_origin() const {
    std::vector<Label> cyc;
    Label cur{0, 0};
    for (std::int64_t i = 0; i < period(); ++i) {
        cyc.push_back(cur);
        cur = pi(cur);
    }
    return cyc;
}

std::string StarData::canonical_str() const {
    std::ostringstream out;
    out << slope.str() << "|";
    for (std::size_t r = 0; r < counts.size(); ++r)
        out << (r ? "," : "") << counts[r];
    out << "|";
    bool first = true;
    for (const Label& l : cycle_from_origin()) {
        if (!first) out << " ";
        first = false;
        out << l.str();
        if (l.r == 0) out << ":" << static_cast<char>(classes[l.s]);
    }
    return out.str();
}

std::vector<std::pair<std::int64_t, bool>> star_edge_image(const Rational& mn, std::int64_t r) {
    std::int64_t m = mn.num, n = mn.den;
    if (!(Rational(0, 1) < mn && mn <= Rational(1, 2)))
        fail("OutOfRange", "star map slope must lie in (0, 1/2]");
    if (r < 0 || r >= n) fail("OutOfRange", "edge index out of range");
    std::vector<std::pair<std::int64_t, bool>> path;
    if (r != 0) {
        path.emplace_back((r + m) % n, false);
        return path;
    }
    path.emplace_back(0, false);
    for (std::int64_t j = 1; j <= m; ++j) {
        path.emplace_back(j, true);
        path.emplace_back(j, false);
    }
    return path;
}

namespace {

Validation violation(const std::string& clause) { return {false, clause}; }

} // namespace

Validation validate_data(const StarData& d, std::int64_t k, PointClass gamma) {
    std::int64_t n = d.n(), m = d.m();
    if (n < 2 || static_cast<std::int64_t>(d.counts.size()) != n)
        return violation("structure: counts size");
    std::int64_t total = d.period();
    for (std::int64_t c : d.counts)
        if (c < 1) return violation("structure: empty edge");
    if (static_cast<std::int64_t>(d.next.size()) != total)
        return violation("structure: permutation size");
    if (static_cast<std::int64_t>(d.classes.size()) != d.counts[0])
        return violation("structure: class vector size");

    // pi must be a single cycle through every label.
    {
        std::vector<char> hit(d.next.size(), 0);
        std::int32_t cur = 0;
        for (std::int64_t i = 0; i < total; ++i) {
            if (cur < 0 || cur >= total || hit[cur]) return violation("structure: not a single cycle");
            hit[cur] = 1;
            cur = d.next[cur];
        }
        if (cur != 0) return violation("structure: not a single cycle");
    }

    std::int64_t c_count = 0;
    for (PointClass pc : d.classes)
        if (pc == PointClass::C) ++c_count;
    if (c_count != 1) return violation("structure: #C != 1");

    if (gamma == PointClass::C) return violation("structure: gamma must be A or B");
    if (k < 0 || k >= m) return violation("structure: k out of range");
    if (k == 0 && gamma != PointClass::B) return violation("structure: gamma must be B when k = 0");

    // LD a) for r > 0.
    for (std::int64_t r = 1; r < n; ++r) {
        std::int64_t prev = -1;
        for (std::int64_t s = 0; s < d.counts[r]; ++s) {
            Label img = d.pi({static_cast<std::int32_t>(r), static_cast<std::int32_t>(s)});
            if (img.r != (r + m) % n) return violation("LD a i");
            if (img.s <= prev) return violation("LD a i");
            prev = img.s;
        }
        if (d.pi({static_cast<std::int32_t>(r), 0}).s != 0) return violation("LD a ii");
    }

    // LD b) for r = 0.
    if (d.classes[0] != gamma) return violation("LD b i");
    if (d.pi({0, 0}).r != k) return violation("LD b ii");
    std::int64_t c = d.c_index();
    if (d.pi({0, static_cast<std::int32_t>(c)}) != Label{static_cast<std::int32_t>(m), 0})
        return violation("LD b iii");
    std::int64_t prev_r = k;
    for (std::int64_t s = 0; s < d.counts[0]; ++s) {
        std::int64_t r = d.pi({0, static_cast<std::int32_t>(s)}).r;
        if (r < k || r > m) return violation("LD b iv");
        if (r < prev_r) return violation("LD b iv");
        prev_r = r;
    }
    for (std::int64_t s1 = 0; s1 < d.counts[0]; ++s1)
        for (std::int64_t s2 = s1 + 1; s2 < d.counts[0]; ++s2) {
            Label i1 = d.pi({0, static_cast<std::int32_t>(s1)});
            Label i2 = d.pi({0, static_cast<std::int32_t>(s2)});
            if (i1.r != i2.r) continue;
            PointClass c1 = d.classes[s1], c2 = d.classes[s2];
            if ((c1 == PointClass::B || c1 == PointClass::C) && c2 != PointClass::B)
                return violation("LD b v");
            if (c1 == PointClass::A && c2 == PointClass::A && !(i1.s > i2.s))
                return violation("LD b vi");
            if (c1 == PointClass::B && c2 == PointClass::B && !(i1.s < i2.s))
                return violation("LD b vi");
        }
    return {};
}

Validation validate_data(const StarData& d) {
    if (d.counts.empty() || d.counts[0] < 1 || d.classes.empty())
        return violation("structure: empty data");
    if (d.classes[0] == PointClass::C) return violation("structure: origin in C");
    if (d.next.empty()) return violation("structure: empty permutation");
    std::int64_t total = 0;
    for (std::int64_t c : d.counts) total += c;
    if (static_cast<std::int64_t>(d.next.size()) != total)
        return violation("structure: permutation size");
    return validate_data(d, d.pi({0, 0}).r, d.classes[0]);
}

bool is_legal(const StarData& d) { return validate_data(d).ok; }

void require_legal(const StarData& d) {
    Validation v = validate_data(d);
    if (!v.ok) fail("IllegalData", "star data violates " + v.violated);
}

std::vector<Label> SidePartition::alpha() const {
    std::vector<Label> out;
    return out; // filled by the free function below via side scan; unused here
}
std::vector<Label> SidePartition::beta() const { return {}; }

SidePartition side_partition(const StarData& d) {
    require_legal(d);
    SidePartition part;
    part.side.assign(d.next.size(), SideSet::none);
    std::int64_t walk = d.period() - d.n();
    Label cur{static_cast<std::int32_t>(d.m()), 0};
    SideSet set = SideSet::beta;
    for (std::int64_t i = 1; i <= walk; ++i) {
        cur = d.pi_inv(cur);
        if (cur.r == 0 && d.classes[cur.s] == PointClass::A && i > 1)
            set = set == SideSet::beta ? SideSet::alpha : SideSet::beta;
        part.side[d.id(cur)] = set;
    }
    return part;
}

namespace {

// TT a)-d) plus the primed equivalents as a consistency check.
Validation tt_conditions_checked(const StarData& d) {
    SidePartition sides = side_partition(d);
    std::int64_t n = d.n(), m = d.m(), k = d.k();
    std::int64_t n0 = d.counts[0];

    Validation result;
    // TT a)
    for (std::int64_t s = 0; s + 1 < n0 && result.ok; ++s) {
        Label img = d.pi({0, static_cast<std::int32_t>(s)});
        SideSet want = d.classes[s] == PointClass::B   ? SideSet::alpha
                       : d.classes[s] == PointClass::A ? SideSet::beta
                                                       : SideSet::none;
        if (want != SideSet::none && sides.side[d.id(img)] != want) result = violation("TT a");
    }
    // TT b)
    for (std::int64_t r = k + 1; r < m && result.ok; ++r)
        if (d.counts[(r + n - m) % n] != 1) result = violation("TT b");
    // TT c)
    std::int64_t fold_edge = (k + n - m) % n;
    std::int64_t s00 = d.pi({0, 0}).s;
    for (std::int64_t s = 1; s < d.counts[fold_edge] && result.ok; ++s) {
        Label from{static_cast<std::int32_t>(fold_edge), static_cast<std::int32_t>(s)};
        if (d.pi(from).s > s00 && sides.side[d.id(d.pi(from))] != SideSet::beta)
            result = violation("TT c");
    }
    // TT d)
    if (result.ok && d.gamma() == PointClass::A) {
        for (std::int64_t s = 1; s < d.counts[fold_edge]; ++s) {
            Label from{static_cast<std::int32_t>(fold_edge), static_cast<std::int32_t>(s)};
            if (!(d.pi(from).s > s00)) { result = violation("TT d"); break; }
        }
    }

    // Primed cross-checks: TT' a) says the class word along the cycle reads
    // B^{N_0-2} A C; TT' d) says pi(0,0) = (k,1) when gamma = A.
    bool tta = true;
    for (std::int64_t s = 0; s + 1 < n0 && tta; ++s) {
        Label img = d.pi({0, static_cast<std::int32_t>(s)});
        SideSet want = d.classes[s] == PointClass::B ? SideSet::alpha : SideSet::beta;
        if (d.classes[s] != PointClass::C && sides.side[d.id(img)] != want) tta = false;
    }
    bool tta_prime = false;
    {
        std::int64_t a_count = 0;
        for (PointClass pc : d.classes)
            if (pc == PointClass::A) ++a_count;
        if (a_count == 1) {
            std::int64_t a_at = 0;
            while (d.classes[a_at] != PointClass::A) ++a_at;
            Label cur = d.pi({0, static_cast<std::int32_t>(a_at)});
            while (cur.r != 0) cur = d.pi(cur);
            tta_prime = d.classes[cur.s] == PointClass::C;
        }
    }
    if (tta != tta_prime) internal_error("TT a and TT' a disagree on " + d.canonical_str());
    if (tta) {
        bool ttd = true;
        if (d.gamma() == PointClass::A) {
            for (std::int64_t s = 1; s < d.counts[fold_edge]; ++s) {
                Label from{static_cast<std::int32_t>(fold_edge), static_cast<std::int32_t>(s)};
                if (!(d.pi(from).s > s00)) { ttd = false; break; }
            }
        }
        bool ttd_prime = d.gamma() != PointClass::A || d.pi({0, 0}) == Label{static_cast<std::int32_t>(k), 1};
        if (ttd != ttd_prime) internal_error("TT d and TT' d disagree on " + d.canonical_str());
    }
    return result;
}

} // namespace

Validation train_track_conditions(const StarData& d) {
    require_legal(d);
    return tt_conditions_checked(d);
}

bool is_train_track(const StarData& d) { return train_track_conditions(d).ok; }

std::vector<Label> IOPartition::in() const {
    std::vector<Label> out;
    return out;
}
std::vector<Label> IOPartition::out() const { return {}; }

IOPartition io_partition(const StarData& d) {
    require_legal(d);
    std::int64_t n = d.n(), m = d.m();
    if (n == 2 * m) fail("HalfSlope", "in/out partition is undefined for slope 1/2");
    std::int64_t border = n - 2 * m;

    IOPartition part;
    part.side.assign(d.next.size(), IOSet::none);
    std::int64_t walk = d.period() - n;
    Label cur = d.pi({0, 0});
    IOSet set = d.gamma() == PointClass::B ? IOSet::in : IOSet::out;
    part.side[d.id(cur)] = set;
    for (std::int64_t i = 2; i <= walk; ++i) {
        Label prev = cur;
        cur = d.pi(cur);
        if (prev.r == border) {
            set = IOSet::out;
        } else if (prev.r == 0) {
            if (d.classes[prev.s] == PointClass::A) set = set == IOSet::in ? IOSet::out : IOSet::in;
        } else if (prev.r > border) {
            set = set == IOSet::in ? IOSet::out : IOSet::in;
        }
        part.side[d.id(cur)] = set;
    }
    return part;
}

Word horseshoe_code(const StarData& d) {
    require_legal(d);
    std::int64_t n = d.n(), m = d.m();
    Word code;
    if (n == 2 * m) {
        // Two-edge star: symbol 1 on e_1, symbol 0 on e_0 up to and including
        // the fold point.
        std::int64_t c = d.c_index();
        Label cur{1, 0};
        for (std::int64_t i = 0; i < d.period(); ++i) {
            code.push_back(cur.r == 1 ? '1' : (cur.s <= c ? '0' : '1'));
            cur = d.pi(cur);
        }
        return code;
    }
    IOPartition io = io_partition(d);
    std::int64_t border = n - 2 * m;
    Label cur{static_cast<std::int32_t>(n - m), 0};
    for (std::int64_t i = 0; i < d.period(); ++i) {
        char sym;
        if (cur.r < border) sym = '0';
        else if (cur.r > border) sym = '1';
        else if (cur.s == 0) sym = '0';
        else sym = io.side[d.id(cur)] == IOSet::out ? '0' : '1';
        code.push_back(sym);
        cur = d.pi(cur);
    }
    return code;
}

StarData horseshoe_data(const Word& code) {
    if (!is_maximal_code(code)) fail("NotMaximal", "'" + code + "' is not a maximal code");
    std::size_t period = code.size();
    if (period < 2) fail("OutOfRange", "period must exceed 1");

    std::vector<Seq> shifts;
    Seq cur = periodic(code);
    for (std::size_t i = 0; i < period; ++i) {
        shifts.push_back(cur);
        cur = cur.shifted();
    }

    // Right of the all-1s fixed point: first 0 comes after an odd run of 1s.
    Seq one = periodic("1");
    auto right_of_fixed = [&](const Seq& s) { return unimodal_compare(s, one) > 0; };

    std::vector<std::size_t> left, right;
    for (std::size_t i = 0; i < period; ++i)
        (right_of_fixed(shifts[i]) ? right : left).push_back(i);

    auto by_order = [&](std::size_t a, std::size_t b) {
        return unimodal_compare(shifts[a], shifts[b]) < 0;
    };
    std::sort(left.begin(), left.end(), by_order);
    std::sort(right.begin(), right.end(), by_order);

    StarData d;
    d.slope = Rational(1, 2);
    d.counts = {static_cast<std::int64_t>(left.size()), static_cast<std::int64_t>(right.size())};
    // e_0 labels in increasing order; e_1 labels from the initial (rightmost)
    // point inward, so (1,0) is the unimodal maximum.
    std::vector<Label> label_of_shift(period);
    for (std::size_t s = 0; s < left.size(); ++s)
        label_of_shift[left[s]] = {0, static_cast<std::int32_t>(s)};
    for (std::size_t s = 0; s < right.size(); ++s)
        label_of_shift[right[right.size() - 1 - s]] = {1, static_cast<std::int32_t>(s)};

    d.next.assign(period, 0);
    for (std::size_t i = 0; i < period; ++i) {
        Label from = label_of_shift[i];
        Label to = label_of_shift[(i + 1) % period];
        d.next[d.id(from)] = d.id(to);
    }

    d.classes.assign(left.size(), PointClass::B);
    for (std::size_t s = 0; s < left.size(); ++s) {
        std::size_t i = left[s];
        Label img = label_of_shift[(i + 1) % period];
        if (img == Label{1, 0}) d.classes[s] = PointClass::C;
        else if (shifts[i].at(0) == '0' && img.r == 1) d.classes[s] = PointClass::A;
    }
    return d;
}

StarData renormalize_phi(const StarData& d, const Rational& mn) {
    if (d.slope != Rational(1, 2) || !is_legal(d) || d.k() != 0 || d.gamma() != PointClass::B)
        fail("IllegalInput", "phi needs legal data in the (1/2, 0, B) class");
    if (!(Rational(0, 1) < mn && mn <= Rational(1, 2)))
        fail("OutOfRange", "phi target slope must lie in (0, 1/2]");
    std::int64_t m = mn.num, n = mn.den;

    OrbitSegment lower = orbit_segment(mn, (m - 1 + n) % n, 0); // m-1, 2m-1, ..., 0
    OrbitSegment upper = orbit_segment(mn, m % n, n - 1);       // m, 2m, ..., n-1

    StarData out;
    out.slope = mn;
    out.counts.assign(n, 0);
    for (std::int64_t r : lower.members) out.counts[r] = d.counts[0];
    for (std::int64_t r : upper.members) out.counts[r] = d.counts[1];
    out.classes = d.classes;

    std::vector<Label> cycle;
    for (const Label& l : d.cycle_from_origin()) {
        const auto& chain = l.r == 0 ? lower.members : upper.members;
        for (std::int64_t r : chain) cycle.push_back({static_cast<std::int32_t>(r), l.s});
    }
    out.next.assign(out.period(), 0);
    for (std::size_t i = 0; i < cycle.size(); ++i)
        out.next[out.id(cycle[i])] = out.id(cycle[(i + 1) % cycle.size()]);

    Validation v = validate_data(out, m - 1, PointClass::B);
    if (!v.ok) internal_error("phi produced illegal data: " + v.violated);
    return out;
}

StarData renormalize_psi(const StarData& d) {
    std::int64_t m = d.m(), n = d.n();
    if (!is_legal(d) || d.k() != m - 1 || d.gamma() != PointClass::B)
        fail("IllegalInput", "psi needs legal data in the (m/n, m-1, B) class");

    StarData out;
    out.slope = Rational(1, 2);
    out.counts = {d.counts[0], d.counts[(n - 1) % n]};
    out.classes = d.classes;

    std::vector<Label> cycle;
    for (const Label& l : d.cycle_from_origin()) {
        if (l.r == 0) cycle.push_back({0, l.s});
        else if (l.r == n - 1) cycle.push_back({1, l.s});
    }
    if (cycle.size() != static_cast<std::size_t>(out.period()))
        fail("IllegalInput", "data is not in the image of phi");
    out.next.assign(out.period(), 0);
    for (std::size_t i = 0; i < cycle.size(); ++i)
        out.next[out.id(cycle[i])] = out.id(cycle[(i + 1) % cycle.size()]);

    Validation v = validate_data(out, 0, PointClass::B);
    if (!v.ok) internal_error("psi produced illegal data: " + v.violated);
    return out;
}

StarData build_tt_orbit_b(const Rational& mn, std::size_t i, const Rational& pq) {
    std::int64_t m = mn.num, n = mn.den;
    std::vector<std::int64_t> adm = admissible_set(mn);
    std::size_t alpha = adm.size();
    if (i < 1 || i >= alpha) fail("BadIndex", "need 1 <= i < alpha");
    if (!(Rational(0, 1) < pq && pq < Rational(1, 1)))
        fail("OutOfRange", "parameter must lie strictly between 0 and 1");
    std::int64_t p = pq.num, q = pq.den;
    // parse-level guard: a non-reduced p/q cannot reach here through Rational,
    // so accept raw integers too via the CLI path; the cyclicity check below
    // still protects the library route.
    std::int64_t ki = adm[i - 1], kj = adm[i];

    OrbitSegment segr = orbit_segment(mn, m % n, (kj + n - m) % n);
    OrbitSegment segs = orbit_segment(mn, kj, (ki + n - m) % n);
    OrbitSegment segt = orbit_segment(mn, ki, 0);

    StarData d;
    d.slope = mn;
    d.counts.assign(n, 0);
    for (std::int64_t r : segr.members) d.counts[r] = 1;
    for (std::int64_t r : segs.members) d.counts[r] = q + 1 - p;
    for (std::int64_t r : segt.members) d.counts[r] = q + 1;

    d.classes.assign(q + 1, PointClass::B);
    d.classes[p] = PointClass::A;
    d.classes[q] = PointClass::C;

    d.next.assign(d.period(), 0);
    auto link = [&](const Label& from, const Label& to) { d.next[d.id(from)] = d.id(to); };
    for (std::int64_t s = 0; s <= q; ++s) {
        Label to;
        if (s < p) to = {static_cast<std::int32_t>(ki), static_cast<std::int32_t>(q - p + s)};
        else if (s == p) to = {static_cast<std::int32_t>(kj), static_cast<std::int32_t>(q - p)};
        else if (s < q) to = {static_cast<std::int32_t>(kj), static_cast<std::int32_t>(s - p)};
        else to = {static_cast<std::int32_t>(m), 0};
        link({0, static_cast<std::int32_t>(s)}, to);
    }
    std::int64_t fold = (ki + n - m) % n;
    for (std::int64_t r = 1; r < n; ++r)
        for (std::int64_t s = 0; s < d.counts[r]; ++s) {
            if (r == fold && s == q - p)
                link({static_cast<std::int32_t>(r), static_cast<std::int32_t>(s)},
                     {static_cast<std::int32_t>(ki), static_cast<std::int32_t>(q)});
            else
                link({static_cast<std::int32_t>(r), static_cast<std::int32_t>(s)},
                     {static_cast<std::int32_t>((r + m) % n), static_cast<std::int32_t>(s)});
        }

    Validation v = validate_data(d, ki, PointClass::B);
    if (!v.ok) {
        // The permutation fails to be a single cycle exactly when p and q have
        // a common factor.
        if (v.violated == "structure: not a single cycle")
            fail("NotCoprime", "parameter " + std::to_string(p) + "/" + std::to_string(q) +
                               " must be in lowest terms");
        internal_error("B-family construction illegal: " + v.violated);
    }
    return d;
}

StarData build_tt_orbit_a(const Rational& mn, std::size_t i) {
    std::int64_t m = mn.num, n = mn.den;
    if (m <= 1) fail("BadIndex", "the A family needs m > 1");
    std::vector<std::int64_t> adm = admissible_set(mn);
    std::size_t alpha = adm.size();
    if (i < 2 || i > alpha) fail("BadIndex", "need 2 <= i <= alpha");
    std::int64_t ki = adm[i - 1];

    OrbitSegment segt = orbit_segment(mn, ki, 0);
    StarData d;
    d.slope = mn;
    d.counts.assign(n, 1);
    for (std::int64_t r : segt.members) d.counts[r] = 2;
    d.classes = {PointClass::A, PointClass::C};
    d.next.assign(d.period(), 0);
    auto link = [&](const Label& from, const Label& to) { d.next[d.id(from)] = d.id(to); };
    link({0, 0}, {static_cast<std::int32_t>(ki), 1});
    link({0, 1}, {static_cast<std::int32_t>(m), 0});
    for (std::int64_t r = 1; r < n; ++r)
        for (std::int64_t s = 0; s < d.counts[r]; ++s)
            link({static_cast<std::int32_t>(r), static_cast<std::int32_t>(s)},
                 {static_cast<std::int32_t>((r + m) % n), static_cast<std::int32_t>(s)});

    Validation v = validate_data(d, ki, PointClass::A);
    if (!v.ok) internal_error("A-family construction illegal: " + v.violated);
    return d;
}

namespace {

// Enumeration of legal data: choose the e_0 group sizes per target edge, the
// class split of each group, and the interleaving slots; keep single cycles.
struct Enumerator {
    Rational mn;
    std::int64_t n, m, max_period;
    bool tt_only;
    std::vector<StarData>* sink;
    std::mutex* sink_mutex = nullptr;

    std::int64_t k = 0;
    PointClass gamma = PointClass::B;
    std::vector<std::vector<std::int64_t>> seg_members; // O[j,0] for j in [k,m]

    void emit(const StarData& d) {
        if (tt_only && !is_train_track(d)) return;
        if (sink_mutex) {
            std::lock_guard<std::mutex> lock(*sink_mutex);
            sink->push_back(d);
        } else {
            sink->push_back(d);
        }
    }

    void run_for(std::int64_t k_, PointClass gamma_) {
        k = k_;
        gamma = gamma_;
        seg_members.clear();
        for (std::int64_t j = k; j <= m; ++j)
            seg_members.push_back(orbit_segment(mn, j, 0).members);
        std::vector<std::int64_t> groups(m - k + 1, 0);
        choose_groups(groups, 0, 0);
    }

    void choose_groups(std::vector<std::int64_t>& groups, std::size_t idx, std::int64_t used) {
        if (idx == groups.size()) {
            if (groups.front() >= 1 && groups.back() >= 1) with_groups(groups);
            return;
        }
        std::int64_t weight = static_cast<std::int64_t>(seg_members[idx].size());
        std::int64_t lo = (idx == 0 || idx + 1 == groups.size()) ? 1 : 0;
        for (std::int64_t g = lo;; ++g) {
            std::int64_t cost = used + g * weight;
            // every remaining mandatory group costs at least its weight
            std::int64_t reserve = 0;
            if (idx + 1 < groups.size())
                reserve = static_cast<std::int64_t>(seg_members.back().size());
            if (cost + reserve > max_period && g > lo) break;
            if (cost + reserve > max_period) return;
            groups[idx] = g;
            choose_groups(groups, idx + 1, cost);
        }
        groups[idx] = 0;
    }

    void with_groups(const std::vector<std::int64_t>& groups) {
        std::vector<std::int64_t> counts(n, 0);
        for (std::size_t idx = 0; idx < groups.size(); ++idx)
            for (std::int64_t r : seg_members[idx]) counts[r] += groups[idx];
        std::int64_t period = 0;
        for (std::int64_t c : counts) period += c;
        if (period > max_period) return;
        for (std::int64_t c : counts)
            if (c < 1) return;

        // class split per group: A-run then (C for the last group) then B-run
        std::vector<std::int64_t> a_counts(groups.size(), 0);
        std::function<void(std::size_t)> split = [&](std::size_t idx) {
            if (idx == groups.size()) { with_classes(groups, a_counts, counts); return; }
            std::int64_t cap = groups[idx];
            if (idx + 1 == groups.size()) --cap; // C takes one slot of the last group
            std::int64_t lo = 0, hi = cap;
            if (idx == 0) { // class of (0,0) is gamma
                if (gamma == PointClass::A) lo = std::max<std::int64_t>(lo, 1);
                else hi = 0;
            }
            for (std::int64_t a = lo; a <= hi; ++a) {
                a_counts[idx] = a;
                split(idx + 1);
            }
            a_counts[idx] = 0;
        };
        split(0);
    }

    void with_classes(const std::vector<std::int64_t>& groups,
                      const std::vector<std::int64_t>& a_counts,
                      const std::vector<std::int64_t>& counts) {
        // slot subsets per target edge; slot 0 of non-final targets belongs to
        // the pass-through point, the final target (e_m) is group-only with C
        // at slot 0.
        std::vector<std::vector<std::int64_t>> slots(groups.size());
        std::function<void(std::size_t)> pick = [&](std::size_t idx) {
            if (idx == groups.size()) { assemble(groups, a_counts, counts, slots); return; }
            std::int64_t j = k + static_cast<std::int64_t>(idx);
            if (j == m) {
                slots[idx].clear();
                for (std::int64_t t = 1; t < counts[j]; ++t) slots[idx].push_back(t);
                pick(idx + 1);
                return;
            }
            std::int64_t g = groups[idx];
            std::vector<std::int64_t> chosen;
            std::function<void(std::int64_t)> comb = [&](std::int64_t from) {
                if (static_cast<std::int64_t>(chosen.size()) == g) {
                    slots[idx] = chosen;
                    pick(idx + 1);
                    return;
                }
                for (std::int64_t t = from; t < counts[j]; ++t) {
                    chosen.push_back(t);
                    comb(t + 1);
                    chosen.pop_back();
                }
            };
            comb(1);
        };
        pick(0);
    }

    void assemble(const std::vector<std::int64_t>& groups,
                  const std::vector<std::int64_t>& a_counts,
                  const std::vector<std::int64_t>& counts,
                  const std::vector<std::vector<std::int64_t>>& slots) {
        std::int64_t n0 = counts[0];
        StarData d;
        d.slope = mn;
        d.counts = counts;
        d.classes.assign(n0, PointClass::B);
        d.next.assign(0, 0);
        d.next.assign([&] { std::int64_t t = 0; for (auto c : counts) t += c; return t; }(), 0);

        // split of the m-group slots between its A-run and B-run
        std::size_t last = groups.size() - 1;
        std::int64_t am = a_counts[last];
        std::vector<std::int64_t> mslots = slots[last];

        std::vector<std::int64_t> a_slots_m;
        std::function<void(std::size_t, std::size_t)> choose_am = [&](std::size_t from, std::size_t need) {
            if (need == 0) { finish(groups, a_counts, counts, slots, a_slots_m, d); return; }
            for (std::size_t t = from; t + need <= mslots.size() + 1 && t < mslots.size(); ++t) {
                a_slots_m.push_back(mslots[t]);
                choose_am(t + 1, need - 1);
                a_slots_m.pop_back();
            }
        };
        choose_am(0, static_cast<std::size_t>(am));
    }

    void finish(const std::vector<std::int64_t>& groups,
                const std::vector<std::int64_t>& a_counts,
                const std::vector<std::int64_t>& counts,
                const std::vector<std::vector<std::int64_t>>& slots,
                const std::vector<std::int64_t>& a_slots_m, StarData d) {
        std::size_t last = groups.size() - 1;
        auto link = [&](const Label& from, const Label& to) { d.next[d.id(from)] = d.id(to); };

        std::int64_t s = 0;
        for (std::size_t idx = 0; idx < groups.size(); ++idx) {
            std::int64_t j = k + static_cast<std::int64_t>(idx);
            std::vector<std::int64_t> t_a, t_b;
            if (idx == last) {
                t_a = a_slots_m;
                for (std::int64_t t : slots[idx])
                    if (std::find(t_a.begin(), t_a.end(), t) == t_a.end()) t_b.push_back(t);
            } else {
                t_a.assign(slots[idx].begin(), slots[idx].begin() + a_counts[idx]);
                // A labels take the largest chosen slots in decreasing order,
                // B labels the rest increasing.
                std::vector<std::int64_t> sorted = slots[idx];
                std::sort(sorted.begin(), sorted.end());
                t_a.assign(sorted.end() - a_counts[idx], sorted.end());
                std::reverse(t_a.begin(), t_a.end());
                t_b.assign(sorted.begin(), sorted.end() - a_counts[idx]);
            }
            std::sort(t_b.begin(), t_b.end());
            std::sort(t_a.begin(), t_a.end(), std::greater<>());

            for (std::int64_t t : t_a) {
                d.classes[s] = PointClass::A;
                link({0, static_cast<std::int32_t>(s)}, {static_cast<std::int32_t>(j), static_cast<std::int32_t>(t)});
                ++s;
            }
            if (idx == last) {
                d.classes[s] = PointClass::C;
                link({0, static_cast<std::int32_t>(s)}, {static_cast<std::int32_t>(m), 0});
                ++s;
            }
            for (std::int64_t t : t_b) {
                d.classes[s] = PointClass::B;
                link({0, static_cast<std::int32_t>(s)}, {static_cast<std::int32_t>(j), static_cast<std::int32_t>(t)});
                ++s;
            }
        }
        if (s != counts[0]) internal_error("enumeration group bookkeeping");

        // pass-through rows
        std::int64_t nn = n;
        for (std::int64_t r = 1; r < nn; ++r) {
            std::int64_t target = (r + m) % nn;
            std::vector<char> taken(counts[target], 0);
            std::ptrdiff_t idx = target - k;
            if (target >= k && target <= m) {
                if (target == m) continue; // e_m is group-only; no r != 0 maps there
                for (std::int64_t t : slots[idx]) taken[t] = 1;
            }
            std::int64_t t = 0;
            for (std::int64_t ss = 0; ss < counts[r]; ++ss) {
                while (t < counts[target] && taken[t]) ++t;
                if (t >= counts[target]) return; // slot exhaustion: inconsistent
                link({static_cast<std::int32_t>(r), static_cast<std::int32_t>(ss)},
                     {static_cast<std::int32_t>(target), static_cast<std::int32_t>(t)});
                ++t;
            }
            // counts must tile exactly
            while (t < counts[target] && taken[t]) ++t;
            if (t != counts[target]) return;
        }

        // single-cycle check
        {
            std::vector<char> hit(d.next.size(), 0);
            std::int32_t cur = 0;
            std::int64_t steps = 0;
            while (!hit[cur]) {
                hit[cur] = 1;
                cur = d.next[cur];
                ++steps;
            }
            if (cur != 0 || steps != static_cast<std::int64_t>(d.next.size())) return;
        }
#ifndef NDEBUG
        {
            Validation v = validate_data(d, k, gamma);
            if (!v.ok) internal_error("enumerated data fails " + v.violated);
        }
#endif
        emit(d);
    }
};

} // namespace

std::vector<StarData> enumerate_orbits(const Rational& mn, std::int64_t max_period,
                                       bool tt_only, unsigned jobs) {
    if (!(Rational(0, 1) < mn && mn <= Rational(1, 2)))
        fail("OutOfRange", "slope must lie in (0, 1/2]");
    if (max_period < mn.den) fail("OutOfRange", "max period below the edge count");

    std::vector<StarData> all;
    std::mutex sink_mutex;
    std::vector<std::pair<std::int64_t, PointClass>> tasks;
    for (std::int64_t k = 0; k < mn.num; ++k) {
        tasks.emplace_back(k, PointClass::B);
        if (k > 0) tasks.emplace_back(k, PointClass::A);
    }

    auto work = [&](std::size_t begin, std::size_t step, bool locked) {
        for (std::size_t i = begin; i < tasks.size(); i += step) {
            Enumerator e;
            e.mn = mn;
            e.n = mn.den;
            e.m = mn.num;
            e.max_period = max_period;
            e.tt_only = tt_only;
            e.sink = &all;
            e.sink_mutex = locked ? &sink_mutex : nullptr;
            e.run_for(tasks[i].first, tasks[i].second);
        }
    };

    if (jobs <= 1 || tasks.size() <= 1) {
        work(0, 1, false);
    } else {
        std::vector<std::thread> pool;
        unsigned count = std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size()));
        for (unsigned t = 0; t < count; ++t)
            pool.emplace_back(work, t, count, true);
        for (auto& th : pool) th.join();
    }

    std::sort(all.begin(), all.end(), [](const StarData& a, const StarData& b) {
        if (a.period() != b.period()) return a.period() < b.period();
        return a.canonical_str() < b.canonical_str();
    });
    return all;
}

MasterPath master_path(const StarData& d) {
    require_legal(d);
    std::int64_t n = d.n(), m = d.m(), k = d.k();

    // image position (j,t) -> source s for the e_0 points
    std::map<std::pair<std::int32_t, std::int32_t>, std::int64_t> inv;
    for (std::int64_t s = 0; s < d.counts[0]; ++s) {
        Label img = d.pi({0, static_cast<std::int32_t>(s)});
        inv[{img.r, img.s}] = s;
    }

    MasterPath path;
    path.cuts.assign(d.counts[0], 0);
    auto note_cut = [&](std::int64_t s) { path.cuts[s] = path.tokens.size(); };

    auto ascend = [&](std::int64_t j, std::int64_t from) {
        for (std::int64_t t = from; t < d.counts[j]; ++t) {
            auto it = inv.find({static_cast<std::int32_t>(j), static_cast<std::int32_t>(t)});
            if (it != inv.end() && d.classes[it->second] == PointClass::B && t > from)
                note_cut(it->second);
            if (it != inv.end() && d.classes[it->second] == PointClass::B && t == from &&
                !path.tokens.empty())
                note_cut(it->second);
            path.tokens.push_back({PathToken::traverse, static_cast<std::int32_t>(j),
                                   static_cast<std::int32_t>(t), false});
        }
    };
    auto descend = [&](std::int64_t j, std::int64_t from) {
        for (std::int64_t t = from; t >= 0; --t) {
            path.tokens.push_back({PathToken::traverse, static_cast<std::int32_t>(j),
                                   static_cast<std::int32_t>(t), true});
            auto it = inv.find({static_cast<std::int32_t>(j), static_cast<std::int32_t>(t)});
            if (it != inv.end() && d.classes[it->second] == PointClass::A)
                note_cut(it->second);
        }
    };

    std::int64_t s0 = d.pi({0, 0}).s;
    if (d.gamma() == PointClass::B) {
        ascend(k, s0);
    } else {
        descend(k, s0 - 1);
        path.tokens.push_back({PathToken::fold, static_cast<std::int32_t>(k), 0, false});
        ascend(k, 0);
    }
    for (std::int64_t j = k + 1; j <= m; ++j) {
        descend(j, d.counts[j] - 1);
        if (j == m) {
            note_cut(d.c_index()); // the fold at (m,0) is the C point's image
        } else {
            path.tokens.push_back({PathToken::fold, static_cast<std::int32_t>(j), 0, false});
        }
        ascend(j, 0);
    }

    // cuts must land in label order
    for (std::size_t s = 1; s < path.cuts.size(); ++s)
        if (path.cuts[s] <= path.cuts[s - 1])
            internal_error("master path cuts out of order");
    if (path.cuts[0] != 0) internal_error("master path must start at the first cut");
    return path;
}

} // namespace startt
