#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "plorbits/errors.hpp"
#include "plorbits/orbits.hpp"
#include "plorbits/plmap.hpp"
#include "plorbits/rational.hpp"
#include "plorbits/sharkovsky.hpp"

namespace plorbits {

/// The standard points attached to an orbit P of period >= 3:
///   b  - the orbit point with f(b) = min P,
///   v  - the largest point of [min P, b] with f(v) = b,
///   z  - the smallest fixed point of f in [v, b],
///   z0 - the smallest fixed point of f^2 in [v, b],
///   y  - the largest fixed point of f^2 in [min P, v],
///   d  - the largest solution of f^2(x) = z0 in [min P, y].
/// All are exact extremal roots over lap decompositions, never numeric
/// searches; the chain min P = f^2(v) < v < z0 <= z < b is verified exactly,
/// as is f(x) > x on [v, z0).
struct OrbitContext {
    Rational min_p;
    Rational max_p;
    Rational b;
    Rational v;
    Rational z;
    Rational z0;
    Rational y;
    Rational d;
};

namespace detail {

inline void require_orbit_of(const PLMap& map, const Orbit& P) {
    for (std::size_t i = 0; i < P.points().size(); ++i) {
        if (map(P.points()[i]) != P.points()[P.successor()[i]]) {
            throw MalformedOrbit("point " + to_string(P.points()[i]) +
                                 " does not map to its stated successor");
        }
    }
}

inline Rational min_root(const std::vector<Interval>& sets,
                         const std::string& what) {
    if (sets.empty()) throw WitnessNotFound("no root exists for " + what);
    return sets.front().lo;
}

inline Rational max_root(const std::vector<Interval>& sets,
                         const std::string& what) {
    if (sets.empty()) throw WitnessNotFound("no root exists for " + what);
    return sets.back().hi;
}

}  // namespace detail

inline OrbitContext orbit_context(const PLMap& map, const Orbit& P,
                                  std::size_t piece_budget = kDefaultPieceBudget) {
    detail::require_orbit_of(map, P);
    if (P.period() < 3) {
        throw MalformedOrbit("orbit context needs least period >= 3");
    }

    OrbitContext ctx;
    ctx.min_p = P.min();
    ctx.max_p = P.max();

    // b is the unique orbit point sent to min P.
    std::size_t min_index = 0;
    for (std::size_t i = 0; i < P.points().size(); ++i) {
        if (P.successor()[i] == min_index) ctx.b = P.points()[i];
    }

    LapDecomposition d1 = LapDecomposition::of(map);
    LapDecomposition d2 = iterate_laps(map, 2, piece_budget);

    ctx.v = detail::max_root(
        value_root_sets(d1, ctx.b, Interval{ctx.min_p, ctx.b}),
        "v (largest preimage of b)");
    ctx.z = detail::min_root(fixed_root_sets(d1, Interval{ctx.v, ctx.b}),
                             "z (fixed point in [v, b])");
    ctx.z0 = detail::min_root(fixed_root_sets(d2, Interval{ctx.v, ctx.b}),
                              "z0 (fixed point of f^2 in [v, b])");
    ctx.y = detail::max_root(fixed_root_sets(d2, Interval{ctx.min_p, ctx.v}),
                             "y (fixed point of f^2 in [min P, v])");
    ctx.d = detail::max_root(
        value_root_sets(d2, ctx.z0, Interval{ctx.min_p, ctx.y}),
        "d (solution of f^2(x) = z0 in [min P, y])");

    // Exact invariant checks.
    if (map(map(ctx.v)) != ctx.min_p) {
        throw MalformedOrbit("f^2(v) != min P");
    }
    if (!(ctx.min_p < ctx.v && ctx.v < ctx.z0 && ctx.z0 <= ctx.z &&
          ctx.z < ctx.b)) {
        throw MalformedOrbit("context chain min P < v < z0 <= z < b fails");
    }
    // f(x) > x on [v, z0): f has no fixed point there (z is minimal in
    // [v, b]) and f(v) = b > v, so exact positivity at v settles the sign.
    if (!fixed_root_sets(d1, Interval{ctx.v, ctx.z0}).empty() &&
        ctx.z0 != ctx.z) {
        throw MalformedOrbit("unexpected fixed point of f in [v, z0)");
    }
    if (!(map(ctx.v) > ctx.v)) {
        throw MalformedOrbit("f(v) <= v");
    }
    return ctx;
}

/// Directed graph whose vertices are the gaps between consecutive orbit
/// points and whose edges are coverings induced by the orbit pattern
/// (connect-the-dots): edge (i, j) iff the span of the successor images of
/// gap i's endpoints contains gap j.
struct CoverGraph {
    std::vector<Interval> intervals;
    std::set<std::pair<std::size_t, std::size_t>> edges;

    bool has_edge(std::size_t i, std::size_t j) const {
        return edges.count({i, j}) != 0;
    }

    std::vector<std::vector<std::size_t>> adjacency() const {
        std::vector<std::vector<std::size_t>> adj(intervals.size());
        for (const auto& [i, j] : edges) adj[i].push_back(j);
        return adj;
    }
};

inline CoverGraph cover_graph(const Orbit& P) {
    if (P.period() < 2) {
        throw MalformedOrbit("cover graph needs least period >= 2");
    }
    CoverGraph g;
    const auto& pts = P.points();
    const auto& succ = P.successor();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        g.intervals.push_back(Interval{pts[i], pts[i + 1]});
    }
    for (std::size_t i = 0; i < g.intervals.size(); ++i) {
        const Rational& a = pts[succ[i]];
        const Rational& b = pts[succ[i + 1]];
        Interval span = a <= b ? Interval{a, b} : Interval{b, a};
        for (std::size_t j = 0; j < g.intervals.size(); ++j) {
            if (span.contains(g.intervals[j])) g.edges.insert({i, j});
        }
    }
    return g;
}

/// All x with f^L(x) = x whose iterates follow the given interval itinerary
/// (f^k(x) in itinerary[k] for every k, cyclically), in increasing order.
/// Verifies that the actual map realizes every covering the itinerary needs
/// and that the pullback is nonempty; CoverageFailure otherwise. Points from
/// identity laps of f^L contribute the leftmost point of their overlap.
inline std::vector<Rational> realize_itinerary(
    const PLMap& map, const std::vector<Interval>& itinerary,
    std::size_t piece_budget = kDefaultPieceBudget, LapStats* stats = nullptr) {
    if (itinerary.empty()) throw NotACycle("empty itinerary");
    const std::size_t L = itinerary.size();
    for (std::size_t k = 0; k < L; ++k) {
        const Interval& from = itinerary[k];
        const Interval& to = itinerary[(k + 1) % L];
        if (!image_of(map, from).contains(to)) {
            throw CoverageFailure("map image of " + to_string(from) +
                                  " does not cover " + to_string(to));
        }
    }

    // Backward pullback: B_k = {x in itinerary[k] : f(x) in B_{k+1}}.
    std::vector<Interval> pull = {itinerary[0]};
    for (std::size_t k = L; k-- > 0;) {
        pull = preimage_in(map, pull, itinerary[k]);
        if (pull.empty()) {
            throw CoverageFailure("itinerary pullback is empty at step " +
                                  std::to_string(k));
        }
    }

    LapDecomposition dl =
        iterate_laps(map, static_cast<unsigned>(L), piece_budget, stats);
    std::vector<Rational> out;
    for (const Interval& root : fixed_root_sets(dl)) {
        for (const Interval& b : pull) {
            Rational lo = std::max(root.lo, b.lo);
            Rational hi = std::min(root.hi, b.hi);
            if (lo <= hi) {
                out.push_back(lo);
                break;
            }
        }
    }
    if (out.empty()) {
        throw CoverageFailure("no fixed point of the iterate realizes the itinerary");
    }
    return out;
}

/// Realizes a closed walk of the covering graph of P as an exact periodic
/// point: the returned x satisfies f^len(x) = x and visits the walk's
/// intervals in order. The walk is validated against the pattern graph
/// (NotACycle) and every covering is re-verified against the actual map
/// (CoverageFailure). Returns the point from the leftmost pullback interval.
inline Rational realize_cycle(const PLMap& map, const Orbit& P,
                              const std::vector<std::size_t>& cycle,
                              std::size_t piece_budget = kDefaultPieceBudget,
                              LapStats* stats = nullptr) {
    detail::require_orbit_of(map, P);
    CoverGraph g = cover_graph(P);
    if (cycle.empty()) throw NotACycle("empty walk");
    for (std::size_t k = 0; k < cycle.size(); ++k) {
        if (cycle[k] >= g.intervals.size()) {
            throw NotACycle("interval index " + std::to_string(cycle[k]) +
                            " out of range");
        }
        std::size_t next = cycle[(k + 1) % cycle.size()];
        if (!g.has_edge(cycle[k], next)) {
            throw NotACycle("no covering edge " + std::to_string(cycle[k]) +
                            " -> " + std::to_string(next));
        }
    }
    std::vector<Interval> itinerary;
    itinerary.reserve(cycle.size());
    for (std::size_t idx : cycle) itinerary.push_back(g.intervals[idx]);
    return realize_itinerary(map, itinerary, piece_budget, stats).front();
}

/// A point w whose f-orbit has least period exactly 2n+2, realized from the
/// itinerary I1 (I0)^n under f^2 with I0 = [min P, v] and I1 = [v, z0]; w
/// additionally satisfies f^{2i}(w) < w strictly for 1 <= i <= n. P must
/// have odd least period >= 3.
///
/// Degenerate case n = 0: when every fixed point of f^2 in I1 is already a
/// fixed point of f (the itinerary device collapses), the period-2 witness
/// y = max { x in [min P, v] : f^2(x) = x } is returned instead.
inline Rational even_period_witness(const PLMap& map, const Orbit& P,
                                    unsigned n,
                                    std::size_t piece_budget = kDefaultPieceBudget,
                                    LapStats* stats = nullptr) {
    if (P.period() < 3 || P.period() % 2 == 0) {
        throw PreconditionViolated(
            "even-period witness needs an orbit of odd least period >= 3");
    }
    OrbitContext ctx = orbit_context(map, P, piece_budget);
    PLMap square = iterate_map(map, 2, piece_budget, stats);
    Interval i0{ctx.min_p, ctx.v};
    Interval i1{ctx.v, ctx.z0};

    std::vector<Interval> itinerary = {i1};
    for (unsigned k = 0; k < n; ++k) itinerary.push_back(i0);

    const unsigned target = 2 * n + 2;
    for (const Rational& w :
         realize_itinerary(square, itinerary, piece_budget, stats)) {
        bool strict = true;
        Rational x = w;
        for (unsigned i = 1; i <= n; ++i) {
            x = square(x);
            if (!(x < w)) {
                strict = false;
                break;
            }
        }
        if (strict && least_period(map, w, target) == target) return w;
    }
    if (n == 0 && least_period(map, ctx.y, 2) == 2) return ctx.y;
    throw WitnessNotFound("no point of least period " + std::to_string(target) +
                          " realizes the itinerary");
}

/// Witnesses of the unified argument: y is a least-period-2 point,
/// p_m_plus_2 has least period m+2, and c[n] has least period 2n for
/// 1 <= n <= N, with the exact strict chain d < c[N] < ... < c[1] <= y.
struct UnifiedWitnesses {
    Rational y;
    Rational p_m_plus_2;
    std::map<unsigned, Rational> c;
};

inline UnifiedWitnesses unified_witnesses(
    const PLMap& map, const Orbit& P, unsigned N,
    std::size_t piece_budget = kDefaultPieceBudget, LapStats* stats = nullptr) {
    const unsigned m = P.period();
    if (m < 3 || m % 2 == 0) {
        throw PreconditionViolated(
            "unified witnesses need an orbit of odd least period >= 3");
    }
    if (N < 1) throw PreconditionViolated("N must be >= 1");
    OrbitContext ctx = orbit_context(map, P, piece_budget);

    UnifiedWitnesses w;
    w.y = ctx.y;
    if (least_period(map, w.y, 2) != 2) {
        throw WitnessNotFound("y is not a least-period-2 point");
    }

    LapDecomposition dm2 = iterate_laps(map, m + 2, piece_budget, stats);
    w.p_m_plus_2 = detail::min_root(
        fixed_root_sets(dm2, Interval{ctx.y, ctx.v}),
        "p_{m+2} (root of f^{m+2}(x) = x in [y, v])");
    if (least_period(map, w.p_m_plus_2, m + 2) != m + 2) {
        throw WitnessNotFound("p_{m+2} does not have least period m+2");
    }

    for (unsigned k = 1; k <= N; ++k) {
        LapDecomposition d2k = iterate_laps(map, 2 * k, piece_budget, stats);
        Rational c = detail::min_root(
            fixed_root_sets(d2k, Interval{ctx.d, ctx.y}),
            "c_{2n} (root of f^{2n}(x) = x in [d, y])");
        if (least_period(map, c, 2 * k) != 2 * k) {
            throw WitnessNotFound("c_" + std::to_string(2 * k) +
                                  " does not have least period " +
                                  std::to_string(2 * k));
        }
        w.c.emplace(k, std::move(c));
    }

    // Exact chain d < c_{2N} < ... < c_4 < c_2 <= y.
    Rational prev = ctx.d;
    for (unsigned k = N; k >= 1; --k) {
        if (!(prev < w.c.at(k))) {
            throw WitnessNotFound("witness chain is not strictly increasing");
        }
        prev = w.c.at(k);
    }
    if (!(w.c.at(1) <= w.y)) {
        throw WitnessNotFound("c_2 <= y fails");
    }
    return w;
}

enum class Lemma1Orientation { Direct, Mirrored };

/// Witnesses of periodic points of all periods from the single hypothesis
/// f(v) < v < z <= f^k(v) (or its mirror image): p[n] has least period
/// exactly n and lies between d and z.
struct Lemma1Witness {
    Rational v;
    Rational z;
    unsigned k = 0;
    Lemma1Orientation orientation = Lemma1Orientation::Direct;
    Rational d;
    std::map<unsigned, Rational> p;
};

namespace detail {

/// Direct-orientation solver; preconditions already verified exactly.
inline Lemma1Witness lemma1_direct(const PLMap& map, const Rational& v,
                                   const Rational& z, unsigned k, unsigned N,
                                   std::size_t piece_budget, LapStats* stats) {
    LapDecomposition d1 = LapDecomposition::of(map);
    // Normalize z to the smallest fixed point in [v, z]; the hypothesis
    // z <= f^k(v) survives since the normalized point is <= z.
    Rational zn = min_root(fixed_root_sets(d1, Interval{v, z}),
                           "fixed point in [v, z]");

    Lemma1Witness w;
    w.v = v;
    w.z = zn;
    w.k = k;
    w.orientation = Lemma1Orientation::Direct;
    w.d = max_root(
        value_root_sets(d1, zn, Interval{map.domain().lo, v}),
        "d (largest solution of f(x) = z below v)");

    // min { f(x) : d <= x <= z } <= d must hold; otherwise the orbit of v
    // could never reach z and the hypothesis would be contradictory.
    if (!(image_of(map, Interval{w.d, zn}).lo <= w.d)) {
        throw WitnessNotFound("f([d, z]) stays above d");
    }

    for (unsigned n = 1; n <= N; ++n) {
        LapDecomposition dn = iterate_laps(map, n, piece_budget, stats);
        Rational p = min_root(fixed_root_sets(dn, Interval{w.d, zn}),
                              "p_n (root of f^n(x) = x in [d, z])");
        if (least_period(map, p, n) != n) {
            throw WitnessNotFound("p_" + std::to_string(n) +
                                  " does not have least period " +
                                  std::to_string(n));
        }
        w.p.emplace(n, std::move(p));
    }
    return w;
}

inline PLMap reflect(const PLMap& map) {
    const Rational c = map.domain().lo + map.domain().hi;
    std::vector<Node> nodes;
    nodes.reserve(map.nodes().size());
    for (auto it = map.nodes().rbegin(); it != map.nodes().rend(); ++it) {
        nodes.push_back(Node{c - it->x, c - it->y});
    }
    return PLMap(map.domain(), std::move(nodes));
}

}  // namespace detail

inline Lemma1Witness lemma1_witnesses(
    const PLMap& map, const Rational& v, const Rational& z, unsigned k,
    unsigned N, std::size_t piece_budget = kDefaultPieceBudget,
    LapStats* stats = nullptr) {
    if (k < 2) throw PreconditionViolated("k must be >= 2");
    if (N < 1) throw PreconditionViolated("N must be >= 1");
    if (!map.domain().contains(v) || !map.domain().contains(z)) {
        throw DomainError("v and z must lie in the map domain");
    }
    if (map(z) != z) {
        throw PreconditionViolated("z = " + to_string(z) +
                                   " is not a fixed point");
    }
    Rational fv = map(v);
    Rational fkv = v;
    for (unsigned i = 0; i < k; ++i) fkv = map(fkv);

    const bool direct = fv < v && v < z && z <= fkv;
    const bool mirrored = fkv <= z && z < v && v < fv;
    if (!direct && !mirrored) {
        throw PreconditionViolated(
            "neither f(v) < v < z <= f^k(v) nor f^k(v) <= z < v < f(v) holds "
            "(f(v) = " + to_string(fv) + ", f^k(v) = " + to_string(fkv) + ")");
    }

    if (direct) {
        return detail::lemma1_direct(map, v, z, k, N, piece_budget, stats);
    }

    // Mirrored: conjugate by x -> lo + hi - x, solve the direct case, map
    // everything back.
    const Rational c = map.domain().lo + map.domain().hi;
    Lemma1Witness inner = detail::lemma1_direct(detail::reflect(map), c - v,
                                                c - z, k, N, piece_budget,
                                                stats);
    Lemma1Witness w;
    w.v = v;
    w.z = c - inner.z;
    w.k = k;
    w.orientation = Lemma1Orientation::Mirrored;
    w.d = c - inner.d;
    for (const auto& [n, p] : inner.p) w.p.emplace(n, c - p);
    return w;
}

/// Realized period set of the map up to the bound, together with the tail
/// verdict. Periods whose enumeration hits a continuum of periodic points
/// (identity segments) fall back to the exact finite presence check.
struct TailReport {
    std::set<std::uint64_t> periods;
    bool is_tail = false;
};

inline TailReport verify_tail_property(
    const PLMap& map, unsigned bound,
    std::size_t piece_budget = kDefaultPieceBudget, LapStats* stats = nullptr) {
    TailReport report;
    for (unsigned n = 1; n <= bound; ++n) {
        bool present = false;
        try {
            present = !enumerate_orbits(map, n, piece_budget, stats).empty();
        } catch (const IdentitySegment&) {
            present = has_least_period_point(map, n, piece_budget, stats);
        }
        if (present) report.periods.insert(n);
    }
    report.is_tail = is_tail(report.periods, bound);
    return report;
}

}  // namespace plorbits
