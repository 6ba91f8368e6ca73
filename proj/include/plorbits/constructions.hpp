#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "plorbits/errors.hpp"
#include "plorbits/forcing.hpp"
#include "plorbits/orbits.hpp"
#include "plorbits/plmap.hpp"
#include "plorbits/rational.hpp"

namespace plorbits {

/// The tent map T(x) = 1 - |2x - 1| on [0, 1].
inline PLMap tent() {
    return PLMap(Interval{Rational(0), Rational(1)},
                 {Node{Rational(0), Rational(0)},
                  Node{Rational(1, 2), Rational(1)},
                  Node{Rational(1), Rational(0)}});
}

/// Clamp band for a truncation surgery. lo == hi is allowed and produces a
/// constant map (the degenerate band of a fixed point).
struct TruncationSpec {
    Rational lo;
    Rational hi;
    PLMap source;
};

/// x -> clamp(source(x), lo, hi), renormalized to canonical PL form with
/// exact plateau segments.
inline PLMap clamp_band(const TruncationSpec& spec) {
    const PLMap& f = spec.source;
    if (spec.lo > spec.hi) {
        throw DomainError("clamp band is empty");
    }
    if (!f.domain().contains(spec.lo) || !f.domain().contains(spec.hi)) {
        throw DomainError("clamp band leaves the source domain");
    }
    if (spec.lo == spec.hi) {
        return PLMap(f.domain(), {Node{f.domain().lo, spec.lo},
                                  Node{f.domain().hi, spec.lo}});
    }

    // Breakpoints of the clamp: source nodes plus exact crossings of the two
    // horizontal lines. Between consecutive ones the clamped map is affine.
    std::vector<Rational> xs;
    for (const Node& n : f.nodes()) xs.push_back(n.x);
    const auto& nodes = f.nodes();
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const Node& a = nodes[i];
        const Node& b = nodes[i + 1];
        if (a.y == b.y) continue;
        for (const Rational& level : {spec.lo, spec.hi}) {
            if ((a.y < level && level < b.y) || (b.y < level && level < a.y)) {
                xs.push_back(a.x + (level - a.y) * (b.x - a.x) / (b.y - a.y));
            }
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<Node> out;
    out.reserve(xs.size());
    for (Rational& x : xs) {
        Rational y = f(x);
        if (y < spec.lo) y = spec.lo;
        if (y > spec.hi) y = spec.hi;
        out.push_back(Node{std::move(x), std::move(y)});
    }
    return PLMap(f.domain(), std::move(out));
}

inline PLMap clamp_band(const PLMap& source, const Rational& lo,
                        const Rational& hi) {
    return clamp_band(TruncationSpec{lo, hi, source});
}

/// The reflection surgery: g(x) = max(f(x), z2) left of z1, the reversing
/// involution -x + z1 + z2 on [z1, z2], and min(f(x), z1) right of z2. Both
/// z1 and z2 must be exact fixed points of f. By construction g swaps the
/// two sides of [z1, z2] and g^2 is the identity on [z1, z2], so g has no
/// periodic point of any odd period >= 3.
inline PLMap reflect_middle_surgery(const PLMap& f, const Rational& z1,
                                    const Rational& z2) {
    if (z1 > z2) throw DomainError("z1 must be <= z2");
    if (!f.domain().contains(z1) || !f.domain().contains(z2)) {
        throw DomainError("z1, z2 must lie in the domain");
    }
    if (f(z1) != z1) throw NotFixed(z1);
    if (f(z2) != z2) throw NotFixed(z2);

    const auto& nodes = f.nodes();
    auto crossings = [&](const Rational& level, const Rational& from,
                         const Rational& to, std::vector<Rational>& xs) {
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
            const Node& a = nodes[i];
            const Node& b = nodes[i + 1];
            if (b.x <= from || a.x >= to || a.y == b.y) continue;
            if ((a.y < level && level < b.y) || (b.y < level && level < a.y)) {
                Rational x = a.x + (level - a.y) * (b.x - a.x) / (b.y - a.y);
                if (from < x && x < to) xs.push_back(std::move(x));
            }
        }
    };

    std::vector<Node> out;
    auto emit = [&](Rational x, Rational y) {
        out.push_back(Node{std::move(x), std::move(y)});
    };

    if (f.domain().lo < z1) {
        std::vector<Rational> xs = {f.domain().lo};
        for (const Node& n : nodes) {
            if (f.domain().lo < n.x && n.x < z1) xs.push_back(n.x);
        }
        crossings(z2, f.domain().lo, z1, xs);
        std::sort(xs.begin(), xs.end());
        for (Rational& x : xs) {
            Rational y = f(x);
            emit(std::move(x), y >= z2 ? std::move(y) : z2);
        }
    }
    emit(z1, z2);
    if (z1 < z2) emit(z2, z1);
    if (z2 < f.domain().hi) {
        std::vector<Rational> xs;
        for (const Node& n : nodes) {
            if (z2 < n.x && n.x < f.domain().hi) xs.push_back(n.x);
        }
        crossings(z1, z2, f.domain().hi, xs);
        xs.push_back(f.domain().hi);
        std::sort(xs.begin(), xs.end());
        for (Rational& x : xs) {
            Rational y = f(x);
            emit(std::move(x), y <= z1 ? std::move(y) : z1);
        }
    }
    return PLMap(f.domain(), std::move(out));
}

/// Replaces f on [t, u] by the orientation-reversing involution
/// -x + t + u; outside [t, u] the map is unchanged. Continuity at the ends
/// requires f(t) = u and f(u) = t exactly. t == u returns the map unchanged.
inline PLMap insert_flip(const PLMap& f, const Rational& t, const Rational& u) {
    if (t == u) return f;
    if (t > u) throw PreconditionViolated("flip interval needs t < u");
    if (!f.domain().contains(t) || !f.domain().contains(u)) {
        throw DomainError("flip interval leaves the domain");
    }
    if (f(t) != u) {
        throw ContinuityError(t, "map value " + to_string(f(t)) +
                                     " != " + to_string(u));
    }
    if (f(u) != t) {
        throw ContinuityError(u, "map value " + to_string(f(u)) +
                                     " != " + to_string(t));
    }
    std::vector<Node> out;
    if (f.domain().lo < t) {
        out.push_back(Node{f.domain().lo, f(f.domain().lo)});
        for (const Node& n : f.nodes()) {
            if (f.domain().lo < n.x && n.x < t) out.push_back(n);
        }
    }
    out.push_back(Node{t, u});
    out.push_back(Node{u, t});
    if (u < f.domain().hi) {
        for (const Node& n : f.nodes()) {
            if (u < n.x && n.x < f.domain().hi) out.push_back(n);
        }
        out.push_back(Node{f.domain().hi, f(f.domain().hi)});
    }
    return PLMap(f.domain(), std::move(out));
}

/// Flip-interval endpoints for the insertion surgery derived from an orbit:
/// z1 <= z2 are the smallest and largest fixed points of f in [v, b]; if a
/// least-period-2 point t lives in [v, z1] then u = f(t), otherwise
/// (t, u) = (v, z2).
struct SurgeryParams {
    Rational z1;
    Rational z2;
    Rational t;
    Rational u;
};

inline SurgeryParams surgery_params(const PLMap& map, const Orbit& P,
                                    std::size_t piece_budget = kDefaultPieceBudget) {
    OrbitContext ctx = orbit_context(map, P, piece_budget);
    LapDecomposition d1 = LapDecomposition::of(map);
    std::vector<Interval> fixed =
        fixed_root_sets(d1, Interval{ctx.v, ctx.b});
    SurgeryParams params;
    params.z1 = fixed.front().lo;
    params.z2 = fixed.back().hi;

    LapDecomposition d2 = iterate_laps(map, 2, piece_budget);
    for (const Interval& s :
         fixed_root_sets(d2, Interval{ctx.v, params.z1})) {
        if (s.degenerate() && least_period(map, s.lo, 2) == 2) {
            params.t = s.lo;
            params.u = map(s.lo);
            if (!(params.z2 < params.u && params.u < ctx.b)) {
                throw WitnessNotFound(
                    "period-2 flip endpoint leaves (z2, b)");
            }
            return params;
        }
    }
    params.t = ctx.v;
    params.u = params.z2;
    return params;
}

/// The truncated tent map: the tent map clamped to the band spanned by the
/// extremal least-period-n orbit P_n. Realizes exactly the Sharkovsky tail
/// of n as its period set. n = 1 degenerates to the constant map at 0 (for
/// the smallest-max policy), which has exactly period 1.
inline PLMap build_Tn(unsigned n,
                      OrbitSelection sel = OrbitSelection::SmallestMax,
                      std::size_t piece_budget = kDefaultPieceBudget,
                      LapStats* stats = nullptr) {
    PLMap t = tent();
    Orbit p = extremal_orbit(t, n, sel, piece_budget, stats);
    return clamp_band(t, p.min(), p.max());
}

/// Depth-d stage of the period-(3 * 2^i) nested-orbit construction: the
/// chain starts at the smallest-max period-3 orbit and each stage picks the
/// smallest-max orbit of doubled period inside the previous band. Returns
/// the clamped map together with the band [q0, q1] and the chain of orbits.
struct TinfApprox {
    PLMap map;
    Rational q0;
    Rational q1;
    std::vector<Orbit> chain;
};

inline TinfApprox build_Tinf_approx(unsigned depth,
                                    std::size_t piece_budget = kDefaultPieceBudget,
                                    LapStats* stats = nullptr) {
    PLMap t = tent();
    Orbit q = minimal_orbit(t, 3, piece_budget, stats);
    std::vector<Orbit> chain = {q};
    for (unsigned i = 1; i <= depth; ++i) {
        unsigned period = 3u << i;
        std::vector<Orbit> all = enumerate_orbits(t, period, piece_budget, stats);
        const Orbit* best = nullptr;
        for (const Orbit& o : all) {
            if (chain.back().min() <= o.min() && o.max() <= chain.back().max() &&
                (best == nullptr || o.max() < best->max())) {
                best = &o;
            }
        }
        if (best == nullptr) {
            throw NoSuchOrbit("no period-" + std::to_string(period) +
                              " orbit inside the previous band");
        }
        chain.push_back(*best);
    }
    TinfApprox out{clamp_band(t, chain.back().min(), chain.back().max()),
                   chain.back().min(), chain.back().max(), std::move(chain)};
    return out;
}

/// Composite surgery that raises the least odd period of a map from m to
/// m+2: take the least-period-m orbit R of smallest max, locate the
/// least-period-(m+2) orbit W of its witness point inside (min R, max R),
/// and clamp to the band of W. The result keeps W but has no period-m
/// orbit.
struct OddPeriodRaise {
    PLMap map;
    Orbit inner;
};

inline OddPeriodRaise raise_least_odd_period(
    const PLMap& map, unsigned m, std::size_t piece_budget = kDefaultPieceBudget,
    LapStats* stats = nullptr) {
    if (m < 3 || m % 2 == 0) {
        throw PreconditionViolated("m must be odd and >= 3");
    }
    Orbit r = minimal_orbit(map, m, piece_budget, stats);
    UnifiedWitnesses uw = unified_witnesses(map, r, 1, piece_budget, stats);
    Orbit w = orbit_of(map, uw.p_m_plus_2, m + 2);
    if (!(r.min() < w.min() && w.max() < r.max())) {
        throw WitnessNotFound("witness orbit is not strictly inside the band");
    }
    return OddPeriodRaise{clamp_band(map, w.min(), w.max()), std::move(w)};
}

}  // namespace plorbits
