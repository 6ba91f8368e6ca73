#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "plorbits/errors.hpp"
#include "plorbits/plmap.hpp"
#include "plorbits/rational.hpp"

namespace plorbits {

/// A finite periodic orbit: its points in increasing order together with the
/// successor permutation (points[i] maps to points[successor[i]]). The
/// successor is required to be a single n-cycle, so the orbit has genuine
/// least period n, not a union of shorter cycles.
class Orbit {
public:
    Orbit(std::vector<Rational> points, std::vector<std::size_t> successor)
        : points_(std::move(points)), successor_(std::move(successor)) {
        validate();
    }

    unsigned period() const { return static_cast<unsigned>(points_.size()); }
    const std::vector<Rational>& points() const { return points_; }
    const std::vector<std::size_t>& successor() const { return successor_; }
    const Rational& min() const { return points_.front(); }
    const Rational& max() const { return points_.back(); }

    bool operator==(const Orbit&) const = default;

    bool contains(const Rational& x) const {
        return std::binary_search(points_.begin(), points_.end(), x);
    }

    /// Gap between consecutive orbit points; k in [0, period()-2].
    Interval gap(std::size_t k) const {
        return Interval{points_[k], points_[k + 1]};
    }

private:
    void validate() const {
        if (points_.empty() || successor_.size() != points_.size()) {
            throw MalformedOrbit("points and successor sizes disagree");
        }
        for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
            if (!(points_[i] < points_[i + 1])) {
                throw MalformedOrbit("orbit points must be strictly increasing");
            }
        }
        // successor must be a permutation forming a single cycle
        std::size_t n = points_.size();
        std::size_t at = 0;
        for (std::size_t step = 1; step < n; ++step) {
            at = successor_.at(at);
            if (at >= n || at == 0) {
                throw MalformedOrbit("successor is not a single n-cycle");
            }
        }
        if (successor_.at(at) != 0) {
            throw MalformedOrbit("successor is not a single n-cycle");
        }
    }

    std::vector<Rational> points_;
    std::vector<std::size_t> successor_;
};

/// Builds the orbit of `seed` under `map`, which must be exactly periodic
/// with least period `period`.
inline Orbit orbit_of(const PLMap& map, const Rational& seed, unsigned period) {
    std::vector<Rational> traj;
    traj.reserve(period);
    Rational x = seed;
    for (unsigned i = 0; i < period; ++i) {
        traj.push_back(x);
        x = map(x);
    }
    if (x != seed) {
        throw MalformedOrbit("seed is not periodic with the stated period");
    }
    std::vector<Rational> points = traj;
    std::sort(points.begin(), points.end());
    if (std::adjacent_find(points.begin(), points.end()) != points.end()) {
        throw MalformedOrbit("seed has a shorter period than stated");
    }
    auto index_of = [&](const Rational& v) {
        return static_cast<std::size_t>(
            std::lower_bound(points.begin(), points.end(), v) - points.begin());
    };
    std::vector<std::size_t> successor(points.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        successor[index_of(traj[i])] = index_of(traj[(i + 1) % traj.size()]);
    }
    return Orbit(std::move(points), std::move(successor));
}

/// Builds an orbit from a bare point list; the successor permutation is
/// inferred by applying the map. MalformedOrbit if the points do not form a
/// single cycle under the map.
inline Orbit orbit_from_points(const PLMap& map, std::vector<Rational> points) {
    if (points.empty()) throw MalformedOrbit("empty point list");
    std::sort(points.begin(), points.end());
    if (std::adjacent_find(points.begin(), points.end()) != points.end()) {
        throw MalformedOrbit("duplicate orbit points");
    }
    std::vector<std::size_t> successor(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        Rational y = map(points[i]);
        auto it = std::lower_bound(points.begin(), points.end(), y);
        if (it == points.end() || *it != y) {
            throw MalformedOrbit("image of " + to_string(points[i]) +
                                 " is not an orbit point");
        }
        successor[i] = static_cast<std::size_t>(it - points.begin());
    }
    return Orbit(std::move(points), std::move(successor));
}

/// The least d >= 1 with f^d(x) = x, given that f^n(x) = x holds exactly;
/// always a divisor of n. NotPeriodic if f^n(x) != x.
inline unsigned least_period(const PLMap& map, const Rational& x, unsigned n) {
    if (n < 1) throw PreconditionViolated("period bound must be >= 1");
    std::vector<Rational> traj;
    traj.reserve(n + 1);
    traj.push_back(x);
    for (unsigned i = 1; i <= n; ++i) traj.push_back(map(traj.back()));
    if (traj[n] != x) {
        throw NotPeriodic("f^" + std::to_string(n) + "(" + to_string(x) +
                          ") != " + to_string(x));
    }
    for (unsigned d = 1; d <= n; ++d) {
        if (n % d == 0 && traj[d] == x) return d;
    }
    return n;  // unreachable: d == n always matches
}

namespace detail {

inline std::vector<unsigned> proper_divisors(unsigned n) {
    std::vector<unsigned> out;
    for (unsigned d = 1; d < n; ++d) {
        if (n % d == 0) out.push_back(d);
    }
    return out;
}

/// True if f^d is exactly the identity on all of `segment`.
inline bool identity_on(const PLMap& map, unsigned d, const Interval& segment,
                        std::size_t budget,
                        std::map<unsigned, LapDecomposition>& cache) {
    auto it = cache.find(d);
    if (it == cache.end()) {
        it = cache.emplace(d, iterate_laps(map, d, budget)).first;
    }
    for (const Interval& s : fixed_root_sets(it->second, segment)) {
        if (s.contains(segment)) return true;
    }
    return false;
}

}  // namespace detail

/// All least-period-n orbits of the map, canonicalized and ordered by their
/// smallest point. Identity segments of f^n are dropped when some proper
/// divisor d of n has f^d pointwise fixing the whole segment (no point of it
/// can then have least period n); otherwise the segment is a continuum of
/// genuine least-period-n points and IdentitySegment propagates, since the
/// result would be infinite.
inline std::vector<Orbit> enumerate_orbits(
    const PLMap& map, unsigned n,
    std::size_t piece_budget = kDefaultPieceBudget, LapStats* stats = nullptr) {
    LapDecomposition d = iterate_laps(map, n, piece_budget, stats);
    std::vector<Interval> sets = fixed_root_sets(d);

    std::vector<Rational> roots;
    std::map<unsigned, LapDecomposition> divisor_laps;
    for (Interval& s : sets) {
        if (s.degenerate()) {
            roots.push_back(std::move(s.lo));
            continue;
        }
        bool excluded = false;
        for (unsigned div : detail::proper_divisors(n)) {
            if (detail::identity_on(map, div, s, piece_budget, divisor_laps)) {
                excluded = true;
                break;
            }
        }
        if (!excluded) throw IdentitySegment({s});
    }

    std::vector<Rational> keep;
    for (Rational& r : roots) {
        if (least_period(map, r, n) == n) keep.push_back(std::move(r));
    }

    std::vector<bool> used(keep.size(), false);
    auto index_of = [&](const Rational& v) {
        auto it = std::lower_bound(keep.begin(), keep.end(), v);
        assert(it != keep.end() && *it == v);
        return static_cast<std::size_t>(it - keep.begin());
    };
    std::vector<Orbit> orbits;
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (used[i]) continue;
        Rational x = keep[i];
        for (unsigned step = 0; step < n; ++step) {
            used[index_of(x)] = true;
            x = map(x);
        }
        orbits.push_back(orbit_of(map, keep[i], n));
    }
    return orbits;
}

enum class OrbitSelection { SmallestMax, LargestMin };

/// Among all least-period-n orbits, the extremal one under the given policy.
/// Distinct orbits of one period cannot share their maximum (a point
/// determines its orbit), so ties are impossible.
inline Orbit extremal_orbit(const PLMap& map, unsigned n, OrbitSelection sel,
                            std::size_t piece_budget = kDefaultPieceBudget,
                            LapStats* stats = nullptr) {
    std::vector<Orbit> all = enumerate_orbits(map, n, piece_budget, stats);
    if (all.empty()) {
        throw NoSuchOrbit("map has no orbit of least period " +
                          std::to_string(n));
    }
    const Orbit* best = &all.front();
    for (const Orbit& o : all) {
        if (sel == OrbitSelection::SmallestMax ? o.max() < best->max()
                                               : o.min() > best->min()) {
            best = &o;
        }
    }
    return *best;
}

/// The least-period-n orbit whose maximum point is smallest.
inline Orbit minimal_orbit(const PLMap& map, unsigned n,
                           std::size_t piece_budget = kDefaultPieceBudget,
                           LapStats* stats = nullptr) {
    return extremal_orbit(map, n, OrbitSelection::SmallestMax, piece_budget,
                          stats);
}

/// True iff the map has at least one point of least period n. Unlike
/// enumerate_orbits this stays finite on maps whose iterates have identity
/// segments: a segment contributes iff the fixed sets of all proper-divisor
/// iterates fail to cover it (any uncovered point has least period exactly n).
inline bool has_least_period_point(
    const PLMap& map, unsigned n,
    std::size_t piece_budget = kDefaultPieceBudget, LapStats* stats = nullptr) {
    LapDecomposition d = iterate_laps(map, n, piece_budget, stats);
    std::vector<Interval> sets = fixed_root_sets(d);
    std::map<unsigned, LapDecomposition> divisor_laps;
    for (const Interval& s : sets) {
        if (s.degenerate()) {
            if (least_period(map, s.lo, n) == n) return true;
            continue;
        }
        std::vector<Interval> cover;
        for (unsigned div : detail::proper_divisors(n)) {
            auto it = divisor_laps.find(div);
            if (it == divisor_laps.end()) {
                it = divisor_laps.emplace(div, iterate_laps(map, div, piece_budget))
                         .first;
            }
            for (Interval& c : fixed_root_sets(it->second, s)) {
                cover.push_back(std::move(c));
            }
        }
        std::sort(cover.begin(), cover.end(),
                  [](const Interval& a, const Interval& b) {
                      return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
                  });
        std::vector<Interval> merged;
        for (Interval& c : cover) detail::coalesce_append(merged, std::move(c));
        bool covered = false;
        for (const Interval& c : merged) {
            if (c.contains(s)) {
                covered = true;
                break;
            }
        }
        if (!covered) return true;
    }
    return false;
}

}  // namespace plorbits
