#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <utility>
#include <vector>

#include "plorbits/errors.hpp"
#include "plorbits/rational.hpp"

namespace plorbits {

/// Default cap on the number of affine laps an exact iterate may use. Lap
/// growth is exponential in the iterate order for expansive maps; exceeding
/// the cap raises BudgetExceeded.
inline constexpr std::size_t kDefaultPieceBudget = 2'000'000;

/// Peak lap count observed while building iterates; threaded through the
/// heavy operations so callers can report budget usage.
struct LapStats {
    std::size_t peak_laps = 0;

    void note(std::size_t laps) { peak_laps = std::max(peak_laps, laps); }
};

struct Node {
    Rational x;
    Rational y;

    bool operator==(const Node&) const = default;
};

/// Continuous piecewise-linear self-map of a compact interval, represented
/// by its nodes (breakpoints with values). Canonical form: node x strictly
/// increasing from domain.lo to domain.hi, no two consecutive segments
/// collinear, every value inside the domain. Equality of canonical node
/// lists decides equality of maps.
class PLMap {
public:
    PLMap(Interval domain, std::vector<Node> nodes)
        : domain_(std::move(domain)), nodes_(std::move(nodes)) {
        validate();
        merge_collinear();
    }

    const Interval& domain() const { return domain_; }
    const std::vector<Node>& nodes() const { return nodes_; }

    bool operator==(const PLMap&) const = default;

    /// Exact value of the PL interpolation at x.
    Rational operator()(const Rational& x) const {
        if (!domain_.contains(x)) {
            throw DomainError("evaluation point " + to_string(x) +
                              " outside domain " + to_string(domain_));
        }
        // Last node with node.x <= x; interpolate on [k, k+1].
        auto it = std::upper_bound(
            nodes_.begin(), nodes_.end(), x,
            [](const Rational& v, const Node& n) { return v < n.x; });
        std::size_t k = static_cast<std::size_t>(it - nodes_.begin()) - 1;
        if (k + 1 == nodes_.size()) return nodes_.back().y;
        const Node& a = nodes_[k];
        const Node& b = nodes_[k + 1];
        return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
    }

private:
    void validate() const {
        if (domain_.lo >= domain_.hi) {
            throw DomainError("map domain must be a nondegenerate interval");
        }
        if (nodes_.size() < 2) {
            throw DomainError("a PL map needs at least two nodes");
        }
        if (nodes_.front().x != domain_.lo || nodes_.back().x != domain_.hi) {
            throw DomainError("nodes must span the domain exactly");
        }
        for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
            if (!(nodes_[i].x < nodes_[i + 1].x)) {
                throw DomainError("node abscissae must be strictly increasing");
            }
        }
        for (const Node& n : nodes_) {
            if (!domain_.contains(n.y)) {
                throw DomainError("node value " + to_string(n.y) +
                                  " leaves the domain (not a self-map)");
            }
        }
    }

    void merge_collinear() {
        std::vector<Node> merged;
        merged.reserve(nodes_.size());
        for (const Node& n : nodes_) {
            while (merged.size() >= 2) {
                const Node& a = merged[merged.size() - 2];
                const Node& b = merged.back();
                // b lies on segment a--n iff the slopes agree exactly.
                if ((b.y - a.y) * (n.x - b.x) == (n.y - b.y) * (b.x - a.x)) {
                    merged.pop_back();
                } else {
                    break;
                }
            }
            merged.push_back(n);
        }
        nodes_ = std::move(merged);
    }

    Interval domain_;
    std::vector<Node> nodes_;
};

/// Exact value of the PL interpolation at x.
inline Rational eval(const PLMap& map, const Rational& x) { return map(x); }

struct Affine {
    Rational slope;
    Rational intercept;

    bool operator==(const Affine&) const = default;

    Rational operator()(const Rational& x) const {
        return slope * x + intercept;
    }
};

/// Exact lap decomposition of an iterate f^n: a partition of the domain into
/// maximal subintervals on which the iterate is affine. breakpoints() has one
/// more entry than branches(); branch k lives on
/// [breakpoints()[k], breakpoints()[k+1]]. Adjacent branches with identical
/// affine data are merged on construction.
class LapDecomposition {
public:
    LapDecomposition(std::vector<Rational> breakpoints,
                     std::vector<Affine> branches)
        : breaks_(std::move(breakpoints)), branches_(std::move(branches)) {
        assert(breaks_.size() == branches_.size() + 1);
        assert(!branches_.empty());
    }

    static LapDecomposition of(const PLMap& map) {
        Builder b;
        const auto& nodes = map.nodes();
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
            Rational slope =
                (nodes[i + 1].y - nodes[i].y) / (nodes[i + 1].x - nodes[i].x);
            b.append(nodes[i].x, nodes[i + 1].x,
                     Affine{slope, nodes[i].y - slope * nodes[i].x});
        }
        return b.take();
    }

    std::size_t laps() const { return branches_.size(); }
    const std::vector<Rational>& breakpoints() const { return breaks_; }
    const std::vector<Affine>& branches() const { return branches_; }
    const Affine& branch(std::size_t k) const { return branches_[k]; }
    Interval domain() const { return Interval{breaks_.front(), breaks_.back()}; }

    /// Evaluates the decomposed iterate at x.
    Rational operator()(const Rational& x) const {
        if (!domain().contains(x)) {
            throw DomainError("evaluation point " + to_string(x) +
                              " outside domain " + to_string(domain()));
        }
        auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
        std::size_t k = static_cast<std::size_t>(it - breaks_.begin());
        k = (k == 0) ? 0 : k - 1;
        if (k >= branches_.size()) k = branches_.size() - 1;
        return branches_[k](x);
    }

    /// Incremental builder that merges equal adjacent branches and enforces
    /// the lap budget while pieces are appended.
    class Builder {
    public:
        Builder() = default;
        explicit Builder(std::size_t budget, unsigned iterate)
            : budget_(budget), iterate_(iterate) {}

        void append(const Rational& lo, const Rational& hi, Affine a) {
            assert(lo < hi);
            if (breaks_.empty()) {
                breaks_.push_back(lo);
            } else {
                assert(breaks_.back() == lo);
            }
            if (!branches_.empty() && branches_.back() == a) {
                breaks_.back() = hi;  // extend the previous lap
                return;
            }
            if (branches_.size() == budget_) {
                throw BudgetExceeded(budget_, iterate_);
            }
            breaks_.push_back(hi);
            branches_.push_back(std::move(a));
        }

        LapDecomposition take() {
            return LapDecomposition(std::move(breaks_), std::move(branches_));
        }

    private:
        std::size_t budget_ = static_cast<std::size_t>(-1);
        unsigned iterate_ = 0;
        std::vector<Rational> breaks_;
        std::vector<Affine> branches_;
    };

private:
    std::vector<Rational> breaks_;
    std::vector<Affine> branches_;
};

namespace detail {

/// Index of the outer-map segment that contains [lo, hi], assuming no outer
/// breakpoint lies strictly inside.
inline std::size_t segment_containing(const std::vector<Rational>& breaks,
                                      const Rational& lo) {
    auto it = std::upper_bound(breaks.begin(), breaks.end(), lo);
    std::size_t k = static_cast<std::size_t>(it - breaks.begin());
    k = (k == 0) ? 0 : k - 1;
    if (k + 2 > breaks.size()) k = breaks.size() - 2;
    return k;
}

/// Laps of outer(inner(x)), built by pulling the outer breakpoints back
/// through each monotone branch of inner.
inline LapDecomposition compose(const LapDecomposition& inner,
                                const LapDecomposition& outer,
                                std::size_t budget, unsigned iterate) {
    const auto& obreaks = outer.breakpoints();
    LapDecomposition::Builder out(budget, iterate);

    const auto& ibreaks = inner.breakpoints();
    for (std::size_t i = 0; i < inner.laps(); ++i) {
        const Rational& u0 = ibreaks[i];
        const Rational& u1 = ibreaks[i + 1];
        const Affine& f = inner.branch(i);

        if (f.slope == 0) {
            out.append(u0, u1, Affine{Rational(0), outer(f.intercept)});
            continue;
        }

        Rational y0 = f(u0);
        Rational y1 = f(u1);
        const bool ascending = f.slope > 0;
        const Rational& ylo = ascending ? y0 : y1;
        const Rational& yhi = ascending ? y1 : y0;

        // Outer breakpoints strictly inside the image (ylo, yhi).
        auto first =
            std::upper_bound(obreaks.begin(), obreaks.end(), ylo);
        auto last = std::lower_bound(obreaks.begin(), obreaks.end(), yhi);
        // Segment indices covered by the image, bottom to top.
        std::size_t seg_bottom = segment_containing(obreaks, ylo);

        std::vector<Rational> cuts;  // pullbacks of the interior breakpoints
        cuts.reserve(static_cast<std::size_t>(last - first));
        for (auto it = first; it != last; ++it) {
            cuts.push_back((*it - f.intercept) / f.slope);
        }
        if (!ascending) std::reverse(cuts.begin(), cuts.end());

        Rational left = u0;
        std::size_t seg = ascending
                              ? seg_bottom
                              : seg_bottom + cuts.size();  // topmost segment
        for (const Rational& cut : cuts) {
            const Affine& g = outer.branch(seg);
            out.append(left, cut,
                       Affine{g.slope * f.slope,
                              g.slope * f.intercept + g.intercept});
            left = cut;
            seg = ascending ? seg + 1 : seg - 1;
        }
        const Affine& g = outer.branch(seg);
        out.append(left, u1,
                   Affine{g.slope * f.slope,
                          g.slope * f.intercept + g.intercept});
    }
    return out.take();
}

}  // namespace detail

/// Exact lap decomposition of f^n, built by iterated exact pullback of
/// breakpoints through monotone branches. Throws BudgetExceeded if any
/// intermediate or final lap count would exceed piece_budget.
inline LapDecomposition iterate_laps(const PLMap& map, unsigned n,
                                     std::size_t piece_budget = kDefaultPieceBudget,
                                     LapStats* stats = nullptr) {
    if (n < 1) throw PreconditionViolated("iterate order must be >= 1");
    LapDecomposition base = LapDecomposition::of(map);
    if (base.laps() > piece_budget) throw BudgetExceeded(piece_budget, 1);
    LapDecomposition current = base;
    if (stats) stats->note(current.laps());
    for (unsigned k = 2; k <= n; ++k) {
        current = detail::compose(current, base, piece_budget, k);
        if (stats) stats->note(current.laps());
    }
    return current;
}

namespace detail {

/// Appends [lo, hi] to a sorted list of disjoint closed intervals, merging
/// touching or overlapping entries.
inline void coalesce_append(std::vector<Interval>& sets, Interval next) {
    if (!sets.empty() && next.lo <= sets.back().hi) {
        if (next.hi > sets.back().hi) sets.back().hi = std::move(next.hi);
        return;
    }
    sets.push_back(std::move(next));
}

}  // namespace detail

/// Exact solution set of d(x) = target within `window`, as a sorted list of
/// disjoint closed intervals (plateau branches at the target height
/// contribute whole subintervals; transversal branches contribute points).
inline std::vector<Interval> value_root_sets(const LapDecomposition& d,
                                             const Rational& target,
                                             const Interval& window) {
    std::vector<Interval> out;
    const auto& breaks = d.breakpoints();
    for (std::size_t k = 0; k < d.laps(); ++k) {
        Rational lo = std::max(breaks[k], window.lo);
        Rational hi = std::min(breaks[k + 1], window.hi);
        if (lo > hi) continue;
        const Affine& a = d.branch(k);
        if (a.slope == 0) {
            if (a.intercept == target) {
                detail::coalesce_append(out, Interval{lo, hi});
            }
        } else {
            Rational x = (target - a.intercept) / a.slope;
            if (lo <= x && x <= hi) {
                detail::coalesce_append(out, Interval{x, x});
            }
        }
    }
    return out;
}

/// Exact solution set of d(x) = x within `window`; identity branches
/// contribute whole subintervals.
inline std::vector<Interval> fixed_root_sets(const LapDecomposition& d,
                                             const Interval& window) {
    std::vector<Interval> out;
    const auto& breaks = d.breakpoints();
    for (std::size_t k = 0; k < d.laps(); ++k) {
        Rational lo = std::max(breaks[k], window.lo);
        Rational hi = std::min(breaks[k + 1], window.hi);
        if (lo > hi) continue;
        const Affine& a = d.branch(k);
        if (a.slope == 1) {
            if (a.intercept == 0) {
                detail::coalesce_append(out, Interval{lo, hi});
            }
        } else {
            Rational x = a.intercept / (Rational(1) - a.slope);
            if (lo <= x && x <= hi) {
                detail::coalesce_append(out, Interval{x, x});
            }
        }
    }
    return out;
}

inline std::vector<Interval> fixed_root_sets(const LapDecomposition& d) {
    return fixed_root_sets(d, d.domain());
}

/// Sorted, duplicate-free, exhaustive list of x with d(x) = x. Branches that
/// are exactly the identity on a nondegenerate subinterval make the solution
/// set a continuum; they are reported via IdentitySegment carrying the
/// segments, and the caller decides how to proceed.
inline std::vector<Rational> fixed_points(const LapDecomposition& d) {
    std::vector<Interval> sets = fixed_root_sets(d);
    std::vector<Interval> segments;
    for (const Interval& s : sets) {
        if (!s.degenerate()) segments.push_back(s);
    }
    if (!segments.empty()) throw IdentitySegment(std::move(segments));
    std::vector<Rational> points;
    points.reserve(sets.size());
    for (Interval& s : sets) points.push_back(std::move(s.lo));
    return points;
}

/// Exact image of a subinterval of the domain under the map.
inline Interval image_of(const PLMap& map, const Interval& iv) {
    Rational lo = map(iv.lo);
    Rational hi = map(iv.hi);
    if (lo > hi) std::swap(lo, hi);
    for (const Node& n : map.nodes()) {
        if (iv.lo < n.x && n.x < iv.hi) {
            if (n.y < lo) lo = n.y;
            if (n.y > hi) hi = n.y;
        }
    }
    return Interval{std::move(lo), std::move(hi)};
}

/// Exact set {x in within : map(x) in one of targets}, as sorted disjoint
/// closed intervals. `targets` must be sorted and disjoint.
inline std::vector<Interval> preimage_in(const PLMap& map,
                                         const std::vector<Interval>& targets,
                                         const Interval& within) {
    LapDecomposition d = LapDecomposition::of(map);
    const auto& breaks = d.breakpoints();
    std::vector<Interval> out;
    for (std::size_t k = 0; k < d.laps(); ++k) {
        Rational lo = std::max(breaks[k], within.lo);
        Rational hi = std::min(breaks[k + 1], within.hi);
        if (lo > hi) continue;
        const Affine& a = d.branch(k);
        if (a.slope == 0) {
            for (const Interval& t : targets) {
                if (t.contains(a.intercept)) {
                    detail::coalesce_append(out, Interval{lo, hi});
                    break;
                }
            }
        } else {
            for (const Interval& t : targets) {
                Rational x0 = (t.lo - a.intercept) / a.slope;
                Rational x1 = (t.hi - a.intercept) / a.slope;
                if (x0 > x1) std::swap(x0, x1);
                Rational clo = std::max(x0, lo);
                Rational chi = std::min(x1, hi);
                if (clo <= chi) out.push_back(Interval{clo, chi});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Interval& a, const Interval& b) {
        return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
    });
    std::vector<Interval> merged;
    for (Interval& iv : out) detail::coalesce_append(merged, std::move(iv));
    return merged;
}

/// Rebuilds a PLMap from a lap decomposition (nodes at the breakpoints).
inline PLMap to_plmap(const LapDecomposition& d) {
    std::vector<Node> nodes;
    nodes.reserve(d.laps() + 1);
    const auto& breaks = d.breakpoints();
    for (std::size_t k = 0; k < d.laps(); ++k) {
        nodes.push_back(Node{breaks[k], d.branch(k)(breaks[k])});
    }
    nodes.push_back(Node{breaks.back(), d.branch(d.laps() - 1)(breaks.back())});
    return PLMap(d.domain(), std::move(nodes));
}

/// f^n as a PLMap.
inline PLMap iterate_map(const PLMap& map, unsigned n,
                         std::size_t piece_budget = kDefaultPieceBudget,
                         LapStats* stats = nullptr) {
    return to_plmap(iterate_laps(map, n, piece_budget, stats));
}

}  // namespace plorbits
