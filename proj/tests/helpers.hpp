#pragma once

#include <functional>
#include <random>
#include <set>
#include <vector>

#include "plorbits/forcing.hpp"
#include "plorbits/io.hpp"
#include "plorbits/plmap.hpp"

namespace plorbits::testing {

inline Rational q(const char* text) { return parse_rational(text); }

inline Interval unit() { return Interval{Rational(0), Rational(1)}; }

/// Moebius function by trial division; independent of the library.
inline int mobius(unsigned n) {
    int factors = 0;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            ++factors;
            if (n % p == 0) return 0;
        }
    }
    if (n > 1) ++factors;
    return factors % 2 == 0 ? 1 : -1;
}

/// Number of least-period-n points of the tent map, by Moebius inversion of
/// the 2^n fixed-point counts: sum over d | n of mu(n/d) * 2^d.
inline long long tent_least_period_count(unsigned n) {
    long long total = 0;
    for (unsigned d = 1; d <= n; ++d) {
        if (n % d == 0) total += mobius(n / d) * (1LL << d);
    }
    return total;
}

/// All rooted closed walks of exactly `length` in the covering graph.
inline std::vector<std::vector<std::size_t>> closed_walks(const CoverGraph& g,
                                                          std::size_t length) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> walk;
    std::function<void()> extend = [&] {
        if (walk.size() == length) {
            if (g.has_edge(walk.back(), walk.front())) out.push_back(walk);
            return;
        }
        for (std::size_t j = 0; j < g.intervals.size(); ++j) {
            if (walk.empty() || g.has_edge(walk.back(), j)) {
                walk.push_back(j);
                extend();
                walk.pop_back();
            }
        }
    };
    extend();
    return out;
}

/// Random continuous PL self-map of [0, 1] with at most 4 segments and
/// rational nodes on a small grid.
inline PLMap random_plmap(std::mt19937& rng) {
    std::uniform_int_distribution<int> node_count(3, 5);
    std::uniform_int_distribution<int> grid(0, 12);
    int n = node_count(rng);
    std::set<int> xs = {0, 12};
    while (static_cast<int>(xs.size()) < n) xs.insert(grid(rng));
    std::vector<Node> nodes;
    for (int x : xs) {
        nodes.push_back(Node{Rational(x, 12), Rational(grid(rng), 12)});
    }
    return PLMap(unit(), std::move(nodes));
}

/// Random canonical rational in [0, 1] with denominator up to 999.
inline Rational random_unit_rational(std::mt19937& rng) {
    std::uniform_int_distribution<int> den(1, 999);
    int d = den(rng);
    std::uniform_int_distribution<int> num(0, d);
    return Rational(num(rng), d);
}

}  // namespace plorbits::testing
