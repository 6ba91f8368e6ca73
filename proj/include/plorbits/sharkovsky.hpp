#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>

namespace plorbits {

/// A positive integer factored as 2^exponent * odd (odd part q), the unit of
/// the Sharkovsky order. The factorization is unique, so comparisons are
/// O(1) closed-form rules on (exponent, odd).
struct PeriodKey {
    unsigned exponent = 0;
    std::uint64_t odd = 1;

    static PeriodKey of(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("period must be positive");
        PeriodKey k;
        while (n % 2 == 0) {
            ++k.exponent;
            n /= 2;
        }
        k.odd = n;
        return k;
    }

    std::uint64_t value() const { return odd << exponent; }

    bool power_of_two() const { return odd == 1; }

    bool operator==(const PeriodKey&) const = default;
};

/// Strict Sharkovsky order:
///   3 < 5 < 7 < ... < 2*3 < 2*5 < ... < 2^2*3 < ... < 2^3 < 2^2 < 2 < 1.
/// Non-powers of two compare by exponent then odd part, both ascending;
/// every non-power of two precedes every power of two; powers of two compare
/// by descending exponent.
inline bool precedes(const PeriodKey& m, const PeriodKey& n) {
    if (!m.power_of_two() && !n.power_of_two()) {
        if (m.exponent != n.exponent) return m.exponent < n.exponent;
        return m.odd < n.odd;
    }
    if (!m.power_of_two()) return true;   // non-power before any power of two
    if (!n.power_of_two()) return false;
    return m.exponent > n.exponent;
}

inline bool precedes(std::uint64_t m, std::uint64_t n) {
    return precedes(PeriodKey::of(m), PeriodKey::of(n));
}

/// { k <= bound : k = n or n precedes k }. True tails are infinite, so they
/// are always reported relative to an explicit bound.
inline std::set<std::uint64_t> tail(std::uint64_t n, std::uint64_t bound) {
    if (bound < 1) throw std::invalid_argument("bound must be >= 1");
    PeriodKey key = PeriodKey::of(n);
    std::set<std::uint64_t> out;
    for (std::uint64_t k = 1; k <= bound; ++k) {
        if (k == n || precedes(key, PeriodKey::of(k))) out.insert(k);
    }
    return out;
}

/// True iff S is closed upward under the order within the bound: whenever
/// m in S precedes some n <= bound, n is in S as well. This is the executable
/// content of the forcing statement: realized period sets are tails.
inline bool is_tail(const std::set<std::uint64_t>& S, std::uint64_t bound) {
    for (std::uint64_t m : S) {
        PeriodKey mk = PeriodKey::of(m);
        for (std::uint64_t n = 1; n <= bound; ++n) {
            if (precedes(mk, PeriodKey::of(n)) && !S.count(n)) return false;
        }
    }
    return true;
}

}  // namespace plorbits
