// Acceptance suite: every criterion is exact-arithmetic (zero tolerance) and
// prints one PASS/FAIL line. The process exits nonzero if any criterion
// fails.

#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "plorbits/constructions.hpp"
#include "plorbits/forcing.hpp"
#include "plorbits/orbits.hpp"
#include "plorbits/plmap.hpp"
#include "plorbits/sharkovsky.hpp"

using namespace plorbits;
using plorbits::testing::closed_walks;
using plorbits::testing::q;
using plorbits::testing::random_plmap;
using plorbits::testing::tent_least_period_count;

namespace {

struct Harness {
    int failures = 0;

    void run(int index, const std::string& name,
             const std::function<bool(std::string&)>& body) {
        std::string detail;
        bool ok = false;
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (ok) {
            std::cout << "[PASS] " << index << ". " << name << "\n";
        } else {
            std::cout << "[FAIL] " << index << ". " << name
                      << (detail.empty() ? "" : " -- " + detail) << "\n";
            ++failures;
        }
    }
};

std::string show(const std::set<std::uint64_t>& s) {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (auto v : s) {
        if (!first) out << ",";
        out << v;
        first = false;
    }
    out << "}";
    return out.str();
}

}  // namespace

int main() {
    Harness h;
    const PLMap T = tent();

    h.run(1, "tent fixed-point counts: |{x : T^n(x) = x}| = 2^n for n = 1..12",
          [&](std::string& detail) {
              for (unsigned n = 1; n <= 12; ++n) {
                  std::size_t count = fixed_points(iterate_laps(T, n)).size();
                  if (count != (std::size_t{1} << n)) {
                      detail = "n = " + std::to_string(n) + " gave " +
                               std::to_string(count);
                      return false;
                  }
              }
              return true;
          });

    h.run(2, "tent least-period counts match the Moebius divisor sum for n = 1..12",
          [&](std::string& detail) {
              for (unsigned n = 1; n <= 12; ++n) {
                  auto orbits = enumerate_orbits(T, n);
                  long long expected = tent_least_period_count(n);
                  long long points =
                      static_cast<long long>(orbits.size()) * n;
                  if (points != expected) {
                      detail = "n = " + std::to_string(n) + ": " +
                               std::to_string(points) + " points vs oracle " +
                               std::to_string(expected);
                      return false;
                  }
              }
              return true;
          });

    h.run(3, "T_n period sets equal tail(n, 12) with a unique period-n orbit",
          [&](std::string& detail) {
              for (unsigned n : {3u, 5u, 7u, 9u, 4u, 6u, 10u, 8u, 2u, 1u}) {
                  PLMap tn = build_Tn(n);
                  TailReport report = verify_tail_property(tn, 12);
                  std::set<std::uint64_t> expected = tail(n, 12);
                  if (report.periods != expected) {
                      detail = "n = " + std::to_string(n) + ": got " +
                               show(report.periods) + ", want " + show(expected);
                      return false;
                  }
                  if (!report.is_tail) {
                      detail = "n = " + std::to_string(n) + ": not a tail";
                      return false;
                  }
                  if (enumerate_orbits(tn, n).size() != 1) {
                      detail = "n = " + std::to_string(n) +
                               ": period-n orbit not unique";
                      return false;
                  }
              }
              return true;
          });

    h.run(4, "100 random PL maps (<= 4 segments) have tail period sets to bound 10",
          [&](std::string& detail) {
              std::mt19937 rng(20260809);
              for (int i = 0; i < 100; ++i) {
                  PLMap m = random_plmap(rng);
                  TailReport report = verify_tail_property(m, 10);
                  if (!report.is_tail) {
                      detail = "map " + std::to_string(i) + " periods " +
                               show(report.periods) + " are not a tail";
                      return false;
                  }
              }
              return true;
          });

    h.run(5, "statement (a)/(b)/(c) witnesses on both period-3 tent orbits",
          [&](std::string& detail) {
              for (const char* seed : {"2/7", "2/9"}) {
                  Orbit p = orbit_of(T, q(seed), 3);
                  UnifiedWitnesses uw = unified_witnesses(T, p, 1);
                  if (least_period(T, uw.y, 2) != 2) {
                      detail = "y is not least-period 2";
                      return false;
                  }
                  if (least_period(T, uw.p_m_plus_2, 5) != 5) {
                      detail = "p_{m+2} is not least-period 5";
                      return false;
                  }
                  for (unsigned n = 0; n <= 5; ++n) {
                      unsigned target = 2 * n + 2;
                      Rational w = even_period_witness(T, p, n);
                      if (least_period(T, w, target) != target) {
                          detail = "witness for 2n+2 = " +
                                   std::to_string(target) +
                                   " has the wrong least period";
                          return false;
                      }
                      bool member = false;
                      for (const Orbit& o : enumerate_orbits(T, target)) {
                          if (o.contains(w)) member = true;
                      }
                      if (!member) {
                          detail = "witness not among enumerated orbits of " +
                                   std::to_string(target);
                          return false;
                      }
                  }
              }
              return true;
          });

    h.run(6, "lemma 1 at (v, z, k) = (1/2, 0, 2): p_n has least period n for n = 1..10",
          [&](std::string& detail) {
              Lemma1Witness w = lemma1_witnesses(T, q("1/2"), q("0"), 2, 10);
              for (unsigned n = 1; n <= 10; ++n) {
                  if (least_period(T, w.p.at(n), n) != n) {
                      detail = "p_" + std::to_string(n) + " = " +
                               to_string(w.p.at(n)) + " has the wrong period";
                      return false;
                  }
              }
              return true;
          });

    h.run(7, "reflection surgery at z1 = z2 = 2/3 kills odd periods, keeps evens",
          [&](std::string& detail) {
              PLMap g = reflect_middle_surgery(T, q("2/3"), q("2/3"));
              for (unsigned m : {3u, 5u, 7u}) {
                  if (!enumerate_orbits(g, m).empty()) {
                      detail = "odd period " + std::to_string(m) + " survived";
                      return false;
                  }
              }
              for (unsigned m : {4u, 6u, 8u, 10u, 12u}) {
                  if (enumerate_orbits(g, m).empty()) {
                      detail = "even period " + std::to_string(m) + " missing";
                      return false;
                  }
              }
              return true;
          });

    h.run(8, "nested truncations: period sets tail(3*2^d, 12), q0 up, q1 down",
          [&](std::string& detail) {
              Rational prev_q0;
              Rational prev_q1;
              for (unsigned depth = 0; depth <= 2; ++depth) {
                  TinfApprox approx = build_Tinf_approx(depth);
                  TailReport report = verify_tail_property(approx.map, 12);
                  std::set<std::uint64_t> expected = tail(3u << depth, 12);
                  if (report.periods != expected) {
                      detail = "depth " + std::to_string(depth) + ": got " +
                               show(report.periods) + ", want " + show(expected);
                      return false;
                  }
                  if (depth > 0 &&
                      !(prev_q0 < approx.q0 && approx.q1 < prev_q1)) {
                      detail = "bands are not strictly nested at depth " +
                               std::to_string(depth);
                      return false;
                  }
                  prev_q0 = approx.q0;
                  prev_q1 = approx.q1;
              }
              return true;
          });

    h.run(9, "realize_cycle is sound on every closed walk of length <= 6",
          [&](std::string& detail) {
              for (const Orbit& p : enumerate_orbits(T, 3)) {
                  CoverGraph g = cover_graph(p);
                  for (std::size_t len = 1; len <= 6; ++len) {
                      for (const auto& walk : closed_walks(g, len)) {
                          Rational x = realize_cycle(T, p, walk);
                          Rational y = x;
                          for (std::size_t k = 0; k < walk.size(); ++k) {
                              if (!g.intervals[walk[k]].contains(y)) {
                                  detail = "itinerary mismatch at step " +
                                           std::to_string(k);
                                  return false;
                              }
                              y = T(y);
                          }
                          if (y != x) {
                              detail = "returned point is not period-" +
                                       std::to_string(len);
                              return false;
                          }
                      }
                  }
              }
              return true;
          });

    if (h.failures == 0) {
        std::cout << "all acceptance criteria passed\n";
        return 0;
    }
    std::cout << h.failures << " criterion(s) failed\n";
    return 1;
}
