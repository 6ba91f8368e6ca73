#pragma once

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "plorbits/constructions.hpp"
#include "plorbits/errors.hpp"
#include "plorbits/forcing.hpp"
#include "plorbits/io.hpp"
#include "plorbits/orbits.hpp"
#include "plorbits/plmap.hpp"
#include "plorbits/sharkovsky.hpp"

namespace plorbits::cli {

namespace detail {

inline std::string error_type(const plorbits::Error& e) {
    if (dynamic_cast<const BudgetExceeded*>(&e)) return "BudgetExceeded";
    if (dynamic_cast<const IdentitySegment*>(&e)) return "IdentitySegment";
    if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
    if (dynamic_cast<const NotPeriodic*>(&e)) return "NotPeriodic";
    if (dynamic_cast<const NoSuchOrbit*>(&e)) return "NoSuchOrbit";
    if (dynamic_cast<const MalformedOrbit*>(&e)) return "MalformedOrbit";
    if (dynamic_cast<const NotACycle*>(&e)) return "NotACycle";
    if (dynamic_cast<const CoverageFailure*>(&e)) return "CoverageFailure";
    if (dynamic_cast<const WitnessNotFound*>(&e)) return "WitnessNotFound";
    if (dynamic_cast<const PreconditionViolated*>(&e)) return "PreconditionViolated";
    if (dynamic_cast<const ContinuityError*>(&e)) return "ContinuityError";
    if (dynamic_cast<const NotFixed*>(&e)) return "NotFixed";
    if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
    return "Error";
}

inline nlohmann::json error_json(const plorbits::Error& e) {
    nlohmann::json j{{"type", error_type(e)}, {"message", e.what()}};
    if (auto* b = dynamic_cast<const BudgetExceeded*>(&e)) {
        j["budget"] = b->budget();
        j["iterate"] = b->iterate();
    } else if (auto* s = dynamic_cast<const IdentitySegment*>(&e)) {
        nlohmann::json segs = nlohmann::json::array();
        for (const Interval& iv : s->segments()) segs.push_back(to_json(iv));
        j["segments"] = std::move(segs);
    } else if (auto* p = dynamic_cast<const ParseError*>(&e)) {
        j["where"] = p->where();
    } else if (auto* c = dynamic_cast<const ContinuityError*>(&e)) {
        j["endpoint"] = to_string(c->endpoint());
    } else if (auto* f = dynamic_cast<const NotFixed*>(&e)) {
        j["point"] = to_string(f->point());
    }
    return j;
}

inline std::size_t budget_from_env(std::size_t fallback) {
    const char* env = std::getenv("IDL_BUDGET");
    if (env == nullptr || *env == '\0') return fallback;
    char* end = nullptr;
    unsigned long long value = std::strtoull(env, &end, 10);
    if (end == nullptr || *end != '\0' || value == 0) {
        throw ParseError("IDL_BUDGET", "expected a positive integer, got \"" +
                                           std::string(env) + "\"");
    }
    return static_cast<std::size_t>(value);
}

inline nlohmann::json periods_json(const std::set<std::uint64_t>& periods) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::uint64_t p : periods) arr.push_back(p);
    return arr;
}

/// Orbit pattern "1>2,2>3,3>1" as a canonical orbit on the points 1..m.
inline Orbit orbit_from_pattern(const std::string& text) {
    std::map<std::size_t, std::size_t> succ;
    std::size_t max_index = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string::npos) comma = text.size();
        std::string item = text.substr(start, comma - start);
        std::size_t arrow = item.find('>');
        if (arrow == std::string::npos) {
            throw ParseError("orbit-pattern", "expected i>j items, got \"" +
                                                  item + "\"");
        }
        std::size_t i = 0;
        std::size_t j = 0;
        try {
            i = std::stoull(item.substr(0, arrow));
            j = std::stoull(item.substr(arrow + 1));
        } catch (const std::exception&) {
            throw ParseError("orbit-pattern", "bad index in \"" + item + "\"");
        }
        if (i == 0 || j == 0) {
            throw ParseError("orbit-pattern", "indices are 1-based");
        }
        if (!succ.emplace(i - 1, j - 1).second) {
            throw ParseError("orbit-pattern", "duplicate source index " +
                                                  std::to_string(i));
        }
        max_index = std::max({max_index, i, j});
        start = comma + 1;
    }
    if (succ.size() != max_index) {
        throw ParseError("orbit-pattern", "pattern must define every index once");
    }
    std::vector<Rational> points;
    std::vector<std::size_t> successor(max_index);
    for (std::size_t i = 0; i < max_index; ++i) {
        points.push_back(Rational(static_cast<int>(i) + 1));
        successor[i] = succ.at(i);
    }
    try {
        return Orbit(std::move(points), std::move(successor));
    } catch (const MalformedOrbit& e) {
        throw ParseError("orbit-pattern", e.what());
    }
}

inline nlohmann::json graph_json(const CoverGraph& g) {
    nlohmann::json intervals = nlohmann::json::array();
    for (const Interval& iv : g.intervals) intervals.push_back(to_json(iv));
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [i, j] : g.edges) {
        edges.push_back(nlohmann::json::array({i, j}));
    }
    nlohmann::json adjacency = nlohmann::json::array();
    for (const auto& row : g.adjacency()) adjacency.push_back(row);
    return nlohmann::json{{"intervals", std::move(intervals)},
                          {"edges", std::move(edges)},
                          {"adjacency", std::move(adjacency)}};
}

}  // namespace detail

/// Runs one CLI command. Emits a single JSON report on `out`; human-readable
/// summaries go to `err` behind --verbose. Exit status 0 on success, 2 on
/// precondition/parse errors, 3 on budget errors.
inline int run(std::vector<std::string> args, std::ostream& out,
               std::ostream& err) {
    CLI::App app{"exact periodic-orbit analysis of piecewise-linear interval maps"};
    app.require_subcommand(1);

    bool verbose = false;
    app.add_flag("--verbose", verbose, "human-readable summary on stderr");

    std::optional<std::size_t> budget_flag;
    app.add_option("--budget", budget_flag, "lap budget for exact iterates");

    std::string map_path;
    std::string orbit_list;
    std::string orbit_pattern;
    unsigned max_period = 10;
    unsigned period = 1;
    unsigned max_witness = 6;
    unsigned tn_n = 3;
    unsigned tinf_depth = 0;
    bool largest_min = false;
    std::uint64_t order_m = 1;
    std::uint64_t order_n = 1;
    std::uint64_t order_bound = 10;

    CLI::App* analyze = app.add_subcommand(
        "analyze", "period set and Sharkovsky tail verdict of a map");
    analyze->fallthrough();
    analyze->add_option("--map", map_path, "map JSON file")->required();
    analyze->add_option("--max-period", max_period, "largest period to test")
        ->required();

    CLI::App* orbits_cmd =
        app.add_subcommand("orbits", "all orbits of one least period");
    orbits_cmd->fallthrough();
    orbits_cmd->add_option("--map", map_path, "map JSON file")->required();
    orbits_cmd->add_option("--period", period, "least period")->required();

    CLI::App* witnesses = app.add_subcommand(
        "witnesses", "exact witness points attached to a periodic orbit");
    witnesses->fallthrough();
    witnesses->add_option("--map", map_path, "map JSON file")->required();
    witnesses->add_option("--orbit", orbit_list, "comma-separated orbit points")
        ->required();
    witnesses->add_option("--max", max_witness, "largest witness period");

    CLI::App* order = app.add_subcommand("order", "Sharkovsky order queries");
    order->fallthrough();
    order->require_subcommand(1);
    CLI::App* order_compare =
        order->add_subcommand("compare", "does m strictly precede n?");
    order_compare->fallthrough();
    order_compare->add_option("m", order_m, "left period")->required();
    order_compare->add_option("n", order_n, "right period")->required();
    CLI::App* order_tail =
        order->add_subcommand("tail", "tail of the order up to a bound");
    order_tail->fallthrough();
    order_tail->add_option("n", order_m, "period")->required();
    order_tail->add_option("--bound", order_bound, "inclusive bound")->required();

    CLI::App* construct = app.add_subcommand("construct", "the explicit maps");
    construct->fallthrough();
    construct->require_subcommand(1);
    construct->add_subcommand("tent", "the tent map");
    CLI::App* construct_tn =
        construct->add_subcommand("tn", "tent truncated to an extremal orbit band");
    construct_tn->fallthrough();
    construct_tn->add_option("--n", tn_n, "orbit period")->required();
    construct_tn->add_flag("--largest-min", largest_min,
                           "pick the orbit of largest min instead of smallest max");
    CLI::App* construct_tinf = construct->add_subcommand(
        "tinf", "nested period-3*2^i truncation of the tent map");
    construct_tinf->fallthrough();
    construct_tinf->add_option("--depth", tinf_depth, "doubling depth")->required();

    CLI::App* graph =
        app.add_subcommand("graph", "interval covering graph of an orbit");
    graph->fallthrough();
    graph->add_option("--map", map_path, "map JSON file");
    graph->add_option("--orbit", orbit_list, "comma-separated orbit points");
    graph->add_option("--orbit-pattern", orbit_pattern,
                      "pattern as 1-based successor list, e.g. 1>2,2>3,3>1");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help() << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "argument error: " << e.what() << "\n";
        return 2;
    }

    nlohmann::json report;
    nlohmann::json inputs;
    LapStats stats;
    std::size_t budget = kDefaultPieceBudget;

    try {
        budget = budget_flag.value_or(detail::budget_from_env(kDefaultPieceBudget));
        inputs["budget"] = budget;

        if (*analyze) {
            report["command"] = "analyze";
            inputs["map"] = map_path;
            inputs["max_period"] = max_period;
            PLMap map = load_plmap(map_path);
            TailReport tr = verify_tail_property(map, max_period, budget, &stats);
            report["results"] = {{"periods", detail::periods_json(tr.periods)},
                                 {"is_tail", tr.is_tail}};
            if (verbose) {
                err << "periods up to " << max_period << ": "
                    << detail::periods_json(tr.periods).dump()
                    << (tr.is_tail ? " (a Sharkovsky tail)" : " (NOT a tail)")
                    << "\n";
            }
        } else if (*orbits_cmd) {
            report["command"] = "orbits";
            inputs["map"] = map_path;
            inputs["period"] = period;
            PLMap map = load_plmap(map_path);
            nlohmann::json arr = nlohmann::json::array();
            for (const Orbit& o : enumerate_orbits(map, period, budget, &stats)) {
                arr.push_back(to_json(o));
            }
            if (verbose) {
                err << arr.size() << " orbit(s) of least period " << period << "\n";
            }
            report["results"] = {{"orbits", std::move(arr)}};
        } else if (*witnesses) {
            report["command"] = "witnesses";
            inputs["map"] = map_path;
            inputs["orbit"] = orbit_list;
            inputs["max"] = max_witness;
            PLMap map = load_plmap(map_path);
            Orbit p = orbit_from_points(
                map, parse_rational_list(orbit_list, "orbit"));
            OrbitContext ctx = orbit_context(map, p, budget);
            nlohmann::json results;
            results["context"] = {
                {"min_p", to_string(ctx.min_p)}, {"max_p", to_string(ctx.max_p)},
                {"b", to_string(ctx.b)},         {"v", to_string(ctx.v)},
                {"z", to_string(ctx.z)},         {"z0", to_string(ctx.z0)},
                {"y", to_string(ctx.y)},         {"d", to_string(ctx.d)}};

            unsigned n_c = max_witness / 2;
            UnifiedWitnesses uw =
                unified_witnesses(map, p, std::max(1u, n_c), budget, &stats);
            nlohmann::json c;
            for (const auto& [k, value] : uw.c) {
                c[std::to_string(2 * k)] = to_string(value);
            }
            results["unified"] = {
                {"y", to_string(uw.y)},
                {"p_m_plus_2", to_string(uw.p_m_plus_2)},
                {"c", std::move(c)}};

            nlohmann::json evens;
            for (unsigned n = 0; 2 * n + 2 <= max_witness; ++n) {
                evens[std::to_string(2 * n + 2)] =
                    to_string(even_period_witness(map, p, n, budget, &stats));
            }
            results["even_witnesses"] = std::move(evens);

            // Periodic points of all periods for the second iterate, from
            // the single-inequality hypothesis at (v, z, (m+1)/2).
            PLMap square = iterate_map(map, 2, budget, &stats);
            Lemma1Witness lw =
                lemma1_witnesses(square, ctx.v, ctx.z, (p.period() + 1) / 2,
                                 std::max(1u, max_witness / 2), budget, &stats);
            nlohmann::json lp;
            for (const auto& [n, value] : lw.p) {
                lp[std::to_string(n)] = to_string(value);
            }
            results["square_map_periods"] = {
                {"d", to_string(lw.d)},
                {"z", to_string(lw.z)},
                {"orientation", lw.orientation == Lemma1Orientation::Direct
                                    ? "direct"
                                    : "mirrored"},
                {"p", std::move(lp)}};
            if (verbose) {
                err << "witnesses for the period-" << p.period() << " orbit of "
                    << map_path << "\n";
            }
            report["results"] = std::move(results);
        } else if (*order) {
            if (*order_compare) {
                report["command"] = "order compare";
                inputs["m"] = order_m;
                inputs["n"] = order_n;
                bool result = precedes(order_m, order_n);
                report["results"] = {{"precedes", result}};
                if (verbose) {
                    err << order_m << (result ? " precedes " : " does not precede ")
                        << order_n << "\n";
                }
            } else {
                report["command"] = "order tail";
                inputs["n"] = order_m;
                inputs["bound"] = order_bound;
                report["results"] = detail::periods_json(tail(order_m, order_bound));
            }
        } else if (*construct) {
            nlohmann::json results;
            if (*construct_tn) {
                report["command"] = "construct tn";
                inputs["n"] = tn_n;
                inputs["selection"] = largest_min ? "largest-min" : "smallest-max";
                PLMap t = tent();
                Orbit p = extremal_orbit(t, tn_n,
                                         largest_min ? OrbitSelection::LargestMin
                                                     : OrbitSelection::SmallestMax,
                                         budget, &stats);
                results["map"] = to_json(clamp_band(t, p.min(), p.max()));
                results["provenance"] = {
                    {"orbit", to_json(p)},
                    {"band", to_json(Interval{p.min(), p.max()})}};
            } else if (*construct_tinf) {
                report["command"] = "construct tinf";
                inputs["depth"] = tinf_depth;
                TinfApprox approx = build_Tinf_approx(tinf_depth, budget, &stats);
                results["map"] = to_json(approx.map);
                nlohmann::json chain = nlohmann::json::array();
                for (const Orbit& o : approx.chain) chain.push_back(to_json(o));
                results["provenance"] = {
                    {"q0", to_string(approx.q0)},
                    {"q1", to_string(approx.q1)},
                    {"band", to_json(Interval{approx.q0, approx.q1})},
                    {"chain", std::move(chain)}};
            } else {
                report["command"] = "construct tent";
                results["map"] = to_json(tent());
            }
            report["results"] = std::move(results);
        } else if (*graph) {
            report["command"] = "graph";
            CoverGraph g;
            if (!orbit_pattern.empty()) {
                inputs["orbit_pattern"] = orbit_pattern;
                g = cover_graph(detail::orbit_from_pattern(orbit_pattern));
            } else if (!map_path.empty() && !orbit_list.empty()) {
                inputs["map"] = map_path;
                inputs["orbit"] = orbit_list;
                PLMap map = load_plmap(map_path);
                g = cover_graph(orbit_from_points(
                    map, parse_rational_list(orbit_list, "orbit")));
            } else {
                throw PreconditionViolated(
                    "graph needs either --orbit-pattern or --map with --orbit");
            }
            report["results"] = detail::graph_json(g);
        }

        report["inputs"] = std::move(inputs);
        report["budget"] = {{"budget", budget}, {"max_laps", stats.peak_laps}};
        out << report.dump(2) << "\n";
        return 0;
    } catch (const plorbits::Error& e) {
        nlohmann::json error_report{{"error", detail::error_json(e)}};
        error_report["budget"] = {{"budget", budget},
                                  {"max_laps", stats.peak_laps}};
        out << error_report.dump(2) << "\n";
        err << detail::error_type(e) << ": " << e.what() << "\n";
        return dynamic_cast<const BudgetExceeded*>(&e) ? 3 : 2;
    }
}

}  // namespace plorbits::cli
