#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "plorbits/errors.hpp"
#include "plorbits/orbits.hpp"
#include "plorbits/plmap.hpp"
#include "plorbits/rational.hpp"

namespace plorbits {

/// Parses a rational from its canonical string form: "p" for integers or
/// "p/q" with q > 1 and gcd(|p|, q) = 1, no leading zeros, sign only on a
/// nonzero numerator. Anything else is rejected, so parse(to_string(r)) == r
/// and to_string(parse(s)) == s.
inline Rational parse_rational(std::string_view text,
                               const std::string& where = "") {
    auto fail = [&](const std::string& detail) -> Rational {
        throw ParseError(where, "invalid rational \"" + std::string(text) +
                                    "\": " + detail);
    };
    auto digits_ok = [](std::string_view d) {
        if (d.empty()) return false;
        for (char c : d) {
            if (c < '0' || c > '9') return false;
        }
        return d.size() == 1 || d.front() != '0';
    };

    std::string_view rest = text;
    bool negative = false;
    if (!rest.empty() && rest.front() == '-') {
        negative = true;
        rest.remove_prefix(1);
    }
    std::string_view num = rest;
    std::string_view den;
    if (auto slash = rest.find('/'); slash != std::string_view::npos) {
        num = rest.substr(0, slash);
        den = rest.substr(slash + 1);
        if (den.find('/') != std::string_view::npos) {
            return fail("more than one '/'");
        }
    }
    if (!digits_ok(num)) return fail("malformed numerator");
    Integer n{std::string(num)};
    if (negative && n == 0) return fail("negative zero is not canonical");
    if (negative) n = -n;
    if (den.data() == nullptr) return Rational(n);

    if (!digits_ok(den)) return fail("malformed denominator");
    Integer d{std::string(den)};
    if (d == 0) return fail("zero denominator");
    if (d == 1) return fail("denominator 1 must be written as an integer");
    if (gcd(abs(n), d) != 1) return fail("not in lowest terms");
    return make_rational(n, d);
}

/// Comma-separated list of canonical rationals, e.g. "2/7,4/7,6/7".
inline std::vector<Rational> parse_rational_list(std::string_view text,
                                                 const std::string& where = "") {
    std::vector<Rational> out;
    std::size_t start = 0;
    std::size_t index = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string_view::npos) comma = text.size();
        out.push_back(parse_rational(
            text.substr(start, comma - start),
            where.empty() ? "item " + std::to_string(index)
                          : where + "[" + std::to_string(index) + "]"));
        start = comma + 1;
        ++index;
    }
    return out;
}

inline nlohmann::json to_json(const Rational& r) { return to_string(r); }

inline nlohmann::json to_json(const Interval& iv) {
    return nlohmann::json::array({to_string(iv.lo), to_string(iv.hi)});
}

/// {"domain": ["p/q","p/q"], "nodes": [["x","y"], ...]} with every rational
/// in canonical string form.
inline nlohmann::json to_json(const PLMap& map) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const Node& n : map.nodes()) {
        nodes.push_back(nlohmann::json::array({to_string(n.x), to_string(n.y)}));
    }
    return nlohmann::json{
        {"domain", to_json(map.domain())},
        {"nodes", std::move(nodes)},
    };
}

inline nlohmann::json to_json(const Orbit& o) {
    nlohmann::json points = nlohmann::json::array();
    for (const Rational& p : o.points()) points.push_back(to_string(p));
    return nlohmann::json{
        {"points", std::move(points)},
        {"successor", o.successor()},
        {"period", o.period()},
    };
}

namespace detail {

inline Rational json_rational(const nlohmann::json& j, const std::string& where) {
    if (!j.is_string()) {
        throw ParseError(where, "expected a rational as a canonical string");
    }
    return parse_rational(j.get<std::string>(), where);
}

}  // namespace detail

/// Parses the PLMap JSON form, rejecting non-canonical rationals and
/// out-of-order nodes with a position-carrying error.
inline PLMap plmap_from_json(const nlohmann::json& j,
                             const std::string& where = "map") {
    if (!j.is_object()) throw ParseError(where, "expected an object");
    if (!j.contains("domain") || !j.at("domain").is_array() ||
        j.at("domain").size() != 2) {
        throw ParseError(where + ".domain", "expected [lo, hi]");
    }
    Interval domain{detail::json_rational(j.at("domain")[0], where + ".domain[0]"),
                    detail::json_rational(j.at("domain")[1], where + ".domain[1]")};
    if (!(domain.lo < domain.hi)) {
        throw ParseError(where + ".domain", "domain must satisfy lo < hi");
    }
    if (!j.contains("nodes") || !j.at("nodes").is_array() ||
        j.at("nodes").size() < 2) {
        throw ParseError(where + ".nodes", "expected at least two [x, y] nodes");
    }
    std::vector<Node> nodes;
    nodes.reserve(j.at("nodes").size());
    for (std::size_t i = 0; i < j.at("nodes").size(); ++i) {
        const auto& entry = j.at("nodes")[i];
        std::string at = where + ".nodes[" + std::to_string(i) + "]";
        if (!entry.is_array() || entry.size() != 2) {
            throw ParseError(at, "expected [x, y]");
        }
        Node n{detail::json_rational(entry[0], at + "[0]"),
               detail::json_rational(entry[1], at + "[1]")};
        if (!nodes.empty() && !(nodes.back().x < n.x)) {
            throw ParseError(at + "[0]", "node abscissae must be strictly increasing");
        }
        if (!domain.contains(n.y)) {
            throw ParseError(at + "[1]", "node value leaves the domain");
        }
        nodes.push_back(std::move(n));
    }
    if (nodes.front().x != domain.lo || nodes.back().x != domain.hi) {
        throw ParseError(where + ".nodes", "nodes must span the domain exactly");
    }
    return PLMap(std::move(domain), std::move(nodes));
}

inline PLMap parse_plmap(const std::string& text, const std::string& where = "map") {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(where + " byte " + std::to_string(e.byte), e.what());
    }
    return plmap_from_json(j, where);
}

inline PLMap load_plmap(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, "cannot open map file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_plmap(buf.str(), path);
}

}  // namespace plorbits
