#pragma once

// Instance files and JSON report pieces. Every number that may leave 64 bits
// or is fractional is written as a string.

#include "vertexcone/cone_group.hpp"
#include "vertexcone/hull.hpp"
#include "vertexcone/knapsack.hpp"
#include "vertexcone/weights.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace vcone {

using Json = nlohmann::ordered_json;

struct InstanceFile {
    Instance instance;
    Json provenance; // null when absent
};

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& what) { fail(ErrorKind::Parse, what); }

inline std::int64_t json_count(const Json& v, const std::string& where) {
    if (!v.is_number_integer())
        parse_fail(where + " must be an integer");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
        parse_fail(where + " is too large");
    auto x = v.get<std::int64_t>();
    if (x < 0)
        parse_fail(where + " must be nonnegative");
    return x;
}

} // namespace detail

inline InstanceFile parse_instance(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        detail::parse_fail(std::string("instance is not JSON: ") + e.what());
    }
    if (!j.is_object())
        detail::parse_fail("instance must be a JSON object");
    for (const auto& [key, value] : j.items())
        if (key != "sizes" && key != "multiplicities" && key != "name" && key != "provenance")
            detail::parse_fail("unknown instance field '" + key + "'");
    if (!j.contains("sizes") || !j["sizes"].is_array() || j["sizes"].empty())
        detail::parse_fail("'sizes' must be a nonempty array of fraction strings");
    std::vector<Rational> sizes;
    for (const auto& s : j["sizes"]) {
        if (!s.is_string())
            detail::parse_fail("sizes must be fraction strings such as \"1/3\"");
        sizes.push_back(Rational::parse(s.get<std::string>()));
    }
    Point b;
    if (j.contains("multiplicities")) {
        if (!j["multiplicities"].is_array())
            detail::parse_fail("'multiplicities' must be an array");
        for (const auto& v : j["multiplicities"])
            b.push_back(detail::json_count(v, "multiplicity"));
        if (b.size() != sizes.size())
            detail::parse_fail("sizes and multiplicities differ in length");
    }
    std::string name;
    if (j.contains("name")) {
        if (!j["name"].is_string())
            detail::parse_fail("'name' must be a string");
        name = j["name"].get<std::string>();
    }
    InstanceFile out;
    try {
        out.instance = Instance(std::move(sizes), std::move(b), std::move(name));
    } catch (const Error& e) {
        detail::parse_fail(e.what());
    }
    if (j.contains("provenance"))
        out.provenance = j["provenance"];
    return out;
}

inline InstanceFile read_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        detail::parse_fail("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance(ss.str());
}

inline Json instance_json(const Instance& inst, const Json& provenance = nullptr) {
    Json j;
    j["sizes"] = Json::array();
    for (const auto& s : inst.sizes())
        j["sizes"].push_back(s.str());
    j["multiplicities"] = inst.multiplicities();
    if (!inst.name().empty())
        j["name"] = inst.name();
    if (!provenance.is_null())
        j["provenance"] = provenance;
    return j;
}

/// One key per line, arrays kept on the line of their key.
inline std::string serialize_instance(const Instance& inst, const Json& provenance = nullptr) {
    Json j = instance_json(inst, provenance);
    std::string out = "{\n";
    std::size_t k = 0;
    for (const auto& [key, value] : j.items()) {
        out += "  " + Json(key).dump() + ": " + value.dump();
        out += ++k < j.size() ? ",\n" : "\n";
    }
    return out + "}\n";
}

inline Json to_json(const Rational& r) { return r.str(); }

inline Json to_json(const BigInt& v) {
    if (fits_int64(v))
        return v.get_si();
    return v.get_str();
}

inline Json to_json(const std::vector<BigInt>& v) {
    Json out = Json::array();
    for (const auto& x : v)
        out.push_back(to_json(x));
    return out;
}

inline Json to_json(const std::vector<Rational>& v) {
    Json out = Json::array();
    for (const auto& x : v)
        out.push_back(to_json(x));
    return out;
}

inline Json to_json(const GroupElement& g) { return to_json(g.residues); }

inline Json to_json(const Point& p) { return Json(p); }

inline Json to_json(const std::vector<Point>& pts) {
    Json out = Json::array();
    for (const auto& p : pts)
        out.push_back(to_json(p));
    return out;
}

/// [{"config": [...], "weight": n, "vertex": bool}, ...] in lexicographic order.
inline Json to_json(const Weights& w, const VertexSet* v = nullptr) {
    Json out = Json::array();
    for (const auto& [p, c] : w.entries()) {
        Json e;
        e["config"] = p;
        e["weight"] = c;
        if (v)
            e["vertex"] = v->contains(p);
        out.push_back(std::move(e));
    }
    return out;
}

/// Inverse of to_json(Weights); "vertex" flags are ignored.
inline Weights weights_from_json(const Json& j, std::size_t dim) {
    if (!j.is_array())
        detail::parse_fail("weights must be an array of {config, weight}");
    Weights w(dim);
    for (const auto& e : j) {
        if (!e.is_object() || !e.contains("config") || !e.contains("weight") || !e["config"].is_array())
            detail::parse_fail("weight entries need 'config' and 'weight'");
        Point p;
        for (const auto& v : e["config"]) {
            if (!v.is_number_integer())
                detail::parse_fail("configuration entries must be integers");
            p.push_back(v.get<std::int64_t>());
        }
        if (p.size() != dim)
            detail::parse_fail("configuration has wrong dimension");
        w.add(p, detail::json_count(e["weight"], "weight"));
    }
    return w;
}

/// "3,4,5" or "3 4 5" into integers.
inline std::vector<BigInt> parse_integer_list(const std::string& text) {
    std::vector<BigInt> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty())
            return;
        Rational r = Rational::parse(cur);
        if (!r.is_integer())
            detail::parse_fail("expected an integer, got '" + cur + "'");
        out.push_back(r.num());
        cur.clear();
    };
    for (char c : text) {
        if (c == ',' || c == ' ' || c == '(' || c == ')' || c == '[' || c == ']')
            flush();
        else
            cur += c;
    }
    flush();
    if (out.empty())
        detail::parse_fail("empty integer list");
    return out;
}

inline Point parse_point(const std::string& text) {
    Point out;
    for (const auto& v : parse_integer_list(text)) {
        if (!fits_int64(v))
            detail::parse_fail("coordinate " + v.get_str() + " exceeds 64 bits");
        out.push_back(v.get_si());
    }
    return out;
}

inline std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty())
            out.push_back(Rational::parse(cur));
        cur.clear();
    };
    for (char c : text) {
        if (c == ',' || c == ' ' || c == '(' || c == ')' || c == '[' || c == ']')
            flush();
        else
            cur += c;
    }
    flush();
    if (out.empty())
        detail::parse_fail("empty fraction list");
    return out;
}

} // namespace vcone
