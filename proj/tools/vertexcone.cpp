// vertexcone: command-line front end. Reports are JSON on stdout, errors go
// to stderr. Exit codes: 0 ok, 1 oracle disagreement, 2 input error,
// 3 resource limit.

#include "vertexcone/vertexcone.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>

using namespace vcone;

namespace {

struct Outcome {
    Json result;
    int code = 0;
};

struct Globals {
    Limits limits;
    std::optional<double> time_cap_seconds;
    bool pretty = false;
    bool oracle = false;
    bool timing = false;
};

int exit_code(ErrorKind kind) { return kind == ErrorKind::ResourceLimit ? 3 : 2; }

void merge_code(int& code, int c) {
    if (code == 1 || c == 1)
        code = 1;
    else
        code = std::max(code, c);
}

// Runs `check` (returning agreement and details) under the oracle key.
template <class F>
void attach_oracle(Outcome& out, const std::string& method, F check) {
    Json o;
    o["method"] = method;
    try {
        auto [agrees, detail] = check();
        o["agrees"] = agrees;
        if (!detail.is_null())
            o["detail"] = detail;
        if (!agrees)
            merge_code(out.code, 1);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::ResourceLimit)
            throw;
        o["status"] = e.what();
        merge_code(out.code, 3);
    }
    out.result["oracle"] = std::move(o);
}

Json limits_json(const Globals& g) {
    Json j;
    j["threads"] = g.limits.threads;
    j["config_cap"] = g.limits.config_cap;
    j["node_cap"] = g.limits.node_cap;
    j["box_cap"] = g.limits.box_cap;
    j["time_cap_seconds"] = g.time_cap_seconds ? Json(*g.time_cap_seconds) : Json(nullptr);
    return j;
}

void flatten(const Json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            flatten(v, path.empty() ? k : path + "." + k, rows);
    } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); })) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten(j[i], path + "[" + std::to_string(i) + "]", rows);
    } else {
        rows.emplace_back(path, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

std::string pretty_table(const Json& report) {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(report, "", rows);
    std::size_t w = 0;
    for (const auto& r : rows)
        w = std::max(w, r.first.size());
    std::string out;
    for (const auto& [k, v] : rows)
        out += k + std::string(w - k.size() + 2, ' ') + v + "\n";
    return out;
}

// Indented JSON with arrays of scalars kept on one line.
void render(const Json& j, int indent, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    if (j.is_object() && !j.empty()) {
        out += "{\n";
        std::size_t k = 0;
        for (const auto& [key, v] : j.items()) {
            out += pad + Json(key).dump() + ": ";
            render(v, indent + 2, out);
            out += ++k < j.size() ? ",\n" : "\n";
        }
        out += std::string(static_cast<std::size_t>(indent), ' ') + "}";
    } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); })) {
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            out += pad;
            render(j[i], indent + 2, out);
            out += i + 1 < j.size() ? ",\n" : "\n";
        }
        out += std::string(static_cast<std::size_t>(indent), ' ') + "]";
    } else {
        out += j.dump();
    }
}

std::vector<Configuration> parse_basis(const std::string& text) {
    std::vector<Configuration> out;
    std::string cur;
    for (char c : text + ";") {
        if (c == ';') {
            if (!cur.empty())
                out.push_back(parse_point(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

Json coords_json(const SimplexCoords& x) {
    Json j;
    j["basis"] = to_json(x.basis);
    j["coords"] = to_json(x.coords);
    return j;
}

Json premises_json(const std::vector<Premise>& ps) {
    Json out = Json::array();
    for (const auto& p : ps) {
        Json e;
        e["name"] = p.name;
        e["holds"] = p.holds;
        if (!p.detail.empty())
            e["detail"] = p.detail;
        out.push_back(std::move(e));
    }
    return out;
}

Json sylvester_json(const SylvesterInstance& s) {
    Json j;
    j["d"] = s.d;
    j["epsilon"] = to_json(s.epsilon);
    j["a"] = to_json(s.a);
    j["m"] = to_json(s.m);
    j["g"] = to_json(s.g);
    j["determinant"] = to_json(s.det);
    j["size_g"] = to_json(size_of(s.g, s.basis()));
    j["window_last"] = s.window_last;
    return j;
}

Json gap_json(const GapReport& g) {
    Json j;
    j["ilp_opt"] = g.ilp_opt;
    j["lp_opt"] = to_json(g.lp_opt);
    j["gap"] = to_json(g.gap);
    j["irup"] = g.irup;
    j["mirup"] = g.mirup;
    return j;
}

Json lp_json(const FractionalPacking& lp) {
    Json j;
    j["value"] = to_json(lp.value);
    Json w = Json::array();
    for (const auto& [p, v] : lp.weights) {
        Json e;
        e["config"] = p;
        e["weight"] = to_json(v);
        w.push_back(std::move(e));
    }
    j["weights"] = std::move(w);
    j["duals"] = to_json(lp.duals);
    j["pivots"] = lp.pivots;
    return j;
}

// The full lower-bound report for one instance; adds the certificate when
// d >= 3 and every premise holds.
Outcome lower_bound_report(const SylvesterInstance& s, std::optional<std::int64_t> K_opt, const Globals& g,
                           const std::string& emit) {
    Outcome out;
    out.result["instance"] = sylvester_json(s);
    auto premises = s.premises;
    premises.push_back({"d-at-least-3", s.d >= 3, std::to_string(s.d)});
    const std::int64_t S_d_minus_2 = to_int64(sylvester(s.d) - 2);
    const std::int64_t K = K_opt ? *K_opt : std::max<std::int64_t>(1, S_d_minus_2);
    auto lr = long_run_report(s.g, s.a, s.epsilon);
    Json l;
    l["windows"] = lr.windows;
    l["slack"] = lr.slack;
    l["coords"] = to_json(lr.coords);
    out.result["long_run"] = std::move(l);
    bool g_config = size_of(s.g, s.basis()) <= Rational(1);
    if (g_config) {
        auto u = check_uniqueness(s, K);
        Json uj;
        uj["unique"] = u.unique;
        uj["K_max"] = u.K_max;
        Json wit = Json::array();
        for (const auto& w : u.witness)
            wit.push_back(Json{{"K", w.K}, {"element", to_json(w.element)}, {"size", to_json(w.size)}});
        uj["witness"] = std::move(wit);
        out.result["uniqueness"] = std::move(uj);
    }
    if (s.d >= 2)
        out.result["jump_schedule"] = s.d >= 3 ? Json(check_jump_schedule(s)) : Json(nullptr);
    out.result["premises"] = premises_json(premises);
    const bool all_hold = std::all_of(premises.begin(), premises.end(), [](const Premise& p) { return p.holds; });

    Json cert = nullptr;
    if (s.d >= 3) {
        try {
            auto c = dist_certificate(s, K);
            cert = Json::object();
            cert["K"] = c.K;
            cert["dist"] = c.dist;
            cert["lifted_target"] = to_json(c.lifted_target);
            cert["free_space"] = to_json(c.free_space);
            cert["premises"] = premises_json(c.premises);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoCertificate)
                throw;
            out.result["certificate_error"] = e.what();
        }
    }
    out.result["certificate"] = cert;

    auto inst = s.instance(scaled(s.g.point(), K), "sylvester-d" + std::to_string(s.d));
    Json prov;
    prov["command"] = "lower-bound";
    prov["d"] = s.d;
    prov["epsilon"] = to_json(s.epsilon);
    prov["K"] = K;
    out.result["instance_file"] = instance_json(inst, prov);
    if (!emit.empty()) {
        std::ofstream f(emit);
        if (!f)
            fail(ErrorKind::InvalidInput, "cannot write '" + emit + "'");
        f << serialize_instance(inst, prov);
    }
    if (g.oracle && !cert.is_null())
        attach_oracle(out, "lifted-vertex-distance", [&] {
            auto V = hull_vertices(inst, {}, g.limits);
            auto r = vertex_distance(inst, V, K, g.limits);
            return std::make_pair(r.value == K, Json{{"dist", r.value}});
        });
    if (s.d < 3 || !all_hold)
        out.code = 2;
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact integer-cone and bin packing analysis for knapsack polytopes"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    std::uint64_t threads = 1;
    app.add_option("--threads", threads, "Worker threads")->envname("VERTEXCONE_THREADS")->check(CLI::Range(1, 256));
    app.add_option("--config-cap", g.limits.config_cap, "Maximum configurations enumerated");
    app.add_option("--node-cap", g.limits.node_cap, "Maximum search nodes");
    app.add_option("--box-cap", g.limits.box_cap, "Maximum dynamic-programming cells");
    app.add_option("--time-cap", g.time_cap_seconds, "Wall-clock budget in seconds");
    app.add_flag("--pretty", g.pretty, "Human-readable table instead of JSON");
    app.add_flag("--oracle", g.oracle, "Also run the brute-force counterpart and compare");
    app.add_flag("--timing", g.timing, "Include wall-clock timing in the report");

    std::function<Outcome()> run;
    std::string command;
    auto sub = [&](const std::string& name, const std::string& help) {
        auto* s = app.add_subcommand(name, help);
        s->callback([&command, name] { command = name; });
        return s;
    };

    // Shared option storage.
    std::string file, gamma_text, basis_text, coords_text, weights_file, denominators_text, point_text, mode = "incremental";
    std::optional<std::int64_t> K_opt, K_max_opt, cap_opt, weight_opt, bins_opt;
    std::int64_t Z = 1, d = 3, bound = 100'000;
    std::optional<std::string> epsilon_text;
    std::string lb_mode = "construct", emit;
    bool no_fast_path = false, bounded = false, count_only = false, relax_last = false;

    auto load = [&] { return read_instance(file).instance; };
    auto load_weights = [&](const Instance& inst) -> std::optional<Weights> {
        if (weights_file.empty())
            return std::nullopt;
        std::ifstream in(weights_file);
        if (!in)
            fail(ErrorKind::Parse, "cannot open '" + weights_file + "'");
        Json j;
        try {
            j = Json::parse(in);
        } catch (const Json::parse_error& e) {
            fail(ErrorKind::Parse, e.what());
        }
        if (j.is_object() && j.contains("weights"))
            j = j["weights"];
        return weights_from_json(j, inst.dimension());
    };
    // Barycentric coordinates from --coords, or from --gamma in an instance.
    auto coords = [&]() -> SimplexCoords {
        if (!coords_text.empty())
            return SimplexCoords{parse_rational_list(coords_text), {}};
        if (file.empty() || gamma_text.empty())
            fail(ErrorKind::InvalidInput, "give --coords, or an instance with --gamma");
        auto inst = load();
        auto gamma = parse_point(gamma_text);
        auto basis = parse_basis(basis_text);
        if (basis.empty())
            basis = containing_simplex(gamma, hull_vertices(inst, {}, g.limits), g.limits);
        return barycentric(gamma, basis);
    };
    auto denominators = [&] { return parse_integer_list(denominators_text); };

    {
        auto* s = sub("vertices", "Vertices of the integer hull");
        s->add_option("instance", file)->required();
        s->add_option("--mode", mode, "incremental or direct")->check(CLI::IsMember({"incremental", "direct"}));
        s->add_flag("--no-fast-path", no_fast_path, "Skip the unit-fraction shortcut");
    }
    {
        auto* s = sub("configs", "Enumerate configurations");
        s->add_option("instance", file)->required();
        s->add_flag("--bounded", bounded, "Only configurations p <= b");
        s->add_flag("--count-only", count_only, "Print only the number of configurations");
    }
    {
        auto* s = sub("group", "Parallelepiped group of unit-fraction denominators");
        s->add_option("denominators", denominators_text)->required();
        s->add_option("--element", point_text, "Report Size and index of this element");
        s->add_option("--residue-of", gamma_text, "Residue [b] of a vector");
    }
    {
        auto* s = sub("generator", "Full generator of the group");
        s->add_option("denominators", denominators_text)->required();
    }
    {
        auto* s = sub("orbit", "Orbit [K p] for K = 1..K-max");
        s->add_option("denominators", denominators_text)->required();
        s->add_option("--point", point_text, "Defaults to the full generator");
        s->add_option("--K-max", K_max_opt, "Default 10");
    }
    {
        auto* s = sub("level", "Level and jumps of K x");
        s->add_option("instance", file);
        s->add_option("--coords", coords_text, "Barycentric coordinates");
        s->add_option("--gamma", gamma_text, "Configuration inside the instance");
        s->add_option("--basis", basis_text, "Simplex vertices, ';'-separated");
        s->add_option("--K", K_opt, "Multiplicity, default 1");
        s->add_option("--K-max", K_max_opt, "Check the level recurrence up to here");
    }
    {
        auto* s = sub("find-k", "Smallest K >= 2 with Level(K x) <= 1");
        s->add_option("instance", file);
        s->add_option("--coords", coords_text);
        s->add_option("--gamma", gamma_text);
        s->add_option("--basis", basis_text);
        s->add_option("--cap", cap_opt, "Largest K tried, default the common denominator");
    }
    {
        auto* s = sub("shift", "Shift K copies of gamma onto its simplex");
        s->add_option("instance", file)->required();
        s->add_option("--gamma", gamma_text)->required();
        s->add_option("--basis", basis_text);
        s->add_option("--weights", weights_file, "JSON weights; default {gamma: weight}");
        s->add_option("--weight", weight_opt, "Weight on gamma, default K");
    }
    {
        auto* s = sub("reduce-support", "Parity-midpoint support reduction");
        s->add_option("instance", file)->required();
        s->add_option("--weights", weights_file, "Default: b as unit vectors");
    }
    {
        auto* s = sub("decompose", "Structure decomposition with support bounds");
        s->add_option("instance", file)->required();
        s->add_option("--weights", weights_file, "Start decomposition, default b as unit vectors");
    }
    {
        auto* s = sub("dist", "Exact vertex distance");
        s->add_option("instance", file)->required();
        s->add_option("--bins", bins_opt, "Lifted formulation with exactly this many bins");
    }
    sub("solve", "Exact bin packing optimum")->add_option("instance", file)->required();
    sub("lp", "Exact configuration LP")->add_option("instance", file)->required();
    sub("gap", "Integrality gap, IRUP and MIRUP")->add_option("instance", file)->required();
    {
        auto* s = sub("irup-family", "Residue instances [(d+1) gamma] .. [(d+Z) gamma]");
        s->add_option("instance", file)->required();
        s->add_option("--gamma", gamma_text)->required();
        s->add_option("--Z", Z)->check(CLI::NonNegativeNumber);
    }
    {
        auto* s = sub("lower-bound", "Sylvester-window instance and Dist certificate");
        s->add_option("--d", d)->required();
        s->add_option("--epsilon", epsilon_text, "Default 1/((S_d-1)^2+1)");
        s->add_option("--mode", lb_mode)->check(CLI::IsMember({"construct", "search"}));
        s->add_option("--bound", bound, "Determinant bound in search mode");
        s->add_option("--K", K_opt, "Certificate multiplicity, default S_d - 2");
        s->add_flag("--relax-last-window", relax_last);
        s->add_option("--emit", emit, "Write the lifted instance file here");
    }
    {
        auto* s = sub("search-instance", "Least-determinant instance with long-run generator");
        s->add_option("--d", d)->required();
        s->add_option("--epsilon", epsilon_text);
        s->add_option("--bound", bound);
    }
    sub("verify", "Run every solver on an instance against its oracle")->add_option("instance", file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? 0 : 2;
    }
    g.limits.threads = static_cast<unsigned>(threads);
    if (g.time_cap_seconds)
        g.limits.time_cap = std::chrono::milliseconds(static_cast<std::int64_t>(*g.time_cap_seconds * 1000));
    const Limits& L = g.limits;
    auto epsilon = [&] { return epsilon_text ? Rational::parse(*epsilon_text) : default_epsilon(d); };

    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        if (command == "vertices") {
            auto inst = load();
            HullOptions opt{mode == "direct" ? HullMode::Direct : HullMode::Incremental, !no_fast_path};
            auto res = hull_vertices_ex(inst, opt, L);
            out.result["count"] = res.vertices.size();
            out.result["vertices"] = to_json(res.vertices.vertices);
            out.result["fast_path"] = res.fast_path;
            out.result["facets"] = res.facets.size();
            if (g.oracle)
                attach_oracle(out, "caratheodory", [&] {
                    auto o = oracle::hull_vertices(inst, L);
                    return std::make_pair(o == res.vertices.vertices, Json(nullptr));
                });
        } else if (command == "configs") {
            auto inst = load();
            Point upper = bounded ? inst.multiplicities() : unbounded_box(inst.row());
            out.result["count"] = count_configs(inst, upper);
            if (!count_only)
                out.result["configs"] = to_json(enumerate_configs(inst, upper, L));
        } else if (command == "group") {
            DiagonalBasis basis(denominators());
            out.result["denominators"] = to_json(basis.denominators());
            out.result["order"] = to_json(basis.determinant());
            out.result["cofactors"] = to_json(basis.cofactors());
            out.result["coprime"] = basis.coprime();
            if (!point_text.empty()) {
                GroupElement e{};
                for (auto v : parse_point(point_text))
                    e.residues.push_back(big(v));
                check_element(e, basis);
                Json j;
                j["element"] = to_json(e);
                j["size"] = to_json(size_of(e, basis));
                j["inverse"] = to_json(group_inverse(e, basis));
                if (basis.coprime())
                    j["fractional_index"] = to_json(fractional_size_index(e, basis));
                out.result["element"] = std::move(j);
            }
            if (!gamma_text.empty()) {
                auto b = parse_integer_list(gamma_text);
                out.result["residue"] = to_json(residue_map(b, basis));
                out.result["quotients"] = to_json(vertex_quotients(b, basis));
            }
            if (g.oracle)
                attach_oracle(out, "parallelepiped-count", [&] {
                    std::vector<Point> cols;
                    for (std::size_t i = 0; i < basis.dimension(); ++i) {
                        Point c(basis.dimension(), 0);
                        c[i] = to_int64(basis.denominators()[i]);
                        cols.push_back(c);
                    }
                    if (basis.determinant() > BigInt(static_cast<unsigned long>(L.box_cap)))
                        fail(ErrorKind::ResourceLimit, "group larger than box cap");
                    auto n = oracle::parallelepiped_points(cols);
                    return std::make_pair(BigInt(static_cast<unsigned long>(n)) == basis.determinant(),
                                          Json{{"count", n}});
                });
        } else if (command == "generator") {
            DiagonalBasis basis(denominators());
            auto gen = full_generator(basis);
            out.result["denominators"] = to_json(basis.denominators());
            out.result["determinant"] = to_json(basis.determinant());
            out.result["cofactors"] = to_json(basis.cofactors());
            out.result["g"] = to_json(gen);
            out.result["size"] = to_json(size_of(gen, basis));
            std::vector<BigInt> congr;
            for (std::size_t i = 0; i < basis.dimension(); ++i)
                congr.push_back(mod(gen.residues[i] * basis.cofactors()[i], basis.denominators()[i]));
            out.result["g_times_R_mod_a"] = to_json(congr);
            if (g.oracle)
                attach_oracle(out, "scan", [&] {
                    auto o = oracle::generator_by_scan(basis);
                    return std::make_pair(o && *o == gen, o ? to_json(*o) : Json(nullptr));
                });
        } else if (command == "orbit") {
            DiagonalBasis basis(denominators());
            Point p = point_text.empty() ? full_generator(basis).point() : parse_point(point_text);
            const std::int64_t n = K_max_opt.value_or(10);
            out.result["point"] = p;
            Json list = Json::array();
            for (std::int64_t K = 1; K <= n; ++K) {
                auto e = orbit_of(p, big(K), basis);
                Rational s = size_of(e, basis);
                list.push_back(Json{{"K", K}, {"element", to_json(e)}, {"size", to_json(s)}, {"configuration", s <= Rational(1)}});
            }
            out.result["orbit"] = std::move(list);
        } else if (command == "level") {
            auto x = coords();
            const std::int64_t K = K_opt.value_or(1);
            auto prof = level_profile(x.coords, K);
            if (!x.basis.empty())
                out.result["simplex"] = coords_json(x);
            out.result["coords"] = to_json(x.coords);
            out.result["K"] = K;
            out.result["level"] = prof.level;
            Json jumps = Json::array(), ceil_jumps = Json::array();
            if (K >= 2) {
                for (auto i : jumps_at(x.coords, K))
                    jumps.push_back(i);
                for (auto i : jumps_at_ceiling(x.coords, K))
                    ceil_jumps.push_back(i);
            }
            out.result["jumps"] = std::move(jumps);
            out.result["jumps_ceiling_rule"] = std::move(ceil_jumps);
            if (K_max_opt) {
                auto w = check_level_recurrence(x.coords, *K_max_opt, JumpRule::Wrap);
                auto c = check_level_recurrence(x.coords, *K_max_opt, JumpRule::Ceiling);
                out.result["recurrence"] = Json{{"K_max", *K_max_opt},
                                                {"wrap", {{"holds", w.holds}, {"first_failure", w.first_failure}}},
                                                {"ceiling", {{"holds", c.holds}, {"first_failure", c.first_failure}}}};
            }
        } else if (command == "find-k") {
            auto x = coords();
            const std::int64_t cap = cap_opt.value_or(default_shift_cap(x.coords));
            const std::int64_t K = find_shift_multiplicity(x.coords, cap);
            if (!x.basis.empty())
                out.result["simplex"] = coords_json(x);
            out.result["coords"] = to_json(x.coords);
            out.result["cap"] = cap;
            out.result["K"] = K;
            out.result["level"] = level(x.coords, K);
        } else if (command == "shift") {
            auto inst = load();
            auto V = hull_vertices(inst, {}, L);
            auto gamma = parse_point(gamma_text);
            auto basis = parse_basis(basis_text);
            if (basis.empty())
                basis = containing_simplex(gamma, V, L);
            Weights lambda(inst.dimension());
            if (auto w = load_weights(inst))
                lambda = *w;
            else
                lambda.add(gamma, weight_opt.value_or(find_shift_multiplicity(barycentric(gamma, basis).coords)));
            auto r = shift_weight(lambda, gamma, V, basis);
            out.result["gamma"] = gamma;
            out.result["simplex"] = coords_json(r.decomposition.coords);
            out.result["K"] = r.K;
            out.result["level"] = r.decomposition.level;
            out.result["delta"] = r.decomposition.delta;
            out.result["Lambda"] = r.decomposition.Lambda;
            out.result["before"] = to_json(lambda, &V);
            out.result["after"] = to_json(r.weights, &V);
            out.result["target_preserved"] = r.weights.target() == lambda.target();
        } else if (command == "reduce-support") {
            auto inst = load();
            auto V = hull_vertices(inst, {}, L);
            Weights lambda = load_weights(inst).value_or(unit_decomposition(inst));
            auto r = support_reduce(lambda, V, L);
            out.result["before"] = to_json(lambda, &V);
            out.result["after"] = to_json(r.weights, &V);
            out.result["reduced"] = r.reduced;
            out.result["exchanges"] = r.exchanges;
            out.result["bins_before"] = lambda.total();
            out.result["bins_after"] = r.weights.total();
        } else if (command == "decompose") {
            auto inst = load();
            auto V = hull_vertices(inst, {}, L);
            auto rep = structure_decompose(inst, V, load_weights(inst), L);
            const auto dd = static_cast<std::int64_t>(inst.dimension());
            out.result["weights"] = to_json(rep.weights, &V);
            Json blocks = Json::array();
            for (const auto& b : rep.blocks) {
                Json e;
                e["basis"] = to_json(b.basis);
                Json entries = Json::array();
                for (const auto& s : b.entries)
                    entries.push_back(Json{{"gamma", s.gamma}, {"weight", s.weight}, {"K", s.K}});
                e["entries"] = std::move(entries);
                blocks.push_back(std::move(e));
            }
            out.result["blocks"] = std::move(blocks);
            out.result["non_vertex_mass"] = rep.non_vertex_mass;
            out.result["initial_non_vertex_mass"] = rep.initial_non_vertex_mass;
            out.result["vertex_support"] = rep.vertex_support;
            out.result["vertex_support_bound"] = dd << dd;
            out.result["non_vertex_support"] = rep.non_vertex_support;
            out.result["non_vertex_support_bound"] = std::int64_t{1} << (2 * dd);
            out.result["shifts"] = rep.shifts;
            out.result["merges"] = rep.merges;
            out.result["support_reduced"] = rep.support_reduced;
            if (g.oracle)
                attach_oracle(out, "exact-vertex-distance", [&] {
                    auto dist = vertex_distance(inst, V, std::nullopt, L).value;
                    bool ok = rep.weights.target() == inst.multiplicities() && rep.non_vertex_mass >= dist &&
                              static_cast<std::int64_t>(rep.vertex_support) <= (dd << dd) &&
                              static_cast<std::int64_t>(rep.non_vertex_support) <= (std::int64_t{1} << (2 * dd));
                    return std::make_pair(ok, Json{{"dist", dist}});
                });
        } else if (command == "dist") {
            auto inst = load();
            auto V = hull_vertices(inst, {}, L);
            auto r = vertex_distance(inst, V, bins_opt, L);
            out.result["dist"] = r.value;
            out.result["bins"] = bins_opt ? Json(*bins_opt) : Json(nullptr);
            out.result["witness"] = to_json(r.witness, &V);
            if (g.oracle)
                attach_oracle(out, "iterative-deepening", [&] {
                    auto o = oracle::dist_by_deepening(inst, V, bins_opt, L);
                    return std::make_pair(o == r.value, Json{{"dist", o}});
                });
        } else if (command == "solve") {
            auto inst = load();
            auto p = solve_ilp(inst, L);
            out.result["bins"] = p.bins;
            out.result["lp_bound"] = p.lp_bound;
            out.result["packing"] = to_json(p.weights);
            if (g.oracle)
                attach_oracle(out, "set-partitions", [&] {
                    auto o = oracle::ilp_by_partition(inst);
                    return std::make_pair(o == p.bins, Json{{"bins", o}});
                });
        } else if (command == "lp") {
            auto inst = load();
            auto lp = solve_lp(inst, L);
            out.result = lp_json(lp);
            out.result["certificate_verified"] = verify_lp_certificate(inst, lp, L);
            if (!out.result["certificate_verified"].get<bool>())
                out.code = 1;
            if (g.oracle)
                attach_oracle(out, "basic-solutions", [&] {
                    auto o = oracle::lp_by_basic_solutions(inst, L);
                    return std::make_pair(o == lp.value, Json{{"value", to_json(o)}});
                });
        } else if (command == "gap") {
            auto inst = load();
            auto rep = gap_report(inst, L);
            out.result = gap_json(rep);
            if (g.oracle)
                attach_oracle(out, "set-partitions+basic-solutions", [&] {
                    auto ilp = oracle::ilp_by_partition(inst);
                    auto lp = oracle::lp_by_basic_solutions(inst, L);
                    return std::make_pair(ilp == rep.ilp_opt && lp == rep.lp_opt,
                                          Json{{"ilp_opt", ilp}, {"lp_opt", to_json(lp)}});
                });
        } else if (command == "irup-family") {
            auto inst = load();
            auto V = hull_vertices(inst, {}, L);
            auto gamma = parse_point(gamma_text);
            auto f = irup_family(inst, gamma, Z, V, L);
            Json members = Json::array();
            for (const auto& m : f.members) {
                Json e;
                e["K"] = m.K;
                e["residue"] = m.residue;
                e["status"] = m.status;
                e["report"] = m.report ? gap_json(*m.report) : Json(nullptr);
                members.push_back(std::move(e));
            }
            out.result["gamma"] = gamma;
            out.result["members"] = std::move(members);
            out.result["residues_distinct"] = f.residues_distinct;
            out.result["complete"] = f.complete;
            out.result["divergence"] = f.divergence;
            if (!f.complete)
                out.code = 3;
        } else if (command == "lower-bound") {
            if (d < 1)
                fail(ErrorKind::InvalidInput, "d must be >= 1");
            std::optional<SylvesterInstance> s;
            if (lb_mode == "construct") {
                s = construct_sylvester_instance(d, epsilon(), !relax_last);
            } else {
                s = search_min_instance(d, epsilon(), bound, L);
            }
            out.result["mode"] = lb_mode;
            if (!s) {
                out.result["found"] = false;
                out.result["bound"] = bound;
                if (d < 3) {
                    out.result["premises"] = premises_json({{"d-at-least-3", false, std::to_string(d)}});
                    out.code = 2;
                }
            } else {
                auto r = lower_bound_report(*s, K_opt, g, emit);
                out.result["found"] = true;
                for (auto& [k, v] : r.result.items())
                    out.result[k] = v;
                out.code = r.code;
            }
        } else if (command == "search-instance") {
            auto s = search_min_instance(d, epsilon(), bound, L);
            out.result["d"] = d;
            out.result["epsilon"] = to_json(epsilon());
            out.result["bound"] = bound;
            out.result["found"] = s.has_value();
            if (s) {
                out.result["instance"] = sylvester_json(*s);
                out.result["premises"] = premises_json(s->premises);
                out.result["long_run"] = check_long_run(s->g, s->a, s->epsilon);
                if (size_of(s->g, s->basis()) <= Rational(1))
                    out.result["unique_up_to_S_d_minus_2"] = check_uniqueness(*s).unique;
            }
        } else if (command == "verify") {
            auto inst = load();
            Json checks = Json::array();
            bool all = true;
            auto check = [&](const std::string& name, auto f) {
                Json c;
                c["name"] = name;
                try {
                    auto [ok, detail] = f();
                    c["ok"] = ok;
                    if (!detail.is_null())
                        c["detail"] = detail;
                    all = all && ok;
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::ResourceLimit)
                        throw;
                    c["ok"] = nullptr;
                    c["status"] = e.what();
                    merge_code(out.code, 3);
                }
                checks.push_back(std::move(c));
            };
            auto V = hull_vertices(inst, {}, L);
            std::int64_t items = 0;
            for (auto v : inst.multiplicities())
                items += v;
            check("vertices", [&] {
                auto o = oracle::hull_vertices(inst, L);
                return std::make_pair(o == V.vertices, Json{{"count", V.size()}});
            });
            auto lp = solve_lp(inst, L);
            check("lp-certificate", [&] { return std::make_pair(verify_lp_certificate(inst, lp, L), Json(to_json(lp.value))); });
            check("lp", [&] {
                auto o = oracle::lp_by_basic_solutions(inst, L);
                return std::make_pair(o == lp.value, Json(to_json(o)));
            });
            if (items <= 12)
                check("ilp", [&] {
                    auto p = solve_ilp(inst, L);
                    auto o = oracle::ilp_by_partition(inst);
                    return std::make_pair(o == p.bins, Json(p.bins));
                });
            check("dist", [&] {
                auto r = vertex_distance(inst, V, std::nullopt, L);
                auto o = oracle::dist_by_deepening(inst, V, std::nullopt, L);
                bool cone = in_vertex_cone(inst.multiplicities(), V, L);
                return std::make_pair(o == r.value && (r.value == 0) == cone, Json(r.value));
            });
            check("decompose", [&] {
                auto rep = structure_decompose(inst, V, std::nullopt, L);
                auto dist = vertex_distance(inst, V, std::nullopt, L).value;
                const auto dd = static_cast<std::int64_t>(inst.dimension());
                bool ok = rep.weights.target() == inst.multiplicities() && rep.non_vertex_mass >= dist &&
                          static_cast<std::int64_t>(rep.vertex_support) <= (dd << dd) &&
                          static_cast<std::int64_t>(rep.non_vertex_support) <= (std::int64_t{1} << (2 * dd));
                return std::make_pair(ok, Json(rep.non_vertex_mass));
            });
            if (inst.is_unit_fraction()) {
                auto basis = DiagonalBasis::of(inst);
                bool small = std::all_of(basis.denominators().begin(), basis.denominators().end(),
                                         [](const BigInt& a) { return a >= 2; });
                if (basis.coprime() && small && basis.determinant() <= BigInt(static_cast<unsigned long>(L.box_cap)))
                    check("generator", [&] {
                        auto o = oracle::generator_by_scan(basis);
                        return std::make_pair(o && *o == full_generator(basis), Json(nullptr));
                    });
            }
            out.result["checks"] = std::move(checks);
            out.result["all_ok"] = all;
            if (!all)
                merge_code(out.code, 1);
        }
    } catch (const Error& e) {
        std::cerr << "vertexcone: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "vertexcone: " << e.what() << "\n";
        return 2;
    }

    Json report;
    report["command"] = command;
    Json args = Json::array();
    for (int i = 1; i < argc; ++i)
        args.push_back(argv[i]);
    report["arguments"] = std::move(args);
    report["limits"] = limits_json(g);
    report["result"] = std::move(out.result);
    if (g.timing)
        report["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (g.pretty)
        std::cout << pretty_table(report);
    else
    {
        std::string text;
        render(report, 0, text);
        std::cout << text << "\n";
    }
    return out.code;
}
