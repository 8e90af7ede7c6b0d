#pragma once

// JSON instance/result/family files and a DIMACS edge-list reader.

#include "isr/covering.hpp"
#include "isr/errors.hpp"
#include "isr/gadgets.hpp"
#include "isr/graph.hpp"
#include "isr/result.hpp"

#include <json.hpp>

#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace isr {

using Json = nlohmann::ordered_json;

/// An instance as stored on disk; `meta` is carried through untouched.
struct InstanceFile {
    Instance instance;
    Json meta;
    std::optional<std::vector<int>> colors;
};

namespace detail {

inline const Json& field(const Json& j, const char* name)
{
    if (!j.is_object())
        throw InputError("expected a JSON object");
    auto it = j.find(name);
    if (it == j.end())
        throw InputError(std::string("missing field '") + name + "'");
    return *it;
}

template <class T>
T field_as(const Json& j, const char* name)
{
    try {
        return field(j, name).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("field '") + name + "': " + e.what());
    }
}

inline std::size_t count_field(const Json& j, const char* name)
{
    const Json& v = field(j, name);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw InputError(std::string("field '") + name + "' must be a nonnegative integer");
    return v.get<std::size_t>();
}

inline VertexSet set_field(const Json& j, const char* name)
{
    return VertexSet(field_as<std::vector<Vertex>>(j, name));
}

inline Json to_json(const VertexSet& s) { return Json(s.members()); }

inline Graph graph_from_json(const Json& j)
{
    const std::size_t n = count_field(j, "n");
    std::vector<Edge> edges;
    const Json& arr = field(j, "edges");
    if (!arr.is_array())
        throw InputError("field 'edges' must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const Json& e = arr[i];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw InputError("edges[" + std::to_string(i) + "] must be a pair of integers");
        edges.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
    }
    return Graph(n, edges);
}

inline Json graph_to_json(const Graph& g)
{
    Json edges = Json::array();
    for (auto [u, v] : g.edges())
        edges.push_back({u, v});
    return Json{{"n", g.vertex_count()}, {"edges", std::move(edges)}};
}

} // namespace detail

inline Json parse_json(std::istream& in)
{
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

inline InstanceFile instance_from_json(const Json& j)
{
    Graph g = detail::graph_from_json(j);
    VertexSet s = detail::set_field(j, "s");
    VertexSet t = detail::set_field(j, "t");
    const std::size_t k = detail::count_field(j, "k");
    const std::size_t ell = detail::count_field(j, "ell");
    std::optional<VertexSet> modulator;
    if (j.contains("modulator") && !j.at("modulator").is_null())
        modulator = detail::set_field(j, "modulator");
    InstanceFile file{Instance(std::move(g), std::move(s), std::move(t), k, ell, std::move(modulator)),
        j.value("meta", Json()), std::nullopt};
    if (j.contains("colors"))
        file.colors = detail::field_as<std::vector<int>>(j, "colors");
    return file;
}

inline Json instance_to_json(const Instance& inst, const Json& meta = Json(),
    const std::optional<std::vector<int>>& colors = std::nullopt)
{
    Json j = detail::graph_to_json(inst.graph());
    j["s"] = detail::to_json(inst.source());
    j["t"] = detail::to_json(inst.target());
    j["k"] = inst.k();
    j["ell"] = inst.ell();
    if (inst.modulator())
        j["modulator"] = detail::to_json(*inst.modulator());
    if (colors)
        j["colors"] = *colors;
    if (!meta.is_null())
        j["meta"] = meta;
    return j;
}

/// A bare graph, optionally colored: {"n", "edges", "colors"?}.
inline MulticoloredGraph colored_graph_from_json(const Json& j)
{
    MulticoloredGraph mc{detail::graph_from_json(j), {}};
    if (j.contains("colors"))
        mc.colors = detail::field_as<std::vector<int>>(j, "colors");
    return mc;
}

/// DIMACS edge format: "c" comments, one "p edge n m" line, "e u v" with 1-based ids.
inline Graph read_dimacs(std::istream& in)
{
    std::string line;
    std::optional<std::size_t> n;
    std::vector<Edge> edges;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag == "c")
            continue;
        auto bad = [&](const std::string& why) {
            return InputError("line " + std::to_string(lineno) + ": " + why);
        };
        if (tag == "p") {
            std::string fmt;
            std::size_t nn = 0, m = 0;
            if (!(ls >> fmt >> nn >> m) || (fmt != "edge" && fmt != "col"))
                throw bad("expected 'p edge <n> <m>'");
            if (n)
                throw bad("duplicate problem line");
            n = nn;
        } else if (tag == "e") {
            long long u = 0, v = 0;
            if (!n)
                throw bad("edge before problem line");
            if (!(ls >> u >> v))
                throw bad("expected 'e <u> <v>'");
            if (u < 1 || v < 1 || static_cast<std::size_t>(u) > *n || static_cast<std::size_t>(v) > *n)
                throw bad("vertex outside 1.." + std::to_string(*n));
            edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
        } else {
            throw bad("unknown line type '" + tag + "'");
        }
    }
    if (!n)
        throw InputError("missing problem line");
    return Graph(*n, edges);
}

inline Json sequence_to_json(const ReconfigSequence& seq)
{
    Json arr = Json::array();
    for (const VertexSet& s : seq.steps)
        arr.push_back(detail::to_json(s));
    return arr;
}

inline ReconfigSequence sequence_from_json(const Json& j)
{
    if (!j.is_array())
        throw InputError("sequence must be an array of vertex arrays");
    ReconfigSequence seq;
    for (const Json& step : j) {
        try {
            seq.steps.emplace_back(step.get<std::vector<Vertex>>());
        } catch (const nlohmann::json::exception& e) {
            throw InputError(std::string("sequence step: ") + e.what());
        }
    }
    return seq;
}

/// Extra fields for a result file; wall time is only written when requested.
struct ResultExtras {
    std::optional<std::uint64_t> seed;
    std::optional<double> wall_ms;
};

inline Json result_to_json(const SolveResult& r, const ResultExtras& extras = {})
{
    Json j;
    j["answer"] = to_string(r.answer);
    if (r.sequence) {
        j["length"] = r.sequence->length();
        j["sequence"] = sequence_to_json(*r.sequence);
    }
    Json stats{{"guesses", r.stats.guesses}, {"frontier_peak", r.stats.frontier_peak},
        {"nodes_expanded", r.stats.nodes_expanded}, {"trials", r.stats.trials},
        {"family_size", r.stats.family_size}, {"meta_path_length", r.stats.meta_path_length}};
    if (extras.seed)
        stats["seed"] = *extras.seed;
    if (extras.wall_ms)
        stats["wall_time_ms"] = *extras.wall_ms;
    j["stats"] = std::move(stats);
    if (!r.warning.empty())
        j["warning"] = r.warning;
    return j;
}

inline Json family_to_json(const CoveringFamily& fam)
{
    Json arr = Json::array();
    for (const VertexSet& s : fam.sets)
        arr.push_back(detail::to_json(s));
    return arr;
}

inline CoveringFamily family_from_json(const Json& j, std::size_t k)
{
    if (!j.is_array())
        throw InputError("family must be an array of vertex arrays");
    CoveringFamily fam{{}, k};
    for (std::size_t i = 0; i < j.size(); ++i) {
        try {
            fam.sets.emplace_back(j[i].get<std::vector<Vertex>>());
        } catch (const nlohmann::json::exception& e) {
            throw InputError("family[" + std::to_string(i) + "]: " + e.what());
        }
    }
    fam.normalize();
    return fam;
}

inline Json layout_to_json(const GadgetLayout& layout)
{
    Json roles = Json::array();
    for (Role r : layout.roles)
        roles.push_back(to_string(r));
    Json origin = Json::array();
    for (auto [u, v] : layout.e_origin)
        origin.push_back({u, v});
    Json j{{"k", layout.k}, {"n", layout.n}, {"roles", std::move(roles)}, {"e_origin", std::move(origin)}};
    if (!layout.parts.empty()) {
        Json parts = Json::array();
        for (auto [a, b] : layout.parts)
            parts.push_back({a, b});
        j["parts"] = std::move(parts);
        j["e_part"] = layout.e_part;
    }
    return j;
}

} // namespace isr
