#pragma once

// The two 2-degenerate hardness constructions: a TSO instance from multicolored
// clique and a TJO instance from clique, with the explicit optimal witnesses
// for a known clique.

#include "isr/errors.hpp"
#include "isr/graph.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace isr {

struct MulticoloredGraph {
    Graph graph;
    std::vector<int> colors; // one color in [0, k) per vertex
};

enum class Role : std::uint8_t {
    v,
    z,
    e,
    x,
    y,
    u1,
    u2,
    l,
    r,
    n_l,
    n_r,
    path, // subdivision vertex next to X, Y or E on a connector
};

inline const char* to_string(Role r)
{
    switch (r) {
    case Role::v:
        return "V";
    case Role::z:
        return "Z";
    case Role::e:
        return "E";
    case Role::x:
        return "X";
    case Role::y:
        return "Y";
    case Role::u1:
        return "U1";
    case Role::u2:
        return "U2";
    case Role::l:
        return "L";
    case Role::r:
        return "R";
    case Role::n_l:
        return "N(L)";
    case Role::n_r:
        return "N(R)";
    case Role::path:
        return "path";
    }
    return "?";
}

/// A TSO connector x - a1 - a2 - a3 - e (or y - c1 - c2 - c3 - e); a2 is the U vertex.
struct Connector {
    Vertex end;  // the X or Y vertex
    Vertex near; // a1
    Vertex mid;  // a2, in U
    Vertex far;  // a3
    Vertex e;
};

/// A subdivided biclique edge l - nl - nr - r.
struct BicliquePath {
    Vertex l, nl, nr, r;
};

struct GadgetLayout {
    std::vector<Role> roles;
    std::size_t k = 0;
    std::size_t n = 0;                     // source graph vertices; V = 0..n-1, Z = n..2n-1
    std::vector<Edge> e_origin;            // e_origin[i]: source edge behind the i-th E vertex
    std::vector<int> e_part;               // TSO only: label of the E_ij part of each E vertex
    std::vector<std::pair<int, int>> parts; // TSO only: color pair (i, j), i < j, per label
    std::vector<Vertex> x, y;              // TSO
    std::vector<Connector> x_paths, y_paths;
    std::vector<Vertex> l, r;              // TJO
    std::vector<BicliquePath> biclique;

    [[nodiscard]] Vertex v_vertex(Vertex v) const { return v; }
    [[nodiscard]] Vertex z_vertex(Vertex v) const { return static_cast<Vertex>(n) + v; }
    [[nodiscard]] Vertex e_vertex(std::size_t i) const { return static_cast<Vertex>(2 * n + i); }

    [[nodiscard]] std::optional<Vertex> e_vertex_of(Vertex a, Vertex b) const
    {
        const Edge key{std::min(a, b), std::max(a, b)};
        for (std::size_t i = 0; i < e_origin.size(); ++i)
            if (e_origin[i] == key)
                return e_vertex(i);
        return std::nullopt;
    }
};

struct Gadget {
    Instance instance;
    GadgetLayout layout;
};

inline std::size_t choose2(std::size_t k) { return k * (k - 1) / 2; }

inline std::size_t tso_length(std::size_t k) { return 8 * choose2(k) + 2 * k; }

inline std::size_t tjo_length(std::size_t k) { return 2 * choose2(k) + choose2(k) * choose2(k) + 2 * k; }

namespace detail {

struct GadgetBuilder {
    std::vector<Role> roles;
    std::vector<Edge> edges;

    Vertex add(Role r)
    {
        roles.push_back(r);
        return static_cast<Vertex>(roles.size() - 1);
    }

    void link(Vertex a, Vertex b) { edges.emplace_back(a, b); }

    /// V, Z and one E vertex per source edge, in that id order.
    void base(const Graph& g, GadgetLayout& layout)
    {
        const std::size_t n = g.vertex_count();
        layout.n = n;
        for (std::size_t v = 0; v < n; ++v)
            add(Role::v);
        for (std::size_t v = 0; v < n; ++v)
            link(static_cast<Vertex>(v), add(Role::z));
        for (const Edge& uv : g.edges()) {
            const Vertex e = add(Role::e);
            link(uv.first, e);
            link(uv.second, e);
            layout.e_origin.push_back(uv);
        }
    }
};

inline VertexSet tagged(const std::vector<Role>& roles, std::initializer_list<Role> wanted)
{
    std::vector<Vertex> out;
    for (std::size_t v = 0; v < roles.size(); ++v)
        for (Role r : wanted)
            if (roles[v] == r)
                out.push_back(static_cast<Vertex>(v));
    return VertexSet::from_sorted(std::move(out));
}

} // namespace detail

inline void require_proper_coloring(const MulticoloredGraph& mc, std::size_t k)
{
    if (mc.colors.size() != mc.graph.vertex_count())
        throw InputError("expected one color per vertex");
    for (int c : mc.colors)
        if (c < 0 || static_cast<std::size_t>(c) >= k)
            throw InputError("color " + std::to_string(c) + " outside 0.." + std::to_string(k - 1));
    for (auto [u, v] : mc.graph.edges())
        if (mc.colors[u] == mc.colors[v])
            throw InputError("edge {" + std::to_string(u) + "," + std::to_string(v) + "} joins two vertices of color "
                + std::to_string(mc.colors[u]));
}

/// Sliding gadget. Ids: V, Z, E, X, Y, then connector paths (all X paths by E
/// vertex, then all Y paths). Instance k is the token count |S|.
inline Gadget gen_tso_gadget(const MulticoloredGraph& mc, std::size_t k)
{
    if (k < 2)
        throw InputError("gadget needs k >= 2");
    require_proper_coloring(mc, k);
    GadgetLayout layout;
    layout.k = k;
    detail::GadgetBuilder b;
    b.base(mc.graph, layout);

    std::map<std::pair<int, int>, int> label;
    for (int i = 0; i < static_cast<int>(k); ++i)
        for (int j = i + 1; j < static_cast<int>(k); ++j) {
            label[{i, j}] = static_cast<int>(layout.parts.size());
            layout.parts.emplace_back(i, j);
        }
    for (auto [u, v] : layout.e_origin) {
        int cu = mc.colors[u], cv = mc.colors[v];
        layout.e_part.push_back(label.at({std::min(cu, cv), std::max(cu, cv)}));
    }
    for (std::size_t i = 0; i < layout.parts.size(); ++i)
        layout.x.push_back(b.add(Role::x));
    for (std::size_t i = 0; i < layout.parts.size(); ++i)
        layout.y.push_back(b.add(Role::y));

    auto connect = [&](Vertex end, Vertex e, Role middle) {
        Connector c{end, b.add(Role::path), b.add(middle), b.add(Role::path), e};
        b.link(end, c.near);
        b.link(c.near, c.mid);
        b.link(c.mid, c.far);
        b.link(c.far, e);
        return c;
    };
    for (std::size_t i = 0; i < layout.e_origin.size(); ++i)
        layout.x_paths.push_back(connect(layout.x[layout.e_part[i]], layout.e_vertex(i), Role::u1));
    for (std::size_t i = 0; i < layout.e_origin.size(); ++i)
        layout.y_paths.push_back(connect(layout.y[layout.e_part[i]], layout.e_vertex(i), Role::u2));

    Graph g(b.roles.size(), b.edges);
    VertexSet s = detail::tagged(b.roles, {Role::v, Role::x, Role::u1, Role::u2});
    VertexSet t = detail::tagged(b.roles, {Role::v, Role::y, Role::u1, Role::u2});
    const std::size_t kappa = s.size();
    layout.roles = std::move(b.roles);
    return {Instance(std::move(g), std::move(s), std::move(t), kappa, tso_length(k)), std::move(layout)};
}

namespace detail {

/// Records a sequence by applying moves to the current configuration.
struct MoveLog {
    ReconfigSequence seq;

    explicit MoveLog(const VertexSet& start) : seq{{start}} {}

    void move(Vertex from, Vertex to)
    {
        const VertexSet& cur = seq.steps.back();
        if (!cur.contains(from) || cur.contains(to))
            throw InternalError("gadget witness moves " + std::to_string(from) + " -> " + std::to_string(to)
                + " from an empty or onto an occupied vertex");
        seq.steps.push_back(cur.without(from).with(to));
    }
};

inline void require_clique(const Graph& g, const VertexSet& clique, std::size_t k)
{
    require_valid(g, clique, "clique");
    if (clique.size() != k)
        throw InputError("clique must have exactly " + std::to_string(k) + " vertices");
    for (std::size_t i = 0; i < clique.size(); ++i)
        for (std::size_t j = i + 1; j < clique.size(); ++j)
            if (!g.adjacent(clique[i], clique[j]))
                throw InputError("vertices " + std::to_string(clique[i]) + " and " + std::to_string(clique[j])
                    + " are not adjacent");
}

} // namespace detail

/// Witness of length 8 C(k,2) + 2k for a multicolored k-clique.
inline ReconfigSequence tso_witness(const Gadget& gadget, const MulticoloredGraph& mc, const VertexSet& clique)
{
    const GadgetLayout& lay = gadget.layout;
    const std::size_t k = lay.k;
    detail::require_clique(mc.graph, clique, k);
    std::vector<bool> color_seen(k, false);
    for (Vertex v : clique) {
        if (color_seen[mc.colors[v]])
            throw InputError("clique repeats color " + std::to_string(mc.colors[v]));
        color_seen[mc.colors[v]] = true;
    }

    detail::MoveLog log(gadget.instance.source());
    for (Vertex v : clique)
        log.move(lay.v_vertex(v), lay.z_vertex(v));
    // one clique edge per part, routed in label order
    std::vector<std::size_t> chosen(lay.parts.size(), lay.e_origin.size());
    for (std::size_t i = 0; i < lay.e_origin.size(); ++i)
        if (clique.contains(lay.e_origin[i].first) && clique.contains(lay.e_origin[i].second))
            chosen[lay.e_part[i]] = i;
    for (std::size_t e : chosen) {
        const Connector& in = lay.x_paths[e];
        const Connector& out = lay.y_paths[e];
        log.move(out.mid, out.near);
        log.move(out.near, out.end);
        log.move(in.mid, in.far);
        log.move(in.far, in.e);
        log.move(in.e, out.far);
        log.move(out.far, out.mid);
        log.move(in.end, in.near);
        log.move(in.near, in.mid);
    }
    for (Vertex v : clique)
        log.move(lay.z_vertex(v), lay.v_vertex(v));
    return std::move(log.seq);
}

/// Jumping gadget. Ids: V, Z, E, L, R, then biclique paths ordered by (l, r).
inline Gadget gen_tjo_gadget(const Graph& source, std::size_t k)
{
    if (k < 2)
        throw InputError("gadget needs k >= 2");
    GadgetLayout layout;
    layout.k = k;
    detail::GadgetBuilder b;
    b.base(source, layout);
    const std::size_t p = choose2(k);
    for (std::size_t i = 0; i < p; ++i)
        layout.l.push_back(b.add(Role::l));
    for (std::size_t i = 0; i < p; ++i)
        layout.r.push_back(b.add(Role::r));
    for (Vertex l : layout.l)
        for (Vertex r : layout.r) {
            BicliquePath path{l, b.add(Role::n_l), b.add(Role::n_r), r};
            b.link(l, path.nl);
            b.link(path.nl, path.nr);
            b.link(path.nr, r);
            layout.biclique.push_back(path);
        }

    Graph g(b.roles.size(), b.edges);
    VertexSet s = detail::tagged(b.roles, {Role::v, Role::l, Role::n_r});
    VertexSet t = detail::tagged(b.roles, {Role::v, Role::r, Role::n_l});
    const std::size_t kappa = s.size();
    layout.roles = std::move(b.roles);
    return {Instance(std::move(g), std::move(s), std::move(t), kappa, tjo_length(k)), std::move(layout)};
}

/// Witness of length 2 C(k,2) + C(k,2)^2 + 2k for a k-clique.
inline ReconfigSequence tjo_witness(const Gadget& gadget, const Graph& source, const VertexSet& clique)
{
    const GadgetLayout& lay = gadget.layout;
    const std::size_t p = lay.l.size();
    detail::require_clique(source, clique, lay.k);

    std::vector<Vertex> clique_edges;
    for (std::size_t i = 0; i < clique.size(); ++i)
        for (std::size_t j = i + 1; j < clique.size(); ++j)
            clique_edges.push_back(*lay.e_vertex_of(clique[i], clique[j]));

    detail::MoveLog log(gadget.instance.source());
    for (Vertex v : clique)
        log.move(lay.v_vertex(v), lay.z_vertex(v));
    for (std::size_t i = 0; i < p; ++i)
        log.move(lay.l[i], clique_edges[i]);
    for (const BicliquePath& path : lay.biclique)
        log.move(path.nr, path.nl);
    for (std::size_t i = 0; i < p; ++i)
        log.move(clique_edges[i], lay.r[i]);
    for (Vertex v : clique)
        log.move(lay.z_vertex(v), lay.v_vertex(v));
    return std::move(log.seq);
}

} // namespace isr
