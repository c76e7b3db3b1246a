#pragma once

// Tangles cut out of a mirror-curve by a rectangular window of cells, and an
// equivalence test for window rewrites.
//
// The endpoints of a window tangle are the ports whose partner lies outside
// the window. Two tangles with the same endpoints are isotopic rel boundary
// when both are layered: every component is free of self-crossings, and
// there is one height order of all components compatible with every crossing
// of both tangles. Closed components of a layered tangle are split unknots,
// so only their number matters.

#include <algorithm>
#include <array>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include <mirrorknot/grid.hpp>

namespace mirrorknot {

// Cells [x0, x1) x [y0, y1).
struct window {
    int x0 = 0;
    int y0 = 0;
    int x1 = 0;
    int y1 = 0;

    bool contains(int i, int j) const noexcept { return i >= x0 && i < x1 && j >= y0 && j < y1; }
    int width() const noexcept { return x1 - x0; }
    int height() const noexcept { return y1 - y0; }
    friend bool operator==(const window &, const window &) = default;
};

// Edges whose two incident cells both lie in the window, in label order.
inline std::vector<int> internal_edges(const grid_code &code, const window &w)
{
    const int p = code.width();
    const int q = code.height();
    std::vector<int> out;
    for (int k = 0; k < code.size(); ++k) {
        if (code.is_horizontal(k)) {
            const int i = k % p;
            const int j = k / p;
            if (w.contains(i, j) && w.contains(i, j + 1)) {
                out.push_back(k);
            }
        } else {
            const int kk = k - code.horizontal_count();
            const int i = kk / q;
            const int j = kk % q;
            if (w.contains(i, j) && w.contains(i + 1, j)) {
                out.push_back(k);
            }
        }
    }
    return out;
}

namespace geometry {

// Doubled coordinates of the midpoint a port sits on, and the direction its
// step leaves that midpoint in.
struct port_place {
    int x2;
    int y2;
    int dir;
    friend auto operator<=>(const port_place &, const port_place &) = default;
};

inline port_place place_of(int p, int port)
{
    const int cell = port_step(port) / 4;
    const int step = port_step(port) % 4;
    const int i = cell % p;
    const int j = cell / p;
    const auto mid = [&](int s) -> std::array<int, 2> {
        switch (s) {
        case south: return {2 * i + 1, 2 * j};
        case east: return {2 * i + 2, 2 * j + 1};
        case north: return {2 * i + 1, 2 * j + 2};
        default: return {2 * i, 2 * j + 1};
        }
    };
    const auto a = mid(step_sides[static_cast<std::size_t>(step)][static_cast<std::size_t>(port_end(port))]);
    const auto b = mid(step_sides[static_cast<std::size_t>(step)][static_cast<std::size_t>(1 - port_end(port))]);
    const int dx = b[0] - a[0];
    const int dy = b[1] - a[1];
    const int dir = dx > 0 ? (dy > 0 ? ne : se) : (dy > 0 ? nw : sw);
    return {a[0], a[1], dir};
}

// Port -> (crossing edge, strand) for the four ports of every crossing.
struct crossing_ports {
    std::vector<int> edge;
    std::vector<int> strand;

    explicit crossing_ports(const grid_code &code)
        : edge(static_cast<std::size_t>(8 * code.width() * code.height()), -1),
          strand(static_cast<std::size_t>(8 * code.width() * code.height()), 0)
    {
        for (int k = 0; k < code.size(); ++k) {
            if (!is_crossing(code[k])) {
                continue;
            }
            const auto v = vertex_of(code, k);
            const std::array<std::pair<int, int>, 4> ports{
                {{v.near_lo, 0}, {v.far_hi, 0}, {v.near_hi, 1}, {v.far_lo, 1}}};
            for (auto [port, s] : ports) {
                edge[static_cast<std::size_t>(port)] = k;
                strand[static_cast<std::size_t>(port)] = s;
            }
        }
    }
};

} // namespace geometry

struct tangle_visit {
    int edge;
    bool over;
};

struct tangle_component {
    bool closed = false;
    std::pair<geometry::port_place, geometry::port_place> ends{}; // sorted, arcs only
    std::vector<tangle_visit> visits;
};

struct window_tangle {
    std::vector<tangle_component> components;
    int loops = 0;
};

// Endpoint places are shifted by (dx2, dy2) so tangles of differently sized
// grids can be compared along a shared window boundary.
inline window_tangle cut_tangle(const grid_code &code, const window &w, int dx2 = 0, int dy2 = 0,
                                mirror_convention conv = default_convention)
{
    using namespace geometry;
    const int p = code.width();
    const auto partner = port_partners(code, conv);
    const crossing_ports roles(code);
    const auto in_window = [&](int port) {
        const int cell = port_step(port) / 4;
        return w.contains(cell % p, cell / p);
    };

    window_tangle t;
    std::vector<char> seen(partner.size() / 2, 0);
    auto shifted = [&](int port) {
        auto pl = place_of(p, port);
        pl.x2 += dx2;
        pl.y2 += dy2;
        return pl;
    };
    // Follows the curve from `port` (entering its step) until it leaves the
    // window or returns to the start step.
    auto walk = [&](int start, tangle_component &comp) {
        int port = start;
        while (true) {
            seen[static_cast<std::size_t>(port_step(port))] = 1;
            const int far = other_end(port);
            const int next = partner[static_cast<std::size_t>(far)];
            if (!in_window(next)) {
                return far;
            }
            const int k = roles.edge[static_cast<std::size_t>(far)];
            if (k >= 0) {
                comp.visits.push_back({k, roles.strand[static_cast<std::size_t>(far)] == over_strand(code, k, conv)});
            }
            if (port_step(next) == port_step(start)) {
                return -1;
            }
            port = next;
        }
    };
    for (int port = 0; port < static_cast<int>(partner.size()); ++port) {
        if (!in_window(port) || in_window(partner[static_cast<std::size_t>(port)])
            || seen[static_cast<std::size_t>(port_step(port))]) {
            continue;
        }
        tangle_component comp;
        const int end = walk(port, comp);
        auto a = shifted(port);
        auto b = shifted(end);
        comp.ends = a < b ? std::pair{a, b} : std::pair{b, a};
        t.components.push_back(std::move(comp));
    }
    for (int step = 0; step < static_cast<int>(seen.size()); ++step) {
        if (seen[static_cast<std::size_t>(step)] || !in_window(port_id(step, 0))) {
            continue;
        }
        tangle_component comp;
        comp.closed = true;
        walk(port_id(step, 0), comp);
        t.components.push_back(std::move(comp));
        ++t.loops;
    }
    return t;
}

namespace detail {

inline bool acyclic(int n, const std::vector<std::pair<int, int>> &edges)
{
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    for (auto [a, b] : edges) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        ++indeg[static_cast<std::size_t>(b)];
    }
    std::vector<int> ready;
    for (int v = 0; v < n; ++v) {
        if (indeg[static_cast<std::size_t>(v)] == 0) {
            ready.push_back(v);
        }
    }
    int done = 0;
    while (!ready.empty()) {
        const int v = ready.back();
        ready.pop_back();
        ++done;
        for (int u : adj[static_cast<std::size_t>(v)]) {
            if (--indeg[static_cast<std::size_t>(u)] == 0) {
                ready.push_back(u);
            }
        }
    }
    return done == n;
}

// Appends over -> under edges between the components of `t`, offsetting
// component ids through `node`. Returns false on a self-crossing.
inline bool order_edges(const window_tangle &t, const std::vector<int> &node, std::vector<std::pair<int, int>> &edges)
{
    std::map<int, std::pair<int, bool>> first; // edge -> (component, over)
    for (std::size_t c = 0; c < t.components.size(); ++c) {
        for (const auto &v : t.components[c].visits) {
            auto [it, fresh] = first.emplace(v.edge, std::pair{static_cast<int>(c), v.over});
            if (fresh) {
                continue;
            }
            if (it->second.first == static_cast<int>(c)) {
                return false;
            }
            const int a = node[static_cast<std::size_t>(it->second.first)];
            const int b = node[c];
            edges.push_back(it->second.second ? std::pair{a, b} : std::pair{b, a});
        }
    }
    return true;
}

} // namespace detail

// A layered tangle realizes a split union of unknots and stacked planar arcs.
inline bool is_layered(const window_tangle &t)
{
    std::vector<int> node(t.components.size());
    for (std::size_t c = 0; c < node.size(); ++c) {
        node[c] = static_cast<int>(c);
    }
    std::vector<std::pair<int, int>> edges;
    return detail::order_edges(t, node, edges) && detail::acyclic(static_cast<int>(node.size()), edges);
}

inline bool equivalent_tangles(const window_tangle &a, const window_tangle &b)
{
    if (a.loops != b.loops) {
        return false;
    }
    std::map<std::pair<geometry::port_place, geometry::port_place>, int> arc_of;
    std::vector<int> node_a(a.components.size());
    int nodes = 0;
    for (std::size_t c = 0; c < a.components.size(); ++c) {
        node_a[c] = nodes++;
        if (!a.components[c].closed) {
            arc_of.emplace(a.components[c].ends, node_a[c]);
        }
    }
    std::vector<int> node_b(b.components.size());
    std::size_t matched = 0;
    for (std::size_t c = 0; c < b.components.size(); ++c) {
        if (b.components[c].closed) {
            node_b[c] = nodes++;
            continue;
        }
        auto it = arc_of.find(b.components[c].ends);
        if (it == arc_of.end()) {
            return false;
        }
        node_b[c] = it->second;
        ++matched;
    }
    if (matched != arc_of.size()) {
        return false;
    }
    std::vector<std::pair<int, int>> edges;
    if (!detail::order_edges(a, node_a, edges) || !detail::order_edges(b, node_b, edges)) {
        return false;
    }
    return detail::acyclic(nodes, edges);
}

} // namespace mirrorknot
