#pragma once

// Abstract planar link diagrams: 4-valent plane maps with over/under data.
//
// Dart 4x+r is position r of crossing x; positions run counterclockwise and
// r, r+2 lie on one strand. link[d] is the dart at the other end of the arc
// leaving d. Components without crossings are kept as a loop count.
//
// Reidemeister moves act directly on this structure, and a canonical string
// identifies diagrams up to orientation-preserving homeomorphism of the
// sphere. Two grid codes whose diagrams simplify to a common canonical form
// present the same link.

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include <mirrorknot/grid.hpp>
#include <mirrorknot/tangle.hpp>

namespace mirrorknot {

struct planar_diagram {
    std::vector<int> link;
    std::vector<int> over; // per crossing: parity of the over strand's positions
    int loops = 0;

    int crossings() const noexcept { return static_cast<int>(over.size()); }
};

namespace detail {

constexpr int dart(int x, int r) noexcept { return 4 * x + (r & 3); }
constexpr int turn(int d, int by) noexcept { return (d & ~3) | ((d + by) & 3); }

inline bool is_over(const planar_diagram &g, int d)
{
    return (d & 1) == g.over[static_cast<std::size_t>(d / 4)];
}

// Removes the crossings in `gone` by letting both strands pass straight
// through, then renumbers. Closed paths made only of removed darts become
// loops.
inline planar_diagram pass_through(const planar_diagram &g, const std::vector<int> &gone)
{
    const int n = g.crossings();
    std::vector<char> dead(static_cast<std::size_t>(n), 0);
    for (int x : gone) {
        dead[static_cast<std::size_t>(x)] = 1;
    }
    std::vector<int> id(static_cast<std::size_t>(n), -1);
    planar_diagram out;
    out.loops = g.loops;
    for (int x = 0; x < n; ++x) {
        if (!dead[static_cast<std::size_t>(x)]) {
            id[static_cast<std::size_t>(x)] = out.crossings();
            out.over.push_back(g.over[static_cast<std::size_t>(x)]);
        }
    }
    out.link.assign(static_cast<std::size_t>(4 * out.crossings()), -1);
    std::vector<char> used(g.link.size(), 0);
    for (int d = 0; d < 4 * n; ++d) {
        if (dead[static_cast<std::size_t>(d / 4)]) {
            continue;
        }
        int e = g.link[static_cast<std::size_t>(d)];
        while (dead[static_cast<std::size_t>(e / 4)]) {
            used[static_cast<std::size_t>(e)] = 1;
            const int through = turn(e, 2);
            used[static_cast<std::size_t>(through)] = 1;
            e = g.link[static_cast<std::size_t>(through)];
        }
        out.link[static_cast<std::size_t>(dart(id[static_cast<std::size_t>(d / 4)], d))] =
            dart(id[static_cast<std::size_t>(e / 4)], e);
    }
    for (int d = 0; d < 4 * n; ++d) {
        if (!dead[static_cast<std::size_t>(d / 4)] || used[static_cast<std::size_t>(d)]) {
            continue;
        }
        ++out.loops;
        int e = d;
        do {
            used[static_cast<std::size_t>(e)] = 1;
            const int through = turn(e, 2);
            used[static_cast<std::size_t>(through)] = 1;
            e = g.link[static_cast<std::size_t>(through)];
        } while (e != d);
    }
    return out;
}

// Successor of dart d along the boundary of the face to its left.
inline int face_next(const planar_diagram &g, int d)
{
    return turn(g.link[static_cast<std::size_t>(d)], -1);
}

} // namespace detail

// Builds the diagram of a classical grid code.
inline planar_diagram to_diagram(const grid_code &code, mirror_convention conv = default_convention)
{
    using namespace geometry;
    code.require_classical();
    const auto partner = port_partners(code, conv);
    const crossing_ports roles(code);
    std::vector<int> index(static_cast<std::size_t>(code.size()), -1);
    planar_diagram g;
    for (int k = 0; k < code.size(); ++k) {
        if (is_crossing(code[k])) {
            index[static_cast<std::size_t>(k)] = g.crossings();
            g.over.push_back(over_strand(code, k, conv));
        }
    }
    // port -> position at its crossing
    std::vector<int> position(partner.size(), -1);
    for (int k = 0; k < code.size(); ++k) {
        if (index[static_cast<std::size_t>(k)] < 0) {
            continue;
        }
        const auto v = vertex_of(code, k);
        const auto dirs = vertex_directions(v.horizontal);
        const std::array<int, 4> ports{v.near_lo, v.near_hi, v.far_lo, v.far_hi};
        for (std::size_t t = 0; t < 4; ++t) {
            position[static_cast<std::size_t>(ports[t])] = dirs[t];
        }
    }
    g.link.assign(static_cast<std::size_t>(4 * g.crossings()), -1);
    for (std::size_t port = 0; port < partner.size(); ++port) {
        if (position[port] < 0) {
            continue;
        }
        int at = static_cast<int>(port);
        while (true) {
            const int far = other_end(at);
            const int e = roles.edge[static_cast<std::size_t>(far)];
            if (e >= 0) {
                const int from = detail::dart(index[static_cast<std::size_t>(roles.edge[port])], position[port]);
                g.link[static_cast<std::size_t>(from)] =
                    detail::dart(index[static_cast<std::size_t>(e)], position[static_cast<std::size_t>(far)]);
                break;
            }
            at = partner[static_cast<std::size_t>(far)];
        }
    }
    const auto d = trace(code, conv);
    for (const auto &c : d.components) {
        g.loops += c.visits.empty() ? 1 : 0;
    }
    return g;
}

// Number of faces; a diagram is planar when this equals
// crossings + 1 + (connected pieces) with loops counted as pieces.
inline int face_count(const planar_diagram &g)
{
    std::vector<char> seen(g.link.size(), 0);
    int faces = 0;
    for (std::size_t d = 0; d < g.link.size(); ++d) {
        if (seen[d]) {
            continue;
        }
        ++faces;
        int e = static_cast<int>(d);
        do {
            seen[static_cast<std::size_t>(e)] = 1;
            e = detail::face_next(g, e);
        } while (e != static_cast<int>(d));
    }
    return faces + g.loops;
}

// Canonical string: the smallest traversal code over every start dart of
// every connected piece, pieces sorted, loops appended.
inline std::string canonical_form(const planar_diagram &g)
{
    const int n = g.crossings();
    std::vector<int> piece(static_cast<std::size_t>(n), -1);
    int pieces = 0;
    for (int x = 0; x < n; ++x) {
        if (piece[static_cast<std::size_t>(x)] >= 0) {
            continue;
        }
        std::vector<int> stack{x};
        piece[static_cast<std::size_t>(x)] = pieces;
        while (!stack.empty()) {
            const int y = stack.back();
            stack.pop_back();
            for (int r = 0; r < 4; ++r) {
                const int z = g.link[static_cast<std::size_t>(4 * y + r)] / 4;
                if (piece[static_cast<std::size_t>(z)] < 0) {
                    piece[static_cast<std::size_t>(z)] = pieces;
                    stack.push_back(z);
                }
            }
        }
        ++pieces;
    }
    std::vector<std::string> codes(static_cast<std::size_t>(pieces));
    std::vector<int> id(static_cast<std::size_t>(n));
    std::vector<int> base(static_cast<std::size_t>(n));
    for (int d0 = 0; d0 < 4 * n; ++d0) {
        std::fill(id.begin(), id.end(), -1);
        std::string s;
        std::vector<int> order{d0 / 4};
        id[static_cast<std::size_t>(d0 / 4)] = 0;
        base[static_cast<std::size_t>(d0 / 4)] = d0 & 3;
        for (std::size_t t = 0; t < order.size(); ++t) {
            const int x = order[t];
            for (int r = 0; r < 4; ++r) {
                const int d = detail::dart(x, base[static_cast<std::size_t>(x)] + r);
                const int e = g.link[static_cast<std::size_t>(d)];
                const int y = e / 4;
                if (id[static_cast<std::size_t>(y)] < 0) {
                    id[static_cast<std::size_t>(y)] = static_cast<int>(order.size());
                    base[static_cast<std::size_t>(y)] = e & 3;
                    order.push_back(y);
                }
                s += std::to_string(id[static_cast<std::size_t>(y)]);
                s += static_cast<char>('a' + ((e - base[static_cast<std::size_t>(y)]) & 3));
                s += detail::is_over(g, d) ? '+' : '-';
            }
            s += '|';
        }
        auto &best = codes[static_cast<std::size_t>(piece[static_cast<std::size_t>(d0 / 4)])];
        if (best.empty() || s.size() < best.size() || (s.size() == best.size() && s < best)) {
            best = s;
        }
    }
    std::sort(codes.begin(), codes.end());
    std::string out;
    for (const auto &c : codes) {
        out += c;
        out += '/';
    }
    out += "o" + std::to_string(g.loops);
    return out;
}

// Positions of kinks: darts d whose arc returns to the next position.
inline std::vector<planar_diagram> r1_moves(const planar_diagram &g)
{
    std::vector<planar_diagram> out;
    for (int x = 0; x < g.crossings(); ++x) {
        for (int r = 0; r < 4; ++r) {
            if (g.link[static_cast<std::size_t>(detail::dart(x, r))] == detail::dart(x, r + 1)) {
                out.push_back(detail::pass_through(g, {x}));
                r = 4;
            }
        }
    }
    return out;
}

// Bigon faces whose two crossings share the over strand.
inline std::vector<planar_diagram> r2_moves(const planar_diagram &g)
{
    std::vector<planar_diagram> out;
    std::set<std::pair<int, int>> done;
    for (int d = 0; d < static_cast<int>(g.link.size()); ++d) {
        const int e = detail::face_next(g, d);
        if (detail::face_next(g, e) != d || d / 4 == e / 4) {
            continue;
        }
        // d and e are consecutive sides of a bigon: d leaves x, e leaves y
        const int x = d / 4;
        const int y = e / 4;
        if (!done.insert({std::min(x, y), std::max(x, y)}).second) {
            continue;
        }
        // the strand through d at x arrives at y through link[d]
        if (detail::is_over(g, d) != detail::is_over(g, g.link[static_cast<std::size_t>(d)])) {
            continue;
        }
        out.push_back(detail::pass_through(g, {x, y}));
    }
    return out;
}

// A crossing is nugatory when one face meets it at two opposite corners.
// Turning over the part of the diagram on one side undoes it.
inline std::vector<planar_diagram> nugatory_moves(const planar_diagram &g)
{
    std::vector<planar_diagram> out;
    const int n = g.crossings();
    std::vector<int> face(g.link.size(), -1);
    int faces = 0;
    for (std::size_t d = 0; d < g.link.size(); ++d) {
        if (face[d] >= 0) {
            continue;
        }
        int e = static_cast<int>(d);
        do {
            face[static_cast<std::size_t>(e)] = faces;
            e = detail::face_next(g, e);
        } while (e != static_cast<int>(d));
        ++faces;
    }
    for (int x = 0; x < n; ++x) {
        for (int r = 0; r < 2; ++r) {
            // the face left of dart r lies in the corner between r and r+1
            if (face[static_cast<std::size_t>(detail::dart(x, r))] != face[static_cast<std::size_t>(detail::dart(x, r + 2))]) {
                continue;
            }
            // side one holds the arcs leaving positions r+1 and r+2
            std::vector<char> side(static_cast<std::size_t>(n), 0);
            std::vector<int> stack;
            for (int t : {r + 1, r + 2}) {
                const int y = g.link[static_cast<std::size_t>(detail::dart(x, t))] / 4;
                if (y != x && !side[static_cast<std::size_t>(y)]) {
                    side[static_cast<std::size_t>(y)] = 1;
                    stack.push_back(y);
                }
            }
            bool split = true;
            while (!stack.empty() && split) {
                const int y = stack.back();
                stack.pop_back();
                for (int t = 0; t < 4; ++t) {
                    const int z = g.link[static_cast<std::size_t>(detail::dart(y, t))] / 4;
                    if (z == x) {
                        const int at = g.link[static_cast<std::size_t>(detail::dart(y, t))] & 3;
                        split &= at == ((r + 1) & 3) || at == ((r + 2) & 3);
                    } else if (!side[static_cast<std::size_t>(z)]) {
                        side[static_cast<std::size_t>(z)] = 1;
                        stack.push_back(z);
                    }
                }
            }
            if (!split) {
                continue;
            }
            // turn side one over: reverse its cyclic orders and switch its crossings
            planar_diagram h = g;
            const auto image = [&](int d) {
                return side[static_cast<std::size_t>(d / 4)] ? detail::dart(d / 4, -(d & 3)) : d;
            };
            for (int d = 0; d < 4 * n; ++d) {
                h.link[static_cast<std::size_t>(image(d))] = image(g.link[static_cast<std::size_t>(d)]);
            }
            for (int y = 0; y < n; ++y) {
                if (side[static_cast<std::size_t>(y)]) {
                    h.over[static_cast<std::size_t>(y)] ^= 1;
                }
            }
            // the ends that met at x now join without crossing
            const int ea = h.link[static_cast<std::size_t>(detail::dart(x, r + 1))];
            const int eb = h.link[static_cast<std::size_t>(detail::dart(x, r + 2))];
            h.link[static_cast<std::size_t>(detail::dart(x, r + 1))] = eb;
            h.link[static_cast<std::size_t>(detail::dart(x, r + 2))] = ea;
            if (ea != detail::dart(x, r + 2)) {
                h.link[static_cast<std::size_t>(ea)] = detail::dart(x, r + 2);
                h.link[static_cast<std::size_t>(eb)] = detail::dart(x, r + 1);
            }
            out.push_back(detail::pass_through(h, {x}));
            return out;
        }
    }
    return out;
}

namespace detail {

// R3 on the triangle whose boundary starts at dart d0.
inline bool r3_at(const planar_diagram &g, int d0, planar_diagram &out)
{
    std::array<int, 3> side{};
    side[0] = d0;
    side[1] = face_next(g, side[0]);
    side[2] = face_next(g, side[1]);
    if (face_next(g, side[2]) != d0) {
        return false;
    }
    const std::array<int, 3> xs{side[0] / 4, side[1] / 4, side[2] / 4};
    if (xs[0] == xs[1] || xs[1] == xs[2] || xs[0] == xs[2]) {
        return false;
    }
    // side i runs from dart a_i = side[i] to b_i = link[side[i]]; the strand
    // continues outward through the opposite positions.
    std::array<int, 3> a{};
    std::array<int, 3> b{};
    bool slidable = false;
    for (std::size_t i = 0; i < 3; ++i) {
        a[i] = side[i];
        b[i] = g.link[static_cast<std::size_t>(side[i])];
        slidable |= is_over(g, a[i]) == is_over(g, b[i]);
    }
    if (!slidable) {
        return false;
    }
    std::set<int> local;
    for (std::size_t i = 0; i < 3; ++i) {
        for (int r = 0; r < 4; ++r) {
            local.insert(dart(xs[i], r));
        }
    }
    std::array<int, 3> ext_a{};
    std::array<int, 3> ext_b{};
    for (std::size_t i = 0; i < 3; ++i) {
        ext_a[i] = g.link[static_cast<std::size_t>(turn(a[i], 2))];
        ext_b[i] = g.link[static_cast<std::size_t>(turn(b[i], 2))];
        if (local.count(ext_a[i]) || local.count(ext_b[i])) {
            return false;
        }
    }
    out = g;
    for (std::size_t i = 0; i < 3; ++i) {
        const int ao = turn(a[i], 2);
        const int bo = turn(b[i], 2);
        const auto set = [&](int u, int v) {
            out.link[static_cast<std::size_t>(u)] = v;
            out.link[static_cast<std::size_t>(v)] = u;
        };
        set(a[i], ext_b[i]);
        set(b[i], ext_a[i]);
        set(ao, bo);
    }
    return true;
}

} // namespace detail

inline std::vector<planar_diagram> r3_moves(const planar_diagram &g)
{
    std::vector<planar_diagram> out;
    std::set<std::array<int, 3>> done;
    for (int d = 0; d < static_cast<int>(g.link.size()); ++d) {
        const int e = detail::face_next(g, d);
        const int f = detail::face_next(g, e);
        if (detail::face_next(g, f) != d) {
            continue;
        }
        std::array<int, 3> key{d / 4, e / 4, f / 4};
        std::sort(key.begin(), key.end());
        if (!done.insert(key).second) {
            continue;
        }
        planar_diagram next;
        if (detail::r3_at(g, d, next)) {
            out.push_back(std::move(next));
        }
    }
    return out;
}

inline planar_diagram greedy_simplify(planar_diagram g)
{
    while (true) {
        if (auto m = r1_moves(g); !m.empty()) {
            g = std::move(m.front());
            continue;
        }
        if (auto m = r2_moves(g); !m.empty()) {
            g = std::move(m.front());
            continue;
        }
        if (auto m = nugatory_moves(g); !m.empty()) {
            g = std::move(m.front());
            continue;
        }
        return g;
    }
}

// Pushes one arc of a face across another arc of the same face, creating a
// bigon; the pushed arc goes over (or under) at both new crossings.
inline std::vector<planar_diagram> r2_up_moves(const planar_diagram &g)
{
    std::vector<planar_diagram> out;
    std::vector<char> seen(g.link.size(), 0);
    for (std::size_t d0 = 0; d0 < g.link.size(); ++d0) {
        if (seen[d0]) {
            continue;
        }
        std::vector<int> boundary;
        int e = static_cast<int>(d0);
        do {
            seen[static_cast<std::size_t>(e)] = 1;
            boundary.push_back(e);
            e = detail::face_next(g, e);
        } while (e != static_cast<int>(d0));
        for (int u1 : boundary) {
            for (int u2 : boundary) {
                const int v1 = g.link[static_cast<std::size_t>(u1)];
                const int v2 = g.link[static_cast<std::size_t>(u2)];
                if (u1 == u2 || u2 == v1) {
                    continue;
                }
                for (int top = 0; top < 2; ++top) {
                    planar_diagram h = g;
                    const int x = h.crossings();
                    const int y = x + 1;
                    h.link.resize(h.link.size() + 8);
                    // positions: 0 east, 1 north, 2 west, 3 south; the pushed
                    // arc runs north-south at both crossings
                    h.over.push_back(top);
                    h.over.push_back(top);
                    const auto set = [&](int a, int b) {
                        h.link[static_cast<std::size_t>(a)] = b;
                        h.link[static_cast<std::size_t>(b)] = a;
                    };
                    set(u1, detail::dart(x, 1));
                    set(detail::dart(x, 3), detail::dart(y, 3));
                    set(detail::dart(y, 1), v1);
                    set(u2, detail::dart(y, 2));
                    set(detail::dart(y, 0), detail::dart(x, 2));
                    set(detail::dart(x, 0), v2);
                    out.push_back(std::move(h));
                }
            }
        }
    }
    return out;
}

inline constexpr std::size_t default_search_states = 20000;
inline constexpr int default_search_excess = 2;

struct simplification {
    int crossings = 0;             // fewest crossings reached
    planar_diagram best;           // a diagram with that many crossings
    std::set<std::string> minimal; // canonical forms with that many crossings
    bool exhausted = false;        // every reachable state was visited
};

// Best-first search over Reidemeister moves, fewest crossings first. States
// may exceed the best crossing count found so far by at most `excess`.
inline simplification simplify(const planar_diagram &start, std::size_t limit = default_search_states,
                               int excess = default_search_excess)
{
    simplification s;
    auto first = greedy_simplify(start);
    s.crossings = first.crossings();
    s.best = first;
    std::set<std::string> seen;
    std::multimap<int, planar_diagram> queue;
    const auto visit = [&](planar_diagram g) {
        if (g.crossings() > s.crossings + excess) {
            return;
        }
        auto key = canonical_form(g);
        if (!seen.insert(key).second) {
            return;
        }
        if (g.crossings() < s.crossings) {
            s.crossings = g.crossings();
            s.best = g;
            s.minimal.clear();
        }
        if (g.crossings() == s.crossings) {
            s.minimal.insert(key);
        }
        const int n = g.crossings();
        queue.emplace(n, std::move(g));
    };
    visit(first);
    while (!queue.empty() && seen.size() < limit) {
        auto g = std::move(queue.begin()->second);
        queue.erase(queue.begin());
        if (g.crossings() == 0 || g.crossings() > s.crossings + excess) {
            continue;
        }
        visit(greedy_simplify(g));
        for (auto &next : r3_moves(g)) {
            visit(std::move(next));
        }
        if (g.crossings() + 2 <= s.crossings + excess) {
            for (auto &next : r2_up_moves(g)) {
                visit(std::move(next));
            }
        }
    }
    s.exhausted = queue.empty();
    return s;
}

// True when both diagrams are shown to present the same link.
inline bool same_link(const planar_diagram &a, const planar_diagram &b, std::size_t limit = default_search_states)
{
    const auto sa = simplify(a, limit);
    const auto sb = simplify(b, limit);
    if (sa.crossings != sb.crossings) {
        return false;
    }
    return std::any_of(sa.minimal.begin(), sa.minimal.end(), [&](const auto &k) { return sb.minimal.count(k) > 0; });
}

} // namespace mirrorknot
