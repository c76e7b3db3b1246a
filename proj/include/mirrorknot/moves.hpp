#pragma once

// Rewriting moves on grid codes and a reduction driver.
//
//   R1           a kink becomes the mirror that keeps the component count
//   R2           a bigon whose two crossings share the over strand is opened
//   R3           a strand slides across a triangle inside a small window
//   MIRROR_MOVE  any other window rewrite certified by tangle equivalence
//   ALL_OVER     a boundary column (or row) is absorbed into its neighbour

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <mirrorknot/codes.hpp>
#include <mirrorknot/diagram.hpp>
#include <mirrorknot/grid.hpp>
#include <mirrorknot/invariants.hpp>
#include <mirrorknot/symmetry.hpp>
#include <mirrorknot/tangle.hpp>

namespace mirrorknot {

enum class move_kind { r1, r2, r3, mirror_move, all_over };

inline std::string_view move_kind_name(move_kind k) noexcept
{
    switch (k) {
    case move_kind::r1: return "R1";
    case move_kind::r2: return "R2";
    case move_kind::r3: return "R3";
    case move_kind::mirror_move: return "MIRROR_MOVE";
    case move_kind::all_over: return "ALL_OVER";
    }
    return "?";
}

// A relabelling of `site` by `labels`; an all-over move instead carries the
// side it removed in `side` and the whole new code in `result`.
struct move {
    move_kind kind = move_kind::r1;
    std::vector<int> site;
    std::vector<edge_label> labels;
    std::string side;
    std::optional<grid_code> result;

    std::string to_string() const
    {
        std::string out(move_kind_name(kind));
        out += " @ ";
        if (kind == move_kind::all_over) {
            out += side + " -> " + serialize_matrix(*result);
            return out;
        }
        for (std::size_t i = 0; i < site.size(); ++i) {
            out += (i ? "," : "") + std::to_string(site[i]);
        }
        out += " -> ";
        for (std::size_t i = 0; i < labels.size(); ++i) {
            out += (i ? "," : "") + std::to_string(to_int(labels[i]));
        }
        return out;
    }
};

inline grid_code apply_move(const grid_code &code, const move &m)
{
    if (m.kind == move_kind::all_over) {
        return *m.result;
    }
    grid_code out = code;
    for (std::size_t i = 0; i < m.site.size(); ++i) {
        if (m.site[i] < 0 || m.site[i] >= code.size()) {
            fail(errc::range_error, "move site " + std::to_string(m.site[i]) + " outside the code");
        }
        out[m.site[i]] = m.labels[i];
    }
    return out;
}

struct reduction_log {
    grid_code initial;
    grid_code final_code;
    std::vector<move> steps;

    std::string to_string() const
    {
        std::string out;
        for (const auto &m : steps) {
            out += m.to_string();
            out += '\n';
        }
        return out;
    }

    grid_code replay() const
    {
        grid_code c = initial;
        for (const auto &m : steps) {
            c = apply_move(c, m);
        }
        return c;
    }
};

// Parses the line format written by reduction_log::to_string.
inline std::vector<move> parse_log(std::string_view text)
{
    std::vector<move> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        const auto at = line.find(" @ ");
        const auto arrow = line.find(" -> ");
        if (at == std::string::npos || arrow == std::string::npos || arrow < at) {
            fail(errc::shape_error, "bad log line: " + line);
        }
        move m;
        const auto kind = line.substr(0, at);
        const std::array<move_kind, 5> kinds{move_kind::r1, move_kind::r2, move_kind::r3, move_kind::mirror_move,
                                             move_kind::all_over};
        bool known = false;
        for (auto k : kinds) {
            if (kind == move_kind_name(k)) {
                m.kind = k;
                known = true;
            }
        }
        if (!known) {
            fail(errc::shape_error, "unknown move kind " + kind);
        }
        const auto site = line.substr(at + 3, arrow - at - 3);
        const auto rhs = line.substr(arrow + 4);
        if (m.kind == move_kind::all_over) {
            m.side = site;
            m.result = parse_matrix(rhs);
        } else {
            std::istringstream s(site);
            std::istringstream l(rhs);
            std::string tok;
            while (std::getline(s, tok, ',')) {
                m.site.push_back(std::stoi(tok));
            }
            while (std::getline(l, tok, ',')) {
                m.labels.push_back(label_from_int(std::stoi(tok)));
            }
            if (m.site.size() != m.labels.size()) {
                fail(errc::shape_error, "site and label counts differ: " + line);
            }
        }
        out.push_back(std::move(m));
    }
    return out;
}

namespace detail {

inline edge_label mirror_label(bool collinear, mirror_convention conv = default_convention)
{
    const bool two = conv == mirror_convention::two_collinear ? collinear : !collinear;
    return two ? edge_label::mir : edge_label::perp;
}

inline int crossing_at(const traced_diagram &d, int k, errc err)
{
    if (k < 0 || k >= static_cast<int>(d.crossing_of_edge.size())) {
        fail(errc::range_error, "edge " + std::to_string(k) + " outside the code");
    }
    const int x = d.crossing_of_edge[static_cast<std::size_t>(k)];
    if (x < 0) {
        fail(err, "edge " + std::to_string(k) + " carries no crossing");
    }
    return x;
}

// Quadrants of a face around the crossings: (crossing, quadrant) pairs.
inline std::vector<std::pair<int, int>> face_corners(const traced_diagram &d, int face)
{
    std::vector<std::pair<int, int>> out;
    for (int x = 0; x < static_cast<int>(d.crossings.size()); ++x) {
        for (int r = 0; r < 4; ++r) {
            if (d.crossings[static_cast<std::size_t>(x)].regions[static_cast<std::size_t>(r)] == face) {
                out.emplace_back(x, r);
            }
        }
    }
    return out;
}

// The two half-strand directions bounding quadrant r (N, W, S, E).
constexpr std::array<int, 2> quadrant_sides(int r) noexcept
{
    using namespace geometry;
    constexpr std::array<std::array<int, 2>, 4> t{{{nw, ne}, {nw, sw}, {sw, se}, {se, ne}}};
    return t[static_cast<std::size_t>(r)];
}

struct arrival {
    int edge = -1;
    bool over_at_start = false;
    bool over_at_end = false;
};

// Follows the half-strand leaving crossing edge k in direction dir up to the
// next crossing.
inline arrival follow(const grid_code &code, const std::vector<int> &partner, const geometry::crossing_ports &roles,
                      int k, int dir)
{
    using namespace geometry;
    const auto v = vertex_of(code, k);
    const auto dirs = vertex_directions(v.horizontal);
    const std::array<int, 4> ports{v.near_lo, v.near_hi, v.far_lo, v.far_hi};
    int port = -1;
    for (std::size_t t = 0; t < 4; ++t) {
        if (dirs[t] == dir) {
            port = ports[t];
        }
    }
    arrival a;
    a.over_at_start = roles.strand[static_cast<std::size_t>(port)] == over_strand(code, k, default_convention);
    while (true) {
        const int far = other_end(port);
        const int e = roles.edge[static_cast<std::size_t>(far)];
        if (e >= 0) {
            a.edge = e;
            a.over_at_end = roles.strand[static_cast<std::size_t>(far)] == over_strand(code, e, default_convention);
            return a;
        }
        port = partner[static_cast<std::size_t>(far)];
    }
}

// Mirror at crossing edge k merging quadrant r with the opposite one.
inline edge_label opening_mirror(const grid_code &code, int k, int r)
{
    const bool north_south = r % 2 == 0;
    return mirror_label(code.is_horizontal(k) ? !north_south : north_south);
}

} // namespace detail

// Crossing edges that close a kink.
inline std::vector<int> find_curls(const grid_code &code)
{
    const auto d = trace(code);
    std::vector<int> out;
    for (const auto &comp : d.components) {
        const auto &v = comp.visits;
        for (std::size_t t = 0; t < v.size(); ++t) {
            if (v[t].crossing == v[(t + 1) % v.size()].crossing) {
                out.push_back(d.crossings[static_cast<std::size_t>(v[t].crossing)].edge);
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline grid_code apply_r1(const grid_code &code, int k, move *record = nullptr)
{
    const auto d = trace(code);
    const int x = detail::crossing_at(d, k, errc::not_a_curl);
    bool curl = false;
    for (const auto &comp : d.components) {
        const auto &v = comp.visits;
        for (std::size_t t = 0; t < v.size(); ++t) {
            curl |= v[t].crossing == x && v[(t + 1) % v.size()].crossing == x;
        }
    }
    if (!curl) {
        fail(errc::not_a_curl, "crossing at edge " + std::to_string(k) + " is not a kink");
    }
    grid_code out = code;
    out[k] = edge_label::mir;
    if (count_components(out) != d.component_count()) {
        out[k] = edge_label::perp;
    }
    if (record) {
        *record = {move_kind::r1, {k}, {out[k]}, {}, std::nullopt};
    }
    return out;
}

namespace detail {

struct bigon {
    int k1;
    int k2;
    int r1;
    int r2;
    bool same_over;
};

inline std::optional<bigon> find_bigon_between(const grid_code &code, const traced_diagram &d, int x, int y)
{
    const auto partner = geometry::port_partners(code);
    const geometry::crossing_ports roles(code);
    const auto &cx = d.crossings[static_cast<std::size_t>(x)];
    const auto &cy = d.crossings[static_cast<std::size_t>(y)];
    for (int r = 0; r < 4; ++r) {
        const int face = cx.regions[static_cast<std::size_t>(r)];
        const auto corners = face_corners(d, face);
        if (corners.size() != 2) {
            continue;
        }
        int ry = -1;
        bool has_x = false;
        for (auto [c, q] : corners) {
            has_x |= c == x && q == r;
            if (c == y) {
                ry = q;
            }
        }
        if (!has_x || ry < 0) {
            continue;
        }
        const auto sides = quadrant_sides(r);
        const auto a = follow(code, partner, roles, cx.edge, sides[0]);
        const auto b = follow(code, partner, roles, cx.edge, sides[1]);
        if (a.edge != cy.edge || b.edge != cy.edge) {
            continue;
        }
        const bool same = a.over_at_start == a.over_at_end;
        return bigon{cx.edge, cy.edge, r, ry, same};
    }
    return std::nullopt;
}

} // namespace detail

inline grid_code apply_r2(const grid_code &code, int k1, int k2, move *record = nullptr)
{
    const auto d = trace(code);
    const int x = detail::crossing_at(d, k1, errc::not_a_bigon);
    const int y = detail::crossing_at(d, k2, errc::not_a_bigon);
    if (x == y) {
        fail(errc::not_a_bigon, "the two sites coincide");
    }
    const auto b = detail::find_bigon_between(code, d, x, y);
    if (!b) {
        fail(errc::not_a_bigon, "edges " + std::to_string(k1) + " and " + std::to_string(k2) + " bound no bigon");
    }
    if (!b->same_over) {
        fail(errc::sign_mismatch, "the bigon at edges " + std::to_string(k1) + " and " + std::to_string(k2)
                                      + " is a clasp: each strand is over at one crossing and under at the other");
    }
    grid_code out = code;
    out[k1] = detail::opening_mirror(code, k1, b->r1);
    out[k2] = detail::opening_mirror(code, k2, b->r2);
    if (record) {
        *record = {move_kind::r2, {k1, k2}, {out[k1], out[k2]}, {}, std::nullopt};
    }
    return out;
}

// Edge pairs (k1 < k2) bounding a bigon that R2 can open.
inline std::vector<std::pair<int, int>> find_bigons(const grid_code &code)
{
    const auto d = trace(code);
    std::vector<std::pair<int, int>> out;
    const int n = static_cast<int>(d.crossings.size());
    for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
            if (auto b = detail::find_bigon_between(code, d, x, y); b && b->same_over) {
                out.emplace_back(std::min(b->k1, b->k2), std::max(b->k1, b->k2));
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Window rewrites

inline constexpr int max_rewrite_edges = 8;

struct rewrite {
    std::vector<int> site;
    std::vector<edge_label> labels;
    grid_code result;
};

// Every relabelling of the window's internal edges that cuts out a tangle
// equivalent to the original one, in label-enumeration order. `accept`
// filters candidates before the tangle test.
template <typename Accept>
std::vector<rewrite> window_rewrites(const grid_code &code, const window &w, Accept &&accept, std::size_t limit = 0)
{
    code.require_classical();
    const auto edges = internal_edges(code, w);
    if (static_cast<int>(edges.size()) > max_rewrite_edges) {
        fail(errc::too_large, "window has " + std::to_string(edges.size()) + " internal edges");
    }
    const auto original = cut_tangle(code, w);
    static constexpr std::array<edge_label, 4> alphabet{edge_label::mir, edge_label::perp, edge_label::pos,
                                                        edge_label::neg};
    std::vector<rewrite> out;
    const std::uint64_t total = std::uint64_t{1} << (2 * edges.size());
    for (std::uint64_t m = 0; m < total; ++m) {
        grid_code cand = code;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            cand[edges[e]] = alphabet[(m >> (2 * (edges.size() - 1 - e))) & 3u];
        }
        if (cand == code || !accept(cand)) {
            continue;
        }
        if (!equivalent_tangles(original, cut_tangle(cand, w))) {
            continue;
        }
        rewrite r{{}, {}, cand};
        for (int k : edges) {
            if (cand[k] != code[k]) {
                r.site.push_back(k);
                r.labels.push_back(cand[k]);
            }
        }
        out.push_back(std::move(r));
        if (limit != 0 && out.size() >= limit) {
            break;
        }
    }
    return out;
}

inline grid_code apply_window_rewrite(const grid_code &code, const window &w, const grid_code &target)
{
    if (target.width() != code.width() || target.height() != code.height()) {
        fail(errc::dimension_mismatch, "rewrite must stay on the same grid");
    }
    const auto edges = internal_edges(code, w);
    for (int k = 0; k < code.size(); ++k) {
        if (code[k] != target[k] && std::find(edges.begin(), edges.end(), k) == edges.end()) {
            fail(errc::pattern_not_found, "edge " + std::to_string(k) + " changes outside the window");
        }
    }
    if (!equivalent_tangles(cut_tangle(code, w), cut_tangle(target, w))) {
        fail(errc::pattern_not_found, "the window tangles are not certified equivalent");
    }
    return target;
}

namespace detail {

inline window cover(const grid_code &code, const std::vector<int> &edges)
{
    const int p = code.width();
    const int q = code.height();
    window w{p, q, 0, 0};
    for (int k : edges) {
        int i0 = 0;
        int j0 = 0;
        int i1 = 0;
        int j1 = 0;
        if (code.is_horizontal(k)) {
            i0 = i1 = k % p;
            j0 = k / p;
            j1 = j0 + 1;
        } else {
            const int kk = k - code.horizontal_count();
            i0 = kk / q;
            i1 = i0 + 1;
            j0 = j1 = kk % q;
        }
        w.x0 = std::min(w.x0, i0);
        w.y0 = std::min(w.y0, j0);
        w.x1 = std::max(w.x1, i1 + 1);
        w.y1 = std::max(w.y1, j1 + 1);
    }
    return w;
}

inline std::set<int> crossing_set(const grid_code &code)
{
    std::set<int> out;
    for (int k = 0; k < code.size(); ++k) {
        if (is_crossing(code[k])) {
            out.insert(k);
        }
    }
    return out;
}

} // namespace detail

// R3 at the triangle with corners at crossing edges k1, k2, k3. The slide is
// realized by the first certified rewrite of a small window around the
// triangle that keeps the crossing count and self-writhe but moves a crossing.
inline grid_code apply_r3(const grid_code &code, int k1, int k2, int k3, move *record = nullptr)
{
    const auto d = trace(code);
    const std::array<int, 3> xs{detail::crossing_at(d, k1, errc::not_a_triangle),
                                detail::crossing_at(d, k2, errc::not_a_triangle),
                                detail::crossing_at(d, k3, errc::not_a_triangle)};
    if (xs[0] == xs[1] || xs[1] == xs[2] || xs[0] == xs[2]) {
        fail(errc::not_a_triangle, "the three sites must be distinct crossings");
    }
    const auto partner = geometry::port_partners(code);
    const geometry::crossing_ports roles(code);
    bool found = false;
    bool slidable = false;
    const auto &c0 = d.crossings[static_cast<std::size_t>(xs[0])];
    for (int r = 0; r < 4 && !found; ++r) {
        const auto corners = detail::face_corners(d, c0.regions[static_cast<std::size_t>(r)]);
        if (corners.size() != 3) {
            continue;
        }
        std::set<int> who;
        for (auto [c, qd] : corners) {
            who.insert(c);
        }
        if (who != std::set<int>{xs[0], xs[1], xs[2]}) {
            continue;
        }
        found = true;
        // each side of the triangle is over at both ends for the top strand
        for (auto [c, qd] : corners) {
            const int e = d.crossings[static_cast<std::size_t>(c)].edge;
            for (int dir : detail::quadrant_sides(qd)) {
                const auto a = detail::follow(code, partner, roles, e, dir);
                slidable |= a.over_at_start == a.over_at_end;
            }
        }
    }
    if (!found) {
        fail(errc::not_a_triangle, "the crossings do not bound a triangular face");
    }
    if (!slidable) {
        fail(errc::not_a_triangle, "the triangle is alternating, no strand can slide across it");
    }
    const int n = code.crossing_count();
    const int sw = d.self_writhe;
    const auto before = detail::crossing_set(code);
    window w = detail::cover(code, {k1, k2, k3});
    while (true) {
        if (static_cast<int>(internal_edges(code, w).size()) <= max_rewrite_edges) {
            auto found_rw = window_rewrites(
                code, w,
                [&](const grid_code &c) {
                    return c.crossing_count() == n && detail::crossing_set(c) != before
                           && count_components(c) == d.component_count();
                },
                0);
            for (auto &rw : found_rw) {
                if (trace(rw.result).self_writhe == sw) {
                    if (record) {
                        *record = {move_kind::r3, rw.site, rw.labels, {}, std::nullopt};
                    }
                    return rw.result;
                }
            }
        }
        const window grown{std::max(0, w.x0 - 1), std::max(0, w.y0 - 1), std::min(code.width(), w.x1 + 1),
                           std::min(code.height(), w.y1 + 1)};
        if (grown == w || static_cast<int>(internal_edges(code, grown).size()) > max_rewrite_edges) {
            break;
        }
        w = grown;
    }
    fail(errc::pattern_not_found, "no grid realization of the slide within a window of "
                                      + std::to_string(max_rewrite_edges) + " edges");
}

// Triples of crossing edges bounding a triangular face that R3 can slide.
inline std::vector<std::array<int, 3>> find_triangles(const grid_code &code)
{
    const auto d = trace(code);
    std::set<std::array<int, 3>> out;
    for (int f = 0; f < d.face_count; ++f) {
        const auto corners = detail::face_corners(d, f);
        if (corners.size() != 3) {
            continue;
        }
        std::array<int, 3> t{};
        for (std::size_t i = 0; i < 3; ++i) {
            t[i] = d.crossings[static_cast<std::size_t>(corners[i].first)].edge;
        }
        std::sort(t.begin(), t.end());
        if (t[0] != t[1] && t[1] != t[2]) {
            out.insert(t);
        }
    }
    std::vector<std::array<int, 3>> usable;
    for (const auto &t : out) {
        try {
            apply_r3(code, t[0], t[1], t[2]);
            usable.push_back(t);
        } catch (const error &) {
        }
    }
    return usable;
}

// ---------------------------------------------------------------------------
// All-over move

namespace detail {

inline isometry inverse(isometry g, int p, int q)
{
    const auto fwd = edge_permutation(p, q, g);
    const int np = g.transpose ? q : p;
    const int nq = g.transpose ? p : q;
    for (int t = 0; t < 2; ++t) {
        for (int fx = 0; fx < 2; ++fx) {
            for (int fy = 0; fy < 2; ++fy) {
                const isometry h{t != 0, fx != 0, fy != 0};
                if ((h.transpose ? nq : np) != p) {
                    continue;
                }
                const auto back = edge_permutation(np, nq, h);
                bool ok = true;
                for (std::size_t k = 0; k < fwd.size() && ok; ++k) {
                    ok = back[static_cast<std::size_t>(fwd[k])] == static_cast<int>(k);
                }
                if (ok) {
                    return h;
                }
            }
        }
    }
    return g;
}

// Replaces the last two columns by one; candidates are ordered by crossing
// count, then label order.
inline std::optional<grid_code> absorb_right_column(const grid_code &code)
{
    const int p = code.width();
    const int q = code.height();
    if (p < 2) {
        return std::nullopt;
    }
    const window old_w{p - 2, 0, p, q};
    const window new_w{p - 2, 0, p - 1, q};
    grid_code base(p - 1, q);
    for (int j = 0; j + 1 < q; ++j) {
        for (int i = 0; i < p - 2; ++i) {
            base[base.row_index(j, i)] = code[code.row_index(j, i)];
        }
    }
    for (int i = 0; i + 1 < p - 1; ++i) {
        for (int j = 0; j < q; ++j) {
            base[base.col_index(i, j)] = code[code.col_index(i, j)];
        }
    }
    const auto free_edges = internal_edges(base, new_w);
    if (static_cast<int>(free_edges.size()) > max_rewrite_edges) {
        return std::nullopt;
    }
    const auto original = cut_tangle(code, old_w);
    std::optional<grid_code> best;
    static constexpr std::array<edge_label, 4> alphabet{edge_label::mir, edge_label::perp, edge_label::pos,
                                                        edge_label::neg};
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << (2 * free_edges.size())); ++m) {
        grid_code cand = base;
        for (std::size_t e = 0; e < free_edges.size(); ++e) {
            cand[free_edges[e]] = alphabet[(m >> (2 * (free_edges.size() - 1 - e))) & 3u];
        }
        if (best && cand.crossing_count() >= best->crossing_count()) {
            continue;
        }
        if (equivalent_tangles(original, cut_tangle(cand, new_w))) {
            best = cand;
        }
    }
    return best;
}

} // namespace detail

struct all_over_side {
    std::string_view name;
    isometry to_right;
};

inline constexpr std::array<all_over_side, 4> all_over_sides{{
    {"right", {false, false, false}},
    {"left", {false, true, false}},
    {"top", {true, false, false}},
    {"bottom", {true, true, false}},
}};

inline constexpr int max_global_labels = 8;

namespace detail {

// Certifies that grid codes present the same link as a fixed source code:
// equal component count and normalized polynomial, then a common canonical
// diagram reached by Reidemeister simplification.
class link_matcher {
public:
    explicit link_matcher(const grid_code &source)
        : m_components(count_components(source)), m_search(simplify(to_diagram(source)))
    {
        if (source.crossing_count() <= max_bracket_crossings) {
            m_polynomial = normalized_polynomial(source);
        }
    }

    int simplest() const noexcept { return m_search.crossings; }

    bool matches(const grid_code &c) const
    {
        if (count_components(c) != m_components) {
            return false;
        }
        if (m_polynomial && !(normalized_polynomial(c) == *m_polynomial)) {
            return false;
        }
        const auto other = simplify(to_diagram(c));
        if (other.crossings != m_search.crossings) {
            return false;
        }
        return std::any_of(other.minimal.begin(), other.minimal.end(),
                           [&](const auto &k) { return m_search.minimal.count(k) > 0; });
    }

private:
    int m_components;
    simplification m_search;
    std::optional<laurent_poly> m_polynomial;
};

// Codes of RG[p,q] with at most `max_crossings` crossings, fewest crossings
// first, then in label order.
inline std::vector<grid_code> codes_up_to(int p, int q, int max_crossings)
{
    const int v = static_cast<int>(label_count(p, q));
    static constexpr std::array<edge_label, 4> alphabet{edge_label::neg, edge_label::perp, edge_label::pos,
                                                        edge_label::mir};
    std::vector<grid_code> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << (2 * v)); ++m) {
        grid_code c(p, q);
        for (int k = 0; k < v; ++k) {
            c[k] = alphabet[(m >> (2 * (v - 1 - k))) & 3u];
        }
        if (c.crossing_count() <= max_crossings) {
            out.push_back(std::move(c));
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const grid_code &a, const grid_code &b) {
        return a.crossing_count() < b.crossing_count();
    });
    return out;
}

} // namespace detail

// Shrinks the grid by one column or row, trying the sides in the order
// right, left, top, bottom. A side is absorbed when the last two columns cut
// out a tangle that one column realizes; failing that, a small target grid
// is searched for a code certified to present the same link. Among the
// candidates the one with the fewest crossings wins.
inline grid_code apply_all_over(const grid_code &code, move *record = nullptr, std::string_view only_side = {})
{
    code.require_classical();
    const auto done = [&](std::string_view side, grid_code out) {
        if (record) {
            *record = {move_kind::all_over, {}, {}, std::string(side), out};
        }
        return out;
    };
    for (const auto &side : all_over_sides) {
        if (!only_side.empty() && only_side != side.name) {
            continue;
        }
        const auto g = side.to_right;
        const grid_code turned = apply(g, code, reflection_action::keep_signs);
        if (auto shrunk = detail::absorb_right_column(turned)) {
            return done(side.name,
                        apply(detail::inverse(g, code.width(), code.height()), *shrunk, reflection_action::keep_signs));
        }
    }
    std::optional<detail::link_matcher> matcher;
    for (const auto &side : all_over_sides) {
        if ((!only_side.empty() && only_side != side.name) || (side.name != "right" && side.name != "top")) {
            continue;
        }
        const int p = code.width() - (side.name == "right" ? 1 : 0);
        const int q = code.height() - (side.name == "top" ? 1 : 0);
        if (p < 1 || q < 1 || label_count(p, q) > max_global_labels) {
            continue;
        }
        if (!matcher) {
            matcher.emplace(code);
        }
        for (const auto &c : detail::codes_up_to(p, q, code.crossing_count())) {
            if (c.crossing_count() >= matcher->simplest() && matcher->matches(c)) {
                return done(side.name, c);
            }
        }
    }
    fail(errc::pattern_not_found, "no boundary column or row can be absorbed");
}

// ---------------------------------------------------------------------------
// Unlink certificates

namespace detail {

// Each component is descending or ascending from some basepoint, and the
// components can be stacked.
inline bool stacked_unlink_certificate(const traced_diagram &d)
{
    const int c = d.component_count();
    for (int ci = 0; ci < c; ++ci) {
        std::vector<crossing_visit> self;
        for (const auto &v : d.components[static_cast<std::size_t>(ci)].visits) {
            const auto &cr = d.crossings[static_cast<std::size_t>(v.crossing)];
            if (cr.owner[0] == cr.owner[1]) {
                self.push_back(v);
            }
        }
        if (self.empty()) {
            continue;
        }
        bool ok = false;
        for (std::size_t start = 0; start < self.size() && !ok; ++start) {
            for (bool want_over : {true, false}) {
                std::set<int> met;
                bool good = true;
                for (std::size_t t = 0; t < self.size() && good; ++t) {
                    const auto &v = self[(start + t) % self.size()];
                    if (met.insert(v.crossing).second) {
                        good = v.over == want_over;
                    }
                }
                ok |= good;
            }
        }
        if (!ok) {
            return false;
        }
    }
    std::vector<std::pair<int, int>> edges;
    for (const auto &cr : d.crossings) {
        if (cr.owner[0] != cr.owner[1]) {
            const int over = cr.owner[static_cast<std::size_t>(cr.over)];
            const int under = cr.owner[static_cast<std::size_t>(1 - cr.over)];
            edges.emplace_back(over, under);
        }
    }
    return acyclic(c, edges);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Reduction driver

struct reduce_result {
    grid_code code;
    reduction_log log;
    bool budget_exceeded = false;
};

inline long default_budget(const grid_code &code)
{
    const long n = code.crossing_count();
    return std::max(10L, 10 * n * n);
}

namespace detail {

inline std::optional<std::pair<grid_code, move>> first_simplification(const grid_code &code)
{
    if (code.crossing_count() == 0) {
        return std::nullopt;
    }
    if (auto curls = find_curls(code); !curls.empty()) {
        move m;
        auto next = apply_r1(code, curls.front(), &m);
        return std::pair{next, m};
    }
    if (auto bigons = find_bigons(code); !bigons.empty()) {
        move m;
        auto next = apply_r2(code, bigons.front().first, bigons.front().second, &m);
        return std::pair{next, m};
    }
    return std::nullopt;
}

// Greedy R1/R2 closure, used both by reduce and for lookahead.
inline std::pair<grid_code, std::vector<move>> simplify(grid_code code, long &budget)
{
    std::vector<move> moves;
    while (budget > 0) {
        auto step = first_simplification(code);
        if (!step) {
            break;
        }
        code = step->first;
        moves.push_back(step->second);
        --budget;
    }
    return {code, moves};
}

inline std::optional<std::pair<grid_code, move>> shrink(const grid_code &code)
{
    for (const auto &side : all_over_sides) {
        move m;
        try {
            auto next = apply_all_over(code, &m, side.name);
            if (next.crossing_count() <= code.crossing_count()) {
                return std::pair{next, m};
            }
        } catch (const error &e) {
            if (e.code() != errc::pattern_not_found) {
                throw;
            }
        }
    }
    return std::nullopt;
}

// Windows scanned for rewrites: all 2x2 blocks, bottom-left first.
inline std::vector<window> rewrite_windows(const grid_code &code)
{
    std::vector<window> out;
    for (int h = 2; h <= 2; ++h) {
        for (int y = 0; y + h <= code.height(); ++y) {
            for (int x = 0; x + 2 <= code.width(); ++x) {
                out.push_back({x, y, x + 2, y + h});
            }
        }
    }
    return out;
}

} // namespace detail

// Greedy reduction: R1, then R2, then an all-over move, then a window rewrite
// (R3 or mirror-move) whose greedy continuation lowers the crossing count.
// Stops at a fixpoint or when `budget` moves have been applied.
inline reduce_result reduce(const grid_code &code, long budget = -1)
{
    code.require_classical();
    if (budget < 0) {
        budget = default_budget(code);
    }
    reduce_result res{code, {code, code, {}}, false};
    grid_code cur = code;
    auto push = [&](const move &m, const grid_code &next) {
        res.log.steps.push_back(m);
        cur = next;
        --budget;
    };
    while (true) {
        if (budget <= 0) {
            res.budget_exceeded = detail::first_simplification(cur).has_value();
            break;
        }
        if (cur.crossing_count() == 0) {
            break;
        }
        if (auto step = detail::first_simplification(cur)) {
            push(step->second, step->first);
            continue;
        }
        if (auto step = detail::shrink(cur)) {
            push(step->second, step->first);
            continue;
        }
        bool progressed = false;
        const int n = cur.crossing_count();
        const auto d = trace(cur);
        for (const auto &w : detail::rewrite_windows(cur)) {
            if (progressed || n == 0) {
                break;
            }
            auto cands = window_rewrites(cur, w, [&](const grid_code &c) { return c.crossing_count() <= n + 1; });
            for (const auto &rw : cands) {
                long look = std::min(budget - 1, 4L * n + 4);
                if (look <= 0) {
                    break;
                }
                auto [after, moves] = detail::simplify(rw.result, look);
                if (after.crossing_count() >= n) {
                    continue;
                }
                const bool r3 = rw.result.crossing_count() == n && trace(rw.result).self_writhe == d.self_writhe;
                push({r3 ? move_kind::r3 : move_kind::mirror_move, rw.site, rw.labels, {}, std::nullopt}, rw.result);
                for (const auto &m : moves) {
                    if (budget <= 0) {
                        break;
                    }
                    push(m, apply_move(cur, m));
                }
                progressed = true;
                break;
            }
        }
        if (!progressed && n > 0 && cur.size() <= max_global_labels) {
            // same-grid replacement by a simpler certified code
            const detail::link_matcher matcher(cur);
            for (const auto &c : detail::codes_up_to(cur.width(), cur.height(), n - 1)) {
                if (c.crossing_count() >= matcher.simplest() && matcher.matches(c)) {
                    move m{move_kind::mirror_move, {}, {}, {}, std::nullopt};
                    for (int k = 0; k < c.size(); ++k) {
                        if (c[k] != cur[k]) {
                            m.site.push_back(k);
                            m.labels.push_back(c[k]);
                        }
                    }
                    push(m, c);
                    progressed = true;
                    break;
                }
            }
        }
        if (!progressed) {
            break;
        }
    }
    res.code = cur;
    res.log.final_code = cur;
    return res;
}

enum class unlink_answer { yes, no, unknown };

struct unlink_verdict {
    unlink_answer answer = unlink_answer::unknown;
    int circles = 0;
};

inline std::string_view unlink_answer_name(unlink_answer a) noexcept
{
    switch (a) {
    case unlink_answer::yes: return "YES";
    case unlink_answer::no: return "NO";
    case unlink_answer::unknown: return "UNKNOWN";
    }
    return "?";
}

// YES when the diagram is certified an unlink (crossing-free, stacked
// descending components, or reduce reaches a crossing-free code); NO when the
// normalized bracket differs from the unlink's; UNKNOWN otherwise.
inline unlink_verdict is_unlink(const grid_code &code, long budget = -1)
{
    code.require_classical();
    const auto d = trace(code);
    const int c = d.component_count();
    if (d.crossings.empty() || detail::stacked_unlink_certificate(d)) {
        return {unlink_answer::yes, c};
    }
    if (code.crossing_count() <= max_bracket_crossings) {
        const auto x = normalized_polynomial(code);
        if (!(x == poly::loop_value().pow(static_cast<unsigned>(c - 1)))) {
            return {unlink_answer::no, 0};
        }
    }
    if (simplify(to_diagram(code)).crossings == 0) {
        return {unlink_answer::yes, c};
    }
    const auto r = reduce(code, budget);
    if (r.code.crossing_count() == 0) {
        return {unlink_answer::yes, c};
    }
    return {unlink_answer::unknown, 0};
}

} // namespace mirrorknot
