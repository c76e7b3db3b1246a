#pragma once

// Grid codes and light-ray tracing.
//
// A code on RG[p,q] labels the v = 2pq - p - q internal edges of a p x q grid
// of square cells. Labels are stored flat in interchange order: the q-1
// horizontal rows (bottom to top, each left to right) followed by the p-1
// vertical columns (left to right, each bottom to top).
//
// Every cell carries the four diagonal steps joining its edge midpoints. A ray
// crosses straight through a +1/-1 label, reflects off a 2/-2 mirror and
// reflects off the outer boundary.

#include <array>
#include <cassert>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <mirrorknot/error.hpp>

namespace mirrorknot {

enum class edge_label : std::int8_t {
    neg = -1,
    virt = 0,
    pos = 1,
    perp = -2,
    mir = 2,
};

constexpr int to_int(edge_label l) noexcept { return static_cast<int>(l); }

constexpr bool is_crossing(edge_label l) noexcept { return l == edge_label::pos || l == edge_label::neg; }
constexpr bool is_mirror(edge_label l) noexcept { return l == edge_label::mir || l == edge_label::perp; }

inline edge_label label_from_int(int v)
{
    switch (v) {
    case -2: return edge_label::perp;
    case -1: return edge_label::neg;
    case 0: return edge_label::virt;
    case 1: return edge_label::pos;
    case 2: return edge_label::mir;
    default: fail(errc::label_error, "label " + std::to_string(v) + " is not one of 1, -1, 2, -2, 0");
    }
}

constexpr edge_label flip_sign(edge_label l) noexcept
{
    switch (l) {
    case edge_label::pos: return edge_label::neg;
    case edge_label::neg: return edge_label::pos;
    default: return l;
    }
}

// Number of internal edges of RG[p,q].
constexpr long label_count(int p, int q) noexcept { return 2L * p * q - p - q; }

class grid_code
{
public:
    grid_code() : grid_code(1, 1) {}

    grid_code(int p, int q) : m_p(p), m_q(q)
    {
        if (p < 1 || q < 1) {
            fail(errc::shape_error, "grid dimensions must be positive");
        }
        m_labels.assign(static_cast<std::size_t>(label_count(p, q)), edge_label::mir);
    }

    grid_code(int p, int q, std::vector<edge_label> labels) : m_p(p), m_q(q), m_labels(std::move(labels))
    {
        if (p < 1 || q < 1) {
            fail(errc::shape_error, "grid dimensions must be positive");
        }
        if (static_cast<long>(m_labels.size()) != label_count(p, q)) {
            fail(errc::shape_error, "RG[" + std::to_string(p) + "," + std::to_string(q) + "] needs "
                                        + std::to_string(label_count(p, q)) + " labels, got "
                                        + std::to_string(m_labels.size()));
        }
    }

    // Builds a code from the nested-list form: q-1 rows of length p followed by
    // p-1 columns of length q.
    static grid_code from_lists(int p, int q, const std::vector<std::vector<int>> &lists)
    {
        if (static_cast<int>(lists.size()) != (q - 1) + (p - 1)) {
            fail(errc::shape_error, "expected " + std::to_string(q - 1 + p - 1) + " lists");
        }
        std::vector<edge_label> labels;
        for (std::size_t k = 0; k < lists.size(); ++k) {
            const auto want = static_cast<std::size_t>(k < static_cast<std::size_t>(q - 1) ? p : q);
            if (lists[k].size() != want) {
                fail(errc::shape_error, "list " + std::to_string(k) + " has length " + std::to_string(lists[k].size())
                                            + ", expected " + std::to_string(want));
            }
            for (int v : lists[k]) {
                labels.push_back(label_from_int(v));
            }
        }
        return grid_code(p, q, std::move(labels));
    }

    int width() const noexcept { return m_p; }
    int height() const noexcept { return m_q; }
    int size() const noexcept { return static_cast<int>(m_labels.size()); }
    int horizontal_count() const noexcept { return m_p * (m_q - 1); }

    edge_label operator[](int k) const { return m_labels[static_cast<std::size_t>(k)]; }
    edge_label &operator[](int k) { return m_labels[static_cast<std::size_t>(k)]; }

    // Horizontal edge on top of cell (i, j), j < q-1.
    int row_index(int j, int i) const noexcept { return j * m_p + i; }
    // Vertical edge to the right of cell (i, j), i < p-1.
    int col_index(int i, int j) const noexcept { return horizontal_count() + i * m_q + j; }

    bool is_horizontal(int k) const noexcept { return k < horizontal_count(); }

    std::span<const edge_label> labels() const noexcept { return m_labels; }

    int crossing_count() const noexcept
    {
        int n = 0;
        for (auto l : m_labels) {
            n += is_crossing(l) ? 1 : 0;
        }
        return n;
    }

    bool has_virtual() const noexcept
    {
        for (auto l : m_labels) {
            if (l == edge_label::virt) {
                return true;
            }
        }
        return false;
    }

    void require_classical() const
    {
        if (has_virtual()) {
            fail(errc::virtual_unsupported, "virtual crossings (label 0) are not supported here");
        }
    }

    std::vector<std::vector<int>> to_lists() const
    {
        std::vector<std::vector<int>> out;
        int k = 0;
        for (int j = 0; j + 1 < m_q; ++j) {
            auto &row = out.emplace_back();
            for (int i = 0; i < m_p; ++i) {
                row.push_back(to_int(m_labels[static_cast<std::size_t>(k++)]));
            }
        }
        for (int i = 0; i + 1 < m_p; ++i) {
            auto &col = out.emplace_back();
            for (int j = 0; j < m_q; ++j) {
                col.push_back(to_int(m_labels[static_cast<std::size_t>(k++)]));
            }
        }
        return out;
    }

    friend bool operator==(const grid_code &, const grid_code &) = default;

    friend std::strong_ordering operator<=>(const grid_code &a, const grid_code &b)
    {
        if (auto c = a.m_p <=> b.m_p; c != 0) {
            return c;
        }
        if (auto c = a.m_q <=> b.m_q; c != 0) {
            return c;
        }
        for (std::size_t k = 0; k < a.m_labels.size(); ++k) {
            if (auto c = to_int(a.m_labels[k]) <=> to_int(b.m_labels[k]); c != 0) {
                return c;
            }
        }
        return std::strong_ordering::equal;
    }

private:
    int m_p;
    int m_q;
    std::vector<edge_label> m_labels;
};

inline int component_count_theorem(int p, int q)
{
    if (p < 1 || q < 1) {
        fail(errc::range_error, "grid dimensions must be positive");
    }
    return std::gcd(p, q);
}

// Which geometric mirror each mirror label denotes. The default was fixed by
// calibrating against the worked fixtures (trefoil, Hopf link and the eight
// Kauffman states of {{1,1},{-1,-2}}); see tests/test_grid.cpp.
enum class mirror_convention {
    two_collinear,     // 2 lies along the edge, -2 is perpendicular to it
    two_perpendicular, // 2 is perpendicular to the edge, -2 lies along it
};

inline constexpr mirror_convention default_convention = mirror_convention::two_collinear;

namespace geometry {

// Steps of a cell: 0 joins S-E, 1 joins E-N, 2 joins N-W, 3 joins W-S.
// A port is one end of a step: id = 2 * step + end.
enum side : int { south = 0, east = 1, north = 2, west = 3 };

constexpr std::array<std::array<int, 2>, 4> step_sides{{{south, east}, {east, north}, {north, west}, {west, south}}};

constexpr int port_id(int step, int end) noexcept { return 2 * step + end; }
constexpr int port_step(int port) noexcept { return port / 2; }
constexpr int port_end(int port) noexcept { return port % 2; }
constexpr int other_end(int port) noexcept { return port ^ 1; }

// Port of `cell` on `s`; half 0 is the south/west half, half 1 the north/east half.
constexpr int side_port(int cell, int s, int half) noexcept
{
    // (step, end) per side and half
    constexpr std::array<std::array<std::array<int, 2>, 2>, 4> table{{
        {{{3, 1}, {0, 0}}}, // south: west half, east half
        {{{0, 1}, {1, 0}}}, // east: south half, north half
        {{{2, 0}, {1, 1}}}, // north: west half, east half
        {{{3, 0}, {2, 1}}}, // west: south half, north half
    }};
    const auto &e = table[static_cast<std::size_t>(s)][static_cast<std::size_t>(half)];
    return port_id(4 * cell + e[0], e[1]);
}

// Compass direction of the step leaving a midpoint through a port.
enum direction : int { ne = 0, nw = 1, sw = 2, se = 3 };

constexpr std::array<int, 2> direction_vector(int d) noexcept
{
    constexpr std::array<std::array<int, 2>, 4> v{{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}};
    return v[static_cast<std::size_t>(d)];
}

// The four ports around an internal edge midpoint. `lo`/`hi` follow
// side_port; `near` is the cell below (horizontal edge) or to the left
// (vertical edge).
struct edge_vertex {
    int near_lo, near_hi, far_lo, far_hi;
    bool horizontal;
};

inline edge_vertex vertex_of(const grid_code &code, int k)
{
    const int p = code.width();
    if (code.is_horizontal(k)) {
        const int j = k / p;
        const int i = k % p;
        const int below = j * p + i;
        const int above = (j + 1) * p + i;
        return {side_port(below, north, 0), side_port(below, north, 1), side_port(above, south, 0),
                side_port(above, south, 1), true};
    }
    const int kk = k - code.horizontal_count();
    const int q = code.height();
    const int i = kk / q;
    const int j = kk % q;
    const int left = j * p + i;
    const int right = j * p + i + 1;
    return {side_port(left, east, 0), side_port(left, east, 1), side_port(right, west, 0), side_port(right, west, 1),
            false};
}

// Directions of near_lo, near_hi, far_lo, far_hi.
constexpr std::array<int, 4> vertex_directions(bool horizontal) noexcept
{
    if (horizontal) {
        return {sw, se, nw, ne};
    }
    return {sw, nw, se, ne};
}

inline bool mirror_is_collinear(edge_label m, mirror_convention conv) noexcept
{
    const bool two = m == edge_label::mir;
    return conv == mirror_convention::two_collinear ? two : !two;
}

// The mirror label that realizes the A-smoothing of a crossing label: the
// state-sum weight of replacing sign s by mirror t is -s * sgn(t).
constexpr edge_label a_smoothing(edge_label crossing) noexcept
{
    return crossing == edge_label::pos ? edge_label::perp : edge_label::mir;
}

constexpr edge_label b_smoothing(edge_label crossing) noexcept
{
    return crossing == edge_label::pos ? edge_label::mir : edge_label::perp;
}

// Strand 0 joins near_lo and far_hi (the SW-NE diagonal); strand 1 joins
// near_hi and far_lo (NW-SE). The over strand is the one that, rotated
// counterclockwise, sweeps the regions joined by the A-smoothing.
inline int over_strand(const grid_code &code, int k, mirror_convention conv)
{
    const bool collinear = mirror_is_collinear(a_smoothing(code[k]), conv);
    const bool vertical_split = code.is_horizontal(k) ? !collinear : collinear;
    return vertical_split ? 0 : 1;
}

// Perfect matching on the 8pq ports induced by the labels.
inline std::vector<int> port_partners(const grid_code &code, mirror_convention conv = default_convention)
{
    code.require_classical();
    const int p = code.width();
    const int q = code.height();
    std::vector<int> partner(static_cast<std::size_t>(8 * p * q), -1);
    auto link = [&](int a, int b) {
        partner[static_cast<std::size_t>(a)] = b;
        partner[static_cast<std::size_t>(b)] = a;
    };
    for (int j = 0; j < q; ++j) {
        for (int i = 0; i < p; ++i) {
            const int c = j * p + i;
            if (j == 0) {
                link(side_port(c, south, 0), side_port(c, south, 1));
            }
            if (j == q - 1) {
                link(side_port(c, north, 0), side_port(c, north, 1));
            }
            if (i == 0) {
                link(side_port(c, west, 0), side_port(c, west, 1));
            }
            if (i == p - 1) {
                link(side_port(c, east, 0), side_port(c, east, 1));
            }
        }
    }
    for (int k = 0; k < code.size(); ++k) {
        const auto v = vertex_of(code, k);
        const auto l = code[k];
        if (is_crossing(l)) {
            link(v.near_lo, v.far_hi);
            link(v.near_hi, v.far_lo);
        } else if (mirror_is_collinear(l, conv)) {
            link(v.near_lo, v.near_hi);
            link(v.far_lo, v.far_hi);
        } else {
            link(v.near_lo, v.far_lo);
            link(v.near_hi, v.far_hi);
        }
    }
    return partner;
}

} // namespace geometry

// Number of closed components, without building the full diagram.
inline int count_components(const grid_code &code, mirror_convention conv = default_convention)
{
    const auto partner = geometry::port_partners(code, conv);
    const std::size_t steps = partner.size() / 2;
    std::vector<char> seen(steps, 0);
    int components = 0;
    for (std::size_t s0 = 0; s0 < steps; ++s0) {
        if (seen[s0]) {
            continue;
        }
        ++components;
        int port = geometry::port_id(static_cast<int>(s0), 1);
        while (true) {
            seen[static_cast<std::size_t>(geometry::port_step(port))] = 1;
            const int next = partner[static_cast<std::size_t>(port)];
            if (geometry::port_step(next) == static_cast<int>(s0)) {
                break;
            }
            port = geometry::other_end(next);
        }
    }
    return components;
}

struct oriented_step {
    int step;
    bool forward; // traversed from end 0 to end 1
};

// One pass of a component through a crossing.
struct crossing_visit {
    int crossing;
    int strand;
    bool over;
};

struct component_info {
    std::vector<oriented_step> steps;
    std::vector<crossing_visit> visits; // cyclic, in traversal order
};

struct crossing_info {
    int edge;
    edge_label label;
    int over;                   // 0 or 1, see geometry::over_strand
    std::array<int, 2> exits;   // per strand: direction the traversal leaves through
    std::array<int, 2> owner;   // per strand: component index
    int sign;                   // +1 / -1 under the traced orientation
    std::array<int, 4> regions; // faces around the midpoint: N, W, S, E
};

// A traced mirror-curve: its components with their orientation from the
// trace, the crossings with over/under and oriented sign, and the faces of the
// planar diagram (regions of the plane minus the curve).
struct traced_diagram {
    int p = 1;
    int q = 1;
    std::vector<component_info> components;
    std::vector<crossing_info> crossings;
    std::vector<int> crossing_of_edge; // -1 for mirrors
    int circles = 0;
    int writhe = 0;
    int self_writhe = 0;
    int face_count = 0;

    int component_count() const noexcept { return static_cast<int>(components.size()); }
};

namespace detail {

struct union_find {
    std::vector<int> parent;
    explicit union_find(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x)
    {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

} // namespace detail

inline traced_diagram trace(const grid_code &code, mirror_convention conv = default_convention)
{
    using namespace geometry;
    const auto partner = port_partners(code, conv);
    const int p = code.width();
    const int q = code.height();

    traced_diagram d;
    d.p = p;
    d.q = q;
    d.crossing_of_edge.assign(static_cast<std::size_t>(code.size()), -1);

    // port -> (crossing, strand, exit direction) for ports at crossing midpoints
    struct port_role {
        int crossing = -1;
        int strand = 0;
        int direction = 0;
    };
    std::vector<port_role> roles(partner.size());
    for (int k = 0; k < code.size(); ++k) {
        if (!is_crossing(code[k])) {
            continue;
        }
        const auto v = vertex_of(code, k);
        const auto dirs = vertex_directions(v.horizontal);
        const int idx = static_cast<int>(d.crossings.size());
        d.crossing_of_edge[static_cast<std::size_t>(k)] = idx;
        crossing_info ci{};
        ci.edge = k;
        ci.label = code[k];
        ci.over = over_strand(code, k, conv);
        d.crossings.push_back(ci);
        const std::array<int, 4> ports{v.near_lo, v.near_hi, v.far_lo, v.far_hi};
        const std::array<int, 4> strands{0, 1, 1, 0};
        for (std::size_t t = 0; t < 4; ++t) {
            roles[static_cast<std::size_t>(ports[t])] = {idx, strands[t], dirs[t]};
        }
    }

    const std::size_t steps = partner.size() / 2;
    std::vector<char> seen(steps, 0);
    for (std::size_t s0 = 0; s0 < steps; ++s0) {
        if (seen[s0]) {
            continue;
        }
        component_info comp;
        const int ci = static_cast<int>(d.components.size());
        int step = static_cast<int>(s0);
        int end_in = 0; // entering end of current step
        while (true) {
            seen[static_cast<std::size_t>(step)] = 1;
            comp.steps.push_back({step, end_in == 0});
            const int arrive = port_id(step, 1 - end_in);
            const int leave = partner[static_cast<std::size_t>(arrive)];
            const auto &role = roles[static_cast<std::size_t>(leave)];
            if (role.crossing >= 0) {
                auto &cr = d.crossings[static_cast<std::size_t>(role.crossing)];
                cr.exits[static_cast<std::size_t>(role.strand)] = role.direction;
                cr.owner[static_cast<std::size_t>(role.strand)] = ci;
                comp.visits.push_back({role.crossing, role.strand, role.strand == cr.over});
            }
            step = port_step(leave);
            end_in = port_end(leave);
            if (step == static_cast<int>(s0)) {
                break;
            }
        }
        if (comp.visits.empty()) {
            ++d.circles;
        }
        d.components.push_back(std::move(comp));
    }

    for (auto &cr : d.crossings) {
        const auto o = direction_vector(cr.exits[static_cast<std::size_t>(cr.over)]);
        const auto u = direction_vector(cr.exits[static_cast<std::size_t>(1 - cr.over)]);
        const int z = o[0] * u[1] - o[1] * u[0];
        cr.sign = z > 0 ? 1 : -1;
        d.writhe += cr.sign;
        if (cr.owner[0] == cr.owner[1]) {
            d.self_writhe += cr.sign;
        }
    }

    // Faces: cell centres (pq nodes) and grid points ((p+1)(q+1) nodes, all
    // boundary points merged with the outer face). A collinear mirror joins
    // the two grid points at the ends of its edge, a perpendicular one joins
    // the two cell centres; a crossing separates all four.
    const int centres = p * q;
    const auto point = [&](int x, int y) { return centres + y * (p + 1) + x; };
    detail::union_find uf(centres + (p + 1) * (q + 1));
    for (int y = 0; y <= q; ++y) {
        for (int x = 0; x <= p; ++x) {
            if (x == 0 || y == 0 || x == p || y == q) {
                uf.unite(point(x, y), point(0, 0));
            }
        }
    }
    for (int k = 0; k < code.size(); ++k) {
        const auto l = code[k];
        if (is_crossing(l)) {
            continue;
        }
        const bool collinear = mirror_is_collinear(l, conv);
        if (code.is_horizontal(k)) {
            const int j = k / p;
            const int i = k % p;
            if (collinear) {
                uf.unite(point(i, j + 1), point(i + 1, j + 1));
            } else {
                uf.unite(j * p + i, (j + 1) * p + i);
            }
        } else {
            const int kk = k - code.horizontal_count();
            const int i = kk / q;
            const int j = kk % q;
            if (collinear) {
                uf.unite(point(i + 1, j), point(i + 1, j + 1));
            } else {
                uf.unite(j * p + i, j * p + i + 1);
            }
        }
    }
    std::vector<int> face_id(uf.parent.size(), -1);
    auto face_of = [&](int node) {
        const int r = uf.find(node);
        auto &f = face_id[static_cast<std::size_t>(r)];
        if (f < 0) {
            f = d.face_count++;
        }
        return f;
    };
    for (int n = 0; n < static_cast<int>(uf.parent.size()); ++n) {
        face_of(n);
    }
    for (auto &cr : d.crossings) {
        const int k = cr.edge;
        if (code.is_horizontal(k)) {
            const int j = k / p;
            const int i = k % p;
            cr.regions = {face_of((j + 1) * p + i), face_of(point(i, j + 1)), face_of(j * p + i),
                          face_of(point(i + 1, j + 1))};
        } else {
            const int kk = k - code.horizontal_count();
            const int i = kk / q;
            const int j = kk % q;
            cr.regions = {face_of(point(i + 1, j + 1)), face_of(j * p + i), face_of(point(i + 1, j)),
                          face_of(j * p + i + 1)};
        }
    }
    return d;
}

inline int writhe(const traced_diagram &d) noexcept { return d.writhe; }

} // namespace mirrorknot
