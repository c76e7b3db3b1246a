#pragma once

// Knot mosaics from mirror-curves.
//
// Rotating the grid by 45 degrees puts every edge midpoint at the centre of
// a unit tile, and every step of the curve joins two side-adjacent tiles.
// RG[p,q] becomes a (p+q) x (p+q) mosaic: crossings give crossing tiles,
// internal mirrors give double arcs, and boundary reflections give quarter
// arcs.

#include <array>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <mirrorknot/grid.hpp>

namespace mirrorknot {

enum class tile { b, a1, a2, a3, a4, l1, l2, d1, d2, x_plus, x_minus };

// Tile sides.
enum mosaic_side : int { tile_north = 0, tile_east = 1, tile_south = 2, tile_west = 3 };

inline constexpr std::array<std::string_view, 11> tile_names{"B",  "A1", "A2", "A3", "A4", "L1",
                                                             "L2", "D1", "D2", "X+", "X-"};

inline std::string_view tile_name(tile t) noexcept { return tile_names[static_cast<std::size_t>(t)]; }

inline tile tile_from_name(std::string_view s)
{
    for (std::size_t i = 0; i < tile_names.size(); ++i) {
        if (tile_names[i] == s) {
            return static_cast<tile>(i);
        }
    }
    fail(errc::shape_error, "unknown tile " + std::string(s));
}

// Pairs of sides joined inside a tile. Crossing tiles join opposite sides;
// X+ has the west-east strand on top, X- the north-south strand.
inline std::vector<std::array<int, 2>> tile_arcs(tile t)
{
    switch (t) {
    case tile::b: return {};
    case tile::a1: return {{tile_north, tile_east}};
    case tile::a2: return {{tile_north, tile_west}};
    case tile::a3: return {{tile_south, tile_west}};
    case tile::a4: return {{tile_south, tile_east}};
    case tile::l1: return {{tile_west, tile_east}};
    case tile::l2: return {{tile_north, tile_south}};
    case tile::d1: return {{tile_north, tile_east}, {tile_south, tile_west}};
    case tile::d2: return {{tile_north, tile_west}, {tile_south, tile_east}};
    case tile::x_plus:
    case tile::x_minus: return {{tile_west, tile_east}, {tile_north, tile_south}};
    }
    return {};
}

inline bool is_crossing_tile(tile t) noexcept { return t == tile::x_plus || t == tile::x_minus; }

struct mosaic {
    int n = 0;
    std::vector<tile> tiles; // row-major, row 0 at the top

    tile at(int row, int col) const { return tiles[static_cast<std::size_t>(row * n + col)]; }
    tile &at(int row, int col) { return tiles[static_cast<std::size_t>(row * n + col)]; }

    int crossing_tiles() const
    {
        int c = 0;
        for (tile t : tiles) {
            c += is_crossing_tile(t) ? 1 : 0;
        }
        return c;
    }

    friend bool operator==(const mosaic &, const mosaic &) = default;
};

namespace detail {

constexpr std::array<int, 2> side_step(int s) noexcept
{
    constexpr std::array<std::array<int, 2>, 4> d{{{-1, 0}, {0, 1}, {1, 0}, {0, -1}}};
    return d[static_cast<std::size_t>(s)];
}

inline int side_mask(tile t)
{
    int m = 0;
    for (auto a : tile_arcs(t)) {
        m |= 1 << a[0];
        m |= 1 << a[1];
    }
    return m;
}

} // namespace detail

// Every connection point meets one on the neighbouring tile, and none lies
// on the outer boundary.
inline bool suitably_connected(const mosaic &m)
{
    for (int r = 0; r < m.n; ++r) {
        for (int c = 0; c < m.n; ++c) {
            const int mask = detail::side_mask(m.at(r, c));
            for (int s = 0; s < 4; ++s) {
                const auto d = detail::side_step(s);
                const int rr = r + d[0];
                const int cc = c + d[1];
                const bool here = (mask >> s) & 1;
                if (rr < 0 || rr >= m.n || cc < 0 || cc >= m.n) {
                    if (here) {
                        return false;
                    }
                    continue;
                }
                const bool there = (detail::side_mask(m.at(rr, cc)) >> ((s + 2) % 4)) & 1;
                if (here != there) {
                    return false;
                }
            }
        }
    }
    return true;
}

// Number of closed curves of a suitably connected mosaic.
inline int mosaic_components(const mosaic &m)
{
    if (!suitably_connected(m)) {
        fail(errc::shape_error, "mosaic is not suitably connected");
    }
    const auto key = [&](int r, int c, int s) { return (r * m.n + c) * 4 + s; };
    std::vector<char> seen(static_cast<std::size_t>(4 * m.n * m.n), 0);
    int comps = 0;
    for (int r = 0; r < m.n; ++r) {
        for (int c = 0; c < m.n; ++c) {
            for (auto arc : tile_arcs(m.at(r, c))) {
                if (seen[static_cast<std::size_t>(key(r, c, arc[0]))]) {
                    continue;
                }
                ++comps;
                int rr = r;
                int cc = c;
                int in = arc[0];
                while (!seen[static_cast<std::size_t>(key(rr, cc, in))]) {
                    seen[static_cast<std::size_t>(key(rr, cc, in))] = 1;
                    int out = -1;
                    for (auto a : tile_arcs(m.at(rr, cc))) {
                        if (a[0] == in) {
                            out = a[1];
                        } else if (a[1] == in) {
                            out = a[0];
                        }
                    }
                    seen[static_cast<std::size_t>(key(rr, cc, out))] = 1;
                    const auto d = detail::side_step(out);
                    rr += d[0];
                    cc += d[1];
                    in = (out + 2) % 4;
                }
            }
        }
    }
    return comps;
}

inline mosaic to_mosaic(const grid_code &code, mirror_convention conv = default_convention)
{
    using namespace geometry;
    code.require_classical();
    const int p = code.width();
    const int q = code.height();
    const auto partner = port_partners(code, conv);
    mosaic m{p + q, std::vector<tile>(static_cast<std::size_t>((p + q) * (p + q)), tile::b)};
    // doubled midpoint (x2, y2) -> tile; column u = x + y, row from y - x
    const auto place = [&](int x2, int y2) -> tile & {
        const int col = (x2 + y2 - 1) / 2;
        const int row = (2 * q - 1 - (y2 - x2)) / 2;
        return m.at(row, col);
    };
    // grid directions to mosaic sides: ne east, nw north, sw west, se south
    constexpr std::array<int, 4> side_of{tile_east, tile_north, tile_west, tile_south};
    const auto from_pairs = [](int s0, int s1) {
        const int mask = (1 << s0) | (1 << s1);
        if (mask == ((1 << tile_north) | (1 << tile_east))) {
            return tile::a1;
        }
        if (mask == ((1 << tile_north) | (1 << tile_west))) {
            return tile::a2;
        }
        if (mask == ((1 << tile_south) | (1 << tile_west))) {
            return tile::a3;
        }
        return tile::a4;
    };
    for (int k = 0; k < code.size(); ++k) {
        int x2 = 0;
        int y2 = 0;
        if (code.is_horizontal(k)) {
            x2 = 2 * (k % p) + 1;
            y2 = 2 * (k / p + 1);
        } else {
            const int kk = k - code.horizontal_count();
            x2 = 2 * (kk / q + 1);
            y2 = 2 * (kk % q) + 1;
        }
        if (is_crossing(code[k])) {
            place(x2, y2) = over_strand(code, k, conv) == 0 ? tile::x_plus : tile::x_minus;
        } else {
            const auto v = vertex_of(code, k);
            const auto dirs = vertex_directions(v.horizontal);
            const std::array<int, 4> ports{v.near_lo, v.near_hi, v.far_lo, v.far_hi};
            int mate = 0;
            for (std::size_t t = 1; t < 4; ++t) {
                if (partner[static_cast<std::size_t>(ports[0])] == ports[t]) {
                    mate = dirs[t];
                }
            }
            // near_lo enters from the west side; its arc turns north or south
            place(x2, y2) = side_of[static_cast<std::size_t>(mate)] == tile_north ? tile::d2 : tile::d1;
        }
    }
    // boundary reflections
    for (int i = 0; i < p; ++i) {
        place(2 * i + 1, 0) = from_pairs(side_of[ne], side_of[nw]);
        place(2 * i + 1, 2 * q) = from_pairs(side_of[se], side_of[sw]);
    }
    for (int j = 0; j < q; ++j) {
        place(0, 2 * j + 1) = from_pairs(side_of[ne], side_of[se]);
        place(2 * p, 2 * j + 1) = from_pairs(side_of[nw], side_of[sw]);
    }
    return m;
}

inline int mosaic_number_upper_bound(const grid_code &code) { return code.width() + code.height(); }

inline int grid_diagram_dimension(const grid_code &code) { return mosaic_number_upper_bound(code) + 1; }

// n, then n lines of n tile names.
inline std::string mosaic_to_text(const mosaic &m)
{
    std::string out = std::to_string(m.n) + "\n";
    for (int r = 0; r < m.n; ++r) {
        for (int c = 0; c < m.n; ++c) {
            out += c ? " " : "";
            out += tile_name(m.at(r, c));
        }
        out += "\n";
    }
    return out;
}

inline mosaic parse_mosaic(std::string_view text)
{
    std::istringstream in{std::string(text)};
    mosaic m;
    if (!(in >> m.n) || m.n < 0) {
        fail(errc::shape_error, "mosaic text must start with its size");
    }
    std::string tok;
    while (in >> tok) {
        m.tiles.push_back(tile_from_name(tok));
    }
    if (m.tiles.size() != static_cast<std::size_t>(m.n * m.n)) {
        fail(errc::shape_error, "expected " + std::to_string(m.n * m.n) + " tiles");
    }
    return m;
}

} // namespace mirrorknot
