#pragma once

// SVG drawings of mirror-curves. Cells are 100 units wide; the curve runs
// through edge midpoints, mirrors are thick segments on their edges and the
// under strand of every crossing is broken by a gap.

#include <fstream>
#include <string>
#include <vector>

#include <mirrorknot/grid.hpp>
#include <mirrorknot/tangle.hpp>

namespace mirrorknot {

inline constexpr int svg_cell = 100;
inline constexpr int svg_margin = 20;

struct svg_point {
    int x;
    int y;
};

// Polylines making up one component; several when gaps break it.
struct svg_component {
    std::vector<std::vector<svg_point>> pieces;
};

struct svg_model {
    int p = 1;
    int q = 1;
    std::vector<svg_component> components;
    std::vector<std::pair<svg_point, svg_point>> mirrors;
    int gaps = 0;
};

namespace detail {

// Doubled grid coordinates to canvas units.
inline svg_point canvas(int x2, int y2, int q)
{
    return {svg_margin + x2 * svg_cell / 2, svg_margin + (2 * q - y2) * svg_cell / 2};
}

inline svg_point toward(svg_point from, svg_point to, int num, int den)
{
    return {from.x + (to.x - from.x) * num / den, from.y + (to.y - from.y) * num / den};
}

} // namespace detail

inline svg_model svg_layout(const grid_code &code, mirror_convention conv = default_convention)
{
    code.require_classical();
    const auto d = trace(code, conv);
    const int p = code.width();
    const int q = code.height();
    svg_model m{p, q, {}, {}, 0};
    const geometry::crossing_ports roles(code);
    const auto midpoint = [&](int k) {
        if (code.is_horizontal(k)) {
            return std::pair{2 * (k % p) + 1, 2 * (k / p + 1)};
        }
        const int kk = k - code.horizontal_count();
        return std::pair{2 * (kk / q + 1), 2 * (kk % q) + 1};
    };
    for (int k = 0; k < code.size(); ++k) {
        if (is_crossing(code[k])) {
            continue;
        }
        const auto [x2, y2] = midpoint(k);
        const bool along = geometry::mirror_is_collinear(code[k], conv);
        const bool horizontal_segment = code.is_horizontal(k) == along;
        const int r = 35;
        const auto c = detail::canvas(x2, y2, q);
        if (horizontal_segment) {
            m.mirrors.push_back({{c.x - r, c.y}, {c.x + r, c.y}});
        } else {
            m.mirrors.push_back({{c.x, c.y - r}, {c.x, c.y + r}});
        }
    }
    for (const auto &comp : d.components) {
        // midpoints in traversal order, flagging under passes
        std::vector<std::pair<svg_point, bool>> pts;
        for (const auto &st : comp.steps) {
            const int cell = st.step / 4;
            const int end = st.forward ? 0 : 1;
            const int side = geometry::step_sides[static_cast<std::size_t>(st.step % 4)][static_cast<std::size_t>(end)];
            int x2 = 2 * (cell % p) + 1;
            int y2 = 2 * (cell / p) + 1;
            switch (side) {
            case geometry::south: y2 -= 1; break;
            case geometry::north: y2 += 1; break;
            case geometry::east: x2 += 1; break;
            default: x2 -= 1; break;
            }
            const int port = geometry::port_id(st.step, end);
            const int k = roles.edge[static_cast<std::size_t>(port)];
            const bool under = k >= 0 && roles.strand[static_cast<std::size_t>(port)] != geometry::over_strand(code, k, conv);
            pts.push_back({detail::canvas(x2, y2, q), under});
        }
        svg_component out;
        // start just after the first under pass so every piece is open
        std::size_t start = 0;
        for (std::size_t t = 0; t < pts.size(); ++t) {
            if (pts[t].second) {
                start = t;
                break;
            }
        }
        const std::size_t n = pts.size();
        const bool has_gap = pts[start].second;
        std::vector<svg_point> piece;
        if (!has_gap) {
            for (const auto &pt : pts) {
                piece.push_back(pt.first);
            }
            piece.push_back(pts[0].first);
            out.pieces.push_back(std::move(piece));
        } else {
            for (std::size_t t = 0; t <= n; ++t) {
                const auto &cur = pts[(start + t) % n];
                if (cur.second) {
                    const auto &prev = pts[(start + t + n - 1) % n].first;
                    const auto &next = pts[(start + t + 1) % n].first;
                    if (!piece.empty()) {
                        piece.push_back(detail::toward(cur.first, prev, 1, 4));
                        out.pieces.push_back(std::move(piece));
                        piece.clear();
                        ++m.gaps;
                    }
                    if (t < n) {
                        piece.push_back(detail::toward(cur.first, next, 1, 4));
                    }
                } else {
                    piece.push_back(cur.first);
                }
            }
        }
        m.components.push_back(std::move(out));
    }
    return m;
}

inline std::string render_svg(const svg_model &m)
{
    const int w = m.p * svg_cell + 2 * svg_margin;
    const int h = m.q * svg_cell + 2 * svg_margin;
    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) + "\" height=\"" + std::to_string(h)
         + "\" viewBox=\"0 0 " + std::to_string(w) + " " + std::to_string(h) + "\">\n";
    s += "<style>.grid{stroke:#bbb;stroke-width:1;fill:none}.mirror{stroke:#000;stroke-width:6}"
         ".curve{fill:none;stroke-width:4;stroke-linejoin:round}"
         ".c0{stroke:#c0392b}.c1{stroke:#2471a3}.c2{stroke:#229954}.c3{stroke:#b9770e}"
         ".c4{stroke:#7d3c98}.c5{stroke:#17202a}</style>\n";
    for (int i = 0; i <= m.p; ++i) {
        const int x = svg_margin + i * svg_cell;
        s += "<line class=\"grid\" x1=\"" + std::to_string(x) + "\" y1=\"" + std::to_string(svg_margin) + "\" x2=\""
             + std::to_string(x) + "\" y2=\"" + std::to_string(h - svg_margin) + "\"/>\n";
    }
    for (int j = 0; j <= m.q; ++j) {
        const int y = svg_margin + j * svg_cell;
        s += "<line class=\"grid\" x1=\"" + std::to_string(svg_margin) + "\" y1=\"" + std::to_string(y) + "\" x2=\""
             + std::to_string(w - svg_margin) + "\" y2=\"" + std::to_string(y) + "\"/>\n";
    }
    for (const auto &[a, b] : m.mirrors) {
        s += "<line class=\"mirror\" x1=\"" + std::to_string(a.x) + "\" y1=\"" + std::to_string(a.y) + "\" x2=\""
             + std::to_string(b.x) + "\" y2=\"" + std::to_string(b.y) + "\"/>\n";
    }
    for (std::size_t c = 0; c < m.components.size(); ++c) {
        std::string d;
        for (const auto &piece : m.components[c].pieces) {
            for (std::size_t t = 0; t < piece.size(); ++t) {
                d += (t == 0 ? (d.empty() ? "M" : " M") : " L") + std::to_string(piece[t].x) + ","
                     + std::to_string(piece[t].y);
            }
        }
        s += "<path class=\"curve c" + std::to_string(c % 6) + "\" d=\"" + d + "\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

inline void write_svg(const grid_code &code, const std::string &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        fail(errc::io_error, "cannot open " + path + " for writing");
    }
    out << render_svg(svg_layout(code));
    if (!out) {
        fail(errc::io_error, "failed writing " + path);
    }
}

} // namespace mirrorknot
