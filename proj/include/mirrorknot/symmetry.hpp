#pragma once

// Symmetries of the p x q rectangle acting on grid codes.

#include <vector>

#include <mirrorknot/grid.hpp>

namespace mirrorknot {

// An isometry of the rectangle: optional transpose (x, y) -> (y, x), followed
// by optional reflections of each axis. Transposes only exist for square
// grids.
struct isometry {
    bool transpose = false;
    bool flip_x = false;
    bool flip_y = false;

    constexpr bool is_reflection() const noexcept { return (transpose ^ flip_x ^ flip_y) != 0; }

    friend constexpr bool operator==(isometry, isometry) = default;
};

// How crossing labels transform under a reflection. Mirrors are always fixed
// and rotations fix every label. Orbit counting on RG[2,2] selects
// keep_signs (55 classes); see tests/test_enumerate.cpp.
enum class reflection_action {
    keep_signs,
    flip_signs,
};

inline constexpr reflection_action default_reflection_action = reflection_action::keep_signs;

inline std::vector<isometry> isometry_group(int p, int q)
{
    std::vector<isometry> g;
    for (int t = 0; t < (p == q ? 2 : 1); ++t) {
        for (int fx = 0; fx < 2; ++fx) {
            for (int fy = 0; fy < 2; ++fy) {
                g.push_back({t != 0, fx != 0, fy != 0});
            }
        }
    }
    return g;
}

// Edge permutation: result[k] is the index that edge k is carried to.
inline std::vector<int> edge_permutation(int p, int q, isometry g)
{
    const grid_code shape(p, q);
    const int np = g.transpose ? q : p;
    const int nq = g.transpose ? p : q;
    const grid_code target(np, nq);
    std::vector<int> perm(static_cast<std::size_t>(shape.size()));
    for (int k = 0; k < shape.size(); ++k) {
        // midpoint in doubled coordinates
        int x = 0;
        int y = 0;
        if (shape.is_horizontal(k)) {
            x = 2 * (k % p) + 1;
            y = 2 * (k / p) + 2;
        } else {
            const int kk = k - shape.horizontal_count();
            x = 2 * (kk / q) + 2;
            y = 2 * (kk % q) + 1;
        }
        if (g.transpose) {
            std::swap(x, y);
        }
        if (g.flip_x) {
            x = 2 * np - x;
        }
        if (g.flip_y) {
            y = 2 * nq - y;
        }
        if (x % 2 == 1) {
            perm[static_cast<std::size_t>(k)] = target.row_index((y - 2) / 2, (x - 1) / 2);
        } else {
            perm[static_cast<std::size_t>(k)] = target.col_index((x - 2) / 2, (y - 1) / 2);
        }
    }
    return perm;
}

inline grid_code apply(isometry g, const grid_code &code, reflection_action action = default_reflection_action)
{
    const auto perm = edge_permutation(code.width(), code.height(), g);
    grid_code out(g.transpose ? code.height() : code.width(), g.transpose ? code.width() : code.height());
    const bool flip = g.is_reflection() && action == reflection_action::flip_signs;
    for (int k = 0; k < code.size(); ++k) {
        out[perm[static_cast<std::size_t>(k)]] = flip ? flip_sign(code[k]) : code[k];
    }
    return out;
}

inline std::vector<grid_code> orbit(const grid_code &code, reflection_action action = default_reflection_action)
{
    std::vector<grid_code> out;
    for (auto g : isometry_group(code.width(), code.height())) {
        out.push_back(apply(g, code, action));
    }
    return out;
}

} // namespace mirrorknot
