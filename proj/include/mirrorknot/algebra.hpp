#pragma once

// The order-4 semigroup on labels and the induced product of mirror-curves.
//
// Labels correspond to words in a band: 2 = a, -2 = b, 1 = ab, -1 = ba. The
// product of two words keeps the first letter of the left operand and the last
// letter of the right one, so every element is idempotent and the operation
// is associative.

#include <array>
#include <utility>
#include <vector>

#include <mirrorknot/grid.hpp>

namespace mirrorknot {

namespace detail {

// Letters: 0 = a, 1 = b.
constexpr int first_letter(edge_label l) noexcept
{
    return (l == edge_label::mir || l == edge_label::pos) ? 0 : 1;
}

constexpr int last_letter(edge_label l) noexcept
{
    return (l == edge_label::mir || l == edge_label::neg) ? 0 : 1;
}

constexpr edge_label from_letters(int first, int last) noexcept
{
    constexpr std::array<std::array<edge_label, 2>, 2> table{{
        {edge_label::mir, edge_label::pos},
        {edge_label::neg, edge_label::perp},
    }};
    return table[static_cast<std::size_t>(first)][static_cast<std::size_t>(last)];
}

} // namespace detail

constexpr edge_label cayley(edge_label x, edge_label y) noexcept
{
    return detail::from_letters(detail::first_letter(x), detail::last_letter(y));
}

inline grid_code product(const grid_code &m1, const grid_code &m2)
{
    if (m1.width() != m2.width() || m1.height() != m2.height()) {
        fail(errc::dimension_mismatch, "product needs codes on the same grid");
    }
    m1.require_classical();
    m2.require_classical();
    grid_code out(m1.width(), m1.height());
    for (int k = 0; k < m1.size(); ++k) {
        out[k] = cayley(m1[k], m2[k]);
    }
    return out;
}

// The unique pair of Kauffman states (crossing-free codes) whose product is
// `code`.
inline std::pair<grid_code, grid_code> decompose(const grid_code &code)
{
    code.require_classical();
    grid_code left(code.width(), code.height());
    grid_code right(code.width(), code.height());
    for (int k = 0; k < code.size(); ++k) {
        left[k] = detail::from_letters(detail::first_letter(code[k]), detail::first_letter(code[k]));
        right[k] = detail::from_letters(detail::last_letter(code[k]), detail::last_letter(code[k]));
    }
    return {left, right};
}

inline grid_code mirror_image(const grid_code &code)
{
    auto [s1, s2] = decompose(code);
    return product(s2, s1);
}

inline constexpr int max_basis_labels = 24;

// All crossing-free codes of RG[p,q]; every code of the grid is a product of
// two of them.
inline std::vector<grid_code> basis(int p, int q)
{
    const long v = label_count(p, q);
    if (v > max_basis_labels) {
        fail(errc::too_large, "basis of RG[" + std::to_string(p) + "," + std::to_string(q) + "] has 2^"
                                  + std::to_string(v) + " elements");
    }
    std::vector<grid_code> out;
    out.reserve(std::size_t{1} << v);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << v); ++m) {
        grid_code c(p, q);
        for (int k = 0; k < v; ++k) {
            const bool bit = (m >> (v - 1 - k)) & 1u;
            c[k] = bit ? edge_label::perp : edge_label::mir;
        }
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace mirrorknot
