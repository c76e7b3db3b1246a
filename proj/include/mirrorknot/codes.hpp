#pragma once

// Text form of grid codes and the integer codes built on Kauffman states.
//
//   RG[p,q]{{r..},..,{c..},..}   explicit grid
//   {{r..},..,{c..},..}          bare lists, (p,q) inferred from the shape
//
// (p,q,m) names the Kauffman state whose labels are the v-digit binary
// expansion of m, most significant digit first, with 0 -> 2 and 1 -> -2.
// (p,q,m,n) names the product of the states m and n.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include <mirrorknot/algebra.hpp>
#include <mirrorknot/grid.hpp>
#include <mirrorknot/symmetry.hpp>

namespace mirrorknot {

namespace detail {

class code_lexer
{
public:
    explicit code_lexer(std::string_view text) : m_text(text) {}

    void skip_ws()
    {
        while (m_pos < m_text.size() && std::isspace(static_cast<unsigned char>(m_text[m_pos]))) {
            ++m_pos;
        }
    }

    bool peek(char c)
    {
        skip_ws();
        return m_pos < m_text.size() && m_text[m_pos] == c;
    }

    bool accept(char c)
    {
        if (peek(c)) {
            ++m_pos;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            fail(errc::shape_error, std::string("expected '") + c + "' at offset " + std::to_string(m_pos));
        }
    }

    bool accept_word(std::string_view w)
    {
        skip_ws();
        if (m_text.substr(m_pos, w.size()) == w) {
            m_pos += w.size();
            return true;
        }
        return false;
    }

    long integer()
    {
        skip_ws();
        const std::size_t start = m_pos;
        if (m_pos < m_text.size() && (m_text[m_pos] == '-' || m_text[m_pos] == '+')) {
            ++m_pos;
        }
        while (m_pos < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[m_pos]))) {
            ++m_pos;
        }
        const auto tok = m_text.substr(start, m_pos - start);
        if (tok.empty() || tok == "-" || tok == "+" || tok.size() > 9) {
            fail(errc::label_error, "bad integer token '" + std::string(tok) + "' at offset " + std::to_string(start));
        }
        return std::stol(std::string(tok));
    }

    bool at_end()
    {
        skip_ws();
        return m_pos == m_text.size();
    }

private:
    std::string_view m_text;
    std::size_t m_pos = 0;
};

inline bool shape_fits(int p, int q, const std::vector<std::vector<int>> &lists)
{
    if (static_cast<int>(lists.size()) != (q - 1) + (p - 1)) {
        return false;
    }
    for (std::size_t k = 0; k < lists.size(); ++k) {
        const auto want = static_cast<std::size_t>(k < static_cast<std::size_t>(q - 1) ? p : q);
        if (lists[k].size() != want) {
            return false;
        }
    }
    return true;
}

} // namespace detail

// All (p,q) whose shape rule matches the list lengths.
inline std::vector<std::pair<int, int>> candidate_shapes(const std::vector<std::vector<int>> &lists)
{
    std::vector<std::pair<int, int>> out;
    const int total = static_cast<int>(lists.size());
    for (int rows = 0; rows <= total; ++rows) {
        const int q = rows + 1;
        const int p = total - rows + 1;
        if (detail::shape_fits(p, q, lists)) {
            out.emplace_back(p, q);
        }
    }
    return out;
}

inline grid_code parse_matrix(std::string_view text)
{
    detail::code_lexer lex(text);
    std::optional<std::pair<int, int>> dims;
    if (lex.accept_word("RG")) {
        lex.expect('[');
        const long p = lex.integer();
        lex.expect(',');
        const long q = lex.integer();
        lex.expect(']');
        if (p < 1 || q < 1 || p > 64 || q > 64) {
            fail(errc::shape_error, "grid dimensions out of range");
        }
        dims = std::pair{static_cast<int>(p), static_cast<int>(q)};
    }
    std::vector<std::vector<int>> lists;
    lex.expect('{');
    if (!lex.accept('}')) {
        do {
            auto &list = lists.emplace_back();
            lex.expect('{');
            if (!lex.accept('}')) {
                do {
                    const long v = lex.integer();
                    if (v < -2 || v > 2) {
                        fail(errc::label_error, "label " + std::to_string(v) + " is not one of 1, -1, 2, -2, 0");
                    }
                    list.push_back(static_cast<int>(v));
                } while (lex.accept(','));
                lex.expect('}');
            }
        } while (lex.accept(','));
        lex.expect('}');
    }
    if (!lex.at_end()) {
        fail(errc::shape_error, "trailing characters after code");
    }
    if (!dims) {
        const auto shapes = candidate_shapes(lists);
        if (shapes.empty()) {
            fail(errc::shape_error, "list lengths match no grid RG[p,q]");
        }
        if (shapes.size() > 1) {
            std::string msg = "list lengths match several grids:";
            for (auto [p, q] : shapes) {
                msg += " RG[" + std::to_string(p) + "," + std::to_string(q) + "]";
            }
            fail(errc::ambiguous_shape, msg);
        }
        dims = shapes.front();
    }
    return grid_code::from_lists(dims->first, dims->second, lists);
}

inline std::string serialize_matrix(const grid_code &code)
{
    std::string out = "RG[" + std::to_string(code.width()) + "," + std::to_string(code.height()) + "]{";
    const auto lists = code.to_lists();
    for (std::size_t i = 0; i < lists.size(); ++i) {
        if (i != 0) {
            out += ',';
        }
        out += '{';
        for (std::size_t j = 0; j < lists[i].size(); ++j) {
            if (j != 0) {
                out += ',';
            }
            out += std::to_string(lists[i][j]);
        }
        out += '}';
    }
    out += '}';
    return out;
}

inline constexpr int max_state_labels = 62;

struct state_code {
    int p = 1;
    int q = 1;
    std::uint64_t m = 0;

    friend bool operator==(const state_code &, const state_code &) = default;
};

struct four_code {
    int p = 1;
    int q = 1;
    std::uint64_t m = 0;
    std::uint64_t n = 0;

    friend bool operator==(const four_code &, const four_code &) = default;
    friend auto operator<=>(const four_code &x, const four_code &y)
    {
        return std::tie(x.p, x.q, x.m, x.n) <=> std::tie(y.p, y.q, y.m, y.n);
    }
};

struct six_code {
    int p = 1;
    int q = 1;
    std::uint64_t m1 = 0;
    std::uint64_t n1 = 0;
    std::uint64_t m2 = 0;
    std::uint64_t n2 = 0;

    friend bool operator==(const six_code &, const six_code &) = default;
    friend auto operator<=>(const six_code &x, const six_code &y)
    {
        return std::tie(x.p, x.q, x.m1, x.n1, x.m2, x.n2) <=> std::tie(y.p, y.q, y.m1, y.n1, y.m2, y.n2);
    }
};

namespace detail {

inline int checked_label_count(int p, int q)
{
    if (p < 1 || q < 1) {
        fail(errc::range_error, "grid dimensions must be positive");
    }
    const long v = label_count(p, q);
    if (v > max_state_labels) {
        fail(errc::range_error, "RG[" + std::to_string(p) + "," + std::to_string(q) + "] has too many labels for "
                                    + "64-bit state codes");
    }
    return static_cast<int>(v);
}

inline std::uint64_t all_ones(int v) { return v == 0 ? 0 : (~std::uint64_t{0} >> (64 - v)); }

} // namespace detail

inline grid_code decode_state(const state_code &s)
{
    const int v = detail::checked_label_count(s.p, s.q);
    if (s.m > detail::all_ones(v)) {
        fail(errc::range_error, "m = " + std::to_string(s.m) + " needs more than " + std::to_string(v) + " bits");
    }
    grid_code out(s.p, s.q);
    for (int k = 0; k < v; ++k) {
        out[k] = ((s.m >> (v - 1 - k)) & 1u) ? edge_label::perp : edge_label::mir;
    }
    return out;
}

// Inverse of decode_state for crossing-free codes.
inline state_code encode_state(const grid_code &code)
{
    const int v = detail::checked_label_count(code.width(), code.height());
    std::uint64_t m = 0;
    for (int k = 0; k < v; ++k) {
        if (!is_mirror(code[k])) {
            fail(errc::label_error, "state codes contain only the mirrors 2 and -2");
        }
        m = (m << 1) | (code[k] == edge_label::perp ? 1u : 0u);
    }
    return {code.width(), code.height(), m};
}

inline grid_code decode_four(const four_code &f)
{
    return product(decode_state({f.p, f.q, f.m}), decode_state({f.p, f.q, f.n}));
}

inline four_code encode_four(const grid_code &code)
{
    auto [s1, s2] = decompose(code);
    return {code.width(), code.height(), encode_state(s1).m, encode_state(s2).m};
}

inline grid_code decode_six(const six_code &s)
{
    return product(decode_four({s.p, s.q, s.m1, s.n1}), decode_four({s.p, s.q, s.m2, s.n2}));
}

inline bool is_alternating(const grid_code &code)
{
    bool pos = false;
    bool neg = false;
    for (auto l : code.labels()) {
        pos |= l == edge_label::pos;
        neg |= l == edge_label::neg;
    }
    return !(pos && neg);
}

// Six-number code of one representative: the left factor shares the first
// letters of `code`, the right factor its last letters, each factor is
// alternating, and the free state of each factor is the smallest one that
// keeps it alternating.
inline six_code encode_six(const grid_code &code)
{
    const auto f = encode_four(code);
    const int v = detail::checked_label_count(code.width(), code.height());
    auto smallest = [&](auto make) {
        for (std::uint64_t x = 0; x <= detail::all_ones(v); ++x) {
            if (is_alternating(make(x))) {
                return x;
            }
        }
        return detail::all_ones(v);
    };
    const auto n1 = smallest([&](std::uint64_t x) { return decode_four({f.p, f.q, f.m, x}); });
    const auto m2 = smallest([&](std::uint64_t x) { return decode_four({f.p, f.q, x, f.n}); });
    return {f.p, f.q, f.m, n1, m2, f.n};
}

// Lexicographically smallest (p,q,m,n) over the isometry orbit of `code`.
inline four_code minimal_four_code(const grid_code &code, reflection_action action = default_reflection_action)
{
    code.require_classical();
    std::optional<four_code> best;
    for (const auto &image : orbit(code, action)) {
        const auto f = encode_four(image);
        if (!best || f < *best) {
            best = f;
        }
    }
    return *best;
}

inline six_code minimal_six_code(const grid_code &code, reflection_action action = default_reflection_action)
{
    code.require_classical();
    std::optional<six_code> best;
    for (const auto &image : orbit(code, action)) {
        const auto s = encode_six(image);
        if (!best || s < *best) {
            best = s;
        }
    }
    return *best;
}

// Canonical representation of an alternating code: a product of a Kauffman
// state with the A-state M_0 (all 2) or the B-state M_{2^v-1} (all -2).
// Forms are tried in the order (m, 2^v-1), (0, n), (m, 0), (2^v-1, n); they
// realize the label sets {1,-2}, {1,2}, {-1,2} and {-1,-2} respectively.
inline four_code canonical_representation(const grid_code &code)
{
    code.require_classical();
    if (!is_alternating(code)) {
        fail(errc::not_alternating, "crossings of both signs present");
    }
    const int v = detail::checked_label_count(code.width(), code.height());
    const std::uint64_t ones = detail::all_ones(v);
    const auto f = encode_four(code);
    bool has_pos = false;
    bool has_neg = false;
    bool has_two = false;
    bool has_minus_two = false;
    for (auto l : code.labels()) {
        has_pos |= l == edge_label::pos;
        has_neg |= l == edge_label::neg;
        has_two |= l == edge_label::mir;
        has_minus_two |= l == edge_label::perp;
    }
    if (!has_neg && !has_two) {
        return {f.p, f.q, f.m, ones};
    }
    if (!has_neg && !has_minus_two) {
        return {f.p, f.q, 0, f.n};
    }
    if (!has_pos && !has_minus_two) {
        return {f.p, f.q, f.m, 0};
    }
    if (!has_pos && !has_two) {
        return {f.p, f.q, ones, f.n};
    }
    // both mirror kinds present: report the positions of the rarer one
    std::vector<int> twos;
    std::vector<int> minus_twos;
    for (int k = 0; k < code.size(); ++k) {
        if (code[k] == edge_label::mir) {
            twos.push_back(k);
        } else if (code[k] == edge_label::perp) {
            minus_twos.push_back(k);
        }
    }
    const auto &blocking = twos.size() <= minus_twos.size() ? twos : minus_twos;
    std::string where;
    for (int k : blocking) {
        where += (where.empty() ? "" : ",") + std::to_string(k);
    }
    fail(errc::not_representable, "mirrors 2 and -2 both present; obstructing label positions: " + where);
}

} // namespace mirrorknot
