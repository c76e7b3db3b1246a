#pragma once

// Kauffman bracket and Kauffman L-polynomial of mirror-curves.
//
// A Kauffman state replaces every crossing by a mirror. State index i runs
// over 2^n values; its binary digits, most significant first and in label
// order, choose the A-smoothing (0) or the B-smoothing (1) of each crossing.
// Replacing a crossing of sign s by the mirror t contributes -s * sgn(t) to
// the state weight, so A-smoothings count +1 and B-smoothings -1.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include <mirrorknot/algebra.hpp>
#include <mirrorknot/grid.hpp>
#include <mirrorknot/polynomial.hpp>

namespace mirrorknot {

inline constexpr int max_bracket_crossings = 24;
inline constexpr int max_l_crossings = 12;

struct state_weight {
    std::uint64_t index = 0;
    int weight = 0;
    int circles = 0;
};

namespace detail {

inline std::vector<int> crossing_positions(const grid_code &code)
{
    std::vector<int> out;
    for (int k = 0; k < code.size(); ++k) {
        if (is_crossing(code[k])) {
            out.push_back(k);
        }
    }
    return out;
}

inline grid_code smoothed(grid_code code, const std::vector<int> &where, std::uint64_t index)
{
    const auto n = where.size();
    for (std::size_t c = 0; c < n; ++c) {
        const int k = where[c];
        const bool b = (index >> (n - 1 - c)) & 1u;
        code[k] = b ? geometry::b_smoothing(code[k]) : geometry::a_smoothing(code[k]);
    }
    return code;
}

inline void check_bracket_size(const grid_code &code, int limit)
{
    code.require_classical();
    if (code.crossing_count() > limit) {
        fail(errc::too_many_crossings, std::to_string(code.crossing_count()) + " crossings exceed the limit of "
                                           + std::to_string(limit));
    }
}

inline unsigned effective_jobs(unsigned jobs, std::uint64_t work)
{
    jobs = std::max(1u, jobs);
    return static_cast<unsigned>(std::min<std::uint64_t>(jobs, std::max<std::uint64_t>(1, work / 64)));
}

} // namespace detail

// All 2^n states with their weights and circle counts, in index order.
inline std::vector<state_weight> kauffman_states(const grid_code &code, int limit = max_bracket_crossings)
{
    detail::check_bracket_size(code, limit);
    const auto where = detail::crossing_positions(code);
    const int n = static_cast<int>(where.size());
    std::vector<state_weight> out;
    out.reserve(std::size_t{1} << n);
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
        const int w = n - 2 * std::popcount(i);
        out.push_back({i, w, count_components(detail::smoothed(code, where, i))});
    }
    return out;
}

// Sum over states of a^w d^(|S|-1), d = -a^2 - a^-2. The index range is
// split across `jobs` threads; partial results are exact and summed in a
// fixed order.
inline laurent_poly bracket(const grid_code &code, unsigned jobs = 1, int limit = max_bracket_crossings)
{
    detail::check_bracket_size(code, limit);
    const auto where = detail::crossing_positions(code);
    const int n = static_cast<int>(where.size());
    const std::uint64_t total = std::uint64_t{1} << n;
    const unsigned workers = detail::effective_jobs(jobs, total);

    // tally[w + n][circles]
    using tally = std::map<std::pair<int, int>, std::int64_t>;
    std::vector<tally> parts(workers);
    auto work = [&](unsigned t) {
        const std::uint64_t lo = total * t / workers;
        const std::uint64_t hi = total * (t + 1) / workers;
        auto &mine = parts[t];
        for (std::uint64_t i = lo; i < hi; ++i) {
            const int w = n - 2 * std::popcount(i);
            ++mine[{w, count_components(detail::smoothed(code, where, i))}];
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back(work, t);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    tally merged;
    for (const auto &part : parts) {
        for (const auto &[key, count] : part) {
            merged[key] += count;
        }
    }
    laurent_poly result;
    std::map<int, laurent_poly> loop_powers;
    for (const auto &[key, count] : merged) {
        const auto [w, circles] = key;
        auto it = loop_powers.find(circles);
        if (it == loop_powers.end()) {
            it = loop_powers.emplace(circles, poly::loop_value().pow(static_cast<unsigned>(circles - 1))).first;
        }
        result += count * it->second.shifted(w);
    }
    return result;
}

// Expands only the negative crossings: each -1 becomes its A-mirror (weight
// +1) or B-mirror (weight -1), and the remaining all-positive codes are
// evaluated by the state sum.
inline laurent_poly bracket_by_negative_expansion(const grid_code &code, unsigned jobs = 1,
                                                  int limit = max_bracket_crossings)
{
    detail::check_bracket_size(code, limit);
    std::vector<int> negatives;
    for (int k = 0; k < code.size(); ++k) {
        if (code[k] == edge_label::neg) {
            negatives.push_back(k);
        }
    }
    const int nm = static_cast<int>(negatives.size());
    laurent_poly result;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << nm); ++i) {
        const int w = nm - 2 * std::popcount(i);
        result += bracket(detail::smoothed(code, negatives, i), jobs, limit).shifted(w);
    }
    return result;
}

// (-a^3)^(-w) <code>, with w the self-writhe (crossings of a component with
// itself). The self-writhe does not depend on the orientation of the
// components, so the result is an invariant of the unoriented link.
inline laurent_poly normalized_polynomial(const grid_code &code, unsigned jobs = 1, int limit = max_bracket_crossings)
{
    const auto b = bracket(code, jobs, limit);
    const int w = trace(code).self_writhe;
    const std::int64_t sign = (w % 2 == 0) ? 1 : -1;
    return sign * b.shifted(-3 * w);
}

namespace detail {

class l_evaluator
{
public:
    laurent_poly2 operator()(const grid_code &code)
    {
        std::string key;
        key.reserve(static_cast<std::size_t>(code.size()));
        for (auto l : code.labels()) {
            key.push_back(static_cast<char>('0' + to_int(l) + 2));
        }
        if (auto it = m_memo.find(key); it != m_memo.end()) {
            return it->second;
        }
        auto value = evaluate(code);
        m_memo.emplace(std::move(key), value);
        return value;
    }

private:
    laurent_poly2 evaluate(const grid_code &code)
    {
        const auto d = trace(code);
        const int c = d.component_count();
        if (d.crossings.empty()) {
            return poly::delta().pow(static_cast<unsigned>(c - 1));
        }
        // a kink: two consecutive visits of one component to the same crossing
        for (const auto &comp : d.components) {
            const auto &v = comp.visits;
            for (std::size_t t = 0; t < v.size(); ++t) {
                if (v[t].crossing == v[(t + 1) % v.size()].crossing) {
                    const auto &cr = d.crossings[static_cast<std::size_t>(v[t].crossing)];
                    auto next = code;
                    next[cr.edge] = edge_label::mir;
                    if (count_components(next) != c) {
                        next[cr.edge] = edge_label::perp;
                    }
                    return (*this)(next).shifted({cr.sign, 0});
                }
            }
        }
        // first crossing met as an undercrossing before it is met as an overcrossing
        std::vector<char> seen(d.crossings.size(), 0);
        for (const auto &comp : d.components) {
            for (const auto &visit : comp.visits) {
                auto &s = seen[static_cast<std::size_t>(visit.crossing)];
                if (s) {
                    continue;
                }
                s = 1;
                if (!visit.over) {
                    const int k = d.crossings[static_cast<std::size_t>(visit.crossing)].edge;
                    auto switched = code;
                    switched[k] = flip_sign(code[k]);
                    auto s2 = code;
                    s2[k] = edge_label::mir;
                    auto s_2 = code;
                    s_2[k] = edge_label::perp;
                    return ((*this)(s2) + (*this)(s_2)).shifted({0, 1}) - (*this)(switched);
                }
            }
        }
        // descending: an unlink of c components with writhe self_writhe
        return poly::delta().pow(static_cast<unsigned>(c - 1)).shifted({d.self_writhe, 0});
    }

    std::unordered_map<std::string, laurent_poly2> m_memo;
};

} // namespace detail

// Kauffman L-polynomial, a regular isotopy invariant, from the skein relation
// L(D) + L(D switched) = z (L(D smoothed by 2) + L(D smoothed by -2)).
inline laurent_poly2 l_polynomial(const grid_code &code, int limit = max_l_crossings)
{
    code.require_classical();
    if (code.crossing_count() > limit) {
        fail(errc::too_many_crossings, std::to_string(code.crossing_count()) + " crossings exceed the limit of "
                                           + std::to_string(limit));
    }
    detail::l_evaluator eval;
    return eval(code);
}

inline laurent_poly2 mirror_substitute(const laurent_poly2 &x) { return poly::mirror(x); }

// Rational families in Conway notation.
enum class family {
    p,       // p: 1, 2, 3, ... (unknot with a curl, Hopf link, trefoil, ...)
    p2,      // p 2: 4_1, 5_2, 6_1, ... for p >= 2; 1 2 is the trefoil
    three_p, // 3 p, p >= 3
    pq,      // p q, p >= q >= 2
};

namespace detail {

inline laurent_poly2 l_p(int p)
{
    // L(1) = a; L(2) is the Hopf link value
    const laurent_poly2 z = poly::az(0, 1);
    laurent_poly2 prev = poly::az(1, 0);
    if (p == 1) {
        return prev;
    }
    laurent_poly2 cur = poly::az(-1, -1, -1) + poly::az(1, -1, -1) + poly::az(0, 0) + poly::az(-1, 1) + poly::az(1, 1);
    for (int k = 3; k <= p; ++k) {
        auto next = z * (poly::az(-k + 1, 0) + cur) - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

inline laurent_poly2 figure_eight_l()
{
    return poly::az(-2, 0, -1) + poly::az(0, 0, -1) + poly::az(2, 0, -1) + poly::az(-1, 1, -1) + poly::az(1, 1, -1)
           + poly::az(-2, 2) + poly::az(0, 2, 2) + poly::az(2, 2) + poly::az(-1, 3) + poly::az(1, 3);
}

// L(p q) by the recursion in p, starting from 1 q = q+1 and 2 q = mirror of q 2.
inline laurent_poly2 l_pq(int p, int q)
{
    const laurent_poly2 z = poly::az(0, 1);
    const auto lq = l_p(q);
    laurent_poly2 prev = l_p(q + 1);
    if (p == 1) {
        return prev;
    }
    laurent_poly2 cur = q == 2 ? figure_eight_l() : poly::mirror(l_pq(q, 2));
    for (int k = 3; k <= p; ++k) {
        auto next = z * (cur + lq.shifted({k - 1, 0})) - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

} // namespace detail

inline laurent_poly2 l_family(family f, int p, int q = 2)
{
    switch (f) {
    case family::p:
        if (p < 1) {
            fail(errc::parameter_out_of_range, "family p needs p >= 1");
        }
        return detail::l_p(p);
    case family::p2:
        if (p < 1) {
            fail(errc::parameter_out_of_range, "family p 2 needs p >= 1");
        }
        return detail::l_pq(p, 2);
    case family::three_p: {
        if (p < 3) {
            fail(errc::parameter_out_of_range, "family 3 p needs p >= 3");
        }
        const laurent_poly2 z = poly::az(0, 1);
        return z * (poly::mirror(detail::l_pq(p, 2)) + detail::l_p(p).shifted({2, 0})) - detail::l_p(p + 1);
    }
    case family::pq:
        if (q < 2 || p < q) {
            fail(errc::parameter_out_of_range, "family p q needs p >= q >= 2");
        }
        return detail::l_pq(p, q);
    }
    fail(errc::parameter_out_of_range, "unknown family");
}

} // namespace mirrorknot
