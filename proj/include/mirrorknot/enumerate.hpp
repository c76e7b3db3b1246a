#pragma once

// Exhaustive generation of the codes of a grid, isometry classes, table
// classification and the unlink-mirror distances.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <mirrorknot/codes.hpp>
#include <mirrorknot/grid.hpp>
#include <mirrorknot/invariants.hpp>
#include <mirrorknot/moves.hpp>
#include <mirrorknot/symmetry.hpp>

namespace mirrorknot {

inline constexpr int max_enumerated_labels = 14;

// A random-access view of the integers [0, count) decoded on access.
template <typename Decode>
class index_sequence {
public:
    using value_type = decltype(std::declval<Decode>()(std::uint64_t{}));

    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = index_sequence::value_type;
        using difference_type = std::ptrdiff_t;
        using pointer = void;
        using reference = value_type;

        iterator() = default;
        iterator(const Decode *decode, std::uint64_t i) : m_decode(decode), m_i(i) {}
        value_type operator*() const { return (*m_decode)(m_i); }
        iterator &operator++()
        {
            ++m_i;
            return *this;
        }
        iterator operator++(int)
        {
            auto old = *this;
            ++m_i;
            return old;
        }
        friend bool operator==(const iterator &a, const iterator &b) { return a.m_i == b.m_i; }

    private:
        const Decode *m_decode = nullptr;
        std::uint64_t m_i = 0;
    };

    index_sequence(std::uint64_t count, Decode decode) : m_count(count), m_decode(std::move(decode)) {}
    iterator begin() const { return {&m_decode, 0}; }
    iterator end() const { return {&m_decode, m_count}; }
    std::uint64_t size() const noexcept { return m_count; }
    value_type operator[](std::uint64_t i) const { return m_decode(i); }

private:
    std::uint64_t m_count;
    Decode m_decode;
};

inline auto enumerate_states(int p, int q)
{
    const long v = label_count(p, q);
    if (v > max_basis_labels) {
        fail(errc::too_large, "RG[" + std::to_string(p) + "," + std::to_string(q) + "] has 2^" + std::to_string(v)
                                  + " states");
    }
    return index_sequence(std::uint64_t{1} << v, [p, q](std::uint64_t m) { return state_code{p, q, m}; });
}

namespace detail {

inline void check_enumerable(int p, int q)
{
    if (p < 1 || q < 1) {
        fail(errc::range_error, "grid dimensions must be positive");
    }
    const long v = label_count(p, q);
    if (v > max_enumerated_labels) {
        fail(errc::too_large, "RG[" + std::to_string(p) + "," + std::to_string(q) + "] has 4^" + std::to_string(v)
                                  + " codes");
    }
}

// Base-4 digits, most significant first: 0 -> -2, 1 -> -1, 2 -> 1, 3 -> 2.
inline grid_code code_at(int p, int q, std::uint64_t index)
{
    static constexpr std::array<edge_label, 4> digits{edge_label::perp, edge_label::neg, edge_label::pos,
                                                      edge_label::mir};
    grid_code c(p, q);
    const int v = c.size();
    for (int k = 0; k < v; ++k) {
        c[k] = digits[(index >> (2 * (v - 1 - k))) & 3u];
    }
    return c;
}

inline std::uint64_t index_of(const grid_code &c)
{
    std::uint64_t index = 0;
    for (int k = 0; k < c.size(); ++k) {
        const int l = to_int(c[k]);
        const std::uint64_t digit = l == -2 ? 0 : l == -1 ? 1 : l == 1 ? 2 : 3;
        index = (index << 2) | digit;
    }
    return index;
}

} // namespace detail

inline auto enumerate_all(int p, int q)
{
    detail::check_enumerable(p, q);
    const long v = label_count(p, q);
    return index_sequence(std::uint64_t{1} << (2 * v), [p, q](std::uint64_t i) { return detail::code_at(p, q, i); });
}

struct class_record {
    grid_code representative;
    std::size_t orbit_size = 0;
    int components = 0;
    int crossings_after_reduce = 0;
    laurent_poly bracket;
    laurent_poly normalized;
    std::optional<std::string> name;
};

// Orbit representative: the smallest serialized code.
inline grid_code orbit_representative(const grid_code &code, reflection_action action = default_reflection_action)
{
    auto members = orbit(code, action);
    return *std::min_element(members.begin(), members.end(), [](const grid_code &a, const grid_code &b) {
        return serialize_matrix(a) < serialize_matrix(b);
    });
}

// One record per orbit of the isometry group, in order of the smallest code
// index of each orbit. Invariants are computed for every class unless
// `with_invariants` is false.
inline std::vector<class_record> isometry_classes(int p, int q, unsigned jobs = 1, bool with_invariants = true,
                                                  reflection_action action = default_reflection_action)
{
    detail::check_enumerable(p, q);
    const std::uint64_t total = std::uint64_t{1} << (2 * label_count(p, q));
    std::vector<std::uint64_t> firsts;
    std::vector<std::size_t> sizes;
    for (std::uint64_t i = 0; i < total; ++i) {
        const auto images = orbit(detail::code_at(p, q, i), action);
        bool first = true;
        std::vector<std::uint64_t> ids;
        for (const auto &g : images) {
            const auto j = detail::index_of(g);
            first &= j >= i;
            ids.push_back(j);
        }
        if (first) {
            std::sort(ids.begin(), ids.end());
            firsts.push_back(i);
            sizes.push_back(static_cast<std::size_t>(std::unique(ids.begin(), ids.end()) - ids.begin()));
        }
    }
    std::vector<class_record> out(firsts.size());
    const unsigned workers = detail::effective_jobs(jobs, firsts.size());
    auto work = [&](unsigned w) {
        for (std::size_t t = w; t < firsts.size(); t += workers) {
            auto &r = out[t];
            r.representative = orbit_representative(detail::code_at(p, q, firsts[t]), action);
            r.orbit_size = sizes[t];
            r.components = count_components(r.representative);
            if (with_invariants) {
                r.bracket = bracket(r.representative);
                r.normalized = normalized_polynomial(r.representative);
                r.crossings_after_reduce = reduce(r.representative).code.crossing_count();
            } else {
                r.crossings_after_reduce = r.representative.crossing_count();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) {
        pool.emplace_back(work, w);
    }
    work(0);
    for (auto &t : pool) {
        t.join();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Table classification

struct table_entry {
    std::string name;
    std::string code;
};

struct table_row {
    std::string name;
    std::string code;
    std::optional<std::string> error;
    int crossings = 0;
    int components = 0;
    laurent_poly normalized;
};

struct table_report {
    std::vector<table_row> rows;
    // groups of row indices sharing components and normalized polynomial
    std::vector<std::vector<std::size_t>> collisions;
};

inline table_report classify_table(const std::vector<table_entry> &entries)
{
    table_report rep;
    std::map<std::pair<int, std::string>, std::vector<std::size_t>> groups;
    for (const auto &e : entries) {
        table_row row{e.name, e.code, std::nullopt, 0, 0, {}};
        try {
            const auto c = parse_matrix(e.code);
            row.code = serialize_matrix(c);
            row.crossings = c.crossing_count();
            row.components = count_components(c);
            row.normalized = normalized_polynomial(c);
            groups[{row.components, poly::to_string(row.normalized)}].push_back(rep.rows.size());
        } catch (const error &err) {
            row.error = err.what();
        }
        rep.rows.push_back(std::move(row));
    }
    for (auto &[key, members] : groups) {
        if (members.size() > 1) {
            rep.collisions.push_back(members);
        }
    }
    std::sort(rep.collisions.begin(), rep.collisions.end());
    return rep;
}

inline std::string csv_field(const std::string &s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    }
    return out + "\"";
}

inline std::string to_csv(const table_report &rep)
{
    std::string out = "name,code,crossings,components,polynomial\n";
    for (const auto &r : rep.rows) {
        out += csv_field(r.name) + "," + csv_field(r.code) + ",";
        if (r.error) {
            out += ",," + csv_field(*r.error) + "\n";
            continue;
        }
        out += std::to_string(r.crossings) + "," + std::to_string(r.components) + ","
               + csv_field(poly::to_string(r.normalized)) + "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Unlink-mirror distances

inline constexpr int max_distance_crossings = 12;

namespace detail {

// Calls f(candidate) for every replacement of exactly k crossings by mirrors;
// stops early when f returns true.
template <typename F>
bool for_each_mirroring(const grid_code &code, int k, F &&f)
{
    const auto where = crossing_positions(code);
    const int n = static_cast<int>(where.size());
    std::vector<int> pick(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        pick[static_cast<std::size_t>(i)] = i;
    }
    while (true) {
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
            grid_code c = code;
            for (int i = 0; i < k; ++i) {
                c[where[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])]] =
                    ((m >> (k - 1 - i)) & 1u) ? edge_label::perp : edge_label::mir;
            }
            if (f(c)) {
                return true;
            }
        }
        int i = k - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - k + i) {
            --i;
        }
        if (i < 0) {
            return false;
        }
        ++pick[static_cast<std::size_t>(i)];
        for (int t = i + 1; t < k; ++t) {
            pick[static_cast<std::size_t>(t)] = pick[static_cast<std::size_t>(t - 1)] + 1;
        }
    }
}

inline void check_distance_size(const grid_code &code)
{
    code.require_classical();
    if (code.crossing_count() > max_distance_crossings) {
        fail(errc::too_many_crossings, std::to_string(code.crossing_count()) + " crossings exceed the limit of "
                                           + std::to_string(max_distance_crossings));
    }
}

} // namespace detail

// Smallest number of crossings whose replacement by mirrors gives an unlink.
// Fails with Unknown when a smaller count cannot be ruled out.
inline int min_mirrors_to_unlink(const grid_code &code)
{
    detail::check_distance_size(code);
    const int n = code.crossing_count();
    for (int k = 0; k <= n; ++k) {
        bool undecided = false;
        const bool found = detail::for_each_mirroring(code, k, [&](const grid_code &c) {
            const auto v = is_unlink(c);
            undecided |= v.answer == unlink_answer::unknown;
            return v.answer == unlink_answer::yes;
        });
        if (found) {
            return k;
        }
        if (undecided) {
            fail(errc::unknown, "unlink detection is inconclusive for some code with " + std::to_string(k)
                                    + " mirrors added");
        }
    }
    return n;
}

// Largest number of crossings that can be replaced by mirrors without giving
// an unlink; -1 if the code itself is an unlink.
inline int max_mirrors_without_unlink(const grid_code &code)
{
    detail::check_distance_size(code);
    const int n = code.crossing_count();
    for (int k = n; k >= 0; --k) {
        bool undecided = false;
        const bool found = detail::for_each_mirroring(code, k, [&](const grid_code &c) {
            const auto v = is_unlink(c);
            undecided |= v.answer == unlink_answer::unknown;
            return v.answer == unlink_answer::no;
        });
        if (found) {
            return k;
        }
        if (undecided) {
            fail(errc::unknown, "unlink detection is inconclusive for some code with " + std::to_string(k)
                                    + " mirrors added");
        }
    }
    return -1;
}

} // namespace mirrorknot
