#pragma once

// Exact sparse Laurent polynomials with integer coefficients.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

namespace mirrorknot {

// Exponent of a monomial in a and z. Ordered by z first, then a, which is the
// serialization order.
struct az_exponent {
    int a = 0;
    int z = 0;

    friend constexpr az_exponent operator+(az_exponent x, az_exponent y) noexcept { return {x.a + y.a, x.z + y.z}; }
    friend constexpr bool operator==(az_exponent, az_exponent) = default;
    friend constexpr std::strong_ordering operator<=>(az_exponent x, az_exponent y) noexcept
    {
        if (auto c = x.z <=> y.z; c != 0) {
            return c;
        }
        return x.a <=> y.a;
    }
};

template <typename Exponent>
class laurent
{
public:
    using exponent_type = Exponent;
    using coefficient_type = std::int64_t;
    using container_type = std::map<Exponent, coefficient_type>;

    laurent() = default;

    static laurent constant(coefficient_type c) { return monomial(c, Exponent{}); }

    static laurent monomial(coefficient_type c, Exponent e)
    {
        laurent r;
        if (c != 0) {
            r.m_terms.emplace(e, c);
        }
        return r;
    }

    const container_type &terms() const noexcept { return m_terms; }
    bool is_zero() const noexcept { return m_terms.empty(); }
    std::size_t size() const noexcept { return m_terms.size(); }

    coefficient_type coefficient(Exponent e) const
    {
        auto it = m_terms.find(e);
        return it == m_terms.end() ? 0 : it->second;
    }

    void add_term(coefficient_type c, Exponent e)
    {
        if (c == 0) {
            return;
        }
        auto [it, inserted] = m_terms.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                m_terms.erase(it);
            }
        }
    }

    laurent &operator+=(const laurent &o)
    {
        for (const auto &[e, c] : o.m_terms) {
            add_term(c, e);
        }
        return *this;
    }

    laurent &operator-=(const laurent &o)
    {
        for (const auto &[e, c] : o.m_terms) {
            add_term(-c, e);
        }
        return *this;
    }

    friend laurent operator+(laurent x, const laurent &y) { return x += y; }
    friend laurent operator-(laurent x, const laurent &y) { return x -= y; }

    friend laurent operator-(const laurent &x)
    {
        laurent r;
        for (const auto &[e, c] : x.m_terms) {
            r.m_terms.emplace(e, -c);
        }
        return r;
    }

    friend laurent operator*(const laurent &x, const laurent &y)
    {
        laurent r;
        for (const auto &[ex, cx] : x.m_terms) {
            for (const auto &[ey, cy] : y.m_terms) {
                r.add_term(cx * cy, ex + ey);
            }
        }
        return r;
    }

    laurent &operator*=(const laurent &o) { return *this = *this * o; }

    friend laurent operator*(coefficient_type k, const laurent &x)
    {
        laurent r;
        if (k == 0) {
            return r;
        }
        for (const auto &[e, c] : x.m_terms) {
            r.m_terms.emplace(e, k * c);
        }
        return r;
    }

    // Multiplication by the monomial with exponent e.
    laurent shifted(Exponent e) const
    {
        laurent r;
        for (const auto &[ex, c] : m_terms) {
            r.m_terms.emplace(ex + e, c);
        }
        return r;
    }

    laurent pow(unsigned n) const
    {
        laurent result = constant(1);
        laurent base = *this;
        while (n != 0) {
            if (n & 1u) {
                result *= base;
            }
            n >>= 1;
            if (n != 0) {
                base *= base;
            }
        }
        return result;
    }

    friend bool operator==(const laurent &, const laurent &) = default;

private:
    container_type m_terms;
};

using laurent_poly = laurent<int>;
using laurent_poly2 = laurent<az_exponent>;

namespace poly {

inline laurent_poly a_pow(int e, std::int64_t c = 1) { return laurent_poly::monomial(c, e); }

inline laurent_poly2 az(int a, int z, std::int64_t c = 1) { return laurent_poly2::monomial(c, {a, z}); }

// d = -a^2 - a^-2, the bracket value of an extra circle.
inline laurent_poly loop_value() { return a_pow(2, -1) + a_pow(-2, -1); }

// delta = (a + a^-1) z^-1 - 1, the L-polynomial value of an extra circle.
inline laurent_poly2 delta() { return az(1, -1) + az(-1, -1) - az(0, 0); }

// Substitutes a -> a^-1.
inline laurent_poly mirror(const laurent_poly &x)
{
    laurent_poly r;
    for (const auto &[e, c] : x.terms()) {
        r.add_term(c, -e);
    }
    return r;
}

inline laurent_poly2 mirror(const laurent_poly2 &x)
{
    laurent_poly2 r;
    for (const auto &[e, c] : x.terms()) {
        r.add_term(c, {-e.a, e.z});
    }
    return r;
}

inline laurent_poly2 lift(const laurent_poly &x)
{
    laurent_poly2 r;
    for (const auto &[e, c] : x.terms()) {
        r.add_term(c, {e, 0});
    }
    return r;
}

// Text form: terms "c*a^i" (or "c*a^i*z^j") in ascending order joined by '+'.
inline std::string to_string(const laurent_poly &x)
{
    if (x.is_zero()) {
        return "0";
    }
    std::string out;
    for (const auto &[e, c] : x.terms()) {
        if (!out.empty()) {
            out += '+';
        }
        out += std::to_string(c) + "*a^" + std::to_string(e);
    }
    return out;
}

inline std::string to_string(const laurent_poly2 &x)
{
    if (x.is_zero()) {
        return "0";
    }
    std::string out;
    for (const auto &[e, c] : x.terms()) {
        if (!out.empty()) {
            out += '+';
        }
        out += std::to_string(c) + "*a^" + std::to_string(e.a) + "*z^" + std::to_string(e.z);
    }
    return out;
}

} // namespace poly

} // namespace mirrorknot
