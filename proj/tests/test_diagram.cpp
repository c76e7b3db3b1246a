#include <random>

#include <gtest/gtest.h>

#include <mirrorknot/codes.hpp>
#include <mirrorknot/diagram.hpp>
#include <mirrorknot/invariants.hpp>

#include "oracles.hpp"

using namespace mirrorknot;

namespace {

// State sum straight on the planar diagram. The A-smoothing at a crossing
// joins each over position with the position counterclockwise before it.
oracle::poly pd_bracket(const planar_diagram &g)
{
    const int n = g.crossings();
    oracle::poly total;
    const oracle::poly loop = oracle::add(oracle::mono(2, -1), oracle::mono(-2, -1));
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        std::vector<int> pair(static_cast<std::size_t>(4 * n));
        int w = 0;
        for (int x = 0; x < n; ++x) {
            const bool a_smoothing = ((s >> x) & 1u) == 0;
            w += a_smoothing ? 1 : -1;
            const int r = a_smoothing ? g.over[static_cast<std::size_t>(x)] : g.over[static_cast<std::size_t>(x)] + 1;
            const int a0 = 4 * x + r % 4;
            const int a1 = 4 * x + (r + 3) % 4;
            const int b0 = 4 * x + (r + 1) % 4;
            const int b1 = 4 * x + (r + 2) % 4;
            pair[static_cast<std::size_t>(a0)] = a1;
            pair[static_cast<std::size_t>(a1)] = a0;
            pair[static_cast<std::size_t>(b0)] = b1;
            pair[static_cast<std::size_t>(b1)] = b0;
        }
        std::vector<char> seen(static_cast<std::size_t>(4 * n), 0);
        int circles = g.loops;
        for (int d = 0; d < 4 * n; ++d) {
            if (seen[static_cast<std::size_t>(d)]) {
                continue;
            }
            ++circles;
            int e = d;
            do {
                seen[static_cast<std::size_t>(e)] = 1;
                const int f = g.link[static_cast<std::size_t>(e)];
                seen[static_cast<std::size_t>(f)] = 1;
                e = pair[static_cast<std::size_t>(f)];
            } while (e != d);
        }
        total = oracle::add(total, oracle::mul(oracle::mono(w), oracle::power(loop, circles - 1)));
    }
    return total;
}

bool curl_related(const oracle::poly &x, const oracle::poly &y)
{
    for (int e : {3, -3}) {
        for (int c : {1, -1}) {
            if (oracle::mul(x, oracle::mono(e, c)) == y) {
                return true;
            }
        }
    }
    return false;
}

std::vector<grid_code> sample(unsigned seed, int count)
{
    std::mt19937 rng(seed);
    std::vector<grid_code> out;
    while (static_cast<int>(out.size()) < count) {
        const int p = 2 + static_cast<int>(rng() % 2);
        const int q = 2 + static_cast<int>(rng() % 2);
        auto c = oracle::random_code(rng, p, q);
        if (c.crossing_count() <= 10) {
            out.push_back(c);
        }
    }
    return out;
}

} // namespace

TEST(PlanarDiagram, BracketMatchesGrid)
{
    for (const auto &c : sample(61, 300)) {
        ASSERT_EQ(pd_bracket(to_diagram(c)), oracle::bracket(c)) << serialize_matrix(c);
    }
}

TEST(PlanarDiagram, LinkIsAnInvolution)
{
    for (const auto &c : sample(62, 100)) {
        const auto g = to_diagram(c);
        ASSERT_EQ(g.crossings(), c.crossing_count());
        for (std::size_t d = 0; d < g.link.size(); ++d) {
            ASSERT_EQ(g.link[static_cast<std::size_t>(g.link[d])], static_cast<int>(d));
            ASSERT_NE(g.link[d], static_cast<int>(d));
        }
    }
}

TEST(PlanarDiagram, MovesActOnBracketAsExpected)
{
    int r1 = 0;
    int r2 = 0;
    int r3 = 0;
    int up = 0;
    for (const auto &c : sample(63, 200)) {
        const auto g = to_diagram(c);
        const auto b = pd_bracket(g);
        for (const auto &h : r1_moves(g)) {
            ASSERT_EQ(h.crossings(), g.crossings() - 1);
            ASSERT_TRUE(curl_related(pd_bracket(h), b));
            ++r1;
        }
        for (const auto &h : nugatory_moves(g)) {
            ASSERT_TRUE(curl_related(pd_bracket(h), b));
        }
        for (const auto &h : r2_moves(g)) {
            ASSERT_EQ(h.crossings(), g.crossings() - 2);
            ASSERT_EQ(pd_bracket(h), b);
            ++r2;
        }
        for (const auto &h : r3_moves(g)) {
            ASSERT_EQ(h.crossings(), g.crossings());
            ASSERT_EQ(pd_bracket(h), b);
            ASSERT_EQ(face_count(h), face_count(g));
            ++r3;
        }
        if (g.crossings() <= 6) {
            for (const auto &h : r2_up_moves(g)) {
                ASSERT_EQ(pd_bracket(h), b);
                ASSERT_EQ(face_count(h), face_count(g) + 2);
                ++up;
            }
        }
    }
    EXPECT_GT(r1, 0);
    EXPECT_GT(r2, 0);
    EXPECT_GT(r3, 0);
    EXPECT_GT(up, 0);
}

TEST(PlanarDiagram, CanonicalFormIgnoresGridPlacement)
{
    const auto a = to_diagram(parse_matrix("{{-2,1},{1,1}}"));
    const auto b = to_diagram(parse_matrix("{{1,-2},{1,1}}"));
    EXPECT_EQ(canonical_form(a), canonical_form(b));
    EXPECT_NE(canonical_form(a), canonical_form(to_diagram(parse_matrix("{{-2,-1},{-1,-1}}"))));
}

TEST(PlanarDiagram, SimplifyFindsMinimalDiagrams)
{
    const auto unknot = simplify(to_diagram(parse_matrix("{{1,1},{-1,-2}}")));
    EXPECT_EQ(unknot.crossings, 0);
    const auto trefoil = simplify(to_diagram(parse_matrix("{{-1,1,-1},{-1,-1},{-1,-1}}")));
    EXPECT_EQ(trefoil.crossings, 3);
    EXPECT_TRUE(same_link(to_diagram(parse_matrix("{{-1,1,-1},{-1,-1},{-1,-1}}")),
                          to_diagram(parse_matrix("{{-2,1},{1,1}}"))));
    EXPECT_FALSE(same_link(to_diagram(parse_matrix("{{-2,1},{1,1}}")),
                           to_diagram(parse_matrix("{{-2,-1},{-1,-1}}"))));
}
