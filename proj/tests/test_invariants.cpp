#include <random>

#include <gtest/gtest.h>

#include <mirrorknot/algebra.hpp>
#include <mirrorknot/codes.hpp>
#include <mirrorknot/invariants.hpp>

#include "oracles.hpp"

using namespace mirrorknot;

namespace {

laurent_poly a(int e, std::int64_t c = 1) { return poly::a_pow(e, c); }

laurent_poly2 az(int ea, int ez, std::int64_t c = 1) { return poly::az(ea, ez, c); }

bool equal_up_to_mirror(const laurent_poly &x, const laurent_poly &y) { return x == y || x == poly::mirror(y); }

bool equal_up_to_mirror(const laurent_poly2 &x, const laurent_poly2 &y) { return x == y || x == poly::mirror(y); }

const laurent_poly2 hopf_l = az(-1, -1, -1) + az(1, -1, -1) + az(0, 0) + az(-1, 1) + az(1, 1);
const laurent_poly2 trefoil_l = az(-1, 0, -1) + az(1, 0, -2) + az(-2, 1) + az(0, 1) + az(-1, 2) + az(1, 2);
const laurent_poly2 figure_eight_l = az(-2, 0, -1) + az(0, 0, -1) + az(2, 0, -1) + az(-1, 1, -1) + az(1, 1, -1)
                                     + az(-2, 2) + az(0, 2, 2) + az(2, 2) + az(-1, 3) + az(1, 3);
// The z^-1 coefficient is +(a^-1+a); with a minus sign the polynomial would
// not specialize to the bracket (see LPolynomial.LinkFixtureSignIsForced).
const laurent_poly2 link_41_2_l = az(-1, -1) + az(1, -1) + az(0, 0, -1) + az(-3, 1) + az(-1, 1, -2)
                                  + az(1, 1, -3) + az(-2, 2) + az(0, 2) + az(-1, 3) + az(1, 3);

} // namespace

TEST(Bracket, WorkedUnknotExample)
{
    const auto c = parse_matrix("RG[2,2]{{1,1},{-1,-2}}");
    EXPECT_EQ(bracket(c), a(3, -1));
    const int weights[] = {3, 1, 1, -1, 1, -1, -1, -3};
    const int circles[] = {1, 2, 2, 1, 2, 1, 3, 2};
    const auto states = kauffman_states(c);
    ASSERT_EQ(states.size(), 8u);
    for (std::size_t i = 0; i < 8; ++i) {
        EXPECT_EQ(states[i].index, i);
        EXPECT_EQ(states[i].weight, weights[i]);
        EXPECT_EQ(states[i].circles, circles[i]);
    }
}

TEST(Bracket, CrossingFreeIsPowerOfLoop)
{
    for (const auto &c : oracle::all_codes(2, 2)) {
        if (c.crossing_count() == 0) {
            EXPECT_EQ(bracket(c), poly::loop_value().pow(count_components(c) - 1));
        }
    }
}

TEST(Bracket, NonAlternatingExampleUpToMirror)
{
    const auto b = bracket(parse_matrix("{{1,1,-1},{1,1,-1},{-2,2,-2},{-2,2,-2}}"));
    EXPECT_TRUE(equal_up_to_mirror(b, a(-10) + a(-2) + a(6, 2))) << poly::to_string(b);
}

TEST(Bracket, IntermediateAlternatingTermUpToMirror)
{
    const auto b = bracket(parse_matrix("{{1,1,-2},{1,1,-2},{-2,2,-2},{-2,2,-2}}"));
    EXPECT_TRUE(equal_up_to_mirror(b, a(0, 2) + a(-8) + a(8))) << poly::to_string(b);
}

TEST(Bracket, AgreesWithRecursiveOracle)
{
    for (const auto &c : oracle::all_codes(2, 2)) {
        ASSERT_EQ(oracle::from_library(bracket(c)), oracle::bracket(c)) << serialize_matrix(c);
    }
    std::mt19937 rng(31);
    for (int i = 0; i < 200; ++i) {
        const auto c = oracle::random_code(rng, 3, 3);
        ASSERT_EQ(oracle::from_library(bracket(c)), oracle::bracket(c)) << serialize_matrix(c);
    }
}

TEST(Bracket, NegativeExpansionAgrees)
{
    for (const auto &c : oracle::all_codes(2, 2)) {
        ASSERT_EQ(bracket_by_negative_expansion(c), bracket(c)) << serialize_matrix(c);
    }
    std::mt19937 rng(32);
    for (int i = 0; i < 200; ++i) {
        const auto c = oracle::random_code(rng, 3, 3);
        ASSERT_EQ(bracket_by_negative_expansion(c), bracket(c)) << serialize_matrix(c);
    }
    const auto all_positive = parse_matrix("{{1,1},{1,-2}}");
    EXPECT_EQ(bracket_by_negative_expansion(all_positive), bracket(all_positive));
}

TEST(Bracket, JobsDoNotChangeResult)
{
    const auto c = parse_matrix("RG[4,3]{{1,1,1,1},{1,-1,1,1},{1,1,1},{1,1,-1},{1,1,1}}");
    const auto one = bracket(c, 1);
    EXPECT_EQ(bracket(c, 2), one);
    EXPECT_EQ(bracket(c, 8), one);
    EXPECT_EQ(bracket_by_negative_expansion(c, 8), one);
}

TEST(Bracket, CrossingLimit)
{
    grid_code c(5, 4);
    for (int k = 0; k < c.size(); ++k) {
        c[k] = edge_label::pos;
    }
    try {
        bracket(c);
        FAIL();
    } catch (const error &e) {
        EXPECT_EQ(e.code(), errc::too_many_crossings);
    }
    EXPECT_THROW(bracket(parse_matrix("{{0,1},{1,1}}")), error);
}

TEST(Normalized, UnknotDiagramsGiveOne)
{
    for (const char *s : {"{{1,1},{-1,-2}}", "{{-2,-2},{1,-2}}", "{{-2,-1},{1,1}}", "RG[1,1]{}"}) {
        EXPECT_EQ(normalized_polynomial(parse_matrix(s)), a(0)) << s;
    }
}

TEST(Normalized, TrefoilDiagramsAgreeUpToChirality)
{
    const auto t = normalized_polynomial(parse_matrix("{{-2,1},{1,1}}"));
    EXPECT_TRUE(equal_up_to_mirror(t, normalized_polynomial(parse_matrix("{{-2,1,-2},{1,-2},{1,-2}}"))));
    EXPECT_EQ(t, normalized_polynomial(parse_matrix("{{-1,1,-1},{-1,-1},{-1,-1}}")));
    EXPECT_NE(t, normalized_polynomial(mirror_image(parse_matrix("{{-2,1},{1,1}}"))));
    EXPECT_NE(normalized_polynomial(parse_matrix("{{1,2,1},{-2,1},{1,1}}")),
              normalized_polynomial(parse_matrix("{{1,1,1},{1,1},{-2,-2}}")));
}

TEST(LPolynomial, PrintedFixturesUpToMirror)
{
    const auto hopf = l_polynomial(parse_matrix("{{-2,-2},{1,1}}"));
    EXPECT_TRUE(equal_up_to_mirror(hopf, hopf_l)) << poly::to_string(hopf);
    const auto trefoil = l_polynomial(parse_matrix("{{-2,1},{1,1}}"));
    EXPECT_TRUE(equal_up_to_mirror(trefoil, trefoil_l)) << poly::to_string(trefoil);
    const auto eight = l_polynomial(parse_matrix("{{-2,1,1},{1,1},{-2,-2}}"));
    EXPECT_TRUE(equal_up_to_mirror(eight, figure_eight_l)) << poly::to_string(eight);
    const auto link = l_polynomial(parse_matrix("{{1,1},{1,1}}"));
    EXPECT_TRUE(equal_up_to_mirror(link, link_41_2_l)) << poly::to_string(link);
}

TEST(LPolynomial, LinkFixtureSignIsForced)
{
    const auto c = parse_matrix("{{1,1},{1,1}}");
    const auto flipped = link_41_2_l - az(-1, -1, 2) - az(1, -1, 2);
    for (int sign : {1, -1}) {
        EXPECT_FALSE(oracle::l_specializes_to(flipped, oracle::bracket(c), sign));
        EXPECT_FALSE(oracle::l_specializes_to(poly::mirror(flipped), oracle::bracket(c), sign));
    }
    EXPECT_TRUE(oracle::l_specializes_to(l_polynomial(c), oracle::bracket(c), 1));
    EXPECT_TRUE(equal_up_to_mirror(l_family(family::p, 4), l_polynomial(c)));
}

TEST(LPolynomial, CrossingFreeIsPowerOfDelta)
{
    for (std::uint64_t m = 0; m < 128; ++m) {
        const auto c = decode_state({3, 2, m});
        EXPECT_EQ(l_polynomial(c), poly::delta().pow(count_components(c) - 1));
    }
}

TEST(LPolynomial, SwitchIdentity)
{
    std::mt19937 rng(41);
    const auto z = az(0, 1);
    for (int i = 0; i < 100; ++i) {
        const auto c = oracle::random_code(rng, 3, 2);
        for (int k = 0; k < c.size(); ++k) {
            if (!is_crossing(c[k])) {
                continue;
            }
            auto switched = c;
            switched[k] = c[k] == edge_label::pos ? edge_label::neg : edge_label::pos;
            auto two = c;
            two[k] = edge_label::mir;
            auto minus_two = c;
            minus_two[k] = edge_label::perp;
            ASSERT_EQ(l_polynomial(c) + l_polynomial(switched), z * (l_polynomial(two) + l_polynomial(minus_two)))
                << serialize_matrix(c) << " at " << k;
            break;
        }
    }
}

TEST(LPolynomial, SpecializesToBracket)
{
    for (const auto &c : oracle::all_codes(2, 2)) {
        ASSERT_TRUE(oracle::l_specializes_to(l_polynomial(c), oracle::bracket(c), 1)) << serialize_matrix(c);
    }
    std::mt19937 rng(42);
    for (int i = 0; i < 100; ++i) {
        const auto c = oracle::random_code(rng, 3, 3);
        ASSERT_TRUE(oracle::l_specializes_to(l_polynomial(c), oracle::bracket(c), 1)) << serialize_matrix(c);
    }
}

TEST(LPolynomial, CrossingLimit)
{
    grid_code c(4, 3);
    for (int k = 0; k < c.size(); ++k) {
        c[k] = edge_label::pos;
    }
    try {
        l_polynomial(c);
        FAIL();
    } catch (const error &e) {
        EXPECT_EQ(e.code(), errc::too_many_crossings);
    }
}

TEST(Families, BaseCases)
{
    EXPECT_EQ(l_family(family::p, 1), az(1, 0));
    EXPECT_EQ(l_family(family::p, 2), hopf_l);
    EXPECT_EQ(l_family(family::p, 3), trefoil_l);
    EXPECT_EQ(l_family(family::p2, 1), l_family(family::p, 3));
    EXPECT_EQ(l_family(family::p2, 2), figure_eight_l);
    EXPECT_THROW(l_family(family::p, 0), error);
    EXPECT_THROW(l_family(family::three_p, 2), error);
    EXPECT_THROW(l_family(family::pq, 2, 3), error);
}

// Twist diagrams for p = 1..6: a curl, then the closures of 2..6 half twists.
TEST(Families, TwistFamilyMatchesGridCodes)
{
    const char *codes[] = {"{{2,-2},{-2,1}}", "{{-2,-2},{1,1}}", "{{-2,1},{1,1}}",
                           "{{1,1},{1,1}}",   "{{1,2,1},{-2,1},{1,1}}", "{{1,2,1},{1,1},{1,1}}"};
    for (int p = 1; p <= 6; ++p) {
        const auto c = parse_matrix(codes[p - 1]);
        ASSERT_EQ(c.crossing_count(), p);
        const auto b = oracle::bracket(c);
        ASSERT_TRUE(b == oracle::twist_bracket(p) || b == oracle::mirrored(oracle::twist_bracket(p))) << p;
        EXPECT_TRUE(equal_up_to_mirror(l_polynomial(c), l_family(family::p, p))) << p;
    }
}

TEST(Families, TwistTwoFamilyMatchesGridCodes)
{
    const char *codes[] = {"{{-2,1},{1,1}}", "{{-2,1,1},{1,1},{-2,-2}}", "{{1,1,1},{1,1},{-2,-2}}",
                           "RG[4,2]{{-2,2,1,-2},{1,1},{1,1},{-2,1}}",
                           "RG[4,2]{{-2,-1,2,-1},{-2,-1},{-1,-1},{-1,-1}}"};
    for (int p = 1; p <= 5; ++p) {
        const auto c = parse_matrix(codes[p - 1]);
        EXPECT_EQ(c.crossing_count(), p + 2);
        EXPECT_EQ(count_components(c), 1);
        EXPECT_TRUE(equal_up_to_mirror(l_polynomial(c), l_family(family::p2, p))) << p;
    }
}

TEST(Families, ThreePAndPQ)
{
    // 3 3 and 4 3 diagrams on RG[3,3]
    EXPECT_TRUE(equal_up_to_mirror(l_family(family::pq, 4, 3),
                                   l_polynomial(parse_matrix("RG[3,3]{{-2,-1,-1},{-2,-2,-1},{-2,-1,-1},{-1,2,-1}}"))));
    EXPECT_TRUE(equal_up_to_mirror(l_family(family::three_p, 4), poly::mirror(l_family(family::pq, 4, 3))));
    EXPECT_EQ(l_family(family::pq, 3, 2), l_family(family::p2, 3));
}

TEST(MirrorSubstitute, Properties)
{
    EXPECT_EQ(mirror_substitute(poly::delta()), poly::delta());
    const auto t = l_polynomial(parse_matrix("{{-2,1},{1,1}}"));
    EXPECT_EQ(mirror_substitute(mirror_substitute(t)), t);
    EXPECT_EQ(mirror_substitute(t), l_polynomial(mirror_image(parse_matrix("{{-2,1},{1,1}}"))));
}
