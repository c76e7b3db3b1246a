#include <random>

#include <gtest/gtest.h>

#include <mirrorknot/codes.hpp>
#include <mirrorknot/invariants.hpp>
#include <mirrorknot/moves.hpp>

#include "oracles.hpp"

using namespace mirrorknot;

namespace {

const char *example_unlink = "RG[4,3]{{-2,-1,-1,2},{1,2,-1,1},{2,1,-1},{1,-2,-1},{1,-2,-1}}";

errc error_of(auto &&f)
{
    try {
        f();
    } catch (const error &e) {
        return e.code();
    }
    return errc::unknown;
}

bool curl_factor(const laurent_poly &before, const laurent_poly &after)
{
    return before == after * poly::a_pow(3, -1) || before == after * poly::a_pow(-3, -1);
}

} // namespace

TEST(R1, RemovesTheLastCurl)
{
    const auto c = parse_matrix("{{-2,-2},{1,-2}}");
    const auto curls = find_curls(c);
    ASSERT_EQ(curls.size(), 1u);
    const auto r = apply_r1(c, curls[0]);
    EXPECT_EQ(r, parse_matrix("{{-2,-2},{2,-2}}"));
    EXPECT_EQ(count_components(r), 1);
}

TEST(R1, CrossingFreeHasNoCurl)
{
    const auto c = parse_matrix("{{2,-2},{-2,2}}");
    for (int k = 0; k < c.size(); ++k) {
        EXPECT_EQ(error_of([&] { apply_r1(c, k); }), errc::not_a_curl);
    }
}

TEST(R1, PreservesComponentsAndChangesBracketByCurlFactor)
{
    std::mt19937 rng(51);
    int applied = 0;
    for (int i = 0; i < 4000 && applied < 500; ++i) {
        const auto c = oracle::random_code(rng, 3, 3);
        for (int k : find_curls(c)) {
            const auto r = apply_r1(c, k);
            ASSERT_EQ(r.crossing_count(), c.crossing_count() - 1);
            ASSERT_EQ(count_components(r), count_components(c));
            ASSERT_TRUE(curl_factor(bracket(c), bracket(r))) << serialize_matrix(c) << " at " << k;
            ASSERT_EQ(normalized_polynomial(r), normalized_polynomial(c));
            ++applied;
        }
    }
    EXPECT_GE(applied, 500);
}

TEST(R2, UnknotExample)
{
    const auto c = parse_matrix("{{-2,-1},{1,1}}");
    EXPECT_EQ(apply_r2(c, 1, 3), parse_matrix("{{-2,-2},{1,-2}}"));
}

// {{1,1},{1,-1}} looks like a clasp but is a four-crossing Hopf diagram.
TEST(R2, ClaspReducesToTwoCrossingHopf)
{
    const auto c = parse_matrix("{{1,1},{1,-1}}");
    const auto bigons = find_bigons(c);
    ASSERT_FALSE(bigons.empty());
    const auto r = apply_r2(c, bigons[0].first, bigons[0].second);
    EXPECT_EQ(r.crossing_count(), 2);
    EXPECT_EQ(count_components(r), 2);
    EXPECT_TRUE(find_bigons(r).empty());
    EXPECT_EQ(oracle::bracket(c), oracle::bracket(r));
    const auto hopf = oracle::bracket(parse_matrix("{{-2,-2},{1,1}}"));
    EXPECT_TRUE(oracle::bracket(c) == hopf || oracle::bracket(c) == oracle::mirrored(hopf));
}

TEST(R2, Errors)
{
    const auto hopf = parse_matrix("{{-2,-2},{1,1}}");
    EXPECT_EQ(error_of([&] { apply_r2(hopf, 2, 3); }), errc::sign_mismatch);
    const auto trefoil = parse_matrix("{{-2,1},{1,1}}");
    EXPECT_EQ(error_of([&] { apply_r2(trefoil, 0, 1); }), errc::not_a_bigon);
}

TEST(R2, PreservesBracketOnRandomCodes)
{
    std::mt19937 rng(52);
    int applied = 0;
    for (int i = 0; i < 3000; ++i) {
        const auto c = oracle::random_code(rng, 3, 3);
        for (auto [x, y] : find_bigons(c)) {
            const auto r = apply_r2(c, x, y);
            ASSERT_EQ(r.crossing_count(), c.crossing_count() - 2);
            ASSERT_EQ(oracle::from_library(bracket(r)), oracle::bracket(c)) << serialize_matrix(c);
            ++applied;
        }
    }
    EXPECT_GT(applied, 100);
}

TEST(R3, PreservesBracketAndCrossings)
{
    std::mt19937 rng(53);
    int applied = 0;
    for (int i = 0; i < 3000; ++i) {
        const auto c = oracle::random_code(rng, 3, 3);
        for (auto t : find_triangles(c)) {
            const auto r = apply_r3(c, t[0], t[1], t[2]);
            ASSERT_EQ(r.crossing_count(), c.crossing_count());
            ASSERT_EQ(oracle::from_library(bracket(r)), oracle::bracket(c)) << serialize_matrix(c);
            ++applied;
        }
    }
    EXPECT_GT(applied, 20);
}

TEST(R3, NotATriangle)
{
    const auto c = parse_matrix("{{1,1},{1,1}}");
    EXPECT_EQ(error_of([&] { apply_r3(c, 0, 1, 2); }), errc::not_a_triangle);
}

TEST(AllOver, TrefoilGridShrink)
{
    const auto c = parse_matrix("{{-2,1,-2},{1,-2},{1,-2}}");
    move m;
    const auto r = apply_all_over(c, &m);
    EXPECT_EQ(r.width() * r.height(), 4);
    EXPECT_EQ(r.crossing_count(), 3);
    EXPECT_EQ(normalized_polynomial(r), normalized_polynomial(c));
    EXPECT_EQ(m.kind, move_kind::all_over);
    const auto expected = parse_matrix("{{-1,-1},{-2,-1}}");
    EXPECT_EQ(normalized_polynomial(r), normalized_polynomial(expected));
}

TEST(AllOver, CrossingFreeRowShrinks)
{
    for (int p = 2; p <= 5; ++p) {
        grid_code c(p, 1);
        for (int k = 0; k < c.size(); ++k) {
            c[k] = edge_label::perp;
        }
        auto r = c;
        while (r.width() > 1) {
            r = apply_all_over(r);
        }
        EXPECT_EQ(count_components(r), count_components(c));
    }
}

TEST(AllOver, PreservesNormalizedPolynomial)
{
    std::mt19937 rng(54);
    int applied = 0;
    for (int i = 0; i < 200; ++i) {
        const auto c = oracle::random_code(rng, 3, 2);
        try {
            const auto r = apply_all_over(c);
            ASSERT_LT(r.width() * r.height(), 6);
            ASSERT_EQ(normalized_polynomial(r), normalized_polynomial(c)) << serialize_matrix(c);
            ASSERT_EQ(count_components(r), count_components(c));
            ++applied;
        } catch (const error &e) {
            ASSERT_EQ(e.code(), errc::pattern_not_found);
        }
    }
    EXPECT_GT(applied, 10);
}

TEST(Reduce, ExampleUnlink)
{
    const auto c = parse_matrix(example_unlink);
    const auto r = reduce(c);
    EXPECT_FALSE(r.budget_exceeded);
    EXPECT_EQ(r.code.crossing_count(), 0);
    EXPECT_EQ(count_components(r.code), 2);
    EXPECT_EQ(r.log.replay(), r.log.final_code);
    EXPECT_EQ(r.log.final_code, r.code);
}

TEST(Reduce, EveryStepPreservesNormalizedPolynomial)
{
    for (const char *s : {example_unlink, "{{-1,1,-1},{-1,-1},{-1,-1}}", "{{1,1},{1,-1}}"}) {
        const auto r = reduce(parse_matrix(s));
        auto cur = r.log.initial;
        const auto x = normalized_polynomial(cur);
        for (const auto &m : r.log.steps) {
            const auto before = bracket(cur);
            const auto next = apply_move(cur, m);
            ASSERT_EQ(normalized_polynomial(next), x) << m.to_string();
            ASSERT_LE(next.crossing_count(), cur.crossing_count());
            if (m.kind == move_kind::r2 || m.kind == move_kind::r3) {
                ASSERT_EQ(bracket(next), before);
            }
            if (m.kind == move_kind::r1) {
                ASSERT_TRUE(curl_factor(before, bracket(next)));
            }
            cur = next;
        }
        EXPECT_EQ(cur, r.code);
    }
}

TEST(Reduce, NonMinimalTrefoilShrinksToSmallGrid)
{
    const auto r = reduce(parse_matrix("{{-1,1,-1},{-1,-1},{-1,-1}}"));
    EXPECT_EQ(r.code.width(), 2);
    EXPECT_EQ(r.code.height(), 2);
    EXPECT_EQ(r.code.crossing_count(), 3);
}

TEST(Reduce, MinimalTrefoilUnchanged)
{
    const auto c = parse_matrix("{{-2,1},{1,1}}");
    EXPECT_TRUE(find_curls(c).empty());
    EXPECT_TRUE(find_bigons(c).empty());
    const auto r = reduce(c);
    EXPECT_EQ(r.code, c);
    EXPECT_TRUE(r.log.steps.empty());
}

TEST(Reduce, SoundOnAllSmallCodes)
{
    for (const auto &c : oracle::all_codes(2, 2)) {
        const auto r = reduce(c);
        ASSERT_LE(r.code.crossing_count(), c.crossing_count());
        ASSERT_EQ(normalized_polynomial(r.code), normalized_polynomial(c)) << serialize_matrix(c);
        ASSERT_EQ(r.log.replay(), r.code);
    }
}

TEST(Reduce, SoundOnRandomCodes)
{
    std::mt19937 rng(55);
    for (int i = 0; i < 150; ++i) {
        const auto c = oracle::random_code(rng, 3, 3);
        const auto r = reduce(c);
        ASSERT_LE(r.code.crossing_count(), c.crossing_count());
        ASSERT_EQ(normalized_polynomial(r.code), normalized_polynomial(c)) << serialize_matrix(c);
        ASSERT_EQ(count_components(r.code), count_components(c));
    }
}

TEST(Reduce, BudgetIsHonoured)
{
    const auto r = reduce(parse_matrix(example_unlink), 1);
    EXPECT_TRUE(r.budget_exceeded);
    EXPECT_LE(r.log.steps.size(), 1u);
    EXPECT_EQ(normalized_polynomial(r.code), normalized_polynomial(parse_matrix(example_unlink)));
}

TEST(Log, TextRoundTrip)
{
    const auto r = reduce(parse_matrix(example_unlink));
    const auto steps = parse_log(r.log.to_string());
    ASSERT_EQ(steps.size(), r.log.steps.size());
    reduction_log copy{r.log.initial, r.log.final_code, steps};
    EXPECT_EQ(copy.replay(), r.code);
    EXPECT_EQ(copy.to_string(), r.log.to_string());
    EXPECT_THROW(parse_log("R9 @ 1 -> 2"), error);
}

TEST(Unlink, Verdicts)
{
    const auto unknot = is_unlink(parse_matrix("{{1,1},{-1,-2}}"));
    EXPECT_EQ(unknot.answer, unlink_answer::yes);
    EXPECT_EQ(unknot.circles, 1);
    EXPECT_EQ(is_unlink(parse_matrix("{{-2,1},{1,1}}")).answer, unlink_answer::no);
    const auto free = is_unlink(parse_matrix("{{2,2},{2,-2}}"));
    EXPECT_EQ(free.answer, unlink_answer::yes);
    EXPECT_EQ(free.circles, 3);
    const auto example = is_unlink(parse_matrix(example_unlink));
    EXPECT_EQ(example.answer, unlink_answer::yes);
    EXPECT_EQ(example.circles, 2);
}

TEST(Unlink, NeverContradictsThePolynomial)
{
    for (const auto &c : oracle::all_codes(2, 2)) {
        const auto v = is_unlink(c);
        const auto x = normalized_polynomial(c);
        const bool unlink_like = x == poly::loop_value().pow(count_components(c) - 1);
        if (v.answer == unlink_answer::yes) {
            ASSERT_TRUE(unlink_like) << serialize_matrix(c);
        }
        if (v.answer == unlink_answer::no) {
            ASSERT_FALSE(unlink_like) << serialize_matrix(c);
        }
    }
}
