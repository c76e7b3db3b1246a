#include <cstdio>
#include <fstream>
#include <iterator>
#include <random>
#include <regex>

#include <gtest/gtest.h>

#include <mirrorknot/codes.hpp>
#include <mirrorknot/mosaic.hpp>
#include <mirrorknot/svg.hpp>

#include "oracles.hpp"

using namespace mirrorknot;

TEST(Mosaic, KnotSixThree)
{
    const auto c = parse_matrix("RG[3,3]{{2,-2,1},{1,1,-2},{-2,-2,-2},{1,1,1}}");
    const auto m = to_mosaic(c);
    EXPECT_EQ(m.n, 6);
    EXPECT_EQ(mosaic_number_upper_bound(c), 6);
    EXPECT_EQ(grid_diagram_dimension(c), 7);
    EXPECT_TRUE(suitably_connected(m));
    EXPECT_EQ(m.crossing_tiles(), c.crossing_count());
    EXPECT_EQ(mosaic_components(m), 1);
}

TEST(Mosaic, FigureEight)
{
    const auto m = to_mosaic(parse_matrix("{{-2,1,1},{1,1},{-2,-2}}"));
    EXPECT_EQ(m.n, 5);
    EXPECT_EQ(m.crossing_tiles(), 4);
    EXPECT_EQ(mosaic_components(m), 1);
}

TEST(Mosaic, SingleCellAndTrefoil)
{
    const auto unknot = to_mosaic(grid_code(1, 1));
    EXPECT_EQ(unknot.n, 2);
    EXPECT_EQ(mosaic_to_text(unknot), "2\nA4 A3\nA1 A2\n");
    EXPECT_EQ(mosaic_number_upper_bound(parse_matrix("{{-2,1},{1,1}}")), 4);
}

TEST(Mosaic, ExhaustiveSmallGrids)
{
    for (auto [p, q] : {std::pair{2, 2}, {3, 2}}) {
        for (const auto &c : oracle::all_codes(p, q)) {
            const auto m = to_mosaic(c);
            ASSERT_EQ(m.n, p + q);
            ASSERT_TRUE(suitably_connected(m)) << serialize_matrix(c);
            ASSERT_EQ(m.crossing_tiles(), c.crossing_count());
            ASSERT_EQ(mosaic_components(m), count_components(c)) << serialize_matrix(c);
        }
    }
}

TEST(Mosaic, CrossingTileKindFollowsOverStrand)
{
    const auto c = parse_matrix("{{1,1},{1,1}}");
    const auto m = to_mosaic(c);
    const auto mirrored = to_mosaic(parse_matrix("{{-1,-1},{-1,-1}}"));
    for (std::size_t i = 0; i < m.tiles.size(); ++i) {
        if (m.tiles[i] == tile::x_plus) {
            EXPECT_EQ(mirrored.tiles[i], tile::x_minus);
        }
        if (m.tiles[i] == tile::x_minus) {
            EXPECT_EQ(mirrored.tiles[i], tile::x_plus);
        }
    }
}

TEST(Mosaic, TextRoundTrip)
{
    std::mt19937 rng(71);
    for (int i = 0; i < 50; ++i) {
        const auto m = to_mosaic(oracle::random_code(rng, 3, 3));
        EXPECT_EQ(parse_mosaic(mosaic_to_text(m)), m);
    }
    EXPECT_THROW(parse_mosaic("2\nA1 A2\nA3"), error);
    EXPECT_THROW(parse_mosaic("1\nQ"), error);
}

TEST(Mosaic, NotSuitablyConnected)
{
    EXPECT_FALSE(suitably_connected(parse_mosaic("2\nA1 B\nB B")));
    EXPECT_THROW(mosaic_components(parse_mosaic("1\nL1")), error);
    EXPECT_THROW(to_mosaic(parse_matrix("{{0,1},{1,1}}")), error);
}

TEST(Svg, TrefoilHasOnePathAndThreeGaps)
{
    const auto model = svg_layout(parse_matrix("{{-2,1},{1,1}}"));
    EXPECT_EQ(model.components.size(), 1u);
    EXPECT_EQ(model.gaps, 3);
    const auto text = render_svg(model);
    const std::regex path("<path ");
    EXPECT_EQ(std::distance(std::sregex_iterator(text.begin(), text.end(), path), std::sregex_iterator()), 1);
}

TEST(Svg, CrossingFreeHasNoGaps)
{
    const auto model = svg_layout(parse_matrix("{{2,2},{2,-2}}"));
    EXPECT_EQ(model.components.size(), 3u);
    EXPECT_EQ(model.gaps, 0);
    EXPECT_EQ(model.mirrors.size(), 4u);
    for (const auto &comp : model.components) {
        ASSERT_EQ(comp.pieces.size(), 1u);
        EXPECT_EQ(comp.pieces[0].front().x, comp.pieces[0].back().x);
        EXPECT_EQ(comp.pieces[0].front().y, comp.pieces[0].back().y);
    }
}

TEST(Svg, GapsEqualCrossings)
{
    std::mt19937 rng(72);
    for (int i = 0; i < 100; ++i) {
        const auto c = oracle::random_code(rng, 3, 3);
        EXPECT_EQ(svg_layout(c).gaps, c.crossing_count());
    }
}

TEST(Svg, DeterministicFile)
{
    const auto c = parse_matrix("{{1,1},{1,1}}");
    const std::string path = ::testing::TempDir() + "mirrorknot_svg_test.svg";
    write_svg(c, path);
    std::ifstream in(path);
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_EQ(bytes, render_svg(svg_layout(c)));
    EXPECT_EQ(bytes.rfind("<svg", 0), 0u);
    std::remove(path.c_str());
    EXPECT_THROW(write_svg(c, "/nonexistent-dir/x.svg"), error);
}
