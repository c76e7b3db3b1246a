#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include <mirrorknot/codes.hpp>
#include <mirrorknot/enumerate.hpp>
#include <mirrorknot/symmetry.hpp>

#include "oracles.hpp"

using namespace mirrorknot;

namespace {

struct table_line {
    std::string conway;
    std::string name;
    std::string code;
};

std::vector<table_line> read_tsv(const std::string &file)
{
    std::ifstream in(std::string(MIRRORKNOT_DATA_DIR) + "/" + file);
    std::vector<table_line> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, '\t')) {
            f.push_back(tok);
        }
        out.push_back({f.at(1), f.at(2), f.at(3)});
    }
    return out;
}

// Knot names carry the component count as a superscript ("9_5^2"), plain
// knot names mean one component. Thistlethwaite link names ("L10a_101")
// carry no count, only that there are at least two.
bool components_match_name(int components, const std::string &name)
{
    if (name.rfind('L', 0) == 0) {
        return components >= 2;
    }
    const auto hat = name.find('^');
    return components == (hat == std::string::npos ? 1 : std::stoi(name.substr(hat + 1)));
}

} // namespace

TEST(Enumerate, StatesAndCodes)
{
    const auto states = enumerate_states(2, 2);
    EXPECT_EQ(states.size(), 16u);
    std::uint64_t expected = 0;
    for (const auto &s : states) {
        EXPECT_EQ(s.m, expected++);
    }
    const auto codes = enumerate_all(2, 2);
    EXPECT_EQ(codes.size(), 256u);
    std::set<std::string> distinct;
    for (const auto &c : codes) {
        distinct.insert(serialize_matrix(c));
    }
    EXPECT_EQ(distinct.size(), 256u);
    EXPECT_THROW(enumerate_all(4, 3), error);
    EXPECT_THROW(enumerate_states(5, 4), error);
}

// keep_signs is the reflection action that gives 55 classes on RG[2,2].
TEST(Enumerate, FiftyFiveClassesOnSmallestGrid)
{
    const auto classes = isometry_classes(2, 2);
    EXPECT_EQ(classes.size(), 55u);
    EXPECT_EQ(oracle::burnside_classes(2, 2), 55u);
    std::size_t total = 0;
    for (const auto &r : classes) {
        total += r.orbit_size;
        EXPECT_EQ(r.representative, orbit_representative(r.representative));
        EXPECT_EQ(r.components, count_components(r.representative));
        EXPECT_EQ(r.normalized, normalized_polynomial(r.representative));
        EXPECT_LE(r.crossings_after_reduce, r.representative.crossing_count());
    }
    EXPECT_EQ(total, 256u);
    EXPECT_NE(isometry_classes(2, 2, 1, false, reflection_action::flip_signs).size(), 55u);
}

TEST(Enumerate, ClassCountMatchesBurnside)
{
    EXPECT_EQ(isometry_classes(3, 2, 1, false).size(), oracle::burnside_classes(3, 2));
    EXPECT_EQ(isometry_classes(2, 3, 1, false).size(), oracle::burnside_classes(2, 3));
}

TEST(Enumerate, JobsDoNotChangeClasses)
{
    const auto a = isometry_classes(2, 2, 1);
    const auto b = isometry_classes(2, 2, 4);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].representative, b[i].representative);
        EXPECT_EQ(a[i].bracket, b[i].bracket);
        EXPECT_EQ(a[i].crossings_after_reduce, b[i].crossings_after_reduce);
    }
}

TEST(Tables, FourByTwoTable)
{
    const auto rows = read_tsv("rg42.tsv");
    ASSERT_EQ(rows.size(), 25u);
    std::vector<table_entry> entries;
    for (const auto &r : rows) {
        const auto c = parse_matrix(r.code);
        EXPECT_EQ(c.width(), 4);
        EXPECT_EQ(c.height(), 2);
        EXPECT_EQ(serialize_matrix(parse_matrix(serialize_matrix(c))), serialize_matrix(c));
        EXPECT_TRUE(components_match_name(count_components(c), r.name)) << r.name;
        int crossings = 0;
        for (auto l : c.labels()) {
            crossings += (l == edge_label::pos || l == edge_label::neg) ? 1 : 0;
        }
        EXPECT_EQ(static_cast<int>(trace(c).crossings.size()), crossings);
        entries.push_back({r.name, r.code});
    }
    const auto report = classify_table(entries);
    for (const auto &group : report.collisions) {
        for (auto i : group) {
            EXPECT_EQ(report.rows[i].name, report.rows[group.front()].name);
        }
    }
}

TEST(Tables, ThreeByThreeTable)
{
    const auto rows = read_tsv("rg33.tsv");
    ASSERT_EQ(rows.size(), 64u);
    for (const auto &r : rows) {
        const auto c = parse_matrix(r.code);
        EXPECT_EQ(c.width(), 3);
        EXPECT_EQ(c.height(), 3);
        if (!r.name.empty()) {
            EXPECT_TRUE(components_match_name(count_components(c), r.name)) << r.name;
        }
        EXPECT_EQ(static_cast<int>(trace(c).crossings.size()), c.crossing_count());
    }
}

TEST(Tables, CsvOutput)
{
    const auto report = classify_table({{"trefoil", "{{-2,1},{1,1}}"}, {"bad", "{{3}}"}, {"t2", "{{1,-2},{1,1}}"}});
    ASSERT_EQ(report.rows.size(), 3u);
    EXPECT_TRUE(report.rows[1].error.has_value());
    ASSERT_EQ(report.collisions.size(), 1u);
    EXPECT_EQ(report.collisions[0], (std::vector<std::size_t>{0, 2}));
    const auto csv = to_csv(report);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "name,code,crossings,components,polynomial");
    EXPECT_NE(csv.find("trefoil,\"RG[2,2]{{-2,1},{1,1}}\",3,1,"), std::string::npos);
}

TEST(UnlinkDistance, SmallTwoRowGrids)
{
    for (int p = 2; p <= 3; ++p) {
        grid_code c(p, 2);
        for (int k = 0; k < c.size(); ++k) {
            c[k] = edge_label::pos;
        }
        EXPECT_EQ(min_mirrors_to_unlink(c), p - 1);
        EXPECT_EQ(max_mirrors_without_unlink(c), 3 * p - 4);
    }
}

TEST(UnlinkDistance, Edges)
{
    EXPECT_EQ(min_mirrors_to_unlink(parse_matrix("{{2,2},{2,-2}}")), 0);
    EXPECT_EQ(max_mirrors_without_unlink(parse_matrix("{{2,2},{2,-2}}")), -1);
    grid_code big(4, 3);
    for (int k = 0; k < big.size(); ++k) {
        big[k] = edge_label::pos;
    }
    EXPECT_THROW(min_mirrors_to_unlink(big), error);
}
