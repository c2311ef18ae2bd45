#include <gtest/gtest.h>

#include <functional>

#include "adic/builders.hpp"
#include "adic/ca.hpp"
#include "adic/io.hpp"
#include "adic/vershik.hpp"
#include "fixtures.hpp"

using namespace adic;

namespace {

ErrorCode code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an adic::Error";
    return ErrorCode::ParseError;
}

}  // namespace

TEST(Json, DiagramRoundTripIsByteIdentical)
{
    for (const DiagramSpec& s : {fixtures::abb().spec(), from_toeplitz(fixtures::toeplitz_spec(), 4096).diagram,
                                 from_odometer(fixtures::odometer_23())}) {
        const std::string text = dump(to_json(s));
        const DiagramSpec back = diagram_from_json(parse_json(text));
        EXPECT_EQ(dump(to_json(back)), text);
        EXPECT_EQ(back.alphabet, s.alphabet);
        EXPECT_EQ(back.prefix, s.prefix);
        EXPECT_EQ(back.cycle, s.cycle);
    }
}

TEST(Json, DiagramLayout)
{
    const Json j = to_json(fixtures::abb().spec());
    EXPECT_EQ(j["templates"]["tau"]["a"], "abb");
    EXPECT_EQ(j["level1"]["b"], 1);
    EXPECT_EQ(j["schedule"]["cycle"][0], "tau");
}

TEST(Json, BuilderSpecsRoundTrip)
{
    const auto sub = fixtures::abb_substitution();
    const auto sub2 = substitution_from_json(to_json(sub));
    EXPECT_EQ(sub2.alphabet, sub.alphabet);
    EXPECT_EQ(sub2.words, sub.words);
    const auto odo = odometer_from_json(to_json(fixtures::odometer_23()));
    EXPECT_EQ(odo.prefix, fixtures::odometer_23().prefix);
    EXPECT_EQ(odo.cycle, fixtures::odometer_23().cycle);
    const auto t = fixtures::toeplitz_spec();
    EXPECT_EQ(dump(to_json(toeplitz_from_json(to_json(t)))), dump(to_json(t)));
    const PathRep p{{0, 2, 1}, Tail::Max};
    EXPECT_EQ(path_from_json(to_json(p)), p);
}

TEST(Json, LargeRuleRoundTrips)
{
    const Diagram d = fixtures::abb();
    const RuleTable t = build_rule({patch(d, minimal_path(d), -4000, 4000, 24)}, 4, 1);
    ASSERT_GE(t.size(), 1000u);
    const std::string text = dump(to_json(t, d));
    const RuleTable back = rule_from_json(parse_json(text), d);
    EXPECT_EQ(back.size(), t.size());
    EXPECT_EQ(back.w, 4);
    EXPECT_EQ(dump(to_json(back, d)), text);
    for (const auto& [key, out] : t.table) {
        RuleKey k{};
        for (int i = 0; i < 3; ++i) {
            k[i] = *back.codec.find(t.codec.step(key[i]));
        }
        ASSERT_EQ(back.codec.step(*back.apply(k)), t.codec.step(out));
    }
}

TEST(Json, ConfigTilesAndPatchRoundTrip)
{
    const Diagram d = fixtures::abb();
    const CAConfig c = simulate(make_x_init(d, 3, 12), build_rule({patch(d, minimal_path(d), -600, 600, 20)}, 3, 1), 7)
                           .back();
    const CAConfig c2 = config_from_json(to_json(c, d), d);
    EXPECT_EQ(c2.core, c.core);
    EXPECT_EQ(c2.cycle, c.cycle);
    EXPECT_EQ(c2.origin, c.origin);
    EXPECT_EQ(c2.time, 7);

    const TileSet ts = harvest_tiles({patch(d, minimal_path(d), -50, 50, 6)});
    EXPECT_EQ(tiles_from_json(to_json(ts, d), d).tiles, ts.tiles);

    const DiagramPatch p = patch(d, minimal_path(d), -5, 3, 6);
    const DiagramPatch p2 = patch_from_json(to_json(p, d), d);
    EXPECT_EQ(p2.grid, p.grid);
    EXPECT_EQ(p2.m0, -5);
    EXPECT_EQ(p2.m1, 3);
}

TEST(Json, StepsAreWrittenClockRight)
{
    const Diagram d = fixtures::abb();
    const Step s{Symbol::clock(), Symbol::clock_edge(0, 0), Symbol::edge(0, 0, 2)};
    const Json j = step_to_json(s, d);
    EXPECT_EQ(j.dump(), R"(["a@tau#2","a!0","C"])");
    EXPECT_EQ(step_from_json(j, d), s);
}

TEST(Json, MalformedInput)
{
    try {
        parse_json("{\"alphabet\": [\"a\",");
        FAIL() << "expected ParseError";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
        EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos);
    }
    EXPECT_EQ(code_of([] { diagram_from_json(parse_json("{\"alphabet\":[\"a\"]}")); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { path_from_json(parse_json("{\"labels\":[0],\"tail\":\"up\"}")); }), ErrorCode::ParseError);
}

TEST(Render, GridShowsFivePredecessors)
{
    const Diagram d = fixtures::abb();
    const DiagramPatch p = patch(d, minimal_path(d), -5, 0, 4);
    const std::string g = render_grid(p, d, -5, 0);
    // A column header and six rows.
    EXPECT_EQ(std::count(g.begin(), g.end(), '\n'), 7);
    EXPECT_NE(g.find("a!0"), std::string::npos);
    EXPECT_EQ(render_grid(p, d, -5, 0), g);
}

TEST(Render, PgmHeaderAndLegend)
{
    const Diagram d = fixtures::abb();
    const DiagramPatch p = patch(d, minimal_path(d), -5, 0, 4);
    const PgmImage img = render_pgm(p, d, -5, 0, 2);
    // Columns -1..4 and rows -5..0, two pixels per cell.
    const std::string header = "P5\n12 12\n255\n";
    ASSERT_EQ(img.pgm.substr(0, header.size()), header);
    EXPECT_EQ(img.pgm.size(), header.size() + 144);
    EXPECT_NE(img.legend.find("255\tC"), std::string::npos);
}
