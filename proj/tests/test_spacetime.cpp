#include <gtest/gtest.h>

#include <functional>

#include "adic/builders.hpp"
#include "adic/spacetime.hpp"
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

Diagram toeplitz()
{
    return validate(from_toeplitz(fixtures::toeplitz_spec(), 4096).diagram);
}

std::vector<Symbol> alphabet_of(const TileSet& ts)
{
    std::set<Symbol> a;
    for (const auto& t : ts.tiles) {
        a.insert(t.begin(), t.end());
    }
    return {a.begin(), a.end()};
}

}  // namespace

TEST(Symbols, StringsRoundTrip)
{
    const Diagram d = fixtures::abb();
    const Row row = encode_row(d, PathRep{{0, 1, 2}, Tail::Min}, 4);
    std::vector<std::string> text;
    for (const auto& s : row) {
        text.push_back(to_string(d, s));
        EXPECT_EQ(parse_symbol(d, text.back()), s);
    }
    EXPECT_EQ(text, (std::vector<std::string>{"b!0", "b@tau#1", "a@tau#2", "a@tau#0"}));
    EXPECT_EQ(parse_symbol(d, "C"), Symbol::clock());
    EXPECT_EQ(code_of([&] { parse_symbol(d, "z!0"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([&] { parse_symbol(d, "a@nope#0"); }), ErrorCode::ParseError);
}

TEST(EncodeRow, MinimalAndMaximal)
{
    const Diagram d = fixtures::abb();
    const Row mn = encode_row(d, minimal_path(d), 3);
    for (std::size_t j = 0; j < mn.size(); ++j) {
        EXPECT_EQ(mn[j].vertex, 0);
        EXPECT_EQ(mn[j].label, 0);
    }
    EXPECT_EQ(mn[0].kind, Symbol::Kind::ClockEdge);
    const Row mx = encode_row(d, maximal_path(d), 3);
    EXPECT_EQ(mx[1], Symbol::edge(1, 0, 1));
    EXPECT_TRUE(row_consistent(d, mx));
    EXPECT_EQ(row_path(mx).labels, (std::vector<int>{0, 1, 1}));
}

TEST(EncodeRow, UnknownTailIsRejected)
{
    DiagramSpec s{{"a", "b"}, {1, 1}, {{"t", {{1, 0}, {0, 1}}}}, {}, {0}};
    const Diagram d = validate(s);
    EXPECT_EQ(code_of([&] { encode_row(d, PathRep{{0}, Tail::Max}, 3); }), ErrorCode::WidthExceedsTailKnowledge);
}

TEST(Patch, FivePredecessors)
{
    const Diagram d = fixtures::abb();
    const DiagramPatch p = patch(d, minimal_path(d), -5, 0, 6);
    ASSERT_EQ(p.grid.size(), 6u);
    PathRep q = minimal_path(d);
    for (int m = 0; m >= -5; --m) {
        EXPECT_EQ(p.grid[m + 5], encode_row(d, q, 6));
        q = predecessor(d, q);
    }
    EXPECT_TRUE(p.at(-3, 0).is_clock());
    EXPECT_TRUE(p.at(-3, -7).is_clock());
    EXPECT_EQ(code_of([&] { p.at(1, 2); }), ErrorCode::InsufficientCoverage);
    EXPECT_EQ(code_of([&] { p.at(0, 7); }), ErrorCode::InsufficientCoverage);
}

// For an odometer the labels of row m read as the counter m in mixed radix.
TEST(Patch, OdometerColumnsCount)
{
    const auto q = fixtures::odometer_23();
    const Diagram d = validate(from_odometer(q));
    const DiagramPatch p = patch(d, minimal_path(d), 0, 200, 6);
    const OdometerReading reading = odometer_reading(q);
    for (int m = 0; m <= 200; ++m) {
        EXPECT_EQ(path_digits(reading, row_path(p.grid[m]), 5), fixtures::digits(m, q, 5));
    }
}

TEST(Patch, RowsAreConsistentAndCoherent)
{
    for (const Diagram& d : {fixtures::abb(), toeplitz()}) {
        const DiagramPatch p = patch(d, minimal_path(d), -100, 100, 8);
        for (int m = p.m0; m <= p.m1; ++m) {
            ASSERT_TRUE(row_consistent(d, p.grid[m - p.m0]));
            if (m < p.m1) {
                ASSERT_EQ(compare(d, p.paths[m - p.m0], p.paths[m + 1 - p.m0]),
                          m == -1 ? Order::Incomparable : Order::Less);
            }
        }
    }
}

TEST(Tiles, SaturateForAllFamilies)
{
    std::vector<Diagram> ds{fixtures::abb(), validate(from_odometer(fixtures::odometer_23())),
                            validate(from_odometer(fixtures::odometer_2())), toeplitz()};
    for (const auto& d : ds) {
        const TileSet ts = harvest_saturated(d, {minimal_path(d)}, -256, 256, 8);
        EXPECT_TRUE(ts.saturated);
        const Symbol c = Symbol::clock();
        EXPECT_TRUE(ts.tiles.count(Tile{c, c, c, c}));
    }
    // A short Toeplitz harvest misses a tile that appears further out.
    EXPECT_FALSE(harvest_saturated(toeplitz(), {minimal_path(toeplitz())}, -64, 64, 8).saturated);
}

TEST(Tiles, GeneratedPatchesAreAdmissible)
{
    const Diagram d = fixtures::abb();
    const TileSet ts = harvest_saturated(d, {minimal_path(d)}, -512, 512, 8);
    for (const PathRep& base : {minimal_path(d), maximal_path(d), PathRep{{0, 1, 2, 0, 1}, Tail::Min}}) {
        const auto r = admissible(patch(d, base, -300, 300, 8), ts);
        EXPECT_TRUE(r.admissible);
    }
    const auto r = admissible(patch(d, minimal_path(d), -4, 4, 8), ts);
    EXPECT_TRUE(r.boundaryChecked);
    EXPECT_TRUE(r.boundaryOk);
}

// Replacing one symbol of an admissible patch by a different symbol of the
// same alphabet is caught by the 2x2 blocks.
TEST(Tiles, MutationsAreRejected)
{
    auto& g = fixtures::rng();
    for (const Diagram& d : {fixtures::abb(), toeplitz()}) {
        const TileSet ts = harvest_saturated(d, {minimal_path(d)}, -1024, 1024, 8);
        const auto alpha = alphabet_of(ts);
        const DiagramPatch p = patch(d, minimal_path(d), -300, 300, 8);
        int caught = 0;
        for (int i = 0; i < 1000; ++i) {
            DiagramPatch q = p;
            Symbol& cell = q.grid[g() % q.grid.size()][g() % 8];
            const Symbol old = cell;
            while (cell == old) {
                cell = alpha[g() % alpha.size()];
            }
            caught += admissible(q, ts).admissible ? 0 : 1;
        }
        EXPECT_GE(caught, 990);
    }
}

TEST(Tiles, OtherDiagramIsRejected)
{
    const Diagram d = fixtures::abb();
    const TileSet ts = harvest_saturated(d, {minimal_path(d)}, -256, 256, 8);
    const Diagram e = validate(from_substitution({{"a", "b"}, {{0, 1, 1}, {0, 0, 1}}}));
    const auto r = admissible(patch(e, minimal_path(e), -50, 50, 8), ts);
    EXPECT_FALSE(r.admissible);
    ASSERT_TRUE(r.violation.has_value());
    EXPECT_TRUE(r.violatingTile.has_value());
}

TEST(Determinism, LShapeOnOdometers)
{
    for (const auto& q : {fixtures::odometer_23(), fixtures::odometer_2()}) {
        const Diagram d = validate(from_odometer(q));
        const auto c = determinism_check({patch(d, minimal_path(d), -1024, 1024, 10)}, l_shape());
        EXPECT_TRUE(c.functional);
        EXPECT_FALSE(c.counterexample.has_value());
        EXPECT_GT(c.placements, 0u);
    }
}

// Two blocks with the same three known symbols but different targets exist in
// the abb/ab spacetime; one extra symbol to the right resolves them.
TEST(Determinism, AbbNeedsWidenedShape)
{
    const Diagram d = fixtures::abb();
    const std::vector<DiagramPatch> ps{patch(d, minimal_path(d), -1024, 1024, 10)};
    const auto l = determinism_check(ps, l_shape());
    EXPECT_FALSE(l.functional);
    ASSERT_TRUE(l.counterexample.has_value());
    const auto& ce = *l.counterexample;
    EXPECT_NE(ce.first, ce.second);
    for (const Placement& at : {ce.firstAt, ce.secondAt}) {
        const auto& p = ps[at.patch];
        for (std::size_t k = 0; k < l.shape.known.size(); ++k) {
            EXPECT_EQ(p.at(at.m + l.shape.known[k].first, at.j + l.shape.known[k].second), ce.context[k]);
        }
    }
    const auto w = determinism_check(ps, widened_shape());
    EXPECT_TRUE(w.functional);
}

TEST(Determinism, DeduceReplaysHeldOutRows)
{
    const Diagram d = fixtures::abb();
    const auto c = determinism_check({patch(d, minimal_path(d), -1024, 1024, 10)}, widened_shape());
    ASSERT_TRUE(c.functional);
    const DiagramPatch held = patch(d, minimal_path(d), 3000, 3400, 10);
    int unseen = 0;
    for (int m = held.m0 + 1; m <= held.m1; ++m) {
        for (int j = 1; j <= 9; ++j) {
            std::vector<Symbol> ctx;
            for (const auto& [dm, dj] : c.shape.known) {
                ctx.push_back(held.at(m + dm, j + dj));
            }
            const auto got = deduce(c, ctx);
            if (!got) {
                ++unseen;
                continue;
            }
            ASSERT_EQ(*got, held.at(m, j));
        }
    }
    EXPECT_EQ(unseen, 0);
}

TEST(Determinism, NoPlacement)
{
    const Diagram d = fixtures::abb();
    EXPECT_EQ(code_of([&] { determinism_check({patch(d, minimal_path(d), 0, 0, 4)}, l_shape()); }),
              ErrorCode::InsufficientCoverage);
}
