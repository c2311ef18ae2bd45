#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "adic/builders.hpp"
#include "adic/diagram.hpp"
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

// Letter counts of tau^k(a), computed by literal word expansion.
std::uint64_t count_letter(const SubstitutionSpec& s, int a, int k, int b)
{
    const auto w = iterate_substitution(s, a, k);
    return static_cast<std::uint64_t>(std::count(w.begin(), w.end(), b));
}

}  // namespace

TEST(Validate, AcceptsAbb)
{
    const Diagram d = fixtures::abb();
    EXPECT_EQ(d.num_vertices(), 2);
    EXPECT_EQ(d.max_label(2, 0), 2);
    EXPECT_EQ(d.max_label(2, 1), 1);
    EXPECT_EQ(d.range(2, 0, 1), 1);
    EXPECT_EQ(d.range(1, 0, 0), kClock);
}

TEST(Validate, AcceptsIdentityTemplate)
{
    EXPECT_NO_THROW(fixtures::single_vertex(1, 1));
}

TEST(Validate, RejectsInconsistentLevels)
{
    DiagramSpec s{{"a", "b"}, {1, 1}, {{"t", {{1, 1}, {}}}}, {}, {0}};
    EXPECT_EQ(code_of([&] { validate(s); }), ErrorCode::LevelMismatch);
}

TEST(Validate, RejectsEmptyScheduleAndZeroClock)
{
    DiagramSpec s{{"a"}, {1}, {{"t", {{0, 0}}}}, {}, {}};
    EXPECT_EQ(code_of([&] { validate(s); }), ErrorCode::EmptySchedule);
    s.cycle = {0};
    s.level1 = {0};
    EXPECT_EQ(code_of([&] { validate(s); }), ErrorCode::ZeroClockEdges);
}

TEST(Validate, RejectsDuplicateVertexNames)
{
    DiagramSpec s{{"a", "a"}, {1, 1}, {{"t", {{0}, {0}}}}, {}, {0}};
    EXPECT_EQ(code_of([&] { validate(s); }), ErrorCode::InvalidAlphabet);
}

TEST(Analyze, AbbReport)
{
    const auto r = analyze(fixtures::abb());
    EXPECT_EQ(r.widthK, 5);
    EXPECT_TRUE(r.focused);
    ASSERT_FALSE(r.focus.empty());
    for (const auto& f : r.focus) {
        EXPECT_EQ(f, std::optional<Vertex>(0));
    }
    EXPECT_TRUE(r.primitive);
    EXPECT_TRUE(r.properlyOrdered);
    EXPECT_FALSE(r.equalPathNumber);
}

TEST(Analyze, SingleVertex)
{
    const auto r = analyze(fixtures::single_vertex(1, 2));
    EXPECT_TRUE(r.focused);
    EXPECT_TRUE(r.equalPathNumber);
    EXPECT_TRUE(r.properlyOrdered);
}

TEST(Analyze, UnfocusedSwap)
{
    DiagramSpec s{{"a", "b"}, {1, 1}, {{"t", {{0, 1}, {1, 0}}}}, {}, {0}};
    const auto r = analyze(validate(s));
    EXPECT_FALSE(r.focused);
    EXPECT_FALSE(r.focus.front().has_value());
    EXPECT_FALSE(r.uniqueMaximal);
}

// Focus must agree with a direct scan of label-0 ranges.
TEST(Analyze, FocusMatchesDirectScan)
{
    const std::vector<DiagramSpec> specs{
        fixtures::abb().spec(),
        DiagramSpec{{"a", "b"}, {1, 1}, {{"t", {{0, 1}, {1, 0}}}}, {}, {0}},
        DiagramSpec{{"a", "b"}, {1, 2}, {{"p", {{1, 0}, {1}}}, {"q", {{0, 1}, {0, 0}}}}, {0}, {1}},
    };
    for (const auto& spec : specs) {
        const Diagram d = validate(spec);
        const auto r = analyze(d);
        bool all = true;
        for (int level = 2; level < 2 + static_cast<int>(r.focus.size()); ++level) {
            std::set<Vertex> ranges;
            for (Vertex a : d.vertices(level)) {
                ranges.insert(d.range(level, a, 0));
            }
            const bool one = ranges.size() == 1;
            EXPECT_EQ(r.focus[level - 2].has_value(), one) << "level " << level;
            all = all && one;
        }
        EXPECT_EQ(r.focused, all);
        if (r.focused) {
            for (int level = 1; level <= static_cast<int>(r.focus.size()); ++level) {
                EXPECT_EQ(d.chain_vertex(Tail::Min, level), r.focus[level - 1]);
            }
        }
    }
}

TEST(Analyze, TwoMaximalChainsAreNotProperlyOrdered)
{
    DiagramSpec s{{"a", "b"}, {1, 1}, {{"t", {{1, 0}, {0, 1}}}}, {}, {0}};
    const auto r = analyze(validate(s));
    EXPECT_FALSE(r.uniqueMaximal);
    EXPECT_FALSE(r.properlyOrdered);
}

TEST(PathCount, AbbExample)
{
    const Diagram d = fixtures::abb();
    EXPECT_EQ(path_count(d, 0, 3, 1, 1), 4u);
    EXPECT_EQ(fixtures::single_vertex(1, 2).edge_count(2), 2);
    EXPECT_EQ(path_count(fixtures::single_vertex(1, 2), 0, 5, 0, 4), 2u);
    EXPECT_EQ(code_of([&] { path_count(d, 0, 3, 0, 3); }), ErrorCode::BadLevels);
}

// Paths between levels agree with matrix products and with letter counts of
// composed words, for every vertex pair and level gap up to 4.
TEST(PathCount, AgreesWithMatricesAndWordsExhaustively)
{
    const auto s = fixtures::abb_substitution();
    const Diagram d = fixtures::abb();
    for (int m = 1; m <= 4; ++m) {
        for (int gap = 1; gap <= 4; ++gap) {
            const int n = m + gap;
            std::vector<std::vector<std::uint64_t>> prod = incidence_matrix(d, m + 1);
            for (int level = m + 2; level <= n; ++level) {
                const auto next = incidence_matrix(d, level);
                std::vector<std::vector<std::uint64_t>> out(2, std::vector<std::uint64_t>(2, 0));
                for (int a = 0; a < 2; ++a)
                    for (int c = 0; c < 2; ++c)
                        for (int b = 0; b < 2; ++b)
                            out[a][b] += next[a][c] * prod[c][b];
                prod = out;
            }
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    const auto pc = path_count(d, a, n, b, m);
                    EXPECT_EQ(pc, prod[a][b]);
                    EXPECT_EQ(pc, count_letter(s, a, gap, b));
                }
            }
        }
    }
}

TEST(Telescope, PairsOfOdometerLevels)
{
    const Diagram d = fixtures::single_vertex(1, 2);
    const DiagramSpec t = telescope(d, {{}, 2});
    ASSERT_EQ(t.cycle.size(), 1u);
    EXPECT_EQ(t.templates[t.cycle[0]].words[0].size(), 4u);
    EXPECT_EQ(t.level1[0], 2);
}

TEST(Telescope, EveryLevelIsIdentity)
{
    const Diagram d = fixtures::abb();
    const DiagramSpec t = telescope(d, {{}, 1});
    EXPECT_EQ(t.level1, d.spec().level1);
    ASSERT_EQ(t.cycle.size(), 1u);
    EXPECT_EQ(t.templates[t.cycle[0]].words, d.spec().templates[0].words);
}

TEST(Telescope, AbbPairsComposeWords)
{
    const auto s = fixtures::abb_substitution();
    const Diagram d = fixtures::abb();
    const DiagramSpec t = telescope(d, {{1}, 2});
    const Template& tt = t.templates[t.cycle[0]];
    EXPECT_EQ(tt.words[0], iterate_substitution(s, 0, 2));
    EXPECT_EQ(tt.words[1], iterate_substitution(s, 1, 2));
    EXPECT_EQ(tt.words[0].size(), 7u);
    EXPECT_EQ(tt.id, "tau*tau");
}

TEST(Telescope, CutErrors)
{
    const Diagram d = fixtures::abb();
    EXPECT_EQ(code_of([&] { telescope(d, {{2, 2}, 1}); }), ErrorCode::CutsNotMonotone);
    EXPECT_EQ(code_of([&] { telescope(d, {{1, 3}, std::nullopt}); }), ErrorCode::CutsBreakPeriodicity);
}

// Telescoping twice equals telescoping once by the composed cuts.
TEST(Telescope, Associativity)
{
    const std::vector<TelescopeCuts> outer{{{}, 1}, {{}, 2}, {{1}, 2}, {{2, 3}, 3}, {{1, 2}, 2}};
    const std::vector<TelescopeCuts> inner{{{}, 1}, {{}, 2}, {{1}, 2}, {{2}, 3}};
    const std::vector<Diagram> diagrams{fixtures::abb(), fixtures::single_vertex(2, 3)};
    for (const auto& d : diagrams) {
        for (const auto& o : outer) {
            const Diagram once = validate(telescope(d, o));
            for (const auto& i : inner) {
                const Diagram twice = validate(telescope(once, i));
                const Diagram direct = validate(telescope(d, compose_cuts(o, i)));
                for (int level = 1; level <= 6; ++level) {
                    for (Vertex a = 0; a < d.num_vertices(); ++a) {
                        ASSERT_EQ(twice.max_label(level, a), direct.max_label(level, a));
                        for (int x = 0; x <= twice.max_label(level, a); ++x) {
                            ASSERT_EQ(twice.range(level, a, x), direct.range(level, a, x));
                        }
                    }
                }
            }
        }
    }
}

TEST(SourceChain, AbbTails)
{
    const Diagram d = fixtures::abb();
    EXPECT_EQ(source_chain(d, PathRep{{0, 0, 0}, Tail::Min}), (std::vector<Vertex>{0, 0, 0}));
    const auto up = source_chain(d, extend_to(d, PathRep{{}, Tail::Max}, 6));
    for (std::size_t i = 1; i < up.size(); ++i) {
        EXPECT_EQ(up[i], 1);
    }
    EXPECT_EQ(code_of([&] { source_chain(d, PathRep{{0, 5}, Tail::Min}); }), ErrorCode::LabelOutOfRange);
}
