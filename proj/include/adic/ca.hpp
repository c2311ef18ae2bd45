#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "adic/spacetime.hpp"

namespace adic {

/// A horizontal window of one spacetime row. A width-w step centred at
/// column c covers columns c-1 .. c+w-2.
using Step = std::vector<Symbol>;

inline constexpr int window_lo() { return -1; }
inline constexpr int window_hi(int w) { return w - 2; }

Step window(const DiagramPatch& p, int m, int center, int w);

struct StepHash {
    std::size_t operator()(const Step& s) const noexcept;
};

/// Interns steps as dense ids.
class StepCodec {
public:
    std::uint32_t intern(const Step& s);
    std::optional<std::uint32_t> find(const Step& s) const;
    const Step& step(std::uint32_t id) const { return m_steps.at(id); }
    std::size_t size() const { return m_steps.size(); }

private:
    std::vector<Step> m_steps;
    std::unordered_map<Step, std::uint32_t, StepHash> m_ids;
};

/// All width-w windows in the harvested rows, including the all-clock one and
/// those straddling the clock boundary.
std::set<Step> enumerate_steps(const std::vector<DiagramPatch>& patches, int w);

/// Context ids of cells k-r..k+r; unused slots stay 0.
using RuleKey = std::array<std::uint32_t, 5>;

struct RuleKeyHash {
    std::size_t operator()(const RuleKey& k) const noexcept;
};

struct RuleConflict {
    std::vector<Step> context;
    Step first;
    Step second;
};

struct RuleTable {
    int w = 3;
    int r = 1;
    StepCodec codec;
    std::unordered_map<RuleKey, std::uint32_t, RuleKeyHash> table;
    std::uint32_t clock = 0;  // id of the all-clock step
    // Harvest provenance.
    std::vector<std::pair<int, int>> rows;
    int width = 0;
    // Parameters attempted before (and including) the one that succeeded.
    std::vector<std::pair<int, int>> tried;
    std::vector<RuleConflict> rejected;

    std::optional<std::uint32_t> apply(const RuleKey& key) const;
    std::size_t size() const { return table.size(); }
};

/// Records, for every harvested occurrence of cells k-r..k+r (cell k+i holding
/// the window of row m-i centred at column k+i), the window of row m+1 centred
/// at k. Throws AmbiguousRule when two occurrences disagree.
RuleTable build_rule(const std::vector<DiagramPatch>& patches, int w, int r);

/// Tries each (w, r) in order and returns the first functional table.
RuleTable build_rule_auto(const std::vector<DiagramPatch>& patches,
                          const std::vector<std::pair<int, int>>& params = {{3, 1}, {4, 1}});

/// Cell k holds a width-w step. Cells left of `origin` are clock steps; cells
/// at and beyond origin + core.size() repeat `cycle` (cycle[0] adjacent to the
/// core). With an empty cycle the far side is undefined.
struct CAConfig {
    int w = 3;
    int origin = 0;
    std::vector<Step> core;
    std::vector<Step> cycle;
    long time = 0;
};

inline int first_cell(int w) { return 1 - window_hi(w); }

/// Cells k = first_cell(w) .. hold the windows of rows -k of the minimal
/// path's orbit centred at column k; the far side is the maximal chain.
CAConfig make_x_init(const Diagram& d, int w, int coreCells);

/// Id-level simulation state.
class Automaton {
public:
    Automaton(const RuleTable& rule, const CAConfig& cfg);

    void step();
    long time() const { return m_time; }
    std::uint32_t cell(int k) const;
    int core_end() const { return m_origin + static_cast<int>(m_core.size()); }
    CAConfig config() const;
    const RuleTable& rule() const { return m_rule; }

private:
    const RuleTable& m_rule;
    int m_origin = 0;
    std::vector<std::uint32_t> m_core;
    std::vector<std::uint32_t> m_cycle;
    std::size_t m_phase = 0;
    long m_time = 0;

    RuleKey context(int k) const;
    std::uint32_t next(int k) const;
};

std::vector<CAConfig> simulate(const CAConfig& cfg, const RuleTable& rule, long n);

struct DecodeResult {
    Row row;  // columns 1..depth
    PathRep path;
    int depth = 0;
};

DecodeResult decode(const Automaton& a, int depth);
DecodeResult decode(const CAConfig& cfg, const RuleTable& rule, int depth);

struct SynthesisOptions {
    std::vector<std::pair<int, int>> params{{3, 1}, {4, 1}};
    int extraRows = 64;  // harvested rows beyond those the run visits
};

struct Synthesis {
    RuleTable rule;
    CAConfig init;
    int harvestM0 = 0;
    int harvestM1 = 0;
    int harvestWidth = 0;
    bool saturated = false;  // halving the harvest loses no step
};

/// Harvests an orbit segment of the minimal path covering `steps` CA steps,
/// builds the rule and x_init.
Synthesis synthesize(const Diagram& d, long steps, int depth, const SynthesisOptions& opt = {});

struct ConjugacyMismatch {
    long step = 0;
    Row expected;
    Row decoded;
};

struct ConjugacyReport {
    long steps = 0;
    int depth = 0;
    int w = 0;
    int r = 0;
    std::size_t ruleSize = 0;
    int harvestM0 = 0;
    int harvestM1 = 0;
    int harvestWidth = 0;
    bool saturated = false;
    std::vector<ConjugacyMismatch> mismatches;  // first few only
    long mismatchCount = 0;
    std::size_t distinctRows = 0;       // distinct decoded truncations
    std::size_t injectivityFailures = 0;  // equal decodes of differing true rows
    bool ok() const { return mismatchCount == 0 && injectivityFailures == 0; }
};

ConjugacyReport verify_conjugacy(const Diagram& d, long steps, int depth, const SynthesisOptions& opt = {});

}  // namespace adic
