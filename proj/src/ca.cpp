#include "adic/ca.hpp"

#include <algorithm>
#include <map>

#include "adic/vershik.hpp"

namespace adic {

Step window(const DiagramPatch& p, int m, int center, int w)
{
    Step s(w);
    for (int i = 0; i < w; ++i) {
        s[i] = p.at(m, center + window_lo() + i);
    }
    return s;
}

std::size_t StepHash::operator()(const Step& s) const noexcept
{
    std::size_t h = s.size();
    SymbolHash sh;
    for (const auto& x : s) {
        h = h * 0x9e3779b97f4a7c15ull + sh(x);
    }
    return h;
}

std::uint32_t StepCodec::intern(const Step& s)
{
    const auto [it, inserted] = m_ids.emplace(s, static_cast<std::uint32_t>(m_steps.size()));
    if (inserted) {
        m_steps.push_back(s);
    }
    return it->second;
}

std::optional<std::uint32_t> StepCodec::find(const Step& s) const
{
    const auto it = m_ids.find(s);
    if (it == m_ids.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::set<Step> enumerate_steps(const std::vector<DiagramPatch>& patches, int w)
{
    const int hi = window_hi(w);
    std::set<Step> out;
    for (const auto& p : patches) {
        for (int m = p.m0; m <= p.m1; ++m) {
            for (int c = -hi; c + hi <= p.width; ++c) {
                out.insert(window(p, m, c, w));
            }
        }
    }
    return out;
}

std::size_t RuleKeyHash::operator()(const RuleKey& k) const noexcept
{
    std::size_t h = 0;
    for (auto v : k) {
        h = (h ^ v) * 0x100000001b3ull;
    }
    return h;
}

std::optional<std::uint32_t> RuleTable::apply(const RuleKey& key) const
{
    const auto it = table.find(key);
    if (it == table.end()) {
        return std::nullopt;
    }
    return it->second;
}

namespace {

std::optional<RuleConflict> try_build(const std::vector<DiagramPatch>& patches, int w, int r, RuleTable& t)
{
    if (w < 3 || r < 1 || 2 * r + 1 > static_cast<int>(RuleKey{}.size())) {
        throw Error(ErrorCode::InsufficientHarvest, "unsupported parameters (w, r)");
    }
    t = RuleTable{};
    t.w = w;
    t.r = r;
    const int hi = window_hi(w);
    t.clock = t.codec.intern(Step(w, Symbol::clock()));
    t.width = patches.empty() ? 0 : patches.front().width;
    for (const auto& p : patches) {
        t.rows.emplace_back(p.m0, p.m1);
        t.width = std::min(t.width, p.width);
        for (int m = p.m0 + r; m + r <= p.m1; ++m) {
            for (int k = -hi - r; k + r + hi <= p.width; ++k) {
                RuleKey key{};
                for (int i = -r; i <= r; ++i) {
                    key[i + r] = t.codec.intern(window(p, m - i, k + i, w));
                }
                const auto out = t.codec.intern(window(p, m + 1, k, w));
                const auto [it, inserted] = t.table.emplace(key, out);
                if (!inserted && it->second != out) {
                    RuleConflict c;
                    for (int i = 0; i < 2 * r + 1; ++i) {
                        c.context.push_back(t.codec.step(key[i]));
                    }
                    c.first = t.codec.step(it->second);
                    c.second = t.codec.step(out);
                    return c;
                }
            }
        }
    }
    if (t.table.empty()) {
        throw Error(ErrorCode::InsufficientHarvest, "no rule context fits the harvested patches");
    }
    return std::nullopt;
}

}  // namespace

RuleTable build_rule(const std::vector<DiagramPatch>& patches, int w, int r)
{
    RuleTable t;
    if (try_build(patches, w, r, t)) {
        throw Error(ErrorCode::AmbiguousRule,
                    "(w, r) = (" + std::to_string(w) + ", " + std::to_string(r) + ") is not functional");
    }
    t.tried.emplace_back(w, r);
    return t;
}

RuleTable build_rule_auto(const std::vector<DiagramPatch>& patches, const std::vector<std::pair<int, int>>& params)
{
    std::vector<std::pair<int, int>> tried;
    std::vector<RuleConflict> rejected;
    for (const auto& [w, r] : params) {
        RuleTable t;
        tried.emplace_back(w, r);
        if (auto conflict = try_build(patches, w, r, t)) {
            rejected.push_back(std::move(*conflict));
            continue;
        }
        t.tried = tried;
        t.rejected = rejected;
        return t;
    }
    throw Error(ErrorCode::AmbiguousRule, "no configured (w, r) yields a functional rule");
}

// ---------------------------------------------------------------------------
// x_init
// ---------------------------------------------------------------------------

CAConfig make_x_init(const Diagram& d, int w, int coreCells)
{
    const auto report = analyze(d);
    if (!report.properlyOrdered) {
        throw Error(ErrorCode::NotProperlyOrdered, "x_init needs unique extremal paths");
    }
    const int k0 = first_cell(w);
    const int hi = window_hi(w);
    const int c = d.cycle_length();
    // Far cells must sit at columns where the maximal chain is periodic.
    int kEnd = std::max(k0 + std::max(coreCells, 1), d.cycle_start() + 2);
    const PathRep xmin = minimal_path(d);
    const PathRep xmax = maximal_path(d);

    for (int attempt = 0; attempt < 16; ++attempt) {
        const int K = 4 * kEnd + 16;
        const DiagramPatch P = patch(d, xmin, -K - 1, -k0, K + hi + 1);
        const DiagramPatch M = patch(d, xmax, 0, 0, kEnd + c + hi + 1);
        std::vector<Step> cycle;
        for (int k = kEnd; k < kEnd + c; ++k) {
            cycle.push_back(window(M, 0, k, w));
        }
        int lastBad = -1;
        for (int k = kEnd; k <= K; ++k) {
            if (window(P, -k, k, w) != cycle[(k - kEnd) % c]) {
                lastBad = k;
            }
        }
        if (lastBad >= 0) {
            kEnd = lastBad + 1;
            continue;
        }
        CAConfig cfg;
        cfg.w = w;
        cfg.origin = k0;
        for (int k = k0; k < kEnd; ++k) {
            cfg.core.push_back(window(P, -k, k, w));
        }
        cfg.cycle = std::move(cycle);
        return cfg;
    }
    throw Error(ErrorCode::InsufficientCoverage, "predecessor rows never settle on the maximal chain");
}

// ---------------------------------------------------------------------------
// Automaton
// ---------------------------------------------------------------------------

Automaton::Automaton(const RuleTable& rule, const CAConfig& cfg)
    : m_rule(rule), m_origin(cfg.origin), m_time(cfg.time)
{
    if (cfg.w != rule.w) {
        throw Error(ErrorCode::UnseenContext, "configuration and rule use different window widths");
    }
    auto id = [&](const Step& s) {
        const auto v = rule.codec.find(s);
        if (!v) {
            throw Error(ErrorCode::UnseenContext, "configuration holds a step absent from the harvest");
        }
        return *v;
    };
    for (const auto& s : cfg.core) {
        m_core.push_back(id(s));
    }
    for (const auto& s : cfg.cycle) {
        m_cycle.push_back(id(s));
    }
    RuleKey quiet{};
    for (int i = 0; i < 2 * rule.r + 1; ++i) {
        quiet[i] = rule.clock;
    }
    if (rule.apply(quiet) != rule.clock) {
        throw Error(ErrorCode::Mismatch, "the all-clock neighbourhood is not quiescent");
    }
    if (!m_cycle.empty()) {
        const int from = core_end() + rule.r;
        for (int k = from; k < from + static_cast<int>(m_cycle.size()); ++k) {
            if (next(k) != cell(k)) {
                throw Error(ErrorCode::Mismatch, "far fill is not invariant under the rule");
            }
        }
    }
}

std::uint32_t Automaton::cell(int k) const
{
    if (k < m_origin) {
        return m_rule.clock;
    }
    const int i = k - m_origin;
    if (i < static_cast<int>(m_core.size())) {
        return m_core[i];
    }
    if (m_cycle.empty()) {
        throw Error(ErrorCode::DepthExceedsCore, "cell " + std::to_string(k) + " lies beyond the core");
    }
    return m_cycle[(m_phase + static_cast<std::size_t>(i - m_core.size())) % m_cycle.size()];
}

RuleKey Automaton::context(int k) const
{
    RuleKey key{};
    for (int i = -m_rule.r; i <= m_rule.r; ++i) {
        key[i + m_rule.r] = cell(k + i);
    }
    return key;
}

namespace {

[[noreturn]] void unseen(const RuleTable& rule, const RuleKey& key, int k)
{
    std::string ctx;
    for (int i = 0; i < 2 * rule.r + 1; ++i) {
        ctx += " " + std::to_string(key[i]);
    }
    throw Error(ErrorCode::UnseenContext, "no rule entry at cell " + std::to_string(k) + " for step ids" + ctx);
}

}  // namespace

std::uint32_t Automaton::next(int k) const
{
    const RuleKey key = context(k);
    const auto out = m_rule.apply(key);
    if (!out) {
        unseen(m_rule, key, k);
    }
    return *out;
}

void Automaton::step()
{
    const int r = m_rule.r;
    const int n = static_cast<int>(m_core.size());
    std::vector<std::uint32_t> core(n);
    for (int i = 0; i < n; ++i) {
        const int k = m_origin + i;
        if (i >= r && i + r < n) {
            RuleKey key{};
            for (int j = -r; j <= r; ++j) {
                key[j + r] = m_core[i + j];
            }
            const auto it = m_rule.table.find(key);
            if (it == m_rule.table.end()) {
                unseen(m_rule, key, k);
            }
            core[i] = it->second;
        } else {
            core[i] = next(k);
        }
    }
    // The signal at the far boundary may disturb up to r cells of the fill.
    std::vector<std::uint32_t> grown;
    if (!m_cycle.empty()) {
        int last = -1;
        for (int i = 0; i < r; ++i) {
            const int k = core_end() + i;
            grown.push_back(next(k));
            if (grown.back() != cell(k)) {
                last = i;
            }
        }
        grown.resize(static_cast<std::size_t>(last + 1));
    }
    for (int k = m_origin - r; k < m_origin; ++k) {
        if (next(k) != m_rule.clock) {
            throw Error(ErrorCode::Mismatch, "the clock side was disturbed at cell " + std::to_string(k));
        }
    }
    core.insert(core.end(), grown.begin(), grown.end());
    m_phase += grown.size();
    m_core = std::move(core);
    ++m_time;
}

CAConfig Automaton::config() const
{
    CAConfig cfg;
    cfg.w = m_rule.w;
    cfg.origin = m_origin;
    cfg.time = m_time;
    for (auto id : m_core) {
        cfg.core.push_back(m_rule.codec.step(id));
    }
    for (std::size_t i = 0; i < m_cycle.size(); ++i) {
        cfg.cycle.push_back(m_rule.codec.step(m_cycle[(m_phase + i) % m_cycle.size()]));
    }
    return cfg;
}

std::vector<CAConfig> simulate(const CAConfig& cfg, const RuleTable& rule, long n)
{
    Automaton a(rule, cfg);
    std::vector<CAConfig> out{cfg};
    for (long t = 0; t < n; ++t) {
        a.step();
        out.push_back(a.config());
    }
    return out;
}

// ---------------------------------------------------------------------------
// decode
// ---------------------------------------------------------------------------

namespace {

// Window of row (t - dm) centred at column c, where t is the automaton's time.
// Cell c holds (dm = c); other windows follow from the rule applied to
// windows one anti-diagonal closer to the known ray.
class Decoder {
public:
    explicit Decoder(const Automaton& a) : m_a(a), m_rule(a.rule()) {}

    std::uint32_t win(int dm, int c)
    {
        const int hi = window_hi(m_rule.w);
        if (c + hi <= 0) {
            return m_rule.clock;
        }
        if (dm == c) {
            return m_a.cell(c);
        }
        if (dm > c) {
            throw Error(ErrorCode::DeductionStuck, "window behind the known ray");
        }
        const auto key = std::make_pair(dm, c);
        if (const auto it = m_memo.find(key); it != m_memo.end()) {
            return it->second;
        }
        const int r = m_rule.r;
        RuleKey ctx{};
        for (int i = -r; i <= r; ++i) {
            ctx[i + r] = win(dm + 1 + i, c + i);
        }
        const auto out = m_rule.apply(ctx);
        if (!out) {
            throw Error(ErrorCode::DeductionStuck,
                        "no rule entry for window (" + std::to_string(dm) + ", " + std::to_string(c) + ")");
        }
        m_memo.emplace(key, *out);
        return *out;
    }

private:
    const Automaton& m_a;
    const RuleTable& m_rule;
    std::map<std::pair<int, int>, std::uint32_t> m_memo;
};

}  // namespace

DecodeResult decode(const Automaton& a, int depth)
{
    const RuleTable& rule = a.rule();
    const int hi = window_hi(rule.w);
    Decoder dec(a);
    DecodeResult res;
    for (int j = 1; j <= depth; ++j) {
        const int c = std::max(0, j - hi);
        const Step& s = rule.codec.step(dec.win(0, c));
        const Symbol& x = s[j - c - window_lo()];
        if (x.is_clock()) {
            break;
        }
        res.row.push_back(x);
    }
    res.path = row_path(res.row);
    res.depth = static_cast<int>(res.row.size());
    return res;
}

DecodeResult decode(const CAConfig& cfg, const RuleTable& rule, int depth)
{
    const Automaton a(rule, cfg);
    return decode(a, depth);
}

// ---------------------------------------------------------------------------
// synthesis and verification
// ---------------------------------------------------------------------------

Synthesis synthesize(const Diagram& d, long steps, int depth, const SynthesisOptions& opt)
{
    if (steps < 0 || depth < 1) {
        throw Error(ErrorCode::InsufficientHarvest, "steps must be >= 0 and depth >= 1");
    }
    int maxR = 1, maxHi = 1;
    for (const auto& [w, r] : opt.params) {
        maxR = std::max(maxR, r);
        maxHi = std::max(maxHi, window_hi(w));
    }
    const int c = d.cycle_length();
    const int ns = d.cycle_start();
    const int coreCells = std::max(2 * depth + 2 * maxR + 4, ns + c + 4);

    // Initial configurations depend only on w.
    std::map<int, CAConfig> inits;
    int kEnd = 0;
    for (const auto& [w, r] : opt.params) {
        if (!inits.count(w)) {
            inits[w] = make_x_init(d, w, coreCells);
            kEnd = std::max(kEnd, inits[w].origin + static_cast<int>(inits[w].core.size()));
        }
    }
    const int margin = opt.extraRows + 2 * depth * maxR + 8;
    const int m0 = -(kEnd + maxR + margin);
    const int m1 = static_cast<int>(steps) + margin;

    // Columns: everything the visited rows make explicit, plus enough periodic
    // columns beyond it that every phase of the extremal chains appears.
    const DiagramPatch probe = patch(d, minimal_path(d), m0, m1, 1);
    int maxDepth = 0;
    for (const auto& p : probe.paths) {
        maxDepth = std::max(maxDepth, p.depth());
    }
    const int width = std::max(maxDepth, 2 * depth) + ns + 2 * c + 2 * (maxHi + maxR) + 4;

    Synthesis s;
    const std::vector<DiagramPatch> patches{patch(d, minimal_path(d), m0, m1, width)};
    s.rule = build_rule_auto(patches, opt.params);
    s.init = inits.at(s.rule.w);
    s.harvestM0 = m0;
    s.harvestM1 = m1;
    s.harvestWidth = width;
    const std::vector<DiagramPatch> half{patch(d, minimal_path(d), m0 / 2, m1 / 2, width)};
    s.saturated = enumerate_steps(half, s.rule.w) == enumerate_steps(patches, s.rule.w);
    return s;
}

ConjugacyReport verify_conjugacy(const Diagram& d, long steps, int depth, const SynthesisOptions& opt)
{
    const Synthesis s = synthesize(d, steps, depth, opt);
    ConjugacyReport rep;
    rep.steps = steps;
    rep.depth = depth;
    rep.w = s.rule.w;
    rep.r = s.rule.r;
    rep.ruleSize = s.rule.size();
    rep.harvestM0 = s.harvestM0;
    rep.harvestM1 = s.harvestM1;
    rep.harvestWidth = s.harvestWidth;
    rep.saturated = s.saturated;

    Automaton a(s.rule, s.init);
    PathRep x = minimal_path(d);
    std::map<Row, Row> seen;  // decoded -> true row
    for (long t = 0; t <= steps; ++t) {
        const auto dec = decode(a, depth);
        const Row truth = encode_row(d, x, depth);
        if (dec.row != truth) {
            ++rep.mismatchCount;
            if (rep.mismatches.size() < 8) {
                rep.mismatches.push_back({t, truth, dec.row});
            }
        }
        const auto [it, inserted] = seen.emplace(dec.row, truth);
        if (!inserted && it->second != truth) {
            ++rep.injectivityFailures;
        }
        if (t < steps) {
            a.step();
            x = successor(d, x);
        }
    }
    rep.distinctRows = seen.size();
    return rep;
}

}  // namespace adic
