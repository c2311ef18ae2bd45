#include "adic/builders.hpp"

#include <algorithm>
#include <climits>
#include <set>

namespace adic {

// ---------------------------------------------------------------------------
// Substitutions
// ---------------------------------------------------------------------------

bool is_primitive(const SubstitutionSpec& s)
{
    const std::size_t n = s.alphabet.size();
    if (n == 0 || std::none_of(s.words.begin(), s.words.end(), [](const auto& w) { return w.size() >= 2; })) {
        return false;
    }
    std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
    for (std::size_t a = 0; a < n; ++a) {
        for (int b : s.words[a]) {
            m[a][b] = true;
        }
    }
    auto power = m;
    // Wielandt: a primitive n x n matrix has a positive power of order <= (n-1)^2 + 1.
    const std::size_t bound = (n - 1) * (n - 1) + 1;
    for (std::size_t k = 1; k <= bound; ++k) {
        bool positive = true;
        for (std::size_t a = 0; a < n && positive; ++a) {
            for (std::size_t b = 0; b < n && positive; ++b) {
                positive = power[a][b];
            }
        }
        if (positive) {
            return true;
        }
        std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t c = 0; c < n; ++c) {
                if (!power[a][c]) {
                    continue;
                }
                for (std::size_t b = 0; b < n; ++b) {
                    if (m[c][b]) {
                        next[a][b] = true;
                    }
                }
            }
        }
        power = std::move(next);
    }
    return false;
}

std::vector<int> iterate_substitution(const SubstitutionSpec& s, int letter, int n)
{
    std::vector<int> word{letter};
    for (int i = 0; i < n; ++i) {
        std::vector<int> next;
        for (int a : word) {
            next.insert(next.end(), s.words[a].begin(), s.words[a].end());
        }
        word = std::move(next);
    }
    return word;
}

DiagramSpec from_substitution(const SubstitutionSpec& s)
{
    const int n = static_cast<int>(s.alphabet.size());
    if (n == 0 || static_cast<int>(s.words.size()) != n) {
        throw Error(ErrorCode::InvalidAlphabet, "substitution must define a word for every letter");
    }
    for (const auto& w : s.words) {
        if (w.empty()) {
            throw Error(ErrorCode::NotProper, "substitution words must be nonempty");
        }
        for (int b : w) {
            if (b < 0 || b >= n) {
                throw Error(ErrorCode::InvalidAlphabet, "substitution word uses an unknown letter");
            }
        }
    }
    std::set<int> firsts, lasts;
    for (const auto& w : s.words) {
        firsts.insert(w.front());
        lasts.insert(w.back());
    }
    if (firsts.size() != 1 || lasts.size() != 1) {
        throw Error(ErrorCode::NotProper, "words must share their first and their last letter");
    }
    if (!is_primitive(s)) {
        throw Error(ErrorCode::NotPrimitive, "substitution is not primitive");
    }

    DiagramSpec spec;
    spec.alphabet = s.alphabet;
    spec.level1.assign(n, 1);
    spec.templates.push_back(Template{"tau", s.words});
    spec.cycle = {0};

    const auto report = analyze(validate(spec));
    if (!report.primitive || !report.focused || !report.properlyOrdered) {
        throw Error(ErrorCode::NotPrimitive, "substitution diagram failed structural checks");
    }
    return spec;
}

// ---------------------------------------------------------------------------
// Odometers
// ---------------------------------------------------------------------------

std::int64_t OdometerSpec::quotient(int n) const
{
    if (cycle.empty()) {
        throw Error(ErrorCode::EmptyQuotients, "quotient list has no periodic part");
    }
    const auto i = static_cast<std::size_t>(n - 1);
    if (i < prefix.size()) {
        return prefix[i];
    }
    return cycle[(i - prefix.size()) % cycle.size()];
}

namespace {

void check_odometer(const OdometerSpec& o)
{
    if (o.cycle.empty()) {
        throw Error(ErrorCode::EmptyQuotients, "quotient list has no periodic part");
    }
    for (auto q : o.prefix) {
        if (q < 2) {
            throw Error(ErrorCode::InvalidQuotient, "quotients must be >= 2");
        }
    }
    for (auto q : o.cycle) {
        if (q < 2) {
            throw Error(ErrorCode::InvalidQuotient, "quotients must be >= 2");
        }
    }
}

std::map<std::int64_t, std::int64_t> factor(std::int64_t n)
{
    std::map<std::int64_t, std::int64_t> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    if (n > 1) {
        ++out[n];
    }
    return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw Error(ErrorCode::Overflow, "odometer product exceeds 64 bits");
    }
    return r;
}

}  // namespace

OdometerCanonical odometer_canonical(const OdometerSpec& o)
{
    check_odometer(o);
    OdometerCanonical c;
    for (auto q : o.cycle) {
        for (const auto& [p, e] : factor(q)) {
            c.multiplicity[p] = std::nullopt;
        }
    }
    for (auto q : o.prefix) {
        for (const auto& [p, e] : factor(q)) {
            auto it = c.multiplicity.find(p);
            if (it == c.multiplicity.end()) {
                c.multiplicity[p] = e;
            } else if (it->second) {
                *it->second += e;
            }
        }
    }
    for (const auto& [p, m] : c.multiplicity) {
        if (m) {
            for (std::int64_t i = 0; i < *m; ++i) {
                c.N = checked_mul(c.N, p);
            }
        } else {
            c.M = checked_mul(c.M, p);
        }
    }
    return c;
}

bool odometers_equivalent(const OdometerSpec& a, const OdometerSpec& b)
{
    return odometer_canonical(a).multiplicity == odometer_canonical(b).multiplicity;
}

DiagramSpec from_odometer(const OdometerSpec& o)
{
    const auto c = odometer_canonical(o);
    if (c.N > INT_MAX || c.M > 1 << 20) {
        throw Error(ErrorCode::Overflow, "odometer quotients too large for a diagram");
    }
    DiagramSpec spec;
    spec.alphabet = {"a"};
    spec.level1 = {static_cast<int>(c.N)};
    spec.templates.push_back(Template{"a^" + std::to_string(c.M), {std::vector<Vertex>(c.M, 0)}});
    spec.cycle = {0};
    return spec;
}

std::vector<std::int64_t> oplus(const std::vector<std::int64_t>& x,
                                const std::vector<std::int64_t>& y,
                                const OdometerSpec& q, int L)
{
    check_odometer(q);
    std::vector<std::int64_t> out(L, 0);
    std::int64_t carry = 0;
    for (int n = 1; n <= L; ++n) {
        const std::int64_t qn = q.quotient(n);
        const std::int64_t xn = n <= static_cast<int>(x.size()) ? x[n - 1] : 0;
        const std::int64_t yn = n <= static_cast<int>(y.size()) ? y[n - 1] : 0;
        if (xn < 0 || xn >= qn || yn < 0 || yn >= qn) {
            throw Error(ErrorCode::DigitOutOfRange, "digit " + std::to_string(n) + " not reduced");
        }
        const std::int64_t sum = carry + xn + yn;
        out[n - 1] = sum % qn;
        carry = sum / qn;
    }
    return out;
}

OdometerReading odometer_reading(const OdometerSpec& o)
{
    const auto c = odometer_canonical(o);
    OdometerReading r;
    r.quotients.cycle = {c.M};
    if (c.N == 1) {
        r.firstLevel = 2;
    } else {
        r.quotients.prefix = {c.N};
    }
    return r;
}

std::vector<std::int64_t> path_digits(const OdometerReading& r, const PathRep& p, int L)
{
    std::vector<std::int64_t> digits(L, 0);
    for (int i = 0; i < L; ++i) {
        const int level = r.firstLevel + i;
        if (level <= p.depth()) {
            digits[i] = p.labels[level - 1];
        } else if (p.tail == Tail::Max) {
            digits[i] = r.quotients.quotient(i + 1) - 1;
        }
    }
    return digits;
}

// ---------------------------------------------------------------------------
// Toeplitz
// ---------------------------------------------------------------------------

namespace {

struct Expansion {
    std::vector<ToeplitzStage> stages;
    std::vector<std::vector<std::int64_t>> holes;  // holes[k] within [0, s_k)
};

Expansion expand(const ToeplitzSpec& t, std::size_t count)
{
    Expansion e;
    std::vector<std::int64_t> holes;
    std::int64_t period = 1;
    holes.push_back(0);
    const int letters = static_cast<int>(t.alphabet.size());

    auto apply = [&](std::int64_t nextPeriod, const std::map<std::int64_t, int>& fill) {
        if (nextPeriod <= 0 || nextPeriod % period != 0) {
            throw Error(ErrorCode::InvalidQuotient, "each period must be a multiple of the previous one");
        }
        if (nextPeriod > (std::int64_t{1} << 50)) {
            throw Error(ErrorCode::Overflow, "Toeplitz period grew beyond 2^50");
        }
        std::vector<std::int64_t> candidates;
        for (std::int64_t i = 0; i < nextPeriod / period; ++i) {
            for (auto h : holes) {
                candidates.push_back(h + i * period);
            }
        }
        std::sort(candidates.begin(), candidates.end());
        std::set<std::int64_t> filled;
        for (const auto& [pos, letter] : fill) {
            if (!std::binary_search(candidates.begin(), candidates.end(), pos)) {
                throw Error(ErrorCode::OverlappingFill,
                            "position " + std::to_string(pos) + " is not a hole of period " +
                                std::to_string(nextPeriod));
            }
            if (letter < 0 || letter >= letters) {
                throw Error(ErrorCode::InvalidAlphabet, "fill uses an unknown letter");
            }
            filled.insert(pos);
        }
        holes.clear();
        for (auto c : candidates) {
            if (!filled.count(c)) {
                holes.push_back(c);
            }
        }
        period = nextPeriod;
        e.stages.push_back(ToeplitzStage{nextPeriod, fill});
        e.holes.push_back(holes);
        return candidates;
    };

    for (const auto& stage : t.stages) {
        if (e.stages.size() >= count) {
            return e;
        }
        apply(stage.period, stage.fill);
    }
    std::size_t i = 0;
    while (!t.tail.empty() && e.stages.size() < count) {
        const auto& ts = t.tail[i++ % t.tail.size()];
        const std::int64_t next = period * ts.ratio;
        // Hole indices refer to the sorted candidate list of the new period.
        std::vector<std::int64_t> candidates;
        for (std::int64_t j = 0; j < ts.ratio; ++j) {
            for (auto h : holes) {
                candidates.push_back(h + j * period);
            }
        }
        std::sort(candidates.begin(), candidates.end());
        std::map<std::int64_t, int> fill;
        for (const auto& [index, letter] : ts.holes) {
            if (index < 0 || index >= static_cast<std::int64_t>(candidates.size())) {
                throw Error(ErrorCode::OverlappingFill, "hole index out of range");
            }
            fill[candidates[index]] = letter;
        }
        apply(next, fill);
    }
    return e;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    return a / b - ((a % b != 0) && ((a < 0) != (b < 0)));
}

std::string vertex_name(std::size_t i)
{
    if (i < 26) {
        return std::string(1, static_cast<char>('A' + i));
    }
    return "V" + std::to_string(i);
}

}  // namespace

std::vector<ToeplitzStage> expand_stages(const ToeplitzSpec& t, std::size_t count)
{
    return expand(t, count).stages;
}

ToeplitzResult from_toeplitz(const ToeplitzSpec& t, std::int64_t horizon)
{
    if (t.alphabet.empty() || t.stages.empty()) {
        throw Error(ErrorCode::IncompleteFill, "Toeplitz spec needs an alphabet and at least one stage");
    }
    if (horizon < 8) {
        throw Error(ErrorCode::Unstabilized, "horizon too small");
    }
    const std::int64_t width = 2 * horizon;
    ToeplitzResult result;
    result.horizon = horizon;
    result.window.assign(width, -1);
    auto at = [&](std::int64_t p) -> int& { return result.window[p + horizon]; };

    // Fill the window stage by stage until no hole remains.
    constexpr std::size_t kMaxStages = 64;
    const std::size_t tailLen = t.tail.size();
    const std::size_t levels = t.stages.size() + 3 * std::max<std::size_t>(1, tailLen);
    Expansion ex;
    std::size_t open = static_cast<std::size_t>(width);
    std::size_t used = 0;
    for (std::size_t want = 1; want <= kMaxStages; ++want) {
        ex = expand(t, want);
        if (ex.stages.size() < want) {
            break;
        }
        const auto& stage = ex.stages[want - 1];
        for (const auto& [pos, letter] : stage.fill) {
            for (std::int64_t n = -floor_div(horizon + pos, stage.period);; ++n) {
                const std::int64_t p = n * stage.period + pos;
                if (p >= horizon) {
                    break;
                }
                if (p >= -horizon && at(p) < 0) {
                    at(p) = letter;
                    --open;
                }
            }
        }
        used = want;
        if (open == 0 && used >= levels) {
            break;
        }
    }
    if (open != 0) {
        std::string where;
        for (std::int64_t p = -horizon; p < horizon && where.size() < 60; ++p) {
            if (at(p) < 0) {
                where += " " + std::to_string(p);
            }
        }
        throw Error(ErrorCode::IncompleteFill, "holes remain at:" + where);
    }

    // A completely filled Toeplitz word must not be shift-periodic.
    for (std::int64_t p = 1; p <= horizon; ++p) {
        bool periodic = true;
        for (std::int64_t i = 0; i + p < width && periodic; ++i) {
            periodic = result.window[i] == result.window[i + p];
        }
        if (periodic) {
            throw Error(ErrorCode::Periodic, "filled sequence has period " + std::to_string(p));
        }
    }

    const std::size_t nLevels = std::min(levels, ex.stages.size());
    if (nLevels < 2) {
        throw Error(ErrorCode::Unstabilized, "need at least two stages for a diagram");
    }
    const auto letters = static_cast<std::int64_t>(t.alphabet.size());
    for (std::size_t k = 0; k < nLevels; ++k) {
        result.periods.push_back(ex.stages[k].period);
        result.holesPerStage.push_back(ex.holes[k].size());
        if (t.widthBound > 0) {
            const std::int64_t ratio = k == 0 ? ex.stages[0].period : ex.stages[k].period / ex.stages[k - 1].period;
            std::int64_t patterns = 1;
            for (std::size_t h = 0; h < ex.holes[k].size() && patterns <= t.widthBound; ++h) {
                patterns *= letters;
            }
            if ((k > 0 && ratio > t.widthBound) || patterns > t.widthBound) {
                throw Error(ErrorCode::WidthBoundViolated,
                            "stage " + std::to_string(k + 1) + " exceeds the declared width bound");
            }
        }
    }

    // W_k: aligned blocks of length s_k, word at position 0 first.
    auto block = [&](std::int64_t start, std::int64_t len) {
        std::string w;
        for (std::int64_t p = start; p < start + len; ++p) {
            w += t.alphabet[at(p)];
            w += '\x1f';
        }
        return w;
    };
    std::vector<std::vector<std::string>> keys(nLevels);
    for (std::size_t k = 0; k < nLevels; ++k) {
        const std::int64_t s = result.periods[k];
        auto collect = [&](std::int64_t lo, std::int64_t hi) {
            std::set<std::string> out;
            for (std::int64_t i = floor_div(lo + s - 1, s); (i + 1) * s <= hi; ++i) {
                out.insert(block(i * s, s));
            }
            return out;
        };
        const auto inner = collect(-horizon / 2, horizon / 2);
        const auto full = collect(-horizon, horizon);
        if (width / s < 8 || inner != full) {
            throw Error(ErrorCode::Unstabilized,
                        "word set for period " + std::to_string(s) + " not stable; raise the horizon");
        }
        const std::string first = block(0, s);
        keys[k].push_back(first);
        for (const auto& w : full) {
            if (w != first) {
                keys[k].push_back(w);
            }
        }
    }

    std::size_t maxWords = 0;
    for (const auto& kw : keys) {
        maxWords = std::max(maxWords, kw.size());
    }
    DiagramSpec spec;
    for (std::size_t i = 0; i < maxWords; ++i) {
        spec.alphabet.push_back(vertex_name(i));
    }
    spec.level1.assign(maxWords, 0);
    for (std::size_t j = 0; j < keys[0].size(); ++j) {
        spec.level1[j] = static_cast<int>(result.periods[0]);
    }

    // One template per harvested level >= 2.
    std::vector<std::vector<std::vector<Vertex>>> levelWords;
    for (std::size_t k = 1; k < nLevels; ++k) {
        const std::int64_t s = result.periods[k - 1];
        const std::size_t symLen = static_cast<std::size_t>(s) * 2;  // letter + separator
        std::vector<std::vector<Vertex>> words(maxWords);
        for (std::size_t j = 0; j < keys[k].size(); ++j) {
            const std::string& w = keys[k][j];
            for (std::size_t off = 0; off < w.size(); off += symLen) {
                const auto sub = w.substr(off, symLen);
                const auto it = std::find(keys[k - 1].begin(), keys[k - 1].end(), sub);
                words[j].push_back(static_cast<Vertex>(it - keys[k - 1].begin()));
            }
        }
        levelWords.push_back(std::move(words));
    }

    // Smallest prefix P and cycle C (a multiple of the tail length) with the
    // last harvested levels repeating at least once.
    const std::size_t T = levelWords.size();
    const std::size_t unit = std::max<std::size_t>(1, tailLen);
    bool found = false;
    std::size_t P = 0, C = 0;
    for (std::size_t p = 0; p < T && !found; ++p) {
        for (std::size_t c = unit; p + 2 * c <= T && !found; c += unit) {
            bool ok = true;
            for (std::size_t i = p + c; i < T && ok; ++i) {
                ok = levelWords[i] == levelWords[i - c];
            }
            if (ok) {
                found = true;
                P = p;
                C = c;
            }
        }
    }
    if (!found) {
        throw Error(ErrorCode::Unstabilized, "level templates do not become periodic within the harvest");
    }
    auto intern = [&](const std::vector<std::vector<Vertex>>& words) {
        for (std::size_t i = 0; i < spec.templates.size(); ++i) {
            if (spec.templates[i].words == words) {
                return static_cast<int>(i);
            }
        }
        spec.templates.push_back(Template{"T" + std::to_string(spec.templates.size()), words});
        return static_cast<int>(spec.templates.size()) - 1;
    };
    for (std::size_t i = 0; i < P; ++i) {
        spec.prefix.push_back(intern(levelWords[i]));
    }
    for (std::size_t i = P; i < P + C; ++i) {
        spec.cycle.push_back(intern(levelWords[i]));
    }

    const auto report = analyze(validate(spec));
    if (!report.focused) {
        throw Error(ErrorCode::NotFocused, "Toeplitz words do not share their leading block");
    }
    if (!report.equalPathNumber) {
        throw Error(ErrorCode::Unstabilized, "Toeplitz diagram lacks equal path numbers");
    }
    if (t.widthBound > 0 && report.widthK > t.widthBound) {
        throw Error(ErrorCode::WidthBoundViolated,
                    "width " + std::to_string(report.widthK) + " exceeds declared " +
                        std::to_string(t.widthBound));
    }
    result.widthK = report.widthK;
    for (auto& kw : keys) {
        std::vector<std::string> plain;
        for (auto& w : kw) {
            std::string s;
            for (char ch : w) {
                if (ch != '\x1f') {
                    s += ch;
                }
            }
            plain.push_back(s);
        }
        result.words.push_back(std::move(plain));
    }
    result.diagram = std::move(spec);
    return result;
}

}  // namespace adic
