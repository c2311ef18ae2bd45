#include "adic/io.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace adic {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& msg)
{
    throw Error(ErrorCode::ParseError, (where.empty() ? "<root>" : where) + ": " + msg);
}

const Json& field(const Json& j, const char* key, const std::string& where)
{
    if (!j.is_object()) {
        fail(where, "expected an object");
    }
    const auto it = j.find(key);
    if (it == j.end()) {
        fail(where, std::string("missing field '") + key + "'");
    }
    return *it;
}

std::int64_t integer(const Json& j, const std::string& where)
{
    if (!j.is_number_integer()) {
        fail(where, "expected an integer");
    }
    return j.get<std::int64_t>();
}

std::string text(const Json& j, const std::string& where)
{
    if (!j.is_string()) {
        fail(where, "expected a string");
    }
    return j.get<std::string>();
}

const Json& array(const Json& j, const std::string& where)
{
    if (!j.is_array()) {
        fail(where, "expected an array");
    }
    return j;
}

int index_of(const std::vector<std::string>& names, const std::string& name, const std::string& where)
{
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) {
        fail(where, "unknown name '" + name + "'");
    }
    return static_cast<int>(it - names.begin());
}

bool single_chars(const std::vector<std::string>& names)
{
    return std::all_of(names.begin(), names.end(), [](const std::string& s) { return s.size() == 1; });
}

Json word_to_json(const std::vector<int>& w, const std::vector<std::string>& names)
{
    if (single_chars(names)) {
        std::string s;
        for (int a : w) {
            s += names[a];
        }
        return s;
    }
    Json out = Json::array();
    for (int a : w) {
        out.push_back(names[a]);
    }
    return out;
}

std::vector<int> word_from_json(const Json& j, const std::vector<std::string>& names, const std::string& where)
{
    std::vector<int> w;
    if (j.is_string()) {
        if (!single_chars(names)) {
            fail(where, "string words need single-character names");
        }
        for (char ch : j.get<std::string>()) {
            w.push_back(index_of(names, std::string(1, ch), where));
        }
        return w;
    }
    for (std::size_t i = 0; i < array(j, where).size(); ++i) {
        w.push_back(index_of(names, text(j[i], where + "/" + std::to_string(i)), where));
    }
    return w;
}

std::vector<std::string> names_from_json(const Json& j, const std::string& where)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < array(j, where).size(); ++i) {
        out.push_back(text(j[i], where + "/" + std::to_string(i)));
    }
    return out;
}

}  // namespace

Json parse_json(const std::string& input)
{
    try {
        return Json::parse(input);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseError, "byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

std::string dump(const Json& j)
{
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// diagrams and paths
// ---------------------------------------------------------------------------

Json to_json(const DiagramSpec& s)
{
    Json j;
    j["alphabet"] = s.alphabet;
    Json level1 = Json::object();
    for (std::size_t a = 0; a < s.alphabet.size() && a < s.level1.size(); ++a) {
        if (s.level1[a] > 0) {
            level1[s.alphabet[a]] = s.level1[a];
        }
    }
    j["level1"] = level1;
    Json templates = Json::object();
    for (const auto& t : s.templates) {
        Json words = Json::object();
        for (std::size_t a = 0; a < t.words.size(); ++a) {
            if (!t.words[a].empty()) {
                words[s.alphabet[a]] = word_to_json(t.words[a], s.alphabet);
            }
        }
        templates[t.id] = words;
    }
    j["templates"] = templates;
    auto ids = [&](const std::vector<int>& v) {
        Json out = Json::array();
        for (int i : v) {
            out.push_back(s.templates.at(i).id);
        }
        return out;
    };
    j["schedule"] = Json{{"prefix", ids(s.prefix)}, {"cycle", ids(s.cycle)}};
    return j;
}

DiagramSpec diagram_from_json(const Json& j)
{
    DiagramSpec s;
    s.alphabet = names_from_json(field(j, "alphabet", ""), "/alphabet");
    s.level1.assign(s.alphabet.size(), 0);
    const Json& l1 = field(j, "level1", "");
    if (!l1.is_object()) {
        fail("/level1", "expected an object");
    }
    for (const auto& [name, count] : l1.items()) {
        s.level1[index_of(s.alphabet, name, "/level1")] = static_cast<int>(integer(count, "/level1/" + name));
    }
    const Json& ts = field(j, "templates", "");
    if (!ts.is_object()) {
        fail("/templates", "expected an object keyed by template id");
    }
    for (const auto& [id, words] : ts.items()) {
        const std::string where = "/templates/" + id;
        if (!words.is_object()) {
            fail(where, "expected an object");
        }
        Template t;
        t.id = id;
        t.words.assign(s.alphabet.size(), {});
        for (const auto& [name, w] : words.items()) {
            t.words[index_of(s.alphabet, name, where)] = word_from_json(w, s.alphabet, where + "/" + name);
        }
        s.templates.push_back(std::move(t));
    }
    const Json& schedule = field(j, "schedule", "");
    auto ids = [&](const char* key) {
        std::vector<int> out;
        if (!schedule.contains(key)) {
            return out;
        }
        const Json& v = array(schedule[key], std::string("/schedule/") + key);
        for (std::size_t i = 0; i < v.size(); ++i) {
            const std::string where = std::string("/schedule/") + key + "/" + std::to_string(i);
            const std::string id = text(v[i], where);
            const auto it = std::find_if(s.templates.begin(), s.templates.end(),
                                         [&](const Template& t) { return t.id == id; });
            if (it == s.templates.end()) {
                fail(where, "unknown template '" + id + "'");
            }
            out.push_back(static_cast<int>(it - s.templates.begin()));
        }
        return out;
    };
    if (!schedule.is_object()) {
        fail("/schedule", "expected an object");
    }
    s.prefix = ids("prefix");
    s.cycle = ids("cycle");
    return s;
}

Json to_json(const PathRep& p)
{
    return Json{{"labels", p.labels}, {"tail", p.tail == Tail::Min ? "min" : "max"}};
}

PathRep path_from_json(const Json& j)
{
    PathRep p;
    const Json& labels = array(field(j, "labels", ""), "/labels");
    for (std::size_t i = 0; i < labels.size(); ++i) {
        p.labels.push_back(static_cast<int>(integer(labels[i], "/labels/" + std::to_string(i))));
    }
    const std::string tail = j.contains("tail") ? text(j["tail"], "/tail") : "min";
    if (tail != "min" && tail != "max") {
        fail("/tail", "expected \"min\" or \"max\"");
    }
    p.tail = tail == "min" ? Tail::Min : Tail::Max;
    return p;
}

// ---------------------------------------------------------------------------
// builder inputs
// ---------------------------------------------------------------------------

Json to_json(const SubstitutionSpec& s)
{
    Json words = Json::object();
    for (std::size_t a = 0; a < s.alphabet.size(); ++a) {
        words[s.alphabet[a]] = word_to_json(s.words[a], s.alphabet);
    }
    return Json{{"alphabet", s.alphabet}, {"words", words}};
}

SubstitutionSpec substitution_from_json(const Json& j)
{
    SubstitutionSpec s;
    const Json& words = field(j, "words", "");
    if (!words.is_object()) {
        fail("/words", "expected an object");
    }
    if (j.contains("alphabet")) {
        s.alphabet = names_from_json(j["alphabet"], "/alphabet");
    } else {
        for (const auto& [name, w] : words.items()) {
            s.alphabet.push_back(name);
        }
    }
    s.words.assign(s.alphabet.size(), {});
    for (const auto& [name, w] : words.items()) {
        s.words[index_of(s.alphabet, name, "/words")] = word_from_json(w, s.alphabet, "/words/" + name);
    }
    return s;
}

Json to_json(const OdometerSpec& o)
{
    return Json{{"prefix", o.prefix}, {"cycle", o.cycle}};
}

OdometerSpec odometer_from_json(const Json& j)
{
    OdometerSpec o;
    auto list = [&](const char* key, std::vector<std::int64_t>& out) {
        if (!j.contains(key)) {
            return;
        }
        const Json& v = array(j[key], std::string("/") + key);
        for (std::size_t i = 0; i < v.size(); ++i) {
            out.push_back(integer(v[i], std::string("/") + key + "/" + std::to_string(i)));
        }
    };
    if (!j.is_object()) {
        fail("", "expected an object");
    }
    list("prefix", o.prefix);
    list("cycle", o.cycle);
    return o;
}

namespace {

Json fill_to_json(const std::map<std::int64_t, int>& fill, const std::vector<std::string>& alphabet)
{
    Json out = Json::object();
    for (const auto& [pos, letter] : fill) {
        out[std::to_string(pos)] = alphabet.at(letter);
    }
    return out;
}

std::map<std::int64_t, int> fill_from_json(const Json& j, const std::vector<std::string>& alphabet,
                                           const std::string& where)
{
    if (!j.is_object()) {
        fail(where, "expected an object");
    }
    std::map<std::int64_t, int> out;
    for (const auto& [key, letter] : j.items()) {
        std::int64_t pos = 0;
        try {
            std::size_t used = 0;
            pos = std::stoll(key, &used);
            if (used != key.size()) {
                fail(where, "bad position '" + key + "'");
            }
        } catch (const std::logic_error&) {
            fail(where, "bad position '" + key + "'");
        }
        out[pos] = index_of(alphabet, text(letter, where + "/" + key), where + "/" + key);
    }
    return out;
}

}  // namespace

Json to_json(const ToeplitzSpec& t)
{
    Json stages = Json::array();
    for (const auto& s : t.stages) {
        stages.push_back(Json{{"s", s.period}, {"fill", fill_to_json(s.fill, t.alphabet)}});
    }
    Json j{{"alphabet", t.alphabet}, {"stages", stages}};
    if (!t.tail.empty()) {
        Json tail = Json::array();
        for (const auto& s : t.tail) {
            tail.push_back(Json{{"ratio", s.ratio}, {"holes", fill_to_json(s.holes, t.alphabet)}});
        }
        j["tail"] = tail;
    }
    if (t.widthBound > 0) {
        j["K"] = t.widthBound;
    }
    return j;
}

ToeplitzSpec toeplitz_from_json(const Json& j)
{
    ToeplitzSpec t;
    const Json& stages = array(field(j, "stages", ""), "/stages");
    if (j.contains("alphabet")) {
        t.alphabet = names_from_json(j["alphabet"], "/alphabet");
    } else {
        // Letters in sorted order when not declared.
        std::set<std::string> letters;
        auto collect = [&](const Json& fill) {
            if (fill.is_object()) {
                for (const auto& [k, v] : fill.items()) {
                    if (v.is_string()) {
                        letters.insert(v.get<std::string>());
                    }
                }
            }
        };
        for (const auto& s : stages) {
            collect(s.value("fill", Json::object()));
        }
        for (const auto& s : j.value("tail", Json::array())) {
            collect(s.value("holes", Json::object()));
        }
        t.alphabet.assign(letters.begin(), letters.end());
    }
    for (std::size_t i = 0; i < stages.size(); ++i) {
        const std::string where = "/stages/" + std::to_string(i);
        t.stages.push_back(ToeplitzStage{integer(field(stages[i], "s", where), where + "/s"),
                                         fill_from_json(field(stages[i], "fill", where), t.alphabet,
                                                        where + "/fill")});
    }
    if (j.contains("tail")) {
        const Json& tail = array(j["tail"], "/tail");
        for (std::size_t i = 0; i < tail.size(); ++i) {
            const std::string where = "/tail/" + std::to_string(i);
            t.tail.push_back(ToeplitzTailStage{integer(field(tail[i], "ratio", where), where + "/ratio"),
                                               fill_from_json(field(tail[i], "holes", where), t.alphabet,
                                                              where + "/holes")});
        }
    }
    if (j.contains("K")) {
        t.widthBound = integer(j["K"], "/K");
    }
    return t;
}

Json to_json(const PropertyReport& r, const Diagram& d)
{
    Json focus = Json::array();
    for (const auto& f : r.focus) {
        focus.push_back(f ? Json(d.name(*f)) : Json(nullptr));
    }
    return Json{{"widthK", r.widthK},
                {"focus", focus},
                {"focused", r.focused},
                {"primitive", r.primitive},
                {"primitiveSpan", r.primitiveSpan},
                {"uniqueMinimal", r.uniqueMinimal},
                {"uniqueMaximal", r.uniqueMaximal},
                {"properlyOrdered", r.properlyOrdered},
                {"equalPathNumber", r.equalPathNumber}};
}

// ---------------------------------------------------------------------------
// tiles, rules, configurations
// ---------------------------------------------------------------------------

Json to_json(const TileSet& t, const Diagram& d)
{
    Json out = Json::array();
    for (const auto& tile : t.tiles) {
        // Explicit arrays: a braced pair of strings would become an object.
        out.push_back(Json::array({Json::array({to_string(d, tile[0]), to_string(d, tile[1])}),
                                   Json::array({to_string(d, tile[2]), to_string(d, tile[3])})}));
    }
    return out;
}

TileSet tiles_from_json(const Json& j, const Diagram& d)
{
    TileSet t;
    for (std::size_t i = 0; i < array(j, "").size(); ++i) {
        const std::string where = "/" + std::to_string(i);
        const Json& m = array(j[i], where);
        if (m.size() != 2 || !m[0].is_array() || !m[1].is_array() || m[0].size() != 2 || m[1].size() != 2) {
            fail(where, "expected a 2x2 matrix");
        }
        Tile tile;
        for (int k = 0; k < 4; ++k) {
            tile[k] = parse_symbol(d, text(m[k / 2][k % 2], where));
        }
        t.tiles.insert(tile);
    }
    return t;
}

Json step_to_json(const Step& s, const Diagram& d)
{
    Json out = Json::array();
    for (auto it = s.rbegin(); it != s.rend(); ++it) {
        out.push_back(to_string(d, *it));
    }
    return out;
}

Step step_from_json(const Json& j, const Diagram& d)
{
    Step s;
    for (std::size_t i = 0; i < array(j, "step").size(); ++i) {
        s.push_back(parse_symbol(d, text(j[i], "step")));
    }
    std::reverse(s.begin(), s.end());
    return s;
}

Json to_json(const RuleTable& r, const Diagram& d)
{
    std::vector<std::pair<std::string, Json>> entries;
    for (const auto& [key, out] : r.table) {
        Json ctx = Json::array();
        for (int i = 2 * r.r; i >= 0; --i) {
            ctx.push_back(step_to_json(r.codec.step(key[i]), d));
        }
        Json e{{"ctx", ctx}, {"out", step_to_json(r.codec.step(out), d)}};
        entries.emplace_back(e.dump(), std::move(e));
    }
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Json out = Json::array();
    for (auto& e : entries) {
        out.push_back(std::move(e.second));
    }
    return out;
}

RuleTable rule_from_json(const Json& j, const Diagram& d)
{
    RuleTable r;
    r.tried.clear();
    bool first = true;
    for (std::size_t i = 0; i < array(j, "").size(); ++i) {
        const std::string where = "/" + std::to_string(i);
        const Json& ctx = array(field(j[i], "ctx", where), where + "/ctx");
        const Step out = step_from_json(field(j[i], "out", where), d);
        if (first) {
            r.w = static_cast<int>(out.size());
            r.r = static_cast<int>(ctx.size() / 2);
            if (r.w < 3 || ctx.size() % 2 != 1 || ctx.size() > RuleKey{}.size()) {
                fail(where, "unsupported window or neighbourhood size");
            }
            r.clock = r.codec.intern(Step(r.w, Symbol::clock()));
            first = false;
        }
        if (static_cast<int>(out.size()) != r.w || static_cast<int>(ctx.size()) != 2 * r.r + 1) {
            fail(where, "inconsistent step or context size");
        }
        RuleKey key{};
        for (int k = 0; k < 2 * r.r + 1; ++k) {
            const Step s = step_from_json(ctx[k], d);
            if (static_cast<int>(s.size()) != r.w) {
                fail(where, "inconsistent step size");
            }
            key[2 * r.r - k] = r.codec.intern(s);
        }
        const auto id = r.codec.intern(out);
        const auto [it, inserted] = r.table.emplace(key, id);
        if (!inserted && it->second != id) {
            fail(where, "context listed twice with different outputs");
        }
    }
    r.tried.emplace_back(r.w, r.r);
    return r;
}

Json to_json(const CAConfig& c, const Diagram& d)
{
    Json left = Json::array();
    for (auto it = c.cycle.rbegin(); it != c.cycle.rend(); ++it) {
        left.push_back(step_to_json(*it, d));
    }
    Json core = Json::array();
    for (auto it = c.core.rbegin(); it != c.core.rend(); ++it) {
        core.push_back(step_to_json(*it, d));
    }
    return Json{{"left", Json{{"cycle", left}}},
                {"core", core},
                {"right", "clock"},
                {"origin", c.origin},
                {"time", c.time}};
}

CAConfig config_from_json(const Json& j, const Diagram& d)
{
    CAConfig c;
    if (text(field(j, "right", ""), "/right") != "clock") {
        fail("/right", "only the clock fill is supported");
    }
    const Json& core = array(field(j, "core", ""), "/core");
    for (std::size_t i = core.size(); i-- > 0;) {
        c.core.push_back(step_from_json(core[i], d));
    }
    const Json& left = array(field(field(j, "left", ""), "cycle", "/left"), "/left/cycle");
    for (std::size_t i = left.size(); i-- > 0;) {
        c.cycle.push_back(step_from_json(left[i], d));
    }
    const Step* any = !c.core.empty() ? &c.core.front() : !c.cycle.empty() ? &c.cycle.front() : nullptr;
    c.w = any ? static_cast<int>(any->size()) : 3;
    for (const auto* list : {&c.core, &c.cycle}) {
        for (const auto& s : *list) {
            if (static_cast<int>(s.size()) != c.w) {
                fail("/core", "steps differ in width");
            }
        }
    }
    c.origin = j.contains("origin") ? static_cast<int>(integer(j["origin"], "/origin")) : first_cell(c.w);
    c.time = j.contains("time") ? integer(j["time"], "/time") : 0;
    return c;
}

Json to_json(const DiagramPatch& p, const Diagram& d)
{
    Json rows = Json::array();
    for (const auto& row : p.grid) {
        Json r = Json::array();
        for (const auto& s : row) {
            r.push_back(to_string(d, s));
        }
        rows.push_back(r);
    }
    return Json{{"diagram", to_json(d.spec())},
                {"base", to_json(p.base)},
                {"m0", p.m0},
                {"m1", p.m1},
                {"width", p.width},
                {"rows", rows}};
}

DiagramPatch patch_from_json(const Json& j, const Diagram& d)
{
    DiagramPatch p;
    p.m0 = static_cast<int>(integer(field(j, "m0", ""), "/m0"));
    p.m1 = static_cast<int>(integer(field(j, "m1", ""), "/m1"));
    p.width = static_cast<int>(integer(field(j, "width", ""), "/width"));
    p.base = path_from_json(field(j, "base", ""));
    const Json& rows = array(field(j, "rows", ""), "/rows");
    if (p.m1 < p.m0 || static_cast<int>(rows.size()) != p.m1 - p.m0 + 1) {
        fail("/rows", "row count does not match m0..m1");
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string where = "/rows/" + std::to_string(i);
        Row row;
        for (std::size_t k = 0; k < array(rows[i], where).size(); ++k) {
            row.push_back(parse_symbol(d, text(rows[i][k], where)));
        }
        if (static_cast<int>(row.size()) != p.width) {
            fail(where, "row width mismatch");
        }
        p.paths.push_back(row_path(row));
        p.grid.push_back(std::move(row));
    }
    return p;
}

Json to_json(const ConjugacyReport& r, const Diagram& d)
{
    auto row = [&](const Row& x) {
        Json out = Json::array();
        for (auto it = x.rbegin(); it != x.rend(); ++it) {
            out.push_back(to_string(d, *it));
        }
        return out;
    };
    Json mismatches = Json::array();
    for (const auto& m : r.mismatches) {
        mismatches.push_back(Json{{"step", m.step}, {"expected", row(m.expected)}, {"decoded", row(m.decoded)}});
    }
    return Json{{"steps", r.steps},
                {"depth", r.depth},
                {"w", r.w},
                {"r", r.r},
                {"ruleSize", r.ruleSize},
                {"harvestRows", Json{r.harvestM0, r.harvestM1}},
                {"harvestWidth", r.harvestWidth},
                {"saturated", r.saturated},
                {"mismatchCount", r.mismatchCount},
                {"mismatches", mismatches},
                {"distinctRows", r.distinctRows},
                {"injectivityFailures", r.injectivityFailures},
                {"ok", r.ok()}};
}

// ---------------------------------------------------------------------------
// rendering
// ---------------------------------------------------------------------------

namespace {

void check_rows(const DiagramPatch& p, int m0, int m1)
{
    if (m0 > m1 || !p.has_row(m0) || !p.has_row(m1)) {
        throw Error(ErrorCode::InsufficientCoverage, "requested rows lie outside the patch");
    }
}

}  // namespace

std::string render_grid(const DiagramPatch& p, const Diagram& d, int m0, int m1)
{
    check_rows(p, m0, m1);
    std::size_t cell = 1;
    for (int m = m0; m <= m1; ++m) {
        for (int j = -1; j <= p.width; ++j) {
            cell = std::max(cell, to_string(d, p.at(m, j)).size());
        }
    }
    std::ostringstream os;
    auto pad = [&](std::string s) {
        s.resize(cell, ' ');
        return s;
    };
    os << "     ";
    for (int j = p.width; j >= -1; --j) {
        os << ' ' << pad(std::to_string(j));
    }
    os << '\n';
    for (int m = m1; m >= m0; --m) {
        std::string label = std::to_string(m);
        label.insert(0, label.size() < 4 ? 4 - label.size() : 0, ' ');
        os << label << " |";
        for (int j = p.width; j >= -1; --j) {
            os << ' ' << pad(to_string(d, p.at(m, j)));
        }
        os << '\n';
    }
    return os.str();
}

PgmImage render_pgm(const DiagramPatch& p, const Diagram& d, int m0, int m1, int scale)
{
    check_rows(p, m0, m1);
    scale = std::max(scale, 1);
    std::set<Symbol> used;
    for (int m = m0; m <= m1; ++m) {
        for (int j = -1; j <= p.width; ++j) {
            used.insert(p.at(m, j));
        }
    }
    // Clock is white; the other symbols spread evenly over the darker grays.
    std::map<Symbol, int> gray;
    const int n = static_cast<int>(used.size());
    int i = 0;
    for (const auto& s : used) {
        gray[s] = s.is_clock() ? 255 : (n <= 1 ? 0 : (i - 1) * 223 / std::max(1, n - 2));
        ++i;
    }
    const int cols = p.width + 2;
    const int rows = m1 - m0 + 1;
    std::ostringstream os;
    os << "P5\n" << cols * scale << ' ' << rows * scale << "\n255\n";
    for (int m = m1; m >= m0; --m) {
        std::string line;
        for (int j = p.width; j >= -1; --j) {
            line.append(static_cast<std::size_t>(scale), static_cast<char>(gray[p.at(m, j)]));
        }
        for (int k = 0; k < scale; ++k) {
            os << line;
        }
    }
    PgmImage img;
    img.pgm = os.str();
    std::ostringstream legend;
    for (const auto& [s, g] : gray) {
        legend << g << '\t' << to_string(d, s) << '\n';
    }
    img.legend = legend.str();
    return img;
}

}  // namespace adic
