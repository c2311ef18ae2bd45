// bvca: command-line front end for the adic-to-CA pipeline.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "adic/builders.hpp"
#include "adic/ca.hpp"
#include "adic/io.hpp"
#include "adic/spacetime.hpp"
#include "adic/vershik.hpp"

using namespace adic;

namespace {

std::string slurp(const std::string& file)
{
    if (file == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::ParseError, "cannot read " + file);
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Json load(const std::string& file)
{
    return parse_json(slurp(file));
}

void emit(const std::string& file, const std::string& content)
{
    if (file.empty() || file == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(file, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::ParseError, "cannot write " + file);
    }
    out << content;
}

std::pair<int, int> range(const std::string& text)
{
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        throw CLI::ValidationError("range", "expected a..b, got " + text);
    }
    try {
        return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw CLI::ValidationError("range", "expected a..b, got " + text);
    }
}

PathRep start_path(const Diagram& d, const std::string& file)
{
    return file.empty() ? minimal_path(d) : path_from_json(load(file));
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bratteli-Vershik systems compiled into cellular automata"};
    app.require_subcommand(1);
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "Reserved; no command uses randomness");

    std::string input = "-";
    std::string output;
    std::string diagramFile, pathFile, ruleFile, configFile, patchFile, initFile;
    std::string rows = "0..0";
    std::string pgmFile, legendFile;
    int width = 12, depth = 12, scale = 8;
    long steps = 0;
    std::int64_t horizon = 4096;
    std::vector<int> cuts;
    int stride = 0;

    auto* buildSub = app.add_subcommand("build-sub", "Diagram of a proper primitive substitution");
    buildSub->add_option("input", input, "SubstitutionSpec JSON ('-' for stdin)");
    auto* buildOdo = app.add_subcommand("build-odo", "Diagram of an odometer");
    buildOdo->add_option("input", input, "OdometerSpec JSON");
    auto* buildToe = app.add_subcommand("build-toeplitz", "Diagram of a Toeplitz sequence");
    buildToe->add_option("input", input, "ToeplitzSpec JSON");
    buildToe->add_option("--horizon", horizon, "Half-width of the filled window");
    auto* analyzeCmd = app.add_subcommand("analyze", "Structural properties of a diagram");
    analyzeCmd->add_option("input", input, "DiagramSpec JSON");
    auto* telescopeCmd = app.add_subcommand("telescope", "Collapse levels between cuts");
    telescopeCmd->add_option("input", input, "DiagramSpec JSON");
    telescopeCmd->add_option("--cuts", cuts, "Explicit cut levels")->delimiter(',');
    telescopeCmd->add_option("--stride", stride, "Constant gap after the explicit cuts");
    auto* orbitCmd = app.add_subcommand("orbit", "Successor (or predecessor) orbit as JSON lines");
    orbitCmd->add_option("--diagram", diagramFile)->required();
    orbitCmd->add_option("--path", pathFile, "Start path (default: minimal)");
    orbitCmd->add_option("--steps", steps, "Signed number of steps")->required();
    auto* patchCmd = app.add_subcommand("patch", "Spacetime rows of an orbit");
    patchCmd->add_option("--diagram", diagramFile)->required();
    patchCmd->add_option("--path", pathFile);
    patchCmd->add_option("--rows", rows, "m0..m1");
    patchCmd->add_option("--width", width);
    auto* tilesCmd = app.add_subcommand("tiles", "Harvest the 2x2 tile set");
    tilesCmd->add_option("--diagram", diagramFile)->required();
    tilesCmd->add_option("--rows", rows, "m0..m1");
    tilesCmd->add_option("--width", width);
    auto* synthCmd = app.add_subcommand("synth", "Build the rule table (stdout) and x_init");
    synthCmd->add_option("--diagram", diagramFile)->required();
    synthCmd->add_option("--steps", steps, "Steps the harvest must cover")->required();
    synthCmd->add_option("--depth", depth);
    synthCmd->add_option("--init", initFile, "Where to write x_init");
    auto* simulateCmd = app.add_subcommand("simulate", "Run the CA");
    simulateCmd->add_option("--diagram", diagramFile)->required();
    simulateCmd->add_option("--rule", ruleFile)->required();
    simulateCmd->add_option("--config", configFile)->required();
    simulateCmd->add_option("--steps", steps)->required();
    auto* decodeCmd = app.add_subcommand("decode", "Recover the path coded by a configuration");
    decodeCmd->add_option("--diagram", diagramFile)->required();
    decodeCmd->add_option("--rule", ruleFile)->required();
    decodeCmd->add_option("--config", configFile)->required();
    decodeCmd->add_option("--depth", depth);
    auto* verifyCmd = app.add_subcommand("verify", "Check the conjugacy along the orbit of x_init");
    verifyCmd->add_option("--diagram", diagramFile)->required();
    verifyCmd->add_option("--steps", steps)->required();
    verifyCmd->add_option("--depth", depth);
    auto* renderCmd = app.add_subcommand("render", "Draw a patch as text or PGM");
    renderCmd->add_option("--patch", patchFile)->required();
    renderCmd->add_option("--rows", rows, "m0..m1 (default: whole patch)");
    renderCmd->add_option("--pgm", pgmFile, "Also write a PGM image");
    renderCmd->add_option("--legend", legendFile, "Legend for the PGM gray levels");
    renderCmd->add_option("--scale", scale, "Pixels per cell");

    for (auto* sub : app.get_subcommands({})) {
        sub->add_option("-o,--output", output, "Output file (default stdout)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (buildSub->parsed()) {
            emit(output, dump(to_json(from_substitution(substitution_from_json(load(input))))));
        } else if (buildOdo->parsed()) {
            emit(output, dump(to_json(from_odometer(odometer_from_json(load(input))))));
        } else if (buildToe->parsed()) {
            emit(output, dump(to_json(from_toeplitz(toeplitz_from_json(load(input)), horizon).diagram)));
        } else if (analyzeCmd->parsed()) {
            const Diagram d = validate(diagram_from_json(load(input)));
            emit(output, dump(to_json(analyze(d), d)));
        } else if (telescopeCmd->parsed()) {
            const Diagram d = validate(diagram_from_json(load(input)));
            emit(output, dump(to_json(telescope(d, TelescopeCuts{cuts, stride > 0 ? std::optional<int>(stride) : std::nullopt}))));
        } else if (orbitCmd->parsed()) {
            const Diagram d = validate(diagram_from_json(load(diagramFile)));
            std::ostringstream os;
            for (const auto& p : orbit(d, start_path(d, pathFile), steps).entries) {
                os << to_json(p).dump() << '\n';
            }
            emit(output, os.str());
        } else if (patchCmd->parsed()) {
            const Diagram d = validate(diagram_from_json(load(diagramFile)));
            const auto [m0, m1] = range(rows);
            emit(output, dump(to_json(patch(d, start_path(d, pathFile), m0, m1, width), d)));
        } else if (tilesCmd->parsed()) {
            const Diagram d = validate(diagram_from_json(load(diagramFile)));
            const auto [m0, m1] = range(rows);
            const TileSet t = harvest_saturated(d, {minimal_path(d)}, m0, m1, width);
            std::cerr << t.tiles.size() << " tiles, " << (t.saturated ? "saturated" : "not saturated") << '\n';
            emit(output, dump(to_json(t, d)));
        } else if (synthCmd->parsed()) {
            const Diagram d = validate(diagram_from_json(load(diagramFile)));
            const Synthesis s = synthesize(d, steps, depth);
            std::cerr << "(w, r) = (" << s.rule.w << ", " << s.rule.r << "), " << s.rule.size() << " entries, "
                      << "harvest rows " << s.harvestM0 << ".." << s.harvestM1 << " width " << s.harvestWidth
                      << (s.saturated ? ", saturated" : ", not saturated") << '\n';
            if (!initFile.empty()) {
                emit(initFile, dump(to_json(s.init, d)));
            }
            emit(output, dump(to_json(s.rule, d)));
        } else if (simulateCmd->parsed()) {
            const Diagram d = validate(diagram_from_json(load(diagramFile)));
            const RuleTable rule = rule_from_json(load(ruleFile), d);
            Automaton a(rule, config_from_json(load(configFile), d));
            for (long t = 0; t < steps; ++t) {
                a.step();
            }
            emit(output, dump(to_json(a.config(), d)));
        } else if (decodeCmd->parsed()) {
            const Diagram d = validate(diagram_from_json(load(diagramFile)));
            const RuleTable rule = rule_from_json(load(ruleFile), d);
            const auto res = decode(config_from_json(load(configFile), d), rule, depth);
            Json j = to_json(res.path);
            j["depth"] = res.depth;
            emit(output, dump(j));
        } else if (verifyCmd->parsed()) {
            const Diagram d = validate(diagram_from_json(load(diagramFile)));
            const ConjugacyReport rep = verify_conjugacy(d, steps, depth);
            emit(output, dump(to_json(rep, d)));
            if (!rep.ok()) {
                std::cerr << "conjugacy check failed: " << rep.mismatchCount << " mismatches, "
                          << rep.injectivityFailures << " injectivity failures\n";
                return 1;
            }
        } else if (renderCmd->parsed()) {
            const Json j = load(patchFile);
            const Diagram d = validate(diagram_from_json(j.at("diagram")));
            const DiagramPatch p = patch_from_json(j, d);
            auto [m0, m1] = renderCmd->count("--rows") ? range(rows) : std::make_pair(p.m0, p.m1);
            emit(output, render_grid(p, d, m0, m1));
            if (!pgmFile.empty()) {
                const PgmImage img = render_pgm(p, d, m0, m1, scale);
                emit(pgmFile, img.pgm);
                emit(legendFile.empty() ? pgmFile + ".legend" : legendFile, img.legend);
            }
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: ParseError: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
