// Command line front end: wall-and-chamber reports for thin quiver moduli.
//
// exit codes: 0 success, 1 usage error, 2 analysis/input error

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "quivergit/report.hpp"

#ifdef _WIN32
#include <io.h>
#define ISATTY _isatty
#define FILENO _fileno
#else
#include <unistd.h>
#define ISATTY isatty
#define FILENO fileno
#endif

namespace {

using namespace quivergit;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
}

bool use_color() {
    return std::getenv("NO_COLOR") == nullptr && ISATTY(FILENO(stdout));
}

AnalysisRequest load_request(const std::string& path, bool json_input) {
    std::string text = read_input(path);
    return json_input ? parse_request_json(text) : parse_request(text);
}

std::vector<long long> parse_int_list(const std::string& text, size_t expected,
                                      const std::string& what) {
    std::vector<long long> out;
    std::stringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            out.push_back(std::stoll(tok));
        } catch (const std::exception&) {
            throw Error(what + ": '" + tok + "' is not an integer");
        }
    }
    if (out.size() != expected)
        throw Error(what + ": expected " + std::to_string(expected) +
                    " comma-separated integers");
    return out;
}

struct CommonOptions {
    std::string input;
    std::string out;
    bool json_input = false;
    bool json = false;
};

void add_common(CLI::App* cmd, CommonOptions& options) {
    cmd->add_option("input", options.input, "request file, or - for stdin")->required();
    cmd->add_flag("--json-input", options.json_input, "read the request as JSON");
    cmd->add_flag("--json", options.json, "emit JSON instead of text");
    cmd->add_option("-o,--out", options.out, "write to a file instead of stdout");
}

// full JSON document filtered down to one key
std::string json_section(const AnalysisDocument& doc, const std::string& key) {
    auto j = nlohmann::ordered_json::parse(render_json(doc));
    return j.at(key).dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GIT wall-and-chamber decompositions for quivers with thin "
                 "dimension vectors"};
    app.require_subcommand(1);

    CommonOptions analyze_opts, walls_opts, chambers_opts, matrix_opts, svg_opts_in,
        oracle_opts;

    auto* cmd_analyze = app.add_subcommand("analyze", "full report: walls, chambers, "
                                                      "stable matrix, pseudoeffective cone");
    add_common(cmd_analyze, analyze_opts);

    auto* cmd_walls = app.add_subcommand("walls", "wall table only");
    add_common(cmd_walls, walls_opts);

    auto* cmd_chambers = app.add_subcommand("chambers", "chamber table only");
    add_common(cmd_chambers, chambers_opts);

    auto* cmd_matrix = app.add_subcommand("stable-matrix", "stable-chamber matrix only");
    add_common(cmd_matrix, matrix_opts);

    auto* cmd_svg = app.add_subcommand("slice-svg", "figure of the slice as SVG");
    std::string viewport_text, yscale_text = "1";
    add_common(cmd_svg, svg_opts_in);
    cmd_svg->add_option("--viewport", viewport_text,
                        "xmin,xmax,ymin,ymax in slice coordinates (rationals)");
    cmd_svg->add_option("--yscale", yscale_text,
                        "vertical compression factor, e.g. 1/2 (default 1)");

    auto* cmd_picard = app.add_subcommand("picard", "Picard number calculators");
    std::string general_text, mds_text;
    auto* opt_general = cmd_picard->add_option(
        "--general", general_text,
        "rk_chi,components,rk_units_invariant,rk_units_quotient");
    auto* opt_mds = cmd_picard->add_option("--mds-quotient", mds_text,
                                           "rho_y,rk_chi,components");
    opt_general->excludes(opt_mds);

    auto* cmd_oracle = app.add_subcommand(
        "oracle-check", "exhaustive King-oracle equivalence check on the input");
    long long seed = 1;
    long long samples = 1000;
    add_common(cmd_oracle, oracle_opts);
    cmd_oracle->add_option("--seed", seed, "seed for the randomized partition check");
    cmd_oracle->add_option("--samples", samples, "random points for the partition check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // prints the message / help text
        return code == 0 ? 0 : 1;
    }

    try {
        if (*cmd_analyze) {
            auto doc = build_document(load_request(analyze_opts.input,
                                                   analyze_opts.json_input));
            write_output(analyze_opts.out, analyze_opts.json
                                               ? render_json(doc)
                                               : render_tables(doc, use_color()));
        } else if (*cmd_walls) {
            auto doc = build_document(load_request(walls_opts.input, walls_opts.json_input));
            write_output(walls_opts.out, walls_opts.json
                                             ? json_section(doc, "walls")
                                             : render_walls_table(doc, use_color()));
        } else if (*cmd_chambers) {
            auto doc =
                build_document(load_request(chambers_opts.input, chambers_opts.json_input));
            write_output(chambers_opts.out, chambers_opts.json
                                                ? json_section(doc, "chambers")
                                                : render_chambers_table(doc, use_color()));
        } else if (*cmd_matrix) {
            auto doc =
                build_document(load_request(matrix_opts.input, matrix_opts.json_input));
            write_output(matrix_opts.out, matrix_opts.json
                                              ? json_section(doc, "stable_matrix")
                                              : render_stable_matrix(doc, use_color()));
        } else if (*cmd_svg) {
            auto doc = build_document(load_request(svg_opts_in.input,
                                                   svg_opts_in.json_input));
            SvgOptions options;
            options.yscale = parse_rational(yscale_text);
            if (!viewport_text.empty()) {
                std::array<Rational, 4> box;
                std::stringstream in(viewport_text);
                std::string tok;
                int k = 0;
                while (std::getline(in, tok, ',') && k < 4) box[k++] = parse_rational(tok);
                if (k != 4) throw Error("--viewport expects four rationals");
                options.viewport = box;
            }
            write_output(svg_opts_in.out, render_svg(doc, options));
        } else if (*cmd_picard) {
            if (opt_general->count()) {
                auto v = parse_int_list(general_text, 4, "--general");
                auto r = picard_general({v[0], v[1], v[2], v[3]});
                std::cout << "rho = " << r.value << "\n";
                if (!r.consistent) throw Error("negative Picard number: inconsistent inputs");
            } else if (opt_mds->count()) {
                auto v = parse_int_list(mds_text, 3, "--mds-quotient");
                auto r = picard_mds_quotient(v[0], v[1], v[2]);
                std::cout << "rho = " << r.value << "\n";
                if (!r.consistent) throw Error("negative Picard number: inconsistent inputs");
            } else {
                std::cerr << "picard: pass --general or --mds-quotient\n";
                return 1;
            }
        } else if (*cmd_oracle) {
            auto request = load_request(oracle_opts.input, oracle_opts.json_input);
            auto analysis = analyze(request.quiver, request.d);
            auto result = oracle_check(analysis);
            std::cout << "chambers: " << analysis.chambers.size()
                      << ", patterns checked per chamber: " << result.patterns_checked
                      << "\n";
            for (const auto& f : result.failures) std::cout << "mismatch: " << f << "\n";
            if (!result.ok) throw Error("CNF pipeline disagrees with the King oracle");

            // randomized partition check: off-wall sample points must land in
            // an enumerated cell
            std::mt19937_64 rng(static_cast<unsigned long long>(seed));
            std::set<std::vector<int>> cell_signs;
            for (const auto& cell : analysis.cells) cell_signs.insert(cell.signs);
            long long tested = 0;
            for (long long trial = 0; tested < samples && trial < samples * 20; ++trial) {
                RationalVector p(analysis.dim());
                for (auto& x : p)
                    x = Rational(static_cast<long long>(rng() % 201) - 100,
                                 1 + static_cast<long long>(rng() % 17));
                std::vector<int> signs;
                bool off = true;
                for (const auto& h : analysis.dedup.hyperplanes) {
                    Rational v = dot(p, h.normal);
                    if (v == 0) { off = false; break; }
                    signs.push_back(v > 0 ? 1 : -1);
                }
                if (!off) continue;
                ++tested;
                if (!cell_signs.count(signs))
                    throw Error("sampled sign vector missing from the chamber scan");
            }
            std::cout << "oracle check passed; partition verified on " << tested
                      << " random points (seed " << seed << ")\n";
        }
    } catch (const ParseError& e) {
        if (e.line > 0)
            std::cerr << "error: line " << e.line << ", column " << e.column << ": "
                      << e.what() << "\n";
        else
            std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
