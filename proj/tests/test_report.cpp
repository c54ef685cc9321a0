#include "doctest.h"

#include <functional>

#include "json.hpp"
#include "quivergit/report.hpp"

using namespace quivergit;

namespace {

const char* kDiamondRequest = R"(# thin sincere 4-vertex example
vertices: 0 1 2 3
arrow a: 0 -> 1
arrow b: 0 -> 2
arrow c: 1 -> 2
arrow d: 1 -> 3
arrow e: 2 -> 3
d: 1 1 1 1
slice: p = 2 2 2 ; u1 = 0 2 0 ; u2 = 1 0 -1
)";

const char* kFanRequest = R"(vertices: A B C
arrow beta1: A -> B
arrow beta2: A -> B
arrow gamma: A -> C
arrow alpha: B -> C
d: 1 1 1
slice: identity
)";

size_t count_occurrences(const std::string& text, const std::string& needle) {
    size_t count = 0, pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

}  // namespace

TEST_CASE("request parsing and round trip") {
    auto request = parse_request(kDiamondRequest);
    CHECK(request.quiver.num_vertices() == 4);
    CHECK(request.quiver.num_arrows() == 5);
    REQUIRE(request.slice);
    CHECK(request.slice->p == RationalVector{2, 2, 2});
    CHECK(request.slice->u1 == RationalVector{0, 2, 0});
    CHECK(request.slice->u2 == RationalVector{1, 0, -1});
    CHECK_FALSE(request.base);

    std::string canonical = serialize_request(request);
    auto reparsed = parse_request(canonical);
    CHECK(serialize_request(reparsed) == canonical);

    // rationals in slice vectors
    auto frac = parse_request("vertices: x y\narrow a: x -> y\nd: 1 1\n"
                              "slice: identity\nbase: 1 -1\n");
    REQUIRE(frac.base);
    CHECK(*frac.base == Character{1, -1});
}

TEST_CASE("parse errors carry positions and name the offender") {
    CHECK_THROWS_WITH_AS(parse_request("vertices: 0 1\narrow a: 0 -> 1\n"),
                         "missing dimension vector ('d:' line)", ParseError);
    try {
        parse_request("vertices: 0\narrow a: 0 -> oops\nd: 1\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("oops") != std::string::npos);
    }
    try {
        parse_request("vertices: 0 1\nd: 1 q\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.column > 0);
    }
    CHECK_THROWS_AS(parse_request("vertices: 0 1\narrow a: 0 -> 1\nd: 2 1\n"),
                    UnsupportedError);
    CHECK_THROWS_AS(parse_request("vertices: 0\nd: 1\nnonsense: 1\n"), ParseError);
}

TEST_CASE("json request mirror") {
    auto request = parse_request_json(R"({
      "vertices": ["0", "1"],
      "arrows": [{"name": "a", "source": "0", "target": "1"}],
      "d": [1, 1],
      "slice": "identity",
      "base": [1, -1]
    })");
    CHECK(request.quiver.num_arrows() == 1);
    REQUIRE(request.slice);
    CHECK(request.slice->identity);
    REQUIRE(request.base);

    auto with_vectors = parse_request_json(R"({
      "vertices": ["0", "1", "2", "3"],
      "arrows": [],
      "d": [1, 1, 1, 1],
      "slice": {"p": [2, 2, 2], "u1": [0, "4/2", 0], "u2": [{"num":1,"den":1}, 0, -1]}
    })");
    REQUIRE(with_vectors.slice);
    CHECK(with_vectors.slice->u1 == RationalVector{0, 2, 0});
    CHECK_THROWS_AS(parse_request_json("{"), ParseError);
}

TEST_CASE("document for the diamond fixture") {
    auto doc = build_document(parse_request(kDiamondRequest));
    REQUIRE(doc.walls.size() == 14);
    REQUIRE(doc.analysis.chambers.size() == 5);

    // row with e = (0,1,0,1): line through (1,0) going up, shared plane
    const WallRow* row = nullptr;
    for (const auto& w : doc.walls)
        if (w.e == IntVector{0, 1, 0, 1}) row = &w;
    REQUIRE(row);
    CHECK(row->clause == std::vector<std::string>{"c"});
    REQUIRE(row->line.kind == SliceObject::Kind::Line);
    CHECK(row->line.a == std::array<Rational, 2>{1, 0});
    CHECK(row->line.b == std::array<Rational, 2>{0, 1});
    CHECK(row->extends == "neg. x-axis");

    // divisor limits match the three marked characters
    std::map<std::string, SliceObject> limits;
    for (size_t c = 0; c < doc.analysis.chambers.size(); ++c)
        for (const auto& [arrow, obj] : doc.divisor_limits[c])
            limits[doc.analysis.quiver.arrows()[arrow].name] = obj;
    REQUIRE(limits.size() == 3);
    CHECK(limits["a"].kind == SliceObject::Kind::Point);
    CHECK(limits["a"].a == std::array<Rational, 2>{-1, 2});
    CHECK(limits["e"].a == std::array<Rational, 2>{-1, -2});
    CHECK(limits["c"].kind == SliceObject::Kind::Direction);
    CHECK(limits["c"].b == std::array<Rational, 2>{1, 0});
}

TEST_CASE("base chamber selection") {
    std::string with_base = std::string(kDiamondRequest) + "base: 18 -13 17 -22\n";
    auto doc = build_document(parse_request(with_base));
    REQUIRE(doc.base_chamber);
    const auto& chamber = doc.analysis.chambers[*doc.base_chamber];
    CHECK(chamber.unstable_divisors.size() == 2);  // the a!=0, e!=0 chamber
    CHECK(doc.pseudoeffective == std::vector<int>{*doc.base_chamber});

    std::string on_wall = std::string(kDiamondRequest) + "base: 0 0 0 0\n";
    CHECK_THROWS_AS(build_document(parse_request(on_wall)), Error);
    std::string outside = std::string(kDiamondRequest) + "base: -5 1 1 3\n";
    CHECK_THROWS_AS(build_document(parse_request(outside)), Error);
    std::string off_perp = std::string(kDiamondRequest) + "base: 1 0 0 0\n";
    CHECK_THROWS_AS(build_document(parse_request(off_perp)), Error);
}

TEST_CASE("table rendering") {
    auto doc = build_document(parse_request(kDiamondRequest));
    std::string text = render_tables(doc);
    CHECK(text.find("walls (14 classes, 7 hyperplanes)") != std::string::npos);
    CHECK(text.find("chambers (5 G-ample, 24 cells with empty semistable locus, "
                    "32 cells total)") != std::string::npos);
    CHECK(text.find("(always)") != std::string::npos);
    CHECK(text.find("b=c=d=0") != std::string::npos);
    CHECK(text.find("N(a),N(e)") != std::string::npos);
    CHECK(text.find("neg. y-axis") != std::string::npos);
    // clauses render in canonical order with unicode connectives
    CHECK(text.find("a≠0 ∧ e≠0 ∧ (b≠0 ∨ c≠0 ∨ "
                    "d≠0)") != std::string::npos);
    CHECK(text.find("\033") == std::string::npos);  // no color codes unless asked
    std::string colored = render_tables(doc, true);
    CHECK(colored.find("\033[1m") != std::string::npos);
}

TEST_CASE("json rendering is exact and deterministic") {
    auto doc = build_document(parse_request(kDiamondRequest));
    std::string a = render_json(doc);
    auto doc2 = build_document(parse_request(kDiamondRequest));
    CHECK(render_json(doc2) == a);
    CHECK(render_tables(doc2) == render_tables(doc));

    auto j = nlohmann::json::parse(a);
    CHECK(j["chambers"].size() == 5);
    CHECK(j["walls"].size() == 14);
    // only exact rationals: no floating point values anywhere
    std::function<void(const nlohmann::json&)> walk = [&](const nlohmann::json& node) {
        CHECK_FALSE(node.is_number_float());
        if (node.is_object() || node.is_array())
            for (const auto& child : node) walk(child);
    };
    walk(j);
    // witnesses carry num/den pairs
    CHECK(j["chambers"][0]["witness"][0].contains("num"));
    CHECK(j["chambers"][0]["witness"][0].contains("den"));
}

TEST_CASE("svg rendering: content, clipping, determinism") {
    auto doc = build_document(parse_request(kDiamondRequest));
    SvgOptions options;
    options.viewport = {{Rational(-1), Rational(3), Rational(-2), Rational(2)}};
    std::string svg = render_svg(doc, options);
    CHECK(count_occurrences(svg, "class=\"wall\"") == 7);
    CHECK(count_occurrences(svg, "class=\"chamber\"") == 5);
    CHECK(count_occurrences(svg, "class=\"character\"") == 2);
    CHECK(count_occurrences(svg, "class=\"dir\"") == 1);
    CHECK(svg == render_svg(doc, options));
    CHECK(svg.find("chi_a") != std::string::npos);
    CHECK(svg.find('e') != std::string::npos);  // sanity: text present

    // y-compression halves the drawing height
    SvgOptions squeezed = options;
    squeezed.yscale = Rational(1, 2);
    std::string half = render_svg(doc, squeezed);
    CHECK(half != svg);
    CHECK(half.find("height=\"360.000000\"") != std::string::npos);
    CHECK(svg.find("height=\"640.000000\"") != std::string::npos);

    // far-away viewport: valid SVG with a warning comment
    SvgOptions far;
    far.viewport = {{Rational(100), Rational(101), Rational(100), Rational(101)}};
    std::string empty = render_svg(doc, far);
    CHECK(empty.find("warning: viewport excludes all content") != std::string::npos);
    CHECK(empty.find("<svg") != std::string::npos);

    // no slice, no figure
    auto bare = build_document(parse_request("vertices: 0 1\narrow a: 0 -> 1\nd: 1 1\n"));
    CHECK_THROWS_AS(render_svg(bare, {}), Error);
}

TEST_CASE("identity chart for a rank-2 parameter space") {
    auto doc = build_document(parse_request(kFanRequest));
    CHECK(doc.identity_chart);
    REQUIRE(doc.analysis.chambers.size() == 2);
    std::string svg = render_svg(doc, {});
    CHECK(count_occurrences(svg, "class=\"chamber\"") == 2);
    CHECK(count_occurrences(svg, "class=\"wall\"") == 3);

    // identity chart needs rank exactly 2
    CHECK_THROWS_AS(build_document(parse_request(
                        "vertices: 0 1 2 3\narrow a: 0 -> 1\nd: 1 1 1 1\nslice: identity\n")),
                    Error);
}
