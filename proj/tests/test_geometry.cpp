#include "doctest.h"

#include <random>
#include <set>

#include "quivergit/geometry.hpp"
#include "quivergit/quiver.hpp"

using namespace quivergit;

namespace {

Quiver diamond() {
    return Quiver({"0", "1", "2", "3"}, {{"a", "0", "1"},
                                         {"b", "0", "2"},
                                         {"c", "1", "2"},
                                         {"d", "1", "3"},
                                         {"e", "2", "3"}});
}

const DimensionVector kThinFour{{1, 1, 1, 1}};

// restrictions of the 14 slope normals to d-perp, in class order
std::vector<IntVector> diamond_forms() {
    auto classes = enumerate_subdimensions(diamond(), kThinFour);
    auto basis = kernel_basis(kThinFour);
    std::vector<IntVector> forms;
    for (const auto& c : classes) forms.push_back(restrict_form(c.slope_normal, basis));
    return forms;
}

// the slice used throughout: p + s u1 + t u2 in kernel coordinates
SliceSpec diamond_slice() {
    return SliceSpec({2, 2, 2}, {0, 2, 0}, {1, 0, -1});
}

RationalVector rvec(std::vector<long long> v) {
    return RationalVector(v.begin(), v.end());
}

}  // namespace

TEST_CASE("strict feasibility by Fourier-Motzkin") {
    // contradictory pair
    CHECK_FALSE(strict_feasible({rvec({1}), rvec({-1})}, {}, 1));
    // positive orthant with a redundant form; the witness is pinned
    auto w = strict_feasible({rvec({1, 0}), rvec({0, 1}), rvec({1, 1})}, {}, 2);
    REQUIRE(w);
    CHECK(*w == rvec({1, 1}));
    // nonstrict bookkeeping
    auto z = strict_feasible({rvec({1, 0})}, {rvec({0, 1}), rvec({1, 1})}, 2);
    REQUIRE(z);
    CHECK((*z)[0] > 0);
    CHECK((*z)[1] >= 0);
    CHECK_FALSE(strict_feasible({rvec({1, 0}), rvec({-1, 0})}, {}, 2));
    // an equality trapped between nonstrict halves is still feasible
    auto on_line = strict_feasible({}, {rvec({1, 1}), rvec({-1, -1})}, 2);
    REQUIRE(on_line);
    CHECK((*on_line)[0] + (*on_line)[1] == 0);

    // feasible systems built around a known point stay feasible
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        int dim = 1 + static_cast<int>(rng() % 5);
        RationalVector q(dim);
        for (auto& x : q) x = Rational(static_cast<long long>(rng() % 19) - 9,
                                       1 + static_cast<long long>(rng() % 7));
        std::vector<RationalVector> forms;
        for (int i = 0; i < 8; ++i) {
            RationalVector f(dim);
            for (auto& x : f) x = static_cast<long long>(rng() % 11) - 5;
            Rational v = dot(q, f);
            if (v == 0) continue;
            if (v < 0)
                for (auto& x : f) x = -x;
            forms.push_back(std::move(f));
        }
        auto witness = strict_feasible(forms, {}, dim);
        REQUIRE(witness);
        for (const auto& f : forms) CHECK(dot(*witness, f) > 0);
    }
}

TEST_CASE("hyperplane deduplication canonicalizes and tracks signs") {
    auto r = dedup_hyperplanes({{1, -1}, {-2, 2}});
    REQUIRE(r.hyperplanes.size() == 1);
    CHECK(r.hyperplanes[0].normal == IntVector{1, -1});
    CHECK(r.index_map[0] == std::pair<int, int>{0, 1});
    CHECK(r.index_map[1] == std::pair<int, int>{0, -1});

    auto dropped = dedup_hyperplanes({{0, 0}, {3, 0}});
    CHECK(dropped.dropped == std::vector<int>{0});
    CHECK(dropped.hyperplanes.size() == 1);
    CHECK(dropped.index_map[0] == std::pair<int, int>{-1, 0});

    // the 14 diamond classes span 7 hyperplanes, two one-sided walls each
    auto forms = diamond_forms();
    auto d = dedup_hyperplanes(forms);
    CHECK(d.dropped.empty());
    REQUIRE(d.hyperplanes.size() == 7);
    for (const auto& h : d.hyperplanes) {
        REQUIRE(h.sources.size() == 2);
        CHECK(h.sources[0].second == -h.sources[1].second);
    }
}

TEST_CASE("chamber enumeration: counts, soundness, partition, determinism") {
    CHECK(enumerate_chambers({}, 3).size() == 1);
    CHECK(enumerate_chambers(dedup_hyperplanes({{1, -1}}).hyperplanes, 2).size() == 2);

    auto dedup = dedup_hyperplanes(diamond_forms());
    auto cells = enumerate_chambers(dedup.hyperplanes, 3);
    // 7 planes: the four (+-1,+-1,+-1) forms and the three coordinate
    // planes; the finite-field count gives (q-1)(q-3)^2, hence 32 regions.
    CHECK(cells.size() == 32);

    std::set<std::vector<int>> seen;
    for (const auto& cell : cells) {
        CHECK(seen.insert(cell.signs).second);  // no repeated sign vector
        for (size_t k = 0; k < dedup.hyperplanes.size(); ++k) {
            Rational v = dot(cell.witness, dedup.hyperplanes[k].normal);
            CHECK(v != 0);
            CHECK((v > 0) == (cell.signs[k] > 0));
        }
    }
    // lexicographic output order with + before -
    auto sign_string = [](const std::vector<int>& signs) {
        std::string s;
        for (int x : signs) s += x > 0 ? '+' : '-';
        return s;
    };
    for (size_t i = 1; i < cells.size(); ++i)
        CHECK(sign_string(cells[i - 1].signs) < sign_string(cells[i].signs));

    // random rational points with nonzero pairings land in exactly one cell
    std::mt19937_64 rng(23);
    int sampled = 0;
    while (sampled < 1000) {
        RationalVector p(3);
        for (auto& x : p) x = Rational(static_cast<long long>(rng() % 41) - 20,
                                       1 + static_cast<long long>(rng() % 9));
        std::vector<int> signs;
        bool off_walls = true;
        for (const auto& h : dedup.hyperplanes) {
            Rational v = dot(p, h.normal);
            if (v == 0) { off_walls = false; break; }
            signs.push_back(v > 0 ? 1 : -1);
        }
        if (!off_walls) continue;
        ++sampled;
        CHECK(seen.count(signs) == 1);
    }

    auto again = enumerate_chambers(dedup.hyperplanes, 3);
    REQUIRE(again.size() == cells.size());
    for (size_t i = 0; i < cells.size(); ++i) {
        CHECK(again[i].signs == cells[i].signs);
        CHECK(again[i].witness == cells[i].witness);
    }

    std::vector<Hyperplane> too_many(25, Hyperplane{{1, 0, 0}, {}});
    CHECK_THROWS_AS(enumerate_chambers(too_many, 3), UnsupportedError);
}

TEST_CASE("closure membership") {
    auto dedup = dedup_hyperplanes(diamond_forms());
    auto cells = enumerate_chambers(dedup.hyperplanes, 3);
    for (auto& cell : cells) cell.arrangement = &dedup.hyperplanes;
    for (const auto& cell : cells) {
        auto ineqs = cell.closure_inequalities();
        CHECK(closure_contains(ineqs, cell.witness));
        RationalVector opposite = cell.witness;
        for (auto& x : opposite) x = -x;
        CHECK_FALSE(closure_contains(ineqs, opposite));
        CHECK(closure_contains(ineqs, RationalVector(3, Rational(0))));  // origin
    }
}

TEST_CASE("slice construction rejects degenerate data") {
    CHECK_NOTHROW(diamond_slice());
    CHECK_THROWS_AS(SliceSpec({2, 2, 2}, {0, 2, 0}, {0, -3, 0}), ParseError);
    CHECK_THROWS_AS(SliceSpec({1, 2, -1}, {0, 2, 0}, {1, 0, -1}), ParseError);
    CHECK_THROWS_AS(SliceSpec({2, 2, 2}, {0, 0, 0}, {1, 0, -1}), ParseError);
}

TEST_CASE("wall restriction to the slice") {
    SliceSpec slice = diamond_slice();
    auto classes = enumerate_subdimensions(diamond(), kThinFour);
    auto basis = kernel_basis(kThinFour);
    auto row_form = [&](const IntVector& e) {
        for (const auto& c : classes)
            if (c.e == e) {
                IntVector neg = c.slope_normal;
                for (auto& x : neg) x = -x;
                return restrict_form(neg, basis);
            }
        throw std::runtime_error("class not found");
    };

    // horizontal top line t = 2
    auto top = restrict_to_slice(row_form({0, 0, 0, 1}), slice);
    REQUIRE(top.kind == SliceObject::Kind::Line);
    CHECK(top.a == std::array<Rational, 2>{0, 2});
    CHECK(top.b == std::array<Rational, 2>{-1, 0});

    // vertical line s = -1 oriented downward
    auto left = restrict_to_slice(row_form({0, 0, 1, 1}), slice);
    REQUIRE(left.kind == SliceObject::Kind::Line);
    CHECK(left.a == std::array<Rational, 2>{-1, 0});
    CHECK(left.b == std::array<Rational, 2>{0, -1});

    // residual along the line is identically zero
    for (const auto& c : classes) {
        IntVector form = restrict_form(c.slope_normal, basis);
        auto line = restrict_to_slice(form, slice);
        REQUIRE(line.kind == SliceObject::Kind::Line);
        auto [c0, c1, c2] = slice_form(form, slice);
        for (long long t : {0LL, 1LL, -3LL, 1000003LL}) {
            Rational s = line.a[0] + t * line.b[0];
            Rational u = line.a[1] + t * line.b[1];
            CHECK(c0 + c1 * s + c2 * u == 0);
        }
    }

    // parallel to the slice and off it
    auto absent = restrict_to_slice({1, 0, 1}, slice);
    CHECK(absent.kind == SliceObject::Kind::Absent);

    // a form vanishing on the whole slice (rank-4 ambient example)
    SliceSpec flat({1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0});
    CHECK(restrict_to_slice({0, 0, 0, 1}, flat).kind == SliceObject::Kind::FullSlice);
    CHECK(restrict_to_slice({0, 0, 0, 1}, flat).kind != SliceObject::Kind::Absent);
}

TEST_CASE("divisor character limits on the slice") {
    SliceSpec slice = diamond_slice();
    // kernel coordinates of eps_src - eps_tgt for the arrows a, e, c
    auto chi_a = rvec({1, 0, 0});
    auto chi_e = rvec({0, 0, 1});
    auto chi_c = rvec({0, 1, 0});

    auto pa = direction_on_slice(chi_a, slice);
    REQUIRE(pa.kind == SliceObject::Kind::Point);
    CHECK(pa.a == std::array<Rational, 2>{-1, 2});

    auto pe = direction_on_slice(chi_e, slice);
    REQUIRE(pe.kind == SliceObject::Kind::Point);
    CHECK(pe.a == std::array<Rational, 2>{-1, -2});

    auto pc = direction_on_slice(chi_c, slice);
    REQUIRE(pc.kind == SliceObject::Kind::Direction);
    CHECK(pc.b == std::array<Rational, 2>{1, 0});

    // flipping the character reverses the slice side
    RationalVector minus_a = {-1, 0, 0};
    CHECK(direction_on_slice(minus_a, slice).kind == SliceObject::Kind::ExitsSlice);

    SliceSpec flat({1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0});
    CHECK_THROWS_AS(direction_on_slice(rvec({0, 0, 0, 1}), flat), Error);

    // point-limit: the slice trace of x + n*chi converges to the limit;
    // check the closed form exactly at n = 10^6
    Rational cp(1, 4), c1(-1, 4), c2(1, 2);  // decomposition of chi_a
    Rational s(3, 7), t(-2, 5);              // arbitrary slice point
    long long n = 1000000;
    Rational traced_s = (s + n * c1) / (1 + n * cp);
    Rational traced_t = (t + n * c2) / (1 + n * cp);
    CHECK(traced_s - pa.a[0] == (s - c1 / cp) / (1 + n * cp));
    CHECK(traced_t - pa.a[1] == (t - c2 / cp) / (1 + n * cp));
    Rational ds = traced_s - pa.a[0];
    if (ds < 0) ds = -ds;
    CHECK(ds < Rational(1, 100000));
}
