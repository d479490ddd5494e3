#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "agapia/scenario.hpp"
#include "agapia_generators.h"

using namespace agapia;
using namespace agapia_tests;


TEST_CASE("make_constant routing contracts") {
    auto id = make_constant({ConstCellKind::K::Identity},
                            iv(World::Temporal, {sv_int(4)}),
                            iv(World::Spatial, {sv_int(1), sv_int(2)}));
    CHECK(value_equal(id.cells[0][0].east, iv(World::Temporal, {sv_int(4)})));
    CHECK(value_equal(id.cells[0][0].south, iv(World::Spatial, {sv_int(1), sv_int(2)})));

    auto r = make_constant({ConstCellKind::K::Recorder},
                           iv(World::Temporal, {sv_int(5)}), iv(World::Spatial));
    CHECK(value_equal(r.cells[0][0].south, iv(World::Spatial, {sv_int(5)})));
    CHECK(r.cells[0][0].east.items.empty());

    auto s = make_constant({ConstCellKind::K::Speaker}, iv(World::Temporal),
                           iv(World::Spatial, {sv_int(7)}));
    CHECK(value_equal(s.cells[0][0].east, iv(World::Temporal, {sv_int(7)})));
    CHECK(s.cells[0][0].south.items.empty());

    auto tr = make_constant({ConstCellKind::K::TransposedRecorder}, iv(World::Temporal),
                            iv(World::Spatial, {sv_int(3)}));
    CHECK(value_equal(tr.cells[0][0].east, iv(World::Temporal, {sv_int(3)})));

    auto ts = make_constant({ConstCellKind::K::TransposedSpeaker},
                            iv(World::Temporal, {sv_int(9)}), iv(World::Spatial));
    CHECK(value_equal(ts.cells[0][0].south, iv(World::Spatial, {sv_int(9)})));

    CHECK_NOTHROW(make_constant({ConstCellKind::K::Empty}, iv(World::Temporal),
                                iv(World::Spatial)));
    CHECK_THROWS_AS(make_constant({ConstCellKind::K::Empty},
                                  iv(World::Temporal, {sv_int(1)}), iv(World::Spatial)),
                    WorldError);
}

TEST_CASE("hcomp basics") {
    std::mt19937_64 rng(1);
    Scenario a = rand_scenario(rng, 1, 1);
    a.cells[0][0].east = iv(World::Temporal, {sv_int(6)});
    a = make_scenario(std::move(a.cells));
    Scenario b = rand_scenario(rng, 1, 1);
    b.cells[0][0].west = iv(World::Temporal, {sv_int(6)});
    b = make_scenario(std::move(b.cells));
    Scenario c = hcomp(a, b);
    CHECK(c.rows == 1);
    CHECK(c.cols == 2);
    CHECK(value_equal(c.cells[0][0].east, c.cells[0][1].west));
    CHECK(seam_check(c).empty());

    Scenario bad = rand_scenario(rng, 1, 1);
    bad.cells[0][0].west = iv(World::Temporal, {sv_int(7)});
    bad = make_scenario(std::move(bad.cells));
    CHECK_THROWS_AS(hcomp(a, bad), SeamError);
}

TEST_CASE("vcomp basics") {
    std::mt19937_64 rng(2);
    Scenario a = rand_scenario(rng, 1, 2);
    Scenario b = rand_scenario(rng, 1, 2);
    for (std::size_t j = 0; j < 2; ++j) b.cells[0][j].north = a.cells[0][j].south;
    b = make_scenario(std::move(b.cells));
    Scenario c = vcomp(a, b);
    CHECK(c.rows == 2);
    CHECK(c.cols >= 2);  // nil-valued seam columns may have received dummies
    CHECK(seam_check(c).empty());

    Scenario bad = rand_scenario(rng, 1, 2);
    bad.cells[0][0].north = iv(World::Spatial, {sv_int(99), sv_int(98)});
    bad.cells[0][1].north = iv(World::Spatial, {sv_int(97)});
    bad = make_scenario(std::move(bad.cells));
    CHECK_THROWS_AS(vcomp(a, bad), SeamError);
}

TEST_CASE("seam_check flags hand-built inconsistencies") {
    std::mt19937_64 rng(3);
    Scenario a = rand_scenario(rng, 2, 2);
    CHECK(seam_check(a).empty());
    a.cells[0][0].east = iv(World::Temporal, {sv_int(123)});
    auto bad = seam_check(a);
    REQUIRE(!bad.empty());
    CHECK(bad[0].what.find("(0,0)") != std::string::npos);
}

TEST_CASE("hcomp associativity and identities (500+ cases)") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 500; ++t) {
        Scenario a = rand_scenario(rng, dim(rng), dim(rng));
        Scenario b = chained_h(rng, a.east_rows(), dim(rng));
        Scenario c = chained_h(rng, b.east_rows(), dim(rng));
        Scenario l = hcomp(hcomp(a, b), c);
        Scenario r = hcomp(a, hcomp(b, c));
        CHECK(scenario_equal(l, r));
        CHECK(seam_check(l).empty());
        CHECK(seam_check(r).empty());
        CHECK(scenario_equal(hcomp(a, identity_h(a.east_rows())), a));
        CHECK(scenario_equal(hcomp(identity_h(a.west_rows()), a), a));
    }
}

TEST_CASE("vcomp associativity and identities (500+ cases)") {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 500; ++t) {
        Scenario a = rand_scenario(rng, dim(rng), dim(rng));
        Scenario b = chained_v(rng, a.south_cols(), dim(rng));
        Scenario c = chained_v(rng, b.south_cols(), dim(rng));
        Scenario l = vcomp(vcomp(a, b), c);
        Scenario r = vcomp(a, vcomp(b, c));
        CHECK(scenario_equal(l, r));
        CHECK(seam_check(l).empty());
        CHECK(seam_check(r).empty());
        CHECK(scenario_equal(vcomp(a, identity_v(a.south_cols())), a));
        CHECK(scenario_equal(vcomp(identity_v(a.north_cols()), a), a));
    }
}

TEST_CASE("dcomp equals its constant-formula expansion (500+ cases)") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 500; ++t) {
        Scenario a = rand_scenario(rng, dim(rng), dim(rng));
        Scenario b = chained_d(rng, a, dim(rng), dim(rng));
        Scenario d = dcomp(a, b);
        Scenario e = dcomp_expansion(a, b);
        CHECK(seam_check(d).empty());
        CHECK(seam_check(e).empty());
        CHECK(scenario_equal(d, e));
        CHECK(border_equivalent(d, e));
    }
}

TEST_CASE("dcomp associativity and identities (500+ cases)") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 500; ++t) {
        Scenario a = rand_scenario(rng, dim(rng), dim(rng));
        Scenario b = chained_d(rng, a, dim(rng), dim(rng));
        Scenario c = chained_d(rng, b, dim(rng), dim(rng));
        Scenario l = dcomp(dcomp(a, b), c);
        Scenario r = dcomp(a, dcomp(b, c));
        CHECK(seam_check(l).empty());
        CHECK(seam_check(r).empty());
        CHECK(border_equivalent(l, r));
        // identities
        CHECK(border_equivalent(dcomp(a, identity_d(a)), a));
        Scenario pre = make_constant({ConstCellKind::K::Identity}, a.west_all(),
                                     a.north_all());
        CHECK(border_equivalent(dcomp(pre, a), a));
    }
}

TEST_CASE("seam value mismatch on the spatial seam only is named") {
    std::mt19937_64 rng(9);
    Scenario a = rand_scenario(rng, 1, 1);
    Scenario b = chained_d(rng, a, 1, 1);
    b.cells[0][0].north.items.push_back(sv_int(555));
    b = make_scenario(std::move(b.cells));
    try {
        dcomp(a, b);
        FAIL("expected a seam error");
    } catch (const SeamError& e) {
        CHECK(std::string(e.what()).find("spatial seam") != std::string::npos);
    }
}

TEST_CASE("normalization is idempotent and preserves borders") {
    std::mt19937_64 rng(10);
    for (int t = 0; t < 300; ++t) {
        Scenario a = rand_scenario(rng, dim(rng), dim(rng));
        Scenario b = chained_h(rng, a.east_rows(), dim(rng));
        Scenario c = hcomp(a, b);
        Scenario n1 = normalize(c);
        Scenario n2 = normalize(n1);
        CHECK(scenario_equal(n1, n2));
        CHECK(border_equivalent(c, n1));
    }
}

TEST_CASE("empty scenario is the unit of all compositions") {
    std::mt19937_64 rng(11);
    Scenario a = rand_scenario(rng, 2, 2);
    Scenario none;
    CHECK(scenario_equal(hcomp(none, a), a));
    CHECK(scenario_equal(hcomp(a, none), a));
    CHECK(scenario_equal(vcomp(none, a), a));
    CHECK(scenario_equal(vcomp(a, none), a));
    CHECK(scenario_equal(dcomp(none, a), a));
    CHECK(scenario_equal(dcomp(a, none), a));
}
