#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ctlab/geometry_verify.hpp"

using namespace ctlab;

namespace {

const ProjSpace& pg3(int q) {
    static std::map<int, std::unique_ptr<ProjSpace>> cache;
    auto it = cache.find(q);
    if (it == cache.end()) {
        const Fq& F = q == 4 ? Fq::get(2, 2) : Fq::get(q, 1);
        it = cache.emplace(q, std::make_unique<ProjSpace>(F)).first;
    }
    return *it->second;
}

} // namespace

TEST_CASE("projective space counts match the closed forms") {
    for (int q : {2, 3, 5}) {
        const ProjSpace& P = pg3(q);
        long long qq = q;
        CHECK(P.n_points() == (qq * qq * qq * qq - 1) / (qq - 1));
        CHECK(P.n_planes() == P.n_points());
        CHECK(P.n_lines() == (qq * qq + 1) * (qq * qq + qq + 1));
        // every line lies on q+1 planes and carries q+1 points
        for (int l = 0; l < P.n_lines(); ++l) {
            CHECK(static_cast<int>(P.lines[l].points.size()) == q + 1);
            CHECK(static_cast<int>(P.lines[l].on_planes.size()) == q + 1);
        }
    }
}

TEST_CASE("the deterministic involution is involutive and fixed point free for odd q") {
    const ProjSpace& P = pg3(5);
    SemilinearInvolution phi = find_fixed_point_free_involution(*P.F, P);
    CHECK(phi.projectively_involutive(P));
    CHECK(!phi.has_fixed_point(P));
    // no fixed-point-free involution can exist on an odd number of points
    const ProjSpace& P4 = pg3(4);
    CHECK(P4.n_points() % 2 == 1);
    CHECK_THROWS_AS(find_fixed_point_free_involution(*P4.F, P4), std::domain_error);
}

TEST_CASE("building the unfixed-lines geometry rejects involutions with fixed points") {
    const ProjSpace& P = pg3(5);
    SemilinearInvolution ident{P.F, ff_identity(4, *P.F), 0};
    CHECK_THROWS_AS(build_case1(P, ident), std::domain_error);
}

TEST_CASE("unfixed-lines geometry: counts and bad-line structure at q = 5") {
    const int q = 5;
    const ProjSpace& P = pg3(q);
    SemilinearInvolution phi = find_fixed_point_free_involution(*P.F, P);
    OppGeometry G = build_case1(P, phi);
    CHECK(G.points_count() == 156);
    CHECK(G.planes_count() == 156);
    // fixed lines of the companion-block involution form a spread of size q^2+1
    int fixed = P.n_lines() - G.lines_count();
    CHECK(fixed == q * q + 1);
    CHECK(G.lines_count() == 806 - fixed);

    // every point lies on exactly one fixed line, the one joining it to its image
    for (int p = 0; p < P.n_points(); ++p) {
        int img = phi.apply_point(P, p);
        int bad = P.line_through(p, img);
        CHECK(!G.line_in[bad]);
        int fixed_thru = 0;
        for (int l : P.lines_through_point(p))
            if (!G.line_in[l]) ++fixed_thru;
        CHECK(fixed_thru == 1);
        // incidence count: all planes through p except those on the bad line
        CHECK(G.inc_pl[p].count() == (q * q + q + 1) - (q + 1));
    }

    // every plane has exactly one bad line and it is the intersection with its image
    for (int pl = 0; pl < P.n_planes(); ++pl) {
        int bad_count = 0, bad_line = -1;
        for (int l : P.lines_of_plane(pl))
            if (!G.line_in[l]) {
                ++bad_count;
                bad_line = l;
            }
        CHECK(bad_count == 1);
        // the non-incident points of the plane are exactly the bad line's points
        for (int p : P.lines[bad_line].points) {
            CHECK(P.point_on_plane(p, pl));
            CHECK(!G.incident_pp(p, pl));
        }
        CHECK(G.inc_pt[pl].count() == (q * q + q + 1) - (q + 1));
    }

    // a good line incident to a plane has all but one point incident to it
    int checked = 0;
    for (int pl = 0; pl < P.n_planes() && checked < 500; ++pl)
        for (int l : P.lines_of_plane(pl)) {
            if (!G.line_in[l]) continue;
            int inc = 0;
            for (int p : P.lines[l].points)
                if (G.incident_pp(p, pl)) ++inc;
            CHECK(inc == q);
            ++checked;
        }

    // any two points incident to a common plane are collinear
    for (int pl = 0; pl < P.n_planes(); ++pl) {
        std::vector<int> on;
        for (int p = 0; p < P.n_points(); ++p)
            if (G.incident_pp(p, pl)) on.push_back(p);
        for (size_t a = 0; a < on.size(); a += 7)
            for (size_t b = a + 1; b < on.size(); b += 5)
                CHECK(G.collinear(on[a], on[b]));
    }
}

TEST_CASE("line-complement geometry: counts and incidence structure at q = 5") {
    const int q = 5;
    const ProjSpace& P = pg3(q);
    LinePairing pr = symplectic_pairing(P);
    OppGeometry G = build_case2(P, pr);
    CHECK(G.points_count() == 150);
    CHECK(G.lines_count() == 625);
    CHECK(G.planes_count() == 150);
    // every geometry plane is incident to exactly q^2 of its points, dually for points
    for (int pl = 0; pl < P.n_planes(); ++pl)
        if (G.plane_in[pl]) CHECK(G.inc_pt[pl].count() == q * q);
    for (int p = 0; p < P.n_points(); ++p)
        if (G.point_in[p]) CHECK(G.inc_pl[p].count() == q * q);
    // a point off a good line is collinear to all but exactly one of its points
    Rng rng(7);
    for (int it = 0; it < 2000; ++it) {
        int l = static_cast<int>(rng.below(P.n_lines()));
        if (!G.line_in[l]) continue;
        int p = static_cast<int>(rng.below(P.n_points()));
        if (!G.point_in[p]) continue;
        const auto& lp = P.lines[l].points;
        if (std::find(lp.begin(), lp.end(), p) != lp.end()) continue;
        int coll = 0;
        for (int x : lp)
            if (G.collinear(p, x)) ++coll;
        CHECK(coll == q);
    }
    // non-collinear geometry points span a line meeting the reference line
    for (int it = 0; it < 2000; ++it) {
        int p1 = static_cast<int>(rng.below(P.n_points()));
        int p2 = static_cast<int>(rng.below(P.n_points()));
        if (p1 == p2 || !G.point_in[p1] || !G.point_in[p2]) continue;
        if (G.collinear(p1, p2)) continue;
        CHECK(P.line_meet(P.line_through(p1, p2), pr.line) >= 0);
    }
}

TEST_CASE("an invalid pairing is rejected") {
    const ProjSpace& P = pg3(5);
    LinePairing pr = symplectic_pairing(P);
    pr.plane_of_point[1] = pr.plane_of_point[0];
    CHECK_THROWS_AS(build_case2(P, pr), std::invalid_argument);
}

TEST_CASE("verification battery passes for both geometries at q = 5") {
    const ProjSpace& P = pg3(5);
    SemilinearInvolution phi = find_fixed_point_free_involution(*P.F, P);
    OppGeometry G1 = build_case1(P, phi);
    Rng rng1(0);
    Report rep1;
    verify_geometry(G1, rng1, rep1, 300);
    for (const auto& c : rep1.checks) {
        INFO(c.name, ": ", c.witness);
        CHECK(c.status != Status::fail);
    }
    LinePairing pr = symplectic_pairing(P);
    OppGeometry G2 = build_case2(P, pr);
    Rng rng2(0);
    Report rep2;
    verify_geometry(G2, rng2, rep2, 300);
    for (const auto& c : rep2.checks) {
        INFO(c.name, ": ", c.witness);
        CHECK(c.status != Status::fail);
    }
}

TEST_CASE("the q = 4 line-complement outcome is recorded as data") {
    const ProjSpace& P = pg3(4);
    LinePairing pr = symplectic_pairing(P);
    OppGeometry G = build_case2(P, pr);
    Rng rng(0);
    Report rep;
    verify_geometry(G, rng, rep, 200);
    // below the field bound of the decomposition argument: record, do not assert
    int fails = rep.failures();
    MESSAGE("q=4 line-complement battery failures: ", fails);
    CHECK(G.points_count() == 85 - 5);
}

TEST_CASE("rank 2: complete bipartite minus a perfect matching") {
    BipartiteGraph g2 = build_rank2_bipartite(2);
    CHECK(g2.side == 3);
    int edges = 0;
    for (int i = 0; i < g2.side; ++i) edges += g2.degree(i);
    CHECK(edges == 6);
    CHECK(g2.connected());
    BipartiteGraph g5 = build_rank2_bipartite(5);
    CHECK(g5.connected());
    for (int i = 0; i < g5.side; ++i) CHECK(g5.degree(i) == 5);
    // the degenerate panel with two chambers falls apart
    BipartiteGraph g1 = build_rank2_bipartite(1);
    CHECK(!g1.connected());
}
