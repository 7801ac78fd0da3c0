#pragma once

/**
 * @file geometry_verify.hpp
 * @brief The exhaustive battery for the opposition geometries: connectivity
 *        and diameter of the collinearity graph, geometrization of triangles
 *        through the auxiliary-plane construction, chord points for sampled
 *        quadrangles and pentagons, and availability of the path-reduction
 *        moves.
 */

#include "ctlab/geometry.hpp"
#include "ctlab/rng.hpp"

namespace ctlab {

/// true when the triple is pairwise collinear and shares an incident object
inline bool triangle_geometric(const OppGeometry& G, int p1, int p2, int p3, int* plane_out) {
    const ProjSpace& P = *G.P;
    int l12 = P.line_through(p1, p2);
    int l13 = P.line_through(p1, p3);
    if (l12 == l13) {
        if (plane_out) *plane_out = -1; // collinear triple: the line itself carries it
        return true;
    }
    int pi = P.plane_of(l12, p3);
    if (!G.plane_in[static_cast<size_t>(pi)]) return false;
    bool ok = G.incident_pp(p1, pi) && G.incident_pp(p2, pi) && G.incident_pp(p3, pi);
    if (ok && plane_out) *plane_out = pi;
    return ok;
}

/**
 * The auxiliary-plane decomposition: a plane through one good edge avoiding
 * the bad configurations, two pencils of lines through its endpoints, and an
 * intersection point completing three geometric triangles.
 */
inline bool decompose_triangle(const OppGeometry& G, int q1, int q2, int q3) {
    const ProjSpace& P = *G.P;
    int pi = P.plane_of(P.line_through(q1, q2), q3);
    // rotate so the first vertex is the one missing its incidence
    std::array<int, 3> v{q1, q2, q3};
    for (int rot = 0; rot < 3; ++rot) {
        int p1 = v[0], p2 = v[1], p3 = v[2];
        if (!G.incident_pp(p1, pi)) {
            int l23 = P.line_through(p2, p3);
            for (int pi2 : P.lines[static_cast<size_t>(l23)].on_planes) {
                if (pi2 == pi || !G.plane_in[static_cast<size_t>(pi2)]) continue;
                if (!G.incident_pp(p2, pi2) || !G.incident_pp(p3, pi2)) continue;
                for (int L2 : P.lines_of_plane(pi2)) {
                    if (L2 == l23 || !G.line_in[static_cast<size_t>(L2)]) continue;
                    const auto& l2pts = P.lines[static_cast<size_t>(L2)].points;
                    if (std::find(l2pts.begin(), l2pts.end(), p2) == l2pts.end()) continue;
                    int pl12 = P.plane_of(L2, p1);
                    if (!G.plane_in[static_cast<size_t>(pl12)]) continue;
                    if (!G.incident_pp(p1, pl12) || !G.incident_pp(p2, pl12)) continue;
                    for (int L3 : P.lines_of_plane(pi2)) {
                        if (L3 == l23 || L3 == L2 || !G.line_in[static_cast<size_t>(L3)])
                            continue;
                        const auto& l3pts = P.lines[static_cast<size_t>(L3)].points;
                        if (std::find(l3pts.begin(), l3pts.end(), p3) == l3pts.end()) continue;
                        int pl13 = P.plane_of(L3, p1);
                        if (!G.plane_in[static_cast<size_t>(pl13)]) continue;
                        if (!G.incident_pp(p1, pl13) || !G.incident_pp(p3, pl13)) continue;
                        int x = P.line_meet(L2, L3);
                        if (x < 0 || !G.point_in[static_cast<size_t>(x)]) continue;
                        if (!G.incident_pp(x, pi2)) continue;
                        if (!G.incident_pp(x, pl12) || !G.incident_pp(x, pl13)) continue;
                        int lx1 = P.line_through(x, p1);
                        if (!G.line_in[static_cast<size_t>(lx1)]) continue;
                        return true;
                    }
                }
            }
            return false; // the designated vertex admitted no decomposition
        }
        std::rotate(v.begin(), v.begin() + 1, v.end());
    }
    return false; // no vertex missed its incidence, yet the triangle was not geometric
}

struct GeometryStats {
    long long triangles = 0;
    long long geometric = 0;
    long long decomposed = 0;
    long long failures = 0;
    std::string first_failure;
};

inline GeometryStats sweep_triangles(const OppGeometry& G, long long exhaustive_cap = 1000000,
                                     Rng* rng = nullptr, long long sample_target = 1000) {
    const ProjSpace& P = *G.P;
    int np = P.n_points();
    std::vector<int> ids;
    for (int p = 0; p < np; ++p)
        if (G.point_in[static_cast<size_t>(p)]) ids.push_back(p);
    // count the pairwise collinear triples first to pick the mode
    long long count = 0;
    for (size_t a = 0; a < ids.size(); ++a)
        for (size_t b = a + 1; b < ids.size(); ++b) {
            if (!G.collinear(ids[a], ids[b])) continue;
            for (size_t c = b + 1; c < ids.size(); ++c)
                if (G.collinear(ids[a], ids[c]) && G.collinear(ids[b], ids[c])) ++count;
        }
    GeometryStats st;
    auto handle = [&](int p1, int p2, int p3) {
        ++st.triangles;
        if (triangle_geometric(G, p1, p2, p3, nullptr)) {
            ++st.geometric;
        } else if (decompose_triangle(G, p1, p2, p3)) {
            ++st.decomposed;
        } else {
            ++st.failures;
            if (st.first_failure.empty())
                st.first_failure = "triangle (" + std::to_string(p1) + "," +
                                   std::to_string(p2) + "," + std::to_string(p3) + ")";
        }
    };
    if (count <= exhaustive_cap) {
        for (size_t a = 0; a < ids.size(); ++a)
            for (size_t b = a + 1; b < ids.size(); ++b) {
                if (!G.collinear(ids[a], ids[b])) continue;
                for (size_t c = b + 1; c < ids.size(); ++c)
                    if (G.collinear(ids[a], ids[c]) && G.collinear(ids[b], ids[c]))
                        handle(ids[a], ids[b], ids[c]);
            }
    } else {
        long long guard = sample_target * 100;
        while (st.triangles < sample_target && rng && guard-- > 0) {
            int p1 = ids[rng->below(ids.size())];
            int p2 = ids[rng->below(ids.size())];
            int p3 = ids[rng->below(ids.size())];
            if (p1 == p2 || p1 == p3 || p2 == p3) continue;
            if (!G.collinear(p1, p2) || !G.collinear(p1, p3) || !G.collinear(p2, p3)) continue;
            handle(p1, p2, p3);
        }
    }
    return st;
}

/// connectivity and diameter of the collinearity graph, exactly
struct DiameterResult {
    bool connected = false;
    int diameter = -1;
};

inline DiameterResult collinearity_diameter(const OppGeometry& G) {
    const ProjSpace& P = *G.P;
    int np = P.n_points();
    std::vector<int> ids;
    for (int p = 0; p < np; ++p)
        if (G.point_in[static_cast<size_t>(p)]) ids.push_back(p);
    DiameterResult res;
    int diam = 0;
    for (int p1 : ids)
        for (int p2 : ids) {
            if (p2 <= p1) continue;
            if (G.collinear(p1, p2)) {
                diam = std::max(diam, 1);
                continue;
            }
            if (G.adj[static_cast<size_t>(p1)].intersects(G.adj[static_cast<size_t>(p2)])) {
                diam = std::max(diam, 2);
            } else {
                return {false, -1};
            }
        }
    res.connected = true;
    res.diameter = diam;
    return res;
}

/// quadrangle chord: a point on the second edge collinear to both far corners
inline long long sweep_quadrangles(const OppGeometry& G, Rng& rng, long long target,
                                   long long* failures, std::string* witness) {
    const ProjSpace& P = *G.P;
    std::vector<int> ids;
    for (int p = 0; p < P.n_points(); ++p)
        if (G.point_in[static_cast<size_t>(p)]) ids.push_back(p);
    long long made = 0;
    *failures = 0;
    long long guard = target * 200;
    while (made < target && guard-- > 0) {
        int p1 = ids[rng.below(ids.size())];
        int p3 = ids[rng.below(ids.size())];
        if (p1 == p3 || G.collinear(p1, p3)) continue;
        // common neighbors of the two non-collinear corners
        std::vector<int> common;
        for (int p : ids)
            if (G.collinear(p, p1) && G.collinear(p, p3)) common.push_back(p);
        if (common.size() < 2) continue;
        int p2 = common[rng.below(common.size())];
        int p4 = common[rng.below(common.size())];
        if (p2 == p4) continue;
        ++made;
        bool found = false;
        int l23 = P.line_through(p2, p3);
        for (int x : P.lines[static_cast<size_t>(l23)].points) {
            if (!G.point_in[static_cast<size_t>(x)]) continue;
            if (x != p1 && x != p4 && G.collinear(x, p1) && G.collinear(x, p4)) {
                found = true;
                break;
            }
        }
        if (!found) {
            ++*failures;
            if (witness->empty())
                *witness = "quadrangle " + std::to_string(p1) + "," + std::to_string(p2) + "," +
                           std::to_string(p3) + "," + std::to_string(p4);
        }
    }
    return made;
}

/// pentagon chord: a point on the middle edge collinear to the far corner
inline long long sweep_pentagons(const OppGeometry& G, Rng& rng, long long target,
                                 long long* failures, std::string* witness) {
    const ProjSpace& P = *G.P;
    std::vector<int> ids;
    for (int p = 0; p < P.n_points(); ++p)
        if (G.point_in[static_cast<size_t>(p)]) ids.push_back(p);
    // non-collinear pairs are scarce; enumerate the non-neighbors up front
    std::vector<std::vector<int>> nonnb(static_cast<size_t>(P.n_points()));
    for (int p : ids)
        for (int p2 : ids)
            if (p2 != p && !G.collinear(p, p2)) nonnb[static_cast<size_t>(p)].push_back(p2);
    long long made = 0;
    *failures = 0;
    long long guard = target * 100;
    while (made < target && guard-- > 0) {
        int p1 = ids[rng.below(ids.size())];
        const auto& far = nonnb[static_cast<size_t>(p1)];
        if (far.empty()) continue;
        // one far corner is genuinely non-collinear to p1; the other may or
        // may not be (both shapes occur, and in the unfixed-lines geometry
        // the doubly-non-collinear shape cannot exist at all)
        int p3 = far[rng.below(far.size())];
        int p4 = ids[rng.below(ids.size())];
        if (p4 == p1 || p4 == p3 || !G.collinear(p3, p4)) continue;
        // middle corners complete the 5-cycle
        int p2 = -1, p5 = -1;
        for (int tries = 0; tries < 20 && (p2 < 0 || p5 < 0); ++tries) {
            int cand = ids[rng.below(ids.size())];
            if (p2 < 0 && cand != p4 && cand != p3 && cand != p1 &&
                G.collinear(cand, p1) && G.collinear(cand, p3))
                p2 = cand;
            else if (p5 < 0 && cand != p2 && cand != p3 && cand != p1 && cand != p4 &&
                     G.collinear(cand, p4) && G.collinear(cand, p1))
                p5 = cand;
        }
        if (p2 < 0 || p5 < 0 || p2 == p5) continue;
        ++made;
        bool found = false;
        int l34 = P.line_through(p3, p4);
        for (int x : P.lines[static_cast<size_t>(l34)].points) {
            if (!G.point_in[static_cast<size_t>(x)]) continue;
            if (x != p1 && G.collinear(x, p1)) {
                found = true;
                break;
            }
        }
        if (!found) {
            ++*failures;
            if (witness->empty()) *witness = "pentagon at " + std::to_string(p1);
        }
    }
    return made;
}

/// availability of the three path-reduction moves on sampled configurations
inline void sweep_path_moves(const OppGeometry& G, Rng& rng, long long target, Report& rep,
                             const std::string& prefix) {
    const ProjSpace& P = *G.P;
    std::vector<int> pls;
    for (int pl = 0; pl < P.n_planes(); ++pl)
        if (G.plane_in[static_cast<size_t>(pl)]) pls.push_back(pl);
    long long ppp = 0, ppl = 0, lpl = 0;
    long long ppp_fail = 0, ppl_fail = 0, lpl_fail = 0;
    long long guard = target * 100;
    while ((ppp < target || ppl < target || lpl < target) && guard-- > 0) {
        int pl = pls[rng.below(pls.size())];
        // incident points and lines of the plane
        std::vector<int> pts_on, lines_on;
        for (int p = 0; p < P.n_points(); ++p)
            if (G.incident_pp(p, pl)) pts_on.push_back(p);
        for (int l : P.lines_of_plane(pl))
            if (G.line_in[static_cast<size_t>(l)]) lines_on.push_back(l);
        if (pts_on.size() < 2 || lines_on.size() < 2) continue;
        if (ppp < target) {
            int p = pts_on[rng.below(pts_on.size())];
            int p2 = pts_on[rng.below(pts_on.size())];
            if (p != p2) {
                ++ppp;
                bool ok = G.collinear(p, p2);
                if (!ok) {
                    // replace through a middle point incident to the plane
                    for (int mid : pts_on)
                        if (mid != p && mid != p2 && G.collinear(mid, p) &&
                            G.collinear(mid, p2)) {
                            ok = true;
                            break;
                        }
                }
                if (!ok) ++ppp_fail;
            }
        }
        if (ppl < target) {
            int p = pts_on[rng.below(pts_on.size())];
            int l = lines_on[rng.below(lines_on.size())];
            const auto& lp = P.lines[static_cast<size_t>(l)].points;
            if (std::find(lp.begin(), lp.end(), p) == lp.end()) {
                ++ppl;
                bool ok = false;
                for (int p2 : lp)
                    if (G.point_in[static_cast<size_t>(p2)] && G.incident_pp(p2, pl) &&
                        G.collinear(p, p2)) {
                        ok = true;
                        break;
                    }
                if (!ok) ++ppl_fail;
            }
        }
        if (lpl < target) {
            int l1 = lines_on[rng.below(lines_on.size())];
            int l2 = lines_on[rng.below(lines_on.size())];
            if (l1 != l2) {
                ++lpl;
                bool ok = false;
                for (int a : P.lines[static_cast<size_t>(l1)].points) {
                    if (!G.point_in[static_cast<size_t>(a)] || !G.incident_pp(a, pl)) continue;
                    for (int b : P.lines[static_cast<size_t>(l2)].points) {
                        if (!G.point_in[static_cast<size_t>(b)] || !G.incident_pp(b, pl))
                            continue;
                        if (a == b || G.collinear(a, b)) {
                            ok = true;
                            break;
                        }
                    }
                    if (ok) break;
                }
                if (!ok) ++lpl_fail;
            }
        }
    }
    rep.require(prefix + "/move-point-plane-point", ppp >= target && ppp_fail == 0,
                ppp_fail ? std::to_string(ppp_fail) + " failures" : "");
    rep.require(prefix + "/move-point-plane-line", ppl >= target && ppl_fail == 0,
                ppl_fail ? std::to_string(ppl_fail) + " failures" : "");
    rep.require(prefix + "/move-line-plane-line", lpl >= target && lpl_fail == 0,
                lpl_fail ? std::to_string(lpl_fail) + " failures" : "");
}

/// The full battery; case-specific structure checks live beside the builders.
inline void verify_geometry(const OppGeometry& G, Rng& rng, Report& rep,
                            long long sample_target = 1000) {
    const std::string prefix = G.kind;
    DiameterResult diam = collinearity_diameter(G);
    rep.require(prefix + "/collinearity-connected", diam.connected);
    rep.require(prefix + "/collinearity-diameter-two", diam.connected && diam.diameter == 2,
                "diameter " + std::to_string(diam.diameter));
    GeometryStats st = sweep_triangles(G, 1000000, &rng, sample_target);
    rep.require(prefix + "/triangles-geometrize", st.failures == 0,
                st.first_failure + " (" + std::to_string(st.failures) + " of " +
                    std::to_string(st.triangles) + ")");
    rep.note(prefix + "/triangle-census",
             std::to_string(st.triangles) + " triangles, " + std::to_string(st.geometric) +
                 " geometric, " + std::to_string(st.decomposed) + " decomposed");
    long long qf = 0, pf = 0;
    std::string qw, pw;
    long long qn = sweep_quadrangles(G, rng, sample_target, &qf, &qw);
    rep.require(prefix + "/quadrangle-chords", qn >= sample_target && qf == 0, qw);
    long long pn = sweep_pentagons(G, rng, sample_target, &pf, &pw);
    rep.require(prefix + "/pentagon-chords", pn >= sample_target && pf == 0, pw);
    sweep_path_moves(G, rng, sample_target, rep, prefix);
}

} // namespace ctlab
