#pragma once

/**
 * @file geometry.hpp
 * @brief The finite point-line-plane geometries carved out of PG(3,q) by a
 *        semilinear involution (all points and planes, unfixed lines, with
 *        the one-bad-line incidence) and by a distinguished line with a
 *        point-plane pairing, plus the rank-2 bipartite model.  The
 *        verification battery walks connectivity, diameter, triangle
 *        geometrization, polygon chords and the path-reduction moves.
 */

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctlab/linalg.hpp"
#include "ctlab/report.hpp"

namespace ctlab {

/// Fixed-width bit vector sized at construction.
struct BitVec {
    std::vector<uint64_t> w;
    explicit BitVec(int bits = 0) : w(static_cast<size_t>((bits + 63) / 64), 0) {}
    void set(int i) { w[static_cast<size_t>(i >> 6)] |= 1ull << (i & 63); }
    void reset(int i) { w[static_cast<size_t>(i >> 6)] &= ~(1ull << (i & 63)); }
    bool get(int i) const { return (w[static_cast<size_t>(i >> 6)] >> (i & 63)) & 1; }
    bool intersects(const BitVec& o) const {
        for (size_t k = 0; k < w.size(); ++k)
            if (w[k] & o.w[k]) return true;
        return false;
    }
    int count() const {
        int c = 0;
        for (uint64_t x : w) c += __builtin_popcountll(x);
        return c;
    }
};

using Vec4 = std::array<uint32_t, 4>;

/**
 * The points, lines and planes of PG(3, q) with canonical representatives
 * and O(1) incidence lookups.
 */
class ProjSpace {
public:
    explicit ProjSpace(const Fq& field) : F(&field) {
        build_points();
        build_planes();
        build_lines();
        build_tables();
    }

    const Fq* F;
    std::vector<Vec4> pts;     // normalized: first nonzero coordinate is 1
    std::vector<Vec4> planes;  // normal vectors, normalized
    struct Line {
        std::array<int, 2> span;   // two spanning point ids (canonical: least)
        std::vector<int> points;   // all q+1 point ids
        std::vector<int> on_planes; // all q+1 plane ids containing the line
    };
    std::vector<Line> lines;

    int n_points() const { return static_cast<int>(pts.size()); }
    int n_lines() const { return static_cast<int>(lines.size()); }
    int n_planes() const { return static_cast<int>(planes.size()); }

    int point_id(const Vec4& v) const { return pt_index.at(pack(normalize(v))); }
    int plane_id(const Vec4& v) const { return plane_index.at(pack(normalize(v))); }
    int line_through(int p1, int p2) const {
        return line_tab[static_cast<size_t>(p1) * pts.size() + static_cast<size_t>(p2)];
    }
    bool point_on_plane(int p, int pl) const { return plane_pts[static_cast<size_t>(pl)].get(p); }
    bool line_on_plane(int l, int pl) const {
        return plane_pts[static_cast<size_t>(pl)].get(lines[static_cast<size_t>(l)].span[0]) &&
               plane_pts[static_cast<size_t>(pl)].get(lines[static_cast<size_t>(l)].span[1]);
    }
    /// the unique plane containing a line and a point off it
    int plane_of(int l, int p) const {
        for (int pl : lines[static_cast<size_t>(l)].on_planes)
            if (point_on_plane(p, pl)) return pl;
        return -1;
    }
    /// intersection point of two distinct coplanar lines, -1 if disjoint
    int line_meet(int l1, int l2) const {
        for (int a : lines[static_cast<size_t>(l1)].points)
            for (int b : lines[static_cast<size_t>(l2)].points)
                if (a == b) return a;
        return -1;
    }

    const BitVec& points_of_plane(int pl) const { return plane_pts[static_cast<size_t>(pl)]; }
    const std::vector<int>& lines_through_point(int p) const {
        return pt_lines[static_cast<size_t>(p)];
    }
    const std::vector<int>& lines_of_plane(int pl) const {
        return plane_lines[static_cast<size_t>(pl)];
    }

    Vec4 normalize(Vec4 v) const {
        for (int i = 0; i < 4; ++i)
            if (v[static_cast<size_t>(i)] != 0) {
                uint32_t inv = F->inv(v[static_cast<size_t>(i)]);
                for (int j = 0; j < 4; ++j)
                    v[static_cast<size_t>(j)] = F->mul(v[static_cast<size_t>(j)], inv);
                return v;
            }
        throw std::invalid_argument("normalize: zero vector");
    }

    uint32_t dot(const Vec4& a, const Vec4& b) const {
        uint32_t acc = 0;
        for (int i = 0; i < 4; ++i)
            acc = F->add(acc, F->mul(a[static_cast<size_t>(i)], b[static_cast<size_t>(i)]));
        return acc;
    }

private:
    uint64_t pack(const Vec4& v) const {
        uint64_t k = 0;
        for (int i = 0; i < 4; ++i) k = k * F->q() + v[static_cast<size_t>(i)];
        return k;
    }

    void build_points() {
        uint32_t q = F->q();
        for (uint32_t a = 0; a < q; ++a)
            for (uint32_t b = 0; b < q; ++b)
                for (uint32_t c = 0; c < q; ++c)
                    for (uint32_t d = 0; d < q; ++d) {
                        Vec4 v{a, b, c, d};
                        if (a == 0 && b == 0 && c == 0 && d == 0) continue;
                        Vec4 n = normalize(v);
                        if (n != v) continue; // keep canonical representatives only
                        pt_index[pack(n)] = static_cast<int>(pts.size());
                        pts.push_back(n);
                    }
    }

    void build_planes() {
        planes = pts; // same normalized representatives, read as normals
        for (size_t i = 0; i < planes.size(); ++i) plane_index[pack(planes[i])] = static_cast<int>(i);
    }

    void build_lines() {
        int np = n_points();
        line_tab.assign(static_cast<size_t>(np) * np, -1);
        for (int p1 = 0; p1 < np; ++p1)
            for (int p2 = p1 + 1; p2 < np; ++p2) {
                if (line_tab[static_cast<size_t>(p1) * np + p2] >= 0) continue;
                // enumerate the points of <p1, p2>
                std::vector<int> on;
                on.push_back(p1);
                for (uint32_t lam = 0; lam < F->q(); ++lam) {
                    Vec4 v;
                    for (int i = 0; i < 4; ++i)
                        v[static_cast<size_t>(i)] =
                            F->add(F->mul(lam, pts[static_cast<size_t>(p1)][static_cast<size_t>(i)]),
                                   pts[static_cast<size_t>(p2)][static_cast<size_t>(i)]);
                    on.push_back(point_id(v));
                }
                std::sort(on.begin(), on.end());
                int lid = static_cast<int>(lines.size());
                Line L;
                L.span = {on[0], on[1]};
                L.points = on;
                lines.push_back(L);
                for (size_t a = 0; a < on.size(); ++a)
                    for (size_t b = 0; b < on.size(); ++b)
                        if (a != b)
                            line_tab[static_cast<size_t>(on[a]) * np + on[b]] = lid;
            }
    }

    void build_tables() {
        int np = n_points(), npl = n_planes();
        plane_pts.assign(static_cast<size_t>(npl), BitVec(np));
        for (int pl = 0; pl < npl; ++pl)
            for (int p = 0; p < np; ++p)
                if (dot(planes[static_cast<size_t>(pl)], pts[static_cast<size_t>(p)]) == 0)
                    plane_pts[static_cast<size_t>(pl)].set(p);
        pt_lines.assign(static_cast<size_t>(np), {});
        for (int l = 0; l < n_lines(); ++l)
            for (int p : lines[static_cast<size_t>(l)].points)
                pt_lines[static_cast<size_t>(p)].push_back(l);
        plane_lines.assign(static_cast<size_t>(npl), {});
        for (int l = 0; l < n_lines(); ++l)
            for (int pl = 0; pl < npl; ++pl)
                if (line_on_plane(l, pl)) {
                    lines[static_cast<size_t>(l)].on_planes.push_back(pl);
                    plane_lines[static_cast<size_t>(pl)].push_back(l);
                }
    }

    std::map<uint64_t, int> pt_index, plane_index;
    std::vector<int> line_tab;
    std::vector<BitVec> plane_pts;
    std::vector<std::vector<int>> pt_lines, plane_lines;
};

/// Semilinear map v -> M v^(p^e) of GF(q)^4, projectively involutive.
struct SemilinearInvolution {
    const Fq* F;
    FMat M;
    int frob_e = 0;

    Vec4 apply_vec(const Vec4& v) const {
        FieldAut c(*F, frob_e);
        Vec4 out{0, 0, 0, 0};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                out[static_cast<size_t>(i)] =
                    F->add(out[static_cast<size_t>(i)],
                           F->mul(M.at(i, j).v, c.apply(v[static_cast<size_t>(j)])));
        return out;
    }

    int apply_point(const ProjSpace& P, int p) const {
        return P.point_id(apply_vec(P.pts[static_cast<size_t>(p)]));
    }

    bool projectively_involutive(const ProjSpace& P) const {
        for (int p = 0; p < P.n_points(); ++p)
            if (apply_point(P, apply_point(P, p)) != p) return false;
        return true;
    }

    bool has_fixed_point(const ProjSpace& P, int* witness = nullptr) const {
        for (int p = 0; p < P.n_points(); ++p)
            if (apply_point(P, p) == p) {
                if (witness) *witness = p;
                return true;
            }
        return false;
    }
};

/**
 * Deterministic fixed-point-free involution for odd q: two companion blocks
 * of the least non-square.  For even q the point count q^3+q^2+q+1 is odd,
 * so every involution of the point set has a fixed point and the search
 * reports that obstruction instead.
 */
inline SemilinearInvolution find_fixed_point_free_involution(const Fq& F, const ProjSpace& P) {
    if (F.p() == 2)
        throw std::domain_error(
            "no fixed-point-free involution on PG(3,q) for even q: odd point count");
    uint32_t nonsquare = 0;
    for (uint32_t lam = 1; lam < F.q() && nonsquare == 0; ++lam) {
        bool square = false;
        for (uint32_t r = 1; r < F.q(); ++r)
            if (F.mul(r, r) == lam) { square = true; break; }
        if (!square) nonsquare = lam;
    }
    if (nonsquare == 0) throw std::logic_error("odd field without non-squares?");
    SemilinearInvolution phi{&F, ff_zero(4, 4, F), 0};
    phi.M.at(0, 1) = FF(F, nonsquare);
    phi.M.at(1, 0) = FF(F, F.one());
    phi.M.at(2, 3) = FF(F, nonsquare);
    phi.M.at(3, 2) = FF(F, F.one());
    int witness = -1;
    if (!phi.projectively_involutive(P) || phi.has_fixed_point(P, &witness))
        throw std::logic_error("constructed involution failed its checks");
    return phi;
}

/**
 * A rank-3 opposition geometry over a shared projective space: membership
 * flags for points, lines and planes, collinearity and point-plane incidence
 * tables, and enough structure for the path and polygon reductions.
 */
struct OppGeometry {
    const ProjSpace* P = nullptr;
    std::string kind;
    std::vector<char> point_in, line_in, plane_in;
    std::vector<BitVec> adj;     // collinearity, over point ids
    std::vector<BitVec> inc_pt;  // per plane: incident points
    std::vector<BitVec> inc_pl;  // per point: incident planes

    bool collinear(int p1, int p2) const { return p1 != p2 && adj[static_cast<size_t>(p1)].get(p2); }
    bool incident_pp(int p, int pl) const { return inc_pt[static_cast<size_t>(pl)].get(p); }
    bool line_incident_plane(int l, int pl) const {
        return line_in[static_cast<size_t>(l)] && plane_in[static_cast<size_t>(pl)] &&
               P->line_on_plane(l, pl);
    }

    int points_count() const {
        int c = 0;
        for (char x : point_in) c += x;
        return c;
    }
    int lines_count() const {
        int c = 0;
        for (char x : line_in) c += x;
        return c;
    }
    int planes_count() const {
        int c = 0;
        for (char x : plane_in) c += x;
        return c;
    }

    void build_adjacency() {
        int np = P->n_points();
        adj.assign(static_cast<size_t>(np), BitVec(np));
        for (int l = 0; l < P->n_lines(); ++l) {
            if (!line_in[static_cast<size_t>(l)]) continue;
            const auto& on = P->lines[static_cast<size_t>(l)].points;
            for (int a : on)
                for (int b : on)
                    if (a != b && point_in[static_cast<size_t>(a)] &&
                        point_in[static_cast<size_t>(b)])
                        adj[static_cast<size_t>(a)].set(b);
        }
    }
};

/// All points and planes, the unfixed lines; a point misses a plane exactly
/// when it lies on the plane's image line.
inline OppGeometry build_case1(const ProjSpace& P, const SemilinearInvolution& phi) {
    int wit = -1;
    if (phi.has_fixed_point(P, &wit))
        throw std::domain_error("build_case1: involution fixes point " + std::to_string(wit));
    OppGeometry G;
    G.P = &P;
    G.kind = "case1";
    int np = P.n_points(), nl = P.n_lines(), npl = P.n_planes();
    G.point_in.assign(static_cast<size_t>(np), 1);
    G.plane_in.assign(static_cast<size_t>(npl), 1);
    G.line_in.assign(static_cast<size_t>(nl), 0);
    // a line is good when phi moves it
    for (int l = 0; l < nl; ++l) {
        const auto& L = P.lines[static_cast<size_t>(l)];
        int a = phi.apply_point(P, L.span[0]);
        int b = phi.apply_point(P, L.span[1]);
        G.line_in[static_cast<size_t>(l)] = (P.line_through(a, b) != l);
    }
    // plane images: map three spanning points
    G.inc_pt.assign(static_cast<size_t>(npl), BitVec(np));
    G.inc_pl.assign(static_cast<size_t>(np), BitVec(npl));
    for (int pl = 0; pl < npl; ++pl) {
        // find three independent points of the plane and map them
        std::vector<int> base;
        for (int p = 0; p < np && base.size() < 3; ++p) {
            if (!P.point_on_plane(p, pl)) continue;
            if (base.size() == 2 && P.line_through(base[0], base[1]) ==
                                        P.line_through(base[0], p))
                continue;
            base.push_back(p);
        }
        std::array<int, 3> img{phi.apply_point(P, base[0]), phi.apply_point(P, base[1]),
                               phi.apply_point(P, base[2])};
        // normal of the image plane: solve 3 linear conditions
        FMat rows = ff_zero(3, 4, *P.F);
        for (int r = 0; r < 3; ++r)
            for (int cidx = 0; cidx < 4; ++cidx)
                rows.at(r, cidx) =
                    FF(*P.F, P.pts[static_cast<size_t>(img[static_cast<size_t>(r)])]
                                  [static_cast<size_t>(cidx)]);
        FMat nor = kernel(rows);
        Vec4 nv{nor.at(0, 0).v, nor.at(0, 1).v, nor.at(0, 2).v, nor.at(0, 3).v};
        int img_pl = P.plane_id(nv);
        for (int p = 0; p < np; ++p) {
            if (!P.point_on_plane(p, pl)) continue;
            if (!P.point_on_plane(p, img_pl)) {
                G.inc_pt[static_cast<size_t>(pl)].set(p);
                G.inc_pl[static_cast<size_t>(p)].set(pl);
            }
        }
    }
    G.build_adjacency();
    return G;
}

/// Pairing between the points of the reference line and the planes on it.
struct LinePairing {
    int line = -1;
    std::vector<int> point_ids;          // the q+1 points of the line
    std::vector<int> plane_ids;          // the q+1 planes on the line
    std::vector<int> plane_of_point;     // pairing: index into plane_ids per point
};

/// Default pairing through the standard symplectic form on the quotient.
inline LinePairing symplectic_pairing(const ProjSpace& P) {
    const Fq& F = *P.F;
    LinePairing pr;
    // reference line <e1, e2>
    Vec4 e1{F.one(), 0, 0, 0}, e2{0, F.one(), 0, 0};
    pr.line = P.line_through(P.point_id(e1), P.point_id(e2));
    pr.point_ids = P.lines[static_cast<size_t>(pr.line)].points;
    pr.plane_ids = P.lines[static_cast<size_t>(pr.line)].on_planes;
    auto symp = [&](const Vec4& x, const Vec4& y) {
        // x1 y3 - x3 y1 + x2 y4 - x4 y2
        uint32_t acc = F.sub(F.mul(x[0], y[2]), F.mul(x[2], y[0]));
        acc = F.add(acc, F.sub(F.mul(x[1], y[3]), F.mul(x[3], y[1])));
        return acc;
    };
    for (int p : pr.point_ids) {
        const Vec4& u = P.pts[static_cast<size_t>(p)];
        // the perp of u is a plane containing the reference line
        int found = -1;
        for (size_t k = 0; k < pr.plane_ids.size(); ++k) {
            int pl = pr.plane_ids[k];
            bool ok = true;
            for (int w = 0; w < P.n_points() && ok; ++w)
                if (P.point_on_plane(w, pl) && symp(u, P.pts[static_cast<size_t>(w)]) != 0)
                    ok = false;
            // perp is 3-dimensional; the plane equals it iff all its points pair to 0
            if (ok) { found = static_cast<int>(k); break; }
        }
        if (found < 0) throw std::logic_error("symplectic pairing: perp not on the line");
        pr.plane_of_point.push_back(found);
    }
    return pr;
}

/// Points off the line, lines disjoint from it, planes not containing it;
/// a point misses a plane exactly when its joining plane is paired to the
/// plane's trace point.
inline OppGeometry build_case2(const ProjSpace& P, const LinePairing& pr) {
    // the pairing must be a bijection
    std::vector<char> seen(pr.plane_ids.size(), 0);
    if (pr.plane_of_point.size() != pr.point_ids.size())
        throw std::invalid_argument("build_case2: pairing size mismatch");
    for (int k : pr.plane_of_point) {
        if (k < 0 || k >= static_cast<int>(pr.plane_ids.size()) || seen[static_cast<size_t>(k)])
            throw std::invalid_argument("build_case2: pairing is not a bijection");
        seen[static_cast<size_t>(k)] = 1;
    }
    OppGeometry G;
    G.P = &P;
    G.kind = "case2";
    int np = P.n_points(), nl = P.n_lines(), npl = P.n_planes();
    const auto& L0 = P.lines[static_cast<size_t>(pr.line)];
    G.point_in.assign(static_cast<size_t>(np), 1);
    for (int p : L0.points) G.point_in[static_cast<size_t>(p)] = 0;
    G.line_in.assign(static_cast<size_t>(nl), 0);
    for (int l = 0; l < nl; ++l)
        G.line_in[static_cast<size_t>(l)] = (l != pr.line && P.line_meet(l, pr.line) < 0);
    G.plane_in.assign(static_cast<size_t>(npl), 1);
    for (int pl : L0.on_planes) G.plane_in[static_cast<size_t>(pl)] = 0;

    // pairing as maps between global ids
    std::map<int, int> paired_plane; // point id on L0 -> plane id on L0
    for (size_t k = 0; k < pr.point_ids.size(); ++k)
        paired_plane[pr.point_ids[k]] = pr.plane_ids[static_cast<size_t>(pr.plane_of_point[k])];

    G.inc_pt.assign(static_cast<size_t>(npl), BitVec(np));
    G.inc_pl.assign(static_cast<size_t>(np), BitVec(npl));
    for (int pl = 0; pl < npl; ++pl) {
        if (!G.plane_in[static_cast<size_t>(pl)]) continue;
        // trace point of the plane on the reference line
        int trace = -1;
        for (int p : L0.points)
            if (P.point_on_plane(p, pl)) { trace = p; break; }
        int forbidden_joining_plane = paired_plane.at(trace);
        for (int p = 0; p < np; ++p) {
            if (!G.point_in[static_cast<size_t>(p)] || !P.point_on_plane(p, pl)) continue;
            int joining = P.plane_of(pr.line, p); // <p, L0>
            if (joining != forbidden_joining_plane) {
                G.inc_pt[static_cast<size_t>(pl)].set(p);
                G.inc_pl[static_cast<size_t>(p)].set(pl);
            }
        }
    }
    G.build_adjacency();
    return G;
}

/* ------------------------------------------------------------------ */
/* Rank 2                                                              */
/* ------------------------------------------------------------------ */

struct BipartiteGraph {
    int side = 0;                       // vertices per side
    std::vector<std::vector<char>> edge; // edge[i][j] between left i and right j

    bool connected() const {
        int n = 2 * side;
        std::vector<char> vis(static_cast<size_t>(n), 0);
        std::vector<int> stack{0};
        vis[0] = 1;
        int seen = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u = 0; u < n; ++u) {
                bool adj = false;
                if (v < side && u >= side) adj = edge[static_cast<size_t>(v)][static_cast<size_t>(u - side)];
                if (v >= side && u < side) adj = edge[static_cast<size_t>(u)][static_cast<size_t>(v - side)];
                if (adj && !vis[static_cast<size_t>(u)]) {
                    vis[static_cast<size_t>(u)] = 1;
                    ++seen;
                    stack.push_back(u);
                }
            }
        }
        return seen == n;
    }

    int degree(int left_i) const {
        int d = 0;
        for (char e : edge[static_cast<size_t>(left_i)]) d += e;
        return d;
    }
};

/// Complete bipartite graph on two panels of q+1 chambers minus the matching
/// that pairs each chamber with its non-opposite partner.
inline BipartiteGraph build_rank2_bipartite(int q) {
    BipartiteGraph g;
    g.side = q + 1;
    g.edge.assign(static_cast<size_t>(g.side),
                  std::vector<char>(static_cast<size_t>(g.side), 1));
    for (int i = 0; i < g.side; ++i) g.edge[static_cast<size_t>(i)][static_cast<size_t>(i)] = 0;
    return g;
}

} // namespace ctlab
