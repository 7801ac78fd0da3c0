#pragma once

/**
 * @file amalgam.hpp
 * @brief The abstract amalgam on the cyclic diagram with n nodes: SL_2 node
 *        groups, SL_3 edge groups, inclusion maps as printable block
 *        formulas, standard-pair witnesses and the node tori.
 */

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ctlab/linalg.hpp"

namespace ctlab {

/// Element of Aut(k) x <tau>: coefficientwise Frobenius power, optionally
/// composed with transpose-inverse.
struct AutDelta {
    int frob_e = 0;
    bool tau = false;

    bool is_identity(const Fq& F) const { return !tau && frob_e % F.m() == 0; }

    int order(const Fq& F) const {
        int s = FieldAut(F, frob_e).order();
        return tau ? (s % 2 == 0 ? s : 2 * s) : s; // lcm with the order-2 flip
    }

    /// apply to a square matrix with known inverse
    FMat apply(const Fq& F, const FMat& g, const FMat& ginv) const {
        FMat r = tau ? ginv.transposed() : g;
        if (frob_e % F.m() != 0) r = ff_aut(r, FieldAut(F, frob_e));
        return r;
    }

    AutDelta inverse(const Fq& F) const {
        // tau commutes with Aut(k); the inverse negates the Frobenius power
        int e = (-frob_e) % F.m();
        if (e < 0) e += F.m();
        return AutDelta{e, tau};
    }

    std::string describe() const {
        std::string s;
        if (frob_e != 0) s += "frob^" + std::to_string(frob_e);
        if (tau) s += s.empty() ? "tau" : "*tau";
        return s.empty() ? "id" : s;
    }
};

/// One inclusion map G_i -> SL_3: a 2x2 block position plus a twist.
struct EdgeInclusion {
    int block = 0; // 0 = upper-left rows {0,1}, 1 = lower-right rows {1,2}
    AutDelta twist;

    FMat apply(const Fq& F, const FMat& A, const FMat& Ainv) const {
        FMat B = twist.apply(F, A, Ainv);
        FMat out = ff_identity(3, F);
        int o = block == 0 ? 0 : 1;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) out.at(o + i, o + j) = B.at(i, j);
        return out;
    }

    std::string describe() const {
        std::string s = block == 0 ? "A -> [[A,0],[0,1]]" : "A -> [[1,0],[0,A]]";
        if (!(twist.frob_e == 0 && !twist.tau)) s += " twisted by " + twist.describe();
        return s;
    }
};

/**
 * The amalgam on the cyclic diagram: for every edge {i, i+1} the two block
 * inclusions into SL_3, with the closing edge {n, 1} twisted by delta on the
 * G_1 side.  Non-edges embed into the direct product componentwise.
 */
struct CTAmalgam {
    int n = 0;
    const Fq* F = nullptr;
    AutDelta delta;
    bool below_standing_bounds = false; // n < 4 or q < 4

    // edge index k = 1..n is the edge {k, k+1 mod n}
    EdgeInclusion psi_low(int k) const {
        (void)k;
        return EdgeInclusion{0, AutDelta{}};
    }
    EdgeInclusion psi_high(int k) const {
        if (k == n) return EdgeInclusion{1, delta};
        return EdgeInclusion{1, AutDelta{}};
    }

    bool adjacent(int i, int j) const {
        int d = (i - j) % n;
        if (d < 0) d += n;
        return d == 1 || d == n - 1;
    }
};

inline CTAmalgam build_A_delta(int n, const Fq& F, AutDelta delta) {
    CTAmalgam a;
    a.n = n;
    a.F = &F;
    a.delta = delta;
    a.below_standing_bounds = (n < 4 || F.q() < 4);
    if (n < 3) throw std::invalid_argument("build_A_delta: need at least 3 nodes");
    return a;
}

/// Closure of a generating set of matrices; throws if the cap is exceeded.
inline std::vector<FMat> group_closure(const std::vector<FMat>& gens, size_t cap = 100000) {
    auto key_of = [](const FMat& m) {
        std::string k;
        k.reserve(m.a.size() * 4);
        for (const auto& v : m.a) {
            uint32_t x = v.v;
            for (int b = 0; b < 4; ++b) {
                k.push_back(static_cast<char>(x & 0xff));
                x >>= 8;
            }
        }
        return k;
    };
    if (gens.empty()) return {};
    const Fq& F = *gens[0].a[0].F;
    FMat id = ff_identity(gens[0].rows, F);
    std::map<std::string, size_t> seen;
    std::vector<FMat> elems;
    elems.push_back(id);
    seen[key_of(id)] = 0;
    size_t head = 0;
    while (head < elems.size()) {
        FMat cur = elems[head++];
        for (const auto& g : gens) {
            FMat nxt = mat_mul(cur, g);
            std::string k = key_of(nxt);
            if (seen.emplace(k, elems.size()).second) {
                elems.push_back(nxt);
                if (elems.size() > cap) throw std::runtime_error("group_closure: cap exceeded");
            }
        }
    }
    return elems;
}

/// Witness for two SL_2 subgroups of SL_3 in standard position.
struct StandardPairWitness {
    bool ok = false;
    std::string reason;
    Subspace U1, V1, U2, V2;
};

/**
 * Solve for the fixed line and invariant plane of each generator family and
 * test the crossing conditions dim U_i = 1, dim V_i = 2, U_1 in V_2,
 * U_2 in V_1.
 */
inline StandardPairWitness check_standard_pair(const Fq& F, const std::vector<FMat>& s1,
                                               const std::vector<FMat>& s2) {
    StandardPairWitness w;
    auto fixed_space = [&](const std::vector<FMat>& gens) {
        // intersection of ker(g - I) over the generators
        FMat stacked = ff_zero(3 * static_cast<int>(gens.size()), 3, F);
        for (size_t k = 0; k < gens.size(); ++k)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    FF v = gens[k].at(i, j);
                    if (i == j) v = v - FF(F, F.one());
                    stacked.at(static_cast<int>(3 * k) + i, j) = v;
                }
        FMat ker = kernel(stacked);
        if (ker.rows == 0) return Subspace::span(F, 3, ff_zero(1, 3, F));
        return Subspace::span(F, 3, ker);
    };
    auto invariant_planes = [&](const std::vector<FMat>& gens) {
        std::vector<Subspace> out;
        // enumerate the 2-spaces of GF(q)^3 as kernels of nonzero functionals
        std::set<std::string> done;
        for (uint32_t a = 0; a < F.q(); ++a)
            for (uint32_t b = 0; b < F.q(); ++b)
                for (uint32_t c = 0; c < F.q(); ++c) {
                    if (a == 0 && b == 0 && c == 0) continue;
                    FMat functional = ff_zero(1, 3, F);
                    functional.at(0, 0) = FF(F, a);
                    functional.at(0, 1) = FF(F, b);
                    functional.at(0, 2) = FF(F, c);
                    Subspace plane = Subspace::span(F, 3, kernel(functional));
                    if (plane.dim() != 2) continue;
                    std::string k = plane.basis.str();
                    if (!done.insert(k).second) continue;
                    bool inv = true;
                    for (const auto& g : gens)
                        if (!(plane.image(g) == plane)) { inv = false; break; }
                    if (inv) out.push_back(plane);
                }
        return out;
    };
    Subspace U1 = fixed_space(s1), U2 = fixed_space(s2);
    if (U1.dim() != 1 || U2.dim() != 1) {
        w.reason = "fixed space is not a line";
        return w;
    }
    for (const auto& V1 : invariant_planes(s1))
        for (const auto& V2 : invariant_planes(s2)) {
            // V = U_i + V_i must be direct, and the lines must cross over
            if (V1.contains(U1) || V2.contains(U2)) continue;
            if (V1.contains(U2) && V2.contains(U1)) {
                w.ok = true;
                w.U1 = U1;
                w.V1 = V1;
                w.U2 = U2;
                w.V2 = V2;
                return w;
            }
        }
    w.reason = "no invariant planes satisfy the crossing conditions";
    return w;
}

/**
 * The torus of the first factor of a standard pair: the elements of <S1>
 * normalizing <S2>, by exhaustive enumeration.
 */
inline std::vector<FMat> compute_torus_Di(const Fq& /*F*/, const std::vector<FMat>& s1gens,
                                          const std::vector<FMat>& s2gens) {
    std::vector<FMat> s1 = group_closure(s1gens);
    std::vector<FMat> s2 = group_closure(s2gens);
    std::set<std::string> s2keys;
    auto key_of = [](const FMat& m) {
        std::string k;
        for (const auto& v : m.a) k += std::to_string(v.v) + ",";
        return k;
    };
    for (const auto& g : s2) s2keys.insert(key_of(g));
    std::vector<FMat> torus;
    for (const auto& g : s1) {
        FMat gi = inverse_ff(g);
        bool normalizes = true;
        for (const auto& h : s2gens) {
            FMat conj = mat_mul(mat_mul(g, h), gi);
            if (!s2keys.count(key_of(conj))) { normalizes = false; break; }
        }
        if (normalizes) torus.push_back(g);
    }
    return torus;
}

/// tau sends the root group X_{ij} to X_{ji}; the parameter picks up a sign.
inline FMat tau_on_root_element(const Fq& F, int n, int i, int j, uint32_t lam) {
    FMat x = root_element(F, n, i, j, lam);
    FMat xi = root_element(F, n, i, j, F.neg(lam));
    return tau_of(x, xi);
}

} // namespace ctlab
