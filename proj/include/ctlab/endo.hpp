#pragma once

/**
 * @file endo.hpp
 * @brief R-linear endomorphisms of a free left module over the twisted ring
 *        k{t,t^-1}: the reversed composition rule, the embedding rho into
 *        matrices over k[T,T^-1] with T = t^s, and det_R.
 *
 * Matrices follow the convention g e_j = sum_i g_{ij} e_i with coefficients
 * acting on the left.  Composition of endomorphisms then reads
 * (a o b)_{ik} = sum_j b_{jk} * a_{ij} with the twisted product of the ring.
 * Group arithmetic on endomorphisms always goes through compose(); the
 * ordinary matrix product is never used here, even when delta is trivial.
 */

#include <numeric>
#include <stdexcept>
#include <vector>

#include "ctlab/matrix.hpp"

namespace ctlab {

using EndoR = Mat<SkewLaurent>;

inline EndoR endo_identity(int n, const Fq& F, const FieldAut& delta) {
    return EndoR::identity(n, SkewLaurent::zero(F, delta));
}

inline void check_same_ring(const EndoR& a, const EndoR& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("compose: size mismatch");
    if (a.a[0].F != b.a[0].F || a.a[0].delta.e != b.a[0].delta.e)
        throw std::invalid_argument("compose: ring mismatch");
}

/// Matrix of the composed map a o b (apply b first).
inline EndoR compose(const EndoR& a, const EndoR& b) {
    check_same_ring(a, b);
    const SkewLaurent& proto = a.a[0];
    EndoR c = EndoR::zero(a.rows, b.cols, proto);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) {
            const SkewLaurent& aij = a.at(i, j);
            if (aij.is_zero()) continue;
            for (int k = 0; k < b.cols; ++k) {
                const SkewLaurent& bjk = b.at(j, k);
                if (bjk.is_zero()) continue;
                c.at(i, k) = c.at(i, k) + bjk * aij;
            }
        }
    return c;
}

/// Action on a module element written as a coordinate column over R.
inline std::vector<SkewLaurent> endo_apply(const EndoR& g, const std::vector<SkewLaurent>& v) {
    if (static_cast<int>(v.size()) != g.cols)
        throw std::invalid_argument("endo_apply: size mismatch");
    std::vector<SkewLaurent> out(static_cast<size_t>(g.rows), g.a[0].zero_like());
    // g(sum_j v_j e_j) = sum_i (sum_j v_j g_{ij}) e_i
    for (int i = 0; i < g.rows; ++i)
        for (int j = 0; j < g.cols; ++j) {
            if (v[static_cast<size_t>(j)].is_zero() || g.at(i, j).is_zero()) continue;
            out[static_cast<size_t>(i)] =
                out[static_cast<size_t>(i)] + v[static_cast<size_t>(j)] * g.at(i, j);
        }
    return out;
}

/**
 * Image of g under the embedding into M_{sn}(A), A = k[T,T^-1], with respect
 * to the basis t^i e_j ordered with the power of t as the major index.
 */
inline Mat<Laurent> rho_embed(const EndoR& g) {
    if (!g.is_square()) throw std::invalid_argument("rho_embed: not square");
    const Fq& F = *g.a[0].F;
    const FieldAut& delta = g.a[0].delta;
    int n = g.rows;
    int s = delta.order();
    int N = s * n;
    Mat<Laurent> out = Mat<Laurent>::zero(N, N, Laurent::zero(F));
    for (int l = 0; l < s; ++l)         // basis element t^l e_j
        for (int j = 0; j < n; ++j) {
            int col = l * n + j;
            for (int i = 0; i < n; ++i) {
                const SkewLaurent& gij = g.at(i, j);
                if (gij.is_zero()) continue;
                // t^l * (x t^m) = x^(delta^-l) t^(l+m)
                for (size_t idx = 0; idx < gij.c.size(); ++idx) {
                    uint32_t x = gij.c[idx];
                    if (x == 0) continue;
                    int m = gij.off + static_cast<int>(idx);
                    int e = l + m;
                    int r = ((e % s) + s) % s;
                    int Q = (e - r) / s;
                    int row = r * n + i;
                    uint32_t coef = delta.apply_pow(x, -l);
                    out.at(row, col) =
                        out.at(row, col) + Laurent::monomial(F, coef, Q);
                }
            }
        }
    return out;
}

/**
 * The cyclic matrix x of size ns with ones below the diagonal and T in the
 * upper corner; scalar multiplication by t acts on the embedding basis as
 * x^n, twisted by delta^-1 on coefficients.
 */
inline Mat<Laurent> theta_matrix(int n, int s, const Fq& F) {
    int N = n * s;
    Mat<Laurent> x = Mat<Laurent>::zero(N, N, Laurent::zero(F));
    for (int i = 0; i + 1 < N; ++i) x.at(i + 1, i) = Laurent::one(F);
    x.at(0, N - 1) = Laurent::t(F);
    return x;
}

/// x^n over A (plain commutative power).
inline Mat<Laurent> theta_power_n(int n, int s, const Fq& F) {
    Mat<Laurent> x = theta_matrix(n, s, F);
    Mat<Laurent> acc = Mat<Laurent>::identity(n * s, Laurent::zero(F));
    for (int i = 0; i < n; ++i) acc = mat_mul(acc, x);
    return acc;
}

/// Exact test of x^n G^(delta^-1) == G x^n for an sn x sn matrix over A.
inline bool centralizer_check(const Mat<Laurent>& G, int n, int s, const FieldAut& delta) {
    const Fq& F = *G.a[0].F;
    if (G.rows != n * s || G.cols != n * s)
        throw std::invalid_argument("centralizer_check: wrong size");
    Mat<Laurent> xn = theta_power_n(n, s, F);
    FieldAut dinv(F, -delta.e);
    Mat<Laurent> lhs = mat_mul(xn, mat_aut(G, dinv));
    Mat<Laurent> rhs = mat_mul(G, xn);
    return lhs == rhs;
}

/// det_R(g) = det over A of the rho image.
inline Laurent det_R(const EndoR& g) { return mat_det(rho_embed(g)); }

/// g is invertible over R exactly when det_R is a unit of A.
inline bool is_unit_R(const EndoR& g) {
    Laurent d = det_R(g);
    return !d.is_zero() && d.is_monomial();
}

/**
 * Index of PSL_n(R) in PGL_n(R) for k = GF(q), delta of order s:
 * s * n * [(k^delta)* : ((k^delta)*)^{sn}] = s * n * gcd(sn, |k^delta| - 1).
 */
inline long long index_formula(int p, int m, int frob_power, int n) {
    const Fq& F = Fq::get(p, m);
    FieldAut delta(F, frob_power);
    long long s = delta.order();
    long long fixed = static_cast<long long>(delta.fixed_field_size());
    long long g = std::gcd(s * n, fixed - 1);
    return s * static_cast<long long>(n) * g;
}

} // namespace ctlab
