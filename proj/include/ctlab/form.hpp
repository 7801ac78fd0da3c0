#pragma once

/**
 * @file form.hpp
 * @brief The sigma-sesquilinear form on a rank-2n lattice over k[t,t^-1],
 *        linear on the left and sigma-twisted on the right, its adjoint
 *        involution, isometry membership and the right-dual-basis calculus.
 */

#include "ctlab/linalg.hpp"

namespace ctlab {

struct GramForm {
    int n;          // half the dimension
    const Fq* F;
    Mat<Laurent> B; // Gram matrix [[0, I],[t I, 0]]
    Mat<Laurent> Binv, Bt, Btinv;

    GramForm(int n_, const Fq& field) : n(n_), F(&field) {
        int N = 2 * n;
        Laurent z = Laurent::zero(field);
        B = Mat<Laurent>::zero(N, N, z);
        Binv = Mat<Laurent>::zero(N, N, z);
        for (int i = 0; i < n; ++i) {
            B.at(i, n + i) = Laurent::one(field);
            B.at(n + i, i) = Laurent::t(field);
            // inverse swaps the blocks with the reciprocal twist
            Binv.at(i, n + i) = Laurent::monomial(field, field.one(), -1);
            Binv.at(n + i, i) = Laurent::one(field);
        }
        Bt = B.transposed();
        Btinv = Binv.transposed();
    }

    int dim() const { return 2 * n; }

    /// beta(u, v) = u^T B sigma(v) for column vectors
    Laurent beta(const std::vector<Laurent>& u, const std::vector<Laurent>& v) const {
        if (static_cast<int>(u.size()) != dim() || static_cast<int>(v.size()) != dim())
            throw std::invalid_argument("beta: length mismatch");
        Laurent acc = Laurent::zero(*F);
        for (int i = 0; i < dim(); ++i) {
            if (u[static_cast<size_t>(i)].is_zero()) continue;
            for (int j = 0; j < dim(); ++j) {
                if (B.at(i, j).is_zero() || v[static_cast<size_t>(j)].is_zero()) continue;
                acc = acc + u[static_cast<size_t>(i)] * B.at(i, j) *
                          laurent_sigma(v[static_cast<size_t>(j)]);
            }
        }
        return acc;
    }

    /**
     * The adjoint g -> B^T^-1 (g^-1)^T^sigma B^T.  The inverse of g must be
     * supplied; for group elements it is carried along, so no adjugate is
     * ever needed.  Returns the adjoint and its inverse.
     */
    Mat<Laurent> theta(const Mat<Laurent>& g_inv) const {
        return mat_mul(Btinv, mat_sigma(g_inv.transposed()), Bt);
    }

    Mat<Laurent> theta_inverse(const Mat<Laurent>& g) const {
        return mat_mul(Btinv, mat_sigma(g.transposed()), Bt);
    }

    /// g is an isometry iff g^T B sigma(g) = B; no inverse needed.
    bool is_isometry(const Mat<Laurent>& g) const {
        if (g.rows != dim() || g.cols != dim()) return false;
        return mat_mul(g.transposed(), B, mat_sigma(g)) == B;
    }

    /**
     * Right dual of a basis given as matrix columns: the unique Q with
     * P^T B sigma(Q) = I.  The input must have unit determinant.
     */
    Mat<Laurent> right_dual_basis(const Mat<Laurent>& P) const {
        Mat<Laurent> Pinv = inverse_unit_det(P);
        return mat_sigma(mat_mul(Binv, Pinv.transposed()));
    }

    Mat<Laurent> right_dual_basis(const Mat<Laurent>& /*P*/, const Mat<Laurent>& Pinv) const {
        return mat_sigma(mat_mul(Binv, Pinv.transposed()));
    }
};

/// Column vector helpers.
inline std::vector<Laurent> lvec(int dim, const Fq& F) {
    return std::vector<Laurent>(static_cast<size_t>(dim), Laurent::zero(F));
}

inline std::vector<Laurent> mat_apply(const Mat<Laurent>& g, const std::vector<Laurent>& v) {
    std::vector<Laurent> out(static_cast<size_t>(g.rows), Laurent::zero(*g.a[0].F));
    for (int i = 0; i < g.rows; ++i)
        for (int j = 0; j < g.cols; ++j) {
            if (g.at(i, j).is_zero() || v[static_cast<size_t>(j)].is_zero()) continue;
            out[static_cast<size_t>(i)] = out[static_cast<size_t>(i)] +
                                          g.at(i, j) * v[static_cast<size_t>(j)];
        }
    return out;
}

inline std::vector<Laurent> mat_column(const Mat<Laurent>& m, int j) {
    std::vector<Laurent> out;
    out.reserve(static_cast<size_t>(m.rows));
    for (int i = 0; i < m.rows; ++i) out.push_back(m.at(i, j));
    return out;
}

/// Random bounded-degree element of SL_{2n}(k[t,t^-1]) with tracked inverse.
struct LaurentGroupElt {
    Mat<Laurent> g, ginv;
};

inline LaurentGroupElt random_sl_laurent(const Fq& F, int dim, Rng& rng, int word_len = 8) {
    Mat<Laurent> g = Mat<Laurent>::identity(dim, Laurent::zero(F));
    Mat<Laurent> gi = g;
    for (int w = 0; w < word_len; ++w) {
        int i = rng.range(0, dim - 1);
        int j = rng.range(0, dim - 2);
        if (j >= i) ++j;
        uint32_t lam = static_cast<uint32_t>(rng.below(F.q()));
        int e = rng.range(-1, 1);
        Mat<Laurent> x = Mat<Laurent>::identity(dim, Laurent::zero(F));
        Mat<Laurent> xi = x;
        x.at(i, j) = Laurent::monomial(F, lam, e);
        xi.at(i, j) = Laurent::monomial(F, F.neg(lam), e);
        g = mat_mul(g, x);
        gi = mat_mul(xi, gi);
    }
    return {g, gi};
}

/// Random Laurent vector of bounded degree.
inline std::vector<Laurent> random_lvec(const Fq& F, int dim, Rng& rng, int max_deg = 2) {
    std::vector<Laurent> v = lvec(dim, F);
    for (auto& x : v) {
        int lo = rng.range(-max_deg, 0);
        int hi = rng.range(0, max_deg);
        std::vector<uint32_t> c;
        for (int e = lo; e <= hi; ++e) c.push_back(static_cast<uint32_t>(rng.below(F.q())));
        x = Laurent(F, lo, std::move(c));
    }
    return v;
}

} // namespace ctlab
