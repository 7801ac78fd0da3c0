#pragma once

/**
 * @file mixed.hpp
 * @brief Completion of the cyclic amalgam for a mixed twist delta = alpha*tau
 *        with alpha of order s > 1, inside SL_{2sn}(k[t,t^-1]).
 *
 * The node maps multiply the images of one corner block under the whole group
 * H = <alpha, tau> acting through Phi.  The factors land on disjoint blocks
 * and are checked, not assumed, to commute; factor order is powers of alpha
 * first, then each power times tau.
 */

#include "ctlab/completions.hpp"

namespace ctlab {

struct MixedCompletion {
    int n, s, N; // N = 2sn
    const Fq* F;
    FieldAut alpha;
    Mat<Laurent> J, Jinv;
    std::vector<Mat<Laurent>> fpow, fipow;

    MixedCompletion(int n_, const Fq& field, int alpha_e)
        : n(n_), F(&field), alpha(field, alpha_e) {
        s = alpha.order();
        if (s < 2) throw std::invalid_argument("MixedCompletion: alpha must have order > 1");
        N = 2 * s * n;
        Laurent z = Laurent::zero(field);
        J = Mat<Laurent>::zero(N, N, z);
        Jinv = Mat<Laurent>::zero(N, N, z);
        for (int i = 0; i < N; ++i) {
            bool upper = i < s * n;
            J.at(i, i) = upper ? Laurent::t(field) : Laurent::one(field);
            Jinv.at(i, i) = upper ? Laurent::monomial(field, field.one(), -1) : Laurent::one(field);
        }
        Mat<Laurent> shift = Mat<Laurent>::zero(N, N, z);
        for (int j = 0; j + 1 < N; ++j) shift.at(j, j + 1) = Laurent::one(field);
        shift.at(N - 1, 0) = Laurent::one(field);
        Mat<Laurent> id = Mat<Laurent>::identity(N, z);
        fpow.push_back(id);
        fipow.push_back(id);
        for (int k = 1; k <= N; ++k) {
            fpow.push_back(mat_mul(fpow.back(), shift));
            fipow.push_back(mat_mul(shift.transposed(), fipow.back()));
        }
    }

    /// Phi(alpha)^j : X -> F^(-jn) X^(alpha^j) F^(jn)
    Mat<Laurent> phi_alpha_pow(const Mat<Laurent>& X, int j) const {
        Mat<Laurent> Y = mat_aut(X, FieldAut(*F, alpha.e * j));
        return mat_mul(fipow[static_cast<size_t>(j * n)], Y, fpow[static_cast<size_t>(j * n)]);
    }

    Mat<Laurent> phi_alpha(const Mat<Laurent>& X) const { return phi_alpha_pow(X, 1); }

    /// Phi(tau) : X -> F^(-sn) J^-1 (X^-1)^T^sigma J F^(sn)
    Mat<Laurent> phi_tau(const Mat<Laurent>& X_inv) const {
        Mat<Laurent> Y = mat_sigma(X_inv.transposed());
        return mat_mul(fipow[static_cast<size_t>(s * n)],
                       mat_mul(Jinv, Y, J), fpow[static_cast<size_t>(s * n)]);
    }

    Mat<Laurent> embed(const FMat& X, int size_in) const {
        Mat<Laurent> out = Mat<Laurent>::identity(N, Laurent::zero(*F));
        for (int i = 0; i < size_in; ++i)
            for (int j = 0; j < size_in; ++j)
                out.at(i, j) = Laurent::constant(*F, X.at(i, j).v);
        return out;
    }

    /**
     * The 2s factors of the node and edge maps.  Factor r is the word
     * Phi(alpha)^r for even r and Phi(alpha)^((r+s) mod 2s) Phi(tau) for odd
     * r; it shifts a corner block by r positions and twists its content by
     * delta^r = alpha^r tau^r.  Enumerating H through these delta-power words
     * (rather than powers of alpha and then their tau-translates) is what
     * makes conjugation by the corner shift advance the factor list by one
     * step, so the full loop around the diagram lands on phi_1 twisted by
     * exactly delta^-1.  For odd s the words run through H once each; for
     * even s they run through the delta-powers twice, which still yields 2s
     * commuting factors on distinct blocks.
     */
    std::vector<Mat<Laurent>> factors(const Mat<Laurent>& X, const Mat<Laurent>& Xi) const {
        std::vector<Mat<Laurent>> out;
        Mat<Laurent> tX = phi_tau(Xi);
        for (int r = 0; r < 2 * s; ++r) {
            if (r % 2 == 0)
                out.push_back(phi_alpha_pow(X, r));
            else
                out.push_back(phi_alpha_pow(tX, (r + s) % (2 * s)));
        }
        return out;
    }

    /// true when all factor pairs commute (checked, not assumed)
    bool factors_commute(const std::vector<Mat<Laurent>>& fs) const {
        for (size_t i = 0; i < fs.size(); ++i)
            for (size_t j = i + 1; j < fs.size(); ++j)
                if (!(mat_mul(fs[i], fs[j]) == mat_mul(fs[j], fs[i]))) return false;
        return true;
    }

    Mat<Laurent> node_or_edge(int k, const FMat& X, const FMat& Xi, int size_in) const {
        auto fs = factors(embed(X, size_in), embed(Xi, size_in));
        if (!factors_commute(fs))
            throw std::runtime_error("MixedCompletion: factors over H do not commute");
        Mat<Laurent> prod = Mat<Laurent>::identity(N, Laurent::zero(*F));
        for (const auto& f : fs) prod = mat_mul(prod, f);
        return mat_mul(fipow[static_cast<size_t>(k - 1)], prod,
                       fpow[static_cast<size_t>(k - 1)]);
    }

    Mat<Laurent> phi(int k, const FMat& A, const FMat& Ai) const {
        return node_or_edge(k, A, Ai, 2);
    }

    Mat<Laurent> edge(int k, const FMat& X, const FMat& Xi) const {
        return node_or_edge(k, X, Xi, 3);
    }

    /// Phi(tau)^2 is conjugation by this matrix (reported, not asserted away).
    Mat<Laurent> tau_squared_defect() const {
        Mat<Laurent> C = mat_mul(J, fpow[static_cast<size_t>(s * n)]);
        Mat<Laurent> Cinv = mat_mul(fipow[static_cast<size_t>(s * n)], Jinv);
        return mat_mul(mat_sigma(Cinv.transposed()), C);
    }

    /// Phi(alpha)Phi(tau) and Phi(tau)Phi(alpha) differ by conjugation by this.
    Mat<Laurent> alpha_tau_commutator_defect() const {
        Mat<Laurent> C = mat_mul(J, fpow[static_cast<size_t>(s * n)]);
        Mat<Laurent> G = fpow[static_cast<size_t>(n)];
        Mat<Laurent> Ginv = fipow[static_cast<size_t>(n)];
        // [C, G] = C G C^-1 G^-1; C^-1 = F^(-sn) J^-1
        Mat<Laurent> Cinv = mat_mul(fipow[static_cast<size_t>(s * n)], Jinv);
        return mat_mul(mat_mul(C, G), mat_mul(Cinv, Ginv));
    }

    CompletionOps<Mat<Laurent>> ops() const {
        CompletionOps<Mat<Laurent>> o;
        o.n = n;
        o.F = F;
        o.tag = "Lmixed";
        o.one = Mat<Laurent>::identity(N, Laurent::zero(*F));
        o.mul = [](const Mat<Laurent>& a, const Mat<Laurent>& b) { return mat_mul(a, b); };
        o.phi = [this](int k, const FMat& A, const FMat& Ai) { return phi(k, A, Ai); };
        o.edge = [this](int k, const FMat& X, const FMat& Xi) { return edge(k, X, Xi); };
        const Fq* field = F;
        int e = alpha.e;
        o.closing_twist = [field, e](const FMat&, const FMat& Ai) {
            // delta^-1 = alpha^-1 tau: transpose-inverse then inverse Frobenius
            return ff_aut(Ai.transposed(), FieldAut(*field, -e));
        };
        o.twist_name = "delta-inverse";
        return o;
    }
};

/// Relation suite plus the mixed-specific findings.
inline void verify_mixed(const MixedCompletion& M, Rng& rng, Report& rep, int samples = 10) {
    verify_amalgam_relations(M.ops(), rng, rep, samples);
    const Fq& F = *M.F;
    // factor commutation across H on sampled node and edge arguments
    {
        bool ok = true;
        for (int it = 0; it < samples && ok; ++it) {
            GroupElt a = random_sl2(F, rng);
            if (!M.factors_commute(M.factors(M.embed(a.g, 2), M.embed(a.ginv, 2)))) ok = false;
            GroupElt x = random_sln(F, 3, rng);
            if (!M.factors_commute(M.factors(M.embed(x.g, 3), M.embed(x.ginv, 3)))) ok = false;
        }
        rep.require("Lmixed/H-factors-commute", ok);
    }
    // node images are determinant-one
    {
        bool ok = true;
        for (const auto& ge : sl2_generators(F))
            for (int k = 1; k <= M.n && ok; ++k)
                if (!(mat_det(M.phi(k, ge.g, ge.ginv)) == Laurent::one(F))) ok = false;
        rep.require("Lmixed/generators-det-one", ok);
    }
    // Phi(alpha) is an automorphism and Phi(alpha)^s is conjugation by F^(sn)
    {
        bool ok_hom = true, ok_pow = true;
        for (int it = 0; it < samples; ++it) {
            GroupElt x = random_sln(F, M.N, rng, 6), y = random_sln(F, M.N, rng, 6);
            Mat<Laurent> X = M.embed(x.g, M.N), Y = M.embed(y.g, M.N);
            if (!(M.phi_alpha(mat_mul(X, Y)) == mat_mul(M.phi_alpha(X), M.phi_alpha(Y))))
                ok_hom = false;
            Mat<Laurent> it_pow = X;
            for (int j = 0; j < M.s; ++j) it_pow = M.phi_alpha(it_pow);
            Mat<Laurent> conj = mat_mul(M.fipow[static_cast<size_t>(M.s * M.n)], X,
                                        M.fpow[static_cast<size_t>(M.s * M.n)]);
            if (!(it_pow == conj)) ok_pow = false;
        }
        rep.require("Lmixed/phi-alpha-homomorphism", ok_hom);
        rep.require("Lmixed/phi-alpha-power-s-is-inner", ok_pow);
    }
    // Phi(tau) preserves products and inverts determinants through sigma
    {
        bool ok_hom = true, ok_det = true;
        for (int it = 0; it < 4; ++it) {
            GroupElt x = random_sln(F, M.N, rng, 4), y = random_sln(F, M.N, rng, 4);
            Mat<Laurent> X = M.embed(x.g, M.N), Xi = M.embed(x.ginv, M.N);
            Mat<Laurent> Yi = M.embed(y.ginv, M.N);
            Mat<Laurent> XYi = mat_mul(Yi, Xi);
            if (!(M.phi_tau(XYi) == mat_mul(M.phi_tau(Xi), M.phi_tau(Yi)))) ok_hom = false;
            // scale one row by a unit to leave the determinant-one locus
            uint32_t lam = F.generator();
            Mat<Laurent> Xs = X, Xsi = Xi;
            Laurent u = Laurent::monomial(F, lam, 1);
            for (int c = 0; c < M.N; ++c) Xs.at(0, c) = Xs.at(0, c) * u;
            for (int r = 0; r < M.N; ++r) Xsi.at(r, 0) = Xsi.at(r, 0) * u.monomial_inverse();
            Laurent expect = laurent_sigma(mat_det(Xs)).monomial_inverse();
            if (!(mat_det(M.phi_tau(Xsi)) == expect)) ok_det = false;
        }
        rep.require("Lmixed/phi-tau-preserves-products", ok_hom);
        rep.require("Lmixed/phi-tau-det", ok_det);
    }
    rep.note("Lmixed/phi-tau-squared-defect", M.tau_squared_defect().str());
    rep.note("Lmixed/alpha-tau-commutator-defect", M.alpha_tau_commutator_defect().str());
}

} // namespace ctlab
