#pragma once

/**
 * @file completions.hpp
 * @brief Explicit completions of the cyclic amalgam: the twisted-Laurent
 *        realization for delta in Aut(k), and the form-preserving realization
 *        for delta = tau, together with the relation verifier shared by all
 *        completions.
 *
 * The node maps phi_1..phi_n send SL_2(k) into the ambient group; phi_{n+1}
 * closes the cycle and must differ from phi_1 by exactly the classifying
 * twist.  Edge maps send SL_3(k) onto the subgroup generated by two adjacent
 * node images and restrict to them on the two 2x2 blocks.
 */

#include <functional>

#include "ctlab/amalgam.hpp"
#include "ctlab/endo.hpp"
#include "ctlab/report.hpp"

namespace ctlab {

/**
 * One completion presented through its node, edge and twist maps, with the
 * ambient multiplication abstracted so the twisted and commutative worlds
 * share the verifier.
 */
template <class Elt>
struct CompletionOps {
    int n = 0;
    const Fq* F = nullptr;
    std::string tag;
    // node map, k in [1, n+1]; inverse of A supplied for twist formulas
    std::function<Elt(int k, const FMat& A, const FMat& Ai)> phi;
    // edge map for the edge {k, k+1}, k in [1, n]; SL_3 argument
    std::function<Elt(int k, const FMat& X, const FMat& Xi)> edge;
    // expected closing twist on SL_2: phi_{n+1} == phi_1 after this map
    std::function<FMat(const FMat& A, const FMat& Ai)> closing_twist;
    std::string twist_name;
    std::function<Elt(const Elt&, const Elt&)> mul;
    Elt one;
};

/**
 * Runs the amalgam relation suite: non-adjacent images commute elementwise,
 * adjacent pairs satisfy the SL_3 commutator relations for the root elements
 * carried through the node maps, edge maps are homomorphisms restricting to
 * the node maps, and the closing edge realizes exactly the classifying twist.
 */
template <class Elt>
void verify_amalgam_relations(const CompletionOps<Elt>& ops, Rng& rng, Report& rep,
                              int samples = 20) {
    const Fq& F = *ops.F;
    int n = ops.n;
    auto gens = sl2_generators(F);
    auto commutator = [&](const Elt& a, const Elt& ai, const Elt& b, const Elt& bi) {
        return ops.mul(ops.mul(a, b), ops.mul(ai, bi));
    };

    // (1) non-adjacent node images commute elementwise on generators
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            int d = (j - i) % n;
            if (d == 1 || d == n - 1) continue;
            bool ok = true;
            std::string wit;
            for (const auto& a : gens) {
                for (const auto& b : gens) {
                    Elt x = ops.phi(i, a.g, a.ginv);
                    Elt y = ops.phi(j, b.g, b.ginv);
                    if (!(ops.mul(x, y) == ops.mul(y, x))) {
                        ok = false;
                        wit = "L" + std::to_string(i) + " vs L" + std::to_string(j);
                        break;
                    }
                }
                if (!ok) break;
            }
            rep.require(ops.tag + "/nonadjacent-commute/L" + std::to_string(i) + "-L" +
                            std::to_string(j),
                        ok, wit);
        }

    // (2) adjacent pairs: Chevalley commutator relations through the node maps
    for (int k = 1; k <= n; ++k) {
        int kn = k + 1; // phi_{n+1} stands in for node 1 across the closing edge
        bool ok = true;
        std::string wit;
        for (uint32_t lam = 0; lam < F.q() && ok; ++lam)
            for (uint32_t mu = 0; mu < F.q() && ok; ++mu) {
                FMat xp1 = root_element(F, 2, 0, 1, lam);
                FMat xp1i = root_element(F, 2, 0, 1, F.neg(lam));
                FMat xm1 = root_element(F, 2, 1, 0, lam);
                FMat xm1i = root_element(F, 2, 1, 0, F.neg(lam));
                FMat xp2 = root_element(F, 2, 0, 1, mu);
                FMat xp2i = root_element(F, 2, 0, 1, F.neg(mu));
                FMat xm2 = root_element(F, 2, 1, 0, mu);
                FMat xm2i = root_element(F, 2, 1, 0, F.neg(mu));

                Elt a = ops.phi(k, xp1, xp1i), ai = ops.phi(k, xp1i, xp1);
                Elt b = ops.phi(kn, xp2, xp2i), bi = ops.phi(kn, xp2i, xp2);
                Elt c = ops.phi(k, xm1, xm1i), ci = ops.phi(k, xm1i, xm1);
                Elt d = ops.phi(kn, xm2, xm2i), di = ops.phi(kn, xm2i, xm2);

                uint32_t lm = F.mul(lam, mu);
                FMat x13 = root_element(F, 3, 0, 2, lm);
                FMat x13i = root_element(F, 3, 0, 2, F.neg(lm));
                FMat x31 = root_element(F, 3, 2, 0, F.neg(lm));
                FMat x31i = root_element(F, 3, 2, 0, lm);

                // [X12(l), X23(m)] = X13(lm); [X21(l), X32(m)] = X31(-lm)
                auto blame = [&](const char* what, const Elt& got, const Elt& want) {
                    ok = false;
                    wit = std::string(what) + ", edge " + std::to_string(k) + ", lambda=" +
                          std::to_string(lam) + ", mu=" + std::to_string(mu) + ": got " +
                          got.str() + ", want " + want.str();
                };
                Elt uu = commutator(a, ai, b, bi), uu_want = ops.edge(k, x13, x13i);
                if (!(uu == uu_want)) blame("upper-upper commutator", uu, uu_want);
                if (ok) {
                    Elt ll = commutator(c, ci, d, di), ll_want = ops.edge(k, x31, x31i);
                    if (!(ll == ll_want)) blame("lower-lower commutator", ll, ll_want);
                }
                // mixed pairs commute
                if (ok && !(ops.mul(a, d) == ops.mul(d, a)))
                    blame("upper-lower pair", ops.mul(a, d), ops.mul(d, a));
                if (ok && !(ops.mul(c, b) == ops.mul(b, c)))
                    blame("lower-upper pair", ops.mul(c, b), ops.mul(b, c));
            }
        rep.require(ops.tag + "/chevalley-relations/edge-" + std::to_string(k), ok, wit);
    }

    // (2b) edge maps are homomorphisms and restrict to the node maps
    for (int k = 1; k <= n; ++k) {
        bool hom = true, restrict_ok = true;
        for (int it = 0; it < samples; ++it) {
            GroupElt x = random_sln(F, 3, rng), y = random_sln(F, 3, rng);
            Elt ex = ops.edge(k, x.g, x.ginv);
            Elt ey = ops.edge(k, y.g, y.ginv);
            FMat xy = mat_mul(x.g, y.g);
            FMat xyi = mat_mul(y.ginv, x.ginv);
            if (!(ops.mul(ex, ey) == ops.edge(k, xy, xyi))) { hom = false; break; }
            GroupElt a = random_sl2(F, rng);
            FMat up = ff_identity(3, F), upi = ff_identity(3, F);
            FMat lo = ff_identity(3, F), loi = ff_identity(3, F);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    up.at(i, j) = a.g.at(i, j);
                    upi.at(i, j) = a.ginv.at(i, j);
                    lo.at(i + 1, j + 1) = a.g.at(i, j);
                    loi.at(i + 1, j + 1) = a.ginv.at(i, j);
                }
            if (!(ops.edge(k, up, upi) == ops.phi(k, a.g, a.ginv))) restrict_ok = false;
            if (!(ops.edge(k, lo, loi) == ops.phi(k + 1, a.g, a.ginv))) restrict_ok = false;
        }
        rep.require(ops.tag + "/edge-homomorphism/edge-" + std::to_string(k), hom);
        rep.require(ops.tag + "/edge-restriction/edge-" + std::to_string(k), restrict_ok);
    }

    // (3) the closing edge carries exactly the classifying twist
    {
        bool ok = true;
        for (int it = 0; it < 50 && ok; ++it) {
            GroupElt a = random_sl2(F, rng);
            FMat tw = ops.closing_twist(a.g, a.ginv);
            FMat twi = ff_zero(2, 2, F); // 2x2 adjugate inverse, det is 1
            twi.at(0, 0) = tw.at(1, 1);
            twi.at(1, 1) = tw.at(0, 0);
            twi.at(0, 1) = FF(F, F.neg(tw.at(0, 1).v));
            twi.at(1, 0) = FF(F, F.neg(tw.at(1, 0).v));
            if (!(ops.phi(ops.n + 1, a.g, a.ginv) == ops.phi(1, tw, twi))) ok = false;
        }
        rep.require(ops.tag + "/closing-twist-is-" + ops.twist_name, ok);
    }

    // injectivity of node maps on sampled distinct inputs
    {
        bool ok = true;
        for (int it = 0; it < samples && ok; ++it) {
            GroupElt a = random_sl2(F, rng), b = random_sl2(F, rng);
            if (a.g == b.g) continue;
            for (int k = 1; k <= n; ++k)
                if (ops.phi(k, a.g, a.ginv) == ops.phi(k, b.g, b.ginv)) ok = false;
        }
        rep.require(ops.tag + "/node-maps-injective", ok);
    }

    // root group additivity through every node map, exhaustively in lambda
    {
        bool ok = true;
        for (int k = 1; k <= n && ok; ++k)
            for (uint32_t lam = 0; lam < F.q() && ok; ++lam)
                for (uint32_t mu = 0; mu < F.q() && ok; ++mu)
                    for (int sign = 0; sign < 2 && ok; ++sign) {
                        int i = sign, j = 1 - sign;
                        FMat x = root_element(F, 2, i, j, lam);
                        FMat xi = root_element(F, 2, i, j, F.neg(lam));
                        FMat y = root_element(F, 2, i, j, mu);
                        FMat yi = root_element(F, 2, i, j, F.neg(mu));
                        FMat z = root_element(F, 2, i, j, F.add(lam, mu));
                        FMat zi = root_element(F, 2, i, j, F.neg(F.add(lam, mu)));
                        if (!(ops.mul(ops.phi(k, x, xi), ops.phi(k, y, yi)) ==
                              ops.phi(k, z, zi)))
                            ok = false;
                    }
        rep.require(ops.tag + "/root-additivity", ok);
    }
}

/* ------------------------------------------------------------------ */
/* The twisted-Laurent completion for delta in Aut(k)                  */
/* ------------------------------------------------------------------ */

/**
 * Node and edge maps into n x n matrices over k{t,t^-1} with group law given
 * by endomorphism composition.  F is the corner shift with a t in the corner;
 * conjugating by it walks the SL_2 block around the cycle, and the full loop
 * returns twisted by delta^-1.
 */
struct LDeltaCompletion {
    int n;
    const Fq* F;
    FieldAut delta;
    std::vector<EndoR> fpow, fipow; // composition powers of the corner shift

    LDeltaCompletion(int n_, const Fq& field, int frob_e) : n(n_), F(&field), delta(field, frob_e) {
        EndoR shift = EndoR::zero(n, n, SkewLaurent::zero(field, delta));
        EndoR shift_inv = shift;
        for (int j = 0; j + 1 < n; ++j) shift.at(j, j + 1) = SkewLaurent::one(field, delta);
        shift.at(n - 1, 0) = SkewLaurent::monomial(field, delta, field.one(), 1);
        for (int j = 0; j + 1 < n; ++j) shift_inv.at(j + 1, j) = SkewLaurent::one(field, delta);
        shift_inv.at(0, n - 1) = SkewLaurent::monomial(field, delta, field.one(), -1);
        EndoR id = endo_identity(n, field, delta);
        fpow.push_back(id);
        fipow.push_back(id);
        for (int k = 1; k <= n + 1; ++k) {
            fpow.push_back(compose(fpow.back(), shift));
            fipow.push_back(compose(fipow.back(), shift_inv));
        }
    }

    EndoR conj(const EndoR& x, int k) const {
        return compose(fipow[static_cast<size_t>(k)],
                       compose(x, fpow[static_cast<size_t>(k)]));
    }

    EndoR embed2(const FMat& A) const {
        EndoR out = endo_identity(n, *F, delta);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                out.at(i, j) = SkewLaurent::constant(*F, delta, A.at(i, j).v);
        return out;
    }

    EndoR embed3(const FMat& X) const {
        EndoR out = endo_identity(n, *F, delta);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                out.at(i, j) = SkewLaurent::constant(*F, delta, X.at(i, j).v);
        return out;
    }

    EndoR phi(int k, const FMat& A) const { return conj(embed2(A), k - 1); }
    EndoR edge(int k, const FMat& X) const { return conj(embed3(X), k - 1); }

    /// the corner node map in the printed normal form, as a fixture
    EndoR phi_n_printed(const FMat& A) const {
        const Fq& f = *F;
        uint32_t a = A.at(0, 0).v, b = A.at(0, 1).v, c = A.at(1, 0).v, d = A.at(1, 1).v;
        EndoR out = endo_identity(n, f, delta);
        out.at(0, 0) = SkewLaurent::constant(f, delta, delta.apply_pow(d, -1));
        out.at(0, n - 1) = SkewLaurent::monomial(f, delta, c, -1);
        out.at(n - 1, 0) = SkewLaurent::monomial(f, delta, delta.apply_pow(b, -1), 1);
        out.at(n - 1, n - 1) = SkewLaurent::constant(f, delta, a);
        return out;
    }

    CompletionOps<EndoR> ops() const {
        CompletionOps<EndoR> o;
        o.n = n;
        o.F = F;
        o.tag = delta.is_identity() ? "Lid" : "Ldelta";
        o.one = endo_identity(n, *F, delta);
        o.mul = [](const EndoR& a, const EndoR& b) { return compose(a, b); };
        o.phi = [this](int k, const FMat& A, const FMat&) { return phi(k, A); };
        o.edge = [this](int k, const FMat& X, const FMat&) { return edge(k, X); };
        const Fq* field = F;
        FieldAut d = delta;
        o.closing_twist = [field, d](const FMat& A, const FMat&) {
            return ff_aut(A, FieldAut(*field, -d.e));
        };
        o.twist_name = "delta-inverse";
        return o;
    }
};

/* ------------------------------------------------------------------ */
/* The form completion for delta = tau                                 */
/* ------------------------------------------------------------------ */

/**
 * Node and edge maps into SL_{2n}(k[t,t^-1]) built as g * theta(g), where
 * theta is the adjoint involution of the sesquilinear form with Gram matrix
 * [[0, I],[t I, 0]].  The two factors live on complementary blocks except at
 * the closing edge, where the t-twists appear.
 */
struct LTauCompletion {
    int n;          // nodes; matrices have size 2n
    const Fq* F;
    Mat<Laurent> B, Bt, Btinv;
    std::vector<Mat<Laurent>> fpow, fipow; // powers of the 2n-cycle

    LTauCompletion(int n_, const Fq& field) : n(n_), F(&field) {
        int N = 2 * n;
        Laurent z = Laurent::zero(field);
        B = Mat<Laurent>::zero(N, N, z);
        for (int i = 0; i < n; ++i) {
            B.at(i, n + i) = Laurent::one(field);
            B.at(n + i, i) = Laurent::t(field);
        }
        Bt = B.transposed();
        // closed-form inverse of the transposed Gram matrix
        Btinv = Mat<Laurent>::zero(N, N, z);
        for (int i = 0; i < n; ++i) {
            Btinv.at(i, n + i) = Laurent::one(field);
            Btinv.at(n + i, i) = Laurent::monomial(field, field.one(), -1);
        }
        Mat<Laurent> shift = Mat<Laurent>::zero(N, N, z);
        for (int j = 0; j + 1 < N; ++j) shift.at(j, j + 1) = Laurent::one(field);
        shift.at(N - 1, 0) = Laurent::one(field);
        Mat<Laurent> id = Mat<Laurent>::identity(N, z);
        fpow.push_back(id);
        fipow.push_back(id);
        for (int k = 1; k <= n + 1; ++k) {
            fpow.push_back(mat_mul(fpow.back(), shift));
            fipow.push_back(mat_mul(shift.transposed(), fipow.back()));
        }
    }

    Mat<Laurent> theta(const Mat<Laurent>& g_inv) const {
        return mat_mul(Btinv, mat_sigma(g_inv.transposed()), Bt);
    }

    Mat<Laurent> embed(const FMat& X, int size_in) const {
        Mat<Laurent> out = Mat<Laurent>::identity(2 * n, Laurent::zero(*F));
        for (int i = 0; i < size_in; ++i)
            for (int j = 0; j < size_in; ++j)
                out.at(i, j) = Laurent::constant(*F, X.at(i, j).v);
        return out;
    }

    Mat<Laurent> conj(const Mat<Laurent>& x, int k) const {
        return mat_mul(fipow[static_cast<size_t>(k)], x, fpow[static_cast<size_t>(k)]);
    }

    Mat<Laurent> phi(int k, const FMat& A, const FMat& Ai) const {
        Mat<Laurent> x = conj(embed(A, 2), k - 1);
        Mat<Laurent> xi = conj(embed(Ai, 2), k - 1);
        return mat_mul(x, theta(xi));
    }

    Mat<Laurent> edge(int k, const FMat& X, const FMat& Xi) const {
        Mat<Laurent> x = conj(embed(X, 3), k - 1);
        Mat<Laurent> xi = conj(embed(Xi, 3), k - 1);
        return mat_mul(x, theta(xi));
    }

    /// printed corner matrix, as a fixture to compare with the generic formula
    Mat<Laurent> phi_n_printed(const FMat& A) const {
        const Fq& f = *F;
        uint32_t a = A.at(0, 0).v, b = A.at(0, 1).v, c = A.at(1, 0).v, d = A.at(1, 1).v;
        int N = 2 * n;
        Mat<Laurent> out = Mat<Laurent>::identity(N, Laurent::zero(f));
        out.at(0, 0) = Laurent::constant(f, a);
        out.at(0, N - 1) = Laurent::monomial(f, f.neg(b), 1);
        out.at(n - 1, n - 1) = Laurent::constant(f, a);
        out.at(n - 1, n) = Laurent::constant(f, b);
        out.at(n, n - 1) = Laurent::constant(f, c);
        out.at(n, n) = Laurent::constant(f, d);
        out.at(N - 1, 0) = Laurent::monomial(f, f.neg(c), -1);
        out.at(N - 1, N - 1) = Laurent::constant(f, d);
        return out;
    }

    CompletionOps<Mat<Laurent>> ops() const {
        CompletionOps<Mat<Laurent>> o;
        o.n = n;
        o.F = F;
        o.tag = "Ltau";
        o.one = Mat<Laurent>::identity(2 * n, Laurent::zero(*F));
        o.mul = [](const Mat<Laurent>& a, const Mat<Laurent>& b) { return mat_mul(a, b); };
        o.phi = [this](int k, const FMat& A, const FMat& Ai) { return phi(k, A, Ai); };
        o.edge = [this](int k, const FMat& X, const FMat& Xi) { return edge(k, X, Xi); };
        o.closing_twist = [](const FMat&, const FMat& Ai) { return Ai.transposed(); };
        o.twist_name = "tau";
        return o;
    }
};

} // namespace ctlab
