#pragma once

/**
 * @file specialize.hpp
 * @brief Evaluation maps out of the Laurent-coefficient groups: t -> a into
 *        finite classical groups (alternating, symmetric and hermitian
 *        targets), and t -> u into matrix models of cyclic algebras.
 */

#include "ctlab/endo.hpp"
#include "ctlab/form.hpp"

namespace ctlab {

/// Evaluation point a in GF(q^e) with the conjugation s_a mapping a to a^-1.
struct SpecPoint {
    const Fq* base;     // coefficient field GF(q)
    const Fq* ext;      // GF(q^e) containing a
    uint32_t a = 0;
    int conj_e = 0;     // s_a = Frobenius^conj_e on ext
    std::string label;

    const FieldEmbed& embed() const { return FieldEmbed::get(*base, *ext); }
    FieldAut conj() const { return FieldAut(*ext, conj_e); }

    static SpecPoint at_minus_one(const Fq& F) {
        return {&F, &F, F.neg(F.one()), 0, "-1"};
    }
    static SpecPoint at_one(const Fq& F) { return {&F, &F, F.one(), 0, "1"}; }

    /// primitive (q+1)-st root of unity in GF(q^2), conjugated by x -> x^q
    static SpecPoint at_zeta(const Fq& F) {
        const Fq& E = Fq::get(F.p(), 2 * F.m());
        uint32_t zeta = E.exp_of((E.q() - 1) / (F.q() + 1));
        return {&F, &E, zeta, F.m(), "zeta"};
    }

    /// s_a(eps_a(f)) = eps_a(sigma(f)) must hold for the point to be usable
    bool compatible(const Laurent& f) const {
        uint32_t lhs = conj().apply(laurent_eval(f, *ext, a, embed()));
        uint32_t rhs = laurent_eval(laurent_sigma(f), *ext, a, embed());
        return lhs == rhs;
    }
};

/// Entrywise evaluation of a Laurent matrix at the point.
inline FMat specialize_matrix(const Mat<Laurent>& g, const SpecPoint& pt) {
    if (pt.a == 0) throw std::domain_error("specialize_matrix: a must be nonzero");
    FMat out = ff_zero(g.rows, g.cols, *pt.ext);
    for (int i = 0; i < g.rows; ++i)
        for (int j = 0; j < g.cols; ++j)
            out.at(i, j) = FF(*pt.ext, laurent_eval(g.at(i, j), *pt.ext, pt.a, pt.embed()));
    return out;
}

/// Gram matrix of the specialized form: [[0, I],[a I, 0]] over GF(q^e).
inline FMat specialized_gram(int n, const SpecPoint& pt) {
    FMat B = ff_zero(2 * n, 2 * n, *pt.ext);
    for (int i = 0; i < n; ++i) {
        B.at(i, n + i) = FF(*pt.ext, pt.ext->one());
        B.at(n + i, i) = FF(*pt.ext, pt.a);
    }
    return B;
}

/// g preserves M in the twisted sense: g^T M g^(s_a) = M.
inline bool preserves_form(const FMat& g, const FMat& M, const FieldAut& conj) {
    return mat_mul(g.transposed(), mat_mul(M, ff_aut(g, conj))) == M;
}

enum class FormKind { alternating, symmetric, hermitian, unclassified };

inline std::string form_kind_name(FormKind k) {
    switch (k) {
        case FormKind::alternating: return "alternating";
        case FormKind::symmetric: return "symmetric";
        case FormKind::hermitian: return "hermitian";
        default: return "unclassified";
    }
}

inline bool is_alternating(const FMat& M) {
    const Fq& F = *M.a[0].F;
    for (int i = 0; i < M.rows; ++i) {
        if (!M.at(i, i).is_zero()) return false;
        for (int j = 0; j < M.cols; ++j)
            if (M.at(i, j).v != F.neg(M.at(j, i).v)) return false;
    }
    return true;
}

inline bool is_symmetric(const FMat& M) { return M == M.transposed(); }

inline bool is_hermitian(const FMat& M, const FieldAut& conj) {
    return M == ff_aut(M.transposed(), conj);
}

/**
 * Result of the hermitian standardization at a = zeta: a scaling element b
 * and the verified-hermitian Gram matrix it produces, with the search route
 * that found it.
 */
struct RescaleResult {
    uint32_t b = 0;
    const Fq* field = nullptr; // field of b and of the Gram entries
    FMat gram;                 // verified hermitian
    std::string mode;          // "square-root" or "norm-equation"
    bool square_root_worked = false;
};

/**
 * Search for b with b^2 = zeta whose basis rescaling f_i -> b f_i makes the
 * specialized Gram hermitian; the square-root candidates are tried in GF(q^2)
 * and then GF(q^4) as stated, and if none passes the hermitian test the
 * search widens to the least b solving b^(q-1) = zeta, which rescales the
 * whole form instead.  The hermitian property of the returned Gram is
 * verified, never assumed.
 */
inline RescaleResult find_rescale_b(const Fq& base, const SpecPoint& zeta_pt, int n) {
    const Fq& E = *zeta_pt.ext; // GF(q^2)
    uint32_t zeta = zeta_pt.a;
    auto gram_for = [&](const Fq& field, uint32_t zeta_in_field, uint32_t b,
                        int conj_e) -> FMat {
        // D = diag(I, bI): Gram' = D^T B(zeta) D^(conj)
        FMat B = ff_zero(2 * n, 2 * n, field);
        FieldAut conj(field, conj_e);
        for (int i = 0; i < n; ++i) {
            B.at(i, n + i) = FF(field, conj.apply(b));
            B.at(n + i, i) = FF(field, field.mul(b, zeta_in_field));
        }
        return B;
    };
    // candidates b in GF(q^2) with b^2 = zeta
    for (uint32_t b = 1; b < E.q(); ++b) {
        if (E.mul(b, b) != zeta) continue;
        FMat M = gram_for(E, zeta, b, base.m());
        if (is_hermitian(M, FieldAut(E, base.m()))) {
            return {b, &E, M, "square-root", true};
        }
    }
    // then GF(q^4), conjugated by the order-2 automorphism x -> x^(q^2)
    const Fq& E4 = Fq::get(base.p(), 4 * base.m());
    const FieldEmbed& up = FieldEmbed::get(E, E4);
    uint32_t zeta4 = up(zeta);
    for (uint32_t b = 1; b < E4.q(); ++b) {
        if (E4.mul(b, b) != zeta4) continue;
        FMat M = gram_for(E4, zeta4, b, 2 * base.m());
        if (is_hermitian(M, FieldAut(E4, 2 * base.m()))) {
            return {b, &E4, M, "square-root", true};
        }
    }
    // norm-equation fallback: b^(q-1) = zeta, scaling the form by b
    for (uint32_t b = 1; b < E.q(); ++b) {
        if (E.pow(b, base.q() - 1) != zeta) continue;
        FMat M = ff_zero(2 * n, 2 * n, E);
        for (int i = 0; i < n; ++i) {
            M.at(i, n + i) = FF(E, b);
            M.at(n + i, i) = FF(E, E.mul(b, zeta));
        }
        if (is_hermitian(M, FieldAut(E, base.m()))) {
            return {b, &E, M, "norm-equation", false};
        }
    }
    throw std::runtime_error("find_rescale_b: no hermitizing element found");
}

struct FormClassification {
    FormKind kind = FormKind::unclassified;
    FMat gram;
    std::string note;
};

/// Classify the target form of the specialization at the given point.
inline FormClassification classify_specialized_form(const SpecPoint& pt, int n) {
    const Fq& E = *pt.ext;
    FMat B = specialized_gram(n, pt);
    FormClassification out;
    out.gram = B;
    if (pt.a == E.neg(E.one()) && pt.conj_e == 0) {
        if (E.p() == 2) {
            // -1 = 1 in characteristic 2: the two specializations coincide
            out.kind = is_alternating(B) ? FormKind::alternating : FormKind::symmetric;
            out.note = "char 2: a = -1 = 1, symplectic and orthogonal targets collapse";
            return out;
        }
        if (is_alternating(B)) {
            out.kind = FormKind::alternating;
            return out;
        }
    }
    if (pt.a == E.one() && pt.conj_e == 0) {
        if (is_symmetric(B)) {
            out.kind = FormKind::symmetric;
            return out;
        }
    }
    if (pt.conj_e != 0 && E.mul(pt.a, FieldAut(E, pt.conj_e).apply(pt.a)) == E.one()) {
        RescaleResult r = find_rescale_b(*pt.base, pt, n);
        out.kind = FormKind::hermitian;
        out.gram = r.gram;
        out.note = "hermitian after " + r.mode + " rescale with b = " + std::to_string(r.b);
        return out;
    }
    out.note = "no standard shape matched; raw specialized Gram returned";
    return out;
}

/**
 * Dimension of the linear span over GF(q) of all words of length <= radius in
 * the generators; reaching d^2 certifies absolute irreducibility of the
 * generated algebra.
 */
inline int algebra_span_dim(const std::vector<FMat>& gens, int radius) {
    if (gens.empty()) return 0;
    const Fq& F = *gens[0].a[0].F;
    int d = gens[0].rows;
    int dim2 = d * d;
    // row-reduced basis of the span, stored as flattened vectors
    std::vector<std::vector<uint32_t>> basis;
    std::vector<int> lead;
    auto reduce_insert = [&](std::vector<uint32_t> v) -> bool {
        for (size_t b = 0; b < basis.size(); ++b) {
            if (v[static_cast<size_t>(lead[b])] == 0) continue;
            uint32_t f = v[static_cast<size_t>(lead[b])];
            for (int i = 0; i < dim2; ++i)
                v[static_cast<size_t>(i)] =
                    F.sub(v[static_cast<size_t>(i)], F.mul(f, basis[b][static_cast<size_t>(i)]));
        }
        int l = -1;
        for (int i = 0; i < dim2; ++i)
            if (v[static_cast<size_t>(i)] != 0) { l = i; break; }
        if (l < 0) return false;
        uint32_t inv = F.inv(v[static_cast<size_t>(l)]);
        for (int i = 0; i < dim2; ++i)
            v[static_cast<size_t>(i)] = F.mul(v[static_cast<size_t>(i)], inv);
        basis.push_back(std::move(v));
        lead.push_back(l);
        return true;
    };
    auto flat = [&](const FMat& m) {
        std::vector<uint32_t> v(static_cast<size_t>(dim2));
        for (int i = 0; i < dim2; ++i) v[static_cast<size_t>(i)] = m.a[static_cast<size_t>(i)].v;
        return v;
    };
    std::vector<FMat> frontier{ff_identity(d, F)};
    reduce_insert(flat(frontier[0]));
    for (int r = 1; r <= radius && static_cast<int>(basis.size()) < dim2; ++r) {
        std::vector<FMat> next;
        for (const auto& w : frontier)
            for (const auto& g : gens) {
                FMat m = mat_mul(w, g);
                if (reduce_insert(flat(m))) next.push_back(m);
            }
        if (next.empty()) break;
        frontier = std::move(next);
    }
    return static_cast<int>(basis.size());
}

/* ------------------------------------------------------------------ */
/* Cyclic algebra models                                               */
/* ------------------------------------------------------------------ */

/**
 * Matrix model of the algebra generated by k and u with u^s = a and
 * x u = u x^delta: lambda(x) is diagonal with the delta-orbit of x and
 * lambda(u) the cyclic shift with a in the corner.
 */
struct CyclicAlgebraRep {
    const Fq* F;
    FieldAut delta;
    int s;
    uint32_t a; // must lie in the fixed field of delta

    CyclicAlgebraRep(const Fq& field, const FieldAut& d, uint32_t a_)
        : F(&field), delta(d), s(d.order()), a(a_) {
        if (!delta.fixes(a))
            throw std::invalid_argument("CyclicAlgebraRep: a not fixed by delta");
    }

    FMat lambda_x(uint32_t x) const {
        FMat m = ff_zero(s, s, *F);
        uint32_t cur = x;
        for (int i = 0; i < s; ++i) {
            m.at(i, i) = FF(*F, cur);
            cur = delta.apply(cur);
        }
        return m;
    }

    FMat lambda_u() const {
        FMat m = ff_zero(s, s, *F);
        for (int i = 0; i + 1 < s; ++i) m.at(i + 1, i) = FF(*F, F->one());
        m.at(0, s - 1) = FF(*F, a);
        return m;
    }
};

/**
 * Specialize an endomorphism matrix over the twisted ring through t -> u:
 * evaluate the embedding image at T = a and reorder the basis so each ring
 * entry becomes one s x s block.  This is a homomorphism for the composition
 * product because the embedding is and evaluation at the central T is.
 */
inline FMat cyclic_specialize(const EndoR& g, const CyclicAlgebraRep& rep) {
    if (g.a[0].delta.e != rep.delta.e || g.a[0].F != rep.F)
        throw std::invalid_argument("cyclic_specialize: twist mismatch");
    const Fq& F = *rep.F;
    int n = g.rows, s = rep.s;
    Mat<Laurent> img = rho_embed(g);
    const FieldEmbed& self = FieldEmbed::get(F, F);
    // basis index l*n + j reorders to j*s + l (module index major)
    FMat out = ff_zero(n * s, n * s, F);
    for (int l = 0; l < s; ++l)
        for (int j = 0; j < n; ++j)
            for (int r = 0; r < s; ++r)
                for (int i = 0; i < n; ++i)
                    out.at(i * s + r, j * s + l) =
                        FF(F, laurent_eval(img.at(r * n + i, l * n + j), F, rep.a, self));
    return out;
}

} // namespace ctlab
