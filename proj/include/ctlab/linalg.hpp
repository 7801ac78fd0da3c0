#pragma once

/**
 * @file linalg.hpp
 * @brief Gaussian elimination utilities over GF(q): row echelon forms,
 *        kernels, subspaces of small vector spaces, and SL_n generators.
 */

#include <optional>
#include <vector>

#include "ctlab/matrix.hpp"
#include "ctlab/rng.hpp"

namespace ctlab {

using FMat = Mat<FF>;

inline FMat ff_zero(int r, int c, const Fq& F) { return FMat::zero(r, c, FF(F, 0)); }
inline FMat ff_identity(int n, const Fq& F) { return FMat::identity(n, FF(F, 0)); }

/// Reduced row echelon form; returns the rank.
inline int rref(FMat& m) {
    const Fq& F = *m.a[0].F;
    int rank = 0;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int piv = -1;
        for (int r = rank; r < m.rows; ++r)
            if (!m.at(r, col).is_zero()) { piv = r; break; }
        if (piv < 0) continue;
        for (int j = 0; j < m.cols; ++j) std::swap(m.at(rank, j), m.at(piv, j));
        uint32_t inv = F.inv(m.at(rank, col).v);
        for (int j = 0; j < m.cols; ++j) m.at(rank, j).v = F.mul(m.at(rank, j).v, inv);
        for (int r = 0; r < m.rows; ++r) {
            if (r == rank || m.at(r, col).is_zero()) continue;
            uint32_t f = m.at(r, col).v;
            for (int j = 0; j < m.cols; ++j)
                m.at(r, j).v = F.sub(m.at(r, j).v, F.mul(f, m.at(rank, j).v));
        }
        ++rank;
    }
    // drop zero rows
    FMat out = ff_zero(rank, m.cols, F);
    for (int r = 0; r < rank; ++r)
        for (int j = 0; j < m.cols; ++j) out.at(r, j) = m.at(r, j);
    m = out;
    return rank;
}

/// Basis of the right kernel, rows of the result.
inline FMat kernel(const FMat& m0) {
    const Fq& F = *m0.a[0].F;
    FMat m = m0;
    rref(m);
    std::vector<int> pivot_col;
    std::vector<bool> is_pivot(static_cast<size_t>(m0.cols), false);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c)
            if (!m.at(r, c).is_zero()) {
                pivot_col.push_back(c);
                is_pivot[static_cast<size_t>(c)] = true;
                break;
            }
    int free_cnt = m0.cols - static_cast<int>(pivot_col.size());
    FMat ker = ff_zero(free_cnt, m0.cols, F);
    int row = 0;
    for (int c = 0; c < m0.cols; ++c) {
        if (is_pivot[static_cast<size_t>(c)]) continue;
        ker.at(row, c) = FF(F, F.one());
        for (size_t r = 0; r < pivot_col.size(); ++r)
            ker.at(row, pivot_col[r]) = FF(F, F.neg(m.at(static_cast<int>(r), c).v));
        ++row;
    }
    return ker;
}

/**
 * A subspace of GF(q)^d held as an RREF basis (rows).  The canonical form
 * makes equality a plain comparison.
 */
struct Subspace {
    const Fq* F = nullptr;
    int d = 0;  // ambient dimension
    FMat basis; // rref, rows = dim (possibly 0 rows)

    static Subspace span(const Fq& F, int ambient, const FMat& vectors) {
        FMat m = vectors;
        rref(m);
        return Subspace{&F, ambient, m};
    }

    int dim() const { return basis.rows; }

    bool contains_row(const FMat& vs, int row) const {
        FMat m = ff_zero(basis.rows + 1, d, *F);
        for (int r = 0; r < basis.rows; ++r)
            for (int c = 0; c < d; ++c) m.at(r, c) = basis.at(r, c);
        for (int c = 0; c < d; ++c) m.at(basis.rows, c) = vs.at(row, c);
        FMat copy = m;
        return rref(copy) == basis.rows;
    }

    bool contains(const Subspace& other) const {
        for (int r = 0; r < other.basis.rows; ++r)
            if (!contains_row(other.basis, r)) return false;
        return true;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.d == b.d && a.basis == b.basis;
    }

    Subspace sum(const Subspace& other) const {
        FMat m = ff_zero(basis.rows + other.basis.rows, d, *F);
        for (int r = 0; r < basis.rows; ++r)
            for (int c = 0; c < d; ++c) m.at(r, c) = basis.at(r, c);
        for (int r = 0; r < other.basis.rows; ++r)
            for (int c = 0; c < d; ++c) m.at(basis.rows + r, c) = other.basis.at(r, c);
        return span(*F, d, m);
    }

    /// image under an invertible matrix acting on column vectors
    Subspace image(const FMat& g) const {
        FMat m = ff_zero(std::max(basis.rows, 1), d, *F);
        for (int r = 0; r < basis.rows; ++r)
            for (int i = 0; i < g.rows; ++i) {
                FF acc(*F, 0);
                for (int j = 0; j < g.cols; ++j) acc = acc + g.at(i, j) * basis.at(r, j);
                m.at(r, i) = acc;
            }
        if (basis.rows == 0) return span(*F, d, ff_zero(1, d, *F));
        return span(*F, d, m);
    }
};

/// Intersection via the kernel of the stacked dual conditions.
inline Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
    const Fq& F = *a.F;
    int d = a.d;
    if (a.dim() == 0 || b.dim() == 0) return Subspace::span(F, d, ff_zero(1, d, F));
    // x in A cap B iff x = u^T A = v^T B; solve [A^T | -B^T] kernel
    FMat m = ff_zero(d, a.dim() + b.dim(), F);
    for (int c = 0; c < a.dim(); ++c)
        for (int r = 0; r < d; ++r) m.at(r, c) = a.basis.at(c, r);
    for (int c = 0; c < b.dim(); ++c)
        for (int r = 0; r < d; ++r) m.at(r, a.dim() + c) = FF(F, F.neg(b.basis.at(c, r).v));
    FMat ker = kernel(m);
    if (ker.rows == 0) return Subspace::span(F, d, ff_zero(1, d, F));
    FMat vecs = ff_zero(ker.rows, d, F);
    for (int r = 0; r < ker.rows; ++r)
        for (int j = 0; j < d; ++j) {
            FF acc(F, 0);
            for (int c = 0; c < a.dim(); ++c) acc = acc + ker.at(r, c) * a.basis.at(c, j);
            vecs.at(r, j) = acc;
        }
    return Subspace::span(F, d, vecs);
}

/// Generators of SL_2(q): root elements over a prime-field basis plus a torus
/// element for a generator of the multiplicative group.
struct GroupElt {
    FMat g, ginv;
};

/// Basis of GF(p^m) over GF(p): the powers 1, x, ..., x^(m-1) of the
/// polynomial generator, whose index encoding is p^i.
inline std::vector<uint32_t> prime_field_basis(const Fq& F) {
    std::vector<uint32_t> basis;
    uint32_t b = F.one();
    for (int i = 0; i < F.m(); ++i) {
        basis.push_back(b);
        b *= static_cast<uint32_t>(F.p()); // next power of x in index encoding
    }
    return basis;
}

inline std::vector<GroupElt> sl2_generators(const Fq& F) {
    std::vector<GroupElt> out;
    for (uint32_t lam : prime_field_basis(F)) {
        FMat up = ff_identity(2, F), upi = ff_identity(2, F);
        up.at(0, 1) = FF(F, lam);
        upi.at(0, 1) = FF(F, F.neg(lam));
        out.push_back({up, upi});
        FMat lo = ff_identity(2, F), loi = ff_identity(2, F);
        lo.at(1, 0) = FF(F, lam);
        loi.at(1, 0) = FF(F, F.neg(lam));
        out.push_back({lo, loi});
    }
    if (F.q() > 2) {
        uint32_t u = F.generator();
        FMat h = ff_zero(2, 2, F), hi = ff_zero(2, 2, F);
        h.at(0, 0) = FF(F, u);
        h.at(1, 1) = FF(F, F.inv(u));
        hi.at(0, 0) = FF(F, F.inv(u));
        hi.at(1, 1) = FF(F, u);
        out.push_back({h, hi});
    }
    return out;
}

/// Uniform SL_2(q) element by rejection; inverse comes for free.
inline GroupElt random_sl2(const Fq& F, Rng& rng) {
    for (;;) {
        uint32_t a = static_cast<uint32_t>(rng.below(F.q()));
        uint32_t b = static_cast<uint32_t>(rng.below(F.q()));
        uint32_t c = static_cast<uint32_t>(rng.below(F.q()));
        uint32_t d = static_cast<uint32_t>(rng.below(F.q()));
        if (F.sub(F.mul(a, d), F.mul(b, c)) != F.one()) continue;
        FMat g = ff_zero(2, 2, F), gi = ff_zero(2, 2, F);
        g.at(0, 0) = FF(F, a);
        g.at(0, 1) = FF(F, b);
        g.at(1, 0) = FF(F, c);
        g.at(1, 1) = FF(F, d);
        gi.at(0, 0) = FF(F, d);
        gi.at(0, 1) = FF(F, F.neg(b));
        gi.at(1, 0) = FF(F, F.neg(c));
        gi.at(1, 1) = FF(F, a);
        return {g, gi};
    }
}

/// Root element X_{ij}(lambda) = I + lambda E_{ij} of SL_n(q).
inline FMat root_element(const Fq& F, int n, int i, int j, uint32_t lam) {
    FMat g = ff_identity(n, F);
    g.at(i, j) = FF(F, lam);
    return g;
}

/// Random SL_n(q) element as a product of root elements and a torus element.
inline GroupElt random_sln(const Fq& F, int n, Rng& rng, int word_len = 8) {
    FMat g = ff_identity(n, F), gi = ff_identity(n, F);
    for (int w = 0; w < word_len; ++w) {
        int i = rng.range(0, n - 1);
        int j = rng.range(0, n - 2);
        if (j >= i) ++j;
        uint32_t lam = static_cast<uint32_t>(rng.below(F.q()));
        FMat x = root_element(F, n, i, j, lam);
        FMat xi = root_element(F, n, i, j, F.neg(lam));
        g = mat_mul(g, x);
        gi = mat_mul(xi, gi);
    }
    return {g, gi};
}

/// transpose-inverse, the automorphism tau
inline FMat tau_of(const FMat& /*g*/, const FMat& ginv) { return ginv.transposed(); }

/// coefficientwise field automorphism
inline FMat ff_aut(const FMat& m, const FieldAut& a) {
    FMat r = m;
    for (auto& v : r.a) v.v = a.apply(v.v);
    return r;
}

} // namespace ctlab
