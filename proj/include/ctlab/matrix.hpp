#pragma once

/**
 * @file matrix.hpp
 * @brief Dense matrices over the library's exact rings, with division-free
 *        determinants and adjugate inverses.
 *
 * Mat<T> works for any coefficient type providing +, -, *, ==, zero_like()
 * and one_like().  Ordinary matrix products are only meaningful over the
 * commutative coefficients (FF, Laurent); endomorphism composition over the
 * twisted ring lives in endo.hpp.
 */

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctlab/fq.hpp"
#include "ctlab/laurent.hpp"

namespace ctlab {

template <class T>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int r, int c, const T& fill) : rows(r), cols(c), a(static_cast<size_t>(r) * c, fill) {}

    static Mat zero(int r, int c, const T& proto) { return Mat(r, c, proto.zero_like()); }
    static Mat identity(int n, const T& proto) {
        Mat m = zero(n, n, proto);
        for (int i = 0; i < n; ++i) m.at(i, i) = proto.one_like();
        return m;
    }

    T& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const T& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    bool is_square() const { return rows == cols; }

    friend Mat operator+(const Mat& x, const Mat& y) {
        if (x.rows != y.rows || x.cols != y.cols)
            throw std::invalid_argument("Mat: shape mismatch");
        Mat r = x;
        for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
        return r;
    }

    friend Mat operator-(const Mat& x, const Mat& y) {
        if (x.rows != y.rows || x.cols != y.cols)
            throw std::invalid_argument("Mat: shape mismatch");
        Mat r = x;
        for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
        return r;
    }

    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
    friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }

    Mat transposed() const {
        Mat r(cols, rows, a.empty() ? T() : a[0]);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    Mat mapped(const std::function<T(const T&)>& f) const {
        Mat r = *this;
        for (auto& v : r.a) v = f(v);
        return r;
    }

    std::string str() const {
        std::string s = "[";
        for (int i = 0; i < rows; ++i) {
            s += i ? "; " : "";
            for (int j = 0; j < cols; ++j) s += (j ? ", " : "") + entry_str(at(i, j));
        }
        return s + "]";
    }

private:
    static std::string entry_str(const FF& v) { return v.str(); }
    static std::string entry_str(const Laurent& v) { return v.str(); }
    static std::string entry_str(const SkewLaurent& v) { return v.str(); }
};

/// Ordinary matrix product; valid over commutative coefficients.
template <class T>
Mat<T> mat_mul(const Mat<T>& x, const Mat<T>& y) {
    if (x.cols != y.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    Mat<T> r = Mat<T>::zero(x.rows, y.cols, x.a[0]);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const T& v = x.at(i, k);
            if (v.is_zero()) continue;
            for (int j = 0; j < y.cols; ++j) {
                const T& w = y.at(k, j);
                if (w.is_zero()) continue;
                r.at(i, j) = r.at(i, j) + v * w;
            }
        }
    return r;
}

template <class T>
Mat<T> mat_mul(const Mat<T>& x, const Mat<T>& y, const Mat<T>& z) {
    return mat_mul(mat_mul(x, y), z);
}

template <class T>
Mat<T> mat_scale(const Mat<T>& x, const T& s) {
    Mat<T> r = x;
    for (auto& v : r.a) v = v * s;
    return r;
}

/// Recursive cofactor expansion along the first column.
template <class T>
T det_cofactor(const Mat<T>& m) {
    if (!m.is_square()) throw std::invalid_argument("det: not square");
    int n = m.rows;
    if (n == 1) return m.at(0, 0);
    T acc = m.a[0].zero_like();
    for (int i = 0; i < n; ++i) {
        if (m.at(i, 0).is_zero()) continue;
        Mat<T> sub = Mat<T>::zero(n - 1, n - 1, m.a[0]);
        for (int r = 0, rr = 0; r < n; ++r) {
            if (r == i) continue;
            for (int c = 1; c < n; ++c) sub.at(rr, c - 1) = m.at(r, c);
            ++rr;
        }
        T term = m.at(i, 0) * det_cofactor(sub);
        acc = (i % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

/**
 * Division-free determinant by dynamic programming over column subsets.
 * O(n * 2^n) ring products; used as an independent oracle and for adjugates.
 */
template <class T>
T det_subsets(const Mat<T>& m) {
    if (!m.is_square()) throw std::invalid_argument("det: not square");
    int n = m.rows;
    std::vector<T> d(size_t(1) << n, m.a[0].zero_like());
    d[0] = m.a[0].one_like();
    std::vector<int> popcnt(size_t(1) << n, 0);
    for (size_t s = 1; s < d.size(); ++s) popcnt[s] = popcnt[s >> 1] + static_cast<int>(s & 1);
    for (size_t s = 1; s < d.size(); ++s) {
        int row = popcnt[s] - 1;
        T acc = m.a[0].zero_like();
        int seen = 0;
        for (int j = 0; j < n; ++j) {
            if (!(s & (size_t(1) << j))) continue;
            if (!m.at(row, j).is_zero()) {
                T term = m.at(row, j) * d[s ^ (size_t(1) << j)];
                acc = ((row + seen) % 2 == 0) ? acc + term : acc - term;
            }
            ++seen;
        }
        d[s] = acc;
    }
    return d[d.size() - 1];
}

/// Exact division of Laurent polynomials when the quotient is known to exist.
inline Laurent laurent_divide_exact(const Laurent& num, const Laurent& den) {
    if (den.is_zero()) throw std::domain_error("laurent_divide_exact: zero divisor");
    if (num.is_zero()) return num;
    const Fq& F = *num.F;
    Laurent r = num;
    int qlo = num.lo() - den.lo();
    uint32_t dlead_inv = F.inv(den.c[0]); // low-order coefficient, nonzero in canonical form
    int qlen = static_cast<int>(num.c.size()) - static_cast<int>(den.c.size()) + 1;
    if (qlen <= 0) throw std::domain_error("laurent_divide_exact: not divisible");
    std::vector<uint32_t> q(static_cast<size_t>(qlen), 0);
    for (int k = 0; k < qlen; ++k) {
        uint32_t f = F.mul(r.coeff(num.lo() + k), dlead_inv);
        q[static_cast<size_t>(k)] = f;
        if (f != 0) r = r - den.scaled(f).shifted(qlo + k);
    }
    if (!r.is_zero()) throw std::domain_error("laurent_divide_exact: remainder");
    return Laurent(F, qlo, std::move(q));
}

/**
 * Fraction-free Bareiss determinant over k[T,T^-1].  Monomial content of each
 * row is factored out first so all divisions happen in k[T].
 */
inline Laurent det_bareiss(const Mat<Laurent>& m0) {
    if (!m0.is_square()) throw std::invalid_argument("det: not square");
    const Fq& F = *m0.a[0].F;
    int n = m0.rows;
    Mat<Laurent> m = m0;
    int shift = 0; // det picks up T^shift
    for (int i = 0; i < n; ++i) {
        int lo = 0;
        bool any = false;
        for (int j = 0; j < n; ++j) {
            if (m.at(i, j).is_zero()) continue;
            lo = any ? std::min(lo, m.at(i, j).lo()) : m.at(i, j).lo();
            any = true;
        }
        if (!any) return Laurent::zero(F);
        for (int j = 0; j < n; ++j) m.at(i, j) = m.at(i, j).shifted(-lo);
        shift += lo;
    }
    Laurent prev = Laurent::one(F);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k).is_zero()) {
            int piv = -1;
            for (int r = k + 1; r < n; ++r)
                if (!m.at(r, k).is_zero()) { piv = r; break; }
            if (piv < 0) return Laurent::zero(F);
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Laurent num = m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = laurent_divide_exact(num, prev);
            }
        prev = m.at(k, k);
    }
    Laurent d = m.at(n - 1, n - 1).shifted(shift);
    if (sign < 0) d = -d;
    return d;
}

/// det over GF(q) by Gaussian elimination.
inline FF det_ff(const Mat<FF>& m0) {
    if (!m0.is_square()) throw std::invalid_argument("det: not square");
    const Fq& F = *m0.a[0].F;
    Mat<FF> m = m0;
    int n = m.rows;
    uint32_t d = F.one();
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int r = k; r < n; ++r)
            if (!m.at(r, k).is_zero()) { piv = r; break; }
        if (piv < 0) return FF(F, 0);
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            d = F.neg(d);
        }
        d = F.mul(d, m.at(k, k).v);
        uint32_t inv = F.inv(m.at(k, k).v);
        for (int r = k + 1; r < n; ++r) {
            if (m.at(r, k).is_zero()) continue;
            uint32_t f = F.mul(m.at(r, k).v, inv);
            for (int j = k; j < n; ++j)
                m.at(r, j).v = F.sub(m.at(r, j).v, F.mul(f, m.at(k, j).v));
        }
    }
    return FF(F, d);
}

inline Laurent mat_det(const Mat<Laurent>& m) {
    return m.rows <= 6 ? det_cofactor(m) : det_bareiss(m);
}
inline FF mat_det(const Mat<FF>& m) { return det_ff(m); }

/**
 * Adjugate by first-minor dynamic programming: for each deleted row, one
 * subset DP gives all minors that also delete one column.
 */
template <class T>
Mat<T> adjugate(const Mat<T>& m) {
    if (!m.is_square()) throw std::invalid_argument("adjugate: not square");
    int n = m.rows;
    Mat<T> adj = Mat<T>::zero(n, n, m.a[0]);
    if (n == 1) {
        adj.at(0, 0) = m.a[0].one_like();
        return adj;
    }
    std::vector<int> popcnt(size_t(1) << n, 0);
    for (size_t s = 1; s < popcnt.size(); ++s)
        popcnt[s] = popcnt[s >> 1] + static_cast<int>(s & 1);
    for (int del = 0; del < n; ++del) {
        // rows of the minor matrix in order, skipping `del`
        std::vector<int> rows;
        for (int r = 0; r < n; ++r)
            if (r != del) rows.push_back(r);
        std::vector<T> d(size_t(1) << n, m.a[0].zero_like());
        d[0] = m.a[0].one_like();
        for (size_t s = 1; s < d.size(); ++s) {
            int used = popcnt[s];
            if (used > n - 1) continue;
            int row = rows[static_cast<size_t>(used - 1)];
            T acc = m.a[0].zero_like();
            int seen = 0;
            for (int j = 0; j < n; ++j) {
                if (!(s & (size_t(1) << j))) continue;
                if (!m.at(row, j).is_zero()) {
                    T term = m.at(row, j) * d[s ^ (size_t(1) << j)];
                    acc = ((used - 1 + seen) % 2 == 0) ? acc + term : acc - term;
                }
                ++seen;
            }
            d[s] = acc;
        }
        size_t full = (size_t(1) << n) - 1;
        for (int j = 0; j < n; ++j) {
            T minor = d[full ^ (size_t(1) << j)];
            // adj_{j,del} = (-1)^{del+j} minor_{del,j}
            if ((del + j) % 2 == 0)
                adj.at(j, del) = minor;
            else
                adj.at(j, del) = m.a[0].zero_like() - minor;
        }
    }
    return adj;
}

/// Inverse of a Laurent matrix whose determinant is a unit (monomial).
inline Mat<Laurent> inverse_unit_det(const Mat<Laurent>& m) {
    Laurent d = mat_det(m);
    if (d.is_zero() || !d.is_monomial())
        throw std::domain_error("inverse_unit_det: determinant is not a unit");
    Laurent dinv = d.monomial_inverse();
    Mat<Laurent> adj = adjugate(m);
    for (auto& v : adj.a) v = v * dinv;
    return adj;
}

/// Inverse over GF(q).
inline Mat<FF> inverse_ff(const Mat<FF>& m) {
    FF d = det_ff(m);
    if (d.is_zero()) throw std::domain_error("inverse_ff: singular");
    Mat<FF> adj = adjugate(m);
    FF dinv = d.inv();
    for (auto& v : adj.a) v = v * dinv;
    return adj;
}

/// Coefficientwise sigma on a Laurent matrix.
inline Mat<Laurent> mat_sigma(const Mat<Laurent>& m) {
    Mat<Laurent> r = m;
    for (auto& v : r.a) v = laurent_sigma(v);
    return r;
}

/// Coefficientwise field automorphism on a Laurent matrix.
inline Mat<Laurent> mat_aut(const Mat<Laurent>& m, const FieldAut& a) {
    Mat<Laurent> r = m;
    for (auto& v : r.a) v = v.mapped(a);
    return r;
}

} // namespace ctlab
