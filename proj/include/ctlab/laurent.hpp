#pragma once

/**
 * @file laurent.hpp
 * @brief Laurent polynomials over GF(q): the commutative ring k[t,t^-1] with
 *        the involution sigma (t <-> t^-1), and the twisted ring k{t,t^-1}
 *        where t^-1 x t = x^delta.
 *
 * Canonical form: the zero polynomial has an empty coefficient vector;
 * otherwise the first and last stored coefficients are nonzero and `off` is
 * the exponent of the first one.
 */

#include <stdexcept>
#include <string>
#include <vector>

#include "ctlab/fq.hpp"

namespace ctlab {

struct Laurent {
    const Fq* F = nullptr;
    int off = 0;
    std::vector<uint32_t> c; // coefficients for t^off, t^(off+1), ...

    Laurent() = default;
    explicit Laurent(const Fq& f) : F(&f) {}
    Laurent(const Fq& f, int offset, std::vector<uint32_t> coef)
        : F(&f), off(offset), c(std::move(coef)) {
        trim();
    }

    static Laurent zero(const Fq& f) { return Laurent(f); }
    static Laurent constant(const Fq& f, uint32_t v) { return Laurent(f, 0, {v}); }
    static Laurent one(const Fq& f) { return constant(f, f.one()); }
    static Laurent monomial(const Fq& f, uint32_t v, int e) { return Laurent(f, e, {v}); }
    static Laurent t(const Fq& f) { return monomial(f, f.one(), 1); }

    Laurent zero_like() const { return Laurent(*F); }
    Laurent one_like() const { return one(*F); }

    bool is_zero() const { return c.empty(); }
    int lo() const { return off; }
    int hi() const { return off + static_cast<int>(c.size()) - 1; }

    uint32_t coeff(int e) const {
        if (is_zero() || e < lo() || e > hi()) return 0;
        return c[static_cast<size_t>(e - off)];
    }

    void trim() {
        size_t b = 0;
        while (b < c.size() && c[b] == 0) ++b;
        size_t e = c.size();
        while (e > b && c[e - 1] == 0) --e;
        if (b == e) {
            c.clear();
            off = 0;
        } else {
            c = std::vector<uint32_t>(c.begin() + static_cast<long>(b),
                                      c.begin() + static_cast<long>(e));
            off += static_cast<int>(b);
        }
    }

    friend Laurent operator+(const Laurent& a, const Laurent& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        int lo = std::min(a.lo(), b.lo());
        int hi = std::max(a.hi(), b.hi());
        std::vector<uint32_t> c(static_cast<size_t>(hi - lo + 1), 0);
        for (int e = lo; e <= hi; ++e)
            c[static_cast<size_t>(e - lo)] = a.F->add(a.coeff(e), b.coeff(e));
        return Laurent(*a.F, lo, std::move(c));
    }

    friend Laurent operator-(const Laurent& a) {
        Laurent r = a;
        for (auto& v : r.c) v = a.F->neg(v);
        return r;
    }

    friend Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }

    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        if (a.is_zero() || b.is_zero()) return Laurent(*a.F);
        std::vector<uint32_t> c(a.c.size() + b.c.size() - 1, 0);
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (a.c[i] == 0) continue;
            for (size_t j = 0; j < b.c.size(); ++j)
                c[i + j] = a.F->add(c[i + j], a.F->mul(a.c[i], b.c[j]));
        }
        return Laurent(*a.F, a.off + b.off, std::move(c));
    }

    friend bool operator==(const Laurent& a, const Laurent& b) {
        return a.off == b.off && a.c == b.c;
    }
    friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

    Laurent scaled(uint32_t v) const {
        if (v == 0) return Laurent(*F);
        Laurent r = *this;
        for (auto& x : r.c) x = F->mul(x, v);
        r.trim();
        return r;
    }

    Laurent shifted(int e) const {
        Laurent r = *this;
        if (!r.is_zero()) r.off += e;
        return r;
    }

    // units of k[t,t^-1] are the nonzero monomials
    bool is_monomial() const { return c.size() == 1; }

    Laurent monomial_inverse() const {
        if (!is_monomial()) throw std::domain_error("Laurent: not a unit");
        return monomial(*F, F->inv(c[0]), -off);
    }

    // coefficientwise field automorphism
    Laurent mapped(const FieldAut& a) const {
        Laurent r = *this;
        for (auto& x : r.c) x = a.apply(x);
        return r;
    }

    std::string str(const std::string& var = "t") const {
        if (is_zero()) return "0";
        std::string s;
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i] == 0) continue;
            if (!s.empty()) s += "+";
            int e = off + static_cast<int>(i);
            if (e == 0)
                s += std::to_string(c[i]);
            else {
                if (c[i] != F->one()) s += std::to_string(c[i]) + "*";
                s += var;
                if (e != 1) s += "^" + std::to_string(e);
            }
        }
        return s;
    }
};

/// sigma: interchanges t and t^-1 (coefficient of t^i becomes that of t^-i).
inline Laurent laurent_sigma(const Laurent& f) {
    if (f.is_zero()) return f;
    std::vector<uint32_t> c(f.c.rbegin(), f.c.rend());
    return Laurent(*f.F, -f.hi(), std::move(c));
}

/**
 * Evaluate f at t = a, where a is a nonzero element of an extension field.
 * The coefficients pass through the given embedding into a's field.
 */
inline uint32_t laurent_eval(const Laurent& f, const Fq& ext, uint32_t a,
                             const FieldEmbed& embed) {
    if (a == 0) throw std::domain_error("laurent_eval: t^-1 undefined at 0");
    if (&embed.src() != f.F || &embed.dst() != &ext)
        throw std::invalid_argument("laurent_eval: embedding mismatch");
    if (f.is_zero()) return 0;
    uint32_t acc = 0;
    uint32_t apow = ext.pow(a, f.lo());
    for (size_t i = 0; i < f.c.size(); ++i) {
        acc = ext.add(acc, ext.mul(embed(f.c[i]), apow));
        apow = ext.mul(apow, a);
    }
    return acc;
}

/**
 * Twisted Laurent polynomial over GF(q) with t^-1 x t = x^delta.  Normal form
 * keeps coefficients to the left of powers of t, so the product rule is
 * (a t^i)(b t^j) = a b^(delta^-i) t^(i+j).
 */
struct SkewLaurent {
    const Fq* F = nullptr;
    FieldAut delta;
    int off = 0;
    std::vector<uint32_t> c;

    SkewLaurent() = default;
    SkewLaurent(const Fq& f, const FieldAut& d) : F(&f), delta(d) {}
    SkewLaurent(const Fq& f, const FieldAut& d, int offset, std::vector<uint32_t> coef)
        : F(&f), delta(d), off(offset), c(std::move(coef)) {
        trim();
    }

    static SkewLaurent zero(const Fq& f, const FieldAut& d) { return SkewLaurent(f, d); }
    static SkewLaurent constant(const Fq& f, const FieldAut& d, uint32_t v) {
        return SkewLaurent(f, d, 0, {v});
    }
    static SkewLaurent one(const Fq& f, const FieldAut& d) { return constant(f, d, f.one()); }
    static SkewLaurent monomial(const Fq& f, const FieldAut& d, uint32_t v, int e) {
        return SkewLaurent(f, d, e, {v});
    }

    SkewLaurent zero_like() const { return SkewLaurent(*F, delta); }
    SkewLaurent one_like() const { return one(*F, delta); }

    bool is_zero() const { return c.empty(); }
    int lo() const { return off; }
    int hi() const { return off + static_cast<int>(c.size()) - 1; }
    uint32_t coeff(int e) const {
        if (is_zero() || e < lo() || e > hi()) return 0;
        return c[static_cast<size_t>(e - off)];
    }

    void trim() {
        size_t b = 0;
        while (b < c.size() && c[b] == 0) ++b;
        size_t e = c.size();
        while (e > b && c[e - 1] == 0) --e;
        if (b == e) {
            c.clear();
            off = 0;
        } else {
            c = std::vector<uint32_t>(c.begin() + static_cast<long>(b),
                                      c.begin() + static_cast<long>(e));
            off += static_cast<int>(b);
        }
    }

    static void check_compatible(const SkewLaurent& a, const SkewLaurent& b) {
        if (a.F != b.F || a.delta.e != b.delta.e)
            throw std::invalid_argument("SkewLaurent: incompatible rings");
    }

    friend SkewLaurent operator+(const SkewLaurent& a, const SkewLaurent& b) {
        check_compatible(a, b);
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        int lo = std::min(a.lo(), b.lo());
        int hi = std::max(a.hi(), b.hi());
        std::vector<uint32_t> c(static_cast<size_t>(hi - lo + 1), 0);
        for (int e = lo; e <= hi; ++e)
            c[static_cast<size_t>(e - lo)] = a.F->add(a.coeff(e), b.coeff(e));
        return SkewLaurent(*a.F, a.delta, lo, std::move(c));
    }

    friend SkewLaurent operator-(const SkewLaurent& a) {
        SkewLaurent r = a;
        for (auto& v : r.c) v = a.F->neg(v);
        return r;
    }

    friend SkewLaurent operator-(const SkewLaurent& a, const SkewLaurent& b) {
        return a + (-b);
    }

    friend SkewLaurent operator*(const SkewLaurent& a, const SkewLaurent& b) {
        check_compatible(a, b);
        if (a.is_zero() || b.is_zero()) return SkewLaurent(*a.F, a.delta);
        std::vector<uint32_t> c(a.c.size() + b.c.size() - 1, 0);
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (a.c[i] == 0) continue;
            int ei = a.off + static_cast<int>(i);
            for (size_t j = 0; j < b.c.size(); ++j) {
                if (b.c[j] == 0) continue;
                uint32_t tw = a.delta.apply_pow(b.c[j], -ei);
                c[i + j] = a.F->add(c[i + j], a.F->mul(a.c[i], tw));
            }
        }
        return SkewLaurent(*a.F, a.delta, a.off + b.off, std::move(c));
    }

    friend bool operator==(const SkewLaurent& a, const SkewLaurent& b) {
        return a.off == b.off && a.c == b.c;
    }
    friend bool operator!=(const SkewLaurent& a, const SkewLaurent& b) { return !(a == b); }

    // delta applied to every coefficient (t is fixed), k may be negative
    SkewLaurent twisted(int k) const {
        SkewLaurent r = *this;
        for (auto& x : r.c) x = delta.apply_pow(x, k);
        return r;
    }

    std::string str(const std::string& var = "t") const {
        Laurent view(*F, off, c);
        return view.str(var);
    }
};

} // namespace ctlab
