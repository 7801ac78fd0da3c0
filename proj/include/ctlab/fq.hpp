#pragma once

/**
 * @file fq.hpp
 * @brief Exact arithmetic in GF(p^m) for small q, with Frobenius automorphisms
 *        and subfield embeddings.
 *
 * Elements are indices in [0, q).  The index, written in base p, lists the
 * coefficients of the element as a polynomial in the generator x, lowest
 * degree first.  The modulus is the lexicographically least monic irreducible
 * polynomial of degree m over GF(p), where polynomials are ordered by the
 * integer whose base-p digits are the non-leading coefficients (constant term
 * = least significant digit).  This makes every field, and hence every output
 * of the library, reproducible byte for byte.
 */

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctlab {

class Fq {
public:
    Fq(int p, int m) : p_(p), m_(m) {
        if (p < 2 || m < 1) throw std::invalid_argument("Fq: bad parameters");
        q_ = 1;
        for (int i = 0; i < m; ++i) q_ *= static_cast<uint32_t>(p);
        find_modulus();
        build_tables();
    }

    // Shared registry so element handles can hold plain pointers.
    static const Fq& get(int p, int m) {
        static std::map<std::pair<int, int>, std::unique_ptr<Fq>> cache;
        auto key = std::make_pair(p, m);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, std::make_unique<Fq>(p, m)).first;
        return *it->second;
    }

    int p() const { return p_; }
    int m() const { return m_; }
    uint32_t q() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }

    uint32_t zero() const { return 0; }
    uint32_t one() const { return 1 % q_; }

    uint32_t add(uint32_t a, uint32_t b) const {
        uint32_t r = 0, mult = 1;
        for (int i = 0; i < m_; ++i) {
            uint32_t da = (a / mult) % static_cast<uint32_t>(p_);
            uint32_t db = (b / mult) % static_cast<uint32_t>(p_);
            r += ((da + db) % static_cast<uint32_t>(p_)) * mult;
            mult *= static_cast<uint32_t>(p_);
        }
        return r;
    }

    uint32_t neg(uint32_t a) const {
        uint32_t r = 0, mult = 1;
        for (int i = 0; i < m_; ++i) {
            uint32_t da = (a / mult) % static_cast<uint32_t>(p_);
            r += ((static_cast<uint32_t>(p_) - da) % static_cast<uint32_t>(p_)) * mult;
            mult *= static_cast<uint32_t>(p_);
        }
        return r;
    }

    uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

    uint32_t mul(uint32_t a, uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        uint32_t e = log_[a] + log_[b];
        if (e >= q_ - 1) e -= q_ - 1;
        return exp_[e];
    }

    uint32_t inv(uint32_t a) const {
        if (a == 0) throw std::domain_error("Fq::inv of zero");
        uint32_t e = log_[a];
        return exp_[e == 0 ? 0 : q_ - 1 - e];
    }

    uint32_t pow(uint32_t a, long long e) const {
        if (a == 0) {
            if (e < 0) throw std::domain_error("Fq::pow: 0 to negative power");
            return e == 0 ? one() : 0;
        }
        long long ord = static_cast<long long>(q_) - 1;
        long long k = static_cast<long long>(log_[a]) * (e % ord) % ord;
        if (k < 0) k += ord;
        return exp_[static_cast<uint32_t>(k)];
    }

    // embedding of an integer via the prime subfield
    uint32_t from_int(long long v) const {
        long long r = v % p_;
        if (r < 0) r += p_;
        return static_cast<uint32_t>(r);
    }

    // x -> x^(p^e), e reduced mod m
    uint32_t frob(uint32_t a, int e = 1) const {
        int r = e % m_;
        if (r < 0) r += m_;
        uint32_t v = a;
        for (int i = 0; i < r; ++i) v = frob_[v];
        return v;
    }

    // least primitive element (generator of the multiplicative group)
    uint32_t generator() const { return exp_[1 % (q_ - 1)]; }

    uint32_t exp_of(uint32_t e) const { return exp_[e % (q_ - 1)]; }
    uint32_t log_of(uint32_t a) const {
        if (a == 0) throw std::domain_error("Fq::log of zero");
        return log_[a];
    }

    // polynomial-basis coordinates, lowest degree first
    std::vector<int> coords(uint32_t a) const {
        std::vector<int> c(m_);
        for (int i = 0; i < m_; ++i) {
            c[i] = static_cast<int>(a % static_cast<uint32_t>(p_));
            a /= static_cast<uint32_t>(p_);
        }
        return c;
    }

    std::string to_string(uint32_t a) const { return std::to_string(a); }

private:
    // multiply two polynomials over GF(p) and reduce by the modulus
    uint32_t poly_mul(uint32_t a, uint32_t b) const {
        std::vector<int> prod(2 * m_ - 1, 0);
        std::vector<int> ca = coords(a), cb = coords(b);
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < m_; ++j)
                prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
        for (int d = 2 * m_ - 2; d >= m_; --d) {
            int c = prod[d];
            if (c == 0) continue;
            prod[d] = 0;
            // x^m = -modulus_[0..m-1]
            for (int i = 0; i < m_; ++i)
                prod[d - m_ + i] = ((prod[d - m_ + i] - c * modulus_[i]) % p_ + p_ * p_) % p_;
        }
        uint32_t r = 0, mult = 1;
        for (int i = 0; i < m_; ++i) {
            r += static_cast<uint32_t>(prod[i]) * mult;
            mult *= static_cast<uint32_t>(p_);
        }
        return r;
    }

    static bool poly_divides(const std::vector<int>& d, std::vector<int> f, int p) {
        // d monic of degree deg_d, f of degree deg_f; true if remainder is 0
        int deg_d = static_cast<int>(d.size()) - 1;
        int deg_f = static_cast<int>(f.size()) - 1;
        for (int k = deg_f; k >= deg_d; --k) {
            int c = f[k] % p;
            if (c == 0) continue;
            for (int i = 0; i <= deg_d; ++i)
                f[k - deg_d + i] = ((f[k - deg_d + i] - c * d[i]) % p + p * p) % p;
        }
        for (int i = 0; i < deg_d; ++i)
            if (f[i] % p != 0) return false;
        return true;
    }

    void find_modulus() {
        modulus_.assign(m_, 0);
        if (m_ == 1) return; // GF(p): x - 0 never used, reduction trivial
        uint32_t count = 1;
        for (int i = 0; i < m_; ++i) count *= static_cast<uint32_t>(p_);
        for (uint32_t k = 0; k < count; ++k) {
            std::vector<int> f(m_ + 1, 0);
            f[m_] = 1;
            uint32_t v = k;
            for (int i = 0; i < m_; ++i) {
                f[i] = static_cast<int>(v % static_cast<uint32_t>(p_));
                v /= static_cast<uint32_t>(p_);
            }
            bool irred = true;
            // test all monic divisors of degree 1..m/2
            for (int d = 1; irred && 2 * d <= m_; ++d) {
                uint32_t dcount = 1;
                for (int i = 0; i < d; ++i) dcount *= static_cast<uint32_t>(p_);
                for (uint32_t dk = 0; dk < dcount; ++dk) {
                    std::vector<int> g(d + 1, 0);
                    g[d] = 1;
                    uint32_t w = dk;
                    for (int i = 0; i < d; ++i) {
                        g[i] = static_cast<int>(w % static_cast<uint32_t>(p_));
                        w /= static_cast<uint32_t>(p_);
                    }
                    if (poly_divides(g, f, p_)) { irred = false; break; }
                }
            }
            if (irred) {
                for (int i = 0; i < m_; ++i) modulus_[i] = f[i];
                return;
            }
        }
        throw std::logic_error("Fq: no irreducible modulus found");
    }

    void build_tables() {
        exp_.assign(q_ - 1, 0);
        log_.assign(q_, 0);
        // least primitive element by exhausting candidate orders
        for (uint32_t g = 1; g < q_; ++g) {
            uint32_t v = 1 % q_;
            bool prim = true;
            for (uint32_t e = 1; e < q_ - 1; ++e) {
                v = poly_mul(v, g);
                if (v == 1) { prim = false; break; }
            }
            v = poly_mul(v, g);
            if (prim && v == 1) {
                uint32_t w = 1 % q_;
                for (uint32_t e = 0; e < q_ - 1; ++e) {
                    exp_[e] = w;
                    log_[w] = e;
                    w = poly_mul(w, g);
                }
                break;
            }
        }
        if (exp_.empty() || exp_[0] != 1 % q_)
            throw std::logic_error("Fq: no primitive element found");
        frob_.assign(q_, 0);
        for (uint32_t a = 0; a < q_; ++a) {
            uint32_t v = a;
            uint32_t r = 1 % q_;
            // a^p by direct exponentiation through poly_mul (tables may be mid-build)
            for (int i = 0; i < p_; ++i) r = poly_mul(r, v);
            frob_[a] = r;
        }
    }

    int p_, m_;
    uint32_t q_;
    std::vector<int> modulus_;       // non-leading coefficients, lowest first
    std::vector<uint32_t> exp_, log_, frob_;
};

/// Field element with value semantics; carries its field.
struct FF {
    const Fq* F = nullptr;
    uint32_t v = 0;

    FF() = default;
    FF(const Fq& f, uint32_t val) : F(&f), v(val) {}

    FF zero_like() const { return FF(*F, 0); }
    FF one_like() const { return FF(*F, F->one()); }
    bool is_zero() const { return v == 0; }

    friend FF operator+(const FF& a, const FF& b) { return FF(*a.F, a.F->add(a.v, b.v)); }
    friend FF operator-(const FF& a, const FF& b) { return FF(*a.F, a.F->sub(a.v, b.v)); }
    friend FF operator*(const FF& a, const FF& b) { return FF(*a.F, a.F->mul(a.v, b.v)); }
    friend FF operator-(const FF& a) { return FF(*a.F, a.F->neg(a.v)); }
    FF inv() const { return FF(*F, F->inv(v)); }
    friend bool operator==(const FF& a, const FF& b) { return a.v == b.v; }
    friend bool operator!=(const FF& a, const FF& b) { return a.v != b.v; }
    std::string str() const { return std::to_string(v); }
};

/**
 * An automorphism of GF(p^m): x -> x^(p^e).
 */
struct FieldAut {
    const Fq* F = nullptr;
    int e = 0; // Frobenius power, reduced mod m

    FieldAut() = default;
    FieldAut(const Fq& f, int pow) : F(&f) {
        e = pow % f.m();
        if (e < 0) e += f.m();
    }

    uint32_t apply(uint32_t a) const { return F->frob(a, e); }
    uint32_t apply_pow(uint32_t a, int k) const { return F->frob(a, e * k); }

    bool is_identity() const { return e % F->m() == 0; }

    // multiplicative order of the automorphism
    int order() const {
        if (e == 0) return 1;
        int s = 1, acc = e % F->m();
        while (acc != 0) {
            ++s;
            acc = (acc + e) % F->m();
        }
        return s;
    }

    // number of elements in the fixed field
    uint32_t fixed_field_size() const {
        int g = gcd_int(e == 0 ? F->m() : e, F->m());
        uint32_t r = 1;
        for (int i = 0; i < g; ++i) r *= static_cast<uint32_t>(F->p());
        return r;
    }

    bool fixes(uint32_t a) const { return apply(a) == a; }

private:
    static int gcd_int(int a, int b) { return b == 0 ? a : gcd_int(b, a % b); }
};

/// x * x^delta * ... * x^(delta^(s-1)), lands in the fixed field of delta.
inline uint32_t field_norm(const Fq& F, uint32_t x, const FieldAut& delta) {
    int s = delta.order();
    uint32_t acc = F.one();
    uint32_t cur = x;
    for (int i = 0; i < s; ++i) {
        acc = F.mul(acc, cur);
        cur = delta.apply(cur);
    }
    return acc;
}

/**
 * Subfield embedding GF(p^a) -> GF(p^b), a | b.  The generator of the source
 * field maps to the least root of the source modulus in the target field; the
 * full map is tabulated and checked to be a ring homomorphism.
 */
class FieldEmbed {
public:
    FieldEmbed(const Fq& src, const Fq& dst) : src_(&src), dst_(&dst) {
        if (src.p() != dst.p() || dst.m() % src.m() != 0)
            throw std::invalid_argument("FieldEmbed: not a subfield");
        uint32_t root = find_root();
        map_.assign(src.q(), 0);
        for (uint32_t v = 0; v < src.q(); ++v) {
            std::vector<int> c = src.coords(v);
            uint32_t acc = 0, rp = dst.one();
            for (int i = 0; i < src.m(); ++i) {
                acc = dst.add(acc, dst.mul(dst.from_int(c[i]), rp));
                rp = dst.mul(rp, root);
            }
            map_[v] = acc;
        }
        for (uint32_t a = 0; a < src.q(); ++a)
            for (uint32_t b = 0; b < src.q(); ++b) {
                if (map_[src.add(a, b)] != dst.add(map_[a], map_[b]) ||
                    map_[src.mul(a, b)] != dst.mul(map_[a], map_[b]))
                    throw std::logic_error("FieldEmbed: not a homomorphism");
            }
    }

    static const FieldEmbed& get(const Fq& src, const Fq& dst) {
        static std::map<std::pair<const Fq*, const Fq*>, std::unique_ptr<FieldEmbed>> cache;
        auto key = std::make_pair(&src, &dst);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, std::make_unique<FieldEmbed>(src, dst)).first;
        return *it->second;
    }

    uint32_t operator()(uint32_t v) const { return map_[v]; }
    const Fq& src() const { return *src_; }
    const Fq& dst() const { return *dst_; }

private:
    uint32_t find_root() const {
        if (src_->m() == 1) return 0; // unused: coords are constants
        for (uint32_t r = 0; r < dst_->q(); ++r) {
            // evaluate x^m + (non-leading modulus terms) at r
            uint32_t acc = 0, rp = dst_->one();
            for (int i = 0; i < src_->m(); ++i) {
                acc = dst_->add(acc, dst_->mul(dst_->from_int(src_->modulus()[i]), rp));
                rp = dst_->mul(rp, r);
            }
            acc = dst_->add(acc, rp); // rp == r^m here
            if (acc == 0) return r;
        }
        throw std::logic_error("FieldEmbed: no root of subfield modulus");
    }

    const Fq* src_;
    const Fq* dst_;
    std::vector<uint32_t> map_;
};

} // namespace ctlab
