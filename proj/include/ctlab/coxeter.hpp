#pragma once

/**
 * @file coxeter.hpp
 * @brief The affine symmetric group in window notation, the rotation
 *        involution of its cyclic diagram, twisted involutions and their
 *        length laws, and minimal double coset representatives.
 *
 * An affine permutation of period m is a bijection f of the integers with
 * f(i + m) = f(i) + m and sum(f(i) - i) = 0; it is stored as the window
 * [f(1), ..., f(m)].  Lengths are affine inversion counts; a BFS oracle over
 * the Cayley graph cross-checks them in the tests.
 */

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ctlab/rng.hpp"

namespace ctlab {

struct AffinePerm {
    int m = 0;
    std::vector<int> win; // f(1..m)

    AffinePerm() = default;
    explicit AffinePerm(int period) : m(period), win(static_cast<size_t>(period)) {
        for (int i = 0; i < m; ++i) win[static_cast<size_t>(i)] = i + 1;
    }
    AffinePerm(int period, std::vector<int> w) : m(period), win(std::move(w)) {
        validate();
    }

    static AffinePerm identity(int period) { return AffinePerm(period); }

    void validate() const {
        if (static_cast<int>(win.size()) != m) throw std::invalid_argument("bad window");
        long long sum = 0;
        std::set<int> residues;
        for (int i = 0; i < m; ++i) {
            sum += win[static_cast<size_t>(i)] - (i + 1);
            int r = win[static_cast<size_t>(i)] % m;
            if (r < 0) r += m;
            residues.insert(r);
        }
        if (sum != 0) throw std::invalid_argument("window does not sum to zero");
        if (static_cast<int>(residues.size()) != m)
            throw std::invalid_argument("window entries collide modulo m");
    }

    int eval(int i) const {
        // f(i) for any integer i via periodicity
        int r = i % m;
        int q = (i - r) / m;
        if (r <= 0) {
            r += m;
            q -= 1;
        }
        return win[static_cast<size_t>(r - 1)] + q * m;
    }

    friend AffinePerm operator*(const AffinePerm& f, const AffinePerm& g) {
        // composition (f g)(i) = f(g(i))
        AffinePerm h(f.m);
        for (int i = 1; i <= f.m; ++i) h.win[static_cast<size_t>(i - 1)] = f.eval(g.eval(i));
        return h;
    }

    AffinePerm inverse() const {
        AffinePerm h(m);
        for (int i = 1; i <= m; ++i) {
            int v = eval(i);
            int r = v % m;
            int q = (v - r) / m;
            if (r <= 0) {
                r += m;
                q -= 1;
            }
            h.win[static_cast<size_t>(r - 1)] = i - q * m;
        }
        return h;
    }

    friend bool operator==(const AffinePerm& a, const AffinePerm& b) {
        return a.m == b.m && a.win == b.win;
    }
    friend bool operator!=(const AffinePerm& a, const AffinePerm& b) { return !(a == b); }
    friend bool operator<(const AffinePerm& a, const AffinePerm& b) { return a.win < b.win; }

    bool is_identity() const {
        for (int i = 0; i < m; ++i)
            if (win[static_cast<size_t>(i)] != i + 1) return false;
        return true;
    }

    /// generator s_i, i in [0, m): swaps i and i+1 and all their translates
    static AffinePerm gen(int period, int i) {
        AffinePerm s(period);
        if (i % period == 0) {
            s.win[0] = 0;
            s.win[static_cast<size_t>(period - 1)] = period + 1;
        } else {
            int r = i % period;
            if (r < 0) r += period;
            std::swap(s.win[static_cast<size_t>(r - 1)], s.win[static_cast<size_t>(r)]);
        }
        return s;
    }

    /// number of affine inversions
    int length() const {
        int total = 0;
        for (int i = 1; i <= m; ++i)
            for (int d = 1; d < m; ++d) {
                int j = i + d;
                int diff = eval(i) - eval(j);
                if (diff > 0) total += (diff + m - 1) / m; // ceil(diff / m)
            }
        return total;
    }

    std::string str() const {
        std::string s = "[";
        for (int i = 0; i < m; ++i)
            s += (i ? "," : "") + std::to_string(win[static_cast<size_t>(i)]);
        return s + "]";
    }

    /// packed key for hashing; valid while all window entries fit in 8 bits of slack
    uint64_t key() const {
        uint64_t k = 1469598103934665603ull;
        for (int v : win) {
            k ^= static_cast<uint64_t>(v + (1 << 20));
            k *= 1099511628211ull;
        }
        return k;
    }
};

/// The diagram rotation i -> i + shift, realized on windows by conjugation
/// with the translation-rotation r(i) = i + shift.
struct DiagramInvolution {
    int m = 0;
    int shift = 0;

    DiagramInvolution(int period, int n) : m(period), shift(n) {
        if (2 * n != period) throw std::invalid_argument("rotation must be by half the period");
    }

    int on_index(int i) const {
        int r = (i + shift) % m;
        return r < 0 ? r + m : r;
    }

    AffinePerm apply(const AffinePerm& w) const {
        // (r w r^-1)(i) = w(i - shift) + shift
        AffinePerm out(m);
        for (int i = 1; i <= m; ++i)
            out.win[static_cast<size_t>(i - 1)] = w.eval(i - shift) + shift;
        return out;
    }
};

inline bool is_twisted_involution(const AffinePerm& u, const DiagramInvolution& theta) {
    return theta.apply(u) == u.inverse();
}

/// ball of radius L in the Cayley graph, as window -> length
struct CoxeterBall {
    int m = 0;
    std::unordered_map<uint64_t, int> length_of;
    std::vector<AffinePerm> elements; // sorted by (length, window)
    std::vector<int> lengths;

    bool contains(const AffinePerm& w) const { return length_of.count(w.key()) > 0; }
};

inline CoxeterBall enumerate_ball(int m, int max_len) {
    CoxeterBall ball;
    ball.m = m;
    std::vector<AffinePerm> gens;
    for (int i = 0; i < m; ++i) gens.push_back(AffinePerm::gen(m, i));
    std::vector<AffinePerm> layer{AffinePerm::identity(m)};
    ball.length_of[layer[0].key()] = 0;
    ball.elements.push_back(layer[0]);
    ball.lengths.push_back(0);
    for (int len = 1; len <= max_len; ++len) {
        std::map<std::vector<int>, AffinePerm> next;
        for (const auto& w : layer)
            for (const auto& s : gens) {
                AffinePerm ws = w * s;
                if (!ball.length_of.count(ws.key())) next.emplace(ws.win, ws);
            }
        layer.clear();
        for (auto& [k, ws] : next) {
            ball.length_of[ws.key()] = len;
            ball.elements.push_back(ws);
            ball.lengths.push_back(len);
            layer.push_back(ws);
        }
        if (layer.empty()) break;
    }
    return ball;
}

/**
 * Decompose a twisted involution as u = w theta(w)^-1 with l(u) = 2 l(w),
 * by stripping descents two at a time; the terminal case where every
 * descent fixes u is the longest element of a finite parabolic whose type
 * splits into two components swapped by theta.
 */
inline AffinePerm twisted_decompose(const AffinePerm& u0, const DiagramInvolution& theta) {
    if (!is_twisted_involution(u0, theta))
        throw std::invalid_argument("twisted_decompose: not a twisted involution");
    int m = u0.m;
    AffinePerm u = u0;
    std::vector<int> letters; // prefix of w, in order
    int guard = 4 * (u0.length() + 1);
    while (!u.is_identity()) {
        if (--guard < 0) throw std::runtime_error("twisted_decompose: no progress");
        int lu = u.length();
        bool moved = false;
        for (int i = 0; i < m && !moved; ++i) {
            AffinePerm s = AffinePerm::gen(m, i);
            if ((s * u).length() >= lu) continue; // not a left descent
            AffinePerm st = AffinePerm::gen(m, theta.on_index(i));
            AffinePerm next = s * u * st;
            int ln = next.length();
            if (ln == lu - 2) {
                letters.push_back(i);
                u = next;
                moved = true;
            }
        }
        if (!moved) {
            // terminal case: u is the longest element of W_J where J is its
            // descent set and splits as K + theta(K) into components
            // interchanged by theta; then u = w_K theta(w_K)^-1.
            std::vector<int> J;
            for (int i = 0; i < m; ++i)
                if ((AffinePerm::gen(m, i) * u).length() < lu) J.push_back(i);
            std::set<int> Jset(J.begin(), J.end());
            // connected components of J along the cyclic diagram
            std::vector<std::vector<int>> comps;
            std::set<int> used;
            for (int i : J) {
                if (used.count(i)) continue;
                std::vector<int> comp{i};
                used.insert(i);
                for (size_t h = 0; h < comp.size(); ++h)
                    for (int nb : {(comp[h] + 1) % m, (comp[h] + m - 1) % m})
                        if (Jset.count(nb) && !used.count(nb)) {
                            used.insert(nb);
                            comp.push_back(nb);
                        }
                comps.push_back(comp);
            }
            // pick one component from each theta-orbit of components
            std::vector<int> K;
            std::set<int> claimed;
            for (const auto& comp : comps) {
                bool taken = false;
                for (int i : comp)
                    if (claimed.count(i)) taken = true;
                if (taken) continue;
                for (int i : comp) {
                    K.push_back(i);
                    claimed.insert(i);
                    claimed.insert(theta.on_index(i));
                }
            }
            // longest element of W_K by greedy ascent
            AffinePerm wk = AffinePerm::identity(m);
            bool grew = true;
            while (grew) {
                grew = false;
                for (int i : K) {
                    AffinePerm cand = wk * AffinePerm::gen(m, i);
                    if (cand.length() > wk.length()) {
                        wk = cand;
                        grew = true;
                        break;
                    }
                }
            }
            if (!(wk * theta.apply(wk).inverse() == u))
                throw std::runtime_error("twisted_decompose: terminal case mismatch");
            AffinePerm w = AffinePerm::identity(m);
            for (int i : letters) w = w * AffinePerm::gen(m, i);
            return w * wk;
        }
    }
    AffinePerm w = AffinePerm::identity(m);
    for (int i : letters) w = w * AffinePerm::gen(m, i);
    return w;
}

/// l(s_i u s_theta(i)) - l(u); the law says this is +2 or -2, never 0.
inline int length_conjugation_delta(const AffinePerm& u, int i, const DiagramInvolution& theta) {
    AffinePerm s = AffinePerm::gen(u.m, i);
    AffinePerm st = AffinePerm::gen(u.m, theta.on_index(i));
    return (s * u * st).length() - u.length();
}

/**
 * Greedy minimal element of the double coset W_J u W_theta(J): multiply by
 * left descents from J and right descents from theta(J) while the length
 * drops.
 */
inline AffinePerm min_double_coset(const AffinePerm& u0, const std::vector<int>& J,
                                   const DiagramInvolution& theta) {
    AffinePerm u = u0;
    bool moved = true;
    while (moved) {
        moved = false;
        for (int j : J) {
            AffinePerm s = AffinePerm::gen(u.m, j);
            AffinePerm cand = s * u;
            if (cand.length() < u.length()) {
                u = cand;
                moved = true;
            }
        }
        for (int j : J) {
            AffinePerm st = AffinePerm::gen(u.m, theta.on_index(j));
            AffinePerm cand = u * st;
            if (cand.length() < u.length()) {
                u = cand;
                moved = true;
            }
        }
    }
    return u;
}

/// Exhaustive double coset, for the small parabolic oracle.
inline std::vector<AffinePerm> double_coset(const AffinePerm& u, const std::vector<int>& J,
                                            const DiagramInvolution& theta) {
    int m = u.m;
    auto subgroup = [&](const std::vector<int>& gens_idx) {
        std::vector<AffinePerm> elems{AffinePerm::identity(m)};
        std::set<std::vector<int>> seen{elems[0].win};
        size_t head = 0;
        while (head < elems.size()) {
            AffinePerm cur = elems[head++];
            for (int g : gens_idx) {
                AffinePerm nxt = cur * AffinePerm::gen(m, g);
                if (seen.insert(nxt.win).second) {
                    elems.push_back(nxt);
                    if (elems.size() > 100000)
                        throw std::runtime_error("double_coset: parabolic not finite?");
                }
            }
        }
        return elems;
    };
    std::vector<int> Jt;
    for (int j : J) Jt.push_back(theta.on_index(j));
    std::vector<AffinePerm> left = subgroup(J), right = subgroup(Jt);
    std::set<std::vector<int>> seen;
    std::vector<AffinePerm> out;
    for (const auto& a : left)
        for (const auto& b : right) {
            AffinePerm x = a * u * b;
            if (seen.insert(x.win).second) out.push_back(x);
        }
    return out;
}

} // namespace ctlab
