#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ctlab/coxeter.hpp"

using namespace ctlab;

namespace {
constexpr int kM = 8;     // affine symmetric group period
constexpr int kShift = 4; // diagram rotation
}

TEST_CASE("window arithmetic: generators, products, inverses") {
    AffinePerm id = AffinePerm::identity(kM);
    CHECK(id.length() == 0);
    for (int i = 0; i < kM; ++i) {
        AffinePerm s = AffinePerm::gen(kM, i);
        CHECK(s.length() == 1);
        CHECK(s * s == id);
        CHECK(s.inverse() == s);
    }
    Rng rng(1);
    for (int it = 0; it < 200; ++it) {
        AffinePerm w = id;
        for (int k = 0; k < 6; ++k) w = w * AffinePerm::gen(kM, rng.range(0, kM - 1));
        CHECK(w * w.inverse() == id);
        CHECK(w.inverse().length() == w.length());
    }
}

TEST_CASE("inversion-count length equals BFS word length up to radius 6") {
    CoxeterBall ball = enumerate_ball(kM, 6);
    for (size_t i = 0; i < ball.elements.size(); ++i)
        CHECK(ball.elements[i].length() == ball.lengths[i]);
    // the multiplication law l(w s) = l(w) +- 1 holds on the ball
    Rng rng(2);
    for (int it = 0; it < 300; ++it) {
        const AffinePerm& w = ball.elements[rng.below(ball.elements.size())];
        int i = rng.range(0, kM - 1);
        int diff = (w * AffinePerm::gen(kM, i)).length() - w.length();
        CHECK((diff == 1 || diff == -1));
    }
}

TEST_CASE("the rotation acts on generators by adding the shift") {
    DiagramInvolution theta(kM, kShift);
    for (int i = 0; i < kM; ++i)
        CHECK(theta.apply(AffinePerm::gen(kM, i)) ==
              AffinePerm::gen(kM, (i + kShift) % kM));
    // involutive and length preserving, and multiplicative on sampled words
    Rng rng(3);
    for (int it = 0; it < 100; ++it) {
        AffinePerm w = AffinePerm::identity(kM);
        std::vector<int> word;
        for (int k = 0; k < 5; ++k) {
            int i = rng.range(0, kM - 1);
            word.push_back(i);
            w = w * AffinePerm::gen(kM, i);
        }
        CHECK(theta.apply(theta.apply(w)) == w);
        CHECK(theta.apply(w).length() == w.length());
        AffinePerm tw = AffinePerm::identity(kM);
        for (int i : word) tw = tw * AffinePerm::gen(kM, (i + kShift) % kM);
        CHECK(theta.apply(w) == tw);
    }
}

TEST_CASE("twisted involution examples at m = 4") {
    DiagramInvolution theta(4, 2);
    CHECK(is_twisted_involution(AffinePerm::identity(4), theta));
    AffinePerm s1 = AffinePerm::gen(4, 1), s3 = AffinePerm::gen(4, 3);
    CHECK(is_twisted_involution(s1 * s3, theta)); // s1 s3 = (s1 s3)^theta inverse
    CHECK(!is_twisted_involution(s1, theta));
    CHECK(twisted_decompose(s1 * s3, theta) == s1);
}

TEST_CASE("decomposing a non twisted involution is rejected") {
    DiagramInvolution theta(kM, kShift);
    CHECK_THROWS_AS(twisted_decompose(AffinePerm::gen(kM, 1), theta), std::invalid_argument);
}

TEST_CASE("twisted involutions in the radius-8 ball coincide with the w theta(w)^-1 set") {
    DiagramInvolution theta(kM, kShift);
    CoxeterBall ball = enumerate_ball(kM, 8);
    std::set<std::vector<int>> lhs;
    for (const auto& u : ball.elements)
        if (is_twisted_involution(u, theta)) lhs.insert(u.win);
    CoxeterBall half = enumerate_ball(kM, 4);
    std::set<std::vector<int>> rhs;
    for (const auto& w : half.elements) {
        AffinePerm u = w * theta.apply(w).inverse();
        if (ball.contains(u)) rhs.insert(u.win);
        CHECK(u.length() <= 2 * w.length());
    }
    CHECK(lhs == rhs);
    CHECK(lhs.size() > 10);
    // every enumerated twisted involution has even length and decomposes
    for (const auto& win : lhs) {
        AffinePerm u(kM, win);
        CHECK(u.length() % 2 == 0);
        AffinePerm w = twisted_decompose(u, theta);
        CHECK(w * theta.apply(w).inverse() == u);
        CHECK(2 * w.length() == u.length());
    }
}

TEST_CASE("conjugating a twisted involution by s_i and s_theta(i) moves length by 2") {
    DiagramInvolution theta(kM, kShift);
    CoxeterBall ball = enumerate_ball(kM, 6);
    int checked = 0;
    for (const auto& u : ball.elements) {
        if (!is_twisted_involution(u, theta)) continue;
        for (int i = 0; i < kM; ++i) {
            int d = length_conjugation_delta(u, i, theta);
            CHECK((d == 2 || d == -2));
            ++checked;
        }
    }
    CHECK(checked > 100);
    // identity moves up by 2 for every letter
    for (int i = 0; i < kM; ++i)
        CHECK(length_conjugation_delta(AffinePerm::identity(kM), i, theta) == 2);
}

TEST_CASE("greedy minimal double coset representative matches brute force") {
    DiagramInvolution theta(kM, kShift);
    CoxeterBall ball = enumerate_ball(kM, 6);
    Rng rng(4);
    // the fixed example: J = {1, 5}, u = s1 s5 descends to the identity
    {
        AffinePerm u = AffinePerm::gen(kM, 1) * AffinePerm::gen(kM, 5);
        AffinePerm mgreedy = min_double_coset(u, {1, 5}, theta);
        CHECK(mgreedy == AffinePerm::identity(kM));
    }
    for (int it = 0; it < 200; ++it) {
        const AffinePerm& u = ball.elements[rng.below(ball.elements.size())];
        // random proper theta-invariant J built from one or two orbits
        std::vector<int> J;
        std::set<int> js;
        int picks = rng.range(1, 2);
        for (int p = 0; p < picks; ++p) {
            int i = rng.range(0, kM - 1);
            js.insert(i);
            js.insert(theta.on_index(i));
        }
        if (static_cast<int>(js.size()) >= kM) continue;
        J.assign(js.begin(), js.end());
        AffinePerm greedy = min_double_coset(u, J, theta);
        auto coset = double_coset(u, J, theta);
        int best = greedy.length();
        int count_min = 0;
        AffinePerm brute = coset[0];
        for (const auto& x : coset) {
            if (x.length() < best) best = x.length();
        }
        for (const auto& x : coset)
            if (x.length() == best) {
                ++count_min;
                brute = x;
            }
        CHECK(best == greedy.length());
        CHECK(count_min == 1);
        CHECK(brute == greedy);
        // minimality characterization: every letter of J ascends on both sides
        for (int j : J) {
            CHECK((AffinePerm::gen(kM, j) * greedy).length() == greedy.length() + 1);
            CHECK((greedy * AffinePerm::gen(kM, theta.on_index(j))).length() ==
                  greedy.length() + 1);
        }
    }
}

TEST_CASE("exchange property: a descent deletes one letter of a reduced word") {
    CoxeterBall ball = enumerate_ball(kM, 6);
    Rng rng(5);
    for (int it = 0; it < 150; ++it) {
        const AffinePerm& u = ball.elements[rng.below(ball.elements.size())];
        if (u.is_identity()) continue;
        // build a reduced word by greedy left-stripping
        std::vector<int> word;
        AffinePerm rest = u;
        while (!rest.is_identity()) {
            for (int i = 0; i < kM; ++i) {
                AffinePerm s = AffinePerm::gen(kM, i);
                if ((s * rest).length() < rest.length()) {
                    word.push_back(i);
                    rest = s * rest;
                    break;
                }
            }
        }
        CHECK(static_cast<int>(word.size()) == u.length());
        for (int i = 0; i < kM; ++i) {
            AffinePerm s = AffinePerm::gen(kM, i);
            if ((s * u).length() > u.length()) continue;
            bool deletable = false;
            for (size_t skip = 0; skip < word.size() && !deletable; ++skip) {
                AffinePerm cand = AffinePerm::identity(kM);
                for (size_t k = 0; k < word.size(); ++k)
                    if (k != skip) cand = cand * AffinePerm::gen(kM, word[k]);
                if (cand == s * u) deletable = true;
            }
            CHECK(deletable);
        }
    }
}
