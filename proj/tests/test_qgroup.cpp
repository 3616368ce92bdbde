#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <random>

#include "qpi/qgroup.hpp"

using namespace qpi;

namespace {

std::shared_ptr<const Tower> free_tower(const PiSet& pi) {
    Alphabet ab;
    ab.add("a");
    ab.add("b");
    return std::make_shared<const Tower>(ab, pi);
}

QElement elem(std::shared_ptr<const Tower> tw, const std::string& s) {
    return q_element(tw, parse_word(tw->alphabet(), s));
}

} // namespace

TEST_CASE("group operations") {
    auto f = free_tower(PiSet({2}));
    QElement x = elem(f, "a*b^-1*a");
    CHECK(is_identity(q_mul(x, q_inv(x))));
    CHECK(q_equal(q_mul(elem(f, "a"), elem(f, "b")), elem(f, "a*b")));

    QElement t = qexp(elem(f, "a"), PiRational(1, 2));
    CHECK(q_equal(q_mul(t, t), QElement{t.tower, parse_word(t.tower->alphabet(), "a")}));
}

TEST_CASE("qexp spec cases") {
    auto f = free_tower(PiSet({2}));

    QElement t = qexp(elem(f, "a"), PiRational(1, 2));
    CHECK(t.tower->rank() == 1);
    CHECK(t.word == parse_word(t.tower->alphabet(), "t1"));

    QElement t3 = qexp(elem(f, "a"), PiRational(3, 2));
    CHECK(t3.word == normal_form(*t3.tower, parse_word(t3.tower->alphabet(), "t1^3")));
    CHECK(is_identity(q_mul(q_pow(t3, 2), q_pow(QElement{t3.tower, parse_word(t3.tower->alphabet(), "a")}, -3))));

    QElement c = qexp(elem(f, "b*a*b^-1"), PiRational(1, 2));
    CHECK(c.word == parse_word(c.tower->alphabet(), "b*t1*b^-1"));

    QElement sq = qexp(elem(f, "a*b*a*b"), PiRational(1, 2));
    CHECK(sq.tower->rank() == 0);  // no extension needed
    CHECK(sq.word == parse_word(f->alphabet(), "a*b"));

    CHECK_THROWS_AS(qexp(elem(f, "a"), PiRational(1, 3)), PiViolationError);
}

TEST_CASE("pi criterion for x^p = a") {
    auto f = free_tower(PiSet({2, 3}));
    for (long long p : {2, 3, 5, 7}) {
        if (p == 2 || p == 3) {
            QElement x = qexp(elem(f, "a"), PiRational(1, p));
            CHECK(is_identity(q_mul(q_pow(x, p), q_inv(QElement{x.tower, parse_word(x.tower->alphabet(), "a")}))));
        } else {
            CHECK_THROWS_AS(qexp(elem(f, "a"), PiRational(1, p)), PiViolationError);
        }
    }
}

TEST_CASE("minimal extension") {
    auto f = free_tower(PiSet({2}));
    QElement t = qexp(elem(f, "a"), PiRational(1, 2));
    CHECK(t.tower->rank() == 1);
    // the root exists now: no further extension
    QElement again = qexp(QElement{t.tower, parse_word(t.tower->alphabet(), "a")},
                          PiRational(1, 2));
    CHECK(again.tower->rank() == 1);
    CHECK(q_equal(again, t));
    // a^(1/4) over the same lineage adds exactly one more root
    QElement q4 = qexp(QElement{t.tower, parse_word(t.tower->alphabet(), "a")},
                       PiRational(1, 4));
    CHECK(q4.tower->rank() == 2);
    CHECK(q4.tower->extends(*t.tower));
    CHECK(is_identity(q_mul(q_pow(q4, 4), q_inv(QElement{q4.tower, parse_word(q4.tower->alphabet(), "a")}))));
}

TEST_CASE("is_identity") {
    auto f = free_tower(PiSet({2}));
    QElement t = qexp(elem(f, "a"), PiRational(1, 2));
    QElement a_lift{t.tower, parse_word(t.tower->alphabet(), "a")};
    CHECK(is_identity(q_mul(q_pow(t, 2), q_inv(a_lift))));
    CHECK_FALSE(is_identity(elem(f, "a*b")));
    // commutator of a with its root
    CHECK(is_identity(q_mul(q_mul(q_inv(t), q_inv(a_lift)), q_mul(t, a_lift))));
}

TEST_CASE("lineage errors") {
    auto f1 = free_tower(PiSet({2}));
    auto f2 = free_tower(PiSet({3}));
    CHECK_THROWS_AS(q_mul(elem(f1, "a"), elem(f2, "b")), LineageError);

    auto f = free_tower(PiSet({2, 3}));
    QElement x = qexp(elem(f, "a"), PiRational(1, 2));
    QElement y = qexp(elem(f, "b"), PiRational(1, 3));  // diverging lineage
    CHECK_THROWS_AS(q_mul(x, y), LineageError);
}

TEST_CASE("axiom sample") {
    std::mt19937 rng(211);
    PiSet pi({2, 3, 5});
    std::uniform_int_distribution<int> nd(-6, 6);
    std::uniform_int_distribution<int> qpick(0, 2);
    std::uniform_int_distribution<int> wl(1, 5);
    long long qden[] = {2, 3, 5};
    auto rand_alpha = [&] {
        long long d = 1;
        for (int i = 0, k = qpick(rng); i < k; ++i) d *= qden[qpick(rng)];
        if (d > 8) d = qden[qpick(rng)];
        return PiRational(nd(rng), d);
    };
    for (int iter = 0; iter < 60; ++iter) {
        auto f = free_tower(pi);
        std::uniform_int_distribution<int> gd(0, 1);
        std::uniform_int_distribution<int> sd(0, 1);
        Word gw;
        for (int i = 0, n = wl(rng); i < n; ++i)
            gw.push_back({gd(rng), sd(rng) ? 1 : -1});
        QElement g = q_element(f, gw);
        PiRational al = rand_alpha(), be = rand_alpha();

        QElement ga = qexp(g, al);
        QElement g1{ga.tower, g.word};
        QElement gb = qexp(g1, be);
        QElement g2{gb.tower, g.word};

        // g^1 = g, g^0 = 1
        CHECK(q_equal(qexp(g2, PiRational(1, 1)), g2));
        CHECK(is_identity(qexp(g2, PiRational(0, 1))));
        // g^(a+b) = g^a g^b
        QElement lhs = qexp(g2, al + be);
        QElement rhs = q_mul(QElement{gb.tower, ga.word}, gb);
        QElement l2{rhs.tower->extends(*lhs.tower) ? rhs.tower : lhs.tower, lhs.word};
        CHECK(is_identity(q_mul(l2, q_inv({l2.tower, rhs.word}))));
        // (g^a)^b = g^(ab)
        QElement gab = qexp(QElement{gb.tower, ga.word}, be);
        QElement gmul = qexp(QElement{gab.tower, g.word}, al * be);
        CHECK(is_identity(q_mul(gmul, q_inv({gmul.tower, gab.word}))));
        // (h^-1 g h)^a = h^-1 g^a h
        Word hw;
        for (int i = 0, n = wl(rng); i < n; ++i)
            hw.push_back({gd(rng), sd(rng) ? 1 : -1});
        QElement gc = q_element(f, fmul(fmul(inverse(hw), g.word), hw));
        QElement lhs2 = qexp(gc, al);
        QElement rhs2{lhs2.tower, tconj(*lhs2.tower, hw, ga.word)};
        CHECK(is_identity(q_mul(lhs2, q_inv(rhs2))));
    }
}

TEST_CASE("commuting product axiom") {
    std::mt19937 rng(223);
    PiSet pi({2, 3});
    std::uniform_int_distribution<int> ed(-3, 3);
    for (int iter = 0; iter < 40; ++iter) {
        auto f = free_tower(pi);
        QElement c = elem(f, iter % 2 ? "a*b" : "a*b^-1*a");
        long long i = ed(rng), j = ed(rng);
        QElement g = q_pow(c, i), h = q_pow(c, j);
        PiRational al(ed(rng), iter % 2 ? 2 : 3);
        QElement gh = q_mul(g, h);
        QElement lhs = qexp(gh, al);
        QElement ga = qexp(QElement{lhs.tower, g.word}, al);
        QElement ha = qexp(QElement{ga.tower, h.word}, al);
        QElement rhs = q_mul(QElement{ha.tower, ga.word}, ha);
        CHECK(is_identity(q_mul(QElement{rhs.tower, lhs.word}, q_inv(rhs))));
    }
}
