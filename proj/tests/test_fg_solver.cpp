#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "qpi/fg_solver.hpp"

using namespace qpi;

namespace {

ConstrainedFreeSystem base_system(std::vector<std::string> gens,
                                  std::vector<std::string> vars) {
    ConstrainedFreeSystem sys;
    for (auto& g : gens) sys.alphabet.add(g);
    sys.variables = std::move(vars);
    return sys;
}

Word pw(const Alphabet& ab, const std::string& s) { return parse_word(ab, s); }

} // namespace

TEST_CASE("solve_bounded basics") {
    // x a^-1 = 1  ->  x = a
    auto sys = base_system({"a", "b"}, {"x"});
    sys.equations.push_back(
        {CFTerm::variable(0), CFTerm::word(pw(sys.alphabet, "a^-1"))});
    auto asg = solve_bounded(sys, 4);
    REQUIRE(asg.has_value());
    CHECK(asg->words[0] == pw(sys.alphabet, "a"));

    // x^2 = a has no solution in the free group at any bound
    auto sq = base_system({"a", "b"}, {"x"});
    sq.equations.push_back({CFTerm::variable(0), CFTerm::variable(0),
                            CFTerm::word(pw(sq.alphabet, "a^-1"))});
    CHECK_FALSE(solve_bounded(sq, 6).has_value());
}

TEST_CASE("solve_bounded commutation pins to powers") {
    auto sys = base_system({"a", "t"}, {"x"});
    int t = sys.alphabet.index_of("t");
    sys.commutations.push_back({0, t});
    auto asg = solve_bounded(sys, 4);
    REQUIRE(asg.has_value());
    CHECK(asg->words[0].empty());  // least is the identity

    sys.inequations.push_back(0);
    asg = solve_bounded(sys, 4);
    REQUIRE(asg.has_value());
    CHECK(asg->words[0] == pw(sys.alphabet, "t"));

    // pinned to t but forced equal to a: unsolvable
    sys.equations.push_back(
        {CFTerm::variable(0), CFTerm::word(pw(sys.alphabet, "a^-1"))});
    CHECK_FALSE(solve_bounded(sys, 5).has_value());
}

TEST_CASE("solve_bounded memberships and canonical order") {
    auto sys = base_system({"a", "b"}, {"x", "y"});
    // x y = a b with x a nontrivial element of <a>
    sys.equations.push_back({CFTerm::variable(0), CFTerm::variable(1),
                             CFTerm::word(pw(sys.alphabet, "b^-1*a^-1"))});
    sys.memberships.push_back({0, 1});
    sys.inequations.push_back(0);
    auto asg = solve_bounded(sys, 4);
    REQUIRE(asg.has_value());
    CHECK(asg->words[0] == pw(sys.alphabet, "a"));
    CHECK(asg->words[1] == pw(sys.alphabet, "b"));
    CHECK(verify_assignment(sys, *asg));

    // without constraints the least witness by total length then shortlex is
    // x = 1, y = a b
    auto sys2 = base_system({"a", "b"}, {"x", "y"});
    sys2.equations.push_back({CFTerm::variable(0), CFTerm::variable(1),
                              CFTerm::word(pw(sys2.alphabet, "b^-1*a^-1"))});
    asg = solve_bounded(sys2, 4);
    REQUIRE(asg.has_value());
    CHECK(asg->words[0].empty());
    CHECK(asg->words[1] == pw(sys2.alphabet, "a*b"));
}

TEST_CASE("solve_bounded integer relations") {
    auto sys = base_system({"a"}, {});
    sys.int_vars = {"m", "r"};
    sys.linears.push_back({{{0, 1}, {1, 1}}, -3});  // m + r = 3
    sys.linears.push_back({{{0, 1}, {1, -1}}, 1});  // m - r = -1
    auto asg = solve_bounded(sys, 4);
    REQUIRE(asg.has_value());
    CHECK(asg->ints[0] == 1);
    CHECK(asg->ints[1] == 2);

    sys.linears.push_back({{{0, 2}}, -1});  // 2m = 1, impossible
    CHECK_FALSE(solve_bounded(sys, 4).has_value());
}

TEST_CASE("verify_assignment") {
    auto sys = base_system({"a", "b"}, {"x"});
    sys.equations.push_back(
        {CFTerm::variable(0), CFTerm::word(pw(sys.alphabet, "a^-1"))});
    CHECK(verify_assignment(sys, {{pw(sys.alphabet, "a")}, {}}));
    CHECK_FALSE(verify_assignment(sys, {{pw(sys.alphabet, "b")}, {}}));
    CHECK_THROWS_AS(verify_assignment(sys, {{}, {}}), CoverageError);

    sys.memberships.push_back({0, 0});  // x must be trivial
    CHECK_FALSE(verify_assignment(sys, {{pw(sys.alphabet, "a")}, {}}));

    auto ineq = base_system({"a"}, {"x"});
    ineq.inequations.push_back(0);
    CHECK_FALSE(verify_assignment(ineq, {{Word{}}, {}}));
    CHECK(verify_assignment(ineq, {{pw(ineq.alphabet, "a")}, {}}));
}

TEST_CASE("solve_lin_dioph examples") {
    // l1 + 4 = l2, l2 = l3  ->  (0, 4, 4)
    LinearDiophantineSystem sys;
    sys.nvars = 3;
    sys.rows.push_back({{1, -1, 0}, -4});
    sys.rows.push_back({{0, 1, -1}, 0});
    auto res = solve_lin_dioph(sys, 20);
    REQUIRE(res.solution.has_value());
    CHECK(*res.solution == std::vector<long long>({0, 4, 4}));

    // x1 + x2 = 2d, d in Z_2, d >= 2  ->  (0, 4, 2)
    LinearDiophantineSystem dd;
    dd.nvars = 3;
    dd.rows.push_back({{1, 1, -2}, 0});
    dd.d_var = 2;
    dd.pi = PiSet({2});
    dd.d_min = 2;
    res = solve_lin_dioph(dd, 20);
    REQUIRE(res.solution.has_value());
    CHECK(*res.solution == std::vector<long long>({0, 4, 2}));

    // x1 - x2 = d, x2 = 0, d in Z_3, d >= 2  ->  x1 = d = 3
    LinearDiophantineSystem d3;
    d3.nvars = 3;
    d3.rows.push_back({{1, -1, -1}, 0});
    d3.zero.push_back(1);
    d3.d_var = 2;
    d3.pi = PiSet({3});
    d3.d_min = 2;
    res = solve_lin_dioph(d3, 20);
    REQUIRE(res.solution.has_value());
    CHECK(*res.solution == std::vector<long long>({3, 0, 3}));

    // x = -1: inconsistent, not exhausted
    LinearDiophantineSystem bad;
    bad.nvars = 1;
    bad.rows.push_back({{1}, -1});
    res = solve_lin_dioph(bad, 20);
    CHECK_FALSE(res.solution.has_value());
    CHECK_FALSE(res.exhausted);

    // 2x = 43: no free variables, so infeasibility is proven, not exhausted
    LinearDiophantineSystem ex;
    ex.nvars = 1;
    ex.rows.push_back({{2}, 43});
    res = solve_lin_dioph(ex, 20);
    CHECK_FALSE(res.solution.has_value());
    CHECK_FALSE(res.exhausted);

    // x1 + x2 = 45 with cap 20: solvable beyond the cap, reported exhausted
    LinearDiophantineSystem far;
    far.nvars = 2;
    far.rows.push_back({{1, 1}, 45});
    res = solve_lin_dioph(far, 20);
    CHECK_FALSE(res.solution.has_value());
    CHECK(res.exhausted);
}

TEST_CASE("solve_lin_dioph minimality side condition") {
    // x = 2d with minimality: every candidate x is divisible by d
    LinearDiophantineSystem sys;
    sys.nvars = 2;
    sys.rows.push_back({{1, -2}, 0});
    sys.d_var = 1;
    sys.pi = PiSet({2});
    sys.d_min = 2;
    sys.minimality = true;
    auto res = solve_lin_dioph(sys, 20);
    CHECK_FALSE(res.solution.has_value());
    CHECK(res.exhausted);

    // x1 + x2 = 3d admits x1 = 1, x2 = 5, d = 2 under minimality
    LinearDiophantineSystem ok;
    ok.nvars = 3;
    ok.rows.push_back({{1, 1, -3}, 0});
    ok.d_var = 2;
    ok.pi = PiSet({2});
    ok.d_min = 2;
    ok.minimality = true;
    ok.positive.push_back(0);
    res = solve_lin_dioph(ok, 20);
    REQUIRE(res.solution.has_value());
    CHECK(*res.solution == std::vector<long long>({1, 5, 2}));
}

TEST_CASE("solve_lin_dioph agrees with brute force") {
    std::mt19937 rng(307);
    std::uniform_int_distribution<int> cd(-4, 4);
    std::uniform_int_distribution<int> rd(-8, 8);
    std::uniform_int_distribution<int> nv(1, 3);
    std::uniform_int_distribution<int> nr(1, 2);
    const long long cap = 10;
    for (int iter = 0; iter < 400; ++iter) {
        LinearDiophantineSystem sys;
        sys.nvars = nv(rng);
        int rows = nr(rng);
        for (int r = 0; r < rows; ++r) {
            LinRow row;
            for (int j = 0; j < sys.nvars; ++j) row.coef.push_back(cd(rng));
            row.rhs = rd(rng);
            sys.rows.push_back(row);
        }
        // brute force over the box [0, cap]^n
        std::optional<std::vector<long long>> expect;
        std::vector<long long> v(static_cast<std::size_t>(sys.nvars), 0);
        std::function<void(int)> scan = [&](int i) {
            if (i == sys.nvars) {
                for (const LinRow& row : sys.rows) {
                    long long s = -row.rhs;
                    for (int j = 0; j < sys.nvars; ++j)
                        s += row.coef[static_cast<std::size_t>(j)] *
                             v[static_cast<std::size_t>(j)];
                    if (s != 0) return;
                }
                if (!expect) expect = v;
                return;
            }
            for (long long x = 0; x <= cap && !expect; ++x) {
                v[static_cast<std::size_t>(i)] = x;
                scan(i + 1);
            }
        };
        scan(0);
        auto res = solve_lin_dioph(sys, cap);
        REQUIRE(res.solution.has_value() == expect.has_value());
        if (expect) CHECK(*res.solution == *expect);
    }
}

#include <memory>

#include "qpi/eq_pipeline.hpp"

namespace {

std::shared_ptr<const Tower> two_gen_tower(std::vector<Int> primes) {
    Alphabet ab;
    ab.add("a");
    ab.add("b");
    return std::make_shared<const Tower>(ab, PiSet(std::move(primes)));
}

EquationSystem one_eq(std::shared_ptr<const Tower> tw, Equation eq,
                      std::vector<std::string> vars = {"x"}) {
    EquationSystem sys;
    sys.tower = std::move(tw);
    sys.variables = std::move(vars);
    sys.equations.push_back(std::move(eq));
    return sys;
}

bool q_check(const EquationSystem& sys, const Decision& d) {
    for (const Equation& eq : sys.equations) {
        QElement acc = q_identity(d.tower);
        for (const EqAtom& a : eq) {
            QElement v = a.is_var
                ? q_pow(q_element(d.tower,
                                  d.witness[static_cast<std::size_t>(a.var)]),
                        a.power)
                : qexp(q_element(d.tower, a.base), a.exp);
            acc = q_mul(acc, v);
        }
        if (!is_identity(acc)) return false;
    }
    for (int v : sys.inequations)
        if (normal_form(*d.tower, d.witness[static_cast<std::size_t>(v)]).empty())
            return false;
    return true;
}

} // namespace

TEST_CASE("decide_system pure powers") {
    auto tw = two_gen_tower({2});
    Word a = parse_word(tw->alphabet(), "a");
    Budgets b;

    // x^2 = a: adjoin the square root
    auto sys = one_eq(tw, {EqAtom::variable(0, 2),
                           EqAtom::coefficient(a, PiRational(-1, 1))});
    Decision d = decide_system(sys, b);
    REQUIRE(d.verdict == Verdict::Solvable);
    CHECK(d.tower->rank() == 1);
    CHECK(d.witness[0] == parse_word(d.tower->alphabet(), "t1"));
    CHECK(q_check(sys, d));

    // x^5 = a with pi = {2, 3}: the degree is unavailable
    auto t23 = two_gen_tower({2, 3});
    auto s5 = one_eq(t23, {EqAtom::variable(0, 5),
                           EqAtom::coefficient(a, PiRational(-1, 1))});
    CHECK(decide_system(s5, b).verdict == Verdict::Unsolvable);

    // x^2 = a^3: solvable without leaving Q_2
    auto s3 = one_eq(tw, {EqAtom::variable(0, 2),
                          EqAtom::coefficient(a, PiRational(-3, 1))});
    d = decide_system(s3, b);
    REQUIRE(d.verdict == Verdict::Solvable);
    CHECK(q_check(s3, d));

    // x^6 = a^2 with pi = {3}: strip the out-of-pi factor via the exponent
    auto t3 = two_gen_tower({3});
    auto s6 = one_eq(t3, {EqAtom::variable(0, 6),
                          EqAtom::coefficient(a, PiRational(-2, 1))});
    d = decide_system(s6, b);
    REQUIRE(d.verdict == Verdict::Solvable);
    CHECK(d.tower->rank() == 1);
    CHECK(q_check(s6, d));

    // x^-2 = a^-1 is the same as x^2 = a
    auto sneg = one_eq(tw, {EqAtom::variable(0, -2),
                            EqAtom::coefficient(a, PiRational(1, 1))});
    d = decide_system(sneg, b);
    REQUIRE(d.verdict == Verdict::Solvable);
    CHECK(q_check(sneg, d));

    // fractional coefficient: x = a^(1/2)
    auto sf = one_eq(tw, {EqAtom::variable(0),
                          EqAtom::coefficient(a, PiRational(-1, 2))});
    d = decide_system(sf, b);
    REQUIRE(d.verdict == Verdict::Solvable);
    CHECK(d.witness[0] == parse_word(d.tower->alphabet(), "t1"));
}

TEST_CASE("decide_system torsion and constants") {
    auto tw = two_gen_tower({2});
    Word a = parse_word(tw->alphabet(), "a");
    Budgets b;

    // x^2 = 1 forces x = 1
    auto sys = one_eq(tw, {EqAtom::variable(0, 2)});
    Decision d = decide_system(sys, b);
    REQUIRE(d.verdict == Verdict::Solvable);
    CHECK(d.witness[0].empty());

    sys.inequations.push_back(0);
    CHECK(decide_system(sys, b).verdict == Verdict::Unsolvable);

    // x x^-1 a = 1 is the constant a
    auto sc = one_eq(tw, {EqAtom::variable(0, 1), EqAtom::variable(0, -1),
                          EqAtom::coefficient(a)});
    CHECK(decide_system(sc, b).verdict == Verdict::Unsolvable);

    // a * a^-1 = 1 holds; the variable is free
    auto sid = one_eq(tw, {EqAtom::coefficient(a),
                           EqAtom::coefficient(a, PiRational(-1, 1))});
    sid.inequations.push_back(0);
    d = decide_system(sid, b);
    REQUIRE(d.verdict == Verdict::Solvable);
    CHECK(!d.witness[0].empty());
    CHECK(q_check(sid, d));
}

TEST_CASE("decide_system conjugacy") {
    auto tw = two_gen_tower({2});
    Word a = parse_word(tw->alphabet(), "a");
    Word ab = parse_word(tw->alphabet(), "a*b");
    Word ba = parse_word(tw->alphabet(), "b*a");
    Budgets b;

    // x (ab) x^-1 = ba: conjugate in the free part
    auto sys = one_eq(tw, {EqAtom::variable(0), EqAtom::coefficient(ab),
                           EqAtom::variable(0, -1),
                           EqAtom::coefficient(inverse(ba))});
    Decision d = decide_system(sys, b);
    REQUIRE(d.verdict == Verdict::Solvable);
    CHECK(q_check(sys, d));

    // a and b are not conjugate
    auto bad = one_eq(tw, {EqAtom::variable(0), EqAtom::coefficient(a),
                           EqAtom::variable(0, -1),
                           EqAtom::coefficient(
                               inverse(parse_word(tw->alphabet(), "b")))});
    CHECK(decide_system(bad, b).verdict == Verdict::Unsolvable);

    // x a x^-1 = a with x != 1: a centralizer element
    auto cen = one_eq(tw, {EqAtom::variable(0), EqAtom::coefficient(a),
                           EqAtom::variable(0, -1),
                           EqAtom::coefficient(a, PiRational(-1, 1))});
    cen.inequations.push_back(0);
    d = decide_system(cen, b);
    REQUIRE(d.verdict == Verdict::Solvable);
    CHECK(q_check(cen, d));

    // inside a tower: x t1 x^-1 = b t1 b^-1
    Alphabet base;
    base.add("a");
    base.add("b");
    Tower bt(base, PiSet({2}));
    auto ext = std::make_shared<const Tower>(
        bt.adjoin_root(parse_word(base, "a"), 2));
    Word t1 = parse_word(ext->alphabet(), "t1");
    Word conj = normal_form(*ext, parse_word(ext->alphabet(), "b*t1*b^-1"));
    auto tc = one_eq(ext, {EqAtom::variable(0), EqAtom::coefficient(t1),
                           EqAtom::variable(0, -1),
                           EqAtom::coefficient(tinv(*ext, conj))});
    d = decide_system(tc, b);
    REQUIRE(d.verdict == Verdict::Solvable);
    CHECK(q_check(tc, d));
}

TEST_CASE("decide_system general path") {
    auto tw = two_gen_tower({2});
    Word a = parse_word(tw->alphabet(), "a");
    Word bw = parse_word(tw->alphabet(), "b");
    Budgets small;
    small.max_len = 4;
    small.max_rank = 1;

    // x y = a, y = b: solvable over the base tower
    EquationSystem sys;
    sys.tower = tw;
    sys.variables = {"x", "y"};
    sys.equations.push_back({EqAtom::variable(0), EqAtom::variable(1),
                             EqAtom::coefficient(a, PiRational(-1, 1))});
    sys.equations.push_back({EqAtom::variable(1),
                             EqAtom::coefficient(bw, PiRational(-1, 1))});
    Decision d = decide_system(sys, small);
    REQUIRE(d.verdict == Verdict::Solvable);
    CHECK(d.tower->rank() == 0);
    CHECK(d.witness[0] == parse_word(tw->alphabet(), "a*b^-1"));
    CHECK(d.witness[1] == bw);

    // x^2 = a, y = x: needs the adjoined root
    EquationSystem rt;
    rt.tower = tw;
    rt.variables = {"x", "y"};
    rt.equations.push_back({EqAtom::variable(0, 2),
                            EqAtom::coefficient(a, PiRational(-1, 1))});
    rt.equations.push_back({EqAtom::variable(1), EqAtom::variable(0, -1)});
    d = decide_system(rt, small);
    REQUIRE(d.verdict == Verdict::Solvable);
    CHECK(d.tower->rank() == 1);
    CHECK(d.witness[0] == d.witness[1]);
    CHECK(q_check(rt, d));

    // x y = a, y x = b has no solution (the sides are conjugate); the desk
    // search cannot prove that, so the verdict stays unknown
    EquationSystem open_;
    open_.tower = tw;
    open_.variables = {"x", "y"};
    open_.equations.push_back({EqAtom::variable(0), EqAtom::variable(1),
                               EqAtom::coefficient(a, PiRational(-1, 1))});
    open_.equations.push_back({EqAtom::variable(1), EqAtom::variable(0),
                               EqAtom::coefficient(bw, PiRational(-1, 1))});
    d = decide_system(open_, small);
    CHECK(d.verdict == Verdict::Unknown);
    CHECK(!d.detail.empty());

    // no equations at all: inequations are still honored
    EquationSystem none;
    none.tower = tw;
    none.variables = {"x", "y"};
    none.inequations = {1};
    d = decide_system(none, small);
    REQUIRE(d.verdict == Verdict::Solvable);
    CHECK(d.witness[0].empty());
    CHECK(!d.witness[1].empty());
}
