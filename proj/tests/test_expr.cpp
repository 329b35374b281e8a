#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "nashatlas/expr.hpp"
#include "nashatlas/parse.hpp"
#include "nashatlas/prng.hpp"

using namespace nashatlas;

TEST_CASE("eval: explicit values") {
    // f(t) = t/(2 sqrt(1+t^2)) + 1/2 at 0 is exactly 1/2
    NashExpr f = parse_expr("x1/(2*sqrt(1+x1^2)) + 1/2");
    CHECK(f.eval({0.0}) == 0.5);

    NashExpr q = parse_expr("x1^2 + x2^2");
    CHECK(q.eval({0.0, 0.0}) == 0.0);

    NashExpr h1 = parse_expr("x1 - 1/x1");
    CHECK(h1.eval({1.0}) == 0.0);
}

TEST_CASE("eval: exact rational path") {
    NashExpr p = parse_expr("(2*x1 - 1)/(3*x1 + 7)");
    Rat v = p.eval_exact({Rat(1, 2)});
    CHECK(v == Rat(0));
    Rat w = p.eval_exact({Rat(5)});
    CHECK(w == Rat(9, 22));
    CHECK(p.sqrt_free());
    NashExpr s = parse_expr("sqrt(1 + x1^2)");
    CHECK_FALSE(s.sqrt_free());
    CHECK_THROWS_AS(s.eval_exact({Rat(1)}), NotRationallyEvaluable);
}

TEST_CASE("eval: error paths") {
    NashExpr s = parse_expr("sqrt(x1)");
    CHECK_THROWS_AS(s.eval({-1.0}), NegativeSqrtArgument);
    CHECK(s.eval({-1e-13}) == 0.0);  // clamped boundary noise

    NashExpr q = parse_expr("1/x1");
    CHECK_THROWS_AS(q.eval({0.0}), DivisionByZero);

    NashExpr f = parse_expr("x1").with_domain(DomainBox::cube(1, Rat(0), Rat(1)));
    CHECK_THROWS_AS(f.eval({2.0}), OutOfDomain);
}

TEST_CASE("partial: explicit values") {
    NashExpr sq = parse_expr("x1^2");
    CHECK(sq.partial(0).eval({3.0}) == 6.0);

    NashExpr root = parse_expr("sqrt(1 + x1^2)");
    CHECK(root.partial(0).eval({0.0}) == 0.0);

    // d/dt [ t/(2 sqrt(1+t^2)) ] at 0 = 1/2, frozen from the central
    // finite-difference oracle with step 1e-5 (value 0.49999999999...)
    NashExpr f = parse_expr("x1/(2*sqrt(1+x1^2))");
    double sym = f.partial(0).eval({0.0});
    double fd = (f.eval({1e-5}) - f.eval({-1e-5})) / 2e-5;
    CHECK(std::abs(sym - 0.5) < 1e-15);
    CHECK(std::abs(sym - fd) < 1e-6);
}

TEST_CASE("partial vs finite differences on random expressions") {
    SplitMix64 rng(2024);
    auto random_expr = [&](auto&& self, int arity, int depth) -> NashExpr {
        if (depth == 0) {
            if (rng.coin()) return NashExpr::variable(arity, static_cast<int>(rng.below(arity)));
            return NashExpr::constant(arity, Rat(static_cast<long>(rng.below(19)) - 9,
                                                 1 + static_cast<long>(rng.below(9))));
        }
        switch (rng.below(6)) {
            case 0: return self(self, arity, depth - 1) + self(self, arity, depth - 1);
            case 1: return self(self, arity, depth - 1) - self(self, arity, depth - 1);
            case 2: return self(self, arity, depth - 1) * self(self, arity, depth - 1);
            case 3: {
                NashExpr d = self(self, arity, depth - 1);
                return self(self, arity, depth - 1) / (NashExpr::constant(arity, Rat(1)) + d * d);
            }
            case 4: {
                NashExpr a = self(self, arity, depth - 1);
                return sqrt(NashExpr::constant(arity, Rat(1)) + a * a);
            }
            default: return self(self, arity, depth - 1);
        }
    };
    for (int e = 0; e < 30; ++e) {
        int arity = 1 + static_cast<int>(rng.below(3));
        NashExpr expr = random_expr(random_expr, arity, 3);
        for (int v = 0; v < arity; ++v) {
            NashExpr d = expr.partial(v);
            for (int s = 0; s < 100; ++s) {
                std::vector<double> x(arity);
                for (int i = 0; i < arity; ++i) x[i] = rng.uniform(-1.0, 1.0);
                auto xp = x, xm = x;
                xp[v] += 1e-5;
                xm[v] -= 1e-5;
                double fd = (expr.eval(xp) - expr.eval(xm)) / 2e-5;
                double sym = d.eval(x);
                REQUIRE(std::abs(sym - fd) <= std::max(1e-6, 1e-6 * std::abs(sym)));
            }
        }
    }
}

TEST_CASE("jacobian: identity and monomial map") {
    NashMap id2 = NashMap::identity(2);
    auto J = jacobian(id2, {0.7, -0.3});
    CHECK(J(0, 0) == 1.0);
    CHECK(J(1, 1) == 1.0);
    CHECK(J(0, 1) == 0.0);

    // (y, rho, v) -> (y, rho, rho v): full rank iff rho != 0
    NashMap mono({parse_expr("x1", 3), parse_expr("x2", 3), parse_expr("x2*x3", 3)});
    auto J0 = jacobian(mono, {0.0, 0.0, 0.8});
    Eigen::FullPivLU<Eigen::MatrixXd> lu0(J0);
    CHECK(lu0.rank() == 2);
    auto J1 = jacobian(mono, {0.0, 0.5, 0.8});
    Eigen::FullPivLU<Eigen::MatrixXd> lu1(J1);
    CHECK(lu1.rank() == 3);
}

TEST_CASE("jacobian matches finite differences for the interval map") {
    NashMap f({parse_expr("x1/(2*sqrt(1+x1^2)) + 1/2")});
    auto J = jacobian(f, {1.0});
    auto Jfd = jacobian_fd(f, {1.0});
    CHECK(std::abs(J(0, 0) - Jfd(0, 0)) <= 1e-6 * std::max(1.0, std::abs(J(0, 0))));
}

TEST_CASE("compose: substitution and identities") {
    // the inverse undoes the interval map on samples
    NashMap f({parse_expr("x1/(2*sqrt(1+x1^2)) + 1/2")});
    NashMap finv({parse_expr("(2*x1-1)/(2*sqrt(x1*(1-x1)))")});
    NashMap round = compose(finv, f);
    SplitMix64 rng(7);
    double max_err = 0.0;
    for (int s = 0; s < 1000; ++s) {
        double t = rng.uniform(-10.0, 10.0);
        max_err = std::max(max_err, std::abs(round.eval({t})[0] - t));
    }
    CHECK(max_err < 1e-9);

    NashMap id = NashMap::identity(1);
    NashMap same = compose(f, id);
    for (double t : {-2.0, 0.0, 3.5}) CHECK(same.eval({t})[0] == f.eval({t})[0]);

    // squaring map after the rational circle parametrization hits (1,0) at 0
    NashMap stereo({parse_expr("(1-x1^2)/(1+x1^2)", 1), parse_expr("2*x1/(1+x1^2)", 1)});
    NashMap square({parse_expr("x1^2-x2^2", 2), parse_expr("2*x1*x2", 2)});
    NashMap circle = compose(square, stereo);
    auto v = circle.eval({0.0});
    CHECK(v[0] == 1.0);
    CHECK(v[1] == 0.0);

    NashMap bad({parse_expr("x1", 1)});
    CHECK_THROWS_AS(compose(square, bad), DimensionMismatch);
}

TEST_CASE("compose is associative up to evaluation") {
    NashMap a({parse_expr("x1 + x2", 2), parse_expr("x1*x2", 2)});
    NashMap b({parse_expr("x1 - 1", 2), parse_expr("x2/(1 + x1^2)", 2)});
    NashMap c({parse_expr("sqrt(1 + x1^2)", 2), parse_expr("x2", 2)});
    NashMap left = compose(compose(a, b), c);
    NashMap right = compose(a, compose(b, c));
    SplitMix64 rng(11);
    for (int s = 0; s < 200; ++s) {
        std::vector<double> x{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        auto lv = left.eval(x), rv = right.eval(x);
        REQUIRE(std::abs(lv[0] - rv[0]) < 1e-12);
        REQUIRE(std::abs(lv[1] - rv[1]) < 1e-12);
    }
}

TEST_CASE("polynomial arithmetic is exact") {
    Polynomial p = parse_polynomial("(x1 + x2)^3");
    Polynomial q = parse_polynomial("x1^3 + 3*x1^2*x2 + 3*x1*x2^2 + x2^3");
    CHECK(p == q);
    CHECK(p.partial(0) == parse_polynomial("3*x1^2 + 6*x1*x2 + 3*x2^2"));
    CHECK(p.eval(RatVec{Rat(1, 3), Rat(2, 3)}) == Rat(1));
    CHECK(parse_polynomial("x1 - x1").is_zero());
}

TEST_CASE("parser rejects malformed input") {
    CHECK_THROWS_AS(parse_expr("x1 +"), ParseError);
    CHECK_THROWS_AS(parse_expr("sqrt(x1"), ParseError);
    CHECK_THROWS_AS(parse_expr("y1"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("1/x1"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("sqrt(x1)"), ParseError);
    // whitespace-insensitive
    CHECK(parse_expr(" x1   + \t 2 * x1 ").eval({1.0}) == 3.0);
}
