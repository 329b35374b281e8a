#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "nashatlas/drill.hpp"

using namespace nashatlas;

namespace {
double vec_err(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}
}  // namespace

TEST_CASE("gauss: normalized generator map") {
    CenterSpec s = trivial_spec(2, 0);
    CHECK(vec_err(gauss(s, {3.0, 4.0}), {0.6, 0.8}) == 0.0);
    CHECK(vec_err(gauss(s, {1.0, 0.0}), {1.0, 0.0}) == 0.0);
    CHECK_THROWS_AS(gauss(s, {0.0, 0.0}), OnCenter);

    CenterSpec g = spec_from_generators(2, 0, {parse_polynomial("x1", 2), parse_polynomial("x1 + x2", 2)});
    auto v = gauss(g, {1.0, 0.0});
    CHECK(std::abs(v[0] - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(v[1] - 1.0 / std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("spec_from_generators: extraction and validation") {
    // monomial not vanishing on the center
    CHECK_THROWS_AS(spec_from_generators(2, 0, {parse_polynomial("x1 + 1", 2)}), UnsupportedSpec);

    CenterSpec g = spec_from_generators(2, 0, {parse_polynomial("x1", 2), parse_polynomial("x2 + x1*x2", 2)});
    validate_spec(g);
    // zeta_1 = (1, x2), zeta_2 = (0, 1)
    CHECK(g.zeta[0][0] == parse_polynomial("1", 2));
    CHECK(g.zeta[0][1] == parse_polynomial("x2", 2));
    CHECK(g.zeta[1][0].is_zero());
    CHECK(g.zeta[1][1] == parse_polynomial("1", 2));

    // dependent directions on the whole center
    CHECK_THROWS_AS(validate_spec(spec_from_generators(
                        3, 1, {parse_polynomial("x2", 3), parse_polynomial("x2 + x3", 3),
                               parse_polynomial("x3", 3)})),
                    std::exception);
}

TEST_CASE("phi: trivial spec is the tautological map") {
    CenterSpec s = trivial_spec(3, 1);
    std::vector<double> w{0.6, 0.8};
    DrillPoint p = phi(s, {2.0}, 0.5, w);
    CHECK(vec_err(p.base, {2.0, 0.3, 0.4}) < 1e-15);
    CHECK(vec_err(p.dir, w) == 0.0);

    // rho = 0 stays well-defined: the whole fiber appears
    DrillPoint q = phi(s, {2.0}, 0.0, w);
    CHECK(vec_err(q.base, {2.0, 0.0, 0.0}) == 0.0);
    CHECK(vec_err(q.dir, w) == 0.0);

    DrillPoint q2 = phi(s, {2.0}, 0.0, {1.0, 0.0});
    CHECK(vec_err(q2.dir, {1.0, 0.0}) == 0.0);
}

TEST_CASE("phi: sign flip is the involution") {
    CenterSpec g = spec_from_generators(2, 0, {parse_polynomial("x1", 2), parse_polynomial("x1 + x2", 2)});
    SplitMix64 rng(3);
    for (int s = 0; s < 200; ++s) {
        double rho = rng.uniform(-2.0, 2.0);
        auto w = rng.sphere(2);
        DrillPoint a = phi(g, {}, rho, w);
        auto wneg = w;
        for (double& c : wneg) c = -c;
        DrillPoint b = phi(g, {}, -rho, wneg);
        REQUIRE(vec_err(a.base, b.base) < 1e-12);
        for (int l = 0; l < 2; ++l) REQUIRE(std::abs(a.dir[l] + b.dir[l]) < 1e-12);
        // sigma has no fixed points: the direction never equals its negative
        double diff = 0.0;
        for (int l = 0; l < 2; ++l) diff = std::max(diff, std::abs(a.dir[l] - (-a.dir[l])));
        REQUIRE(diff > 0.5);
    }
}

TEST_CASE("psi0: closed form on the trivial spec and round trips") {
    CenterSpec s = trivial_spec(3, 1);
    DrillPoint p({1.5, 0.3, 0.4}, {0.6, 0.8});
    ChartTriple t = psi0(s, p);
    CHECK(t.y[0] == 1.5);
    // rho = <z, w> with z = (0.3, 0.4), w = (0.6, 0.8)
    CHECK(std::abs(t.rho - 0.5) < 1e-15);
    CHECK(vec_err(t.w, {0.6, 0.8}) < 1e-15);

    SplitMix64 rng(5);
    double max_err = 0.0;
    CenterSpec g = spec_from_generators(2, 0, {parse_polynomial("x1", 2), parse_polynomial("x1 + x2", 2)});
    for (int i = 0; i < 1000; ++i) {
        const CenterSpec& spec = (i % 2 == 0) ? s : g;
        std::vector<double> y(spec.e);
        for (int c = 0; c < spec.e; ++c) y[c] = rng.uniform(-2.0, 2.0);
        double rho = rng.uniform(-2.0, 2.0);
        auto w = rng.sphere(spec.normal_dim());
        ChartTriple triple = psi0(spec, phi(spec, y, rho, w));
        max_err = std::max(max_err, std::abs(triple.rho - rho));
        for (int j = 0; j < spec.normal_dim(); ++j)
            max_err = std::max(max_err, std::abs(triple.w[j] - w[j]));
    }
    CHECK(max_err < 1e-9);
}

TEST_CASE("psi0: rank-deficient coefficients at a probe point") {
    // zeta_2 = (0, 1 - x1) degenerates at x1 = 1
    CenterSpec s;
    s.d = 2;
    s.e = 0;
    s.k = 2;
    s.zeta = {{parse_polynomial("1", 2), parse_polynomial("0", 2)},
              {parse_polynomial("0", 2), parse_polynomial("1 - x1", 2)}};
    DrillPoint p({1.0, 0.5}, {1.0, 0.0});
    CHECK_THROWS_AS(psi0(s, p), RankDeficient);
}

TEST_CASE("fiber_over: spheres in the right span") {
    CenterSpec s = trivial_spec(2, 0);
    FiberSphere fs = fiber_over(s, {0.0, 0.0});
    CHECK(vec_err(fs({1.0, 0.0}), {1.0, 0.0}) == 0.0);
    CHECK(vec_err(fs({0.0, 1.0}), {0.0, 1.0}) == 0.0);

    CenterSpec t = trivial_spec(3, 1);
    FiberSphere circle = fiber_over(t, {1.2, 0.0, 0.0});
    SplitMix64 rng(6);
    for (int i = 0; i < 100; ++i) {
        auto w = rng.sphere(2);
        auto img = circle(w);
        double n = 0.0;
        for (double c : img) n += c * c;
        REQUIRE(std::abs(std::sqrt(n) - 1.0) < 1e-12);
    }

    CenterSpec aniso = spec_from_generators(2, 0, {parse_polynomial("x1", 2), parse_polynomial("2*x2", 2)});
    FiberSphere ell = fiber_over(aniso, {0.0, 0.0});
    for (int i = 0; i < 100; ++i) {
        auto w = rng.sphere(2);
        REQUIRE(ell.span_residual(w) < 1e-9);
    }
    CHECK_THROWS_AS(fiber_over(s, {0.5, 0.5}), OnCenter);
}

TEST_CASE("local representation: the monomial normal form") {
    CenterSpec t = trivial_spec(3, 1);
    auto rep = local_rep_check(t, {0.0, 0.0, 0.0}, 1e-9);
    CHECK(rep.max_error <= 1e-9);
    CHECK(rep.transversality_error <= 1e-6);

    CenterSpec g = spec_from_generators(2, 0, {parse_polynomial("x1", 2), parse_polynomial("x2 + x1*x2", 2)});
    auto rep2 = local_rep_check(g, {0.0, 0.0}, 1e-6);
    CHECK(rep2.pass());
}

TEST_CASE("change_generators: zero coefficients append a dead coordinate") {
    CenterSpec base = spec_from_generators(2, 0, {parse_polynomial("x1", 2), parse_polynomial("x2", 2)});
    GeneratorChange gc = change_generators(base, {Polynomial(2), Polynomial(2)});
    DrillPoint p({0.3, 0.4}, {0.6, 0.8});
    DrillPoint moved = gc.theta(p);
    REQUIRE(moved.dir.size() == 3);
    CHECK(moved.dir[0] == 0.6);
    CHECK(moved.dir[1] == 0.8);
    CHECK(moved.dir[2] == 0.0);
    DrillPoint back = gc.psi(moved);
    CHECK(vec_err(back.dir, p.dir) == 0.0);
    CHECK(back.base == p.base);
}

TEST_CASE("change_generators: g = (1,1) round trip and graph compatibility") {
    CenterSpec base = spec_from_generators(2, 0, {parse_polynomial("x1", 2), parse_polynomial("x2", 2)});
    GeneratorChange gc = change_generators(
        base, {Polynomial::constant(2, Rat(1)), Polynomial::constant(2, Rat(1))});
    SplitMix64 rng(7);
    double max_err = 0.0;
    for (int s = 0; s < 1000; ++s) {
        std::vector<double> x{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        if (std::hypot(x[0], x[1]) < 0.1) continue;
        DrillPoint p(x, gauss(base, x));
        DrillPoint moved = gc.theta(p);
        REQUIRE(moved.base == x);  // base point preserved exactly
        max_err = std::max(max_err, vec_err(moved.dir, gauss(gc.extended, x)));
        max_err = std::max(max_err, vec_err(gc.psi(moved).dir, p.dir));
    }
    CHECK(max_err < 1e-12);
}

TEST_CASE("classical comparison: two-to-one onto projective pairs") {
    CenterSpec s = trivial_spec(2, 0);
    DrillPoint a({0.0, 0.0}, {1.0, 0.0});
    DrillPoint b({0.0, 0.0}, {-1.0, 0.0});
    CHECK(classical_compare(s, a) == classical_compare(s, b));
    CHECK(classical_compare(s, b).rep == std::vector<double>{1.0, 0.0});

    DrillPoint c({0.0, 0.0}, {0.0, 1.0});
    CHECK(classical_compare(s, c).rep == std::vector<double>{0.0, 1.0});

    SplitMix64 rng(8);
    for (int i = 0; i < 1000; ++i) {
        std::vector<double> x{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        auto w = rng.sphere(2);
        auto wn = w;
        for (double& v : wn) v = -v;
        REQUIRE(classical_compare(s, DrillPoint(x, w)) == classical_compare(s, DrillPoint(x, wn)));
        REQUIRE(vec_err(w, wn) > 0.5);  // the two preimages are distinct
    }
}

TEST_CASE("erase: R \\ {0} onto R, and the plane case") {
    EraseMap line(1, 0);
    auto p0 = line.preimage({0.0});
    CHECK(std::abs(line(p0)[0]) < 1e-8);
    auto rep1 = erase_probe(line, 1e-6);
    CHECK(rep1.pass());

    EraseMap plane(2, 0);
    auto rep2 = erase_probe(plane, 1e-6);
    CHECK(rep2.pass());
    CHECK_THROWS_AS(plane({0.0, 0.0}), OnCenter);

    SplitMix64 rng(9);
    for (int s = 0; s < 10000; ++s) {
        std::vector<double> x{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
        if (std::hypot(x[0], x[1]) < 1e-9) continue;
        auto img = plane(x);  // never raises off the center
        REQUIRE(std::isfinite(img[0]));
        REQUIRE(std::isfinite(img[1]));
    }
}

TEST_CASE("erase: cylinder center in R^3") {
    EraseMap cyl(3, 1);
    auto rep = erase_probe(cyl, 1e-6);
    CHECK(rep.pass());
}

TEST_CASE("properness proxy: preimages over a box stay over the box") {
    CenterSpec s = trivial_spec(2, 0);
    SplitMix64 rng(10);
    for (int i = 0; i < 500; ++i) {
        std::vector<double> x{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
        if (std::hypot(x[0], x[1]) < 1e-6) {
            FiberSphere fs = fiber_over(s, {0.0, 0.0});
            auto w = rng.sphere(2);
            auto dir = fs(w);
            double n = 0.0;
            for (double c : dir) n += c * c;
            REQUIRE(std::abs(std::sqrt(n) - 1.0) < 1e-12);
            continue;
        }
        auto dir = gauss(s, x);
        DrillPoint p(x, dir);
        REQUIRE(std::abs(p.base[0]) <= 1.5);
        REQUIRE(std::abs(p.base[1]) <= 1.5);
    }
}

TEST_CASE("spec files parse") {
    CenterSpec t = parse_center_spec("d = 3\ne = 1\ntrivial\n");
    CHECK(t.d == 3);
    CHECK(t.k == 2);
    CenterSpec g = parse_center_spec("# demo\nd = 2\ne = 0\ngenerators = x1; x1 + x2\n");
    CHECK(g.k == 2);
    CHECK(g.generator_form);
    CHECK_THROWS_AS(parse_center_spec("d = 1\ne = 1\n"), ParseError);
}
