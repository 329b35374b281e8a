#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "nashatlas/prng.hpp"
#include "nashatlas/simplex.hpp"

using namespace nashatlas;

namespace {
RatVec pt(std::initializer_list<long> xs) {
    RatVec v;
    for (long x : xs) v.push_back(Rat(x));
    return v;
}
}  // namespace

TEST_CASE("simplex construction rejects degenerate vertex sets") {
    CHECK_THROWS_AS(Simplex({pt({0, 0}), pt({1, 1}), pt({2, 2})}), DegenerateSimplex);
    Simplex ok({pt({0, 0}), pt({1, 0}), pt({0, 1})});
    CHECK(ok.dim() == 2);
}

TEST_CASE("barycentric coordinates: explicit values") {
    Simplex tri({pt({0, 0}), pt({2, 0}), pt({0, 2})});
    CHECK(barycentric(tri, tri.barycenter()) == RatVec{Rat(1, 3), Rat(1, 3), Rat(1, 3)});
    CHECK(barycentric(tri, pt({0, 0})) == RatVec{Rat(1), Rat(0), Rat(0)});
    CHECK(barycentric(tri, RatVec{Rat(1), Rat(0)}) == RatVec{Rat(1, 2), Rat(1, 2), Rat(0)});

    // a 1-simplex embedded in the plane: points off its line are rejected
    Simplex seg({pt({0, 0}), pt({1, 1})});
    CHECK(barycentric(seg, RatVec{Rat(1, 2), Rat(1, 2)}) == RatVec{Rat(1, 2), Rat(1, 2)});
    CHECK_THROWS_AS(barycentric(seg, pt({1, 0})), OutsideAffineHull);
}

TEST_CASE("exact LP certifies common faces") {
    Simplex a({pt({0, 0}), pt({1, 0}), pt({0, 1})});
    Simplex b({pt({1, 0}), pt({0, 1}), pt({1, 1})});   // shares the hypotenuse
    Simplex c({pt({4, 4}), pt({5, 4}), pt({4, 5})});   // disjoint
    Simplex d({pt({0, 0}), pt({2, 0}), pt({0, 2})});   // overlaps a beyond a face
    CHECK(intersect_in_common_face(a, b));
    CHECK(intersect_in_common_face(a, c));
    CHECK_FALSE(intersect_in_common_face(a, d));

    // touching at a single shared vertex is a common face
    Simplex e({pt({1, 0}), pt({2, 0}), pt({2, 1})});
    CHECK(intersect_in_common_face(a, e));
    // touching at a vertex of one lying inside an edge of the other is not
    Simplex f({pt({1, 1}), pt({2, 1}), pt({1, 2})});
    Simplex g({pt({0, 0}), pt({3, 0}), pt({3, 3})});
    CHECK_FALSE(intersect_in_common_face(f, g));
}

TEST_CASE("complex validation and duplicate rejection") {
    Simplex a({pt({0, 0}), pt({1, 0}), pt({0, 1})});
    Simplex b({pt({1, 0}), pt({0, 1}), pt({1, 1})});
    CHECK_NOTHROW(Complex({a, b}));
    Simplex a_perm({pt({1, 0}), pt({0, 0}), pt({0, 1})});
    CHECK_THROWS(Complex({a, a_perm}));
    Simplex bad({pt({0, 0}), pt({2, 0}), pt({0, 2})});
    CHECK_THROWS(Complex({a, bad}));
}

TEST_CASE("erase_homeo: boundary fix, facet collapse, exact round trips") {
    Simplex s1({pt({1, 0}), pt({0, 1}), pt({0, 0})});
    Simplex s2({pt({1, 0}), pt({0, 1}), pt({1, 1})});
    EraseHomeo eh = erase_homeo(s1, s2);

    CHECK(eh.forward.consistent());
    CHECK(eh.inverse.consistent());
    CHECK(eh.v1 == pt({0, 0}));
    CHECK(eh.v2 == pt({1, 1}));

    // psi fixes the outer boundary of sigma_2 pointwise
    for (int k = 0; k <= 10; ++k) {
        Rat lam(k, 10);
        RatVec p1{Rat(1) * (1 - lam) + lam, Rat(0) * (1 - lam) + lam};  // edge (1,0)-(1,1)
        RatVec p2{lam, 1 - lam + lam * 1};                              // edge (0,1)-(1,1): (lam, 1)
        CHECK(eh.forward.apply(p1) == p1);
        CHECK(eh.forward.apply(p2) == p2);
    }

    // the barycenter of tau goes to the opposite vertex of sigma_1
    CHECK(eh.forward.apply(eh.tau.barycenter()) == eh.v1);

    // exact round trips and membership on rational samples
    SplitMix64 rng(12);
    int tested = 0;
    for (int s = 0; s < 10000; ++s) {
        Rat u(static_cast<long>(rng.below(101)), 100), v(static_cast<long>(rng.below(101)), 100);
        if (u + v > 1) continue;
        RatVec p(2);
        for (int c = 0; c < 2; ++c)
            p[c] = s2.verts[0][c] * u + s2.verts[1][c] * v + s2.verts[2][c] * (1 - u - v);
        RatVec img = eh.forward.apply(p);
        REQUIRE((simplex_contains(s1, img) || simplex_contains(s2, img)));
        REQUIRE(eh.inverse.apply(img) == p);
        ++tested;
    }
    CHECK(tested > 3000);
}

TEST_CASE("erase_homeo: error cases") {
    Simplex s1({pt({1, 0}), pt({0, 1}), pt({0, 0})});
    Simplex far({pt({4, 4}), pt({5, 4}), pt({4, 5})});
    CHECK_THROWS_AS(erase_homeo(s1, far), NotFacetAdjacent);
    // same side of the shared facet: overlapping configuration
    Simplex ovl({pt({1, 0}), pt({0, 1}), pt({1, 1})});
    Simplex ovl2({pt({1, 0}), pt({0, 1}), pt({2, 2})});
    CHECK_THROWS_AS(erase_homeo(ovl, ovl2), NotFacetAdjacent);
}

TEST_CASE("erase_homeo in dimension 1 and 3") {
    // 1-d: two segments sharing an endpoint
    Simplex a({pt({-1}), pt({0})});
    Simplex b({pt({0}), pt({1})});
    EraseHomeo eh = erase_homeo(a, b);
    CHECK(eh.forward.apply(RatVec{Rat(0)}) == RatVec{Rat(-1)});
    CHECK(eh.forward.apply(RatVec{Rat(1)}) == RatVec{Rat(1)});
    CHECK(eh.forward.apply(RatVec{Rat(1, 2)}) == RatVec{Rat(1, 2)});  // fixed tail
    CHECK(eh.inverse.apply(RatVec{Rat(-1)}) == RatVec{Rat(0)});

    // 3-d: two tetrahedra glued along a triangle
    Simplex t1({pt({0, 0, 0}), pt({1, 0, 0}), pt({0, 1, 0}), pt({0, 0, -1})});
    Simplex t2({pt({0, 0, 0}), pt({1, 0, 0}), pt({0, 1, 0}), pt({0, 0, 1})});
    EraseHomeo eh3 = erase_homeo(t1, t2);
    CHECK(eh3.forward.consistent());
    CHECK(eh3.forward.apply(eh3.tau.barycenter()) == pt({0, 0, -1}));
    SplitMix64 rng(13);
    for (int s = 0; s < 500; ++s) {
        RatVec lam(4);
        long rest = 12;
        for (int c = 0; c < 3; ++c) {
            long pick = static_cast<long>(rng.below(rest + 1));
            lam[c] = Rat(pick, 12);
            rest -= pick;
        }
        lam[3] = Rat(rest, 12);
        RatVec p(3, Rat(0));
        for (int v = 0; v < 4; ++v)
            for (int c = 0; c < 3; ++c) p[c] += t2.verts[v][c] * lam[v];
        RatVec img = eh3.forward.apply(p);
        REQUIRE(eh3.inverse.apply(img) == p);
    }
}

TEST_CASE("subdivide: triangle, tetrahedron, single cone") {
    Simplex tri({pt({0, 0}), pt({4, 0}), pt({0, 4})});
    auto three = subdivide(tri, {0, 1, 2});
    REQUIRE(three.size() == 3);
    Rat total(0);
    for (const auto& piece : three) total += relative_volume(tri, piece);
    CHECK(total == 1);
    // all three meet at the centroid
    RatVec centroid = tri.barycenter();
    for (const auto& piece : three) {
        bool has = false;
        for (const auto& v : piece.verts) has = has || v == centroid;
        REQUIRE(has);
    }

    Simplex tet({pt({0, 0, 0}), pt({1, 0, 0}), pt({0, 1, 0}), pt({0, 0, 1})});
    auto two = subdivide(tet, {2, 3});
    REQUIRE(two.size() == 2);
    RatVec mid{Rat(0), Rat(1, 2), Rat(1, 2)};  // midpoint of [v2, v3]
    bool has_mid = false;
    for (const auto& piece : two)
        for (const auto& v : piece.verts) has_mid = has_mid || v == mid;
    CHECK(has_mid);

    auto one = subdivide(tet, {1});
    REQUIRE(one.size() == 1);
    CHECK(relative_volume(tet, one[0]) == 1);

    CHECK_THROWS_AS(subdivide(tri, {}), InvalidFacetSelection);
    CHECK_THROWS_AS(subdivide(tri, {5}), InvalidFacetSelection);
}

TEST_CASE("order_d_simplices: chains, shuffles, disconnection") {
    Simplex a({pt({0, 0}), pt({1, 0}), pt({0, 1})});
    Simplex b({pt({1, 0}), pt({0, 1}), pt({1, 1})});
    Complex two({a, b});
    auto order = order_d_simplices(two);
    CHECK(order == std::vector<std::size_t>{0, 1});

    // path of three triangles listed C, B, A: any valid order works
    Simplex c({pt({1, 0}), pt({2, 0}), pt({1, 1})});  // shares edge (1,0)-(1,1) with b
    Complex chain({c, b, a});
    auto o = order_d_simplices(chain);
    CHECK(valid_order(chain, o));
    CHECK(o.size() == 3);
    CHECK(o[0] == 0);

    Simplex far({pt({9, 9}), pt({10, 9}), pt({9, 10})});
    Complex split({a, b, far});
    CHECK_THROWS_AS(order_d_simplices(split), DisconnectedAdjacency);
}

TEST_CASE("interior_to_space: the open simplex fills R^n") {
    // standard 1-simplex: 1/2 -> orthant value 1 -> h1(1) = 0
    Simplex seg({pt({0}), pt({1})});
    InteriorSpaceMaps maps = interior_to_space(seg);
    CHECK(std::abs(maps.to_orthant({0.5})[0] - 1.0) < 1e-15);
    CHECK(std::abs(maps.forward({0.5})[0]) < 1e-15);

    // barycenter of the standard 2-simplex goes to the all-equal orthant point
    Simplex tri({pt({0, 0}), pt({1, 0}), pt({0, 1})});
    InteriorSpaceMaps m2 = interior_to_space(tri);
    auto orth = m2.to_orthant({1.0 / 3, 1.0 / 3});
    CHECK(std::abs(orth[0] - orth[1]) < 1e-15);

    // round trips on interior samples
    SplitMix64 rng(21);
    double max_err = 0.0;
    for (int s = 0; s < 1000; ++s) {
        double u = rng.uniform(0.02, 0.95), v = rng.uniform(0.02, 0.95);
        if (u + v > 0.98) continue;
        std::vector<double> p{u, v};
        auto z = m2.forward(p);
        auto back = m2.inverse(z);
        max_err = std::max({max_err, std::abs(back[0] - p[0]), std::abs(back[1] - p[1])});
    }
    CHECK(max_err < 1e-9);

    CHECK_THROWS_AS(interior_to_space(Simplex({pt({0, 0}), pt({1, 1})})), DegenerateSimplex);
}

TEST_CASE("simplex file parsing") {
    auto sims = parse_simplices("(0, 0); (1, 0); (0, 1)\n(1,0);(0,1);(1,1)\n");
    REQUIRE(sims.size() == 2);
    CHECK(sims[0].dim() == 2);
    CHECK(sims[1].verts[2] == pt({1, 1}));
    auto rats = parse_simplices("(1/2, -3/4); (1, 0)\n");
    CHECK(rats[0].verts[0] == RatVec{Rat(1, 2), Rat(-3, 4)});
}
