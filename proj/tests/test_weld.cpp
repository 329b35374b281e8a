#include <catch2/catch_amalgamated.hpp>

#include "nashatlas/oracles.hpp"
#include "nashatlas/parse.hpp"
#include "nashatlas/prng.hpp"
#include "nashatlas/weld.hpp"

using namespace nashatlas;

namespace {
OrthantSet F(const std::string& text) { return parse_orthants(text); }
}  // namespace

TEST_CASE("eta: breakpoints where adjacent pieces differ") {
    Polynomial t = Polynomial::variable(1, 0);

    // identical pieces: eta is empty
    PiecewisePolyPath same({Rat(0), Rat(1, 2), Rat(1)}, {{t, t}, {t, t}});
    CHECK(same.eta().empty());

    // (t, t) then (t, 2t - 1/2): one junction point at (1/2, 1/2)
    Polynomial bent = t * Rat(2) - Polynomial::constant(1, Rat(1, 2));
    PiecewisePolyPath kink({Rat(0), Rat(1, 2), Rat(1)}, {{t, t}, {t, bent}});
    auto eta = kink.eta();
    REQUIRE(eta.size() == 1);
    CHECK(eta[0] == RatVec{Rat(1, 2), Rat(1, 2)});

    // only the second junction is non-smooth
    Polynomial shifted = t * Rat(3) - Polynomial::constant(1, Rat(3, 2));
    PiecewisePolyPath three({Rat(0), Rat(1, 4), Rat(3, 4), Rat(1)}, {{t, t}, {t, t}, {t, shifted}});
    auto e3 = three.eta();
    REQUIRE(e3.size() == 1);
    CHECK(e3[0] == RatVec{Rat(3, 4), Rat(3, 4)});

    // value disagreement at a breakpoint is rejected
    CHECK_THROWS(PiecewisePolyPath({Rat(0), Rat(1, 2), Rat(1)}, {{t, t}, {t, t + Polynomial::constant(1, Rat(1))}}));

    // eta is bounded by the number of interior breakpoints
    CHECK(kink.eta().size() <= kink.piece_count() - 1);
}

TEST_CASE("reg_components: hamming gluing") {
    CHECK(reg_components(F("++,--")).size() == 2);
    CHECK(reg_components(F("++,-+")).size() == 1);
    CHECK(reg_components(F("++,+-,-+,--")).size() == 1);
    CHECK(reg_components(F("+")).size() == 1);
    CHECK(reg_components(F("+++,--+,-+-")).size() == 3);
}

TEST_CASE("reg_components agrees with the flood-fill oracle") {
    // the two-quadrant germ on the fine grid used for the worked example
    CHECK(floodfill_component_count(F("++,--"), 101) == 2);
    CHECK(reg_component_count(F("++,--")) == 2);

    SplitMix64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        int ell = 1 + static_cast<int>(rng.below(3));
        std::vector<SignVec> fam;
        for (int code = 0; code < (1 << ell); ++code) {
            if (rng.below(3) != 0) continue;
            SignVec s(ell);
            for (int b = 0; b < ell; ++b) s[b] = (code >> b) & 1 ? 1 : -1;
            fam.push_back(s);
        }
        if (fam.empty()) fam.push_back(SignVec(ell, 1));
        OrthantSet fs(ell, fam);
        INFO(fs.to_string());
        REQUIRE(reg_component_count(fs) == floodfill_component_count(fs, 41));
    }
}

TEST_CASE("bridge: the monomial recipe") {
    // all signs differ: the straight diagonal
    Bridge diag = bridge({-1, -1}, {1, 1});
    CHECK(diag.beta[0] == Polynomial::variable(1, 0));
    CHECK(diag.beta[1] == Polynomial::variable(1, 0));
    CHECK(bridge_valid(diag));

    // equal signs square the parameter
    Bridge same = bridge({1, -1}, {1, -1});
    CHECK(same.beta[0] == Polynomial::variable(1, 0).pow(2));
    CHECK(same.beta[1] == Polynomial::variable(1, 0).pow(2) * Rat(-1));
    CHECK(bridge_valid(same));

    // mixed: (t, t^2)
    Bridge mixed = bridge({-1, 1}, {1, 1});
    CHECK(mixed.beta[0] == Polynomial::variable(1, 0));
    CHECK(mixed.beta[1] == Polynomial::variable(1, 0).pow(2));
    CHECK(bridge_valid(mixed));

    // beta(0) = 0 exactly
    for (const Rat& c : mixed.eval(Rat(0))) CHECK(c == 0);
}

TEST_CASE("bridge: property over random sign pairs") {
    SplitMix64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        int ell = 1 + static_cast<int>(rng.below(4));
        SignVec a(ell), b(ell);
        for (int i = 0; i < ell; ++i) {
            a[i] = rng.coin() ? 1 : -1;
            b[i] = rng.coin() ? 1 : -1;
        }
        REQUIRE(bridge_valid(bridge(a, b)));
    }
}

TEST_CASE("blowup_origin: worked example and bijectivity") {
    OrthantSet opp = F("++,--");
    OrthantSet lifted = blowup_origin(opp, 0);
    CHECK(lifted.to_string() == OrthantSet(2, {{1, 1}, {-1, 1}}).to_string());

    // the full family is preserved: the rule is a bijection
    OrthantSet all = F("++,+-,-+,--");
    CHECK(blowup_origin(all, 0).size() == 4);
    CHECK(blowup_origin(all, 1).size() == 4);

    // singletons stay singletons, fixed when the pivot sign is positive
    OrthantSet single = F("+-");
    CHECK(blowup_origin(single, 0).to_string() == "+-");

    CHECK_THROWS_AS(blowup_origin(single, 2), PivotOutOfRange);

    // involution: applying the rule twice is the identity
    SplitMix64 rng(23);
    for (int t = 0; t < 100; ++t) {
        int ell = 1 + static_cast<int>(rng.below(4));
        SignVec s(ell);
        for (int i = 0; i < ell; ++i) s[i] = rng.coin() ? 1 : -1;
        int pivot = static_cast<int>(rng.below(ell));
        REQUIRE(blowup_sign(blowup_sign(s, pivot), pivot) == s);
    }
}

TEST_CASE("weld_sequence: two quadrants weld in one step") {
    WeldResult res = weld_sequence(F("++,--"));
    REQUIRE(res.pivots.size() == 1);
    CHECK(res.pivots[0] == 0);  // lowest-pivot tie-break
    CHECK(res.component_trace == std::vector<std::size_t>{2, 1});
    CHECK_FALSE(res.stalled);
}

TEST_CASE("weld_sequence: connected input needs no steps") {
    WeldResult res = weld_sequence(F("++,-+"));
    CHECK(res.pivots.empty());
    CHECK(res.component_trace == std::vector<std::size_t>{1});
}

TEST_CASE("weld_sequence: three-orthant family welds within four steps") {
    OrthantSet fam(3, {{1, 1, 1}, {-1, -1, 1}, {-1, 1, -1}});
    WeldResult res = weld_sequence(fam);
    CHECK_FALSE(res.stalled);
    CHECK(res.component_trace.back() == 1);
    CHECK(res.pivots.size() <= 4);
    for (std::size_t i = 1; i < res.component_trace.size(); ++i)
        REQUIRE(res.component_trace[i] < res.component_trace[i - 1]);

    // exhaustive cross-check: some pivot sequence of length <= 4 reaches one
    // component, and no shorter sequence beats the greedy one
    std::size_t best_len = 99;
    std::function<void(OrthantSet, std::size_t)> search = [&](OrthantSet cur, std::size_t depth) {
        if (reg_component_count(cur) == 1) {
            best_len = std::min(best_len, depth);
            return;
        }
        if (depth >= 4) return;
        for (int p = 0; p < cur.ell(); ++p) search(blowup_origin(cur, p), depth + 1);
    };
    search(fam, 0);
    CHECK(best_len <= 4);
    CHECK(res.pivots.size() == best_len);
}

TEST_CASE("weld_sequence: trace is non-increasing on random families") {
    SplitMix64 rng(31);
    for (int t = 0; t < 500; ++t) {
        int ell = 1 + static_cast<int>(rng.below(4));
        std::vector<SignVec> fam;
        for (int code = 0; code < (1 << ell); ++code) {
            if (rng.below(3) != 0) continue;
            SignVec s(ell);
            for (int b = 0; b < ell; ++b) s[b] = (code >> b) & 1 ? 1 : -1;
            fam.push_back(s);
        }
        if (fam.empty()) fam.push_back(SignVec(ell, -1));
        WeldResult res = weld_sequence(OrthantSet(ell, fam));
        for (std::size_t i = 1; i < res.component_trace.size(); ++i)
            REQUIRE(res.component_trace[i] <= res.component_trace[i - 1]);
    }
}

TEST_CASE("an antipodal pair welds to one component under any pivot") {
    // exhaustive over all opposite-quadrant germs with ell <= 4, checked
    // against the flood-fill oracle before and after the blow-up step
    for (int ell = 2; ell <= 4; ++ell) {
        int res = ell == 4 ? 11 : 21;  // grid resolution; signs only need parity
        for (int code = 0; code < (1 << (ell - 1)); ++code) {
            SignVec base(ell), opp(ell);
            base[0] = 1;
            opp[0] = -1;
            for (int b = 1; b < ell; ++b) {
                base[b] = (code >> (b - 1)) & 1 ? 1 : -1;
                opp[b] = -base[b];
            }
            OrthantSet pair(ell, {base, opp});
            REQUIRE(reg_component_count(pair) == 2);
            REQUIRE(floodfill_component_count(pair, res) == 2);
            for (int p = 0; p < ell; ++p) {
                OrthantSet after = blowup_origin(pair, p);
                REQUIRE(reg_component_count(after) == 1);
                REQUIRE(floodfill_component_count(after, res) == 1);
            }
        }
    }
}

TEST_CASE("orthant parsing round trip") {
    OrthantSet fs = F("++, --");
    CHECK(fs.ell() == 2);
    CHECK(fs.size() == 2);
    CHECK_THROWS(parse_orthants("+x"));
    CHECK_THROWS(parse_orthants(""));
    CHECK_THROWS(OrthantSet(2, {{1, 1, 1}}));
}
