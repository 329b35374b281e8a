// The verification suite: every check the CLI and the acceptance runner
// execute, with tolerances pinned here.
#ifndef NASHATLAS_SUITE_HPP
#define NASHATLAS_SUITE_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nashatlas/catalog.hpp"
#include "nashatlas/doubles.hpp"
#include "nashatlas/drill.hpp"
#include "nashatlas/oracles.hpp"
#include "nashatlas/report.hpp"
#include "nashatlas/simplex.hpp"
#include "nashatlas/weld.hpp"

namespace nashatlas {

struct SuiteOptions {
    std::uint64_t seed = 42;
    double tol_override = 0.0;  // > 0 replaces every per-check default
};

namespace detail {

inline VerificationReport make_report(const std::string& check, const std::string& citation,
                                      double max_error, double tol, std::uint64_t samples,
                                      const SuiteOptions& opts, const Stopwatch& sw, bool extra_ok = true) {
    VerificationReport r;
    r.check = check;
    r.citation = citation;
    r.tolerance = opts.tol_override > 0 ? opts.tol_override : tol;
    r.max_error = max_error;
    r.samples = samples;
    r.seed = opts.seed;
    r.status = (extra_ok && max_error <= r.tolerance) ? "pass" : "fail";
    r.wall_ms = sw.ms();
    return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Criterion 1: catalog identities

inline std::vector<VerificationReport> criterion_catalog(const SuiteOptions& opts) {
    std::vector<VerificationReport> out;
    {
        Stopwatch sw;
        NamedMap f = make("open01"), g = make("open01_inv");
        SplitMix64 rng(opts.seed);
        double max_err = 0.0;
        const int n = 1000;
        for (int i = 0; i < n; ++i) {
            double t = rng.uniform(-10.0, 10.0);
            max_err = std::max(max_err, std::abs(g.eval(f.eval(t)) - t));
        }
        out.push_back(detail::make_report("catalog.open01_identity", f.citation, max_err, 1e-9, n, opts, sw));
    }
    {
        Stopwatch sw;
        NamedMap circle = make("circle");
        ImageReport rep = verify_image(circle, 1000, opts.seed, 1000, 1e-8);
        out.push_back(detail::make_report("catalog.circle_grid", circle.citation, rep.max_residual, 1e-8,
                                          rep.grid, opts, sw, rep.forward_ok));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Criterion 2: piecewise C^2 regularity and the plotted values

inline std::vector<VerificationReport> criterion_regularity(const SuiteOptions& opts) {
    std::vector<VerificationReport> out;
    for (const char* name : {"c2_f1", "c2_f2", "c2_f3"}) {
        Stopwatch sw;
        NamedMap m = make(name);
        C2Report rep = verify_c2(m);
        bool exact = rep.monotone;
        for (const auto& k : rep.knots)
            exact = exact && k.value_gap == 0 && k.d1_gap == 0 && k.d2_gap == 0;
        out.push_back(detail::make_report(std::string("c2.") + name + ".knots", m.citation,
                                          rep.max_knot_gap, 0.0, 10000, opts, sw, exact));
    }
    {
        Stopwatch sw;
        NamedMap f1 = make("c2_f1"), f3 = make("c2_f3");
        bool ok = f1.eval_exact(Rat(1, 2)) == Rat(5, 12) &&
                  f1.pieces[1].poly.eval(RatVec{Rat(1, 2)}) == Rat(5, 12) &&
                  f3.eval_exact(Rat(0)) == Rat(-1, 5) &&
                  f3.pieces[2].poly.eval(RatVec{Rat(0)}) == Rat(-1, 5);
        out.push_back(detail::make_report("c2.plotted_values", "Ex. A.1", ok ? 0.0 : 1.0, 0.0, 4, opts, sw, ok));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Criterion 3: double invariants per model

inline std::vector<VerificationReport> criterion_doubles(const SuiteOptions& opts) {
    std::vector<VerificationReport> out;
    struct ModelCase {
        ModelKind kind;
        std::vector<double> boundary_point;
    };
    const std::vector<ModelCase> cases = {{ModelKind::Interval, {0.0}},
                                          {ModelKind::HalfSpace, {0.0, 0.5}},
                                          {ModelKind::Disk, {1.0, 0.0}}};
    for (const auto& mc : cases) {
        std::string base = std::string("double.") + model_name(mc.kind);
        BoundedModel model = make_model(mc.kind);
        DoubleModel dm = nash_double(model, opts.seed);

        {
            Stopwatch sw;
            SplitMix64 rng(opts.seed);
            bool ok = true;
            double max_err = 0.0;
            int interior_count = 0;
            for (int s = 0; s < 200 || interior_count < 50; ++s) {
                if (s > 5000) break;
                std::vector<double> x(model.dim);
                for (int i = 0; i < model.dim; ++i)
                    x[i] = rng.uniform(model.chart_box.lo_d(i), model.chart_box.hi_d(i));
                if (!model.interior_contains(x)) continue;
                ++interior_count;
                auto fib = fiber(dm, x);
                ok = ok && fib.size() == 2;
                for (const auto& p : fib) {
                    max_err = std::max(max_err, dm.defect(p));
                    // involution is an exact coordinate flip
                    auto q = dm.involution.eval(p);
                    auto rt = dm.involution.eval(q);
                    for (std::size_t c = 0; c < p.size(); ++c)
                        max_err = std::max(max_err, std::abs(rt[c] - p[c]));
                    bool fixed = std::abs(p[model.dim]) <= 1e-9;
                    bool equal = true;
                    for (std::size_t c = 0; c < p.size(); ++c) equal = equal && q[c] == p[c];
                    ok = ok && (fixed == equal);
                }
            }
            auto bfib = fiber(dm, mc.boundary_point);
            ok = ok && bfib.size() == 1 && std::abs(bfib[0][model.dim]) <= 1e-9;
            out.push_back(detail::make_report(base + ".fiber", "4.5-4.8", max_err, 1e-9,
                                              static_cast<std::uint64_t>(interior_count), opts, sw, ok));
        }
        {
            Stopwatch sw;
            LocalSquareReport rep = verify_local_square(dm, mc.boundary_point, 1e-6, opts.seed, 100);
            out.push_back(detail::make_report(base + ".square_chart", "4.6(iii)", rep.max_error, 1e-6,
                                              rep.samples, opts, sw));
        }
        {
            Stopwatch sw;
            InteriorOnto onto(model);
            OntoReport rep = onto.probe(1000, 1e-6);
            bool ok = rep.boundary_residual <= 1e-6;
            out.push_back(detail::make_report(base + ".onto", "Prop. 4.1", rep.max_residual, 1e-6,
                                              rep.grid, opts, sw, ok));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Criterion 4: drilling blow-up invariants

inline std::vector<VerificationReport> criterion_drill(const SuiteOptions& opts) {
    std::vector<VerificationReport> out;
    CenterSpec triv21 = trivial_spec(3, 1);
    CenterSpec triv20 = trivial_spec(2, 0);
    CenterSpec gen2 = spec_from_generators(
        2, 0, {parse_polynomial("x1", 2), parse_polynomial("x1 + x2", 2)});
    validate_spec(triv21, opts.seed);
    validate_spec(gen2, opts.seed);

    {
        Stopwatch sw;
        SplitMix64 rng(opts.seed);
        double max_err = 0.0;
        const int n = 1000;
        for (int s = 0; s < n; ++s) {
            const CenterSpec& spec = (s % 2 == 0) ? triv21 : gen2;
            std::vector<double> y(spec.e);
            for (int i = 0; i < spec.e; ++i) y[i] = rng.uniform(-2.0, 2.0);
            double rho = rng.uniform(-2.0, 2.0);
            auto w = rng.sphere(spec.normal_dim());
            DrillPoint p = phi(spec, y, rho, w);
            double norm = 0.0;
            for (double c : p.dir) norm += c * c;
            max_err = std::max(max_err, std::abs(std::sqrt(norm) - 1.0));
        }
        out.push_back(detail::make_report("drill.unit_norm", "5.1", max_err, 1e-12, n, opts, sw));
    }
    {
        Stopwatch sw;
        SplitMix64 rng(opts.seed + 1);
        double max_err = 0.0;
        const int n = 1000;
        for (int s = 0; s < n; ++s) {
            const CenterSpec& spec = (s % 2 == 0) ? triv21 : gen2;
            std::vector<double> y(spec.e);
            for (int i = 0; i < spec.e; ++i) y[i] = rng.uniform(-2.0, 2.0);
            double rho = rng.uniform(-2.0, 2.0);
            auto w = rng.sphere(spec.normal_dim());
            DrillPoint p = phi(spec, y, rho, w);
            ChartTriple t = psi0(spec, p);
            // the triple is recovered up to the simultaneous sign flip
            double direct = std::abs(t.rho - rho), flipped = std::abs(t.rho + rho);
            for (int j = 0; j < spec.normal_dim(); ++j) {
                direct = std::max(direct, std::abs(t.w[j] - w[j]));
                flipped = std::max(flipped, std::abs(t.w[j] + w[j]));
            }
            double err = std::min(direct, flipped);
            for (int i = 0; i < spec.e; ++i) err = std::max(err, std::abs(t.y[i] - y[i]));
            // and Phi itself comes back to the same total-space point
            DrillPoint p2 = phi(spec, t.y, t.rho, t.w);
            for (int i = 0; i < spec.d; ++i) err = std::max(err, std::abs(p2.base[i] - p.base[i]));
            for (int l = 0; l < spec.k; ++l) err = std::max(err, std::abs(p2.dir[l] - p.dir[l]));
            max_err = std::max(max_err, err);
        }
        out.push_back(detail::make_report("drill.psi0_roundtrip", "eq. (psi0)", max_err, 1e-9, n, opts, sw));
    }
    {
        Stopwatch sw;
        SplitMix64 rng(opts.seed + 2);
        CenterSpec aniso = spec_from_generators(2, 0, {parse_polynomial("x1", 2), parse_polynomial("2*x2", 2)});
        double max_err = 0.0;
        const int n = 200;
        for (int s = 0; s < n; ++s) {
            const CenterSpec& spec = (s % 2 == 0) ? triv21 : aniso;
            std::vector<double> q(spec.d, 0.0);
            for (int i = 0; i < spec.e; ++i) q[i] = rng.uniform(-2.0, 2.0);
            FiberSphere fs = fiber_over(spec, q);
            auto w = rng.sphere(spec.normal_dim());
            auto img = fs(w);
            double norm = 0.0;
            for (double c : img) norm += c * c;
            max_err = std::max(max_err, std::abs(std::sqrt(norm) - 1.0));
            max_err = std::max(max_err, fs.span_residual(w));
        }
        out.push_back(detail::make_report("drill.fiber_span", "5.4(iii)", max_err, 1e-9, n, opts, sw));
    }
    {
        Stopwatch sw;
        CenterSpec genrep = spec_from_generators(
            2, 0, {parse_polynomial("x1", 2), parse_polynomial("x2 + x1*x2", 2)});
        LocalRepReport r1 = local_rep_check(triv21, {0.0, 0.0, 0.0}, 1e-6, opts.seed, 100);
        LocalRepReport r2 = local_rep_check(genrep, {0.0, 0.0}, 1e-6, opts.seed, 100);
        double max_err = std::max({r1.max_error, r1.transversality_error, r2.max_error,
                                   r2.transversality_error});
        out.push_back(detail::make_report("drill.local_rep", "eq. (lr), 5.5", max_err, 1e-6,
                                          r1.samples + r2.samples, opts, sw));
    }
    {
        Stopwatch sw;
        CenterSpec base = spec_from_generators(2, 0, {parse_polynomial("x1", 2), parse_polynomial("x2", 2)});
        GeneratorChange gc = change_generators(
            base, {Polynomial::constant(2, Rat(1)), Polynomial::constant(2, Rat(1))});
        SplitMix64 rng(opts.seed + 3);
        double max_err = 0.0;
        const int n = 1000;
        for (int s = 0; s < n; ++s) {
            std::vector<double> x{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
            if (std::hypot(x[0], x[1]) < 0.1) continue;
            double sign = rng.coin() ? 1.0 : -1.0;
            auto F = gauss(base, x);
            for (double& c : F) c *= sign;
            DrillPoint p(x, F);
            DrillPoint moved = gc.theta(p);
            // base point preserved exactly, Theta lands on the extended graph
            for (int i = 0; i < 2; ++i)
                if (moved.base[i] != x[i]) max_err = std::max(max_err, 1.0);
            auto Fp = gauss(gc.extended, x);
            for (double& c : Fp) c *= sign;
            for (int l = 0; l < gc.extended.k; ++l)
                max_err = std::max(max_err, std::abs(moved.dir[l] - Fp[l]));
            DrillPoint back = gc.psi(moved);
            for (int l = 0; l < base.k; ++l) max_err = std::max(max_err, std::abs(back.dir[l] - p.dir[l]));
        }
        out.push_back(detail::make_report("drill.generator_change", "5.9, eq. (unicden)", max_err, 1e-9,
                                          n, opts, sw));
    }
    {
        Stopwatch sw;
        SplitMix64 rng(opts.seed + 4);
        bool ok = true;
        const int n = 1000;
        std::map<std::string, std::set<int>> preimages;
        for (int s = 0; s < n; ++s) {
            std::vector<double> x{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
            auto w = rng.sphere(2);
            DrillPoint p(x, w);
            auto wneg = w;
            for (double& c : wneg) c = -c;
            DrillPoint q(x, wneg);
            ProjectivePoint a = classical_compare(triv20, p), b = classical_compare(triv20, q);
            ok = ok && (a == b);
            std::ostringstream key;
            key.precision(12);
            for (double c : a.base) key << c << "|";
            for (double c : a.rep) key << c << "|";
            preimages[key.str()].insert(2 * s);
            preimages[key.str()].insert(2 * s + 1);
        }
        for (const auto& [key, pre] : preimages) ok = ok && pre.size() == 2;
        out.push_back(detail::make_report("drill.classical_two_to_one", "Cor. 5.14", ok ? 0.0 : 1.0, 0.0,
                                          n, opts, sw, ok));
    }
    {
        Stopwatch sw;
        EraseMap er(2, 0);
        EraseReport rep = erase_probe(er, 1e-6);
        out.push_back(detail::make_report("drill.erase", "Cor. 5.13", rep.max_residual, 1e-6, rep.grid,
                                          opts, sw));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Criterion 5: simplicial exactness

namespace detail {

inline RatVec rat_point(std::initializer_list<Rat> xs) { return RatVec(xs); }

// Random convex-position complex: rational points on the unit circle fanned
// into triangles, order shuffled.
inline Complex random_fan_complex(SplitMix64& rng) {
    int m = 5 + static_cast<int>(rng.below(4));  // 5..8 vertices
    std::set<Rat> ts;
    while (static_cast<int>(ts.size()) < m) {
        int num = static_cast<int>(rng.below(41)) - 20;
        int den = 1 + static_cast<int>(rng.below(12));
        ts.insert(Rat(num, den));
    }
    std::vector<RatVec> pts;
    for (const Rat& t : ts) {
        Rat den = 1 + t * t;
        pts.push_back({(1 - t * t) / den, 2 * t / den});
    }
    std::vector<Simplex> tris;
    for (int i = 1; i + 1 < m; ++i) tris.push_back(Simplex{{pts[0], pts[i], pts[i + 1]}});
    for (std::size_t i = tris.size(); i > 1; --i)
        std::swap(tris[i - 1], tris[rng.below(i)]);
    return Complex(tris);
}

}  // namespace detail

inline std::vector<VerificationReport> criterion_simplicial(const SuiteOptions& opts) {
    std::vector<VerificationReport> out;
    {
        Stopwatch sw;
        // two unit right triangles sharing the hypotenuse
        Simplex s1{{detail::rat_point({Rat(1), Rat(0)}), detail::rat_point({Rat(0), Rat(1)}),
                    detail::rat_point({Rat(0), Rat(0)})}};
        Simplex s2{{detail::rat_point({Rat(1), Rat(0)}), detail::rat_point({Rat(0), Rat(1)}),
                    detail::rat_point({Rat(1), Rat(1)})}};
        EraseHomeo eh = erase_homeo(s1, s2);
        bool ok = eh.forward.consistent() && eh.inverse.consistent();

        // boundary fix: the two outer edges of sigma_2 stay put
        const RatVec a{Rat(1), Rat(0)}, b{Rat(0), Rat(1)}, v2{Rat(1), Rat(1)};
        for (int s = 0; s <= 8 && ok; ++s) {
            Rat lam(s, 8);
            for (const RatVec* end : {&a, &b}) {
                RatVec p(2);
                for (int c = 0; c < 2; ++c) p[c] = (*end)[c] * (1 - lam) + v2[c] * lam;
                ok = ok && eh.forward.apply(p) == p;
            }
        }
        // the facet barycenter lands on the opposite vertex
        ok = ok && eh.forward.apply(eh.tau.barycenter()) == eh.v1;

        // exact round trips on rational samples of sigma_2
        SplitMix64 rng(opts.seed);
        std::uint64_t n = 0;
        for (int s = 0; s < 10000 && ok; ++s) {
            Rat u(1 + static_cast<long>(rng.below(97)), 100), v(1 + static_cast<long>(rng.below(97)), 100);
            if (u + v > 1) continue;
            RatVec p(2, Rat(0));
            for (int c = 0; c < 2; ++c)
                p[c] = s2.verts[0][c] * u + s2.verts[1][c] * v + s2.verts[2][c] * (1 - u - v);
            RatVec img = eh.forward.apply(p);
            ok = ok && (simplex_contains(s1, img) || simplex_contains(s2, img));
            ok = ok && eh.inverse.apply(img) == p;
            ++n;
        }
        out.push_back(detail::make_report("simplex.erase_exact", "Lem. 6.4", ok ? 0.0 : 1.0, 0.0, n,
                                          opts, sw, ok));
    }
    {
        Stopwatch sw;
        bool ok = true;
        // triangle split at the centroid
        Simplex tri{{detail::rat_point({Rat(0), Rat(0)}), detail::rat_point({Rat(4), Rat(0)}),
                     detail::rat_point({Rat(0), Rat(4)})}};
        auto pieces = subdivide(tri, {0, 1, 2});
        ok = ok && pieces.size() == 3;
        // tetrahedron split along two facets: apex the midpoint of the
        // opposite edge
        Simplex tet{{detail::rat_point({Rat(0), Rat(0), Rat(0)}), detail::rat_point({Rat(1), Rat(0), Rat(0)}),
                     detail::rat_point({Rat(0), Rat(1), Rat(0)}), detail::rat_point({Rat(0), Rat(0), Rat(1)})}};
        auto tp = subdivide(tet, {0, 1});
        ok = ok && tp.size() == 2;
        RatVec mid{Rat(1, 2), Rat(0), Rat(0)};  // midpoint of the edge [v0, v1]
        bool found_mid = false;
        for (const auto& piece : tp)
            for (const auto& v : piece.verts) found_mid = found_mid || v == mid;
        ok = ok && found_mid;
        // k = 1 gives the simplex back
        auto single = subdivide(tet, {3});
        ok = ok && single.size() == 1 && relative_volume(tet, single[0]) == 1;
        out.push_back(detail::make_report("simplex.subdivide_volumes", "Lem. 6.5", ok ? 0.0 : 1.0, 0.0,
                                          6, opts, sw, ok));
    }
    {
        Stopwatch sw;
        SplitMix64 rng(opts.seed + 7);
        bool ok = true;
        for (int c = 0; c < 20 && ok; ++c) {
            Complex K = detail::random_fan_complex(rng);
            auto order = order_d_simplices(K);
            ok = ok && valid_order(K, order) && order.size() == K.simplices().size() && order[0] == 0;
        }
        // far-apart triangles: valid complex, no facet path
        bool rejected = false;
        try {
            Complex K2(
                {Simplex{{detail::rat_point({Rat(0), Rat(0)}), detail::rat_point({Rat(1), Rat(0)}),
                          detail::rat_point({Rat(0), Rat(1)})}},
                 Simplex{{detail::rat_point({Rat(10), Rat(0)}), detail::rat_point({Rat(11), Rat(0)}),
                          detail::rat_point({Rat(10), Rat(1)})}}});
            order_d_simplices(K2);
        } catch (const DisconnectedAdjacency&) {
            rejected = true;
        }
        ok = ok && rejected;
        out.push_back(detail::make_report("simplex.ordering", "6.3.2", ok ? 0.0 : 1.0, 0.0, 21, opts,
                                          sw, ok));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Criterion 6: weld engine

namespace detail {

inline OrthantSet random_family(SplitMix64& rng, int max_ell) {
    int ell = 1 + static_cast<int>(rng.below(max_ell));
    int total = 1 << ell;
    std::vector<SignVec> fam;
    for (int code = 0; code < total; ++code) {
        if (rng.below(3) != 0) continue;  // keep roughly a third
        SignVec s(ell);
        for (int b = 0; b < ell; ++b) s[b] = (code >> b) & 1 ? 1 : -1;
        fam.push_back(std::move(s));
    }
    if (fam.empty()) {
        SignVec s(ell);
        for (int b = 0; b < ell; ++b) s[b] = rng.coin() ? 1 : -1;
        fam.push_back(std::move(s));
    }
    return OrthantSet(ell, std::move(fam));
}

}  // namespace detail

inline std::vector<VerificationReport> criterion_weld(const SuiteOptions& opts) {
    std::vector<VerificationReport> out;
    {
        Stopwatch sw;
        SplitMix64 rng(opts.seed);
        bool ok = true;
        const int n = 200;
        for (int c = 0; c < n && ok; ++c) {
            OrthantSet F = detail::random_family(rng, 3);
            ok = reg_component_count(F) == floodfill_component_count(F, 41);
        }
        out.push_back(detail::make_report("weld.components_vs_oracle", "Prop. 8.3", ok ? 0.0 : 1.0, 0.0,
                                          n, opts, sw, ok));
    }
    {
        Stopwatch sw;
        OrthantSet F = parse_orthants("++,--");
        WeldResult res = weld_sequence(F);
        bool ok = res.pivots.size() == 1 && res.component_trace.size() == 2 &&
                  res.component_trace[0] == 2 && res.component_trace[1] == 1 && !res.stalled;
        out.push_back(detail::make_report("weld.two_quadrants", "Prop. 8.3", ok ? 0.0 : 1.0, 0.0, 1,
                                          opts, sw, ok));
    }
    {
        Stopwatch sw;
        SplitMix64 rng(opts.seed + 1);
        bool ok = true;
        const int n = 500;
        for (int c = 0; c < n && ok; ++c) {
            OrthantSet F = detail::random_family(rng, 4);
            WeldResult res = weld_sequence(F);
            for (std::size_t i = 1; i < res.component_trace.size(); ++i)
                ok = ok && res.component_trace[i] <= res.component_trace[i - 1];
        }
        out.push_back(detail::make_report("weld.trace_monotone", "Prop. 8.3", ok ? 0.0 : 1.0, 0.0, n,
                                          opts, sw, ok));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Criterion 7: kernel soundness

namespace detail {

inline NashExpr random_expr(SplitMix64& rng, int arity, int depth) {
    if (depth == 0) {
        if (rng.coin()) return NashExpr::variable(arity, static_cast<int>(rng.below(arity)));
        long num = static_cast<long>(rng.below(19)) - 9;
        long den = 1 + static_cast<long>(rng.below(9));
        return NashExpr::constant(arity, Rat(num, den));
    }
    switch (rng.below(6)) {
        case 0: return random_expr(rng, arity, depth - 1) + random_expr(rng, arity, depth - 1);
        case 1: return random_expr(rng, arity, depth - 1) - random_expr(rng, arity, depth - 1);
        case 2: return random_expr(rng, arity, depth - 1) * random_expr(rng, arity, depth - 1);
        case 3: {  // quotient with a denominator bounded away from zero
            NashExpr d = random_expr(rng, arity, depth - 1);
            return random_expr(rng, arity, depth - 1) / (NashExpr::constant(arity, Rat(1)) + d * d);
        }
        case 4: {  // sqrt of 1 + square
            NashExpr a = random_expr(rng, arity, depth - 1);
            return sqrt(NashExpr::constant(arity, Rat(1)) + a * a);
        }
        default: return random_expr(rng, arity, depth - 1);
    }
}

}  // namespace detail

inline std::vector<VerificationReport> criterion_kernel(const SuiteOptions& opts) {
    std::vector<VerificationReport> out;
    {
        Stopwatch sw;
        SplitMix64 rng(opts.seed);
        double worst = 0.0;  // error normalized by max(1, |derivative|)
        const int n_expr = 50;
        for (int e = 0; e < n_expr; ++e) {
            int arity = 1 + static_cast<int>(rng.below(3));
            NashExpr expr = detail::random_expr(rng, arity, 3);
            std::vector<NashExpr> partials;
            for (int v = 0; v < arity; ++v) partials.push_back(expr.partial(v));
            for (int s = 0; s < 100; ++s) {
                std::vector<double> x(arity);
                for (int i = 0; i < arity; ++i) x[i] = rng.uniform(-1.0, 1.0);
                for (int v = 0; v < arity; ++v) {
                    double sym = partials[v].eval(x);
                    auto xp = x, xm = x;
                    xp[v] += 1e-5;
                    xm[v] -= 1e-5;
                    double fd = (expr.eval(xp) - expr.eval(xm)) / 2e-5;
                    worst = std::max(worst, std::abs(sym - fd) / std::max(1.0, std::abs(sym)));
                }
            }
        }
        out.push_back(detail::make_report("kernel.derivatives", "5.2 (Jacobian criterion)", worst, 1e-6,
                                          n_expr * 100, opts, sw));
    }
    {
        Stopwatch sw;
        auto snapshot = [&]() {
            std::vector<VerificationReport> reps;
            for (auto& r : criterion_catalog(opts)) reps.push_back(r);
            for (auto& r : criterion_weld(opts)) reps.push_back(r);
            nlohmann::json arr = to_json(reps);
            for (auto& item : arr) item["wall_ms"] = 0.0;
            return arr.dump(2);
        };
        std::string first = snapshot(), second = snapshot();
        bool ok = first == second;
        out.push_back(detail::make_report("kernel.json_determinism", "", ok ? 0.0 : 1.0, 0.0, 2, opts,
                                          sw, ok));
    }
    return out;
}

// ---------------------------------------------------------------------------

inline std::vector<std::pair<std::string, std::vector<VerificationReport>>> run_all(const SuiteOptions& opts) {
    return {{"1 catalog identities", criterion_catalog(opts)},
            {"2 piecewise C2 regularity", criterion_regularity(opts)},
            {"3 double invariants", criterion_doubles(opts)},
            {"4 drill invariants", criterion_drill(opts)},
            {"5 simplicial exactness", criterion_simplicial(opts)},
            {"6 weld engine", criterion_weld(opts)},
            {"7 kernel soundness", criterion_kernel(opts)}};
}

}  // namespace nashatlas

#endif
