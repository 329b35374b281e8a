// Catalog of explicit 1-dimensional maps: the interval/circle models and the
// piecewise C^2 interval diffeomorphisms, with regularity and image
// verification routines.
#ifndef NASHATLAS_CATALOG_HPP
#define NASHATLAS_CATALOG_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nashatlas/expr.hpp"
#include "nashatlas/parse.hpp"
#include "nashatlas/prng.hpp"

namespace nashatlas {

struct UnknownName : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SurjectivityProbeFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One polynomial piece of a piecewise map, valid on [lo, hi].
struct PolyPiece {
    Rat lo, hi;
    Polynomial poly;  // univariate
};

struct ImageSpec {
    enum class Kind { Interval, Circle } kind = Kind::Interval;
    double lo = 0.0, hi = 1.0;
    bool lo_closed = true, hi_closed = true;  // endpoint attained?
    // surjectivity probe grid, inset from open endpoints by 1e-3
    double grid_lo = 0.0, grid_hi = 1.0;
};

class NamedMap {
  public:
    std::string name;
    std::string citation;

    // Closed-form maps evaluate through `map` (1 or 2 components);
    // piecewise maps through `pieces`.
    std::optional<NashMap> map;
    std::vector<PolyPiece> pieces;
    std::vector<Rat> knots;  // interior breakpoints of `pieces`

    // domain bracket usable for bisection probes (monotone there)
    double dom_lo = 0.0, dom_hi = 1.0;
    // sampling range for forward-containment checks; defaults to the bracket
    double samp_lo = 0.0, samp_hi = 0.0;
    ImageSpec image;

    double sample_lo() const { return samp_lo == samp_hi ? dom_lo : samp_lo; }
    double sample_hi() const { return samp_lo == samp_hi ? dom_hi : samp_hi; }

    bool piecewise() const { return !pieces.empty(); }

    double eval(double t) const {
        if (!piecewise()) return map->component(0).eval({t});
        return eval_piece(locate(t), t);
    }

    std::vector<double> eval_vec(double t) const {
        if (!piecewise()) return map->eval({t});
        return {eval(t)};
    }

    Rat eval_exact(const Rat& t) const {
        if (!piecewise()) throw NotRationallyEvaluable("closed-form catalog map");
        return pieces[locate(to_double(t))].poly.eval(RatVec{t});
    }

    int locate(double t) const {
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            double lo = to_double(pieces[i].lo), hi = to_double(pieces[i].hi);
            if (t >= lo - 1e-15 && t <= hi + 1e-15) return static_cast<int>(i);
        }
        throw OutOfDomain("piecewise map: argument outside domain");
    }

    double eval_piece(int i, double t) const { return pieces[i].poly.eval(std::vector<double>{t}); }

    // Piecewise maps must agree in value at interior knots.
    void validate() const {
        for (const Rat& k : knots) {
            int left = -1, right = -1;
            for (std::size_t i = 0; i < pieces.size(); ++i) {
                if (pieces[i].hi == k) left = static_cast<int>(i);
                if (pieces[i].lo == k) right = static_cast<int>(i);
            }
            if (left < 0 || right < 0) throw ExprError("knot not shared by two pieces");
            Rat vl = pieces[left].poly.eval(RatVec{k});
            Rat vr = pieces[right].poly.eval(RatVec{k});
            if (rat_abs(vl - vr) > Rat(1, 1000000000000LL))
                throw ExprError("pieces disagree at knot " + k.str());
        }
    }
};

inline const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names = {
        "open01", "open01_inv", "halfopen01", "closed01", "circle",
        "orthant1d", "orthant1d_inv", "c2_f1", "c2_f2", "c2_f3"};
    return names;
}

inline NamedMap make(const std::string& name) {
    NamedMap m;
    m.name = name;
    auto P1 = [](const std::string& s) { return parse_polynomial(s, 1); };
    if (name == "open01") {
        m.map = NashMap({parse_expr("x1/(2*sqrt(1+x1^2)) + 1/2", 1)});
        m.citation = "Ex. 3.1(i)";
        m.dom_lo = -1e6;
        m.dom_hi = 1e6;
        m.image = {ImageSpec::Kind::Interval, 0.0, 1.0, false, false, 1e-3, 1.0 - 1e-3};
    } else if (name == "open01_inv") {
        m.map = NashMap({parse_expr("(2*x1-1)/(2*sqrt(x1*(1-x1)))", 1)});
        m.citation = "Ex. 3.1(i)";
        m.dom_lo = 1e-12;
        m.dom_hi = 1.0 - 1e-12;
        m.image = {ImageSpec::Kind::Interval, -1e9, 1e9, false, false, -10.0, 10.0};
    } else if (name == "halfopen01") {
        m.map = NashMap({parse_expr("x1^2/(x1^2+1)", 1)});
        m.citation = "Ex. 3.1(ii)";
        m.dom_lo = 0.0;
        m.dom_hi = 1e5;
        m.image = {ImageSpec::Kind::Interval, 0.0, 1.0, true, false, 0.0, 1.0 - 1e-3};
    } else if (name == "closed01") {
        m.map = NashMap({parse_expr("x1/(x1^2+1) + 1/2", 1)});
        m.citation = "Ex. 3.1(ii)";
        m.dom_lo = -1.0;  // monotone bracket; [0,1] is swept entirely on it
        m.dom_hi = 1.0;
        m.samp_lo = -1e4;
        m.samp_hi = 1e4;
        m.image = {ImageSpec::Kind::Interval, 0.0, 1.0, true, true, 0.0, 1.0};
    } else if (name == "circle") {
        // squaring map composed with the rational circle parametrization
        NashMap stereo({parse_expr("(1-x1^2)/(1+x1^2)", 1), parse_expr("2*x1/(1+x1^2)", 1)});
        NashMap square({parse_expr("x1^2-x2^2", 2), parse_expr("2*x1*x2", 2)});
        m.map = compose(square, stereo);
        m.citation = "Ex. 3.2(i)";
        m.dom_lo = -1e9;
        m.dom_hi = 1e9;
        m.image.kind = ImageSpec::Kind::Circle;
    } else if (name == "orthant1d") {
        m.map = NashMap({parse_expr("x1 - 1/x1", 1).with_domain(
            DomainBox({{DomainBox::Interval{Rat(0), std::nullopt}}}))});
        m.citation = "Lem. 6.2";
        m.dom_lo = 1e-3;
        m.dom_hi = 1e3;
        m.image = {ImageSpec::Kind::Interval, -1e9, 1e9, false, false, -10.0, 10.0};
    } else if (name == "orthant1d_inv") {
        m.map = NashMap({parse_expr("(x1 + sqrt(x1^2+4))/2", 1)});
        m.citation = "Lem. 6.2";
        m.dom_lo = -1e3;
        m.dom_hi = 1e3;
        m.image = {ImageSpec::Kind::Interval, 0.0, 1e12, false, false, 0.1, 10.0};
    } else if (name == "c2_f1") {
        m.pieces = {{Rat(1, 4), Rat(1, 2), P1("5/12*(4*x1-1)")},
                    {Rat(1, 2), Rat(3, 4), P1("(64*x1^4-160*x1^3+144*x1^2)/3 - 17*x1 + 9/4")},
                    {Rat(3, 4), Rat(1), P1("x1")}};
        m.knots = {Rat(1, 2), Rat(3, 4)};
        m.citation = "Ex. A.1(i)";
        m.dom_lo = 0.25;
        m.dom_hi = 1.0 - 1e-9;
        m.image = {ImageSpec::Kind::Interval, 0.0, 1.0, true, false, 0.0, 1.0 - 1e-3};
    } else if (name == "c2_f2") {
        m.pieces = {{Rat(1, 2), Rat(5, 8), P1("11/6*(2*x1-1)")},
                    {Rat(5, 8), Rat(3, 4), P1("2048*(x1^4/3 - 11*x1^3/12 + 15*x1^2/16) - 863*x1 + 144")},
                    {Rat(3, 4), Rat(1), P1("x1")}};
        m.knots = {Rat(5, 8), Rat(3, 4)};
        m.citation = "Ex. A.1(ii)";
        m.dom_lo = 0.5;
        m.dom_hi = 1.0 - 1e-9;
        m.image = {ImageSpec::Kind::Interval, 0.0, 1.0, true, false, 0.0, 1.0 - 1e-3};
    } else if (name == "c2_f3") {
        m.pieces = {{Rat(-1), Rat(-1, 2), P1("x1")},
                    {Rat(-1, 2), Rat(0), P1("(16*x1^4 + 16*x1^3 + x1 - 1)/5")},
                    {Rat(0), Rat(1), P1("(x1-1)/5")}};
        m.knots = {Rat(-1, 2), Rat(0)};
        m.citation = "Ex. A.1(iii)";
        m.dom_lo = -1.0 + 1e-9;
        m.dom_hi = 1.0 - 1e-9;
        m.image = {ImageSpec::Kind::Interval, -1.0, 0.0, false, false, -1.0 + 1e-3, -1e-3};
    } else {
        throw UnknownName("unknown catalog map '" + name + "'");
    }
    if (m.piecewise()) m.validate();
    return m;
}

// ---------------------------------------------------------------------------
// C^2 regularity report

struct KnotCheck {
    Rat knot;
    Rat value_gap, d1_gap, d2_gap;  // exact one-sided differences
    bool ok(const Rat& tol) const {
        return rat_abs(value_gap) <= tol && rat_abs(d1_gap) <= tol && rat_abs(d2_gap) <= tol;
    }
};

struct C2Report {
    std::vector<KnotCheck> knots;
    bool monotone = false;
    double max_knot_gap = 0.0;

    bool pass(const Rat& tol) const {
        bool all = monotone;
        for (const auto& k : knots) all = all && k.ok(tol);
        return all;
    }
};

// One-sided values and first and second symbolic derivatives at each knot,
// plus a monotonicity sweep on a grid.
inline C2Report verify_c2(const NamedMap& m, double tol = 1e-9, int grid = 10000) {
    if (!m.piecewise()) throw ExprError("verify_c2: map is not piecewise");
    C2Report rep;
    for (const Rat& k : m.knots) {
        int left = -1, right = -1;
        for (std::size_t i = 0; i < m.pieces.size(); ++i) {
            if (m.pieces[i].hi == k) left = static_cast<int>(i);
            if (m.pieces[i].lo == k) right = static_cast<int>(i);
        }
        const Polynomial& pl = m.pieces[left].poly;
        const Polynomial& pr = m.pieces[right].poly;
        KnotCheck kc;
        kc.knot = k;
        kc.value_gap = pl.eval(RatVec{k}) - pr.eval(RatVec{k});
        kc.d1_gap = pl.partial(0).eval(RatVec{k}) - pr.partial(0).eval(RatVec{k});
        kc.d2_gap = pl.partial(0).partial(0).eval(RatVec{k}) - pr.partial(0).partial(0).eval(RatVec{k});
        rep.max_knot_gap = std::max({rep.max_knot_gap, std::abs(to_double(kc.value_gap)),
                                     std::abs(to_double(kc.d1_gap)), std::abs(to_double(kc.d2_gap))});
        rep.knots.push_back(kc);
    }
    rep.monotone = true;
    double lo = m.dom_lo, hi = m.dom_hi;
    double prev = m.eval(lo);
    for (int i = 1; i < grid; ++i) {
        double t = lo + (hi - lo) * i / (grid - 1);
        double v = m.eval(t);
        if (v <= prev) {
            rep.monotone = false;
            break;
        }
        prev = v;
    }
    (void)tol;
    return rep;
}

// ---------------------------------------------------------------------------
// Image verification

struct ImageReport {
    bool forward_ok = false;        // every sampled value lies in the image
    bool surjective_ok = false;     // every grid target has a preimage
    double max_residual = 0.0;
    double sup_sample = -HUGE_VAL;  // largest sampled value (interval maps)
    std::size_t samples = 0;
    std::size_t grid = 0;
    bool pass() const { return forward_ok && surjective_ok; }
};

namespace detail {

// Bisection for continuous monotone f on [lo,hi] with target v.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, double v, int iters = 200) {
    double flo = f(lo) - v, fhi = f(hi) - v;
    if (flo == 0) return lo;
    if (fhi == 0) return hi;
    if ((flo < 0) == (fhi < 0)) return (std::abs(flo) < std::abs(fhi)) ? lo : hi;
    for (int i = 0; i < iters; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid) - v;
        if (fm == 0) return mid;
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

// Forward containment on random samples plus a surjectivity probe on a grid
// of the declared image, preimages found by bisection on monotone pieces.
inline ImageReport verify_image(const NamedMap& m, std::size_t samples, std::uint64_t seed,
                                std::size_t grid = 1000, double residual_tol = 1e-8) {
    ImageReport rep;
    rep.samples = samples;
    rep.grid = grid;
    SplitMix64 rng(seed);

    rep.forward_ok = true;
    for (std::size_t i = 0; i < samples; ++i) {
        double t = rng.uniform(m.sample_lo(), m.sample_hi());
        if (m.image.kind == ImageSpec::Kind::Circle) {
            auto v = m.eval_vec(t);
            double norm = std::sqrt(v[0] * v[0] + v[1] * v[1]);
            if (std::abs(norm - 1.0) > 1e-12) rep.forward_ok = false;
        } else {
            double v = m.eval(t);
            rep.sup_sample = std::max(rep.sup_sample, v);
            double slack = 1e-12;
            bool inside = (m.image.lo_closed ? v >= m.image.lo - slack : v > m.image.lo) &&
                          (m.image.hi_closed ? v <= m.image.hi + slack : v < m.image.hi);
            if (!inside) rep.forward_ok = false;
        }
    }

    rep.surjective_ok = true;
    if (m.image.kind == ImageSpec::Kind::Circle) {
        // unwrapped angle of the composite is 4*atan(t); monotone in t
        for (std::size_t i = 0; i < grid; ++i) {
            double theta = 6.283185307179586477 * static_cast<double>(i) / static_cast<double>(grid);
            double t = detail::bisect([](double s) { return 4.0 * std::atan(s); }, 0.0, 1e9, theta);
            auto v = m.eval_vec(t);
            double res = std::hypot(v[0] - std::cos(theta), v[1] - std::sin(theta));
            rep.max_residual = std::max(rep.max_residual, res);
            if (res > residual_tol) rep.surjective_ok = false;
        }
    } else {
        for (std::size_t i = 0; i < grid; ++i) {
            double target = m.image.grid_lo +
                            (m.image.grid_hi - m.image.grid_lo) * static_cast<double>(i) /
                                static_cast<double>(grid > 1 ? grid - 1 : 1);
            double t = detail::bisect([&m](double s) { return m.eval(s); }, m.dom_lo, m.dom_hi, target);
            double res = std::abs(m.eval(t) - target);
            rep.max_residual = std::max(rep.max_residual, res);
            if (res > residual_tol) rep.surjective_ok = false;
        }
    }
    return rep;
}

}  // namespace nashatlas

#endif
