// Nash collar data, the double D(H) = {t^2 = h(x)}, its projection and
// involution, and the boundary-killing surjection Int(H) -> H on the model
// inputs (interval, half-space, disk).
#ifndef NASHATLAS_DOUBLES_HPP
#define NASHATLAS_DOUBLES_HPP

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "nashatlas/catalog.hpp"
#include "nashatlas/expr.hpp"
#include "nashatlas/parse.hpp"
#include "nashatlas/prng.hpp"

namespace nashatlas {

struct BoundaryRankViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OutsideH : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedModel : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ModelKind { Interval, HalfSpace, Disk, Custom };

inline const char* model_name(ModelKind k) {
    switch (k) {
        case ModelKind::Interval: return "interval";
        case ModelKind::HalfSpace: return "halfspace";
        case ModelKind::Disk: return "disk";
        case ModelKind::Custom: return "custom";
    }
    return "?";
}

// A manifold-with-boundary model {h >= 0} whose equation has rank-1
// differential along {h = 0}. The collar retraction defaults to the
// coordinate projection for half-space models and to the radial one for the
// disk.
struct BoundedModel {
    ModelKind kind = ModelKind::Custom;
    int dim = 1;
    NashExpr h = NashExpr::variable(1, 0);
    DomainBox chart_box = DomainBox::cube(1, Rat(0), Rat(4));

    bool interior_contains(const std::vector<double>& x) const {
        switch (kind) {
            case ModelKind::Interval:
            case ModelKind::HalfSpace: return x[0] > 0;
            case ModelKind::Disk: return x[0] * x[0] + x[1] * x[1] < 1;
            case ModelKind::Custom: return h.eval(x) > 0;
        }
        return false;
    }
};

inline BoundedModel make_model(ModelKind kind, int dim = 2) {
    BoundedModel m;
    m.kind = kind;
    switch (kind) {
        case ModelKind::Interval:
            m.dim = 1;
            m.h = parse_expr("x1", 1);
            m.chart_box = DomainBox::cube(1, Rat(-1), Rat(4));
            break;
        case ModelKind::HalfSpace: {
            if (dim < 2) throw UnsupportedModel("half-space model needs dim >= 2");
            m.dim = dim;
            m.h = NashExpr::variable(dim, 0);
            std::vector<DomainBox::Interval> iv(dim, DomainBox::Interval{Rat(-2), Rat(2)});
            iv[0] = DomainBox::Interval{Rat(-1), Rat(2)};
            m.chart_box = DomainBox(iv);
            break;
        }
        case ModelKind::Disk:
            m.dim = 2;
            m.h = parse_expr("1 - x1^2 - x2^2", 2);
            m.chart_box = DomainBox::cube(2, Rat(-2), Rat(2));
            break;
        case ModelKind::Custom: throw UnsupportedModel("custom models are built directly");
    }
    return m;
}

// Newton-projects box samples onto {h = 0} and measures the gradient there;
// also spot-checks h > 0 on interior samples.
inline void validate_model(const BoundedModel& m, std::uint64_t seed = 42, int boundary_samples = 1000) {
    SplitMix64 rng(seed);
    std::vector<NashExpr> grads;
    for (int i = 0; i < m.dim; ++i) grads.push_back(m.h.partial(i));

    int found = 0;
    for (int trial = 0; trial < 50 * boundary_samples && found < boundary_samples; ++trial) {
        std::vector<double> x(m.dim);
        for (int i = 0; i < m.dim; ++i) x[i] = rng.uniform(m.chart_box.lo_d(i), m.chart_box.hi_d(i));
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            double hv = m.h.eval(x);
            if (std::abs(hv) <= 1e-12) {
                converged = true;
                break;
            }
            double g2 = 0.0;
            std::vector<double> g(m.dim);
            for (int i = 0; i < m.dim; ++i) {
                g[i] = grads[i].eval(x);
                g2 += g[i] * g[i];
            }
            if (g2 < 1e-30) break;
            for (int i = 0; i < m.dim; ++i) x[i] -= hv * g[i] / g2;
        }
        if (!converged || !m.chart_box.contains(x, 1e-6)) continue;
        if (std::abs(m.h.eval(x)) >= 1e-6) continue;
        ++found;
        double g2 = 0.0;
        for (int i = 0; i < m.dim; ++i) {
            double gi = grads[i].eval(x);
            g2 += gi * gi;
        }
        if (std::sqrt(g2) <= 1e-3)
            throw BoundaryRankViolation("gradient of h too small on {h = 0} (norm " +
                                        std::to_string(std::sqrt(g2)) + ")");
    }
    if (found == 0) throw BoundaryRankViolation("no boundary points found in chart box");

    for (int s = 0; s < 1000; ++s) {
        std::vector<double> x(m.dim);
        for (int i = 0; i < m.dim; ++i) x[i] = rng.uniform(m.chart_box.lo_d(i), m.chart_box.hi_d(i));
        if (!m.interior_contains(x)) continue;
        if (m.kind != ModelKind::Custom && m.h.eval(x) <= 0)
            throw BoundaryRankViolation("h not positive on interior sample");
    }
}

// The double D(H) with projection pi(x,t) = x and involution tau(x,t) = (x,-t).
struct DoubleModel {
    BoundedModel base;
    NashExpr defining;   // t^2 - h(x), arity dim+1
    NashMap projection;  // (x,t) -> x
    NashMap involution;  // (x,t) -> (x,-t)

    int total_dim() const { return base.dim + 1; }

    double defect(const std::vector<double>& xt) const { return std::abs(defining.eval(xt)); }
};

inline DoubleModel nash_double(const BoundedModel& model, std::uint64_t seed = 42) {
    validate_model(model, seed);
    int d = model.dim;
    // lift h to arity d+1
    std::vector<NashExpr> lift;
    for (int i = 0; i < d; ++i) lift.push_back(NashExpr::variable(d + 1, i));
    NashExpr h_lifted = model.h.substitute(lift);
    NashExpr t = NashExpr::variable(d + 1, d);

    std::vector<NashExpr> proj;
    for (int i = 0; i < d; ++i) proj.push_back(NashExpr::variable(d + 1, i));
    std::vector<NashExpr> invol = proj;
    invol.push_back(-t);

    DoubleModel dm{model, t * t - h_lifted, NashMap(proj), NashMap(invol)};
    return dm;
}

// Fiber of pi over x in H: two points off the boundary, one on it.
inline std::vector<std::vector<double>> fiber(const DoubleModel& dm, const std::vector<double>& x) {
    double hv = dm.base.h.eval(x);
    if (hv < -1e-9) throw OutsideH("h(x) < 0: point outside H");
    std::vector<std::vector<double>> out;
    if (hv <= 1e-9) {
        auto p = x;
        p.push_back(0.0);
        out.push_back(std::move(p));
        return out;
    }
    double r = std::sqrt(hv);
    auto p = x;
    p.push_back(r);
    out.push_back(p);
    p[x.size()] = -r;
    out.push_back(std::move(p));
    return out;
}

// ---------------------------------------------------------------------------
// Local square chart: pi in the chart u'(x,t) = (t, u_2(x), ..., u_d(x))
// equals (y_1, ..., y_d) -> (y_1^2, y_2, ..., y_d).

struct LocalSquareReport {
    double max_error = 0.0;
    int samples = 0;
    double tolerance = 0.0;
    bool pass() const { return max_error <= tolerance; }
};

namespace detail {

struct Chart {
    // u: H-neighborhood -> (-1,1) x R^{d-1} with u_1 = h; inverse of u.
    std::function<std::vector<double>(const std::vector<double>&)> u, u_inv;
    std::vector<std::pair<double, double>> ranges;  // sampling ranges for u-coordinates
};

inline Chart model_chart(const BoundedModel& m, const std::vector<double>& boundary_point) {
    Chart c;
    switch (m.kind) {
        case ModelKind::Interval:
            c.u = [](const std::vector<double>& x) { return x; };
            c.u_inv = [](const std::vector<double>& y) { return y; };
            c.ranges = {{-0.95, 0.95}};
            break;
        case ModelKind::HalfSpace: {
            c.u = [](const std::vector<double>& x) { return x; };
            c.u_inv = [](const std::vector<double>& y) { return y; };
            c.ranges.assign(m.dim, {-1.5, 1.5});
            c.ranges[0] = {-0.95, 0.95};
            break;
        }
        case ModelKind::Disk: {
            double theta0 = std::atan2(boundary_point[1], boundary_point[0]);
            double cs = std::cos(theta0), sn = std::sin(theta0);
            c.u = [cs, sn](const std::vector<double>& p) {
                double rx = cs * p[0] + sn * p[1];
                double ry = -sn * p[0] + cs * p[1];
                return std::vector<double>{1.0 - p[0] * p[0] - p[1] * p[1], std::atan2(ry, rx)};
            };
            c.u_inv = [cs, sn](const std::vector<double>& y) {
                double r = std::sqrt(1.0 - y[0]);
                double rx = r * std::cos(y[1]), ry = r * std::sin(y[1]);
                return std::vector<double>{cs * rx - sn * ry, sn * rx + cs * ry};
            };
            c.ranges = {{-0.9, 0.9}, {-1.5, 1.5}};
            break;
        }
        case ModelKind::Custom: throw UnsupportedModel("no explicit chart for custom models");
    }
    return c;
}

}  // namespace detail

inline LocalSquareReport verify_local_square(const DoubleModel& dm, const std::vector<double>& boundary_point,
                                             double tol, std::uint64_t seed = 42, int samples = 100) {
    if (std::abs(dm.base.h.eval(boundary_point)) > 1e-9)
        throw OutsideH("chart check needs a boundary point: |h| > 1e-9");
    detail::Chart chart = detail::model_chart(dm.base, boundary_point);
    SplitMix64 rng(seed);
    LocalSquareReport rep;
    rep.tolerance = tol;
    rep.samples = samples;
    int d = dm.base.dim;
    for (int s = 0; s < samples; ++s) {
        std::vector<double> y(d);
        for (int i = 0; i < d; ++i) y[i] = rng.uniform(chart.ranges[i].first, chart.ranges[i].second);
        // zeta(y) = (u^{-1}(y_1^2, y'), y_1) lies on D(H)
        std::vector<double> usq = y;
        usq[0] = y[0] * y[0];
        std::vector<double> x = chart.u_inv(usq);
        std::vector<double> xt = x;
        xt.push_back(y[0]);
        // pi then u must square the first chart coordinate
        std::vector<double> back = chart.u(x);
        double err = dm.defect(xt);
        err = std::max(err, std::abs(back[0] - y[0] * y[0]));
        for (int i = 1; i < d; ++i) err = std::max(err, std::abs(back[i] - y[i]));
        rep.max_error = std::max(rep.max_error, err);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Interior-onto surjection f : Int(H) -> H (collar + double + interval
// diffeomorphism assembled as in the model construction).

namespace detail {

// Inverse of the catalog map f3 : (-1,1) -> (-1,0).
inline double f3_inverse(double s) {
    if (s <= -0.5) return s;              // identity region
    if (s >= -0.2) return 5.0 * s + 1.0;  // linear tail piece
    static const NamedMap f3 = make("c2_f3");
    return bisect([&](double t) { return f3.eval(t); }, -0.5, 0.0, s);
}

// The 1-dimensional surjection (0,inf) -> [0,inf): identity above the collar,
// collar points pushed through the double and the f3 scaling.
inline double interval_onto(double x) {
    if (x >= 1.0) return x;
    if (x <= 0.0) throw OutsideH("interval interior point must be positive");
    double s = f3_inverse(-std::sqrt(x));
    return s * s;
}

}  // namespace detail

struct OntoReport {
    double max_residual = 0.0;
    double boundary_residual = 0.0;  // residual when solving f(p) = boundary target
    int grid = 0;
    double tolerance = 0.0;
    bool pass() const { return max_residual <= tolerance; }
};

class InteriorOnto {
  public:
    explicit InteriorOnto(const BoundedModel& model) : model_(model) {
        if (model.kind == ModelKind::Custom)
            throw UnsupportedModel("interior_onto needs a model with an explicit global collar");
    }

    // Evaluates f at an interior point of H.
    std::vector<double> operator()(const std::vector<double>& p) const {
        switch (model_.kind) {
            case ModelKind::Interval: return {detail::interval_onto(p[0])};
            case ModelKind::HalfSpace: {
                auto out = p;
                out[0] = detail::interval_onto(p[0]);
                return out;
            }
            case ModelKind::Disk: {
                double r = std::hypot(p[0], p[1]);
                if (r >= 1.0) throw OutsideH("disk interior point needed");
                if (r == 0.0) return {0.0, 0.0};
                double s = detail::f3_inverse(-std::sqrt(1.0 - r * r));
                double scale = std::sqrt(std::max(0.0, 1.0 - s * s)) / r;
                return {scale * p[0], scale * p[1]};
            }
            case ModelKind::Custom: break;
        }
        throw UnsupportedModel("interior_onto: unsupported model");
    }

    // Surjectivity probe: a grid of H, each target matched by a preimage
    // found by bisection along the collar coordinate.
    OntoReport probe(int grid_points = 1000, double tol = 1e-6) const {
        OntoReport rep;
        rep.tolerance = tol;
        const double r_star = std::sqrt(24.0) / 5.0;  // radius mapping onto the disk boundary
        switch (model_.kind) {
            case ModelKind::Interval: {
                rep.grid = grid_points;
                for (int i = 0; i < grid_points; ++i) {
                    double target = 10.0 * i / (grid_points - 1);
                    double x = preimage_1d(target);
                    rep.max_residual = std::max(rep.max_residual, std::abs(detail::interval_onto(x) - target));
                }
                rep.boundary_residual = std::abs(detail::interval_onto(preimage_1d(0.0)));
                break;
            }
            case ModelKind::HalfSpace: {
                int n1 = 32, n2 = 32;
                rep.grid = n1 * n2;
                for (int i = 0; i < n1; ++i)
                    for (int j = 0; j < n2; ++j) {
                        std::vector<double> target(model_.dim, 0.0);
                        target[0] = 2.0 * i / (n1 - 1);
                        target[1] = -2.0 + 4.0 * j / (n2 - 1);
                        std::vector<double> p = target;
                        p[0] = preimage_1d(target[0]);
                        auto img = (*this)(p);
                        double res = 0.0;
                        for (int k = 0; k < model_.dim; ++k) res = std::max(res, std::abs(img[k] - target[k]));
                        rep.max_residual = std::max(rep.max_residual, res);
                    }
                std::vector<double> p0(model_.dim, 0.0);
                p0[0] = preimage_1d(0.0);
                rep.boundary_residual = std::abs((*this)(p0)[0]);
                break;
            }
            case ModelKind::Disk: {
                int nr = 25, na = 40;
                rep.grid = nr * na + 1;
                // center target
                rep.max_residual = std::hypot((*this)({0.0, 0.0})[0], (*this)({0.0, 0.0})[1]);
                for (int i = 1; i <= nr; ++i)
                    for (int j = 0; j < na; ++j) {
                        double rho = static_cast<double>(i) / nr;
                        double ang = 6.283185307179586477 * j / na;
                        double r = detail::bisect([this](double rr) { return image_radius(rr); }, 1e-9,
                                                  r_star, rho);
                        std::vector<double> p{r * std::cos(ang), r * std::sin(ang)};
                        auto img = (*this)(p);
                        double res = std::hypot(img[0] - rho * std::cos(ang), img[1] - rho * std::sin(ang));
                        rep.max_residual = std::max(rep.max_residual, res);
                    }
                rep.boundary_residual = std::abs(image_radius(r_star) - 1.0);
                break;
            }
            case ModelKind::Custom: throw UnsupportedModel("interior_onto: unsupported model");
        }
        return rep;
    }

    // Solves f(x) = target on the monotone branch [1/25, 1] of the collar.
    double preimage_1d(double target) const {
        if (target >= 1.0) return target;
        return detail::bisect([](double x) { return detail::interval_onto(x); }, 1.0 / 25.0, 1.0, target);
    }

    double image_radius(double r) const {
        auto img = (*this)({r, 0.0});
        return std::hypot(img[0], img[1]);
    }

    const BoundedModel& model() const { return model_; }

  private:
    BoundedModel model_;
};

}  // namespace nashatlas

#endif
