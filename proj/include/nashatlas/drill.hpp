// The drilling blow-up in a single chart: local model Phi, Gauss map,
// chart inverse Psi_0, sphere fibers over the center, the local monomial
// representation, generator independence, the two-to-one comparison with the
// classical blow-up, and submanifold erasure.
#ifndef NASHATLAS_DRILL_HPP
#define NASHATLAS_DRILL_HPP

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "nashatlas/doubles.hpp"
#include "nashatlas/expr.hpp"
#include "nashatlas/parse.hpp"
#include "nashatlas/prng.hpp"

namespace nashatlas {

struct OnCenter : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateCoefficients : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RankDeficient : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedSpec : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Center data for the chart R^d ⊇ N = R^e x {0}: coefficient maps
// zeta_{e+1..d} : R^d -> R^k with zeta_j(y,0) linearly independent, plus the
// generators f_1..f_k when the spec was given in generator form.
struct CenterSpec {
    int d = 2;  // ambient dimension
    int e = 0;  // center dimension
    int k = 2;  // number of generator directions
    std::vector<std::vector<Polynomial>> zeta;  // (d-e) maps, each k components of arity d
    std::vector<Polynomial> generators;         // empty unless generator form
    bool generator_form = false;

    int normal_dim() const { return d - e; }

    Eigen::MatrixXd zeta_matrix(const std::vector<double>& x) const {
        Eigen::MatrixXd Z(k, normal_dim());
        for (int j = 0; j < normal_dim(); ++j)
            for (int l = 0; l < k; ++l) Z(l, j) = zeta[j][l].eval(x);
        return Z;
    }

    // phi(y, rho, w) = sum_j zeta_j(y, rho w) w_j
    Eigen::VectorXd phi_raw(const std::vector<double>& y, double rho, const std::vector<double>& w) const {
        std::vector<double> x(d);
        for (int i = 0; i < e; ++i) x[i] = y[i];
        for (int j = 0; j < normal_dim(); ++j) x[e + j] = rho * w[j];
        Eigen::MatrixXd Z = zeta_matrix(x);
        Eigen::VectorXd wv(normal_dim());
        for (int j = 0; j < normal_dim(); ++j) wv(j) = w[j];
        return Z * wv;
    }

    // generator values straight from zeta: f(x) = sum_j zeta_j(x) z_j
    Eigen::VectorXd generator_values(const std::vector<double>& x) const {
        Eigen::MatrixXd Z = zeta_matrix(x);
        Eigen::VectorXd z(normal_dim());
        for (int j = 0; j < normal_dim(); ++j) z(j) = x[e + j];
        return Z * z;
    }
};

// The trivial spec: zeta_j the j-th unit vector of R^{d-e}, generators the
// last d-e coordinates.
inline CenterSpec trivial_spec(int d, int e) {
    if (e < 0 || e >= d) throw UnsupportedSpec("need 0 <= e < d");
    CenterSpec s;
    s.d = d;
    s.e = e;
    s.k = d - e;
    s.zeta.assign(d - e, std::vector<Polynomial>(d - e, Polynomial(d)));
    for (int j = 0; j < d - e; ++j) s.zeta[j][j] = Polynomial::constant(d, Rat(1));
    s.generators.clear();
    for (int j = 0; j < d - e; ++j) s.generators.push_back(Polynomial::variable(d, e + j));
    s.generator_form = true;
    return s;
}

// Splits each generator into sum_j zeta_j(x) z_j by assigning every monomial
// to the first center-normal variable it contains.
inline CenterSpec spec_from_generators(int d, int e, const std::vector<Polynomial>& gens) {
    if (e < 0 || e >= d) throw UnsupportedSpec("need 0 <= e < d");
    if (gens.empty()) throw UnsupportedSpec("need at least one generator");
    CenterSpec s;
    s.d = d;
    s.e = e;
    s.k = static_cast<int>(gens.size());
    s.generators = gens;
    s.generator_form = true;
    s.zeta.assign(d - e, std::vector<Polynomial>(s.k, Polynomial(d)));
    for (int l = 0; l < s.k; ++l) {
        if (gens[l].arity() != d) throw DimensionMismatch("generator arity != ambient dimension");
        for (const auto& [exp, coeff] : gens[l].terms()) {
            int j = -1;
            for (int idx = e; idx < d; ++idx)
                if (exp[idx] > 0) {
                    j = idx - e;
                    break;
                }
            if (j < 0)
                throw UnsupportedSpec("generator '" + gens[l].to_string() +
                                      "' has a monomial not vanishing on the center");
            auto reduced = exp;
            --reduced[e + j];
            s.zeta[j][l].add_term(reduced, coeff);
        }
    }
    return s;
}

// Independence of zeta_j along the center and, in generator form, vanishing
// plus full normal rank of the generators there.
inline void validate_spec(const CenterSpec& s, std::uint64_t seed = 42, int samples = 100) {
    SplitMix64 rng(seed);
    for (int t = 0; t < samples; ++t) {
        std::vector<double> x(s.d, 0.0);
        for (int i = 0; i < s.e; ++i) x[i] = rng.uniform(-2.0, 2.0);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(s.zeta_matrix(x));
        if (svd.singularValues()(s.normal_dim() - 1) <= 1e-6)
            throw DegenerateCoefficients("zeta vectors nearly dependent at a center sample");
        if (s.generator_form) {
            for (const auto& g : s.generators)
                if (std::abs(g.eval(x)) >= 1e-9) throw UnsupportedSpec("generator does not vanish on center");
            Eigen::MatrixXd J(s.k, s.d);
            for (int l = 0; l < s.k; ++l)
                for (int i = 0; i < s.d; ++i) J(l, i) = s.generators[l].partial(i).eval(x);
            Eigen::JacobiSVD<Eigen::MatrixXd> js(J);
            int rank = 0;
            for (int i = 0; i < js.singularValues().size(); ++i)
                if (js.singularValues()(i) > 1e-9) ++rank;
            if (rank != s.normal_dim()) throw RankDeficient("generator jacobian rank != d - e on center");
        }
    }
}

// A point of the total space M x S^{k-1}.
struct DrillPoint {
    std::vector<double> base;  // in R^d
    std::vector<double> dir;   // unit vector in R^k

    DrillPoint(std::vector<double> b, std::vector<double> w) : base(std::move(b)), dir(std::move(w)) {
        double n = 0.0;
        for (double c : dir) n += c * c;
        if (std::abs(std::sqrt(n) - 1.0) > 1e-9) throw ExprError("drill point direction is not unit");
    }
};

// F(x) = f(x) / |f(x)| off the center.
inline std::vector<double> gauss(const CenterSpec& s, const std::vector<double>& x) {
    Eigen::VectorXd f = s.generator_values(x);
    double n = f.norm();
    if (n <= 1e-12) throw OnCenter("gauss map undefined on the center");
    std::vector<double> out(s.k);
    for (int l = 0; l < s.k; ++l) out[l] = f(l) / n;
    return out;
}

// Phi(y, rho, w) = ((y, rho w), phi / |phi|); well-defined also at rho = 0.
inline DrillPoint phi(const CenterSpec& s, const std::vector<double>& y, double rho,
                      const std::vector<double>& w) {
    if (static_cast<int>(y.size()) != s.e || static_cast<int>(w.size()) != s.normal_dim())
        throw DimensionMismatch("phi: argument dimensions");
    double wn = 0.0;
    for (double c : w) wn += c * c;
    if (std::abs(std::sqrt(wn) - 1.0) > 1e-9) throw ExprError("phi: w must be a unit vector");
    Eigen::VectorXd v = s.phi_raw(y, rho, w);
    double n = v.norm();
    if (n <= 1e-12) throw DegenerateCoefficients("phi vanished: coefficient independence violated");
    std::vector<double> base(s.d), dir(s.k);
    for (int i = 0; i < s.e; ++i) base[i] = y[i];
    for (int j = 0; j < s.normal_dim(); ++j) base[s.e + j] = rho * w[j];
    for (int l = 0; l < s.k; ++l) dir[l] = v(l) / n;
    return DrillPoint(std::move(base), std::move(dir));
}

struct ChartTriple {
    std::vector<double> y;
    double rho = 0.0;
    std::vector<double> w;
};

// Inverse chart on U: solves the linear system zeta v = b, normalizes, and
// projects the normal part of the base point onto w.
inline ChartTriple psi0(const CenterSpec& s, const DrillPoint& p) {
    Eigen::MatrixXd Z = s.zeta_matrix(p.base);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Z, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double smax = svd.singularValues()(0);
    double smin = svd.singularValues()(s.normal_dim() - 1);
    if (smin <= 1e-9 * std::max(1.0, smax)) throw RankDeficient("coefficient matrix rank < d - e");
    Eigen::VectorXd b(s.k);
    for (int l = 0; l < s.k; ++l) b(l) = p.dir[l];
    Eigen::VectorXd v = svd.solve(b);
    double vn = v.norm();
    if (vn <= 1e-12) throw RankDeficient("linear system produced the zero solution");
    ChartTriple out;
    out.y.assign(p.base.begin(), p.base.begin() + s.e);
    out.w.resize(s.normal_dim());
    double rho = 0.0;
    for (int j = 0; j < s.normal_dim(); ++j) {
        out.w[j] = v(j) / vn;
        rho += p.base[s.e + j] * out.w[j];
    }
    out.rho = rho;
    return out;
}

// The fiber sphere over a center point: Delta(w) = sum zeta_j(q) w_j
// normalized, landing in the span of the zeta_j(q).
struct FiberSphere {
    CenterSpec spec;
    std::vector<double> q;

    std::vector<double> operator()(const std::vector<double>& w) const {
        Eigen::MatrixXd Z = spec.zeta_matrix(q);
        Eigen::VectorXd wv(spec.normal_dim());
        for (int j = 0; j < spec.normal_dim(); ++j) wv(j) = w[j];
        Eigen::VectorXd v = Z * wv;
        double n = v.norm();
        if (n <= 1e-12) throw DegenerateCoefficients("fiber direction vanished");
        std::vector<double> out(spec.k);
        for (int l = 0; l < spec.k; ++l) out[l] = v(l) / n;
        return out;
    }

    // Residual of projecting Delta(w) onto span{zeta_j(q)}.
    double span_residual(const std::vector<double>& w) const {
        Eigen::MatrixXd Z = spec.zeta_matrix(q);
        auto img = (*this)(w);
        Eigen::VectorXd v(spec.k);
        for (int l = 0; l < spec.k; ++l) v(l) = img[l];
        Eigen::VectorXd coeffs = Z.colPivHouseholderQr().solve(v);
        return (Z * coeffs - v).norm();
    }
};

inline FiberSphere fiber_over(const CenterSpec& s, const std::vector<double>& q) {
    for (int j = 0; j < s.normal_dim(); ++j)
        if (std::abs(q[s.e + j]) > 1e-9) throw OnCenter("fiber_over: point is off the center");
    return FiberSphere{s, q};
}

// ---------------------------------------------------------------------------
// Local representation (monomial form) around a boundary point of the total
// space: u ∘ pi ∘ Phi ∘ eta ∘ f^{-1} = (y, rho', rho' v').

struct LocalRepReport {
    double max_error = 0.0;
    double transversality_error = 0.0;  // | d(composite)_0 e_{e+1} - e_{e+1} |
    int samples = 0;
    double tolerance = 0.0;
    bool pass() const { return max_error <= tolerance && transversality_error <= tolerance; }
};

inline LocalRepReport local_rep_check(const CenterSpec& s, const std::vector<double>& center_point,
                                      double tol, std::uint64_t seed = 42, int samples = 100) {
    if (s.zeta.empty()) throw UnsupportedSpec("local_rep_check needs a chart-form spec");
    const int m = s.normal_dim() - 1;  // dimension of the v' block
    SplitMix64 rng(seed);
    LocalRepReport rep;
    rep.tolerance = tol;
    rep.samples = samples;

    auto composite = [&](const std::vector<double>& arg) {
        // arg = (y, rho', v') ; f^{-1} then eta then Phi then the projection
        std::vector<double> y(arg.begin(), arg.begin() + s.e);
        double rhop = arg[s.e];
        double vn2 = 0.0;
        for (int i = 0; i < m; ++i) vn2 += arg[s.e + 1 + i] * arg[s.e + 1 + i];
        double scale = std::sqrt(1.0 + vn2);
        double rho = rhop * scale;
        std::vector<double> w(s.normal_dim());
        double wn2 = 0.0;
        for (int i = 0; i < m; ++i) {
            w[1 + i] = arg[s.e + 1 + i] / scale;
            wn2 += w[1 + i] * w[1 + i];
        }
        w[0] = std::sqrt(std::max(0.0, 1.0 - wn2));
        DrillPoint p = phi(s, y, rho, w);
        return p.base;  // u = id in the chart
    };

    for (int t = 0; t < samples; ++t) {
        std::vector<double> arg(s.d);
        for (int i = 0; i < s.e; ++i) arg[i] = center_point[i] + rng.uniform(-1.0, 1.0);
        arg[s.e] = rng.uniform(-1.0, 1.0);
        for (int i = 0; i < m; ++i) arg[s.e + 1 + i] = rng.uniform(-1.0, 1.0);
        auto img = composite(arg);
        double err = 0.0;
        for (int i = 0; i < s.e; ++i) err = std::max(err, std::abs(img[i] - arg[i]));
        err = std::max(err, std::abs(img[s.e] - arg[s.e]));
        for (int i = 0; i < m; ++i)
            err = std::max(err, std::abs(img[s.e + 1 + i] - arg[s.e] * arg[s.e + 1 + i]));
        rep.max_error = std::max(rep.max_error, err);
    }

    // d(composite)_p applied to e_{e+1} must come back as e_{e+1}: the image
    // direction sticks out of the center hyperplane.
    const double step = 1e-6;
    std::vector<double> plus(s.d, 0.0), minus(s.d, 0.0);
    for (int i = 0; i < s.e; ++i) plus[i] = minus[i] = center_point[i];
    plus[s.e] = step;
    minus[s.e] = -step;
    auto ip = composite(plus), im = composite(minus);
    for (int i = 0; i < s.d; ++i) {
        double der = (ip[i] - im[i]) / (2 * step);
        double want = (i == s.e) ? 1.0 : 0.0;
        rep.transversality_error = std::max(rep.transversality_error, std::abs(der - want));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Generator independence: appending f_{k+1} = <g, f> produces an equivalent
// total space, witnessed by the pair (Theta, Psi).

struct GeneratorChange {
    CenterSpec spec;            // original, generator form
    CenterSpec extended;        // with f_{k+1} appended
    std::vector<Polynomial> g;  // k coefficient functions

    // Theta(a,b) = (a, (b, <g(a),b>) / sqrt(1 + <g(a),b>^2))
    DrillPoint theta(const DrillPoint& p) const {
        double dot = 0.0;
        for (int l = 0; l < spec.k; ++l) dot += g[l].eval(p.base) * p.dir[l];
        double scale = std::sqrt(1.0 + dot * dot);
        std::vector<double> dir(spec.k + 1);
        for (int l = 0; l < spec.k; ++l) dir[l] = p.dir[l] / scale;
        dir[spec.k] = dot / scale;
        return DrillPoint(p.base, std::move(dir));
    }

    // Psi(a,c) = (a, c' / |c'|) strips the appended coordinate.
    DrillPoint psi(const DrillPoint& p) const {
        double n2 = 0.0;
        for (int l = 0; l < spec.k; ++l) n2 += p.dir[l] * p.dir[l];
        double n = std::sqrt(n2);
        if (n <= 1e-12) throw DegenerateCoefficients("psi: leading block vanished");
        std::vector<double> dir(spec.k);
        for (int l = 0; l < spec.k; ++l) dir[l] = p.dir[l] / n;
        return DrillPoint(p.base, std::move(dir));
    }
};

inline GeneratorChange change_generators(const CenterSpec& s, const std::vector<Polynomial>& g) {
    if (!s.generator_form) throw UnsupportedSpec("change_generators needs a generator-form spec");
    if (static_cast<int>(g.size()) != s.k) throw DimensionMismatch("need one coefficient per generator");
    Polynomial extra(s.d);
    for (int l = 0; l < s.k; ++l) extra = extra + g[l] * s.generators[l];
    auto gens = s.generators;
    gens.push_back(extra);
    GeneratorChange gc{s, spec_from_generators(s.d, s.e, gens), g};
    return gc;
}

// ---------------------------------------------------------------------------
// Classical comparison: (x, w) -> (x, [w]) with the representative scaled so
// its first nonzero coordinate is positive; a deterministic two-to-one map.

struct ProjectivePoint {
    std::vector<double> base;
    std::vector<double> rep;  // canonical unit representative

    bool operator==(const ProjectivePoint& o) const {
        if (base.size() != o.base.size() || rep.size() != o.rep.size()) return false;
        for (std::size_t i = 0; i < base.size(); ++i)
            if (std::abs(base[i] - o.base[i]) > 1e-12) return false;
        for (std::size_t i = 0; i < rep.size(); ++i)
            if (std::abs(rep[i] - o.rep[i]) > 1e-12) return false;
        return true;
    }
};

inline ProjectivePoint classical_compare(const CenterSpec&, const DrillPoint& p) {
    ProjectivePoint out;
    out.base = p.base;
    out.rep = p.dir;
    for (double c : out.rep) {
        if (std::abs(c) > 1e-12) {
            if (c < 0)
                for (double& r : out.rep) r = -r;
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Erasing N = R^e x {0} from M = R^d: polar factorization, the interval
// surjection along the radius, then the projection.

class EraseMap {
  public:
    EraseMap(int d, int e) : d_(d), e_(e) {
        if (e < 0 || e >= d) throw UnsupportedSpec("erase needs 0 <= e < d");
    }

    std::vector<double> operator()(const std::vector<double>& x) const {
        double r2 = 0.0;
        for (int j = e_; j < d_; ++j) r2 += x[j] * x[j];
        double r = std::sqrt(r2);
        if (r <= 0.0) throw OnCenter("erase map is defined off the center only");
        double scale = detail::interval_onto(r) / r;
        std::vector<double> out = x;
        for (int j = e_; j < d_; ++j) out[j] *= scale;
        return out;
    }

    // Preimage via the polar factorization; exact for targets on the center.
    std::vector<double> preimage(const std::vector<double>& target) const {
        double r2 = 0.0;
        for (int j = e_; j < d_; ++j) r2 += target[j] * target[j];
        double r = std::sqrt(r2);
        std::vector<double> p = target;
        if (r <= 0.0) {
            p[e_] = 1.0 / 25.0;  // the radius the interval map sends to 0
            for (int j = e_ + 1; j < d_; ++j) p[j] = 0.0;
            return p;
        }
        double rho = r >= 1.0 ? r
                              : detail::bisect([](double s) { return detail::interval_onto(s); },
                                               1.0 / 25.0, 1.0, r);
        for (int j = e_; j < d_; ++j) p[j] = target[j] * (rho / r);
        return p;
    }

    int ambient() const { return d_; }
    int center_dim() const { return e_; }

  private:
    int d_, e_;
};

struct EraseReport {
    double max_residual = 0.0;
    int grid = 0;
    double tolerance = 0.0;
    bool pass() const { return max_residual <= tolerance; }
};

inline EraseReport erase_probe(const EraseMap& f, double tol = 1e-6) {
    EraseReport rep;
    rep.tolerance = tol;
    int d = f.ambient();
    int per_axis = d == 1 ? 1000 : (d == 2 ? 32 : 10);
    std::vector<int> idx(d, 0);
    for (;;) {
        std::vector<double> target(d);
        for (int i = 0; i < d; ++i)
            target[i] = -2.0 + 4.0 * idx[i] / (per_axis - 1);
        auto p = f.preimage(target);
        auto img = f(p);
        double res = 0.0;
        for (int i = 0; i < d; ++i) res = std::max(res, std::abs(img[i] - target[i]));
        rep.max_residual = std::max(rep.max_residual, res);
        ++rep.grid;
        int i = 0;
        while (i < d && ++idx[i] == per_axis) idx[i++] = 0;
        if (i == d) break;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Spec files: "d = 2", "e = 0", then either "trivial" or
// "generators = x1; x1 + x2".

inline CenterSpec parse_center_spec(const std::string& text) {
    int d = -1, e = -1;
    bool trivial = false;
    std::vector<std::string> gen_strings;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        auto eq = line.find('=');
        std::string key = line.substr(0, eq == std::string::npos ? line.size() : eq);
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t\r") + 1);
        std::string val = eq == std::string::npos ? "" : line.substr(eq + 1);
        if (key == "d") d = std::stoi(val);
        else if (key == "e") e = std::stoi(val);
        else if (key == "trivial") trivial = true;
        else if (key == "generators") {
            std::size_t start = 0;
            while (start <= val.size()) {
                auto pos = val.find(';', start);
                std::string g = val.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
                if (g.find_first_not_of(" \t\r") != std::string::npos) gen_strings.push_back(g);
                if (pos == std::string::npos) break;
                start = pos + 1;
            }
        } else {
            throw ParseError("unknown spec key '" + key + "'");
        }
    }
    if (d < 1 || e < 0 || e >= d) throw ParseError("spec needs d >= 1 and 0 <= e < d");
    if (trivial || gen_strings.empty()) return trivial_spec(d, e);
    std::vector<Polynomial> gens;
    for (const auto& gs : gen_strings) gens.push_back(parse_polynomial(gs, d));
    return spec_from_generators(d, e, gens);
}

}  // namespace nashatlas

#endif
