// Well-weldedness calculus: the non-smooth locus eta of piecewise-polynomial
// paths, monomial bridges between orthants, regular-component combinatorics
// of checkerboard (orthant) germs, and the quadrant blow-up welding engine.
#ifndef NASHATLAS_WELD_HPP
#define NASHATLAS_WELD_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "nashatlas/expr.hpp"

namespace nashatlas {

struct PivotOutOfRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Piecewise-polynomial paths and eta

// Breakpoints 0 = t_0 < ... < t_m = 1 with one polynomial map R -> R^n per
// interval; adjacent pieces agree in value at interior breakpoints.
class PiecewisePolyPath {
  public:
    PiecewisePolyPath(std::vector<Rat> breakpoints, std::vector<std::vector<Polynomial>> pieces)
        : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)) {
        if (breaks_.size() < 2 || breaks_.front() != 0 || breaks_.back() != 1)
            throw ExprError("breakpoints must run from 0 to 1");
        for (std::size_t i = 1; i < breaks_.size(); ++i)
            if (!(breaks_[i - 1] < breaks_[i])) throw ExprError("breakpoints must increase");
        if (pieces_.size() + 1 != breaks_.size()) throw ExprError("need one piece per interval");
        std::size_t n = pieces_[0].size();
        for (const auto& piece : pieces_) {
            if (piece.size() != n) throw DimensionMismatch("pieces disagree in target dimension");
            for (const auto& comp : piece)
                if (comp.arity() != 1) throw ExprError("path pieces must be univariate");
        }
        for (std::size_t i = 1; i < pieces_.size(); ++i) {
            RatVec t{breaks_[i]};
            for (std::size_t c = 0; c < n; ++c)
                if (pieces_[i - 1][c].eval(t) != pieces_[i][c].eval(t))
                    throw ExprError("pieces disagree in value at breakpoint " + breaks_[i].str());
        }
    }

    std::size_t piece_count() const { return pieces_.size(); }
    std::size_t target_dim() const { return pieces_[0].size(); }
    const std::vector<Rat>& breakpoints() const { return breaks_; }

    RatVec eval(const Rat& t) const {
        std::size_t i = 0;
        while (i + 1 < pieces_.size() && t > breaks_[i + 1]) ++i;
        RatVec out(target_dim());
        for (std::size_t c = 0; c < target_dim(); ++c) out[c] = pieces_[i][c].eval(RatVec{t});
        return out;
    }

    // Images of exactly those interior breakpoints where the two adjacent
    // pieces differ as polynomials; single-piece paths have empty eta.
    std::vector<RatVec> eta() const {
        std::vector<RatVec> out;
        for (std::size_t i = 1; i < pieces_.size(); ++i) {
            bool same = true;
            for (std::size_t c = 0; c < target_dim() && same; ++c)
                same = pieces_[i - 1][c] == pieces_[i][c];
            if (!same) out.push_back(eval(breaks_[i]));
        }
        return out;
    }

  private:
    std::vector<Rat> breaks_;
    std::vector<std::vector<Polynomial>> pieces_;
};

// ---------------------------------------------------------------------------
// Orthant families

using SignVec = std::vector<int>;  // entries +1 / -1

inline std::string sign_string(const SignVec& s) {
    std::string out;
    for (int v : s) out.push_back(v > 0 ? '+' : '-');
    return out;
}

// A family F ⊆ {-1,+1}^ell of open orthants: the combinatorial germ of a
// checkerboard set at a crossing point.
class OrthantSet {
  public:
    OrthantSet(int ell, std::vector<SignVec> family) : ell_(ell), fam_(std::move(family)) {
        if (ell_ < 1) throw ExprError("orthant dimension must be positive");
        if (fam_.empty()) throw ExprError("orthant family must be nonempty");
        for (auto& s : fam_) {
            if (static_cast<int>(s.size()) != ell_) throw DimensionMismatch("sign vector length != ell");
            for (int v : s)
                if (v != 1 && v != -1) throw ExprError("sign entries must be +1 or -1");
        }
        std::sort(fam_.begin(), fam_.end());
        fam_.erase(std::unique(fam_.begin(), fam_.end()), fam_.end());
    }

    int ell() const { return ell_; }
    const std::vector<SignVec>& family() const { return fam_; }
    std::size_t size() const { return fam_.size(); }

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < fam_.size(); ++i) {
            if (i) out.push_back(',');
            out += sign_string(fam_[i]);
        }
        return out;
    }

  private:
    int ell_;
    std::vector<SignVec> fam_;
};

// "++,--" -> family of sign vectors
inline OrthantSet parse_orthants(const std::string& text) {
    std::vector<SignVec> fam;
    SignVec cur;
    auto flush = [&]() {
        if (!cur.empty()) {
            fam.push_back(cur);
            cur.clear();
        }
    };
    for (char c : text) {
        if (c == '+') cur.push_back(1);
        else if (c == '-') cur.push_back(-1);
        else if (c == ',' || c == ' ' || c == '\t' || c == '\n') flush();
        else throw ExprError(std::string("bad orthant character '") + c + "'");
    }
    flush();
    if (fam.empty()) throw ExprError("empty orthant family");
    return OrthantSet(static_cast<int>(fam[0].size()), std::move(fam));
}

// ---------------------------------------------------------------------------
// Regular-locus components: two orthants glue across a shared facet exactly
// when their sign vectors differ in one coordinate.

inline int hamming(const SignVec& a, const SignVec& b) {
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

inline std::vector<std::vector<std::size_t>> reg_components(const OrthantSet& F) {
    std::size_t n = F.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (hamming(F.family()[i], F.family()[j]) == 1) parent[find(i)] = find(j);
    std::vector<std::vector<std::size_t>> comps;
    std::vector<int> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t root = find(i);
        if (slot[root] < 0) {
            slot[root] = static_cast<int>(comps.size());
            comps.emplace_back();
        }
        comps[slot[root]].push_back(i);
    }
    return comps;
}

inline std::size_t reg_component_count(const OrthantSet& F) { return reg_components(F).size(); }

// ---------------------------------------------------------------------------
// Bridges: monomial arcs crossing from one orthant into another through the
// origin. beta_k(t) = to_k t^2 when the signs agree and to_k t otherwise, so
// beta((0,delta)) lies in orthant(to) and beta((-delta,0)) in orthant(from).

struct Bridge {
    std::vector<Polynomial> beta;  // univariate components
    SignVec from, to;

    RatVec eval(const Rat& t) const {
        RatVec out(beta.size());
        for (std::size_t i = 0; i < beta.size(); ++i) out[i] = beta[i].eval(RatVec{t});
        return out;
    }
};

inline Bridge bridge(const SignVec& from, const SignVec& to) {
    if (from.size() != to.size()) throw DimensionMismatch("sign vectors differ in length");
    Bridge b;
    b.from = from;
    b.to = to;
    for (std::size_t k = 0; k < from.size(); ++k) {
        Polynomial t = Polynomial::variable(1, 0);
        Polynomial comp = (from[k] == to[k]) ? t.pow(2) * Rat(to[k]) : t * Rat(to[k]);
        b.beta.push_back(comp);
    }
    return b;
}

// Sampled sign conditions for |t| in (0, delta]; delta fixed at 1/2.
inline bool bridge_valid(const Bridge& b, int samples = 100) {
    for (int s = 1; s <= samples; ++s) {
        Rat t = Rat(s, 2 * samples);  // (0, 1/2]
        RatVec plus = b.eval(t), minus = b.eval(-t);
        for (std::size_t k = 0; k < b.beta.size(); ++k) {
            if (rat_sign(plus[k]) != b.to[k]) return false;
            if (rat_sign(minus[k]) != b.from[k]) return false;
        }
    }
    RatVec zero = b.eval(Rat(0));
    for (const Rat& c : zero)
        if (c != 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Quadrant blow-up calculus: the sign-vector pullback of the substitution
// (x_1,...,x_l) -> (..., x_p, ..., x_p x_k, ...) in the pivot chart. The rule
// is an involution of {-1,+1}^ell applied elementwise to the family.

inline SignVec blowup_sign(const SignVec& eps, int pivot) {
    SignVec out(eps.size());
    for (std::size_t k = 0; k < eps.size(); ++k)
        out[k] = static_cast<int>(k) == pivot ? eps[pivot] : eps[pivot] * eps[k];
    return out;
}

inline OrthantSet blowup_origin(const OrthantSet& F, int pivot) {
    if (pivot < 0 || pivot >= F.ell()) throw PivotOutOfRange("pivot index out of range");
    std::vector<SignVec> fam;
    for (const auto& eps : F.family()) fam.push_back(blowup_sign(eps, pivot));
    return OrthantSet(F.ell(), std::move(fam));
}

// ---------------------------------------------------------------------------
// Welding engine: greedily blow up, choosing the pivot that minimizes the
// resulting component count, until the regular locus is connected or no
// pivot strictly improves it.

struct WeldResult {
    std::vector<int> pivots;
    std::vector<std::size_t> component_trace;  // counts, starting with the input
    OrthantSet final;
    bool stalled = false;
};

inline WeldResult weld_sequence(const OrthantSet& F0) {
    WeldResult res{{}, {reg_component_count(F0)}, F0, false};
    OrthantSet cur = F0;
    while (res.component_trace.back() > 1) {
        std::size_t best_count = res.component_trace.back();
        int best_pivot = -1;
        OrthantSet best = cur;
        for (int p = 0; p < cur.ell(); ++p) {
            OrthantSet cand = blowup_origin(cur, p);
            std::size_t c = reg_component_count(cand);
            if (c < best_count) {
                best_count = c;
                best_pivot = p;
                best = cand;
            }
        }
        if (best_pivot < 0) {
            res.stalled = true;  // reported, not raised
            break;
        }
        cur = best;
        res.pivots.push_back(best_pivot);
        res.component_trace.push_back(best_count);
        res.final = cur;
    }
    return res;
}

}  // namespace nashatlas

#endif
