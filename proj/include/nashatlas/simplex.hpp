// Exact rational simplicial toolkit: barycentric coordinates, simplex
// complexes with exact common-face predicates, the facet-gluing erase
// homeomorphism, barycentric facet subdivision, facet-adjacency ordering,
// and the interior-to-space diffeomorphism chain.
//
// Everything in this header is exact except interior_to_space, which goes
// through the 1-dimensional catalog maps and is checked to tolerance.
#ifndef NASHATLAS_SIMPLEX_HPP
#define NASHATLAS_SIMPLEX_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nashatlas/rational.hpp"

namespace nashatlas {

struct SimplexError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateSimplex : SimplexError {
    using SimplexError::SimplexError;
};
struct OutsideAffineHull : SimplexError {
    using SimplexError::SimplexError;
};
struct NotFacetAdjacent : SimplexError {
    using SimplexError::SimplexError;
};
struct DegenerateConfiguration : SimplexError {
    using SimplexError::SimplexError;
};
struct InvalidFacetSelection : SimplexError {
    using SimplexError::SimplexError;
};
struct DisconnectedAdjacency : SimplexError {
    using SimplexError::SimplexError;
};

// ---------------------------------------------------------------------------
// Exact dense linear algebra over Q

using QMatrix = std::vector<RatVec>;  // row-major

inline int qrank(QMatrix m) {
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size();
    int rank = 0;
    std::size_t prow = 0;
    for (std::size_t c = 0; c < cols && prow < rows; ++c) {
        std::size_t pivot = prow;
        while (pivot < rows && m[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[prow], m[pivot]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == prow || m[r][c] == 0) continue;
            Rat f = m[r][c] / m[prow][c];
            for (std::size_t cc = c; cc < cols; ++cc) m[r][cc] -= f * m[prow][cc];
        }
        ++prow;
        ++rank;
    }
    return rank;
}

inline Rat qdet(QMatrix m) {
    std::size_t n = m.size();
    Rat det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && m[pivot][c] == 0) ++pivot;
        if (pivot == n) return Rat(0);
        if (pivot != c) {
            std::swap(m[c], m[pivot]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            Rat f = m[r][c] / m[c][c];
            for (std::size_t cc = c; cc < n; ++cc) m[r][cc] -= f * m[c][cc];
        }
    }
    return det;
}

// Solves M x = rhs exactly; nullopt when the system is inconsistent or
// underdetermined.
inline std::optional<RatVec> qsolve(QMatrix m, RatVec rhs) {
    std::size_t rows = m.size(), cols = m.empty() ? 0 : m[0].size();
    std::vector<int> pivot_col(rows, -1);
    std::size_t prow = 0;
    for (std::size_t c = 0; c < cols && prow < rows; ++c) {
        std::size_t pivot = prow;
        while (pivot < rows && m[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[prow], m[pivot]);
        std::swap(rhs[prow], rhs[pivot]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == prow || m[r][c] == 0) continue;
            Rat f = m[r][c] / m[prow][c];
            for (std::size_t cc = c; cc < cols; ++cc) m[r][cc] -= f * m[prow][cc];
            rhs[r] -= f * rhs[prow];
        }
        pivot_col[prow] = static_cast<int>(c);
        ++prow;
    }
    for (std::size_t r = prow; r < rows; ++r)
        if (rhs[r] != 0) return std::nullopt;  // inconsistent
    RatVec x(cols, Rat(0));
    std::set<int> pivots;
    for (std::size_t r = 0; r < prow; ++r) {
        x[pivot_col[r]] = rhs[r] / m[r][pivot_col[r]];
        pivots.insert(pivot_col[r]);
    }
    if (pivots.size() != cols) {
        // free columns: solution exists but is not unique; report failure so
        // callers treat it as a degenerate configuration
        return std::nullopt;
    }
    return x;
}

// ---------------------------------------------------------------------------
// Exact LP: maximize c.x subject to A x = b, x >= 0 (two-phase simplex with
// Bland's rule). Small and dense; the common-face predicate needs nothing
// more.

struct LPResult {
    enum class Status { Infeasible, Optimal, Unbounded } status;
    Rat value;
};

class ExactLP {
  public:
    static LPResult maximize(QMatrix A, RatVec b, RatVec c) {
        std::size_t m = A.size(), n = m == 0 ? 0 : A[0].size();
        for (std::size_t r = 0; r < m; ++r)
            if (b[r] < 0) {
                for (auto& v : A[r]) v = -v;
                b[r] = -b[r];
            }
        // phase 1: artificial basis
        std::size_t total = n + m;
        QMatrix T(m, RatVec(total + 1, Rat(0)));
        std::vector<std::size_t> basis(m);
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t cix = 0; cix < n; ++cix) T[r][cix] = A[r][cix];
            T[r][n + r] = 1;
            T[r][total] = b[r];
            basis[r] = n + r;
        }
        RatVec obj1(total, Rat(0));
        for (std::size_t a = n; a < total; ++a) obj1[a] = -1;
        Rat val1 = run(T, basis, obj1, total, m);
        if (val1 != 0) return {LPResult::Status::Infeasible, Rat(0)};
        // drive artificials out where possible; rows with artificial basis and
        // no real pivot are redundant and harmless (their rhs is 0)
        for (std::size_t r = 0; r < m; ++r) {
            if (basis[r] < n) continue;
            for (std::size_t cix = 0; cix < n; ++cix)
                if (T[r][cix] != 0) {
                    pivot(T, basis, r, cix, total, m);
                    break;
                }
        }
        RatVec obj2(total, Rat(0));
        for (std::size_t cix = 0; cix < n; ++cix) obj2[cix] = c[cix];
        for (std::size_t a = n; a < total; ++a) obj2[a] = Rat(-1000000007);  // keep artificials out
        bool unbounded = false;
        Rat val2 = run(T, basis, obj2, total, m, &unbounded);
        if (unbounded) return {LPResult::Status::Unbounded, Rat(0)};
        return {LPResult::Status::Optimal, val2};
    }

  private:
    static void pivot(QMatrix& T, std::vector<std::size_t>& basis, std::size_t row, std::size_t col,
                      std::size_t total, std::size_t m) {
        Rat p = T[row][col];
        for (std::size_t cix = 0; cix <= total; ++cix) T[row][cix] /= p;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == row || T[r][col] == 0) continue;
            Rat f = T[r][col];
            for (std::size_t cix = 0; cix <= total; ++cix) T[r][cix] -= f * T[row][cix];
        }
        basis[row] = col;
    }

    static Rat run(QMatrix& T, std::vector<std::size_t>& basis, const RatVec& obj, std::size_t total,
                   std::size_t m, bool* unbounded = nullptr) {
        for (;;) {
            // reduced costs under the current basis
            RatVec y(m);
            for (std::size_t r = 0; r < m; ++r) y[r] = obj[basis[r]];
            std::size_t enter = total;
            for (std::size_t cix = 0; cix < total; ++cix) {
                Rat red = obj[cix];
                for (std::size_t r = 0; r < m; ++r) red -= y[r] * T[r][cix];
                if (red > 0) {
                    enter = cix;  // Bland: first improving column
                    break;
                }
            }
            if (enter == total) break;
            std::size_t leave = m;
            Rat best(0);
            for (std::size_t r = 0; r < m; ++r) {
                if (T[r][enter] <= 0) continue;
                Rat ratio = T[r][total] / T[r][enter];
                if (leave == m || ratio < best || (ratio == best && basis[r] < basis[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave == m) {
                if (unbounded) *unbounded = true;
                return Rat(0);
            }
            pivot(T, basis, leave, enter, total, m);
        }
        Rat value(0);
        for (std::size_t r = 0; r < m; ++r) value += obj[basis[r]] * T[r][total];
        return value;
    }
};

// ---------------------------------------------------------------------------
// Simplex

struct Simplex {
    std::vector<RatVec> verts;  // n+1 affinely independent points in R^m

    Simplex() = default;
    explicit Simplex(std::vector<RatVec> v) : verts(std::move(v)) {
        if (verts.empty()) throw DegenerateSimplex("simplex needs vertices");
        for (const auto& p : verts)
            if (p.size() != verts[0].size()) throw DegenerateSimplex("vertex dimensions differ");
        QMatrix edges;
        for (std::size_t i = 1; i < verts.size(); ++i) {
            RatVec e(verts[0].size());
            for (std::size_t c = 0; c < e.size(); ++c) e[c] = verts[i][c] - verts[0][c];
            edges.push_back(std::move(e));
        }
        if (!edges.empty() && qrank(edges) != static_cast<int>(edges.size()))
            throw DegenerateSimplex("vertices are affinely dependent");
    }

    int dim() const { return static_cast<int>(verts.size()) - 1; }
    int ambient() const { return static_cast<int>(verts[0].size()); }

    RatVec barycenter() const {
        RatVec b(verts[0].size(), Rat(0));
        for (const auto& v : verts)
            for (std::size_t c = 0; c < b.size(); ++c) b[c] += v[c];
        for (auto& c : b) c /= Rat(static_cast<int>(verts.size()));
        return b;
    }

    bool same_vertex_set(const Simplex& o) const {
        if (verts.size() != o.verts.size()) return false;
        auto a = verts, bv = o.verts;
        std::sort(a.begin(), a.end());
        std::sort(bv.begin(), bv.end());
        return a == bv;
    }
};

// Exact barycentric coordinates; throws when the point misses the affine
// hull.
inline RatVec barycentric(const Simplex& s, const RatVec& p) {
    if (p.size() != s.verts[0].size()) throw SimplexError("point dimension mismatch");
    std::size_t n = s.verts.size() - 1, m = p.size();
    QMatrix M(m, RatVec(n, Rat(0)));
    RatVec rhs(m);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < n; ++c) M[r][c] = s.verts[c + 1][r] - s.verts[0][r];
        rhs[r] = p[r] - s.verts[0][r];
    }
    auto sol = n == 0 ? std::optional<RatVec>(RatVec{}) : qsolve(std::move(M), std::move(rhs));
    if (!sol) throw OutsideAffineHull("point is outside the affine hull");
    if (n == 0) {
        if (p != s.verts[0]) throw OutsideAffineHull("point differs from the 0-simplex vertex");
        return {Rat(1)};
    }
    RatVec lambda(n + 1);
    Rat rest(0);
    for (std::size_t c = 0; c < n; ++c) {
        lambda[c + 1] = (*sol)[c];
        rest += (*sol)[c];
    }
    lambda[0] = Rat(1) - rest;
    return lambda;
}

inline std::optional<RatVec> try_barycentric(const Simplex& s, const RatVec& p) {
    try {
        return barycentric(s, p);
    } catch (const OutsideAffineHull&) {
        return std::nullopt;
    }
}

inline bool simplex_contains(const Simplex& s, const RatVec& p) {
    auto lambda = try_barycentric(s, p);
    if (!lambda) return false;
    for (const Rat& l : *lambda)
        if (l < 0) return false;
    return true;
}

// Volume of `inner` relative to the full-dimensional frame of `outer`
// (exact; both must live in outer's affine hull).
inline Rat relative_volume(const Simplex& outer, const Simplex& inner) {
    std::size_t n = outer.verts.size() - 1;
    if (inner.verts.size() != n + 1) throw SimplexError("relative_volume: dimension mismatch");
    QMatrix M(n, RatVec(n));
    for (std::size_t r = 0; r < n; ++r) {
        RatVec l0 = barycentric(outer, inner.verts[0]);
        RatVec lr = barycentric(outer, inner.verts[r + 1]);
        for (std::size_t c = 0; c < n; ++c) M[r][c] = lr[c + 1] - l0[c + 1];
    }
    Rat det = qdet(std::move(M));
    return det < 0 ? Rat(-det) : det;  // fraction of outer's volume
}

// ---------------------------------------------------------------------------
// Common-face predicate (exact, via LP): the intersection of two simplices
// equals the convex hull of their shared vertices.

inline bool intersect_in_common_face(const Simplex& s1, const Simplex& s2) {
    std::size_t n1 = s1.verts.size(), n2 = s2.verts.size();
    std::size_t m = s1.verts[0].size();
    if (s2.verts[0].size() != m) throw SimplexError("ambient dimension mismatch");
    std::vector<bool> shared1(n1, false), shared2(n2, false);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j)
            if (s1.verts[i] == s2.verts[j]) shared1[i] = shared2[j] = true;

    // P = { (lambda, mu) >= 0 : sum lambda = 1, sum mu = 1,
    //       sum lambda_i u_i = sum mu_j v_j }
    QMatrix A(m + 2, RatVec(n1 + n2, Rat(0)));
    RatVec b(m + 2, Rat(0));
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t i = 0; i < n1; ++i) A[r][i] = s1.verts[i][r];
        for (std::size_t j = 0; j < n2; ++j) A[r][n1 + j] = -s2.verts[j][r];
    }
    for (std::size_t i = 0; i < n1; ++i) A[m][i] = 1;
    b[m] = 1;
    for (std::size_t j = 0; j < n2; ++j) A[m + 1][n1 + j] = 1;
    b[m + 1] = 1;

    auto max_coordinate = [&](std::size_t index) {
        RatVec c(n1 + n2, Rat(0));
        c[index] = 1;
        LPResult res = ExactLP::maximize(A, b, c);
        if (res.status == LPResult::Status::Infeasible) return Rat(0);  // disjoint
        return res.value;
    };

    for (std::size_t i = 0; i < n1; ++i)
        if (!shared1[i] && max_coordinate(i) > 0) return false;
    for (std::size_t j = 0; j < n2; ++j)
        if (!shared2[j] && max_coordinate(n1 + j) > 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Complex

class Complex {
  public:
    explicit Complex(std::vector<Simplex> simplices) : simplices_(std::move(simplices)) {
        if (simplices_.empty()) throw SimplexError("complex needs simplices");
        for (std::size_t i = 0; i < simplices_.size(); ++i)
            for (std::size_t j = i + 1; j < simplices_.size(); ++j) {
                if (simplices_[i].same_vertex_set(simplices_[j]))
                    throw SimplexError("duplicate simplex in complex");
                if (!intersect_in_common_face(simplices_[i], simplices_[j]))
                    throw SimplexError("simplices " + std::to_string(i) + "," + std::to_string(j) +
                                       " do not intersect in a common face");
            }
    }

    const std::vector<Simplex>& simplices() const { return simplices_; }

    int top_dim() const {
        int d = 0;
        for (const auto& s : simplices_) d = std::max(d, s.dim());
        return d;
    }

    std::size_t shared_vertex_count(std::size_t i, std::size_t j) const {
        std::size_t count = 0;
        for (const auto& u : simplices_[i].verts)
            for (const auto& v : simplices_[j].verts)
                if (u == v) ++count;
        return count;
    }

  private:
    std::vector<Simplex> simplices_;
};

// Orders the top-dimensional simplices so each one after the first shares a
// facet with an earlier one. Greedy breadth-first, lowest-index tie-break.
inline std::vector<std::size_t> order_d_simplices(const Complex& K) {
    int d = K.top_dim();
    std::vector<std::size_t> top;
    for (std::size_t i = 0; i < K.simplices().size(); ++i)
        if (K.simplices()[i].dim() == d) top.push_back(i);
    if (top.empty()) throw SimplexError("no top-dimensional simplex");

    std::vector<std::size_t> order;
    std::vector<bool> seen(top.size(), false);
    std::queue<std::size_t> frontier;
    frontier.push(0);
    seen[0] = true;
    while (!frontier.empty()) {
        std::size_t cur = frontier.front();
        frontier.pop();
        order.push_back(top[cur]);
        for (std::size_t next = 0; next < top.size(); ++next) {
            if (seen[next]) continue;
            if (K.shared_vertex_count(top[cur], top[next]) == static_cast<std::size_t>(d)) {
                seen[next] = true;
                frontier.push(next);
            }
        }
    }
    if (order.size() != top.size())
        throw DisconnectedAdjacency("facet-adjacency graph is not connected");
    return order;
}

inline bool valid_order(const Complex& K, const std::vector<std::size_t>& order) {
    int d = K.top_dim();
    for (std::size_t i = 1; i < order.size(); ++i) {
        bool linked = false;
        for (std::size_t j = 0; j < i && !linked; ++j)
            linked = K.shared_vertex_count(order[i], order[j]) == static_cast<std::size_t>(d);
        if (!linked) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Affine maps over Q and piecewise-affine maps

struct AffineMapQ {
    QMatrix A;  // rows x cols
    RatVec b;

    RatVec apply(const RatVec& x) const {
        RatVec out(b);
        for (std::size_t r = 0; r < A.size(); ++r)
            for (std::size_t c = 0; c < x.size(); ++c) out[r] += A[r][c] * x[c];
        return out;
    }

    static AffineMapQ identity(std::size_t n) {
        AffineMapQ m;
        m.A.assign(n, RatVec(n, Rat(0)));
        for (std::size_t i = 0; i < n; ++i) m.A[i][i] = 1;
        m.b.assign(n, Rat(0));
        return m;
    }

    // this(other(x))
    AffineMapQ after(const AffineMapQ& other) const {
        std::size_t rows = A.size(), mid = other.A.size(), cols = other.A[0].size();
        AffineMapQ out;
        out.A.assign(rows, RatVec(cols, Rat(0)));
        out.b = b;
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c)
                for (std::size_t k = 0; k < mid; ++k) out.A[r][c] += A[r][k] * other.A[k][c];
            for (std::size_t k = 0; k < mid; ++k) out.b[r] += A[r][k] * other.b[k];
        }
        return out;
    }

    AffineMapQ inverse() const {
        std::size_t n = A.size();
        QMatrix M = A;
        QMatrix inv(n, RatVec(n, Rat(0)));
        for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t pivot = c;
            while (pivot < n && M[pivot][c] == 0) ++pivot;
            if (pivot == n) throw DegenerateConfiguration("affine map is not invertible");
            std::swap(M[c], M[pivot]);
            std::swap(inv[c], inv[pivot]);
            Rat p = M[c][c];
            for (std::size_t cc = 0; cc < n; ++cc) {
                M[c][cc] /= p;
                inv[c][cc] /= p;
            }
            for (std::size_t r = 0; r < n; ++r) {
                if (r == c || M[r][c] == 0) continue;
                Rat f = M[r][c];
                for (std::size_t cc = 0; cc < n; ++cc) {
                    M[r][cc] -= f * M[c][cc];
                    inv[r][cc] -= f * inv[c][cc];
                }
            }
        }
        AffineMapQ out;
        out.A = std::move(inv);
        out.b.assign(n, Rat(0));
        RatVec nb = out.apply(b);
        for (std::size_t i = 0; i < n; ++i) out.b[i] = -nb[i];
        return out;
    }

    // Unique affine map sending the affine basis src[i] to dst[i].
    static AffineMapQ from_basis(const std::vector<RatVec>& src, const std::vector<RatVec>& dst) {
        std::size_t n = src[0].size();
        if (src.size() != n + 1 || dst.size() != n + 1)
            throw DegenerateConfiguration("from_basis: need n+1 points in R^n");
        QMatrix M(n + 1, RatVec(n + 1));
        for (std::size_t i = 0; i <= n; ++i) {
            for (std::size_t c = 0; c < n; ++c) M[i][c] = src[i][c];
            M[i][n] = 1;
        }
        AffineMapQ out;
        out.A.assign(dst[0].size(), RatVec(n, Rat(0)));
        out.b.assign(dst[0].size(), Rat(0));
        for (std::size_t r = 0; r < dst[0].size(); ++r) {
            RatVec rhs(n + 1);
            for (std::size_t i = 0; i <= n; ++i) rhs[i] = dst[i][r];
            auto sol = qsolve(M, rhs);
            if (!sol) throw DegenerateConfiguration("from_basis: source points not an affine basis");
            for (std::size_t c = 0; c < n; ++c) out.A[r][c] = (*sol)[c];
            out.b[r] = (*sol)[n];
        }
        return out;
    }
};

// Cell decomposition with one affine map per cell; adjacent cells' maps must
// agree on shared faces (checked exactly on shared vertices).
struct PiecewiseAffineMap {
    std::vector<Simplex> cells;
    std::vector<AffineMapQ> maps;

    RatVec apply(const RatVec& x) const {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            auto lambda = try_barycentric(cells[i], x);
            if (!lambda) continue;
            bool inside = true;
            for (const Rat& l : *lambda) inside = inside && l >= 0;
            if (inside) return maps[i].apply(x);
        }
        throw OutsideAffineHull("point is not in any cell");
    }

    bool covers(const RatVec& x) const {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            auto lambda = try_barycentric(cells[i], x);
            if (!lambda) continue;
            bool inside = true;
            for (const Rat& l : *lambda) inside = inside && l >= 0;
            if (inside) return true;
        }
        return false;
    }

    // Exact agreement of cell maps on shared vertices; affine maps agreeing
    // on the vertices of a face agree on the face.
    bool consistent() const {
        for (std::size_t i = 0; i < cells.size(); ++i)
            for (std::size_t j = i + 1; j < cells.size(); ++j)
                for (const auto& u : cells[i].verts)
                    for (const auto& v : cells[j].verts)
                        if (u == v && maps[i].apply(u) != maps[j].apply(u)) return false;
        return true;
    }
};

// ---------------------------------------------------------------------------
// Erasing a simplex across a shared facet: the homeomorphism
// psi : sigma_2 -> sigma_1 ∪ sigma_2 fixing the outer boundary of sigma_2.

struct EraseHomeo {
    PiecewiseAffineMap forward;   // sigma_2 -> sigma_1 ∪ sigma_2
    PiecewiseAffineMap inverse;   // sigma_1 ∪ sigma_2 -> sigma_2
    Simplex tau;                  // the shared facet
    RatVec v1, v2;                // opposite vertices
};

inline EraseHomeo erase_homeo(const Simplex& s1, const Simplex& s2) {
    int n = s1.dim();
    if (s2.dim() != n || s1.ambient() != n || s2.ambient() != n)
        throw NotFacetAdjacent("need two full-dimensional simplices of equal dimension");

    // shared facet
    std::vector<RatVec> shared;
    RatVec v1, v2;
    int v1_count = 0, v2_count = 0;
    for (const auto& u : s1.verts) {
        bool found = false;
        for (const auto& v : s2.verts) found = found || u == v;
        if (found) shared.push_back(u);
        else {
            v1 = u;
            ++v1_count;
        }
    }
    for (const auto& v : s2.verts) {
        bool found = false;
        for (const auto& u : s1.verts) found = found || u == v;
        if (!found) {
            v2 = v;
            ++v2_count;
        }
    }
    if (static_cast<int>(shared.size()) != n || v1_count != 1 || v2_count != 1)
        throw NotFacetAdjacent("simplices do not share exactly one facet");
    if (!intersect_in_common_face(s1, s2))
        throw NotFacetAdjacent("simplices overlap beyond the shared facet");
    std::sort(shared.begin(), shared.end());
    Simplex tau{shared};

    // v1, v2 must lie strictly on opposite sides of aff(tau)
    {
        QMatrix M(n, RatVec(n));
        auto fill = [&](const RatVec& x) {
            for (int c = 0; c < n; ++c) M[0][c] = x[c] - shared[0][c];
            for (int r = 1; r < n; ++r)
                for (int c = 0; c < n; ++c) M[r][c] = shared[r][c] - shared[0][c];
            return qdet(M);
        };
        Rat d1 = fill(v1), d2 = fill(v2);
        if (d1 == 0 || d2 == 0 || (d1 < 0) == (d2 < 0))
            throw DegenerateConfiguration("opposite vertices are not separated by the facet");
    }

    // normalized configuration: tau -> {x_n = 0} with barycenter 0,
    // v1 -> -e_n, then a shear moves the image of v2 to e_n
    std::vector<RatVec> wbar(n, RatVec(n, Rat(0)));
    for (int i = 0; i + 1 < n; ++i) wbar[i][i] = 1;
    if (n > 1)
        for (int c = 0; c + 1 < n; ++c) wbar[n - 1][c] = -1;
    RatVec en(n, Rat(0)), men(n, Rat(0));
    en[n - 1] = 1;
    men[n - 1] = -1;

    std::vector<RatVec> src = shared, dst = wbar;
    src.push_back(v1);
    dst.push_back(men);
    AffineMapQ T1 = AffineMapQ::from_basis(src, dst);

    RatVec v2n = T1.apply(v2);
    if (v2n[n - 1] <= 0) throw DegenerateConfiguration("normalization placed v2 below the facet");
    AffineMapQ shear = AffineMapQ::identity(n);
    for (int r = 0; r < n; ++r) shear.A[r][n - 1] -= (v2n[r] - en[r]) / v2n[n - 1];
    AffineMapQ T = shear.after(T1);
    AffineMapQ T_inv = T.inverse(), T1_inv = T1.inverse();

    // normalized anchor points
    RatVec w0(n, Rat(0)), b0(n, Rat(0)), origin(n, Rat(0));
    w0[n - 1] = Rat(1, n + 1);
    b0[n - 1] = Rat(1, n + 2);

    PiecewiseAffineMap fwd, inv;
    for (int i = 0; i < n; ++i) {
        std::vector<RatVec> rest;  // wbar_k for k != i
        for (int k = 0; k < n; ++k)
            if (k != i) rest.push_back(wbar[k]);

        auto cellverts = [&](const RatVec& a, const RatVec& bb) {
            std::vector<RatVec> vs{a, bb};
            vs.insert(vs.end(), rest.begin(), rest.end());
            return vs;
        };

        // psi_i fixes w0 and the wbar_k (k != i) and sends the origin to -e_n
        std::vector<RatVec> bsrc = cellverts(origin, w0), bdst = cellverts(men, w0);
        AffineMapQ psi_i = AffineMapQ::from_basis(bsrc, bdst);
        AffineMapQ psi_i_inv = psi_i.inverse();

        auto pull = [&](const std::vector<RatVec>& vs, const AffineMapQ& back) {
            std::vector<RatVec> out;
            for (const auto& v : vs) out.push_back(back.apply(v));
            return Simplex{out};
        };

        // forward cells: eta_{1i} split along psi_i^{-1}({x_n = 0})
        fwd.cells.push_back(pull(cellverts(origin, b0), T_inv));          // maps into sigma_1
        fwd.maps.push_back(T1_inv.after(psi_i.after(T)));
        fwd.cells.push_back(pull(cellverts(b0, w0), T_inv));              // stays in sigma_2
        fwd.maps.push_back(T_inv.after(psi_i.after(T)));
        fwd.cells.push_back(pull(cellverts(en, w0), T_inv));              // eta_{2i}: identity
        fwd.maps.push_back(AffineMapQ::identity(n));

        // inverse cells: epsilon_{1i} split along {x_n = 0}
        inv.cells.push_back(pull(cellverts(men, origin), T1_inv));        // sigma_1 part
        inv.maps.push_back(T_inv.after(psi_i_inv.after(T1)));
        inv.cells.push_back(pull(cellverts(origin, w0), T_inv));          // sigma_2 part
        inv.maps.push_back(T_inv.after(psi_i_inv.after(T)));
        inv.cells.push_back(pull(cellverts(en, w0), T_inv));              // eta_{2i}: identity
        inv.maps.push_back(AffineMapQ::identity(n));
    }
    return EraseHomeo{std::move(fwd), std::move(inv), std::move(tau), v1, v2};
}

// ---------------------------------------------------------------------------
// Barycentric subdivision along selected facets. Facet i is the one opposite
// vertex i.

inline std::vector<Simplex> subdivide(const Simplex& s, std::vector<int> facets) {
    int n = s.dim();
    std::sort(facets.begin(), facets.end());
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
    int k = static_cast<int>(facets.size());
    if (k < 1 || k > n + 1) throw InvalidFacetSelection("need 1 <= k <= n+1 facets");
    for (int f : facets)
        if (f < 0 || f > n) throw InvalidFacetSelection("facet index out of range");

    // epsilon = intersection of the unselected facets = hull of the vertices
    // opposite the selected ones; b = its barycenter
    std::vector<RatVec> eps_verts;
    for (int f : facets) eps_verts.push_back(s.verts[f]);
    RatVec b(s.verts[0].size(), Rat(0));
    for (const auto& v : eps_verts)
        for (std::size_t c = 0; c < b.size(); ++c) b[c] += v[c];
    for (auto& c : b) c /= Rat(k);

    std::vector<Simplex> pieces;
    for (int f : facets) {
        std::vector<RatVec> vs;
        for (int i = 0; i <= n; ++i)
            if (i != f) vs.push_back(s.verts[i]);
        vs.push_back(b);
        pieces.push_back(Simplex{vs});
    }

    // exact certification: positive volumes summing to vol(sigma), pairwise
    // common faces
    Rat total(0);
    for (const auto& p : pieces) {
        Rat v = relative_volume(s, p);
        if (v <= 0) throw InvalidFacetSelection("subdivision produced a degenerate piece");
        total += v;
    }
    if (total != 1) throw InvalidFacetSelection("subdivision volumes do not sum to vol(sigma)");
    for (std::size_t i = 0; i < pieces.size(); ++i)
        for (std::size_t j = i + 1; j < pieces.size(); ++j)
            if (!intersect_in_common_face(pieces[i], pieces[j]))
                throw InvalidFacetSelection("subdivision pieces do not meet in common faces");
    return pieces;
}

// ---------------------------------------------------------------------------
// Interior of a full-dimensional simplex to all of R^n: affine normalization
// onto the standard simplex, the projective map onto the open orthant, then
// t -> t - 1/t coordinatewise. Inverse composes the written inverses.

struct InteriorSpaceMaps {
    std::function<std::vector<double>(const std::vector<double>&)> forward;   // sigma^0 -> R^n
    std::function<std::vector<double>(const std::vector<double>&)> inverse;   // R^n -> sigma^0
    std::function<std::vector<double>(const std::vector<double>&)> to_orthant;  // sigma^0 -> (0,inf)^n
};

inline InteriorSpaceMaps interior_to_space(const Simplex& s) {
    int n = s.dim();
    if (s.ambient() != n) throw DegenerateSimplex("interior_to_space needs a full-dimensional simplex");

    // exact normalization: v_0 -> 0, v_i -> e_i
    std::vector<RatVec> dst(n + 1, RatVec(n, Rat(0)));
    for (int i = 1; i <= n; ++i) dst[i][i - 1] = 1;
    AffineMapQ norm = AffineMapQ::from_basis(s.verts, dst);
    AffineMapQ denorm = norm.inverse();

    auto normd = [norm](const std::vector<double>& x) {
        std::vector<double> out(x.size(), 0.0);
        for (std::size_t r = 0; r < out.size(); ++r) {
            out[r] = to_double(norm.b[r]);
            for (std::size_t c = 0; c < x.size(); ++c) out[r] += to_double(norm.A[r][c]) * x[c];
        }
        return out;
    };
    auto denormd = [denorm](const std::vector<double>& x) {
        std::vector<double> out(x.size(), 0.0);
        for (std::size_t r = 0; r < out.size(); ++r) {
            out[r] = to_double(denorm.b[r]);
            for (std::size_t c = 0; c < x.size(); ++c) out[r] += to_double(denorm.A[r][c]) * x[c];
        }
        return out;
    };

    auto to_orthant = [normd](const std::vector<double>& p) {
        auto x = normd(p);
        double sum = 0.0;
        for (double c : x) sum += c;
        std::vector<double> y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] / (1.0 - sum);
        return y;
    };

    auto forward = [to_orthant](const std::vector<double>& p) {
        auto y = to_orthant(p);
        for (double& c : y) c = c - 1.0 / c;
        return y;
    };

    auto inverse = [denormd](const std::vector<double>& z) {
        std::vector<double> y(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) y[i] = (z[i] + std::sqrt(z[i] * z[i] + 4.0)) / 2.0;
        double sum = 0.0;
        for (double c : y) sum += c;
        std::vector<double> x(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) x[i] = y[i] / (1.0 + sum);
        return denormd(x);
    };

    return InteriorSpaceMaps{forward, inverse, to_orthant};
}

// ---------------------------------------------------------------------------
// Simplex files: one simplex per line, vertices as (p/q, ...) tuples
// separated by ';'.

inline Simplex parse_simplex_line(const std::string& line) {
    std::vector<RatVec> verts;
    std::size_t pos = 0;
    while ((pos = line.find('(', pos)) != std::string::npos) {
        auto close = line.find(')', pos);
        if (close == std::string::npos) throw SimplexError("unbalanced parenthesis in simplex line");
        std::string tuple = line.substr(pos + 1, close - pos - 1);
        RatVec v;
        std::size_t start = 0;
        while (start <= tuple.size()) {
            auto comma = tuple.find(',', start);
            std::string tok = tuple.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            tok.erase(0, tok.find_first_not_of(" \t"));
            tok.erase(tok.find_last_not_of(" \t") + 1);
            if (!tok.empty()) v.push_back(parse_rat(tok));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        verts.push_back(std::move(v));
        pos = close + 1;
    }
    return Simplex{verts};
}

inline std::vector<Simplex> parse_simplices(const std::string& text) {
    std::vector<Simplex> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        out.push_back(parse_simplex_line(line));
    }
    return out;
}

}  // namespace nashatlas

#endif
