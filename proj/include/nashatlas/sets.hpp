// Semialgebraic sets in disjunctive normal form, membership tests and
// seeded rejection sampling.
#ifndef NASHATLAS_SETS_HPP
#define NASHATLAS_SETS_HPP

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "nashatlas/expr.hpp"
#include "nashatlas/parse.hpp"
#include "nashatlas/prng.hpp"

namespace nashatlas {

struct EmptyAfterBudget : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Rel { LT, LE, EQ, NE, GE, GT };

inline const char* rel_text(Rel r) {
    switch (r) {
        case Rel::LT: return "<";
        case Rel::LE: return "<=";
        case Rel::EQ: return "=";
        case Rel::NE: return "!=";
        case Rel::GE: return ">=";
        case Rel::GT: return ">";
    }
    return "?";
}

struct SignAtom {
    Polynomial poly;
    Rel rel;

    SignAtom negated() const {
        switch (rel) {
            case Rel::LT: return {poly, Rel::GE};
            case Rel::LE: return {poly, Rel::GT};
            case Rel::EQ: return {poly, Rel::NE};
            case Rel::NE: return {poly, Rel::EQ};
            case Rel::GE: return {poly, Rel::LT};
            case Rel::GT: return {poly, Rel::LE};
        }
        throw ExprError("unreachable");
    }

    // Equalities use |p(x)| <= 1e-9 (1 + |x|) so far-field tests stay
    // meaningful.
    bool holds(const std::vector<double>& x) const {
        double v = poly.eval(x);
        double nx = 0.0;
        for (double c : x) nx += c * c;
        double tol = 1e-9 * (1.0 + std::sqrt(nx));
        switch (rel) {
            case Rel::LT: return v < 0;
            case Rel::LE: return v <= tol;
            case Rel::EQ: return std::abs(v) <= tol;
            case Rel::NE: return std::abs(v) > tol;
            case Rel::GE: return v >= -tol;
            case Rel::GT: return v > 0;
        }
        return false;
    }

    // Decided by the true sign of the exact value.
    bool holds_exact(const RatVec& x) const {
        int s = rat_sign(poly.eval(x));
        switch (rel) {
            case Rel::LT: return s < 0;
            case Rel::LE: return s <= 0;
            case Rel::EQ: return s == 0;
            case Rel::NE: return s != 0;
            case Rel::GE: return s >= 0;
            case Rel::GT: return s > 0;
        }
        return false;
    }
};

class SemiSet {
  public:
    using Conjunction = std::vector<SignAtom>;

    SemiSet(int dim, std::vector<Conjunction> dnf) : dim_(dim), dnf_(std::move(dnf)) {
        for (const auto& conj : dnf_) {
            if (conj.empty()) throw ExprError("empty conjunction in DNF");
            for (const auto& a : conj)
                if (a.poly.arity() != dim_) throw DimensionMismatch("atom arity != ambient dimension");
        }
    }

    static SemiSet empty(int dim) {
        // x1^2 < 0 is unsatisfiable
        Polynomial p = Polynomial::variable(dim, 0).pow(2);
        return SemiSet(dim, {{SignAtom{p, Rel::LT}}});
    }

    static SemiSet whole(int dim) {
        Polynomial zero(dim);
        return SemiSet(dim, {{SignAtom{zero, Rel::EQ}}});
    }

    int dim() const { return dim_; }
    const std::vector<Conjunction>& dnf() const { return dnf_; }

    bool contains(const std::vector<double>& x) const {
        if (static_cast<int>(x.size()) != dim_) throw DimensionMismatch("point dimension mismatch");
        for (const auto& conj : dnf_) {
            bool ok = true;
            for (const auto& a : conj) ok = ok && a.holds(x);
            if (ok) return true;
        }
        return false;
    }

    bool contains_exact(const RatVec& x) const {
        if (static_cast<int>(x.size()) != dim_) throw DimensionMismatch("point dimension mismatch");
        for (const auto& conj : dnf_) {
            bool ok = true;
            for (const auto& a : conj) ok = ok && a.holds_exact(x);
            if (ok) return true;
        }
        return false;
    }

    SemiSet unite(const SemiSet& o) const {
        check_dim(o);
        std::vector<Conjunction> dnf = dnf_;
        dnf.insert(dnf.end(), o.dnf_.begin(), o.dnf_.end());
        return SemiSet(dim_, std::move(dnf));
    }

    SemiSet intersect(const SemiSet& o) const {
        check_dim(o);
        std::vector<Conjunction> dnf;
        for (const auto& a : dnf_)
            for (const auto& b : o.dnf_) {
                Conjunction c = a;
                c.insert(c.end(), b.begin(), b.end());
                dnf.push_back(std::move(c));
            }
        return SemiSet(dim_, std::move(dnf));
    }

    // De Morgan: the complement of a DNF re-normalized to DNF by
    // distributing the product of negated clauses.
    SemiSet complement() const {
        std::vector<Conjunction> acc = {{}};
        for (const auto& conj : dnf_) {
            std::vector<Conjunction> next;
            for (const auto& partial : acc)
                for (const auto& atom : conj) {
                    Conjunction c = partial;
                    c.push_back(atom.negated());
                    next.push_back(std::move(c));
                }
            acc = std::move(next);
        }
        // an empty DNF complement would be the whole space
        for (auto& c : acc)
            if (c.empty()) return whole(dim_);
        return SemiSet(dim_, std::move(acc));
    }

  private:
    void check_dim(const SemiSet& o) const {
        if (dim_ != o.dim_) throw DimensionMismatch("set dimension mismatch");
    }

    int dim_;
    std::vector<Conjunction> dnf_;
};

struct SampleCloud {
    std::vector<std::vector<double>> points;
    std::uint64_t seed = 0;
    DomainBox box;
    std::uint64_t accepted = 0;
    std::uint64_t rejected = 0;

    double acceptance_ratio() const {
        std::uint64_t total = accepted + rejected;
        return total == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(total);
    }
};

// Deterministic rejection sampling: identical seed, identical cloud.
// Raises EmptyAfterBudget when nothing is accepted within 1e6 * n trials.
inline SampleCloud sample(const SemiSet& set, const DomainBox& box, std::size_t n, std::uint64_t seed) {
    if (!box.bounded()) throw ExprError("sample: box must be bounded");
    if (box.dim() != set.dim()) throw DimensionMismatch("sample: box dimension mismatch");
    if (n < 1) throw ExprError("sample: n must be >= 1");

    SampleCloud cloud;
    cloud.seed = seed;
    cloud.box = box;
    SplitMix64 rng(seed);
    const std::uint64_t budget = 1000000ULL * static_cast<std::uint64_t>(n);
    std::vector<double> x(box.dim());
    for (std::uint64_t trial = 0; trial < budget && cloud.points.size() < n; ++trial) {
        for (int i = 0; i < box.dim(); ++i) x[i] = rng.uniform(box.lo_d(i), box.hi_d(i));
        if (set.contains(x)) {
            cloud.points.push_back(x);
            ++cloud.accepted;
        } else {
            ++cloud.rejected;
        }
    }
    if (cloud.points.empty())
        throw EmptyAfterBudget("no accepted point in " + std::to_string(budget) + " trials: set is probably empty");
    return cloud;
}

// ---------------------------------------------------------------------------
// Set description files: one conjunction per line, atoms separated by "&&",
// unions separated by blank lines or simply by new lines.

inline SignAtom parse_atom(const std::string& text, int dim) {
    static const char* ops[] = {"<=", ">=", "!=", "==", "<", ">", "="};
    static const Rel rels[] = {Rel::LE, Rel::GE, Rel::NE, Rel::EQ, Rel::LT, Rel::GT, Rel::EQ};
    for (int i = 0; i < 7; ++i) {
        auto pos = text.find(ops[i]);
        if (pos == std::string::npos) continue;
        std::string lhs = text.substr(0, pos);
        std::string rhs = text.substr(pos + std::string(ops[i]).size());
        Polynomial p = parse_polynomial(lhs, dim) - parse_polynomial(rhs, dim);
        return SignAtom{p, rels[i]};
    }
    throw ParseError("atom has no relation: '" + text + "'");
}

inline SemiSet parse_semiset(const std::string& text, int dim = 0) {
    if (dim <= 0) dim = detail::scan_arity(text);
    std::vector<SemiSet::Conjunction> dnf;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::string trimmed;
        for (char c : line)
            if (c != '\r') trimmed.push_back(c);
        bool blank = trimmed.find_first_not_of(" \t") == std::string::npos;
        if (blank || trimmed[trimmed.find_first_not_of(" \t")] == '#') continue;
        SemiSet::Conjunction conj;
        std::size_t start = 0;
        while (start <= trimmed.size()) {
            auto pos = trimmed.find("&&", start);
            std::string atom = trimmed.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
            if (atom.find_first_not_of(" \t") != std::string::npos) conj.push_back(parse_atom(atom, dim));
            if (pos == std::string::npos) break;
            start = pos + 2;
        }
        if (!conj.empty()) dnf.push_back(std::move(conj));
    }
    if (dnf.empty()) throw ParseError("set description has no conjunctions");
    return SemiSet(dim, std::move(dnf));
}

}  // namespace nashatlas

#endif
