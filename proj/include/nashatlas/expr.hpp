// Exact-and-numeric expression kernel.
//
// Polynomial: multivariate polynomials with rational coefficients, stored as
// a sparse exponent->coefficient map. NashExpr: expression trees over the
// rational operations plus square roots of nonnegative arguments. All values
// are immutable after construction; every operation is a pure function.
#ifndef NASHATLAS_EXPR_HPP
#define NASHATLAS_EXPR_HPP

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nashatlas/rational.hpp"

namespace nashatlas {

struct ExprError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionMismatch : ExprError {
    using ExprError::ExprError;
};
struct NegativeSqrtArgument : ExprError {
    using ExprError::ExprError;
};
struct DivisionByZero : ExprError {
    using ExprError::ExprError;
};
struct OutOfDomain : ExprError {
    using ExprError::ExprError;
};
struct NotRationallyEvaluable : ExprError {
    using ExprError::ExprError;
};

// Square roots of tiny negatives are clamped to zero: boundary points of
// domains like {h >= 0} land at -1e-16 in binary64.
inline constexpr double kSqrtClamp = 1e-12;
// Guards only literal zero denominators.
inline constexpr double kDivZero = 1e-300;

// ---------------------------------------------------------------------------
// Polynomial

class Polynomial {
  public:
    using Exponents = std::vector<unsigned>;

    explicit Polynomial(int arity = 1) : arity_(arity) {
        if (arity < 1) throw ExprError("polynomial arity must be positive");
    }

    static Polynomial constant(int arity, const Rat& c) {
        Polynomial p(arity);
        if (c != 0) p.terms_[Exponents(arity, 0)] = c;
        return p;
    }

    static Polynomial variable(int arity, int index) {
        if (index < 0 || index >= arity) throw ExprError("variable index out of range");
        Polynomial p(arity);
        Exponents e(arity, 0);
        e[index] = 1;
        p.terms_[e] = 1;
        return p;
    }

    int arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Exponents, Rat>& terms() const { return terms_; }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents(arity_, 0));
    }

    Rat constant_value() const {
        if (terms_.empty()) return Rat(0);
        auto it = terms_.find(Exponents(arity_, 0));
        if (terms_.size() != 1 || it == terms_.end()) throw ExprError("not a constant polynomial");
        return it->second;
    }

    void add_term(const Exponents& e, const Rat& c) {
        if (static_cast<int>(e.size()) != arity_) throw DimensionMismatch("exponent length != arity");
        Rat& slot = terms_[e];
        slot += c;
        if (slot == 0) terms_.erase(e);
    }

    Polynomial operator+(const Polynomial& o) const {
        check_arity(o);
        Polynomial r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }

    Polynomial operator-(const Polynomial& o) const {
        check_arity(o);
        Polynomial r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
        return r;
    }

    Polynomial operator-() const {
        Polynomial r(arity_);
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    Polynomial operator*(const Polynomial& o) const {
        check_arity(o);
        Polynomial r(arity_);
        for (const auto& [ea, ca] : terms_)
            for (const auto& [eb, cb] : o.terms_) {
                Exponents e(arity_);
                for (int i = 0; i < arity_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    Polynomial operator*(const Rat& s) const {
        Polynomial r(arity_);
        if (s == 0) return r;
        for (const auto& [e, c] : terms_) r.terms_[e] = c * s;
        return r;
    }

    Polynomial pow(unsigned n) const {
        Polynomial r = constant(arity_, 1);
        Polynomial base = *this;
        while (n > 0) {
            if (n & 1) r = r * base;
            base = base * base;
            n >>= 1;
        }
        return r;
    }

    bool operator==(const Polynomial& o) const { return arity_ == o.arity_ && terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Rat eval(const RatVec& x) const {
        if (static_cast<int>(x.size()) != arity_) throw DimensionMismatch("point length != arity");
        Rat acc(0);
        for (const auto& [e, c] : terms_) {
            Rat t = c;
            for (int i = 0; i < arity_; ++i)
                for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
            acc += t;
        }
        return acc;
    }

    double eval(const std::vector<double>& x) const {
        if (static_cast<int>(x.size()) != arity_) throw DimensionMismatch("point length != arity");
        double acc = 0.0;
        for (const auto& [e, c] : terms_) {
            double t = to_double(c);
            for (int i = 0; i < arity_; ++i)
                for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
            acc += t;
        }
        return acc;
    }

    Polynomial partial(int var) const {
        if (var < 0 || var >= arity_) throw ExprError("partial: variable index out of range");
        Polynomial r(arity_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponents d = e;
            --d[var];
            r.add_term(d, c * Rat(e[var]));
        }
        return r;
    }

    unsigned total_degree() const {
        unsigned deg = 0;
        for (const auto& [e, c] : terms_) {
            unsigned s = 0;
            for (unsigned k : e) s += k;
            if (s > deg) deg = s;
        }
        return deg;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first) os << (c > 0 ? " + " : " - ");
            else if (c < 0) os << "-";
            first = false;
            Rat a = rat_abs(c);
            bool has_var = false;
            for (int i = 0; i < arity_; ++i) has_var = has_var || e[i] > 0;
            if (a != 1 || !has_var) os << a.str();
            bool star = a != 1 || !has_var;
            for (int i = 0; i < arity_; ++i) {
                if (e[i] == 0) continue;
                if (star) os << "*";
                os << "x" << (i + 1);
                if (e[i] > 1) os << "^" << e[i];
                star = true;
            }
        }
        return os.str();
    }

  private:
    void check_arity(const Polynomial& o) const {
        if (arity_ != o.arity_) throw DimensionMismatch("polynomial arity mismatch");
    }

    int arity_;
    std::map<Exponents, Rat> terms_;  // no stored zero coefficients
};

// ---------------------------------------------------------------------------
// DomainBox

// Per-variable closed interval with rational, possibly infinite endpoints.
class DomainBox {
  public:
    struct Interval {
        std::optional<Rat> lo;  // nullopt = -inf
        std::optional<Rat> hi;  // nullopt = +inf
    };

    DomainBox() = default;
    static DomainBox whole(int dim) { return DomainBox(std::vector<Interval>(dim)); }

    explicit DomainBox(std::vector<Interval> iv) : intervals_(std::move(iv)) {
        for (const auto& i : intervals_)
            if (i.lo && i.hi && *i.lo > *i.hi) throw ExprError("domain box: lower > upper");
    }

    static DomainBox cube(int dim, const Rat& lo, const Rat& hi) {
        return DomainBox(std::vector<Interval>(dim, Interval{lo, hi}));
    }

    int dim() const { return static_cast<int>(intervals_.size()); }
    const Interval& interval(int i) const { return intervals_[i]; }

    bool bounded() const {
        for (const auto& i : intervals_)
            if (!i.lo || !i.hi) return false;
        return !intervals_.empty();
    }

    bool contains(const std::vector<double>& x, double slack = 1e-12) const {
        if (intervals_.empty()) return true;
        if (x.size() != intervals_.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (intervals_[i].lo && x[i] < to_double(*intervals_[i].lo) - slack) return false;
            if (intervals_[i].hi && x[i] > to_double(*intervals_[i].hi) + slack) return false;
        }
        return true;
    }

    double lo_d(int i) const { return intervals_[i].lo ? to_double(*intervals_[i].lo) : -HUGE_VAL; }
    double hi_d(int i) const { return intervals_[i].hi ? to_double(*intervals_[i].hi) : HUGE_VAL; }

  private:
    std::vector<Interval> intervals_;  // empty = unconstrained (any arity)
};

// ---------------------------------------------------------------------------
// NashExpr

enum class ExprKind { Constant, Variable, Sum, Difference, Product, Quotient, Sqrt };

class NashExpr {
    struct Node {
        ExprKind kind;
        Rat value;  // Constant
        int var = -1;  // Variable
        std::shared_ptr<const Node> a, b;
    };
    using NodePtr = std::shared_ptr<const Node>;

  public:
    static NashExpr constant(int arity, const Rat& c) {
        NashExpr e(arity);
        e.node_ = make_const(c);
        return e;
    }

    static NashExpr variable(int arity, int index) {
        if (index < 0 || index >= arity) throw ExprError("variable index out of range");
        NashExpr e(arity);
        auto n = std::make_shared<Node>();
        n->kind = ExprKind::Variable;
        n->var = index;
        e.node_ = n;
        return e;
    }

    static NashExpr from_polynomial(const Polynomial& p) {
        NashExpr acc = constant(p.arity(), 0);
        for (const auto& [e, c] : p.terms()) {
            NashExpr term = constant(p.arity(), c);
            for (int i = 0; i < p.arity(); ++i)
                for (unsigned k = 0; k < e[i]; ++k) term = term * variable(p.arity(), i);
            acc = acc + term;
        }
        return acc;
    }

    int arity() const { return arity_; }
    const DomainBox& domain() const { return domain_; }
    ExprKind kind() const { return node_->kind; }

    NashExpr with_domain(DomainBox box) const {
        NashExpr e = *this;
        e.domain_ = std::move(box);
        return e;
    }

    friend NashExpr operator+(const NashExpr& a, const NashExpr& b) {
        a.check(b);
        if (is_const(a.node_) && is_const(b.node_)) return wrap(a, make_const(a.node_->value + b.node_->value));
        if (is_const_val(a.node_, 0)) return wrap(a, b.node_);
        if (is_const_val(b.node_, 0)) return wrap(a, a.node_);
        return wrap(a, binary(ExprKind::Sum, a.node_, b.node_));
    }

    friend NashExpr operator-(const NashExpr& a, const NashExpr& b) {
        a.check(b);
        if (is_const(a.node_) && is_const(b.node_)) return wrap(a, make_const(a.node_->value - b.node_->value));
        if (is_const_val(b.node_, 0)) return wrap(a, a.node_);
        return wrap(a, binary(ExprKind::Difference, a.node_, b.node_));
    }

    friend NashExpr operator*(const NashExpr& a, const NashExpr& b) {
        a.check(b);
        if (is_const(a.node_) && is_const(b.node_)) return wrap(a, make_const(a.node_->value * b.node_->value));
        if (is_const_val(a.node_, 0) || is_const_val(b.node_, 0)) return wrap(a, make_const(Rat(0)));
        if (is_const_val(a.node_, 1)) return wrap(a, b.node_);
        if (is_const_val(b.node_, 1)) return wrap(a, a.node_);
        return wrap(a, binary(ExprKind::Product, a.node_, b.node_));
    }

    friend NashExpr operator/(const NashExpr& a, const NashExpr& b) {
        a.check(b);
        if (is_const(b.node_)) {
            if (b.node_->value == 0) throw DivisionByZero("division by constant zero");
            if (is_const(a.node_)) return wrap(a, make_const(a.node_->value / b.node_->value));
            if (b.node_->value == 1) return wrap(a, a.node_);
        }
        if (is_const_val(a.node_, 0)) return wrap(a, make_const(Rat(0)));
        return wrap(a, binary(ExprKind::Quotient, a.node_, b.node_));
    }

    friend NashExpr sqrt(const NashExpr& a) {
        if (is_const(a.node_)) {
            // fold perfect squares, keep the node otherwise
            const Rat& v = a.node_->value;
            if (v < 0) throw NegativeSqrtArgument("sqrt of negative constant");
            Rat num = numerator(v), den = denominator(v);
            Rat sn = boost::multiprecision::sqrt(boost::multiprecision::cpp_int(num));
            Rat sd = boost::multiprecision::sqrt(boost::multiprecision::cpp_int(den));
            if (sn * sn == num && sd * sd == den) return wrap(a, make_const(sn / sd));
        }
        auto n = std::make_shared<Node>();
        n->kind = ExprKind::Sqrt;
        n->a = a.node_;
        return wrap(a, n);
    }

    NashExpr operator-() const { return constant(arity_, 0) - *this; }

    // Numeric evaluation in binary64. Checks the declared domain first.
    double eval(const std::vector<double>& x) const {
        if (static_cast<int>(x.size()) != arity_) throw DimensionMismatch("point length != arity");
        if (!domain_.contains(x)) throw OutOfDomain("point outside declared domain box");
        return eval_node(node_.get(), x);
    }

    // Exact evaluation; defined for sqrt-free expressions at rational points.
    Rat eval_exact(const RatVec& x) const {
        if (static_cast<int>(x.size()) != arity_) throw DimensionMismatch("point length != arity");
        return eval_node_exact(node_.get(), x);
    }

    bool sqrt_free() const { return sqrt_free(node_.get()); }

    // Symbolic partial derivative. Domain issues surface at eval time.
    NashExpr partial(int var) const {
        if (var < 0 || var >= arity_) throw ExprError("partial: variable index out of range");
        return wrap(*this, diff(node_, var, arity_));
    }

    // Substitutes inner[i] for variable i. inner must share one arity.
    NashExpr substitute(const std::vector<NashExpr>& inner) const {
        if (static_cast<int>(inner.size()) != arity_) throw DimensionMismatch("substitution arity mismatch");
        int in_arity = inner.empty() ? 1 : inner[0].arity_;
        for (const auto& e : inner)
            if (e.arity_ != in_arity) throw DimensionMismatch("inner expressions disagree in arity");
        NashExpr out(in_arity);
        out.domain_ = inner.empty() ? DomainBox() : inner[0].domain_;
        out.node_ = subst(node_, inner, in_arity);
        return out;
    }

    std::string to_string() const { return print(node_.get()); }

  private:
    explicit NashExpr(int arity) : arity_(arity) {
        if (arity < 1) throw ExprError("expression arity must be positive");
    }

    static NodePtr make_const(const Rat& c) {
        auto n = std::make_shared<Node>();
        n->kind = ExprKind::Constant;
        n->value = c;
        return n;
    }

    static bool is_const(const NodePtr& n) { return n->kind == ExprKind::Constant; }
    static bool is_const_val(const NodePtr& n, int v) { return is_const(n) && n->value == v; }

    static NodePtr binary(ExprKind k, NodePtr a, NodePtr b) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->a = std::move(a);
        n->b = std::move(b);
        return n;
    }

    static NashExpr wrap(const NashExpr& proto, NodePtr n) {
        NashExpr e(proto.arity_);
        e.domain_ = proto.domain_;
        e.node_ = std::move(n);
        return e;
    }

    void check(const NashExpr& o) const {
        if (arity_ != o.arity_) throw DimensionMismatch("expression arity mismatch");
    }

    static double eval_node(const Node* n, const std::vector<double>& x) {
        switch (n->kind) {
            case ExprKind::Constant: return to_double(n->value);
            case ExprKind::Variable: return x[n->var];
            case ExprKind::Sum: return eval_node(n->a.get(), x) + eval_node(n->b.get(), x);
            case ExprKind::Difference: return eval_node(n->a.get(), x) - eval_node(n->b.get(), x);
            case ExprKind::Product: return eval_node(n->a.get(), x) * eval_node(n->b.get(), x);
            case ExprKind::Quotient: {
                double den = eval_node(n->b.get(), x);
                if (std::abs(den) < kDivZero) throw DivisionByZero("denominator vanished");
                return eval_node(n->a.get(), x) / den;
            }
            case ExprKind::Sqrt: {
                double arg = eval_node(n->a.get(), x);
                if (arg < -kSqrtClamp) throw NegativeSqrtArgument("sqrt of negative value");
                return std::sqrt(arg < 0 ? 0.0 : arg);
            }
        }
        throw ExprError("unreachable");
    }

    static Rat eval_node_exact(const Node* n, const RatVec& x) {
        switch (n->kind) {
            case ExprKind::Constant: return n->value;
            case ExprKind::Variable: return x[n->var];
            case ExprKind::Sum: return eval_node_exact(n->a.get(), x) + eval_node_exact(n->b.get(), x);
            case ExprKind::Difference: return eval_node_exact(n->a.get(), x) - eval_node_exact(n->b.get(), x);
            case ExprKind::Product: return eval_node_exact(n->a.get(), x) * eval_node_exact(n->b.get(), x);
            case ExprKind::Quotient: {
                Rat den = eval_node_exact(n->b.get(), x);
                if (den == 0) throw DivisionByZero("denominator vanished (exact)");
                return eval_node_exact(n->a.get(), x) / den;
            }
            case ExprKind::Sqrt:
                throw NotRationallyEvaluable("sqrt node: exact evaluation not defined");
        }
        throw ExprError("unreachable");
    }

    static bool sqrt_free(const Node* n) {
        if (n->kind == ExprKind::Sqrt) return false;
        if (n->a && !sqrt_free(n->a.get())) return false;
        if (n->b && !sqrt_free(n->b.get())) return false;
        return true;
    }

    static NodePtr diff(const NodePtr& n, int var, int arity) {
        switch (n->kind) {
            case ExprKind::Constant: return make_const(Rat(0));
            case ExprKind::Variable: return make_const(Rat(n->var == var ? 1 : 0));
            case ExprKind::Sum: return fold_sum(diff(n->a, var, arity), diff(n->b, var, arity));
            case ExprKind::Difference: return fold_diff(diff(n->a, var, arity), diff(n->b, var, arity));
            case ExprKind::Product:
                return fold_sum(fold_prod(diff(n->a, var, arity), n->b), fold_prod(n->a, diff(n->b, var, arity)));
            case ExprKind::Quotient: {
                // (u/v)' = (u'v - uv') / v^2
                NodePtr num = fold_diff(fold_prod(diff(n->a, var, arity), n->b), fold_prod(n->a, diff(n->b, var, arity)));
                NodePtr den = fold_prod(n->b, n->b);
                return fold_quot(num, den);
            }
            case ExprKind::Sqrt: {
                // u' / (2 sqrt u)
                auto root = std::make_shared<Node>();
                root->kind = ExprKind::Sqrt;
                root->a = n->a;
                NodePtr den = fold_prod(make_const(Rat(2)), root);
                return fold_quot(diff(n->a, var, arity), den);
            }
        }
        throw ExprError("unreachable");
    }

    // Constant-folding variants used by diff to keep derivative trees small.
    static NodePtr fold_sum(NodePtr a, NodePtr b) {
        if (is_const(a) && is_const(b)) return make_const(a->value + b->value);
        if (is_const_val(a, 0)) return b;
        if (is_const_val(b, 0)) return a;
        return binary(ExprKind::Sum, a, b);
    }
    static NodePtr fold_diff(NodePtr a, NodePtr b) {
        if (is_const(a) && is_const(b)) return make_const(a->value - b->value);
        if (is_const_val(b, 0)) return a;
        return binary(ExprKind::Difference, a, b);
    }
    static NodePtr fold_prod(NodePtr a, NodePtr b) {
        if (is_const(a) && is_const(b)) return make_const(a->value * b->value);
        if (is_const_val(a, 0) || is_const_val(b, 0)) return make_const(Rat(0));
        if (is_const_val(a, 1)) return b;
        if (is_const_val(b, 1)) return a;
        return binary(ExprKind::Product, a, b);
    }
    static NodePtr fold_quot(NodePtr a, NodePtr b) {
        if (is_const_val(a, 0)) return make_const(Rat(0));
        if (is_const(b) && b->value == 1) return a;
        if (is_const(a) && is_const(b) && b->value != 0) return make_const(a->value / b->value);
        return binary(ExprKind::Quotient, a, b);
    }

    static NodePtr subst(const NodePtr& n, const std::vector<NashExpr>& inner, int in_arity) {
        switch (n->kind) {
            case ExprKind::Constant: return n;
            case ExprKind::Variable: return inner[n->var].node_;
            case ExprKind::Sum: return fold_sum(subst(n->a, inner, in_arity), subst(n->b, inner, in_arity));
            case ExprKind::Difference: return fold_diff(subst(n->a, inner, in_arity), subst(n->b, inner, in_arity));
            case ExprKind::Product: return fold_prod(subst(n->a, inner, in_arity), subst(n->b, inner, in_arity));
            case ExprKind::Quotient: return fold_quot(subst(n->a, inner, in_arity), subst(n->b, inner, in_arity));
            case ExprKind::Sqrt: {
                auto m = std::make_shared<Node>();
                m->kind = ExprKind::Sqrt;
                m->a = subst(n->a, inner, in_arity);
                return m;
            }
        }
        throw ExprError("unreachable");
    }

    static std::string print(const Node* n) {
        switch (n->kind) {
            case ExprKind::Constant: return n->value.str();
            case ExprKind::Variable: return "x" + std::to_string(n->var + 1);
            case ExprKind::Sum: return "(" + print(n->a.get()) + " + " + print(n->b.get()) + ")";
            case ExprKind::Difference: return "(" + print(n->a.get()) + " - " + print(n->b.get()) + ")";
            case ExprKind::Product: return "(" + print(n->a.get()) + " * " + print(n->b.get()) + ")";
            case ExprKind::Quotient: return "(" + print(n->a.get()) + " / " + print(n->b.get()) + ")";
            case ExprKind::Sqrt: return "sqrt(" + print(n->a.get()) + ")";
        }
        return "?";
    }

    int arity_;
    DomainBox domain_;  // empty box = all of R^arity
    NodePtr node_;
};

// ---------------------------------------------------------------------------
// NashMap

// Component list sharing one domain; a map R^source -> R^target.
class NashMap {
  public:
    NashMap() = default;
    explicit NashMap(std::vector<NashExpr> comps) : comps_(std::move(comps)) {
        if (comps_.empty()) throw ExprError("map needs at least one component");
        for (const auto& c : comps_)
            if (c.arity() != comps_[0].arity()) throw DimensionMismatch("components disagree in arity");
    }

    int source_dim() const { return comps_[0].arity(); }
    int target_dim() const { return static_cast<int>(comps_.size()); }
    const std::vector<NashExpr>& components() const { return comps_; }
    const NashExpr& component(int i) const { return comps_[i]; }

    static NashMap identity(int dim) {
        std::vector<NashExpr> c;
        for (int i = 0; i < dim; ++i) c.push_back(NashExpr::variable(dim, i));
        return NashMap(std::move(c));
    }

    std::vector<double> eval(const std::vector<double>& x) const {
        std::vector<double> out(comps_.size());
        for (std::size_t i = 0; i < comps_.size(); ++i) out[i] = comps_[i].eval(x);
        return out;
    }

    NashMap with_domain(const DomainBox& box) const {
        std::vector<NashExpr> c;
        for (const auto& e : comps_) c.push_back(e.with_domain(box));
        return NashMap(std::move(c));
    }

  private:
    std::vector<NashExpr> comps_;
};

// Matrix of symbolic partials evaluated at a point.
inline Eigen::MatrixXd jacobian(const NashMap& map, const std::vector<double>& x) {
    Eigen::MatrixXd J(map.target_dim(), map.source_dim());
    for (int i = 0; i < map.target_dim(); ++i)
        for (int j = 0; j < map.source_dim(); ++j) J(i, j) = map.component(i).partial(j).eval(x);
    return J;
}

// Central finite-difference jacobian, the numeric cross-check for the
// symbolic one.
inline Eigen::MatrixXd jacobian_fd(const NashMap& map, const std::vector<double>& x, double step = 1e-5) {
    Eigen::MatrixXd J(map.target_dim(), map.source_dim());
    std::vector<double> xp = x, xm = x;
    for (int j = 0; j < map.source_dim(); ++j) {
        xp[j] = x[j] + step;
        xm[j] = x[j] - step;
        for (int i = 0; i < map.target_dim(); ++i)
            J(i, j) = (map.component(i).eval(xp) - map.component(i).eval(xm)) / (2 * step);
        xp[j] = x[j];
        xm[j] = x[j];
    }
    return J;
}

// Symbolic substitution outer(inner(.)).
inline NashMap compose(const NashMap& outer, const NashMap& inner) {
    if (inner.target_dim() != outer.source_dim())
        throw DimensionMismatch("compose: inner target dim != outer source dim");
    std::vector<NashExpr> comps;
    for (int i = 0; i < outer.target_dim(); ++i)
        comps.push_back(outer.component(i).substitute(inner.components()));
    return NashMap(std::move(comps));
}

}  // namespace nashatlas

#endif
