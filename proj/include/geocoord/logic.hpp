#pragma once

// Abstract syntax for single-sorted geometric logic: signatures, terms,
// formulae (with indexed disjunction families), sequents, theories and
// witness schemes.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace geocoord {

/// Raised when a caller breaks a documented precondition.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct Symbol {
    std::string name;
    std::size_t arity = 0;

    friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// Function and relation symbols. Names are unique across both lists;
/// arity-0 function symbols are constants.
class Signature {
public:
    Signature() = default;

    void add_function(std::string name, std::size_t arity) {
        require_fresh(name);
        functions_.push_back({std::move(name), arity});
    }
    void add_relation(std::string name, std::size_t arity) {
        require_fresh(name);
        relations_.push_back({std::move(name), arity});
    }

    [[nodiscard]] const std::vector<Symbol>& functions() const { return functions_; }
    [[nodiscard]] const std::vector<Symbol>& relations() const { return relations_; }

    [[nodiscard]] std::optional<std::size_t> find_function(const std::string& name) const {
        return find(functions_, name);
    }
    [[nodiscard]] std::optional<std::size_t> find_relation(const std::string& name) const {
        return find(relations_, name);
    }
    [[nodiscard]] bool declares(const std::string& name) const {
        return find_function(name) || find_relation(name);
    }
    [[nodiscard]] bool is_constant(const std::string& name) const {
        auto i = find_function(name);
        return i && functions_[*i].arity == 0;
    }
    [[nodiscard]] bool empty() const { return functions_.empty() && relations_.empty(); }

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    void require_fresh(const std::string& name) const {
        if (declares(name))
            throw ContractViolation("symbol '" + name + "' declared twice");
    }
    static std::optional<std::size_t> find(const std::vector<Symbol>& v, const std::string& name) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i].name == name) return i;
        return std::nullopt;
    }

    std::vector<Symbol> functions_;
    std::vector<Symbol> relations_;
};

// ---------------------------------------------------------------------------
// Terms

class Term {
public:
    /// `parameter_application` is `app(p, ...)` inside a family body: the
    /// function symbol is named by the current value of parameter `p`.
    enum class Kind { variable, application, parameter_application };

    static Term var(std::string name) { return Term(Kind::variable, std::move(name), {}); }
    static Term app(std::string symbol, std::vector<Term> args = {}) {
        return Term(Kind::application, std::move(symbol), std::move(args));
    }
    static Term param_app(std::string param, std::vector<Term> args) {
        return Term(Kind::parameter_application, std::move(param), std::move(args));
    }

    [[nodiscard]] Kind kind() const { return node_->kind; }
    [[nodiscard]] const std::string& name() const { return node_->name; }
    [[nodiscard]] const std::vector<Term>& args() const { return node_->args; }
    [[nodiscard]] bool is_var() const { return kind() == Kind::variable; }

    friend bool operator==(const Term& a, const Term& b) {
        if (a.node_ == b.node_) return true;
        return a.kind() == b.kind() && a.name() == b.name() && a.args() == b.args();
    }

private:
    struct Node {
        Kind kind;
        std::string name;
        std::vector<Term> args;
    };
    Term(Kind k, std::string name, std::vector<Term> args)
        : node_(std::make_shared<const Node>(Node{k, std::move(name), std::move(args)})) {}

    std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Formulae

class DisjunctionFamily;

class Formula {
public:
    enum class Kind {
        truth,
        falsity,
        equality,
        relation,
        param_relation,  // rel(p, ...) inside a family body
        conjunction,
        disjunction,
        family,
        exists
    };

    static Formula top() { return Formula(Node{Kind::truth}); }
    static Formula bot() { return Formula(Node{Kind::falsity}); }
    static Formula eq(Term a, Term b) {
        Node n{Kind::equality};
        n.terms = {std::move(a), std::move(b)};
        return Formula(std::move(n));
    }
    static Formula rel(std::string symbol, std::vector<Term> args = {}) {
        Node n{Kind::relation};
        n.name = std::move(symbol);
        n.terms = std::move(args);
        return Formula(std::move(n));
    }
    static Formula param_rel(std::string param, std::vector<Term> args) {
        Node n{Kind::param_relation};
        n.name = std::move(param);
        n.terms = std::move(args);
        return Formula(std::move(n));
    }
    // Empty and singleton connectives collapse, so every formula has one
    // printed form.
    static Formula conj(std::vector<Formula> parts) {
        if (parts.empty()) return top();
        if (parts.size() == 1) return std::move(parts.front());
        Node n{Kind::conjunction};
        n.children = std::move(parts);
        return Formula(std::move(n));
    }
    static Formula disj(std::vector<Formula> parts) {
        if (parts.empty()) return bot();
        if (parts.size() == 1) return std::move(parts.front());
        Node n{Kind::disjunction};
        n.children = std::move(parts);
        return Formula(std::move(n));
    }
    static Formula family(std::shared_ptr<const DisjunctionFamily> f) {
        Node n{Kind::family};
        n.family = std::move(f);
        return Formula(std::move(n));
    }
    static Formula exists(std::vector<std::string> vars, Formula body) {
        if (vars.empty()) return body;
        Node n{Kind::exists};
        n.vars = std::move(vars);
        n.children = {std::move(body)};
        return Formula(std::move(n));
    }

    [[nodiscard]] Kind kind() const { return node_->kind; }
    [[nodiscard]] const std::string& name() const { return node_->name; }
    [[nodiscard]] const std::vector<Term>& terms() const { return node_->terms; }
    [[nodiscard]] const std::vector<Formula>& children() const { return node_->children; }
    [[nodiscard]] const std::vector<std::string>& bound() const { return node_->vars; }
    [[nodiscard]] const Formula& body() const { return node_->children.front(); }
    [[nodiscard]] const DisjunctionFamily& family() const { return *node_->family; }
    [[nodiscard]] const std::shared_ptr<const DisjunctionFamily>& family_ptr() const {
        return node_->family;
    }

private:
    struct Node {
        Kind kind = Kind::truth;
        std::string name{};
        std::vector<Term> terms{};
        std::vector<Formula> children{};
        std::vector<std::string> vars{};
        std::shared_ptr<const DisjunctionFamily> family{};
    };
    explicit Formula(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

    std::shared_ptr<const Node> node_;
};

inline Formula operator&&(Formula a, Formula b) { return Formula::conj({std::move(a), std::move(b)}); }
inline Formula operator||(Formula a, Formula b) { return Formula::disj({std::move(a), std::move(b)}); }

/// Index set of a family disjunction.
///
/// Finite domains (explicit label sets, declared parameter tables and integer
/// ranges `lo..hi`) have size_bound(n) equal to the whole domain, except for
/// `lo..min(hi,size)` which is cut at the model cardinality. `lo..size` is
/// unbounded: only the instances `lo..n` are ever inspected in a structure of
/// cardinality n, and the family author carries the obligation that no
/// instance beyond n is satisfiable there.
struct FamilyDomain {
    enum class Kind { explicit_set, table, int_range };

    Kind kind = Kind::explicit_set;
    std::string table;               // table name (Kind::table)
    std::vector<std::string> labels; // explicit_set / table
    long lo = 0;
    long hi = 0;                     // int_range upper end when not `size`
    bool hi_is_size = false;         // lo..size
    bool capped_by_size = false;     // lo..min(hi,size)

    static FamilyDomain set(std::vector<std::string> labels) {
        FamilyDomain d;
        d.labels = std::move(labels);
        return d;
    }
    static FamilyDomain of_table(std::string name, std::vector<std::string> labels) {
        FamilyDomain d;
        d.kind = Kind::table;
        d.table = std::move(name);
        d.labels = std::move(labels);
        return d;
    }
    static FamilyDomain range(long lo, long hi) {
        FamilyDomain d;
        d.kind = Kind::int_range;
        d.lo = lo;
        d.hi = hi;
        return d;
    }
    static FamilyDomain up_to_size(long lo) {
        FamilyDomain d = range(lo, lo);
        d.hi_is_size = true;
        return d;
    }
    static FamilyDomain range_capped(long lo, long hi) {
        FamilyDomain d = range(lo, hi);
        d.capped_by_size = true;
        return d;
    }

    [[nodiscard]] bool finite() const { return !(kind == Kind::int_range && hi_is_size); }

    /// All indices; only defined for finite domains.
    [[nodiscard]] std::vector<std::string> all() const {
        if (!finite()) throw ContractViolation("unbounded family domain has no finite index list");
        if (kind != Kind::int_range) return labels;
        return ints(lo, hi);
    }

    [[nodiscard]] std::size_t count() const { return all().size(); }

    /// The finite index subset inspected in a structure of cardinality n.
    [[nodiscard]] std::vector<std::string> size_bound(std::size_t n) const {
        if (kind != Kind::int_range) return labels;
        const long top = static_cast<long>(n);
        if (hi_is_size) return ints(lo, top);
        if (capped_by_size) return ints(lo, std::min(hi, top));
        return ints(lo, hi);
    }

    /// True when size_bound(n) omits no index, so no soundness obligation
    /// remains for structures of cardinality n.
    [[nodiscard]] bool exhaustive_at(std::size_t n) const {
        if (!finite()) return false;
        return size_bound(n).size() == count();
    }

    /// Label-level equality: a table domain equals an explicit set with the
    /// same labels.
    friend bool operator==(const FamilyDomain& a, const FamilyDomain& b) {
        const bool ra = a.kind == Kind::int_range, rb = b.kind == Kind::int_range;
        if (ra != rb) return false;
        if (!ra) return a.labels == b.labels;
        return a.lo == b.lo && a.hi_is_size == b.hi_is_size &&
               (a.hi_is_size || (a.hi == b.hi && a.capped_by_size == b.capped_by_size));
    }

private:
    static std::vector<std::string> ints(long lo, long hi) {
        std::vector<std::string> out;
        for (long i = lo; i <= hi; ++i) out.push_back(std::to_string(i));
        return out;
    }
};

/// An indexed disjunction ⋁_{p ∈ D} body(p), finitely represented.
///
/// The body is either a template in which the parameter occurs as
/// `app(p, ...)` / `rel(p, ...)` (the symbol named by the index label), or a
/// case table giving one formula per index of a finite domain.
class DisjunctionFamily {
public:
    using Cases = std::vector<std::pair<std::string, Formula>>;

    DisjunctionFamily(std::string param, FamilyDomain domain, Formula templ)
        : param_(std::move(param)), domain_(std::move(domain)), template_(std::move(templ)) {}

    DisjunctionFamily(std::string param, FamilyDomain domain, Cases cases)
        : param_(std::move(param)), domain_(std::move(domain)), cases_(std::move(cases)) {
        if (!domain_.finite())
            throw ContractViolation("case-table family over an unbounded domain");
        for (const auto& label : domain_.all())
            if (!find_case(label))
                throw ContractViolation("family over '" + param_ + "' has no case for index " + label);
        if (cases_.size() != domain_.count())
            throw ContractViolation("family over '" + param_ + "' has cases outside its domain");
    }

    [[nodiscard]] const std::string& param() const { return param_; }
    [[nodiscard]] const FamilyDomain& domain() const { return domain_; }
    [[nodiscard]] bool is_template() const { return template_.has_value(); }
    [[nodiscard]] const Formula& body_template() const { return *template_; }
    [[nodiscard]] const Cases& cases() const { return cases_; }

    /// The disjunct for one index label.
    [[nodiscard]] Formula instance(const std::string& label) const;

    /// Disjuncts inspected in a structure of cardinality n.
    [[nodiscard]] std::vector<Formula> instances(std::size_t n) const {
        std::vector<Formula> out;
        for (const auto& label : domain_.size_bound(n)) out.push_back(instance(label));
        return out;
    }

    /// Disjuncts whose indices size_bound(n) leaves out (finite domains only).
    [[nodiscard]] std::vector<Formula> excluded_instances(std::size_t n) const {
        std::vector<Formula> out;
        const auto kept = domain_.size_bound(n);
        for (const auto& label : domain_.all())
            if (std::find(kept.begin(), kept.end(), label) == kept.end())
                out.push_back(instance(label));
        return out;
    }

private:
    [[nodiscard]] const Formula* find_case(const std::string& label) const {
        for (const auto& [l, f] : cases_)
            if (l == label) return &f;
        return nullptr;
    }

    std::string param_;
    FamilyDomain domain_;
    std::optional<Formula> template_;
    Cases cases_;
};

namespace detail {

inline Term instantiate_term(const Term& t, const std::string& param, const std::string& label) {
    if (t.is_var()) return t;
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const auto& a : t.args()) args.push_back(instantiate_term(a, param, label));
    if (t.kind() == Term::Kind::parameter_application && t.name() == param)
        return Term::app(label, std::move(args));
    if (t.kind() == Term::Kind::parameter_application) return Term::param_app(t.name(), std::move(args));
    return Term::app(t.name(), std::move(args));
}

inline std::vector<Term> instantiate_terms(const std::vector<Term>& ts, const std::string& p,
                                           const std::string& l) {
    std::vector<Term> out;
    out.reserve(ts.size());
    for (const auto& t : ts) out.push_back(instantiate_term(t, p, l));
    return out;
}

inline Formula instantiate(const Formula& f, const std::string& param, const std::string& label) {
    using K = Formula::Kind;
    switch (f.kind()) {
    case K::truth:
    case K::falsity: return f;
    case K::equality:
        return Formula::eq(instantiate_term(f.terms()[0], param, label),
                           instantiate_term(f.terms()[1], param, label));
    case K::relation: return Formula::rel(f.name(), instantiate_terms(f.terms(), param, label));
    case K::param_relation:
        if (f.name() == param) return Formula::rel(label, instantiate_terms(f.terms(), param, label));
        return Formula::param_rel(f.name(), instantiate_terms(f.terms(), param, label));
    case K::conjunction:
    case K::disjunction: {
        std::vector<Formula> kids;
        for (const auto& c : f.children()) kids.push_back(instantiate(c, param, label));
        return f.kind() == K::conjunction ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
    }
    case K::exists: return Formula::exists(f.bound(), instantiate(f.body(), param, label));
    case K::family: {
        const auto& fam = f.family();
        if (fam.param() == param) return f;  // shadowed
        if (fam.is_template())
            return Formula::family(std::make_shared<DisjunctionFamily>(
                fam.param(), fam.domain(), instantiate(fam.body_template(), param, label)));
        DisjunctionFamily::Cases cases;
        for (const auto& [l, body] : fam.cases()) cases.emplace_back(l, instantiate(body, param, label));
        return Formula::family(std::make_shared<DisjunctionFamily>(fam.param(), fam.domain(), std::move(cases)));
    }
    }
    return f;
}

}  // namespace detail

inline Formula DisjunctionFamily::instance(const std::string& label) const {
    if (template_) return detail::instantiate(*template_, param_, label);
    if (const Formula* f = find_case(label)) return *f;
    throw ContractViolation("family over '" + param_ + "' has no index " + label);
}

// ---------------------------------------------------------------------------
// Sequents, theories, witness schemes

/// context | antecedent ⊢ consequent
struct Sequent {
    std::string name;
    std::vector<std::string> context;
    Formula antecedent = Formula::top();
    Formula consequent = Formula::top();
};

struct Theory {
    std::string name;
    std::string provenance;
    Signature signature;
    std::vector<Sequent> axioms;
};

/// Θ_ψ: either an explicit list of θ(x̄,y) or a disjunction family of them.
struct ThetaSet {
    std::variant<std::vector<Formula>, std::shared_ptr<const DisjunctionFamily>> members =
        std::vector<Formula>{};

    [[nodiscard]] bool is_family() const { return members.index() == 1; }
    [[nodiscard]] const std::vector<Formula>& list() const { return std::get<0>(members); }
    [[nodiscard]] const DisjunctionFamily& family() const { return *std::get<1>(members); }

    /// θ formulae inspected in a structure of cardinality n.
    [[nodiscard]] std::vector<Formula> instances(std::size_t n) const {
        return is_family() ? family().instances(n) : list();
    }
    [[nodiscard]] bool finite() const { return !is_family() || family().domain().finite(); }
    /// |Θ_ψ|; only meaningful when finite().
    [[nodiscard]] std::size_t cardinality() const {
        return is_family() ? family().domain().count() : list().size();
    }
    /// ⋁_θ θ as one formula.
    [[nodiscard]] Formula disjunction() const {
        return is_family() ? Formula::family(std::get<1>(members)) : Formula::disj(list());
    }
};

struct PsiEntry {
    std::string tag;
    std::vector<std::string> context;  // x̄
    Formula formula = Formula::top();
    std::string extra;                 // y, the one fresh θ variable
    ThetaSet thetas;

    [[nodiscard]] std::vector<std::string> theta_context() const {
        auto c = context;
        c.push_back(extra);
        return c;
    }
};

/// The pair (Ψ, {Θ_ψ}) certifying a uniform co-ordinatisation.
struct WitnessScheme {
    std::string name;
    std::vector<PsiEntry> psis;

    [[nodiscard]] const PsiEntry* find(const std::string& tag) const {
        for (const auto& p : psis)
            if (p.tag == tag) return &p;
        return nullptr;
    }
};

// ---------------------------------------------------------------------------
// Free variables

namespace detail {

inline void term_vars(const Term& t, std::set<std::string>& out) {
    if (t.is_var()) {
        out.insert(t.name());
        return;
    }
    for (const auto& a : t.args()) term_vars(a, out);
}

inline void free_vars_into(const Formula& f, std::set<std::string>& out) {
    using K = Formula::Kind;
    switch (f.kind()) {
    case K::truth:
    case K::falsity: return;
    case K::equality:
    case K::relation:
    case K::param_relation:
        for (const auto& t : f.terms()) term_vars(t, out);
        return;
    case K::conjunction:
    case K::disjunction:
        for (const auto& c : f.children()) free_vars_into(c, out);
        return;
    case K::exists: {
        std::set<std::string> inner;
        free_vars_into(f.body(), inner);
        for (const auto& v : f.bound()) inner.erase(v);
        out.insert(inner.begin(), inner.end());
        return;
    }
    case K::family: {
        const auto& fam = f.family();
        if (fam.is_template()) free_vars_into(fam.body_template(), out);
        for (const auto& [l, body] : fam.cases()) free_vars_into(body, out);
        return;
    }
    }
}

}  // namespace detail

inline std::set<std::string> free_vars(const Term& t) {
    std::set<std::string> out;
    detail::term_vars(t, out);
    return out;
}

inline std::set<std::string> free_vars(const Formula& f) {
    std::set<std::string> out;
    detail::free_vars_into(f, out);
    return out;
}

/// Free variables in order of first occurrence (left to right).
inline std::vector<std::string> free_vars_ordered(const Formula& f) {
    std::vector<std::string> order;
    std::set<std::string> seen;
    auto walk = [&](auto&& self, const Term& t, const std::set<std::string>& bound) -> void {
        if (t.is_var()) {
            if (!bound.contains(t.name()) && seen.insert(t.name()).second) order.push_back(t.name());
            return;
        }
        for (const auto& a : t.args()) self(self, a, bound);
    };
    auto visit = [&](auto&& self, const Formula& g, const std::set<std::string>& bound) -> void {
        using K = Formula::Kind;
        switch (g.kind()) {
        case K::equality:
        case K::relation:
        case K::param_relation:
            for (const auto& t : g.terms()) walk(walk, t, bound);
            return;
        case K::conjunction:
        case K::disjunction:
            for (const auto& c : g.children()) self(self, c, bound);
            return;
        case K::exists: {
            auto inner = bound;
            inner.insert(g.bound().begin(), g.bound().end());
            self(self, g.body(), inner);
            return;
        }
        case K::family: {
            const auto& fam = g.family();
            if (fam.is_template()) self(self, fam.body_template(), bound);
            for (const auto& [l, body] : fam.cases()) self(self, body, bound);
            return;
        }
        default: return;
        }
    };
    visit(visit, f, {});
    return order;
}

// ---------------------------------------------------------------------------
// Capture-avoiding substitution

using Binding = std::map<std::string, Term>;

inline Term substitute(const Term& t, const Binding& b) {
    if (t.is_var()) {
        auto it = b.find(t.name());
        return it == b.end() ? t : it->second;
    }
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const auto& a : t.args()) args.push_back(substitute(a, b));
    if (t.kind() == Term::Kind::parameter_application) return Term::param_app(t.name(), std::move(args));
    return Term::app(t.name(), std::move(args));
}

namespace detail {

inline std::vector<Term> substitute_terms(const std::vector<Term>& ts, const Binding& b) {
    std::vector<Term> out;
    out.reserve(ts.size());
    for (const auto& t : ts) out.push_back(substitute(t, b));
    return out;
}

/// `base` followed by primes until it avoids every name in `taken`.
inline std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
    std::string name = base + "'";
    while (taken.contains(name)) name += "'";
    return name;
}

}  // namespace detail

/// Replace free variables per `binding`, renaming binders that would capture
/// a variable of a substituted term.
inline Formula substitute(const Formula& f, const Binding& binding) {
    using K = Formula::Kind;
    if (binding.empty()) return f;
    switch (f.kind()) {
    case K::truth:
    case K::falsity: return f;
    case K::equality:
        return Formula::eq(substitute(f.terms()[0], binding), substitute(f.terms()[1], binding));
    case K::relation: return Formula::rel(f.name(), detail::substitute_terms(f.terms(), binding));
    case K::param_relation: return Formula::param_rel(f.name(), detail::substitute_terms(f.terms(), binding));
    case K::conjunction:
    case K::disjunction: {
        std::vector<Formula> kids;
        kids.reserve(f.children().size());
        for (const auto& c : f.children()) kids.push_back(substitute(c, binding));
        return f.kind() == K::conjunction ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
    }
    case K::exists: {
        const auto body_free = free_vars(f.body());
        Binding inner;
        std::set<std::string> range_vars;
        for (const auto& [v, t] : binding) {
            if (std::find(f.bound().begin(), f.bound().end(), v) != f.bound().end()) continue;
            if (!body_free.contains(v)) continue;
            inner.emplace(v, t);
            auto tv = free_vars(t);
            range_vars.insert(tv.begin(), tv.end());
        }
        if (inner.empty()) return f;
        std::set<std::string> taken = body_free;
        taken.insert(range_vars.begin(), range_vars.end());
        taken.insert(f.bound().begin(), f.bound().end());
        std::vector<std::string> vars;
        for (const auto& v : f.bound()) {
            if (range_vars.contains(v)) {
                auto fresh = detail::fresh_name(v, taken);
                taken.insert(fresh);
                inner.insert_or_assign(v, Term::var(fresh));
                vars.push_back(fresh);
            } else {
                vars.push_back(v);
            }
        }
        return Formula::exists(std::move(vars), substitute(f.body(), inner));
    }
    case K::family: {
        const auto& fam = f.family();
        if (fam.is_template())
            return Formula::family(std::make_shared<DisjunctionFamily>(
                fam.param(), fam.domain(), substitute(fam.body_template(), binding)));
        DisjunctionFamily::Cases cases;
        for (const auto& [l, body] : fam.cases()) cases.emplace_back(l, substitute(body, binding));
        return Formula::family(std::make_shared<DisjunctionFamily>(fam.param(), fam.domain(), std::move(cases)));
    }
    }
    return f;
}

// ---------------------------------------------------------------------------
// Alpha-equivalence

namespace detail {

struct AlphaScope {
    std::map<std::string, int> left, right;
    std::map<std::string, int> left_params, right_params;
    int depth = 0;
};

inline bool alpha_term(const Term& a, const Term& b, const AlphaScope& s) {
    if (a.kind() != b.kind()) return false;
    if (a.is_var()) {
        auto la = s.left.find(a.name());
        auto rb = s.right.find(b.name());
        const bool ba = la != s.left.end(), bb = rb != s.right.end();
        if (ba != bb) return false;
        return ba ? la->second == rb->second : a.name() == b.name();
    }
    if (a.kind() == Term::Kind::parameter_application) {
        auto la = s.left_params.find(a.name());
        auto rb = s.right_params.find(b.name());
        const bool ba = la != s.left_params.end(), bb = rb != s.right_params.end();
        if (ba != bb) return false;
        if (ba ? la->second != rb->second : a.name() != b.name()) return false;
    } else if (a.name() != b.name()) {
        return false;
    }
    if (a.args().size() != b.args().size()) return false;
    for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!alpha_term(a.args()[i], b.args()[i], s)) return false;
    return true;
}

inline bool alpha_terms(const std::vector<Term>& a, const std::vector<Term>& b, const AlphaScope& s) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!alpha_term(a[i], b[i], s)) return false;
    return true;
}

inline bool alpha(const Formula& a, const Formula& b, const AlphaScope& s) {
    using K = Formula::Kind;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case K::truth:
    case K::falsity: return true;
    case K::equality: return alpha_terms(a.terms(), b.terms(), s);
    case K::relation: return a.name() == b.name() && alpha_terms(a.terms(), b.terms(), s);
    case K::param_relation: {
        auto la = s.left_params.find(a.name());
        auto rb = s.right_params.find(b.name());
        const bool ba = la != s.left_params.end(), bb = rb != s.right_params.end();
        if (ba != bb) return false;
        if (ba ? la->second != rb->second : a.name() != b.name()) return false;
        return alpha_terms(a.terms(), b.terms(), s);
    }
    case K::conjunction:
    case K::disjunction:
        if (a.children().size() != b.children().size()) return false;
        for (std::size_t i = 0; i < a.children().size(); ++i)
            if (!alpha(a.children()[i], b.children()[i], s)) return false;
        return true;
    case K::exists: {
        if (a.bound().size() != b.bound().size()) return false;
        AlphaScope inner = s;
        for (std::size_t i = 0; i < a.bound().size(); ++i) {
            ++inner.depth;
            inner.left[a.bound()[i]] = inner.depth;
            inner.right[b.bound()[i]] = inner.depth;
        }
        return alpha(a.body(), b.body(), inner);
    }
    case K::family: {
        const auto& fa = a.family();
        const auto& fb = b.family();
        if (!(fa.domain() == fb.domain())) return false;
        if (fa.is_template() != fb.is_template()) return false;
        AlphaScope inner = s;
        ++inner.depth;
        inner.left_params[fa.param()] = inner.depth;
        inner.right_params[fb.param()] = inner.depth;
        if (fa.is_template()) return alpha(fa.body_template(), fb.body_template(), inner);
        if (fa.cases().size() != fb.cases().size()) return false;
        for (std::size_t i = 0; i < fa.cases().size(); ++i) {
            if (fa.cases()[i].first != fb.cases()[i].first) return false;
            if (!alpha(fa.cases()[i].second, fb.cases()[i].second, inner)) return false;
        }
        return true;
    }
    }
    return false;
}

}  // namespace detail

/// Equality up to renaming of bound variables and family parameters.
inline bool alpha_equivalent(const Formula& a, const Formula& b) {
    return detail::alpha(a, b, {});
}

inline bool alpha_equivalent(const Sequent& a, const Sequent& b) {
    return a.context == b.context && alpha_equivalent(a.antecedent, b.antecedent) &&
           alpha_equivalent(a.consequent, b.consequent);
}

inline bool alpha_equivalent(const Theory& a, const Theory& b) {
    if (a.signature != b.signature || a.axioms.size() != b.axioms.size()) return false;
    for (std::size_t i = 0; i < a.axioms.size(); ++i)
        if (!alpha_equivalent(a.axioms[i], b.axioms[i])) return false;
    return true;
}

inline bool alpha_equivalent(const ThetaSet& a, const ThetaSet& b) {
    if (a.is_family() != b.is_family()) return false;
    if (a.is_family()) return alpha_equivalent(a.disjunction(), b.disjunction());
    if (a.list().size() != b.list().size()) return false;
    for (std::size_t i = 0; i < a.list().size(); ++i)
        if (!alpha_equivalent(a.list()[i], b.list()[i])) return false;
    return true;
}

inline bool alpha_equivalent(const WitnessScheme& a, const WitnessScheme& b) {
    if (a.psis.size() != b.psis.size()) return false;
    for (std::size_t i = 0; i < a.psis.size(); ++i) {
        const auto& p = a.psis[i];
        const auto& q = b.psis[i];
        if (p.tag != q.tag || p.context != q.context || p.extra != q.extra) return false;
        if (!alpha_equivalent(p.formula, q.formula) || !alpha_equivalent(p.thetas, q.thetas)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Regular disjuncts

/// Rewrites f as a finite disjunction of regular formulae (built from
/// equality, relations, ⊤, ∧ and ∃), expanding families with size_bound(n).
inline std::vector<Formula> regular_disjuncts(const Formula& f, std::size_t n) {
    using K = Formula::Kind;
    switch (f.kind()) {
    case K::falsity: return {};
    case K::truth:
    case K::equality:
    case K::relation:
    case K::param_relation: return {f};
    case K::disjunction: {
        std::vector<Formula> out;
        for (const auto& c : f.children()) {
            auto part = regular_disjuncts(c, n);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    case K::family: {
        std::vector<Formula> out;
        for (const auto& inst : f.family().instances(n)) {
            auto part = regular_disjuncts(inst, n);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    case K::conjunction: {
        std::vector<std::vector<Formula>> acc{{}};
        for (const auto& c : f.children()) {
            auto part = regular_disjuncts(c, n);
            std::vector<std::vector<Formula>> next;
            for (const auto& prefix : acc)
                for (const auto& d : part) {
                    auto row = prefix;
                    row.push_back(d);
                    next.push_back(std::move(row));
                }
            acc = std::move(next);
        }
        std::vector<Formula> out;
        for (auto& row : acc) out.push_back(Formula::conj(std::move(row)));
        return out;
    }
    case K::exists: {
        std::vector<Formula> out;
        for (auto& d : regular_disjuncts(f.body(), n)) out.push_back(Formula::exists(f.bound(), d));
        return out;
    }
    }
    return {f};
}

inline bool is_regular(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
    case K::falsity:
    case K::disjunction:
    case K::family: return false;
    case K::conjunction:
        return std::all_of(f.children().begin(), f.children().end(), [](const Formula& c) { return is_regular(c); });
    case K::exists: return is_regular(f.body());
    default: return true;
    }
}

/// True when f contains no family disjunction over an unbounded domain.
inline bool has_only_finite_families(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
    case K::conjunction:
    case K::disjunction:
        return std::all_of(f.children().begin(), f.children().end(),
                           [](const Formula& c) { return has_only_finite_families(c); });
    case K::exists: return has_only_finite_families(f.body());
    case K::family: {
        const auto& fam = f.family();
        if (!fam.domain().finite()) return false;
        for (const auto& label : fam.domain().all())
            if (!has_only_finite_families(fam.instance(label))) return false;
        return true;
    }
    default: return true;
    }
}

}  // namespace geocoord
