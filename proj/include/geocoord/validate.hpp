#pragma once

#include "geocoord/logic.hpp"

#include <set>
#include <string>
#include <vector>

namespace geocoord {

struct ValidationIssue {
    enum class Kind {
        undeclared_symbol,
        arity_mismatch,
        kind_mismatch,
        context_violation,
        duplicate_variable,
        unresolved_parameter,
        witness_shape
    };
    Kind kind;
    std::string where;  // axiom name or witness/psi tag
    std::string message;
};

inline const char* to_string(ValidationIssue::Kind k) {
    switch (k) {
    case ValidationIssue::Kind::undeclared_symbol: return "undeclared symbol";
    case ValidationIssue::Kind::arity_mismatch: return "arity mismatch";
    case ValidationIssue::Kind::kind_mismatch: return "symbol kind mismatch";
    case ValidationIssue::Kind::context_violation: return "context violation";
    case ValidationIssue::Kind::duplicate_variable: return "duplicate variable";
    case ValidationIssue::Kind::unresolved_parameter: return "unresolved parameter";
    case ValidationIssue::Kind::witness_shape: return "witness shape";
    }
    return "?";
}

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    [[nodiscard]] bool ok() const { return issues.empty(); }
    [[nodiscard]] std::size_t count(ValidationIssue::Kind k) const {
        std::size_t n = 0;
        for (const auto& i : issues) n += i.kind == k;
        return n;
    }
    void append(const ValidationReport& other) {
        issues.insert(issues.end(), other.issues.begin(), other.issues.end());
    }
};

namespace detail {

class SymbolChecker {
public:
    SymbolChecker(const Signature& sig, std::string where, ValidationReport& out)
        : sig_(sig), where_(std::move(where)), out_(out) {}

    void formula(const Formula& f, const std::set<std::string>& params) {
        using K = Formula::Kind;
        switch (f.kind()) {
        case K::truth:
        case K::falsity: return;
        case K::equality:
            for (const auto& t : f.terms()) term(t, params);
            return;
        case K::relation:
            relation(f.name(), f.terms().size());
            for (const auto& t : f.terms()) term(t, params);
            return;
        case K::param_relation:
            if (!params.contains(f.name()))
                issue(ValidationIssue::Kind::unresolved_parameter, "rel(" + f.name() + ", ...) outside its family");
            for (const auto& t : f.terms()) term(t, params);
            return;
        case K::conjunction:
        case K::disjunction:
            for (const auto& c : f.children()) formula(c, params);
            return;
        case K::exists: {
            std::set<std::string> seen;
            for (const auto& v : f.bound())
                if (!seen.insert(v).second)
                    issue(ValidationIssue::Kind::duplicate_variable, "variable '" + v + "' bound twice");
            formula(f.body(), params);
            return;
        }
        case K::family: family(f.family(), params); return;
        }
    }

private:
    void family(const DisjunctionFamily& fam, std::set<std::string> params) {
        // Instantiated bodies are checked against the signature; the shared
        // context is checked across instances.
        std::vector<std::string> labels;
        if (fam.domain().finite()) {
            labels = fam.domain().all();
        } else {
            labels = fam.domain().size_bound(static_cast<std::size_t>(std::max(0L, fam.domain().lo)) + 4);
        }
        std::optional<std::set<std::string>> context;
        for (const auto& label : labels) {
            Formula inst = fam.instance(label);
            formula(inst, params);
            auto fv = free_vars(inst);
            if (!context) {
                context = fv;
            } else if (*context != fv) {
                issue(ValidationIssue::Kind::context_violation,
                      "family over '" + fam.param() + "' has instances with different free variables");
                break;
            }
        }
    }

    void term(const Term& t, const std::set<std::string>& params) {
        switch (t.kind()) {
        case Term::Kind::variable: return;
        case Term::Kind::application: function(t.name(), t.args().size()); break;
        case Term::Kind::parameter_application:
            if (!params.contains(t.name()))
                issue(ValidationIssue::Kind::unresolved_parameter, "app(" + t.name() + ", ...) outside its family");
            break;
        }
        for (const auto& a : t.args()) term(a, params);
    }

    void function(const std::string& name, std::size_t arity) {
        if (auto i = sig_.find_function(name)) {
            if (sig_.functions()[*i].arity != arity)
                issue(ValidationIssue::Kind::arity_mismatch,
                      "function '" + name + "' has arity " + std::to_string(sig_.functions()[*i].arity) +
                          ", applied to " + std::to_string(arity));
        } else if (sig_.find_relation(name)) {
            issue(ValidationIssue::Kind::kind_mismatch, "relation '" + name + "' used as a function");
        } else {
            issue(ValidationIssue::Kind::undeclared_symbol, "undeclared function '" + name + "'");
        }
    }

    void relation(const std::string& name, std::size_t arity) {
        if (auto i = sig_.find_relation(name)) {
            if (sig_.relations()[*i].arity != arity)
                issue(ValidationIssue::Kind::arity_mismatch,
                      "relation '" + name + "' has arity " + std::to_string(sig_.relations()[*i].arity) +
                          ", applied to " + std::to_string(arity));
        } else if (sig_.find_function(name)) {
            issue(ValidationIssue::Kind::kind_mismatch, "function '" + name + "' used as a relation");
        } else {
            issue(ValidationIssue::Kind::undeclared_symbol, "undeclared relation '" + name + "'");
        }
    }

    void issue(ValidationIssue::Kind k, std::string msg) { out_.issues.push_back({k, where_, std::move(msg)}); }

    const Signature& sig_;
    std::string where_;
    ValidationReport& out_;
};

inline void check_context(const std::vector<std::string>& ctx, const std::set<std::string>& fv,
                          const std::string& where, ValidationReport& out) {
    std::set<std::string> seen;
    for (const auto& v : ctx)
        if (!seen.insert(v).second)
            out.issues.push_back({ValidationIssue::Kind::duplicate_variable, where, "context lists '" + v + "' twice"});
    for (const auto& v : fv)
        if (!seen.contains(v))
            out.issues.push_back(
                {ValidationIssue::Kind::context_violation, where, "free variable '" + v + "' not in context"});
}

}  // namespace detail

inline std::string axiom_label(const Sequent& s, std::size_t index) {
    return s.name.empty() ? "axiom#" + std::to_string(index + 1) : s.name;
}

/// Lists undeclared symbols, arity mismatches and context violations; the
/// report is empty iff every theory invariant holds.
inline ValidationReport validate_theory(const Theory& t) {
    ValidationReport out;
    for (std::size_t i = 0; i < t.axioms.size(); ++i) {
        const auto& ax = t.axioms[i];
        const auto where = axiom_label(ax, i);
        detail::SymbolChecker check(t.signature, where, out);
        check.formula(ax.antecedent, {});
        check.formula(ax.consequent, {});
        auto fv = free_vars(ax.antecedent);
        auto fc = free_vars(ax.consequent);
        fv.insert(fc.begin(), fc.end());
        detail::check_context(ax.context, fv, where, out);
    }
    return out;
}

/// Shape checks for (Ψ, {Θ_ψ}): Ψ non-empty, each θ context is the ψ
/// context plus one fresh variable, symbols declared.
inline ValidationReport validate_witness(const Signature& sig, const WitnessScheme& w) {
    ValidationReport out;
    const auto where_w = "witness " + w.name;
    if (w.psis.empty())
        out.issues.push_back({ValidationIssue::Kind::witness_shape, where_w, "psi family is empty"});
    std::set<std::string> tags;
    for (const auto& p : w.psis) {
        const auto where = where_w + "/" + p.tag;
        if (!tags.insert(p.tag).second)
            out.issues.push_back({ValidationIssue::Kind::witness_shape, where, "psi tag used twice"});
        detail::SymbolChecker check(sig, where, out);
        check.formula(p.formula, {});
        detail::check_context(p.context, free_vars(p.formula), where, out);
        if (p.extra.empty() || std::find(p.context.begin(), p.context.end(), p.extra) != p.context.end())
            out.issues.push_back({ValidationIssue::Kind::witness_shape, where,
                                  "theta variable '" + p.extra + "' must be fresh for the psi context"});
        const auto ctx = p.theta_context();
        if (p.thetas.is_family()) {
            check.formula(p.thetas.disjunction(), {});
            detail::check_context(ctx, free_vars(p.thetas.disjunction()), where, out);
        } else {
            for (const auto& th : p.thetas.list()) {
                check.formula(th, {});
                detail::check_context(ctx, free_vars(th), where, out);
            }
        }
    }
    return out;
}

}  // namespace geocoord
