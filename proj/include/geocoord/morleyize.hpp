#pragma once

// Morleyization: a fresh relation symbol per target formula, axiomatised as
// its complement.

#include "geocoord/logic.hpp"
#include "geocoord/validate.hpp"

#include <optional>
#include <string>
#include <vector>

namespace geocoord {

struct MorleyTarget {
    Formula formula;
    /// Argument order of the new symbol; defaults to the free variables in
    /// order of first occurrence.
    std::optional<std::vector<std::string>> context;
    /// Name of the new symbol; defaults to the first free `N<k>`.
    std::string name;
};

/// t plus, per target φ(x̄), a relation N_φ/|x̄| with
///   φ(x̄) ∧ N_φ(x̄) ⊢ ⊥   and   ⊤ ⊢ φ(x̄) ∨ N_φ(x̄).
/// Targets must be built from equality, relations, finite ∧/∨, ∃ and
/// families over finite domains.
inline Theory morleyize(const Theory& t, const std::vector<MorleyTarget>& targets) {
    Theory out = t;
    std::size_t counter = 0;
    for (const auto& target : targets) {
        if (!has_only_finite_families(target.formula))
            throw ContractViolation("cannot negate a formula with an unbounded disjunction family");
        ValidationReport issues;
        detail::SymbolChecker(out.signature, "morleyize target", issues).formula(target.formula, {});
        if (!issues.ok()) throw ContractViolation("morleyize target: " + issues.issues.front().message);
        const auto ctx = target.context.value_or(free_vars_ordered(target.formula));
        detail::check_context(ctx, free_vars(target.formula), "morleyize target", issues);
        if (!issues.ok()) throw ContractViolation("morleyize target: " + issues.issues.front().message);

        std::string name = target.name;
        if (name.empty()) {
            do name = "N" + std::to_string(counter++);
            while (out.signature.declares(name));
        } else if (out.signature.declares(name)) {
            throw ContractViolation("morleyize: symbol '" + name + "' already declared");
        }
        out.signature.add_relation(name, ctx.size());
        std::vector<Term> args;
        for (const auto& v : ctx) args.push_back(Term::var(v));
        const auto atom = Formula::rel(name, args);
        out.axioms.push_back({name + "_disjoint", ctx, target.formula && atom, Formula::bot()});
        out.axioms.push_back({name + "_cover", ctx, Formula::top(), target.formula || atom});
    }
    return out;
}

}  // namespace geocoord
