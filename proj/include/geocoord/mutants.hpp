#pragma once

// Library theory suite and seeded mutations of theories and witness schemes.

#include "geocoord/library.hpp"
#include "geocoord/logic.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace geocoord {

struct NamedTheory {
    std::string name;
    GeneratedTheory generated;
    /// Axiom-deletion mutants stay cheap to enumerate at size 5.
    bool axiom_mutants = true;
};

/// Every preset theory small enough to enumerate exhaustively at size 5.
inline std::vector<NamedTheory> library_theories() {
    std::vector<NamedTheory> out;
    for (const auto* g : {"z1", "z2", "z3", "s3"}) out.push_back({std::string("torsor-") + g, gen_torsor(*group_preset(g)), true});
    out.push_back({"vect-f2-1", gen_vect(*field_preset("f2"), 1), false});
    out.push_back({"vect-f2-2", gen_vect(*field_preset("f2"), 2), false});
    out.push_back({"vect-f3-1", gen_vect(*field_preset("f3"), 1), false});
    for (const auto* c : {"point", "arrow"}) out.push_back({std::string("flat-") + c, gen_flat_monic(*category_preset(c)), true});
    return out;
}

enum class MutationKind {
    drop_theta,
    drop_axiom,
    weaken_theta,
    swap_theta_variable,
    trivial_psi,
    add_projection_theta,
    duplicate_theta,
};

inline const char* to_string(MutationKind k) {
    switch (k) {
    case MutationKind::drop_theta: return "drop-theta";
    case MutationKind::drop_axiom: return "drop-axiom";
    case MutationKind::weaken_theta: return "weaken-theta";
    case MutationKind::swap_theta_variable: return "swap-theta-variable";
    case MutationKind::trivial_psi: return "trivial-psi";
    case MutationKind::add_projection_theta: return "add-projection-theta";
    case MutationKind::duplicate_theta: return "duplicate-theta";
    }
    return "?";
}

struct Mutant {
    MutationKind kind;
    std::string description;
    Theory theory;
    WitnessScheme witness;
    /// True when only the witness scheme differs from the base.
    bool same_theory = true;
};

namespace detail {

inline std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

/// Θ_ψ as an explicit list, labels alongside.
inline std::vector<std::pair<std::string, Formula>> explicit_thetas(const PsiEntry& p) {
    std::vector<std::pair<std::string, Formula>> out;
    if (p.thetas.is_family()) {
        const auto& fam = p.thetas.family();
        for (const auto& l : fam.domain().all()) out.emplace_back(fam.param() + "=" + l, fam.instance(l));
    } else {
        for (std::size_t i = 0; i < p.thetas.list().size(); ++i)
            out.emplace_back("theta#" + std::to_string(i + 1), p.thetas.list()[i]);
    }
    return out;
}

inline void set_list(PsiEntry& p, const std::vector<std::pair<std::string, Formula>>& ts) {
    std::vector<Formula> fs;
    for (const auto& t : ts) fs.push_back(t.second);
    p.thetas.members = std::move(fs);
}

}  // namespace detail

/// One random mutation of a base theory and witness scheme. Kinds that do
/// not apply to the drawn ψ fall back to dropping a θ.
inline Mutant mutate(const Theory& t, const WitnessScheme& w, std::mt19937_64& rng, bool allow_axiom_drop = true) {
    constexpr std::size_t kinds = 7;
    auto kind = static_cast<MutationKind>(detail::pick(rng, kinds));
    if (kind == MutationKind::drop_axiom && (!allow_axiom_drop || t.axioms.empty())) kind = MutationKind::drop_theta;

    Mutant m{kind, {}, t, w, true};
    if (kind == MutationKind::drop_axiom) {
        const auto i = detail::pick(rng, t.axioms.size());
        m.description = "drop axiom " + axiom_label(t.axioms[i], i);
        m.theory.axioms.erase(m.theory.axioms.begin() + static_cast<long>(i));
        m.same_theory = false;
        return m;
    }

    const auto pi = detail::pick(rng, w.psis.size());
    auto& p = m.witness.psis[pi];
    auto ts = detail::explicit_thetas(p);
    if (ts.empty() || (kind == MutationKind::swap_theta_variable && p.context.empty()) ||
        (kind == MutationKind::add_projection_theta && p.context.empty()))
        kind = m.kind = ts.empty() ? MutationKind::trivial_psi : MutationKind::drop_theta;

    const auto y = Term::var(p.extra);
    switch (kind) {
    case MutationKind::drop_theta: {
        const auto k = detail::pick(rng, ts.size());
        m.description = "drop " + ts[k].first + " from " + p.tag;
        ts.erase(ts.begin() + static_cast<long>(k));
        detail::set_list(p, ts);
        break;
    }
    case MutationKind::weaken_theta: {
        const auto k = detail::pick(rng, ts.size());
        m.description = "weaken " + ts[k].first + " of " + p.tag + " to psi";
        ts[k].second = p.formula && Formula::eq(y, y);
        detail::set_list(p, ts);
        break;
    }
    case MutationKind::swap_theta_variable: {
        const auto k = detail::pick(rng, ts.size());
        const auto& x = p.context[detail::pick(rng, p.context.size())];
        m.description = "swap " + p.extra + " and " + x + " in " + ts[k].first + " of " + p.tag;
        ts[k].second = substitute(ts[k].second, {{p.extra, Term::var(x)}, {x, y}});
        detail::set_list(p, ts);
        break;
    }
    case MutationKind::trivial_psi: {
        m.description = "replace psi " + p.tag + " by equalities";
        std::vector<Formula> eqs;
        for (const auto& x : p.context) eqs.push_back(Formula::eq(Term::var(x), Term::var(x)));
        p.formula = Formula::conj(eqs);
        break;
    }
    case MutationKind::add_projection_theta: {
        const auto& x = p.context[detail::pick(rng, p.context.size())];
        m.description = "add theta " + p.extra + " = " + x + " to " + p.tag;
        ts.emplace_back("projection", p.formula && Formula::eq(y, Term::var(x)));
        detail::set_list(p, ts);
        break;
    }
    case MutationKind::duplicate_theta: {
        const auto k = detail::pick(rng, ts.size());
        m.description = "duplicate " + ts[k].first + " of " + p.tag;
        ts.push_back(ts[k]);
        detail::set_list(p, ts);
        break;
    }
    case MutationKind::drop_axiom: break;
    }
    return m;
}

/// `count` mutants drawn round-robin over `bases` from one seeded stream.
inline std::vector<std::pair<std::size_t, Mutant>> mutants(const std::vector<NamedTheory>& bases, std::size_t count,
                                                           std::uint64_t seed, bool allow_axiom_drop = true) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<std::size_t, Mutant>> out;
    for (std::size_t i = 0; i < count && !bases.empty(); ++i) {
        const auto b = i % bases.size();
        out.emplace_back(b, mutate(bases[b].generated.theory, bases[b].generated.witness, rng,
                                   allow_axiom_drop && bases[b].axiom_mutants));
    }
    return out;
}

}  // namespace geocoord
