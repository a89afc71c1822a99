#pragma once

// Semantic checkers for witness schemes (Ψ, {Θ_ψ}) over the finite models of
// a theory.
//
// Every check quantifies over the models of size ≤ max_size up to
// isomorphism, enumerated in ascending size. A pass means that no
// counterexample exists up to that size; it is evidence, not a proof, since
// the properties concern provability in geometric logic.

#include "geocoord/logic.hpp"
#include "geocoord/maps.hpp"
#include "geocoord/search.hpp"
#include "geocoord/structure.hpp"
#include "geocoord/validate.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace geocoord {

// ---------------------------------------------------------------------------
// Ψ(M)

struct TaggedTuple {
    std::string tag;
    std::vector<int> tuple;

    friend bool operator==(const TaggedTuple&, const TaggedTuple&) = default;
};

/// Ψ(M) = ⊔_ψ ψ(M), in Ψ order and lexicographic tuple order within a tag.
struct TaggedTupleSet {
    std::vector<TaggedTuple> items;

    [[nodiscard]] std::size_t size() const { return items.size(); }
    [[nodiscard]] bool empty() const { return items.empty(); }
    [[nodiscard]] std::size_t count(const std::string& tag) const {
        return static_cast<std::size_t>(
            std::count_if(items.begin(), items.end(), [&](const TaggedTuple& t) { return t.tag == tag; }));
    }
};

inline TaggedTupleSet psi_elements(const FiniteStructure& m, const WitnessScheme& w) {
    TaggedTupleSet out;
    for (const auto& p : w.psis)
        for (auto& t : satisfying_tuples(m, p.formula, p.context)) out.items.push_back({p.tag, std::move(t)});
    return out;
}

// ---------------------------------------------------------------------------
// Reports

enum class Verdict { pass, fail, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

struct Finding {
    std::string sequent_id;
    std::size_t model_size = 0;
    std::optional<FiniteStructure> model;
    Assignment assignment;
    std::string message;
};

struct CheckStats {
    std::size_t models_checked = 0;
    std::size_t max_size = 0;
    std::vector<std::size_t> models_per_size;  // index = size
};

enum class DclEvidence { explicit_formula, stabilizer_fixed };

inline const char* to_string(DclEvidence e) {
    return e == DclEvidence::explicit_formula ? "explicit-formula" : "stabilizer-fixed";
}

/// Why one element lies in the definable closure of Ψ(M).
struct DclEntry {
    int element = 0;
    std::vector<TaggedTuple> witnesses;  // n̄ as a concatenation of tagged tuples
    DclEvidence evidence = DclEvidence::stabilizer_fixed;
};

struct DclCertificate {
    std::size_t model_size = 0;
    CanonicalKey model_key;
    std::vector<DclEntry> entries;
};

struct CheckReport {
    std::string check;
    Verdict verdict = Verdict::pass;
    std::vector<Finding> findings;
    std::vector<std::string> warnings;
    CheckStats stats;
    std::vector<DclCertificate> certificates;
    std::vector<CheckReport> parts;

    [[nodiscard]] bool passed() const { return verdict == Verdict::pass; }
    [[nodiscard]] const Finding* first(const std::string& sequent_suffix) const {
        for (const auto& f : findings)
            if (f.sequent_id.ends_with(sequent_suffix)) return &f;
        return nullptr;
    }
    [[nodiscard]] std::string summary() const {
        switch (verdict) {
        case Verdict::pass: return "no counterexample up to size " + std::to_string(stats.max_size);
        case Verdict::fail:
            return std::to_string(findings.size()) + " counterexample(s), smallest at size " +
                   std::to_string(findings.empty() ? 0 : findings.front().model_size);
        case Verdict::inconclusive: return "inconclusive up to size " + std::to_string(stats.max_size);
        }
        return "";
    }
};

// ---------------------------------------------------------------------------
// Model sets

/// The models of a theory up to isomorphism, by ascending size and canonical
/// key, together with the family-bound obligations each model leaves open.
class ModelSet {
public:
    ModelSet() = default;

    static ModelSet enumerate(const Theory& t, std::size_t max_size, std::size_t ceiling = kDefaultSizeCeiling) {
        ModelSet out;
        out.max_size_ = max_size;
        for (std::size_t n = 0; n <= max_size; ++n) {
            auto ms = enumerate_models(t, n, EnumerationOptions{ceiling, true});
            out.per_size_.push_back(ms.size());
            for (auto& m : ms) {
                out.notes_.push_back(axiom_obligations(t, m));
                out.models_.push_back(std::move(m));
            }
        }
        return out;
    }

    /// A fixed list of structures, e.g. read from files.
    static ModelSet of(std::vector<FiniteStructure> ms, const Theory& t) {
        ModelSet out;
        std::stable_sort(ms.begin(), ms.end(),
                         [](const FiniteStructure& a, const FiniteStructure& b) { return a.size() < b.size(); });
        for (auto& m : ms) {
            out.max_size_ = std::max(out.max_size_, m.size());
            if (out.per_size_.size() <= m.size()) out.per_size_.resize(m.size() + 1, 0);
            ++out.per_size_[m.size()];
            out.notes_.push_back(axiom_obligations(t, m));
            out.models_.push_back(std::move(m));
        }
        return out;
    }

    [[nodiscard]] const std::vector<FiniteStructure>& models() const { return models_; }
    [[nodiscard]] const std::vector<std::string>& notes(std::size_t i) const { return notes_[i]; }
    [[nodiscard]] std::size_t max_size() const { return max_size_; }
    [[nodiscard]] const std::vector<std::size_t>& per_size() const { return per_size_; }

    /// The sub-list of models of size ≤ n.
    [[nodiscard]] ModelSet up_to(std::size_t n) const {
        ModelSet out;
        out.max_size_ = std::min(n, max_size_);
        for (std::size_t i = 0; i < models_.size(); ++i)
            if (models_[i].size() <= n) {
                out.models_.push_back(models_[i]);
                out.notes_.push_back(notes_[i]);
            }
        out.per_size_.assign(per_size_.begin(), per_size_.begin() + static_cast<long>(std::min(per_size_.size(), n + 1)));
        return out;
    }

    /// Open family-bound obligations of formula f in structure m.
    static std::vector<std::string> obligations(const Formula& f, const FiniteStructure& m) {
        if (has_unbounded_family(f)) return {"a disjunction family has an unbounded domain"};
        return violated_family_bounds(m, f);
    }

private:
    static std::vector<std::string> axiom_obligations(const Theory& t, const FiniteStructure& m) {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < t.axioms.size(); ++i) {
            const auto& ax = t.axioms[i];
            for (const auto* f : {&ax.antecedent, &ax.consequent})
                for (auto& note : obligations(*f, m)) out.push_back(axiom_label(ax, i) + ": " + note);
        }
        return out;
    }

    std::vector<FiniteStructure> models_;
    std::vector<std::vector<std::string>> notes_;
    std::vector<std::size_t> per_size_;
    std::size_t max_size_ = 0;
};

struct CheckOptions {
    std::size_t ceiling = kDefaultSizeCeiling;
    /// Reuse an enumeration; it must cover max_size.
    const ModelSet* models = nullptr;
    /// check_coord: most tagged tuples combined into one n̄ (0 = all of Ψ(M)).
    std::size_t coord_tuple_cap = 0;
};

namespace detail {

class CheckRun {
public:
    CheckRun(std::string check, const Theory& t, std::size_t max_size, const CheckOptions& opts) {
        report.check = std::move(check);
        if (opts.models) {
            if (opts.models->max_size() < max_size)
                owned_ = ModelSet::enumerate(t, max_size, opts.ceiling);
            else
                owned_ = opts.models->up_to(max_size);
        } else {
            owned_ = ModelSet::enumerate(t, max_size, opts.ceiling);
        }
        report.stats.max_size = max_size;
        report.stats.models_per_size = owned_.per_size();
        report.stats.models_checked = owned_.models().size();
        for (std::size_t i = 0; i < owned_.models().size(); ++i)
            for (const auto& n : owned_.notes(i)) open(owned_.models()[i], n);
    }

    [[nodiscard]] const ModelSet& models() const { return owned_; }

    /// Records the first counterexample per sequent id.
    void fail(const std::string& id, const FiniteStructure& m, Assignment a, std::string message) {
        if (!failed_ids_.insert(id).second) return;
        report.findings.push_back({id, m.size(), m, std::move(a), std::move(message)});
    }

    void open(const FiniteStructure& m, const std::string& note) {
        undischarged_ = true;
        const auto w = "size " + std::to_string(m.size()) + ": " + note;
        if (std::find(report.warnings.begin(), report.warnings.end(), w) == report.warnings.end())
            report.warnings.push_back(w);
    }

    void obligations(const Formula& f, const FiniteStructure& m) {
        for (const auto& n : ModelSet::obligations(f, m)) open(m, n);
    }

    CheckReport finish() {
        std::stable_sort(report.findings.begin(), report.findings.end(),
                         [](const Finding& a, const Finding& b) { return a.model_size < b.model_size; });
        if (!report.findings.empty()) report.verdict = Verdict::fail;
        else if (undischarged_) report.verdict = Verdict::inconclusive;
        else report.verdict = Verdict::pass;
        return std::move(report);
    }

    CheckReport report;

private:
    ModelSet owned_;
    std::set<std::string> failed_ids_;
    bool undischarged_ = false;
};

inline Assignment assignment_of(const std::vector<std::string>& ctx, const std::vector<int>& tuple) {
    Assignment a;
    for (std::size_t i = 0; i < ctx.size() && i < tuple.size(); ++i) a[ctx[i]] = tuple[i];
    return a;
}

/// θ labels for report ids: `theta#k` for listed formulae, `p=label` for a
/// family.
inline std::vector<std::pair<std::string, Formula>> labelled_thetas(const PsiEntry& p, std::size_t n) {
    std::vector<std::pair<std::string, Formula>> out;
    if (p.thetas.is_family()) {
        const auto& fam = p.thetas.family();
        for (const auto& l : fam.domain().size_bound(n)) out.emplace_back(fam.param() + "=" + l, fam.instance(l));
    } else {
        for (std::size_t i = 0; i < p.thetas.list().size(); ++i)
            out.emplace_back("theta#" + std::to_string(i + 1), p.thetas.list()[i]);
    }
    return out;
}

inline std::string fresh_for(const std::string& base, const std::vector<std::string>& ctx, const Formula& f) {
    auto taken = free_vars(f);
    taken.insert(ctx.begin(), ctx.end());
    return fresh_name(base, taken);
}

inline std::string describe(const StructureMap& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.image.size(); ++i) s += (i ? " " : "") + std::to_string(m.image[i]);
    return s + "]";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The three sequents of a uniform co-ordinatisation

/// θ ⊢ ψ, θ ∧ θ[y'/y] ⊢ y = y', and ψ ∧ y = y ⊢ ⋁Θ for one ψ.
struct UcoordSequents {
    std::vector<std::pair<std::string, Sequent>> sub;
    std::vector<std::pair<std::string, Sequent>> functional;
    Sequent cover;
};

inline UcoordSequents ucoord_sequents(const PsiEntry& p, std::size_t n) {
    UcoordSequents out;
    const auto ctx = p.theta_context();
    for (const auto& [label, th] : detail::labelled_thetas(p, n)) {
        out.sub.push_back({p.tag + "/" + label + "/sub", {p.tag + "/" + label + "/sub", ctx, th, p.formula}});
        const auto y2 = detail::fresh_for(p.extra, ctx, th);
        auto ctx2 = ctx;
        ctx2.push_back(y2);
        const auto th2 = substitute(th, {{p.extra, Term::var(y2)}});
        out.functional.push_back({p.tag + "/" + label + "/functional",
                                  {p.tag + "/" + label + "/functional", ctx2, th && th2,
                                   Formula::eq(Term::var(p.extra), Term::var(y2))}});
    }
    out.cover = {p.tag + "/cover", ctx, p.formula && Formula::eq(Term::var(p.extra), Term::var(p.extra)),
                 p.thetas.disjunction()};
    return out;
}

// ---------------------------------------------------------------------------
// Checks

/// ⊤ ⊢ ⋁_ψ ∃x̄. ψ(x̄) in every model.
inline CheckReport check_inhabited(const Theory& t, const WitnessScheme& w, std::size_t max_size,
                                   const CheckOptions& opts = {}) {
    detail::CheckRun run("inhabited", t, max_size, opts);
    for (const auto& m : run.models().models()) {
        bool found = false;
        for (const auto& p : w.psis) {
            run.obligations(p.formula, m);
            if (!satisfying_tuples(m, p.formula, p.context).empty()) {
                found = true;
                break;
            }
        }
        if (!found) run.fail("inhabited", m, {}, "no psi has a witness");
    }
    return run.finish();
}

inline CheckReport check_ucoord(const Theory& t, const WitnessScheme& w, std::size_t max_size,
                                const CheckOptions& opts = {}) {
    detail::CheckRun run("ucoord", t, max_size, opts);
    for (const auto& m : run.models().models()) {
        for (const auto& p : w.psis) {
            const auto seqs = ucoord_sequents(p, m.size());
            auto check = [&](const std::string& id, const Sequent& s, const std::string& what) {
                run.obligations(s.antecedent, m);
                run.obligations(s.consequent, m);
                auto r = holds_sequent(m, s);
                if (!r.holds) run.fail(id, m, *r.counterexample, what);
            };
            for (const auto& [id, s] : seqs.sub) check(id, s, "theta does not imply psi");
            for (const auto& [id, s] : seqs.functional) check(id, s, "theta is not functional in " + p.extra);
            check(seqs.cover.name, seqs.cover, "no theta covers the element " + p.extra);
        }
    }
    return run.finish();
}

/// Every automorphism fixing a Ψ-witness pointwise is the identity.
inline CheckReport check_urigid(const Theory& t, const WitnessScheme& w, std::size_t max_size,
                                const CheckOptions& opts = {}) {
    detail::CheckRun run("urigid", t, max_size, opts);
    for (const auto& m : run.models().models()) {
        const auto auts = automorphisms(m);
        for (const auto& p : w.psis) {
            run.obligations(p.formula, m);
            for (const auto& tuple : satisfying_tuples(m, p.formula, p.context)) {
                for (const auto& a : auts) {
                    if (a.is_identity()) continue;
                    bool fixes = true;
                    for (int e : tuple) fixes = fixes && a.image[static_cast<std::size_t>(e)] == e;
                    if (fixes) {
                        run.fail(p.tag + "/rigid", m, detail::assignment_of(p.context, tuple),
                                 "automorphism " + detail::describe(a) + " fixes the witness");
                        break;
                    }
                }
            }
        }
    }
    return run.finish();
}

/// Every element is fixed by the automorphisms fixing some tuple of
/// Ψ-witnesses (the stabilizer proxy for definable closure).
inline CheckReport check_coord(const Theory& t, const WitnessScheme& w, std::size_t max_size,
                               const CheckOptions& opts = {}) {
    detail::CheckRun run("coord", t, max_size, opts);
    for (const auto& m : run.models().models()) {
        for (const auto& p : w.psis) run.obligations(p.formula, m);
        const auto psi = psi_elements(m, w);
        const auto auts = automorphisms(m);
        const auto& items = psi.items;
        auto fixes_all = [&](const StructureMap& a, const std::vector<std::size_t>& chosen) {
            for (auto i : chosen)
                for (int e : items[i].tuple)
                    if (a.image[static_cast<std::size_t>(e)] != e) return false;
            return true;
        };
        auto pins_element = [&](const std::vector<std::size_t>& chosen, int e) {
            for (const auto& a : auts)
                if (fixes_all(a, chosen) && a.image[static_cast<std::size_t>(e)] != e) return false;
            return true;
        };
        const auto cap = opts.coord_tuple_cap == 0 ? items.size() : std::min(opts.coord_tuple_cap, items.size());
        DclCertificate cert{m.size(), canonical_key(m), {}};
        bool ok = true;
        for (int e = 0; e < static_cast<int>(m.size()) && ok; ++e) {
            std::optional<std::vector<std::size_t>> found;
            for (std::size_t i = 0; i < items.size() && !found; ++i)
                if (std::find(items[i].tuple.begin(), items[i].tuple.end(), e) != items[i].tuple.end())
                    found = std::vector<std::size_t>{i};
            // otherwise smallest combinations first; a larger n̄ has a smaller stabilizer
            for (std::size_t k = 0; k <= cap && !found; ++k) {
                std::vector<std::size_t> idx(k);
                for (std::size_t i = 0; i < k; ++i) idx[i] = i;
                while (true) {
                    if (pins_element(idx, e)) {
                        found = idx;
                        break;
                    }
                    std::size_t i = k;
                    while (i > 0 && idx[i - 1] == items.size() - k + i - 1) --i;
                    if (i == 0) break;
                    ++idx[i - 1];
                    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
                }
            }
            if (!found) {
                std::string msg = psi.empty() ? "psi has no witnesses, and element " + std::to_string(e)
                                              : "element " + std::to_string(e);
                msg += " is moved by an automorphism fixing the available witnesses";
                run.fail("dcl", m, {{"m", e}}, msg);
                ok = false;
                break;
            }
            DclEntry entry{e, {}, DclEvidence::stabilizer_fixed};
            for (auto i : *found) {
                entry.witnesses.push_back(items[i]);
                const auto& tu = items[i].tuple;
                if (std::find(tu.begin(), tu.end(), e) != tu.end()) entry.evidence = DclEvidence::explicit_formula;
            }
            cert.entries.push_back(std::move(entry));
        }
        if (ok) run.report.certificates.push_back(std::move(cert));
    }
    return run.finish();
}

/// Every model has at most K = max_ψ |Θ_ψ| elements. Empty Θ_ψ are pruned
/// with a warning; such a ψ must then be unsatisfiable.
inline CheckReport check_cardinality_bound(const Theory& t, const WitnessScheme& w, std::size_t max_size,
                                           const CheckOptions& opts = {}) {
    detail::CheckRun run("bound", t, max_size, opts);
    std::size_t K = 0;
    bool infinite = false;
    std::vector<const PsiEntry*> empty;
    for (const auto& p : w.psis) {
        if (!p.thetas.finite()) {
            infinite = true;
            run.report.warnings.push_back("theta family of '" + p.tag + "' is infinite; no cardinality bound applies");
            continue;
        }
        const auto c = p.thetas.cardinality();
        if (c == 0) {
            empty.push_back(&p);
            run.report.warnings.push_back("empty theta set for '" + p.tag + "' pruned; '" + p.tag +
                                          "' must be inconsistent");
            continue;
        }
        K = std::max(K, c);
    }
    for (const auto& m : run.models().models()) {
        for (const auto* p : empty) {
            auto tuples = satisfying_tuples(m, p->formula, p->context);
            if (!tuples.empty())
                run.fail(p->tag + "/empty-theta", m, detail::assignment_of(p->context, tuples.front()),
                         "psi with an empty theta set has a witness");
        }
        if (!infinite && m.size() > K)
            run.fail("bound", m, {}, "model has " + std::to_string(m.size()) + " elements, bound K = " + std::to_string(K));
    }
    if (infinite && run.report.findings.empty()) {
        auto r = run.finish();
        r.verdict = Verdict::inconclusive;
        return r;
    }
    return run.finish();
}

/// Fails only if ucoord passes while urigid fails.
inline CheckReport implication_audit(const Theory& t, const WitnessScheme& w, std::size_t max_size,
                                     const CheckOptions& opts = {}) {
    CheckOptions shared = opts;
    ModelSet models;
    if (!opts.models || opts.models->max_size() < max_size) {
        models = ModelSet::enumerate(t, max_size, opts.ceiling);
        shared.models = &models;
    }
    CheckReport out;
    out.check = "audit";
    out.parts.push_back(check_ucoord(t, w, max_size, shared));
    out.parts.push_back(check_urigid(t, w, max_size, shared));
    const auto& uc = out.parts[0];
    const auto& ur = out.parts[1];
    out.stats = uc.stats;
    if (uc.verdict == Verdict::pass && ur.verdict == Verdict::fail) {
        out.verdict = Verdict::fail;
        for (auto f : ur.findings) {
            f.message = "uniformly co-ordinatised but not uniformly rigid: " + f.message;
            out.findings.push_back(std::move(f));
        }
    } else if (uc.verdict == Verdict::pass && ur.verdict == Verdict::inconclusive) {
        out.verdict = Verdict::inconclusive;
    } else {
        out.verdict = Verdict::pass;
    }
    out.warnings.push_back(std::string("ucoord: ") + to_string(uc.verdict) + ", urigid: " + to_string(ur.verdict));
    return out;
}

// ---------------------------------------------------------------------------
// Extension of a witness-to-witness map

class ExtensionError : public std::runtime_error {
public:
    ExtensionError(std::string sequent, const std::string& message)
        : std::runtime_error(sequent + ": " + message), sequent_(std::move(sequent)) {}
    /// One of psi, cover, existence, functional, hom, unique.
    [[nodiscard]] const std::string& sequent() const { return sequent_; }

private:
    std::string sequent_;
};

/// The map M → N sending m′ to the unique y with N ⊨ θ(n̄, y), for any θ
/// with M ⊨ θ(m̄, m′). Verified to be the unique homomorphism extending
/// m̄ ↦ n̄.
inline StructureMap extend_witness_map(const FiniteStructure& M, const FiniteStructure& N, const WitnessScheme& w,
                                       const std::string& tag, const std::vector<int>& mbar,
                                       const std::vector<int>& nbar) {
    const auto* p = w.find(tag);
    if (!p) throw ContractViolation("no psi tagged '" + tag + "'");
    if (mbar.size() != p->context.size() || nbar.size() != p->context.size())
        throw ContractViolation("witness tuples must have the arity of '" + tag + "'");
    auto env_of = [&](const std::vector<int>& tuple, int y) {
        Assignment a = detail::assignment_of(p->context, tuple);
        a[p->extra] = y;
        return a;
    };
    if (!eval(M, p->formula, detail::assignment_of(p->context, mbar)))
        throw ExtensionError("psi", "the source tuple is not a witness of " + tag);
    if (!eval(N, p->formula, detail::assignment_of(p->context, nbar)))
        throw ExtensionError("psi", "the target tuple is not a witness of " + tag);

    const auto thetas = detail::labelled_thetas(*p, M.size());
    std::vector<int> image(M.size(), -1);
    for (int e = 0; e < static_cast<int>(M.size()); ++e) {
        const std::pair<std::string, Formula>* cover = nullptr;
        for (const auto& th : thetas)
            if (eval(M, th.second, env_of(mbar, e))) {
                cover = &th;
                break;
            }
        if (!cover) throw ExtensionError("cover", "no theta relates the source witness to element " + std::to_string(e));
        std::vector<int> ys;
        for (int y = 0; y < static_cast<int>(N.size()); ++y)
            if (eval(N, cover->second, env_of(nbar, y))) ys.push_back(y);
        if (ys.empty())
            throw ExtensionError("existence", cover->first + " has no value at the target witness");
        if (ys.size() > 1)
            throw ExtensionError("functional", cover->first + " has " + std::to_string(ys.size()) +
                                                   " values at the target witness");
        image[static_cast<std::size_t>(e)] = ys.front();
    }
    if (!is_homomorphism(M, N, image))
        throw ExtensionError("hom", "the induced map does not preserve the structure");
    Pins pins;
    for (std::size_t i = 0; i < mbar.size(); ++i) pins.emplace_back(mbar[i], nbar[i]);
    const auto homs = find_maps(M, N, MapKind::hom, pins);
    if (homs.size() != 1 || homs.front().image != image)
        throw ExtensionError("unique", std::to_string(homs.size()) + " homomorphisms extend the witness map");
    MapKind kind = MapKind::hom;
    if (is_isomorphism(M, N, image)) kind = M == N ? MapKind::aut : MapKind::iso;
    return {kind, image};
}

}  // namespace geocoord
