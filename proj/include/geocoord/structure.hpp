#pragma once

// Finite Σ-structures and formula evaluation.
//
// Formulae are compiled against a signature, a variable context and a model
// cardinality: variables become slots, symbols become indices and family
// disjunctions are expanded with size_bound(n). The compiled form is
// evaluated with Kleene three-valued logic so that the same evaluator serves
// complete structures and the partial interpretations of model search.

#include "geocoord/logic.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace geocoord {

/// Raised when a requested structure size exceeds the configured ceiling.
class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::size_t ipow(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) r *= base;
    return r;
}

/// Row-major index of an argument tuple in a table over {0..n-1}^k.
inline std::size_t tuple_index(std::size_t n, std::span<const int> args) {
    std::size_t idx = 0;
    for (int a : args) idx = idx * n + static_cast<std::size_t>(a);
    return idx;
}

inline std::vector<int> tuple_at(std::size_t n, std::size_t k, std::size_t index) {
    std::vector<int> out(k);
    for (std::size_t i = k; i-- > 0;) {
        out[i] = static_cast<int>(index % n);
        index /= n;
    }
    return out;
}

/// A structure on the carrier {0..size-1}. Function tables are total once
/// complete(); relation tables are bit tables iterated in lexicographic
/// tuple order.
class FiniteStructure {
public:
    FiniteStructure() : sig_(std::make_shared<const Signature>()) {}

    FiniteStructure(std::shared_ptr<const Signature> sig, std::size_t size) : sig_(std::move(sig)), size_(size) {
        for (const auto& f : sig_->functions()) fns_.emplace_back(ipow(size_, f.arity), -1);
        for (const auto& r : sig_->relations()) rels_.emplace_back(ipow(size_, r.arity), 0);
    }

    [[nodiscard]] std::size_t size() const { return size_; }
    [[nodiscard]] const Signature& signature() const { return *sig_; }
    [[nodiscard]] const std::shared_ptr<const Signature>& signature_ptr() const { return sig_; }

    [[nodiscard]] int fn(std::size_t sym, std::span<const int> args) const {
        return fns_[sym][tuple_index(size_, args)];
    }
    [[nodiscard]] bool rel(std::size_t sym, std::span<const int> args) const {
        return rels_[sym][tuple_index(size_, args)] != 0;
    }
    [[nodiscard]] int fn(const std::string& name, std::vector<int> args) const {
        return fn(require_fn(name), args);
    }
    [[nodiscard]] bool rel(const std::string& name, std::vector<int> args) const {
        return rel(require_rel(name), args);
    }

    void set_fn(std::size_t sym, std::span<const int> args, int value) {
        check_element(value);
        for (int a : args) check_element(a);
        fns_[sym][tuple_index(size_, args)] = value;
    }
    void set_rel(std::size_t sym, std::span<const int> args, bool value) {
        for (int a : args) check_element(a);
        rels_[sym][tuple_index(size_, args)] = value ? 1 : 0;
    }
    void set_fn(const std::string& name, std::vector<int> args, int value) { set_fn(require_fn(name), args, value); }
    void set_rel(const std::string& name, std::vector<int> args, bool value = true) {
        set_rel(require_rel(name), args, value);
    }

    [[nodiscard]] const std::vector<int>& fn_table(std::size_t sym) const { return fns_[sym]; }
    [[nodiscard]] const std::vector<std::uint8_t>& rel_table(std::size_t sym) const { return rels_[sym]; }
    std::vector<int>& fn_table_mut(std::size_t sym) { return fns_[sym]; }
    std::vector<std::uint8_t>& rel_table_mut(std::size_t sym) { return rels_[sym]; }

    /// Tuples in relation `sym`, lexicographically ordered.
    [[nodiscard]] std::vector<std::vector<int>> tuples(std::size_t sym) const {
        std::vector<std::vector<int>> out;
        const auto k = sig_->relations()[sym].arity;
        for (std::size_t i = 0; i < rels_[sym].size(); ++i)
            if (rels_[sym][i]) out.push_back(tuple_at(size_, k, i));
        return out;
    }

    /// Every function table entry defined.
    [[nodiscard]] bool complete() const {
        for (const auto& t : fns_)
            for (int v : t)
                if (v < 0 || static_cast<std::size_t>(v) >= size_) return false;
        return true;
    }

    /// The image of this structure under the bijection i ↦ perm[i].
    [[nodiscard]] FiniteStructure relabel(const std::vector<int>& perm) const {
        FiniteStructure out(sig_, size_);
        for (std::size_t s = 0; s < fns_.size(); ++s) {
            const auto k = sig_->functions()[s].arity;
            for (std::size_t i = 0; i < fns_[s].size(); ++i) {
                auto args = tuple_at(size_, k, i);
                for (auto& a : args) a = perm[a];
                out.fns_[s][tuple_index(size_, args)] = perm[fns_[s][i]];
            }
        }
        for (std::size_t s = 0; s < rels_.size(); ++s) {
            const auto k = sig_->relations()[s].arity;
            for (std::size_t i = 0; i < rels_[s].size(); ++i) {
                if (!rels_[s][i]) continue;
                auto args = tuple_at(size_, k, i);
                for (auto& a : args) a = perm[a];
                out.rels_[s][tuple_index(size_, args)] = 1;
            }
        }
        return out;
    }

    /// Same interpretation over a signature listing the same symbols,
    /// possibly in another order. Throws if a symbol is missing.
    [[nodiscard]] FiniteStructure reindexed(std::shared_ptr<const Signature> sig) const {
        FiniteStructure out(sig, size_);
        for (std::size_t s = 0; s < sig->functions().size(); ++s) {
            const auto& sym = sig->functions()[s];
            auto mine = sig_->find_function(sym.name);
            if (!mine || sig_->functions()[*mine].arity != sym.arity)
                throw ContractViolation("structure does not interpret function '" + sym.name + "/" +
                                        std::to_string(sym.arity) + "'");
            out.fns_[s] = fns_[*mine];
        }
        for (std::size_t s = 0; s < sig->relations().size(); ++s) {
            const auto& sym = sig->relations()[s];
            auto mine = sig_->find_relation(sym.name);
            if (!mine || sig_->relations()[*mine].arity != sym.arity)
                throw ContractViolation("structure does not interpret relation '" + sym.name + "/" +
                                        std::to_string(sym.arity) + "'");
            out.rels_[s] = rels_[*mine];
        }
        return out;
    }

    /// The reduct to a sub-signature (symbols looked up by name).
    [[nodiscard]] FiniteStructure reduct(std::shared_ptr<const Signature> sub) const { return reindexed(std::move(sub)); }

    friend bool operator==(const FiniteStructure& a, const FiniteStructure& b) {
        return a.size_ == b.size_ && *a.sig_ == *b.sig_ && a.fns_ == b.fns_ && a.rels_ == b.rels_;
    }

private:
    std::size_t require_fn(const std::string& name) const {
        auto i = sig_->find_function(name);
        if (!i) throw ContractViolation("no function symbol '" + name + "'");
        return *i;
    }
    std::size_t require_rel(const std::string& name) const {
        auto i = sig_->find_relation(name);
        if (!i) throw ContractViolation("no relation symbol '" + name + "'");
        return *i;
    }
    void check_element(int v) const {
        if (v < 0 || static_cast<std::size_t>(v) >= size_)
            throw ContractViolation("element " + std::to_string(v) + " outside carrier of size " + std::to_string(size_));
    }

    std::shared_ptr<const Signature> sig_;
    std::size_t size_ = 0;
    std::vector<std::vector<int>> fns_;
    std::vector<std::vector<std::uint8_t>> rels_;
};

/// Variable assignment: context variable → element.
using Assignment = std::map<std::string, int>;

// ---------------------------------------------------------------------------
// Compiled formulae

enum class Tri : std::uint8_t { f = 0, t = 1, u = 2 };

namespace detail {

struct CTerm {
    int sym = -1;  // -1: variable in `slot`
    int slot = 0;
    std::vector<CTerm> args;
};

struct CNode {
    enum class Op : std::uint8_t { top, bot, eq, rel, conj, disj, exists };
    Op op = Op::top;
    int sym = 0;
    std::vector<CTerm> terms;
    std::vector<CNode> kids;
    std::vector<int> slots;  // exists: bound slots
};

class Compiler {
public:
    Compiler(const Signature& sig, std::size_t model_size) : sig_(sig), n_(model_size) {}

    int declare(const std::string& v) {
        scope_[v].push_back(next_slot_);
        return next_slot_++;
    }
    [[nodiscard]] int slots() const { return next_slot_; }

    CNode formula(const Formula& f) {
        using K = Formula::Kind;
        CNode out;
        switch (f.kind()) {
        case K::truth: out.op = CNode::Op::top; return out;
        case K::falsity: out.op = CNode::Op::bot; return out;
        case K::equality:
            out.op = CNode::Op::eq;
            out.terms = {term(f.terms()[0]), term(f.terms()[1])};
            return out;
        case K::relation: {
            auto i = sig_.find_relation(f.name());
            if (!i) throw ContractViolation("unknown relation symbol '" + f.name() + "'");
            if (sig_.relations()[*i].arity != f.terms().size())
                throw ContractViolation("relation '" + f.name() + "' applied with the wrong arity");
            out.op = CNode::Op::rel;
            out.sym = static_cast<int>(*i);
            for (const auto& t : f.terms()) out.terms.push_back(term(t));
            return out;
        }
        case K::param_relation:
            throw ContractViolation("rel(" + f.name() + ", ...) outside its family");
        case K::conjunction:
        case K::disjunction:
            out.op = f.kind() == K::conjunction ? CNode::Op::conj : CNode::Op::disj;
            for (const auto& c : f.children()) out.kids.push_back(formula(c));
            return out;
        case K::family:
            out.op = CNode::Op::disj;
            for (const auto& inst : f.family().instances(n_)) out.kids.push_back(formula(inst));
            return out;
        case K::exists: {
            out.op = CNode::Op::exists;
            for (const auto& v : f.bound()) out.slots.push_back(declare(v));
            out.kids.push_back(formula(f.body()));
            for (const auto& v : f.bound()) scope_[v].pop_back();
            return out;
        }
        }
        return out;
    }

    CTerm term(const Term& t) {
        CTerm out;
        switch (t.kind()) {
        case Term::Kind::variable: {
            auto it = scope_.find(t.name());
            if (it == scope_.end() || it->second.empty())
                throw ContractViolation("unbound variable '" + t.name() + "'");
            out.slot = it->second.back();
            return out;
        }
        case Term::Kind::application: {
            auto i = sig_.find_function(t.name());
            if (!i) throw ContractViolation("unknown function symbol '" + t.name() + "'");
            if (sig_.functions()[*i].arity != t.args().size())
                throw ContractViolation("function '" + t.name() + "' applied with the wrong arity");
            out.sym = static_cast<int>(*i);
            for (const auto& a : t.args()) out.args.push_back(term(a));
            return out;
        }
        case Term::Kind::parameter_application:
            throw ContractViolation("app(" + t.name() + ", ...) outside its family");
        }
        return out;
    }

private:
    const Signature& sig_;
    std::size_t n_;
    std::map<std::string, std::vector<int>> scope_;
    int next_slot_ = 0;
};

/// Reads a complete structure.
struct CompleteInterp {
    const FiniteStructure& m;
    [[nodiscard]] std::size_t size() const { return m.size(); }
    [[nodiscard]] int fn(int sym, std::span<const int> args) const { return m.fn(static_cast<std::size_t>(sym), args); }
    [[nodiscard]] int rel(int sym, std::span<const int> args) const {
        return m.rel(static_cast<std::size_t>(sym), args) ? 1 : 0;
    }
};

template <class Interp>
int eval_term(const CTerm& t, const std::vector<int>& env, const Interp& in) {
    if (t.sym < 0) return env[static_cast<std::size_t>(t.slot)];
    int buf[8];
    std::vector<int> big;
    int* args = buf;
    if (t.args.size() > 8) {
        big.resize(t.args.size());
        args = big.data();
    }
    for (std::size_t i = 0; i < t.args.size(); ++i) {
        args[i] = eval_term(t.args[i], env, in);
        if (args[i] < 0) return -1;
    }
    return in.fn(t.sym, std::span<const int>(args, t.args.size()));
}

template <class Interp>
Tri eval_node(const CNode& n, std::vector<int>& env, const Interp& in) {
    using Op = CNode::Op;
    switch (n.op) {
    case Op::top: return Tri::t;
    case Op::bot: return Tri::f;
    case Op::eq: {
        const int a = eval_term(n.terms[0], env, in);
        if (a < 0) return Tri::u;
        const int b = eval_term(n.terms[1], env, in);
        if (b < 0) return Tri::u;
        return a == b ? Tri::t : Tri::f;
    }
    case Op::rel: {
        int buf[8];
        std::vector<int> big;
        int* args = buf;
        if (n.terms.size() > 8) {
            big.resize(n.terms.size());
            args = big.data();
        }
        for (std::size_t i = 0; i < n.terms.size(); ++i) {
            args[i] = eval_term(n.terms[i], env, in);
            if (args[i] < 0) return Tri::u;
        }
        const int v = in.rel(n.sym, std::span<const int>(args, n.terms.size()));
        return v < 0 ? Tri::u : (v ? Tri::t : Tri::f);
    }
    case Op::conj: {
        Tri acc = Tri::t;
        for (const auto& k : n.kids) {
            const Tri v = eval_node(k, env, in);
            if (v == Tri::f) return Tri::f;
            if (v == Tri::u) acc = Tri::u;
        }
        return acc;
    }
    case Op::disj: {
        Tri acc = Tri::f;
        for (const auto& k : n.kids) {
            const Tri v = eval_node(k, env, in);
            if (v == Tri::t) return Tri::t;
            if (v == Tri::u) acc = Tri::u;
        }
        return acc;
    }
    case Op::exists: {
        const auto size = static_cast<int>(in.size());
        const auto k = n.slots.size();
        if (size == 0) return Tri::f;
        for (auto s : n.slots) env[static_cast<std::size_t>(s)] = 0;
        Tri acc = Tri::f;
        while (true) {
            const Tri v = eval_node(n.kids.front(), env, in);
            if (v == Tri::t) return Tri::t;
            if (v == Tri::u) acc = Tri::u;
            std::size_t i = k;
            while (i > 0) {
                auto& slot = env[static_cast<std::size_t>(n.slots[i - 1])];
                if (++slot < size) break;
                slot = 0;
                --i;
            }
            if (i == 0) break;
        }
        return acc;
    }
    }
    return Tri::u;
}

}  // namespace detail

/// A formula compiled for one signature, context and model cardinality.
class CompiledFormula {
public:
    CompiledFormula(const Formula& f, const Signature& sig, const std::vector<std::string>& context, std::size_t n) {
        detail::Compiler c(sig, n);
        for (const auto& v : context) c.declare(v);
        root_ = c.formula(f);
        slots_ = c.slots();
        context_size_ = context.size();
    }

    [[nodiscard]] std::size_t slots() const { return static_cast<std::size_t>(slots_); }
    [[nodiscard]] std::size_t context_size() const { return context_size_; }

    template <class Interp>
    Tri evaluate(std::vector<int>& env, const Interp& in) const {
        return detail::eval_node(root_, env, in);
    }

    /// env[0..context) holds the context elements; the rest is scratch.
    [[nodiscard]] bool holds(const FiniteStructure& m, std::vector<int>& env) const {
        return evaluate(env, detail::CompleteInterp{m}) == Tri::t;
    }

private:
    detail::CNode root_;
    int slots_ = 0;
    std::size_t context_size_ = 0;
};

/// Standard satisfaction M ⊨ f[a]. Families are read through
/// size_bound(m.size()).
inline bool eval(const FiniteStructure& m, const Formula& f, const Assignment& a) {
    std::vector<std::string> ctx;
    std::vector<int> env;
    for (const auto& [v, e] : a) {
        if (e < 0 || static_cast<std::size_t>(e) >= m.size())
            throw ContractViolation("assignment sends '" + v + "' outside the carrier");
        ctx.push_back(v);
        env.push_back(e);
    }
    CompiledFormula cf(f, m.signature(), ctx, m.size());
    env.resize(cf.slots());
    return cf.holds(m, env);
}

/// Calls `visit(env)` for every assignment of `k` variables over {0..n-1}
/// in lexicographic order; env has `extra` scratch slots appended. Stops
/// early when visit returns false.
template <class Visit>
bool for_each_assignment(std::size_t n, std::size_t k, std::size_t extra, Visit&& visit) {
    std::vector<int> env(k + extra, 0);
    if (k > 0 && n == 0) return true;
    while (true) {
        if (!visit(env)) return false;
        std::size_t i = k;
        while (i > 0) {
            if (static_cast<std::size_t>(++env[i - 1]) < n) break;
            env[i - 1] = 0;
            --i;
        }
        if (i == 0) return true;
    }
}

struct SequentResult {
    bool holds = true;
    std::optional<Assignment> counterexample;
};

/// Every assignment satisfying the antecedent satisfies the consequent; on
/// failure the lexicographically first witnessing assignment is returned.
inline SequentResult holds_sequent(const FiniteStructure& m, const Sequent& s) {
    CompiledFormula ant(s.antecedent, m.signature(), s.context, m.size());
    CompiledFormula con(s.consequent, m.signature(), s.context, m.size());
    const auto k = s.context.size();
    const auto extra = std::max(ant.slots(), con.slots()) - k;
    SequentResult out;
    for_each_assignment(m.size(), k, extra, [&](std::vector<int>& env) {
        if (ant.holds(m, env) && !con.holds(m, env)) {
            Assignment a;
            for (std::size_t i = 0; i < k; ++i) a[s.context[i]] = env[i];
            out = {false, std::move(a)};
            return false;
        }
        return true;
    });
    return out;
}

/// M satisfies every axiom of t.
inline bool is_model(const FiniteStructure& m, const Theory& t) {
    for (const auto& ax : t.axioms)
        if (!holds_sequent(m, ax).holds) return false;
    return true;
}

/// All tuples (over the context order) satisfying f.
inline std::vector<std::vector<int>> satisfying_tuples(const FiniteStructure& m, const Formula& f,
                                                       const std::vector<std::string>& context) {
    CompiledFormula cf(f, m.signature(), context, m.size());
    std::vector<std::vector<int>> out;
    for_each_assignment(m.size(), context.size(), cf.slots() - context.size(), [&](std::vector<int>& env) {
        if (cf.holds(m, env)) out.emplace_back(env.begin(), env.begin() + static_cast<long>(context.size()));
        return true;
    });
    return out;
}

/// Does some instance of a family index excluded by size_bound(m.size())
/// have a satisfying assignment in m? Such an index breaks the family's
/// soundness obligation.
inline std::vector<std::string> violated_family_bounds(const FiniteStructure& m, const Formula& f) {
    std::vector<std::string> out;
    auto visit = [&](auto&& self, const Formula& g) -> void {
        using K = Formula::Kind;
        switch (g.kind()) {
        case K::conjunction:
        case K::disjunction:
            for (const auto& c : g.children()) self(self, c);
            return;
        case K::exists: self(self, g.body()); return;
        case K::family: {
            const auto& fam = g.family();
            for (const auto& label : fam.domain().size_bound(m.size())) self(self, fam.instance(label));
            if (!fam.domain().finite()) return;
            const auto kept = fam.domain().size_bound(m.size());
            for (const auto& label : fam.domain().all()) {
                if (std::find(kept.begin(), kept.end(), label) != kept.end()) continue;
                Formula inst = fam.instance(label);
                auto fv = free_vars_ordered(inst);
                if (!satisfying_tuples(m, inst, fv).empty())
                    out.push_back("family over '" + fam.param() + "' index " + label + " is satisfiable in a structure of size " +
                                  std::to_string(m.size()));
            }
            return;
        }
        default: return;
        }
    };
    visit(visit, f);
    return out;
}

/// True when a formula mentions a family over an unbounded domain, whose
/// size_bound obligation no finite check can discharge.
inline bool has_unbounded_family(const Formula& f) { return !has_only_finite_families(f); }

}  // namespace geocoord
