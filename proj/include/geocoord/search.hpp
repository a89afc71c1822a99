#pragma once

// Bounded model enumeration.
//
// Brute force over interpretation tables with early axiom pruning: table
// cells are assigned in a fixed order and every ground axiom instance is evaluated three-valuedly over the partial
// interpretation. An instance that is still undetermined watches one
// unassigned cell it depends on and is re-evaluated only when that cell is
// assigned. Isomorphism classes are deduplicated by canonical form.

#include "geocoord/maps.hpp"
#include "geocoord/structure.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <tuple>
#include <vector>

namespace geocoord {

inline constexpr std::size_t kDefaultSizeCeiling = 6;

struct EnumerationOptions {
    std::size_t ceiling = kDefaultSizeCeiling;
    bool up_to_iso = false;
};

namespace detail {

/// Partial interpretation: one value per table cell, -1 when unassigned.
class PartialInterp {
public:
    PartialInterp(const Signature& sig, std::size_t n) : n_(n) {
        std::size_t off = 0;
        for (const auto& f : sig.functions()) {
            fn_off_.push_back(off);
            off += ipow(n, f.arity);
        }
        fn_cells_ = off;
        for (const auto& r : sig.relations()) {
            rel_off_.push_back(off);
            off += ipow(n, r.arity);
        }
        cells_.assign(off, -1);
    }

    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] std::size_t cell_count() const { return cells_.size(); }
    [[nodiscard]] bool is_fn_cell(std::size_t c) const { return c < fn_cells_; }

    int fn(int sym, std::span<const int> args) const {
        const auto c = fn_off_[static_cast<std::size_t>(sym)] + tuple_index(n_, args);
        const int v = cells_[c];
        if (v < 0) note(c);
        return v;
    }
    int rel(int sym, std::span<const int> args) const {
        const auto c = rel_off_[static_cast<std::size_t>(sym)] + tuple_index(n_, args);
        const int v = cells_[c];
        if (v < 0) note(c);
        return v;
    }

    void set(std::size_t cell, int v) { cells_[cell] = v; }
    [[nodiscard]] int get(std::size_t cell) const { return cells_[cell]; }

    /// Positions drive which unknown cell an undetermined instance watches:
    /// the one assigned soonest.
    void set_positions(const std::vector<std::size_t>* pos) { pos_ = pos; }
    void reset_blocker() const { blocker_ = std::numeric_limits<std::size_t>::max(); }
    [[nodiscard]] std::size_t blocker() const { return blocker_; }

    [[nodiscard]] std::size_t fn_offset(std::size_t s) const { return fn_off_[s]; }
    [[nodiscard]] std::size_t rel_offset(std::size_t s) const { return rel_off_[s]; }

private:
    void note(std::size_t c) const {
        if (blocker_ == std::numeric_limits<std::size_t>::max() || (*pos_)[c] < (*pos_)[blocker_]) blocker_ = c;
    }

    std::size_t n_;
    std::size_t fn_cells_ = 0;
    std::vector<std::size_t> fn_off_, rel_off_;
    std::vector<int> cells_;
    const std::vector<std::size_t>* pos_ = nullptr;
    mutable std::size_t blocker_ = std::numeric_limits<std::size_t>::max();
};

class ModelSearch {
public:
    ModelSearch(const Theory& t, std::size_t n)
        : sig_(std::make_shared<const Signature>(t.signature)), n_(n), interp_(*sig_, n) {
        for (const auto& ax : t.axioms) {
            Axiom a{CompiledFormula(ax.antecedent, *sig_, ax.context, n),
                    CompiledFormula(ax.consequent, *sig_, ax.context, n), ax.context.size(), 0};
            a.scratch = std::max(a.ant.slots(), a.con.slots());
            const auto count = ipow(n, a.arity);
            for (std::size_t i = 0; i < count; ++i) instances_.push_back({axioms_.size(), i});
            axioms_.push_back(std::move(a));
        }
        order_cells();
        interp_.set_positions(&position_);
        watch_.resize(interp_.cell_count());
        env_.resize(64);
    }

    /// Calls `emit` for every model; stops when it returns false.
    void run(const std::function<bool(const FiniteStructure&)>& emit) {
        emit_ = &emit;
        stop_ = false;
        for (std::size_t i = 0; i < instances_.size(); ++i) {
            const Tri v = evaluate(i);
            if (v == Tri::f) return;
            if (v == Tri::u) watch_[interp_.blocker()].push_back(i);
        }
        dfs(0);
    }

private:
    struct Axiom {
        CompiledFormula ant;
        CompiledFormula con;
        std::size_t arity;
        std::size_t scratch;
    };
    struct Instance {
        std::size_t axiom;
        std::size_t assignment;
    };

    // Function cells first, by least maximal argument so that equations
    // between small elements are decided early; then relation cells symbol by
    // symbol in declaration order, so that a Morleyized symbol is assigned
    // after the symbols its defining formula mentions.
    void order_cells() {
        struct Key {
            std::size_t group;
            int max_arg;
            std::size_t cell;
        };
        std::vector<Key> keys;
        const auto& fs = sig_->functions();
        const auto& rs = sig_->relations();
        auto add = [&](std::size_t off, std::size_t arity, std::size_t group) {
            for (std::size_t i = 0; i < ipow(n_, arity); ++i) {
                auto args = tuple_at(n_, arity, i);
                int mx = -1;
                for (int a : args) mx = std::max(mx, a);
                keys.push_back({group, mx, off + i});
            }
        };
        for (std::size_t s = 0; s < fs.size(); ++s) add(interp_.fn_offset(s), fs[s].arity, 0);
        for (std::size_t s = 0; s < rs.size(); ++s) add(interp_.rel_offset(s), rs[s].arity, s + 1);
        std::stable_sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
            return std::tie(a.group, a.max_arg) < std::tie(b.group, b.max_arg);
        });
        position_.assign(interp_.cell_count(), 0);
        for (std::size_t i = 0; i < keys.size(); ++i) {
            order_.push_back(keys[i].cell);
            position_[keys[i].cell] = i;
        }
    }

    Tri evaluate(std::size_t inst) {
        const auto& in = instances_[inst];
        const auto& ax = axioms_[in.axiom];
        if (env_.size() < ax.scratch) env_.resize(ax.scratch);
        auto idx = in.assignment;
        for (std::size_t i = ax.arity; i-- > 0;) {
            env_[i] = static_cast<int>(idx % n_);
            idx /= n_;
        }
        interp_.reset_blocker();
        const Tri a = ax.ant.evaluate(env_, interp_);
        if (a == Tri::f) return Tri::t;
        const Tri c = ax.con.evaluate(env_, interp_);
        if (c == Tri::t) return Tri::t;
        if (a == Tri::t && c == Tri::f) return Tri::f;
        return Tri::u;
    }

    void dfs(std::size_t depth) {
        if (stop_) return;
        if (depth == order_.size()) {
            emit_model();
            return;
        }
        const auto cell = order_[depth];
        const int values = interp_.is_fn_cell(cell) ? static_cast<int>(n_) : 2;
        for (int v = 0; v < values && !stop_; ++v) {
            interp_.set(cell, v);
            std::vector<std::pair<std::size_t, std::size_t>> saved;  // (cell, old watch size)
            bool ok = true;
            for (std::size_t inst : watch_[cell]) {
                const Tri r = evaluate(inst);
                if (r == Tri::f) {
                    ok = false;
                    break;
                }
                if (r == Tri::u) {
                    const auto b = interp_.blocker();
                    saved.emplace_back(b, watch_[b].size());
                    watch_[b].push_back(inst);
                }
            }
            if (ok) dfs(depth + 1);
            for (auto it = saved.rbegin(); it != saved.rend(); ++it) watch_[it->first].resize(it->second);
        }
        interp_.set(cell, -1);
    }

    void emit_model() {
        FiniteStructure m(sig_, n_);
        for (std::size_t s = 0; s < sig_->functions().size(); ++s) {
            auto& t = m.fn_table_mut(s);
            for (std::size_t i = 0; i < t.size(); ++i) t[i] = interp_.get(interp_.fn_offset(s) + i);
        }
        for (std::size_t s = 0; s < sig_->relations().size(); ++s) {
            auto& t = m.rel_table_mut(s);
            for (std::size_t i = 0; i < t.size(); ++i)
                t[i] = static_cast<std::uint8_t>(interp_.get(interp_.rel_offset(s) + i));
        }
        if (!(*emit_)(m)) stop_ = true;
    }

    std::shared_ptr<const Signature> sig_;
    std::size_t n_;
    PartialInterp interp_;
    std::vector<Axiom> axioms_;
    std::vector<Instance> instances_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> position_;
    std::vector<std::vector<std::size_t>> watch_;
    std::vector<int> env_;
    const std::function<bool(const FiniteStructure&)>* emit_ = nullptr;
    bool stop_ = false;
};

}  // namespace detail

/// Calls `visit` on every structure of cardinality `size` satisfying all
/// axioms of t, in search order. Returns false if `visit` stopped early.
inline bool for_each_model(const Theory& t, std::size_t size, const std::function<bool(const FiniteStructure&)>& visit,
                           std::size_t ceiling = kDefaultSizeCeiling) {
    if (size > ceiling)
        throw ResourceLimit("model size " + std::to_string(size) + " exceeds the ceiling " + std::to_string(ceiling));
    bool completed = true;
    detail::ModelSearch search(t, size);
    search.run([&](const FiniteStructure& m) {
        if (!visit(m)) {
            completed = false;
            return false;
        }
        return true;
    });
    return completed;
}

/// Exactly the structures of the given cardinality satisfying every axiom.
/// With up_to_iso, one canonical representative per isomorphism class,
/// ordered by canonical key.
inline std::vector<FiniteStructure> enumerate_models(const Theory& t, std::size_t size, EnumerationOptions opts = {}) {
    std::vector<FiniteStructure> out;
    if (!opts.up_to_iso) {
        for_each_model(t, size, [&](const FiniteStructure& m) {
            out.push_back(m);
            return true;
        }, opts.ceiling);
        return out;
    }
    std::map<CanonicalKey, FiniteStructure> classes;
    for_each_model(t, size, [&](const FiniteStructure& m) {
        auto form = canonical_form(m);
        if (!classes.contains(form.key)) classes.emplace(form.key, m.relabel(form.relabeling));
        return true;
    }, opts.ceiling);
    for (auto& [k, m] : classes) out.push_back(std::move(m));
    return out;
}

inline std::vector<FiniteStructure> enumerate_models(const Theory& t, std::size_t size, bool up_to_iso) {
    return enumerate_models(t, size, EnumerationOptions{kDefaultSizeCeiling, up_to_iso});
}

}  // namespace geocoord
