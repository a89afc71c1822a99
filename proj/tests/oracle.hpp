#pragma once

// Reference implementations for tests. Each is written directly from the
// definitions and shares no code with the library beyond its data types.

#include "geocoord/logic.hpp"
#include "geocoord/params.hpp"
#include "geocoord/structure.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using geocoord::Assignment;
using geocoord::FiniteStructure;
using geocoord::Formula;
using geocoord::Term;

inline std::set<std::string> naive_free_vars(const Term& t) {
    if (t.is_var()) return {t.name()};
    std::set<std::string> out;
    for (const auto& a : t.args()) out.merge(naive_free_vars(a));
    return out;
}

inline std::set<std::string> naive_free_vars(const Formula& f) {
    using K = Formula::Kind;
    std::set<std::string> out;
    switch (f.kind()) {
    case K::truth:
    case K::falsity: break;
    case K::equality:
    case K::relation:
    case K::param_relation:
        for (const auto& t : f.terms()) out.merge(naive_free_vars(t));
        break;
    case K::conjunction:
    case K::disjunction:
        for (const auto& c : f.children()) out.merge(naive_free_vars(c));
        break;
    case K::family:
        for (const auto& l : f.family().domain().size_bound(64)) out.merge(naive_free_vars(f.family().instance(l)));
        break;
    case K::exists:
        out = naive_free_vars(f.body());
        for (const auto& v : f.bound()) out.erase(v);
        break;
    }
    return out;
}

inline int term_value(const FiniteStructure& m, const Term& t, const Assignment& a) {
    if (t.is_var()) return a.at(t.name());
    std::vector<int> args;
    for (const auto& s : t.args()) args.push_back(term_value(m, s, a));
    return m.fn(t.name(), args);
}

/// Tarskian satisfaction by recursion on the formula, trying every value
/// for each existential variable.
inline bool satisfies(const FiniteStructure& m, const Formula& f, const Assignment& a) {
    using K = Formula::Kind;
    switch (f.kind()) {
    case K::truth: return true;
    case K::falsity: return false;
    case K::equality: return term_value(m, f.terms()[0], a) == term_value(m, f.terms()[1], a);
    case K::relation: {
        std::vector<int> args;
        for (const auto& t : f.terms()) args.push_back(term_value(m, t, a));
        return m.rel(f.name(), args);
    }
    case K::param_relation: throw std::logic_error("uninstantiated parameter");
    case K::conjunction:
        for (const auto& c : f.children())
            if (!satisfies(m, c, a)) return false;
        return true;
    case K::disjunction:
        for (const auto& c : f.children())
            if (satisfies(m, c, a)) return true;
        return false;
    case K::family:
        for (const auto& l : f.family().domain().size_bound(m.size()))
            if (satisfies(m, f.family().instance(l), a)) return true;
        return false;
    case K::exists: {
        const auto& vs = f.bound();
        std::vector<int> vals(vs.size(), 0);
        const auto n = static_cast<int>(m.size());
        if (n == 0) return false;
        while (true) {
            Assignment b = a;
            for (std::size_t i = 0; i < vs.size(); ++i) b[vs[i]] = vals[i];
            if (satisfies(m, f.body(), b)) return true;
            std::size_t i = 0;
            while (i < vals.size() && ++vals[i] == n) vals[i++] = 0;
            if (i == vals.size()) return false;
        }
    }
    }
    return false;
}

/// Every assignment of {0..n-1} to `vars`, in lexicographic order.
inline std::vector<Assignment> assignments(const std::vector<std::string>& vars, std::size_t n) {
    std::vector<Assignment> out;
    if (n == 0 && !vars.empty()) return out;
    std::vector<int> vals(vars.size(), 0);
    while (true) {
        Assignment a;
        for (std::size_t i = 0; i < vars.size(); ++i) a[vars[i]] = vals[i];
        out.push_back(std::move(a));
        std::size_t i = vars.size();
        while (i > 0 && ++vals[i - 1] == static_cast<int>(n)) vals[--i] = 0;
        if (i == 0) return out;
    }
}

inline bool preserves(const FiniteStructure& a, const FiniteStructure& b, const std::vector<int>& h, bool reflect) {
    const auto& sig = a.signature();
    for (const auto& s : sig.functions()) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < s.arity; ++i) names.push_back("a" + std::to_string(i));
        for (const auto& asg : assignments(names, a.size())) {
            std::vector<int> args, img;
            for (const auto& nm : names) {
                args.push_back(asg.at(nm));
                img.push_back(h[static_cast<std::size_t>(asg.at(nm))]);
            }
            if (h[static_cast<std::size_t>(a.fn(s.name, args))] != b.fn(s.name, img)) return false;
        }
    }
    for (const auto& s : sig.relations()) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < s.arity; ++i) names.push_back("a" + std::to_string(i));
        for (const auto& asg : assignments(names, a.size())) {
            std::vector<int> args, img;
            for (const auto& nm : names) {
                args.push_back(asg.at(nm));
                img.push_back(h[static_cast<std::size_t>(asg.at(nm))]);
            }
            const bool src = a.rel(s.name, args);
            const bool dst = b.rel(s.name, img);
            if (src && !dst) return false;
            if (reflect && dst && !src) return false;
        }
    }
    return true;
}

/// All automorphisms, by trying every permutation.
inline std::vector<std::vector<int>> automorphisms(const FiniteStructure& m) {
    std::vector<int> p(m.size());
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        if (preserves(m, m, p, true)) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

/// All homomorphisms a → b extending `pins`, by trying every function.
inline std::vector<std::vector<int>> homomorphisms(const FiniteStructure& a, const FiniteStructure& b,
                                                   const std::vector<std::pair<int, int>>& pins = {}) {
    std::vector<std::vector<int>> out;
    if (b.size() == 0) {
        if (a.size() == 0) out.push_back({});
        return out;
    }
    std::vector<int> h(a.size(), 0);
    while (true) {
        bool pinned = true;
        for (const auto& [x, y] : pins) pinned = pinned && h[static_cast<std::size_t>(x)] == y;
        if (pinned && preserves(a, b, h, false)) out.push_back(h);
        std::size_t i = 0;
        while (i < h.size() && ++h[i] == static_cast<int>(b.size())) h[i++] = 0;
        if (i == h.size()) return out;
    }
}

inline std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

/// |GL_n(F_q)| = Π_{i<n} (q^n − q^i), which also counts ordered bases of F_q^n.
inline std::size_t gl_order(std::size_t q, std::size_t n) {
    std::size_t qn = 1;
    for (std::size_t i = 0; i < n; ++i) qn *= q;
    std::size_t out = 1, qi = 1;
    for (std::size_t i = 0; i < n; ++i) {
        out *= qn - qi;
        qi *= q;
    }
    return out;
}

/// Ordered bases of F_q^n for prime q, counted by brute force over vector
/// tuples with vectors as base-q digit strings.
inline std::size_t ordered_bases(std::size_t q, std::size_t n) {
    std::size_t qn = 1;
    for (std::size_t i = 0; i < n; ++i) qn *= q;
    auto digit = [&](std::size_t v, std::size_t i) {
        for (std::size_t k = 0; k < i; ++k) v /= q;
        return v % q;
    };
    auto combination = [&](const std::vector<std::size_t>& vs, const std::vector<std::size_t>& coeffs) {
        std::size_t out = 0, place = 1;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t d = 0;
            for (std::size_t j = 0; j < vs.size(); ++j) d += coeffs[j] * digit(vs[j], i);
            out += (d % q) * place;
            place *= q;
        }
        return out;
    };
    std::size_t count = 0;
    std::vector<std::size_t> vs(n, 0);
    while (true) {
        // independent iff only the zero combination vanishes
        bool independent = true;
        std::vector<std::size_t> c(n, 0);
        while (true) {
            std::size_t i = 0;
            while (i < n && ++c[i] == q) c[i++] = 0;
            if (i == n) break;
            if (combination(vs, c) == 0) {
                independent = false;
                break;
            }
        }
        if (independent) ++count;
        std::size_t i = 0;
        while (i < n && ++vs[i] == qn) vs[i++] = 0;
        if (i == n) return count;
    }
}

/// The labelled torsor structures on {0..|G|-1}: x ↦ φ(h) is sent by g to
/// φ(gh), one structure per bijection φ, deduplicated.
inline std::size_t labelled_torsors(const geocoord::FiniteGroup& g) {
    const auto n = g.order();
    std::vector<int> phi(n);
    std::iota(phi.begin(), phi.end(), 0);
    std::set<std::vector<int>> seen;
    do {
        std::vector<int> tables;
        for (std::size_t a = 0; a < n; ++a) {
            std::vector<int> row(n);
            for (std::size_t h = 0; h < n; ++h) row[static_cast<std::size_t>(phi[h])] = phi[g.mul(a, h)];
            tables.insert(tables.end(), row.begin(), row.end());
        }
        seen.insert(tables);
    } while (std::next_permutation(phi.begin(), phi.end()));
    return seen.size();
}

/// Torsor structures counted by brute force over all interpretations of the
/// |G| unary symbols at size n, checking the torsor conditions directly.
inline std::size_t brute_torsors(const geocoord::FiniteGroup& g, std::size_t n) {
    const auto k = g.order();
    std::size_t per = 1;
    for (std::size_t i = 0; i < n; ++i) per *= n;
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= per;
    std::size_t count = 0;
    std::vector<std::vector<int>> act(k, std::vector<int>(n));
    for (std::size_t code = 0; code < total; ++code) {
        auto c = code;
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t x = 0; x < n; ++x) {
                act[a][x] = static_cast<int>(c % n);
                c /= n;
            }
        bool ok = n > 0;
        for (std::size_t x = 0; x < n && ok; ++x) {
            ok = act[g.identity()][x] == static_cast<int>(x);
            for (std::size_t a = 0; a < k && ok; ++a) {
                if (a != g.identity() && act[a][x] == static_cast<int>(x)) ok = false;
                for (std::size_t b = 0; b < k && ok; ++b)
                    ok = act[a][static_cast<std::size_t>(act[b][x])] == act[g.mul(a, b)][x];
            }
            for (std::size_t y = 0; y < n && ok; ++y) {
                bool reach = false;
                for (std::size_t a = 0; a < k; ++a) reach = reach || act[a][x] == static_cast<int>(y);
                ok = reach;
            }
        }
        if (ok) ++count;
    }
    return count;
}

/// A structure with uniformly random tables.
inline FiniteStructure random_structure(std::shared_ptr<const geocoord::Signature> sig, std::size_t n,
                                        std::mt19937_64& rng) {
    FiniteStructure m(sig, n);
    if (n == 0) return m;
    for (std::size_t s = 0; s < sig->functions().size(); ++s) {
        const auto k = sig->functions()[s].arity;
        for (std::size_t i = 0; i < geocoord::ipow(n, k); ++i)
            m.set_fn(s, geocoord::tuple_at(n, k, i), static_cast<int>(rng() % n));
    }
    for (std::size_t s = 0; s < sig->relations().size(); ++s) {
        const auto k = sig->relations()[s].arity;
        for (std::size_t i = 0; i < geocoord::ipow(n, k); ++i) m.set_rel(s, geocoord::tuple_at(n, k, i), rng() % 2 == 0);
    }
    return m;
}

}  // namespace oracle
