#pragma once

// Finite parameter data for the theory generators: groups, fields and
// finite categories with an optional Grothendieck topology.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <tuple>
#include <vector>

namespace geocoord {

/// Raised when parameter tables fail their algebraic axioms.
class InvalidParameters : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::optional<std::size_t> index_of(const std::vector<std::string>& labels, const std::string& l) {
    auto it = std::find(labels.begin(), labels.end(), l);
    if (it == labels.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels.begin());
}

inline void check_table(const std::vector<std::vector<std::size_t>>& t, std::size_t n, const std::string& what) {
    if (t.size() != n) throw InvalidParameters(what + " table has " + std::to_string(t.size()) + " rows, expected " + std::to_string(n));
    for (const auto& row : t) {
        if (row.size() != n) throw InvalidParameters(what + " table row has wrong length");
        for (auto v : row)
            if (v >= n) throw InvalidParameters(what + " table entry out of range");
    }
}

inline void check_labels(const std::vector<std::string>& labels, const std::string& what) {
    if (labels.empty()) throw InvalidParameters(what + " has no elements");
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j)
            if (labels[i] == labels[j]) throw InvalidParameters(what + " element '" + labels[i] + "' listed twice");
}

}  // namespace detail

class FiniteGroup {
public:
    /// `mul[a][b]` is the index of a·b. Validates associativity, identity and
    /// inverses.
    FiniteGroup(std::vector<std::string> labels, std::vector<std::vector<std::size_t>> mul, std::size_t identity)
        : labels_(std::move(labels)), mul_(std::move(mul)), identity_(identity) {
        const auto n = labels_.size();
        detail::check_labels(labels_, "group");
        detail::check_table(mul_, n, "group multiplication");
        if (identity_ >= n) throw InvalidParameters("group identity out of range");
        for (std::size_t a = 0; a < n; ++a) {
            if (mul_[identity_][a] != a || mul_[a][identity_] != a)
                throw InvalidParameters("'" + labels_[identity_] + "' is not a two-sided identity");
            bool has_inverse = false;
            for (std::size_t b = 0; b < n; ++b)
                if (mul_[a][b] == identity_ && mul_[b][a] == identity_) has_inverse = true;
            if (!has_inverse) throw InvalidParameters("element '" + labels_[a] + "' has no inverse");
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]])
                        throw InvalidParameters("multiplication is not associative at (" + labels_[a] + ", " +
                                                labels_[b] + ", " + labels_[c] + ")");
        }
    }

    [[nodiscard]] std::size_t order() const { return labels_.size(); }
    [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
    [[nodiscard]] const std::string& label(std::size_t i) const { return labels_.at(i); }
    [[nodiscard]] std::size_t identity() const { return identity_; }
    [[nodiscard]] std::size_t mul(std::size_t a, std::size_t b) const { return mul_[a][b]; }
    [[nodiscard]] const std::vector<std::vector<std::size_t>>& table() const { return mul_; }

    /// ℤ/n with elements e, g1, ..., g(n-1) where gk is k times the generator.
    static FiniteGroup cyclic(std::size_t n) {
        if (n == 0) throw InvalidParameters("cyclic group of order 0");
        std::vector<std::string> labels{"e"};
        for (std::size_t k = 1; k < n; ++k) labels.push_back("g" + std::to_string(k));
        std::vector<std::vector<std::size_t>> mul(n, std::vector<std::size_t>(n));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) mul[a][b] = (a + b) % n;
        return FiniteGroup(std::move(labels), std::move(mul), 0);
    }

    /// S₃ as r^i s^j with r³ = s² = e and s r = r² s.
    static FiniteGroup symmetric3() {
        // element index = i + 3j for r^i s^j
        std::vector<std::string> labels{"e", "r", "rr", "s", "rs", "rrs"};
        std::vector<std::vector<std::size_t>> mul(6, std::vector<std::size_t>(6));
        for (std::size_t a = 0; a < 6; ++a)
            for (std::size_t b = 0; b < 6; ++b) {
                const std::size_t i1 = a % 3, j1 = a / 3, i2 = b % 3, j2 = b / 3;
                // r^i1 s^j1 r^i2 s^j2 = r^(i1 + (-1)^j1 i2) s^(j1+j2)
                const std::size_t i = j1 == 0 ? (i1 + i2) % 3 : (i1 + 3 - i2) % 3;
                mul[a][b] = i + 3 * ((j1 + j2) % 2);
            }
        return FiniteGroup(std::move(labels), std::move(mul), 0);
    }

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<std::size_t>> mul_;
    std::size_t identity_;
};

class FiniteField {
public:
    /// Validates the field axioms; q being a prime power follows from them.
    FiniteField(std::vector<std::string> labels, std::vector<std::vector<std::size_t>> add,
                std::vector<std::vector<std::size_t>> mul, std::size_t zero, std::size_t one)
        : labels_(std::move(labels)), add_(std::move(add)), mul_(std::move(mul)), zero_(zero), one_(one) {
        const auto q = labels_.size();
        detail::check_labels(labels_, "field");
        detail::check_table(add_, q, "field addition");
        detail::check_table(mul_, q, "field multiplication");
        if (zero_ >= q || one_ >= q) throw InvalidParameters("field zero/one out of range");
        if (zero_ == one_) throw InvalidParameters("field needs 0 != 1");
        for (std::size_t a = 0; a < q; ++a) {
            if (add_[zero_][a] != a) throw InvalidParameters("0 is not an additive identity");
            if (mul_[one_][a] != a) throw InvalidParameters("1 is not a multiplicative identity");
            if (mul_[zero_][a] != zero_) throw InvalidParameters("0 is not absorbing");
            bool neg = false, inv = a == zero_;
            for (std::size_t b = 0; b < q; ++b) {
                if (add_[a][b] != add_[b][a] || mul_[a][b] != mul_[b][a])
                    throw InvalidParameters("field operations are not commutative");
                if (add_[a][b] == zero_) neg = true;
                if (mul_[a][b] == one_) inv = true;
                for (std::size_t c = 0; c < q; ++c) {
                    if (add_[add_[a][b]][c] != add_[a][add_[b][c]] || mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]])
                        throw InvalidParameters("field operations are not associative");
                    if (mul_[a][add_[b][c]] != add_[mul_[a][b]][mul_[a][c]])
                        throw InvalidParameters("multiplication does not distribute over addition");
                }
            }
            if (!neg) throw InvalidParameters("element '" + labels_[a] + "' has no additive inverse");
            if (!inv) throw InvalidParameters("element '" + labels_[a] + "' has no multiplicative inverse");
        }
    }

    [[nodiscard]] std::size_t order() const { return labels_.size(); }
    [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
    [[nodiscard]] const std::string& label(std::size_t i) const { return labels_.at(i); }
    [[nodiscard]] std::size_t zero() const { return zero_; }
    [[nodiscard]] std::size_t one() const { return one_; }
    [[nodiscard]] std::size_t add(std::size_t a, std::size_t b) const { return add_[a][b]; }
    [[nodiscard]] std::size_t mul(std::size_t a, std::size_t b) const { return mul_[a][b]; }
    [[nodiscard]] std::size_t neg(std::size_t a) const {
        for (std::size_t b = 0; b < order(); ++b)
            if (add_[a][b] == zero_) return b;
        return zero_;
    }
    [[nodiscard]] const std::vector<std::vector<std::size_t>>& add_table() const { return add_; }
    [[nodiscard]] const std::vector<std::vector<std::size_t>>& mul_table() const { return mul_; }

    /// 𝔽_p for a prime p, elements labelled 0..p-1.
    static FiniteField prime(std::size_t p) {
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < p; ++i) labels.push_back(std::to_string(i));
        std::vector<std::vector<std::size_t>> add(p, std::vector<std::size_t>(p)), mul = add;
        for (std::size_t a = 0; a < p; ++a)
            for (std::size_t b = 0; b < p; ++b) {
                add[a][b] = (a + b) % p;
                mul[a][b] = (a * b) % p;
            }
        return FiniteField(std::move(labels), std::move(add), std::move(mul), 0, p > 1 ? 1 : 0);
    }

    /// 𝔽_4 = 𝔽_2[t]/(t²+t+1); elements 0, 1, t, t1 (= t+1).
    static FiniteField f4() {
        // bit encoding: bit0 = constant term, bit1 = t
        std::vector<std::string> labels{"0", "1", "t", "t1"};
        std::vector<std::vector<std::size_t>> add(4, std::vector<std::size_t>(4)), mul = add;
        auto times = [](std::size_t a, std::size_t b) {
            // (a0 + a1 t)(b0 + b1 t) with t² = t + 1
            const std::size_t a0 = a & 1, a1 = a >> 1, b0 = b & 1, b1 = b >> 1;
            const std::size_t c2 = a1 & b1;
            const std::size_t c1 = ((a0 & b1) ^ (a1 & b0)) ^ c2;
            const std::size_t c0 = (a0 & b0) ^ c2;
            return c0 | (c1 << 1);
        };
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = 0; b < 4; ++b) {
                add[a][b] = a ^ b;
                mul[a][b] = times(a, b);
            }
        return FiniteField(std::move(labels), std::move(add), std::move(mul), 0, 1);
    }

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<std::size_t>> add_;
    std::vector<std::vector<std::size_t>> mul_;
    std::size_t zero_;
    std::size_t one_;
};

/// A finite category given by objects, named arrows and a composition table,
/// with an optional topology (covering sieves per object).
class FiniteCategory {
public:
    struct Arrow {
        std::string name;
        std::size_t source;
        std::size_t target;
    };
    /// Sieve on `object`: arrow indices with that target.
    struct Sieve {
        std::size_t object;
        std::vector<std::size_t> arrows;
    };

    /// `compose` maps (g, f) with target(f) = source(g) to g∘f, by arrow
    /// name. Identity arrows `id_<object>` and their compositions are added
    /// automatically.
    FiniteCategory(std::vector<std::string> objects, std::vector<std::tuple<std::string, std::string, std::string>> arrows,
                   std::map<std::pair<std::string, std::string>, std::string> compose,
                   std::vector<std::pair<std::string, std::vector<std::string>>> sieves = {})
        : objects_(std::move(objects)) {
        detail::check_labels(objects_, "category");
        for (std::size_t o = 0; o < objects_.size(); ++o) arrows_.push_back({"id_" + objects_[o], o, o});
        for (const auto& [name, src, tgt] : arrows) {
            auto s = detail::index_of(objects_, src);
            auto t = detail::index_of(objects_, tgt);
            if (!s || !t) throw InvalidParameters("arrow '" + name + "' has an unknown endpoint");
            if (find_arrow(name)) throw InvalidParameters("arrow '" + name + "' declared twice");
            arrows_.push_back({name, *s, *t});
        }
        const auto n = arrows_.size();
        comp_.assign(n, std::vector<std::optional<std::size_t>>(n));
        for (std::size_t g = 0; g < n; ++g)
            for (std::size_t f = 0; f < n; ++f) {
                if (arrows_[f].target != arrows_[g].source) continue;
                if (is_identity(g)) comp_[g][f] = f;
                else if (is_identity(f)) comp_[g][f] = g;
            }
        for (const auto& [gf, h] : compose) {
            auto g = find_arrow(gf.first), f = find_arrow(gf.second), hh = find_arrow(h);
            if (!g || !f || !hh) throw InvalidParameters("composition mentions an unknown arrow");
            if (arrows_[*f].target != arrows_[*g].source)
                throw InvalidParameters(gf.first + " and " + gf.second + " are not composable");
            if (arrows_[*hh].source != arrows_[*f].source || arrows_[*hh].target != arrows_[*g].target)
                throw InvalidParameters(gf.first + "∘" + gf.second + " = " + h + " has the wrong type");
            if (comp_[*g][*f] && *comp_[*g][*f] != *hh)
                throw InvalidParameters("composition " + gf.first + "∘" + gf.second + " given twice");
            comp_[*g][*f] = *hh;
        }
        for (std::size_t g = 0; g < n; ++g)
            for (std::size_t f = 0; f < n; ++f)
                if (arrows_[f].target == arrows_[g].source && !comp_[g][f])
                    throw InvalidParameters("missing composition " + arrows_[g].name + "∘" + arrows_[f].name);
        for (std::size_t h = 0; h < n; ++h)
            for (std::size_t g = 0; g < n; ++g)
                for (std::size_t f = 0; f < n; ++f) {
                    if (arrows_[f].target != arrows_[g].source || arrows_[g].target != arrows_[h].source) continue;
                    if (*comp_[h][*comp_[g][f]] != *comp_[*comp_[h][g]][f])
                        throw InvalidParameters("composition is not associative at " + arrows_[h].name + ", " +
                                                arrows_[g].name + ", " + arrows_[f].name);
                }
        for (const auto& [obj, names] : sieves) {
            auto o = detail::index_of(objects_, obj);
            if (!o) throw InvalidParameters("sieve on unknown object '" + obj + "'");
            Sieve s{*o, {}};
            for (const auto& a : names) {
                auto i = find_arrow(a);
                if (!i) throw InvalidParameters("sieve mentions unknown arrow '" + a + "'");
                if (arrows_[*i].target != *o)
                    throw InvalidParameters("sieve arrow '" + a + "' does not end at '" + obj + "'");
                s.arrows.push_back(*i);
            }
            std::sort(s.arrows.begin(), s.arrows.end());
            s.arrows.erase(std::unique(s.arrows.begin(), s.arrows.end()), s.arrows.end());
            for (auto f : s.arrows)
                for (std::size_t h = 0; h < n; ++h)
                    if (arrows_[h].target == arrows_[f].source &&
                        !std::binary_search(s.arrows.begin(), s.arrows.end(), *comp_[f][h]))
                        throw InvalidParameters("sieve on '" + obj + "' is not closed under precomposition");
            sieves_.push_back(std::move(s));
        }
        if (!sieves_.empty()) {
            for (std::size_t o = 0; o < objects_.size(); ++o) {
                auto max = maximal_sieve(o);
                bool found = std::any_of(sieves_.begin(), sieves_.end(),
                                         [&](const Sieve& s) { return s.object == o && s.arrows == max.arrows; });
                if (!found) throw InvalidParameters("the maximal sieve on '" + objects_[o] + "' must cover");
            }
        }
    }

    [[nodiscard]] const std::vector<std::string>& objects() const { return objects_; }
    [[nodiscard]] const std::vector<Arrow>& arrows() const { return arrows_; }
    [[nodiscard]] const Arrow& arrow(std::size_t i) const { return arrows_.at(i); }
    [[nodiscard]] bool is_identity(std::size_t a) const { return a < objects_.size(); }
    [[nodiscard]] std::size_t identity(std::size_t object) const { return object; }
    [[nodiscard]] std::optional<std::size_t> compose(std::size_t g, std::size_t f) const { return comp_[g][f]; }
    [[nodiscard]] std::optional<std::size_t> find_arrow(const std::string& name) const {
        for (std::size_t i = 0; i < arrows_.size(); ++i)
            if (arrows_[i].name == name) return i;
        return std::nullopt;
    }
    [[nodiscard]] bool has_topology() const { return !sieves_.empty(); }

    /// Explicit sieves, or the trivial topology (maximal sieves only).
    [[nodiscard]] std::vector<Sieve> covering_sieves() const {
        if (!sieves_.empty()) return sieves_;
        std::vector<Sieve> out;
        for (std::size_t o = 0; o < objects_.size(); ++o) out.push_back(maximal_sieve(o));
        return out;
    }
    [[nodiscard]] const std::vector<Sieve>& declared_sieves() const { return sieves_; }

    /// Non-identity compositions, for printing.
    [[nodiscard]] std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> explicit_compositions() const {
        std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> out;
        for (std::size_t g = 0; g < arrows_.size(); ++g)
            for (std::size_t f = 0; f < arrows_.size(); ++f)
                if (comp_[g][f] && !is_identity(g) && !is_identity(f)) out.emplace_back(g, f, *comp_[g][f]);
        return out;
    }

    /// One object, its identity only.
    static FiniteCategory point() { return FiniteCategory({"a"}, {}, {}); }

    /// a → b with a single non-identity arrow f.
    static FiniteCategory arrow_category() { return FiniteCategory({"a", "b"}, {{"f", "a", "b"}}, {}); }

    /// Objects p, q with p: p → q, s: q → p, p∘s = id_q and e = s∘p idempotent.
    /// p is not mono: p∘id_p = p∘e with id_p ≠ e.
    static FiniteCategory split_idempotent() {
        return FiniteCategory({"p", "q"}, {{"pr", "p", "q"}, {"sc", "q", "p"}, {"e", "p", "p"}},
                              {{{"pr", "sc"}, "id_q"},
                               {{"sc", "pr"}, "e"},
                               {{"e", "e"}, "e"},
                               {{"pr", "e"}, "pr"},
                               {{"e", "sc"}, "sc"}});
    }

private:
    [[nodiscard]] Sieve maximal_sieve(std::size_t o) const {
        Sieve s{o, {}};
        for (std::size_t a = 0; a < arrows_.size(); ++a)
            if (arrows_[a].target == o) s.arrows.push_back(a);
        return s;
    }

    std::vector<std::string> objects_;
    std::vector<Arrow> arrows_;
    std::vector<std::vector<std::optional<std::size_t>>> comp_;
    std::vector<Sieve> sieves_;
};

struct MonicCheck {
    bool monic = true;
    /// When not monic: f with f∘h = f∘h2 and h ≠ h2.
    std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> violation;
};

/// Every arrow is a monomorphism: f∘h = f∘h′ implies h = h′.
inline MonicCheck check_monic(const FiniteCategory& c) {
    const auto n = c.arrows().size();
    for (std::size_t f = 0; f < n; ++f)
        for (std::size_t h = 0; h < n; ++h)
            for (std::size_t h2 = h + 1; h2 < n; ++h2) {
                const auto& A = c.arrow(h);
                const auto& B = c.arrow(h2);
                if (A.source != B.source || A.target != B.target || A.target != c.arrow(f).source) continue;
                if (c.compose(f, h) == c.compose(f, h2)) return {false, std::make_tuple(f, h, h2)};
            }
    return {};
}

}  // namespace geocoord
