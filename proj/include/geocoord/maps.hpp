#pragma once

// Homomorphism / isomorphism / automorphism search between finite
// structures, and canonical forms for isomorphism-class deduplication.

#include "geocoord/structure.hpp"

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

namespace geocoord {

enum class MapKind { hom, iso, aut };

inline const char* to_string(MapKind k) {
    switch (k) {
    case MapKind::hom: return "hom";
    case MapKind::iso: return "iso";
    case MapKind::aut: return "aut";
    }
    return "?";
}

/// A map between carriers; image[i] is the image of element i.
struct StructureMap {
    MapKind kind = MapKind::hom;
    std::vector<int> image;

    [[nodiscard]] bool is_identity() const {
        for (std::size_t i = 0; i < image.size(); ++i)
            if (image[i] != static_cast<int>(i)) return false;
        return true;
    }
    friend bool operator==(const StructureMap& a, const StructureMap& b) { return a.image == b.image; }
    friend bool operator<(const StructureMap& a, const StructureMap& b) { return a.image < b.image; }
};

/// Element pins: source element ↦ target element.
using Pins = std::vector<std::pair<int, int>>;

/// Preserves every function and relation; with `reflect`, also reflects
/// relations.
inline bool preserves_structure(const FiniteStructure& src, const FiniteStructure& dst, const std::vector<int>& image,
                                bool reflect = false) {
    const auto n = src.size();
    const auto& sig = src.signature();
    std::vector<int> mapped;
    for (std::size_t s = 0; s < sig.functions().size(); ++s) {
        const auto k = sig.functions()[s].arity;
        for (std::size_t i = 0; i < ipow(n, k); ++i) {
            auto args = tuple_at(n, k, i);
            mapped = args;
            for (auto& a : mapped) a = image[a];
            if (image[src.fn(s, args)] != dst.fn(s, mapped)) return false;
        }
    }
    for (std::size_t s = 0; s < sig.relations().size(); ++s) {
        const auto k = sig.relations()[s].arity;
        for (std::size_t i = 0; i < ipow(n, k); ++i) {
            auto args = tuple_at(n, k, i);
            mapped = args;
            for (auto& a : mapped) a = image[a];
            const bool here = src.rel(s, args), there = dst.rel(s, mapped);
            if (here && !there) return false;
            if (reflect && there && !here) return false;
        }
    }
    return true;
}

inline bool is_homomorphism(const FiniteStructure& src, const FiniteStructure& dst, const std::vector<int>& image) {
    if (image.size() != src.size()) return false;
    for (int v : image)
        if (v < 0 || static_cast<std::size_t>(v) >= dst.size()) return false;
    return preserves_structure(src, dst, image);
}

inline bool is_isomorphism(const FiniteStructure& src, const FiniteStructure& dst, const std::vector<int>& image) {
    if (src.size() != dst.size() || !is_homomorphism(src, dst, image)) return false;
    std::vector<int> seen(dst.size(), 0);
    for (int v : image)
        if (seen[static_cast<std::size_t>(v)]++) return false;
    return preserves_structure(src, dst, image, true);
}

namespace detail {

class MapSearch {
public:
    MapSearch(const FiniteStructure& src, const FiniteStructure& dst, MapKind kind)
        : src_(src), dst_(dst), kind_(kind), image_(src.size(), -1), used_(dst.size(), 0) {
        const auto& sig = src.signature();
        for (std::size_t s = 0; s < sig.functions().size(); ++s) {
            const auto k = sig.functions()[s].arity;
            for (std::size_t i = 0; i < ipow(src.size(), k); ++i) fn_cells_.push_back({s, tuple_at(src.size(), k, i)});
        }
        for (std::size_t s = 0; s < sig.relations().size(); ++s) {
            const auto k = sig.relations()[s].arity;
            for (std::size_t i = 0; i < ipow(src.size(), k); ++i) rel_cells_.push_back({s, tuple_at(src.size(), k, i)});
        }
    }

    std::vector<StructureMap> run(const Pins& pins) {
        for (const auto& [a, b] : pins) {
            if (a < 0 || static_cast<std::size_t>(a) >= src_.size() || b < 0 || static_cast<std::size_t>(b) >= dst_.size())
                throw ContractViolation("pin outside carrier");
            if (!assign(a, b)) return {};
        }
        if (propagate()) search();
        std::sort(found_.begin(), found_.end());
        return found_;
    }

private:
    struct Cell {
        std::size_t sym;
        std::vector<int> args;
    };

    [[nodiscard]] bool injective() const { return kind_ != MapKind::hom; }

    bool assign(int i, int v) {
        auto& cur = image_[static_cast<std::size_t>(i)];
        if (cur >= 0) return cur == v;
        if (injective() && used_[static_cast<std::size_t>(v)]) return false;
        cur = v;
        ++used_[static_cast<std::size_t>(v)];
        trail_.push_back(i);
        return true;
    }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            const int i = trail_.back();
            trail_.pop_back();
            --used_[static_cast<std::size_t>(image_[static_cast<std::size_t>(i)])];
            image_[static_cast<std::size_t>(i)] = -1;
        }
    }

    bool mapped(const std::vector<int>& args, std::vector<int>& out) const {
        out.resize(args.size());
        for (std::size_t j = 0; j < args.size(); ++j) {
            out[j] = image_[static_cast<std::size_t>(args[j])];
            if (out[j] < 0) return false;
        }
        return true;
    }

    // Forward checking: a function cell whose arguments are all mapped forces
    // the image of its value; relation cells are checked once fully mapped.
    bool propagate() {
        std::vector<int> m;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& c : fn_cells_) {
                if (!mapped(c.args, m)) continue;
                const int r = src_.fn(c.sym, c.args);
                const int want = dst_.fn(c.sym, m);
                const bool fresh = image_[static_cast<std::size_t>(r)] < 0;
                if (!assign(r, want)) return false;
                changed |= fresh;
            }
        }
        for (const auto& c : rel_cells_) {
            if (!mapped(c.args, m)) continue;
            const bool here = src_.rel(c.sym, c.args), there = dst_.rel(c.sym, m);
            if (here && !there) return false;
            if (injective() && there && !here) return false;
        }
        return true;
    }

    void search() {
        std::size_t i = 0;
        while (i < image_.size() && image_[i] >= 0) ++i;
        if (i == image_.size()) {
            found_.push_back({kind_, image_});
            return;
        }
        for (std::size_t v = 0; v < dst_.size(); ++v) {
            const auto mark = trail_.size();
            if (assign(static_cast<int>(i), static_cast<int>(v)) && propagate()) search();
            undo(mark);
        }
    }

    const FiniteStructure& src_;
    const FiniteStructure& dst_;
    MapKind kind_;
    std::vector<int> image_;
    std::vector<int> used_;
    std::vector<int> trail_;
    std::vector<Cell> fn_cells_;
    std::vector<Cell> rel_cells_;
    std::vector<StructureMap> found_;
};

}  // namespace detail

/// All maps of the given kind extending `pins`, in lexicographic order of
/// their images. `aut` expects src and dst to be the same structure.
inline std::vector<StructureMap> find_maps(const FiniteStructure& src, const FiniteStructure& dst, MapKind kind,
                                           const Pins& pins = {}) {
    if (!(src.signature() == dst.signature()))
        throw ContractViolation("find_maps between structures over different signatures");
    if (kind == MapKind::aut && !(src == dst)) throw ContractViolation("automorphisms need source = target");
    if (kind != MapKind::hom && src.size() != dst.size()) return {};
    if (kind == MapKind::hom && dst.size() == 0 && src.size() > 0) return {};
    return detail::MapSearch(src, dst, kind).run(pins);
}

inline std::vector<StructureMap> automorphisms(const FiniteStructure& m, const Pins& pins = {}) {
    return find_maps(m, m, MapKind::aut, pins);
}

/// Pins fixing each element of `tuple`.
inline Pins fixing(const std::vector<int>& tuple) {
    Pins out;
    for (int e : tuple) out.emplace_back(e, e);
    return out;
}

// ---------------------------------------------------------------------------
// Canonical forms

using CanonicalKey = std::vector<int>;

inline constexpr std::size_t kCanonicalCeiling = 8;

struct CanonicalForm {
    CanonicalKey key;
    std::vector<int> relabeling;  // element i of the input ↦ relabeling[i]
};

/// Lexicographic minimum of the table serialisation over all carrier
/// permutations. Two structures share a key iff they are isomorphic.
inline CanonicalForm canonical_form(const FiniteStructure& m) {
    const auto n = m.size();
    if (n > kCanonicalCeiling)
        throw ResourceLimit("canonical form needs size <= " + std::to_string(kCanonicalCeiling) + ", got " +
                            std::to_string(n));
    const auto& sig = m.signature();
    std::vector<int> perm(n), inv(n);
    std::iota(perm.begin(), perm.end(), 0);
    CanonicalForm best;
    bool have = false;
    std::vector<int> key;
    std::vector<int> args;
    do {
        for (std::size_t i = 0; i < n; ++i) inv[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
        key.clear();
        key.push_back(static_cast<int>(n));
        // -1: already smaller than best, 0: equal so far, 1: larger (abandon)
        int cmp = have ? 0 : -1;
        auto push = [&](int v) {
            if (cmp == 0) {
                const int b = best.key[key.size()];
                if (v > b) {
                    cmp = 1;
                    return;
                }
                if (v < b) cmp = -1;
            }
            key.push_back(v);
        };
        for (std::size_t s = 0; s < sig.functions().size() && cmp < 1; ++s) {
            const auto k = sig.functions()[s].arity;
            for (std::size_t j = 0; j < ipow(n, k) && cmp < 1; ++j) {
                args = tuple_at(n, k, j);
                for (auto& a : args) a = inv[static_cast<std::size_t>(a)];
                push(perm[static_cast<std::size_t>(m.fn(s, args))]);
            }
        }
        for (std::size_t s = 0; s < sig.relations().size() && cmp < 1; ++s) {
            const auto k = sig.relations()[s].arity;
            for (std::size_t j = 0; j < ipow(n, k) && cmp < 1; ++j) {
                args = tuple_at(n, k, j);
                for (auto& a : args) a = inv[static_cast<std::size_t>(a)];
                push(m.rel(s, args) ? 1 : 0);
            }
        }
        if (cmp == -1) {
            best.key = key;
            best.relabeling = perm;
            have = true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

inline CanonicalKey canonical_key(const FiniteStructure& m) { return canonical_form(m).key; }

/// The canonical representative of m's isomorphism class.
inline FiniteStructure canonical_representative(const FiniteStructure& m) {
    return m.relabel(canonical_form(m).relabeling);
}

}  // namespace geocoord
