#pragma once

// Seeded random terms and formulae over a fixed small signature:
// f/1, g/2, c/0 and relations R/1, S/2.

#include "geocoord/logic.hpp"

#include <memory>
#include <random>
#include <string>
#include <vector>

namespace randf {

using geocoord::Formula;
using geocoord::Term;

inline std::shared_ptr<geocoord::Signature> signature() {
    auto sig = std::make_shared<geocoord::Signature>();
    sig->add_function("f", 1);
    sig->add_function("g", 2);
    sig->add_function("c", 0);
    sig->add_relation("R", 1);
    sig->add_relation("S", 2);
    return sig;
}

inline const std::vector<std::string>& variables() {
    static const std::vector<std::string> vs{"x", "y", "z", "w"};
    return vs;
}

class Generator {
public:
    explicit Generator(std::uint64_t seed) : rng_(seed) {}

    std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
    const std::string& variable() { return variables()[pick(variables().size())]; }

    Term term(int depth) {
        const auto k = depth <= 0 ? pick(2) : pick(4);
        switch (k) {
        case 0: return Term::var(variable());
        case 1: return Term::app("c");
        case 2: return Term::app("f", {term(depth - 1)});
        default: return Term::app("g", {term(depth - 1), term(depth - 1)});
        }
    }

    Formula formula(int depth) {
        const auto k = depth <= 0 ? pick(5) : pick(8);
        switch (k) {
        case 0: return pick(4) == 0 ? Formula::bot() : Formula::top();
        case 1:
        case 2: return Formula::eq(term(1), term(1));
        case 3: return Formula::rel("R", {term(1)});
        case 4: return Formula::rel("S", {term(1), term(1)});
        case 5: return formula(depth - 1) && formula(depth - 1);
        case 6: return formula(depth - 1) || formula(depth - 1);
        default: {
            std::vector<std::string> vs{variable()};
            if (pick(3) == 0) {
                auto v2 = variable();
                if (v2 != vs.front()) vs.push_back(v2);
            }
            return Formula::exists(vs, formula(depth - 1));
        }
        }
    }

    /// A binding of a random subset of the variables to random terms.
    geocoord::Binding binding() {
        geocoord::Binding b;
        for (const auto& v : variables())
            if (pick(2) == 0) b.emplace(v, term(1));
        return b;
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace randf
