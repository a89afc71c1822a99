#pragma once

// The line-oriented `.fm` format for finite structures.
//
//   size 3
//   fn g 1
//   0 1
//   1 2
//   2 0
//   end
//   rel R 1
//   2
//   end
//
// A function block lists every argument tuple in lexicographic order
// followed by its value; a relation block lists its member tuples in
// lexicographic order, `()` standing for the empty tuple. `#` starts a
// comment.

#include "geocoord/diagnostics.hpp"
#include "geocoord/structure.hpp"

#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace geocoord {

inline std::string write_fm(const FiniteStructure& m) {
    std::ostringstream out;
    const auto& sig = m.signature();
    const auto n = m.size();
    out << "size " << n << "\n";
    for (std::size_t s = 0; s < sig.functions().size(); ++s) {
        const auto& sym = sig.functions()[s];
        out << "fn " << sym.name << " " << sym.arity << "\n";
        const auto& table = m.fn_table(s);
        for (std::size_t i = 0; i < table.size(); ++i) {
            for (int a : tuple_at(n, sym.arity, i)) out << a << " ";
            out << table[i] << "\n";
        }
        out << "end\n";
    }
    for (std::size_t s = 0; s < sig.relations().size(); ++s) {
        const auto& sym = sig.relations()[s];
        out << "rel " << sym.name << " " << sym.arity << "\n";
        for (const auto& t : m.tuples(s)) {
            if (t.empty()) {
                out << "()\n";
                continue;
            }
            for (std::size_t j = 0; j < t.size(); ++j) out << (j ? " " : "") << t[j];
            out << "\n";
        }
        out << "end\n";
    }
    return out.str();
}

namespace detail {

class FmReader {
public:
    explicit FmReader(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        std::size_t no = 0;
        while (std::getline(in, line)) {
            ++no;
            if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
            std::istringstream words(line);
            std::vector<Word> ws;
            std::string w;
            while (words >> w) {
                const auto col = line.find(w, ws.empty() ? 0 : ws.back().column - 1 + ws.back().text.size()) + 1;
                ws.push_back({w, col});
            }
            if (!ws.empty()) lines_.push_back({no, std::move(ws)});
        }
    }

    FiniteStructure read() {
        if (lines_.empty()) throw SyntaxError("expected 'size N'", 1, 1);
        const auto& head = lines_[0];
        if (head.words.size() != 2 || head.words[0].text != "size") fail(head, 0, "expected 'size N'");
        const auto n = static_cast<std::size_t>(number(head, 1));

        struct FnBlock {
            std::string name;
            std::size_t arity;
            std::vector<std::pair<std::vector<int>, int>> rows;
            const Line* at;
        };
        struct RelBlock {
            std::string name;
            std::size_t arity;
            std::vector<std::vector<int>> rows;
            const Line* at;
        };
        std::vector<FnBlock> fns;
        std::vector<RelBlock> rels;
        auto sig = std::make_shared<Signature>();

        std::size_t i = 1;
        while (i < lines_.size()) {
            const auto& h = lines_[i];
            const auto& kw = h.words[0].text;
            if ((kw != "fn" && kw != "rel") || h.words.size() != 3) fail(h, 0, "expected 'fn NAME ARITY' or 'rel NAME ARITY'");
            const auto name = h.words[1].text;
            const auto arity = static_cast<std::size_t>(number(h, 2));
            if (sig->declares(name)) fail(h, 1, "symbol '" + name + "' declared twice");
            if (kw == "fn") {
                sig->add_function(name, arity);
                fns.push_back({name, arity, {}, &h});
            } else {
                sig->add_relation(name, arity);
                rels.push_back({name, arity, {}, &h});
            }
            ++i;
            bool closed = false;
            for (; i < lines_.size(); ++i) {
                const auto& row = lines_[i];
                if (row.words.size() == 1 && row.words[0].text == "end") {
                    closed = true;
                    ++i;
                    break;
                }
                if (kw == "fn") {
                    if (row.words.size() != arity + 1) fail(row, 0, "expected " + std::to_string(arity + 1) + " numbers");
                    std::vector<int> args;
                    for (std::size_t j = 0; j < arity; ++j) args.push_back(element(row, j, n));
                    fns.back().rows.emplace_back(std::move(args), element(row, arity, n));
                } else if (arity == 0) {
                    if (row.words.size() != 1 || row.words[0].text != "()") fail(row, 0, "expected '()'");
                    rels.back().rows.push_back({});
                } else {
                    if (row.words.size() != arity) fail(row, 0, "expected " + std::to_string(arity) + " numbers");
                    std::vector<int> args;
                    for (std::size_t j = 0; j < arity; ++j) args.push_back(element(row, j, n));
                    rels.back().rows.push_back(std::move(args));
                }
            }
            if (!closed) fail(h, 0, "block '" + name + "' has no 'end'");
        }

        FiniteStructure m(sig, n);
        for (std::size_t s = 0; s < fns.size(); ++s) {
            const auto& b = fns[s];
            if (b.rows.size() != ipow(n, b.arity))
                fail(*b.at, 1, "function '" + b.name + "' needs " + std::to_string(ipow(n, b.arity)) + " rows");
            for (std::size_t r = 0; r < b.rows.size(); ++r) {
                if (tuple_index(n, b.rows[r].first) != r)
                    fail(*b.at, 1, "function '" + b.name + "' rows out of lexicographic order");
                m.set_fn(s, b.rows[r].first, b.rows[r].second);
            }
        }
        for (std::size_t s = 0; s < rels.size(); ++s) {
            const auto& b = rels[s];
            for (std::size_t r = 0; r < b.rows.size(); ++r) {
                if (r > 0 && !(b.rows[r - 1] < b.rows[r]))
                    fail(*b.at, 1, "relation '" + b.name + "' tuples out of order or repeated");
                m.set_rel(s, b.rows[r], true);
            }
        }
        return m;
    }

private:
    struct Word {
        std::string text;
        std::size_t column;
    };
    struct Line {
        std::size_t number;
        std::vector<Word> words;
    };

    [[noreturn]] static void fail(const Line& l, std::size_t word, const std::string& msg) {
        const auto col = word < l.words.size() ? l.words[word].column : 1;
        throw SyntaxError(msg, l.number, col);
    }

    static long number(const Line& l, std::size_t word) {
        const auto& w = l.words[word].text;
        std::size_t used = 0;
        long v = -1;
        try {
            v = std::stol(w, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != w.size() || v < 0) fail(l, word, "expected a natural number, got '" + w + "'");
        return v;
    }

    static int element(const Line& l, std::size_t word, std::size_t n) {
        const long v = number(l, word);
        if (static_cast<std::size_t>(v) >= n)
            fail(l, word, "element " + std::to_string(v) + " outside carrier of size " + std::to_string(n));
        return static_cast<int>(v);
    }

    std::vector<Line> lines_;
};

}  // namespace detail

/// Parses a `.fm` document. With `sig`, the structure is re-indexed to that
/// signature, which must list exactly the symbols of the file.
inline FiniteStructure read_fm(const std::string& text, std::shared_ptr<const Signature> sig = nullptr) {
    auto m = detail::FmReader(text).read();
    if (!sig) return m;
    const auto& own = m.signature();
    if (own.functions().size() != sig->functions().size() || own.relations().size() != sig->relations().size())
        throw ContractViolation("structure symbols differ from the theory signature");
    return m.reindexed(std::move(sig));
}

}  // namespace geocoord
