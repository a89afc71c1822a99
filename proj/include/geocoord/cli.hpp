#pragma once

// The geocoord command line: validate, models, check, extend, morleyize, gen.
//
// Exit status: 0 success or pass, 1 check failure or failed extension,
// 2 usage, syntax or validation error, 3 size ceiling exceeded or verdict
// inconclusive.

#include "geocoord/checkers.hpp"
#include "geocoord/diagnostics.hpp"
#include "geocoord/fm.hpp"
#include "geocoord/library.hpp"
#include "geocoord/morleyize.hpp"
#include "geocoord/mutants.hpp"
#include "geocoord/report.hpp"
#include "geocoord/syntax.hpp"

#include "CLI11.hpp"

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace geocoord::cli {

enum Exit { ok = 0, check_failed = 1, usage = 2, resource = 3 };

inline constexpr std::size_t kDefaultHardCap = kDefaultSizeCeiling;
inline constexpr const char* kHardCapVariable = "GEOCOORD_MAX_SIZE";

/// The size hard cap: GEOCOORD_MAX_SIZE if set to a natural number, else 6.
inline std::size_t hard_cap() {
    if (const char* v = std::getenv(kHardCapVariable)) {
        try {
            std::size_t used = 0;
            const auto n = std::stoul(v, &used);
            if (used == std::string(v).size()) return n;
        } catch (const std::exception&) {
        }
    }
    return kDefaultHardCap;
}

/// A user-facing error with its exit status.
class Failure : public std::runtime_error {
public:
    Failure(Exit code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    [[nodiscard]] Exit code() const { return code_; }

private:
    Exit code_;
};

namespace detail {

struct Io {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
};

inline std::string slurp(const std::string& path, Io& io) {
    if (path == "-") {
        std::ostringstream s;
        s << io.in.rdbuf();
        return s.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Failure(usage, path + ": cannot open");
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

inline void spit(const std::string& path, const std::string& text) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Failure(usage, path + ": cannot write");
    f << text;
}

inline std::string display_name(const std::string& path) { return path == "-" ? "<stdin>" : path; }

/// Parses and validates; syntax and validation problems exit 2.
inline TheoryDocument load(const std::string& path, Io& io) {
    const auto text = slurp(path, io);
    TheoryDocument doc;
    try {
        doc = parse_theory(text);
    } catch (const SyntaxError& e) {
        throw Failure(usage, display_name(path) + ":" + e.what());
    }
    if (!doc.report.ok()) {
        std::string msg = display_name(path) + ": " + std::to_string(doc.report.issues.size()) + " validation issue(s)";
        for (const auto& i : doc.report.issues) msg += "\n  " + i.where + ": " + i.message;
        throw Failure(usage, msg);
    }
    return doc;
}

inline const WitnessScheme& pick_witness(const TheoryDocument& doc, const std::string& name) {
    if (name.empty()) {
        if (doc.witnesses.size() == 1) return doc.witnesses.front();
        throw Failure(usage, doc.witnesses.empty() ? "the theory has no witness block"
                                                   : "several witness blocks; choose one with --witness");
    }
    const auto* w = doc.witness(name);
    if (!w) throw Failure(usage, "no witness block named '" + name + "'");
    return *w;
}

inline void check_size(std::size_t n) {
    const auto cap = hard_cap();
    if (n > cap)
        throw Failure(resource, "size " + std::to_string(n) + " exceeds the hard cap " + std::to_string(cap) + " (" +
                                    kHardCapVariable + ")");
}

inline FiniteStructure load_structure(const std::string& path, const TheoryDocument& doc, Io& io) {
    try {
        return read_fm(slurp(path, io), std::make_shared<Signature>(doc.theory.signature));
    } catch (const SyntaxError& e) {
        throw Failure(usage, display_name(path) + ":" + e.what());
    } catch (const ContractViolation& e) {
        throw Failure(usage, display_name(path) + ": " + e.what());
    }
}

inline std::vector<int> parse_tuple(const std::string& s) {
    std::vector<int> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size() || v < 0) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw Failure(usage, "bad element '" + item + "' in pin");
        }
    }
    return out;
}

inline std::string file_stem(const std::string& s) {
    std::string out;
    for (char c : s) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    return out;
}

struct CheckArgs {
    std::string kind;
    std::string path;
    std::string witness;
    std::size_t max = 4;
    std::string format = "text";
    std::string cex_dir = "geocoord-cex";
    std::vector<std::string> models;
    std::uint64_t seed = 0;
    std::size_t mutants = 0;
    std::size_t coord_cap = 0;
};

inline CheckReport run_check(const std::string& kind, const Theory& t, const WitnessScheme& w, std::size_t max,
                             const CheckOptions& opts) {
    if (kind == "inhabited") return check_inhabited(t, w, max, opts);
    if (kind == "ucoord") return check_ucoord(t, w, max, opts);
    if (kind == "urigid") return check_urigid(t, w, max, opts);
    if (kind == "coord") return check_coord(t, w, max, opts);
    if (kind == "bound") return check_cardinality_bound(t, w, max, opts);
    return implication_audit(t, w, max, opts);
}

/// Audits `count` seeded mutants of the witness scheme; violations become
/// findings.
inline CheckReport mutant_audit(const Theory& t, const WitnessScheme& w, std::size_t max, const CheckOptions& opts,
                                std::size_t count, std::uint64_t seed) {
    CheckReport out;
    out.check = "audit";
    std::mt19937_64 rng(seed);
    std::size_t vacuous = 0;
    for (std::size_t i = 0; i < count; ++i) {
        auto m = mutate(t, w, rng, false);
        auto r = implication_audit(m.theory, m.witness, max, opts);
        if (i == 0) out.stats = r.stats;
        if (r.parts[0].verdict != Verdict::pass) ++vacuous;
        out.warnings.push_back("mutant " + std::to_string(i + 1) + " (" + m.description + "): ucoord " +
                               to_string(r.parts[0].verdict) + ", urigid " + to_string(r.parts[1].verdict));
        for (auto& f : r.findings) {
            f.message = "mutant " + std::to_string(i + 1) + ": " + f.message;
            out.findings.push_back(std::move(f));
        }
        if (r.verdict == Verdict::inconclusive && out.verdict == Verdict::pass) out.verdict = Verdict::inconclusive;
    }
    if (!out.findings.empty()) out.verdict = Verdict::fail;
    out.warnings.push_back(std::to_string(vacuous) + " of " + std::to_string(count) + " mutants fail ucoord");
    return out;
}

inline int cmd_check(const CheckArgs& a, Io& io) {
    check_size(a.max);
    const auto doc = load(a.path, io);
    const auto& w = pick_witness(doc, a.witness);
    CheckOptions opts;
    opts.ceiling = hard_cap();
    opts.coord_tuple_cap = a.coord_cap;
    ModelSet models;
    std::size_t max = a.max;
    if (!a.models.empty()) {
        std::vector<FiniteStructure> ms;
        for (const auto& p : a.models) ms.push_back(load_structure(p, doc, io));
        max = 0;
        for (const auto& m : ms) {
            if (!is_model(m, doc.theory))
                throw Failure(usage, "a structure given with --model is not a model of " + doc.theory.name);
            max = std::max(max, m.size());
        }
        models = ModelSet::of(std::move(ms), doc.theory);
    } else {
        models = ModelSet::enumerate(doc.theory, max, opts.ceiling);
    }
    opts.models = &models;

    auto report = a.mutants > 0 && a.kind == "audit" ? mutant_audit(doc.theory, w, max, opts, a.mutants, a.seed)
                                                     : run_check(a.kind, doc.theory, w, max, opts);
    ReportContext ctx{doc.theory.name, w.name, a.seed, {}};
    for (std::size_t i = 0; i < report.findings.size(); ++i) {
        const auto& f = report.findings[i];
        if (!f.model) {
            ctx.model_files.emplace_back();
            continue;
        }
        const auto file = (std::filesystem::path(a.cex_dir) /
                           (report.check + "-" + std::to_string(i + 1) + "-" + file_stem(f.sequent_id) + ".fm"))
                              .generic_string();
        spit(file, "# " + f.sequent_id + ": " + f.message + "\n" + write_fm(*f.model));
        ctx.model_files.push_back(file);
    }
    if (a.format == "json") io.out << report_json(report, ctx).dump(2) << "\n";
    else io.out << report_text(report, ctx);
    switch (report.verdict) {
    case Verdict::pass: return ok;
    case Verdict::fail: return check_failed;
    case Verdict::inconclusive: return resource;
    }
    return ok;
}

inline int cmd_validate(const std::string& path, Io& io) {
    const auto doc = load(path, io);
    io.out << display_name(path) << ": ok (" << doc.theory.signature.functions().size() << " function(s), "
           << doc.theory.signature.relations().size() << " relation(s), " << doc.theory.axioms.size() << " axiom(s), "
           << doc.witnesses.size() << " witness block(s))\n";
    return ok;
}

inline int cmd_models(const std::string& path, std::size_t size, bool iso, const std::string& out_dir, Io& io) {
    check_size(size);
    const auto doc = load(path, io);
    const auto ms = enumerate_models(doc.theory, size, EnumerationOptions{hard_cap(), iso});
    io.out << "# " << ms.size() << (iso ? " isomorphism class(es)" : " model(s)") << " of size " << size << "\n";
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const auto text = write_fm(ms[i]);
        if (out_dir.empty()) {
            io.out << "# model " << i + 1 << "\n" << text;
        } else {
            const auto file = (std::filesystem::path(out_dir) /
                               ("model-" + std::to_string(size) + "-" + std::to_string(i + 1) + ".fm"))
                                  .generic_string();
            spit(file, text);
            io.out << file << "\n";
        }
    }
    return ok;
}

inline int cmd_extend(const std::string& path, const std::string& witness, const std::string& tag,
                      const std::string& source, const std::string& target, const std::string& pin, Io& io) {
    const auto doc = load(path, io);
    const auto& w = pick_witness(doc, witness);
    const auto M = load_structure(source, doc, io);
    const auto N = load_structure(target, doc, io);
    const auto eq = pin.find('=');
    if (eq == std::string::npos) throw Failure(usage, "--pin expects m1,m2,..=n1,n2,..");
    const auto mbar = parse_tuple(pin.substr(0, eq));
    const auto nbar = parse_tuple(pin.substr(eq + 1));
    for (int v : mbar)
        if (static_cast<std::size_t>(v) >= M.size()) throw Failure(usage, "pin element outside the source carrier");
    for (int v : nbar)
        if (static_cast<std::size_t>(v) >= N.size()) throw Failure(usage, "pin element outside the target carrier");
    std::string psi = tag;
    if (psi.empty()) {
        if (w.psis.size() != 1) throw Failure(usage, "several psi formulae; choose one with --tag");
        psi = w.psis.front().tag;
    }
    try {
        const auto map = extend_witness_map(M, N, w, psi, mbar, nbar);
        io.out << "# " << to_string(map.kind) << "\n";
        for (std::size_t i = 0; i < map.image.size(); ++i) io.out << i << " " << map.image[i] << "\n";
        return ok;
    } catch (const ExtensionError& e) {
        io.err << "extension failed at " << e.what() << "\n";
        return check_failed;
    }
}

inline int cmd_morleyize(const std::string& path, const std::vector<std::string>& targets, const std::string& name,
                         Io& io) {
    const auto doc = load(path, io);
    std::vector<MorleyTarget> ts;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        Formula f = Formula::top();
        try {
            f = parse_formula(targets[i], doc);
        } catch (const SyntaxError& e) {
            throw Failure(usage, "--target " + std::to_string(i + 1) + ":" + e.what());
        }
        ts.push_back({f, std::nullopt, targets.size() == 1 ? name : (name.empty() ? "" : name + std::to_string(i))});
    }
    auto out = doc;
    out.theory = morleyize(doc.theory, ts);
    io.out << print_theory(out);
    return ok;
}

/// A preset name, or PATH[:TABLE] naming a table in a `.geo` file.
template <typename T>
T load_parameter(const std::string& spec, std::optional<T> (*preset)(const std::string&), const char* what, Io& io) {
    if (auto p = preset(spec)) return *p;
    std::string path = spec;
    std::string table;
    if (const auto colon = spec.rfind(':'); colon != std::string::npos && colon > 1) {
        path = spec.substr(0, colon);
        table = spec.substr(colon + 1);
    }
    TheoryDocument doc;
    try {
        doc = parse_theory(slurp(path, io));
    } catch (const SyntaxError& e) {
        throw Failure(usage, display_name(path) + ":" + e.what());
    }
    for (const auto& [n, t] : doc.tables)
        if ((table.empty() || n == table) && std::holds_alternative<T>(t)) return std::get<T>(t);
    throw Failure(usage, "no " + std::string(what) + " table" + (table.empty() ? "" : " named '" + table + "'") +
                             " in " + display_name(path));
}

inline int cmd_gen(const std::string& family, const std::string& param, std::size_t dmax, const std::string& output,
                   Io& io) {
    GeneratedTheory g;
    if (family == "torsor") g = gen_torsor(load_parameter<FiniteGroup>(param, group_preset, "group", io));
    else if (family == "vect") g = gen_vect(load_parameter<FiniteField>(param, field_preset, "field", io), dmax);
    else g = gen_flat_monic(load_parameter<FiniteCategory>(param, category_preset, "category", io));
    const auto text = g.document().text;
    if (output.empty() || output == "-") io.out << text;
    else spit(output, text);
    return ok;
}

}  // namespace detail

/// Runs one invocation; never throws.
inline int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
    detail::Io io{in, out, err};
    CLI::App app{"Geometric theories, finite models and co-ordinatisation checks", "geocoord"};
    app.require_subcommand(1);

    std::string path;

    auto* validate = app.add_subcommand("validate", "Parse and validate a .geo document");
    validate->add_option("theory", path, "Theory file, - for stdin")->required();

    std::size_t size = 0;
    bool iso = false;
    std::string out_dir;
    auto* models = app.add_subcommand("models", "Enumerate the models of one cardinality");
    models->add_option("theory", path, "Theory file, - for stdin")->required();
    models->add_option("--size", size, "Cardinality")->required();
    models->add_flag("--iso", iso, "One representative per isomorphism class");
    models->add_option("--out", out_dir, "Write each model to a .fm file in this directory");

    detail::CheckArgs ca;
    auto* check = app.add_subcommand("check", "Run a checker over all models up to a size");
    check->add_option("kind", ca.kind, "inhabited, ucoord, urigid, coord, bound or audit")
        ->required()
        ->check(CLI::IsMember({"inhabited", "ucoord", "urigid", "coord", "bound", "audit"}));
    check->add_option("theory", ca.path, "Theory file, - for stdin")->required();
    check->add_option("--witness", ca.witness, "Witness block (default: the only one)");
    check->add_option("--max", ca.max, "Largest model size")->capture_default_str();
    check->add_option("--format", ca.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    check->add_option("--cex-dir", ca.cex_dir, "Directory for counterexample .fm files")->capture_default_str();
    check->add_option("--model", ca.models, "Check only these .fm structures");
    check->add_option("--seed", ca.seed, "Seed for randomized runs, echoed in the report")->capture_default_str();
    check->add_option("--mutants", ca.mutants, "audit: also audit this many seeded mutant witness schemes");
    check->add_option("--coord-cap", ca.coord_cap, "coord: most witness tuples per certificate (0 = all)");

    std::string witness, tag, source, target, pin;
    auto* extend = app.add_subcommand("extend", "Extend a witness-to-witness map to a homomorphism");
    extend->add_option("theory", path, "Theory file, - for stdin")->required();
    extend->add_option("--witness", witness, "Witness block (default: the only one)");
    extend->add_option("--tag", tag, "Psi tag (default: the only one)");
    extend->add_option("--source", source, "Source structure (.fm)")->required();
    extend->add_option("--target", target, "Target structure (.fm)")->required();
    extend->add_option("--pin", pin, "Witness tuples m1,m2,..=n1,n2,..")->required();

    std::vector<std::string> targets;
    std::string name;
    auto* morley = app.add_subcommand("morleyize", "Add relation symbols for the complements of formulae");
    morley->add_option("theory", path, "Theory file, - for stdin")->required();
    morley->add_option("--target", targets, "Formula to negate (repeatable)")->required();
    morley->add_option("--name", name, "Name of the new symbol");

    std::string family, param, output;
    std::size_t dmax = 2;
    auto* gen = app.add_subcommand("gen", "Generate a library theory");
    gen->add_option("family", family, "torsor, vect or flat")
        ->required()
        ->check(CLI::IsMember({"torsor", "vect", "flat"}));
    gen->add_option("params", param, "Preset (z1..z4, s3, f2..f5, point, arrow, split) or FILE[:TABLE]")->required();
    gen->add_option("--dmax", dmax, "vect: largest basis size (at most 3)")->capture_default_str();
    gen->add_option("-o,--output", output, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, r;
        const int code = app.exit(e, o, r);
        out << o.str();
        err << r.str();
        return code == 0 ? ok : usage;
    }

    try {
        if (*validate) return detail::cmd_validate(path, io);
        if (*models) return detail::cmd_models(path, size, iso, out_dir, io);
        if (*check) return detail::cmd_check(ca, io);
        if (*extend) return detail::cmd_extend(path, witness, tag, source, target, pin, io);
        if (*morley) return detail::cmd_morleyize(path, targets, name, io);
        if (*gen) return detail::cmd_gen(family, param, dmax, output, io);
    } catch (const Failure& e) {
        err << "geocoord: " << e.what() << "\n";
        return e.code();
    } catch (const ResourceLimit& e) {
        err << "geocoord: " << e.what() << "\n";
        return resource;
    } catch (const std::exception& e) {
        err << "geocoord: " << e.what() << "\n";
        return usage;
    }
    return usage;
}

}  // namespace geocoord::cli
