#include "geocoord/cli.hpp"

#include "json.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
    args.insert(args.begin(), "geocoord");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = geocoord::cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
    return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) { return std::string(GEOCOORD_GOLDEN_DIR) + "/" + name; }

std::string read(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() /
              ("geocoord-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
        unsetenv("GEOCOORD_MAX_SIZE");
    }
    void TearDown() override {
        fs::remove_all(dir);
        unsetenv("GEOCOORD_MAX_SIZE");
    }

    /// torsor z3 with the last theta removed from its family.
    std::string mutant_z3() {
        const auto doc = run({"gen", "torsor", "z3"}).out;
        auto text = doc;
        const auto at = text.find("theta X for g in G");
        EXPECT_NE(at, std::string::npos);
        const auto end = text.find(";\n", at);
        text.replace(at, end - at, "theta X: y = e(x);\n  theta X: y = g1(x)");
        return text;
    }

    fs::path dir;
};

}  // namespace

TEST_F(Cli, MissingSubcommandIsUsageError) { EXPECT_EQ(run({}).code, 2); }

TEST_F(Cli, GenPipesIntoCheck) {
    const auto gen = run({"gen", "torsor", "z3"});
    ASSERT_EQ(gen.code, 0) << gen.err;
    const auto check = run({"check", "ucoord", "-", "--max", "5"}, gen.out);
    EXPECT_EQ(check.code, 0) << check.err;
    EXPECT_NE(check.out.find("pass (no counterexample up to size 5)"), std::string::npos) << check.out;
}

TEST_F(Cli, GenWritesFile) {
    const auto path = dir / "vect.geo";
    EXPECT_EQ(run({"gen", "vect", "f2", "--dmax", "1", "-o", path.string()}).code, 0);
    EXPECT_EQ(read(path), read(golden("vect-f2-1.geo")));
    EXPECT_EQ(run({"gen", "flat", "split"}).code, 2);
    EXPECT_EQ(run({"gen", "torsor", "z9"}).code, 2);
}

TEST_F(Cli, ValidateCleanAndBroken) {
    EXPECT_EQ(run({"validate", golden("torsor-z2.geo")}).code, 0);
    const auto r = run({"validate", golden("broken.geo")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("3:21"), std::string::npos) << r.err;
    const auto undeclared = run({"validate", "-"}, "axiom top |- R(x);\n");
    EXPECT_EQ(undeclared.code, 2);
    EXPECT_EQ(run({"validate", (dir / "missing.geo").string()}).code, 2);
}

TEST_F(Cli, MutantFailsAndItsCounterexampleReproduces) {
    const auto theory = dir / "mutant.geo";
    write(theory, mutant_z3());
    const auto cex = dir / "cex";
    const auto r = run({"check", "ucoord", theory.string(), "--max", "4", "--cex-dir", cex.string()});
    ASSERT_EQ(r.code, 1) << r.err;
    EXPECT_NE(r.out.find("X/cover"), std::string::npos) << r.out;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(cex)) files.push_back(e.path());
    ASSERT_EQ(files.size(), 1u);
    EXPECT_EQ(files[0].filename().string().rfind("ucoord-", 0), 0u);
    const auto again = run({"check", "ucoord", theory.string(), "--model", files[0].string(), "--format", "json"});
    EXPECT_EQ(again.code, 1);
    const auto j = nlohmann::json::parse(again.out);
    EXPECT_EQ(j["verdict"], "fail");
    EXPECT_EQ(j["findings"][0]["sequent_id"], "X/cover");
    EXPECT_EQ(j["findings"][0]["model_size"], 3);
}

TEST_F(Cli, ModelThatIsNotAModelIsRejected) {
    const auto m = dir / "bad.fm";
    write(m, "size 2\nfn e 1\n0 1\n1 0\nend\nfn g1 1\n0 1\n1 0\nend\n");
    EXPECT_EQ(run({"check", "ucoord", golden("torsor-z2.geo"), "--model", m.string()}).code, 2);
}

TEST_F(Cli, EnvironmentCapGivesExitThree) {
    setenv("GEOCOORD_MAX_SIZE", "3", 1);
    const auto r = run({"check", "ucoord", golden("torsor-z2.geo"), "--max", "4"});
    EXPECT_EQ(r.code, 3);
    EXPECT_FALSE(r.err.empty());
    EXPECT_EQ(run({"check", "ucoord", golden("torsor-z2.geo"), "--max", "3"}).code, 0);
}

TEST_F(Cli, JsonIsByteIdenticalAcrossRuns) {
    const std::vector<std::string> args{"check", "audit", golden("vect-f2-1.geo"), "--max", "3", "--format",
                                        "json", "--seed", "11", "--mutants", "12", "--cex-dir", (dir / "c").string()};
    const auto a = run(args);
    const auto b = run(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
    const auto j = nlohmann::json::parse(a.out);
    EXPECT_EQ(j["schema"], "geocoord.report/1");
    EXPECT_EQ(j["seed"], 11);
}

TEST_F(Cli, EveryCheckRuns) {
    for (const auto* check : {"inhabited", "ucoord", "urigid", "coord", "bound", "audit"}) {
        const auto r = run({"check", check, golden("flat-arrow.geo"), "--max", "3", "--cex-dir", (dir / "c").string()});
        EXPECT_EQ(r.code, 0) << check << "\n" << r.out << r.err;
    }
    EXPECT_EQ(run({"check", "nonsense", golden("flat-arrow.geo")}).code, 2);
}

TEST_F(Cli, CoordJsonCarriesCertificates) {
    const auto r = run({"check", "coord", golden("vect-f2-1.geo"), "--max", "2", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_TRUE(j.contains("certificates"));
    EXPECT_EQ(j["certificates"].size(), 2u);
    EXPECT_EQ(r.out, read(golden("report-coord-vect-f2-1.json")));
}

TEST_F(Cli, ModelsListsIsoClassesAndWritesFiles) {
    const auto r = run({"models", golden("torsor-z2.geo"), "--size", "2", "--iso", "--out", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("1 isomorphism class"), std::string::npos) << r.out;
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(dir)) {
        ++files;
        EXPECT_EQ(read(e.path()), read(golden("torsor-z2-model.fm")));
    }
    EXPECT_EQ(files, 1u);
    const auto raw = run({"models", "-", "--size", "3"}, run({"gen", "torsor", "z3"}).out);
    EXPECT_EQ(raw.out.rfind("# 2 model(s) of size 3\n", 0), 0u) << raw.out;
}

TEST_F(Cli, ExtendPrintsTheMap) {
    const auto m = golden("torsor-z2-model.fm");
    const auto r = run({"extend", golden("torsor-z2.geo"), "--source", m, "--target", m, "--pin", "0=1"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "# aut\n0 1\n1 0\n");
    const auto bad = run({"extend", golden("torsor-z2.geo"), "--source", m, "--target", m, "--pin", "0,1=1,0"});
    EXPECT_EQ(bad.code, 2);
}

TEST_F(Cli, ExtendFailureExitsOne) {
    const auto theory = dir / "loose.geo";
    write(theory, "theory bare;\nwitness loose {\n  psi P (x; y): x = x;\n  theta P: top;\n}\n");
    const auto m = dir / "two.fm";
    write(m, "size 2\n");
    const auto r = run({"extend", theory.string(), "--source", m.string(), "--target", m.string(), "--pin", "0=1"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("functional"), std::string::npos) << r.err;
}

TEST_F(Cli, MorleyizeAddsComplementRelations) {
    const auto r = run({"morleyize", golden("torsor-z2.geo"), "--target", "g1(x) = x", "--name", "Moved"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("sig rel Moved/1;"), std::string::npos) << r.out;
    const auto back = run({"validate", "-"}, r.out);
    EXPECT_EQ(back.code, 0) << back.err;
    EXPECT_EQ(run({"morleyize", golden("torsor-z2.geo"), "--target", "h(x) = x"}).code, 2);
}
