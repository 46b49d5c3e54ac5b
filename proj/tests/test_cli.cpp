// End-to-end checks of the installed binary: exit codes, determinism,
// canonical re-emission. Runs the real executable via popen.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string output; // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(RTL_BIN_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

class TempDir {
public:
    TempDir() {
        dir_ = fs::temp_directory_path() /
               ("rtl_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
        fs::create_directories(dir_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(dir_, ec);
    }
    fs::path file(const std::string& name, const std::string& content) const {
        fs::path p = dir_ / name;
        std::ofstream(p, std::ios::binary) << content;
        return p;
    }
    fs::path path(const std::string& name) const { return dir_ / name; }

private:
    static inline int counter_ = 0;
    fs::path dir_;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

const char* kFlatForward = "class T\npattern flat\nlink MM> 1\nlink MM> 1\nlink MM> 1\nlink MM> 1\n";

} // namespace

TEST_CASE("analyze prints the wait report") {
    TempDir tmp;
    auto file = tmp.file("flat.path", kFlatForward);
    auto r = run_cli("analyze " + file.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("T^P_T") != std::string::npos);
    CHECK(r.output.find(" : 8") != std::string::npos);
    CHECK(r.output.find("pareto optimal T") != std::string::npos);
}

TEST_CASE("analyze honors class and pattern overrides") {
    TempDir tmp;
    auto file = tmp.file("p.path", kFlatForward);
    auto r = run_cli("analyze --class B --pattern bell_matched " + file.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("pattern") != std::string::npos);
    CHECK(r.output.find("bell_matched") != std::string::npos);
}

TEST_CASE("analyze units label is display only") {
    TempDir tmp;
    auto file = tmp.file("p.path", kFlatForward);
    auto with = run_cli("analyze --units ms " + file.string());
    CHECK(with.exit_code == 0);
    CHECK(with.output.find("units") != std::string::npos);
    CHECK(with.output.find(": ms") != std::string::npos);
    auto without = run_cli("analyze " + file.string());
    CHECK(without.output.find("units") == std::string::npos);
}

TEST_CASE("regimes --hops spreads the alpha target across a path") {
    auto one = run_cli("regimes --n 7 --alpha-target 0.999");
    auto fifty = run_cli("regimes --n 7 --alpha-target 0.999 --hops 50");
    CHECK(one.exit_code == 0);
    CHECK(fifty.exit_code == 0);
    CHECK(one.output.find("0.9234") != std::string::npos);
    CHECK(fifty.output.find("per-block target") != std::string::npos);
    CHECK(fifty.output != one.output);
}

TEST_CASE("analyze --canonical round trips") {
    TempDir tmp;
    auto file = tmp.file("p.path", "link MM< 1.5 nt=12\nlink MSM 2\n");
    auto first = run_cli("analyze --canonical " + file.string());
    REQUIRE(first.exit_code == 0);
    auto second_file = tmp.file("canon.path", first.output);
    auto second = run_cli("analyze --canonical " + second_file.string());
    CHECK(second.exit_code == 0);
    CHECK(second.output == first.output);
}

TEST_CASE("analyze evaluates custom fire schedules") {
    TempDir tmp;
    auto file = tmp.file("custom.path", "pattern custom\n"
                                        "link MM> 1\n"
                                        "link MM> 1\n"
                                        "fire 1 0\n"
                                        "fire 2 -1/2\n");
    auto r = run_cli("analyze " + file.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("custom") != std::string::npos);
    CHECK(r.output.find("fire times") != std::string::npos);
    CHECK(r.output.find("-1/2") != std::string::npos);
}

TEST_CASE("parse errors exit 2 with a located diagnostic") {
    TempDir tmp;
    auto file = tmp.file("bad.path", "link XX 1\n");
    auto r = run_cli("analyze " + file.string());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("line 1") != std::string::npos);
    CHECK(r.output.find("unknown link kind") != std::string::npos);

    auto missing = run_cli("analyze " + tmp.path("nope.path").string());
    CHECK(missing.exit_code == 2);
}

TEST_CASE("orientation cap exits 4") {
    auto r = run_cli("orientations 1 1 1 1 1 1 1 1 1 1 1 1 1");
    CHECK(r.exit_code == 4);
    CHECK(r.output.find("cap") != std::string::npos);
}

TEST_CASE("orientations ranks vectors") {
    auto r = run_cli("orientations 1 1 1 --class T");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("<<< : 0") != std::string::npos);
    CHECK(r.output.find(">>> : 6") != std::string::npos);

    auto top = run_cli("orientations 1 1 1 --class T --top 1");
    CHECK(top.output.find("<<< : 0") != std::string::npos);
    CHECK(top.output.find(">>>") == std::string::npos);
}

TEST_CASE("regimes reports boundaries") {
    auto r = run_cli("regimes --pr 0.01 --n 7");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("required N_T") != std::string::npos);
    CHECK(r.output.find(": 1453 (target") != std::string::npos);
    CHECK(r.output.find("high-probability") != std::string::npos);
    auto perfect = run_cli("regimes --pr 1.0 --epsilon 0.01");
    CHECK(perfect.exit_code == 0);
    CHECK(perfect.output.find("regime") != std::string::npos);
    CHECK(perfect.output.find(": perfect") != std::string::npos);
}

TEST_CASE("simulate is deterministic across runs and worker counts") {
    TempDir tmp;
    auto file = tmp.file("sim.path", "link MM> 1 pr=0.3 nt=40\nlink MIM 2 pr=0.5 nt=30\n");
    auto a = run_cli("simulate --bursts 5000 --seed 7 --workers 1 " + file.string());
    auto b = run_cli("simulate --bursts 5000 --seed 7 --workers 3 " + file.string());
    auto c = run_cli("simulate --bursts 5000 --seed 7 --workers 3 " + file.string());
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(b.output == c.output);
    CHECK(a.output.find("path empirical P_p") != std::string::npos);

    auto different_seed = run_cli("simulate --bursts 5000 --seed 8 " + file.string());
    CHECK(different_seed.output != a.output);
}

TEST_CASE("diagram writes byte-identical SVG") {
    TempDir tmp;
    auto file = tmp.file("d.path", kFlatForward);
    auto out1 = tmp.path("one.svg");
    auto out2 = tmp.path("two.svg");
    auto r1 = run_cli("diagram " + file.string() + " --out " + out1.string());
    auto r2 = run_cli("diagram " + file.string() + " --out " + out2.string());
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r2.exit_code == 0);
    std::string svg = slurp(out1);
    CHECK(svg == slurp(out2));
    CHECK(svg.find("<svg xmlns") != std::string::npos);
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);

    auto bad = run_cli("diagram " + file.string() + " --out /nonexistent_dir_zz/x.svg");
    CHECK(bad.exit_code == 3);
}
