#include <catch2/catch.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "fractile/checks.hpp"

using namespace fractile;
namespace fs = std::filesystem;

namespace {

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

// Runs the CLI with stdout+stderr captured.
CommandResult run_cli(const std::string& args, const std::string& env = "") {
    static int counter = 0;
    const fs::path dir = fs::path(FRACTILE_TEST_TMP) / "cli";
    fs::create_directories(dir);
    const fs::path out = dir / ("out" + std::to_string(counter++) + ".txt");
    const std::string cmd =
        env + (env.empty() ? "" : " ") + FRACTILE_CLI_PATH + " " + args + " > " +
        out.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    CommandResult res;
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out, std::ios::binary);
    res.output.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    return res;
}

}  // namespace

TEST_CASE("a corrupted multiplication table fails the associativity check") {
    GroupTable gt = group_table();
    gt.compose[index_of(Transform::R1)][index_of(Transform::R1)] = Transform::R3;
    const CheckResult res = check_group_table(gt);
    REQUIRE_FALSE(res.passed);
    REQUIRE(res.detail.find("associativity") != std::string::npos);
}

TEST_CASE("a corrupted inverse table fails the inverse check") {
    GroupTable gt = group_table();
    gt.inverse[index_of(Transform::R1)] = Transform::R1;
    const CheckResult res = check_group_table(gt);
    REQUIRE_FALSE(res.passed);
    REQUIRE(res.detail.find("inverse") != std::string::npos);
}

TEST_CASE("cli renders a preset and reports a summary") {
    const fs::path out = fs::path(FRACTILE_TEST_TMP) / "cli" / "triangle.pbm";
    fs::create_directories(out.parent_path());
    const CommandResult res =
        run_cli("render --preset sierpinski-triangle --depth 7 --out " + out.string());
    CAPTURE(res.output);
    REQUIRE(res.exit_code == 0);
    REQUIRE(res.output.find("side=256") != std::string::npos);
    REQUIRE(res.output.find("popcount=6561") != std::string::npos);
    REQUIRE(fs::exists(out));
}

TEST_CASE("cli renders a motif id") {
    const fs::path out = fs::path(FRACTILE_TEST_TMP) / "cli" / "motif111.pbm";
    const CommandResult res = run_cli("render --motif 111 --depth 6 --out " + out.string());
    CAPTURE(res.output);
    REQUIRE(res.exit_code == 0);
    // motif111 is the triangle seed: popcount 3^7 at depth 6.
    REQUIRE(res.output.find("popcount=2187") != std::string::npos);
}

TEST_CASE("cli rejects a ragged configuration with exit 1") {
    const CommandResult res = run_cli("render --config '0 R0 / R0' --out /dev/null");
    CAPTURE(res.output);
    REQUIRE(res.exit_code == 1);
    REQUIRE(res.output.find("row 2") != std::string::npos);
}

TEST_CASE("cli maps size-limit violations to exit 3") {
    const CommandResult res = run_cli(
        "render --preset sierpinski-triangle --depth 7 --out /dev/null",
        "FRACTILE_MAX_SIDE=8");
    CAPTURE(res.output);
    REQUIRE(res.exit_code == 3);
    REQUIRE(res.output.find("limit") != std::string::npos);
}

TEST_CASE("cli census n=2 prints the report and exits 0") {
    const fs::path report = fs::path(FRACTILE_TEST_TMP) / "cli" / "census2.txt";
    const CommandResult res = run_cli("census --n 2 --report " + report.string());
    CAPTURE(res.output);
    REQUIRE(res.exit_code == 0);
    REQUIRE(res.output.find("orbits = 232") != std::string::npos);
    REQUIRE(fs::exists(report));
    std::ifstream in(report);
    const std::string text((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
    REQUIRE(text.find("dedup = 1824") != std::string::npos);
}

TEST_CASE("cli census n=3 closed form") {
    const CommandResult res = run_cli("census --n 3");
    CAPTURE(res.output);
    REQUIRE(res.exit_code == 0);
    REQUIRE(res.output.find("orbits = 11043660") != std::string::npos);
    REQUIRE(res.output.find("mode = closed-form") != std::string::npos);
}

TEST_CASE("cli census brute-force redundancy scope") {
    const CommandResult res =
        run_cli("census --n 3 --mode brute-force --scope redundancy-only --workers 2");
    CAPTURE(res.output);
    REQUIRE(res.exit_code == 0);
    REQUIRE(res.output.find("note.DSS1 = 242760") != std::string::npos);
    REQUIRE(res.output.find("note.N2 = 2100") != std::string::npos);
}

TEST_CASE("cli rejects unsupported census modes") {
    const CommandResult res = run_cli("census --n 2 --mode brute-force");
    REQUIRE(res.exit_code == 1);
}

TEST_CASE("cli mask classification") {
    const CommandResult n3 = run_cli("masks --n 3");
    CAPTURE(n3.output);
    REQUIRE(n3.exit_code == 0);
    REQUIRE(n3.output.find("masks = 512") != std::string::npos);
    REQUIRE(n3.output.find("ds12 = 16") != std::string::npos);

    const CommandResult n2 = run_cli("masks --n 2");
    REQUIRE(n2.exit_code == 0);
    REQUIRE(n2.output.find("masks = 16") != std::string::npos);
    REQUIRE(n2.output.find("classes_up_to_rotation = 6") != std::string::npos);
    REQUIRE(n2.output.find("note.") != std::string::npos);

    const CommandResult n1 = run_cli("masks --n 1");
    REQUIRE(n1.exit_code == 0);
    REQUIRE(n1.output.find("masks = 2") != std::string::npos);
}

TEST_CASE("cli gallery writes motifs at a shallow depth") {
    const fs::path dir = fs::path(FRACTILE_TEST_TMP) / "cli" / "gallery";
    fs::remove_all(dir);
    const CommandResult res =
        run_cli("gallery --out-dir " + dir.string() + " --depth 2");
    CAPTURE(res.output);
    REQUIRE(res.exit_code == 0);
    std::size_t images = 0;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".pbm" &&
            e.path().filename().string().rfind("motif", 0) == 0)
            ++images;
    REQUIRE(images == 232);
    REQUIRE(fs::exists(dir / "index.txt"));
    REQUIRE(fs::exists(dir / "index.pbm"));
}

TEST_CASE("cli usage errors exit 1") {
    REQUIRE(run_cli("").exit_code == 1);
    REQUIRE(run_cli("render").exit_code == 1);  // no config source
    REQUIRE(run_cli("bogus-subcommand").exit_code == 1);
    REQUIRE(run_cli("verify --level sometimes").exit_code == 1);
}

TEST_CASE("cli quick verification passes under a minute") {
    const auto t0 = std::chrono::steady_clock::now();
    const CommandResult res = run_cli("verify --level quick");
    const auto elapsed = std::chrono::duration_cast<std::chrono::seconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
    CAPTURE(res.output);
    REQUIRE(res.exit_code == 0);
    REQUIRE(res.output.find("all ") != std::string::npos);
    REQUIRE(res.output.find("[FAIL]") == std::string::npos);
    REQUIRE(elapsed < 60);
}
