#define DOCTEST_CONFIG_IMPLEMENT
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "mvg/io.hpp"
#include "mvg/synthetic.hpp"

namespace fs = std::filesystem;

namespace {

std::string g_exe;
fs::path g_dir;

int run(const std::string& args) {
    const std::string cmd = "\"" + g_exe + "\" " + args + " >\"" + (g_dir / "stdout.txt").string() + "\" 2>\"" +
                            (g_dir / "stderr.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string p(const std::string& name) { return "\"" + (g_dir / name).string() + "\""; }

}  // namespace

TEST_CASE("pipeline and run summary") {
    REQUIRE(run("generate --manifold s2 --rows 12 --cols 12 -o " + p("t.mvi")) == 0);
    REQUIRE(run("mask --rows 12 --cols 12 --rect 4,4,3,3 -o " + p("m.pbm")) == 0);
    REQUIRE(run("--log " + p("log.json") + " inpaint -i " + p("t.mvi") + " -m " + p("m.pbm") +
                " --k 4 --p 2 --r 6 -o " + p("o.mvi")) == 0);
    const auto summary = nlohmann::json::parse(mvg::read_file(g_dir / "log.json"));
    CHECK(summary["command"] == "inpaint");
    CHECK(summary["exit_code"] == 0);
    CHECK(summary["parameters"]["k"] == 4);
    CHECK(summary["parameters"]["sigma"] == "auto");
    CHECK(summary["layers"].size() == 2);
    CHECK(mvg::read_mvi(g_dir / "o.mvi").manifold() == mvg::Manifold::sphere2());

    REQUIRE(run("compare -a " + p("o.mvi") + " -b " + p("t.mvi") + " -m " + p("m.pbm")) == 0);
    CHECK(mvg::read_file(g_dir / "stdout.txt").rfind("count 9\nmean_error ", 0) == 0);
    // Without --log the summary goes to standard error.
    CHECK(nlohmann::json::parse(mvg::read_file(g_dir / "stderr.txt"))["command"] == "compare");

    CHECK(run("render -i " + p("o.mvi") + " -m " + p("m.pbm") + " -o " + p("o.ppm")) == 0);
    CHECK(fs::exists(g_dir / "o.ppm"));
    CHECK(run("generate --manifold spd2 --rows 8 --cols 8 -o " + p("s.mvi")) == 0);
    CHECK(run("render -i " + p("s.mvi") + " -o " + p("s.svg")) == 0);
    CHECK(run("render -i " + p("s.mvi") + " -o " + p("s.ppm")) == 2);
    CHECK_FALSE(fs::exists(g_dir / "s.ppm"));
}

TEST_CASE("usage errors exit with 1") {
    CHECK(run("") == 1);
    CHECK(run("inpaint --bogus") == 1);
    CHECK(run("generate --manifold torus -o " + p("x.mvi")) == 1);
    CHECK(run("mask --rect 1,2,3 -o " + p("x.pbm")) == 1);
    CHECK(run("inpaint -i a -m b -o c --sigma nope") == 1);
    CHECK(run("inpaint -i a -m b -o c --tau 2") == 1);
    CHECK(run("--help") == 0);
    CHECK(mvg::read_file(g_dir / "stdout.txt").find("MVG_THREADS") != std::string::npos);
}

TEST_CASE("missing input exits with 2 and writes nothing") {
    fs::remove(g_dir / "never.mvi");
    CHECK(run("inpaint -i " + p("absent.mvi") + " -m " + p("absent.pbm") + " -o " + p("never.mvi")) == 2);
    CHECK_FALSE(fs::exists(g_dir / "never.mvi"));
    CHECK_FALSE(fs::exists(g_dir / "never.mvi.tmp"));

    REQUIRE(run("generate --rows 8 --cols 8 -o " + p("t8.mvi")) == 0);
    REQUIRE(run("mask --rows 9 --cols 8 --rect 1,1,2,2 -o " + p("m9.pbm")) == 0);
    CHECK(run("inpaint -i " + p("t8.mvi") + " -m " + p("m9.pbm") + " -o " + p("never.mvi")) == 2);
    CHECK_FALSE(fs::exists(g_dir / "never.mvi"));
    CHECK(run("mask --rows 4 --cols 4 --rect 3,3,2,2 -o " + p("bad.pbm")) == 2);
}

TEST_CASE("graph failure exits with 3 and names the layer") {
    std::vector<double> d(8, 0.0);
    d[4] = 4.0;
    mvg::write_mvi(mvg::MvImage(mvg::Manifold::euclidean(1), 1, 8, d), g_dir / "row.mvi");
    std::vector<bool> k(8, false);
    k[0] = k[4] = true;
    mvg::write_pbm(mvg::Mask(1, 8, k), g_dir / "row.pbm");
    fs::remove(g_dir / "row_out.mvi");
    CHECK(run("inpaint -i " + p("row.mvi") + " -m " + p("row.pbm") + " --k 2 --p 0 --r 4 -o " + p("row_out.mvi")) ==
          3);
    CHECK(mvg::read_file(g_dir / "stderr.txt").find("layer 0") != std::string::npos);
    CHECK_FALSE(fs::exists(g_dir / "row_out.mvi"));
}

int main(int argc, char** argv) {
    if (argc < 2) return 2;
    g_exe = argv[1];
    g_dir = fs::temp_directory_path() / "mvg_test_cli";
    fs::remove_all(g_dir);
    fs::create_directories(g_dir);
    doctest::Context ctx;
    ctx.applyCommandLine(argc - 1, argv + 1);
    return ctx.run();
}
