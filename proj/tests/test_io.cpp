#include <cstring>
#include <filesystem>
#include <random>

#include "doctest.h"
#include "mvg/error.hpp"
#include "mvg/io.hpp"
#include "mvg/synthetic.hpp"
#include "test_util.hpp"

using namespace mvg;

namespace {

std::filesystem::path scratch_dir() {
    auto d = std::filesystem::temp_directory_path() / "mvg_test_io";
    std::filesystem::create_directories(d);
    return d;
}

bool bitwise_equal(const MvImage& a, const MvImage& b) {
    return a.manifold() == b.manifold() && a.rows() == b.rows() && a.cols() == b.cols() &&
           std::memcmp(a.data().data(), b.data().data(), a.data().size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("MVI roundtrip is bit exact") {
    std::mt19937_64 rng(21);
    for (const Manifold& m : {Manifold::sphere2(), Manifold::spd(2), Manifold::spd(3), Manifold::circle(),
                              Manifold::euclidean(4)}) {
        MvImage img(m, 16, 16);
        for (Vertex v = 0; v < img.size(); ++v) img.set(v, mvg::testing::random_point(rng, m));
        CHECK(bitwise_equal(decode_mvi(encode_mvi(img)), img));
    }

    const MvImage s = generate_sphere_image(16, 16);
    const auto path = scratch_dir() / "round.mvi";
    write_mvi(s, path);
    CHECK(bitwise_equal(read_mvi(path), s));
    CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
}

TEST_CASE("MVI header") {
    const std::string bytes = encode_mvi(generate_sphere_image(3, 4));
    CHECK(bytes.rfind("MVI1\nmanifold sphere2\nrows 3\ncols 4\nbyteorder LE\ncount 36\ndata\n", 0) == 0);
    CHECK(bytes.size() == std::strlen("MVI1\nmanifold sphere2\nrows 3\ncols 4\nbyteorder LE\ncount 36\ndata\n") + 8 * 36);

    CHECK_THROWS_AS(decode_mvi("MVI2\n"), FormatError);
    CHECK_THROWS_AS(decode_mvi("MVI1\nmanifold torus\nrows 1\ncols 1\nbyteorder LE\ncount 1\ndata\n"), FormatError);
    CHECK_THROWS_AS(decode_mvi("MVI1\nmanifold circle\nrows 1\ncols 1\nbyteorder BE\ncount 1\ndata\n"), FormatError);
    CHECK_THROWS_AS(decode_mvi("MVI1\nmanifold circle\nrows 1\ncols 2\nbyteorder LE\ncount 1\ndata\n"), FormatError);
    CHECK_THROWS_AS(decode_mvi("MVI1\nmanifold circle\nrows x\n"), FormatError);
}

TEST_CASE("truncated MVI payload names both byte counts") {
    std::string bytes = encode_mvi(generate_sphere_image(4, 4));
    bytes.resize(bytes.size() - 5);
    try {
        decode_mvi(bytes);
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("379") != std::string::npos);
        CHECK(msg.find("384") != std::string::npos);
    }
}

TEST_CASE("MVI with an invalid pixel is rejected with its position") {
    MvImage img(Manifold::spd(2), 3, 5);
    const double good[4] = {2.0, 0.5, 0.5, 1.0};
    const double bad[4] = {1.0, 2.0, 2.0, 1.0};  // eigenvalues 3 and -1
    for (Vertex v = 0; v < img.size(); ++v) img.set(v, good);
    img.set(2 * 5 + 3, bad);
    try {
        decode_mvi(encode_mvi(img));
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("(2,3)") != std::string::npos);
    }

    MvImage s(Manifold::sphere2(), 2, 2);
    const double up[3] = {0.0, 0.0, 1.0};
    const double off[3] = {0.0, 0.0, 1.1};
    for (Vertex v = 0; v < 4; ++v) s.set(v, up);
    s.set(1, off);
    CHECK_THROWS_WITH_AS(decode_mvi(encode_mvi(s)), doctest::Contains("(0,1)"), DataError);
}

TEST_CASE("PBM masks") {
    const Mask m = cut_mask(3, 4, 1, 1, 1, 2);
    const std::string text = encode_pbm(m);
    CHECK(text.rfind("P1\n", 0) == 0);
    CHECK(decode_pbm(text) == m);
    CHECK(decode_pbm("P1 4 3\n0000\n0110\n0000\n") == m);
    CHECK(decode_pbm("P1\n# comment\n2 1\n1 0") == Mask(1, 2, {false, true}));

    CHECK_THROWS_AS(decode_pbm("P4 1 1\n0"), FormatError);
    CHECK_THROWS_AS(decode_pbm("P1 2 2\n0 0 0"), FormatError);
    CHECK_THROWS_AS(decode_pbm("P1 1 1\n2"), FormatError);
    CHECK_THROWS_AS(decode_pbm("P1 1 1\n0 0"), FormatError);
    CHECK_THROWS_AS(decode_pbm("P1 1 1\n1"), FormatError);  // no known pixel

    const auto path = scratch_dir() / "m.pbm";
    write_pbm(m, path);
    CHECK(read_pbm(path) == m);
}

TEST_CASE("missing files are data errors") {
    const auto path = scratch_dir() / "does_not_exist.mvi";
    std::filesystem::remove(path);
    CHECK_THROWS_AS(read_mvi(path), DataError);
    CHECK_THROWS_AS(read_pbm(path), DataError);
    CHECK_THROWS_AS(write_mvi(generate_sphere_image(3, 3), scratch_dir() / "no_dir" / "x.mvi"), DataError);
}
