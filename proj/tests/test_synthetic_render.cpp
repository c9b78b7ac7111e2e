#include <cmath>
#include <numbers>
#include <regex>
#include <set>

#include "doctest.h"
#include "mvg/compare.hpp"
#include "mvg/error.hpp"
#include "mvg/inpaint.hpp"
#include "mvg/render.hpp"
#include "mvg/synthetic.hpp"

using namespace mvg;

namespace {

constexpr double kPi = std::numbers::pi;

Point sphere_at(double phi, double theta) {
    return {std::sin(phi) * std::cos(theta), std::sin(phi) * std::sin(theta), std::cos(phi)};
}

// Affine-invariant distance between 2x2 s.p.d. matrices from the roots of
// det(B - l A) = 0.
double spd2_distance(std::span<const double> a, std::span<const double> b) {
    const double qa = a[0] * a[3] - a[1] * a[2];
    const double qb = -(a[0] * b[3] + a[3] * b[0] - a[1] * b[2] - a[2] * b[1]);
    const double qc = b[0] * b[3] - b[1] * b[2];
    const double disc = std::sqrt(std::max(0.0, qb * qb - 4.0 * qa * qc));
    const double l1 = (-qb + disc) / (2.0 * qa);
    const double l2 = qc / (qa * l1);
    return std::hypot(std::log(l1), std::log(l2));
}

}  // namespace

TEST_CASE("sphere generator") {
    const std::size_t R = 24, C = 30;
    const MvImage img = generate_sphere_image(R, C);
    for (Vertex v = 0; v < img.size(); ++v) {
        const auto p = img.at(v);
        CHECK(std::abs(std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]) - 1.0) < 1e-10);
    }

    // Pixels just past a cut line against the same (i, theta) with one jump
    // fewer.
    const auto& s2 = img.manifold();
    auto smooth_phi = [&](std::size_t i) { return kPi / 4 + (kPi / 8) * std::sin(2 * kPi * i / R); };
    const std::size_t i = R / 3, j = 2;  // one horizontal line passed, no vertical one
    const double theta = 2 * kPi * j / C;
    const Point before = sphere_at(smooth_phi(i), theta);
    CHECK(std::abs(s2.distance(img.at(i, j), before) - kPi / 16) < 1e-8);

    const std::size_t i2 = 1, j2 = 2 * C / 3;  // two vertical lines passed
    const double theta2 = 2 * kPi * j2 / C;
    const Point one_jump = sphere_at(smooth_phi(i2) - kPi / 16, theta2);
    CHECK(std::abs(s2.distance(img.at(i2, j2), one_jump) - kPi / 16) < 1e-8);

    CHECK(generate_sphere_image(R, C) == img);
    CHECK(generate_sphere_image(64, 64).size() == 64 * 64);
    CHECK_THROWS_AS(generate_sphere_image(2, 8), DimensionError);
}

TEST_CASE("spd generator") {
    const std::size_t R = 32, C = 32;
    const MvImage img = generate_spd_image(R, C);
    for (Vertex v = 0; v < img.size(); ++v) {
        const auto a = img.at(v);
        CHECK(std::abs(a[1] - a[2]) < 1e-12);
        const double tr = a[0] + a[3], det = a[0] * a[3] - a[1] * a[2];
        CHECK(tr > 0.0);
        CHECK(det > 0.0);
    }

    // Closed form on both sides of the center line.
    auto closed = [&](std::size_t i, std::size_t j) {
        const double y = (i + 0.5) / R - 0.5, x = (j + 0.5) / C - 0.5;
        const double a = 0.5 + 2.5 * std::exp(-(x * x + (y - 0.25) * (y - 0.25)) / (2 * 0.15 * 0.15));
        const double t = 0.5 * kPi * (x + y) + (j >= C / 2 ? kPi / 3 : 0.0);
        const double c = std::cos(t), s = std::sin(t);
        return std::vector<double>{(1 + a) * c * c + s * s, a * c * s, a * c * s, (1 + a) * s * s + c * c};
    };
    for (std::size_t i = 0; i < R; i += 3) {
        const auto l = closed(i, C / 2 - 1), r = closed(i, C / 2), ll = closed(i, C / 2 - 2);
        for (int q = 0; q < 4; ++q) CHECK(img.at(i, C / 2)[q] == doctest::Approx(r[q]).epsilon(1e-12));
        const double across = spd2_distance(l, r);
        const double within = spd2_distance(ll, l);
        CHECK(across > 5.0 * within);
        CHECK(img.manifold().distance(img.at(i, C / 2 - 1), img.at(i, C / 2)) ==
              doctest::Approx(across).epsilon(1e-9));
    }
    CHECK(generate_spd_image(R, C) == img);
}

TEST_CASE("cut_mask") {
    CHECK_THROWS_AS(cut_mask(4, 4, 0, 0, 4, 4), DataError);
    CHECK(cut_mask(4, 4, 0, 0, 1, 1).unknown_count() == 1);
    CHECK_FALSE(cut_mask(4, 4, 0, 0, 1, 1).known(0));
    CHECK(cut_mask(64, 64, 21, 21, 22, 22).unknown_count() == 484);
    CHECK_THROWS_AS(cut_mask(4, 4, 3, 0, 2, 1), DimensionError);
    CHECK_THROWS_AS(cut_mask(4, 4, 0, 0, 0, 1), DimensionError);
}

TEST_CASE("spd glyphs") {
    const double m[4] = {3.0, 1.0, 1.0, 2.0};
    MvImage img(Manifold::spd(2), 3, 4);
    for (Vertex v = 0; v < img.size(); ++v) img.set(v, m);
    const std::string svg = render_spd_svg(img, nullptr);
    const std::regex glyph(R"re(rx="([0-9.]+)" ry="([0-9.]+)" transform="rotate\(([-0-9.]+) )re");
    std::set<std::string> shapes;
    std::size_t count = 0;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), glyph); it != std::sregex_iterator(); ++it) {
        shapes.insert((*it)[1].str() + "/" + (*it)[2].str() + "/" + (*it)[3].str());
        ++count;
    }
    CHECK(count == 12);
    CHECK(shapes.size() == 1);

    const double iso[4] = {2.5, 0.0, 0.0, 2.5};
    CHECK(geodesic_anisotropy(iso, 2) == 0.0);
    MvImage one(Manifold::spd(2), 1, 1);
    one.set(0, iso);
    std::smatch sm;
    const std::string s1 = render_spd_svg(one, nullptr);
    REQUIRE(std::regex_search(s1, sm, glyph));
    CHECK(sm[1].str() == sm[2].str());
    CHECK(anisotropy_color(0.0) == anisotropy_color(-0.0));

    const double aniso[4] = {std::exp(1.0), 0.0, 0.0, std::exp(-1.0)};
    CHECK(geodesic_anisotropy(aniso, 2) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("sphere colormap") {
    const double north[3] = {0.0, 0.0, 1.0};
    const double south[3] = {0.0, 0.0, -1.0};
    CHECK(sphere_color(north) == kNorthColor);
    CHECK(sphere_color(south) == kSouthColor);
    auto lum = [](Rgb c) { return 0.2126 * c[0] + 0.7152 * c[1] + 0.0722 * c[2]; };
    const MvImage field = generate_sphere_image(17, 19);
    for (Vertex v = 0; v < field.size(); ++v) {
        const double l = lum(sphere_color(field.at(v)));
        CHECK(l <= lum(kNorthColor) + 0.5);  // byte rounding
        CHECK(l >= lum(kSouthColor) - 0.5);
        if (field.at(v)[2] < 0.95) CHECK(l < lum(kNorthColor) - 1.0);
    }
    double prev = -1.0;
    for (int k = -20; k <= 20; ++k) {
        const double z = k / 20.0;
        const double q[3] = {std::sqrt(1 - z * z) * 0.6, std::sqrt(1 - z * z) * 0.8, z};
        const double l = lum(sphere_color(q));
        CHECK(l >= prev - 0.5);
        prev = l;
    }
}

TEST_CASE("sphere raster") {
    const MvImage img = generate_sphere_image(5, 6);
    const Mask mask = cut_mask(5, 6, 1, 1, 2, 2);
    const std::string ppm = render_sphere_ppm(img, &mask, 2);
    const std::string header = "P6\n12 10\n255\n";
    REQUIRE(ppm.size() == header.size() + 3 * 12 * 10);
    CHECK(ppm.rfind(header, 0) == 0);
    auto px = [&](std::size_t y, std::size_t x) {
        const std::size_t o = header.size() + 3 * (y * 12 + x);
        return Rgb{static_cast<std::uint8_t>(ppm[o]), static_cast<std::uint8_t>(ppm[o + 1]),
                   static_cast<std::uint8_t>(ppm[o + 2])};
    };
    CHECK(px(2, 2) == kUnknownGray);
    CHECK(px(0, 0) == sphere_color(img.at(0)));
    CHECK(px(9, 11) == sphere_color(img.at(4, 5)));

    CHECK_THROWS_AS(render_spd_svg(img, nullptr), DataError);
    CHECK_THROWS_AS(render(img, nullptr, "x.svg"), DataError);
    CHECK_THROWS_AS(render_sphere_ppm(generate_spd_image(3, 3), nullptr), DataError);
}

TEST_CASE("compare") {
    const MvImage truth = generate_sphere_image(8, 8);
    const Mask mask = cut_mask(8, 8, 2, 2, 2, 2);
    const CompareReport same = compare(truth, truth, mask);
    CHECK(same.count == 4);
    CHECK(same.mean == 0.0);
    CHECK(same.max == 0.0);
    CHECK(same.rms == 0.0);

    MvImage wrong = truth;
    const double north[3] = {0.0, 0.0, 1.0};
    wrong.set(2 * 8 + 3, north);
    const double d = std::acos(truth.at(2, 3)[2]);
    const CompareReport one = compare(wrong, truth, mask);
    CHECK(one.mean == doctest::Approx(d / 4));
    CHECK(one.max == doctest::Approx(d));
    CHECK(one.rms == doctest::Approx(d / 2));

    // A change outside the unknown set is not counted.
    MvImage outside = truth;
    outside.set(0, north);
    CHECK(compare(outside, truth, mask).max == 0.0);

    CHECK(format_report(one).rfind("count 4\nmean_error ", 0) == 0);
    CHECK_THROWS_AS(compare(truth, generate_sphere_image(8, 9), mask), DimensionError);
}

TEST_CASE("baseline fill and solver against the truth") {
    const MvImage truth = generate_sphere_image(32, 32);
    const Mask mask = cut_mask(32, 32, 12, 12, 8, 8);
    const MvImage baseline = nearest_known_fill(truth, mask);
    for (Vertex v = 0; v < truth.size(); ++v)
        if (mask.known(v)) CHECK(baseline.at(v)[0] == truth.at(v)[0]);

    SolverConfig cfg;
    cfg.k = 10;
    cfg.p = 4;
    cfg.r = 16;
    const MvImage solved = inpaint(truth, mask, cfg).image;
    CHECK(compare(solved, truth, mask).mean < compare(baseline, truth, mask).mean);
}
