#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "twsm/io.hpp"

using namespace twsm;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "twsm_io_test") { fs::create_directories(path); }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("PFM round trip") {
    TempDir dir;
    SUBCASE("grid values survive bit-exactly") {
        std::mt19937_64 rng(6);
        std::uniform_real_distribution<float> unit(-50.f, 50.f);
        Grid<float> g(7, 5);
        for (float& v : g.data()) v = unit(rng);
        write_pfm(dir.file("a.pfm"), g);
        CHECK(read_pfm(dir.file("a.pfm")) == g);
    }
    SUBCASE("invalid pixels travel as NaN") {
        DisparityMap m(3, 4);
        for (int y = 0; y < 3; ++y)
            for (int x = 0; x < 4; ++x) m.set(y, x, 1.f + y + x);
        m.invalidate(1, 2);
        write_pfm_disparity(dir.file("d.pfm"), m);

        Grid<float> raw = read_pfm(dir.file("d.pfm"));
        CHECK(std::isnan(raw.at(1, 2)));

        DisparityMap back = read_pfm_disparity(dir.file("d.pfm"));
        CHECK_FALSE(back.is_valid(1, 2));
        for (int y = 0; y < 3; ++y)
            for (int x = 0; x < 4; ++x)
                if (m.is_valid(y, x)) CHECK(back.value(y, x) == m.value(y, x));
    }
    SUBCASE("color PFM and garbage headers are rejected") {
        std::ofstream(dir.file("color.pfm")) << "PF\n2 2\n-1.0\n";
        CHECK_THROWS(read_pfm(dir.file("color.pfm")));
        std::ofstream(dir.file("bad.pfm")) << "Px\n";
        CHECK_THROWS(read_pfm(dir.file("bad.pfm")));
        CHECK_THROWS(read_pfm(dir.file("missing.pfm")));
    }
}

TEST_CASE("16-bit PNG disparity") {
    TempDir dir;
    SUBCASE("round trip quantizes to 1/256 pixel") {
        DisparityMap m(4, 6);
        for (int y = 0; y < 4; ++y)
            for (int x = 0; x < 6; ++x) m.set(y, x, 0.37f * (1 + y * 6 + x));
        m.invalidate(2, 3);
        write_disp_png(dir.file("d.png"), m);
        DisparityMap back = read_disp_png(dir.file("d.png"));
        CHECK_FALSE(back.is_valid(2, 3));
        for (int y = 0; y < 4; ++y)
            for (int x = 0; x < 6; ++x)
                if (m.is_valid(y, x))
                    CHECK(std::abs(back.value(y, x) - m.value(y, x)) <= 1.f / 512.f + 1e-6f);
    }
    SUBCASE("stored value is exactly round(256 * d)") {
        DisparityMap m(1, 1);
        m.set(0, 0, 2.5f);
        write_disp_png(dir.file("q.png"), m);
        CHECK(read_disp_png(dir.file("q.png")).value(0, 0) == 640.f / 256.f);
    }
    SUBCASE("zero pixels decode as invalid") {
        DisparityMap m(1, 2);
        m.set(0, 0, 0.f);  // valid but quantizes to the invalid code
        m.set(0, 1, 3.f);
        write_disp_png(dir.file("z.png"), m);
        DisparityMap back = read_disp_png(dir.file("z.png"));
        CHECK_FALSE(back.is_valid(0, 0));
        CHECK(back.is_valid(0, 1));
    }
    SUBCASE("out-of-range values clamp to the 16-bit ceiling") {
        DisparityMap m(1, 1);
        m.set(0, 0, 300.f);  // 256 * 300 > 65535
        write_disp_png(dir.file("c.png"), m);
        CHECK(read_disp_png(dir.file("c.png")).value(0, 0) == 65535.f / 256.f);
    }
}

TEST_CASE("read_disparity_auto dispatches on extension") {
    TempDir dir;
    DisparityMap m(2, 2);
    for (int y = 0; y < 2; ++y)
        for (int x = 0; x < 2; ++x) m.set(y, x, 4.f);
    write_pfm_disparity(dir.file("m.pfm"), m);
    write_disp_png(dir.file("m.png"), m);
    CHECK(read_disparity_auto(dir.file("m.pfm")).value(0, 0) == 4.f);
    CHECK(read_disparity_auto(dir.file("m.png")).value(0, 0) == 4.f);
    CHECK_THROWS(read_disparity_auto(dir.file("m.bmp")));
}

TEST_CASE("image IO") {
    TempDir dir;
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<int> level(0, 255);
    ImagePlane rgb(5, 7, 3);
    for (float& v : rgb.data()) v = level(rng) / 255.f;

    SUBCASE("8-bit PNG round trip is exact on 8-bit-representable data") {
        write_image(dir.file("img.png"), rgb);
        ImagePlane back = read_image(dir.file("img.png"));
        CHECK(back.channels() == 3);
        for (size_t i = 0; i < rgb.data().size(); ++i)
            CHECK(back.data()[i] == doctest::Approx(rgb.data()[i]).epsilon(1e-6));
    }
    SUBCASE("PPM and PGM round trips") {
        write_image(dir.file("img.ppm"), rgb);
        ImagePlane back = read_image(dir.file("img.ppm"));
        for (size_t i = 0; i < rgb.data().size(); ++i)
            CHECK(back.data()[i] == doctest::Approx(rgb.data()[i]).epsilon(1e-6));

        ImagePlane gray = rgb.to_gray();
        write_image(dir.file("img.pgm"), gray);
        ImagePlane gback = read_image(dir.file("img.pgm"));
        CHECK(gback.channels() == 1);
        for (size_t i = 0; i < gray.data().size(); ++i)
            CHECK(gback.data()[i] == doctest::Approx(gray.data()[i]).epsilon(3e-3));
    }
    SUBCASE("unsupported extensions are rejected") {
        CHECK_THROWS(write_image(dir.file("img.jpg"), rgb));
        CHECK_THROWS(read_image(dir.file("img.jpg")));
    }
}

TEST_CASE("parse_key_value") {
    SUBCASE("keys, values, comments, and blank lines") {
        auto kv = parse_key_value("# header\n\n  zoom = 2.0 \ndmax=64\nname = a b c\n");
        CHECK(kv.size() == 3);
        CHECK(kv.at("zoom") == "2.0");
        CHECK(kv.at("dmax") == "64");
        CHECK(kv.at("name") == "a b c");
    }
    SUBCASE("missing separator or empty key is rejected") {
        CHECK_THROWS(parse_key_value("zoom 2.0\n"));
        CHECK_THROWS(parse_key_value("= 5\n"));
    }
    SUBCASE("later assignments win") {
        auto kv = parse_key_value("k=1\nk=2\n");
        CHECK(kv.at("k") == "2");
    }
}
