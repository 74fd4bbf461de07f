#include "twsm/io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>

namespace twsm {

namespace {

[[noreturn]] void fail(const std::string& what, const std::string& path) {
    throw std::runtime_error(what + ": " + path);
}

bool host_little_endian() { return std::endian::native == std::endian::little; }

void swap_bytes(float& v) {
    auto* b = reinterpret_cast<unsigned char*>(&v);
    std::swap(b[0], b[3]);
    std::swap(b[1], b[2]);
}

std::string lower_ext(const std::string& path) {
    auto pos = path.find_last_of('.');
    std::string ext = pos == std::string::npos ? "" : path.substr(pos + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
    return ext;
}

}  // namespace

Grid<float> read_pfm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("read_pfm: cannot open", path);
    std::string magic;
    int w = 0, h = 0;
    double scale = 0.0;
    in >> magic >> w >> h >> scale;
    if (magic == "PF") fail("read_pfm: color PFM not supported", path);
    if (magic != "Pf" || w <= 0 || h <= 0 || scale == 0.0 || !in)
        fail("read_pfm: malformed header", path);
    in.get();  // single whitespace byte terminating the header

    const bool file_little = scale < 0.0;
    Grid<float> grid(h, w);
    std::vector<float> row(w);
    // Rows are stored bottom-up.
    for (int y = h - 1; y >= 0; --y) {
        in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(w) * 4);
        if (!in) fail("read_pfm: truncated payload", path);
        for (int x = 0; x < w; ++x) {
            if (file_little != host_little_endian()) swap_bytes(row[x]);
            grid.at(y, x) = row[x];
        }
    }
    return grid;
}

void write_pfm(const std::string& path, const Grid<float>& grid) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("write_pfm: cannot open", path);
    const double scale = host_little_endian() ? -1.0 : 1.0;
    out << "Pf\n" << grid.width() << ' ' << grid.height() << '\n' << scale << '\n';
    for (int y = grid.height() - 1; y >= 0; --y)
        out.write(reinterpret_cast<const char*>(&grid.at(y, 0)),
                  static_cast<std::streamsize>(grid.width()) * 4);
    if (!out) fail("write_pfm: write failure", path);
}

DisparityMap read_pfm_disparity(const std::string& path) {
    Grid<float> grid = read_pfm(path);
    DisparityMap map(grid.height(), grid.width());
    for (int y = 0; y < grid.height(); ++y)
        for (int x = 0; x < grid.width(); ++x)
            if (!std::isnan(grid.at(y, x))) map.set(y, x, grid.at(y, x));
    return map;
}

void write_pfm_disparity(const std::string& path, const DisparityMap& map) {
    Grid<float> grid = map.values();
    for (int y = 0; y < map.height(); ++y)
        for (int x = 0; x < map.width(); ++x)
            if (!map.is_valid(y, x)) grid.at(y, x) = std::numeric_limits<float>::quiet_NaN();
    write_pfm(path, grid);
}

namespace {

struct PngImage {
    int height = 0;
    int width = 0;
    int channels = 0;
    int bit_depth = 0;
    std::vector<uint16_t> pixels;  // interleaved, widened to 16 bits
};

PngImage read_png_raw(const std::string& path) {
    std::unique_ptr<FILE, int (*)(FILE*)> fp(std::fopen(path.c_str(), "rb"), std::fclose);
    if (!fp) fail("read_png: cannot open", path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    if (!png || !info) fail("read_png: libpng init failed", path);
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail("read_png: decode error", path);
    }
    png_init_io(png, fp.get());
    png_read_info(png, info);

    PngImage img;
    img.width = static_cast<int>(png_get_image_width(png, info));
    img.height = static_cast<int>(png_get_image_height(png, info));
    img.bit_depth = png_get_bit_depth(png, info);
    const int color = png_get_color_type(png, info);

    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && img.bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    png_set_strip_alpha(png);
    if (img.bit_depth == 16) png_set_swap(png);  // PNG stores big-endian
    png_read_update_info(png, info);

    img.channels = png_get_channels(png, info);
    const int bytes_per_sample = img.bit_depth == 16 ? 2 : 1;
    std::vector<std::vector<uint8_t>> rows(img.height);
    std::vector<png_bytep> row_ptrs(img.height);
    for (int y = 0; y < img.height; ++y) {
        rows[y].resize(static_cast<size_t>(img.width) * img.channels * bytes_per_sample);
        row_ptrs[y] = rows[y].data();
    }
    png_read_image(png, row_ptrs.data());
    png_destroy_read_struct(&png, &info, nullptr);

    img.pixels.resize(static_cast<size_t>(img.height) * img.width * img.channels);
    size_t i = 0;
    for (int y = 0; y < img.height; ++y) {
        if (bytes_per_sample == 2) {
            auto* p = reinterpret_cast<const uint16_t*>(rows[y].data());
            for (int k = 0; k < img.width * img.channels; ++k) img.pixels[i++] = p[k];
        } else {
            for (int k = 0; k < img.width * img.channels; ++k) img.pixels[i++] = rows[y][k];
        }
    }
    return img;
}

void write_png_raw(const std::string& path, const PngImage& img) {
    std::unique_ptr<FILE, int (*)(FILE*)> fp(std::fopen(path.c_str(), "wb"), std::fclose);
    if (!fp) fail("write_png: cannot open", path);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    if (!png || !info) fail("write_png: libpng init failed", path);
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        fail("write_png: encode error", path);
    }
    png_init_io(png, fp.get());
    const int color = img.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB;
    png_set_IHDR(png, info, img.width, img.height, img.bit_depth, color, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    if (img.bit_depth == 16) png_set_swap(png);

    const int bytes_per_sample = img.bit_depth == 16 ? 2 : 1;
    std::vector<uint8_t> row(static_cast<size_t>(img.width) * img.channels * bytes_per_sample);
    for (int y = 0; y < img.height; ++y) {
        const uint16_t* src = &img.pixels[static_cast<size_t>(y) * img.width * img.channels];
        if (bytes_per_sample == 2) {
            std::memcpy(row.data(), src, row.size());
        } else {
            for (int k = 0; k < img.width * img.channels; ++k)
                row[k] = static_cast<uint8_t>(src[k]);
        }
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

}  // namespace

DisparityMap read_disp_png(const std::string& path) {
    PngImage img = read_png_raw(path);
    if (img.bit_depth != 16 || img.channels != 1)
        fail("read_disp_png: 16-bit single-channel PNG required", path);
    DisparityMap map(img.height, img.width);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            const uint16_t v = img.pixels[static_cast<size_t>(y) * img.width + x];
            if (v != 0) map.set(y, x, static_cast<float>(v) / 256.f);
        }
    return map;
}

void write_disp_png(const std::string& path, const DisparityMap& map) {
    PngImage img;
    img.height = map.height();
    img.width = map.width();
    img.channels = 1;
    img.bit_depth = 16;
    img.pixels.resize(static_cast<size_t>(img.height) * img.width);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            uint16_t stored = 0;
            if (map.is_valid(y, x)) {
                const double q = std::lround(256.0 * map.value(y, x));
                stored = static_cast<uint16_t>(std::clamp(q, 0.0, 65535.0));
            }
            img.pixels[static_cast<size_t>(y) * img.width + x] = stored;
        }
    write_png_raw(path, img);
}

DisparityMap read_disparity_auto(const std::string& path) {
    const std::string ext = lower_ext(path);
    if (ext == "pfm") return read_pfm_disparity(path);
    if (ext == "png") return read_disp_png(path);
    fail("read_disparity_auto: unsupported extension", path);
}

namespace {

ImagePlane read_pnm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("read_pnm: cannot open", path);
    std::string magic;
    in >> magic;
    if (magic != "P5" && magic != "P6") fail("read_pnm: only binary P5/P6 supported", path);
    const int channels = magic == "P6" ? 3 : 1;
    int w = 0, h = 0, maxval = 0;
    auto next_int = [&](int& out) {
        // Skips whitespace and '#' comments.
        char c;
        while (in.get(c)) {
            if (c == '#') {
                std::string skip;
                std::getline(in, skip);
            } else if (!std::isspace(static_cast<unsigned char>(c))) {
                in.unget();
                break;
            }
        }
        in >> out;
    };
    next_int(w);
    next_int(h);
    next_int(maxval);
    if (!in || w <= 0 || h <= 0 || (maxval != 255 && maxval != 65535))
        fail("read_pnm: malformed header", path);
    in.get();

    ImagePlane img(h, w, channels);
    const size_t n = static_cast<size_t>(h) * w * channels;
    if (maxval == 255) {
        std::vector<uint8_t> buf(n);
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n));
        if (!in) fail("read_pnm: truncated payload", path);
        for (size_t i = 0; i < n; ++i) img.data()[i] = buf[i] / 255.f;
    } else {
        std::vector<uint8_t> buf(n * 2);
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n * 2));
        if (!in) fail("read_pnm: truncated payload", path);
        for (size_t i = 0; i < n; ++i) {
            const uint16_t v = static_cast<uint16_t>((buf[2 * i] << 8) | buf[2 * i + 1]);
            img.data()[i] = v / 65535.f;
        }
    }
    return img;
}

void write_pnm(const std::string& path, const ImagePlane& img) {
    if (img.channels() != 1 && img.channels() != 3)
        fail("write_pnm: 1 or 3 channels required", path);
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("write_pnm: cannot open", path);
    out << (img.channels() == 3 ? "P6" : "P5") << '\n'
        << img.width() << ' ' << img.height() << "\n255\n";
    for (float v : img.data()) {
        const int q = static_cast<int>(std::lround(std::clamp(v, 0.f, 1.f) * 255.f));
        out.put(static_cast<char>(q));
    }
    if (!out) fail("write_pnm: write failure", path);
}

}  // namespace

ImagePlane read_image(const std::string& path) {
    const std::string ext = lower_ext(path);
    if (ext == "pgm" || ext == "ppm" || ext == "pnm") return read_pnm(path);
    if (ext != "png") fail("read_image: unsupported extension", path);

    PngImage raw = read_png_raw(path);
    ImagePlane img(raw.height, raw.width, raw.channels);
    const float denom = raw.bit_depth == 16 ? 65535.f : 255.f;
    for (size_t i = 0; i < raw.pixels.size(); ++i) img.data()[i] = raw.pixels[i] / denom;
    return img;
}

void write_image(const std::string& path, const ImagePlane& img) {
    const std::string ext = lower_ext(path);
    if (ext == "pgm" || ext == "ppm" || ext == "pnm") {
        write_pnm(path, img);
        return;
    }
    if (ext != "png") fail("write_image: unsupported extension", path);
    if (img.channels() != 1 && img.channels() != 3)
        fail("write_image: 1 or 3 channels required", path);

    PngImage raw;
    raw.height = img.height();
    raw.width = img.width();
    raw.channels = img.channels();
    raw.bit_depth = 8;
    raw.pixels.resize(img.data().size());
    for (size_t i = 0; i < raw.pixels.size(); ++i)
        raw.pixels[i] = static_cast<uint16_t>(
            std::lround(std::clamp(img.data()[i], 0.f, 1.f) * 255.f));
    write_png_raw(path, raw);
}

std::map<std::string, std::string> parse_key_value(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: missing '=' in line: " + line);
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw std::runtime_error("config: empty key in line: " + line);
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

}  // namespace twsm
