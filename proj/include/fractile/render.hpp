#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "fractile/expand.hpp"

namespace fractile {

// Pixel values: 0 = background, 1..8 = transform palette index (binary
// images only use 0/1).
struct RasterImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    std::uint8_t at(int r, int c) const {
        return pixels[static_cast<std::size_t>(r) * width + c];
    }
    bool operator==(const RasterImage&) const = default;
};

// Background plus one color per transform, indexed by digit.
inline constexpr std::array<std::array<std::uint8_t, 3>, 9> texture_palette = {{
    {255, 255, 255},  // background
    {0, 0, 0},        // R0
    {230, 25, 75},    // R1
    {60, 180, 75},    // R2
    {0, 90, 200},     // R3
    {245, 130, 0},    // K0
    {145, 30, 180},   // K1
    {70, 240, 240},   // K2
    {240, 50, 230},   // K3
}};

namespace detail {

inline RasterImage scale_grid(const Grid& g, int scale, std::size_t max_dim) {
    if (scale < 1) throw std::invalid_argument("scale must be >= 1");
    const std::size_t dim = static_cast<std::size_t>(g.side) * scale;
    if (dim > max_dim)
        throw limit_error("image dimension " + std::to_string(dim) +
                          " exceeds the size limit " + std::to_string(max_dim));
    RasterImage img;
    img.width = img.height = static_cast<int>(dim);
    img.pixels.resize(dim * dim);
    for (int r = 0; r < g.side; ++r)
        for (int c = 0; c < g.side; ++c) {
            const std::uint8_t v = g.at(r, c);
            if (!v) continue;
            for (int dr = 0; dr < scale; ++dr) {
                const std::size_t base =
                    (static_cast<std::size_t>(r) * scale + dr) * dim +
                    static_cast<std::size_t>(c) * scale;
                for (int dc = 0; dc < scale; ++dc) img.pixels[base + dc] = v;
            }
        }
    return img;
}

}  // namespace detail

inline RasterImage rasterize(const BinaryPattern& p, int scale,
                             std::size_t max_dim = default_max_side()) {
    return detail::scale_grid(p.grid, scale, max_dim);
}

inline RasterImage rasterize_labeled(const LabeledPattern& p, int scale,
                                     std::size_t max_dim = default_max_side()) {
    return detail::scale_grid(p.grid, scale, max_dim);
}

enum class ImageFormat { p1, p4, p6 };

inline std::optional<ImageFormat> image_format_from_name(std::string_view s) {
    if (s == "p1" || s == "P1") return ImageFormat::p1;
    if (s == "p4" || s == "P4") return ImageFormat::p4;
    if (s == "p6" || s == "P6") return ImageFormat::p6;
    return std::nullopt;
}

inline std::string_view file_extension(ImageFormat f) {
    return f == ImageFormat::p6 ? ".ppm" : ".pbm";
}

// Plain-text portable bitmap; nonzero pixels are black (1).
inline std::string encode_p1(const RasterImage& img) {
    std::string out = "P1\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n";
    for (int r = 0; r < img.height; ++r)
        for (int c = 0; c < img.width; ++c) {
            out += img.at(r, c) ? '1' : '0';
            // Keep lines within the format's 70-character limit.
            out += (c == img.width - 1 || c % 32 == 31) ? '\n' : ' ';
        }
    return out;
}

// Binary portable bitmap; rows padded to whole bytes, high bit first.
inline std::string encode_p4(const RasterImage& img) {
    std::string out = "P4\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n";
    const int row_bytes = (img.width + 7) / 8;
    for (int r = 0; r < img.height; ++r)
        for (int b = 0; b < row_bytes; ++b) {
            std::uint8_t byte = 0;
            for (int bit = 0; bit < 8; ++bit) {
                const int c = b * 8 + bit;
                if (c < img.width && img.at(r, c)) byte |= 0x80u >> bit;
            }
            out += static_cast<char>(byte);
        }
    return out;
}

// Binary portable pixmap over the fixed 9-entry palette.
inline std::string encode_p6(const RasterImage& img) {
    std::string out =
        "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
    for (std::uint8_t v : img.pixels) {
        const auto& rgb = texture_palette[v];
        out += static_cast<char>(rgb[0]);
        out += static_cast<char>(rgb[1]);
        out += static_cast<char>(rgb[2]);
    }
    return out;
}

inline std::string encode_image(const RasterImage& img, ImageFormat f) {
    switch (f) {
        case ImageFormat::p1: return encode_p1(img);
        case ImageFormat::p4: return encode_p4(img);
        case ImageFormat::p6: return encode_p6(img);
    }
    throw std::invalid_argument("unknown image format");
}

// Write-then-rename, so interrupted runs never leave truncated files.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string() +
                                 ": " + ec.message());
}

inline const std::vector<std::pair<std::string, std::string>>& preset_table() {
    static const std::vector<std::pair<std::string, std::string>> presets = {
        {"sierpinski-triangle", "0 R0 / R0 R0"},
        {"sierpinski-carpet", "R0 R0 R0 / R0 0 R0 / R0 R0 R0"},
        {"von-koch", "0 R0 R0 / R0 0 R0 / R0 R0 0"},
        {"maple-leaf", "0 R0 / R0 R2"},
        {"demo-2x2-r3k2", "0 R0 / R3 K2"},
        {"demo-3x3-rot", "0 0 R0 / 0 0 R1 / R0 R3 R2"},
    };
    return presets;
}

inline Configuration preset(std::string_view name) {
    for (const auto& [key, text] : preset_table())
        if (key == name) return parse_config(text);
    std::string msg = "unknown preset '" + std::string(name) + "'; valid names:";
    for (const auto& [key, text] : preset_table()) msg += " " + key;
    throw std::invalid_argument(msg);
}

struct GalleryEntry {
    std::string file;
    std::string id;
    std::string config_text;
};

struct GalleryResult {
    std::vector<GalleryEntry> entries;
    std::filesystem::path manifest;
    std::filesystem::path sheet;
};

namespace detail {

inline std::string gallery_name(const Configuration& c) {
    if (c.n == 2 && c.cells[0] == 0 && c.cells[1] && c.cells[2] && c.cells[3]) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "motif%03d", motif_id(c));
        return buf;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "config-%llx",
                  static_cast<unsigned long long>(encode(c)));
    return buf;
}

}  // namespace detail

// One image per configuration plus a manifest and a composite index sheet,
// all byte-deterministic.
inline GalleryResult gallery(const std::vector<Configuration>& configs,
                             const std::filesystem::path& out_dir, int depth, int scale = 1,
                             int columns = 16, ImageFormat format = ImageFormat::p4) {
    if (configs.empty()) throw std::invalid_argument("gallery needs at least one configuration");
    if (columns < 1) throw std::invalid_argument("gallery needs at least one column");
    std::filesystem::create_directories(out_dir);

    GalleryResult result;
    std::vector<RasterImage> thumbs;
    thumbs.reserve(configs.size());
    std::string manifest_text;
    for (const Configuration& c : configs) {
        const BinaryPattern pattern = expand(c, depth);
        RasterImage img = format == ImageFormat::p6
                              ? rasterize_labeled(expand_labeled(c, depth), scale)
                              : rasterize(pattern, scale);
        const std::string name = detail::gallery_name(c);
        const std::string file = name + std::string(file_extension(format));
        write_file_atomic(out_dir / file, encode_image(img, format));
        manifest_text += file + "\t" + name + "\t" + format_config(c) + "\n";
        result.entries.push_back({file, name, format_config(c)});
        thumbs.push_back(std::move(img));
    }

    result.manifest = out_dir / "index.txt";
    write_file_atomic(result.manifest, manifest_text);

    // Composite sheet: thumbnails tiled in input order with a 2-pixel gap.
    const int gap = 2;
    const int cols = std::min<int>(columns, static_cast<int>(thumbs.size()));
    const int rows = (static_cast<int>(thumbs.size()) + cols - 1) / cols;
    int cell = 0;
    for (const auto& t : thumbs) cell = std::max(cell, t.width);
    RasterImage sheet;
    sheet.width = cols * (cell + gap) - gap;
    sheet.height = rows * (cell + gap) - gap;
    sheet.pixels.assign(static_cast<std::size_t>(sheet.width) * sheet.height, 0);
    for (std::size_t i = 0; i < thumbs.size(); ++i) {
        const int r0 = static_cast<int>(i) / cols * (cell + gap);
        const int c0 = static_cast<int>(i) % cols * (cell + gap);
        const RasterImage& t = thumbs[i];
        for (int r = 0; r < t.height; ++r)
            for (int c = 0; c < t.width; ++c)
                sheet.pixels[static_cast<std::size_t>(r0 + r) * sheet.width + (c0 + c)] =
                    t.at(r, c);
    }
    result.sheet = out_dir / (format == ImageFormat::p6 ? "index.ppm" : "index.pbm");
    write_file_atomic(result.sheet, encode_image(sheet, format));
    return result;
}

}  // namespace fractile
