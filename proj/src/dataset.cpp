// SPDX-License-Identifier: Apache-2.0
#include "cauchyrician/dataset.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "cauchyrician/errors.hpp"

namespace cauchyrician {
namespace {

std::string ctx(const InputDataset& d) { return "'" + d.path.string() + "'"; }

std::vector<char> read_all_bytes(const InputDataset& d) {
    std::ifstream in(d.path, std::ios::binary);
    if (!in) throw DataError("load_dataset: cannot open " + ctx(d));
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return bytes;
}

void check_value(double v, const InputDataset& d, const std::string& where) {
    if (!std::isfinite(v) || v < 0.0) {
        throw DataError("load_dataset: negative or non-finite amplitude at " + where + " in " +
                        ctx(d));
    }
}

std::vector<double> load_csv(const InputDataset& d) {
    std::ifstream in(d.path);
    if (!in) throw DataError("load_dataset: cannot open " + ctx(d));
    std::vector<double> out;
    std::string line;
    std::size_t lineno = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        // trim
        std::size_t b = line.find_first_not_of(" \t");
        if (b == std::string::npos) continue;  // blank line
        std::size_t e = line.find_last_not_of(" \t");
        std::string tok = line.substr(b, e - b + 1);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        const bool parsed = ec == std::errc() && ptr == tok.data() + tok.size();
        if (!parsed) {
            if (first_content) {  // optional header: non-numeric first line
                first_content = false;
                continue;
            }
            throw DataError("load_dataset: malformed record at line " + std::to_string(lineno) +
                            " in " + ctx(d));
        }
        first_content = false;
        check_value(v, d, "line " + std::to_string(lineno));
        out.push_back(v);
    }
    if (out.empty()) throw DataError("load_dataset: no amplitudes in " + ctx(d));
    return out;
}

std::vector<double> load_raw_f64(const InputDataset& d) {
    const std::vector<char> bytes = read_all_bytes(d);
    if (bytes.size() % 8 != 0) {
        throw DataError("load_dataset: truncated raw_f64le record at byte offset " +
                        std::to_string(bytes.size() - bytes.size() % 8) + " in " + ctx(d));
    }
    const std::size_t n = bytes.size() / 8;
    if (n == 0) throw DataError("load_dataset: empty raw_f64le file " + ctx(d));
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t u = 0;  // assemble little-endian explicitly
        for (int b = 7; b >= 0; --b) {
            u = (u << 8) | static_cast<unsigned char>(bytes[8 * i + static_cast<std::size_t>(b)]);
        }
        double v = 0.0;
        std::memcpy(&v, &u, 8);
        check_value(v, d, "byte offset " + std::to_string(8 * i));
        out[i] = v;
    }
    return out;
}

std::vector<double> extract_patch(const std::vector<double>& raster, std::size_t width,
                                  std::size_t height, const std::optional<PatchGeometry>& patch,
                                  const InputDataset& d) {
    PatchGeometry g = patch.value_or(PatchGeometry{0, 0, height, width});
    if (g.rows == 0) g.rows = height - std::min(g.row0, height);
    if (g.cols == 0) g.cols = width - std::min(g.col0, width);
    if (g.row0 + g.rows > height || g.col0 + g.cols > width || g.rows == 0 || g.cols == 0) {
        throw DataError("load_dataset: patch out of raster bounds (" + std::to_string(width) + "x" +
                        std::to_string(height) + ") in " + ctx(d));
    }
    std::vector<double> out;
    out.reserve(g.rows * g.cols);
    for (std::size_t r = 0; r < g.rows; ++r) {
        const std::size_t base = (g.row0 + r) * width + g.col0;
        out.insert(out.end(), raster.begin() + base, raster.begin() + base + g.cols);
    }
    return out;
}

std::vector<double> load_raw_u16(const InputDataset& d) {
    if (d.raster_width == 0 || d.raster_height == 0) {
        throw DataError("load_dataset: raw_u16le_raster requires raster width and height");
    }
    const std::vector<char> bytes = read_all_bytes(d);
    const std::size_t expect = d.raster_width * d.raster_height * 2;
    if (bytes.size() != expect) {
        throw DataError("load_dataset: raster size mismatch, expected " + std::to_string(expect) +
                        " bytes, found " + std::to_string(bytes.size()) + " (truncation at byte " +
                        std::to_string(std::min(bytes.size(), expect)) + ") in " + ctx(d));
    }
    std::vector<double> raster(d.raster_width * d.raster_height);
    for (std::size_t i = 0; i < raster.size(); ++i) {
        const auto lo = static_cast<unsigned char>(bytes[2 * i]);
        const auto hi = static_cast<unsigned char>(bytes[2 * i + 1]);
        raster[i] = static_cast<double>(lo | (static_cast<unsigned>(hi) << 8));
    }
    return extract_patch(raster, d.raster_width, d.raster_height, d.patch, d);
}

std::vector<double> load_pgm(const InputDataset& d) {
    const std::vector<char> bytes = read_all_bytes(d);
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
        throw DataError("load_dataset: not a PGM file (want magic P2 or P5) " + ctx(d));
    }
    const bool binary = bytes[1] == '5';
    std::size_t pos = 2;
    const auto next_token = [&]() -> std::string {
        while (pos < bytes.size()) {
            if (bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
                ++pos;
            } else {
                break;
            }
        }
        std::size_t start = pos;
        while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
        if (start == pos) throw DataError("load_dataset: truncated PGM header in " + ctx(d));
        return std::string(bytes.data() + start, pos - start);
    };
    const auto parse_size = [&](const std::string& tok) {
        std::size_t v = 0;
        const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || p != tok.data() + tok.size()) {
            throw DataError("load_dataset: malformed PGM header token '" + tok + "' in " + ctx(d));
        }
        return v;
    };
    const std::size_t width = parse_size(next_token());
    const std::size_t height = parse_size(next_token());
    const std::size_t maxval = parse_size(next_token());
    if (width == 0 || height == 0 || maxval == 0 || maxval > 65535) {
        throw DataError("load_dataset: unsupported PGM geometry/maxval in " + ctx(d));
    }
    std::vector<double> raster(width * height);
    if (binary) {
        ++pos;  // single whitespace after maxval
        const std::size_t bpp = maxval > 255 ? 2 : 1;
        if (bytes.size() - pos < raster.size() * bpp) {
            throw DataError("load_dataset: truncated PGM payload at byte " + std::to_string(pos) +
                            " in " + ctx(d));
        }
        for (std::size_t i = 0; i < raster.size(); ++i) {
            if (bpp == 1) {
                raster[i] = static_cast<unsigned char>(bytes[pos + i]);
            } else {
                // 16-bit PGM samples are big-endian
                const auto hi = static_cast<unsigned char>(bytes[pos + 2 * i]);
                const auto lo = static_cast<unsigned char>(bytes[pos + 2 * i + 1]);
                raster[i] = static_cast<double>((static_cast<unsigned>(hi) << 8) | lo);
            }
        }
    } else {
        for (std::size_t i = 0; i < raster.size(); ++i) {
            const std::size_t v = parse_size(next_token());
            if (v > maxval) {
                throw DataError("load_dataset: PGM sample exceeds maxval in " + ctx(d));
            }
            raster[i] = static_cast<double>(v);
        }
    }
    return extract_patch(raster, width, height, d.patch, d);
}

}  // namespace

std::vector<double> load_dataset(const InputDataset& d) {
    if (!std::filesystem::exists(d.path)) {
        throw DataError("load_dataset: missing file " + ctx(d));
    }
    std::vector<double> out;
    switch (d.format) {
        case DataFormat::csv_amplitudes: out = load_csv(d); break;
        case DataFormat::raw_f64le: out = load_raw_f64(d); break;
        case DataFormat::raw_u16le_raster: out = load_raw_u16(d); break;
        case DataFormat::pgm_raster: out = load_pgm(d); break;
    }
    if (out.empty()) throw DataError("load_dataset: empty result from " + ctx(d));
    return out;
}

}  // namespace cauchyrician
