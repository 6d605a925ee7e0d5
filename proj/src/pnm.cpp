#include "imgfilt/pnm.hpp"

#include <cstdint>
#include <fstream>
#include <limits>

namespace imgfilt {

namespace {

constexpr std::int64_t kMaxPixels = std::int64_t{1} << 30;

struct Scanner {
    std::span<const std::byte> data;
    std::size_t pos = 0;

    bool eof() const { return pos >= data.size(); }
    char peek() const { return static_cast<char>(data[pos]); }
    char take() { return static_cast<char>(data[pos++]); }

    // Whitespace and '#'-to-end-of-line comments separate header tokens and
    // ASCII samples.
    void skip_separators() {
        while (!eof()) {
            const char c = peek();
            if (c == '#') {
                while (!eof() && take() != '\n') {
                }
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' ||
                       c == '\f') {
                ++pos;
            } else {
                break;
            }
        }
    }

    std::int64_t read_number(const char* field) {
        skip_separators();
        if (eof() || peek() < '0' || peek() > '9') {
            throw PnmError(std::string("expected numeric ") + field);
        }
        std::int64_t value = 0;
        while (!eof() && peek() >= '0' && peek() <= '9') {
            value = value * 10 + (take() - '0');
            if (value > std::numeric_limits<std::int32_t>::max()) {
                throw PnmError(std::string(field) + " overflows supported range");
            }
        }
        return value;
    }
};

std::vector<Intensity> read_samples(Scanner& s, std::size_t count, bool ascii) {
    std::vector<Intensity> samples;
    samples.reserve(count);
    if (ascii) {
        for (std::size_t i = 0; i < count; ++i) {
            s.skip_separators();
            if (s.eof()) throw PnmError("truncated payload: expected " + std::to_string(count) +
                                        " samples, got " + std::to_string(i));
            const std::int64_t v = s.read_number("sample");
            if (v > 255) throw PnmError("sample value " + std::to_string(v) + " exceeds maxval 255");
            samples.push_back(static_cast<Intensity>(v));
        }
    } else {
        // Exactly one whitespace byte follows the maxval before raw data.
        if (s.eof()) throw PnmError("truncated payload: missing data after header");
        ++s.pos;
        if (s.data.size() - s.pos < count) {
            throw PnmError("truncated payload: expected " + std::to_string(count) +
                           " bytes, got " + std::to_string(s.data.size() - s.pos));
        }
        for (std::size_t i = 0; i < count; ++i) {
            samples.push_back(static_cast<Intensity>(s.data[s.pos + i]));
        }
        s.pos += count;
    }
    return samples;
}

void append(std::vector<std::byte>& out, std::string_view text) {
    for (const char c : text) out.push_back(static_cast<std::byte>(c));
}

void write_header(std::vector<std::byte>& out, std::string_view magic, int width, int height) {
    append(out, magic);
    append(out, "\n");
    append(out, std::to_string(width));
    append(out, " ");
    append(out, std::to_string(height));
    append(out, "\n255\n");
}

}  // namespace

PnmImage read_pnm(std::span<const std::byte> bytes) {
    Scanner s{bytes};
    if (bytes.size() < 2 || s.take() != 'P') {
        throw PnmError("bad magic number: not a PNM stream");
    }
    const char kind = s.take();
    bool ascii = false;
    bool color = false;
    switch (kind) {
        case '2': ascii = true; color = false; break;
        case '3': ascii = true; color = true; break;
        case '5': ascii = false; color = false; break;
        case '6': ascii = false; color = true; break;
        default:
            throw PnmError(std::string("bad magic number 'P") + kind + "'");
    }

    const std::int64_t width = s.read_number("width");
    const std::int64_t height = s.read_number("height");
    if (width < 1) throw PnmError("width must be positive");
    if (height < 1) throw PnmError("height must be positive");
    if (width * height > kMaxPixels) {
        throw PnmError("width x height overflows supported image size");
    }
    const std::int64_t maxval = s.read_number("maxval");
    if (maxval != 255) {
        throw PnmError("unsupported maxval " + std::to_string(maxval) + " (must be 255)");
    }

    const std::size_t pixel_count = static_cast<std::size_t>(width * height);
    const std::size_t sample_count = pixel_count * (color ? 3 : 1);
    std::vector<Intensity> samples = read_samples(s, sample_count, ascii);

    const int w = static_cast<int>(width);
    const int h = static_cast<int>(height);
    if (!color) {
        return GrayImage::from_pixels(w, h, std::move(samples));
    }
    std::vector<Intensity> r(pixel_count), g(pixel_count), b(pixel_count);
    for (std::size_t i = 0; i < pixel_count; ++i) {
        r[i] = samples[3 * i];
        g[i] = samples[3 * i + 1];
        b[i] = samples[3 * i + 2];
    }
    return RgbImage(GrayImage::from_pixels(w, h, std::move(r)),
                    GrayImage::from_pixels(w, h, std::move(g)),
                    GrayImage::from_pixels(w, h, std::move(b)));
}

PnmImage read_pnm(const std::vector<std::byte>& bytes) {
    return read_pnm(std::span<const std::byte>(bytes));
}

PnmImage read_pnm(std::string_view bytes) {
    return read_pnm(std::span<const std::byte>(
        reinterpret_cast<const std::byte*>(bytes.data()), bytes.size()));
}

std::vector<std::byte> write_pnm(const GrayImage& img, bool ascii) {
    std::vector<std::byte> out;
    out.reserve(16 + img.pixel_count() * (ascii ? 4 : 1));
    write_header(out, ascii ? "P2" : "P5", img.width(), img.height());
    if (ascii) {
        for (int r = 0; r < img.height(); ++r) {
            for (int c = 0; c < img.width(); ++c) {
                if (c > 0) append(out, " ");
                append(out, std::to_string(img.at(r, c)));
            }
            append(out, "\n");
        }
    } else {
        for (const Intensity v : img.pixels()) out.push_back(static_cast<std::byte>(v));
    }
    return out;
}

std::vector<std::byte> write_pnm(const RgbImage& img, bool ascii) {
    std::vector<std::byte> out;
    out.reserve(16 + static_cast<std::size_t>(img.width()) * img.height() * (ascii ? 12 : 3));
    write_header(out, ascii ? "P3" : "P6", img.width(), img.height());
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) {
            if (ascii) {
                if (c > 0) append(out, " ");
                append(out, std::to_string(img.red().at(r, c)));
                append(out, " ");
                append(out, std::to_string(img.green().at(r, c)));
                append(out, " ");
                append(out, std::to_string(img.blue().at(r, c)));
            } else {
                out.push_back(static_cast<std::byte>(img.red().at(r, c)));
                out.push_back(static_cast<std::byte>(img.green().at(r, c)));
                out.push_back(static_cast<std::byte>(img.blue().at(r, c)));
            }
        }
        if (ascii) append(out, "\n");
    }
    return out;
}

std::vector<std::byte> write_pnm(const PnmImage& img, bool ascii) {
    return std::visit([ascii](const auto& i) { return write_pnm(i, ascii); }, img);
}

PnmImage load_pnm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::vector<std::byte> bytes;
    char chunk[4096];
    while (in.read(chunk, sizeof chunk) || in.gcount() > 0) {
        const auto got = static_cast<std::size_t>(in.gcount());
        const auto* p = reinterpret_cast<const std::byte*>(chunk);
        bytes.insert(bytes.end(), p, p + got);
    }
    return read_pnm(bytes);
}

void save_pnm(const std::string& path, const PnmImage& img, bool ascii) {
    const std::vector<std::byte> bytes = write_pnm(img, ascii);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace imgfilt
