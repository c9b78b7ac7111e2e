#include "mvg/io.hpp"

#include <bit>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include "mvg/error.hpp"

namespace mvg {

namespace {

std::string manifold_header(const Manifold& m) {
    switch (m.kind()) {
        case ManifoldKind::euclidean: return "euclidean " + std::to_string(m.param());
        case ManifoldKind::circle: return "circle";
        case ManifoldKind::sphere2: return "sphere2";
        case ManifoldKind::spd: return "spd " + std::to_string(m.param());
    }
    return {};
}

std::size_t parse_count(const std::string& s, const char* what) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw FormatError(std::string("MVI: malformed ") + what + " '" + s + "'");
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        throw FormatError(std::string("MVI: malformed ") + what + " '" + s + "'");
    }
}

Manifold parse_manifold(const std::string& text) {
    std::istringstream in(text);
    std::string kind, param, extra;
    in >> kind >> param >> extra;
    if (!extra.empty()) throw FormatError("MVI: malformed manifold '" + text + "'");
    try {
        if (kind == "circle" && param.empty()) return Manifold::circle();
        if (kind == "sphere2" && param.empty()) return Manifold::sphere2();
        if (kind == "euclidean") return Manifold::euclidean(parse_count(param, "dimension"));
        if (kind == "spd") return Manifold::spd(parse_count(param, "dimension"));
    } catch (const ConfigError& e) {
        throw FormatError(std::string("MVI: ") + e.what());
    }
    throw FormatError("MVI: unknown manifold '" + text + "'");
}

}  // namespace

std::string encode_mvi(const MvImage& img) {
    std::string out = "MVI1\n";
    out += "manifold " + manifold_header(img.manifold()) + "\n";
    out += "rows " + std::to_string(img.rows()) + "\n";
    out += "cols " + std::to_string(img.cols()) + "\n";
    out += "byteorder LE\n";
    out += "count " + std::to_string(img.data().size()) + "\n";
    out += "data\n";
    out.reserve(out.size() + 8 * img.data().size());
    for (double v : img.data()) {
        const auto bits = std::bit_cast<std::uint64_t>(v);
        for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((bits >> (8 * b)) & 0xffu));
    }
    return out;
}

MvImage decode_mvi(const std::string& bytes) {
    std::size_t pos = 0;
    auto next_line = [&]() {
        const auto nl = bytes.find('\n', pos);
        if (nl == std::string::npos) throw FormatError("MVI: truncated header");
        std::string line = bytes.substr(pos, nl - pos);
        pos = nl + 1;
        return line;
    };
    auto field = [&](const std::string& key) {
        const std::string line = next_line();
        if (line.rfind(key + " ", 0) != 0) throw FormatError("MVI: expected '" + key + "' line, got '" + line + "'");
        return line.substr(key.size() + 1);
    };

    if (next_line() != "MVI1") throw FormatError("MVI: missing MVI1 signature");
    const Manifold m = parse_manifold(field("manifold"));
    const std::size_t rows = parse_count(field("rows"), "rows");
    const std::size_t cols = parse_count(field("cols"), "cols");
    if (field("byteorder") != "LE") throw FormatError("MVI: unsupported byte order");
    const std::size_t count = parse_count(field("count"), "count");
    if (next_line() != "data") throw FormatError("MVI: missing data marker");
    if (rows == 0 || cols == 0) throw FormatError("MVI: empty image");
    if (count != rows * cols * m.point_len())
        throw FormatError("MVI: count " + std::to_string(count) + " does not match rows*cols*point_len = " +
                          std::to_string(rows * cols * m.point_len()));

    const std::size_t expected = 8 * count;
    const std::size_t actual = bytes.size() - pos;
    if (actual != expected)
        throw FormatError("MVI: payload has " + std::to_string(actual) + " bytes, expected " +
                          std::to_string(expected));

    std::vector<double> data(count);
    for (std::size_t k = 0; k < count; ++k) {
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b)
            bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[pos + 8 * k + b])) << (8 * b);
        data[k] = std::bit_cast<double>(bits);
    }
    MvImage img(m, rows, cols, std::move(data));
    img.validate();
    return img;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw FormatError("cannot write '" + path.string() + "'");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) {
            out.close();
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw FormatError("failed writing '" + path.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw FormatError("cannot write '" + path.string() + "'");
    }
}

MvImage read_mvi(const std::filesystem::path& path) { return decode_mvi(read_file(path)); }

void write_mvi(const MvImage& img, const std::filesystem::path& path) { write_file(path, encode_mvi(img)); }

std::string encode_pbm(const Mask& mask) {
    std::string out = "P1\n# 1 = unknown, 0 = known\n";
    out += std::to_string(mask.cols()) + " " + std::to_string(mask.rows()) + "\n";
    for (std::size_t i = 0; i < mask.rows(); ++i) {
        for (std::size_t j = 0; j < mask.cols(); ++j) {
            if (j) out += ' ';
            out += mask.known(i, j) ? '0' : '1';
        }
        out += '\n';
    }
    return out;
}

Mask decode_pbm(const std::string& text) {
    std::size_t pos = 0;
    auto skip_space = [&] {
        while (pos < text.size()) {
            const char c = text[pos];
            if (c == '#') {
                while (pos < text.size() && text[pos] != '\n') ++pos;
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                ++pos;
            } else {
                break;
            }
        }
    };
    auto token = [&] {
        skip_space();
        const std::size_t start = pos;
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) && text[pos] != '#') ++pos;
        return text.substr(start, pos - start);
    };
    if (token() != "P1") throw FormatError("PBM: expected plain 'P1' signature");
    const std::string w = token();
    const std::string h = token();
    if (w.empty() || h.empty() || w.find_first_not_of("0123456789") != std::string::npos ||
        h.find_first_not_of("0123456789") != std::string::npos)
        throw FormatError("PBM: malformed dimensions");
    const std::size_t cols = std::stoull(w);
    const std::size_t rows = std::stoull(h);
    if (rows == 0 || cols == 0) throw FormatError("PBM: empty mask");

    std::vector<bool> known;
    known.reserve(rows * cols);
    while (known.size() < rows * cols) {
        skip_space();
        if (pos >= text.size())
            throw FormatError("PBM: expected " + std::to_string(rows * cols) + " pixels, got " +
                              std::to_string(known.size()));
        const char c = text[pos++];
        if (c == '0')
            known.push_back(true);
        else if (c == '1')
            known.push_back(false);
        else
            throw FormatError(std::string("PBM: invalid pixel character '") + c + "'");
    }
    skip_space();
    if (pos != text.size()) throw FormatError("PBM: trailing data after pixels");
    try {
        return Mask(rows, cols, std::move(known));
    } catch (const DataError& e) {
        throw FormatError(std::string("PBM: ") + e.what());
    }
}

Mask read_pbm(const std::filesystem::path& path) { return decode_pbm(read_file(path)); }

void write_pbm(const Mask& mask, const std::filesystem::path& path) { write_file(path, encode_pbm(mask)); }

}  // namespace mvg
