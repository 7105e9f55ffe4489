#include "sinest/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace sinest {

namespace {

std::uint64_t to_le(std::uint64_t v) {
    if constexpr (std::endian::native == std::endian::little) return v;
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r = (r << 8) | ((v >> (8 * i)) & 0xff);
    return r;
}

}  // namespace

void write_raw_f64(const std::string& path, std::span<const double> samples) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    for (double v : samples) {
        const std::uint64_t le = to_le(std::bit_cast<std::uint64_t>(v));
        out.write(reinterpret_cast<const char*>(&le), sizeof(le));
    }
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<double> read_raw_f64(const std::string& path) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    const std::streamoff size = in.tellg();
    if (size % static_cast<std::streamoff>(sizeof(double)) != 0)
        throw std::runtime_error(
            path + ": truncated sample at byte offset " +
            std::to_string(size - size % sizeof(double)) + " (file size " +
            std::to_string(size) + " is not a multiple of 8)");
    in.seekg(0);
    std::vector<double> samples(static_cast<std::size_t>(size) / sizeof(double));
    for (double& v : samples) {
        std::uint64_t le = 0;
        in.read(reinterpret_cast<char*>(&le), sizeof(le));
        v = std::bit_cast<double>(to_le(le));
    }
    if (!in) throw std::runtime_error("read failed: " + path);
    return samples;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace sinest
