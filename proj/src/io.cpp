#include "moda/io.hpp"

#include "moda/rng.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <vector>

namespace moda::io {

namespace {

void write_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t read_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void write_f32(std::ostream& os, float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    write_u32(os, bits);
}

float read_f32(std::istream& is) {
    std::uint32_t bits = read_u32(is);
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
}

void write_f32_row_major(std::ostream& os, const Eigen::Ref<const MatX>& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) write_f32(os, static_cast<float>(m(r, c)));
}

MatX read_f32_row_major(std::istream& is, Eigen::Index rows, Eigen::Index cols) {
    MatX m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = static_cast<double>(read_f32(is));
    return m;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    require(os.good(), ErrKind::io, "cannot open for writing: " + path);
    return os;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    require(is.good(), ErrKind::io, "cannot open for reading: " + path);
    return is;
}

void expect_magic(std::istream& is, const char* magic, const std::string& path) {
    char got[4];
    is.read(got, 4);
    require(is.good() && std::memcmp(got, magic, 4) == 0, ErrKind::io,
            "bad magic in " + path + " (expected " + magic + ")");
}

}  // namespace

bool file_exists(const std::string& path) { return std::filesystem::exists(path); }

void write_mseq(const std::string& path, const MotionSequence& seq) {
    require(!seq.frames.empty(), ErrKind::validation, "refusing to write empty sequence");
    const Eigen::Index k = seq.frames[0].keypoint_count();
    auto os = open_out(path);
    os.write("MSEQ", 4);
    write_u32(os, 1);
    write_u32(os, static_cast<std::uint32_t>(seq.length()));
    write_u32(os, static_cast<std::uint32_t>(k));
    write_f32(os, static_cast<float>(seq.fps));
    write_f32_row_major(os, sequence_to_matrix(seq));
    require(os.good(), ErrKind::io, "write failed: " + path);
}

MotionSequence read_mseq(const std::string& path) {
    auto is = open_in(path);
    expect_magic(is, "MSEQ", path);
    const std::uint32_t version = read_u32(is);
    require(version == 1, ErrKind::io, "unsupported MSEQ version in " + path);
    const std::uint32_t t = read_u32(is);
    const std::uint32_t k = read_u32(is);
    const double fps = static_cast<double>(read_f32(is));
    require(t >= 1 && k >= 1, ErrKind::io, "corrupt MSEQ header in " + path);
    MatX m = read_f32_row_major(is, t, 3 * static_cast<Eigen::Index>(k) + 7);
    require(is.good(), ErrKind::io, "truncated MSEQ payload in " + path);
    return sequence_from_matrix(m, k, fps);
}

void write_mseq_text(const std::string& path, const MotionSequence& seq) {
    auto os = open_out(path);
    const MatX m = sequence_to_matrix(seq);
    char buf[64];
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.9g", m(r, c));
            if (c) os << ' ';
            os << buf;
        }
        os << '\n';
    }
    require(os.good(), ErrKind::io, "write failed: " + path);
}

void write_afea(const std::string& path, const Eigen::Ref<const MatX>& features) {
    require(features.rows() >= 1 && features.cols() >= 1, ErrKind::validation,
            "audio feature matrix is empty");
    auto os = open_out(path);
    os.write("AFEA", 4);
    write_u32(os, 1);
    write_u32(os, static_cast<std::uint32_t>(features.rows()));
    write_u32(os, static_cast<std::uint32_t>(features.cols()));
    write_f32_row_major(os, features);
    require(os.good(), ErrKind::io, "write failed: " + path);
}

MatX read_afea(const std::string& path) {
    auto is = open_in(path);
    expect_magic(is, "AFEA", path);
    const std::uint32_t version = read_u32(is);
    require(version == 1, ErrKind::io, "unsupported AFEA version in " + path);
    const std::uint32_t t = read_u32(is);
    const std::uint32_t d = read_u32(is);
    require(t >= 1 && d >= 1, ErrKind::io, "corrupt AFEA header in " + path);
    MatX m = read_f32_row_major(is, t, d);
    require(is.good(), ErrKind::io, "truncated AFEA payload in " + path);
    return m;
}

void write_norm_stats(const std::string& path, const NormStats& stats) {
    require(stats.mean.size() == stats.std.size(), ErrKind::dimension,
            "stats mean/std length mismatch");
    auto os = open_out(path);
    for (Eigen::Index i = 0; i < stats.mean.size(); ++i)
        write_f32(os, static_cast<float>(stats.mean[i]));
    for (Eigen::Index i = 0; i < stats.std.size(); ++i)
        write_f32(os, static_cast<float>(stats.std[i]));
    require(os.good(), ErrKind::io, "write failed: " + path);
}

NormStats read_norm_stats(const std::string& path) {
    const auto nbytes = std::filesystem::file_size(path);
    require(nbytes % 8 == 0 && nbytes > 0, ErrKind::io, "stats file has invalid size: " + path);
    const Eigen::Index dim = static_cast<Eigen::Index>(nbytes / 8);
    auto is = open_in(path);
    NormStats stats;
    stats.mean.resize(dim);
    stats.std.resize(dim);
    for (Eigen::Index i = 0; i < dim; ++i) stats.mean[i] = static_cast<double>(read_f32(is));
    for (Eigen::Index i = 0; i < dim; ++i) stats.std[i] = static_cast<double>(read_f32(is));
    require(is.good(), ErrKind::io, "truncated stats file: " + path);
    return stats;
}

}  // namespace moda::io

namespace moda {

std::uint64_t fnv1a(const void* data, std::size_t nbytes) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < nbytes; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t fnv1a_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    require(is.good(), ErrKind::io, "cannot open for hashing: " + path);
    std::vector<char> buf(1 << 16);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    while (is) {
        is.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        const auto n = is.gcount();
        for (std::streamsize i = 0; i < n; ++i) {
            h ^= static_cast<unsigned char>(buf[static_cast<std::size_t>(i)]);
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

}  // namespace moda
