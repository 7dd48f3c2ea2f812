#include "fnls/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace fnls {

static_assert(std::endian::native == std::endian::little,
              "snapshot format assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'F', 'N', 'L', 'S'};
constexpr uint32_t kVersion = 1;

template <typename T>
void put(std::ofstream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T take(std::ifstream& is, const std::string& path) {
    T v;
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw std::runtime_error("snapshot: truncated file " + path);
    return v;
}

} // namespace

void write_snapshot(const std::string& path, const Field& u, double time) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("snapshot: cannot open " + path + " for writing");
    os.write(kMagic, 4);
    put<uint32_t>(os, kVersion);
    put<uint32_t>(os, static_cast<uint32_t>(u.grid->nx));
    put<uint32_t>(os, static_cast<uint32_t>(u.grid->ny));
    put<double>(os, u.grid->lx);
    put<double>(os, time);
    put<uint8_t>(os, u.repr == Representation::physical ? 0 : 1);
    for (const auto& z : u.data) {
        put<double>(os, z.real());
        put<double>(os, z.imag());
    }
    if (!os) throw std::runtime_error("snapshot: write failed for " + path);
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("snapshot: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("snapshot: bad magic in " + path);
    const auto version = take<uint32_t>(is, path);
    if (version != kVersion)
        throw std::runtime_error("snapshot: unsupported version " + std::to_string(version) +
                                 " in " + path);
    const auto nx = take<uint32_t>(is, path);
    const auto ny = take<uint32_t>(is, path);
    const auto lx = take<double>(is, path);
    const auto time = take<double>(is, path);
    const auto repr = take<uint8_t>(is, path);
    if (repr > 1) throw std::runtime_error("snapshot: bad representation byte in " + path);

    Snapshot snap;
    snap.time = time;
    snap.field = make_field(make_grid(static_cast<int>(nx), static_cast<int>(ny), lx),
                            repr == 0 ? Representation::physical : Representation::spectral);
    for (auto& z : snap.field.data) {
        const double re = take<double>(is, path);
        const double im = take<double>(is, path);
        z = cdouble{re, im};
    }
    return snap;
}

} // namespace fnls
