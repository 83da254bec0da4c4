#include "qlg/snapshot.hpp"

#include <array>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace qlg::io {

namespace {

constexpr std::array<char, 8> kMagic{'Q', 'L', 'G', 'S', 'N', 'A', 'P', '\0'};

template <typename U>
void put_le(std::ostream& out, U value) {
    std::array<char, sizeof(U)> bytes{};
    for (std::size_t i = 0; i < sizeof(U); ++i)
        bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFFu);
    out.write(bytes.data(), bytes.size());
}

template <typename U>
U get_le(std::istream& in, const char* what) {
    std::array<unsigned char, sizeof(U)> bytes{};
    if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size()))
        throw IoError(std::string("snapshot truncated while reading ") + what);
    U value = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) value |= static_cast<U>(bytes[i]) << (8 * i);
    return value;
}

std::uint32_t kind_code(PayloadKind k) {
    switch (k) {
        case PayloadKind::spinor4: return 0;
        case PayloadKind::spinor8: return 1;
        case PayloadKind::fourvector: return 2;
    }
    return 0;
}

PayloadKind kind_from_code(std::uint32_t c) {
    switch (c) {
        case 0: return PayloadKind::spinor4;
        case 1: return PayloadKind::spinor8;
        case 2: return PayloadKind::fourvector;
        default: break;
    }
    throw IoError("snapshot has unknown payload kind " + std::to_string(c));
}

}  // namespace

void write_snapshot(std::ostream& out, const LatticeField& field, std::uint64_t step) {
    out.write(kMagic.data(), kMagic.size());
    put_le<std::uint32_t>(out, kSnapshotVersion);
    for (int d : field.spec().dims) put_le<std::uint32_t>(out, static_cast<std::uint32_t>(d));
    put_le<std::uint32_t>(out, kind_code(field.kind()));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(field.comps()));
    put_le<std::uint64_t>(out, step);
    for (const cplx& z : field.data()) {
        put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(z.real()));
        put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(z.imag()));
    }
}

void write_snapshot(const std::string& path, const LatticeField& field, std::uint64_t step) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open snapshot for writing: " + path);
    write_snapshot(out, field, step);
    out.flush();
    if (!out) throw IoError("failed writing snapshot: " + path);
}

Snapshot read_snapshot(std::istream& in) {
    std::array<char, 8> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic)
        throw IoError("not a snapshot file (bad magic)");
    const auto version = get_le<std::uint32_t>(in, "version");
    if (version != kSnapshotVersion)
        throw IoError("unsupported snapshot version " + std::to_string(version));

    GridSpec spec;
    for (auto& d : spec.dims) {
        const auto v = get_le<std::uint32_t>(in, "dims");
        if (v == 0 || v > (1u << 20)) throw IoError("snapshot has invalid grid extent " + std::to_string(v));
        d = static_cast<int>(v);
    }
    const PayloadKind kind = kind_from_code(get_le<std::uint32_t>(in, "payload kind"));
    const auto comps = get_le<std::uint32_t>(in, "components");
    if (static_cast<int>(comps) != components(kind))
        throw IoError("snapshot component count does not match its payload kind");

    Snapshot snap;
    snap.step = get_le<std::uint64_t>(in, "step");
    snap.field = LatticeField(spec, kind);
    for (cplx& z : snap.field.data()) {
        const double re = std::bit_cast<double>(get_le<std::uint64_t>(in, "payload"));
        const double im = std::bit_cast<double>(get_le<std::uint64_t>(in, "payload"));
        z = {re, im};
    }
    return snap;
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open snapshot: " + path);
    try {
        return read_snapshot(in);
    } catch (const IoError& e) {
        throw IoError(path + ": " + e.what());
    }
}

void snapshot_to_csv(const Snapshot& snap, std::ostream& out) {
    const LatticeField& f = snap.field;
    out << "site,x,y,z,component,re,im\n";
    char re[32], im[32];
    for (std::size_t s = 0; s < f.sites(); ++s) {
        const auto c3 = f.spec().coords(s);
        for (int c = 0; c < f.comps(); ++c) {
            std::snprintf(re, sizeof re, "%.17g", f.at(s, c).real());
            std::snprintf(im, sizeof im, "%.17g", f.at(s, c).imag());
            out << s << ',' << c3[0] << ',' << c3[1] << ',' << c3[2] << ',' << c << ',' << re << ','
                << im << '\n';
        }
    }
}

}  // namespace qlg::io
