#pragma once

// Binary field snapshots. Layout, all little-endian:
//
//   offset  size  field
//   0       8     magic "QLGSNAP\0"
//   8       4     u32 format version (1)
//   12      12    u32 dims[3] (x, y, z)
//   24      4     u32 payload kind (0 spinor4, 1 spinor8, 2 fourvector)
//   28      4     u32 components per site
//   32      8     u64 step
//   40      ...   sites * components pairs of f64 (re, im), site-major,
//                 component-innermost, site index = x + Lx (y + Ly z)
//
// Grid spacing and timestep are not stored; they live in the run manifest.

#include "qlg/lattice.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace qlg::io {

inline constexpr std::uint32_t kSnapshotVersion = 1;
inline constexpr std::size_t kSnapshotHeaderBytes = 40;

struct Snapshot {
    std::uint64_t step = 0;
    LatticeField field;
};

void write_snapshot(std::ostream& out, const LatticeField& field, std::uint64_t step);
void write_snapshot(const std::string& path, const LatticeField& field, std::uint64_t step);

/// Reads a snapshot; the returned field has spacing and timestep of 1.
Snapshot read_snapshot(std::istream& in);
Snapshot read_snapshot(const std::string& path);

/// One row per (site, component): site,x,y,z,component,re,im.
void snapshot_to_csv(const Snapshot& snap, std::ostream& out);

}  // namespace qlg::io
