#pragma once

#include <string>
#include <vector>

#include "tcmc/dpw.hpp"
#include "tcmc/geometry.hpp"
#include "tcmc/sym.hpp"

namespace tcmc {

/// Text OBJ export: vertices "v u1 u2 u3" in grid row-major order (y outer,
/// x inner), "vn" normals in the same order, quad faces over cells whose
/// four corners are unmasked. Grid metadata and masked points are kept in
/// header comments so the mesh is re-ingestible.
void write_obj(const std::string& path, const SurfacePatch& patch,
               const std::string& title);

SurfacePatch read_obj(const std::string& path);

/// Per-grid-point CSV with the exact column set
///   x, y, u1, u2, u3, n1, n2, n3, E, F, G, omega, Q, R, H, K, mask
/// in full decimal precision. Fundamental-form columns are written as 0 at
/// points without a valid interior stencil.
void write_field_csv(const std::string& path, const SurfacePatch& patch,
                     const FundamentalData& data);

SurfacePatch read_field_csv(const std::string& path);

/// Frame-field container: grid, truncation order and one debug-text loop
/// block per unmasked point. Enough to re-run potential extraction.
void write_frame_field(const std::string& path, const FrameField& field);

FrameField read_frame_field(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

} // namespace tcmc
