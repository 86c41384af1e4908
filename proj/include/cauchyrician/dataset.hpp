// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <vector>

namespace cauchyrician {

enum class DataFormat { csv_amplitudes, raw_f64le, raw_u16le_raster, pgm_raster };

/// Sub-rectangle of a raster (row/column offset plus size).
struct PatchGeometry {
    std::size_t row0 = 0;
    std::size_t col0 = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
};

struct InputDataset {
    std::filesystem::path path;
    DataFormat format = DataFormat::csv_amplitudes;
    std::optional<PatchGeometry> patch;  // raster formats only; absent = full raster
    // Raster shape; required for raw_u16le_raster, ignored for PGM (header caries it).
    std::size_t raster_width = 0;
    std::size_t raster_height = 0;
};

/// Flattened amplitude sequence of the selected patch. Errors carry line
/// numbers (CSV), byte offsets (raw), or patch bounds context, and any
/// negative or non-finite value is rejected.
std::vector<double> load_dataset(const InputDataset& d);

}  // namespace cauchyrician
