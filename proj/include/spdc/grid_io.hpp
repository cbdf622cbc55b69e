#pragma once

#include <filesystem>
#include <string>

#include "spdc/oam.hpp"
#include "spdc/spectra.hpp"

namespace spdc {

// KGRID1: four text header lines, then little-endian doubles, row 0 = max k_y.
// Cell status is not stored; a grid read back has every cell ok.
void write_grid(const SpectrumGrid& grid, const std::filesystem::path& path);
SpectrumGrid read_grid(const std::filesystem::path& path);

// KOAM1: ell ranges in the header, then interleaved (re, im) doubles, rows by signal ell.
void write_matrix(const AmplitudeMatrix& f, const std::filesystem::path& path);
AmplitudeMatrix read_matrix(const std::filesystem::path& path);

enum class HeatmapScale { linear, log };

// Binary PGM. Returns false (and writes a black image) when the grid is all zero.
bool write_heatmap(const SpectrumGrid& grid, const std::filesystem::path& path, HeatmapScale scale);

void write_marginals_csv(const Marginals& m, const std::filesystem::path& path);

}  // namespace spdc
