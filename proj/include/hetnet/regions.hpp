#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hetnet/model.hpp"
#include "hetnet/montecarlo.hpp"

namespace hetnet {

/// Average-power coverage regions on a pixel grid: every pixel belongs to
/// the station with the strongest mean received power at its center, which
/// is the multiplicatively weighted Voronoi cell structure.
struct RegionRaster {
  int width = 0;
  int height = 0;
  double extent = 0.0;  // meters per side, centered on the origin
  std::vector<std::int32_t> station;  // owning station index, row-major
  std::vector<std::int32_t> tier;     // owning station's tier, row-major

  std::int32_t station_at(int row, int col) const { return station[std::size_t(row) * width + col]; }
  std::int32_t tier_at(int row, int col) const { return tier[std::size_t(row) * width + col]; }
};

/// Index of the station maximizing P_i ||x - x_i||^-alpha (fading ignored);
/// ties go to the lowest station index, a pixel on a station belongs to it.
std::size_t owner_at(const Deployment& deployment, const NetworkModel& model,
                     double x, double y);

/// Rasterizes the ownership map over the square [-extent/2, extent/2]^2 with
/// pixel-center sampling. Rows are independent; the parallel mode images the
/// serial reference exactly.
RegionRaster rasterize(const Deployment& deployment, const NetworkModel& model,
                       int width, int height, double extent,
                       ExecutionMode mode = ExecutionMode::kParallel);

/// Binary P6 pixmap: flat per-tier fill colors with black cell boundaries.
std::string ppm_bytes(const RegionRaster& raster, std::uint64_t seed);
void write_ppm(const RegionRaster& raster, std::uint64_t seed, std::ostream& out);

/// Per-pixel "row,col,station,tier" table.
void write_pixel_csv(const RegionRaster& raster, std::ostream& out);

}  // namespace hetnet
