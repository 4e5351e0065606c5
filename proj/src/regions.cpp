#include "hetnet/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace hetnet {

namespace {

// Fixed tier palette (1-based tiers cycle through these RGB fills).
constexpr unsigned char kTierPalette[][3] = {
    {120, 170, 255},  // tier 1: blue
    {255, 190, 110},  // tier 2: orange
    {150, 220, 140},  // tier 3: green
    {230, 140, 230},  // tier 4: magenta
    {240, 230, 120},  // tier 5: yellow
    {140, 220, 220},  // tier 6: cyan
    {220, 150, 150},  // tier 7: rose
    {180, 180, 180},  // tier 8: gray
};
constexpr int kPaletteSize = sizeof(kTierPalette) / sizeof(kTierPalette[0]);

// Ownership keys: argmax P ||x - s||^-alpha == argmin ||x - s||^2 / P^{2/alpha}.
// Powers are normalized by the maximum so that scaling every power by a
// common factor leaves the keys, and therefore every owner, unchanged.
std::vector<double> inverse_weights(const Deployment& deployment, const NetworkModel& model) {
  double max_power = 0.0;
  for (const Station& s : deployment.stations)
    max_power = std::max(max_power, model.tiers[s.tier - 1].power);
  std::vector<double> inv(deployment.stations.size());
  for (std::size_t i = 0; i < inv.size(); ++i) {
    const double p = model.tiers[deployment.stations[i].tier - 1].power / max_power;
    inv[i] = std::pow(p, -2.0 / model.alpha);
  }
  return inv;
}

std::size_t owner_from_weights(const Deployment& deployment, const std::vector<double>& inv,
                               double x, double y) {
  std::size_t best = 0;
  double best_key = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < deployment.stations.size(); ++i) {
    const double dx = x - deployment.stations[i].position.x;
    const double dy = y - deployment.stations[i].position.y;
    const double key = (dx * dx + dy * dy) * inv[i];
    if (key < best_key) {
      best_key = key;
      best = i;
    }
  }
  return best;
}

}  // namespace

std::size_t owner_at(const Deployment& deployment, const NetworkModel& model,
                     double x, double y) {
  if (deployment.stations.empty())
    raise(ErrorCode::EmptyDeployment, "cannot assign pixels with no stations");
  return owner_from_weights(deployment, inverse_weights(deployment, model), x, y);
}

RegionRaster rasterize(const Deployment& deployment, const NetworkModel& model,
                       int width, int height, double extent, ExecutionMode mode) {
  if (deployment.stations.empty())
    raise(ErrorCode::EmptyDeployment, "cannot rasterize an empty deployment");
  if (width < 1 || height < 1 || !(extent > 0.0))
    throw std::invalid_argument("raster needs width >= 1, height >= 1, extent > 0");

  RegionRaster raster;
  raster.width = width;
  raster.height = height;
  raster.extent = extent;
  raster.station.resize(std::size_t(width) * height);
  raster.tier.resize(std::size_t(width) * height);

  const std::vector<double> inv = inverse_weights(deployment, model);
  const double px = extent / width;
  const double py = extent / height;

  const auto fill_row = [&](int row) {
    const double y = extent / 2.0 - (row + 0.5) * py;
    std::size_t at = std::size_t(row) * width;
    for (int col = 0; col < width; ++col, ++at) {
      const double x = (col + 0.5) * px - extent / 2.0;
      const std::size_t owner = owner_from_weights(deployment, inv, x, y);
      raster.station[at] = static_cast<std::int32_t>(owner);
      raster.tier[at] = deployment.stations[owner].tier;
    }
  };

  if (mode == ExecutionMode::kSerial) {
    for (int row = 0; row < height; ++row) fill_row(row);
  } else {
#pragma omp parallel for schedule(static)
    for (int row = 0; row < height; ++row) fill_row(row);
  }
  return raster;
}

std::string ppm_bytes(const RegionRaster& raster, std::uint64_t seed) {
  std::ostringstream header;
  header << "P6\n# hetnet coverage regions, seed=" << seed << "\n"
         << raster.width << " " << raster.height << "\n255\n";
  std::string out = header.str();
  out.reserve(out.size() + std::size_t(raster.width) * raster.height * 3);

  for (int row = 0; row < raster.height; ++row) {
    for (int col = 0; col < raster.width; ++col) {
      const std::int32_t owner = raster.station_at(row, col);
      const bool edge =
          (col + 1 < raster.width && raster.station_at(row, col + 1) != owner) ||
          (row + 1 < raster.height && raster.station_at(row + 1, col) != owner);
      if (edge) {
        out.append(3, '\0');
        continue;
      }
      const unsigned char* rgb = kTierPalette[(raster.tier_at(row, col) - 1) % kPaletteSize];
      out.push_back(static_cast<char>(rgb[0]));
      out.push_back(static_cast<char>(rgb[1]));
      out.push_back(static_cast<char>(rgb[2]));
    }
  }
  return out;
}

void write_ppm(const RegionRaster& raster, std::uint64_t seed, std::ostream& out) {
  const std::string bytes = ppm_bytes(raster, seed);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

void write_pixel_csv(const RegionRaster& raster, std::ostream& out) {
  out << "row,col,station,tier\n";
  for (int row = 0; row < raster.height; ++row)
    for (int col = 0; col < raster.width; ++col)
      out << row << ',' << col << ',' << raster.station_at(row, col) << ','
          << raster.tier_at(row, col) << '\n';
}

}  // namespace hetnet
