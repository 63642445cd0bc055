#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace cosmos {

// Axis order is (z, y, x) everywhere: shape = {nz, ny, nx}, spacing in mm.
// data is row-major with x fastest: index = (z * ny + y) * nx + x.
using Shape3 = std::array<int, 3>;
using Spacing3 = std::array<double, 3>;

struct Volume {
  Shape3 shape{0, 0, 0};
  Spacing3 spacing{1.0, 1.0, 1.0};
  std::string id;
  std::vector<float> data;

  Volume() = default;
  Volume(Shape3 s, Spacing3 sp, std::string ident = "")
      : shape(s), spacing(sp), id(std::move(ident)),
        data(static_cast<std::size_t>(s[0]) * s[1] * s[2], 0.0f) {}

  std::size_t numel() const { return static_cast<std::size_t>(shape[0]) * shape[1] * shape[2]; }
  float& at(int z, int y, int x) { return data[(static_cast<std::size_t>(z) * shape[1] + y) * shape[2] + x]; }
  float at(int z, int y, int x) const { return data[(static_cast<std::size_t>(z) * shape[1] + y) * shape[2] + x]; }
};

// Class indices: 0 background, 1 VS, 2 cochlea.
struct LabelMap {
  Shape3 shape{0, 0, 0};
  Spacing3 spacing{1.0, 1.0, 1.0};
  std::string id;
  std::vector<std::uint8_t> data;

  LabelMap() = default;
  LabelMap(Shape3 s, Spacing3 sp, std::string ident = "")
      : shape(s), spacing(sp), id(std::move(ident)),
        data(static_cast<std::size_t>(s[0]) * s[1] * s[2], 0) {}

  std::size_t numel() const { return static_cast<std::size_t>(shape[0]) * shape[1] * shape[2]; }
  std::uint8_t& at(int z, int y, int x) { return data[(static_cast<std::size_t>(z) * shape[1] + y) * shape[2] + x]; }
  std::uint8_t at(int z, int y, int x) const { return data[(static_cast<std::size_t>(z) * shape[1] + y) * shape[2] + x]; }
};

constexpr int kNumClasses = 3;
constexpr std::uint8_t kClassBackground = 0;
constexpr std::uint8_t kClassVs = 1;
constexpr std::uint8_t kClassCochlea = 2;

// Throw Error subtypes if invariants are violated (dims >= 1, finite data,
// positive spacing; labels within {0,1,2}).
void validate(const Volume& v);
void validate(const LabelMap& m);

std::size_t count_class(const LabelMap& m, std::uint8_t cls);

// Rescale intensities affinely so min -> 0 and max -> 1.
// Throws DegenerateInputError on constant volumes.
Volume minmax_normalize(const Volume& v);

// Shift/scale so the whole-volume mean is 0 and std is 1.
// Throws DegenerateInputError on zero-variance volumes.
Volume zscore_normalize(const Volume& v);

// Resample to target spacing. Output shape = round(shape * spacing / target).
// Volumes: third-order (Catmull-Rom) spline in-plane (y, x), nearest neighbor
// out-of-plane (z). LabelMaps: nearest neighbor on all axes.
Volume resample(const Volume& v, const Spacing3& target_spacing);
LabelMap resample(const LabelMap& m, const Spacing3& target_spacing);

// Extract a patch of patch_shape centered at `center`. Out-of-bounds regions
// are zero-filled (background for labels).
Volume crop_or_pad(const Volume& v, const Shape3& patch_shape, const Shape3& center);
LabelMap crop_or_pad(const LabelMap& m, const Shape3& patch_shape, const Shape3& center);

}  // namespace cosmos
