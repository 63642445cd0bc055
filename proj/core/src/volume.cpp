#include "cosmos/volume.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cosmos/error.hpp"

namespace cosmos {

namespace {

void check_geometry(const Shape3& shape, const Spacing3& spacing, const std::string& id) {
  for (int a = 0; a < 3; ++a) {
    if (shape[a] < 1) {
      std::ostringstream os;
      os << "volume '" << id << "': dimension " << a << " is " << shape[a] << ", must be >= 1";
      throw Error(os.str());
    }
    if (!(spacing[a] > 0.0) || !std::isfinite(spacing[a])) {
      std::ostringstream os;
      os << "volume '" << id << "': spacing[" << a << "] = " << spacing[a]
         << ", must be strictly positive";
      throw Error(os.str());
    }
  }
}

template <typename V>
Shape3 resampled_shape(const V& v, const Spacing3& target) {
  Shape3 out;
  for (int a = 0; a < 3; ++a) {
    if (!(target[a] > 0.0)) throw ContractError("resample: target spacing must be strictly positive");
    out[a] = static_cast<int>(std::llround(v.shape[a] * v.spacing[a] / target[a]));
    if (out[a] < 1) {
      std::ostringstream os;
      os << "resample: axis " << a << " collapses to " << out[a] << " voxels";
      throw Error(os.str());
    }
  }
  return out;
}

bool same_spacing(const Spacing3& a, const Spacing3& b) {
  return a[0] == b[0] && a[1] == b[1] && a[2] == b[2];
}

// Catmull-Rom kernel (a = -1/2 cubic convolution); interpolates the samples,
// so identity-spacing resampling reproduces the input exactly.
double cubic_weight(double t) {
  t = std::fabs(t);
  if (t < 1.0) return ((1.5 * t - 2.5) * t) * t + 1.0;
  if (t < 2.0) return (((-0.5 * t) + 2.5) * t - 4.0) * t + 2.0;
  return 0.0;
}

inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

// Source coordinate of output sample i: align voxel centers of both grids.
inline double src_coord(int i, double out_sp, double in_sp) {
  return (i + 0.5) * out_sp / in_sp - 0.5;
}

template <typename V>
V crop_or_pad_impl(const V& v, const Shape3& patch, const Shape3& center) {
  for (int a = 0; a < 3; ++a)
    if (patch[a] < 1) throw ContractError("crop_or_pad: patch shape must be positive");
  V out(patch, v.spacing, v.id);
  Shape3 start{};
  for (int a = 0; a < 3; ++a) start[a] = center[a] - patch[a] / 2;
  for (int z = 0; z < patch[0]; ++z) {
    int sz = start[0] + z;
    if (sz < 0 || sz >= v.shape[0]) continue;
    for (int y = 0; y < patch[1]; ++y) {
      int sy = start[1] + y;
      if (sy < 0 || sy >= v.shape[1]) continue;
      int sx0 = start[2];
      int xb = std::max(0, -sx0);
      int xe = std::min(patch[2], v.shape[2] - sx0);
      for (int x = xb; x < xe; ++x) out.at(z, y, x) = v.at(sz, sy, sx0 + x);
    }
  }
  return out;
}

}  // namespace

void validate(const Volume& v) {
  check_geometry(v.shape, v.spacing, v.id);
  if (v.data.size() != v.numel()) throw Error("volume '" + v.id + "': data size does not match shape");
  for (std::size_t i = 0; i < v.data.size(); ++i) {
    if (!std::isfinite(v.data[i])) {
      std::ostringstream os;
      os << "volume '" << v.id << "': non-finite intensity at linear index " << i;
      throw Error(os.str());
    }
  }
}

void validate(const LabelMap& m) {
  check_geometry(m.shape, m.spacing, m.id);
  if (m.data.size() != m.numel()) throw Error("label map '" + m.id + "': data size does not match shape");
  for (std::size_t i = 0; i < m.data.size(); ++i) {
    if (m.data[i] > 2) {
      std::ostringstream os;
      os << "label map '" << m.id << "': class value " << int(m.data[i]) << " at linear index " << i
         << " outside {0,1,2}";
      throw Error(os.str());
    }
  }
}

std::size_t count_class(const LabelMap& m, std::uint8_t cls) {
  std::size_t n = 0;
  for (auto v : m.data) n += (v == cls);
  return n;
}

Volume minmax_normalize(const Volume& v) {
  if (v.data.empty()) throw ContractError("minmax_normalize: empty volume");
  float lo = v.data[0], hi = v.data[0];
  for (float x : v.data) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  if (!(hi > lo))
    throw DegenerateInputError("minmax_normalize: volume '" + v.id + "' is constant");
  Volume out = v;
  const double scale = 1.0 / (static_cast<double>(hi) - lo);
  for (auto& x : out.data) x = static_cast<float>((x - lo) * scale);
  return out;
}

Volume zscore_normalize(const Volume& v) {
  if (v.data.empty()) throw ContractError("zscore_normalize: empty volume");
  double mean = 0.0;
  for (float x : v.data) mean += x;
  mean /= static_cast<double>(v.data.size());
  double var = 0.0;
  for (float x : v.data) {
    double d = x - mean;
    var += d * d;
  }
  var /= static_cast<double>(v.data.size());
  if (!(var > 0.0))
    throw DegenerateInputError("zscore_normalize: volume '" + v.id + "' has zero variance");
  const double inv = 1.0 / std::sqrt(var);
  Volume out = v;
  for (auto& x : out.data) x = static_cast<float>((x - mean) * inv);
  return out;
}

Volume resample(const Volume& v, const Spacing3& target) {
  if (same_spacing(v.spacing, target)) return v;
  Shape3 os = resampled_shape(v, target);
  Volume out(os, target, v.id);

  // z: nearest neighbor; (y, x): separable cubic with edge clamping.
  for (int z = 0; z < os[0]; ++z) {
    int sz = clampi(static_cast<int>(std::llround(src_coord(z, target[0], v.spacing[0]))), 0, v.shape[0] - 1);
    for (int y = 0; y < os[1]; ++y) {
      double fy = src_coord(y, target[1], v.spacing[1]);
      int iy = static_cast<int>(std::floor(fy));
      double wy[4];
      for (int k = 0; k < 4; ++k) wy[k] = cubic_weight(fy - (iy - 1 + k));
      for (int x = 0; x < os[2]; ++x) {
        double fx = src_coord(x, target[2], v.spacing[2]);
        int ix = static_cast<int>(std::floor(fx));
        double wx[4];
        for (int k = 0; k < 4; ++k) wx[k] = cubic_weight(fx - (ix - 1 + k));
        double acc = 0.0;
        for (int ky = 0; ky < 4; ++ky) {
          int yy = clampi(iy - 1 + ky, 0, v.shape[1] - 1);
          double row = 0.0;
          for (int kx = 0; kx < 4; ++kx) {
            int xx = clampi(ix - 1 + kx, 0, v.shape[2] - 1);
            row += wx[kx] * v.at(sz, yy, xx);
          }
          acc += wy[ky] * row;
        }
        out.at(z, y, x) = static_cast<float>(acc);
      }
    }
  }
  return out;
}

LabelMap resample(const LabelMap& m, const Spacing3& target) {
  if (same_spacing(m.spacing, target)) return m;
  Shape3 os = resampled_shape(m, target);
  LabelMap out(os, target, m.id);
  for (int z = 0; z < os[0]; ++z) {
    int sz = clampi(static_cast<int>(std::llround(src_coord(z, target[0], m.spacing[0]))), 0, m.shape[0] - 1);
    for (int y = 0; y < os[1]; ++y) {
      int sy = clampi(static_cast<int>(std::llround(src_coord(y, target[1], m.spacing[1]))), 0, m.shape[1] - 1);
      for (int x = 0; x < os[2]; ++x) {
        int sx = clampi(static_cast<int>(std::llround(src_coord(x, target[2], m.spacing[2]))), 0, m.shape[2] - 1);
        out.at(z, y, x) = m.at(sz, sy, sx);
      }
    }
  }
  return out;
}

Volume crop_or_pad(const Volume& v, const Shape3& patch, const Shape3& center) {
  return crop_or_pad_impl(v, patch, center);
}
LabelMap crop_or_pad(const LabelMap& m, const Shape3& patch, const Shape3& center) {
  return crop_or_pad_impl(m, patch, center);
}

}  // namespace cosmos
