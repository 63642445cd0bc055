#include "cosmos/metrics.hpp"

#include <cmath>
#include <limits>

#include "cosmos/error.hpp"

namespace cosmos::metrics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_shape(const LabelMap& a, const LabelMap& b) {
  if (a.shape != b.shape)
    throw ContractError("metrics: shape mismatch between prediction and ground truth");
}

// 1D lower envelope of parabolas, sample positions pos[i] in mm.
// f is the input (squared distances), g the output.
void edt_1d(const std::vector<double>& pos, const std::vector<double>& f, std::vector<double>& g) {
  const int n = static_cast<int>(f.size());
  static thread_local std::vector<int> v;
  static thread_local std::vector<double> zbound;
  v.assign(n, 0);
  zbound.assign(n + 1, 0.0);
  int k = 0;
  bool any = false;
  for (int q = 0; q < n; ++q) {
    if (f[q] == kInf) continue;
    if (!any) {
      v[0] = q;
      zbound[0] = -kInf;
      zbound[1] = kInf;
      any = true;
      k = 0;
      continue;
    }
    double s;
    while (true) {
      int p = v[k];
      s = ((f[q] + pos[q] * pos[q]) - (f[p] + pos[p] * pos[p])) / (2 * pos[q] - 2 * pos[p]);
      if (s <= zbound[k]) {
        --k;
        if (k < 0) { k = 0; v[0] = q; zbound[0] = -kInf; zbound[1] = kInf; break; }
      } else {
        ++k;
        v[k] = q;
        zbound[k] = s;
        zbound[k + 1] = kInf;
        break;
      }
    }
  }
  if (!any) {
    for (int q = 0; q < n; ++q) g[q] = kInf;
    return;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (zbound[k + 1] < pos[q]) ++k;
    double d = pos[q] - pos[v[k]];
    g[q] = d * d + f[v[k]];
  }
}

}  // namespace

double dice(const LabelMap& pred, const LabelMap& gt, std::uint8_t cls) {
  require_same_shape(pred, gt);
  std::size_t np = 0, ng = 0, ni = 0;
  for (std::size_t i = 0; i < pred.data.size(); ++i) {
    bool p = pred.data[i] == cls;
    bool g = gt.data[i] == cls;
    np += p;
    ng += g;
    ni += (p && g);
  }
  if (np == 0 && ng == 0) return 1.0;
  if (np == 0 || ng == 0) return 0.0;
  return 2.0 * static_cast<double>(ni) / static_cast<double>(np + ng);
}

double assd_sentinel(const Shape3& shape, const Spacing3& spacing) {
  double z = shape[0] * spacing[0];
  double y = shape[1] * spacing[1];
  double x = shape[2] * spacing[2];
  return std::sqrt(z * z + y * y + x * x);
}

std::vector<std::uint8_t> surface_mask(const LabelMap& m, std::uint8_t cls) {
  const auto& sh = m.shape;
  std::vector<std::uint8_t> surf(m.numel(), 0);
  auto fg = [&](int z, int y, int x) {
    if (z < 0 || y < 0 || x < 0 || z >= sh[0] || y >= sh[1] || x >= sh[2]) return false;
    return m.at(z, y, x) == cls;
  };
  std::size_t i = 0;
  for (int z = 0; z < sh[0]; ++z)
    for (int y = 0; y < sh[1]; ++y)
      for (int x = 0; x < sh[2]; ++x, ++i) {
        if (m.data[i] != cls) continue;
        bool border = !fg(z - 1, y, x) || !fg(z + 1, y, x) || !fg(z, y - 1, x) ||
                      !fg(z, y + 1, x) || !fg(z, y, x - 1) || !fg(z, y, x + 1);
        surf[i] = border ? 1 : 0;
      }
  return surf;
}

std::vector<double> squared_edt(const std::vector<std::uint8_t>& seeds, const Shape3& shape,
                                const Spacing3& spacing) {
  const int nz = shape[0], ny = shape[1], nx = shape[2];
  std::vector<double> d(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) d[i] = seeds[i] ? 0.0 : kInf;

  auto idx = [&](int z, int y, int x) { return (static_cast<std::size_t>(z) * ny + y) * nx + x; };

  std::vector<double> pos, f, g;
  // x pass
  pos.resize(nx);
  for (int x = 0; x < nx; ++x) pos[x] = x * spacing[2];
  f.resize(nx);
  g.resize(nx);
  for (int z = 0; z < nz; ++z)
    for (int y = 0; y < ny; ++y) {
      for (int x = 0; x < nx; ++x) f[x] = d[idx(z, y, x)];
      edt_1d(pos, f, g);
      for (int x = 0; x < nx; ++x) d[idx(z, y, x)] = g[x];
    }
  // y pass
  pos.resize(ny);
  for (int y = 0; y < ny; ++y) pos[y] = y * spacing[1];
  f.resize(ny);
  g.resize(ny);
  for (int z = 0; z < nz; ++z)
    for (int x = 0; x < nx; ++x) {
      for (int y = 0; y < ny; ++y) f[y] = d[idx(z, y, x)];
      edt_1d(pos, f, g);
      for (int y = 0; y < ny; ++y) d[idx(z, y, x)] = g[y];
    }
  // z pass
  pos.resize(nz);
  for (int z = 0; z < nz; ++z) pos[z] = z * spacing[0];
  f.resize(nz);
  g.resize(nz);
  for (int y = 0; y < ny; ++y)
    for (int x = 0; x < nx; ++x) {
      for (int z = 0; z < nz; ++z) f[z] = d[idx(z, y, x)];
      edt_1d(pos, f, g);
      for (int z = 0; z < nz; ++z) d[idx(z, y, x)] = g[z];
    }
  return d;
}

double assd(const LabelMap& pred, const LabelMap& gt, std::uint8_t cls, const Spacing3& spacing) {
  require_same_shape(pred, gt);
  auto sp = surface_mask(pred, cls);
  auto sg = surface_mask(gt, cls);
  std::size_t n_p = 0, n_g = 0;
  for (auto v : sp) n_p += v;
  for (auto v : sg) n_g += v;
  if (n_p == 0 && n_g == 0) return 0.0;
  if (n_p == 0 || n_g == 0) return assd_sentinel(pred.shape, spacing);

  auto dist_to_g = squared_edt(sg, pred.shape, spacing);
  auto dist_to_p = squared_edt(sp, pred.shape, spacing);
  double total = 0.0;
  for (std::size_t i = 0; i < sp.size(); ++i)
    if (sp[i]) total += std::sqrt(dist_to_g[i]);
  for (std::size_t i = 0; i < sg.size(); ++i)
    if (sg[i]) total += std::sqrt(dist_to_p[i]);
  return total / static_cast<double>(n_p + n_g);
}

CaseScore score_case(const LabelMap& pred, const LabelMap& gt) {
  CaseScore s;
  s.case_id = gt.id;
  s.dice_vs = dice(pred, gt, kClassVs);
  s.dice_cochlea = dice(pred, gt, kClassCochlea);
  s.assd_vs = assd(pred, gt, kClassVs, gt.spacing);
  s.assd_cochlea = assd(pred, gt, kClassCochlea, gt.spacing);
  return s;
}

}  // namespace cosmos::metrics
