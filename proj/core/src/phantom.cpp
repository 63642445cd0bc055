#include "cosmos/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "cosmos/error.hpp"
#include "cosmos/fsutil.hpp"
#include "cosmos/nifti_io.hpp"
#include "cosmos/rng.hpp"

namespace cosmos::phantom {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

struct Vec3 {
  double z, y, x;
};

struct Ellipsoid {
  Vec3 center;    // mm
  Vec3 semiaxes;  // mm
  bool contains(const Vec3& p) const {
    double dz = (p.z - center.z) / semiaxes.z;
    double dy = (p.y - center.y) / semiaxes.y;
    double dx = (p.x - center.x) / semiaxes.x;
    return dz * dz + dy * dy + dx * dx <= 1.0;
  }
  // Conservative inside-test for a second ellipsoid: shrink this one by the
  // other's largest semiaxis.
  bool contains_ellipsoid(const Ellipsoid& e, double margin) const {
    double r = std::max({e.semiaxes.z, e.semiaxes.y, e.semiaxes.x}) + margin;
    double dz = (e.center.z - center.z) / std::max(semiaxes.z - r, 1e-6);
    double dy = (e.center.y - center.y) / std::max(semiaxes.y - r, 1e-6);
    double dx = (e.center.x - center.x) / std::max(semiaxes.x - r, 1e-6);
    return semiaxes.z > r && semiaxes.y > r && semiaxes.x > r &&
           dz * dz + dy * dy + dx * dx <= 1.0;
  }
};

std::uint64_t contrast_tag(const ContrastMap& c) {
  Fnv64 h;
  for (const TissueIntensity* t : {&c.background, &c.head, &c.vs, &c.cochlea}) {
    h.update_value(t->mean);
    h.update_value(t->sigma);
  }
  return h.digest();
}

// Smooth multiplicative bias: a random low-resolution grid, trilinearly
// interpolated across the volume.
struct BiasField {
  static constexpr int kGrid = 3;
  double g[kGrid][kGrid][kGrid];
  double amplitude;

  BiasField(Rng& rng, double amp) : amplitude(amp) {
    for (auto& plane : g)
      for (auto& row : plane)
        for (auto& v : row) v = rng.uniform(-1.0, 1.0);
  }

  double at(double fz, double fy, double fx) const {  // fractions in [0,1]
    if (amplitude == 0.0) return 1.0;
    auto lerp_axis = [](double f) {
      double t = f * (kGrid - 1);
      int i = std::min(static_cast<int>(t), kGrid - 2);
      return std::pair<int, double>(i, t - i);
    };
    auto [iz, tz] = lerp_axis(fz);
    auto [iy, ty] = lerp_axis(fy);
    auto [ix, tx] = lerp_axis(fx);
    double acc = 0.0;
    for (int dz = 0; dz < 2; ++dz)
      for (int dy = 0; dy < 2; ++dy)
        for (int dx = 0; dx < 2; ++dx) {
          double w = (dz ? tz : 1 - tz) * (dy ? ty : 1 - ty) * (dx ? tx : 1 - tx);
          acc += w * g[iz + dz][iy + dy][ix + dx];
        }
    return 1.0 + amplitude * acc;
  }
};

void require_distinct(double a, double b, const std::string& what) {
  if (std::fabs(a - b) < 1e-3)
    throw ConfigError("phantom: " + what + " (" + std::to_string(a) + " vs " + std::to_string(b) +
                      ") — the phantom would be untrainable");
}

struct Anatomy {
  Ellipsoid head, vs, cochlea;
};

// Geometry is drawn entirely from `rng` so a fixed anatomy seed pins the
// label map regardless of contrast.
Anatomy sample_anatomy(Rng& rng, const PhantomConfig& cfg) {
  const double ez = cfg.volume_shape[0] * cfg.spacing[0];
  const double ey = cfg.volume_shape[1] * cfg.spacing[1];
  const double ex = cfg.volume_shape[2] * cfg.spacing[2];

  Anatomy a;
  a.head.semiaxes = {0.40 * ez * rng.uniform(0.92, 1.0), 0.40 * ey * rng.uniform(0.92, 1.0),
                     0.40 * ex * rng.uniform(0.92, 1.0)};
  a.head.center = {ez / 2 + rng.uniform(-0.02, 0.02) * ez, ey / 2 + rng.uniform(-0.02, 0.02) * ey,
                   ex / 2 + rng.uniform(-0.02, 0.02) * ex};

  const int kMaxTries = 500;
  for (int attempt = 0; attempt < kMaxTries; ++attempt) {
    double r_vs = rng.uniform(cfg.vs_radius_min_mm, cfg.vs_radius_max_mm);
    // Volume-preserving anisotropy keeps voxel counts inside the analytic
    // sphere-volume bounds.
    double j1 = rng.uniform(0.85, 1.15), j2 = rng.uniform(0.85, 1.15);
    a.vs.semiaxes = {r_vs * j1, r_vs * j2, r_vs / (j1 * j2)};
    a.vs.center = {a.head.center.z + rng.uniform(-0.4, 0.4) * a.head.semiaxes.z,
                   a.head.center.y + rng.uniform(-0.4, 0.4) * a.head.semiaxes.y,
                   a.head.center.x + rng.uniform(-0.4, 0.4) * a.head.semiaxes.x};

    double r_c = rng.uniform(cfg.cochlea_radius_min_mm, cfg.cochlea_radius_max_mm);
    double k1 = rng.uniform(0.9, 1.1), k2 = rng.uniform(0.9, 1.1);
    a.cochlea.semiaxes = {r_c * k1, r_c * k2, r_c / (k1 * k2)};

    // Adjacent placement: just outside the VS surface, 1 mm gap.
    double uz = rng.normal(), uy = rng.normal(), ux = rng.normal();
    double n = std::sqrt(uz * uz + uy * uy + ux * ux);
    if (n < 1e-9) continue;
    uz /= n; uy /= n; ux /= n;
    double vs_r = std::max({a.vs.semiaxes.z, a.vs.semiaxes.y, a.vs.semiaxes.x});
    double c_r = std::max({a.cochlea.semiaxes.z, a.cochlea.semiaxes.y, a.cochlea.semiaxes.x});
    double d = vs_r + c_r + 1.0;
    a.cochlea.center = {a.vs.center.z + uz * d, a.vs.center.y + uy * d, a.vs.center.x + ux * d};

    if (a.head.contains_ellipsoid(a.vs, 0.5) && a.head.contains_ellipsoid(a.cochlea, 0.5))
      return a;
  }
  throw ConfigError("phantom: VS and cochlea with the configured radii cannot fit inside the head");
}

}  // namespace

void validate(const PhantomConfig& cfg) {
  for (int axis = 0; axis < 3; ++axis) {
    if (cfg.volume_shape[axis] < 8)
      throw ConfigError("phantom: volume_shape must be at least 8 voxels per axis");
    if (!(cfg.spacing[axis] > 0)) throw ConfigError("phantom: spacing must be positive");
  }
  if (cfg.n_source < 0 || cfg.n_target < 0 || cfg.n_validation < 0)
    throw ConfigError("phantom: case counts must be nonnegative");
  if (!(cfg.vs_radius_min_mm > 0) || cfg.vs_radius_max_mm < cfg.vs_radius_min_mm)
    throw ConfigError("phantom: invalid VS radius range");
  if (!(cfg.cochlea_radius_min_mm > 0) || cfg.cochlea_radius_max_mm < cfg.cochlea_radius_min_mm)
    throw ConfigError("phantom: invalid cochlea radius range");
  if (cfg.cochlea_radius_max_mm >= cfg.vs_radius_min_mm)
    throw ConfigError("phantom: cochlea radius range must be strictly below the VS range");
  for (const auto& [c, name] : {std::pair{&cfg.source_contrast, "source"}, std::pair{&cfg.target_contrast, "target"}}) {
    require_distinct(c->vs.mean, c->background.mean, std::string(name) + " contrast: VS mean equals background mean");
    require_distinct(c->vs.mean, c->head.mean, std::string(name) + " contrast: VS mean equals head mean");
  }
}

RenderedCase render_case(std::uint64_t anatomy_seed, const ContrastMap& contrast,
                         const PhantomConfig& cfg, const std::string& id) {
  Rng anat_rng(anatomy_seed);
  Anatomy a = sample_anatomy(anat_rng, cfg);
  Rng noise_rng(derive_seed(anatomy_seed, "render", contrast_tag(contrast)));
  BiasField bias(noise_rng, cfg.bias_field_amplitude);

  RenderedCase out{Volume(cfg.volume_shape, cfg.spacing, id), LabelMap(cfg.volume_shape, cfg.spacing, id)};
  const auto& sh = cfg.volume_shape;
  for (int z = 0; z < sh[0]; ++z) {
    for (int y = 0; y < sh[1]; ++y) {
      for (int x = 0; x < sh[2]; ++x) {
        Vec3 p{(z + 0.5) * cfg.spacing[0], (y + 0.5) * cfg.spacing[1], (x + 0.5) * cfg.spacing[2]};
        const TissueIntensity* t = &contrast.background;
        std::uint8_t cls = kClassBackground;
        if (a.cochlea.contains(p)) {
          t = &contrast.cochlea;
          cls = kClassCochlea;
        } else if (a.vs.contains(p)) {
          t = &contrast.vs;
          cls = kClassVs;
        } else if (a.head.contains(p)) {
          t = &contrast.head;
        }
        double b = bias.at(double(z) / std::max(sh[0] - 1, 1), double(y) / std::max(sh[1] - 1, 1),
                           double(x) / std::max(sh[2] - 1, 1));
        double v = (t->mean + t->sigma * noise_rng.normal()) * b;
        out.volume.at(z, y, x) = static_cast<float>(std::max(v, 0.0));
        out.labels.at(z, y, x) = cls;
      }
    }
  }
  return out;
}

std::string manifest_path(const std::string& out_dir) {
  return (fs::path(out_dir) / "manifest.json").string();
}

std::string target_gt_label_path(const std::string& out_dir, const std::string& case_id) {
  return (fs::path(out_dir) / "gt_target" / (case_id + "_label.nii")).string();
}

DatasetManifest generate_dataset(const PhantomConfig& cfg, const std::string& out_dir) {
  validate(cfg);
  ensure_dir(out_dir);
  for (const char* d : {"source", "target", "validation", "gt_target"})
    ensure_dir((fs::path(out_dir) / d).string());

  DatasetManifest manifest;
  ordered_json report;
  report["seed"] = cfg.seed;
  report["volume_shape"] = {cfg.volume_shape[0], cfg.volume_shape[1], cfg.volume_shape[2]};
  report["cases"] = ordered_json::array();

  struct Job {
    std::string role;
    int index;
  };
  auto case_id = [](const std::string& role, int i) {
    char buf[32];
    const char* prefix = role == "source" ? "src" : role == "target" ? "tgt" : "val";
    std::snprintf(buf, sizeof(buf), "%s_%03d", prefix, i);
    return std::string(buf);
  };

  auto render_and_write = [&](const std::string& role, int i) {
    const std::string id = case_id(role, i);
    const std::uint64_t anatomy_seed = derive_seed(cfg.seed, "anatomy", role, i);
    const ContrastMap& contrast = (role == "source") ? cfg.source_contrast : cfg.target_contrast;
    RenderedCase rc = render_case(anatomy_seed, contrast, cfg, id);

    const std::size_t n_vs = count_class(rc.labels, kClassVs);
    const std::size_t n_coch = count_class(rc.labels, kClassCochlea);
    if (n_vs == 0 || n_coch == 0)
      throw ConfigError("phantom: case '" + id + "' rendered without both foreground classes; "
                        "radii too small for the configured grid");

    const std::string rel_vol = role + "/" + id + ".nii";
    save_volume(rc.volume, (fs::path(out_dir) / rel_vol).string());

    CaseEntry entry{id, rel_vol, std::nullopt};
    std::size_t n_head = 0;
    for (auto v : rc.labels.data) n_head += (v != kClassBackground);
    if (role == "source" || role == "validation") {
      const std::string rel_lab = role + "/" + id + "_label.nii";
      save_labelmap(rc.labels, (fs::path(out_dir) / rel_lab).string());
      entry.label = rel_lab;
    } else {
      // Unlabeled split; keep ground truth aside for held-out scoring.
      save_labelmap(rc.labels, target_gt_label_path(out_dir, id));
    }

    ordered_json jc;
    jc["id"] = id;
    jc["split"] = role;
    jc["anatomy_seed"] = hex64(anatomy_seed);
    jc["vs_voxels"] = n_vs;
    jc["cochlea_voxels"] = n_coch;
    jc["foreground_voxels"] = n_head;
    report["cases"].push_back(jc);

    if (role == "source") manifest.source.push_back(entry);
    else if (role == "target") manifest.target.push_back(entry);
    else manifest.validation.push_back(entry);
  };

  for (int i = 0; i < cfg.n_source; ++i) render_and_write("source", i);
  for (int i = 0; i < cfg.n_target; ++i) render_and_write("target", i);
  for (int i = 0; i < cfg.n_validation; ++i) render_and_write("validation", i);

  save_manifest(manifest, manifest_path(out_dir));
  atomic_write_text((fs::path(out_dir) / "generation_report.json").string(), report.dump(2) + "\n");

  // Return the resolved (absolute-path) form.
  return load_manifest(manifest_path(out_dir));
}

}  // namespace cosmos::phantom
