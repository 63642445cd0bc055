#pragma once

#include <cstdint>
#include <string>

#include "cosmos/manifest.hpp"
#include "cosmos/volume.hpp"

namespace cosmos::phantom {

struct TissueIntensity {
  double mean = 0.0;
  double sigma = 0.0;  // Gaussian noise std
};

// Per-tissue rendering intensities for one domain.
struct ContrastMap {
  TissueIntensity background;
  TissueIntensity head;
  TissueIntensity vs;
  TissueIntensity cochlea;
};

struct PhantomConfig {
  Shape3 volume_shape{32, 48, 48};  // (z, y, x)
  Spacing3 spacing{1.0, 1.0, 1.0};
  int n_source = 8;
  int n_target = 8;
  int n_validation = 4;
  double vs_radius_min_mm = 4.0;
  double vs_radius_max_mm = 7.0;
  double cochlea_radius_min_mm = 1.8;
  double cochlea_radius_max_mm = 2.6;
  // Tissue brightness deliberately flips between domains: VS is the bright
  // outlier in source but sits near head intensity in target, while the
  // cochlea drops to near-background. A source-trained segmenter then fails
  // on target, and a translator without segmentation guidance has no
  // intensity cue to keep VS and cochlea apart.
  ContrastMap source_contrast{{0.02, 0.01}, {0.30, 0.02}, {0.85, 0.03}, {0.80, 0.03}};
  ContrastMap target_contrast{{0.03, 0.01}, {0.65, 0.02}, {0.35, 0.03}, {0.10, 0.02}};
  double bias_field_amplitude = 0.08;  // multiplicative; 0 disables
  std::uint64_t seed = 0;
};

// Throws ConfigError on untrainable settings (VS mean ~ background mean,
// VS mean ~ head mean, bad radius ranges, structures that cannot fit).
void validate(const PhantomConfig& cfg);

// One synthetic case: smooth ellipsoidal head, one VS-like ellipsoid with a
// much smaller cochlea-like ellipsoid adjacent to it, per-tissue Gaussian
// noise, optional multiplicative bias field. The label map marks exact
// ellipsoid interiors. Deterministic in (anatomy_seed, contrast).
struct RenderedCase {
  Volume volume;
  LabelMap labels;
};
RenderedCase render_case(std::uint64_t anatomy_seed, const ContrastMap& contrast,
                         const PhantomConfig& cfg, const std::string& id);

// Writes n_source (volume, label) pairs in source contrast, n_target volumes
// in target contrast (anatomy sampled independently of the source cases), and
// n_validation (volume, label) pairs in target contrast under out_dir, plus a
// manifest.json and a generation_report.json. Target-case ground truth goes
// to out_dir/gt_target for held-out evaluation; it is not referenced by the
// manifest. Byte-deterministic given cfg.seed.
DatasetManifest generate_dataset(const PhantomConfig& cfg, const std::string& out_dir);

std::string manifest_path(const std::string& out_dir);
std::string target_gt_label_path(const std::string& out_dir, const std::string& case_id);

}  // namespace cosmos::phantom
