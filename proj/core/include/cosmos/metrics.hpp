#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cosmos/volume.hpp"

namespace cosmos::metrics {

// Overlap 2|P∩G| / (|P| + |G|) for voxels of class cls.
// Both sets empty -> 1; exactly one empty -> 0. Symmetric in pred/gt.
double dice(const LabelMap& pred, const LabelMap& gt, std::uint8_t cls);

// Penalty used when exactly one of the two masks is empty: the mm diagonal of
// the volume bounding box. Finite and order-preserving.
double assd_sentinel(const Shape3& shape, const Spacing3& spacing);

// Average symmetric surface distance in mm. Surface voxels are foreground
// voxels with at least one background 6-neighbor (volume border counts as
// background). Distances are Euclidean in mm via an exact distance transform.
// Both surfaces empty -> 0; exactly one empty -> assd_sentinel.
double assd(const LabelMap& pred, const LabelMap& gt, std::uint8_t cls, const Spacing3& spacing);

// Exact squared Euclidean distance transform (Felzenszwalb-Huttenlocher),
// anisotropic in mm. seeds[i] != 0 marks a seed voxel. Exposed for reuse and
// direct testing against the all-pairs oracle.
std::vector<double> squared_edt(const std::vector<std::uint8_t>& seeds, const Shape3& shape,
                                const Spacing3& spacing);

// 6-connectivity surface extraction, exposed so callers can inspect surfaces.
std::vector<std::uint8_t> surface_mask(const LabelMap& m, std::uint8_t cls);

struct CaseScore {
  std::string case_id;
  double dice_vs = 0.0;
  double dice_cochlea = 0.0;
  double assd_vs = 0.0;
  double assd_cochlea = 0.0;
  bool missing_prediction = false;
};

CaseScore score_case(const LabelMap& pred, const LabelMap& gt);

}  // namespace cosmos::metrics
