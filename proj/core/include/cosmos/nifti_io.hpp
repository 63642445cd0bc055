#pragma once

#include <string>

#include "cosmos/volume.hpp"

namespace cosmos {

// Single-file NIfTI-1 (.nii), axis-aligned only. Volumes are float32,
// label maps uint8. Spacing lives in pixdim, the case id in descrip.
// Round-trips are bit-exact.

void save_volume(const Volume& v, const std::string& path);
Volume load_volume(const std::string& path);

void save_labelmap(const LabelMap& m, const std::string& path);
LabelMap load_labelmap(const std::string& path);

}  // namespace cosmos
