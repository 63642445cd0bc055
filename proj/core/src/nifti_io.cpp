#include "cosmos/nifti_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "cosmos/error.hpp"

namespace cosmos {

namespace {

// NIfTI-1 header, 348 bytes, little-endian. Only the fields we use.
#pragma pack(push, 1)
struct Nifti1Header {
  std::int32_t sizeof_hdr;   // 348
  char data_type[10];
  char db_name[18];
  std::int32_t extents;
  std::int16_t session_error;
  char regular;
  char dim_info;
  std::int16_t dim[8];       // dim[0]=3, dim[1]=nx, dim[2]=ny, dim[3]=nz
  float intent_p1, intent_p2, intent_p3;
  std::int16_t intent_code;
  std::int16_t datatype;     // 2 = uint8, 16 = float32
  std::int16_t bitpix;
  std::int16_t slice_start;
  float pixdim[8];           // pixdim[1]=sx, [2]=sy, [3]=sz
  float vox_offset;          // 352
  float scl_slope, scl_inter;
  std::int16_t slice_end;
  char slice_code;
  char xyzt_units;
  float cal_max, cal_min;
  float slice_duration, toffset;
  std::int32_t glmax, glmin;
  char descrip[80];
  char aux_file[24];
  std::int16_t qform_code, sform_code;
  float quatern_b, quatern_c, quatern_d;
  float qoffset_x, qoffset_y, qoffset_z;
  float srow_x[4], srow_y[4], srow_z[4];
  char intent_name[16];
  char magic[4];             // "n+1\0"
};
#pragma pack(pop)
static_assert(sizeof(Nifti1Header) == 348, "NIfTI-1 header must be 348 bytes");

constexpr std::int16_t kDtUint8 = 2;
constexpr std::int16_t kDtFloat32 = 16;

Nifti1Header make_header(const Shape3& shape, const Spacing3& spacing, const std::string& id,
                         std::int16_t datatype, std::int16_t bitpix) {
  Nifti1Header h;
  std::memset(&h, 0, sizeof(h));
  h.sizeof_hdr = 348;
  h.regular = 'r';
  h.dim[0] = 3;
  h.dim[1] = static_cast<std::int16_t>(shape[2]);  // x
  h.dim[2] = static_cast<std::int16_t>(shape[1]);  // y
  h.dim[3] = static_cast<std::int16_t>(shape[0]);  // z
  for (int a = 4; a < 8; ++a) h.dim[a] = 1;
  h.datatype = datatype;
  h.bitpix = bitpix;
  h.pixdim[0] = 1.0f;
  h.pixdim[1] = static_cast<float>(spacing[2]);
  h.pixdim[2] = static_cast<float>(spacing[1]);
  h.pixdim[3] = static_cast<float>(spacing[0]);
  h.vox_offset = 352.0f;
  h.scl_slope = 1.0f;
  h.xyzt_units = 2;  // mm
  std::snprintf(h.descrip, sizeof(h.descrip), "%s", id.c_str());
  h.sform_code = 1;
  h.srow_x[0] = h.pixdim[1];
  h.srow_y[1] = h.pixdim[2];
  h.srow_z[2] = h.pixdim[3];
  std::memcpy(h.magic, "n+1", 4);
  return h;
}

Nifti1Header read_header(std::ifstream& f, const std::string& path) {
  Nifti1Header h;
  if (!f.read(reinterpret_cast<char*>(&h), sizeof(h)))
    throw IoError("nifti: '" + path + "': file too short for a NIfTI-1 header");
  if (h.sizeof_hdr != 348)
    throw IoError("nifti: '" + path + "': bad sizeof_hdr field (not a little-endian NIfTI-1 file)");
  if (std::strncmp(h.magic, "n+1", 3) != 0)
    throw IoError("nifti: '" + path + "': bad magic field");
  if (h.dim[0] != 3)
    throw IoError("nifti: '" + path + "': expected 3 dimensions, dim[0]=" + std::to_string(h.dim[0]));
  for (int a = 1; a <= 3; ++a) {
    if (h.dim[a] < 1)
      throw IoError("nifti: '" + path + "': dim[" + std::to_string(a) + "] = " +
                    std::to_string(h.dim[a]) + " violates the dimension invariant");
    if (!(h.pixdim[a] > 0.0f) || !std::isfinite(h.pixdim[a]))
      throw IoError("nifti: '" + path + "': pixdim[" + std::to_string(a) + "] = " +
                    std::to_string(h.pixdim[a]) + " violates the positive-spacing invariant");
  }
  return h;
}

std::string id_from(const Nifti1Header& h, const std::string& path) {
  char buf[81];
  std::memcpy(buf, h.descrip, 80);
  buf[80] = '\0';
  if (buf[0] != '\0') return std::string(buf);
  return std::filesystem::path(path).stem().string();
}

void write_file(const std::string& path, const Nifti1Header& h, const void* data, std::size_t nbytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("nifti: cannot open '" + path + "' for writing");
  f.write(reinterpret_cast<const char*>(&h), sizeof(h));
  const char ext[4] = {0, 0, 0, 0};  // no header extensions
  f.write(ext, 4);
  f.write(static_cast<const char*>(data), static_cast<std::streamsize>(nbytes));
  if (!f) throw IoError("nifti: short write to '" + path + "'");
}

std::ifstream open_input(const std::string& path) {
  if (!std::filesystem::exists(path)) throw IoError("nifti: file '" + path + "' does not exist");
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("nifti: cannot open '" + path + "'");
  return f;
}

}  // namespace

void save_volume(const Volume& v, const std::string& path) {
  validate(v);
  Nifti1Header h = make_header(v.shape, v.spacing, v.id, kDtFloat32, 32);
  write_file(path, h, v.data.data(), v.data.size() * sizeof(float));
}

Volume load_volume(const std::string& path) {
  std::ifstream f = open_input(path);
  Nifti1Header h = read_header(f, path);
  if (h.datatype != kDtFloat32)
    throw IoError("nifti: '" + path + "': datatype " + std::to_string(h.datatype) +
                  ", expected float32 (16) for a volume");
  Volume v;
  v.shape = {h.dim[3], h.dim[2], h.dim[1]};
  v.spacing = {h.pixdim[3], h.pixdim[2], h.pixdim[1]};
  v.id = id_from(h, path);
  v.data.resize(v.numel());
  f.seekg(static_cast<std::streamoff>(h.vox_offset));
  if (!f.read(reinterpret_cast<char*>(v.data.data()),
              static_cast<std::streamsize>(v.data.size() * sizeof(float))))
    throw IoError("nifti: '" + path + "': truncated voxel data");
  for (std::size_t i = 0; i < v.data.size(); ++i)
    if (!std::isfinite(v.data[i]))
      throw IoError("nifti: '" + path + "': non-finite intensity at linear index " + std::to_string(i));
  return v;
}

void save_labelmap(const LabelMap& m, const std::string& path) {
  validate(m);
  Nifti1Header h = make_header(m.shape, m.spacing, m.id, kDtUint8, 8);
  write_file(path, h, m.data.data(), m.data.size());
}

LabelMap load_labelmap(const std::string& path) {
  std::ifstream f = open_input(path);
  Nifti1Header h = read_header(f, path);
  if (h.datatype != kDtUint8)
    throw IoError("nifti: '" + path + "': datatype " + std::to_string(h.datatype) +
                  ", expected uint8 (2) for a label map");
  LabelMap m;
  m.shape = {h.dim[3], h.dim[2], h.dim[1]};
  m.spacing = {h.pixdim[3], h.pixdim[2], h.pixdim[1]};
  m.id = id_from(h, path);
  m.data.resize(m.numel());
  f.seekg(static_cast<std::streamoff>(h.vox_offset));
  if (!f.read(reinterpret_cast<char*>(m.data.data()), static_cast<std::streamsize>(m.data.size())))
    throw IoError("nifti: '" + path + "': truncated voxel data");
  validate(m);
  return m;
}

}  // namespace cosmos
