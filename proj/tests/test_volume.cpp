#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cosmos/error.hpp"
#include "cosmos/nifti_io.hpp"
#include "cosmos/rng.hpp"
#include "cosmos/volume.hpp"

using namespace cosmos;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  auto d = fs::temp_directory_path() / "cosmos_test_volume";
  fs::create_directories(d);
  return d;
}

Volume random_volume(Shape3 shape, Spacing3 spacing, std::uint64_t seed, const std::string& id) {
  Volume v(shape, spacing, id);
  Rng rng(seed);
  for (auto& x : v.data) x = static_cast<float>(rng.uniform(-3.0, 7.0));
  return v;
}

}  // namespace

TEST_CASE("volume save/load round-trips bit-exactly") {
  auto dir = temp_dir();
  Volume v = random_volume({5, 6, 7}, {1.5, 0.7, 0.7}, 42, "case_a");
  auto path = (dir / "case_a.nii").string();
  save_volume(v, path);
  Volume r = load_volume(path);
  CHECK(r.shape == v.shape);
  CHECK(r.id == "case_a");
  CHECK(r.spacing[0] == doctest::Approx(1.5));
  REQUIRE(r.data.size() == v.data.size());
  for (size_t i = 0; i < v.data.size(); ++i) REQUIRE(r.data[i] == v.data[i]);
}

TEST_CASE("all-zero 4x4x4 volume round-trips with spacing intact") {
  auto dir = temp_dir();
  Volume v({4, 4, 4}, {2.0, 1.0, 1.0}, "zeros");
  auto path = (dir / "zeros.nii").string();
  save_volume(v, path);
  Volume r = load_volume(path);
  CHECK(r.shape == Shape3{4, 4, 4});
  for (float x : r.data) CHECK(x == 0.0f);
  CHECK(r.spacing[0] == 2.0);
  CHECK(r.spacing[1] == 1.0);
}

TEST_CASE("labelmap round-trip is exact and validated") {
  auto dir = temp_dir();
  LabelMap m({3, 4, 5}, {1, 1, 1}, "lab");
  m.at(1, 2, 3) = 1;
  m.at(2, 3, 4) = 2;
  auto path = (dir / "lab.nii").string();
  save_labelmap(m, path);
  LabelMap r = load_labelmap(path);
  CHECK(r.data == m.data);
  CHECK(r.id == "lab");
}

TEST_CASE("zero spacing in the header is a load error naming the field") {
  auto dir = temp_dir();
  Volume v({2, 2, 2}, {1, 1, 1}, "bad");
  auto path = (dir / "bad_spacing.nii").string();
  save_volume(v, path);
  // pixdim[1] (x spacing) sits at byte offset 76+4 = 80 in the header.
  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    float zero = 0.0f;
    f.seekp(80);
    f.write(reinterpret_cast<const char*>(&zero), 4);
  }
  CHECK_THROWS_WITH_AS(load_volume(path), doctest::Contains("pixdim"), IoError);
}

TEST_CASE("non-finite voxel is a load error naming the index") {
  auto dir = temp_dir();
  Volume v({2, 2, 2}, {1, 1, 1}, "nan");
  auto path = (dir / "nan.nii").string();
  save_volume(v, path);
  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    float bad = std::nanf("");
    f.seekp(352 + 3 * 4);
    f.write(reinterpret_cast<const char*>(&bad), 4);
  }
  CHECK_THROWS_WITH_AS(load_volume(path), doctest::Contains("non-finite"), IoError);
}

TEST_CASE("missing file and bad magic are load errors") {
  auto dir = temp_dir();
  CHECK_THROWS_AS(load_volume((dir / "nope.nii").string()), IoError);
  auto path = (dir / "junk.nii").string();
  {
    std::ofstream f(path, std::ios::binary);
    std::vector<char> junk(400, 'x');
    f.write(junk.data(), junk.size());
  }
  CHECK_THROWS_AS(load_volume(path), IoError);
}

TEST_CASE("minmax_normalize maps {2,4,6} to {0,0.5,1}") {
  Volume v({1, 1, 3}, {1, 1, 1}, "t");
  v.data = {2, 4, 6};
  Volume n = minmax_normalize(v);
  CHECK(n.data[0] == doctest::Approx(0.0));
  CHECK(n.data[1] == doctest::Approx(0.5));
  CHECK(n.data[2] == doctest::Approx(1.0));
}

TEST_CASE("minmax_normalize is idempotent to 1e-7") {
  Volume v = random_volume({4, 5, 6}, {1, 1, 1}, 7, "t");
  Volume a = minmax_normalize(v);
  Volume b = minmax_normalize(a);
  for (size_t i = 0; i < a.data.size(); ++i) CHECK(std::fabs(a.data[i] - b.data[i]) < 1e-7f);
}

TEST_CASE("normalizers reject constant volumes") {
  Volume v({2, 2, 2}, {1, 1, 1}, "const");
  for (auto& x : v.data) x = 3.5f;
  CHECK_THROWS_AS(minmax_normalize(v), DegenerateInputError);
  CHECK_THROWS_AS(zscore_normalize(v), DegenerateInputError);
}

TEST_CASE("zscore_normalize gives mean 0 and std 1 within 1e-6") {
  Volume v = random_volume({6, 7, 8}, {1, 1, 1}, 11, "t");
  Volume n = zscore_normalize(v);
  double mean = 0;
  for (float x : n.data) mean += x;
  mean /= n.data.size();
  double var = 0;
  for (float x : n.data) var += (x - mean) * (x - mean);
  double sd = std::sqrt(var / n.data.size());
  CHECK(std::fabs(mean) < 1e-6);
  CHECK(std::fabs(sd - 1.0) < 1e-6);
}

TEST_CASE("zscore on {-1,0,1} tiles keeps mean 0 std 1") {
  Volume v({1, 1, 9}, {1, 1, 1}, "t");
  // Tiled {-1, 0, 1}: already standardized (population std).
  v.data = {-1, 0, 1, -1, 0, 1, -1, 0, 1};
  // Scale so input std is sqrt(2/3); after zscore it must be exactly 1.
  Volume n = zscore_normalize(v);
  double m = 0;
  for (float x : n.data) m += x;
  CHECK(std::fabs(m) < 1e-6);
}

TEST_CASE("resample at identity spacing returns identical data") {
  Volume v = random_volume({4, 6, 8}, {2, 1, 1}, 3, "t");
  Volume r = resample(v, {2, 1, 1});
  CHECK(r.data == v.data);
  LabelMap m({4, 6, 8}, {2, 1, 1}, "l");
  m.at(0, 0, 0) = 2;
  LabelMap rm = resample(m, {2, 1, 1});
  CHECK(rm.data == m.data);
}

TEST_CASE("resample 8^3 at 2mm to 1mm gives 16^3") {
  Volume v = random_volume({8, 8, 8}, {2, 2, 2}, 5, "t");
  Volume r = resample(v, {1, 1, 1});
  CHECK(r.shape == Shape3{16, 16, 16});
  CHECK(r.spacing[0] == 1.0);
}

TEST_CASE("labelmap nearest-neighbor 2x up then down round-trips") {
  LabelMap m({4, 5, 6}, {1, 1, 1}, "l");
  Rng rng(9);
  for (auto& v : m.data) v = static_cast<std::uint8_t>(rng.uniform_int(3));
  LabelMap up = resample(m, {0.5, 0.5, 0.5});
  CHECK(up.shape == Shape3{8, 10, 12});
  LabelMap down = resample(up, {1, 1, 1});
  CHECK(down.shape == m.shape);
  CHECK(down.data == m.data);
  for (auto v : up.data) CHECK(v <= 2);
}

TEST_CASE("resample rejects collapsing output shapes") {
  Volume v = random_volume({2, 2, 2}, {1, 1, 1}, 5, "t");
  CHECK_THROWS_AS(resample(v, {100, 100, 100}), Error);
}

TEST_CASE("crop_or_pad with full patch centered is identity") {
  Volume v = random_volume({4, 6, 8}, {1, 1, 1}, 13, "t");
  Volume p = crop_or_pad(v, v.shape, {2, 3, 4});
  CHECK(p.data == v.data);
}

TEST_CASE("crop_or_pad corner patch extracts the hand-enumerated voxels") {
  Volume v({4, 4, 4}, {1, 1, 1}, "t");
  for (int z = 0; z < 4; ++z)
    for (int y = 0; y < 4; ++y)
      for (int x = 0; x < 4; ++x) v.at(z, y, x) = static_cast<float>(z * 100 + y * 10 + x);
  // Patch of 2^3 whose start is center - 1 => voxels (0..1)^3.
  Volume p = crop_or_pad(v, {2, 2, 2}, {1, 1, 1});
  CHECK(p.at(0, 0, 0) == 0.0f);
  CHECK(p.at(0, 0, 1) == 1.0f);
  CHECK(p.at(0, 1, 0) == 10.0f);
  CHECK(p.at(1, 0, 0) == 100.0f);
  CHECK(p.at(1, 1, 1) == 111.0f);
  CHECK(p.at(0, 1, 1) == 11.0f);
  CHECK(p.at(1, 0, 1) == 101.0f);
  CHECK(p.at(1, 1, 0) == 110.0f);
}

TEST_CASE("crop_or_pad pads outside regions with zeros / background") {
  Volume v = random_volume({2, 2, 2}, {1, 1, 1}, 17, "t");
  Volume p = crop_or_pad(v, {6, 6, 6}, {1, 1, 1});
  CHECK(p.shape == Shape3{6, 6, 6});
  CHECK(p.at(0, 0, 0) == 0.0f);   // outside
  CHECK(p.at(2, 2, 2) == v.at(0, 0, 0));
  LabelMap m({2, 2, 2}, {1, 1, 1}, "l");
  for (auto& x : m.data) x = 2;
  LabelMap pm = crop_or_pad(m, {4, 4, 4}, {0, 0, 0});
  for (auto x : pm.data) CHECK(x <= 2);
  CHECK(pm.at(2, 2, 2) == 2);
  CHECK(pm.at(0, 0, 0) == 0);
}
