// Copyright 2026 The sbpwave Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include "sbpwave/errors.hpp"
#include "sbpwave/media_model.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace sbpwave;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "sbpwave_media_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("constant medium gives constant diagonals") {
  const auto block = make_block(0, 1, 8, 0, 1, 9);
  const auto d = sample_coefficients(MediumSpec::constant({1.0, 2.0}), block);
  for (double v : d.c_p) CHECK(v == 0.25);
  for (double v : d.c_u) CHECK(v == 1.0);
  for (double v : d.c_v) CHECK(v == 1.0);
}

TEST_CASE("two-layer medium: each block samples its own side on the interface row") {
  const auto medium = MediumSpec::two_layer({0.5, 1.0}, {1.0, 2.0}, 0.48);
  const auto top = make_block(0, 0.96, 120, 0.48, 0.96, 61);
  const auto bottom = make_block(0, 0.96, 60, 0.0, 0.48, 31);
  const auto dt = sample_coefficients(medium, top, BlockSide::Top);
  const auto db = sample_coefficients(medium, bottom, BlockSide::Bottom);
  for (double v : dt.c_p) CHECK(v == 2.0);
  for (double v : dt.c_u) CHECK(v == 0.5);
  for (double v : dt.c_v) CHECK(v == 0.5);
  for (double v : db.c_p) CHECK(v == 0.25);
  for (double v : db.c_u) CHECK(v == 1.0);
  for (double v : db.c_v) CHECK(v == 1.0);
}

TEST_CASE("vertical linear medium interpolates between the end values") {
  const auto m = MediumSpec::vertical_linear({0.5, 1.0}, 0.96, {1.0, 2.0}, 0.0);
  CHECK(m.at(0.3, 0.96).c == doctest::Approx(1.0));
  CHECK(m.at(0.3, 0.0).c == doctest::Approx(2.0));
  CHECK(m.at(0.3, 0.48).rho == doctest::Approx(0.75));
}

TEST_CASE("bilinear sampling") {
  GriddedModel g;
  g.meta = {2, 2, 1.0, 0.0, 0.0, false, "float32"};
  g.rho = {1, 1, 1, 3};
  g.c = {1, 1, 1, 1};
  const auto m = MediumSpec::gridded(g);
  m.validate();
  CHECK(m.at(0.5, 0.5).rho == doctest::Approx(1.5));

  SUBCASE("exact for affine fields on a downward grid") {
    GriddedModel a;
    a.meta = {5, 7, 0.5, -1.0, 2.0, true, "float64"};
    auto f = [](double x, double y) { return 3.0 + 0.5 * x - 0.25 * y; };
    for (std::size_t r = 0; r < 5; ++r)
      for (std::size_t c = 0; c < 7; ++c) {
        a.rho.push_back(f(-1.0 + 0.5 * c, 2.0 - 0.5 * r));
        a.c.push_back(1.0);
      }
    const auto ma = MediumSpec::gridded(a);
    for (double x : {-1.0, -0.3, 0.77, 2.0})
      for (double y : {2.0, 1.1, 0.0}) CHECK(ma.at(x, y).rho == doctest::Approx(f(x, y)).epsilon(1e-14));
  }

  SUBCASE("clamped within one cell, rejected beyond") {
    CHECK(m.at(1.5, 0.5).rho == doctest::Approx(2.0));
    CHECK_THROWS_AS(m.at(2.5, 0.5), OutOfCoverage);
    CHECK_THROWS_AS(m.at(0.5, -1.5), OutOfCoverage);
  }
}

TEST_CASE("load a full-size float32 model") {
  GriddedMetadata meta{751, 2301, 4.0, 0.0, 3000.0, true, "float32"};
  std::vector<double> rho(meta.rows * meta.cols, 2000.0), c(meta.rows * meta.cols, 1500.0);
  const auto fr = scratch("rho.bin"), fc = scratch("c.bin");
  write_gridded_field(meta, rho, fr);
  write_gridded_field(meta, c, fc);
  CHECK(fs::file_size(fr) == 751u * 2301u * 4u);
  const auto g = load_gridded_model(meta, fr, fc);
  CHECK(g.width() == 9200.0);
  CHECK(g.height() == 3000.0);
  CHECK(MediumSpec::gridded(g).at(4600.0, 1500.0).c == 1500.0);
}

TEST_CASE("gridded ingestion errors") {
  GriddedMetadata meta{3, 4, 1.0, 0.0, 0.0, false, "float64"};
  std::vector<double> ok(12, 1.0);
  const auto fr = scratch("r.bin"), fc = scratch("c.bin");
  write_gridded_field(meta, ok, fr);

  SUBCASE("truncated file") {
    write_gridded_field(meta, ok, fc);
    fs::resize_file(fc, 12 * 8 - 3);
    CHECK_THROWS_AS(load_gridded_model(meta, fr, fc), FormatError);
  }
  SUBCASE("zero wave speed") {
    auto bad = ok;
    bad[5] = 0.0;
    write_gridded_field(meta, bad, fc);
    CHECK_THROWS_AS(load_gridded_model(meta, fr, fc), ValueError);
  }
  SUBCASE("missing file") { CHECK_THROWS_AS(load_gridded_model(meta, fr, scratch("none.bin")), IoError); }
  SUBCASE("unknown value type") {
    auto m2 = meta;
    m2.value_type = "int16";
    CHECK_THROWS_AS(load_gridded_model(m2, fr, fr), FormatError);
  }
}

TEST_CASE("invalid analytic media") {
  CHECK_THROWS_AS(MediumSpec::constant({0.0, 1.0}).validate(), ValueError);
  CHECK_THROWS_AS(MediumSpec::two_layer({1, 1}, {1, -2}, 0.5).validate(), ValueError);
  CHECK_THROWS_AS(MediumSpec::vertical_linear({1, 1}, 0.0, {1, 1}, 1.0).validate(), ValueError);
}
