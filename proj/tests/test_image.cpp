#include <doctest.h>

#include "ticnn/image.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

using namespace ticnn;

namespace {

const std::string kFixtures = std::string(TICNN_SOURCE_DIR) + "/data/fixtures";

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) {
    path = (std::filesystem::temp_directory_path() / name).string();
  }
  ~TempFile() { std::remove(path.c_str()); }
};

DecodedImage solid_image(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  DecodedImage img;
  img.width = w;
  img.height = h;
  img.rgb.resize(static_cast<std::size_t>(w) * h * 3);
  for (std::size_t i = 0; i < img.rgb.size(); i += 3) {
    img.rgb[i] = r;
    img.rgb[i + 1] = g;
    img.rgb[i + 2] = b;
  }
  return img;
}

// Independent reimplementation of the half-pixel-center bilinear sample.
double bilinear_oracle(const DecodedImage& img, int size, int y, int x, int c) {
  const double sx = static_cast<double>(img.width) / size;
  const double sy = static_cast<double>(img.height) / size;
  auto px = [&](int yy, int xx) {
    yy = std::clamp(yy, 0, img.height - 1);
    xx = std::clamp(xx, 0, img.width - 1);
    return static_cast<double>(img.rgb[(static_cast<std::size_t>(yy) * img.width + xx) * 3 + c]);
  };
  const double fy = (y + 0.5) * sy - 0.5, fx = (x + 0.5) * sx - 0.5;
  const int y0 = std::clamp(static_cast<int>(std::floor(fy)), 0, img.height - 1);
  const int x0 = std::clamp(static_cast<int>(std::floor(fx)), 0, img.width - 1);
  const double wy = std::clamp(fy - y0, 0.0, 1.0), wx = std::clamp(fx - x0, 0.0, 1.0);
  const double top = px(y0, x0) * (1 - wx) + px(y0, x0 + 1) * wx;
  const double bot = px(y0 + 1, x0) * (1 - wx) + px(y0 + 1, x0 + 1) * wx;
  return (top * (1 - wy) + bot * wy) / 255.0;
}

// Paints a filled disc of "skin" color onto a [size x size x 3] tensor.
void paint_disc(Tensor& img, int cy, int cx, int radius) {
  const Eigen::Index size = img.dim(0);
  for (Eigen::Index y = 0; y < size; ++y)
    for (Eigen::Index x = 0; x < size; ++x) {
      const long dy = y - cy, dx = x - cx;
      if (dy * dy + dx * dx <= static_cast<long>(radius) * radius) {
        img[(y * size + x) * 3] = 0.80f;
        img[(y * size + x) * 3 + 1] = 0.50f;
        img[(y * size + x) * 3 + 2] = 0.40f;
      }
    }
}

}  // namespace

TEST_CASE("uniform mid-gray source resizes to a constant tensor") {
  const DecodedImage img = solid_image(100, 100, 128, 128, 128);
  Tensor t = resize_to_input(img, 50);
  CHECK(t.shape() == std::vector<Eigen::Index>{50, 50, 3});
  for (Eigen::Index i = 0; i < t.size(); ++i) CHECK(t[i] == doctest::Approx(128.0 / 255.0).epsilon(1e-6));
}

TEST_CASE("same-size resize is the identity up to the 1/255 scale") {
  DecodedImage img;
  img.width = 50;
  img.height = 50;
  img.rgb.resize(50 * 50 * 3);
  std::mt19937 rng(11);
  for (auto& b : img.rgb) b = static_cast<std::uint8_t>(rng() % 256);
  Tensor t = resize_to_input(img, 50);
  for (Eigen::Index i = 0; i < t.size(); ++i)
    CHECK(t[i] == doctest::Approx(img.rgb[static_cast<std::size_t>(i)] / 255.0).epsilon(1e-6));
}

TEST_CASE("2x2 checkerboard upscale matches the bilinear formula oracle") {
  DecodedImage img;
  img.width = 2;
  img.height = 2;
  img.rgb = {255, 255, 255, 0, 0, 0, 0, 0, 0, 255, 255, 255};
  Tensor t = resize_to_input(img, 50);
  for (int y : {0, 12, 24, 25, 37, 49})
    for (int x : {0, 12, 24, 25, 37, 49})
      for (int c = 0; c < 3; ++c)
        CHECK(t[(y * 50 + x) * 3 + c] == doctest::Approx(bilinear_oracle(img, 50, y, x, c)).epsilon(1e-5));
}

TEST_CASE("resize output stays in [0,1] for arbitrary sources") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    DecodedImage img;
    img.width = 1 + static_cast<int>(rng() % 120);
    img.height = 1 + static_cast<int>(rng() % 120);
    img.rgb.resize(static_cast<std::size_t>(img.width) * img.height * 3);
    for (auto& b : img.rgb) b = static_cast<std::uint8_t>(rng() % 256);
    Tensor t = resize_to_input(img, 50);
    CHECK(t.shape() == std::vector<Eigen::Index>{50, 50, 3});
    CHECK(t.data().minCoeff() >= 0.0f);
    CHECK(t.data().maxCoeff() <= 1.0f);
  }
}

TEST_CASE("explicit vector carries original dims and their ratio") {
  const auto v = extract_image_explicit(457, 277, 0.366);
  CHECK(v.width_px == 457.0);
  CHECK(v.height_px == 277.0);
  CHECK(v.aspect_ratio == doctest::Approx(457.0 / 277.0));
  CHECK(v.face_count == 0.366);
  CHECK(v.aspect_ratio * v.height_px == doctest::Approx(v.width_px).epsilon(1e-6));
  CHECK(extract_image_explicit(300, 300, 0.0).aspect_ratio == 1.0);
  CHECK(extract_image_explicit(355, 228, 0.0).aspect_ratio == doctest::Approx(355.0 / 228.0));
}

TEST_CASE("zero-dimension image is rejected") {
  CHECK_THROWS_AS(extract_image_explicit(0, 10, 1.0), ImageError);
  CHECK_THROWS_AS(extract_image_explicit(10, 0, 1.0), ImageError);
}

TEST_CASE("all-black image has zero skin blobs") {
  Tensor img({50, 50, 3});
  CHECK(heuristic_face_count(img) == 0.0);
}

TEST_CASE("one synthetic skin disc counts as one blob") {
  Tensor img({50, 50, 3});
  paint_disc(img, 25, 25, 10);
  CHECK(heuristic_face_count(img) == 1.0);
}

TEST_CASE("two separated discs count as two blobs") {
  Tensor img({50, 50, 3});
  paint_disc(img, 12, 12, 8);
  paint_disc(img, 38, 38, 8);
  CHECK(heuristic_face_count(img) == 2.0);
}

TEST_CASE("sub-1% specks do not count") {
  Tensor img({50, 50, 3});
  paint_disc(img, 25, 25, 2);  // ~13 px, under the 25 px floor
  CHECK(heuristic_face_count(img) == 0.0);
}

TEST_CASE("blob count is invariant under horizontal mirroring") {
  Tensor img({50, 50, 3});
  paint_disc(img, 10, 8, 6);
  paint_disc(img, 35, 30, 9);
  Tensor mirrored({50, 50, 3});
  for (Eigen::Index y = 0; y < 50; ++y)
    for (Eigen::Index x = 0; x < 50; ++x)
      for (Eigen::Index c = 0; c < 3; ++c) mirrored[(y * 50 + x) * 3 + c] = img[(y * 50 + (49 - x)) * 3 + c];
  CHECK(heuristic_face_count(mirrored) == heuristic_face_count(img));
}

TEST_CASE("explicit vector falls back to the heuristic when no count is given") {
  Tensor img({50, 50, 3});
  paint_disc(img, 25, 25, 10);
  const auto with_column = extract_image_explicit(100, 100, 3.0, &img);
  CHECK(with_column.face_count == 3.0);  // dataset column wins
  const auto fallback = extract_image_explicit(100, 100, std::nullopt, &img);
  CHECK(fallback.face_count == 1.0);
}

TEST_CASE("PPM round trip is byte-exact") {
  TempFile tmp("ticnn_roundtrip.ppm");
  DecodedImage img;
  img.width = 7;
  img.height = 5;
  img.rgb.resize(7 * 5 * 3);
  std::mt19937 rng(21);
  for (auto& b : img.rgb) b = static_cast<std::uint8_t>(rng() % 256);
  write_ppm(tmp.path, img);
  const DecodedImage back = decode_image(tmp.path);
  CHECK(back.width == 7);
  CHECK(back.height == 5);
  CHECK(back.rgb == img.rgb);
}

TEST_CASE("PNG fixture decodes to the committed PPM reference") {
  const DecodedImage png = decode_image(kFixtures + "/gradient.png");
  const DecodedImage ppm = decode_image(kFixtures + "/gradient.ppm");
  CHECK(png.width == 4);
  CHECK(png.height == 3);
  CHECK(png.rgb == ppm.rgb);
}

TEST_CASE("grayscale PNG expands to three equal channels") {
  const DecodedImage img = decode_image(kFixtures + "/gray.png");
  CHECK(img.width == 8);
  CHECK(img.height == 8);
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x) {
      const std::size_t i = (static_cast<std::size_t>(y) * 8 + x) * 3;
      CHECK(static_cast<int>(img.rgb[i]) == x * 30);
      CHECK(img.rgb[i] == img.rgb[i + 1]);
      CHECK(img.rgb[i] == img.rgb[i + 2]);
    }
}

TEST_CASE("solid JPEG fixture decodes near its source color") {
  const DecodedImage img = decode_image(kFixtures + "/solid.jpg");
  CHECK(img.width == 16);
  CHECK(img.height == 16);
  for (std::size_t i = 0; i < img.rgb.size(); i += 3) {
    CHECK(std::abs(static_cast<int>(img.rgb[i]) - 200) <= 4);
    CHECK(std::abs(static_cast<int>(img.rgb[i + 1]) - 120) <= 4);
    CHECK(std::abs(static_cast<int>(img.rgb[i + 2]) - 60) <= 4);
  }
}

TEST_CASE("missing or corrupt files yield the zero tensor plus flag") {
  const ImageInput missing = decode_and_resize("/no/such/file.png", 50);
  CHECK(missing.missing);
  CHECK(missing.tensor.data().cwiseAbs().maxCoeff() == 0.0f);

  TempFile tmp("ticnn_corrupt.png");
  {
    std::ofstream os(tmp.path, std::ios::binary);
    os << "\x89PNG\r\n\x1a\n garbage follows, not a real chunk stream";
  }
  const ImageInput corrupt = decode_and_resize(tmp.path, 50);
  CHECK(corrupt.missing);
  CHECK(corrupt.tensor.data().cwiseAbs().maxCoeff() == 0.0f);

  CHECK_THROWS_AS(decode_image(tmp.path), ImageError);
}

TEST_CASE("empty path uses the missing-image convention") {
  const ImageInput in = decode_and_resize("", 50);
  CHECK(in.missing);
  CHECK(in.tensor.shape() == std::vector<Eigen::Index>{50, 50, 3});
}
