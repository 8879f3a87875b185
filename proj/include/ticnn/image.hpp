#pragma once

#include "ticnn/tensor.hpp"

#include <optional>
#include <string>

namespace ticnn {

/// Recoverable decode failure (corrupt or unsupported file).
class ImageError : public std::runtime_error {
 public:
  explicit ImageError(const std::string& what) : std::runtime_error(what) {}
};

/// 8-bit RGB image at its original resolution.
struct DecodedImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel
};

/// Explicit image features: resolution, aspect ratio, face count.
struct ImageExplicitVector {
  static constexpr std::size_t kDim = 4;
  double width_px = 0;
  double height_px = 0;
  double aspect_ratio = 0;
  double face_count = 0;
};

/// PNG, baseline JPEG, or binary PPM (P6), dispatched on magic bytes.
DecodedImage decode_image(const std::string& path);

/// Bilinear resize to [size x size x 3], values scaled to [0,1].
Tensor resize_to_input(const DecodedImage& img, Eigen::Index size = 50);

struct ImageInput {
  Tensor tensor;  // [size x size x 3]
  bool missing = false;
  int original_width = 0;
  int original_height = 0;
};

/// Decodes and resizes; a missing or undecodable image yields the all-zero
/// tensor with the missing flag set.
ImageInput decode_and_resize(const std::string& path, Eigen::Index size = 50);

/// Zero tensor stand-in for news without images.
ImageInput missing_image(Eigen::Index size = 50);

/// Skin-tone blob counter: RGB rule classifier, 8-connected components,
/// minimum blob area 1% of the image. A rough stand-in for a face detector;
/// a dataset-provided face_count column takes precedence.
double heuristic_face_count(const Tensor& image);

/// (w, h, w/h, faces); face_count falls back to the blob heuristic when the
/// dataset gives none and an image is available.
ImageExplicitVector extract_image_explicit(int width, int height, std::optional<double> face_count,
                                           const Tensor* image_for_heuristic = nullptr);

/// P6 PPM writer for test fixtures.
void write_ppm(const std::string& path, const DecodedImage& img);

}  // namespace ticnn
