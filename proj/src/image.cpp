#include "ticnn/image.hpp"

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>

#include <jpeglib.h>
#include <png.h>

namespace ticnn {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

DecodedImage decode_ppm(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::string magic;
  is >> magic;
  if (magic != "P6") throw ImageError("not a P6 PPM: " + path);
  auto next_value = [&]() {
    int v;
    // skip whitespace and '#' comments
    while (is) {
      int c = is.peek();
      if (c == '#') {
        std::string line;
        std::getline(is, line);
      } else if (std::isspace(c)) {
        is.get();
      } else {
        break;
      }
    }
    if (!(is >> v)) throw ImageError("truncated PPM header: " + path);
    return v;
  };
  DecodedImage img;
  img.width = next_value();
  img.height = next_value();
  const int maxval = next_value();
  if (img.width <= 0 || img.height <= 0 || maxval != 255) throw ImageError("unsupported PPM parameters: " + path);
  is.get();  // single whitespace after maxval
  img.rgb.resize(static_cast<std::size_t>(img.width) * img.height * 3);
  is.read(reinterpret_cast<char*>(img.rgb.data()), static_cast<std::streamsize>(img.rgb.size()));
  if (is.gcount() != static_cast<std::streamsize>(img.rgb.size())) throw ImageError("truncated PPM data: " + path);
  return img;
}

DecodedImage decode_png(const std::string& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw ImageError("cannot open image: " + path);
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ImageError("libpng initialization failed");
  }
  DecodedImage img;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ImageError("corrupt PNG: " + path);
  }
  png_init_io(png, fp.get());
  png_read_info(png, info);
  png_set_expand(png);
  png_set_strip_16(png);
  png_set_strip_alpha(png);
  png_set_gray_to_rgb(png);
  png_read_update_info(png, info);
  img.width = static_cast<int>(png_get_image_width(png, info));
  img.height = static_cast<int>(png_get_image_height(png, info));
  img.rgb.resize(static_cast<std::size_t>(img.width) * img.height * 3);
  rows.resize(static_cast<std::size_t>(img.height));
  for (int y = 0; y < img.height; ++y) rows[y] = img.rgb.data() + static_cast<std::size_t>(y) * img.width * 3;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

struct JpegErrorMgr {
  jpeg_error_mgr pub;
  std::jmp_buf jump;
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* mgr = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
  std::longjmp(mgr->jump, 1);
}

DecodedImage decode_jpeg(const std::string& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw ImageError("cannot open image: " + path);
  jpeg_decompress_struct cinfo;
  JpegErrorMgr err;
  cinfo.err = jpeg_std_error(&err.pub);
  err.pub.error_exit = jpeg_error_exit;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw ImageError("corrupt JPEG: " + path);
  }
  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, fp.get());
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  DecodedImage img;
  img.width = static_cast<int>(cinfo.output_width);
  img.height = static_cast<int>(cinfo.output_height);
  img.rgb.resize(static_cast<std::size_t>(img.width) * img.height * 3);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = img.rgb.data() + static_cast<std::size_t>(cinfo.output_scanline) * img.width * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return img;
}

}  // namespace

DecodedImage decode_image(const std::string& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw ImageError("cannot open image: " + path);
  unsigned char magic[8] = {};
  probe.read(reinterpret_cast<char*>(magic), 8);
  probe.close();
  static const unsigned char kPngMagic[8] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
  if (std::memcmp(magic, kPngMagic, 8) == 0) return decode_png(path);
  if (magic[0] == 0xFF && magic[1] == 0xD8) return decode_jpeg(path);
  if (magic[0] == 'P' && magic[1] == '6') return decode_ppm(path);
  throw ImageError("unrecognized image format: " + path);
}

Tensor resize_to_input(const DecodedImage& img, Eigen::Index size) {
  if (img.width <= 0 || img.height <= 0) throw ImageError("empty image");
  Tensor out({size, size, 3});
  const double sx = static_cast<double>(img.width) / static_cast<double>(size);
  const double sy = static_cast<double>(img.height) / static_cast<double>(size);
  for (Eigen::Index y = 0; y < size; ++y) {
    const double fy = (static_cast<double>(y) + 0.5) * sy - 0.5;
    const Eigen::Index y0 = std::clamp<Eigen::Index>(static_cast<Eigen::Index>(std::floor(fy)), 0, img.height - 1);
    const Eigen::Index y1 = std::min<Eigen::Index>(y0 + 1, img.height - 1);
    const double wy = std::clamp(fy - static_cast<double>(y0), 0.0, 1.0);
    for (Eigen::Index x = 0; x < size; ++x) {
      const double fx = (static_cast<double>(x) + 0.5) * sx - 0.5;
      const Eigen::Index x0 = std::clamp<Eigen::Index>(static_cast<Eigen::Index>(std::floor(fx)), 0, img.width - 1);
      const Eigen::Index x1 = std::min<Eigen::Index>(x0 + 1, img.width - 1);
      const double wx = std::clamp(fx - static_cast<double>(x0), 0.0, 1.0);
      for (Eigen::Index c = 0; c < 3; ++c) {
        auto px = [&](Eigen::Index yy, Eigen::Index xx) {
          return static_cast<double>(img.rgb[(static_cast<std::size_t>(yy) * img.width + xx) * 3 + c]);
        };
        const double top = px(y0, x0) * (1.0 - wx) + px(y0, x1) * wx;
        const double bottom = px(y1, x0) * (1.0 - wx) + px(y1, x1) * wx;
        out[(y * size + x) * 3 + c] = static_cast<float>((top * (1.0 - wy) + bottom * wy) / 255.0);
      }
    }
  }
  return out;
}

ImageInput missing_image(Eigen::Index size) {
  ImageInput in;
  in.tensor = Tensor({size, size, 3});
  in.missing = true;
  return in;
}

ImageInput decode_and_resize(const std::string& path, Eigen::Index size) {
  if (path.empty()) return missing_image(size);
  try {
    const DecodedImage img = decode_image(path);
    ImageInput in;
    in.tensor = resize_to_input(img, size);
    in.original_width = img.width;
    in.original_height = img.height;
    return in;
  } catch (const ImageError&) {
    return missing_image(size);
  }
}

double heuristic_face_count(const Tensor& image) {
  const Eigen::Index h = image.dim(0), w = image.dim(1);
  if (image.rank() != 3 || image.dim(2) != 3) throw ShapeError("heuristic_face_count expects [H x W x 3]");
  // classic RGB skin rule, on [0,1] values
  std::vector<std::uint8_t> skin(static_cast<std::size_t>(h * w), 0);
  for (Eigen::Index i = 0; i < h * w; ++i) {
    const float r = image[i * 3], g = image[i * 3 + 1], b = image[i * 3 + 2];
    const float mx = std::max({r, g, b}), mn = std::min({r, g, b});
    skin[static_cast<std::size_t>(i)] = (r > 95.0f / 255.0f && g > 40.0f / 255.0f && b > 20.0f / 255.0f &&
                                         (mx - mn) > 15.0f / 255.0f && std::abs(r - g) > 15.0f / 255.0f && r > g &&
                                         r > b)
                                            ? 1
                                            : 0;
  }
  // 8-connected flood fill; blobs below 1% of the image are noise
  const Eigen::Index min_area = std::max<Eigen::Index>(1, h * w / 100);
  std::vector<std::uint8_t> seen(skin.size(), 0);
  std::vector<Eigen::Index> stack;
  double count = 0;
  for (Eigen::Index start = 0; start < h * w; ++start) {
    if (!skin[static_cast<std::size_t>(start)] || seen[static_cast<std::size_t>(start)]) continue;
    Eigen::Index area = 0;
    stack.assign(1, start);
    seen[static_cast<std::size_t>(start)] = 1;
    while (!stack.empty()) {
      const Eigen::Index p = stack.back();
      stack.pop_back();
      ++area;
      const Eigen::Index py = p / w, px = p % w;
      for (Eigen::Index dy = -1; dy <= 1; ++dy)
        for (Eigen::Index dx = -1; dx <= 1; ++dx) {
          const Eigen::Index ny = py + dy, nx = px + dx;
          if (ny < 0 || nx < 0 || ny >= h || nx >= w) continue;
          const Eigen::Index q = ny * w + nx;
          if (skin[static_cast<std::size_t>(q)] && !seen[static_cast<std::size_t>(q)]) {
            seen[static_cast<std::size_t>(q)] = 1;
            stack.push_back(q);
          }
        }
    }
    if (area >= min_area) count += 1.0;
  }
  return count;
}

ImageExplicitVector extract_image_explicit(int width, int height, std::optional<double> face_count,
                                           const Tensor* image_for_heuristic) {
  if (width <= 0 || height <= 0) throw ImageError("zero-dimension image");
  ImageExplicitVector v;
  v.width_px = width;
  v.height_px = height;
  v.aspect_ratio = static_cast<double>(width) / static_cast<double>(height);
  if (face_count.has_value())
    v.face_count = *face_count;
  else if (image_for_heuristic != nullptr)
    v.face_count = heuristic_face_count(*image_for_heuristic);
  return v;
}

void write_ppm(const std::string& path, const DecodedImage& img) {
  std::ofstream os(path, std::ios::binary);
  os << "P6\n" << img.width << ' ' << img.height << "\n255\n";
  os.write(reinterpret_cast<const char*>(img.rgb.data()), static_cast<std::streamsize>(img.rgb.size()));
  if (!os) throw ImageError("cannot write PPM: " + path);
}

}  // namespace ticnn
