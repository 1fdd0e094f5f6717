// Copyright 2026 The MPD Authors.
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

#include "mpd/image_io.hpp"

#include <openssl/evp.h>
#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <iterator>
#include <cstdio>
#include <csetjmp>
#include <cstring>
#include <fstream>
#include <memory>
#include <vector>

// jpeglib.h needs size_t and FILE declared first.
#include <jpeglib.h>

#include "mpd/error.hpp"

namespace mpd {

namespace fs = std::filesystem;

namespace {

std::vector<unsigned char> slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool is_png(const std::vector<unsigned char>& b) {
  static constexpr std::array<unsigned char, 8> kSig{0x89, 'P', 'N', 'G',
                                                     '\r', '\n', 0x1a, '\n'};
  return b.size() >= 8 && std::equal(kSig.begin(), kSig.end(), b.begin());
}

bool is_jpeg(const std::vector<unsigned char>& b) {
  return b.size() >= 3 && b[0] == 0xFF && b[1] == 0xD8 && b[2] == 0xFF;
}

png_uint_32 png_format_for(int channels) {
  switch (channels) {
    case 1: return PNG_FORMAT_GRAY;
    case 2: return PNG_FORMAT_GA;
    case 3: return PNG_FORMAT_RGB;
    default: return PNG_FORMAT_RGBA;
  }
}

int channels_for(png_uint_32 format) {
  const bool color = (format & PNG_FORMAT_FLAG_COLOR) != 0;
  const bool alpha = (format & PNG_FORMAT_FLAG_ALPHA) != 0;
  return (color ? 3 : 1) + (alpha ? 1 : 0);
}

struct PngImage {
  png_image img;
  PngImage() {
    std::memset(&img, 0, sizeof img);
    img.version = PNG_IMAGE_VERSION;
  }
  ~PngImage() { png_image_free(&img); }
  PngImage(const PngImage&) = delete;
  PngImage& operator=(const PngImage&) = delete;
};

ImageBuffer decode_png(const std::vector<unsigned char>& bytes,
                       const fs::path& path) {
  PngImage png;
  if (!png_image_begin_read_from_memory(&png.img, bytes.data(), bytes.size())) {
    throw Error(ErrorCode::kDecode, path.string() + ": " + png.img.message);
  }
  const int channels = channels_for(png.img.format);
  png.img.format = png_format_for(channels);
  const int w = static_cast<int>(png.img.width);
  const int h = static_cast<int>(png.img.height);
  std::vector<std::uint8_t> data(PNG_IMAGE_SIZE(png.img));
  if (!png_image_finish_read(&png.img, nullptr, data.data(), 0, nullptr)) {
    throw Error(ErrorCode::kDecode, path.string() + ": " + png.img.message);
  }
  return {w, h, channels, std::move(data)};
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

// Corrupt-data warnings (premature end, bad Huffman code) are fatal too.
void jpeg_emit_message(j_common_ptr cinfo, int level) {
  if (level < 0) jpeg_error_exit(cinfo);
}

// Keeps setjmp/longjmp away from any object with a destructor.
bool decode_jpeg_raw(const std::vector<unsigned char>& bytes, int* w, int* h,
                     int* ch, std::vector<std::uint8_t>* data, char* msg) {
  jpeg_decompress_struct cinfo;
  JpegErrorManager err;
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_error_exit;
  err.base.emit_message = jpeg_emit_message;
  if (setjmp(err.jump)) {
    std::memcpy(msg, err.message, JMSG_LENGTH_MAX);
    jpeg_destroy_decompress(&cinfo);
    return false;
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
  jpeg_read_header(&cinfo, TRUE);
  if (cinfo.jpeg_color_space != JCS_GRAYSCALE) cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  *w = static_cast<int>(cinfo.output_width);
  *h = static_cast<int>(cinfo.output_height);
  *ch = cinfo.output_components;
  data->resize(static_cast<std::size_t>(*w) * *h * *ch);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = data->data() + static_cast<std::size_t>(cinfo.output_scanline) *
                                      *w * *ch;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return true;
}

}  // namespace

ImageBuffer read_image(const fs::path& path) {
  const auto bytes = slurp(path);
  if (is_png(bytes)) return decode_png(bytes, path);
  if (is_jpeg(bytes)) {
    int w = 0, h = 0, ch = 0;
    std::vector<std::uint8_t> data;
    char msg[JMSG_LENGTH_MAX] = {0};
    if (!decode_jpeg_raw(bytes, &w, &h, &ch, &data, msg)) {
      throw Error(ErrorCode::kDecode, path.string() + ": " + msg);
    }
    return {w, h, ch, std::move(data)};
  }
  throw Error(ErrorCode::kDecode, path.string() + ": not a PNG or JPEG file");
}

ImageSize read_image_size(const fs::path& path) {
  const auto bytes = slurp(path);
  if (is_png(bytes)) {
    PngImage png;
    if (!png_image_begin_read_from_memory(&png.img, bytes.data(), bytes.size())) {
      throw Error(ErrorCode::kDecode, path.string() + ": " + png.img.message);
    }
    return {static_cast<int>(png.img.width), static_cast<int>(png.img.height)};
  }
  const ImageBuffer img = read_image(path);
  return {img.width(), img.height()};
}

void write_png(const fs::path& path, const ImageBuffer& img) {
  PngImage png;
  png.img.width = static_cast<png_uint_32>(img.width());
  png.img.height = static_cast<png_uint_32>(img.height());
  png.img.format = png_format_for(img.channels());
  const std::string name = path.string();
  if (!png_image_write_to_file(&png.img, name.c_str(), 0, img.data().data(), 0,
                               nullptr)) {
    throw Error(ErrorCode::kIo, name + ": " + png.img.message);
  }
}

void write_jpeg(const fs::path& path, const ImageBuffer& img, int quality) {
  if (img.channels() != 1 && img.channels() != 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "JPEG output supports 1 or 3 channels");
  }
  const std::string name = path.string();
  std::unique_ptr<std::FILE, int (*)(std::FILE*)> file(
      std::fopen(name.c_str(), "wb"), &std::fclose);
  if (!file) throw Error(ErrorCode::kIo, "cannot write " + name);
  jpeg_compress_struct cinfo;
  jpeg_error_mgr err;
  cinfo.err = jpeg_std_error(&err);
  jpeg_create_compress(&cinfo);
  jpeg_stdio_dest(&cinfo, file.get());
  cinfo.image_width = static_cast<JDIMENSION>(img.width());
  cinfo.image_height = static_cast<JDIMENSION>(img.height());
  cinfo.input_components = img.channels();
  cinfo.in_color_space = img.channels() == 1 ? JCS_GRAYSCALE : JCS_RGB;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, quality, TRUE);
  jpeg_start_compress(&cinfo, TRUE);
  while (cinfo.next_scanline < cinfo.image_height) {
    auto* row = const_cast<JSAMPROW>(img.pixel(0, static_cast<int>(cinfo.next_scanline)));
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);
}

void write_image(const fs::path& path, const ImageBuffer& img) {
  std::string ext = path.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (ext == ".jpg" || ext == ".jpeg") {
    write_jpeg(path, img);
  } else {
    write_png(path, img);
  }
}

std::string pixel_digest(const ImageBuffer& img) {
  std::unique_ptr<EVP_MD_CTX, void (*)(EVP_MD_CTX*)> ctx(EVP_MD_CTX_new(),
                                                         &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kIo, "SHA-256 unavailable");
  }
  std::array<unsigned char, 12> header{};
  const std::array<std::uint32_t, 3> dims{
      static_cast<std::uint32_t>(img.width()),
      static_cast<std::uint32_t>(img.height()),
      static_cast<std::uint32_t>(img.channels())};
  for (std::size_t i = 0; i < dims.size(); ++i) {
    for (int b = 0; b < 4; ++b) header[i * 4 + b] = (dims[i] >> (8 * b)) & 0xFF;
  }
  EVP_DigestUpdate(ctx.get(), header.data(), header.size());
  EVP_DigestUpdate(ctx.get(), img.data().data(), img.data().size());
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 0xF];
  }
  return out;
}

}  // namespace mpd
