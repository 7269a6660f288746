#include "nshmc/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

#include "nshmc/errors.hpp"

namespace nshmc {

Image::Image(std::size_t w, std::size_t h, std::vector<double> data)
    : width(w), height(h), pixels(std::move(data)) {
  if (pixels.size() != w * h) throw DimensionError("Image: pixel count does not match dimensions");
}

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const unsigned char> bytes) : bytes_(bytes) {}

  std::size_t offset() const { return pos_; }

  void skip_whitespace_and_comments() {
    while (pos_ < bytes_.size()) {
      const unsigned char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  unsigned long read_number(const char* field) {
    skip_whitespace_and_comments();
    if (pos_ >= bytes_.size())
      throw PgmParseError(std::string("unexpected end of header reading ") + field, pos_);
    if (!std::isdigit(bytes_[pos_]))
      throw PgmParseError(std::string("expected a decimal ") + field, pos_);
    unsigned long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000UL) throw PgmParseError(std::string(field) + " is too large", pos_);
      ++pos_;
    }
    return value;
  }

  void expect_single_whitespace() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_]))
      throw PgmParseError("expected whitespace after maxval", pos_);
    ++pos_;
  }

  void advance(std::size_t n) { pos_ += n; }

 private:
  std::span<const unsigned char> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

Image pgm_parse(std::span<const unsigned char> bytes) {
  if (bytes.size() < 2) throw PgmParseError("file too short for a magic number", 0);
  if (bytes[0] != 'P' || bytes[1] != '5')
    throw PgmParseError("unsupported magic number (only binary P5 is accepted)", 0);
  HeaderReader reader(bytes);
  reader.advance(2);
  reader.skip_whitespace_and_comments();
  const std::size_t width_offset = reader.offset();
  const unsigned long width = reader.read_number("width");
  const unsigned long height = reader.read_number("height");
  if (width == 0 || height == 0) throw PgmParseError("zero image dimension", width_offset);
  reader.skip_whitespace_and_comments();
  const std::size_t maxval_offset = reader.offset();
  const unsigned long maxval = reader.read_number("maxval");
  if (maxval != 255 && maxval != 65535)
    throw PgmParseError("unsupported maxval " + std::to_string(maxval), maxval_offset);
  reader.expect_single_whitespace();

  const std::size_t sample_bytes = maxval > 255 ? 2 : 1;
  const std::size_t count = width * height;
  const std::size_t start = reader.offset();
  if (bytes.size() - start < count * sample_bytes)
    throw PgmParseError("truncated pixel payload: expected " + std::to_string(count * sample_bytes) +
                            " bytes, found " + std::to_string(bytes.size() - start),
                        bytes.size());

  Image image(width, height);
  for (std::size_t i = 0; i < count; ++i) {
    if (sample_bytes == 1) {
      image.pixels[i] = bytes[start + i];
    } else {
      const std::size_t at = start + 2 * i;
      image.pixels[i] = static_cast<double>((bytes[at] << 8) | bytes[at + 1]);
    }
  }
  return image;
}

Image pgm_read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  return pgm_parse(bytes);
}

std::vector<unsigned char> pgm_encode(const Image& image, unsigned maxval) {
  if (maxval != 255 && maxval != 65535) throw DomainError("pgm: maxval must be 255 or 65535");
  if (image.width == 0 || image.height == 0) throw DimensionError("pgm: empty image");
  const std::string header = "P5\n" + std::to_string(image.width) + " " +
                             std::to_string(image.height) + "\n" + std::to_string(maxval) + "\n";
  std::vector<unsigned char> out(header.begin(), header.end());
  out.reserve(out.size() + image.size() * (maxval > 255 ? 2 : 1));
  for (double v : image.pixels) {
    const double clamped = std::clamp(std::isnan(v) ? 0.0 : v, 0.0, static_cast<double>(maxval));
    const auto level = static_cast<unsigned>(std::lround(clamped));
    if (maxval > 255) out.push_back(static_cast<unsigned char>(level >> 8));
    out.push_back(static_cast<unsigned char>(level & 0xFF));
  }
  return out;
}

void pgm_write(const Image& image, const std::filesystem::path& path, unsigned maxval) {
  const std::vector<unsigned char> bytes = pgm_encode(image, maxval);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace nshmc
