#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

#include "aspatp/errors.hpp"
#include "aspatp/imaging.hpp"

namespace aspatp::imaging {

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(const std::string& bytes) : s_(bytes) {}

  long long next_int(const char* what) {
    skip_space_and_comments();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      throw MalformedFile(std::string("PGM: expected ") + what);
    }
    long long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_++] - '0');
      if (v > (1LL << 40)) throw MalformedFile(std::string("PGM: ") + what + " out of range");
    }
    return v;
  }

  std::size_t pos() const { return pos_; }
  void advance() { ++pos_; }
  bool at_space() const { return pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])); }

 private:
  void skip_space_and_comments() {
    while (pos_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      } else if (s_[pos_] == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    throw MalformedFile("PGM: '" + path + "' is not a P2 or P5 file");
  }
  const bool binary = bytes[1] == '5';
  HeaderReader h(bytes);
  h.advance();
  h.advance();
  const long long width = h.next_int("width");
  const long long height = h.next_int("height");
  const long long maxval = h.next_int("maxval");
  if (width <= 0 || height <= 0) throw MalformedFile("PGM: empty image");
  if (maxval <= 0) throw MalformedFile("PGM: maxval must be positive");
  if (maxval > 255) throw UnsupportedMaxval("PGM: maxval " + std::to_string(maxval) + " exceeds 255");
  if (width != height) throw InvalidArgument("PGM: only square images are supported");

  GrayImage img;
  img.n = static_cast<std::size_t>(width);
  const std::size_t count = img.n * img.n;
  img.pixels.resize(count);
  const double scale = 1.0 / static_cast<double>(maxval);
  if (binary) {
    if (!h.at_space()) throw MalformedFile("PGM: missing separator after maxval");
    const std::size_t start = h.pos() + 1;
    if (bytes.size() < start + count) throw MalformedFile("PGM: truncated binary payload");
    for (std::size_t k = 0; k < count; ++k) {
      const auto v = static_cast<unsigned char>(bytes[start + k]);
      if (v > maxval) throw MalformedFile("PGM: sample exceeds maxval");
      img.pixels[k] = v * scale;
    }
  } else {
    for (std::size_t k = 0; k < count; ++k) {
      long long v;
      try {
        v = h.next_int("sample");
      } catch (const MalformedFile&) {
        throw MalformedFile("PGM: truncated ASCII payload at sample " + std::to_string(k));
      }
      if (v > maxval) throw MalformedFile("PGM: sample exceeds maxval");
      img.pixels[k] = static_cast<double>(v) * scale;
    }
  }
  return img;
}

void write_pgm(const GrayImage& img, const std::string& path) {
  if (img.pixels.size() != img.n * img.n) throw DimensionMismatch("write_pgm: pixel count does not match n*n");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "P5\n" << img.n << ' ' << img.n << "\n255\n";
  std::string payload(img.pixels.size(), '\0');
  for (std::size_t k = 0; k < img.pixels.size(); ++k) {
    const double p = std::isnan(img.pixels[k]) ? 0.0 : std::clamp(img.pixels[k], 0.0, 1.0);
    payload[k] = static_cast<char>(static_cast<unsigned char>(std::floor(p * 255.0 + 0.5)));
  }
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!out) throw IoError("write to '" + path + "' failed");
}

GrayImage clamped(const GrayImage& img) {
  GrayImage c = img;
  for (double& p : c.pixels) p = std::clamp(p, 0.0, 1.0);
  return c;
}

}  // namespace aspatp::imaging
