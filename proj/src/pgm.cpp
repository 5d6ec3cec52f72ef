#include "holo/pgm.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "holo/error.hpp"

namespace holo {
namespace {

[[noreturn]] void malformed(const std::string& why) { throw Error(ErrorCode::MalformedPgm, why); }

void skip_space_and_comments(std::istream& in) {
  for (;;) {
    const int c = in.peek();
    if (c == '#') {
      std::string line;
      std::getline(in, line);
    } else if (c != EOF && std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

unsigned long read_header_uint(std::istream& in, const char* what) {
  skip_space_and_comments(in);
  if (!std::isdigit(in.peek())) malformed(std::string("expected ") + what);
  unsigned long value = 0;
  while (std::isdigit(in.peek())) {
    value = value * 10 + static_cast<unsigned long>(in.get() - '0');
    if (value > 1'000'000'000UL) malformed(std::string(what) + " too large");
  }
  return value;
}

}  // namespace

ImageRaw read_pgm(std::istream& in) {
  char magic[2] = {0, 0};
  if (!in.read(magic, 2) || magic[0] != 'P' || (magic[1] != '5' && magic[1] != '2'))
    malformed("bad magic (expected P5 or P2)");
  const bool binary = magic[1] == '5';
  const auto width = read_header_uint(in, "width");
  const auto height = read_header_uint(in, "height");
  const auto maxval = read_header_uint(in, "maxval");
  if (width == 0 || height == 0) malformed("zero image dimension");
  if (maxval != 255) malformed("maxval " + std::to_string(maxval) + " unsupported (need 255)");

  std::vector<std::uint8_t> px(width * height);
  if (binary) {
    // Exactly one whitespace byte separates the header from the raster.
    if (!std::isspace(in.get())) malformed("missing separator after maxval");
    if (!in.read(reinterpret_cast<char*>(px.data()), static_cast<std::streamsize>(px.size())))
      malformed("truncated raster: expected " + std::to_string(px.size()) + " bytes");
  } else {
    for (auto& p : px) {
      skip_space_and_comments(in);
      if (!std::isdigit(in.peek())) malformed("truncated ASCII raster");
      const auto v = read_header_uint(in, "pixel");
      if (v > 255) malformed("pixel value above maxval");
      p = static_cast<std::uint8_t>(v);
    }
  }
  return ImageRaw(width, height, std::move(px));
}

ImageRaw read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  try {
    return read_pgm(in);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::MalformedPgm) throw;
    throw Error(ErrorCode::MalformedPgm, path.string() + ": " + e.what());
  }
}

void write_pgm(std::ostream& out, const ImageRaw& img) {
  out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
}

void write_pgm(const ImageRaw& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  write_pgm(out, img);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace holo
