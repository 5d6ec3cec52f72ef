#pragma once

#include <filesystem>
#include <iosfwd>

#include "holo/encoding.hpp"

namespace holo {

// Binary (P5) and ASCII (P2) graymaps with maxval 255 only.
ImageRaw read_pgm(std::istream& in);
ImageRaw read_pgm(const std::filesystem::path& path);

// Always writes binary P5: "P5\n<w> <h>\n255\n" followed by the raw bytes.
void write_pgm(std::ostream& out, const ImageRaw& img);
void write_pgm(const ImageRaw& img, const std::filesystem::path& path);

}  // namespace holo
