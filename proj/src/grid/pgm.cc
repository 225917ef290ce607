#include <cctype>
#include <fstream>
#include <sstream>

#include "swarm/grid.h"

namespace swarm {

namespace {

// Reads the next whitespace-separated header token, skipping '#' comments.
std::string NextToken(std::istream& in) {
  std::string token;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!token.empty()) break;
      continue;
    }
    token += static_cast<char>(c);
  }
  return token;
}

int ParseHeaderInt(std::istream& in, const std::string& path, const char* what) {
  const std::string token = NextToken(in);
  try {
    std::size_t used = 0;
    const int value = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw IoError(path + ": malformed PGM " + what + " '" + token + "'");
  }
}

}  // namespace

void WritePgm(const std::string& path, const PixelGrid& pixels, PgmFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << (format == PgmFormat::kBinary ? "P5" : "P2") << '\n'
      << pixels.width << ' ' << pixels.height << "\n255\n";
  for (int row = 0; row < pixels.height; ++row) {
    const int y = pixels.height - 1 - row;
    for (int x = 0; x < pixels.width; ++x) {
      const auto v = pixels.intensity[y * pixels.width + x];
      if (format == PgmFormat::kBinary) {
        out.put(static_cast<char>(v));
      } else {
        out << static_cast<int>(v) << (x + 1 == pixels.width ? '\n' : ' ');
      }
    }
  }
  if (!out) throw IoError("failed writing " + path);
}

PixelGrid ReadPgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  const std::string magic = NextToken(in);
  if (magic != "P5" && magic != "P2") {
    throw IoError(path + ": not a PGM file (magic '" + magic + "')");
  }
  const int width = ParseHeaderInt(in, path, "width");
  const int height = ParseHeaderInt(in, path, "height");
  const int maxval = ParseHeaderInt(in, path, "maxval");
  if (width <= 0 || height <= 0) throw IoError(path + ": non-positive PGM dimensions");
  if (maxval <= 0 || maxval > 255) throw IoError(path + ": only 8-bit PGM is supported");

  PixelGrid pixels{width, height, {}};
  pixels.intensity.resize(static_cast<std::size_t>(width) * height);
  for (int row = 0; row < height; ++row) {
    const int y = height - 1 - row;
    for (int x = 0; x < width; ++x) {
      int v;
      if (magic == "P5") {
        v = in.get();
        if (v == EOF) throw IoError(path + ": truncated PGM raster");
      } else {
        const std::string token = NextToken(in);
        if (token.empty()) throw IoError(path + ": truncated PGM raster");
        try {
          v = std::stoi(token);
        } catch (const std::exception&) {
          throw IoError(path + ": malformed PGM sample '" + token + "'");
        }
      }
      if (v < 0 || v > maxval) throw IoError(path + ": PGM sample out of range");
      pixels.intensity[y * width + x] =
          static_cast<std::uint8_t>(maxval == 255 ? v : (v * 255 + maxval / 2) / maxval);
    }
  }
  return pixels;
}

BinaryGrid PixelsToOccupancy(const PixelGrid& pixels) {
  BinaryGrid grid{pixels.width, pixels.height, {}};
  grid.occupied.resize(pixels.intensity.size());
  for (std::size_t i = 0; i < pixels.intensity.size(); ++i) {
    grid.occupied[i] = pixels.intensity[i] < 128 ? 1 : 0;
  }
  return grid;
}

PixelGrid OccupancyToPixels(const BinaryGrid& grid) {
  PixelGrid pixels{grid.width, grid.height, {}};
  pixels.intensity.resize(grid.occupied.size());
  for (std::size_t i = 0; i < grid.occupied.size(); ++i) {
    pixels.intensity[i] = grid.occupied[i] ? 0 : 255;
  }
  return pixels;
}

}  // namespace swarm
