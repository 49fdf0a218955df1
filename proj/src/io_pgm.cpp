#include <cctype>
#include <istream>
#include <ostream>
#include <string>

#include "fnmine/io.hpp"

namespace fnmine {

namespace {

void skip_space_and_comments(std::istream& in) {
  for (;;) {
    const int c = in.peek();
    if (c == std::char_traits<char>::eof()) return;
    if (c == '#') {
      std::string ignored;
      std::getline(in, ignored);
    } else if (std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

int read_header_int(std::istream& in, const char* what) {
  skip_space_and_comments(in);
  std::string digits;
  while (std::isdigit(in.peek())) digits.push_back(static_cast<char>(in.get()));
  if (digits.empty() || digits.size() > 9) {
    throw ParseError(0, std::string("PGM header: invalid ") + what);
  }
  return std::stoi(digits);
}

}  // namespace

DisparityMap read_disparity(std::istream& in) {
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (in.gcount() != 2 || magic[0] != 'P' || magic[1] != '5') {
    throw ParseError(0, "not a binary PGM (expected magic 'P5')");
  }
  const int width = read_header_int(in, "width");
  const int height = read_header_int(in, "height");
  const int maxval = read_header_int(in, "maxval");
  if (width <= 0 || height <= 0) {
    throw ParseError(0, "PGM header: dimensions must be positive");
  }
  if (maxval != 65535) {
    throw ParseError(0, "disparity PGM must be 16-bit (maxval 65535), found " +
                            std::to_string(maxval));
  }
  if (!std::isspace(in.get())) {
    throw ParseError(0, "PGM header: missing whitespace before raster");
  }

  const std::size_t count =
      static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::string bytes(count * 2, '\0');
  in.read(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (static_cast<std::size_t>(in.gcount()) != bytes.size()) {
    throw ParseError(0, "truncated PGM payload: expected " +
                            std::to_string(bytes.size()) + " bytes, got " +
                            std::to_string(in.gcount()));
  }
  std::vector<std::uint16_t> raw(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto hi = static_cast<unsigned char>(bytes[2 * i]);
    const auto lo = static_cast<unsigned char>(bytes[2 * i + 1]);
    raw[i] = static_cast<std::uint16_t>((hi << 8) | lo);
  }
  return DisparityMap(width, height, std::move(raw));
}

void write_disparity(std::ostream& out, const DisparityMap& map) {
  out << "P5\n" << map.width() << ' ' << map.height() << "\n65535\n";
  const auto data = map.data();
  std::string bytes(data.size() * 2, '\0');
  for (std::size_t i = 0; i < data.size(); ++i) {
    bytes[2 * i] = static_cast<char>(data[i] >> 8);
    bytes[2 * i + 1] = static_cast<char>(data[i] & 0xff);
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

void write_pgm8(std::ostream& out, int width, int height,
                std::span<const unsigned char> pixels) {
  if (pixels.size() !=
      static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw std::invalid_argument("PGM pixel count does not match dimensions");
  }
  out << "P5\n" << width << ' ' << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()),
            static_cast<std::streamsize>(pixels.size()));
}

}  // namespace fnmine
