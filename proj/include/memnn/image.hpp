#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace memnn {

/* 8-bit grayscale image, row-major, one byte per pixel. */
struct ImageGrid {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(int row, int col) const;
  std::uint8_t& at(int row, int col);
  int count() const { return width * height; }
};

ImageGrid make_image(int width, int height, std::uint8_t fill = 0);

/* Binary PGM (P5), maxval 255. Reading accepts '#' comments in the
 * header; writing emits the canonical "P5\n<w> <h>\n255\n" form. */
ImageGrid read_pgm(std::istream& in);
ImageGrid read_pgm_file(const std::string& path);
void write_pgm(std::ostream& out, const ImageGrid& image);
void write_pgm_file(const std::string& path, const ImageGrid& image);

}  // namespace memnn
