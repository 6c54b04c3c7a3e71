#include "memnn/image.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace memnn {

namespace {

void check_bounds(const ImageGrid& img, int row, int col) {
  if (row < 0 || row >= img.height || col < 0 || col >= img.width)
    throw std::out_of_range("pixel index outside the image");
}

/* Reads one whitespace-delimited header token, skipping '#' comments. */
std::string header_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) return tok;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

int header_int(std::istream& in, const char* what) {
  const std::string tok = header_token(in);
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (tok.empty() || used != tok.size())
    throw std::invalid_argument(std::string("PGM header: bad ") + what);
  return value;
}

}  // namespace

std::uint8_t ImageGrid::at(int row, int col) const {
  check_bounds(*this, row, col);
  return pixels[static_cast<std::size_t>(row) * width + col];
}

std::uint8_t& ImageGrid::at(int row, int col) {
  check_bounds(*this, row, col);
  return pixels[static_cast<std::size_t>(row) * width + col];
}

ImageGrid make_image(int width, int height, std::uint8_t fill) {
  if (width < 1 || height < 1) throw std::invalid_argument("image dimensions must be positive");
  ImageGrid img;
  img.width = width;
  img.height = height;
  img.pixels.assign(static_cast<std::size_t>(width) * height, fill);
  return img;
}

ImageGrid read_pgm(std::istream& in) {
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || magic[1] != '5')
    throw std::invalid_argument("PGM: wrong magic (need binary P5)");
  const int width = header_int(in, "width");
  const int height = header_int(in, "height");
  const int maxval = header_int(in, "maxval");
  if (width < 1 || height < 1) throw std::invalid_argument("PGM: bad dimensions");
  if (maxval != 255) throw std::invalid_argument("PGM: maxval must be 255");
  // The header ends with exactly one whitespace byte before the payload.
  ImageGrid img = make_image(width, height);
  in.read(reinterpret_cast<char*>(img.pixels.data()),
          static_cast<std::streamsize>(img.pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(img.pixels.size()))
    throw std::invalid_argument("PGM: truncated pixel payload");
  return img;
}

ImageGrid read_pgm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open image: " + path);
  try {
    return read_pgm(in);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void write_pgm(std::ostream& out, const ImageGrid& image) {
  if (image.width < 1 || image.height < 1 ||
      image.pixels.size() != static_cast<std::size_t>(image.width) * image.height)
    throw std::invalid_argument("image is malformed");
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
}

void write_pgm_file(const std::string& path, const ImageGrid& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open file for writing: " + path);
  write_pgm(out, image);
}

}  // namespace memnn
