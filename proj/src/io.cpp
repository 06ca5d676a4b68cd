#include "dkra/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "dkra/params.hpp"

namespace dkra {

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("output: cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("output: write to '" + path + "' failed");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("input: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace dkra
