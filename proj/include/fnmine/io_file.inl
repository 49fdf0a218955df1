#pragma once

#include <fstream>
#include <utility>

namespace fnmine {

template <typename Fn>
auto parse_file(const std::filesystem::path& path, Fn&& parse) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, path.string() + ": cannot open file");
  try {
    return std::forward<Fn>(parse)(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + e.what());
  } catch (const ModelError& e) {
    throw ModelError(path.string() + ": " + e.what());
  }
}

template <typename Fn>
void write_file(const std::filesystem::path& path, Fn&& write) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path.string() + ": cannot write file");
  std::forward<Fn>(write)(out);
  out.flush();
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

}  // namespace fnmine
