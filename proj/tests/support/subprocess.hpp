#pragma once

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace testsupport {

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::filesystem::path unique_temp_dir() {
  static std::mt19937_64 gen(std::random_device{}());
  std::ostringstream name;
  name << "opgkit-test-" << std::hex << gen();
  const auto dir = std::filesystem::temp_directory_path() / name.str();
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

/// Runs a shell command with stdout/stderr captured to files.
inline CommandResult run_command(const std::string& command_line) {
  const auto dir = unique_temp_dir();
  const auto out_path = dir / "stdout.txt";
  const auto err_path = dir / "stderr.txt";
  const std::string full =
      command_line + " > " + out_path.string() + " 2> " + err_path.string();
  const int status = std::system(full.c_str());

  CommandResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_all(out_path);
  result.err = read_all(err_path);
  std::filesystem::remove_all(dir);
  return result;
}

}  // namespace testsupport
