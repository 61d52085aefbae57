#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace cogrip::cli {

// Runs one command line (without the program name). Returns the exit status:
// 0 success, 1 module error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string sha256_hex(std::span<const std::uint8_t> data);
std::string file_sha256(const std::filesystem::path& path);

}  // namespace cogrip::cli
