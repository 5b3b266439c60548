#pragma once

// Matrix files and report output for the command-line tool.
//
// A matrix file is a JSON object {"rows", "cols", "re", "im"?}; "re" and
// "im" are arrays of `rows` arrays of `cols` numbers, and a missing "im"
// means a real matrix.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "genres/numerics.hpp"

namespace genres::cli {

using Json = nlohmann::ordered_json;

/// Unreadable, malformed or ill-shaped input. Maps to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `source` names the input in error messages.
CMat parse_matrix(std::string_view text, const std::string& source);

CMat matrix_from_json(const Json& j, const std::string& source);

/// The file format above; "im" is omitted when every imaginary part is 0.
Json matrix_to_json(const CMat& a);

struct LoadedMatrix {
  CMat value;
  std::string path;
  std::string sha256;  // hex digest of the file bytes
};

LoadedMatrix load_matrix(const std::filesystem::path& path);

void save_matrix(const CMat& a, const std::filesystem::path& path);

/// Pretty-printed JSON with a trailing newline.
std::string dump_report(const Json& report);

/// Writes `text` to `path`, replacing any existing file.
void save_text(const std::string& text, const std::filesystem::path& path);

std::string sha256_hex(std::string_view bytes);

/// Shortest decimal string that reads back to the same double.
std::string format_double(double x);

Json complex_to_json(Complex z);

}  // namespace genres::cli
