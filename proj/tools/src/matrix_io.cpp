#include "matrix_io.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>

namespace genres::cli {

namespace {

// nlohmann messages start with "[json.exception.parse_error.101] ".
std::string without_exception_tag(const std::string& what) {
  const auto close = what.find("] ");
  return close == std::string::npos ? what : what.substr(close + 2);
}

Eigen::Index read_extent(const Json& j, const char* key, const std::string& source) {
  if (!j.contains(key)) {
    throw InputError(source + ": missing field \"" + key + "\"");
  }
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
    throw InputError(source + ": field \"" + key + "\" must be a positive integer");
  }
  return static_cast<Eigen::Index>(v.get<std::int64_t>());
}

Eigen::MatrixXd read_part(const Json& j, const char* key, Eigen::Index rows,
                          Eigen::Index cols, const std::string& source) {
  const std::string field = source + ": \"" + key + "\"";
  const Json& a = j.at(key);
  if (!a.is_array()) throw InputError(field + " must be an array of rows");
  if (static_cast<Eigen::Index>(a.size()) != rows) {
    throw InputError(field + " has " + std::to_string(a.size()) + " rows, expected " +
                     std::to_string(rows));
  }
  Eigen::MatrixXd out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = a[static_cast<std::size_t>(i)];
    const std::string where = field + " row " + std::to_string(i);
    if (!row.is_array()) throw InputError(where + " is not an array");
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw InputError(where + " has " + std::to_string(row.size()) +
                       " entries, expected " + std::to_string(cols));
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      const Json& v = row[static_cast<std::size_t>(k)];
      if (!v.is_number()) {
        throw InputError(where + " column " + std::to_string(k) + " is not a number");
      }
      const double x = v.get<double>();
      if (!std::isfinite(x)) {
        throw InputError(where + " column " + std::to_string(k) + " is not finite");
      }
      out(i, k) = x;
    }
  }
  return out;
}

}  // namespace

CMat matrix_from_json(const Json& j, const std::string& source) {
  if (!j.is_object()) throw InputError(source + ": expected a JSON object");
  const Eigen::Index rows = read_extent(j, "rows", source);
  const Eigen::Index cols = read_extent(j, "cols", source);
  if (!j.contains("re")) throw InputError(source + ": missing field \"re\"");
  CMat out = read_part(j, "re", rows, cols, source).cast<Complex>();
  if (j.contains("im") && !j.at("im").is_null()) {
    out += Complex(0.0, 1.0) * read_part(j, "im", rows, cols, source).cast<Complex>();
  }
  return out;
}

CMat parse_matrix(std::string_view text, const std::string& source) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {  // syntax errors and number overflow
    throw InputError(source + ": " + without_exception_tag(e.what()));
  }
  return matrix_from_json(j, source);
}

Json matrix_to_json(const CMat& a) {
  Json re = Json::array();
  Json im = Json::array();
  bool complex = false;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Json re_row = Json::array();
    Json im_row = Json::array();
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      re_row.push_back(a(i, k).real());
      im_row.push_back(a(i, k).imag());
      complex = complex || a(i, k).imag() != 0.0;
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  Json out;
  out["rows"] = a.rows();
  out["cols"] = a.cols();
  out["re"] = std::move(re);
  if (complex) out["im"] = std::move(im);
  return out;
}

LoadedMatrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  const std::string bytes{std::istreambuf_iterator<char>(in), {}};
  if (in.bad()) throw InputError(path.string() + ": read error");
  return {parse_matrix(bytes, path.string()), path.string(), sha256_hex(bytes)};
}

void save_matrix(const CMat& a, const std::filesystem::path& path) {
  save_text(dump_report(matrix_to_json(a)), path);
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

void save_text(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError(path.string() + ": cannot open for writing");
  out << text;
  if (!out.flush()) throw InputError(path.string() + ": write error");
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string format_double(double x) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("cannot format number");
  return {buf, end};
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

}  // namespace genres::cli
