#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "numrad/cmatrix.hpp"
#include "numrad/ensembles.hpp"
#include "numrad/inequalities.hpp"

namespace numrad {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matrix JSON: {"n": int, "re": [[...]], "im": [[...]]}, "im" optional.
// Errors name the byte offset (syntax) or the JSON path (structure).
CMatrix parse_matrix_json(std::string_view text, const std::string& source = "<input>");
CMatrix read_matrix_file(const std::filesystem::path& path);
nlohmann::json matrix_to_json(const CMatrix& a);

nlohmann::json report_to_json(const BoundReport& r);
nlohmann::json implication_to_json(const ImplicationReport& r);
nlohmann::json catalog_entry_to_json(const CatalogEntry& e);

nlohmann::json spec_to_json(const EnsembleSpec& s);
EnsembleSpec spec_from_json(const nlohmann::json& j);

// Shortest decimal string that round-trips to the same double.
std::string format_double(double x);

// CSV columns: id,sign,trial,lhs,rhs,slack,holds,applicable
std::string csv_header();
std::string csv_row(const BoundReport& r, std::uint64_t trial);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace numrad
