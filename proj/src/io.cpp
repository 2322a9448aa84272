#include "numrad/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace numrad {

using nlohmann::json;

namespace {

[[noreturn]] void structure_error(const std::string& source, const std::string& path,
                                  const std::string& msg) {
  throw IoError(source + ": at " + path + ": " + msg);
}

std::vector<std::vector<double>> read_rows(const json& j, const std::string& key, std::size_t n,
                                           const std::string& source) {
  const std::string path = "/" + key;
  const json& rows = j.at(key);
  if (!rows.is_array()) structure_error(source, path, "expected an array of rows");
  if (rows.size() != n)
    structure_error(source, path,
                    "expected " + std::to_string(n) + " rows, got " + std::to_string(rows.size()));
  std::vector<std::vector<double>> out(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const std::string rpath = path + "/" + std::to_string(i);
    const json& row = rows[i];
    if (!row.is_array()) structure_error(source, rpath, "expected an array");
    if (row.size() != n)
      structure_error(source, rpath,
                      "expected " + std::to_string(n) + " entries, got " +
                          std::to_string(row.size()));
    for (std::size_t k = 0; k < n; ++k) {
      if (!row[k].is_number())
        structure_error(source, rpath + "/" + std::to_string(k), "expected a number");
      out[i][k] = row[k].get<double>();
      if (!std::isfinite(out[i][k]))
        structure_error(source, rpath + "/" + std::to_string(k), "non-finite number");
    }
  }
  return out;
}

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

CMatrix parse_matrix_json(std::string_view text, const std::string& source) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw IoError(source + ": JSON syntax error at byte " + std::to_string(e.byte) + ": " +
                  e.what());
  }
  if (!j.is_object()) structure_error(source, "/", "expected an object");
  if (!j.contains("n")) structure_error(source, "/n", "missing field");
  if (!j.contains("re")) structure_error(source, "/re", "missing field");
  const json& jn = j["n"];
  if (!jn.is_number_integer() || jn.get<std::int64_t>() < 1)
    structure_error(source, "/n", "expected a positive integer");
  const auto n = static_cast<std::size_t>(jn.get<std::int64_t>());
  const auto re = read_rows(j, "re", n, source);
  std::vector<std::vector<double>> im;
  if (j.contains("im") && !j["im"].is_null()) im = read_rows(j, "im", n, source);
  std::vector<cplx> entries(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      entries[i * n + k] = {re[i][k], im.empty() ? 0.0 : im[i][k]};
  return CMatrix(n, std::move(entries));
}

CMatrix read_matrix_file(const std::filesystem::path& path) {
  return parse_matrix_json(read_text_file(path), path.string());
}

json matrix_to_json(const CMatrix& a) {
  const std::size_t n = a.n();
  json re = json::array();
  json im = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json rr = json::array();
    json ir = json::array();
    for (std::size_t k = 0; k < n; ++k) {
      rr.push_back(a(i, k).real());
      ir.push_back(a(i, k).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return {{"n", n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

json report_to_json(const BoundReport& r) {
  json details = json::object();
  for (const auto& [k, v] : r.details) details[k] = v;
  json j{{"id", r.id},
         {"sign", to_string(r.sign)},
         {"lhs", optional_number(r.lhs)},
         {"rhs", optional_number(r.rhs)},
         {"slack", optional_number(r.slack)},
         {"holds", r.holds},
         {"applicable", r.applicable},
         {"details", std::move(details)},
         {"inputs_digest", r.inputs_digest}};
  if (!r.links.empty()) {
    json links = json::array();
    for (const LinkReport& l : r.links)
      links.push_back({{"label", l.label},
                       {"lhs", l.lhs},
                       {"rhs", l.rhs},
                       {"slack", l.slack},
                       {"holds", l.holds}});
    j["links"] = std::move(links);
  }
  if (!r.applicable) j["reason"] = r.reason;
  return j;
}

json implication_to_json(const ImplicationReport& r) {
  json details = json::object();
  for (const auto& [k, v] : r.details) details[k] = v;
  return {{"id", r.id},
          {"sign", to_string(r.sign)},
          {"hypothesis_holds", r.hypothesis_holds},
          {"conclusion_holds", r.conclusion_holds},
          {"consistent", r.consistent()},
          {"details", std::move(details)},
          {"inputs_digest", r.inputs_digest}};
}

json catalog_entry_to_json(const CatalogEntry& e) {
  return {{"id", e.id},
          {"arity", e.arity},
          {"signed", e.signed_variants},
          {"inputs", e.inputs},
          {"precondition", e.precondition},
          {"formula", e.formula}};
}

json spec_to_json(const EnsembleSpec& s) {
  json params = json::object();
  for (const auto& [k, v] : s.params) params[k] = v;
  return {{"family", to_string(s.family)}, {"n", s.n}, {"seed", s.seed}, {"params", params}};
}

EnsembleSpec spec_from_json(const json& j) {
  EnsembleSpec s;
  try {
    const std::string fam = j.at("family").get<std::string>();
    const auto f = parse_family(fam);
    if (!f) throw IoError("unknown ensemble family: " + fam);
    s.family = *f;
    s.n = j.at("n").get<std::size_t>();
    s.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("params"))
      for (const auto& [k, v] : j.at("params").items()) s.params[k] = v.get<double>();
  } catch (const json::exception& e) {
    throw IoError(std::string("invalid ensemble spec: ") + e.what());
  }
  return s;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

std::string csv_header() { return "id,sign,trial,lhs,rhs,slack,holds,applicable"; }

std::string csv_row(const BoundReport& r, std::uint64_t trial) {
  auto num = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  std::ostringstream os;
  os << r.id << ',' << to_string(r.sign) << ',' << trial << ',' << num(r.lhs) << ','
     << num(r.rhs) << ',' << num(r.slack) << ',' << (r.holds ? "true" : "false") << ','
     << (r.applicable ? "true" : "false");
  return os.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace numrad
