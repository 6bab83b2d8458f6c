#include "qfl/trajectory_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qfl {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ParseError, where + ": " + what);
}

std::vector<std::vector<double>> read_real_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) parse_fail(where, "expected a non-empty array of rows");
  const std::size_t n = j.size();
  std::vector<std::vector<double>> m;
  for (std::size_t r = 0; r < n; ++r) {
    const auto& row = j[r];
    const std::string rw = where + "[" + std::to_string(r) + "]";
    if (!row.is_array() || row.size() != n) parse_fail(rw, "expected a row of " + std::to_string(n) + " numbers");
    std::vector<double> vals;
    for (std::size_t c = 0; c < n; ++c) {
      if (!row[c].is_number()) parse_fail(rw + "[" + std::to_string(c) + "]", "expected a number");
      vals.push_back(row[c].get<double>());
    }
    m.push_back(std::move(vals));
  }
  return m;
}

CMatrix read_complex_matrix(const json& sample, const char* field, const std::string& where) {
  const std::string fw = where + "." + field;
  if (!sample.contains(field)) parse_fail(fw, "missing");
  const auto& j = sample.at(field);
  if (!j.is_object() || !j.contains("re")) parse_fail(fw, "expected an object with \"re\" and \"im\"");
  const auto re = read_real_matrix(j.at("re"), fw + ".re");
  const std::size_t n = re.size();
  std::vector<std::vector<double>> im(n, std::vector<double>(n, 0.0));
  if (j.contains("im")) {
    im = read_real_matrix(j.at("im"), fw + ".im");
    if (im.size() != n) parse_fail(fw + ".im", "dimension differs from re");
  }
  std::vector<Complex> entries;
  entries.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) entries.emplace_back(re[r][c], im[r][c]);
  }
  try {
    return CMatrix(n, std::move(entries));
  } catch (const Error& e) {
    parse_fail(fw, e.what());
  }
}

json write_complex_matrix(const CMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    json rr = json::array();
    json ir = json::array();
    for (std::size_t c = 0; c < m.dim(); ++c) {
      rr.push_back(m(r, c).real());
      ir.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Trajectory parse_trajectory(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object()) parse_fail("document", "expected a JSON object");

  if (doc.contains("units")) {
    const auto& units = doc.at("units");
    if (!units.is_object()) parse_fail("units", "expected an object");
    for (const auto& [key, value] : units.items()) {
      if (!value.is_number() || !(value.get<double>() > 0.0)) parse_fail("units." + key, "expected a positive number");
    }
  }

  if (!doc.contains("samples") || !doc.at("samples").is_array()) parse_fail("samples", "expected an array");
  const auto& arr = doc.at("samples");

  std::vector<Sample> samples;
  samples.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "samples[" + std::to_string(i) + "]";
    const auto& rec = arr[i];
    if (!rec.is_object()) parse_fail(where, "expected an object");
    if (!rec.contains("t") || !rec.at("t").is_number()) parse_fail(where + ".t", "expected a number");
    const double t = rec.at("t").get<double>();
    CMatrix h = read_complex_matrix(rec, "H", where);
    CMatrix rho = read_complex_matrix(rec, "rho", where);

    const double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > kFileTraceTolerance) {
      throw Error(ErrorCode::NotTracePreserving,
                  "sample " + std::to_string(i) + ": tr rho = " + std::to_string(tr) + " deviates from 1");
    }
    try {
      samples.push_back(Sample{t, Hamiltonian(std::move(h)), DensityMatrix(std::move(rho))});
    } catch (const Error& e) {
      throw Error(e.code(), "sample " + std::to_string(i) + ": " + e.what());
    }
  }
  return Trajectory(std::move(samples));
}

Trajectory read_trajectory_file(const std::filesystem::path& path) { return parse_trajectory(read_text(path)); }

std::string format_trajectory(const Trajectory& traj) {
  json samples = json::array();
  for (const auto& s : traj.samples()) {
    samples.push_back(json{{"t", s.t}, {"H", write_complex_matrix(s.h.matrix())}, {"rho", write_complex_matrix(s.rho.matrix())}});
  }
  json doc{{"units", {{"hbar", 1.0}, {"k_B", 1.0}}}, {"samples", std::move(samples)}};
  return doc.dump(1) + "\n";
}

void write_trajectory_file(const std::filesystem::path& path, const Trajectory& traj) {
  write_file_atomic(path, format_trajectory(traj));
}

std::string format_ledger(const EnergyLedger& ledger) {
  std::string out(kLedgerHeader);
  out += '\n';
  char buf[512];
  for (const auto& r : ledger.rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.energy, r.work,
                  r.heat, r.coherence, r.work_classical, r.heat_classical, r.entropy, r.l1_coherence, r.closure_defect);
    out += buf;
  }
  return out;
}

void write_ledger_file(const std::filesystem::path& path, const EnergyLedger& ledger) {
  write_file_atomic(path, format_ledger(ledger));
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error(ErrorCode::IoError, "short write to " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::IoError, "cannot rename onto " + path.string());
  }
}

}  // namespace qfl
