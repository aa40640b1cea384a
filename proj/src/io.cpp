// Copyright (c) the subwave authors.
// SPDX-License-Identifier: Apache-2.0

#include "subwave/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace subwave {
namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& message) {
  throw std::invalid_argument("config: " + message);
}

const json& require_key(const json& j, const std::string& key,
                        const std::string& path) {
  if (!j.is_object() || !j.contains(key)) {
    config_error("missing key \"" + (path.empty() ? key : path + "." + key) +
                 "\"");
  }
  return j.at(key);
}

double require_number(const json& j, const std::string& key,
                      const std::string& path) {
  const json& v = require_key(j, key, path);
  if (!v.is_number()) {
    config_error("key \"" + (path.empty() ? key : path + "." + key) +
                 "\" must be a number");
  }
  return v.get<double>();
}

int require_int(const json& j, const std::string& key,
                const std::string& path) {
  const json& v = require_key(j, key, path);
  if (!v.is_number_integer()) {
    config_error("key \"" + (path.empty() ? key : path + "." + key) +
                 "\" must be an integer");
  }
  return v.get<int>();
}

Vec3 parse_vec3_json(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3 || !v[0].is_number() ||
      !v[1].is_number() || !v[2].is_number()) {
    config_error("key \"" + where + "\" must be a 3-number array");
  }
  return Vec3(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
}

void write_labeled_matrix(std::ostream& os, const Eigen::MatrixXd& m,
                          const std::vector<int>& labels) {
  os << "label";
  for (int l : labels) os << "," << l;
  os << "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << labels[i];
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      os << "," << format_double(m(i, j));
    }
    os << "\n";
  }
}

}  // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 0xCBF29CE484222325ull;
  for (unsigned char b : bytes) {
    hash ^= b;
    hash *= 0x100000001B3ull;
  }
  return hash;
}

std::string manifest_line(const std::string& command,
                          const std::string& canonical_config) {
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical_config)));
  return std::string("# subwave ") + kToolVersion + " cmd=" + command +
         " config_hash=0x" + hex;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ResonatorArray parse_array_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    config_error(std::string("JSON parse error: ") + e.what());
  }
  if (!j.is_object()) config_error("top level must be an object");

  const json& jm = require_key(j, "material", "");
  Material material{require_number(jm, "delta", "material"),
                    require_number(jm, "v", "material"),
                    require_number(jm, "v0", "material")};

  const int geometry_keys = static_cast<int>(j.contains("spheres")) +
                            static_cast<int>(j.contains("graded")) +
                            static_cast<int>(j.contains("dilute"));
  if (geometry_keys != 1) {
    config_error(
        "need exactly one of \"spheres\", \"graded\", \"dilute\"");
  }

  if (j.contains("graded")) {
    const json& g = j.at("graded");
    return make_graded_array(require_int(g, "n", "graded"),
                             require_number(g, "first_radius", "graded"),
                             require_number(g, "growth", "graded"),
                             require_number(g, "spacing", "graded"), material);
  }
  if (j.contains("dilute")) {
    const json& d = j.at("dilute");
    const json& anchors_json = require_key(d, "anchors", "dilute");
    const json& radii_json = require_key(d, "radii", "dilute");
    if (!anchors_json.is_array() || anchors_json.empty()) {
      config_error("key \"dilute.anchors\" must be a nonempty array");
    }
    if (!radii_json.is_array() || radii_json.size() != anchors_json.size()) {
      config_error(
          "key \"dilute.radii\" must be an array matching \"dilute.anchors\"");
    }
    std::vector<Vec3> anchors;
    std::vector<double> radii;
    for (std::size_t i = 0; i < anchors_json.size(); ++i) {
      anchors.push_back(parse_vec3_json(anchors_json[i], "dilute.anchors"));
      if (!radii_json[i].is_number()) {
        config_error("key \"dilute.radii\" entries must be numbers");
      }
      radii.push_back(radii_json[i].get<double>());
    }
    return make_dilute_array(anchors, radii,
                             require_number(d, "epsilon", "dilute"), material);
  }

  const json& spheres_json = j.at("spheres");
  if (!spheres_json.is_array() || spheres_json.empty()) {
    config_error("key \"spheres\" must be a nonempty array");
  }
  std::vector<Sphere> spheres;
  for (const json& s : spheres_json) {
    spheres.push_back({parse_vec3_json(require_key(s, "center", "spheres"),
                                       "spheres.center"),
                       require_number(s, "radius", "spheres")});
  }
  return make_array(std::move(spheres), material);
}

ResonatorArray load_array_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) config_error("cannot open config file \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_array_config(buf.str());
}

void write_spectrum_csv(std::ostream& os, const Spectrum& s,
                        const std::string& manifest) {
  os << manifest << "\n";
  os << "n,lambda,tau,re_omega_rad_s,im_omega_rad_s,re_omega_hz\n";
  for (int i = 0; i < s.size(); ++i) {
    os << i + 1 << "," << format_double(s.lambdas[i]) << ","
       << format_double(s.taus[i]) << ","
       << format_double(s.omegas[i].real()) << ","
       << format_double(s.omegas[i].imag()) << ","
       << format_double(s.omegas[i].real() / (2.0 * std::numbers::pi))
       << "\n";
  }
}

void write_spectrum_json(std::ostream& os, const Spectrum& s,
                         const std::string& manifest) {
  json j;
  j["manifest"] = manifest;
  j["material"] = {{"delta", s.material.delta},
                   {"v", s.material.v},
                   {"v0", s.material.v0}};
  j["labels"] = s.labels;
  j["min_gap"] = s.min_gap;
  json modes = json::array();
  for (int i = 0; i < s.size(); ++i) {
    json mode;
    mode["n"] = i + 1;
    mode["lambda"] = s.lambdas[i];
    mode["tau"] = s.taus[i];
    mode["omega"] = {{"re", s.omegas[i].real()}, {"im", s.omegas[i].imag()}};
    std::vector<double> vec(s.vectors.rows());
    for (Eigen::Index r = 0; r < s.vectors.rows(); ++r) {
      vec[r] = s.vectors(r, i);
    }
    mode["eigenvector"] = vec;
    modes.push_back(std::move(mode));
  }
  j["modes"] = std::move(modes);
  os << j.dump(2) << "\n";
}

std::vector<std::complex<double>> read_spectrum_omegas(std::istream& is) {
  std::vector<std::complex<double>> omegas;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'n') continue;
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() < 5) {
      throw std::invalid_argument(
          "spectrum file: expected at least 5 comma-separated columns");
    }
    omegas.emplace_back(std::stod(fields[3]), std::stod(fields[4]));
  }
  if (omegas.empty()) {
    throw std::invalid_argument("spectrum file: no frequency rows found");
  }
  return omegas;
}

void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m,
                      const std::vector<int>& labels,
                      const std::string& manifest) {
  os << manifest << "\n";
  write_labeled_matrix(os, m, labels);
}

void write_gcm_csv(std::ostream& os, const GeneralizedCapacitanceMatrix& gcm,
                   const std::string& manifest) {
  os << manifest << "\n";
  os << "# section=gcm units=m^-2\n";
  write_labeled_matrix(os, gcm.values, gcm.labels);
  os << "# section=cap units=m\n";
  write_labeled_matrix(os, gcm.cap, gcm.labels);
  os << "# section=vol_scaling units=m^-1.5\n";
  os << "label,value\n";
  for (Eigen::Index i = 0; i < gcm.vol_scaling.size(); ++i) {
    os << gcm.labels[i] << "," << format_double(gcm.vol_scaling[i]) << "\n";
  }
}

void write_gcm_sidecar_json(std::ostream& os,
                            const GeneralizedCapacitanceMatrix& gcm,
                            const std::string& manifest) {
  json j;
  j["manifest"] = manifest;
  j["source"] = gcm.source == GcmSource::bem ? "bem" : "dilute";
  if (gcm.source == GcmSource::bem) {
    j["refinement"] = gcm.refinement;
    j["bem_asymmetry"] = gcm.bem_asymmetry;
  } else {
    j["epsilon"] = gcm.epsilon;
  }
  j["labels"] = gcm.labels;
  os << j.dump(2) << "\n";
}

void write_monte_carlo_csv(std::ostream& os, const MonteCarloTable& table,
                           const std::string& manifest) {
  const char* kind = table.kind == PerturbationKind::size       ? "size"
                     : table.kind == PerturbationKind::position ? "position"
                                                                : "removal";
  os << manifest << "\n";
  os << "# kind=" << kind << " trials=" << table.trials
     << " seed=" << table.seed << " discarded=" << table.discarded
     << " skipped_gap=" << table.skipped_gap << "\n";
  os << "sigma,n,mean_shift,std_shift,wh_pass_rate,vec_err_mean,vec_err_max\n";
  for (const MonteCarloRow& row : table.rows) {
    os << format_double(row.sigma) << "," << row.n << ","
       << format_double(row.mean_shift) << "," << format_double(row.std_shift)
       << "," << format_double(row.wh_pass_rate) << ","
       << format_double(row.vec_err_mean) << ","
       << format_double(row.vec_err_max) << "\n";
  }
}

void write_interlacing_csv(std::ostream& os, const InterlacingReport& report,
                           const std::string& manifest) {
  os << manifest << "\n";
  os << "# removed=";
  for (std::size_t i = 0; i < report.removed.size(); ++i) {
    if (i > 0) os << ";";
    os << report.removed[i];
  }
  os << " interlaced=" << (report.interlaced ? 1 : 0)
     << " violations=" << report.violations.size() << "\n";
  os << "# section=full\n";
  os << "j,lambda,re_omega_rad_s\n";
  for (Eigen::Index j = 0; j < report.lambda_full.size(); ++j) {
    os << j + 1 << "," << format_double(report.lambda_full[j]) << ","
       << format_double(report.omega_real_full[j]) << "\n";
  }
  os << "# section=reduced\n";
  os << "j,lambda,re_omega_rad_s,label\n";
  for (Eigen::Index j = 0; j < report.lambda_reduced.size(); ++j) {
    os << j + 1 << "," << format_double(report.lambda_reduced[j]) << ","
       << format_double(report.omega_real_reduced[j]) << ","
       << report.surviving_labels[j] << "\n";
  }
  if (!report.violations.empty()) {
    os << "# section=violations\n";
    os << "step,j,lower,mu,upper\n";
    for (const InterlacingViolation& v : report.violations) {
      os << v.step << "," << v.j + 1 << "," << format_double(v.lower) << ","
         << format_double(v.mu) << "," << format_double(v.upper) << "\n";
    }
  }
}

void write_gershgorin_csv(std::ostream& os, const GershgorinReport& report,
                          const std::string& manifest) {
  os << manifest << "\n";
  os << "# n=" << report.eigenvalues.size()
     << " epsilon=" << format_double(report.epsilon)
     << " bound=" << format_double(report.bound)
     << " admissibility=" << format_double(report.admissibility)
     << " all_inside=" << (report.all_inside ? 1 : 0) << "\n";
  os << "j,eigenvalue\n";
  for (Eigen::Index j = 0; j < report.eigenvalues.size(); ++j) {
    os << j + 1 << "," << format_double(report.eigenvalues[j]) << "\n";
  }
}

Signal read_signal_csv(std::istream& is) {
  Signal signal;
  std::string line;
  bool have_rate = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!have_rate) {
      const std::string prefix = "sample_rate_hz=";
      if (line.rfind(prefix, 0) != 0) {
        throw std::invalid_argument(
            "signal file: first line must be sample_rate_hz=<value>");
      }
      signal.sample_rate = std::stod(line.substr(prefix.size()));
      if (!(signal.sample_rate > 0.0)) {
        throw std::invalid_argument("signal file: sample rate must be > 0");
      }
      have_rate = true;
      continue;
    }
    const double v = std::stod(line);
    if (!std::isfinite(v)) {
      throw std::invalid_argument("signal file: non-finite sample");
    }
    signal.samples.push_back(v);
  }
  if (!have_rate) {
    throw std::invalid_argument("signal file: missing sample_rate_hz line");
  }
  if (signal.samples.empty()) {
    throw std::invalid_argument("signal file: no samples");
  }
  return signal;
}

void write_signal_csv(std::ostream& os, const Signal& s) {
  os << "sample_rate_hz=" << format_double(s.sample_rate) << "\n";
  for (double v : s.samples) os << format_double(v) << "\n";
}

void write_channels_csv(std::ostream& os,
                        const std::vector<std::vector<double>>& channels,
                        double sample_rate, const std::string& manifest) {
  os << manifest << "\n";
  os << "time_s";
  for (std::size_t c = 0; c < channels.size(); ++c) os << ",ch" << c + 1;
  os << "\n";
  std::size_t rows = 0;
  for (const auto& ch : channels) rows = std::max(rows, ch.size());
  for (std::size_t r = 0; r < rows; ++r) {
    os << format_double(static_cast<double>(r) / sample_rate);
    for (const auto& ch : channels) {
      // Channels can be shorter when their kernels are shorter; the
      // convolution is identically zero past its end.
      os << "," << format_double(r < ch.size() ? ch[r] : 0.0);
    }
    os << "\n";
  }
}

void write_responses_csv(std::ostream& os,
                         const std::vector<FrequencyResponse>& responses,
                         const std::string& manifest) {
  if (responses.empty()) {
    throw std::invalid_argument("responses: nothing to write");
  }
  for (const FrequencyResponse& r : responses) {
    if (r.freq_hz.size() != responses.front().freq_hz.size()) {
      throw std::invalid_argument(
          "responses: all responses must share one frequency grid");
    }
  }
  os << manifest << "\n";
  os << "freq_hz";
  for (std::size_t c = 0; c < responses.size(); ++c) os << ",mag_ch" << c + 1;
  os << "\n";
  for (std::size_t k = 0; k < responses.front().freq_hz.size(); ++k) {
    os << format_double(responses.front().freq_hz[k]);
    for (const FrequencyResponse& r : responses) {
      os << "," << format_double(r.magnitude[k]);
    }
    os << "\n";
  }
}

void write_bands_csv(std::ostream& os,
                     const std::vector<FrequencyResponse>& responses,
                     const std::string& manifest) {
  os << manifest << "\n";
  os << "n,peak_hz,half_power_lo_hz,half_power_hi_hz\n";
  for (std::size_t c = 0; c < responses.size(); ++c) {
    const HalfPowerBand band = half_power_band(responses[c]);
    os << c + 1 << "," << format_double(responses[c].peak_hz) << ","
       << format_double(band.lo_hz) << "," << format_double(band.hi_hz)
       << "\n";
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::invalid_argument("cannot open output file \"" + path + "\"");
  }
  out << content;
  if (!out) {
    throw std::invalid_argument("write failed for output file \"" + path +
                                "\"");
  }
}

}  // namespace subwave
