// Copyright (c) the subwave authors.
// SPDX-License-Identifier: Apache-2.0

#include "subwave/cli.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "subwave/bem.hpp"
#include "subwave/capacitance.hpp"
#include "subwave/errors.hpp"
#include "subwave/filterbank.hpp"
#include "subwave/geometry.hpp"
#include "subwave/io.hpp"
#include "subwave/robustness.hpp"
#include "subwave/spectral.hpp"

namespace subwave {
namespace {

using nlohmann::json;

std::string slurp(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument(std::string(what) + ": cannot open file \"" +
                                path + "\"");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string hash_hex(const std::string& bytes) {
  char hex[19];
  std::snprintf(hex, sizeof hex, "0x%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return hex;
}

Vec3 parse_vec3_flag(const std::string& text, const char* flag) {
  std::istringstream in(text);
  std::string field;
  std::vector<double> parts;
  while (std::getline(in, field, ',')) {
    try {
      parts.push_back(std::stod(field));
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(flag) +
                                  ": expected x,y,z numbers, got \"" + text +
                                  "\"");
    }
  }
  if (parts.size() != 3) {
    throw std::invalid_argument(std::string(flag) +
                                ": expected exactly three components");
  }
  return Vec3(parts[0], parts[1], parts[2]);
}

std::vector<int> parse_index_list(const std::string& text) {
  std::istringstream in(text);
  std::string field;
  std::vector<int> indices;
  while (std::getline(in, field, ',')) {
    try {
      std::size_t pos = 0;
      const int v = std::stoi(field, &pos);
      if (pos != field.size()) throw std::invalid_argument(field);
      indices.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("--indices: expected comma-separated "
                                  "integers, got \"" +
                                  text + "\"");
    }
  }
  if (indices.empty()) {
    throw std::invalid_argument("--indices: empty list");
  }
  return indices;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_text_file(out_path, content);
  }
}

GeneralizedCapacitanceMatrix build_gcm(const ResonatorArray& array,
                                       const std::string& method,
                                       int refine) {
  if (method == "dilute") return dilute_gcm(array);
  return gcm_from_bem(array, refine);
}

struct ArrayOpts {
  std::string config;
  std::string method = "bem";
  int refine = 3;
};

void add_array_flags(CLI::App* sub, ArrayOpts& o, bool with_method = true) {
  sub->add_option("--config", o.config, "array/material config JSON file")
      ->required();
  if (with_method) {
    sub->add_option("--method", o.method,
                    "capacitance source: boundary integral or dilute "
                    "closed form")
        ->check(CLI::IsMember({"bem", "dilute"}))
        ->capture_default_str();
  }
  sub->add_option("--refine", o.refine,
                  "icosphere refinement level (20*4^k triangles per sphere)")
      ->check(CLI::Range(0, 6))
      ->capture_default_str();
}

struct SpectrumOpts {
  ArrayOpts array;
  std::string out, json_out;
};

int cmd_spectrum(const SpectrumOpts& o) {
  const std::string text = slurp(o.array.config, "config");
  const ResonatorArray array = parse_array_config(text);
  const GeneralizedCapacitanceMatrix gcm =
      build_gcm(array, o.array.method, o.array.refine);
  const Spectrum spectrum = compute_spectrum(gcm, array.material);

  json canonical;
  canonical["command"] = "spectrum";
  canonical["config"] = json::parse(text);
  canonical["flags"] = {{"method", o.array.method},
                        {"refine", o.array.refine}};
  const std::string manifest = manifest_line("spectrum", canonical.dump());

  std::ostringstream csv;
  write_spectrum_csv(csv, spectrum, manifest);
  emit(o.out, csv.str());
  if (!o.json_out.empty()) {
    std::ostringstream js;
    write_spectrum_json(js, spectrum, manifest);
    write_text_file(o.json_out, js.str());
  }
  return 0;
}

struct CapOpts {
  ArrayOpts array;
  std::string out, json_out;
};

int cmd_cap(const CapOpts& o) {
  const std::string text = slurp(o.array.config, "config");
  const ResonatorArray array = parse_array_config(text);
  const GeneralizedCapacitanceMatrix gcm =
      build_gcm(array, o.array.method, o.array.refine);

  json canonical;
  canonical["command"] = "cap";
  canonical["config"] = json::parse(text);
  canonical["flags"] = {{"method", o.array.method},
                        {"refine", o.array.refine}};
  const std::string manifest = manifest_line("cap", canonical.dump());

  std::ostringstream csv;
  write_gcm_csv(csv, gcm, manifest);
  emit(o.out, csv.str());

  std::string sidecar = o.json_out;
  if (sidecar.empty() && !o.out.empty()) sidecar = o.out + ".json";
  if (!sidecar.empty()) {
    std::ostringstream js;
    write_gcm_sidecar_json(js, gcm, manifest);
    write_text_file(sidecar, js.str());
  }
  return 0;
}

struct PerturbOpts {
  std::string config;
  std::string mode = "size";
  std::vector<double> sigmas;
  int trials = 100;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_perturb(const PerturbOpts& o) {
  const std::string text = slurp(o.config, "config");
  const ResonatorArray array = parse_array_config(text);
  PerturbationKind kind;
  if (o.mode == "size") {
    kind = PerturbationKind::size;
  } else if (o.mode == "position") {
    kind = PerturbationKind::position;
  } else if (o.mode == "removal") {
    kind = PerturbationKind::removal;
  } else {
    throw std::invalid_argument("--mode must be size, position, or removal");
  }
  const std::vector<double> sigmas =
      o.sigmas.empty() ? std::vector<double>{0.01} : o.sigmas;

  const MonteCarloTable table =
      monte_carlo_robustness(array, kind, sigmas, o.trials, o.seed);

  json canonical;
  canonical["command"] = "perturb";
  canonical["config"] = json::parse(text);
  canonical["flags"] = {{"mode", o.mode},
                        {"sigma", sigmas},
                        {"trials", o.trials},
                        {"seed", o.seed}};
  const std::string manifest = manifest_line("perturb", canonical.dump());

  std::ostringstream csv;
  write_monte_carlo_csv(csv, table, manifest);
  emit(o.out, csv.str());
  return 0;
}

struct RemoveOpts {
  ArrayOpts array;
  std::string indices;
  std::string out;
};

int cmd_remove(const RemoveOpts& o) {
  const std::string text = slurp(o.array.config, "config");
  const ResonatorArray array = parse_array_config(text);
  const std::vector<int> removed = parse_index_list(o.indices);
  const GeneralizedCapacitanceMatrix gcm =
      build_gcm(array, o.array.method, o.array.refine);
  const InterlacingReport report =
      removal_analysis(gcm, removed, array.material);

  json canonical;
  canonical["command"] = "remove";
  canonical["config"] = json::parse(text);
  canonical["flags"] = {{"method", o.array.method},
                        {"refine", o.array.refine},
                        {"indices", removed}};
  const std::string manifest = manifest_line("remove", canonical.dump());

  std::ostringstream csv;
  write_interlacing_csv(csv, report, manifest);

  if (o.array.method == "bem") {
    // Principal submatrices approximate the reduced array but ignore the
    // field rearrangement around the gap; recompute the reduced geometry to
    // quantify that.
    std::vector<int> labels_to_remove;
    for (int pos : report.removed) {
      labels_to_remove.push_back(gcm.labels[pos - 1]);
    }
    PerturbationSpec spec;
    spec.kind = PerturbationKind::removal;
    spec.removed = labels_to_remove;
    const ResonatorArray reduced_array = apply_perturbation(array, spec);
    const GeneralizedCapacitanceMatrix reduced_gcm =
        gcm_from_bem(reduced_array, o.array.refine);
    const Spectrum reduced_spec =
        compute_spectrum(reduced_gcm, array.material);
    csv << "# section=reduced_recomputed refinement=" << o.array.refine
        << "\n";
    csv << "j,lambda,re_omega_rad_s,label,lambda_minus_submatrix\n";
    for (int j = 0; j < reduced_spec.size(); ++j) {
      csv << j + 1 << "," << format_double(reduced_spec.lambdas[j]) << ","
          << format_double(reduced_spec.omegas[j].real()) << ","
          << reduced_spec.labels[j] << ","
          << format_double(reduced_spec.lambdas[j] - report.lambda_reduced[j])
          << "\n";
    }
  }
  emit(o.out, csv.str());
  return 0;
}

struct ScaleOpts {
  double radius = 1.0;
  double c = 0.5;
  std::vector<int> ns = {10, 50, 100};
  double spacing = 1.0;
  std::string out;
};

std::vector<Vec3> line_anchors(int n, double spacing) {
  std::vector<Vec3> anchors;
  for (int j = 0; j < n; ++j) {
    anchors.emplace_back(spacing * static_cast<double>(j), 0.0, 0.0);
  }
  return anchors;
}

int cmd_scale(const ScaleOpts& o) {
  json canonical;
  canonical["command"] = "scale";
  canonical["flags"] = {{"radius", o.radius},
                        {"c", o.c},
                        {"n", o.ns},
                        {"spacing", o.spacing}};
  const std::string manifest = manifest_line("scale", canonical.dump());

  if (o.ns.size() == 1) {
    const GershgorinReport report = gershgorin_large_array_check(
        o.radius, line_anchors(o.ns[0], o.spacing), o.c, o.ns[0]);
    std::ostringstream csv;
    write_gershgorin_csv(csv, report, manifest);
    emit(o.out, csv.str());
    return 0;
  }

  std::ostringstream csv;
  csv << manifest << "\n";
  csv << "n,epsilon,bound,admissibility,lambda_min,lambda_max,all_inside\n";
  for (int n : o.ns) {
    const GershgorinReport report = gershgorin_large_array_check(
        o.radius, line_anchors(n, o.spacing), o.c, n);
    csv << n << "," << format_double(report.epsilon) << ","
        << format_double(report.bound) << ","
        << format_double(report.admissibility) << ","
        << format_double(report.eigenvalues[0]) << ","
        << format_double(report.eigenvalues[report.eigenvalues.size() - 1])
        << "," << (report.all_inside ? 1 : 0) << "\n";
  }
  emit(o.out, csv.str());
  return 0;
}

struct FilterOpts {
  std::string spectrum_path;
  std::string signal_path;
  int impulse = 0;
  double sample_rate = 0.0;
  double trunc_tol = 1e-6;
  bool normalize = false;
  std::string out, responses_out, bands_out;
};

int cmd_filter(const FilterOpts& o) {
  const std::string spectrum_text = slurp(o.spectrum_path, "--spectrum");
  std::istringstream spectrum_in(spectrum_text);
  const std::vector<std::complex<double>> omegas =
      read_spectrum_omegas(spectrum_in);

  Signal signal;
  std::string signal_hash = "none";
  if (!o.signal_path.empty()) {
    const std::string signal_text = slurp(o.signal_path, "--signal");
    std::istringstream signal_in(signal_text);
    signal = read_signal_csv(signal_in);
    signal_hash = hash_hex(signal_text);
    // Flags win over file headers.
    if (o.sample_rate > 0.0) signal.sample_rate = o.sample_rate;
  } else if (o.impulse > 0) {
    if (!(o.sample_rate > 0.0)) {
      throw std::invalid_argument(
          "--impulse needs --sample-rate to define the time grid");
    }
    signal.samples.assign(static_cast<std::size_t>(o.impulse), 0.0);
    signal.samples[0] = 1.0;
    signal.sample_rate = o.sample_rate;
  } else {
    throw std::invalid_argument("need --signal FILE or --impulse N");
  }

  const KernelNorm norm =
      o.normalize ? KernelNorm::unit_l2 : KernelNorm::unit_amplitude;
  std::vector<Kernel> kernels;
  std::size_t max_len = 0;
  for (std::complex<double> w : omegas) {
    kernels.push_back(make_kernel(w, signal.sample_rate, o.trunc_tol, norm));
    max_len = std::max(max_len, kernels.back().samples.size());
  }

  json canonical;
  canonical["command"] = "filter";
  canonical["flags"] = {{"spectrum_hash", hash_hex(spectrum_text)},
                        {"signal_hash", signal_hash},
                        {"impulse", o.impulse},
                        {"sample_rate", signal.sample_rate},
                        {"trunc_tol", o.trunc_tol},
                        {"normalize", o.normalize}};
  const std::string manifest = manifest_line("filter", canonical.dump());

  const std::vector<std::vector<double>> channels =
      apply_transform(signal, kernels);
  std::ostringstream csv;
  write_channels_csv(csv, channels, signal.sample_rate, manifest);
  emit(o.out, csv.str());

  if (!o.responses_out.empty() || !o.bands_out.empty()) {
    std::size_t nfft = 1;
    while (nfft < 4 * max_len) nfft <<= 1;
    std::vector<FrequencyResponse> responses;
    for (const Kernel& k : kernels) {
      responses.push_back(frequency_response(k, nfft));
    }
    if (!o.responses_out.empty()) {
      std::ostringstream rs;
      write_responses_csv(rs, responses, manifest);
      write_text_file(o.responses_out, rs.str());
    }
    if (!o.bands_out.empty()) {
      std::ostringstream bs;
      write_bands_csv(bs, responses, manifest);
      write_text_file(o.bands_out, bs.str());
    }
  }
  return 0;
}

struct ModeFieldOpts {
  std::string config;
  int refine = 3;
  int index = 1;
  std::string origin = "0,0,0";
  std::string dir = "1,0,0";
  double tmin = 0.0;
  double tmax = 1.0;
  int count = 50;
  std::string out;
};

int cmd_mode_field(const ModeFieldOpts& o) {
  const std::string text = slurp(o.config, "config");
  const ResonatorArray array = parse_array_config(text);
  if (o.count < 1) throw std::invalid_argument("--count must be >= 1");
  const Vec3 origin = parse_vec3_flag(o.origin, "--origin");
  Vec3 dir = parse_vec3_flag(o.dir, "--dir");
  if (dir.norm() == 0.0) {
    throw std::invalid_argument("--dir must be nonzero");
  }
  dir.normalize();

  const BemSolution solution = solve_bem(array, o.refine);
  const GeneralizedCapacitanceMatrix gcm = gcm_from_capacitance(
      solution.C, array, GcmSource::bem, o.refine, solution.asymmetry);
  const Spectrum spectrum = compute_spectrum(gcm, array.material);
  const Eigen::VectorXd weights = mode_weights(spectrum, o.index);

  json canonical;
  canonical["command"] = "mode-field";
  canonical["config"] = json::parse(text);
  canonical["flags"] = {{"refine", o.refine}, {"index", o.index},
                        {"origin", o.origin}, {"dir", o.dir},
                        {"tmin", o.tmin},     {"tmax", o.tmax},
                        {"count", o.count}};
  const std::string manifest = manifest_line("mode-field", canonical.dump());

  std::ostringstream csv;
  csv << manifest << "\n";
  csv << "# mode=" << o.index << " re_omega_rad_s="
      << format_double(spectrum.omegas[o.index - 1].real())
      << " im_omega_rad_s="
      << format_double(spectrum.omegas[o.index - 1].imag()) << "\n";
  csv << "t,x,y,z,u,near_surface\n";
  for (int i = 0; i < o.count; ++i) {
    const double t =
        o.count == 1
            ? o.tmin
            : o.tmin + (o.tmax - o.tmin) * static_cast<double>(i) /
                           static_cast<double>(o.count - 1);
    const Vec3 p = origin + t * dir;
    const PotentialSample sample =
        evaluate_potential(solution.densities, weights, p);
    csv << format_double(t) << "," << format_double(p.x()) << ","
        << format_double(p.y()) << "," << format_double(p.z()) << ","
        << format_double(sample.value) << "," << (sample.near_surface ? 1 : 0)
        << "\n";
  }
  emit(o.out, csv.str());
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{
      "subwave: subwavelength resonator arrays, their capacitance matrices, "
      "resonant spectra, robustness reports, and filter-bank transforms"};
  app.require_subcommand(1);

  SpectrumOpts spectrum_opts;
  CLI::App* spectrum_cmd = app.add_subcommand(
      "spectrum", "compute resonant frequencies and modes");
  add_array_flags(spectrum_cmd, spectrum_opts.array);
  spectrum_cmd->add_option("--out", spectrum_opts.out,
                           "output CSV path (default stdout)");
  spectrum_cmd->add_option("--json", spectrum_opts.json_out,
                           "also write a JSON spectrum with eigenvectors");

  CapOpts cap_opts;
  CLI::App* cap_cmd = app.add_subcommand(
      "cap", "compute the generalized capacitance matrix");
  add_array_flags(cap_cmd, cap_opts.array);
  cap_cmd->add_option("--out", cap_opts.out,
                      "output CSV path (default stdout)");
  cap_cmd->add_option("--json", cap_opts.json_out,
                      "sidecar JSON path (default <out>.json)");

  PerturbOpts perturb_opts;
  CLI::App* perturb_cmd = app.add_subcommand(
      "perturb", "Monte Carlo robustness sweep on a dilute array");
  perturb_cmd->add_option("--config", perturb_opts.config,
                          "array/material config JSON file")
      ->required();
  perturb_cmd->add_option("--mode", perturb_opts.mode,
                          "perturbation kind: size, position, or removal")
      ->check(CLI::IsMember({"size", "position", "removal"}))
      ->capture_default_str();
  perturb_cmd->add_option("--sigma", perturb_opts.sigmas,
                          "perturbation scale, repeatable (default 0.01)");
  perturb_cmd->add_option("--trials", perturb_opts.trials,
                          "Monte Carlo trials per sigma")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  perturb_cmd->add_option("--seed", perturb_opts.seed, "base RNG seed")
      ->capture_default_str();
  perturb_cmd->add_option("--out", perturb_opts.out,
                          "output CSV path (default stdout)");

  RemoveOpts remove_opts;
  CLI::App* remove_cmd = app.add_subcommand(
      "remove", "eigenvalue interlacing report for removed resonators");
  add_array_flags(remove_cmd, remove_opts.array);
  remove_cmd->add_option("--indices", remove_opts.indices,
                         "comma-separated 1-based resonator indices")
      ->required();
  remove_cmd->add_option("--out", remove_opts.out,
                         "output CSV path (default stdout)");

  ScaleOpts scale_opts;
  CLI::App* scale_cmd = app.add_subcommand(
      "scale", "Gershgorin eigenvalue bounds for growing arrays at "
               "epsilon = c/N");
  scale_cmd->add_option("--radius", scale_opts.radius, "resonator radius")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  scale_cmd->add_option("--c", scale_opts.c, "dilution constant, epsilon=c/N")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  scale_cmd->add_option("--n", scale_opts.ns,
                        "array sizes, repeatable (default 10 50 100)");
  scale_cmd->add_option("--spacing", scale_opts.spacing,
                        "anchor spacing along the line")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  scale_cmd->add_option("--out", scale_opts.out,
                        "output CSV path (default stdout)");

  FilterOpts filter_opts;
  CLI::App* filter_cmd = app.add_subcommand(
      "filter", "apply the filter-bank transform induced by a spectrum");
  filter_cmd->add_option("--spectrum", filter_opts.spectrum_path,
                         "spectrum CSV from the spectrum command")
      ->required();
  filter_cmd->add_option("--signal", filter_opts.signal_path,
                         "input signal CSV (sample_rate_hz=... header)");
  filter_cmd->add_option("--impulse", filter_opts.impulse,
                         "use a unit impulse of N samples instead of --signal");
  filter_cmd->add_option("--sample-rate", filter_opts.sample_rate,
                         "sample rate in Hz (required with --impulse, "
                         "overrides the signal header)");
  filter_cmd->add_option("--trunc-tol", filter_opts.trunc_tol,
                         "kernel envelope truncation tolerance")
      ->capture_default_str();
  filter_cmd->add_flag("--normalize", filter_opts.normalize,
                       "unit discrete L2 kernel normalization");
  filter_cmd->add_option("--out", filter_opts.out,
                         "channel output CSV path (default stdout)");
  filter_cmd->add_option("--responses", filter_opts.responses_out,
                         "frequency response CSV path");
  filter_cmd->add_option("--bands", filter_opts.bands_out,
                         "peak/half-power band CSV path");

  ModeFieldOpts mode_field_opts;
  CLI::App* mode_field_cmd = app.add_subcommand(
      "mode-field", "sample a resonant mode's potential along a ray");
  mode_field_cmd->add_option("--config", mode_field_opts.config,
                             "array/material config JSON file")
      ->required();
  mode_field_cmd->add_option("--refine", mode_field_opts.refine,
                             "icosphere refinement level")
      ->check(CLI::Range(0, 6))
      ->capture_default_str();
  mode_field_cmd->add_option("--index", mode_field_opts.index,
                             "1-based mode index")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  mode_field_cmd->add_option("--origin", mode_field_opts.origin,
                             "ray origin x,y,z")
      ->capture_default_str();
  mode_field_cmd->add_option("--dir", mode_field_opts.dir,
                             "ray direction x,y,z")
      ->capture_default_str();
  mode_field_cmd->add_option("--tmin", mode_field_opts.tmin,
                             "ray parameter start")
      ->capture_default_str();
  mode_field_cmd->add_option("--tmax", mode_field_opts.tmax,
                             "ray parameter end")
      ->capture_default_str();
  mode_field_cmd->add_option("--count", mode_field_opts.count,
                             "number of sample points")
      ->capture_default_str();
  mode_field_cmd->add_option("--out", mode_field_opts.out,
                             "output CSV path (default stdout)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("subwave");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (app.got_subcommand(spectrum_cmd)) return cmd_spectrum(spectrum_opts);
    if (app.got_subcommand(cap_cmd)) return cmd_cap(cap_opts);
    if (app.got_subcommand(perturb_cmd)) return cmd_perturb(perturb_opts);
    if (app.got_subcommand(remove_cmd)) return cmd_remove(remove_opts);
    if (app.got_subcommand(scale_cmd)) return cmd_scale(scale_opts);
    if (app.got_subcommand(filter_cmd)) return cmd_filter(filter_opts);
    if (app.got_subcommand(mode_field_cmd)) {
      return cmd_mode_field(mode_field_opts);
    }
    return 2;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace subwave
