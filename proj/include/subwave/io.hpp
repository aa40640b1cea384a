// Copyright (c) the subwave authors.
// SPDX-License-Identifier: Apache-2.0
//
// Config parsing and CSV/JSON serialization. All writers are deterministic:
// fixed %.17g formatting, no timestamps, manifest line first.

#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "subwave/capacitance.hpp"
#include "subwave/filterbank.hpp"
#include "subwave/geometry.hpp"
#include "subwave/robustness.hpp"
#include "subwave/spectral.hpp"

namespace subwave {

inline constexpr const char* kToolVersion = "0.1.0";

std::uint64_t fnv1a64(const std::string& bytes);

// "# subwave <version> cmd=<command> config_hash=0x<16 hex digits>"
std::string manifest_line(const std::string& command,
                          const std::string& canonical_config);

// Shortest round-trip decimal formatting (%.17g).
std::string format_double(double x);

// Array config: {"material": {...}} plus exactly one of "spheres",
// "graded", "dilute". Error messages name the offending key.
ResonatorArray parse_array_config(const std::string& json_text);
ResonatorArray load_array_config(const std::string& path);

void write_spectrum_csv(std::ostream& os, const Spectrum& s,
                        const std::string& manifest);
void write_spectrum_json(std::ostream& os, const Spectrum& s,
                         const std::string& manifest);

// Reads (n, lambda, tau, re_omega_rad_s, im_omega_rad_s, re_omega_hz) rows.
std::vector<std::complex<double>> read_spectrum_omegas(std::istream& is);

void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m,
                      const std::vector<int>& labels,
                      const std::string& manifest);

// C, V, and VCV with a JSON sidecar describing the source.
void write_gcm_csv(std::ostream& os, const GeneralizedCapacitanceMatrix& gcm,
                   const std::string& manifest);
void write_gcm_sidecar_json(std::ostream& os,
                            const GeneralizedCapacitanceMatrix& gcm,
                            const std::string& manifest);

void write_monte_carlo_csv(std::ostream& os, const MonteCarloTable& table,
                           const std::string& manifest);
void write_interlacing_csv(std::ostream& os, const InterlacingReport& report,
                           const std::string& manifest);
void write_gershgorin_csv(std::ostream& os, const GershgorinReport& report,
                          const std::string& manifest);

// Signal files: first line "sample_rate_hz=<value>", one sample per line.
Signal read_signal_csv(std::istream& is);
void write_signal_csv(std::ostream& os, const Signal& s);

void write_channels_csv(std::ostream& os,
                        const std::vector<std::vector<double>>& channels,
                        double sample_rate, const std::string& manifest);
void write_responses_csv(std::ostream& os,
                         const std::vector<FrequencyResponse>& responses,
                         const std::string& manifest);
void write_bands_csv(std::ostream& os,
                     const std::vector<FrequencyResponse>& responses,
                     const std::string& manifest);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace subwave
