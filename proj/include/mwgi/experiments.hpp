// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>

#include "mwgi/config.hpp"

namespace mwgi {

// Autocorrelation of the boresight illuminating field sampled at the GI
// detection rate and at the Nyquist-style comparison rate; emits one CSV
// per rate plus summary.txt with the mean off-peak magnitudes.
void run_sampling_experiment(const ExperimentConfig& cfg,
                             const std::filesystem::path& out_dir,
                             bool dump_sequences = false);

// Spatial correlation map, cross-section profile and FWHM for each
// configured array side; emits per-side CSV/PGM plus a width-vs-side table.
void run_spatial_experiment(const ExperimentConfig& cfg,
                            const std::filesystem::path& out_dir);

// Builds the measurement set, reconstructs noiseless and at each configured
// SNR (one seed), writes truth/estimate images, per-run MSE and an
// MSE-vs-SNR CSV. Falls back to least squares when direct inversion is
// ill-conditioned.
void run_reconstruction_experiment(const ExperimentConfig& cfg,
                                   const std::filesystem::path& out_dir);

// MSE averaged over all configured noise seeds per SNR level.
void run_mse_sweep(const ExperimentConfig& cfg,
                   const std::filesystem::path& out_dir);

// Coherence time, wavelength and coherence-size bounds for the configured
// carrier and geometry.
void run_coherence_report(const ExperimentConfig& cfg,
                          const std::filesystem::path& out_dir);

} // namespace mwgi
