#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "icslab/icspp.hpp"
#include "icslab/model.hpp"

namespace icslab {

/// Settings shared by every experiment subcommand. Defaults reproduce the
/// balanced two-group scenario: n = 500, q = 1/2, alpha = 3.
struct ExperimentConfig {
    int n = 500;
    double q = 0.5;
    double alpha = 3.0;
    std::uint64_t seed = 1;
    std::vector<MethodSpec> methods;  ///< sweep methods, in output order
    int grid_size = 721;
    int trials = 500;
    std::filesystem::path outdir = ".";

    /// Throws InvalidArgument on n < 10, grid_size < 3, trials < 1, empty
    /// methods or invalid mixture parameters.
    void validate() const;
};

/// The five estimator pairs of the sweep: var:t2, var:mcd, var:mve, t2:mcd, t2:mve.
std::vector<std::pair<Estimator, Estimator>> sweep_pairs();

/// Every pair x {free, mean} x {ICS, PP}, in that nesting order.
std::vector<MethodSpec> default_sweep_methods();

/// The experiment dataset: sample_mixture in total coordinates with the
/// config seed, then standardize_data (mean 0, covariance I).
DataMatrix experiment_data(const ExperimentConfig& config);

/// Seed used for the scatters of one ICS method: derive_seed(seed, name)
/// fed to scatter_seeds().
std::uint64_t method_seed(std::uint64_t seed, const MethodSpec& spec);

/// Writes popcurves_theta.csv and popcurves_phi.csv (angle in radians,
/// kappa_ics, kappa_pp). Values are raw: at alpha = 0 kappa_ics = p + 2 = 4.
std::vector<std::filesystem::path> run_popcurves(const ExperimentConfig& config);

struct SweepReport {
    std::filesystem::path curves;  ///< sweep.csv
    std::filesystem::path seeds;   ///< sweep_seeds.csv
    int failures = 0;              ///< rows written with an empty kappa
};

/// Writes sweep.csv with columns method,location_policy,mode,phi_deg,kappa,note.
/// A failing estimator leaves kappa empty and puts the error in note.
SweepReport run_sweep(const ExperimentConfig& config);

/// For each angle (degrees) and policy writes histproj_<angle>_<policy>.csv:
/// one row per observation (projected value, half-sample flag) followed by a
/// summary row with the truncated variance and its location.
std::vector<std::filesystem::path> run_histproj(const ExperimentConfig& config,
                                                const std::vector<double>& angles_deg);

/// Writes ellipse_free.csv and ellipse_mean.csv: 360 boundary points of the
/// mcd ellipse scaled to cover exactly h observations, then the data with
/// support flags.
std::vector<std::filesystem::path> run_ellipse(const ExperimentConfig& config);

}  // namespace icslab
