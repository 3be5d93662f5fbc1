#include "icslab/experiments.hpp"

#include <cmath>
#include <numbers>
#include <span>
#include <string>

#include "icslab/csv.hpp"
#include "icslab/error.hpp"
#include "icslab/population.hpp"
#include "icslab/rng.hpp"
#include "icslab/spread1d.hpp"

namespace icslab {

namespace fs = std::filesystem;

namespace {

constexpr int kEllipsePoints = 360;

fs::path prepare_outdir(const fs::path& outdir) {
    std::error_code ec;
    fs::create_directories(outdir, ec);
    if (ec || !fs::is_directory(outdir))
        throw IoError("cannot create output directory '" + outdir.string() + "'");
    return outdir;
}

double to_degrees(double radians) { return radians * 180.0 / std::numbers::pi; }

Eigen::Vector2d direction_deg(double degrees) {
    const double r = degrees * std::numbers::pi / 180.0;
    return {std::cos(r), std::sin(r)};
}

void write_population_curve(const PopulationCurve& curve, const fs::path& file) {
    CsvTable table({"angle", "kappa_ics", "kappa_pp"});
    for (std::size_t k = 0; k < curve.angles.size(); ++k)
        table.add_row({format_number(curve.angles[k]), format_number(curve.kappa_ics[k]),
                       format_number(curve.kappa_pp[k])});
    table.write(file);
}

}  // namespace

void ExperimentConfig::validate() const {
    if (n < 10) throw InvalidArgument("n must be >= 10");
    if (grid_size < 3) throw InvalidArgument("grid must be >= 3");
    if (trials < 1) throw InvalidArgument("trials must be >= 1");
    if (methods.empty()) throw InvalidArgument("methods must not be empty");
    MixtureParams(2, q, alpha);
}

std::vector<std::pair<Estimator, Estimator>> sweep_pairs() {
    return {{Estimator::var, Estimator::t2},
            {Estimator::var, Estimator::mcd},
            {Estimator::var, Estimator::mve},
            {Estimator::t2, Estimator::mcd},
            {Estimator::t2, Estimator::mve}};
}

std::vector<MethodSpec> default_sweep_methods() {
    std::vector<MethodSpec> out;
    for (const auto& [s1, s2] : sweep_pairs())
        for (LocationPolicy policy : {LocationPolicy::free, LocationPolicy::common_mean})
            for (Mode mode : {Mode::ics, Mode::pp}) out.push_back({s1, s2, policy, mode});
    return out;
}

DataMatrix experiment_data(const ExperimentConfig& config) {
    const MixtureParams params(2, config.q, config.alpha);
    return standardize_data(sample_mixture(params, config.n, config.seed, Coords::total)).data;
}

std::uint64_t method_seed(std::uint64_t seed, const MethodSpec& spec) {
    return derive_seed(seed, spec.name());
}

std::vector<fs::path> run_popcurves(const ExperimentConfig& config) {
    config.validate();
    const fs::path dir = prepare_outdir(config.outdir);
    const std::vector<fs::path> files{dir / "popcurves_theta.csv", dir / "popcurves_phi.csv"};
    write_population_curve(pop_curves(config.alpha, config.q, config.grid_size, AngleCoords::theta), files[0]);
    write_population_curve(pop_curves(config.alpha, config.q, config.grid_size, AngleCoords::phi), files[1]);
    return files;
}

SweepReport run_sweep(const ExperimentConfig& config) {
    config.validate();
    const fs::path dir = prepare_outdir(config.outdir);
    const Eigen::MatrixXd X = experiment_data(config).values();

    CsvTable curves({"method", "location_policy", "mode", "phi_deg", "kappa", "note"});
    CsvTable seeds({"method", "scat1_seed", "scat2_seed"});
    SweepReport report{dir / "sweep.csv", dir / "sweep_seeds.csv", 0};

    for (const MethodSpec& spec : config.methods) {
        const std::string name = spec.name();
        const std::string policy(to_string(spec.policy));
        const std::string mode(to_string(spec.mode));
        MethodOptions options{config.trials, method_seed(config.seed, spec)};
        if (spec.mode == Mode::ics) {
            const auto [seed1, seed2] = scatter_seeds(options.seed);
            seeds.add_row({name, std::to_string(seed1), std::to_string(seed2)});
        }

        std::vector<double> angles(static_cast<std::size_t>(config.grid_size));
        for (std::size_t k = 0; k < angles.size(); ++k)
            angles[k] = -std::numbers::pi / 2 +
                        std::numbers::pi * static_cast<double>(k) / static_cast<double>(angles.size() - 1);
        std::vector<std::string> kappa(angles.size());
        std::vector<std::string> notes(angles.size());

        try {
            const CriterionCurve curve = pp_sweep2d(X, spec, config.grid_size, options);
            for (std::size_t k = 0; k < angles.size(); ++k) kappa[k] = format_number(curve.values[k]);
        } catch (const Error& failure) {
            // PP spreads fail per projection, so keep every angle that works.
            for (std::size_t k = 0; k < angles.size(); ++k) {
                if (spec.mode == Mode::ics) {
                    notes[k] = failure.what();
                    ++report.failures;
                    continue;
                }
                try {
                    const Eigen::Vector2d a(std::cos(angles[k]), std::sin(angles[k]));
                    kappa[k] = format_number(kappa_pp(X, a, spec));
                } catch (const Error& e) {
                    notes[k] = e.what();
                    ++report.failures;
                }
            }
        }
        for (std::size_t k = 0; k < angles.size(); ++k)
            curves.add_row({name, policy, mode, format_number(to_degrees(angles[k])), kappa[k], notes[k]});
    }
    curves.write(report.curves);
    seeds.write(report.seeds);
    return report;
}

std::vector<fs::path> run_histproj(const ExperimentConfig& config, const std::vector<double>& angles_deg) {
    config.validate();
    if (angles_deg.empty()) throw InvalidArgument("angles must not be empty");
    const fs::path dir = prepare_outdir(config.outdir);
    const Eigen::MatrixXd X = experiment_data(config).values();
    const Eigen::Vector2d mean = X.colwise().mean().transpose();

    std::vector<fs::path> files;
    for (double angle : angles_deg) {
        const Eigen::Vector2d a = direction_deg(angle);
        const Eigen::VectorXd y = X * a;
        const std::span<const double> values(y.data(), static_cast<std::size_t>(y.size()));
        for (LocationPolicy policy : {LocationPolicy::free, LocationPolicy::common_mean}) {
            const Location1d loc = policy == LocationPolicy::free ? Location1d::free()
                                                                  : Location1d::fixed(a.dot(mean));
            const SpreadEstimate est = trunc_var(values, loc);
            std::vector<bool> in_support(values.size(), false);
            for (std::size_t i : est.support) in_support[i] = true;

            CsvTable table({"kind", "value", "support", "v_trunc", "location"});
            for (std::size_t i = 0; i < values.size(); ++i)
                table.add_row({"point", format_number(values[i]), in_support[i] ? "1" : "0", "", ""});
            table.add_row({"summary", "", "", format_number(est.spread), format_number(est.location)});

            files.push_back(dir / ("histproj_" + format_number(angle) + "_" + std::string(to_string(policy)) + ".csv"));
            table.write(files.back());
        }
    }
    return files;
}

std::vector<fs::path> run_ellipse(const ExperimentConfig& config) {
    config.validate();
    const fs::path dir = prepare_outdir(config.outdir);
    const Eigen::MatrixXd X = experiment_data(config).values();
    const std::size_t h = half_size(static_cast<std::size_t>(X.rows()));

    std::vector<fs::path> files;
    for (LocationPolicy policy : {LocationPolicy::free, LocationPolicy::common_mean}) {
        const std::string label(to_string(policy));
        const Location loc = policy == LocationPolicy::free
                                 ? Location::free()
                                 : Location::fixed(X.colwise().mean().transpose());
        const ScatterEstimate est =
            mcd_scatter(X, loc, {config.trials, derive_seed(config.seed, "ellipse:" + label), false});

        const Eigen::LLT<Eigen::MatrixXd> llt(est.shape);
        Eigen::MatrixXd centered = (X.rowwise() - est.location.transpose()).transpose();
        llt.matrixL().solveInPlace(centered);
        std::vector<double> d2(static_cast<std::size_t>(X.rows()));
        for (Eigen::Index i = 0; i < X.rows(); ++i) d2[static_cast<std::size_t>(i)] = centered.col(i).squaredNorm();
        std::nth_element(d2.begin(), d2.begin() + static_cast<std::ptrdiff_t>(h - 1), d2.end());
        const double radius = std::sqrt(d2[h - 1]);

        std::vector<bool> in_support(static_cast<std::size_t>(X.rows()), false);
        for (std::size_t i : *est.support) in_support[i] = true;

        CsvTable table({"kind", "x", "y", "support"});
        const Eigen::MatrixXd L = llt.matrixL();
        for (int k = 0; k < kEllipsePoints; ++k) {
            const double t = 2.0 * std::numbers::pi * k / kEllipsePoints;
            const Eigen::Vector2d point = est.location + radius * L * Eigen::Vector2d(std::cos(t), std::sin(t));
            table.add_row({"boundary", format_number(point[0]), format_number(point[1]), ""});
        }
        for (Eigen::Index i = 0; i < X.rows(); ++i)
            table.add_row({"point", format_number(X(i, 0)), format_number(X(i, 1)),
                           in_support[static_cast<std::size_t>(i)] ? "1" : "0"});

        files.push_back(dir / ("ellipse_" + label + ".csv"));
        table.write(files.back());
    }
    return files;
}

}  // namespace icslab
