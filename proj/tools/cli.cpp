#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "labelnoise/calibrate.hpp"
#include "labelnoise/dice.hpp"
#include "labelnoise/error.hpp"
#include "labelnoise/io.hpp"
#include "labelnoise/perturb.hpp"
#include "labelnoise/report.hpp"
#include "labelnoise/synthgen.hpp"

namespace labelnoise::cli {

namespace {

struct SynthArgs {
    std::string kind = "circle";
    int size = 512;
    double radius = 100.0;
    double irregularity = 0.2;
    std::size_t count = 1;
    std::uint64_t seed = 0;
    std::string out;
};

struct ApplyArgs {
    std::string mode;
    double param = 0.0;
    std::size_t spacing = kDefaultSpacing;
    std::uint64_t seed = 0;
    std::string in;
    std::string out;
};

struct CalibrateArgs {
    std::string mode;
    double target = 0.0;
    double tolerance = 0.005;
    std::size_t sample = 1000;
    std::uint64_t seed = 0;
    std::optional<double> initial_upper;
    std::size_t max_iterations = 60;
    std::size_t max_expansions = 8;
    std::size_t spacing = kDefaultSpacing;
    std::string in;
    std::string out;
};

struct DiceArgs {
    std::string a;
    std::string b;
    std::string out;
};

struct SweepArgs {
    std::string mode;
    std::vector<double> params;
    std::size_t seeds = 1;
    std::uint64_t seed = 0;
    std::size_t spacing = kDefaultSpacing;
    std::string in;
    std::string out;
    std::string svg;
};

std::string six(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

int cmd_synth(const SynthArgs& a, std::ostream& out) {
    ShapeSpec spec;
    spec.kind = parse_shape_kind(a.kind);
    spec.size = a.size;
    spec.radius = a.radius;
    spec.irregularity = spec.kind == ShapeKind::circle ? 0.0 : a.irregularity;
    spec.seed = {a.seed};
    spec.count = a.count;
    spec.validate();
    const VolumeDataset ds = make_dataset(spec);
    std::string provenance = "synth kind=" + a.kind + " size=" + std::to_string(a.size) +
                             " radius=" + format_double(a.radius) + " count=" + std::to_string(a.count) +
                             " seed=" + std::to_string(a.seed);
    if (spec.kind == ShapeKind::blob) {
        provenance += " irregularity=" + format_double(a.irregularity);
    }
    save_dataset(ds, a.out, provenance);
    out << "slices " << ds.size() << "\n"
        << "width " << ds.width() << "\n"
        << "height " << ds.height() << "\n";
    return kSuccess;
}

int cmd_apply(const ApplyArgs& a, std::size_t threads, std::ostream& out) {
    PerturbSpec spec;
    spec.mode = parse_mode(a.mode);
    spec.parameter = a.param;
    spec.spacing = a.spacing;
    spec.seed = {a.seed};
    spec.validate();
    const VolumeDataset input = load_dataset(a.in);
    const VolumeDataset perturbed = perturb_dataset(input, spec, threads);
    save_dataset(perturbed, a.out, spec.describe());
    out << "slices " << perturbed.size() << "\n"
        << "mean_dice " << six(input.empty() ? 1.0 : mean_slice_dice(input, perturbed)) << "\n";
    return kSuccess;
}

void print_calibration(const CalibrationResult& r, std::ostream& out) {
    out << "mode " << to_string(r.mode) << "\n"
        << "converged " << (r.converged ? "true" : "false") << "\n"
        << "solved_parameter " << format_double(r.solved_parameter) << "\n"
        << "achieved " << six(r.achieved) << "\n"
        << "iterations " << r.iterations << "\n";
}

int cmd_calibrate(const CalibrateArgs& a, std::size_t threads, std::ostream& out, std::ostream& err) {
    CalibrationConfig cfg;
    cfg.mode = parse_mode(a.mode);
    cfg.target = a.target;
    cfg.tolerance = a.tolerance;
    cfg.sample_size = a.sample;
    cfg.seed = {a.seed};
    cfg.initial_upper = a.initial_upper;
    cfg.max_iterations = a.max_iterations;
    cfg.max_expansions = a.max_expansions;
    cfg.spacing = a.spacing;
    cfg.workers = threads;
    cfg.validate();
    const VolumeDataset ds = load_dataset(a.in);
    try {
        const CalibrationResult r = calibrate(ds, cfg);
        write_calibration(r, a.out);
        print_calibration(r, out);
        return kSuccess;
    } catch (const CalibrationError& e) {
        write_calibration(e.partial(), a.out);
        print_calibration(e.partial(), out);
        err << "error: " << e.what() << "\n";
        return kNonConvergence;
    }
}

int cmd_dice(const DiceArgs& a, std::ostream& out) {
    const VolumeDataset da = load_dataset(a.a);
    const VolumeDataset db = load_dataset(a.b);
    const auto rows = per_slice_dice(da, db);
    if (!a.out.empty()) {
        write_report(rows, a.out);
    }
    out << report_csv(rows);
    out << "mean_dice " << six(rows.empty() ? 1.0 : mean_slice_dice(da, db)) << "\n";
    return kSuccess;
}

int cmd_sweep(const SweepArgs& a, std::size_t threads, std::ostream& out) {
    const Mode mode = parse_mode(a.mode);
    if (a.seeds < 1) {
        throw InvalidArgument("--seeds must be >= 1");
    }
    for (const double p : a.params) {
        PerturbSpec probe;
        probe.mode = mode;
        probe.parameter = p;
        probe.spacing = a.spacing;
        probe.validate();
    }
    const VolumeDataset ds = load_dataset(a.in);
    const auto rows = run_sweep(ds, mode, a.params, a.seeds, {a.seed}, a.spacing, threads);
    write_text_file(a.out, sweep_csv(rows));
    if (!a.svg.empty()) {
        write_text_file(a.svg, sweep_svg(rows));
    }
    out << "rows " << rows.size() << "\n";
    return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Binary segmentation mask label-noise generator and calibrator", "labelnoise"};
    app.require_subcommand(1);
    app.fallthrough();
    std::size_t threads = 0;
    app.add_option("--threads", threads, "Worker threads (0 = all cores); never changes outputs");

    SynthArgs synth;
    auto* s = app.add_subcommand("synth", "Generate a synthetic mask dataset");
    s->add_option("--kind", synth.kind, "circle or blob")->capture_default_str();
    s->add_option("--size", synth.size, "Image side length in pixels")->capture_default_str();
    s->add_option("--radius", synth.radius, "Circle radius or blob mean radius")->capture_default_str();
    s->add_option("--irregularity", synth.irregularity, "Blob radius deviation fraction")->capture_default_str();
    s->add_option("--count", synth.count, "Number of slices")->capture_default_str();
    s->add_option("--seed", synth.seed, "Global seed")->required();
    s->add_option("--out", synth.out, "Output dataset directory")->required();

    ApplyArgs apply;
    auto* ap = app.add_subcommand("apply", "Perturb every slice of a dataset");
    ap->add_option("--mode", apply.mode, "natural, choppy or random")->required();
    ap->add_option("--param", apply.param, "Sigma in pixels (natural/choppy) or flip fraction (random)")
        ->required();
    ap->add_option("--spacing", apply.spacing, "Contour anchor spacing (natural)")->capture_default_str();
    ap->add_option("--seed", apply.seed, "Global seed")->required();
    ap->add_option("--in", apply.in, "Input dataset directory")->required();
    ap->add_option("--out", apply.out, "Output dataset directory")->required();

    CalibrateArgs cal;
    auto* c = app.add_subcommand("calibrate", "Solve the noise parameter for a target mean dice");
    c->add_option("--mode", cal.mode, "natural, choppy or random")->required();
    c->add_option("--target", cal.target, "Target mean dice")->required();
    c->add_option("--tolerance", cal.tolerance, "Terminal tolerance")->capture_default_str();
    c->add_option("--sample", cal.sample, "Number of slices sampled")->capture_default_str();
    c->add_option("--seed", cal.seed, "Global seed")->required();
    c->add_option("--initial-upper", cal.initial_upper, "Initial upper parameter bound");
    c->add_option("--max-iterations", cal.max_iterations, "Bisection step limit")->capture_default_str();
    c->add_option("--max-expansions", cal.max_expansions, "Bracket doubling limit")->capture_default_str();
    c->add_option("--spacing", cal.spacing, "Contour anchor spacing (natural)")->capture_default_str();
    c->add_option("--in", cal.in, "Input dataset directory")->required();
    c->add_option("--out", cal.out, "Output JSON file")->required();

    DiceArgs dice_args;
    auto* d = app.add_subcommand("dice", "Per-slice dice between two aligned datasets");
    d->add_option("--a", dice_args.a, "First dataset directory")->required();
    d->add_option("--b", dice_args.b, "Second dataset directory")->required();
    d->add_option("--out", dice_args.out, "Optional CSV report");

    SweepArgs sweep;
    auto* sw = app.add_subcommand("sweep", "Mean dice over a grid of parameters and seeds");
    sw->add_option("--mode", sweep.mode, "natural, choppy or random")->required();
    sw->add_option("--params", sweep.params, "Comma-separated parameter list")->required()->delimiter(',');
    sw->add_option("--seeds", sweep.seeds, "Seeds per parameter")->capture_default_str();
    sw->add_option("--seed", sweep.seed, "Base seed")->required();
    sw->add_option("--spacing", sweep.spacing, "Contour anchor spacing (natural)")->capture_default_str();
    sw->add_option("--in", sweep.in, "Input dataset directory")->required();
    sw->add_option("--out", sweep.out, "Output CSV file")->required();
    sw->add_option("--svg", sweep.svg, "Optional SVG scatter");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }

    try {
        if (s->parsed()) {
            return cmd_synth(synth, out);
        }
        if (ap->parsed()) {
            return cmd_apply(apply, threads, out);
        }
        if (c->parsed()) {
            return cmd_calibrate(cal, threads, out, err);
        }
        if (d->parsed()) {
            return cmd_dice(dice_args, out);
        }
        return cmd_sweep(sweep, threads, out);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const BoundsError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    }
}

}  // namespace labelnoise::cli
