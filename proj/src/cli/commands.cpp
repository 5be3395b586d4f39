#include "latmc/cli/commands.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "latmc/cli/checkpoint.hpp"
#include "latmc/cli/csv.hpp"
#include "latmc/cli/snapshot.hpp"
#include "latmc/clusters.hpp"
#include "latmc/run.hpp"

namespace fs = std::filesystem;

namespace latmc::cli {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot write '" + path + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out)
        throw IoError("failed writing '" + path + "'");
}

namespace {

void make_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw IoError("cannot create output directory '" + dir.string() + "'");
}

Plane plane_for(const RunConfig& config, const LatticeGeometry& geometry) {
    Plane plane = middle_plane(geometry, config.snapshot_axis);
    if (config.snapshot_index)
        plane.index = *config.snapshot_index;
    return plane;
}

void write_snapshot_files(const fs::path& stem, const Chain& chain, const Plane& plane) {
    const auto& g = chain.geometry();
    const auto& c = chain.config();
    write_file(stem.string() + ".pgm", to_pgm(g, c, plane, chain.step_count()));
    write_file(stem.string() + ".txt", to_ascii_grid(g, c, plane));
    write_file(stem.string() + ".lat", to_lattice_dump(g, c, chain.step_count()));
}

fs::path checkpoint_path(const fs::path& dir, std::uint64_t step) {
    return dir / "checkpoints" / ("step_" + std::to_string(step) + ".ckpt");
}

// Drives a fresh or restored chain to its budget (or stop_at) and writes
// every artifact of a run.
bool execute(const RunConfig& config, Chain chain, TimeSeries series, std::ostream& log) {
    const fs::path dir = output_dir(config);
    make_dir(dir);
    write_file((dir / "run_config.txt").string(), canonical_text(config));

    const Plane plane = plane_for(config, chain.geometry());
    RunHooks hooks;
    hooks.measure_every = config.measure_every;
    hooks.snapshot_every = config.snapshot_every;
    hooks.checkpoint_every = config.checkpoint_every;
    hooks.stop_at = config.stop_at;
    hooks.keep_snapshots = false;
    if (config.snapshot_every != 0) {
        make_dir(dir / "snapshots");
        hooks.on_snapshot = [&](const Chain& c) {
            write_snapshot_files(dir / "snapshots" / ("step_" + std::to_string(c.step_count())), c, plane);
        };
    }
    if (config.checkpoint_every != 0 || config.stop_at != 0)
        make_dir(dir / "checkpoints");
    if (config.checkpoint_every != 0) {
        hooks.on_checkpoint = [&](const Chain& c, const TimeSeries& s) {
            write_checkpoint(checkpoint_path(dir, c.step_count()).string(), make_checkpoint(config, c, s));
        };
    }

    RunResult result = continue_chain(std::move(chain), std::move(series), hooks);
    const Chain& done = result.chain;
    if (done.step_count() < done.params().steps) {
        const auto path = checkpoint_path(dir, done.step_count());
        write_checkpoint(path.string(), make_checkpoint(config, done, result.series));
        log << "stopped at step " << done.step_count() << "; checkpoint " << path.string() << '\n';
        return false;
    }

    write_file((dir / "series.csv").string(), series_csv(result.series));
    write_snapshot_files(dir / "final", done, plane);
    const ClusterReport clusters = report(label_clusters(done.config(), done.geometry()));
    write_file((dir / "clusters.csv").string(), clusters_csv(clusters));
    write_file((dir / "cluster_summary.csv").string(), cluster_summary_csv(clusters));

    log << "finished " << done.step_count() << " steps: W=" << format_double(done.objective())
        << " U=" << total_profit(done.config()) << " m=" << format_double(mean_state(done.config()))
        << " clusters=" << clusters.n_clusters << " largest=" << clusters.largest << '\n';
    return true;
}

Chain fresh_chain(const RunConfig& config) {
    auto geometry = std::make_shared<const LatticeGeometry>(make_geometry(config));
    auto couplings = std::make_shared<const CouplingModel>(make_couplings(*geometry, config));
    return Chain(geometry, couplings, make_params(config));
}

} // namespace

bool cmd_run(const RunConfig& config, std::ostream& log) {
    validate(config, Command::run);
    return execute(config, fresh_chain(config), TimeSeries{}, log);
}

RunConfig config_from_checkpoint(const std::string& checkpoint_path) {
    const Checkpoint checkpoint = read_checkpoint(checkpoint_path);
    RunConfig config;
    parse_config_text(config, checkpoint.config_text, checkpoint_path + " (stored config)");
    // Checkpoints live in <output>/checkpoints/.
    config.output = fs::absolute(checkpoint_path).parent_path().parent_path().string();
    return config;
}

bool cmd_resume(const std::string& checkpoint_path, const RunConfig& config, std::ostream& log) {
    validate(config, Command::run);
    const Checkpoint checkpoint = read_checkpoint(checkpoint_path);
    Chain chain = restore_chain(checkpoint, config);
    log << "resuming at step " << checkpoint.step << '\n';
    return execute(config, std::move(chain), checkpoint.series, log);
}

std::vector<SweepRow> cmd_sweep(const RunConfig& base, std::ostream& log) {
    validate(base, Command::sweep);
    const std::vector<double> temperatures =
        base.temperatures.empty() ? std::vector<double>{*base.temperature} : base.temperatures;
    const fs::path dir = output_dir(base);
    make_dir(dir);

    auto geometry = std::make_shared<const LatticeGeometry>(make_geometry(base));
    auto couplings = std::make_shared<const CouplingModel>(make_couplings(*geometry, base));

    struct Job {
        RunConfig config;
        SweepRow row;
    };
    std::vector<Job> jobs;
    for (double t : temperatures) {
        for (std::uint64_t k = 0; k < base.seeds_per_t; ++k) {
            Job job{base, {}};
            job.config.temperature = t;
            job.config.seed = base.seed + k;
            job.row.temperature = t;
            job.row.seed = job.config.seed;
            jobs.push_back(std::move(job));
        }
    }

    const auto run_job = [&](Job& job) {
        const ChainParams params = make_params(job.config);
        double sum_abs_m = 0.0;
        double sum_u = 0.0;
        double sum_clusters = 0.0;
        std::size_t samples = 0;
        RunHooks hooks;
        hooks.measure_every = job.config.measure_every;
        hooks.keep_snapshots = false;
        hooks.on_measure = [&](const Chain& chain, const Measurement& m) {
            if (2 * m.step < params.steps)
                return;
            sum_abs_m += std::abs(m.m);
            sum_u += static_cast<double>(m.u);
            sum_clusters += static_cast<double>(label_clusters(chain.config(), chain.geometry()).n_clusters);
            ++samples;
        };
        RunResult result = run_chain(geometry, couplings, params, hooks);
        const fs::path chain_dir =
            dir / ("T" + format_double(job.row.temperature) + "_seed" + std::to_string(job.row.seed));
        make_dir(chain_dir);
        write_file((chain_dir / "series.csv").string(), series_csv(result.series));
        job.row.samples = samples;
        if (samples > 0) {
            const auto n = static_cast<double>(samples);
            job.row.mean_abs_m = sum_abs_m / n;
            job.row.mean_u = sum_u / n;
            job.row.mean_n_clusters = sum_clusters / n;
        }
    };

    const std::size_t workers = std::min<std::size_t>(base.workers, jobs.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    const auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                run_job(jobs[i]);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < workers; ++i)
            pool.emplace_back(worker);
    }
    if (error)
        std::rethrow_exception(error);

    std::vector<SweepRow> rows;
    for (const auto& job : jobs)
        rows.push_back(job.row);
    write_file((dir / "summary.csv").string(), sweep_csv(rows));
    log << "sweep: " << rows.size() << " chains, summary " << (dir / "summary.csv").string() << '\n';
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "T,seed,mean_abs_m,mean_U,mean_n_clusters,samples\n";
    for (const auto& r : rows)
        out += format_double(r.temperature) + ',' + std::to_string(r.seed) + ',' +
               format_double(r.mean_abs_m) + ',' + format_double(r.mean_u) + ',' +
               format_double(r.mean_n_clusters) + ',' + std::to_string(r.samples) + '\n';
    return out;
}

std::string cmd_enumerate(const RunConfig& config, Observable observable) {
    validate(config, Command::enumerate);
    const LatticeGeometry geometry = make_geometry(config);
    const CouplingModel couplings = make_couplings(geometry, config);
    const ExactDistribution dist = enumerate(geometry, couplings, 1.0 / *config.temperature);
    return marginal_csv(observable_marginal(dist, observable));
}

std::string cmd_clusters(const std::string& snapshot_path, std::ostream& log) {
    const LoadedSnapshot snap = parse_snapshot(read_file(snapshot_path));
    const ClusterReport r = report(label_clusters(snap.config, snap.geometry));
    log << "n_clusters=" << r.n_clusters << " U=" << r.total << " largest=" << r.largest
        << " mean_size=" << format_double(r.mean_size)
        << " weighted_mean_size=" << format_double(r.weighted_mean_size) << '\n';
    return clusters_csv(r);
}

namespace {

struct KeyFlags {
    std::map<std::string, std::string> values;
    std::vector<std::pair<std::string, CLI::Option*>> options;

    void attach(CLI::App* app) {
        for (const auto& key : config_keys())
            options.emplace_back(key, app->add_option("--" + key, values[key], "config key '" + key + "'"));
    }

    void apply(RunConfig& config) const {
        for (const auto& [key, option] : options)
            if (option->count() > 0)
                apply_setting(config, key, values.at(key), "--" + key);
    }
};

RunConfig base_config(const std::string& path) {
    return path.empty() ? RunConfig{} : load_config_file(path);
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty())
        out << text;
    else
        write_file(path, text);
}

} // namespace

int run_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"latmc: Metropolis lattice simulator of corruption activity"};
    app.require_subcommand(1);

    std::string config_path;
    std::string checkpoint_file;
    std::string snapshot_file;
    std::string out_file;
    std::string observable_name = "U";

    auto* run = app.add_subcommand("run", "run one chain and write its artifacts");
    run->add_option("config", config_path, "key = value config file");
    KeyFlags run_flags;
    run_flags.attach(run);

    auto* sweep = app.add_subcommand("sweep", "independent chains over temperatures and seeds");
    sweep->add_option("config", config_path, "key = value config file");
    KeyFlags sweep_flags;
    sweep_flags.attach(sweep);

    auto* enumerate_cmd = app.add_subcommand("enumerate", "exact Boltzmann marginal of a small lattice");
    enumerate_cmd->add_option("config", config_path, "key = value config file");
    enumerate_cmd->add_option("--observable", observable_name, "U, W or m")
        ->check(CLI::IsMember({"U", "W", "m"}));
    enumerate_cmd->add_option("-o,--out", out_file, "write CSV here instead of stdout");
    KeyFlags enumerate_flags;
    enumerate_flags.attach(enumerate_cmd);

    auto* clusters = app.add_subcommand("clusters", "cluster report of a snapshot file");
    clusters->add_option("snapshot", snapshot_file, "lattice dump, ASCII grid or P2 graymap")->required();
    clusters->add_option("-o,--out", out_file, "write CSV here instead of stdout");

    auto* resume = app.add_subcommand("resume", "continue a run from a checkpoint");
    resume->add_option("checkpoint", checkpoint_file, "checkpoint file")->required();
    resume->add_option("--config", config_path, "config file (defaults to the stored one)");
    KeyFlags resume_flags;
    resume_flags.attach(resume);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (run->parsed()) {
            RunConfig config = base_config(config_path);
            run_flags.apply(config);
            cmd_run(config, err);
        } else if (sweep->parsed()) {
            RunConfig config = base_config(config_path);
            sweep_flags.apply(config);
            cmd_sweep(config, err);
        } else if (enumerate_cmd->parsed()) {
            RunConfig config = base_config(config_path);
            enumerate_flags.apply(config);
            const Observable observable = observable_name == "W"   ? Observable::W
                                          : observable_name == "m" ? Observable::m
                                                                   : Observable::U;
            emit(out_file, cmd_enumerate(config, observable), out);
        } else if (clusters->parsed()) {
            emit(out_file, cmd_clusters(snapshot_file, err), out);
        } else if (resume->parsed()) {
            RunConfig config =
                config_path.empty() ? config_from_checkpoint(checkpoint_file) : load_config_file(config_path);
            resume_flags.apply(config);
            cmd_resume(checkpoint_file, config, err);
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const InvalidParams& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const InvalidGeometry& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitContract;
    }
    return kExitOk;
}

} // namespace latmc::cli
