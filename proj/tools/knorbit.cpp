#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kn/report.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw kn::Error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

kn::Scenario load_scenario(const std::string& path) {
    return kn::parse_scenario(slurp(path));
}

void emit(const kn::Json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw kn::Error("cannot write " + out_path);
    out << j.dump(2) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orbit-closedness analyzer for linear reductive group actions"};
    app.require_subcommand(1);

    std::string run_file, run_out;
    auto* run = app.add_subcommand("run", "Run one scenario file and emit its report");
    run->add_option("file", run_file, "scenario JSON file")->required();
    run->add_option("--out", run_out, "write the report here instead of stdout");

    std::string batch_dir;
    int batch_jobs = 1;
    auto* batch = app.add_subcommand("batch", "Run every scenario in a directory");
    batch->add_option("dir", batch_dir, "directory of scenario JSON files")->required();
    batch->add_option("--jobs", batch_jobs, "concurrent workers")->check(CLI::PositiveNumber);

    std::string id_file;
    int id_probes = 0;
    std::uint64_t id_seed = 0;
    bool id_seed_set = false, id_probes_set = false;
    auto* ident = app.add_subcommand("identities", "Probe the proof identities of a scenario's representation");
    ident->add_option("file", id_file, "scenario JSON file")->required();
    ident->add_option("--probes", id_probes, "number of random probes")
        ->check(CLI::PositiveNumber)
        ->each([&](const std::string&) { id_probes_set = true; });
    ident->add_option("--seed", id_seed, "RNG seed")->each([&](const std::string&) {
        id_seed_set = true;
    });

    std::string sm_file;
    int sm_n = 0;
    std::uint64_t sm_seed = 0;
    bool sm_seed_set = false, sm_n_set = false;
    auto* sample = app.add_subcommand("sample", "Run the generic-closedness sampler of a scenario");
    sample->add_option("file", sm_file, "scenario JSON file")->required();
    sample->add_option("--n", sm_n, "number of samples")
        ->check(CLI::PositiveNumber)
        ->each([&](const std::string&) { sm_n_set = true; });
    sample->add_option("--seed", sm_seed, "RNG seed")->each([&](const std::string&) {
        sm_seed_set = true;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*run) {
            kn::Scenario s = load_scenario(run_file);
            kn::Json report = kn::run_scenario(s);
            emit(report, run_out);
            return kn::report_ok(report) ? 0 : 1;
        }
        if (*batch) {
            kn::BatchSummary summary = kn::batch_run(batch_dir, batch_jobs);
            emit(summary.json, "");
            return summary.all_ok ? 0 : 1;
        }
        if (*ident) {
            kn::Scenario s = load_scenario(id_file);
            if (id_probes_set) s.options.probes = id_probes;
            if (id_seed_set) s.options.seed = id_seed;
            s.analyses = {"identities"};
            kn::Json report = kn::run_scenario(s);
            emit(report, "");
            return kn::report_ok(report) ? 0 : 1;
        }
        if (*sample) {
            kn::Scenario s = load_scenario(sm_file);
            if (sm_n_set) s.options.samples = sm_n;
            if (sm_seed_set) s.options.seed = sm_seed;
            s.analyses = {"stability"};
            kn::Json report = kn::run_scenario(s);
            emit(report, "");
            return kn::report_ok(report) ? 0 : 1;
        }
    } catch (const kn::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
