// gamesh: command line front end.
//
// Subcommands: mesh (point set + prior -> mesh), eval (chamfer / F1),
// sample (surface sampling), simplify (quadric decimation), topology.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gamesh/io.hpp"
#include "gamesh/metrics.hpp"
#include "gamesh/parallel.hpp"
#include "gamesh/pipeline.hpp"
#include "gamesh/simplify.hpp"

namespace fs = std::filesystem;
using namespace gamesh;

namespace {

// "--report json" (or "-") prints to stdout; anything else is a file path.
void emit_report(const std::string& dest, const std::string& body) {
    if (dest == "json" || dest == "-") {
        std::cout << body << "\n";
        return;
    }
    std::ofstream out(dest);
    if (!out) throw std::runtime_error("cannot write report: " + dest);
    out << body << "\n";
}

bool is_mesh_file(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".obj" || ext == ".off";
}

struct MeshArgs {
    std::string prior, points, out, report;
    int grid_res = 0;
    double epsilon = 1e-6;
    double snap_tol = 1e-9;
    std::uint64_t seed = 0;
    int verbosity = 0;
};

PipelineConfig to_config(const MeshArgs& a) {
    PipelineConfig cfg;
    cfg.prior_path = a.prior;
    cfg.points_path = a.points;
    cfg.output_path = a.out;
    cfg.grid_res = a.grid_res;
    cfg.epsilon = a.epsilon;
    cfg.snap_tol = a.snap_tol;
    cfg.seed = a.seed;
    cfg.verbosity = a.verbosity;
    return cfg;
}

int run_mesh_single(const MeshArgs& args) {
    const RunReport report = run_gamesh(to_config(args));
    if (!args.report.empty()) emit_report(args.report, report_to_json(report));
    return 0;
}

// Directory batch: every prior <dir>/<stem>.obj|.off pairs with
// <points_dir>/<stem>.xyz; outputs land in <out_dir>/<stem>.obj. Shapes run
// in parallel; reports (when requested) go to <out_dir>/<stem>.report.json.
int run_mesh_batch(const MeshArgs& args) {
    struct Job {
        std::string stem;
        MeshArgs shape;
    };
    std::vector<Job> jobs;
    std::vector<fs::path> priors;
    for (const auto& entry : fs::directory_iterator(args.prior))
        if (entry.is_regular_file() && is_mesh_file(entry.path())) priors.push_back(entry.path());
    std::sort(priors.begin(), priors.end());

    fs::create_directories(args.out);
    for (const fs::path& prior : priors) {
        const std::string stem = prior.stem().string();
        const fs::path pts = fs::path(args.points) / (stem + ".xyz");
        if (!fs::exists(pts)) {
            std::cerr << "gamesh: skipping " << stem << " (no " << pts.string() << ")\n";
            continue;
        }
        Job job;
        job.stem = stem;
        job.shape = args;
        job.shape.prior = prior.string();
        job.shape.points = pts.string();
        job.shape.out = (fs::path(args.out) / (stem + ".obj")).string();
        if (!args.report.empty())
            job.shape.report = (fs::path(args.out) / (stem + ".report.json")).string();
        jobs.push_back(std::move(job));
    }
    if (jobs.empty()) throw std::runtime_error("no (prior, points) pairs found");

    std::mutex mu;
    std::vector<std::string> failures;
    parallel_for(static_cast<std::int64_t>(jobs.size()), [&](std::int64_t i) {
        try {
            run_mesh_single(jobs[i].shape);
        } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(mu);
            failures.push_back(jobs[i].stem + ": " + e.what());
        }
    });
    for (const std::string& f : failures) std::cerr << "gamesh: " << f << "\n";
    std::cout << (jobs.size() - failures.size()) << "/" << jobs.size() << " shapes meshed\n";
    return failures.empty() ? 0 : 1;
}

nlohmann::json metrics_json(const MetricsReport& r) {
    nlohmann::json j;
    j["chamfer"] = r.chamfer;
    j["f1_tau"] = r.f1_tau;
    j["f1_2tau"] = r.f1_2tau;
    if (r.unreferenced_valid) j["unreferenced_pct"] = r.unreferenced_fraction;
    j["samples"] = r.config.sample_count;
    j["tau"] = r.config.tau;
    j["scale"] = r.config.scale;
    j["seed"] = r.config.seed;
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"GAMesh: mesh a point set with connectivity inherited from a prior mesh"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    MeshArgs margs;
    auto* mesh_cmd = app.add_subcommand(
        "mesh", "Mesh points against a prior (file mode, or directory batch mode)");
    mesh_cmd->add_option("--prior", margs.prior, "Prior mesh (.obj/.off), or a directory of them")
        ->required();
    mesh_cmd->add_option("--points", margs.points, "Input points (.xyz), or a directory")
        ->required();
    mesh_cmd->add_option("--out", margs.out, "Output mesh path (.obj), or a directory")
        ->required();
    mesh_cmd->add_option("--grid-res", margs.grid_res,
                         "Triangulation grid resolution (0 = automatic per face)");
    mesh_cmd->add_option("--epsilon", margs.epsilon, "Barycentric nudge for boundary footprints");
    mesh_cmd->add_option("--snap-tol", margs.snap_tol,
                         "Vertex-substitution tolerance, relative to the prior diagonal");
    mesh_cmd->add_option("--seed", margs.seed, "Random seed (reserved for report metrics)");
    mesh_cmd->add_option("--report", margs.report,
                         "Write a JSON run report ('json' or '-' = stdout, else a file path)");
    mesh_cmd->add_flag_function(
        "-v,--verbose", [&](std::int64_t n) { margs.verbosity = static_cast<int>(n); },
        "Print stage progress to stderr");

    struct {
        std::string gt, pred, points;
        int samples = 10000;
        double tau = 1e-4, scale = 0.57;
        std::uint64_t seed = 0;
        bool json = false;
    } eargs;
    auto* eval_cmd = app.add_subcommand("eval", "Chamfer and F1 between two meshes");
    eval_cmd->add_option("--gt", eargs.gt, "Ground-truth mesh")->required();
    eval_cmd->add_option("--pred", eargs.pred, "Predicted mesh")->required();
    eval_cmd->add_option("--points", eargs.points,
                         "Input points (.xyz) for unreferenced-vertex accounting");
    eval_cmd->add_option("--samples", eargs.samples, "Surface samples per mesh");
    eval_cmd->add_option("--tau", eargs.tau, "F1 threshold on squared distance");
    eval_cmd->add_option("--scale", eargs.scale, "Coordinate scale applied before sampling");
    eval_cmd->add_option("--seed", eargs.seed, "Sampling seed");
    eval_cmd->add_flag("--json", eargs.json, "Emit JSON instead of plain text");

    struct {
        std::string mesh, out;
        int n = 0;
        std::uint64_t seed = 0;
    } sargs;
    auto* sample_cmd = app.add_subcommand("sample", "Sample points uniformly from a surface");
    sample_cmd->add_option("--mesh", sargs.mesh, "Input mesh")->required();
    sample_cmd->add_option("-n,--count", sargs.n, "Number of samples")->required();
    sample_cmd->add_option("--seed", sargs.seed, "Sampling seed");
    sample_cmd->add_option("--out", sargs.out, "Output point file (.xyz)")->required();

    struct {
        std::string mesh, out;
        int target = 0;
    } qargs;
    auto* simp_cmd = app.add_subcommand("simplify", "Quadric decimation to a vertex budget");
    simp_cmd->add_option("--mesh", qargs.mesh, "Input mesh")->required();
    simp_cmd->add_option("--target-vertices", qargs.target, "Vertex budget (>= 4)")->required();
    simp_cmd->add_option("--out", qargs.out, "Output mesh path")->required();

    struct {
        std::string mesh;
        bool json = false;
    } targs;
    auto* topo_cmd = app.add_subcommand("topology", "Connectivity summary of a mesh");
    topo_cmd->add_option("--mesh", targs.mesh, "Input mesh")->required();
    topo_cmd->add_flag("--json", targs.json, "Emit JSON instead of plain text");

    try {
        app.parse(argc, argv);

        if (mesh_cmd->parsed()) {
            const bool batch = fs::is_directory(margs.prior) || fs::is_directory(margs.points);
            return batch ? run_mesh_batch(margs) : run_mesh_single(margs);
        }

        if (eval_cmd->parsed()) {
            const IndexedMesh gt = read_mesh(eargs.gt);
            const IndexedMesh pred = read_mesh(eargs.pred);
            std::vector<Vec3> points;
            const bool have_points = !eargs.points.empty();
            if (have_points) points = read_points(eargs.points);
            MetricsConfig cfg;
            cfg.sample_count = eargs.samples;
            cfg.tau = eargs.tau;
            cfg.scale = eargs.scale;
            cfg.seed = eargs.seed;
            const MetricsReport r = evaluate(gt, pred, have_points ? &points : nullptr, cfg);
            if (eargs.json) {
                std::cout << metrics_json(r).dump(2) << "\n";
            } else {
                std::cout << "chamfer         " << r.chamfer << "\n"
                          << "f1_tau          " << r.f1_tau << "\n"
                          << "f1_2tau         " << r.f1_2tau << "\n";
                if (r.unreferenced_valid)
                    std::cout << "unreferenced_pct " << r.unreferenced_fraction << "\n";
            }
            return 0;
        }

        if (sample_cmd->parsed()) {
            const IndexedMesh mesh = read_mesh(sargs.mesh);
            const SampledCloud cloud = sample_surface(mesh, sargs.n, sargs.seed);
            write_points(cloud.points, sargs.out);
            return 0;
        }

        if (simp_cmd->parsed()) {
            const IndexedMesh mesh = read_mesh(qargs.mesh);
            const IndexedMesh slim = simplify_quadric(mesh, qargs.target);
            write_mesh(slim, qargs.out);
            std::cout << "vertices: " << slim.vertex_count() << " (target " << qargs.target
                      << ")\n";
            return 0;
        }

        if (topo_cmd->parsed()) {
            const IndexedMesh mesh = read_mesh(targs.mesh);
            const TopologySummary t = topology_summary(mesh);
            if (targs.json) {
                std::cout << topology_to_json(t) << "\n";
            } else {
                std::cout << "vertices          " << t.vertices << "\n"
                          << "edges             " << t.edges << "\n"
                          << "faces             " << t.faces << "\n"
                          << "euler             " << t.euler << "\n"
                          << "components        " << t.components << "\n"
                          << "boundary_edges    " << t.boundary_edges << "\n"
                          << "nonmanifold_edges " << t.nonmanifold_edges << "\n"
                          << "isolated_vertices " << t.isolated_vertices << "\n"
                          << "edge_manifold     " << (t.edge_manifold ? "yes" : "no") << "\n"
                          << "closed            " << (t.closed ? "yes" : "no") << "\n";
                if (t.genus.has_value()) std::cout << "genus             " << *t.genus << "\n";
            }
            return 0;
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "gamesh: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
