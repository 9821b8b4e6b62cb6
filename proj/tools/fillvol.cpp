#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fillvol/chain_io.hpp"
#include "fillvol/constants.hpp"
#include "fillvol/decompose.hpp"
#include "fillvol/fill.hpp"
#include "fillvol/generators.hpp"
#include "fillvol/metric.hpp"

namespace {

using namespace fillvol;

std::string sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

ConstantsTable tableFor(const Chain& z) { return buildConstants(z.dim(), z.ambient()); }

void printFillReport(const Chain& z, const FillResult& r) {
    std::cout << "cycle: dim " << z.dim() << ", ambient " << z.ambient() << ", "
              << z.size() << " simplices, volume " << sci(r.cycleVolume) << "\n";
    if (!r.succeeded) {
        std::cout << "FAIL " << r.failure << "\n";
        return;
    }
    std::cout << "fill: " << r.fill.size() << " simplices, volume " << sci(r.totalVolume)
              << "\n";
    std::cout << "boundary identity: " << (r.boundaryExact ? "exact" : "VIOLATED") << "\n";
    std::cout << "ratio " << sci(r.ratio) << " against certified bound "
              << sci(r.certifiedBound) << "\n";
    for (std::size_t i = 0; i < r.rounds.size(); ++i) {
        const RoundRecord& rec = r.rounds[i];
        std::cout << "round " << i << ": start " << sci(rec.startVolume) << ", "
                  << rec.balls.size() << " balls, coverage " << sci(rec.coverage)
                  << ", residual " << sci(rec.residualVolume) << ", checks "
                  << (rec.allOK() ? "pass" : "FAIL") << "\n";
    }
    for (std::size_t i = 0; i < r.components.size(); ++i) {
        const ConeRecord& c = r.components[i];
        std::cout << "component " << i << ": length " << sci(c.cycleVolume) << ", cone volume "
                  << sci(c.coneVolume) << " <= " << sci(c.coneBound)
                  << (c.ok ? "" : "  FAIL") << "\n";
    }
    if (r.residualCone)
        std::cout << "residual cone: volume " << sci(r.residualCone->coneVolume) << " <= "
                  << sci(r.residualCone->coneBound) << (r.residualCone->ok ? "" : "  FAIL")
                  << "\n";
    std::cout << "certificates: " << (r.certificatesPass ? "all pass" : "FAIL") << "\n";
}

struct SweepRow {
    std::string name;
    std::string spec;
    std::uint64_t seed = 1;
};

std::vector<SweepRow> parseGallery(const std::string& path, std::uint64_t defaultSeed) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open gallery spec: " + path);
    std::vector<SweepRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        SweepRow row;
        row.seed = defaultSeed;
        if (!(ls >> row.name >> row.spec)) continue;
        ls >> row.seed;
        rows.push_back(std::move(row));
    }
    return rows;
}

int runSweep(const std::string& galleryPath, const std::string& csvPath, bool noTimestamp,
             std::uint64_t seed, double theta) {
    const auto rows = parseGallery(galleryPath, seed);
    std::ostringstream csv;
    csv << "name,n,ambient,cycle_volume,fill_volume,ratio,certified_bound,boundary_exact,"
           "decomposition_ok,mass_ball_ok,round_ok,volume_sum_ok,residual_decay_ok,cone_ok,"
           "corrections_zero_ok,ratio_ok,rounds";
    if (!noTimestamp) csv << ",wall_ms";
    csv << "\n";

    bool allPass = true;
    for (const SweepRow& row : rows) {
        const auto start = std::chrono::steady_clock::now();
        Chain z = row.spec.rfind('@', 0) == 0 ? loadChainFile(row.spec.substr(1))
                                              : generateCycle(row.spec, row.seed);
        const ConstantsTable table = tableFor(z);
        FillOptions opts;
        opts.seed = row.seed;
        opts.theta = theta;
        FillResult r = fillCycle(z, table, opts);
        const auto stop = std::chrono::steady_clock::now();

        bool decompositionOK = r.succeeded, massOK = r.succeeded, roundOK = r.succeeded,
             volumeSumOK = r.succeeded, decayOK = r.succeeded, coneOK = r.succeeded,
             correctionsOK = r.succeeded;
        for (const RoundRecord& rec : r.rounds) {
            decompositionOK = decompositionOK && rec.coverageOK;
            decayOK = decayOK && rec.decayOK;
            volumeSumOK = volumeSumOK && rec.volumeSumOK;
            correctionsOK = correctionsOK && rec.correctionsZero;
            for (const BallFillRecord& b : rec.balls) {
                massOK = massOK && b.massOK;
                roundOK = roundOK && b.roundOK;
                coneOK = coneOK && b.cone.ok && b.containment;
            }
        }
        for (const ConeRecord& c : r.components) coneOK = coneOK && c.ok;
        if (r.residualCone) coneOK = coneOK && r.residualCone->ok;
        const bool ratioOK =
            r.succeeded && r.ratio <= r.certifiedBound * (1.0 + 1e-9);
        const bool pass = r.succeeded && r.certificatesPass && r.boundaryExact;
        allPass = allPass && pass;

        csv << row.name << ',' << z.dim() << ',' << z.ambient() << ',' << sci(r.cycleVolume)
            << ',' << sci(r.totalVolume) << ',' << sci(r.ratio) << ',' << sci(r.certifiedBound)
            << ',' << (r.boundaryExact ? 1 : 0) << ',' << (decompositionOK ? 1 : 0) << ','
            << (massOK ? 1 : 0) << ',' << (roundOK ? 1 : 0) << ',' << (volumeSumOK ? 1 : 0)
            << ',' << (decayOK ? 1 : 0) << ',' << (coneOK ? 1 : 0) << ','
            << (correctionsOK ? 1 : 0) << ',' << (ratioOK ? 1 : 0) << ',' << r.rounds.size();
        if (!noTimestamp)
            csv << ','
                << std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
        csv << "\n";
        std::cerr << (pass ? "pass " : "FAIL ") << row.name << " ratio " << sci(r.ratio)
                  << "\n";
    }

    if (csvPath.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(csvPath, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write CSV: " + csvPath);
        out << csv.str();
    }
    return allPass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"filling-volume engine: certified fillings of rational PL cycles"};
    app.require_subcommand(1);

    std::string inPath, outPath, fillPath, galleryPath, csvPath, epsilonArg = "auto";
    double theta = 1e-2;
    std::uint64_t seed = 1;
    int maxRounds = 0;
    bool noTimestamp = false;
    std::string kindSpec;

    auto* fill = app.add_subcommand("fill", "fill a cycle and certify the result");
    fill->add_option("input", inPath, "chain file")->required();
    fill->add_option("--out", outPath, "write the filling chain here");
    fill->add_option("--theta", theta, "residual volume threshold (relative)");
    fill->add_option("--seed", seed, "random seed");
    fill->add_option("--max-rounds", maxRounds, "cap on decomposition rounds");

    auto* dec = app.add_subcommand("decompose", "decompose a cycle into certified balls");
    dec->add_option("input", inPath, "chain file")->required();
    dec->add_option("--epsilon", epsilonArg, "density scale: 'auto' or a value in (0,1)");
    dec->add_option("--seed", seed, "random seed");

    auto* vol = app.add_subcommand("volume", "print the volume of a chain");
    vol->add_option("input", inPath, "chain file")->required();

    auto* verify = app.add_subcommand("verify", "re-check a filling against its cycle");
    verify->add_option("cycle", inPath, "cycle chain file")->required();
    verify->add_option("fill", fillPath, "fill chain file")->required();

    auto* sweep = app.add_subcommand("sweep", "fill a gallery of cycles, emit CSV");
    sweep->add_option("gallery", galleryPath, "gallery spec: 'name kind[:params] [seed]' lines")
        ->required();
    sweep->add_option("--csv", csvPath, "CSV output path (stdout otherwise)");
    sweep->add_flag("--no-timestamp", noTimestamp, "omit the wall-time column");
    sweep->add_option("--seed", seed, "default seed for gallery rows");
    sweep->add_option("--theta", theta, "residual volume threshold");

    auto* gen = app.add_subcommand("generate", "emit a gallery cycle as a chain file");
    gen->add_option("kind", kindSpec, "generator spec, e.g. octahedron, torus-grid:4x4")
        ->required();
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("--out", outPath, "output path (stdout otherwise)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(fill)) {
            const Chain z = loadChainFile(inPath);
            FillOptions opts;
            opts.theta = theta;
            opts.seed = seed;
            opts.maxRounds = maxRounds;
            const FillResult r = fillCycle(z, tableFor(z), opts);
            printFillReport(z, r);
            if (!outPath.empty() && r.succeeded) saveChainFile(outPath, r.fill);
            if (!r.succeeded || !r.certificatesPass) return 1;
            const VerifyReport report = verifyFill(z, r);
            std::cout << "independent re-check: " << report.summary() << "\n";
            return report.pass() ? 0 : 1;
        }
        if (app.got_subcommand(dec)) {
            const Chain z = loadChainFile(inPath);
            const ConstantsTable table = tableFor(z);
            DecomposeOptions opts;
            opts.seed = seed;
            if (epsilonArg != "auto") opts.epsilonOverride = std::stod(epsilonArg);
            const DecomposeOutcome outcome = decompose(z, table, opts);
            const BallDecomposition& d = outcome.decomposition;
            std::cout << "cycle volume " << sci(d.cycleVolume) << ", " << d.balls.size()
                      << " balls, coverage " << sci(d.coverage) << " (needs >= "
                      << sci(d.coverageRhs) << "), attempts " << d.attempts << "\n";
            for (std::size_t i = 0; i < d.balls.size(); ++i) {
                const auto& b = d.balls[i];
                std::cout << "ball " << i << ": radius " << sci(b.ball.radius.get_d())
                          << ", inside volume " << sci(b.cert.insideVolume)
                          << " >= " << sci(b.cert.volumeLowerRhs) << " ["
                          << (b.cert.volumeLowerOK ? "ok" : "FAIL") << "], slice volume "
                          << sci(b.cert.sliceVolume) << " <= " << sci(b.cert.sliceUpperRhs)
                          << " [" << (b.cert.sliceUpperOK ? "ok" : "FAIL") << "]\n";
            }
            if (!outcome.success) {
                std::cout << "FAIL " << outcome.message << "\n";
                return 1;
            }
            std::string why;
            if (!verifyDecomposition(z, d, table, &why)) {
                std::cout << "FAIL independent re-check: " << why << "\n";
                return 1;
            }
            std::cout << "all bounds re-verified from scratch\n";
            return 0;
        }
        if (app.got_subcommand(vol)) {
            const Chain c = loadChainFile(inPath);
            std::cout << sci(chainVolume(c)) << "\n";
            return 0;
        }
        if (app.got_subcommand(verify)) {
            const Chain z = loadChainFile(inPath);
            const Chain fillChain = loadChainFile(fillPath);
            FillResult r(z.dim(), z.ambient(), z.ring());
            r.fill = fillChain;
            r.totalVolume = chainVolume(fillChain);
            const double cycleVol = chainVolume(z);
            r.ratio = cycleVol > 0.0
                          ? r.totalVolume / std::pow(cycleVol, 1.0 + 1.0 / z.dim())
                          : 0.0;
            r.certifiedBound = buildConstants(z.dim(), z.ambient()).at(z.dim()).fillingBound;
            const VerifyReport report = verifyFill(z, r);
            std::cout << report.summary() << "\n";
            return report.pass() ? 0 : 1;
        }
        if (app.got_subcommand(sweep)) return runSweep(galleryPath, csvPath, noTimestamp, seed, theta);
        if (app.got_subcommand(gen)) {
            const Chain z = generateCycle(kindSpec, seed);
            const std::string text = emitChainFile(z);
            if (outPath.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(outPath, std::ios::binary);
                if (!out) throw std::runtime_error("cannot write: " + outPath);
                out << text;
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
