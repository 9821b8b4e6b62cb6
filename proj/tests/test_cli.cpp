// Smoke test for the command-line interface; drives every subcommand
// through the shell. Usage: test_cli <path-to-fillvol>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "fillvol/chain_io.hpp"
#include "fillvol/metric.hpp"

namespace fs = std::filesystem;
using namespace fillvol;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
    std::cout << (ok ? "ok   " : "FAIL ") << what << "\n";
    if (!ok) ++failures;
}

std::string readFile(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(const std::string& cmd) { return std::system(cmd.c_str()); }

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: test_cli <fillvol-binary>\n";
        return 2;
    }
    const std::string cli = std::string("\"") + argv[1] + "\"";
    const fs::path dir = "cli_tmp";
    fs::create_directories(dir);
    const fs::path cyclePath = dir / "oct.chain";
    const fs::path fillPath = dir / "oct.fill";
    const fs::path volPath = dir / "vol.txt";
    const fs::path decPath = dir / "dec.txt";

    check(run(cli + " generate octahedron --out " + cyclePath.string()) == 0, "generate");
    const Chain z = loadChainFile(cyclePath.string());
    check(z.dim() == 2 && z.size() == 8, "generated chain parses back");

    check(run(cli + " volume " + cyclePath.string() + " > " + volPath.string()) == 0, "volume");
    const double reported = std::stod(readFile(volPath));
    check(std::abs(reported - chainVolume(z)) < 1e-9, "volume value matches the library");

    check(run(cli + " fill " + cyclePath.string() + " --out " + fillPath.string() +
              " --seed 5 > " + (dir / "fill.txt").string()) == 0,
          "fill exits zero with passing certificates");
    const std::string fillReport = readFile(dir / "fill.txt");
    check(fillReport.find("boundary identity: exact") != std::string::npos,
          "fill report states exact boundary");

    check(run(cli + " verify " + cyclePath.string() + " " + fillPath.string() + " > " +
              (dir / "verify.txt").string()) == 0,
          "verify accepts the emitted filling");

    // corrupt the filling: drop its first record
    {
        std::ifstream in(fillPath);
        std::ofstream out(dir / "broken.fill");
        std::string line;
        int lineNo = 0;
        while (std::getline(in, line))
            if (++lineNo != 2) out << line << "\n";
    }
    check(run(cli + " verify " + cyclePath.string() + " " + (dir / "broken.fill").string() +
              " > /dev/null") != 0,
          "verify rejects a tampered filling");

    check(run(cli + " decompose " + cyclePath.string() + " > " + decPath.string()) == 0,
          "decompose exits zero");
    check(readFile(decPath).find("re-verified from scratch") != std::string::npos,
          "decompose report confirms independent re-check");

    check(run(cli + " volume " + (dir / "missing.chain").string() + " 2>/dev/null") != 0,
          "missing input reports an error");

    if (failures == 0) std::cout << "all CLI checks passed\n";
    return failures == 0 ? 0 : 1;
}
