#include "fillvol/chain_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace fillvol {

namespace {

std::vector<std::string> splitTokens(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string token;
    while (in >> token) tokens.push_back(token);
    return tokens;
}

}  // namespace

Chain parseChainFile(std::istream& in) {
    std::string line;
    int lineNo = 0;
    // header
    int ambient = 0, dim = -1;
    Ring ring = Ring::Z;
    bool haveHeader = false;
    Chain chain(0, 1, Ring::Z);
    while (std::getline(in, line)) {
        ++lineNo;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto tokens = splitTokens(line);
        if (tokens.empty()) continue;
        if (!haveHeader) {
            if (tokens.size() != 5 || tokens[0] != "fillvol-chain")
                throw ChainParseError(lineNo, "expected header 'fillvol-chain 1 <N> <k> <Z|Z2>'");
            if (tokens[1] != "1") throw ChainParseError(lineNo, "unsupported format version");
            try {
                ambient = std::stoi(tokens[2]);
                dim = std::stoi(tokens[3]);
            } catch (const std::exception&) {
                throw ChainParseError(lineNo, "malformed dimensions in header");
            }
            if (ambient < 1 || dim < 0) throw ChainParseError(lineNo, "invalid dimensions");
            if (tokens[4] == "Z")
                ring = Ring::Z;
            else if (tokens[4] == "Z2")
                ring = Ring::Z2;
            else
                throw ChainParseError(lineNo, "unknown ring tag '" + tokens[4] + "'");
            chain = Chain(dim, ambient, ring);
            haveHeader = true;
            continue;
        }
        const std::size_t expected = 1 + static_cast<std::size_t>(dim + 1) * ambient;
        if (tokens.size() != expected)
            throw ChainParseError(lineNo, "expected coefficient plus " +
                                              std::to_string((dim + 1) * ambient) +
                                              " rational coordinates");
        Coeff coeff = 0;
        try {
            coeff = std::stoll(tokens[0]);
        } catch (const std::exception&) {
            throw ChainParseError(lineNo, "malformed coefficient '" + tokens[0] + "'");
        }
        AffineSimplex s;
        s.vertices.reserve(static_cast<std::size_t>(dim + 1));
        std::size_t t = 1;
        for (int v = 0; v <= dim; ++v) {
            RationalPoint p;
            p.coords.reserve(static_cast<std::size_t>(ambient));
            for (int j = 0; j < ambient; ++j, ++t) {
                auto q = parseRational(tokens[t]);
                if (!q)
                    throw ChainParseError(lineNo, "malformed rational '" + tokens[t] + "'");
                p.coords.push_back(std::move(*q));
            }
            s.vertices.push_back(std::move(p));
        }
        chain.addTerm(s, coeff);
    }
    if (!haveHeader) throw ChainParseError(lineNo, "missing header");
    return chain;
}

Chain parseChainFile(const std::string& text) {
    std::istringstream in(text);
    return parseChainFile(in);
}

std::string emitChainFile(const Chain& c) {
    std::ostringstream out;
    out << "fillvol-chain 1 " << c.ambient() << ' ' << c.dim() << ' '
        << (c.ring() == Ring::Z ? "Z" : "Z2") << '\n';
    for (const auto& [s, m] : c.terms()) {
        out << m;
        for (const auto& v : s.vertices)
            for (const auto& q : v.coords) out << ' ' << emitRational(q);
        out << '\n';
    }
    return out.str();
}

Chain loadChainFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open chain file: " + path);
    return parseChainFile(in);
}

void saveChainFile(const std::string& path, const Chain& c) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write chain file: " + path);
    out << emitChainFile(c);
}

}  // namespace fillvol
