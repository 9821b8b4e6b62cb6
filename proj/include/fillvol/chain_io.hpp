#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "fillvol/chain.hpp"

namespace fillvol {

class ChainParseError : public std::runtime_error {
public:
    ChainParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Text format, one simplex per record:
//
//   fillvol-chain 1 <ambient> <dim> <Z|Z2>
//   <coeff> <p/q> ... ((dim+1)*ambient rational tokens)
//
// Blank lines and '#' comments are accepted on parse; emit writes canonical
// term order, so parse/emit round-trips are bit-exact on canonical forms.
Chain parseChainFile(const std::string& text);
Chain parseChainFile(std::istream& in);

std::string emitChainFile(const Chain& c);

Chain loadChainFile(const std::string& path);
void saveChainFile(const std::string& path, const Chain& c);

}  // namespace fillvol
