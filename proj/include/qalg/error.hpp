#pragma once

#include <stdexcept>
#include <string>

namespace qalg {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MixedKindError : Error {
    MixedKindError() : Error("cannot combine differential and shift operators") {}
};

struct NonPolynomialResult : Error {
    explicit NonPolynomialResult(const std::string& what) : Error("non-polynomial result: " + what) {}
};

struct UnboundSymbol : Error {
    explicit UnboundSymbol(const std::string& sym) : Error("unbound generator symbol: " + sym), symbol(sym) {}
    std::string symbol;
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error("dimension mismatch: " + what) {}
};

struct BasisKindMismatch : Error {
    explicit BasisKindMismatch(const std::string& what) : Error("basis/operator kind mismatch: " + what) {}
};

struct PoleInLowerParameter : Error {
    explicit PoleInLowerParameter(const std::string& what) : Error("pole in lower parameter: " + what) {}
};

struct NoTruncation : Error {
    explicit NoTruncation(const std::string& what) : Error("no truncation condition holds: " + what) {}
};

struct NoConvergence : Error {
    explicit NoConvergence(const std::string& what) : Error("eigensolver failed to converge: " + what) {}
};

struct InadmissibleParams : Error {
    explicit InadmissibleParams(const std::string& what) : Error("inadmissible parameters: " + what) {}
};

struct NoQuantization : Error {
    explicit NoQuantization(const std::string& what) : Error("no quantization rule: " + what) {}
};

struct NoRealRoot : Error {
    explicit NoRealRoot(const std::string& what) : Error("no real root found: " + what) {}
};

struct NoRule : Error {
    explicit NoRule(const std::string& what) : Error("no closed-form rule: " + what) {}
};

} // namespace qalg
