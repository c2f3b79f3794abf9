#pragma once

#include <stdexcept>
#include <string>

namespace tvbar {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidBarCode : Error {
    using Error::Error;
};
struct EmptyBarCode : Error {
    using Error::Error;
};
struct InfeasibleXDimension : Error {
    using Error::Error;
};
struct InvalidKernel : Error {
    using Error::Error;
};
struct GridTooSmall : Error {
    using Error::Error;
};
struct CaseOrderingViolated : Error {
    using Error::Error;
};
struct QuadratureFailure : Error {
    using Error::Error;
};
struct IncompatibleSignals : Error {
    using Error::Error;
};
struct SearchBudgetExceeded : Error {
    using Error::Error;
};
struct OutOfLemmaScope : Error {
    using Error::Error;
};
struct Diverged : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

} // namespace tvbar
