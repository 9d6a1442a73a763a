#ifndef DILATION_ERRORS_HPP
#define DILATION_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dilation {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(what) {}
};

struct BracketError : Error {
    explicit BracketError(const std::string& what) : Error(what) {}
};

struct NonConvergenceError : Error {
    explicit NonConvergenceError(const std::string& what) : Error(what) {}
};

struct ExcludedTripleError : Error {
    explicit ExcludedTripleError(const std::string& what) : Error(what) {}
};

struct SingularProfileError : Error {
    explicit SingularProfileError(const std::string& what) : Error(what) {}
};

struct AssumptionAViolatedError : Error {
    explicit AssumptionAViolatedError(const std::string& what) : Error(what) {}
};

struct OutOfDomainError : Error {
    explicit OutOfDomainError(const std::string& what) : Error(what) {}
};

struct NotNormalizedError : Error {
    explicit NotNormalizedError(const std::string& what) : Error(what) {}
};

struct NonIntegrableError : Error {
    explicit NonIntegrableError(const std::string& what) : Error(what) {}
};

struct InadmissibleGError : Error {
    explicit InadmissibleGError(const std::string& what) : Error(what) {}
};

struct CurvatureViolatedError : Error {
    explicit CurvatureViolatedError(const std::string& what) : Error(what) {}
};

struct InfeasibleError : Error {
    explicit InfeasibleError(const std::string& what) : Error(what) {}
};

} // namespace dilation

#endif
