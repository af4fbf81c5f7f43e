#pragma once

#include <stdexcept>
#include <string>

namespace surfcov {

class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define SURFCOV_ERROR(Name)                                                   \
    class Name : public Error {                                               \
    public:                                                                   \
        explicit Name(const std::string& what) : Error(#Name, what) {}        \
    }

SURFCOV_ERROR(UnknownGenerator);
SURFCOV_ERROR(SyntaxError);
SURFCOV_ERROR(BudgetTooLarge);
SURFCOV_ERROR(InvalidGenus);
SURFCOV_ERROR(TrivialClass);
SURFCOV_ERROR(RelatorNotKilled);
SURFCOV_ERROR(NotTransitive);
SURFCOV_ERROR(BadPermutation);
SURFCOV_ERROR(InternalDisagreement);
SURFCOV_ERROR(DomainError);
SURFCOV_ERROR(DegenerateComplexity);
SURFCOV_ERROR(ProviderMissing);
SURFCOV_ERROR(NotAMultiple);
SURFCOV_ERROR(DimensionError);
SURFCOV_ERROR(NotAHomomorphism);
SURFCOV_ERROR(SamplingFailed);
SURFCOV_ERROR(PreconditionViolated);

// Numeric instability is the one failure the CLI reports with its own exit code.
SURFCOV_ERROR(NumericInstability);

#undef SURFCOV_ERROR

}  // namespace surfcov
