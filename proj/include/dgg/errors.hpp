#ifndef DGG_ERRORS_HPP
#define DGG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dgg {

// Quadrature or Mellin-Barnes integration missed its accuracy target.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_error_(achieved) {}
    double achieved_error() const { return achieved_error_; }

private:
    double achieved_error_;
};

// Meijer G parameter pattern outside the supported family.
class UnsupportedSpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Root bracketing failed: the requested value is unreachable.
class NoSolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Closed-form Meijer G order exceeds the configured cap.
class InfeasibleOrderError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Exponent ladder too close to degenerate for the asymptotic expansion.
class DegenerateExponentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace dgg

#endif
