#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace htr {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kSqrt2 = std::numbers::sqrt2;

/// Radius of starlikeness of T and conjectured univalence radius.
inline const double kSqrt2Minus1 = std::numbers::sqrt2 - 1.0;
/// Lower bound for the univalence radius of sheared maps.
inline const double kSqrt6MinusSqrt5 = std::sqrt(6.0) - std::sqrt(5.0);
inline const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

/// Kernel evaluations closer than this to a pole are refused.
inline constexpr double kPoleGuard = 1e-12;

// Error hierarchy. Every failure carries a kind so callers (and the CLI exit
// code mapping) can tell usage problems from mathematical outcomes.
enum class ErrorKind {
    InvalidMeasure,
    Domain,
    Pole,
    Branch,
    Accuracy,
    Division,
    SearchFailure,
    Falsification,
    InvalidInput,
    Degenerate,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidMeasure: return "invalid-measure";
        case ErrorKind::Domain: return "domain";
        case ErrorKind::Pole: return "pole";
        case ErrorKind::Branch: return "branch";
        case ErrorKind::Accuracy: return "accuracy";
        case ErrorKind::Division: return "division";
        case ErrorKind::SearchFailure: return "search-failure";
        case ErrorKind::Falsification: return "falsification";
        case ErrorKind::InvalidInput: return "invalid-input";
        case ErrorKind::Degenerate: return "degenerate";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised by adaptive quadrature; carries the best estimate reached.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, cplx estimate, double achieved)
        : Error(ErrorKind::Accuracy, what), estimate_(estimate), achieved_(achieved) {}

    cplx estimate() const noexcept { return estimate_; }
    double achieved_error() const noexcept { return achieved_; }

private:
    cplx estimate_;
    double achieved_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline int sign_of(double x, double tol = 0.0) {
    if (x > tol) return 1;
    if (x < -tol) return -1;
    return 0;
}

/// Planar map value plus both Wirtinger derivatives, f_z and f_zbar.
struct Jet {
    cplx value;
    cplx dz;
    cplx dzbar;

    double jacobian() const { return std::norm(dz) - std::norm(dzbar); }
};

}  // namespace htr
