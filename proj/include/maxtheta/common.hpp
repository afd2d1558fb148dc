#ifndef MAXTHETA_COMMON_HPP
#define MAXTHETA_COMMON_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace maxtheta {

inline constexpr double kPi = std::numbers::pi;

/// Controls every series truncation in the library.  A sum is accepted once
/// the certified remainder bound drops below rel_tol times the magnitude of
/// the dominant term (not the possibly cancelled partial sum).
struct SeriesBudget {
    double rel_tol = 1e-13;
    long max_terms = 1'000'000;
};

// ---------------------------------------------------------------------------
// Error types
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonPositiveParameter : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct NotPositiveDefinite : Error { using Error::Error; };
struct NotReduced : Error { using Error::Error; };
struct DomainViolation : Error { using Error::Error; };
struct NonSummablePotential : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };
struct PoleOrDivergent : Error { using Error::Error; };
struct DegenerateInput : Error { using Error::Error; };
struct OddCount : Error { using Error::Error; };
struct TooLargeForExhaustive : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

inline void require_positive(double v, const char* name) {
    if (!(v > 0.0)) throw NonPositiveParameter(std::string(name) + " must be > 0");
}

inline void check_budget(const SeriesBudget& b) {
    if (!(b.rel_tol > 0.0) || !(b.rel_tol < 1.0))
        throw NonPositiveParameter("SeriesBudget.rel_tol must lie in (0,1)");
    if (b.max_terms <= 0)
        throw NonPositiveParameter("SeriesBudget.max_terms must be positive");
}

// ---------------------------------------------------------------------------
// Compensated accumulation
// ---------------------------------------------------------------------------

/// Kahan-Neumaier compensated sum; keeps the truncation certificates honest
/// when partial sums cancel.
class KahanSum {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace maxtheta

#endif
