#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace froude::numerics {

// ---------------------------------------------------------------------------
// Errors

/// No sign change found in the requested interval.
struct BracketError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// More than one sign change in the requested interval; caller must narrow.
struct AmbiguousBracketError : std::runtime_error {
    int sign_changes;
    AmbiguousBracketError(const std::string& what, int changes)
        : std::runtime_error(what), sign_changes(changes) {}
};

/// Quadrature recursion depth exhausted before reaching the error target.
struct AccuracyError : std::runtime_error {
    double estimate;
    AccuracyError(const std::string& what, double achieved)
        : std::runtime_error(what), estimate(achieved) {}
};

/// A sample evaluated to NaN/inf inside the requested region.
struct EvaluationError : std::runtime_error {
    double x, y;
    EvaluationError(const std::string& what, double px, double py)
        : std::runtime_error(what), x(px), y(py) {}
};

// ---------------------------------------------------------------------------
// Root finding

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
    double f_lo = 0.0;
    double f_hi = 0.0;
};

struct RootResult {
    double x = 0.0;
    double residual = 0.0;   // f(x); reported, not enforced
    int iterations = 0;
    Bracket bracket;         // pre-scan cell that isolated the root
    bool unique_sign_change = false;
};

/// Bracketed root of f on [lo, hi]. A 1000-point pre-scan locates sign
/// changes first: zero changes raises BracketError, more than one raises
/// AmbiguousBracketError. The isolated cell is then bisected until its
/// width is at most tol.
RootResult find_root(const std::function<double(double)>& f,
                     double lo, double hi, double tol = 1e-12);

// ---------------------------------------------------------------------------
// Quadrature and differences

/// Adaptive Simpson with absolute error target tol. Exact on cubics over a
/// single panel. Throws AccuracyError past max_depth subdivisions.
double integrate_adaptive(const std::function<double(double)>& f,
                          double a, double b, double tol, int max_depth = 40);

/// Central difference (f(x+h) - f(x-h)) / (2h).
double finite_difference(const std::function<double(double)>& f,
                         double x, double h);

// ---------------------------------------------------------------------------
// Grid sign certification

enum class BoundaryPolicy { include, exclude_singular_edge };

struct GridSpec {
    double x_lo = 0.0, x_hi = 0.0;
    double y_lo = 0.0, y_hi = 0.0;
    int nx = 2, ny = 2;
    // exclude_singular_edge drops the y = y_hi row, where the sampled
    // function may be singular.
    BoundaryPolicy boundary = BoundaryPolicy::include;

    void validate() const;
    double x_at(int i) const { return x_lo + (x_hi - x_lo) * i / (nx - 1); }
    double y_at(int j) const { return y_lo + (y_hi - y_lo) * j / (ny - 1); }
    int y_count() const {
        return boundary == BoundaryPolicy::exclude_singular_edge ? ny - 1 : ny;
    }
};

enum class Rigor { sampled, chain_analytic };

struct GridCertificate {
    GridSpec region;
    double max_value = 0.0;
    double worst_x = 0.0, worst_y = 0.0;
    double margin = 0.0;     // -max_value when certifying negativity
    Rigor rigor = Rigor::sampled;
    long evaluated = 0;
    bool passed() const { return max_value < 0.0; }
};

using Point2Fn = std::function<double(double, double)>;
using DomainFn = std::function<bool(double, double)>;
/// Fills out[i] = f(x, ys[i]) for one grid row at fixed x.
using RowFn = std::function<void(double, const double*, double*, std::size_t)>;

/// Samples f over the grid and certifies max < 0. Points where `within`
/// is false are skipped (the default accepts everything). Fans out over
/// row blocks; the merge is a max of maxima taken in block order, so the
/// result does not depend on the worker count.
GridCertificate certify_negative(const Point2Fn& f, const GridSpec& region,
                                 const DomainFn& within = {}, int workers = 1);

/// Row-batched variant of certify_negative for vectorized kernels.
GridCertificate certify_negative_rows(const RowFn& eval, const GridSpec& region,
                                      const DomainFn& within = {}, int workers = 1);

namespace detail {
/// Runs fn(first, last) over [0, count) split into `workers` contiguous
/// blocks; exceptions from workers are rethrown on the calling thread.
void parallel_blocks(long count, int workers,
                     const std::function<void(long, long, int)>& fn);
}

}  // namespace froude::numerics
