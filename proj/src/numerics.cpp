#include "froude/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

namespace froude::numerics {

namespace {

constexpr int kScanIntervals = 1000;

double checked_eval(const std::function<double(double)>& f, double x) {
    double v = f(x);
    if (!std::isfinite(v)) {
        throw EvaluationError("function not finite at x = " + std::to_string(x), x, 0.0);
    }
    return v;
}

}  // namespace

RootResult find_root(const std::function<double(double)>& f,
                     double lo, double hi, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("find_root: tol must be positive");
    if (!(lo < hi)) throw std::invalid_argument("find_root: need lo < hi");

    // Pre-scan to count sign changes and isolate the root cell.
    const double step = (hi - lo) / kScanIntervals;
    double prev_x = lo;
    double prev_f = checked_eval(f, lo);
    int changes = 0;
    Bracket cell;
    double exact_hit = std::numeric_limits<double>::quiet_NaN();
    if (prev_f == 0.0) {
        ++changes;
        exact_hit = lo;
    }
    for (int k = 1; k <= kScanIntervals; ++k) {
        const double x = (k == kScanIntervals) ? hi : lo + k * step;
        const double fx = checked_eval(f, x);
        if (fx == 0.0) {
            ++changes;
            exact_hit = x;
        } else if (prev_f != 0.0 && std::signbit(fx) != std::signbit(prev_f)) {
            ++changes;
            cell = Bracket{prev_x, x, prev_f, fx};
        }
        prev_x = x;
        prev_f = fx;
    }
    if (changes == 0) {
        throw BracketError("find_root: no sign change in [" + std::to_string(lo) +
                           ", " + std::to_string(hi) + "]");
    }
    if (changes > 1) {
        throw AmbiguousBracketError(
            "find_root: " + std::to_string(changes) +
                " sign changes in the interval; narrow the bracket",
            changes);
    }
    if (std::isfinite(exact_hit)) {
        RootResult res;
        res.x = exact_hit;
        res.residual = 0.0;
        res.iterations = 0;
        res.bracket = Bracket{exact_hit, exact_hit, 0.0, 0.0};
        res.unique_sign_change = true;
        return res;
    }

    // Bisect the isolated cell down to width tol.
    double a = cell.lo, b = cell.hi;
    double fa = cell.f_lo;
    int iterations = 0;
    while (b - a > tol) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;  // hit representable resolution
        const double fm = checked_eval(f, mid);
        ++iterations;
        if (fm == 0.0) {
            a = b = mid;
            break;
        }
        if (std::signbit(fm) == std::signbit(fa)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }

    RootResult res;
    res.x = 0.5 * (a + b);
    res.residual = f(res.x);
    res.iterations = iterations;
    res.bracket = cell;
    res.unique_sign_change = true;
    return res;
}

namespace {

double simpson(double fa, double fm, double fb, double h) {
    return (fa + 4.0 * fm + fb) * h / 6.0;
}

struct QuadContext {
    const std::function<double(double)>& f;
    double tol_floor;   // tolerance halving stops here so integrable
                        // sqrt-type endpoints converge within the depth cap
    int max_depth;
    bool exhausted = false;
};

double adaptive_step(QuadContext& ctx, double a, double b, double fa, double fm,
                     double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = checked_eval(ctx.f, lm);
    const double frm = checked_eval(ctx.f, rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (std::fabs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    if (depth >= ctx.max_depth) {
        ctx.exhausted = true;  // keep the best estimate, report at top level
        return left + right + delta / 15.0;
    }
    const double half_tol = std::max(0.5 * tol, ctx.tol_floor);
    return adaptive_step(ctx, a, m, fa, flm, fm, left, half_tol, depth + 1) +
           adaptive_step(ctx, m, b, fm, frm, fb, right, half_tol, depth + 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f,
                          double a, double b, double tol, int max_depth) {
    if (!(tol > 0.0)) throw std::invalid_argument("integrate_adaptive: tol must be positive");
    if (a == b) return 0.0;
    const double sign = a < b ? 1.0 : -1.0;
    const double lo = std::min(a, b), hi = std::max(a, b);
    QuadContext ctx{f, tol / 256.0, max_depth};
    const double fa = checked_eval(f, lo);
    const double m = 0.5 * (lo + hi);
    const double fm = checked_eval(f, m);
    const double fb = checked_eval(f, hi);
    const double whole = simpson(fa, fm, fb, hi - lo);
    const double result = sign * adaptive_step(ctx, lo, hi, fa, fm, fb, whole, tol, 0);
    if (ctx.exhausted) {
        throw AccuracyError("integrate_adaptive: depth exhausted", result);
    }
    return result;
}

double finite_difference(const std::function<double(double)>& f,
                         double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

void GridSpec::validate() const {
    if (nx < 2 || ny < 2) throw std::invalid_argument("GridSpec: nx, ny must be >= 2");
    if (!(x_lo < x_hi) || !(y_lo < y_hi))
        throw std::invalid_argument("GridSpec: ranges must be non-degenerate");
}

namespace detail {

void parallel_blocks(long count, int workers,
                     const std::function<void(long, long, int)>& fn) {
    if (workers < 1) workers = 1;
    if (workers == 1 || count <= 1) {
        fn(0, count, 0);
        return;
    }
    workers = static_cast<int>(std::min<long>(workers, count));
    const long chunk = (count + workers - 1) / workers;
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    for (int w = 0; w < workers; ++w) {
        const long first = w * chunk;
        const long last = std::min(count, first + chunk);
        if (first >= last) break;
        threads.emplace_back([&, first, last, w] {
            try {
                fn(first, last, w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace detail

namespace {

struct BlockMax {
    double value = -std::numeric_limits<double>::infinity();
    double x = 0.0, y = 0.0;
    long evaluated = 0;
};

GridCertificate sweep(const GridSpec& region, const DomainFn& within, int workers,
                      const std::function<void(double, const std::vector<double>&,
                                               std::vector<double>&)>& eval_row) {
    region.validate();
    const int ny_eff = region.y_count();
    std::vector<BlockMax> blocks;
    const int nblocks = std::max(1, std::min(workers, region.nx));
    blocks.resize(nblocks);
    const long chunk = (region.nx + nblocks - 1) / nblocks;

    detail::parallel_blocks(nblocks, workers, [&](long bfirst, long blast, int) {
        for (long blk = bfirst; blk < blast; ++blk) {
            BlockMax local;
            std::vector<double> ys, vals;
            ys.reserve(ny_eff);
            const long i0 = blk * chunk;
            const long i1 = std::min<long>(region.nx, i0 + chunk);
            for (long i = i0; i < i1; ++i) {
                const double x = region.x_at(static_cast<int>(i));
                ys.clear();
                for (int j = 0; j < ny_eff; ++j) {
                    const double y = region.y_at(j);
                    if (!within || within(x, y)) ys.push_back(y);
                }
                if (ys.empty()) continue;
                vals.assign(ys.size(), 0.0);
                eval_row(x, ys, vals);
                for (std::size_t j = 0; j < ys.size(); ++j) {
                    if (!std::isfinite(vals[j])) {
                        throw EvaluationError("certify_negative: non-finite sample", x, ys[j]);
                    }
                    if (vals[j] > local.value) {
                        local.value = vals[j];
                        local.x = x;
                        local.y = ys[j];
                    }
                }
                local.evaluated += static_cast<long>(ys.size());
            }
            blocks[blk] = local;
        }
    });

    GridCertificate cert;
    cert.region = region;
    BlockMax best;
    for (const auto& blk : blocks) {
        best.evaluated += blk.evaluated;
        if (blk.value > best.value) {
            best.value = blk.value;
            best.x = blk.x;
            best.y = blk.y;
        }
    }
    if (best.evaluated == 0) {
        throw std::invalid_argument("certify_negative: region contains no admissible points");
    }
    cert.max_value = best.value;
    cert.worst_x = best.x;
    cert.worst_y = best.y;
    cert.margin = -best.value;
    cert.evaluated = best.evaluated;
    cert.rigor = Rigor::sampled;
    return cert;
}

}  // namespace

GridCertificate certify_negative(const Point2Fn& f, const GridSpec& region,
                                 const DomainFn& within, int workers) {
    return sweep(region, within, workers,
                 [&](double x, const std::vector<double>& ys, std::vector<double>& out) {
                     for (std::size_t j = 0; j < ys.size(); ++j) out[j] = f(x, ys[j]);
                 });
}

GridCertificate certify_negative_rows(const RowFn& eval, const GridSpec& region,
                                      const DomainFn& within, int workers) {
    return sweep(region, within, workers,
                 [&](double x, const std::vector<double>& ys, std::vector<double>& out) {
                     eval(x, ys.data(), out.data(), ys.size());
                 });
}

}  // namespace froude::numerics
