#include "froude/kernels.hpp"

#include <atomic>
#include <stdexcept>

#include "kernels_lane.hpp"

namespace froude::kernels {

namespace {

bool cpu_has_avx2() {
#if (defined(__x86_64__) || defined(__i386__)) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

std::atomic<Backend>& backend_slot() {
    static std::atomic<Backend> slot{preferred_backend()};
    return slot;
}

constexpr double kCrestBandRel = 1e-9;

}  // namespace

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
    }
    return "unknown";
}

bool backend_supported(Backend b) {
    if (b == Backend::scalar) return true;
    return detail::avx2_compiled() && cpu_has_avx2();
}

Backend preferred_backend() {
    return backend_supported(Backend::avx2) ? Backend::avx2 : Backend::scalar;
}

Backend active_backend() { return backend_slot().load(); }

void set_backend(Backend b) {
    backend_slot().store(backend_supported(b) ? b : Backend::scalar);
}

double dj_deta_crest(double r) {
    const double r3 = r * r * r;
    const double t = 2.0 * r3 - 1.0;
    return -1.0 / (18.0 * (r3 * r * r) * (t * t));
}

double dj_deta(double eta, double r) {
    if (!(eta > 0.0)) throw std::domain_error("dj_deta: eta_hat must be positive");
    if (eta > r) throw std::domain_error("dj_deta: eta_hat exceeds r");
    if (!(2.0 * r * eta * eta > 1.0))
        throw std::domain_error("dj_deta: state below the conjugate-depth range");
    if (r - eta <= kCrestBandRel * r) return dj_deta_crest(r);
    return lane::dj_deta(eta, r);
}

void dj_deta_row(double r, const double* etas, double* out, std::size_t n) {
    const double band = kCrestBandRel * r;
    auto run = active_backend() == Backend::avx2 ? detail::dj_deta_row_avx2
                                                 : detail::dj_deta_row_scalar;
    std::size_t i = 0;
    while (i < n) {
        if (!(etas[i] > 0.0) || etas[i] > r || !(2.0 * r * etas[i] * etas[i] > 1.0)) {
            throw std::domain_error("dj_deta_row: eta_hat outside (0, r]");
        }
        if (r - etas[i] <= band) {
            out[i] = dj_deta_crest(r);
            ++i;
            continue;
        }
        std::size_t j = i + 1;
        while (j < n && etas[j] > 0.0 && etas[j] <= r && r - etas[j] > band &&
               2.0 * r * etas[j] * etas[j] > 1.0) {
            ++j;
        }
        run(r, etas + i, out + i, j - i);
        i = j;
    }
}

void bernoulli_row(const double* d, double* out, std::size_t n) {
    (active_backend() == Backend::avx2 ? detail::bernoulli_row_avx2
                                       : detail::bernoulli_row_scalar)(d, out, n);
}

void flow_force_row(const double* d, double* out, std::size_t n) {
    (active_backend() == Backend::avx2 ? detail::flow_force_row_avx2
                                       : detail::flow_force_row_scalar)(d, out, n);
}

void froude_row(const double* d, double* out, std::size_t n) {
    (active_backend() == Backend::avx2 ? detail::froude_row_avx2
                                       : detail::froude_row_scalar)(d, out, n);
}

}  // namespace froude::kernels
