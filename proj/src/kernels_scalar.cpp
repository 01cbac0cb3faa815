#include "froude/kernels.hpp"

#include "kernels_lane.hpp"

namespace froude::kernels::detail {

void dj_deta_row_scalar(double r, const double* etas, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = lane::dj_deta(etas[i], r);
}

void bernoulli_row_scalar(const double* d, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = lane::bernoulli(d[i]);
}

void flow_force_row_scalar(const double* d, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = lane::flow_force(d[i]);
}

void froude_row_scalar(const double* d, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = lane::froude(d[i]);
}

}  // namespace froude::kernels::detail
