#pragma once

#include <cstddef>

// Arithmetic inner loops for the grid sweeps, in two equivalent builds:
// a scalar reference and an AVX2 variant picked at runtime. Both evaluate
// the same operation sequence, so with FP contraction disabled they agree
// bit for bit; the equivalence tests pin that down.

namespace froude::kernels {

enum class Backend { scalar, avx2 };

const char* backend_name(Backend b);
bool backend_supported(Backend b);

/// Best backend the current CPU supports.
Backend preferred_backend();

/// Backend used by the row kernels below. Defaults to preferred_backend().
Backend active_backend();

/// Forces a backend (test hook). Unsupported requests fall back to scalar.
void set_backend(Backend b);

// ---------------------------------------------------------------------------
// Moderate-case derivative dJ/d(eta)

/// Closed-form derivative of the crest functional J(eta, r) in eta.
/// Continuous up to eta = r; within |r - eta| <= 1e-9 r the crest limit
/// is used to avoid the vanishing sqrt(r - eta) terms.
double dj_deta(double eta, double r);

/// Value at the crest edge eta = r: -1 / (18 r^5 (2 r^3 - 1)^2).
double dj_deta_crest(double r);

/// out[i] = dJ/d(eta)(etas[i], r). Lanes inside the crest band get the
/// crest limit; the rest go through the active backend.
void dj_deta_row(double r, const double* etas, double* out, std::size_t n);

// ---------------------------------------------------------------------------
// Uniform-stream relation rows (lemma sweeps, roundtrip sweeps)

void bernoulli_row(const double* d, double* out, std::size_t n);   // 1/(2d^2)+d
void flow_force_row(const double* d, double* out, std::size_t n);  // d^2/2+1/d
void froude_row(const double* d, double* out, std::size_t n);      // d^(-3/2)

namespace detail {
void dj_deta_row_scalar(double r, const double* etas, double* out, std::size_t n);
void bernoulli_row_scalar(const double* d, double* out, std::size_t n);
void flow_force_row_scalar(const double* d, double* out, std::size_t n);
void froude_row_scalar(const double* d, double* out, std::size_t n);

bool avx2_compiled();
void dj_deta_row_avx2(double r, const double* etas, double* out, std::size_t n);
void bernoulli_row_avx2(const double* d, double* out, std::size_t n);
void flow_force_row_avx2(const double* d, double* out, std::size_t n);
void froude_row_avx2(const double* d, double* out, std::size_t n);
}

}  // namespace froude::kernels
