#pragma once
#include <complex>
#include <span>
#include <vector>

namespace relwave {

using cdouble = std::complex<double>;

/// In-place radix-2 FFT. Size must be a power of two.
/// Forward convention X_k = sum_n x_n exp(-2*pi*i*k*n/N); the inverse
/// includes the 1/N factor.
void fft_inplace(std::span<cdouble> a, bool inverse);

bool is_power_of_two(std::size_t n);

/// DFT between centered lattices: given samples g_j on the lattice
/// a_j = (j - N/2)*da, returns G_m on the dual lattice b_m = (m - N/2)*db,
/// db = 2*pi/(N*da), with G_m = coeff * sum_j g_j exp(sign*i*a_j*b_m).
/// Computed exactly via FFT plus alternating-sign prefactors.
std::vector<cdouble> centered_transform(std::span<const cdouble> g, double da,
                                        int sign, double coeff);

}  // namespace relwave
