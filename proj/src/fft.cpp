#include "relwave/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace relwave {

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

void fft_inplace(std::span<cdouble> a, bool inverse) {
    const std::size_t n = a.size();
    if (!is_power_of_two(n)) throw std::invalid_argument("fft_inplace: size must be a power of two");
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const double dir = inverse ? 1.0 : -1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = dir * 2.0 * std::numbers::pi / static_cast<double>(len);
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cdouble w = std::polar(1.0, ang * static_cast<double>(k));
                const cdouble u = a[i + k];
                const cdouble v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
    if (inverse) {
        const double inv_n = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= inv_n;
    }
}

std::vector<cdouble> centered_transform(std::span<const cdouble> g, double da,
                                        int sign, double coeff) {
    const std::size_t n = g.size();
    if (!is_power_of_two(n)) throw std::invalid_argument("centered_transform: size must be a power of two");
    if (!(da > 0.0)) throw std::invalid_argument("centered_transform: need da > 0");
    if (sign != 1 && sign != -1) throw std::invalid_argument("centered_transform: sign must be +-1");

    std::vector<cdouble> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = (j % 2 == 0) ? g[j] : -g[j];
    fft_inplace(out, sign == 1);
    if (sign == 1) {
        for (auto& x : out) x *= static_cast<double>(n);  // undo the 1/N of the inverse pass
    }
    // global phase exp(sign*i*pi*N/2); exact +-1 for even N
    const double phase = (n / 2) % 2 == 0 ? 1.0 : -1.0;
    for (std::size_t m = 0; m < n; ++m) {
        const double s = (m % 2 == 0) ? 1.0 : -1.0;
        out[m] *= coeff * phase * s;
    }
    return out;
}

}  // namespace relwave
