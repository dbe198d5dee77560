#include "respscreen/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace respscreen {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_pow2(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) {
        p <<= 1;
    }
    return p;
}

}  // namespace

Fft::Fft(std::size_t size) : n_(size) {
    if (n_ == 0) {
        throw std::invalid_argument("Fft: size must be positive");
    }

    m_ = is_pow2(n_) ? n_ : next_pow2(2 * n_ - 1);

    // bit-reversal permutation and per-index twiddles for length m_
    bitrev_.assign(m_, 0);
    for (std::size_t i = 1, j = 0; i < m_; ++i) {
        std::size_t bit = m_ >> 1;
        for (; j & bit; bit >>= 1) {
            j ^= bit;
        }
        j ^= bit;
        bitrev_[i] = j;
    }
    twiddle_.resize(m_ / 2);
    for (std::size_t k = 0; k < m_ / 2; ++k) {
        const double ang = -2.0 * kPi * static_cast<double>(k) / static_cast<double>(m_);
        twiddle_[k] = {std::cos(ang), std::sin(ang)};
    }

    if (!is_pow2(n_)) {
        // chirp_[k] = exp(i pi k^2 / n); k^2 taken mod 2n to avoid precision
        // loss for large k
        chirp_.resize(n_);
        for (std::size_t k = 0; k < n_; ++k) {
            const std::size_t k2 = (k * k) % (2 * n_);
            const double ang = kPi * static_cast<double>(k2) / static_cast<double>(n_);
            chirp_[k] = {std::cos(ang), std::sin(ang)};
        }
        chirp_spec_.assign(m_, {0.0, 0.0});
        chirp_spec_[0] = chirp_[0];
        for (std::size_t k = 1; k < n_; ++k) {
            chirp_spec_[k] = chirp_[k];
            chirp_spec_[m_ - k] = chirp_[k];
        }
        radix2(chirp_spec_);
    }
}

void Fft::radix2(std::vector<std::complex<double>>& a) const {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = bitrev_[i];
        if (i < j) {
            std::swap(a[i], a[j]);
        }
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t step = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> w = twiddle_[k * step];
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

void Fft::forward(std::vector<std::complex<double>>& a) const {
    if (a.size() != n_) {
        throw std::invalid_argument("Fft::forward: length mismatch");
    }
    if (is_pow2(n_)) {
        radix2(a);
        return;
    }

    // Bluestein: X[k] = conj(c[k]) * sum_j x[j] conj(c[j]) c[k-j]
    std::vector<std::complex<double>> b(m_, {0.0, 0.0});
    for (std::size_t j = 0; j < n_; ++j) {
        b[j] = a[j] * std::conj(chirp_[j]);
    }
    radix2(b);
    for (std::size_t k = 0; k < m_; ++k) {
        b[k] *= chirp_spec_[k];
    }
    // inverse FFT of length m_ via conjugation
    for (auto& v : b) {
        v = std::conj(v);
    }
    radix2(b);
    const double scale = 1.0 / static_cast<double>(m_);
    for (std::size_t k = 0; k < n_; ++k) {
        a[k] = std::conj(b[k]) * scale * std::conj(chirp_[k]);
    }
}

void Fft::inverse(std::vector<std::complex<double>>& a) const {
    if (a.size() != n_) {
        throw std::invalid_argument("Fft::inverse: length mismatch");
    }
    for (auto& v : a) {
        v = std::conj(v);
    }
    forward(a);
    const double scale = 1.0 / static_cast<double>(n_);
    for (auto& v : a) {
        v = std::conj(v) * scale;
    }
}

std::vector<std::complex<double>> Fft::real_spectrum(std::span<const double> x) const {
    std::vector<std::complex<double>> a(n_, {0.0, 0.0});
    const std::size_t count = std::min(n_, x.size());
    for (std::size_t i = 0; i < count; ++i) {
        a[i] = {x[i], 0.0};
    }
    forward(a);
    a.resize(n_ / 2 + 1);
    return a;
}

}  // namespace respscreen
