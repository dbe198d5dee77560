#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace respscreen {

/// Fixed-size complex FFT plan. Power-of-two sizes run iterative radix-2
/// Cooley-Tukey; everything else goes through Bluestein's chirp-z transform
/// on a padded power-of-two convolution, so any size is O(n log n).
class Fft {
public:
    explicit Fft(std::size_t size);

    std::size_t size() const { return n_; }

    void forward(std::vector<std::complex<double>>& a) const;
    void inverse(std::vector<std::complex<double>>& a) const;

    /// Spectrum of a real signal: bins 0 .. n/2 of the size-n transform.
    /// Input shorter than n is zero-padded, longer input is truncated.
    std::vector<std::complex<double>> real_spectrum(std::span<const double> x) const;

private:
    void radix2(std::vector<std::complex<double>>& a) const;

    std::size_t n_ = 0;
    // radix-2 state (for n_ itself when it is a power of two, or for the
    // Bluestein convolution length m_)
    std::size_t m_ = 0;
    std::vector<std::size_t> bitrev_;
    std::vector<std::complex<double>> twiddle_;
    // Bluestein state
    std::vector<std::complex<double>> chirp_;      // exp(+i pi k^2 / n)
    std::vector<std::complex<double>> chirp_spec_; // FFT of the padded chirp filter
};

}  // namespace respscreen
