#ifndef CACSIM_CHANNEL_HPP
#define CACSIM_CHANNEL_HPP

#include <cstdint>
#include <vector>

namespace cacsim {

// FIR channel with memory L plus white Gaussian noise. The tap vector has
// L + 1 entries h[0..L].
struct ChannelModel {
    std::vector<double> taps{1.0};
    double noise_variance = 0.0;
    int alphabet_M = 2;

    std::size_t memory_L() const { return taps.empty() ? 0 : taps.size() - 1; }
};

// Symbol frame in matrix form. symbols holds s[-L..k] flattened (the
// first L entries are the reference prefix); row t of the (k+1) x (L+1)
// matrix is [s[t-L], ..., s[t]], constant along diagonals.
struct ToeplitzFrame {
    std::size_t memory_L = 0;
    std::size_t rows = 0;
    std::vector<double> symbols; // rows + memory_L entries
    std::vector<double> matrix;  // row-major, rows x (memory_L + 1)
    std::vector<double> received;

    double at(std::size_t row, std::size_t col) const {
        return matrix[row * (memory_L + 1) + col];
    }
};

// i.i.d. uniform draws from the M-ary amplitude alphabet {±1, ±3, ...}
// normalized to unit average power. M must be even and >= 2.
std::vector<double> gen_symbols(int M, std::size_t count, std::uint64_t seed);

// Build the frame for symbols s[-L..k]; the caller supplies the L-symbol
// prefix at the front of the vector. Throws std::domain_error when the
// vector is too short to cover the prefix.
ToeplitzFrame build_toeplitz(const std::vector<double>& symbols, std::size_t L);

// Noiseless channel output through the frame's matrix entries, summing
// taps in ascending index order (the same order channel_output uses, so
// the two routes agree bitwise).
std::vector<double> toeplitz_apply(const ToeplitzFrame& frame, const std::vector<double>& taps);

// r[t] = sum_i h[i] * s[t-i] + z[t] with z ~ N(0, noise_variance),
// deterministic per seed. symbols must include the L-symbol prefix; the
// output has symbols.size() - L entries.
std::vector<double> channel_output(const ChannelModel& model,
                                   const std::vector<double>& symbols,
                                   std::uint64_t seed);

// Data-aided SINR estimate in dB: empirical power of the noiseless
// reconstruction over empirical power of the residual. Returns +infinity
// when the residual is exactly zero. Requires at least 100 samples.
double estimate_sinr(const std::vector<double>& received,
                     const ChannelModel& model,
                     const std::vector<double>& symbols);

} // namespace cacsim

#endif
