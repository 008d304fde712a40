#include "cacsim/channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "cacsim/rng.hpp"

namespace cacsim {

std::vector<double> gen_symbols(int M, std::size_t count, std::uint64_t seed) {
    if (M < 2 || M % 2 != 0)
        throw std::domain_error("gen_symbols: amplitude alphabet requires even M >= 2");
    if (count < 1) throw std::domain_error("gen_symbols: count must be >= 1");

    // Levels ±1, ±3, ..., ±(M-1); average power (M^2 - 1) / 3.
    const double scale = 1.0 / std::sqrt((static_cast<double>(M) * M - 1.0) / 3.0);
    Rng rng(seed);
    std::vector<double> out(count);
    for (auto& s : out) {
        const std::uint64_t idx = rng.below(static_cast<std::uint64_t>(M));
        const double level = 2.0 * static_cast<double>(idx) - (M - 1);
        s = level * scale;
    }
    return out;
}

ToeplitzFrame build_toeplitz(const std::vector<double>& symbols, std::size_t L) {
    if (symbols.size() < L + 1)
        throw std::domain_error("build_toeplitz: need at least L + 1 symbols (L-symbol prefix)");

    ToeplitzFrame frame;
    frame.memory_L = L;
    frame.rows = symbols.size() - L;
    frame.symbols = symbols;
    frame.matrix.resize(frame.rows * (L + 1));
    for (std::size_t t = 0; t < frame.rows; ++t) {
        for (std::size_t c = 0; c <= L; ++c) {
            frame.matrix[t * (L + 1) + c] = symbols[t + c]; // s[t - L + c] in frame indexing
        }
    }
    return frame;
}

std::vector<double> toeplitz_apply(const ToeplitzFrame& frame, const std::vector<double>& taps) {
    const std::size_t L = frame.memory_L;
    if (taps.size() != L + 1)
        throw std::domain_error("toeplitz_apply: tap vector must have L + 1 entries");
    std::vector<double> out(frame.rows);
    for (std::size_t t = 0; t < frame.rows; ++t) {
        double acc = 0.0;
        for (std::size_t i = 0; i <= L; ++i) {
            acc += taps[i] * frame.at(t, L - i); // h[i] * s[t - i]
        }
        out[t] = acc;
    }
    return out;
}

std::vector<double> channel_output(const ChannelModel& model,
                                   const std::vector<double>& symbols,
                                   std::uint64_t seed) {
    const std::size_t L = model.memory_L();
    if (model.taps.empty()) throw std::domain_error("channel_output: empty tap vector");
    if (symbols.size() < L + 1)
        throw std::domain_error("channel_output: symbols must cover the L-symbol prefix");
    if (model.noise_variance < 0.0)
        throw std::domain_error("channel_output: noise variance must be >= 0");

    const std::size_t n = symbols.size() - L;
    const double sigma = std::sqrt(model.noise_variance);
    Rng rng(seed);
    std::vector<double> r(n);
    for (std::size_t t = 0; t < n; ++t) {
        double acc = 0.0;
        for (std::size_t i = 0; i <= L; ++i) {
            acc += model.taps[i] * symbols[t + L - i];
        }
        r[t] = sigma > 0.0 ? acc + sigma * rng.normal() : acc;
    }
    return r;
}

double estimate_sinr(const std::vector<double>& received,
                     const ChannelModel& model,
                     const std::vector<double>& symbols) {
    const std::size_t L = model.memory_L();
    if (received.size() < 100)
        throw std::domain_error("estimate_sinr: need at least 100 samples");
    if (symbols.size() < received.size() + L)
        throw std::domain_error("estimate_sinr: symbol vector does not cover the received span");

    double signal_power = 0.0;
    double residual_power = 0.0;
    for (std::size_t t = 0; t < received.size(); ++t) {
        double y = 0.0;
        for (std::size_t i = 0; i <= L; ++i) y += model.taps[i] * symbols[t + L - i];
        signal_power += y * y;
        const double e = received[t] - y;
        residual_power += e * e;
    }
    if (residual_power == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(signal_power / residual_power);
}

} // namespace cacsim
