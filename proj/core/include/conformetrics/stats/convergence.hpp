#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace conformetrics::stats {

struct BlockEstimate {
  std::size_t block_size = 0;
  std::size_t n_blocks = 0;
  double se = 0.0;   // sd(block means) / sqrt(n_blocks)
};

struct BlockAverageResult {
  std::vector<BlockEstimate> estimates;
  // Plateau: the first pair of successive block sizes whose SEs differ by < 5%.
  bool plateau = false;
  std::size_t plateau_block_size = 0;  // larger block size of that pair
  double plateau_se = 0.0;
};

inline constexpr double kPlateauTolerance = 0.05;

// Block-averaging standard error of the mean for each block size. Blocks are
// contiguous; trailing samples that do not fill a block are dropped. Needs at
// least 4 * max(block_sizes) samples.
BlockAverageResult block_average_se(std::span<const double> values, std::span<const std::size_t> block_sizes);

// Powers of two 1, 2, 4, ... up to n / 4.
std::vector<std::size_t> default_block_sizes(std::size_t n);

struct AutocorrResult {
  double tau_int = 1.0;              // integrated autocorrelation time, in samples
  double effective_samples = 0.0;    // n / tau_int
  std::size_t window = 0;            // summation cutoff M
  bool degenerate = false;           // zero-variance series; tau_int is defined as n
  bool window_converged = true;      // false if M >= c * tau(M) was never met
};

inline constexpr double kAutocorrWindowFactor = 5.0;

// tau_int = 1 + 2 sum_{k=1..M} rho(k), with M the first lag satisfying
// M >= 5 * tau_int(M) (self-consistent window). Needs at least 100 samples.
AutocorrResult integrated_autocorr_time(std::span<const double> values);

} // namespace conformetrics::stats
