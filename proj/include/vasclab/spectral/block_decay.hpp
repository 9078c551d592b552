#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "vasclab/diagnostics/fit.hpp"
#include "vasclab/spectral/green.hpp"

namespace vasclab::spectral {

struct BlockDecayOptions {
  std::vector<double> times;   // empty: 24 geometric samples on [200, 20000] / alpha
  double gaussian_width = 1.0; // w_0 = unit-mass Gaussian of this standard deviation
  int x_samples = 33;          // L^inf: samples per axis across +-4 sqrt(D_eff t)
  double tolerance = 0.1;
  double min_r2 = 0.98;
};

/// Decay of one block L_a D^beta K(t) L_b w_0 of the diffusive Green function.
struct BlockDecay {
  int out_block = 0;  // kConservedBlock or kDissipatedBlock
  int in_block = 0;
  std::string block_id;  // "L0<-L0", "L0<-L-", ...
  double p = 2.0;
  std::vector<int> beta;
  std::vector<double> times;
  std::vector<double> norms;
  diagnostics::DecayFit fit;
};

/// (n/2)(1 - 1/p) + |beta|/2 + {0, 1/2, 1/2, 1} for the four blocks.
double reference_block_exponent(int dim, double p, int beta_order, int out_block, int in_block);

/// Measures all four blocks. p is 2 or INFINITY; beta has one entry per axis.
/// Throws UnreliableFitError when a block's log-log fit has R^2 < min_r2.
std::vector<BlockDecay> measure_block_decay(const GreenModeReport& report, double p, const std::vector<int>& beta,
                                            const BlockDecayOptions& options = {});

/// Columns time,block_id,p,beta,norm.
void write_block_decay_csv(const std::filesystem::path& path, const std::vector<BlockDecay>& blocks);

}  // namespace vasclab::spectral
