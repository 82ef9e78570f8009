#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "words.hpp"

namespace mu4 {

/// Truncated transform of the middle-fourth Cantor measure. The invariance
/// relation under x/4 and (x+2)/4 gives the product
///   mu4_hat(xi) = prod_{k>=0} (1 + e^{-i pi xi / 4^k}) / 2,
/// whose factor moduli are |cos(pi xi / (2*4^k))|. Truncating after K
/// factors leaves a tail within (2 pi / 3) |xi| 4^{-K} of 1 in absolute
/// value, since each remaining factor differs from 1 by at most half its
/// angle.
struct MuHatValue {
    std::complex<double> value;
    double modulus = 0.0;
    double tail_abs_bound = 0.0;  // |true - truncated| <= this
};

MuHatValue mu4_hat(double xi, int terms);

/// Exact zero test for nonzero integers: the transform vanishes exactly on
/// the odd integers scaled by powers of 4, so strip factors of 4 and test
/// the cofactor for oddness. Rejects z == 0 (the transform is 1 there).
bool is_zero_exact(const Int& z);

struct OrthogonalityReport {
    bool orthogonal = false;
    std::size_t pairs_checked = 0;
    std::optional<std::pair<Int, Int>> offending_pair;
    std::size_t numeric_samples = 0;
    double numeric_max_modulus = 0.0;  // over the sampled pairs
};

/// Exact pairwise-difference check through is_zero_exact, with a 5% random
/// sample cross-validated numerically (|mu4_hat| < 1e-8 at 25 terms).
OrthogonalityReport check_orthogonality(const std::vector<Int>& lambda);

struct TruncationParams {
    int depth = 12;        // truncation level of the frequency set
    int terms = 25;        // product factors
    int grid_points = 256; // per unit interval
    double tolerance = 1e-9;

    void validate() const;
};

struct FrameReport {
    TruncationParams params;
    std::vector<double> grid;  // xi values in [0,1)
    std::vector<double> q;     // frame function at full depth
    std::vector<int> checkpoint_depths;
    std::vector<std::vector<double>> q_at_depth;  // one row per checkpoint
    double min_q = 0.0;
    double max_q = 0.0;
    double tail_bound = 0.0;  // relative truncation error of each |mu_hat|^2
    bool orthogonal = false;
    std::string verdict;  // "spectrum" | "non-spectrum" | "unknown" (heuristic)
    double refined_min_xi = 0.0;
    double refined_min_q = 0.0;
};

/// Frame function Q(xi) = sum |mu4_hat(xi - lambda)|^2 over a depth-nested
/// enumeration. Accumulating in nesting order makes the checkpoint rows
/// pointwise nondecreasing by construction. Rejects non-orthogonal input.
FrameReport frame_function(const std::vector<std::pair<Int, int>>& nested,
                           const TruncationParams& params,
                           std::vector<int> checkpoint_depths = {});

}  // namespace mu4
