#include "fourier.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace mu4 {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// |cos(pi * x / 2)| with the argument reduced mod 2 first; the reduction is
// exact for |x| below 2^53 and keeps large arguments accurate.
double abs_cos_half_pi(double x) {
    double r = x - 2.0 * std::floor(x / 2.0);
    return std::fabs(std::cos(kPi * r / 2.0));
}

double modulus_truncated(double xi, int terms) {
    double prod = 1.0;
    double x = xi;
    for (int k = 0; k < terms && prod != 0.0; ++k) {
        prod *= abs_cos_half_pi(x);
        x /= 4.0;
    }
    return prod;
}

}  // namespace

MuHatValue mu4_hat(double xi, int terms) {
    if (terms < 1) throw std::invalid_argument("need at least one product term");
    std::complex<double> value(1.0, 0.0);
    double x = xi;
    for (int k = 0; k < terms; ++k) {
        double theta = kPi * x;
        value *= std::complex<double>((1.0 + std::cos(theta)) / 2.0, -std::sin(theta) / 2.0);
        x /= 4.0;
    }
    MuHatValue out;
    out.value = value;
    out.modulus = std::abs(value);
    out.tail_abs_bound = 2.0 * kPi / 3.0 * std::fabs(xi) * std::pow(4.0, -terms);
    return out;
}

bool is_zero_exact(const Int& z) {
    if (z == 0) throw std::invalid_argument("the transform equals 1 at 0, not 0");
    Int u = abs(z);
    while (mpz_divisible_ui_p(u.get_mpz_t(), 4)) u /= 4;
    return mpz_odd_p(u.get_mpz_t()) != 0;
}

OrthogonalityReport check_orthogonality(const std::vector<Int>& lambda) {
    std::vector<Int> xs = lambda;
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    OrthogonalityReport rep;
    std::vector<Int> diffs;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            ++rep.pairs_checked;
            Int d = xs[j] - xs[i];
            if (!is_zero_exact(d)) {
                rep.orthogonal = false;
                rep.offending_pair = {xs[i], xs[j]};
                return rep;
            }
            diffs.push_back(std::move(d));
        }
    }
    rep.orthogonal = true;

    // Numeric cross-validation on a deterministic 5% sample.
    std::mt19937_64 rng(0x6f727468);
    std::size_t sample = std::max<std::size_t>(diffs.empty() ? 0 : 1, diffs.size() / 20);
    for (std::size_t i = 0; i < sample; ++i) {
        const Int& d = diffs[rng() % diffs.size()];
        double v = modulus_truncated(d.get_d(), 25);
        rep.numeric_max_modulus = std::max(rep.numeric_max_modulus, v);
        ++rep.numeric_samples;
        if (v >= 1e-8) {
            rep.orthogonal = false;
            return rep;
        }
    }
    return rep;
}

void TruncationParams::validate() const {
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    if (terms < depth + 5)
        throw std::invalid_argument("terms must cover the depth: need terms >= depth + 5");
    if (grid_points < 16) throw std::invalid_argument("grid must have >= 16 points");
    if (!(tolerance > 0)) throw std::invalid_argument("tolerance must be positive");
}

FrameReport frame_function(const std::vector<std::pair<Int, int>>& nested,
                           const TruncationParams& params,
                           std::vector<int> checkpoint_depths) {
    params.validate();

    std::vector<Int> values;
    values.reserve(nested.size());
    double max_abs = 1.0;
    for (std::size_t i = 0; i < nested.size(); ++i) {
        if (i && nested[i].second < nested[i - 1].second)
            throw std::invalid_argument("enumeration must be ordered by depth");
        if (nested[i].second > params.depth)
            throw std::invalid_argument("enumeration exceeds the requested depth");
        values.push_back(nested[i].first);
        max_abs = std::max(max_abs, std::fabs(nested[i].first.get_d()));
    }

    FrameReport rep;
    rep.params = params;
    auto orth = check_orthogonality(values);
    rep.orthogonal = orth.orthogonal;
    if (!orth.orthogonal)
        throw std::domain_error("frame function needs an orthogonal frequency set");

    std::sort(checkpoint_depths.begin(), checkpoint_depths.end());
    rep.checkpoint_depths = checkpoint_depths;

    // Relative truncation error: each factor tail multiplies |mu_hat|^2 by
    // (1 +- eps)^2 with eps = (2 pi / 3) max|xi - lambda| 4^-terms.
    double eps = 2.0 * kPi / 3.0 * (max_abs + 1.0) * std::pow(4.0, -params.terms);
    rep.tail_bound = 1.0 / ((1.0 - eps) * (1.0 - eps)) - 1.0;

    const int g = params.grid_points;
    rep.grid.resize(static_cast<std::size_t>(g));
    for (int i = 0; i < g; ++i) rep.grid[static_cast<std::size_t>(i)] = double(i) / g;

    auto q_of = [&](double xi, std::size_t n_terms) {
        double q = 0.0;
        for (std::size_t t = 0; t < n_terms; ++t) {
            double v = modulus_truncated(xi - values[t].get_d(), params.terms);
            q += v * v;
        }
        return q;
    };

    rep.q.assign(static_cast<std::size_t>(g), 0.0);
    rep.q_at_depth.assign(checkpoint_depths.size(), std::vector<double>());
    for (auto& row : rep.q_at_depth) row.assign(static_cast<std::size_t>(g), 0.0);

    for (int i = 0; i < g; ++i) {
        double xi = rep.grid[static_cast<std::size_t>(i)];
        double acc = 0.0;
        std::size_t t = 0;
        std::size_t cp = 0;
        for (; t < values.size(); ++t) {
            // Record nested partial sums when crossing checkpoint depths.
            while (cp < checkpoint_depths.size() &&
                   nested[t].second > checkpoint_depths[cp]) {
                rep.q_at_depth[cp][static_cast<std::size_t>(i)] = acc;
                ++cp;
            }
            double v = modulus_truncated(xi - values[t].get_d(), params.terms);
            acc += v * v;
        }
        while (cp < checkpoint_depths.size()) {
            rep.q_at_depth[cp][static_cast<std::size_t>(i)] = acc;
            ++cp;
        }
        rep.q[static_cast<std::size_t>(i)] = acc;
    }

    rep.min_q = *std::min_element(rep.q.begin(), rep.q.end());
    rep.max_q = *std::max_element(rep.q.begin(), rep.q.end());

    // Refine around the minimum at 4x density before judging a deficit.
    std::size_t arg_min = static_cast<std::size_t>(
        std::min_element(rep.q.begin(), rep.q.end()) - rep.q.begin());
    double h = 1.0 / g;
    double best_xi = rep.grid[arg_min];
    double best_q = rep.min_q;
    for (int j = -4; j <= 4; ++j) {
        double xi = rep.grid[arg_min] + j * h / 4.0;
        double q = q_of(xi, values.size());
        if (q < best_q) {
            best_q = q;
            best_xi = xi;
        }
    }
    rep.refined_min_xi = best_xi;
    rep.refined_min_q = best_q;

    // Heuristic labels only; exact verdicts come from the decision layer.
    if (rep.min_q >= 0.98) {
        rep.verdict = "spectrum";
    } else if (rep.refined_min_q <= 0.9) {
        rep.verdict = "non-spectrum";
    } else {
        rep.verdict = "unknown";
    }
    return rep;
}

}  // namespace mu4
