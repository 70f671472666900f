#include <algorithm>
#include <cmath>
#include <limits>

#include "albench/classifier.hpp"
#include "albench/errors.hpp"

namespace albench {

double CalibrationModel::probability(double decision) const {
    const double z = decision * A + B;
    const double p = z >= 0.0 ? std::exp(-z) / (1.0 + std::exp(-z)) : 1.0 / (1.0 + std::exp(z));
    // Keep p inside the open interval even where exp under/overflows.
    constexpr double kLo = std::numeric_limits<double>::denorm_min();
    constexpr double kHi = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
    return std::clamp(p, kLo, kHi);
}

CalibrationModel fit_sigmoid(std::span<const double> f, std::span<const int> y) {
    if (f.size() != y.size()) throw ArgumentError("fit_sigmoid: size mismatch");
    double n_pos = 0.0;
    double n_neg = 0.0;
    for (int label : y) (label > 0 ? n_pos : n_neg) += 1.0;
    if (n_pos == 0.0 || n_neg == 0.0) throw ArgumentError("fit_sigmoid: need both classes");

    const double hi = (n_pos + 1.0) / (n_pos + 2.0);
    const double lo = 1.0 / (n_neg + 2.0);
    const std::size_t n = f.size();
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = y[i] > 0 ? hi : lo;

    // Constant decisions leave the slope unidentified; the flat sigmoid at
    // the mean target is the maximum-likelihood fit.
    if (std::all_of(f.begin(), f.end(), [&](double v) { return v == f[0]; })) {
        double mean = 0.0;
        for (double v : t) mean += v;
        mean /= static_cast<double>(n);
        return {0.0, std::log((1.0 - mean) / mean)};
    }

    constexpr int kMaxIter = 100;
    constexpr double kMinStep = 1e-10;
    constexpr double kSigma = 1e-12;
    constexpr double kEps = 1e-10;

    const auto objective = [&](double a, double b) {
        double val = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double z = f[i] * a + b;
            val += z >= 0.0 ? t[i] * z + std::log1p(std::exp(-z)) : (t[i] - 1.0) * z + std::log1p(std::exp(z));
        }
        return val;
    };

    double A = 0.0;
    double B = std::log((n_neg + 1.0) / (n_pos + 1.0));
    double fval = objective(A, B);

    for (int iter = 0; iter < kMaxIter; ++iter) {
        double h11 = kSigma;
        double h22 = kSigma;
        double h21 = 0.0;
        double g1 = 0.0;
        double g2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double z = f[i] * A + B;
            double p;
            double q;
            if (z >= 0.0) {
                p = std::exp(-z) / (1.0 + std::exp(-z));
                q = 1.0 / (1.0 + std::exp(-z));
            } else {
                p = 1.0 / (1.0 + std::exp(z));
                q = std::exp(z) / (1.0 + std::exp(z));
            }
            const double d2 = p * q;
            h11 += f[i] * f[i] * d2;
            h22 += d2;
            h21 += f[i] * d2;
            const double d1 = t[i] - p;
            g1 += f[i] * d1;
            g2 += d1;
        }
        if (std::abs(g1) < kEps && std::abs(g2) < kEps) break;

        const double det = h11 * h22 - h21 * h21;
        const double dA = -(h22 * g1 - h21 * g2) / det;
        const double dB = -(-h21 * g1 + h11 * g2) / det;
        const double gd = g1 * dA + g2 * dB;

        double step = 1.0;
        bool improved = false;
        while (step >= kMinStep) {
            const double newA = A + step * dA;
            const double newB = B + step * dB;
            const double newf = objective(newA, newB);
            if (newf < fval + 1e-4 * step * gd) {
                A = newA;
                B = newB;
                fval = newf;
                improved = true;
                break;
            }
            step /= 2.0;
        }
        if (!improved) break;
    }
    return {A, B};
}

CalibrationModel fit_calibration(const LinearSvmModel& model, const DesignMatrix& X,
                                 std::span<const DocId> rows, std::span<const int> y, std::uint64_t /*seed*/) {
    // In-sample decision values; the fit is deterministic, so the seed is
    // only part of the signature for symmetry with the other trainers.
    const auto f = decision_values(model, X, rows);
    return fit_sigmoid(f, y);
}

}  // namespace albench
