#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace albench::testing {

QpSolution svm_dual_oracle(const std::vector<std::vector<double>>& x, const std::vector<int>& y, double C,
                           std::size_t iterations) {
    const std::size_t n = x.size();
    const std::size_t d = n == 0 ? 0 : x[0].size();
    std::vector<std::vector<double>> q(n, std::vector<double>(n));
    double lipschitz = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row_abs = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double dot = 1.0;
            for (std::size_t k = 0; k < d; ++k) dot += x[i][k] * x[j][k];
            q[i][j] = y[i] * y[j] * dot;
            row_abs += std::abs(q[i][j]);
        }
        lipschitz = std::max(lipschitz, row_abs);
    }
    const double step = 1.0 / lipschitz;
    const auto project = [C](double v) { return std::clamp(v, 0.0, C); };

    std::vector<double> alpha(n, 0.0), prev(n, 0.0), z(n, 0.0), grad(n);
    double t = 1.0;
    for (std::size_t it = 0; it < iterations; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double qz = 0.0;
            for (std::size_t j = 0; j < n; ++j) qz += q[i][j] * z[j];
            grad[i] = 1.0 - qz;
        }
        prev = alpha;
        for (std::size_t i = 0; i < n; ++i) alpha[i] = project(z[i] + step * grad[i]);
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        for (std::size_t i = 0; i < n; ++i) z[i] = alpha[i] + ((t - 1.0) / t_next) * (alpha[i] - prev[i]);
        t = t_next;
        // Restart when momentum points uphill.
        double dir = 0.0;
        for (std::size_t i = 0; i < n; ++i) dir += grad[i] * (alpha[i] - prev[i]);
        if (dir < 0.0) {
            t = 1.0;
            z = alpha;
        }
    }

    QpSolution out;
    out.alpha = alpha;
    out.w.assign(d + 1, 0.0);
    double sum_alpha = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum_alpha += alpha[i];
        for (std::size_t k = 0; k < d; ++k) out.w[k] += alpha[i] * y[i] * x[i][k];
        out.w[d] += alpha[i] * y[i];
    }
    double norm2 = 0.0;
    for (double v : out.w) norm2 += v * v;
    out.dual_objective = sum_alpha - 0.5 * norm2;
    double hinge = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double f = out.w[d];
        for (std::size_t k = 0; k < d; ++k) f += out.w[k] * x[i][k];
        hinge += std::max(0.0, 1.0 - y[i] * f);
    }
    out.primal_objective = 0.5 * norm2 + C * hinge;
    return out;
}

double wilcoxon_enumerated_p(std::span<const double> a, std::span<const double> b) {
    std::vector<double> diffs;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) diffs.push_back(a[i] - b[i]);
    }
    const std::size_t n = diffs.size();
    if (n == 0) return 1.0;
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n; ++i) {
        double below = 0.0, equal = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(diffs[j]) < std::abs(diffs[i])) below += 1.0;
            if (std::abs(diffs[j]) == std::abs(diffs[i])) equal += 1.0;
        }
        ranks[i] = below + (equal + 1.0) / 2.0;
    }
    double total = 0.0, observed = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        total += ranks[i];
        if (diffs[i] > 0) observed += ranks[i];
    }
    const double centre = total / 2.0;
    const double observed_dev = std::abs(observed - centre);
    std::uint64_t extreme = 0;
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        double w = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask >> i & 1U) w += ranks[i];
        }
        if (std::abs(w - centre) >= observed_dev - 1e-9) ++extreme;
    }
    return static_cast<double>(extreme) / static_cast<double>(count);
}

double aulc_segment_oracle(const std::vector<std::pair<double, double>>& points) {
    if (points.size() == 1) return points[0].second;
    double area = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        const double width = points[i].first - points[i - 1].first;
        const double low = std::min(points[i].second, points[i - 1].second);
        const double high = std::max(points[i].second, points[i - 1].second);
        area += width * low + width * (high - low) / 2.0;
    }
    return area / (points.back().first - points.front().first);
}

double accuracy_plus_counted(const std::vector<Label>& truth, const std::vector<bool>& labelled,
                             const std::vector<Label>& predicted) {
    std::size_t correct = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (labelled[i] || predicted[i] == truth[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(truth.size());
}

}  // namespace albench::testing
