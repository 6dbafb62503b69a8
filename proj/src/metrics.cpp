#include "mapsim/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "mapsim/errors.hpp"

namespace mapsim {

double coverage_fraction(const Assignment& asg, int M) {
    if (M <= 0) throw ConfigError("coverage: M must be positive");
    return static_cast<double>(asg.covered_count) / static_cast<double>(M);
}

double info_penetration(const ProximityGraph& g, double tau) {
    if (!(tau >= 0.0)) throw ConfigError("info_penetration: tau must be >= 0");
    if (g.n == 0) return 0.0;
    double sum = 0.0;
    for (int i = 0; i < g.n; ++i) {
        sum += 1.0 - 1.0 / (1.0 + tau * static_cast<double>(g.count_degree[i]));
    }
    return sum / static_cast<double>(g.n);
}

namespace {

double off_frobenius(const std::vector<double>& a, int n) {
    double s = 0.0;
    for (int p = 0; p < n; ++p) {
        for (int q = p + 1; q < n; ++q) {
            double v = a[static_cast<std::size_t>(p) * n + q];
            s += 2.0 * v * v;
        }
    }
    return std::sqrt(s);
}

}  // namespace

std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n) {
    if (n < 0) throw SimError("jacobi: negative dimension");
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            double diff = std::fabs(a[static_cast<std::size_t>(p) * n + q] -
                                    a[static_cast<std::size_t>(q) * n + p]);
            if (diff > 1e-9) throw SimError("jacobi: input matrix is not symmetric");
        }
    }
    auto at = [&](int p, int q) -> double& { return a[static_cast<std::size_t>(p) * n + q]; };

    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_frobenius(a, n) < 1e-10) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = at(p, q);
                if (std::fabs(apq) <= 1e-13) continue;
                double app = at(p, p);
                double aqq = at(q, q);
                double theta = 0.5 * (aqq - app) / apq;
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                at(p, p) = app - t * apq;
                at(q, q) = aqq + t * apq;
                at(p, q) = 0.0;
                at(q, p) = 0.0;
                for (int r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    double arp = at(r, p);
                    double arq = at(r, q);
                    at(r, p) = c * arp - s * arq;
                    at(p, r) = at(r, p);
                    at(r, q) = s * arp + c * arq;
                    at(q, r) = at(r, q);
                }
            }
        }
    }
    if (n > 1 && off_frobenius(a, n) >= 1e-10)
        throw SimError("jacobi: failed to converge");

    std::vector<double> evals(n);
    for (int p = 0; p < n; ++p) evals[p] = at(p, p);
    std::sort(evals.begin(), evals.end());
    return evals;
}

double fiedler_value(const std::vector<double>& lap, int n) {
    if (n <= 1) return 0.0;
    std::vector<double> evals = jacobi_eigenvalues(lap, n);
    double lam2 = evals[1];
    if (lam2 < 0.0) {
        if (lam2 < -1e-9) throw SimError("fiedler: matrix is not positive semi-definite");
        lam2 = 0.0;
    }
    return lam2;
}

std::vector<RecoveryReport> recovery_report(const std::vector<MetricsRecord>& series,
                                            double event_time, double window) {
    if (series.empty()) throw SimError("recovery_report: empty series");
    if (!(window > 0.0)) throw ConfigError("recovery_report: window must be positive");
    const double t_last = series.back().t;
    double pre_cov = 0.0, pre_fie = 0.0, pre_inf = 0.0;
    double post_cov = 0.0, post_fie = 0.0, post_inf = 0.0;
    int pre_n = 0, post_n = 0;
    for (const auto& rec : series) {
        if (rec.t >= event_time - window && rec.t < event_time) {
            pre_cov += rec.coverage;
            pre_fie += rec.fiedler;
            pre_inf += rec.info_penetration;
            pre_n++;
        }
        if (rec.t >= t_last - window) {
            post_cov += rec.coverage;
            post_fie += rec.fiedler;
            post_inf += rec.info_penetration;
            post_n++;
        }
    }
    if (pre_n == 0 || post_n == 0)
        throw SimError("recovery_report: empty pre or post window");

    auto mk = [&](const std::string& name, double pre_sum, double post_sum) {
        RecoveryReport r;
        r.metric = name;
        r.pre = pre_sum / pre_n;
        r.post = post_sum / post_n;
        r.defined = r.pre > 0.0;
        r.ratio = r.defined ? r.post / r.pre : 0.0;
        return r;
    };
    return {mk("coverage", pre_cov, post_cov), mk("fiedler", pre_fie, post_fie),
            mk("info_penetration", pre_inf, post_inf)};
}

}  // namespace mapsim
