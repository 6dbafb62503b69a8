#pragma once

#include <string>
#include <vector>

#include "mapsim/association.hpp"
#include "mapsim/graph.hpp"

namespace mapsim {

struct MetricsRecord {
    double t = 0.0;
    double coverage = 0.0;
    double fiedler = 0.0;
    double info_penetration = 0.0;
    int alive_maps = 0;
};

struct RecoveryReport {
    std::string metric;
    double pre = 0.0;
    double post = 0.0;
    double ratio = 0.0;
    bool defined = false;  // false when the pre-failure mean is not positive
};

double coverage_fraction(const Assignment& asg, int M);

// Mean of 1 - 1/(1 + tau * count_degree) over alive MAPs; 0 for an empty graph.
double info_penetration(const ProximityGraph& g, double tau);

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
// Terminates when the off-diagonal Frobenius norm drops below 1e-10.
std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n);

// Second-smallest Laplacian eigenvalue; 0 for n <= 1, tiny negatives clamped.
double fiedler_value(const std::vector<double>& lap, int n);

std::vector<RecoveryReport> recovery_report(const std::vector<MetricsRecord>& series,
                                            double event_time, double window);

}  // namespace mapsim
