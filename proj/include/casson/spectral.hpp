#pragma once

// Spectral flow of self-adjoint matrix families by continuous eigenvalue
// tracking, its H-equivariant refinement, and resonance matrices.
//
// Endpoint conventions: the flow counts signed crossings of the level -eps
// (PlusEps, the shift used for spectral flows of operator families) or +eps
// (MinusEps, the shift used for the Maslov operator).  Within the stated
// precondition range the answer is independent of eps.

#include <algorithm>
#include <vector>

#include "rep_ring.hpp"

namespace casson {

struct MatrixFamily {
    std::vector<double> times;
    std::vector<RMatrix> samples;   // symmetric
    GroupAction action;             // optional, commutes with every sample

    std::size_t size() const { return times.size(); }

    void check() const {
        if (times.size() < 2 || times.size() != samples.size())
            throw Error("matrix family: need matching times/samples, at least 2");
        for (std::size_t k = 0; k < samples.size(); ++k) {
            double scale = std::max(1.0, samples[k].norm());
            if ((samples[k] - samples[k].transpose()).norm() > 1e-12 * scale)
                throw Error("matrix family: sample not symmetric");
            if (k > 0 && !(times[k] > times[k - 1]))
                throw Error("matrix family: times not increasing");
        }
        for (const auto& g : action.samples(8))
            for (const auto& d : samples)
                if ((g * d - d * g).norm() > 1e-10 * std::max(1.0, d.norm()))
                    throw Error("matrix family: action does not commute with samples");
    }

    MatrixFamily isotypic_restriction(const RMatrix& basis) const {
        MatrixFamily f;
        f.times = times;
        for (const auto& d : samples)
            f.samples.push_back(basis.transpose() * d * basis);
        return f;
    }
};

enum class EndpointShift { PlusEps, MinusEps };

namespace detail {

// O(n^3) minimal-cost assignment (Hungarian algorithm with potentials).
inline std::vector<int> min_cost_assignment(const RMatrix& cost) {
    const int n = static_cast<int>(cost.rows());
    std::vector<double> u(n + 1, 0), v(n + 1, 0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, std::numeric_limits<double>::infinity());
        std::vector<char> used(n + 1, false);
        do {
            used[j0] = true;
            int i0 = p[j0], j1 = -1;
            double delta = std::numeric_limits<double>::infinity();
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) { minv[j] = cur; way[j] = j0; }
                if (minv[j] < delta) { delta = minv[j]; j1 = j; }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) { u[p[j]] += delta; v[j] -= delta; }
                else minv[j] -= delta;
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> match(n);  // match[row] = column
    for (int j = 1; j <= n; ++j)
        if (p[j] > 0) match[p[j] - 1] = j - 1;
    return match;
}

struct EigenSample {
    RVector values;
    RMatrix vectors;
};

inline EigenSample eigen_sample(const RMatrix& m) {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (m + m.transpose()));
    return {es.eigenvalues(), es.eigenvectors()};
}

// Signed crossings of `level` along matched trajectories between two samples.
// (By telescoping, the total over any per-step bijection equals the endpoint
// counting-function difference; the matching feeds the ambiguity diagnostics.)
inline int crossings_between(const EigenSample& a, const EigenSample& b,
                             const std::vector<int>& match, double level) {
    int net = 0;
    for (int i = 0; i < a.values.size(); ++i) {
        bool below0 = a.values(i) < level;
        bool below1 = b.values(match[i]) < level;
        if (below0 && !below1) ++net;
        if (!below0 && below1) --net;
    }
    return net;
}

// Matching cost mixing eigenvalue distance and eigenvector overlap.
inline RMatrix matching_cost(const EigenSample& a, const EigenSample& b, double scale) {
    const int n = static_cast<int>(a.values.size());
    RMatrix overlap = (a.vectors.transpose() * b.vectors).cwiseAbs();
    RMatrix cost(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            cost(i, j) = std::abs(a.values(i) - b.values(j)) / scale + (1.0 - overlap(i, j));
    return cost;
}

inline bool step_ambiguous(const EigenSample& a, const EigenSample& b,
                           const std::vector<int>& match, double scale) {
    RMatrix overlap = (a.vectors.transpose() * b.vectors).cwiseAbs();
    for (int i = 0; i < a.values.size(); ++i) {
        int j = match[i];
        if (std::abs(a.values(i) - b.values(j)) > 0.25 * scale && overlap(i, j) < 0.5)
            return true;
    }
    return false;
}

inline int tracked_crossings(const RMatrix& m0, double t0, const RMatrix& m1, double t1,
                             double level, double scale, double min_step, int depth = 0) {
    EigenSample a = eigen_sample(m0), b = eigen_sample(m1);
    std::vector<int> match = min_cost_assignment(matching_cost(a, b, scale));
    if (!step_ambiguous(a, b, match, scale))
        return crossings_between(a, b, match, level);
    if (t1 - t0 <= min_step)
        throw TrackingAmbiguousError(
            "spectral flow: eigenvalue matching ambiguous at minimum step");
    // Bisect through the linear interpolant between the given samples.
    RMatrix mid = 0.5 * (m0 + m1);
    double tm = 0.5 * (t0 + t1);
    return tracked_crossings(m0, t0, mid, tm, level, scale, min_step, depth + 1) +
           tracked_crossings(mid, tm, m1, t1, level, scale, min_step, depth + 1);
}

}  // namespace detail

// Half of the smallest nonzero endpoint eigenvalue magnitude: a safe eps.
inline double spectral_flow_auto_eps(const MatrixFamily& f) {
    double m = std::numeric_limits<double>::infinity();
    for (const RMatrix* d : {&f.samples.front(), &f.samples.back()}) {
        auto es = detail::eigen_sample(*d);
        double scale = std::max(1.0, es.values.cwiseAbs().maxCoeff());
        for (int i = 0; i < es.values.size(); ++i) {
            double v = std::abs(es.values(i));
            if (v > 1e-9 * scale) m = std::min(m, v);
        }
    }
    if (!std::isfinite(m)) m = 1.0;  // identically-degenerate endpoints
    return 0.5 * m;
}

inline int spectral_flow(const MatrixFamily& f, double eps = -1.0,
                         EndpointShift shift = EndpointShift::PlusEps) {
    f.check();
    if (eps <= 0) eps = spectral_flow_auto_eps(f);
    const double level = (shift == EndpointShift::PlusEps) ? -eps : eps;
    double scale = 1.0;
    for (const auto& d : f.samples) scale = std::max(scale, d.norm());
    const double min_step = 1e-6 * (f.times.back() - f.times.front());
    int net = 0;
    for (std::size_t k = 0; k + 1 < f.samples.size(); ++k)
        net += detail::tracked_crossings(f.samples[k], f.times[k], f.samples[k + 1],
                                         f.times[k + 1], level, scale, min_step);
    return net;
}

// H-equivariant spectral flow: isotypic projection, one plain flow per irrep
// appearing in the space, each divided by dim_R per the Hom(W,.) convention.
inline RepRingElt equivariant_spectral_flow(const MatrixFamily& f, double eps = -1.0,
                                            EndpointShift shift = EndpointShift::PlusEps) {
    f.check();
    const int n = static_cast<int>(f.samples.front().rows());
    auto pieces = isotypic_decomposition(f.action, n);
    RepRingElt out(f.action.kind, f.action.cyclic_order);
    for (const auto& piece : pieces) {
        // Projections must commute with the samples.
        RMatrix proj = piece.basis * piece.basis.transpose();
        for (const auto& d : f.samples)
            if ((proj * d - d * proj).norm() > 1e-8 * std::max(1.0, d.norm()))
                throw IsotypicLeakError("equivariant spectral flow: projection leaks");
        MatrixFamily sub = f.isotypic_restriction(piece.basis);
        int flow = spectral_flow(sub, eps, shift);
        if (flow % piece.dim_real != 0)
            throw IsotypicLeakError("equivariant spectral flow: flow not divisible by dim_R");
        out.add(piece.label, flow / piece.dim_real);
    }
    return out;
}

// Projection of the time derivative (central difference) onto ker F(t0).
// The family near t0 is called positive/negative when this matrix is.
inline RMatrix resonance_matrix(const MatrixFamily& f, double t0,
                                double kernel_tol = 1e-7) {
    f.check();
    std::size_t j = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < f.times.size(); ++k)
        if (std::abs(f.times[k] - t0) < best) { best = std::abs(f.times[k] - t0); j = k; }
    if (j == 0 || j + 1 == f.times.size())
        throw Error("resonance_matrix: t0 must be an interior sample");
    auto es = detail::eigen_sample(f.samples[j]);
    double scale = std::max(1.0, es.values.cwiseAbs().maxCoeff());
    std::vector<int> kernel_idx;
    for (int i = 0; i < es.values.size(); ++i)
        if (std::abs(es.values(i)) <= kernel_tol * scale) kernel_idx.push_back(i);
    if (kernel_idx.empty()) throw KernelEmptyError("resonance_matrix: kernel empty at t0");
    RMatrix k(es.vectors.rows(), kernel_idx.size());
    for (std::size_t c = 0; c < kernel_idx.size(); ++c) k.col(c) = es.vectors.col(kernel_idx[c]);
    RMatrix dot = (f.samples[j + 1] - f.samples[j - 1]) / (f.times[j + 1] - f.times[j - 1]);
    return symmetrized(k.transpose() * dot * k);
}

inline bool is_positive_definite(const RMatrix& m, double tol = 0.0) {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (m + m.transpose()));
    return es.eigenvalues()(0) > tol;
}

}  // namespace casson
