#pragma once

// Maslov index of Lagrangian-pair paths by two independent algorithms, plus
// the H-equivariant refinement.
//
// Endpoint convention (the -eps shift of the Maslov operator): an interior
// crossing contributes the signature of its crossing form, a crossing at the
// start contributes n_+, a crossing at the end contributes -n_-.  With this
// convention the normalization path (R{1}, R{e^{it}}), t in [-pi/4, pi/4],
// has index 1, its restriction to [-pi/4, 0] has index 0 and to [0, pi/4]
// index 1, and concatenation is additive through kernel junctions.

#include "spectral.hpp"

namespace casson {

namespace detail {

struct PreparedPath {
    std::vector<double> times;
    std::vector<RMatrix> f1, f2;      // orthonormalized frames
    std::vector<RMatrix> p1, p2;      // orthogonal projectors
    const SymplecticSpace* space = nullptr;
};

inline PreparedPath prepare(const LagrangianPath& p) {
    PreparedPath out;
    out.times = p.times;
    out.space = &p.space;
    for (std::size_t k = 0; k < p.size(); ++k) {
        RMatrix a = orthonormal_basis(p.first[k]);
        RMatrix b = orthonormal_basis(p.second[k]);
        out.p1.push_back(a * a.transpose());
        out.p2.push_back(b * b.transpose());
        out.f1.push_back(std::move(a));
        out.f2.push_back(std::move(b));
    }
    return out;
}

// Smallest principal angle between the two Lagrangians at sample k, plus the
// near-intersection directions (columns, in the ambient space).
inline double intersection_data(const PreparedPath& pp, std::size_t k, double angle_tol,
                                RMatrix* directions) {
    Eigen::JacobiSVD<RMatrix> svd(pp.f1[k].transpose() * pp.f2[k],
                                  Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double cos_min_angle = sv.size() ? sv(0) : 0.0;
    if (directions) {
        std::vector<int> idx;
        for (int i = 0; i < sv.size(); ++i)
            if (std::acos(std::min(1.0, sv(i))) < angle_tol) idx.push_back(i);
        directions->resize(pp.f2[k].rows(), static_cast<Eigen::Index>(idx.size()));
        for (std::size_t c = 0; c < idx.size(); ++c)
            directions->col(static_cast<Eigen::Index>(c)) =
                pp.f2[k] * svd.matrixV().col(idx[c]);
    }
    return std::acos(std::min(1.0, std::max(-1.0, cos_min_angle)));
}

// Signed detection function A_u(t) = omega(u, (P2(t) - P1(t)) u) and its
// polarized matrix on a block of directions.
inline RMatrix crossing_value(const PreparedPath& pp, std::size_t k, const RMatrix& dirs) {
    const RMatrix& om = pp.space->omega;
    RMatrix m = dirs.transpose() * om * (pp.p2[k] - pp.p1[k]) * dirs;
    return 0.5 * (m + m.transpose());
}

}  // namespace detail

// Crossing-form Maslov index.  Throws DegenerateCrossingError when a crossing
// form is singular at the resolution limit; the caller must refine the path.
inline int maslov_crossing(const LagrangianPath& path) {
    path.certify();
    detail::PreparedPath pp = detail::prepare(path);
    const std::size_t n_samples = pp.times.size();

    const double detect_angle = 0.15;       // generous: validated by sign change
    const double exact_angle = 1e-5;        // endpoint intersections are exact
    const double degenerate_tol = 1e-8;

    // Cluster consecutive samples whose smallest principal angle dips below
    // the detection threshold.
    std::vector<double> angle(n_samples);
    for (std::size_t k = 0; k < n_samples; ++k)
        angle[k] = detail::intersection_data(pp, k, 0, nullptr);

    int total = 0;
    std::size_t k = 0;
    while (k < n_samples) {
        if (angle[k] >= detect_angle) { ++k; continue; }
        std::size_t lo = k, hi = k;
        while (hi + 1 < n_samples && angle[hi + 1] < detect_angle) ++hi;
        std::size_t best = lo;
        for (std::size_t j = lo; j <= hi; ++j)
            if (angle[j] < angle[best]) best = j;

        RMatrix dirs;
        detail::intersection_data(pp, best, detect_angle, &dirs);
        if (dirs.cols() == 0) { k = hi + 1; continue; }

        const bool at_start = (lo == 0 && angle[0] < exact_angle);
        const bool at_end = (hi + 1 == n_samples && angle[n_samples - 1] < exact_angle);

        if (at_start || at_end) {
            // Endpoint intersection: one-sided slope on the kernel.
            std::size_t edge = at_start ? lo : hi;
            std::size_t inner = at_start ? hi + 1 : lo - 1;
            if ((at_start && hi + 1 >= n_samples) || (at_end && lo == 0))
                throw DegenerateCrossingError("maslov_crossing: intersection spans whole path");
            RMatrix q = (detail::crossing_value(pp, inner, dirs) -
                         detail::crossing_value(pp, edge, dirs)) /
                        (pp.times[inner] - pp.times[edge]);
            Eigen::SelfAdjointEigenSolver<RMatrix> es(q);
            for (int i = 0; i < es.eigenvalues().size(); ++i) {
                double lam = es.eigenvalues()(i);
                if (std::abs(lam) < degenerate_tol)
                    throw DegenerateCrossingError(
                        "maslov_crossing: singular endpoint crossing form");
                if (at_start && lam > 0) total += 1;   // n_+ at the start
                if (at_end && lam < 0) total -= 1;     // -n_- at the end
            }
        } else {
            // Interior crossing (possibly clipped near an endpoint): validate
            // each form eigendirection by a sign change across the cluster.
            std::size_t j0 = (lo == 0) ? lo : lo - 1;
            std::size_t j1 = (hi + 1 == n_samples) ? hi : hi + 1;
            RMatrix a0 = detail::crossing_value(pp, j0, dirs);
            RMatrix a1 = detail::crossing_value(pp, j1, dirs);
            RMatrix q = (a1 - a0) / (pp.times[j1] - pp.times[j0]);
            Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (q + q.transpose()));
            for (int i = 0; i < es.eigenvalues().size(); ++i) {
                RVector u = es.eigenvectors().col(i);
                double v0 = u.dot(a0 * u), v1 = u.dot(a1 * u);
                if (std::abs(v0) < degenerate_tol || std::abs(v1) < degenerate_tol)
                    throw DegenerateCrossingError(
                        "maslov_crossing: crossing form at resolution limit");
                if (v0 < 0 && v1 > 0) total += 1;
                if (v0 > 0 && v1 < 0) total -= 1;
                // Same sign on both edges: a near miss, not a crossing.
            }
        }
        k = hi + 1;
    }
    return total;
}

namespace detail {

// Box-scheme discretization of D = -J d/ds on [0,1] with f(0) in L1 and
// f(1) in L2.  The stiffness couples omega(f_i, f_{i+1}); the mass averages
// over interval midpoints, which sends grid-scale modes to infinite rather
// than spurious zero eigenvalues (the dispersion is (2/dt) tan(k dt / 2),
// monotone up to the grid cutoff).  The mass is only semi-definite: when
// L1 meets L2 the alternating mode lies in the common kernel of stiffness
// and mass, so the whitening deflates the mass and parks the dropped
// directions at a large constant eigenvalue, keeping the family dimension
// fixed across samples.
inline RMatrix discretized_boundary_operator(const SymplecticSpace& s, const RMatrix& j,
                                             const RMatrix& f1, const RMatrix& f2,
                                             int grid) {
    const int two_n = s.dim();
    const int n = two_n / 2;
    const int nodes = grid + 1;
    const double dt = 1.0 / grid;
    RMatrix metric = symmetrized(s.omega * j);

    const int full = nodes * two_n;
    RMatrix a = RMatrix::Zero(full, full);
    RMatrix g = RMatrix::Zero(full, full);
    for (int i = 0; i < grid; ++i) {
        int r0 = i * two_n, r1 = (i + 1) * two_n;
        a.block(r0, r1, two_n, two_n) += 0.5 * s.omega;
        a.block(r1, r0, two_n, two_n) -= 0.5 * s.omega;
        g.block(r0, r0, two_n, two_n) += 0.25 * dt * metric;
        g.block(r1, r1, two_n, two_n) += 0.25 * dt * metric;
        g.block(r0, r1, two_n, two_n) += 0.25 * dt * metric;
        g.block(r1, r0, two_n, two_n) += 0.25 * dt * metric;
    }

    // Constrain the boundary nodes into the Lagrangian frames.
    const int reduced = (nodes - 2) * two_n + 2 * n;
    RMatrix e = RMatrix::Zero(full, reduced);
    e.block(0, 0, two_n, n) = f1;
    for (int i = 1; i < nodes - 1; ++i)
        e.block(i * two_n, n + (i - 1) * two_n, two_n, two_n) =
            RMatrix::Identity(two_n, two_n);
    e.block((nodes - 1) * two_n, n + (nodes - 2) * two_n, two_n, n) = f2;

    RMatrix a_red = e.transpose() * a * e;
    RMatrix g_red = symmetrized(e.transpose() * g * e);

    Eigen::SelfAdjointEigenSolver<RMatrix> es(g_red);
    const double g_tol = 1e-9 * es.eigenvalues().cwiseAbs().maxCoeff();
    const double parked = 1e6;
    std::vector<int> kept;
    for (int i = 0; i < reduced; ++i)
        if (es.eigenvalues()(i) > g_tol) kept.push_back(i);
    const int nk = static_cast<int>(kept.size());
    RMatrix w(reduced, nk);
    for (int c = 0; c < nk; ++c)
        w.col(c) = es.eigenvectors().col(kept[c]) / std::sqrt(es.eigenvalues()(kept[c]));
    RMatrix out = parked * RMatrix::Identity(reduced, reduced);
    out.topLeftCorner(nk, nk) = symmetrized(w.transpose() * a_red * w);
    return out;
}

inline int maslov_spectral_at(const LagrangianPath& path, int grid) {
    detail::PreparedPath pp = detail::prepare(path);
    RMatrix j = compatible_complex_structure(path.space);
    MatrixFamily family;
    family.times = path.times;
    for (std::size_t k = 0; k < path.size(); ++k)
        family.samples.push_back(discretized_boundary_operator(
            path.space, j, pp.f1[k], pp.f2[k], grid));
    // eps: clear of true endpoint eigenvalues; discretization noise of exact
    // endpoint kernels sits well below 1e-4.
    double m = std::numeric_limits<double>::infinity();
    for (const RMatrix* d : {&family.samples.front(), &family.samples.back()}) {
        auto es = detail::eigen_sample(*d);
        for (int i = 0; i < es.values.size(); ++i) {
            double v = std::abs(es.values(i));
            if (v > 1e-4) m = std::min(m, v);
        }
    }
    double eps = std::isfinite(m) ? std::min(0.5 * m, 0.5) : 0.5;
    return spectral_flow(family, eps, EndpointShift::MinusEps);
}

}  // namespace detail

// Spectral-flow Maslov index (the dual algorithm to maslov_crossing).  The
// grid-refinement guard compares against half resolution and throws
// GridTooCoarseError on disagreement.
inline int maslov_spectral(const LagrangianPath& path, int grid = 64) {
    path.certify();
    if (grid < 8) throw Error("maslov_spectral: grid too small");
    int fine = detail::maslov_spectral_at(path, grid);
    int coarse = detail::maslov_spectral_at(path, grid / 2);
    if (fine != coarse)
        throw GridTooCoarseError("maslov_spectral: flow changed under grid refinement");
    return fine;
}

// Restriction of an invariant Lagrangian path to an isotypic subspace.
inline LagrangianPath isotypic_subpath(const LagrangianPath& path, const RMatrix& basis,
                                       const SymplecticSpace& sub) {
    LagrangianPath out;
    out.space = sub;
    out.times = path.times;
    for (std::size_t k = 0; k < path.size(); ++k) {
        RMatrix l1 = subspace_intersection(path.first[k], basis);
        RMatrix l2 = subspace_intersection(path.second[k], basis);
        if (2 * l1.cols() != basis.cols() || 2 * l2.cols() != basis.cols())
            throw IsotypicLeakError(
                "equivariant maslov: Lagrangian does not split isotypically");
        out.first.push_back(basis.transpose() * l1);
        out.second.push_back(basis.transpose() * l2);
    }
    return out;
}

// H-equivariant Maslov index: reduce by the orbit directions, split the
// reduction isotypically, apply the crossing algorithm per piece, and divide
// by dim_R.  The dim-weighted total must reproduce the plain index of the
// reduced path.
inline RepRingElt equivariant_maslov(const LagrangianPath& path,
                                     const RMatrix& orbit_directions) {
    path.certify();
    ReducedSpace red = symplectic_reduce(path.space, orbit_directions);
    LagrangianPath reduced;
    reduced.space = red.space;
    reduced.times = path.times;
    for (std::size_t k = 0; k < path.size(); ++k) {
        reduced.first.push_back(reduce_lagrangian(red, orbit_directions, path.first[k]));
        reduced.second.push_back(reduce_lagrangian(red, orbit_directions, path.second[k]));
    }

    RepRingElt out(red.space.action.kind, red.space.action.cyclic_order);
    auto pieces = isotypic_decomposition(red.space.action, red.space.dim());
    int check_total = 0;
    for (const auto& piece : pieces) {
        SymplecticSpace sub;
        sub.omega = piece.basis.transpose() * red.space.omega * piece.basis;
        sub.action = GroupAction::trivial();
        LagrangianPath sp = isotypic_subpath(reduced, piece.basis, sub);
        int mu = maslov_crossing(sp);
        check_total += mu;
        if (mu % piece.dim_real != 0)
            throw IsotypicLeakError("equivariant maslov: index not divisible by dim_R");
        out.add(piece.label, mu / piece.dim_real);
    }
    int plain = maslov_crossing(reduced);
    if (plain != check_total)
        throw Error("equivariant maslov: isotypic total " + std::to_string(check_total) +
                    " != plain index " + std::to_string(plain));
    return out;
}

}  // namespace casson
