#pragma once

// Finite-dimensional symplectic vector spaces, Lagrangian frames and paths,
// compatible complex structures, and reduction by isotropic subspaces.

#include <functional>
#include <vector>

#include "linalg.hpp"

namespace casson {

enum class HGroup { Trivial, U1, Cyclic };

// Compact symmetry group acting by real matrices.  U(1) is carried by its
// antisymmetric infinitesimal generator (action angle t -> exp(t K)); only
// finite groups and U(1) occur in scope, and U(1) averaging uses a 64-point
// angle grid.
struct GroupAction {
    HGroup kind = HGroup::Trivial;
    int cyclic_order = 0;
    RMatrix u1_generator;     // antisymmetric, integer weights
    RMatrix cyclic_generator; // orthogonal, g^k = I

    static GroupAction trivial() { return GroupAction{}; }

    static GroupAction u1(RMatrix generator) {
        GroupAction a;
        a.kind = HGroup::U1;
        a.u1_generator = std::move(generator);
        return a;
    }

    static GroupAction cyclic(int k, RMatrix generator) {
        GroupAction a;
        a.kind = HGroup::Cyclic;
        a.cyclic_order = k;
        a.cyclic_generator = std::move(generator);
        return a;
    }

    bool is_trivial() const { return kind == HGroup::Trivial; }

    RMatrix u1_element(double theta) const {
        // exp(theta K) for antisymmetric K via the Hermitian matrix iK.
        const int n = static_cast<int>(u1_generator.rows());
        CMatrix h = Complex(0, 1) * u1_generator.cast<Complex>();
        Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
        Eigen::VectorXcd ph(n);
        for (int j = 0; j < n; ++j) ph(j) = std::polar(1.0, -theta * es.eigenvalues()(j));
        CMatrix e = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
        return e.real();
    }

    // Sample elements for averaging and invariance checks.
    std::vector<RMatrix> samples(int u1_grid = 64) const {
        std::vector<RMatrix> out;
        switch (kind) {
            case HGroup::Trivial:
                break;
            case HGroup::U1:
                for (int j = 0; j < u1_grid; ++j)
                    out.push_back(u1_element(2.0 * M_PI * j / u1_grid));
                break;
            case HGroup::Cyclic: {
                RMatrix g = RMatrix::Identity(cyclic_generator.rows(), cyclic_generator.cols());
                for (int j = 0; j < cyclic_order; ++j) {
                    out.push_back(g);
                    g = cyclic_generator * g;
                }
                break;
            }
        }
        return out;
    }
};

struct IsotypicPiece {
    int label = 0;        // U1: weight >= 0; Cyclic: character index 0..k/2; Trivial: 0
    int dim_real = 1;     // dim_R of the underlying real irrep
    RMatrix basis;        // orthonormal columns spanning the isotypic subspace
};

// Isotypic decomposition of R^n under the action.  Throws IsotypicLeakError
// if the pieces fail to reassemble the space.
inline std::vector<IsotypicPiece> isotypic_decomposition(const GroupAction& action, int n) {
    std::vector<IsotypicPiece> pieces;
    switch (action.kind) {
        case HGroup::Trivial: {
            pieces.push_back({0, 1, RMatrix::Identity(n, n)});
            break;
        }
        case HGroup::U1: {
            CMatrix h = Complex(0, 1) * action.u1_generator.cast<Complex>();
            Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
            // Eigenvalues of iK are the signed weights; group by |w|.
            std::vector<std::pair<int, CMatrix>> buckets;
            for (int j = 0; j < n; ++j) {
                double lam = es.eigenvalues()(j);
                int w = static_cast<int>(std::llround(std::abs(lam)));
                if (std::abs(std::abs(lam) - w) > 1e-8)
                    throw IsotypicLeakError("U(1) action has non-integer weight");
                bool found = false;
                for (auto& b : buckets)
                    if (b.first == w) {
                        CMatrix m(n, b.second.cols() + 1);
                        m << b.second, es.eigenvectors().col(j);
                        b.second = m;
                        found = true;
                    }
                if (!found) {
                    CMatrix m(n, 1);
                    m << es.eigenvectors().col(j);
                    buckets.emplace_back(w, m);
                }
            }
            std::sort(buckets.begin(), buckets.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            for (auto& [w, vecs] : buckets) {
                RMatrix realified(n, 2 * vecs.cols());
                realified << vecs.real(), vecs.imag();
                RMatrix basis = orthonormal_basis(realified);
                pieces.push_back({w, w == 0 ? 1 : 2, basis});
            }
            break;
        }
        case HGroup::Cyclic: {
            const int k = action.cyclic_order;
            std::vector<RMatrix> powers;
            RMatrix g = RMatrix::Identity(n, n);
            for (int m = 0; m < k; ++m) {
                powers.push_back(g);
                g = action.cyclic_generator * g;
            }
            for (int j = 0; j <= k / 2; ++j) {
                RMatrix proj = RMatrix::Zero(n, n);
                double norm = (j == 0 || 2 * j == k) ? 1.0 : 2.0;
                for (int m = 0; m < k; ++m)
                    proj += (norm / k) * std::cos(2.0 * M_PI * j * m / k) * powers[m];
                RMatrix basis = orthonormal_basis(proj, 1e-8);
                if (basis.cols() > 0)
                    pieces.push_back({j, (j == 0 || 2 * j == k) ? 1 : 2, basis});
            }
            break;
        }
    }
    int total = 0;
    for (const auto& p : pieces) total += static_cast<int>(p.basis.cols());
    if (total != n) throw IsotypicLeakError("isotypic pieces do not span the space");
    return pieces;
}

inline const char* hgroup_name(HGroup h) {
    switch (h) {
        case HGroup::Trivial: return "trivial";
        case HGroup::U1: return "U1";
        case HGroup::Cyclic: return "cyclic";
    }
    return "?";
}

struct SymplecticSpace {
    RMatrix omega;       // antisymmetric, invertible
    GroupAction action;  // optional; preserves omega

    int dim() const { return static_cast<int>(omega.rows()); }

    static SymplecticSpace standard(int two_n) {
        // omega(e_i, e_{n+i}) = +1 layout: Omega = [[0, I], [-I, 0]].
        const int n = two_n / 2;
        RMatrix om = RMatrix::Zero(two_n, two_n);
        om.topRightCorner(n, n) = RMatrix::Identity(n, n);
        om.bottomLeftCorner(n, n) = -RMatrix::Identity(n, n);
        return SymplecticSpace{om, GroupAction::trivial()};
    }

    void check(double tol = 1e-10) const {
        if ((omega + omega.transpose()).norm() > tol * std::max(1.0, omega.norm()))
            throw Error("symplectic space: form not antisymmetric");
        Eigen::FullPivLU<RMatrix> lu(omega);
        if (!lu.isInvertible()) throw Error("symplectic space: form degenerate");
        for (const auto& g : action.samples(8))
            if ((g.transpose() * omega * g - omega).norm() > 1e-8 * std::max(1.0, omega.norm()))
                throw Error("symplectic space: action does not preserve form");
    }
};

// Compatible complex structure via the polar recipe on A = M^{-1} Omega,
// where M is the base metric averaged over sampled group elements: J^2 = -I,
// omega(., J.) symmetric positive definite, and J commutes with the action.
inline RMatrix compatible_complex_structure(const SymplecticSpace& s) {
    const int n = s.dim();
    RMatrix metric = RMatrix::Identity(n, n);
    auto samples = s.action.samples();
    if (!samples.empty()) {
        metric.setZero();
        for (const auto& g : samples) metric += g.transpose() * g;
        metric /= static_cast<double>(samples.size());
    }
    Eigen::LLT<RMatrix> llt(metric);
    RMatrix l = llt.matrixL();
    RMatrix linv = l.inverse();
    RMatrix om = linv * s.omega * linv.transpose();  // whitened, antisymmetric
    RMatrix p = om * om.transpose();                 // SPD
    Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (p + p.transpose()));
    RMatrix pinvsqrt = es.eigenvectors() *
                       es.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse().asDiagonal() *
                       es.eigenvectors().transpose();
    RMatrix jw = om * pinvsqrt;
    RMatrix j = linv.transpose() * jw * l.transpose();
    // Fix the sign so that omega(x, Jx) > 0.
    RMatrix g = s.omega * j;
    Eigen::SelfAdjointEigenSolver<RMatrix> ges(0.5 * (g + g.transpose()));
    if (ges.eigenvalues()(0) < 0) j = -j;
    return j;
}

using LagrangianFrame = RMatrix;  // 2n x n, full column rank, isotropic

inline void check_lagrangian(const SymplecticSpace& s, const LagrangianFrame& f,
                             double tol = 1e-9) {
    double scale = std::max(1.0, f.norm());
    if ((f.transpose() * s.omega * f).norm() > tol * scale * scale)
        throw NotIsotropicError("frame is not isotropic");
    Eigen::JacobiSVD<RMatrix> svd(f);
    if (numerical_rank(svd.singularValues(), 1e-10) != f.cols())
        throw Error("lagrangian frame is column-rank deficient");
}

// Continuous piecewise-smooth path of Lagrangian pairs, carried as frames at
// sample times with a gap certificate between consecutive samples.
struct LagrangianPath {
    SymplecticSpace space;
    std::vector<double> times;
    std::vector<LagrangianFrame> first;
    std::vector<LagrangianFrame> second;

    std::size_t size() const { return times.size(); }

    void certify(double max_gap = 0.2) const {
        if (times.size() < 2) throw Error("lagrangian path: need at least 2 samples");
        for (std::size_t k = 0; k < times.size(); ++k) {
            if (k > 0 && !(times[k] > times[k - 1]))
                throw Error("lagrangian path: times not increasing");
            check_lagrangian(space, first[k]);
            check_lagrangian(space, second[k]);
        }
        for (std::size_t k = 0; k + 1 < times.size(); ++k) {
            if (projector_gap(first[k], first[k + 1]) >= max_gap ||
                projector_gap(second[k], second[k + 1]) >= max_gap)
                throw Error("lagrangian path: consecutive sample gap exceeds certificate");
        }
    }

    LagrangianPath reversed() const {
        LagrangianPath r;
        r.space = space;
        double t0 = times.front(), t1 = times.back();
        for (std::size_t k = times.size(); k-- > 0;) {
            r.times.push_back(t0 + (t1 - times[k]));
            r.first.push_back(first[k]);
            r.second.push_back(second[k]);
        }
        return r;
    }
};

// Operator-norm distance between the column spans; invariant under column
// operations, zero iff equal spans.
inline double subspace_gap(const LagrangianFrame& f, const LagrangianFrame& g) {
    return projector_gap(f, g);
}

// Uniform-ish random Lagrangian: metric-orthogonalize random vectors against
// the growing frame and its J-image; the result is exactly isotropic.
inline LagrangianFrame random_lagrangian(const SymplecticSpace& s, const RMatrix& j,
                                         Rng& rng) {
    const int two_n = s.dim(), n = two_n / 2;
    RMatrix metric = symmetrized(s.omega * j);
    RMatrix frame(two_n, n);
    int built = 0;
    while (built < n) {
        RVector v(two_n);
        for (int i = 0; i < two_n; ++i) v(i) = rng.normal();
        for (int c = 0; c < built; ++c) {
            RVector u = frame.col(c);
            v -= u * (u.dot(metric * v));
            RVector ju = j * u;
            double jnorm = ju.dot(metric * ju);
            v -= ju * (ju.dot(metric * v) / jnorm);
        }
        double norm = std::sqrt(v.dot(metric * v));
        if (norm < 1e-6) continue;
        frame.col(built++) = v / norm;
    }
    return frame;
}

// A random symplectic matrix exp(Omega^{-1} S), S symmetric of given scale.
inline RMatrix random_symplectic(const SymplecticSpace& s, Rng& rng, double scale = 0.5) {
    const int n = s.dim();
    RMatrix h(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) h(r, c) = rng.normal();
    RMatrix sym = 0.5 * scale * (h + h.transpose());
    return expm(s.omega.inverse() * sym);
}

struct ReducedSpace {
    SymplecticSpace space;
    RMatrix projection;  // d_red x 2n; on W^omega it is the quotient map
    RMatrix embedding;   // 2n x d_red, orthonormal columns (the chosen complement)
};

// Reduction W^omega / W for an isotropic frame W.  Lagrangians containing W
// project to Lagrangians of the reduction.
inline ReducedSpace symplectic_reduce(const SymplecticSpace& s, const RMatrix& w) {
    const int n = s.dim();
    if (w.cols() == 0) {
        return ReducedSpace{s, RMatrix::Identity(n, n), RMatrix::Identity(n, n)};
    }
    double scale = std::max(1.0, w.norm());
    if ((w.transpose() * s.omega * w).norm() > 1e-8 * scale * scale)
        throw NotIsotropicError("symplectic_reduce: W is not isotropic");
    RMatrix wb = orthonormal_basis(w);
    RMatrix coisotropic = nullspace(wb.transpose() * s.omega);  // W^omega
    RMatrix q = project_out(coisotropic, wb);
    SymplecticSpace red;
    red.omega = q.transpose() * s.omega * q;
    red.action = GroupAction::trivial();
    if (!s.action.is_trivial()) {
        // The action descends when it preserves W; map generators through q.
        GroupAction a = s.action;
        bool ok = true;
        if (a.kind == HGroup::U1) {
            a.u1_generator = q.transpose() * s.action.u1_generator * q;
            RMatrix g = s.action.u1_element(0.37);
            ok = (g * wb - wb * (wb.transpose() * g * wb)).norm() < 1e-8 * wb.norm();
        } else if (a.kind == HGroup::Cyclic) {
            a.cyclic_generator = q.transpose() * s.action.cyclic_generator * q;
            ok = (s.action.cyclic_generator * wb -
                  wb * (wb.transpose() * s.action.cyclic_generator * wb)).norm() <
                 1e-8 * wb.norm();
        }
        if (!ok) throw Error("symplectic_reduce: action does not preserve W");
        red.action = a;
    }
    red.check(1e-8);
    return ReducedSpace{red, q.transpose(), q};
}

// Push a Lagrangian containing W to a Lagrangian frame of the reduction.
inline LagrangianFrame reduce_lagrangian(const ReducedSpace& r, const RMatrix& w,
                                         const LagrangianFrame& l) {
    RMatrix rest = project_out(l, w);
    return r.projection * rest;
}

}  // namespace casson
