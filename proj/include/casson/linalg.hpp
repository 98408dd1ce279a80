#pragma once

// Small dense-subspace utilities used throughout: orthonormal bases,
// nullspaces, intersections, and tolerance-guarded rank decisions.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "core.hpp"

namespace casson {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Numerical rank with an ambiguity window around tol*sigma_max.  When a
// singular value falls inside [thr/16, thr*16], the decision is flagged.
inline int numerical_rank(const RVector& sv, double tol, bool* ambiguous = nullptr) {
    if (ambiguous) *ambiguous = false;
    if (sv.size() == 0) return 0;
    double smax = sv(0);
    if (smax <= 0) return 0;
    double thr = tol * smax;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv(i) > thr) ++rank;
        if (ambiguous && sv(i) > thr / 16.0 && sv(i) < thr * 16.0) *ambiguous = true;
    }
    return rank;
}

// Orthonormal basis of the column span.
inline RMatrix orthonormal_basis(const RMatrix& m, double tol = 1e-10) {
    if (m.cols() == 0) return RMatrix(m.rows(), 0);
    Eigen::JacobiSVD<RMatrix> svd(m, Eigen::ComputeThinU);
    int rank = numerical_rank(svd.singularValues(), tol);
    return svd.matrixU().leftCols(rank);
}

// Orthonormal basis of the right nullspace of m.
inline RMatrix nullspace(const RMatrix& m, double tol = 1e-10, bool* ambiguous = nullptr) {
    if (m.rows() == 0) return RMatrix::Identity(m.cols(), m.cols());
    Eigen::JacobiSVD<RMatrix> svd(m, Eigen::ComputeFullV);
    int rank = numerical_rank(svd.singularValues(), tol, ambiguous);
    return svd.matrixV().rightCols(m.cols() - rank);
}

// Component of the columns of v orthogonal to span(w), re-orthonormalized.
inline RMatrix project_out(const RMatrix& v, const RMatrix& w, double tol = 1e-10) {
    if (w.cols() == 0) return orthonormal_basis(v, tol);
    RMatrix wb = orthonormal_basis(w, tol);
    RMatrix res = v - wb * (wb.transpose() * v);
    return orthonormal_basis(res, tol);
}

// Basis of span(a) ∩ span(b): null directions of [a_on | -b_on].
inline RMatrix subspace_intersection(const RMatrix& a, const RMatrix& b,
                                     double tol = 1e-8, bool* ambiguous = nullptr) {
    RMatrix ao = orthonormal_basis(a), bo = orthonormal_basis(b);
    if (ao.cols() == 0 || bo.cols() == 0) return RMatrix(a.rows(), 0);
    RMatrix stacked(a.rows(), ao.cols() + bo.cols());
    stacked << ao, -bo;
    RMatrix ns = nullspace(stacked, tol, ambiguous);
    if (ns.cols() == 0) return RMatrix(a.rows(), 0);
    return orthonormal_basis(ao * ns.topRows(ao.cols()), tol);
}

inline RMatrix expm(const RMatrix& m) { return m.exp(); }

// Alias-safe symmetric part.
inline RMatrix symmetrized(const RMatrix& m) {
    RMatrix t = m.transpose();
    return 0.5 * (m + t);
}

// Operator-norm distance between orthogonal projectors onto column spans.
inline double projector_gap(const RMatrix& f, const RMatrix& g) {
    RMatrix fo = orthonormal_basis(f), go = orthonormal_basis(g);
    RMatrix pf = fo * fo.transpose();
    RMatrix pg = go * go.transpose();
    Eigen::JacobiSVD<RMatrix> svd(pf - pg);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

}  // namespace casson
