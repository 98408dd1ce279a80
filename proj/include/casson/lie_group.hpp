#pragma once

// SU(2)/SU(3), their Lie algebras, exp/log, and the adjoint action.
//
// Conventions fixed here and used everywhere downstream:
//   * inner product on su(n):  <X,Y> = -tr(XY)  (real on skew-Hermitian
//     traceless matrices, positive definite, Ad-invariant);
//   * the orthonormal algebra basis is i*sigma_k/sqrt(2) for su(2) and
//     i*lambda_a/sqrt(2) (Gell-Mann) for su(3);
//   * adjoint_rep(g) is the matrix of X -> g X g^* in that basis, an
//     element of SO(dim g).

#include <array>
#include <vector>

#include "linalg.hpp"

namespace casson {

enum class Group { SU2, SU3 };

inline int matrix_size(Group g) { return g == Group::SU2 ? 2 : 3; }
inline int algebra_dim(Group g) { return g == Group::SU2 ? 3 : 8; }
inline const char* group_name(Group g) { return g == Group::SU2 ? "SU2" : "SU3"; }

namespace detail {

inline const std::vector<CMatrix>& algebra_basis(Group g) {
    static const std::vector<CMatrix> su2 = [] {
        const Complex i(0, 1);
        const double s = 1.0 / std::sqrt(2.0);
        std::vector<CMatrix> b;
        CMatrix m(2, 2);
        m << 0, 1, 1, 0;                 b.push_back(i * s * m);
        m << 0, Complex(0, -1), Complex(0, 1), 0;  b.push_back(i * s * m);
        m << 1, 0, 0, -1;                b.push_back(i * s * m);
        return b;
    }();
    static const std::vector<CMatrix> su3 = [] {
        const Complex i(0, 1);
        const double s = 1.0 / std::sqrt(2.0);
        std::vector<CMatrix> b;
        auto add = [&](std::initializer_list<Complex> e) {
            CMatrix m(3, 3);
            int k = 0;
            for (Complex v : e) m(k / 3, k % 3) = v, ++k;
            b.push_back(i * s * m);
        };
        const Complex I(0, 1);
        const double r3 = 1.0 / std::sqrt(3.0);
        add({0, 1, 0, 1, 0, 0, 0, 0, 0});
        add({0, -I, 0, I, 0, 0, 0, 0, 0});
        add({1, 0, 0, 0, -1, 0, 0, 0, 0});
        add({0, 0, 1, 0, 0, 0, 1, 0, 0});
        add({0, 0, -I, 0, 0, 0, I, 0, 0});
        add({0, 0, 0, 0, 0, 1, 0, 1, 0});
        add({0, 0, 0, 0, 0, -I, 0, I, 0});
        add({r3, 0, 0, 0, r3, 0, 0, 0, -2 * r3});
        return b;
    }();
    return g == Group::SU2 ? su2 : su3;
}

// Unitary eigendecomposition of a (numerically) unitary matrix: two-pass
// self-adjoint solves on the Hermitian and skew parts, so eigenvectors stay
// orthonormal even at degenerate eigenvalues.
inline void unitary_eigensystem(const CMatrix& u, CMatrix& vectors,
                                Eigen::VectorXcd& values) {
    const int n = static_cast<int>(u.rows());
    CMatrix h = 0.5 * (u + u.adjoint());  // = V cos(theta) V^*
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    CMatrix v = es.eigenvectors();
    // Within clusters of equal cos(theta), diagonalize the skew part.
    CMatrix k = Complex(0, -0.5) * (u - u.adjoint());  // = V sin(theta) V^*
    int start = 0;
    while (start < n) {
        int end = start + 1;
        while (end < n && std::abs(es.eigenvalues()(end) - es.eigenvalues()(start)) < 1e-9)
            ++end;
        if (end - start > 1) {
            CMatrix block = v.middleCols(start, end - start);
            CMatrix kb = block.adjoint() * k * block;
            Eigen::SelfAdjointEigenSolver<CMatrix> es2(0.5 * (kb + kb.adjoint()));
            v.middleCols(start, end - start) = block * es2.eigenvectors();
        }
        start = end;
    }
    vectors = v;
    values.resize(n);
    for (int j = 0; j < n; ++j) {
        Complex lam = v.col(j).adjoint() * u * v.col(j);
        values(j) = lam / std::abs(lam);
    }
}

}  // namespace detail

class GroupElement;

class AlgebraElement {
public:
    AlgebraElement(Group tag, CMatrix m) : tag_(tag), m_(std::move(m)) {}

    static AlgebraElement zero(Group tag) {
        return AlgebraElement(tag, CMatrix::Zero(matrix_size(tag), matrix_size(tag)));
    }

    static AlgebraElement from_coords(Group tag, const RVector& c) {
        const auto& basis = detail::algebra_basis(tag);
        CMatrix m = CMatrix::Zero(matrix_size(tag), matrix_size(tag));
        for (int k = 0; k < static_cast<int>(basis.size()); ++k) m += c(k) * basis[k];
        return AlgebraElement(tag, std::move(m));
    }

    Group tag() const { return tag_; }
    const CMatrix& matrix() const { return m_; }

    RVector coords() const {
        const auto& basis = detail::algebra_basis(tag_);
        RVector c(basis.size());
        for (int k = 0; k < static_cast<int>(basis.size()); ++k)
            c(k) = -(basis[k] * m_).trace().real();
        return c;
    }

    double norm() const { return std::sqrt(std::max(0.0, -(m_ * m_).trace().real())); }

    AlgebraElement operator+(const AlgebraElement& o) const {
        return AlgebraElement(tag_, m_ + o.m_);
    }
    AlgebraElement operator-(const AlgebraElement& o) const {
        return AlgebraElement(tag_, m_ - o.m_);
    }
    AlgebraElement operator*(double s) const { return AlgebraElement(tag_, s * m_); }

    AlgebraElement bracket(const AlgebraElement& o) const {
        return AlgebraElement(tag_, m_ * o.m_ - o.m_ * m_);
    }

    // Defect from su(n): max of skew-Hermitian and traceless violations.
    double invariant_defect() const {
        double skew = (m_ + m_.adjoint()).norm();
        double tr = std::abs(m_.trace());
        return std::max(skew, tr);
    }

private:
    Group tag_;
    CMatrix m_;
};

inline AlgebraElement operator*(double s, const AlgebraElement& x) { return x * s; }

// <X,Y> = -tr(XY).  The scale is the one recorded constant that threads into
// symplectic-area normalization; see pipeline.hpp.
struct InvariantForm {
    double scale = 1.0;
    double operator()(const AlgebraElement& x, const AlgebraElement& y) const {
        return -scale * (x.matrix() * y.matrix()).trace().real();
    }
};

// Projection of an arbitrary complex matrix onto su(n).
inline CMatrix project_algebra(const CMatrix& m) {
    CMatrix s = 0.5 * (m - m.adjoint());
    const int n = static_cast<int>(m.rows());
    s -= (s.trace() / static_cast<double>(n)) * CMatrix::Identity(n, n);
    return s;
}

class GroupElement {
public:
    GroupElement(Group tag, CMatrix m, int mults = 0)
        : tag_(tag), m_(std::move(m)), mults_(mults) {
        if (mults_ >= kRenormalizeEvery) renormalize();
    }

    static GroupElement identity(Group tag) {
        const int n = matrix_size(tag);
        return GroupElement(tag, CMatrix::Identity(n, n));
    }

    Group tag() const { return tag_; }
    const CMatrix& matrix() const { return m_; }
    int multiplications() const { return mults_; }

    GroupElement operator*(const GroupElement& o) const {
        return GroupElement(tag_, m_ * o.m_, std::max(mults_, o.mults_) + 1);
    }

    GroupElement inverse() const { return GroupElement(tag_, m_.adjoint(), mults_); }

    GroupElement conjugated_by(const GroupElement& g) const {
        return GroupElement(tag_, g.matrix() * m_ * g.matrix().adjoint(),
                            std::max(mults_, g.mults_) + 2);
    }

    double distance_to_identity() const {
        const int n = matrix_size(tag_);
        return (m_ - CMatrix::Identity(n, n)).norm();
    }

    // Polar projection back onto SU(n); keeps drift bounded.
    void renormalize() {
        Eigen::JacobiSVD<CMatrix> svd(m_, Eigen::ComputeFullU | Eigen::ComputeFullV);
        m_ = svd.matrixU() * svd.matrixV().adjoint();
        Complex d = m_.determinant();
        double phi = std::arg(d);
        const int n = matrix_size(tag_);
        m_ *= std::polar(1.0, -phi / n);
        mults_ = 0;
    }

    double invariant_defect() const {
        const int n = matrix_size(tag_);
        double unit = (m_.adjoint() * m_ - CMatrix::Identity(n, n)).norm();
        double det = std::abs(m_.determinant() - Complex(1, 0));
        return std::max(unit, det);
    }

    static constexpr int kRenormalizeEvery = 100;

private:
    Group tag_;
    CMatrix m_;
    int mults_;
};

inline GroupElement exp_map(const AlgebraElement& x) {
    // X = iH with H Hermitian; exp(X) = V exp(i diag) V^*.
    CMatrix h = Complex(0, -1) * x.matrix();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
    const int n = static_cast<int>(h.rows());
    Eigen::VectorXcd phases(n);
    for (int j = 0; j < n; ++j) phases(j) = std::polar(1.0, es.eigenvalues()(j));
    CMatrix g = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    return GroupElement(x.tag(), std::move(g));
}

// Principal-branch logarithm with the total phase balanced so that the result
// is traceless and of minimal norm among branches.  Throws BranchCutError when
// an eigenvalue is within 1e-8 of -1.
inline AlgebraElement log_map(const GroupElement& g) {
    CMatrix v;
    Eigen::VectorXcd lam;
    detail::unitary_eigensystem(g.matrix(), v, lam);
    const int n = static_cast<int>(lam.size());
    for (int j = 0; j < n; ++j)
        if (std::abs(lam(j) + Complex(1, 0)) <= 1e-8)
            throw BranchCutError("log_map: eigenvalue within 1e-8 of -1");
    std::vector<double> theta(n);
    double total = 0;
    for (int j = 0; j < n; ++j) {
        theta[j] = std::arg(lam(j));
        total += theta[j];
    }
    const double two_pi = 2.0 * M_PI;
    int deficit = -static_cast<int>(std::llround(total / two_pi));
    // Distribute the 2*pi deficit over eigenvalues minimizing sum theta'^2.
    std::vector<int> best(n, 0);
    double best_cost = -1;
    std::vector<int> shift(n, -2);
    while (true) {
        int sum = 0;
        for (int s : shift) sum += s;
        if (sum == deficit) {
            double cost = 0;
            for (int j = 0; j < n; ++j) {
                double t = theta[j] + two_pi * shift[j];
                cost += t * t;
            }
            if (best_cost < 0 || cost < best_cost) {
                best_cost = cost;
                best = shift;
            }
        }
        int k = 0;
        while (k < n && shift[k] == 2) shift[k++] = -2;
        if (k == n) break;
        ++shift[k];
    }
    Eigen::VectorXcd d(n);
    for (int j = 0; j < n; ++j) d(j) = Complex(0, theta[j] + two_pi * best[j]);
    CMatrix x = v * d.asDiagonal() * v.adjoint();
    return AlgebraElement(g.tag(), project_algebra(x));
}

// Matrix of Ad_g in the orthonormal algebra basis; lands in SO(dim g).
inline RMatrix adjoint_rep(const GroupElement& g) {
    const auto& basis = detail::algebra_basis(g.tag());
    const int d = static_cast<int>(basis.size());
    RMatrix m(d, d);
    for (int b = 0; b < d; ++b) {
        CMatrix gb = g.matrix() * basis[b] * g.matrix().adjoint();
        for (int a = 0; a < d; ++a) m(a, b) = -(basis[a] * gb).trace().real();
    }
    return m;
}

inline AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& x) {
    return AlgebraElement(x.tag(), g.matrix() * x.matrix() * g.matrix().adjoint());
}

inline AlgebraElement random_algebra(Group tag, Rng& rng, double scale = 1.0) {
    RVector c(algebra_dim(tag));
    for (int k = 0; k < c.size(); ++k) c(k) = scale * rng.normal();
    return AlgebraElement::from_coords(tag, c);
}

// Haar-distributed element (Ginibre + QR with phase fix, det-normalized).
inline GroupElement random_group(Group tag, Rng& rng) {
    const int n = matrix_size(tag);
    CMatrix z(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) z(r, c) = Complex(rng.normal(), rng.normal());
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ();
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        Complex d = r(j, j);
        q.col(j) *= (std::abs(d) > 0 ? d / std::abs(d) : Complex(1, 0));
    }
    GroupElement g(tag, std::move(q));
    g.renormalize();
    return g;
}

}  // namespace casson
