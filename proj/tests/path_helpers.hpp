#pragma once

// Shared generators of certified Lagrangian paths for the Maslov tests and
// the acceptance suite.

#include "casson/maslov.hpp"

namespace casson::testpaths {

// Direct sum of 2x2 standard blocks: omega pairs (2i, 2i+1).
inline SymplecticSpace standard_pairs(int pairs) {
    RMatrix om = RMatrix::Zero(2 * pairs, 2 * pairs);
    for (int i = 0; i < pairs; ++i) {
        om(2 * i, 2 * i + 1) = 1;
        om(2 * i + 1, 2 * i) = -1;
    }
    return SymplecticSpace{om, GroupAction::trivial()};
}

// The normalization path (R{1}, R{e^{it}}) over [t0, t1].
inline LagrangianPath normalization_path(double t0, double t1, int samples = 41) {
    LagrangianPath p;
    p.space = standard_pairs(1);
    for (int k = 0; k < samples; ++k) {
        double t = t0 + (t1 - t0) * k / (samples - 1);
        RMatrix l1(2, 1), l2(2, 1);
        l1 << 1, 0;
        l2 << std::cos(t), std::sin(t);
        p.times.push_back(t);
        p.first.push_back(l1);
        p.second.push_back(l2);
    }
    return p;
}

// Random certified path in dimension two_n: both Lagrangians flow under
// independent one-parameter symplectic groups.
inline LagrangianPath random_path(int two_n, Rng& rng, int samples = 60,
                                  double speed = 2.0) {
    SymplecticSpace s = standard_pairs(two_n / 2);
    RMatrix j = compatible_complex_structure(s);
    LagrangianFrame l1 = random_lagrangian(s, j, rng);
    LagrangianFrame l2 = random_lagrangian(s, j, rng);
    auto hamiltonian = [&]() {
        RMatrix h(two_n, two_n);
        for (int r = 0; r < two_n; ++r)
            for (int c = 0; c < two_n; ++c) h(r, c) = rng.normal();
        return RMatrix(s.omega.inverse() * (0.5 * (h + h.transpose())));
    };
    RMatrix g1 = hamiltonian(), g2 = hamiltonian();
    LagrangianPath p;
    p.space = s;
    for (int k = 0; k < samples; ++k) {
        double t = static_cast<double>(k) / (samples - 1);
        p.times.push_back(t);
        p.first.push_back(expm(speed * t * g1) * l1);
        p.second.push_back(expm(speed * t * g2) * l2);
    }
    return p;
}

struct EquivariantPath {
    LagrangianPath path;        // space carries the U(1) action
};

// U(1)-invariant random path on R^{2a} (weight 0) + R^4 (weights +-w with
// invariant Lagrangian planes of conjugation type).
inline EquivariantPath random_u1_path(int a_pairs, int weight, Rng& rng,
                                      int samples = 50, double speed = 1.6) {
    const int dim = 2 * a_pairs + 4;
    SymplecticSpace s = standard_pairs(dim / 2);
    RMatrix k = RMatrix::Zero(dim, dim);
    int off = 2 * a_pairs;
    k.block(off, off, 2, 2) << 0, -static_cast<double>(weight), weight, 0;
    k.block(off + 2, off + 2, 2, 2) << 0, static_cast<double>(weight), -weight, 0;
    s.action = GroupAction::u1(k);
    s.check(1e-9);

    RMatrix j = compatible_complex_structure(s);
    // Invariant base Lagrangian: random in the weight-0 part, conjugation
    // plane in the weight block.
    SymplecticSpace s0 = standard_pairs(a_pairs);
    RMatrix j0 = compatible_complex_structure(s0);
    auto invariant_lagrangian = [&]() {
        RMatrix l = RMatrix::Zero(dim, dim / 2);
        if (a_pairs > 0) {
            LagrangianFrame base = random_lagrangian(s0, j0, rng);
            l.block(0, 0, 2 * a_pairs, a_pairs) = base;
        }
        l(off + 0, a_pairs) = 1;
        l(off + 2, a_pairs) = 1;
        l(off + 1, a_pairs + 1) = 1;
        l(off + 3, a_pairs + 1) = -1;
        return l;
    };
    auto invariant_flow_generator = [&]() {
        RMatrix h(dim, dim);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) h(r, c) = rng.normal();
        RMatrix sym = 0.5 * (h + h.transpose());
        RMatrix avg = RMatrix::Zero(dim, dim);
        auto samples_g = s.action.samples(64);
        for (const auto& g : samples_g) avg += g.transpose() * sym * g;
        avg /= static_cast<double>(samples_g.size());
        return RMatrix(s.omega.inverse() * avg);
    };
    RMatrix g1 = invariant_flow_generator(), g2 = invariant_flow_generator();
    LagrangianFrame l1 = invariant_lagrangian(), l2 = invariant_lagrangian();
    EquivariantPath out;
    out.path.space = s;
    for (int kk = 0; kk < samples; ++kk) {
        double t = static_cast<double>(kk) / (samples - 1);
        out.path.times.push_back(t);
        out.path.first.push_back(expm(speed * t * g1) * l1);
        out.path.second.push_back(expm(speed * t * g2) * l2);
    }
    return out;
}

}  // namespace casson::testpaths
