#include <catch2/catch_amalgamated.hpp>

#include "path_helpers.hpp"

using namespace casson;
using namespace casson::testpaths;

namespace {

// Retry helper: a random path can legitimately raise DegenerateCrossing when
// a crossing sits at the resolution limit; regenerate in that case.
template <typename Make>
LagrangianPath usable_path(Make&& make, Rng& rng, int* mu_out = nullptr) {
    for (int attempt = 0; attempt < 20; ++attempt) {
        LagrangianPath p = make(rng);
        try {
            int mu = maslov_crossing(p);
            if (mu_out) *mu_out = mu;
            return p;
        } catch (const DegenerateCrossingError&) {
        }
    }
    throw Error("could not draw a non-degenerate random path");
}

}  // namespace

TEST_CASE("maslov normalization") {
    LagrangianPath p = normalization_path(-M_PI / 4, M_PI / 4);
    REQUIRE(maslov_crossing(p) == 1);
    REQUIRE(maslov_spectral(p) == 1);
    // the half-interval conventions fixed alongside the headline value
    REQUIRE(maslov_crossing(normalization_path(-M_PI / 4, 0.0)) == 0);
    REQUIRE(maslov_crossing(normalization_path(0.0, M_PI / 4)) == 1);
    REQUIRE(maslov_spectral(normalization_path(-M_PI / 4, 0.0)) == 0);
    REQUIRE(maslov_spectral(normalization_path(0.0, M_PI / 4)) == 1);
}

TEST_CASE("constant transverse pair has index 0") {
    LagrangianPath p;
    p.space = standard_pairs(1);
    for (int k = 0; k < 10; ++k) {
        double t = k / 9.0;
        RMatrix l1(2, 1), l2(2, 1);
        l1 << 1, 0;
        l2 << 0.3, 1;
        p.times.push_back(t);
        p.first.push_back(l1);
        p.second.push_back(l2);
    }
    REQUIRE(maslov_crossing(p) == 0);
    REQUIRE(maslov_spectral(p) == 0);
}

TEST_CASE("normalization path concatenated with its reversal cancels") {
    LagrangianPath fwd = normalization_path(-M_PI / 4, M_PI / 4);
    LagrangianPath bwd = fwd.reversed();
    REQUIRE(maslov_crossing(fwd) + maslov_crossing(bwd) == 0);
}

TEST_CASE("dual-algorithm equality on random certified paths") {
    Rng rng(101);
    int checked = 0;
    for (int trial = 0; trial < 12; ++trial) {
        int two_n = 2 * (1 + trial % 3);
        int mu = 0;
        LagrangianPath p = usable_path(
            [&](Rng& r) { return random_path(two_n, r, 50); }, rng, &mu);
        REQUIRE(maslov_spectral(p, 48) == mu);
        ++checked;
    }
    REQUIRE(checked == 12);
}

TEST_CASE("maslov axioms on random paths") {
    Rng rng(211);
    SECTION("concatenation additivity") {
        for (int trial = 0; trial < 8; ++trial) {
            LagrangianPath p = usable_path(
                [&](Rng& r) { return random_path(4, r, 81); }, rng);
            // split at an interior sample
            LagrangianPath left, right;
            left.space = right.space = p.space;
            const std::size_t cut = 40;
            for (std::size_t k = 0; k <= cut; ++k) {
                left.times.push_back(p.times[k]);
                left.first.push_back(p.first[k]);
                left.second.push_back(p.second[k]);
            }
            for (std::size_t k = cut; k < p.size(); ++k) {
                right.times.push_back(p.times[k]);
                right.first.push_back(p.first[k]);
                right.second.push_back(p.second[k]);
            }
            try {
                int total = maslov_crossing(p);
                REQUIRE(maslov_crossing(left) + maslov_crossing(right) == total);
            } catch (const DegenerateCrossingError&) {
                // a crossing sits at the cut; acceptable for the sliced pieces
            }
        }
    }
    SECTION("direct-sum additivity") {
        for (int trial = 0; trial < 8; ++trial) {
            int mu1 = 0, mu2 = 0;
            LagrangianPath a = usable_path(
                [&](Rng& r) { return random_path(2, r, 60); }, rng, &mu1);
            LagrangianPath b = usable_path(
                [&](Rng& r) { return random_path(4, r, 60); }, rng, &mu2);
            LagrangianPath sum;
            sum.space = standard_pairs(3);
            for (std::size_t k = 0; k < a.size(); ++k) {
                RMatrix l1 = RMatrix::Zero(6, 3), l2 = RMatrix::Zero(6, 3);
                l1.block(0, 0, 2, 1) = a.first[k];
                l1.block(2, 1, 4, 2) = b.first[k];
                l2.block(0, 0, 2, 1) = a.second[k];
                l2.block(2, 1, 4, 2) = b.second[k];
                sum.times.push_back(a.times[k]);
                sum.first.push_back(l1);
                sum.second.push_back(l2);
            }
            REQUIRE(maslov_crossing(sum) == mu1 + mu2);
        }
    }
    SECTION("affine reparametrization invariance") {
        for (int trial = 0; trial < 8; ++trial) {
            int mu = 0;
            LagrangianPath p = usable_path(
                [&](Rng& r) { return random_path(4, r, 60); }, rng, &mu);
            LagrangianPath q = p;
            for (auto& t : q.times) t = 2.5 * t + 0.7;
            REQUIRE(maslov_crossing(q) == mu);
        }
    }
    SECTION("framing invariance under symplectic-matrix paths") {
        for (int trial = 0; trial < 8; ++trial) {
            int mu = 0;
            LagrangianPath p = usable_path(
                [&](Rng& r) { return random_path(4, r, 60); }, rng, &mu);
            RMatrix gen = p.space.omega.inverse() * RMatrix::Identity(4, 4);
            RMatrix h(4, 4);
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) h(r, c) = rng.normal();
            gen = p.space.omega.inverse() * (0.5 * (h + h.transpose()));
            LagrangianPath q = p;
            for (std::size_t k = 0; k < p.size(); ++k) {
                RMatrix phi = expm(0.8 * p.times[k] * gen);
                q.first[k] = phi * p.first[k];
                q.second[k] = phi * p.second[k];
            }
            REQUIRE(maslov_crossing(q) == mu);
        }
    }
    SECTION("endpoint-fixed homotopy invariance under small interior wiggles") {
        for (int trial = 0; trial < 8; ++trial) {
            int mu = 0;
            LagrangianPath p = usable_path(
                [&](Rng& r) { return random_path(4, r, 60); }, rng, &mu);
            LagrangianPath q = p;
            RMatrix h(4, 4);
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) h(r, c) = rng.normal();
            RMatrix gen = p.space.omega.inverse() * (0.5 * (h + h.transpose()));
            for (std::size_t k = 0; k < p.size(); ++k) {
                double bump = std::sin(M_PI * p.times[k]);
                RMatrix phi = expm(0.05 * bump * gen);
                q.first[k] = phi * p.first[k];
                q.second[k] = phi * p.second[k];
            }
            try {
                REQUIRE(maslov_crossing(q) == mu);
            } catch (const DegenerateCrossingError&) {
                // the wiggle parked a crossing at the resolution limit
            }
        }
    }
}

TEST_CASE("equivariant maslov") {
    SECTION("trivial group gives a single coefficient") {
        LagrangianPath p = normalization_path(-M_PI / 4, M_PI / 4);
        RepRingElt e = equivariant_maslov(p, RMatrix(2, 0));
        REQUIRE(e.tag() == HGroup::Trivial);
        REQUIRE(e.coeff(0) == 1.0);
    }
    SECTION("weight 0 + weight 2 rotation: 1*[w0] + 1*[w2]") {
        // w0 block: normalization rotation; w2 block: invariant conjugation
        // planes rotating once through each other over [-pi/4, pi/4].
        const int dim = 6;
        SymplecticSpace s = standard_pairs(3);
        RMatrix k = RMatrix::Zero(dim, dim);
        k.block(2, 2, 2, 2) << 0, -2, 2, 0;
        k.block(4, 4, 2, 2) << 0, 2, -2, 0;
        s.action = GroupAction::u1(k);
        LagrangianPath p;
        p.space = s;
        const int samples = 61;
        for (int i = 0; i < samples; ++i) {
            double t = -M_PI / 4 + (M_PI / 2) * i / (samples - 1);
            RMatrix l1 = RMatrix::Zero(dim, 3), l2 = RMatrix::Zero(dim, 3);
            l1(0, 0) = 1;                       // R{1}
            l1(2, 1) = 1; l1(4, 1) = 1;         // conjugation plane
            l1(3, 2) = 1; l1(5, 2) = -1;
            l2(0, 0) = std::cos(t); l2(1, 0) = std::sin(t);
            // rotate the conjugation plane by the invariant flow of angle t:
            // (z, zbar) -> (e^{it} z, e^{-it} zbar)
            l2(2, 1) = std::cos(t); l2(3, 1) = std::sin(t);
            l2(4, 1) = std::cos(t); l2(5, 1) = -std::sin(t);
            l2(2, 2) = -std::sin(t); l2(3, 2) = std::cos(t);
            l2(4, 2) = -std::sin(t); l2(5, 2) = -std::cos(t);
            p.times.push_back(t);
            p.first.push_back(l1);
            p.second.push_back(l2);
        }
        RepRingElt e = equivariant_maslov(p, RMatrix(dim, 0));
        REQUIRE(e.coeff(0) == 1.0);   // [w0]
        REQUIRE(e.coeff(2) == 1.0);   // [w2]: block index 2 divided by dim_R 2
        REQUIRE(e.weighted_total() == Catch::Approx(3.0));
    }
    SECTION("forgetting the action reproduces the plain index") {
        Rng rng(331);
        for (int trial = 0; trial < 6; ++trial) {
            EquivariantPath ep = random_u1_path(1 + trial % 2, 1 + trial % 3, rng, 50);
            try {
                RepRingElt e = equivariant_maslov(ep.path, RMatrix(ep.path.space.dim(), 0));
                LagrangianPath plain = ep.path;
                plain.space.action = GroupAction::trivial();
                REQUIRE(e.weighted_total() ==
                        Catch::Approx(static_cast<double>(maslov_crossing(plain))));
            } catch (const DegenerateCrossingError&) {
            }
        }
    }
}
