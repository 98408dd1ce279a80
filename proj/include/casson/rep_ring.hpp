#pragma once

// Representation-ring bookkeeping: finite combinations of irreducible labels
// of a compact group H, housing equivariant spectral flows and Maslov
// indices.  Coefficients are integers for flows/indices; reals are allowed
// for Chern-Simons-corrected quantities.

#include <map>
#include <sstream>
#include <string>

#include "symplectic.hpp"

namespace casson {

// d_V(r): dimension of self-adjoint H-intertwiners on V^r for an irreducible
// orthogonal V of type K (used by degeneracy diagnostics).
inline int intertwiner_sym_dim(char type, int r) {
    switch (type) {
        case 'R': return r * (r + 1) / 2;
        case 'C': return r * r;
        case 'H': return 2 * r * r - r;
    }
    throw Error("intertwiner_sym_dim: type must be R, C or H");
}

class RepRingElt {
public:
    RepRingElt() = default;
    RepRingElt(HGroup tag, int cyclic_order = 0) : tag_(tag), order_(cyclic_order) {}

    static RepRingElt scalar(double v) {
        RepRingElt e(HGroup::Trivial);
        e.set(0, v);
        return e;
    }

    HGroup tag() const { return tag_; }
    int cyclic_order() const { return order_; }

    double coeff(int label) const {
        auto it = coeffs_.find(label);
        return it == coeffs_.end() ? 0.0 : it->second;
    }

    void set(int label, double v) {
        if (v == 0.0) coeffs_.erase(label);
        else coeffs_[label] = v;
    }

    void add(int label, double v) { set(label, coeff(label) + v); }

    const std::map<int, double>& coefficients() const { return coeffs_; }

    int dim_real(int label) const {
        switch (tag_) {
            case HGroup::Trivial: return 1;
            case HGroup::U1: return label == 0 ? 1 : 2;
            case HGroup::Cyclic: return (label == 0 || 2 * label == order_) ? 1 : 2;
        }
        return 1;
    }

    // Forgetting the action: sum of dim_R(V_i) * coefficient.
    double weighted_total() const {
        double t = 0;
        for (const auto& [label, c] : coeffs_) t += dim_real(label) * c;
        return t;
    }

    RepRingElt operator+(const RepRingElt& o) const {
        require_same(o);
        RepRingElt r = *this;
        for (const auto& [label, c] : o.coeffs_) r.add(label, c);
        return r;
    }

    RepRingElt operator-() const {
        RepRingElt r(tag_, order_);
        for (const auto& [label, c] : coeffs_) r.set(label, -c);
        return r;
    }

    RepRingElt operator-(const RepRingElt& o) const { return *this + (-o); }

    RepRingElt operator*(double s) const {
        RepRingElt r(tag_, order_);
        for (const auto& [label, c] : coeffs_) r.set(label, s * c);
        return r;
    }

    bool approx_equal(const RepRingElt& o, double tol = 1e-9) const {
        if (tag_ != o.tag_ || order_ != o.order_) return false;
        for (const auto& [label, c] : coeffs_)
            if (std::abs(c - o.coeff(label)) > tol) return false;
        for (const auto& [label, c] : o.coeffs_)
            if (std::abs(c - coeff(label)) > tol) return false;
        return true;
    }

    bool operator==(const RepRingElt& o) const { return approx_equal(o, 0.0); }

    std::string label_name(int label) const {
        switch (tag_) {
            case HGroup::Trivial: return "1";
            case HGroup::U1: return "w" + std::to_string(label);
            case HGroup::Cyclic: return "j" + std::to_string(label);
        }
        return "?";
    }

    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::ostringstream os;
        bool leading = true;
        for (const auto& [label, c] : coeffs_) {
            if (!leading) os << " + ";
            os << c << "*[" << label_name(label) << "]";
            leading = false;
        }
        return os.str();
    }

private:
    void require_same(const RepRingElt& o) const {
        if (tag_ != o.tag_ || order_ != o.order_)
            throw Error("representation ring mismatch: " + str() + " vs " + o.str());
    }

    HGroup tag_ = HGroup::Trivial;
    int order_ = 0;
    std::map<int, double> coeffs_;
};

inline RepRingElt operator*(double s, const RepRingElt& e) { return e * s; }

}  // namespace casson
