#pragma once

// Free-group words over the surface generators {a1..ah, b1..bh}, word
// evaluation, and numerical Fox calculus.
//
// Letters are signed 1-based generator indices: +j / -j for generator j and
// its inverse, with a_i = i and b_i = h + i.  Words are kept freely reduced.
//
// fox_jacobian computes the classical Fox derivative pushed through Ad: for
// the perturbation g_j <- exp(tX) g_j, the right-trivialized derivative of
// rho(w) is block_j(X), and blocks satisfy J(uv) = J(u) + Ad_{rho(u)} J(v).

#include <string>
#include <vector>

#include "lie_group.hpp"

namespace casson {

class Word {
public:
    Word() = default;
    explicit Word(std::vector<int> letters) : letters_(std::move(letters)) { reduce(); }

    const std::vector<int>& letters() const { return letters_; }
    bool empty() const { return letters_.empty(); }
    std::size_t size() const { return letters_.size(); }

    Word operator*(const Word& o) const {
        std::vector<int> cat = letters_;
        cat.insert(cat.end(), o.letters_.begin(), o.letters_.end());
        return Word(std::move(cat));
    }

    Word inverse() const {
        std::vector<int> inv;
        inv.reserve(letters_.size());
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) inv.push_back(-*it);
        return Word(std::move(inv));
    }

    Word power(int k) const {
        Word r;
        Word base = k >= 0 ? *this : inverse();
        for (int i = 0; i < std::abs(k); ++i) r = r * base;
        return r;
    }

    bool operator==(const Word& o) const { return letters_ == o.letters_; }

private:
    void reduce() {
        std::vector<int> out;
        for (int l : letters_) {
            if (l == 0) throw ParseError("word letter 0");
            if (!out.empty() && out.back() == -l) out.pop_back();
            else out.push_back(l);
        }
        letters_ = std::move(out);
    }

    std::vector<int> letters_;
};

// Parse "a1 b2' a1' ..." with genus h; inverse marked by trailing '.
inline Word parse_word(const std::string& text, int genus) {
    std::vector<int> letters;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) { ++i; continue; }
        char kind = text[i];
        if (kind != 'a' && kind != 'b')
            throw ParseError("word: expected generator 'a' or 'b' at \"" + text.substr(i) + "\"");
        ++i;
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) throw ParseError("word: missing generator index in \"" + text + "\"");
        int idx = std::stoi(text.substr(start, i - start));
        if (idx < 1 || idx > genus)
            throw ParseError("word: generator index out of range in \"" + text + "\"");
        int letter = (kind == 'a') ? idx : genus + idx;
        if (i < text.size() && text[i] == '\'') { letter = -letter; ++i; }
        letters.push_back(letter);
    }
    return Word(std::move(letters));
}

inline std::string format_word(const Word& w, int genus) {
    std::string out;
    for (int l : w.letters()) {
        if (!out.empty()) out += ' ';
        int j = std::abs(l);
        out += (j <= genus) ? 'a' : 'b';
        out += std::to_string(j <= genus ? j : j - genus);
        if (l < 0) out += '\'';
    }
    return out;
}

// Assignment of one group element per generator (size 2h).
using Assignment = std::vector<GroupElement>;

inline GroupElement evaluate(const Word& w, const Assignment& rho) {
    if (rho.empty()) throw Error("evaluate: empty assignment");
    GroupElement acc = GroupElement::identity(rho.front().tag());
    for (int l : w.letters()) {
        const GroupElement& g = rho[static_cast<std::size_t>(std::abs(l) - 1)];
        acc = acc * (l > 0 ? g : g.inverse());
    }
    return acc;
}

// The surface relator  prod_i [a_i, b_i]  for genus h.
inline Word surface_relator(int genus) {
    std::vector<int> letters;
    for (int i = 1; i <= genus; ++i) {
        int a = i, b = genus + i;
        letters.insert(letters.end(), {a, b, -a, -b});
    }
    return Word(std::move(letters));
}

struct FoxJacobian {
    // One (dim g x dim g) real block per generator, acting on algebra coords.
    std::vector<RMatrix> blocks;
    GroupElement value;  // rho(w)

    FoxJacobian(std::vector<RMatrix> b, GroupElement v)
        : blocks(std::move(b)), value(std::move(v)) {}

    // Apply to a stacked tangent vector in (dim g)^{2h}.
    RVector apply(const RVector& stacked) const {
        const int d = static_cast<int>(blocks.front().rows());
        RVector out = RVector::Zero(d);
        for (std::size_t j = 0; j < blocks.size(); ++j)
            out += blocks[j] * stacked.segment(static_cast<int>(j) * d, d);
        return out;
    }

    // As a d x (2h d) matrix.
    RMatrix matrix() const {
        const int d = static_cast<int>(blocks.front().rows());
        RMatrix m(d, static_cast<int>(blocks.size()) * d);
        for (std::size_t j = 0; j < blocks.size(); ++j)
            m.middleCols(static_cast<int>(j) * d, d) = blocks[j];
        return m;
    }
};

inline FoxJacobian fox_jacobian(const Word& w, const Assignment& rho) {
    if (rho.empty()) throw Error("fox_jacobian: empty assignment");
    const Group tag = rho.front().tag();
    const int d = algebra_dim(tag);
    std::vector<RMatrix> blocks(rho.size(), RMatrix::Zero(d, d));
    GroupElement prefix = GroupElement::identity(tag);
    for (int l : w.letters()) {
        std::size_t j = static_cast<std::size_t>(std::abs(l) - 1);
        const GroupElement& g = rho[j];
        if (l > 0) {
            blocks[j] += adjoint_rep(prefix);
            prefix = prefix * g;
        } else {
            prefix = prefix * g.inverse();
            blocks[j] -= adjoint_rep(prefix);
        }
    }
    return FoxJacobian(std::move(blocks), std::move(prefix));
}

// Signed exponent sums: words x generators, integer entries.
inline Eigen::MatrixXi abelianization_matrix(const std::vector<Word>& words, int genus) {
    Eigen::MatrixXi m = Eigen::MatrixXi::Zero(static_cast<int>(words.size()), 2 * genus);
    for (int i = 0; i < static_cast<int>(words.size()); ++i)
        for (int l : words[static_cast<std::size_t>(i)].letters())
            m(i, std::abs(l) - 1) += (l > 0 ? 1 : -1);
    return m;
}

}  // namespace casson
