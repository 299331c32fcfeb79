#pragma once

#include <map>
#include <span>
#include <vector>

#include "swnfock/testfn.hpp"

namespace swnfock {

enum class GenKind { Creator, Annihilator, Number };

template <class S>
struct Generator {
    GenKind kind;
    StepFunction<S> label;
};

/// coeff * B*_{h1} ... B*_{hk} Phi. Empty label list with coeff 1 is the vacuum.
template <class S>
struct NormalWord {
    cplx<S> coeff;
    std::vector<StepFunction<S>> labels;
};

/// Finite linear combination of normal words, kept in canonical form:
/// labels re-expressed on a common partition, sorted (creators commute),
/// and equal words merged.
template <class S>
struct CreatorVector {
    std::vector<NormalWord<S>> terms;

    static CreatorVector vacuum() { return {{NormalWord<S>{cplx<S>(S(1)), {}}}}; }

    bool is_zero() const { return terms.empty(); }

    /// Coefficient of the vacuum word; all longer words are orthogonal to Phi.
    cplx<S> vacuum_coefficient() const {
        for (const auto& w : terms)
            if (w.labels.empty()) return w.coeff;
        return {};
    }

    void canonicalize();
};

namespace detail {

template <class S>
struct CplxVecLess {
    bool operator()(const std::vector<cplx<S>>& a, const std::vector<cplx<S>>& b) const {
        for (size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
            if (!(a[i] == b[i])) return lex_less(a[i], b[i]);
        }
        return a.size() < b.size();
    }
};

template <class S>
struct WordKeyLess {
    CplxVecLess<S> inner;
    bool operator()(const std::vector<std::vector<cplx<S>>>& a,
                    const std::vector<std::vector<cplx<S>>>& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        for (size_t i = 0; i < a.size(); ++i) {
            bool lt = inner(a[i], b[i]);
            bool gt = inner(b[i], a[i]);
            if (lt || gt) return lt;
        }
        return false;
    }
};

}  // namespace detail

template <class S>
void CreatorVector<S>::canonicalize() {
    std::erase_if(terms, [](const NormalWord<S>& w) { return w.coeff.is_zero(); });
    if (terms.empty()) return;

    // common elementary partition for all labels of all terms
    StepFunction<S> all;
    all.dim = terms.front().labels.empty() ? 1 : terms.front().labels.front().dim;
    for (const auto& w : terms)
        for (const auto& l : w.labels) {
            all.dim = l.dim;
            for (const auto& c : l.cells) all.cells.push_back({c.first, cplx<S>(S(1))});
        }
    // boxes may overlap across labels; refine against itself via the grid of
    // all breakpoints (value_at picks the first hit, which is fine: only the
    // box list matters here)
    auto grid = refine_common(all, all);

    std::map<std::vector<std::vector<cplx<S>>>, cplx<S>, detail::WordKeyLess<S>> merged;
    for (const auto& w : terms) {
        std::vector<std::vector<cplx<S>>> key;
        key.reserve(w.labels.size());
        bool word_is_zero = false;
        for (const auto& l : w.labels) {
            std::vector<cplx<S>> vals;
            vals.reserve(grid.boxes.size());
            bool nonzero = false;
            for (const auto& box : grid.boxes) {
                cplx<S> v = l.value_at(box.midpoint());
                nonzero = nonzero || !v.is_zero();
                vals.push_back(std::move(v));
            }
            if (!nonzero) {  // B*_0 = 0 kills the word
                word_is_zero = true;
                break;
            }
            key.push_back(std::move(vals));
        }
        if (word_is_zero) continue;
        std::sort(key.begin(), key.end(), detail::CplxVecLess<S>{});
        merged[std::move(key)] += w.coeff;
    }

    terms.clear();
    const int d = all.dim;
    for (auto& [key, coeff] : merged) {
        if (coeff.is_zero()) continue;
        NormalWord<S> w;
        w.coeff = coeff;
        for (const auto& vals : key) {
            StepFunction<S> label;
            label.dim = d;
            for (size_t i = 0; i < grid.boxes.size(); ++i)
                if (!vals[i].is_zero()) label.cells.emplace_back(grid.boxes[i], vals[i]);
            w.labels.push_back(std::move(label));
        }
        terms.push_back(std::move(w));
    }
}

/// B*_f v: prepend the label to every word.
template <class S>
CreatorVector<S> apply_creator(const StepFunction<S>& f, const CreatorVector<S>& v) {
    CreatorVector<S> out;
    if (f.is_zero()) return out;
    for (const auto& w : v.terms) {
        NormalWord<S> nw = w;
        nw.labels.insert(nw.labels.begin(), f);
        out.terms.push_back(std::move(nw));
    }
    out.canonicalize();
    return out;
}

/// N_g B*_{h1}...B*_{hk} Phi = sum_j 2 B*_{h1}...B*_{g hj}...B*_{hk} Phi,
/// and N_g Phi = 0.
template <class S>
CreatorVector<S> apply_number(const StepFunction<S>& g, const CreatorVector<S>& v) {
    CreatorVector<S> out;
    for (const auto& w : v.terms) {
        for (size_t j = 0; j < w.labels.size(); ++j) {
            NormalWord<S> nw = w;
            nw.coeff = S(2) * nw.coeff;
            nw.labels[j] = pointwise_mul(g, nw.labels[j]);
            out.terms.push_back(std::move(nw));
        }
    }
    out.canonicalize();
    return out;
}

namespace detail {

// B_f B*_{h1} W' Phi = B*_{h1}(B_f W' Phi) + 2c<f,h1> W' Phi
//                      + 4 N_{conj(f) h1} W' Phi
template <class S>
CreatorVector<S> annihilate_word(const StepFunction<S>& f,
                                 std::span<const StepFunction<S>> labels, const S& c) {
    CreatorVector<S> out;
    if (labels.empty()) return out;  // B_f Phi = 0
    const StepFunction<S>& h1 = labels.front();
    auto rest = labels.subspan(1);

    CreatorVector<S> rest_vec;
    rest_vec.terms.push_back(NormalWord<S>{cplx<S>(S(1)),
                                           std::vector<StepFunction<S>>(rest.begin(), rest.end())});

    CreatorVector<S> inner = annihilate_word(f, rest, c);
    for (auto& w : inner.terms) {
        w.labels.insert(w.labels.begin(), h1);
        out.terms.push_back(std::move(w));
    }

    cplx<S> pairing = S(2) * c * l2_inner(f, h1);
    if (!pairing.is_zero())
        out.terms.push_back(NormalWord<S>{pairing,
                                          std::vector<StepFunction<S>>(rest.begin(), rest.end())});

    CreatorVector<S> num = apply_number(pointwise_mul(conj(f), h1), rest_vec);
    for (auto& w : num.terms) {
        w.coeff = S(4) * w.coeff;
        out.terms.push_back(std::move(w));
    }
    out.canonicalize();
    return out;
}

}  // namespace detail

template <class S>
CreatorVector<S> apply_annihilator(const StepFunction<S>& f, const CreatorVector<S>& v,
                                   const S& c) {
    CreatorVector<S> out;
    for (const auto& w : v.terms) {
        auto part = detail::annihilate_word<S>(f, std::span<const StepFunction<S>>(w.labels), c);
        for (auto& pw : part.terms) {
            pw.coeff = w.coeff * pw.coeff;
            out.terms.push_back(std::move(pw));
        }
    }
    out.canonicalize();
    return out;
}

template <class S>
CreatorVector<S> apply_generator(const Generator<S>& gen, const CreatorVector<S>& v, const S& c) {
    switch (gen.kind) {
        case GenKind::Creator: return apply_creator(gen.label, v);
        case GenKind::Number: return apply_number(gen.label, v);
        case GenKind::Annihilator: return apply_annihilator(gen.label, v, c);
    }
    return {};
}

/// <Phi, w Phi>: generators applied right-to-left to the vacuum.
template <class S>
cplx<S> vacuum_expectation(const std::vector<Generator<S>>& word, const S& c) {
    CreatorVector<S> v = CreatorVector<S>::vacuum();
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        v = apply_generator(*it, v, c);
        if (v.is_zero()) return {};
    }
    return v.vacuum_coefficient();
}

/// Formal adjoint: reverse, swap B <-> B*, conjugate N labels.
template <class S>
std::vector<Generator<S>> adjoint(const std::vector<Generator<S>>& word) {
    std::vector<Generator<S>> out;
    out.reserve(word.size());
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        Generator<S> g = *it;
        switch (g.kind) {
            case GenKind::Creator: g.kind = GenKind::Annihilator; break;
            case GenKind::Annihilator: g.kind = GenKind::Creator; break;
            case GenKind::Number: g.label = conj(g.label); break;
        }
        out.push_back(std::move(g));
    }
    return out;
}

struct EngineOptions {
    bool factorize = true;  // disjoint-cell factorization fast path
};

namespace detail {

/// Degree-by-degree series weights for one constant cell:
/// w_p = <B*^p_{a 1_C} Phi, B*^p_{b 1_C} Phi> / (p!)^2, built from one
/// engine commutator step per degree.
template <class S>
std::vector<cplx<S>> cell_series(const cplx<S>& z /* conj(a) b */, const S& vol, const S& c,
                                 int max_p) {
    std::vector<cplx<S>> w(max_p + 1);
    w[0] = cplx<S>(S(1));
    for (int p = 1; p <= max_p; ++p)
        w[p] = w[p - 1] * z * ((S(2) * c * vol + S(4) * S(p - 1)) / S(p));
    return w;
}

template <class S>
std::vector<cplx<S>> convolve_truncated(const std::vector<cplx<S>>& a,
                                        const std::vector<cplx<S>>& b, int max_deg) {
    std::vector<cplx<S>> out(max_deg + 1);
    for (int i = 0; i <= max_deg && i < static_cast<int>(a.size()); ++i)
        for (int j = 0; i + j <= max_deg && j < static_cast<int>(b.size()); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

}  // namespace detail

/// Term-by-term series weights t_m = <B_f^{*m} Phi, B_g^{*m} Phi> / (m!)^2
/// for m = 0..M, via the disjoint-cell factorization of the refined partition.
template <class S>
std::vector<cplx<S>> series_weights(const StepFunction<S>& f, const StepFunction<S>& g,
                                    const S& c, int M) {
    auto r = refine_common(f, g);
    std::vector<cplx<S>> acc(M + 1);
    acc[0] = cplx<S>(S(1));
    for (size_t i = 0; i < r.boxes.size(); ++i) {
        cplx<S> z = r.a[i].conj() * r.b[i];
        if (z.is_zero()) continue;
        acc = detail::convolve_truncated(acc, detail::cell_series(z, r.volumes[i], c, M), M);
    }
    return acc;
}

/// <B_f^{*m} Phi, B_g^{*n} Phi>, exact. Zero for m != n by grading.
template <class S>
cplx<S> inner_creator_powers(const StepFunction<S>& f, int m, const StepFunction<S>& g, int n,
                             const S& c, const EngineOptions& opts = {}) {
    if (m < 0 || n < 0) throw std::invalid_argument("inner_creator_powers: negative power");
    if (opts.factorize && m == n) {
        S fact_sq(1);
        for (int p = 1; p <= m; ++p) fact_sq *= S(p) * S(p);
        return series_weights(f, g, c, m)[m] * fact_sq;
    }
    // generic rewriting path: n creators then m annihilators on the vacuum
    CreatorVector<S> v = CreatorVector<S>::vacuum();
    for (int i = 0; i < n; ++i) v = apply_creator(g, v);
    for (int i = 0; i < m && !v.is_zero(); ++i) v = apply_annihilator(f, v, c);
    return v.vacuum_coefficient();
}

/// ||B_f^{*m} Phi||^2.
template <class S>
S creator_power_norm(const StepFunction<S>& f, int m, const S& c,
                     const EngineOptions& opts = {}) {
    return inner_creator_powers(f, m, f, m, c, opts).re;
}

}  // namespace swnfock
