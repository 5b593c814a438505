/*
   Copyright 2026 The perfect-stbc Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Hermitian lattices over O_F = Z[i] or Z[j]: trace-form Gram matrices, exact
// LLL reduction, Hermite normal forms of O_F-modules inside O_K.

#ifndef PSTBC_LATTICE_TOOLS_HPP
#define PSTBC_LATTICE_TOOLS_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pstbc/number_field.hpp"
#include "pstbc/quad_arith.hpp"

namespace pstbc {

/// Exact Hermitian matrix over F, G[k][l] = <b_k, b_l>.
using HermitianGram = std::vector<std::vector<QuadRat>>;
/// Rows are coordinates of new basis vectors in terms of the old ones.
using BasisTransform = std::vector<std::vector<QuadInt>>;

/// G[k][l] = Tr_{K/F}(nu_k * conj(nu_l)).
inline HermitianGram gram(const std::vector<NfElement>& basis) {
    const std::size_t n = basis.size();
    if (n == 0) throw std::invalid_argument("gram: empty basis");
    HermitianGram g(n, std::vector<QuadRat>(n, QuadRat(basis[0].desc()->ring())));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k; l < n; ++l) {
            g[k][l] = rel_trace(basis[k] * basis[l].conj());
            g[l][k] = g[k][l].conj();
        }
    return g;
}

inline bool is_scaled_identity(const HermitianGram& g, const BigInt& scale) {
    const Ring r = g[0][0].ring();
    for (std::size_t k = 0; k < g.size(); ++k)
        for (std::size_t l = 0; l < g.size(); ++l)
            if (!(g[k][l] == QuadRat(r, k == l ? scale : BigInt(0)))) return false;
    return true;
}

/// Nearest ring element by rounding each coordinate in the basis {1, w}.
inline QuadInt round_to_ring(const QuadRat& q) {
    return QuadInt(q.ring(), detail::round_div(q.num().a(), q.den()), detail::round_div(q.num().b(), q.den()));
}

namespace detail {

struct Gso {
    std::vector<std::vector<QuadRat>> mu;
    std::vector<BigRational> b;  // squared lengths of the orthogonalized vectors
};

inline Gso gram_schmidt(const HermitianGram& g) {
    const std::size_t n = g.size();
    const Ring r = g[0][0].ring();
    Gso s{std::vector<std::vector<QuadRat>>(n, std::vector<QuadRat>(n, QuadRat(r))), std::vector<BigRational>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            QuadRat acc = g[i][j];
            for (std::size_t m = 0; m < j; ++m) acc -= s.mu[i][m] * s.mu[j][m].conj() * QuadRat(QuadInt(r, numerator(s.b[m])), denominator(s.b[m]));
            s.mu[i][j] = acc / QuadRat(QuadInt(r, numerator(s.b[j])), denominator(s.b[j]));
        }
        BigRational bi = g[i][i].re_rational();
        for (std::size_t m = 0; m < i; ++m) bi -= s.mu[i][m].norm() * s.b[m];
        if (bi <= 0) throw std::domain_error("gram_schmidt: Gram matrix is not positive definite");
        s.b[i] = bi;
    }
    return s;
}

inline HermitianGram transform_gram(const BasisTransform& t, const HermitianGram& g) {
    const std::size_t n = g.size();
    const Ring r = g[0][0].ring();
    HermitianGram tg(n, std::vector<QuadRat>(n, QuadRat(r)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (t[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) tg[i][j] += QuadRat(t[i][k]) * g[k][j];
        }
    HermitianGram out(n, std::vector<QuadRat>(n, QuadRat(r)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l)
                if (!t[j][l].is_zero()) out[i][j] += tg[i][l] * QuadRat(t[j][l].conj());
    return out;
}

}  // namespace detail

/// det of a Hermitian Gram matrix (a positive rational).
inline BigRational gram_determinant(const HermitianGram& g) {
    BigRational d = 1;
    for (const auto& b : detail::gram_schmidt(g).b) d *= b;
    return d;
}

struct LllResult {
    HermitianGram gram;
    BasisTransform transform;
};

/// Exact LLL over O_F with Lovasz constant delta. Size reduction rounds each
/// mu coefficient componentwise; the transform stays unimodular.
inline LllResult lll_reduce(const HermitianGram& g, Ring ring, BigRational delta = BigRational(3, 4)) {
    const std::size_t n = g.size();
    if (g[0][0].ring() != ring) throw std::invalid_argument("lll_reduce: ring mismatch");
    BasisTransform t(n, std::vector<QuadInt>(n, QuadInt(ring)));
    for (std::size_t i = 0; i < n; ++i) t[i][i] = QuadInt(ring, 1);
    HermitianGram cur = g;
    detail::gram_schmidt(cur);
    std::size_t k = 1;
    while (k < n) {
        for (std::size_t l = k; l-- > 0;) {
            detail::Gso s = detail::gram_schmidt(cur);
            QuadInt q = round_to_ring(s.mu[k][l]);
            if (q.is_zero()) continue;
            for (std::size_t c = 0; c < n; ++c) t[k][c] -= q * t[l][c];
            cur = detail::transform_gram(t, g);
        }
        detail::Gso s = detail::gram_schmidt(cur);
        if (s.b[k] < (delta - s.mu[k][k - 1].norm()) * s.b[k - 1]) {
            std::swap(t[k], t[k - 1]);
            cur = detail::transform_gram(t, g);
            k = k > 1 ? k - 1 : 1;
        } else {
            ++k;
        }
    }
    return {cur, t};
}

/// Applies a transform to a basis: new_k = sum_c T[k][c] * old_c.
inline std::vector<NfElement> apply_transform(const BasisTransform& t, const std::vector<NfElement>& basis) {
    std::vector<NfElement> out;
    for (const auto& row : t) {
        NfElement acc(basis[0].desc());
        for (std::size_t c = 0; c < row.size(); ++c)
            if (!row[c].is_zero()) acc += basis[c] * QuadRat(row[c]);
        out.push_back(acc);
    }
    return out;
}

/// Determinant of a square matrix over O_F (fraction-free Bareiss).
inline QuadInt quad_det(std::vector<std::vector<QuadInt>> a) {
    const std::size_t n = a.size();
    const Ring r = a[0][0].ring();
    QuadInt prev(r, 1);
    bool neg = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && a[p][k].is_zero()) ++p;
            if (p == n) return QuadInt(r);
            std::swap(a[p], a[k]);
            neg = !neg;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
        prev = a[k][k];
    }
    return neg ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

struct HnfResult {
    std::vector<NfElement> basis;  // upper triangular in power-basis coordinates
    BigInt index;                  // [O_F^n : module] as an abelian group
};

/// Hermite normal form of the O_F-module spanned by `generators` (all
/// integral, coordinates in the power basis). Pivots are canonical associates
/// and entries above a pivot are Euclidean remainders modulo it.
inline HnfResult hnf_module_basis(const std::vector<NfElement>& generators, Ring ring) {
    if (generators.empty()) throw std::invalid_argument("hnf_module_basis: no generators");
    const FieldPtr desc = generators[0].desc();
    if (desc->ring() != ring) throw std::invalid_argument("hnf_module_basis: ring mismatch");
    const int n = desc->degree();
    std::vector<std::vector<QuadInt>> rows;
    for (const auto& g : generators) {
        if (!g.is_integral()) throw std::invalid_argument("hnf_module_basis: generator not integral");
        std::vector<QuadInt> r;
        for (int k = 0; k < n; ++k) r.push_back(g[k].num());
        rows.push_back(std::move(r));
    }
    const std::size_t m = rows.size();
    std::size_t prow = 0;
    for (int c = 0; c < n; ++c) {
        if (prow >= m) throw std::invalid_argument("hnf_module_basis: rank deficient");
        for (std::size_t r = prow + 1; r < m; ++r) {
            if (rows[r][c].is_zero()) continue;
            if (rows[prow][c].is_zero()) {
                std::swap(rows[prow], rows[r]);
                continue;
            }
            const QuadInt a = rows[prow][c], b = rows[r][c];
            Bezout bz = quad_xgcd(a, b);
            const QuadInt ag = exact_div(a, bz.g), bg = exact_div(b, bz.g);
            for (int k = 0; k < n; ++k) {
                QuadInt x = rows[prow][k], y = rows[r][k];
                rows[prow][k] = bz.s * x + bz.t * y;
                rows[r][k] = ag * y - bg * x;
            }
        }
        if (rows[prow][c].is_zero()) throw std::invalid_argument("hnf_module_basis: rank deficient");
        // Normalize the pivot to its canonical associate.
        const QuadInt u = QuadInt::unit(ring, canonical_unit_index(rows[prow][c]));
        for (int k = 0; k < n; ++k) rows[prow][k] *= u;
        for (std::size_t r = 0; r < prow; ++r) {
            QuadInt q = euclid_div(rows[r][c], rows[prow][c]).quotient;
            if (q.is_zero()) continue;
            for (int k = 0; k < n; ++k) rows[r][k] -= q * rows[prow][k];
        }
        ++prow;
    }
    for (std::size_t r = prow; r < m; ++r)
        for (int k = 0; k < n; ++k)
            if (!rows[r][k].is_zero()) throw std::logic_error("hnf_module_basis: elimination left a nonzero row");
    HnfResult out{{}, 1};
    for (int r = 0; r < n; ++r) {
        out.index *= rows[r][r].norm();
        out.basis.push_back(NfElement::from_ints(desc, rows[r]));
    }
    return out;
}

/// Self-duality test for a rank-2 lattice over Z[i] scaled by 1/sqrt(p):
/// Gram/p must be an integral Z[i]-matrix of determinant 1. (A lattice with
/// integral Gram is contained in its dual; unit determinant forces equality.)
inline bool check_selfdual_2x2(const std::vector<NfElement>& basis, const BigInt& p) {
    if (basis.size() != 2 || basis[0].desc()->ring() != Ring::gaussian)
        throw std::invalid_argument("check_selfdual_2x2: need a rank-2 Z[i] basis");
    if (p % 4 != 1 || !is_prime(p)) throw std::invalid_argument("check_selfdual_2x2: need a prime p = 1 mod 4");
    HermitianGram g = gram(basis);
    const QuadRat inv_p(QuadInt(Ring::gaussian, 1), p);
    for (auto& row : g)
        for (auto& e : row) {
            e *= inv_p;
            if (!e.is_integral()) return false;
        }
    return gram_determinant(g) == 1;
}

}  // namespace pstbc

#endif  // PSTBC_LATTICE_TOOLS_HPP
