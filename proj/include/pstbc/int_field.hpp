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

// Fixed-width exact arithmetic in O_K = O_F[theta] for the determinant
// searches. Every operation is overflow checked; on overflow an IntOverflow
// is thrown and callers retry with a wider type or with BigInt arithmetic.

#ifndef PSTBC_INT_FIELD_HPP
#define PSTBC_INT_FIELD_HPP

#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "pstbc/code_constructions.hpp"

namespace pstbc {

struct IntOverflow : std::overflow_error {
    IntOverflow() : std::overflow_error("fixed-width overflow") {}
};

namespace detail {

template <class T>
inline T ck_add(T a, T b) {
    T r;
    if (__builtin_add_overflow(a, b, &r)) throw IntOverflow();
    return r;
}
template <class T>
inline T ck_sub(T a, T b) {
    T r;
    if (__builtin_sub_overflow(a, b, &r)) throw IntOverflow();
    return r;
}
template <class T>
inline T ck_mul(T a, T b) {
    T r;
    if (__builtin_mul_overflow(a, b, &r)) throw IntOverflow();
    return r;
}

template <class T>
inline T to_fixed(const BigInt& x) {
    if (x > BigInt(std::numeric_limits<int64_t>::max()) || x < BigInt(std::numeric_limits<int64_t>::min()))
        throw IntOverflow();
    return static_cast<T>(static_cast<int64_t>(x));
}

template <class T>
inline BigInt to_big(T x) {
    if constexpr (sizeof(T) <= 8) {
        return BigInt(static_cast<int64_t>(x));
    } else {
        bool neg = x < 0;
        unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(x + 1)) + 1 : static_cast<unsigned __int128>(x);
        BigInt hi = BigInt(static_cast<uint64_t>(u >> 64)), lo = BigInt(static_cast<uint64_t>(u));
        BigInt r = (hi << 64) + lo;
        return neg ? BigInt(-r) : r;
    }
}

}  // namespace detail

/// a + b w in O_F with fixed-width coordinates.
template <class T>
struct FixedQuad {
    T a = 0, b = 0;
};

constexpr int kMaxDegree = 6;

template <class T>
struct FixedElem {
    std::array<FixedQuad<T>, kMaxDegree> c{};
};

/// Integral data of a field: minimal polynomial, sigma matrices, traces of powers.
template <class T>
class IntField {
   public:
    explicit IntField(const FieldDesc& f) : n_(f.degree()), ring_(f.ring()) {
        if (n_ > kMaxDegree) throw std::invalid_argument("IntField: degree too large");
        for (int k = 0; k <= n_; ++k) poly_[k] = detail::to_fixed<T>(f.min_poly()[k]);
        for (int s = 0; s < n_; ++s) {
            const auto& m = f.sigma_matrix(s);
            for (int r = 0; r < n_; ++r)
                for (int c = 0; c < n_; ++c) {
                    if (!m[r][c].is_integral() || !m[r][c].is_rational())
                        throw std::invalid_argument("IntField: sigma matrix not integral");
                    sigma_[s][r][c] = detail::to_fixed<T>(m[r][c].num().a());
                }
        }
    }

    int degree() const { return n_; }
    Ring ring() const { return ring_; }

    FixedQuad<T> qmul(const FixedQuad<T>& x, const FixedQuad<T>& y) const {
        using namespace detail;
        T ac = ck_mul(x.a, y.a), bd = ck_mul(x.b, y.b);
        T cross = ck_add(ck_mul(x.a, y.b), ck_mul(x.b, y.a));
        if (ring_ == Ring::gaussian) return {ck_sub(ac, bd), cross};
        return {ck_sub(ac, bd), ck_sub(cross, bd)};
    }
    static FixedQuad<T> qadd(const FixedQuad<T>& x, const FixedQuad<T>& y) {
        return {detail::ck_add(x.a, y.a), detail::ck_add(x.b, y.b)};
    }
    static FixedQuad<T> qsub(const FixedQuad<T>& x, const FixedQuad<T>& y) {
        return {detail::ck_sub(x.a, y.a), detail::ck_sub(x.b, y.b)};
    }
    static FixedQuad<T> qscale(const FixedQuad<T>& x, T k) { return {detail::ck_mul(x.a, k), detail::ck_mul(x.b, k)}; }

    FixedElem<T> add(const FixedElem<T>& x, const FixedElem<T>& y) const {
        FixedElem<T> r;
        for (int k = 0; k < n_; ++k) r.c[k] = qadd(x.c[k], y.c[k]);
        return r;
    }
    FixedElem<T> sub(const FixedElem<T>& x, const FixedElem<T>& y) const {
        FixedElem<T> r;
        for (int k = 0; k < n_; ++k) r.c[k] = qsub(x.c[k], y.c[k]);
        return r;
    }
    FixedElem<T> scale(const FixedElem<T>& x, const FixedQuad<T>& s) const {
        FixedElem<T> r;
        for (int k = 0; k < n_; ++k) r.c[k] = qmul(x.c[k], s);
        return r;
    }

    FixedElem<T> mul(const FixedElem<T>& x, const FixedElem<T>& y) const {
        std::array<FixedQuad<T>, 2 * kMaxDegree - 1> prod{};
        for (int a = 0; a < n_; ++a) {
            if (x.c[a].a == 0 && x.c[a].b == 0) continue;
            for (int b = 0; b < n_; ++b) prod[a + b] = qadd(prod[a + b], qmul(x.c[a], y.c[b]));
        }
        for (int m = 2 * n_ - 2; m >= n_; --m) {
            const FixedQuad<T> lead = prod[m];
            if (lead.a == 0 && lead.b == 0) continue;
            for (int i = 0; i < n_; ++i)
                if (poly_[i] != 0) prod[m - n_ + i] = qsub(prod[m - n_ + i], qscale(lead, poly_[i]));
        }
        FixedElem<T> r;
        for (int k = 0; k < n_; ++k) r.c[k] = prod[k];
        return r;
    }

    FixedElem<T> sigma(const FixedElem<T>& x, int s) const {
        if (s == 0) return x;
        FixedElem<T> r;
        const auto& m = sigma_[s];
        for (int row = 0; row < n_; ++row) {
            FixedQuad<T> acc{};
            for (int col = 0; col < n_; ++col)
                if (m[row][col] != 0) acc = qadd(acc, qscale(x.c[col], m[row][col]));
            r.c[row] = acc;
        }
        return r;
    }

    FixedElem<T> from(const NfElement& x) const {
        if (!x.is_integral()) throw std::invalid_argument("IntField: element not integral");
        FixedElem<T> r;
        for (int k = 0; k < n_; ++k) r.c[k] = {detail::to_fixed<T>(x[k].num().a()), detail::to_fixed<T>(x[k].num().b())};
        return r;
    }

    NfElement to_nf(const FieldPtr& f, const FixedElem<T>& x) const {
        std::vector<QuadInt> c;
        for (int k = 0; k < n_; ++k) c.emplace_back(ring_, detail::to_big(x.c[k].a), detail::to_big(x.c[k].b));
        return NfElement::from_ints(f, c);
    }

    /// Determinant by Laplace expansion along rows with memoized column-subset minors.
    FixedElem<T> det(const std::array<std::array<FixedElem<T>, kMaxDegree>, kMaxDegree>& m) const {
        std::array<FixedElem<T>, 1 << kMaxDegree> minor{};
        const int full = (1 << n_) - 1;
        // minors of the last row
        for (int c = 0; c < n_; ++c) minor[1 << c] = m[n_ - 1][c];
        for (int row = n_ - 2; row >= 0; --row) {
            const int size = n_ - row;
            std::array<FixedElem<T>, 1 << kMaxDegree> next{};
            for (int s = 1; s <= full; ++s) {
                if (__builtin_popcount(static_cast<unsigned>(s)) != size) continue;
                FixedElem<T> acc;
                int pos = 0;
                for (int c = 0; c < n_; ++c) {
                    if (!(s & (1 << c))) continue;
                    FixedElem<T> term = mul(m[row][c], minor[s & ~(1 << c)]);
                    acc = (pos % 2 == 0) ? add(acc, term) : sub(acc, term);
                    ++pos;
                }
                next[s] = acc;
            }
            minor = next;
        }
        return minor[full];
    }

   private:
    int n_;
    Ring ring_;
    std::array<T, kMaxDegree + 1> poly_{};
    std::array<std::array<std::array<T, kMaxDegree>, kMaxDegree>, kMaxDegree> sigma_{};
};

/// Precomputed codeword determinant evaluator for one code and one integer width.
template <class T>
class FixedDetEvaluator {
   public:
    explicit FixedDetEvaluator(const CodeSpec& s) : f_(*s.desc), n_(s.n()) {
        for (const auto& b : s.basis) basis_.push_back(f_.from(b));
        gamma_ = {detail::to_fixed<T>(s.gamma.a()), detail::to_fixed<T>(s.gamma.b())};
    }

    const IntField<T>& field() const { return f_; }

    FixedElem<T> layer(const QuadInt* u) const {
        FixedElem<T> x;
        for (int k = 0; k < n_; ++k) {
            FixedQuad<T> s{detail::to_fixed<T>(u[k].a()), detail::to_fixed<T>(u[k].b())};
            if (s.a == 0 && s.b == 0) continue;
            x = f_.add(x, f_.scale(basis_[k], s));
        }
        return x;
    }

    /// Unnormalized det of the codeword for u (n^2 symbols); result lies in F
    /// or std::logic_error is thrown.
    FixedQuad<T> det(const std::vector<QuadInt>& u) const {
        std::array<FixedElem<T>, kMaxDegree> layers;
        for (int l = 0; l < n_; ++l) layers[l] = layer(&u[l * n_]);
        return det_from_layers(layers);
    }

    FixedQuad<T> det_from_layers(const std::array<FixedElem<T>, kMaxDegree>& layers) const {
        std::array<std::array<FixedElem<T>, kMaxDegree>, kMaxDegree> m;
        for (int r = 0; r < n_; ++r)
            for (int c = 0; c < n_; ++c) {
                FixedElem<T> e = f_.sigma(layers[((c - r) % n_ + n_) % n_], r);
                m[r][c] = c < r ? f_.scale(e, gamma_) : e;
            }
        FixedElem<T> d = f_.det(m);
        for (int k = 1; k < n_; ++k)
            if (d.c[k].a != 0 || d.c[k].b != 0) throw std::logic_error("codeword determinant not in the base field");
        return d.c[0];
    }

   private:
    IntField<T> f_;
    int n_;
    std::vector<FixedElem<T>> basis_;
    FixedQuad<T> gamma_;
};

/// Exact unnormalized codeword determinant: int64, then int128, then BigInt.
class DetEvaluator {
   public:
    explicit DetEvaluator(const CodeSpec& s) : spec_(s), e64_(s), e128_(s) {}

    QuadInt det(const std::vector<QuadInt>& u) const {
        try {
            auto d = e64_.det(u);
            return QuadInt(spec_.ring(), d.a, d.b);
        } catch (const IntOverflow&) {
        }
        try {
            auto d = e128_.det(u);
            return QuadInt(spec_.ring(), detail::to_big(d.a), detail::to_big(d.b));
        } catch (const IntOverflow&) {
        }
        return codeword_det(spec_, u).exact;
    }

    const CodeSpec& spec() const { return spec_; }

   private:
    CodeSpec spec_;
    FixedDetEvaluator<int64_t> e64_;
    FixedDetEvaluator<__int128> e128_;
};

}  // namespace pstbc

#endif  // PSTBC_INT_FIELD_HPP
