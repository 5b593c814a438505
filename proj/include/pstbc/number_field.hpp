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

// Cyclic extensions K = F(theta) of F = Q(i) or Q(j), where theta is a totally
// real algebraic integer. Elements are coordinate vectors in the power basis
// {1, theta, ..., theta^(n-1)} over F.

#ifndef PSTBC_NUMBER_FIELD_HPP
#define PSTBC_NUMBER_FIELD_HPP

#include <complex>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "pstbc/quad_arith.hpp"

namespace pstbc {

/// 50 significant decimal digits.
using BigFloat = boost::multiprecision::cpp_bin_float_50;
using BigComplex = std::complex<BigFloat>;

namespace detail {

// Square matrix over F stored row-major.
using RatMatrix = std::vector<std::vector<QuadRat>>;

inline RatMatrix identity_matrix(Ring ring, int n) {
    RatMatrix m(n, std::vector<QuadRat>(n, QuadRat(ring)));
    for (int i = 0; i < n; ++i) m[i][i] = QuadRat(ring, 1);
    return m;
}

inline RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b) {
    const std::size_t n = a.size();
    RatMatrix c(n, std::vector<QuadRat>(n, QuadRat(a[0][0].ring())));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

// Product of two coordinate vectors modulo the monic polynomial `modulus`
// (coefficients low to high, degree n).
inline std::vector<QuadRat> poly_mulmod(const std::vector<QuadRat>& x, const std::vector<QuadRat>& y,
                                        const std::vector<BigInt>& modulus) {
    const std::size_t n = modulus.size() - 1;
    const Ring ring = x[0].ring();
    std::vector<QuadRat> prod(2 * n - 1, QuadRat(ring));
    for (std::size_t a = 0; a < n; ++a) {
        if (x[a].is_zero()) continue;
        for (std::size_t b = 0; b < n; ++b)
            if (!y[b].is_zero()) prod[a + b] += x[a] * y[b];
    }
    for (std::size_t m = 2 * n - 2; m >= n; --m) {
        if (prod[m].is_zero()) continue;
        const QuadRat lead = prod[m];
        for (std::size_t i = 0; i < n; ++i)
            if (modulus[i] != 0) prod[m - n + i] -= lead * QuadRat(QuadInt(ring, modulus[i]));
        prod[m] = QuadRat(ring);
    }
    prod.resize(n);
    return prod;
}

inline BigComplex to_big_complex(const QuadRat& q) {
    BigFloat a(q.num().a()), b(q.num().b()), d(q.den());
    if (q.ring() == Ring::gaussian) return {a / d, b / d};
    static const BigFloat half_sqrt3 = boost::multiprecision::sqrt(BigFloat(3)) / 2;
    return {(a - b / 2) / d, b * half_sqrt3 / d};
}

}  // namespace detail

/// Description of K = F(theta) with Gal(K/F) = <sigma>, sigma(theta) = s(theta).
class FieldDesc {
   public:
    /// Builds and validates a field. `min_poly` holds n+1 integer coefficients
    /// (low to high, monic), `sigma_poly` the n coefficients of s over F, and
    /// `theta` a high-precision value of the chosen real root.
    static std::shared_ptr<const FieldDesc> make(std::string name, Ring ring, std::vector<BigInt> min_poly,
                                                 std::vector<QuadRat> sigma_poly, BigFloat theta) {
        auto d = std::shared_ptr<FieldDesc>(new FieldDesc());
        d->name_ = std::move(name);
        d->ring_ = ring;
        d->n_ = static_cast<int>(min_poly.size()) - 1;
        if (d->n_ < 1 || min_poly.back() != 1) throw std::invalid_argument("FieldDesc: minimal polynomial must be monic");
        if (static_cast<int>(sigma_poly.size()) != d->n_)
            throw std::invalid_argument("FieldDesc: sigma polynomial must have n coefficients");
        d->min_poly_ = std::move(min_poly);
        d->sigma_poly_ = std::move(sigma_poly);
        d->theta_ = theta;
        d->build();
        return d;
    }

    const std::string& name() const { return name_; }
    int degree() const { return n_; }
    Ring ring() const { return ring_; }
    const std::vector<BigInt>& min_poly() const { return min_poly_; }
    const std::vector<QuadRat>& sigma_poly() const { return sigma_poly_; }
    const BigFloat& theta() const { return theta_; }
    /// conjugates()[k] is sigma^k(theta).
    const std::vector<BigFloat>& conjugates() const { return conjugates_; }
    /// Matrix of sigma^k acting on power-basis coordinates (column m is sigma^k(theta^m)).
    const detail::RatMatrix& sigma_matrix(int k) const { return sigma_mats_.at(k); }

    /// p_theta evaluated at a real argument.
    BigFloat eval_min_poly(const BigFloat& x) const {
        BigFloat acc = 0;
        for (int i = n_; i >= 0; --i) acc = acc * x + BigFloat(min_poly_[i]);
        return acc;
    }

   private:
    FieldDesc() = default;

    void build() {
        const int n = n_;
        // Column m of the sigma matrix holds the coordinates of s(theta)^m.
        std::vector<QuadRat> s = sigma_poly_;
        std::vector<std::vector<QuadRat>> cols;
        std::vector<QuadRat> pw(n, QuadRat(ring_));
        pw[0] = QuadRat(ring_, 1);
        for (int m = 0; m < n; ++m) {
            cols.push_back(pw);
            pw = detail::poly_mulmod(pw, s, min_poly_);
        }
        detail::RatMatrix s1(n, std::vector<QuadRat>(n, QuadRat(ring_)));
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) s1[r][c] = cols[c][r];
        sigma_mats_.push_back(detail::identity_matrix(ring_, n));
        for (int k = 1; k <= n; ++k) sigma_mats_.push_back(detail::mat_mul(s1, sigma_mats_.back()));
        if (!(sigma_mats_[n] == detail::identity_matrix(ring_, n)))
            throw std::invalid_argument("FieldDesc " + name_ + ": sigma^n is not the identity");
        for (int k = 1; k < n; ++k)
            if (sigma_mats_[k] == detail::identity_matrix(ring_, n))
                throw std::invalid_argument("FieldDesc " + name_ + ": sigma has order smaller than n");
        sigma_mats_.pop_back();

        // Numeric conjugates by iterating s; every one must be a root of p_theta.
        for (const auto& c : sigma_poly_)
            if (!c.is_rational()) throw std::invalid_argument("FieldDesc: sigma polynomial must have rational coefficients");
        conjugates_.push_back(theta_);
        for (int k = 1; k < n; ++k) {
            const BigFloat& x = conjugates_.back();
            BigFloat acc = 0;
            for (int i = n - 1; i >= 0; --i) acc = acc * x + detail::to_big_complex(sigma_poly_[i]).real();
            conjugates_.push_back(acc);
        }
        const BigFloat tol("1e-30");
        for (int k = 0; k < n; ++k) {
            if (boost::multiprecision::abs(eval_min_poly(conjugates_[k])) > tol)
                throw std::invalid_argument("FieldDesc " + name_ + ": conjugate " + std::to_string(k) +
                                            " is not a root of the minimal polynomial");
            for (int l = 0; l < k; ++l)
                if (boost::multiprecision::abs(conjugates_[k] - conjugates_[l]) < BigFloat("1e-20"))
                    throw std::invalid_argument("FieldDesc " + name_ + ": repeated conjugates");
        }
    }

    std::string name_;
    int n_ = 0;
    Ring ring_ = Ring::gaussian;
    std::vector<BigInt> min_poly_;
    std::vector<QuadRat> sigma_poly_;
    BigFloat theta_;
    std::vector<BigFloat> conjugates_;
    std::vector<detail::RatMatrix> sigma_mats_;
};

using FieldPtr = std::shared_ptr<const FieldDesc>;

/// Element of K in power-basis coordinates over F.
class NfElement {
   public:
    NfElement() = default;
    explicit NfElement(FieldPtr desc) : desc_(std::move(desc)), c_(desc_->degree(), QuadRat(desc_->ring())) {}
    NfElement(FieldPtr desc, std::vector<QuadRat> coeffs) : desc_(std::move(desc)), c_(std::move(coeffs)) {
        if (static_cast<int>(c_.size()) != desc_->degree())
            throw std::invalid_argument("NfElement: wrong number of coordinates");
        for (const auto& q : c_)
            if (q.ring() != desc_->ring()) throw std::invalid_argument("NfElement: coordinate ring mismatch");
    }

    static NfElement from_ints(FieldPtr desc, const std::vector<QuadInt>& coeffs) {
        std::vector<QuadRat> c;
        for (const auto& q : coeffs) c.emplace_back(q);
        c.resize(desc->degree(), QuadRat(desc->ring()));
        return NfElement(std::move(desc), std::move(c));
    }
    static NfElement scalar(FieldPtr desc, const QuadRat& s) {
        NfElement e(desc);
        e.c_[0] = s;
        return e;
    }
    static NfElement one(FieldPtr desc) { return scalar(desc, QuadRat(desc->ring(), 1)); }
    /// theta^k reduced into the power basis.
    static NfElement theta_pow(FieldPtr desc, int k) {
        NfElement t(desc);
        if (desc->degree() == 1) throw std::invalid_argument("theta_pow: degree-1 field");
        t.c_[1] = QuadRat(desc->ring(), 1);
        NfElement r = one(desc);
        for (int i = 0; i < k; ++i) r *= t;
        return r;
    }

    const FieldPtr& desc() const { return desc_; }
    int degree() const { return desc_->degree(); }
    const std::vector<QuadRat>& coeffs() const { return c_; }
    const QuadRat& operator[](int k) const { return c_.at(k); }

    bool is_zero() const {
        for (const auto& q : c_)
            if (!q.is_zero()) return false;
        return true;
    }
    /// True iff all theta-coordinates of index >= 1 vanish.
    bool in_base_field() const {
        for (std::size_t k = 1; k < c_.size(); ++k)
            if (!c_[k].is_zero()) return false;
        return true;
    }
    /// All coordinates lie in O_F. For the shipped fields O_K = O_F[theta], so
    /// this is exactly membership in O_K.
    bool is_integral() const {
        for (const auto& q : c_)
            if (!q.is_integral()) return false;
        return true;
    }

    NfElement operator-() const {
        NfElement r = *this;
        for (auto& q : r.c_) q = -q;
        return r;
    }
    NfElement& operator+=(const NfElement& o) {
        check(o);
        for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
        return *this;
    }
    NfElement& operator-=(const NfElement& o) {
        check(o);
        for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
        return *this;
    }
    NfElement& operator*=(const NfElement& o) {
        check(o);
        c_ = detail::poly_mulmod(c_, o.c_, desc_->min_poly());
        return *this;
    }
    NfElement& operator*=(const QuadRat& s) {
        for (auto& q : c_) q *= s;
        return *this;
    }

    friend NfElement operator+(NfElement x, const NfElement& y) { return x += y; }
    friend NfElement operator-(NfElement x, const NfElement& y) { return x -= y; }
    friend NfElement operator*(NfElement x, const NfElement& y) { return x *= y; }
    friend NfElement operator*(NfElement x, const QuadRat& s) { return x *= s; }
    friend NfElement operator*(const QuadRat& s, NfElement x) { return x *= s; }

    friend bool operator==(const NfElement& x, const NfElement& y) { return x.desc_ == y.desc_ && x.c_ == y.c_; }

    /// sigma^k(x), 0 <= k < n (other k are reduced mod n).
    NfElement sigma(int k = 1) const {
        const int n = degree();
        k = ((k % n) + n) % n;
        if (k == 0) return *this;
        const auto& m = desc_->sigma_matrix(k);
        NfElement r(desc_);
        for (int row = 0; row < n; ++row)
            for (int col = 0; col < n; ++col)
                if (!c_[col].is_zero() && !m[row][col].is_zero()) r.c_[row] += m[row][col] * c_[col];
        return r;
    }

    /// Complex conjugation. theta is real, so only the F-coordinates change.
    NfElement conj() const {
        NfElement r = *this;
        for (auto& q : r.c_) q = q.conj();
        return r;
    }

    /// Value of the l-th embedding sigma^l(x) as a complex number.
    BigComplex embed(int l) const {
        const BigFloat& t = desc_->conjugates().at(l);
        BigComplex acc(0, 0);
        for (int k = degree() - 1; k >= 0; --k) acc = acc * BigComplex(t, 0) + detail::to_big_complex(c_[k]);
        return acc;
    }
    std::complex<double> embed_double(int l) const {
        BigComplex z = embed(l);
        return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (int k = 0; k < degree(); ++k) {
            if (c_[k].is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << c_[k] << ")";
            if (k == 1) os << "*t";
            if (k > 1) os << "*t^" << k;
        }
        if (first) os << "0";
        return os.str();
    }

   private:
    void check(const NfElement& o) const {
        if (desc_ != o.desc_) throw std::invalid_argument("NfElement: elements of different fields");
    }

    FieldPtr desc_;
    std::vector<QuadRat> c_;
};

inline NfElement sigma_apply(const NfElement& x, int k) { return x.sigma(k); }

/// Relative trace sum_k sigma^k(x), an element of F.
inline QuadRat rel_trace(const NfElement& x) {
    NfElement acc = x;
    for (int k = 1; k < x.degree(); ++k) acc += x.sigma(k);
    if (!acc.in_base_field()) throw std::logic_error("rel_trace: result not in the base field");
    return acc[0];
}

/// Relative norm prod_k sigma^k(x), an element of F.
inline QuadRat rel_norm(const NfElement& x) {
    NfElement acc = x;
    for (int k = 1; k < x.degree(); ++k) acc *= x.sigma(k);
    if (!acc.in_base_field()) throw std::logic_error("rel_norm: result not in the base field");
    return acc[0];
}

inline std::complex<double> embed(const NfElement& x, int l) { return x.embed_double(l); }

/// Multiplicative inverse via x^-1 = (prod_{k>0} sigma^k(x)) / N(x).
inline NfElement nf_inverse(const NfElement& x) {
    if (x.is_zero()) throw std::domain_error("nf_inverse: zero element");
    NfElement cof = NfElement::one(x.desc());
    for (int k = 1; k < x.degree(); ++k) cof *= x.sigma(k);
    NfElement full = x * cof;
    if (!full.in_base_field()) throw std::logic_error("nf_inverse: norm not in base field");
    return cof * (QuadRat(full.desc()->ring(), 1) / full[0]);
}

using NfMatrix = std::vector<std::vector<NfElement>>;

/// Determinant by Gaussian elimination over K (row pivoting on nonzero entries).
inline NfElement reduced_norm_exact(NfMatrix m) {
    const std::size_t n = m.size();
    if (n == 0) throw std::invalid_argument("reduced_norm_exact: empty matrix");
    const FieldPtr desc = m[0][0].desc();
    NfElement det = NfElement::one(desc);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) return NfElement(desc);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        NfElement inv = nf_inverse(m[col][col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero()) continue;
            NfElement f = m[r][col] * inv;
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

/// Determinant by Laplace expansion along the first row (division free).
inline NfElement det_cofactor(const NfMatrix& m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    const FieldPtr desc = m[0][0].desc();
    NfElement acc(desc);
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c].is_zero()) continue;
        NfMatrix minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<NfElement> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            minor.push_back(std::move(row));
        }
        NfElement term = m[0][c] * det_cofactor(minor);
        if (c % 2) acc -= term;
        else acc += term;
    }
    return acc;
}

/// det(Tr_{K/F}(theta^(a+b))), the discriminant of the power basis. For the
/// shipped towers O_{Q(theta)} = Z[theta], so this is d_{Q(theta)}.
inline BigInt power_basis_discriminant(const FieldPtr& desc) {
    const int n = desc->degree();
    std::vector<QuadRat> traces;
    for (int k = 0; k <= 2 * n - 2; ++k) traces.push_back(rel_trace(NfElement::theta_pow(desc, k)));
    // Integer Bareiss elimination on the Hankel matrix of traces.
    std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            const QuadRat& t = traces[r + c];
            if (!t.is_integral() || !t.is_rational()) throw std::logic_error("power_basis_discriminant: non-integral trace");
            a[r][c] = t.num().a();
        }
    BigInt prev = 1, sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

// ---------------------------------------------------------------------------
// The four towers used by the codes.

namespace fields {

inline BigFloat pi() { return boost::math::constants::pi<BigFloat>(); }

/// Q(i, sqrt(p)) with theta = (1 + sqrt(p)) / 2, sigma(theta) = 1 - theta.
inline FieldPtr quadratic(const BigInt& p) {
    if (p % 4 != 1) throw std::invalid_argument("quadratic field: need p = 1 mod 4 so that O_K = Z[i][theta]");
    const Ring R = Ring::gaussian;
    BigFloat theta = (1 + boost::multiprecision::sqrt(BigFloat(p))) / 2;
    return FieldDesc::make("Q(i,sqrt(" + p.str() + "))", R, {-(p - 1) / 4, -1, 1},
                           {QuadRat(R, 1), QuadRat(R, -1)}, theta);
}

/// Q(j, 2cos(2pi/7)), sigma: theta -> theta^2 - 2.
inline FieldPtr cubic() {
    const Ring R = Ring::eisenstein;
    BigFloat theta = 2 * boost::multiprecision::cos(2 * pi() / 7);
    return FieldDesc::make("Q(j,2cos(2pi/7))", R, {-1, -2, 1, 1}, {QuadRat(R, -2), QuadRat(R, 0), QuadRat(R, 1)}, theta);
}

/// Q(i, 2cos(2pi/15)), sigma: theta -> theta^2 - 2.
inline FieldPtr quartic() {
    const Ring R = Ring::gaussian;
    BigFloat theta = 2 * boost::multiprecision::cos(2 * pi() / 15);
    return FieldDesc::make("Q(i,2cos(2pi/15))", R, {1, 4, -4, -1, 1},
                           {QuadRat(R, -2), QuadRat(R, 0), QuadRat(R, 1), QuadRat(R, 0)}, theta);
}

/// Minimal polynomial of 2cos(pi/14): the product of (X - 2cos(k*pi/14)) over
/// k in {1,3,5,9,11,13}, expanded numerically and rounded to integers.
inline std::vector<BigInt> sextic_min_poly() {
    std::vector<BigFloat> poly{1};
    for (int k : {1, 3, 5, 9, 11, 13}) {
        BigFloat root = 2 * boost::multiprecision::cos(k * pi() / 14);
        std::vector<BigFloat> next(poly.size() + 1, BigFloat(0));
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] += poly[i];
            next[i] -= root * poly[i];
        }
        poly = std::move(next);
    }
    std::vector<BigInt> out;
    for (const auto& c : poly) {
        BigFloat r = boost::multiprecision::round(c);
        if (boost::multiprecision::abs(c - r) > BigFloat("1e-30"))
            throw std::logic_error("sextic_min_poly: coefficient not integral");
        out.push_back(static_cast<BigInt>(r));
    }
    return out;
}

/// Q(j, 2cos(pi/14)), sigma induced by zeta_28 -> zeta_28^5, i.e.
/// theta -> theta^5 - 5 theta^3 + 5 theta.
inline FieldPtr sextic() {
    const Ring R = Ring::eisenstein;
    BigFloat theta = 2 * boost::multiprecision::cos(pi() / 14);
    std::vector<QuadRat> s{QuadRat(R, 0), QuadRat(R, 5), QuadRat(R, 0), QuadRat(R, -5), QuadRat(R, 0), QuadRat(R, 1)};
    return FieldDesc::make("Q(j,2cos(pi/14))", R, sextic_min_poly(), s, theta);
}

}  // namespace fields

}  // namespace pstbc

#endif  // PSTBC_NUMBER_FIELD_HPP
