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

// Exact arithmetic in the Gaussian integers Z[i], the Eisenstein integers
// Z[j] (j^2 + j + 1 = 0) and their fraction fields.

#ifndef PSTBC_QUAD_ARITH_HPP
#define PSTBC_QUAD_ARITH_HPP

#include <complex>
#include <cstdint>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

namespace pstbc {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

enum class Ring { gaussian, eisenstein };

inline const char* ring_name(Ring r) { return r == Ring::gaussian ? "gaussian" : "eisenstein"; }

inline Ring parse_ring(const std::string& s) {
    if (s == "gaussian") return Ring::gaussian;
    if (s == "eisenstein") return Ring::eisenstein;
    throw std::invalid_argument("unknown ring '" + s + "'");
}

/// Number of units of the ring (4 for Z[i], 6 for Z[j]).
inline int unit_count(Ring r) { return r == Ring::gaussian ? 4 : 6; }

namespace detail {

// floor(p / q) for q > 0.
inline BigInt floor_div(const BigInt& p, const BigInt& q) {
    BigInt d = p / q;  // truncates toward zero
    if (p < 0 && d * q != p) --d;
    return d;
}

// Nearest integer to p / q (q > 0), ties toward zero.
inline BigInt round_div(const BigInt& p, const BigInt& q) {
    BigInt fl = floor_div(p, q);
    BigInt twice_rem = 2 * (p - fl * q);
    if (twice_rem < q) return fl;
    if (twice_rem > q) return fl + 1;
    return fl >= 0 ? fl : BigInt(fl + 1);
}

inline BigInt abs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

}  // namespace detail

/// a + b*w with w = i (Gaussian) or w = j (Eisenstein).
class QuadInt {
   public:
    QuadInt() = default;
    explicit QuadInt(Ring ring, BigInt a = 0, BigInt b = 0) : a_(std::move(a)), b_(std::move(b)), ring_(ring) {}

    static QuadInt gaussian(BigInt a, BigInt b = 0) { return QuadInt(Ring::gaussian, std::move(a), std::move(b)); }
    static QuadInt eisenstein(BigInt a, BigInt b = 0) { return QuadInt(Ring::eisenstein, std::move(a), std::move(b)); }

    /// The k-th unit, ordered by argument: exp(2*pi*i*k/|units|).
    static QuadInt unit(Ring ring, int k) {
        const int m = unit_count(ring);
        k = ((k % m) + m) % m;
        if (ring == Ring::gaussian) {
            static constexpr int tab[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
            return QuadInt(ring, tab[k][0], tab[k][1]);
        }
        static constexpr int tab[6][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}};
        return QuadInt(ring, tab[k][0], tab[k][1]);
    }

    const BigInt& a() const { return a_; }
    const BigInt& b() const { return b_; }
    Ring ring() const { return ring_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }

    /// a^2 + b^2 (Gaussian) or a^2 - ab + b^2 (Eisenstein).
    BigInt norm() const {
        if (ring_ == Ring::gaussian) return a_ * a_ + b_ * b_;
        return a_ * a_ - a_ * b_ + b_ * b_;
    }

    /// Complex conjugation; on Z[j] this is j -> j^2.
    QuadInt conj() const {
        if (ring_ == Ring::gaussian) return QuadInt(ring_, a_, -b_);
        return QuadInt(ring_, a_ - b_, -b_);
    }

    bool is_unit() const { return norm() == 1; }

    std::complex<double> to_complex() const {
        const double a = static_cast<double>(a_);
        const double b = static_cast<double>(b_);
        if (ring_ == Ring::gaussian) return {a, b};
        return {a - 0.5 * b, b * 0.86602540378443864676};
    }

    QuadInt operator-() const { return QuadInt(ring_, -a_, -b_); }

    QuadInt& operator+=(const QuadInt& o) {
        check_ring(o);
        a_ += o.a_;
        b_ += o.b_;
        return *this;
    }
    QuadInt& operator-=(const QuadInt& o) {
        check_ring(o);
        a_ -= o.a_;
        b_ -= o.b_;
        return *this;
    }
    QuadInt& operator*=(const QuadInt& o) {
        check_ring(o);
        BigInt ac = a_ * o.a_;
        BigInt bd = b_ * o.b_;
        BigInt cross = a_ * o.b_ + b_ * o.a_;
        if (ring_ == Ring::gaussian) {
            a_ = ac - bd;
            b_ = cross;
        } else {
            a_ = ac - bd;
            b_ = cross - bd;
        }
        return *this;
    }
    QuadInt& operator*=(const BigInt& k) {
        a_ *= k;
        b_ *= k;
        return *this;
    }

    friend QuadInt operator+(QuadInt x, const QuadInt& y) { return x += y; }
    friend QuadInt operator-(QuadInt x, const QuadInt& y) { return x -= y; }
    friend QuadInt operator*(QuadInt x, const QuadInt& y) { return x *= y; }
    friend QuadInt operator*(QuadInt x, const BigInt& k) { return x *= k; }
    friend QuadInt operator*(const BigInt& k, QuadInt x) { return x *= k; }

    friend bool operator==(const QuadInt& x, const QuadInt& y) {
        return x.ring_ == y.ring_ && x.a_ == y.a_ && x.b_ == y.b_;
    }

    friend std::ostream& operator<<(std::ostream& os, const QuadInt& x) {
        const char* w = x.ring_ == Ring::gaussian ? "i" : "j";
        if (x.b_ == 0) return os << x.a_;
        if (x.a_ != 0) os << x.a_ << (x.b_ < 0 ? "-" : "+");
        else if (x.b_ < 0) os << "-";
        BigInt ab = detail::abs(x.b_);
        if (ab != 1) os << ab;
        return os << w;
    }

    std::string str() const {
        std::ostringstream os;
        os << *this;
        return os.str();
    }

    void check_ring(const QuadInt& o) const {
        if (o.ring_ != ring_) throw std::invalid_argument("QuadInt: mixed Gaussian/Eisenstein arithmetic");
    }

   private:
    BigInt a_ = 0;
    BigInt b_ = 0;
    Ring ring_ = Ring::gaussian;
};

struct DivResult {
    QuadInt quotient;
    QuadInt remainder;
};

/// Euclidean division x = y*q + r with N(r) < N(y). The quotient rounds each
/// coordinate of x/y in the basis {1, w} to the nearest integer, ties toward zero.
inline DivResult euclid_div(const QuadInt& x, const QuadInt& y) {
    x.check_ring(y);
    if (y.is_zero()) throw std::domain_error("euclid_div: division by zero");
    QuadInt num = x * y.conj();
    BigInt n = y.norm();
    QuadInt q(x.ring(), detail::round_div(num.a(), n), detail::round_div(num.b(), n));
    QuadInt r = x - y * q;
    return {q, r};
}

inline QuadInt mod(const QuadInt& x, const QuadInt& m) { return euclid_div(x, m).remainder; }

/// True iff m divides x exactly.
inline bool divides(const QuadInt& m, const QuadInt& x) {
    m.check_ring(x);
    if (m.is_zero()) return x.is_zero();
    QuadInt num = x * m.conj();
    BigInt n = m.norm();
    return num.a() % n == 0 && num.b() % n == 0;
}

/// Exact quotient x / m; throws if m does not divide x.
inline QuadInt exact_div(const QuadInt& x, const QuadInt& m) {
    if (!divides(m, x)) throw std::domain_error("exact_div: not divisible");
    QuadInt num = x * m.conj();
    BigInt n = m.norm();
    return QuadInt(x.ring(), num.a() / n, num.b() / n);
}

/// Index k such that unit(k) * x is the canonical associate of x: argument in
/// [0, pi/2) for Z[i], [0, pi/3) for Z[j].
inline int canonical_unit_index(const QuadInt& x) {
    if (x.is_zero()) return 0;
    const int m = unit_count(x.ring());
    for (int k = 0; k < m; ++k) {
        QuadInt y = QuadInt::unit(x.ring(), k) * x;
        if (x.ring() == Ring::gaussian) {
            if (y.a() > 0 && y.b() >= 0) return k;
        } else {
            if (y.b() >= 0 && y.a() > y.b()) return k;
        }
    }
    throw std::logic_error("canonical_unit_index: no canonical associate");
}

inline QuadInt canonical_associate(const QuadInt& x) {
    return QuadInt::unit(x.ring(), canonical_unit_index(x)) * x;
}

inline QuadInt quad_gcd(QuadInt x, QuadInt y) {
    x.check_ring(y);
    if (x.is_zero() && y.is_zero()) throw std::domain_error("quad_gcd: both arguments zero");
    while (!y.is_zero()) {
        QuadInt r = mod(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return canonical_associate(x);
}

struct Bezout {
    QuadInt g;  // canonical gcd
    QuadInt s;
    QuadInt t;  // s*x + t*y = g
};

inline Bezout quad_xgcd(const QuadInt& x, const QuadInt& y) {
    x.check_ring(y);
    const Ring R = x.ring();
    if (x.is_zero() && y.is_zero()) throw std::domain_error("quad_xgcd: both arguments zero");
    QuadInt r0 = x, r1 = y;
    QuadInt s0(R, 1), s1(R, 0), t0(R, 0), t1(R, 1);
    while (!r1.is_zero()) {
        auto [q, r] = euclid_div(r0, r1);
        r0 = std::exchange(r1, r);
        s0 = std::exchange(s1, s0 - q * s1);
        t0 = std::exchange(t1, t0 - q * t1);
    }
    QuadInt u = QuadInt::unit(R, canonical_unit_index(r0));
    return {u * r0, u * s0, u * t0};
}

inline bool coprime(const QuadInt& x, const QuadInt& y) { return quad_gcd(x, y).is_unit(); }

/// Solution y of y = residues[k] (mod moduli[k]) for pairwise coprime moduli,
/// reduced modulo the product of the moduli.
inline QuadInt crt_solve(std::span<const QuadInt> residues, std::span<const QuadInt> moduli) {
    if (residues.size() != moduli.size() || moduli.empty())
        throw std::invalid_argument("crt_solve: need matching, non-empty residue and modulus lists");
    for (std::size_t k = 0; k < moduli.size(); ++k) {
        if (moduli[k].is_zero()) throw std::domain_error("crt_solve: zero modulus");
        for (std::size_t l = 0; l < k; ++l)
            if (!coprime(moduli[k], moduli[l]))
                throw std::domain_error("crt_solve: moduli " + moduli[l].str() + " and " + moduli[k].str() +
                                        " are not coprime");
    }
    QuadInt y = mod(residues[0], moduli[0]);
    QuadInt m = moduli[0];
    for (std::size_t k = 1; k < moduli.size(); ++k) {
        auto bz = quad_xgcd(m, moduli[k]);
        // bz.g is a unit u with s*m + t*m_k = u, so s*m*conj(u) = 1 (mod m_k).
        QuadInt inv_u = bz.g.conj();
        QuadInt lift = bz.s * inv_u * m;
        y = y + (residues[k] - y) * lift;
        m = m * moduli[k];
        y = mod(y, m);
    }
    return y;
}

// ---------------------------------------------------------------------------
// Rational integers: primality, quadratic residues, sums of two squares.

inline bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    return boost::multiprecision::miller_rabin_test(n, 25);
}

inline BigInt mod_pow(BigInt base, BigInt exp, const BigInt& m) {
    base %= m;
    if (base < 0) base += m;
    return boost::multiprecision::powm(base, exp, m);
}

/// Euler's criterion: x is a nonzero square mod the odd prime p iff x^((p-1)/2) = 1.
inline bool is_square_mod_p(const BigInt& x, const BigInt& p) {
    if (p < 3 || p % 2 == 0 || !is_prime(p)) throw std::invalid_argument("is_square_mod_p: p must be an odd prime");
    BigInt r = x % p;
    if (r < 0) r += p;
    if (r == 0) throw std::invalid_argument("is_square_mod_p: x must be nonzero mod p");
    return mod_pow(r, (p - 1) / 2, p) == 1;
}

/// p = u^2 + v^2 with u >= v > 0, for a prime p = 1 mod 4.
inline std::pair<BigInt, BigInt> two_squares(const BigInt& p) {
    if (!is_prime(p) || p % 4 != 1)
        throw std::invalid_argument("two_squares: p must be a prime congruent to 1 mod 4");
    BigInt c = 2;
    while (is_square_mod_p(c, p)) ++c;
    BigInt x = mod_pow(c, (p - 1) / 4, p);  // x^2 = -1 mod p
    BigInt a = p, b = x;
    while (b * b > p) {
        BigInt r = a % b;
        a = b;
        b = r;
    }
    BigInt u = b;
    BigInt v2 = p - u * u;
    BigInt v = boost::multiprecision::sqrt(v2);
    if (v * v != v2) throw std::logic_error("two_squares: reduction failed");
    if (u < v) std::swap(u, v);
    return {u, v};
}

// ---------------------------------------------------------------------------

/// Element of Q(i) or Q(j): (a + b*w) / den with den > 0 and gcd(a, b, den) = 1.
class QuadRat {
   public:
    QuadRat() : num_(Ring::gaussian), den_(1) {}
    explicit QuadRat(Ring ring, BigInt a = 0, BigInt b = 0, BigInt den = 1) : num_(ring, std::move(a), std::move(b)), den_(std::move(den)) {
        normalize();
    }
    QuadRat(QuadInt num, BigInt den = 1) : num_(std::move(num)), den_(std::move(den)) { normalize(); }  // NOLINT

    const QuadInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    Ring ring() const { return num_.ring(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_integral() const { return den_ == 1; }

    QuadRat conj() const { return QuadRat(num_.conj(), den_); }

    BigRational norm() const { return BigRational(num_.norm(), den_ * den_); }

    BigRational re_rational() const {
        // Real part as an exact rational; only meaningful for Z[i] or for the
        // rational part of an Eisenstein value with b = 0.
        if (ring() == Ring::gaussian) return BigRational(num_.a(), den_);
        return BigRational(2 * num_.a() - num_.b(), 2 * den_);
    }

    /// True iff the value is a rational number (imaginary part zero).
    bool is_rational() const { return num_.b() == 0; }

    std::complex<double> to_complex() const {
        auto z = num_.to_complex();
        return z / static_cast<double>(den_);
    }

    QuadRat operator-() const { return QuadRat(-num_, den_); }

    QuadRat& operator+=(const QuadRat& o) {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    QuadRat& operator-=(const QuadRat& o) { return *this += -o; }
    QuadRat& operator*=(const QuadRat& o) {
        num_ *= o.num_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    QuadRat& operator/=(const QuadRat& o) {
        if (o.is_zero()) throw std::domain_error("QuadRat: division by zero");
        // x/y = x * conj(y) / N(y)
        QuadInt c = o.num_.conj();
        BigInt n = o.num_.norm();
        num_ = num_ * c * o.den_;
        den_ *= n;
        normalize();
        return *this;
    }

    friend QuadRat operator+(QuadRat x, const QuadRat& y) { return x += y; }
    friend QuadRat operator-(QuadRat x, const QuadRat& y) { return x -= y; }
    friend QuadRat operator*(QuadRat x, const QuadRat& y) { return x *= y; }
    friend QuadRat operator/(QuadRat x, const QuadRat& y) { return x /= y; }

    friend bool operator==(const QuadRat& x, const QuadRat& y) { return x.num_ == y.num_ && x.den_ == y.den_; }

    friend std::ostream& operator<<(std::ostream& os, const QuadRat& x) {
        if (x.den_ == 1) return os << x.num_;
        return os << "(" << x.num_ << ")/" << x.den_;
    }

    std::string str() const {
        std::ostringstream os;
        os << *this;
        return os.str();
    }

   private:
    void normalize() {
        if (den_ == 0) throw std::domain_error("QuadRat: zero denominator");
        if (den_ < 0) {
            den_ = -den_;
            num_ = -num_;
        }
        BigInt g = gcd(gcd(detail::abs(num_.a()), detail::abs(num_.b())), den_);
        if (g > 1) {
            num_ = QuadInt(num_.ring(), num_.a() / g, num_.b() / g);
            den_ /= g;
        }
    }

    QuadInt num_;
    BigInt den_;
};

inline QuadRat make_rat(Ring ring, long a, long b = 0, long den = 1) { return QuadRat(ring, a, b, den); }

}  // namespace pstbc

#endif  // PSTBC_QUAD_ARITH_HPP
