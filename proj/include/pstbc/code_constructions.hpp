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

// Perfect space-time codes: code specifications, unitary generator matrices,
// encoding of information symbols into codewords, and a text format.

#ifndef PSTBC_CODE_CONSTRUCTIONS_HPP
#define PSTBC_CODE_CONSTRUCTIONS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pstbc/lattice_tools.hpp"
#include "pstbc/number_field.hpp"
#include "pstbc/quad_arith.hpp"

namespace pstbc {

struct CodeSpec {
    std::string name;
    FieldPtr desc;
    QuadInt gamma;
    std::vector<NfElement> basis;
    BigInt norm_factor;

    int n() const { return desc->degree(); }
    Ring ring() const { return desc->ring(); }
};

/// Throws unless |gamma| = 1 and Tr(nu_k conj(nu_l)) = N delta_kl exactly.
inline void validate_spec(const CodeSpec& s) {
    if (!s.gamma.is_unit() || s.gamma.ring() != s.ring()) throw std::logic_error(s.name + ": gamma is not a unit of O_F");
    if (static_cast<int>(s.basis.size()) != s.n()) throw std::logic_error(s.name + ": basis has the wrong size");
    for (const auto& b : s.basis)
        if (b.desc() != s.desc || !b.is_integral()) throw std::logic_error(s.name + ": basis element outside O_K");
    if (!is_scaled_identity(gram(s.basis), s.norm_factor))
        throw std::logic_error(s.name + ": Gram matrix is not " + s.norm_factor.str() + " * I");
}

// ---------------------------------------------------------------------------
// 2x2 family over Q(i, sqrt(p)).

/// N_{K/F}(a + b theta) = a^2 + ab - b^2 (p-1)/4 for theta = (1+sqrt(p))/2.
inline QuadInt quadratic_norm(const QuadInt& a, const QuadInt& b, const BigInt& p) {
    return a * a + a * b - b * b * ((p - 1) / 4);
}

/// Smallest alpha = a + b theta (ordered by max coordinate, then lexicographic)
/// with N(alpha) an associate of u+iv, or failing that of u-iv.
inline NfElement find_ideal_generator_2x2(const FieldPtr& f, const BigInt& p, int box = 30) {
    if (p > BigInt(1000000000000LL)) throw std::invalid_argument("2x2 code: p is too large for the generator search");
    auto [u, v] = two_squares(p);
    const __int128 k = static_cast<__int128>(static_cast<long long>((p - 1) / 4));
    const long long tu = static_cast<long long>(u), tv = static_cast<long long>(v);
    for (const long long sv : {tv, -tv}) {
        // associates of the target u + sv i
        const std::array<std::array<__int128, 2>, 4> assoc{{{tu, sv}, {-sv, tu}, {-tu, -sv}, {sv, -tu}}};
        for (int radius = 0; radius <= box; ++radius)
            for (int ar = -radius; ar <= radius; ++ar)
                for (int ai = -radius; ai <= radius; ++ai)
                    for (int br = -radius; br <= radius; ++br)
                        for (int bi = -radius; bi <= radius; ++bi) {
                            if (std::max({std::abs(ar), std::abs(ai), std::abs(br), std::abs(bi)}) != radius) continue;
                            // a^2 + a b - k b^2 in Z[i]
                            const __int128 re = static_cast<__int128>(ar) * ar - ai * ai + ar * br - ai * bi -
                                                k * (static_cast<__int128>(br) * br - bi * bi);
                            const __int128 im = static_cast<__int128>(2) * ar * ai + ar * bi + ai * br - k * (2 * br * bi);
                            bool hit = false;
                            for (const auto& t : assoc) hit = hit || (re == t[0] && im == t[1]);
                            if (!hit) continue;
                            QuadInt a = QuadInt::gaussian(ar, ai), b = QuadInt::gaussian(br, bi);
                            // Fix the unit so that the constant coordinate is a canonical associate.
                            QuadInt w = QuadInt::unit(Ring::gaussian, canonical_unit_index(a.is_zero() ? b : a));
                            return NfElement::from_ints(f, {w * a, w * b});
                        }
    }
    throw std::runtime_error("no ideal generator of norm " + p.str() + " found in box |Re|,|Im| <= " +
                             std::to_string(box));
}

inline std::vector<NfElement> ideal_basis_2x2(const FieldPtr& f, const BigInt& p, int box = 30) {
    NfElement alpha = find_ideal_generator_2x2(f, p, box);
    std::vector<NfElement> basis{alpha, alpha * NfElement::theta_pow(f, 1)};
    auto red = lll_reduce(gram(basis), Ring::gaussian);
    return apply_transform(red.transform, basis);
}

namespace detail {

inline CodeSpec build_2x2(const BigInt& p, std::string name, int box) {
    if (!is_prime(p) || p % 4 != 1) throw std::invalid_argument("2x2 code: p must be a prime = 1 mod 4");
    auto f = fields::quadratic(p);
    CodeSpec s{std::move(name), f, QuadInt::gaussian(0, 1), ideal_basis_2x2(f, p, box), p};
    validate_spec(s);
    return s;
}

}  // namespace detail

/// 2x2 perfect code for a prime p = 5 mod 8; gamma = i.
inline CodeSpec make_code_2x2(const BigInt& p, int box = 30) {
    if (!is_prime(p) || p % 8 != 5)
        throw std::invalid_argument("2x2 code: p must be a prime with p = 5 mod 8 (got " + p.str() + ")");
    return detail::build_2x2(p, p == 5 ? "golden" : "2x2:" + p.str(), box);
}

/// Same construction without the p = 5 mod 8 requirement. For p = 1 mod 8 the
/// unit i is a relative norm and the algebra is not a division algebra.
inline CodeSpec make_code_2x2_unchecked(const BigInt& p, int box = 30) {
    return detail::build_2x2(p, "2x2:" + p.str() + "-broken", box);
}

// ---------------------------------------------------------------------------
// 3x3 and 4x4 codes with explicit bases.

inline CodeSpec make_code_3x3() {
    auto f = fields::cubic();
    auto e = [](long a, long b) { return QuadInt::eisenstein(a, b); };
    std::vector<NfElement> basis{
        NfElement::from_ints(f, {e(1, 1), e(1, 0), e(0, 0)}),
        NfElement::from_ints(f, {e(-1, -2), e(0, 0), e(0, 1)}),
        NfElement::from_ints(f, {e(-1, -2), e(1, 1), e(1, 1)}),
    };
    CodeSpec s{"3x3", f, QuadInt::eisenstein(0, 1), std::move(basis), 7};
    validate_spec(s);
    return s;
}

inline CodeSpec make_code_4x4() {
    auto f = fields::quartic();
    auto g = [](long a, long b) { return QuadInt::gaussian(a, b); };
    std::vector<NfElement> basis{
        NfElement::from_ints(f, {g(1, -3), g(0, 0), g(0, 1), g(0, 0)}),
        NfElement::from_ints(f, {g(0, 0), g(1, -3), g(0, 0), g(0, 1)}),
        NfElement::from_ints(f, {g(0, -1), g(-3, 4), g(0, 0), g(1, -1)}),
        NfElement::from_ints(f, {g(-1, 1), g(-3, 0), g(1, 0), g(1, 0)}),
    };
    CodeSpec s{"4x4", f, QuadInt::gaussian(0, 1), std::move(basis), 15};
    validate_spec(s);
    return s;
}

// ---------------------------------------------------------------------------
// 6x6 code: basis of a non-principal ideal of norm 7.

/// t in [0, 7) with p_theta(X) = (X - t)^n mod 7, or -1 if 7 is not totally ramified.
inline int totally_ramified_root(const FieldDesc& f, int prime = 7) {
    const int n = f.degree();
    for (int t = 0; t < prime; ++t) {
        bool ok = true;
        BigInt binom = 1;
        for (int k = 0; k <= n && ok; ++k) {
            // coefficient of X^k in (X - t)^n is C(n,k) (-t)^(n-k)
            BigInt c = binom;
            for (int m = 0; m < n - k; ++m) c *= -t;
            BigInt diff = (f.min_poly()[k] - c) % prime;
            ok = diff == 0;
            binom = binom * (n - k) / (k + 1);
        }
        if (ok) return t;
    }
    return -1;
}

struct SexticPipeline {
    int t = -1;
    QuadInt prime_factor;          // the factor of 7 in Z[j] used for the ideal
    std::vector<NfElement> hnf;    // Hermite normal form basis of the ideal
    BigInt ideal_norm;             // index of the ideal in O_K
    HermitianGram hnf_gram;
    std::vector<NfElement> basis;  // reduced basis with Gram 14 I
};

/// Ideal I = (prime_factor, theta - t) as an O_F-module, its HNF, and the
/// LLL-reduced orthogonal basis. Each stage throws on failure.
inline SexticPipeline sextic_pipeline(const FieldPtr& f, const QuadInt& prime_factor) {
    SexticPipeline out;
    out.prime_factor = prime_factor;
    out.t = totally_ramified_root(*f, 7);
    if (out.t < 0) throw std::logic_error("6x6 pipeline: 7 is not totally ramified in Q(theta)");
    const Ring R = Ring::eisenstein;
    std::vector<NfElement> gens;
    NfElement pi = NfElement::theta_pow(f, 1) - NfElement::scalar(f, QuadRat(R, out.t));
    NfElement q = NfElement::scalar(f, QuadRat(prime_factor));
    for (int k = 0; k < f->degree(); ++k) {
        NfElement tk = NfElement::theta_pow(f, k);
        gens.push_back(q * tk);
        gens.push_back(pi * tk);
    }
    HnfResult h = hnf_module_basis(gens, R);
    out.hnf = h.basis;
    out.ideal_norm = h.index;
    if (out.ideal_norm != 7)
        throw std::logic_error("6x6 pipeline: ideal norm is " + out.ideal_norm.str() + ", expected 7");
    out.hnf_gram = gram(out.hnf);
    auto red = lll_reduce(out.hnf_gram, R);
    if (!is_scaled_identity(red.gram, 14)) throw std::logic_error("6x6 pipeline: reduced Gram is not 14 * I");
    out.basis = apply_transform(red.transform, out.hnf);
    return out;
}

/// The prime of Z[j] above 7 whose ideal reproduces the published 6x6 generator.
inline QuadInt sextic_prime_factor() { return QuadInt::eisenstein(3, 1); }

inline CodeSpec make_code_6x6() {
    auto f = fields::sextic();
    auto pipe = sextic_pipeline(f, sextic_prime_factor());
    CodeSpec s{"6x6", f, QuadInt::eisenstein(0, -1), std::move(pipe.basis), 14};
    validate_spec(s);
    return s;
}

// ---------------------------------------------------------------------------
// Lookup by name.

inline std::vector<std::string> valid_code_names() { return {"golden", "2x2:p", "3x3", "4x4", "6x6", "2x2:17-broken"}; }

/// Accepts golden, 2x2:<p>, 3x3, 4x4, 6x6 and 2x2:<p>-broken.
inline CodeSpec code_by_name(const std::string& name) {
    if (name == "golden") return make_code_2x2(5);
    if (name == "3x3") return make_code_3x3();
    if (name == "4x4") return make_code_4x4();
    if (name == "6x6") return make_code_6x6();
    if (name.rfind("2x2:", 0) == 0) {
        std::string rest = name.substr(4);
        bool broken = false;
        const std::string suffix = "-broken";
        if (rest.size() > suffix.size() && rest.compare(rest.size() - suffix.size(), suffix.size(), suffix) == 0) {
            broken = true;
            rest.resize(rest.size() - suffix.size());
        }
        if (!rest.empty() && std::all_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            BigInt p(rest);
            return broken ? make_code_2x2_unchecked(p) : make_code_2x2(p);
        }
    }
    std::string msg = "unknown code '" + name + "'; valid names:";
    for (const auto& v : valid_code_names()) msg += " " + v;
    throw std::invalid_argument(msg);
}

// ---------------------------------------------------------------------------
// Generator matrix and encoding.

/// R[l][k] = sigma^l(nu_k) / sqrt(N).
inline Eigen::MatrixXcd generator_matrix(const CodeSpec& s) {
    const int n = s.n();
    Eigen::MatrixXcd r(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(s.norm_factor));
    for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k) r(l, k) = embed(s.basis[k], l) * scale;
    return r;
}

struct Codeword {
    std::vector<NfElement> layers;  // x_l = sum_k u[l n + k] nu_k
    NfMatrix exact;                 // entries without the 1/sqrt(N) factor
    Eigen::MatrixXcd numeric;
};

/// Entry (r, c) is sigma^r(x_{(c - r) mod n}), times gamma when c < r.
inline NfMatrix codeword_matrix(const CodeSpec& s, const std::vector<NfElement>& layers) {
    const int n = s.n();
    NfMatrix m(n, std::vector<NfElement>(n));
    const QuadRat g(s.gamma);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            NfElement e = layers[((c - r) % n + n) % n].sigma(r);
            m[r][c] = c < r ? e * g : e;
        }
    return m;
}

inline std::vector<NfElement> encode_layers(const CodeSpec& s, const std::vector<QuadInt>& u) {
    const int n = s.n();
    if (static_cast<int>(u.size()) != n * n) throw std::invalid_argument("encode: expected n^2 symbols");
    std::vector<NfElement> layers;
    for (int l = 0; l < n; ++l) {
        NfElement x(s.desc);
        for (int k = 0; k < n; ++k) {
            const QuadInt& sym = u[l * n + k];
            if (sym.ring() != s.ring()) throw std::invalid_argument("encode: symbol ring does not match the code");
            if (!sym.is_zero()) x += s.basis[k] * QuadRat(sym);
        }
        layers.push_back(std::move(x));
    }
    return layers;
}

inline Codeword encode(const CodeSpec& s, const std::vector<QuadInt>& u) {
    Codeword w;
    w.layers = encode_layers(s, u);
    w.exact = codeword_matrix(s, w.layers);
    const int n = s.n();
    const double scale = 1.0 / std::sqrt(static_cast<double>(s.norm_factor));
    w.numeric.resize(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) w.numeric(r, c) = w.exact[r][c].embed_double(0) * scale;
    return w;
}

/// Floating-point encoder for arbitrary complex symbols (used by simulation).
inline Eigen::MatrixXcd encode_numeric(const CodeSpec& s, const Eigen::MatrixXcd& gen, const Eigen::VectorXcd& u) {
    const int n = s.n();
    const std::complex<double> g = s.gamma.to_complex();
    Eigen::MatrixXcd x(n, n);
    for (int l = 0; l < n; ++l) {
        Eigen::VectorXcd v = gen * u.segment(l * n, n);  // v[r] = sigma^r(x_l) / sqrt(N)
        for (int r = 0; r < n; ++r) {
            const int c = (l + r) % n;
            x(r, c) = c < r ? g * v[r] : v[r];
        }
    }
    return x;
}

struct CodewordDet {
    QuadInt exact;                // unnormalized determinant, an element of O_F
    std::complex<double> numeric; // exact * N^(-n/2)
    BigRational abs2_normalized;  // |det|^2 / N^n
};

inline CodewordDet codeword_det(const CodeSpec& s, const std::vector<QuadInt>& u) {
    NfElement d = reduced_norm_exact(codeword_matrix(s, encode_layers(s, u)));
    if (!d.in_base_field() || !d[0].is_integral())
        throw std::logic_error(s.name + ": codeword determinant is not in O_F");
    CodewordDet out;
    out.exact = d[0].num();
    const double scale = std::pow(static_cast<double>(s.norm_factor), -s.n() / 2.0);
    out.numeric = out.exact.to_complex() * scale;
    BigInt nn = 1;
    for (int k = 0; k < s.n(); ++k) nn *= s.norm_factor;
    out.abs2_normalized = BigRational(out.exact.norm(), nn);
    return out;
}

// ---------------------------------------------------------------------------
// Text format:
//   name: <label>
//   ring: gaussian|eisenstein
//   min_poly: c_0 ... c_n              (integers, low degree first)
//   sigma_poly: q_0 ... q_{n-1}        (F-values)
//   theta: <decimal>
//   gamma: <F-value>
//   norm_factor: <integer>
//   basis: q_0 ... q_{n-1}             (repeated n times)
// An F-value is written a,b or a,b/d for (a + b w)/d.

inline std::string format_quad(const QuadRat& q) {
    std::string s = q.num().a().str() + "," + q.num().b().str();
    if (q.den() != 1) s += "/" + q.den().str();
    return s;
}

inline QuadRat parse_quad(const std::string& tok, Ring ring) {
    auto comma = tok.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("bad F-value '" + tok + "'");
    auto slash = tok.find('/', comma);
    try {
        BigInt a(tok.substr(0, comma));
        BigInt b(tok.substr(comma + 1, slash == std::string::npos ? std::string::npos : slash - comma - 1));
        BigInt d = slash == std::string::npos ? BigInt(1) : BigInt(tok.substr(slash + 1));
        if (d <= 0) throw std::invalid_argument("non-positive denominator");
        return QuadRat(ring, a, b, d);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad F-value '" + tok + "'");
    }
}

inline std::string serialize(const CodeSpec& s) {
    std::ostringstream os;
    os << "name: " << s.name << "\n";
    os << "ring: " << ring_name(s.ring()) << "\n";
    os << "degree: " << s.n() << "\n";
    os << "min_poly:";
    for (const auto& c : s.desc->min_poly()) os << " " << c;
    os << "\nsigma_poly:";
    for (const auto& c : s.desc->sigma_poly()) os << " " << format_quad(c);
    os << "\ntheta: " << s.desc->theta().str(50) << "\n";
    os << "gamma: " << format_quad(QuadRat(s.gamma)) << "\n";
    os << "norm_factor: " << s.norm_factor << "\n";
    for (const auto& b : s.basis) {
        os << "basis:";
        for (const auto& c : b.coeffs()) os << " " << format_quad(c);
        os << "\n";
    }
    return os.str();
}

/// Parses the text format and re-validates every invariant.
inline CodeSpec parse_code_spec(const std::string& text) {
    std::istringstream in(text);
    std::string line, name, ring_s, theta_s, gamma_s, norm_s;
    std::vector<std::string> minp, sigp;
    std::vector<std::vector<std::string>> basis_toks;
    auto tokens = [](const std::string& rest) {
        std::istringstream ts(rest);
        std::vector<std::string> out;
        for (std::string t; ts >> t;) out.push_back(t);
        return out;
    };
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("code spec: malformed line '" + line + "'");
        std::string key = line.substr(0, colon), rest = line.substr(colon + 1);
        auto first = rest.find_first_not_of(' ');
        rest = first == std::string::npos ? "" : rest.substr(first);
        if (key == "name") name = rest;
        else if (key == "ring") ring_s = rest;
        else if (key == "degree") continue;
        else if (key == "min_poly") minp = tokens(rest);
        else if (key == "sigma_poly") sigp = tokens(rest);
        else if (key == "theta") theta_s = rest;
        else if (key == "gamma") gamma_s = rest;
        else if (key == "norm_factor") norm_s = rest;
        else if (key == "basis") basis_toks.push_back(tokens(rest));
        else throw std::invalid_argument("code spec: unknown key '" + key + "'");
    }
    if (ring_s.empty() || minp.empty() || sigp.empty() || theta_s.empty() || gamma_s.empty() || norm_s.empty())
        throw std::invalid_argument("code spec: missing field");
    const Ring ring = parse_ring(ring_s);
    std::vector<BigInt> mp;
    for (const auto& t : minp) mp.emplace_back(t);
    std::vector<QuadRat> sp;
    for (const auto& t : sigp) sp.push_back(parse_quad(t, ring));
    auto f = FieldDesc::make(name, ring, mp, sp, BigFloat(theta_s));
    QuadRat g = parse_quad(gamma_s, ring);
    if (!g.is_integral()) throw std::invalid_argument("code spec: gamma must be integral");
    std::vector<NfElement> basis;
    for (const auto& toks : basis_toks) {
        std::vector<QuadRat> c;
        for (const auto& t : toks) c.push_back(parse_quad(t, ring));
        basis.emplace_back(f, c);
    }
    CodeSpec s{name, f, g.num(), std::move(basis), BigInt(norm_s)};
    validate_spec(s);
    return s;
}

}  // namespace pstbc

#endif  // PSTBC_CODE_CONSTRUCTIONS_HPP
