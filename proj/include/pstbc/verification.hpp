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

// Checks of the algebraic properties of the codes: minimum determinants,
// determinant discreteness, non-norm conditions, CRT witnesses, and agreement
// with published generator matrices.

#ifndef PSTBC_VERIFICATION_HPP
#define PSTBC_VERIFICATION_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pstbc/code_constructions.hpp"
#include "pstbc/int_field.hpp"

namespace pstbc {

// ---------------------------------------------------------------------------
// Published generator matrices (four to five significant digits).

namespace reference {

using C = std::complex<double>;

/// Rows are basis elements, columns the three embeddings.
inline Eigen::MatrixXcd generator_3x3() {
    Eigen::MatrixXcd m(3, 3);
    m << C(0.66030, 0.32733), C(0.02077, 0.32733), C(-0.49209, 0.32733),  //
        C(-0.29386, -0.14567), C(-0.03743, -0.58982), C(-0.61362, 0.40817),  //
        C(0.52952, 0.26250), C(-0.04667, -0.73550), C(0.27309, -0.18165);
    return m;
}

/// Rows are the embeddings sigma^1, sigma^0, sigma^3, sigma^2.
inline Eigen::MatrixXcd generator_4x4() {
    Eigen::MatrixXcd m(4, 4);
    m << C(0.2582, -0.3122), C(0.3455, -0.4178), C(-0.4178, 0.5051), C(-0.2136, 0.2582),  //
        C(0.2582, 0.0873), C(0.4718, 0.1596), C(0.1596, 0.054), C(0.7633, 0.2582),       //
        C(0.2582, 0.2136), C(-0.5051, -0.4178), C(-0.4178, -0.3455), C(0.3122, 0.2582),  //
        C(0.2582, -0.7633), C(-0.054, 0.1596), C(0.1596, -0.4718), C(-0.0873, 0.2582);
    return m;
}

/// Rows are embeddings in sigma order; the 1/sqrt(14) factor is applied.
inline Eigen::MatrixXcd generator_6x6() {
    const C a(1.9498, 0), b(1.3019, -0.8660), c(-0.0549, -0.8660), d(-1.7469, -0.8660), e(1.5636, 0), f(0.8677, 0);
    Eigen::MatrixXcd m(6, 6);
    m << a, b, c, d, e, f,  //
        f, d, b, c, -a, e,   //
        e, c, d, b, -f, -a,  //
        -a, b, c, d, -e, -f, //
        -f, d, b, c, a, -e,  //
        -e, c, d, b, f, a;
    return m / std::sqrt(14.0);
}

}  // namespace reference

struct MatchOptions {
    bool transpose = false;     // published matrix lists basis elements along rows
    bool permute_rows = false;  // embeddings may appear in another order
    bool permute_cols = false;  // basis elements may appear in another order
    double tol = 1e-4;
};

struct MatchResult {
    bool ok = false;
    double max_error = 0;
    std::vector<int> row_perm;  // published row r is our row row_perm[r]
    std::vector<int> col_perm;  // published column c is our column col_perm[c]
    std::vector<int> phase;     // unit index multiplying our column
};

/// Compares our R (rows: embeddings, columns: basis) with a published matrix,
/// allowing a unit of O_F per basis element plus the requested reorderings.
inline MatchResult match_generator(const Eigen::MatrixXcd& ours, Eigen::MatrixXcd published, Ring ring,
                                   const MatchOptions& opt) {
    if (opt.transpose) published.transposeInPlace();
    const int n = static_cast<int>(ours.rows());
    MatchResult best;
    best.max_error = std::numeric_limits<double>::infinity();
    std::vector<int> rows(n);
    std::iota(rows.begin(), rows.end(), 0);
    const int units = unit_count(ring);
    do {
        MatchResult cur;
        cur.row_perm = rows;
        cur.col_perm.assign(n, -1);
        cur.phase.assign(n, 0);
        std::vector<bool> used(n, false);
        bool ok = true;
        for (int c = 0; c < n && ok; ++c) {
            double col_best = std::numeric_limits<double>::infinity();
            int best_k = -1, best_u = 0;
            for (int k = 0; k < n; ++k) {
                if (used[k] || (!opt.permute_cols && k != c)) continue;
                for (int u = 0; u < units; ++u) {
                    const std::complex<double> w = QuadInt::unit(ring, u).to_complex();
                    double err = 0;
                    for (int r = 0; r < n; ++r) err = std::max(err, std::abs(published(r, c) - w * ours(rows[r], k)));
                    if (err < col_best) {
                        col_best = err;
                        best_k = k;
                        best_u = u;
                    }
                }
            }
            if (best_k < 0) {
                ok = false;
                break;
            }
            used[best_k] = true;
            cur.col_perm[c] = best_k;
            cur.phase[c] = best_u;
            cur.max_error = std::max(cur.max_error, col_best);
        }
        if (ok && cur.max_error < best.max_error) best = cur;
    } while (opt.permute_rows && std::next_permutation(rows.begin(), rows.end()));
    best.ok = best.max_error <= opt.tol;
    return best;
}

/// How each shipped code is compared with its published matrix.
inline std::optional<std::pair<Eigen::MatrixXcd, MatchOptions>> published_generator(const std::string& code) {
    if (code == "3x3") return std::make_pair(reference::generator_3x3(), MatchOptions{true, false, false, 1e-4});
    if (code == "4x4") return std::make_pair(reference::generator_4x4(), MatchOptions{false, true, false, 1e-4});
    if (code == "6x6") return std::make_pair(reference::generator_6x6(), MatchOptions{false, false, true, 1e-3});
    return std::nullopt;
}

/// max |R R^H - I|.
inline double unitarity_error(const Eigen::MatrixXcd& r) {
    return (r * r.adjoint() - Eigen::MatrixXcd::Identity(r.rows(), r.cols())).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Minimum determinants.

struct MinDetReport {
    std::string code;
    std::string box;
    std::uint64_t evaluated = 0;
    BigInt min_abs2_unnormalized = -1;  // |det|^2 before the 1/sqrt(N) scaling
    BigRational min_abs2;               // normalized
    std::vector<QuadInt> argmin;
    BigRational target;                 // expected minimum, 0 when unknown
    bool zero_found = false;
    std::vector<QuadInt> zero_witness;
    double seconds = 0;

    double min_abs2_float() const { return static_cast<double>(min_abs2); }
    bool meets_target() const { return !zero_found && min_abs2 == target; }
};

inline BigInt power_of(const BigInt& b, int e) {
    BigInt r = 1;
    for (int k = 0; k < e; ++k) r *= b;
    return r;
}

/// Minimum normalized |det|^2 predicted for the shipped codes, 0 if unknown.
inline BigRational expected_min_det(const CodeSpec& s) {
    if (s.n() == 2 && s.name.find("broken") == std::string::npos) return BigRational(1, s.norm_factor);
    if (s.name == "3x3") return BigRational(1, 49);
    if (s.name == "4x4") return BigRational(1, 1125);
    if (s.name == "6x6") return BigRational(1, 64 * 2401);  // upper bound, attained by single symbols
    return 0;
}

namespace detail {

inline std::vector<QuadInt> box_symbols(Ring ring, int radius) {
    std::vector<QuadInt> out;
    for (int a = -radius; a <= radius; ++a)
        for (int b = -radius; b <= radius; ++b) out.emplace_back(ring, a, b);
    return out;
}

inline void record(MinDetReport& rep, const BigInt& abs2, const std::vector<QuadInt>& u) {
    ++rep.evaluated;
    if (abs2 == 0) {
        if (!rep.zero_found) rep.zero_witness = u;
        rep.zero_found = true;
    }
    if (rep.min_abs2_unnormalized < 0 || abs2 < rep.min_abs2_unnormalized) {
        rep.min_abs2_unnormalized = abs2;
        rep.argmin = u;
    }
}

inline void finish(MinDetReport& rep, const CodeSpec& s, std::chrono::steady_clock::time_point t0) {
    rep.min_abs2 = BigRational(rep.min_abs2_unnormalized, power_of(s.norm_factor, s.n()));
    rep.target = expected_min_det(s);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline int64_t quad_abs2(Ring r, int64_t a, int64_t b) { return r == Ring::gaussian ? a * a + b * b : a * a - a * b + b * b; }

}  // namespace detail

/// Exhaustive minimum of |det|^2 over all nonzero symbol vectors with
/// coordinates a + b w, |a|, |b| <= radius. Throws if more than `budget`
/// determinants would be needed.
inline MinDetReport min_det_bruteforce(const CodeSpec& s, int radius, double budget = 1e9) {
    if (radius < 1) throw std::invalid_argument("min_det_bruteforce: radius must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();
    const int n = s.n();
    const auto syms = detail::box_symbols(s.ring(), radius);
    const double total = std::pow(static_cast<double>(syms.size()), n * n);
    if (total > budget)
        throw std::length_error("min_det_bruteforce: " + std::to_string(total) + " determinants exceed the budget of " +
                                std::to_string(budget));
    MinDetReport rep;
    rep.code = s.name;
    rep.box = "all nonzero vectors, |Re|,|Im| <= " + std::to_string(radius);

    FixedDetEvaluator<int64_t> ev(s);
    const IntField<int64_t>& f = ev.field();
    // All layer values x = sum_k u_k nu_k with their symbol vectors.
    const std::size_t q = syms.size();
    std::size_t layer_count = 1;
    for (int k = 0; k < n; ++k) layer_count *= q;
    std::vector<FixedElem<int64_t>> layers(layer_count);
    std::vector<std::vector<QuadInt>> layer_syms(layer_count);
    for (std::size_t idx = 0; idx < layer_count; ++idx) {
        std::vector<QuadInt> u;
        std::size_t r = idx;
        for (int k = 0; k < n; ++k) {
            u.push_back(syms[r % q]);
            r /= q;
        }
        layers[idx] = ev.layer(u.data());
        layer_syms[idx] = std::move(u);
    }
    const std::size_t zero_idx = [&] {
        std::size_t idx = 0, mul = 1;
        for (int k = 0; k < n; ++k, mul *= q) idx += static_cast<std::size_t>(radius * (2 * radius + 1) + radius) * mul;
        return idx;
    }();
    auto full_vector = [&](std::initializer_list<std::size_t> idx) {
        std::vector<QuadInt> u;
        for (auto i : idx) u.insert(u.end(), layer_syms[i].begin(), layer_syms[i].end());
        return u;
    };

    const Ring ring = s.ring();
    auto gamma = FixedQuad<int64_t>{static_cast<int64_t>(s.gamma.a()), static_cast<int64_t>(s.gamma.b())};
    // Relative norms of all layer values.
    std::vector<FixedQuad<int64_t>> norms(layer_count);
    for (std::size_t i = 0; i < layer_count; ++i) {
        FixedElem<int64_t> acc = layers[i];
        for (int k = 1; k < n; ++k) acc = f.mul(acc, f.sigma(layers[i], k));
        norms[i] = acc.c[0];
    }

    if (n == 2) {
        // det = N(x0) - gamma N(x1)
        for (std::size_t i0 = 0; i0 < layer_count; ++i0)
            for (std::size_t i1 = 0; i1 < layer_count; ++i1) {
                if (i0 == zero_idx && i1 == zero_idx) continue;
                auto g1 = f.qmul(gamma, norms[i1]);
                int64_t a = norms[i0].a - g1.a, b = norms[i0].b - g1.b;
                int64_t abs2 = detail::quad_abs2(ring, a, b);
                if (rep.min_abs2_unnormalized < 0 || abs2 <= rep.min_abs2_unnormalized || abs2 == 0)
                    detail::record(rep, abs2, full_vector({i0, i1}));
                else
                    ++rep.evaluated;
            }
    } else if (n == 3) {
        // det = N(x0) + g N(x1) + g^2 N(x2) - g Tr(x0 s(x1) s^2(x2))
        const auto g2 = f.qmul(gamma, gamma);
        std::vector<FixedElem<int64_t>> s1(layer_count), s2(layer_count);
        std::vector<FixedQuad<int64_t>> g2n2(layer_count);
        for (std::size_t i = 0; i < layer_count; ++i) {
            s1[i] = f.sigma(layers[i], 1);
            s2[i] = f.sigma(layers[i], 2);
            g2n2[i] = f.qmul(g2, norms[i]);
        }
        // traces of theta^m, m < 2n - 1, as rational integers
        std::vector<int64_t> tr;
        for (int m = 0; m < 2 * n - 1; ++m) tr.push_back(static_cast<int64_t>(rel_trace(NfElement::theta_pow(s.desc, m)).num().a()));
        int64_t best = rep.min_abs2_unnormalized < 0 ? std::numeric_limits<int64_t>::max() : static_cast<int64_t>(rep.min_abs2_unnormalized);
        for (std::size_t i0 = 0; i0 < layer_count; ++i0)
            for (std::size_t i1 = 0; i1 < layer_count; ++i1) {
                FixedElem<int64_t> w = f.mul(layers[i0], s1[i1]);
                // t_m = Tr(w theta^m), so Tr(w y) = sum_m y_m t_m
                std::array<FixedQuad<int64_t>, 3> t{};
                for (int m = 0; m < 3; ++m)
                    for (int k = 0; k < 3; ++k) t[m] = f.qadd(t[m], f.qscale(w.c[k], tr[k + m]));
                auto gt0 = f.qmul(gamma, t[0]), gt1 = f.qmul(gamma, t[1]), gt2 = f.qmul(gamma, t[2]);
                auto base = f.qadd(norms[i0], f.qmul(gamma, norms[i1]));
                for (std::size_t i2 = 0; i2 < layer_count; ++i2) {
                    const auto& y = s2[i2].c;
                    // gamma * Tr(w s^2(x2)), expanded with plain arithmetic (values are small)
                    int64_t ta, tb;
                    if (ring == Ring::eisenstein) {
                        ta = y[0].a * gt0.a - y[0].b * gt0.b + y[1].a * gt1.a - y[1].b * gt1.b + y[2].a * gt2.a - y[2].b * gt2.b;
                        tb = y[0].a * gt0.b + y[0].b * gt0.a - y[0].b * gt0.b + y[1].a * gt1.b + y[1].b * gt1.a -
                             y[1].b * gt1.b + y[2].a * gt2.b + y[2].b * gt2.a - y[2].b * gt2.b;
                    } else {
                        ta = y[0].a * gt0.a - y[0].b * gt0.b + y[1].a * gt1.a - y[1].b * gt1.b + y[2].a * gt2.a - y[2].b * gt2.b;
                        tb = y[0].a * gt0.b + y[0].b * gt0.a + y[1].a * gt1.b + y[1].b * gt1.a + y[2].a * gt2.b + y[2].b * gt2.a;
                    }
                    const int64_t a = base.a + g2n2[i2].a - ta, b = base.b + g2n2[i2].b - tb;
                    const int64_t abs2 = detail::quad_abs2(ring, a, b);
                    if (abs2 <= best && !(i0 == zero_idx && i1 == zero_idx && i2 == zero_idx)) {
                        best = abs2;
                        detail::record(rep, abs2, full_vector({i0, i1, i2}));
                        --rep.evaluated;
                    }
                }
                rep.evaluated += layer_count;
            }
        if (zero_idx < layer_count) --rep.evaluated;  // the all-zero vector is skipped
        // Re-derive the reported minimum with the independent evaluator.
        if (!rep.argmin.empty()) {
            QuadInt d = DetEvaluator(s).det(rep.argmin);
            if (d.norm() != rep.min_abs2_unnormalized) throw std::logic_error("min_det_bruteforce: closed form disagrees");
        }
    } else {
        // Generic odometer over whole symbol vectors.
        std::vector<std::size_t> idx(n, 0);
        for (;;) {
            bool all_zero = true;
            for (auto i : idx) all_zero = all_zero && i == zero_idx;
            if (!all_zero) {
                std::array<FixedElem<int64_t>, kMaxDegree> ls;
                std::vector<QuadInt> u;
                for (int l = 0; l < n; ++l) {
                    ls[l] = layers[idx[l]];
                    u.insert(u.end(), layer_syms[idx[l]].begin(), layer_syms[idx[l]].end());
                }
                auto d = ev.det_from_layers(ls);
                detail::record(rep, QuadInt(ring, d.a, d.b).norm(), u);
            }
            int l = 0;
            while (l < n && ++idx[l] == layer_count) idx[l++] = 0;
            if (l == n) break;
        }
    }
    detail::finish(rep, s, t0);
    return rep;
}

/// Minimum over every nonzero vector of Hamming weight <= max_weight plus
/// `samples` uniformly random vectors, all with |Re|,|Im| <= radius.
inline MinDetReport min_det_sampled(const CodeSpec& s, int radius, int max_weight, std::uint64_t samples,
                                    std::uint64_t seed = 1) {
    const auto t0 = std::chrono::steady_clock::now();
    const int n = s.n(), dim = n * n;
    const auto syms = detail::box_symbols(s.ring(), radius);
    std::vector<QuadInt> nonzero;
    for (const auto& x : syms)
        if (!x.is_zero()) nonzero.push_back(x);
    MinDetReport rep;
    rep.code = s.name;
    rep.box = "weight <= " + std::to_string(max_weight) + " plus " + std::to_string(samples) +
              " random vectors, |Re|,|Im| <= " + std::to_string(radius);
    DetEvaluator ev(s);
    auto eval = [&](const std::vector<QuadInt>& u) { detail::record(rep, ev.det(u).norm(), u); };

    std::vector<QuadInt> u(dim, QuadInt(s.ring()));
    // Recursive enumeration of supports of size 1..max_weight.
    auto rec = [&](auto&& self, int start, int left) -> void {
        for (int pos = start; pos < dim; ++pos)
            for (const auto& x : nonzero) {
                u[pos] = x;
                eval(u);
                if (left > 1) self(self, pos + 1, left - 1);
                u[pos] = QuadInt(s.ring());
            }
    };
    if (max_weight > 0) rec(rec, 0, max_weight);

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, syms.size() - 1);
    for (std::uint64_t t = 0; t < samples; ++t) {
        bool any = false;
        for (auto& x : u) {
            x = syms[pick(rng)];
            any = any || !x.is_zero();
        }
        if (any) eval(u);
    }
    std::fill(u.begin(), u.end(), QuadInt(s.ring()));
    detail::finish(rep, s, t0);
    return rep;
}

// ---------------------------------------------------------------------------
// Determinant discreteness.

struct DiscretenessReport {
    std::string code;
    std::uint64_t trials = 0;
    std::uint64_t exact_cross_checks = 0;
    std::uint64_t failures = 0;
    std::string first_failure;
    bool passed() const { return failures == 0; }
};

/// For random integral symbol vectors the unnormalized determinant must lie in
/// O_F. Every vector goes through the fixed-width evaluator (which rejects a
/// result with nonzero theta-coordinates); the first `exact_checks` are also
/// recomputed by elimination over K, which checks integrality independently.
inline DiscretenessReport check_det_discreteness(const CodeSpec& s, std::uint64_t trials, std::uint64_t seed = 7,
                                                 int coeff_bound = 3, std::uint64_t exact_checks = 50) {
    DiscretenessReport rep;
    rep.code = s.name;
    DetEvaluator ev(s);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> d(-coeff_bound, coeff_bound);
    const int dim = s.n() * s.n();
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::vector<QuadInt> u;
        for (int k = 0; k < dim; ++k) u.emplace_back(s.ring(), d(rng), d(rng));
        ++rep.trials;
        try {
            QuadInt fast = ev.det(u);
            if (t < exact_checks) {
                ++rep.exact_cross_checks;
                NfElement exact = reduced_norm_exact(codeword_matrix(s, encode_layers(s, u)));
                if (!exact.in_base_field() || !exact[0].is_integral() || !(exact[0].num() == fast))
                    throw std::logic_error("exact elimination gives " + exact.str() + ", fixed width gives " + fast.str());
            }
        } catch (const std::logic_error& e) {
            if (rep.failures++ == 0) rep.first_failure = e.what();
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Non-norm condition for the 2x2 family.

enum class NormStatus { proven, counterexample_found, unknown };

inline const char* norm_status_name(NormStatus s) {
    switch (s) {
        case NormStatus::proven: return "proven";
        case NormStatus::counterexample_found: return "counterexample";
        default: return "unknown";
    }
}

struct NormConditionResult {
    NormStatus status = NormStatus::unknown;
    BigInt sqrt_minus_one;                  // y with y^2 = -1 mod p
    bool y_is_square = false;               // y^((p-1)/2) = 1 mod p
    std::optional<NfElement> counterexample; // x with N(x) = i
    std::string detail;
};

/// For p = 5 mod 8 the arithmetic facts behind the non-norm argument are
/// checked: -1 is a square mod p, and its square root y is not a square
/// (y^((p-1)/2) = (-1)^((p-1)/4) = -1), so a^2 - p b^2 = y has no p-adic
/// solution and i is not a relative norm. Otherwise elements with coordinates
/// in (1/4)Z[i], |Re|,|Im| <= 4*bound, are searched for N(x) = i.
inline NormConditionResult norm_condition_2x2(const BigInt& p, int bound = 3) {
    if (!is_prime(p) || p % 4 != 1) throw std::invalid_argument("norm_condition_2x2: p must be a prime = 1 mod 4");
    NormConditionResult out;
    if (!is_square_mod_p(BigInt(-1), p)) throw std::logic_error("norm_condition_2x2: -1 is not a square mod p");
    // y = g^((p-1)/4) for a non-residue g.
    BigInt g = 2;
    while (is_square_mod_p(g, p)) ++g;
    out.sqrt_minus_one = mod_pow(g, (p - 1) / 4, p);
    if ((out.sqrt_minus_one * out.sqrt_minus_one + 1) % p != 0) throw std::logic_error("norm_condition_2x2: bad sqrt(-1)");
    out.y_is_square = is_square_mod_p(out.sqrt_minus_one, p);
    if (!out.y_is_square) {
        out.status = NormStatus::proven;
        out.detail = "sqrt(-1) = " + out.sqrt_minus_one.str() + " is not a square mod " + p.str();
        return out;
    }
    // x = (A + B sqrt(p)) / 4 has N(x) = (A^2 - p B^2) / 16.
    auto f = fields::quadratic(p);
    const QuadInt target = QuadInt::gaussian(0, 16);
    const int lim = 4 * bound;
    for (int r = 0; r <= lim; ++r)
        for (int ar = -r; ar <= r; ++ar)
            for (int ai = -r; ai <= r; ++ai)
                for (int br = -r; br <= r; ++br)
                    for (int bi = -r; bi <= r; ++bi) {
                        if (std::max({std::abs(ar), std::abs(ai), std::abs(br), std::abs(bi)}) != r) continue;
                        QuadInt A = QuadInt::gaussian(ar, ai), B = QuadInt::gaussian(br, bi);
                        if (!(A * A - B * B * p == target)) continue;
                        // sqrt(p) = 2 theta - 1
                        NfElement x(f, {QuadRat(A - B, 4), QuadRat(B * BigInt(2), 4)});
                        out.status = NormStatus::counterexample_found;
                        out.counterexample = x;
                        out.detail = "N(" + x.str() + ") = i";
                        return out;
                    }
    out.detail = "sqrt(-1) is a square mod p and no x with N(x) = i was found";
    return out;
}

/// The element 3(i-1)/4 - (i-1) sqrt(17)/4 of Q(i, sqrt(17)).
inline NfElement q17_example_element(const FieldPtr& f17) {
    // sqrt(17) = 2 theta - 1, so x = (4(i-1) - 2(i-1) theta) / 4
    return NfElement(f17, {QuadRat(QuadInt::gaussian(-1, 1)), QuadRat(QuadInt::gaussian(1, -1), 2)});
}

struct SingularCodeword {
    CodeSpec spec;
    std::vector<QuadInt> symbols;
    Codeword codeword;
    QuadInt det;
};

/// Nonzero codeword of the p = 17 code with determinant exactly 0: its layers
/// are alpha * 4x and alpha * 4 for the element x above with N(x) = i, so the
/// determinant N(alpha)(N(4x) - i N(4)) vanishes.
inline SingularCodeword q17_singular_codeword() {
    CodeSpec s = make_code_2x2_unchecked(17);
    NfElement alpha = find_ideal_generator_2x2(s.desc, 17);
    NfElement x4 = q17_example_element(s.desc) * QuadRat(Ring::gaussian, 4);
    if (!x4.is_integral()) throw std::logic_error("q17_singular_codeword: 4x is not integral");
    // Coordinates of a layer value y in the basis {nu_0, nu_1}.
    const auto& b = s.basis;
    const QuadRat det = b[0][0] * b[1][1] - b[1][0] * b[0][1];
    auto coords = [&](const NfElement& y) {
        QuadRat c0 = (y[0] * b[1][1] - y[1] * b[1][0]) / det;
        QuadRat c1 = (b[0][0] * y[1] - b[0][1] * y[0]) / det;
        if (!c0.is_integral() || !c1.is_integral()) throw std::logic_error("q17_singular_codeword: layer not in the ideal");
        return std::vector<QuadInt>{c0.num(), c1.num()};
    };
    std::vector<QuadInt> u = coords(alpha * x4);
    std::vector<QuadInt> u1 = coords(alpha * QuadRat(Ring::gaussian, 4));
    u.insert(u.end(), u1.begin(), u1.end());
    SingularCodeword out{s, u, encode(s, u), codeword_det(s, u).exact};
    if (!out.det.is_zero()) throw std::logic_error("q17_singular_codeword: determinant is " + out.det.str());
    return out;
}

// ---------------------------------------------------------------------------
// CRT witnesses.

struct Congruence {
    QuadInt multiplier;  // checks multiplier * y = 1 (mod modulus)
    QuadInt modulus;
    bool passed = false;
};

struct WitnessReport {
    std::string label;
    QuadInt y;
    std::vector<Congruence> congruences;
    BigInt norm;
    BigInt expected_norm;
    bool norm_prime = false;
    QuadInt crt_solution;
    bool crt_agrees = false;

    bool passed() const {
        bool ok = norm == expected_norm && norm_prime && crt_agrees;
        for (const auto& c : congruences) ok = ok && c.passed;
        return ok;
    }
};

inline WitnessReport check_witness(std::string label, const QuadInt& y, std::vector<Congruence> congs, long expected_norm) {
    WitnessReport r;
    r.label = std::move(label);
    r.y = y;
    r.norm = y.norm();
    r.expected_norm = expected_norm;
    r.norm_prime = is_prime(r.norm);
    std::vector<QuadInt> residues, moduli;
    QuadInt product(y.ring(), 1);
    for (auto& c : congs) {
        c.passed = divides(c.modulus, c.multiplier * y - QuadInt(y.ring(), 1));
        // multiplier is a unit, so y = conj(multiplier) (mod modulus)
        residues.push_back(c.multiplier.conj());
        moduli.push_back(c.modulus);
        product *= c.modulus;
    }
    r.congruences = std::move(congs);
    r.crt_solution = crt_solve(residues, moduli);
    r.crt_agrees = divides(product, r.crt_solution - y);
    return r;
}

inline std::vector<WitnessReport> nonnorm_witnesses() {
    auto E = [](long a, long b) { return QuadInt::eisenstein(a, b); };
    auto G = [](long a, long b) { return QuadInt::gaussian(a, b); };
    std::vector<WitnessReport> out;
    out.push_back(check_witness("C1", E(7, -3), {{E(1, 0), E(-2, 1)}, {E(0, 1), E(3, 1)}}, 79));
    out.push_back(check_witness("C2", E(-9, 5), {{E(1, 0), E(-2, 1)}, {E(-1, -1), E(3, 1)}}, 151));
    out.push_back(check_witness("D", G(-25, 12), {{G(1, 0), G(2, 1)}, {G(-1, 0), G(-2, 1)}, {G(-1, 0), G(3, 0)}}, 769));
    out.push_back(check_witness("E", E(3, -8), {{E(1, 0), E(-2, 1)}, {E(-1, 0), E(3, 1)}, {E(-1, 0), E(2, 0)}}, 97));
    return out;
}

// ---------------------------------------------------------------------------
// Text reports (key: value lines).

inline std::string rational_str(const BigRational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

inline std::string symbols_str(const std::vector<QuadInt>& u) {
    std::string s = "(";
    for (std::size_t k = 0; k < u.size(); ++k) s += (k ? "," : "") + u[k].str();
    return s + ")";
}

inline std::string format_report(const MinDetReport& r) {
    std::ostringstream os;
    os << "code: " << r.code << "\n";
    os << "box: " << r.box << "\n";
    os << "evaluated: " << r.evaluated << "\n";
    os << "min |det|^2 = " << rational_str(r.min_abs2) << "\n";
    os << "min |det|^2 float: " << r.min_abs2_float() << "\n";
    os << "argmin: " << symbols_str(r.argmin) << "\n";
    os << "target: " << rational_str(r.target) << "\n";
    os << "zero determinant found: " << (r.zero_found ? "yes " + symbols_str(r.zero_witness) : "no") << "\n";
    os << "seconds: " << r.seconds << "\n";
    return os.str();
}

inline std::string format_report(const WitnessReport& w) {
    std::ostringstream os;
    os << "witness: " << w.label << "\n";
    os << "y: " << w.y << "\n";
    for (const auto& c : w.congruences)
        os << "congruence: " << c.multiplier << " * y = 1 mod " << c.modulus << " " << (c.passed ? "pass" : "FAIL") << "\n";
    os << "norm: " << w.norm << " (expected " << w.expected_norm << ", " << (w.norm_prime ? "prime" : "not prime") << ")\n";
    os << "crt: " << w.crt_solution << " " << (w.crt_agrees ? "agrees" : "DISAGREES") << "\n";
    return os.str();
}

}  // namespace pstbc

#endif  // PSTBC_VERIFICATION_HPP
