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

// Checkable claims about the codes: per-code verification and the full
// acceptance suite shared by the CLI and the acceptance test binary.

#ifndef PSTBC_CLAIMS_HPP
#define PSTBC_CLAIMS_HPP

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pstbc/mimo_sim.hpp"
#include "pstbc/verification.hpp"

namespace pstbc {

struct ClaimResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

inline std::string format_claim(const ClaimResult& c) {
    std::ostringstream os;
    os << (c.passed ? "PASS" : "FAIL") << " " << c.name << ": " << c.detail;
    os.precision(3);
    os << " [" << std::fixed << c.seconds << " s]";
    return os.str();
}

namespace detail {

inline ClaimResult timed(std::string name, const std::function<bool(std::ostringstream&)>& body) {
    ClaimResult r;
    r.name = std::move(name);
    std::ostringstream os;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        r.passed = body(os);
    } catch (const std::exception& e) {
        os << "exception: " << e.what();
        r.passed = false;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.detail = os.str();
    return r;
}

inline bool gram_is(const CodeSpec& s, std::ostringstream& os) {
    const bool ok = is_scaled_identity(gram(s.basis), s.norm_factor);
    os << "Gram = " << s.norm_factor << " I " << (ok ? "exact" : "NOT satisfied") << "; ";
    return ok;
}

inline bool published_match(const CodeSpec& s, std::ostringstream& os) {
    auto pub = published_generator(s.name);
    if (!pub) return true;
    auto m = match_generator(generator_matrix(s), pub->first, s.ring(), pub->second);
    os << "published matrix max error " << m.max_error << " (tol " << pub->second.tol << "); ";
    return m.ok;
}

inline BigRational sextic_lower_bound() { return BigRational(1, 64 * 16807); }

/// Per-row mean codeword energies over random constellation inputs; returns max relative deviation.
inline double row_energy_spread(const CodeSpec& s, const Constellation& c, int codewords, std::uint64_t seed) {
    const int n = s.n();
    Transceiver tr(s, c);
    SplitMix64 rng(seed);
    std::uniform_int_distribution<int> pick(0, c.size() - 1);
    std::vector<double> acc(n, 0.0);
    std::vector<int> idx(n * n);
    for (int t = 0; t < codewords; ++t) {
        for (auto& x : idx) x = pick(rng);
        Eigen::MatrixXcd x = tr.encode(idx);
        for (int r = 0; r < n; ++r) acc[r] += x.row(r).squaredNorm();
    }
    double mean = 0;
    for (double a : acc) mean += a / n;
    double worst = 0;
    for (double a : acc) worst = std::max(worst, std::abs(a / mean - 1));
    return worst;
}

/// Largest relative violation of ||encode(u)||_F^2 = ||u||^2 over random integral inputs.
inline double frobenius_error(const CodeSpec& s, int inputs, std::uint64_t seed) {
    const int m = s.n() * s.n();
    const Eigen::MatrixXcd gen = generator_matrix(s);
    SplitMix64 rng(seed);
    std::uniform_int_distribution<int> d(-7, 7);
    double worst = 0;
    for (int t = 0; t < inputs; ++t) {
        Eigen::VectorXcd u(m);
        for (int k = 0; k < m; ++k) u[k] = QuadInt(s.ring(), d(rng), d(rng)).to_complex();
        if (u.squaredNorm() == 0) continue;
        const double e = encode_numeric(s, gen, u).squaredNorm();
        worst = std::max(worst, std::abs(e / u.squaredNorm() - 1));
    }
    return worst;
}

inline std::string cer_str(const SimRecord& r) {
    std::ostringstream os;
    os << r.ebn0_db << " dB: " << r.errors << "/" << r.sent << " = " << r.cer;
    return os.str();
}

}  // namespace detail

// ---------------------------------------------------------------- single code

/// Claims for one code: exact Gram, unitarity, published matrix, nonvanishing
/// minimum determinant at the given radius, determinant discreteness.
inline std::vector<ClaimResult> verify_code(const CodeSpec& s, int radius) {
    std::vector<ClaimResult> out;
    out.push_back(detail::timed(s.name + " shaping", [&](std::ostringstream& os) {
        bool ok = detail::gram_is(s, os);
        const double err = unitarity_error(generator_matrix(s));
        os << "||R R^H - I|| = " << err << "; ";
        ok = ok && err < 1e-12;
        return detail::published_match(s, os) && ok;
    }));
    out.push_back(detail::timed(s.name + " minimum determinant", [&](std::ostringstream& os) {
        MinDetReport r;
        try {
            r = min_det_bruteforce(s, radius);
        } catch (const std::length_error&) {
            r = min_det_sampled(s, radius, s.n() >= 6 ? 1 : 2, s.n() >= 6 ? 100000 : 1000000);
        }
        os << "\n" << format_report(r);
        if (r.target == 0) {
            os << "no reference value; nonvanishing only";
            return !r.zero_found;
        }
        if (s.n() == 6) return !r.zero_found && r.min_abs2 >= detail::sextic_lower_bound();
        return r.meets_target();
    }));
    if (s.n() == 2) {
        out.push_back(detail::timed(s.name + " gamma = i is not a relative norm", [&](std::ostringstream& os) {
            auto r = norm_condition_2x2(s.norm_factor);
            os << norm_status_name(r.status) << ": " << r.detail;
            return r.status == NormStatus::proven;
        }));
    }
    out.push_back(detail::timed(s.name + " determinant discreteness", [&](std::ostringstream& os) {
        auto r = check_det_discreteness(s, 10000, 7, 3, 20);
        os << r.trials << " random vectors, " << r.failures << " failures, " << r.exact_cross_checks
           << " exact cross-checks";
        if (!r.passed()) os << "; first: " << r.first_failure;
        return r.passed();
    }));
    return out;
}

// ---------------------------------------------------------------- acceptance suite

inline std::vector<std::function<ClaimResult()>> acceptance_criteria() {
    using detail::timed;
    std::vector<std::function<ClaimResult()>> c;

    c.push_back([] {
        return timed("1 golden minimum determinant", [](std::ostringstream& os) {
            auto r = min_det_bruteforce(make_code_2x2(5), 1);
            os << "min |det|^2 = " << rational_str(r.min_abs2) << " over " << r.evaluated << " vectors in "
               << r.seconds << " s";
            return r.meets_target() && r.min_abs2 == BigRational(1, 5) && r.seconds < 10;
        });
    });

    c.push_back([] {
        return timed("2 quadratic family", [](std::ostringstream& os) {
            bool ok = true;
            for (int p : {5, 13, 37}) {
                auto s = make_code_2x2(p);
                os << "p=" << p << ": ";
                ok = detail::gram_is(s, os) && ok;
                auto r = min_det_bruteforce(s, 1);
                os << "min |det|^2 = " << rational_str(r.min_abs2) << "; ";
                ok = ok && r.meets_target() && r.min_abs2 == BigRational(1, p);
            }
            return ok;
        });
    });

    c.push_back([] {
        return timed("3 3x3 code", [](std::ostringstream& os) {
            auto s = make_code_3x3();
            bool ok = detail::gram_is(s, os);
            ok = detail::published_match(s, os) && ok;
            auto r = min_det_bruteforce(s, 1);
            os << "min |det|^2 = " << rational_str(r.min_abs2) << " over " << r.evaluated << " vectors";
            return ok && r.meets_target() && r.min_abs2 == BigRational(1, 49);
        });
    });

    c.push_back([] {
        return timed("4 4x4 code", [](std::ostringstream& os) {
            const auto t0 = std::chrono::steady_clock::now();
            auto s = make_code_4x4();
            bool ok = detail::gram_is(s, os);
            std::vector<QuadInt> one(16, QuadInt::gaussian(0));
            one[0] = QuadInt::gaussian(1);
            auto single = codeword_det(s, one).abs2_normalized;
            os << "single-symbol |det|^2 = " << rational_str(single) << "; ";
            auto r = min_det_sampled(s, 1, 2, 1000000);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            os << r.evaluated << " vectors, min |det|^2 = " << rational_str(r.min_abs2);
            return ok && single == BigRational(1, 1125) && r.meets_target() && secs < 300;
        });
    });

    c.push_back([] {
        return timed("5 6x6 pipeline", [](std::ostringstream& os) {
            auto f = fields::sextic();
            auto pipe = sextic_pipeline(f, sextic_prime_factor());
            os << "ideal norm " << pipe.ideal_norm << "; ";
            bool ok = pipe.ideal_norm == 7;
            auto s = make_code_6x6();
            ok = detail::gram_is(s, os) && ok;
            ok = detail::published_match(s, os) && ok;
            std::vector<QuadInt> one(36, QuadInt::eisenstein(0));
            one[0] = QuadInt::eisenstein(1);
            auto single = codeword_det(s, one).abs2_normalized;
            os << "single-symbol |det|^2 = " << rational_str(single) << "; ";
            auto r = min_det_sampled(s, 1, 1, 100000);
            os << r.evaluated << " vectors, min |det|^2 = " << rational_str(r.min_abs2) << " >= "
               << rational_str(detail::sextic_lower_bound());
            return ok && single == BigRational(1, 64 * 2401) && !r.zero_found &&
                   r.min_abs2 >= detail::sextic_lower_bound();
        });
    });

    c.push_back([] {
        return timed("6 unitarity", [](std::ostringstream& os) {
            bool ok = true;
            for (const auto& s : {make_code_2x2(5), make_code_2x2(13), make_code_2x2(37), make_code_3x3(),
                                  make_code_4x4(), make_code_6x6()}) {
                const double e = unitarity_error(generator_matrix(s));
                os << s.name << " " << e << "; ";
                ok = ok && e < 1e-12 && is_scaled_identity(gram(s.basis), s.norm_factor);
            }
            return ok;
        });
    });

    c.push_back([] {
        return timed("7 determinant discreteness", [](std::ostringstream& os) {
            bool ok = true;
            for (const auto& s : {make_code_2x2(5), make_code_3x3(), make_code_4x4(), make_code_6x6()}) {
                auto r = check_det_discreteness(s, 10000, 7, 3, 20);
                os << s.name << " " << r.failures << "/" << r.trials << " failures; ";
                ok = ok && r.passed() && r.trials == 10000;
            }
            return ok;
        });
    });

    c.push_back([] {
        return timed("8 p=17 failure", [](std::ostringstream& os) {
            auto w = q17_singular_codeword();
            auto nx = rel_norm(q17_example_element(fields::quadratic(17)));
            os << "singular codeword " << symbols_str(w.symbols) << " det " << w.det << "; N(x) = " << nx.num();
            return w.det.is_zero() && nx == QuadRat(QuadInt::gaussian(0, 1));
        });
    });

    c.push_back([] {
        return timed("9 non-norm witnesses", [](std::ostringstream& os) {
            bool ok = true;
            const std::vector<long> norms{79, 151, 769, 97};
            auto ws = nonnorm_witnesses();
            for (std::size_t k = 0; k < ws.size(); ++k) {
                os << ws[k].label << " y=" << ws[k].y << " norm " << ws[k].norm << (ws[k].passed() ? " ok; " : " FAILED; ");
                ok = ok && ws[k].passed() && ws[k].norm == norms[k];
            }
            return ok && ws.size() == 4;
        });
    });

    c.push_back([] {
        return timed("10 constellations", [](std::ostringstream& os) {
            bool ok = true;
            const std::vector<std::pair<Constellation, BigRational>> expect{
                {make_qam(4), 2},  {make_qam(8), 6},  {make_qam(16), 10},
                {make_qam(64), 42}, {make_hex(4), 2}, {make_hex(8), BigRational(9, 2)}, {make_hex(16), BigRational(35, 4)}};
            for (const auto& [con, e] : expect) {
                os << con.name << " E=" << rational_str(con.avg_energy_exact)
                   << " dmin^2=" << rational_str(con.min_distance2_exact) << "; ";
                ok = ok && con.avg_energy_exact == e && con.min_distance2_exact == 4;
            }
            return ok;
        });
    });

    c.push_back([] {
        return timed("11 sphere decoder equals exhaustive ML", [](std::ostringstream& os) {
            const auto t0 = std::chrono::steady_clock::now();
            Transceiver tr(make_code_2x2(5), make_qam(4));
            std::uniform_int_distribution<int> pick(0, 3);
            int mismatches = 0;
            const int trials = 10000;
            for (int t = 0; t < trials; ++t) {
                auto rng = trial_rng(2026, 0, t);
                auto h = random_channel(2, 2, rng);
                std::vector<int> s(4);
                for (auto& x : s) x = pick(rng);
                auto y = transmit(tr.encode(s), h, noise_variance(tr.constellation(), (t % 7) * 2.0), rng);
                mismatches += tr.decode(y, h) != tr.decode_exhaustive(y, h);
            }
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            os << trials << " instances at 0..12 dB, " << mismatches << " mismatches";
            return mismatches == 0 && secs < 60;
        });
    });

    c.push_back([] {
        return timed("12 error-rate behaviour", [](std::ostringstream& os) {
            SimConfig golden{make_code_2x2(5), make_qam(4), {8, 12, 16}, 20000000, 200, 12, 1, 512};
            SimConfig broken = golden;
            broken.code = make_code_2x2_unchecked(17);
            auto rg = run_cer(golden), rb = run_cer(broken);
            bool ok = true;
            for (const auto* r : {&rg, &rb}) {
                os << r->code << " [";
                for (const auto& rec : r->records) {
                    os << detail::cer_str(rec) << "; ";
                    ok = ok && rec.errors >= 100;
                }
                os << "] ";
            }
            const auto& g = rg.records;
            const auto& b = rb.records;
            const std::size_t k = g.size() - 1;
            ok = ok && g[k].cer < b[k].cer && g[k - 1].cer < b[k - 1].cer;
            const double sg = std::log10(g[k - 1].cer / g[k].cer), sb = std::log10(b[k - 1].cer / b[k].cer);
            os << "decades over top step: golden " << sg << ", broken " << sb << "; ";
            ok = ok && sb < sg;
            SimConfig c3{make_code_3x3(), make_hex(4), {3, 7}, 5000000, 200, 13, 1, 512};
            auto r3 = run_cer(c3);
            const double ratio = r3.records[0].cer / r3.records[1].cer;
            os << "3x3 [" << detail::cer_str(r3.records[0]) << "; " << detail::cer_str(r3.records[1])
               << "] factor " << ratio << " per 4 dB";
            return ok && r3.records[0].errors >= 100 && r3.records[1].errors >= 100 && ratio >= 5;
        });
    });

    c.push_back([] {
        return timed("13 shaping", [](std::ostringstream& os) {
            bool ok = true;
            for (const auto& s : {make_code_2x2(5), make_code_2x2(13), make_code_3x3(), make_code_4x4(), make_code_6x6()}) {
                const double fe = detail::frobenius_error(s, 10000, 31);
                const auto con = s.ring() == Ring::gaussian ? make_qam(16) : make_hex(8);
                const double spread = detail::row_energy_spread(s, con, 100000, 37);
                os << s.name << " frobenius " << fe << " row spread " << spread << "; ";
                ok = ok && fe < 1e-10 && spread < 0.01;
            }
            return ok;
        });
    });

    return c;
}

/// Runs every acceptance criterion, printing one line per criterion as it completes.
inline bool run_acceptance(std::ostream& os) {
    bool all = true;
    for (const auto& crit : acceptance_criteria()) {
        ClaimResult r = crit();
        os << format_claim(r) << std::endl;
        all = all && r.passed;
    }
    return all;
}

}  // namespace pstbc

#endif  // PSTBC_CLAIMS_HPP
