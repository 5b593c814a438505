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

// Monte Carlo simulation of coded MIMO transmission Y = H X + W over a
// quasi-static Rayleigh channel with exact ML sphere decoding.
//
// Constellation points are offset + 2 (a + b w) with integer (a, b) and
// w = i (QAM) or w = j (HEX); the decoder searches over these integer pairs.

#ifndef PSTBC_MIMO_SIM_HPP
#define PSTBC_MIMO_SIM_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "pstbc/code_constructions.hpp"

namespace pstbc {

// ---------------------------------------------------------------- constellations

struct Constellation {
    std::string name;
    Ring ring = Ring::gaussian;
    QuadRat offset;
    std::vector<std::array<int, 2>> coords;  // point k = offset + 2 (a + b w)
    std::vector<QuadRat> exact_points;
    std::vector<std::complex<double>> points;
    std::vector<std::string> labels;
    BigRational avg_energy_exact;
    BigRational min_distance2_exact;
    double avg_energy = 0;
    double min_distance = 0;

    int size() const { return static_cast<int>(points.size()); }
    int bits_per_symbol() const { return static_cast<int>(std::lround(std::log2(size()))); }
    std::complex<double> omega() const { return QuadInt(ring, 0, 1).to_complex(); }

    int index_of(int a, int b) const {
        for (int k = 0; k < size(); ++k)
            if (coords[k][0] == a && coords[k][1] == b) return k;
        return -1;
    }
};

namespace detail {

inline void finish_constellation(Constellation& c) {
    c.exact_points.clear();
    c.points.clear();
    BigRational sum = 0;
    for (const auto& [a, b] : c.coords) {
        QuadRat p = c.offset + QuadRat(QuadInt(c.ring, 2 * a, 2 * b));
        sum += p.norm();
        c.exact_points.push_back(p);
        c.points.push_back(p.to_complex());
    }
    c.avg_energy_exact = sum / BigRational(c.size());
    c.avg_energy = c.avg_energy_exact.convert_to<double>();
    BigRational best = -1;
    for (int x = 0; x < c.size(); ++x)
        for (int y = x + 1; y < c.size(); ++y) {
            BigRational d = (c.exact_points[x] - c.exact_points[y]).norm();
            if (best < 0 || d < best) best = d;
        }
    c.min_distance2_exact = best;
    c.min_distance = std::sqrt(best.convert_to<double>());
}

inline std::vector<int> gray_axis(int m) {
    // odd levels -(m-1), ..., m-1 labelled by the reflected Gray code
    std::vector<int> g(m);
    for (int k = 0; k < m; ++k) g[k] = k ^ (k >> 1);
    return g;
}

inline std::string bit_string(int value, int width) {
    std::string s;
    for (int k = width - 1; k >= 0; --k) s += ((value >> k) & 1) ? '1' : '0';
    return s;
}

}  // namespace detail

/// q-QAM with odd in-phase and quadrature values and Gray labels; 8-QAM is the 4 x 2 grid.
inline Constellation make_qam(int q) {
    int mi, mq;
    switch (q) {
        case 4: mi = 2, mq = 2; break;
        case 8: mi = 4, mq = 2; break;
        case 16: mi = 4, mq = 4; break;
        case 64: mi = 8, mq = 8; break;
        default: throw std::invalid_argument("make_qam: unsupported size " + std::to_string(q) + " (4, 8, 16, 64)");
    }
    Constellation c;
    c.name = "qam" + std::to_string(q);
    c.ring = Ring::gaussian;
    c.offset = QuadRat(Ring::gaussian, 1, 1);
    const int bi = static_cast<int>(std::lround(std::log2(mi))), bq = static_cast<int>(std::lround(std::log2(mq)));
    auto gi = detail::gray_axis(mi), gq = detail::gray_axis(mq);
    for (int y = 0; y < mq; ++y)
        for (int x = 0; x < mi; ++x) {
            // level 2x - (mi - 1) = 1 + 2a
            c.coords.push_back({x - mi / 2, y - mq / 2});
            c.labels.push_back(detail::bit_string(gi[x], bi) + detail::bit_string(gq[y], bq));
        }
    detail::finish_constellation(c);
    return c;
}

/// q points of the shifted lattice offset + 2 A2 with least energy; offset 1 for q = 4, 8 and 1/2 for q = 16.
inline Constellation make_hex(int q) {
    if (q != 4 && q != 8 && q != 16)
        throw std::invalid_argument("make_hex: unsupported size " + std::to_string(q) + " (4, 8, 16)");
    Constellation c;
    c.name = "hex" + std::to_string(q);
    c.ring = Ring::eisenstein;
    c.offset = q == 16 ? QuadRat(Ring::eisenstein, 1, 0, 2) : QuadRat(Ring::eisenstein, 1);
    struct Cand {
        BigRational e;
        int a, b;
    };
    std::vector<Cand> cands;
    for (int a = -6; a <= 6; ++a)
        for (int b = -6; b <= 6; ++b)
            cands.push_back({(c.offset + QuadRat(QuadInt::eisenstein(2 * a, 2 * b))).norm(), a, b});
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
        if (x.e != y.e) return x.e < y.e;
        return std::tie(x.b, x.a) < std::tie(y.b, y.a);
    });
    if (cands[q - 1].e == cands[q].e) throw std::logic_error("make_hex: energy tie at the carving boundary");
    for (int k = 0; k < q; ++k) {
        c.coords.push_back({cands[k].a, cands[k].b});
        c.labels.push_back(detail::bit_string(k, static_cast<int>(std::lround(std::log2(q)))));
    }
    detail::finish_constellation(c);
    return c;
}

inline Constellation constellation_by_name(const std::string& name) {
    auto num = [&](std::size_t pos) {
        try {
            return std::stoi(name.substr(pos));
        } catch (const std::exception&) {
            throw std::invalid_argument("unknown constellation '" + name + "'");
        }
    };
    if (name.rfind("qam", 0) == 0) return make_qam(num(3));
    if (name.rfind("hex", 0) == 0) return make_hex(num(3));
    throw std::invalid_argument("unknown constellation '" + name + "'; valid: qam4 qam8 qam16 qam64 hex4 hex8 hex16");
}

// ---------------------------------------------------------------- channel

/// Y = H X + W with W i.i.d. circularly-symmetric complex Gaussian, E|w|^2 = n0.
template <class Rng>
std::complex<double> complex_gaussian(Rng& rng, double variance) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double u1 = u(rng), u2 = u(rng);
    if (u1 <= 0) u1 = std::numeric_limits<double>::min();
    const double r = std::sqrt(-variance * std::log(u1)), phi = 2 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

template <class Rng>
Eigen::MatrixXcd random_channel(int rows, int cols, Rng& rng) {
    Eigen::MatrixXcd h(rows, cols);
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r) h(r, c) = complex_gaussian(rng, 1.0);
    return h;
}

template <class Rng>
Eigen::MatrixXcd transmit(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& h, double n0, Rng& rng) {
    if (h.cols() != x.rows()) throw std::invalid_argument("transmit: dimension mismatch");
    Eigen::MatrixXcd y = h * x;
    if (n0 > 0)
        for (int c = 0; c < y.cols(); ++c)
            for (int r = 0; r < y.rows(); ++r) y(r, c) += complex_gaussian(rng, n0);
    return y;
}

inline Eigen::VectorXd realify(const Eigen::VectorXcd& v) {
    Eigen::VectorXd r(2 * v.size());
    for (Eigen::Index k = 0; k < v.size(); ++k) r[2 * k] = v[k].real(), r[2 * k + 1] = v[k].imag();
    return r;
}

inline Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& m) {
    return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

/// Codewords of the unit symbol vectors e_k, k = 0 .. n^2 - 1.
inline std::vector<Eigen::MatrixXcd> unit_codewords(const CodeSpec& s) {
    const int n = s.n();
    const Eigen::MatrixXcd gen = generator_matrix(s);
    std::vector<Eigen::MatrixXcd> out;
    for (int k = 0; k < n * n; ++k) out.push_back(encode_numeric(s, gen, Eigen::VectorXcd::Unit(n * n, k)));
    return out;
}

/// Real 2n^2 x 2n^2 generator from symbol coordinates (a_k, b_k), u_k = a_k + b_k w,
/// to the interleaved real and imaginary parts of vec(H X).
inline Eigen::MatrixXd real_lattice_model(const std::vector<Eigen::MatrixXcd>& units, Ring ring,
                                          const Eigen::MatrixXcd& h) {
    const int m = static_cast<int>(units.size());
    const std::complex<double> w = QuadInt(ring, 0, 1).to_complex();
    Eigen::MatrixXd g(2 * h.rows() * units.front().cols(), 2 * m);
    for (int k = 0; k < m; ++k) {
        Eigen::VectorXcd col = vectorize(h * units[k]);
        g.col(2 * k) = realify(col);
        g.col(2 * k + 1) = realify(col * w);
    }
    return g;
}

inline Eigen::MatrixXd real_lattice_model(const CodeSpec& s, const Eigen::MatrixXcd& h) {
    return real_lattice_model(unit_codewords(s), s.ring(), h);
}

// ---------------------------------------------------------------- decoding

/// Admissible integer pairs (a, b) of one symbol, grouped by b.
struct SymbolCoordinates {
    std::vector<int> b_values;
    std::vector<std::vector<int>> a_values;  // a_values[i] admissible with b_values[i]

    static SymbolCoordinates from(const Constellation& c) {
        std::map<int, std::vector<int>> by_b;
        for (const auto& [a, b] : c.coords) by_b[b].push_back(a);
        SymbolCoordinates s;
        for (auto& [b, as] : by_b) {
            std::sort(as.begin(), as.end());
            s.b_values.push_back(b);
            s.a_values.push_back(as);
        }
        return s;
    }
    bool contains(int a, int b) const {
        for (std::size_t i = 0; i < b_values.size(); ++i)
            if (b_values[i] == b) return std::binary_search(a_values[i].begin(), a_values[i].end(), a);
        return false;
    }
};

/// argmin over admissible z of ||y - G z||^2, z = (a_0, b_0, a_1, b_1, ...).
/// Depth-first Schnorr-Euchner enumeration on the QR factor, radius initialized by the Babai point.
class SphereDecoder {
   public:
    SphereDecoder(const Eigen::MatrixXd& g, SymbolCoordinates coords) : coords_(std::move(coords)) {
        if (g.cols() % 2 != 0 || g.rows() < g.cols()) throw std::invalid_argument("sphere decoder: bad generator shape");
        d_ = static_cast<int>(g.cols());
        qr_.compute(g);
        r_ = qr_.matrixQR().topRows(d_).triangularView<Eigen::Upper>();
        const double scale = std::max(1.0, r_.cwiseAbs().maxCoeff());
        for (int i = 0; i < d_; ++i)
            if (std::abs(r_(i, i)) <= 1e-12 * scale) throw std::domain_error("sphere decoder: generator is rank deficient");
        std::size_t widest = coords_.b_values.size();
        for (const auto& a : coords_.a_values) widest = std::max(widest, a.size());
        order_.assign(d_, std::vector<int>(widest));
        z_.assign(d_, 0);
        best_z_.assign(d_, 0);
        bidx_.assign(d_, 0);
    }

    std::vector<int> decode(const Eigen::VectorXd& y) {
        const Eigen::VectorXd full = qr_.householderQ().transpose() * y;
        yq_ = full.head(d_);
        // Babai point
        double cost = 0;
        for (int i = d_ - 1; i >= 0; --i) {
            const double c = center(i);
            const auto& cand = candidates(i);
            int pick = 0;
            for (std::size_t k = 1; k < cand.size(); ++k)
                if (std::abs(cand[k] - c) < std::abs(cand[pick] - c)) pick = static_cast<int>(k);
            set(i, pick);
            const double e = r_(i, i) * (z_[i] - c);
            cost += e * e;
        }
        best_ = cost;
        best_z_ = z_;
        nodes_ = 0;
        search(d_ - 1, 0.0);
        return best_z_;
    }

    double best_cost() const { return best_; }
    std::uint64_t nodes() const { return nodes_; }

   private:
    const std::vector<int>& candidates(int i) const {
        return i % 2 == 1 ? coords_.b_values : coords_.a_values[bidx_[i + 1]];
    }
    void set(int i, int k) {
        z_[i] = candidates(i)[k];
        if (i % 2 == 1) bidx_[i] = k;
    }
    double center(int i) const {
        double acc = yq_[i];
        for (int j = i + 1; j < d_; ++j) acc -= r_(i, j) * z_[j];
        return acc / r_(i, i);
    }

    void search(int i, double partial) {
        ++nodes_;
        const double c = center(i);
        const auto& cand = candidates(i);
        auto& ord = order_[i];
        const int m = static_cast<int>(cand.size());
        for (int k = 0; k < m; ++k) ord[k] = k;
        std::sort(ord.begin(), ord.begin() + m,
                  [&](int x, int y) { return std::abs(cand[x] - c) < std::abs(cand[y] - c); });
        for (int t = 0; t < m; ++t) {
            const double e = r_(i, i) * (cand[ord[t]] - c);
            const double p = partial + e * e;
            if (p >= best_) break;
            set(i, ord[t]);
            if (i == 0) {
                best_ = p;
                best_z_ = z_;
            } else {
                search(i - 1, p);
            }
        }
    }

    SymbolCoordinates coords_;
    int d_ = 0;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr_;
    Eigen::MatrixXd r_;
    Eigen::VectorXd yq_;
    std::vector<std::vector<int>> order_;
    std::vector<int> z_, best_z_, bidx_;
    double best_ = 0;
    std::uint64_t nodes_ = 0;
};

inline std::vector<int> sphere_decode(const Eigen::VectorXd& y, const Eigen::MatrixXd& g,
                                      const SymbolCoordinates& coords) {
    SphereDecoder dec(g, coords);
    return dec.decode(y);
}

/// Constellation indices minimizing ||y - sum_k M_k p_{s_k}||^2 by full enumeration of q^m vectors.
inline std::vector<int> exhaustive_ml(const Eigen::VectorXcd& y, const std::vector<Eigen::VectorXcd>& columns,
                                      const Constellation& c) {
    const int m = static_cast<int>(columns.size()), q = c.size();
    std::vector<std::vector<Eigen::VectorXcd>> contrib(m);
    for (int k = 0; k < m; ++k)
        for (int s = 0; s < q; ++s) contrib[k].push_back(columns[k] * c.points[s]);
    std::vector<Eigen::VectorXcd> resid(m + 1, y);
    std::vector<int> cur(m, 0), best(m, 0);
    double best_cost = std::numeric_limits<double>::infinity();
    // depth-first over symbols with the residual carried along
    std::vector<int> idx(m, -1);
    int k = 0;
    while (k >= 0) {
        if (++idx[k] == q) {
            idx[k] = -1;
            --k;
            continue;
        }
        resid[k + 1] = resid[k] - contrib[k][idx[k]];
        if (k == m - 1) {
            const double cost = resid[m].squaredNorm();
            if (cost < best_cost) best_cost = cost, best = idx;
        } else {
            ++k;
        }
    }
    return best;
}

/// Encoder/decoder pair for one code and constellation.
class Transceiver {
   public:
    Transceiver(const CodeSpec& s, Constellation c)
        : spec_(s), con_(std::move(c)), gen_(generator_matrix(s)), units_(unit_codewords(s)),
          coords_(SymbolCoordinates::from(con_)) {
        if (con_.ring != s.ring()) throw std::invalid_argument("constellation ring does not match the code");
        unit_matrix_.resize(symbols(), symbols());
        for (int k = 0; k < symbols(); ++k) unit_matrix_.col(k) = vectorize(units_[k]);
    }

    const CodeSpec& spec() const { return spec_; }
    const Constellation& constellation() const { return con_; }
    int n() const { return spec_.n(); }
    int symbols() const { return n() * n(); }

    Eigen::MatrixXcd encode(const std::vector<int>& idx) const {
        Eigen::VectorXcd u(symbols());
        for (int k = 0; k < symbols(); ++k) u[k] = con_.points[idx[k]];
        return encode_numeric(spec_, gen_, u);
    }

    /// Codeword columns vec(H X_k) for every unit symbol.
    std::vector<Eigen::VectorXcd> channel_columns(const Eigen::MatrixXcd& h) const {
        std::vector<Eigen::VectorXcd> cols;
        for (const auto& u : units_) cols.push_back(vectorize(h * u));
        return cols;
    }

    /// Constellation indices of the ML decision for the received matrix y.
    std::vector<int> decode(const Eigen::MatrixXcd& y, const Eigen::MatrixXcd& h) const {
        const int n = this->n(), m = symbols();
        // columns vec(H X_k) = (I kron H) vec(X_k)
        Eigen::MatrixXcd hm(m, m);
        for (int c = 0; c < n; ++c) hm.middleRows(c * n, n).noalias() = h * unit_matrix_.middleRows(c * n, n);
        const std::complex<double> w = con_.omega();
        Eigen::MatrixXd g(2 * m, 2 * m);
        for (int k = 0; k < m; ++k)
            for (int r = 0; r < m; ++r) {
                const std::complex<double> a = 2.0 * hm(r, k), b = a * w;
                g(2 * r, 2 * k) = a.real(), g(2 * r + 1, 2 * k) = a.imag();
                g(2 * r, 2 * k + 1) = b.real(), g(2 * r + 1, 2 * k + 1) = b.imag();
            }
        Eigen::VectorXcd resid = vectorize(y) - hm * Eigen::VectorXcd::Constant(m, con_.offset.to_complex());
        std::vector<int> z = sphere_decode(realify(resid), g, coords_);
        std::vector<int> idx(m);
        for (int k = 0; k < m; ++k) idx[k] = con_.index_of(z[2 * k], z[2 * k + 1]);
        return idx;
    }

    std::vector<int> decode_exhaustive(const Eigen::MatrixXcd& y, const Eigen::MatrixXcd& h) const {
        return exhaustive_ml(vectorize(y), channel_columns(h), con_);
    }

   private:
    CodeSpec spec_;
    Constellation con_;
    Eigen::MatrixXcd gen_;
    std::vector<Eigen::MatrixXcd> units_;
    SymbolCoordinates coords_;
    Eigen::MatrixXcd unit_matrix_;
};

// ---------------------------------------------------------------- Monte Carlo

/// Complex noise variance N0 for a given Eb/N0: Es = avg_energy n^2, Eb = Es / (n^2 log2 q).
inline double noise_variance(const Constellation& c, double ebn0_db) {
    const double eb = c.avg_energy / c.bits_per_symbol();
    return eb / std::pow(10.0, ebn0_db / 10.0);
}

/// SplitMix64: counter-based 64-bit generator, cheap to key per trial.
class SplitMix64 {
   public:
    using result_type = std::uint64_t;
    explicit SplitMix64(std::uint64_t state) : state_(state) {}
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return mix(state_ += 0x9e3779b97f4a7c15ULL); }
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

   private:
    std::uint64_t state_;
};

/// Independent stream for one (seed, SNR index, trial) triple.
inline SplitMix64 trial_rng(std::uint64_t seed, std::uint64_t snr_index, std::uint64_t trial) {
    std::uint64_t k = SplitMix64::mix(seed + 0x9e3779b97f4a7c15ULL);
    k = SplitMix64::mix(k ^ (snr_index + 0x632be59bd9b4e019ULL));
    k = SplitMix64::mix(k ^ (trial + 0x85157af5ULL));
    return SplitMix64(k);
}

struct SimConfig {
    CodeSpec code;
    Constellation constellation;
    std::vector<double> ebn0_db;
    std::uint64_t max_codewords = 1000000;
    std::uint64_t target_errors = 100;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::uint64_t batch = 512;
};

struct SimRecord {
    double ebn0_db = 0;
    std::uint64_t sent = 0;
    std::uint64_t errors = 0;
    double cer = 0;
    double seconds = 0;
};

struct SimResult {
    std::string code;
    std::string constellation;
    std::vector<SimRecord> records;
};

/// One codeword trial: true when the decoded codeword differs from the sent one.
inline bool run_trial(const Transceiver& tr, double n0, std::uint64_t seed, std::uint64_t snr_index,
                      std::uint64_t trial) {
    auto rng = trial_rng(seed, snr_index, trial);
    const int n = tr.n();
    std::uniform_int_distribution<int> pick(0, tr.constellation().size() - 1);
    for (;;) {
        Eigen::MatrixXcd h = random_channel(n, n, rng);
        std::vector<int> sent(tr.symbols());
        for (auto& s : sent) s = pick(rng);
        Eigen::MatrixXcd y = transmit(tr.encode(sent), h, n0, rng);
        try {
            return tr.decode(y, h) != sent;
        } catch (const std::domain_error&) {
            // rank-deficient draw: redraw
        }
    }
}

inline SimResult run_cer(const SimConfig& cfg) {
    if (cfg.max_codewords == 0 || cfg.target_errors == 0 || cfg.batch == 0)
        throw std::invalid_argument("run_cer: counts must be positive");
    Transceiver tr(cfg.code, cfg.constellation);
    SimResult out{cfg.code.name, cfg.constellation.name, {}};
    const unsigned threads = std::max(1u, cfg.threads);
    for (std::size_t si = 0; si < cfg.ebn0_db.size(); ++si) {
        const auto t0 = std::chrono::steady_clock::now();
        const double n0 = noise_variance(cfg.constellation, cfg.ebn0_db[si]);
        SimRecord rec;
        rec.ebn0_db = cfg.ebn0_db[si];
        while (rec.sent < cfg.max_codewords && rec.errors < cfg.target_errors) {
            const std::uint64_t begin = rec.sent, end = std::min(cfg.max_codewords, begin + cfg.batch);
            std::atomic<std::uint64_t> errors{0};
            auto work = [&](unsigned tid) {
                std::uint64_t local = 0;
                for (std::uint64_t t = begin + tid; t < end; t += threads)
                    local += run_trial(tr, n0, cfg.seed, si, t) ? 1 : 0;
                errors += local;
            };
            if (threads == 1) {
                work(0);
            } else {
                std::vector<std::thread> pool;
                for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
                for (auto& th : pool) th.join();
            }
            rec.errors += errors;
            rec.sent = end;
        }
        rec.cer = static_cast<double>(rec.errors) / static_cast<double>(rec.sent);
        rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.records.push_back(rec);
    }
    return out;
}

inline void write_csv(std::ostream& os, const SimResult& r) {
    os << "code,constellation,ebn0_db,sent,errors,cer,seconds\n";
    for (const auto& rec : r.records) {
        os << r.code << ',' << r.constellation << ',' << rec.ebn0_db << ',' << rec.sent << ',' << rec.errors << ','
           << rec.cer << ',' << rec.seconds << '\n';
    }
}

}  // namespace pstbc

#endif  // PSTBC_MIMO_SIM_HPP
