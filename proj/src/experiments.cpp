// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 cfrsim contributors

#include "cfrsim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <set>
#include <thread>

#include "cfrsim/analysis.hpp"
#include "cfrsim/freq_sim.hpp"

namespace cfrsim {

namespace {

constexpr std::uint64_t kFadingStream = 1;
constexpr std::uint64_t kDataStream = 2;
constexpr std::uint64_t kNoiseStream = 3;
constexpr std::uint64_t kDrawStream = 4;

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t tag, std::uint64_t index) {
    return Rng::derive(Rng::derive(master, tag), index);
}

bool is_pow2(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

std::string join_bands(const std::vector<std::size_t>& bands) {
    std::string s;
    for (std::size_t i = 0; i < bands.size(); ++i)
        s += (i ? "," : "") + std::to_string(bands[i]);
    return s;
}

std::vector<cplx> draw_symbols(Rng& rng, const std::vector<cplx>& alphabet, std::size_t n) {
    std::vector<cplx> s(n);
    for (std::size_t i = 0; i < n; ++i)
        s[i] = alphabet[rng.index(alphabet.size())];
    return s;
}

std::vector<cplx> prefix_ramp(std::size_t n, std::size_t cp) {
    std::vector<cplx> ramp(n);
    for (std::size_t k = 0; k < n; ++k)
        ramp[k] = std::polar(1.0, -2.0 * std::numbers::pi * double(cp) * double(k) / double(n));
    return ramp;
}

std::vector<cplx> exact_isi(const Fft& fft, const std::vector<std::pair<std::size_t, cplx>>& rho,
                            const std::vector<cplx>& z) {
    const std::size_t n = z.size();
    std::vector<cplx> t = fft.inverse(z);
    std::vector<cplx> bt(n, cplx{});
    for (const auto& [pos, val] : rho)
        for (std::size_t i = 0; i + pos < n; ++i)
            bt[i] += val * t[i + pos];
    return fft.forward(bt);
}

std::vector<cplx> channel_gains(const Fft& fft, const BlockMatrices& bm) {
    std::vector<cplx> padded(bm.n, cplx{});
    for (std::size_t m = 0; m < bm.cir.size(); ++m)
        padded[m] = bm.cir[m];
    std::vector<cplx> g = fft.forward(padded);
    const double root_n = std::sqrt(double(bm.n));
    for (cplx& v : g)
        v *= root_n;
    return g;
}

std::string ser_from_sums(double ref2, double err2) {
    if (err2 == 0.0)
        return "inf";
    return format_value(10.0 * std::log10(ref2 / err2));
}

} // namespace

const char* experiment_name(Experiment e) {
    switch (e) {
    case Experiment::PowerProfile: return "power-profile";
    case Experiment::BandAccuracy: return "band-accuracy";
    case Experiment::Normality: return "normality";
    case Experiment::Complexity: return "complexity";
    case Experiment::Transmit: return "transmit";
    case Experiment::Verify: return "verify";
    }
    return "unknown";
}

std::size_t lte_normal_cp(std::size_t fft_size) { return (144 * fft_size + 1024) / 2048; }

std::size_t RunConfig::cp() const { return cp_len ? *cp_len : lte_normal_cp(fft_size); }

double RunConfig::ts() const {
    return sample_interval ? *sample_interval : 1.0 / (15000.0 * double(fft_size));
}

double RunConfig::noise_variance() const {
    return snr_db ? std::pow(10.0, -*snr_db / 10.0) : 0.0;
}

OfdmConfig RunConfig::ofdm() const {
    OfdmConfig cfg;
    cfg.fft_size = fft_size;
    cfg.cp_len = cp();
    cfg.sample_interval = ts();
    cfg.symbols_per_run = symbols;
    return cfg;
}

std::vector<std::size_t> RunConfig::band_list() const {
    std::vector<std::size_t> list = bands;
    if (list.empty()) {
        switch (experiment) {
        case Experiment::BandAccuracy:
            list = {0, 4, 8, 16, 32};
            break;
        case Experiment::Normality:
            list = {0, 4, 8};
            for (std::size_t b = 16; b <= fft_size / 2; b *= 2)
                list.push_back(b);
            break;
        case Experiment::Complexity:
            list = {16};
            break;
        default:
            list = {0, 4, 16, fft_size / 2};
            break;
        }
    }
    std::set<std::size_t> filtered;
    for (std::size_t b : list)
        if (b <= fft_size / 2)
            filtered.insert(b);
    return {filtered.begin(), filtered.end()};
}

void RunConfig::validate() const {
    if (!is_pow2(fft_size) || fft_size < 4)
        throw ConfigError("fft size must be a power of two (>= 4), got " +
                          std::to_string(fft_size));
    if (cp() >= fft_size)
        throw ConfigError("cyclic prefix must be shorter than the FFT size");
    if (!(ts() > 0.0))
        throw ConfigError("sample interval must be positive");
    if (doppler_hz < 0.0)
        throw ConfigError("doppler frequency must be non-negative");
    for (std::size_t b : bands)
        if (b > fft_size / 2)
            throw ConfigError("band " + std::to_string(b) + " exceeds N/2 = " +
                              std::to_string(fft_size / 2));
    if (symbols == 0 || realizations == 0 || max_users == 0)
        throw ConfigError("symbol, realization and user counts must be at least 1");
    if (jb_samples < 20)
        throw ConfigError("residual sample size must be at least 20");
    if (jb_row && *jb_row >= fft_size)
        throw ConfigError("residual row must be below the FFT size");
}

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body) {
    if (threads == 0)
        threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr error;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count)
                    return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!error)
                        error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (std::thread& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

namespace {

PowerDelayProfile load_profile(const RunConfig& rc) {
    const PdpSpec spec = resolve_pdp(rc.pdp);
    PowerDelayProfile pdp = quantize_pdp(spec, 1.0 / rc.ts());
    if (pdp.delay_spread() >= rc.fft_size)
        throw ConfigError("profile '" + pdp.name + "' spans " +
                          std::to_string(pdp.delay_spread()) +
                          " samples, which does not fit the FFT size " +
                          std::to_string(rc.fft_size));
    return pdp;
}

void echo_common(ExperimentReport& report, const RunConfig& rc, const PowerDelayProfile* pdp) {
    report.config_echo.emplace_back("n", std::to_string(rc.fft_size));
    report.config_echo.emplace_back("cp", std::to_string(rc.cp()));
    report.config_echo.emplace_back("sample_interval", format_value(rc.ts()));
    if (pdp)
        report.config_echo.emplace_back("pdp", pdp->name);
}

} // namespace

ExperimentReport run_power_profile(const RunConfig& rc) {
    const PowerDelayProfile pdp = load_profile(rc);
    const IsiPowerProfile profile = isi_power_profile(pdp, rc.ofdm());

    ExperimentReport report;
    echo_common(report, rc, &pdp);
    report.config_echo.emplace_back("reference_power", format_value(profile.reference_power));

    Table t;
    t.name = "isi_power_profile";
    t.columns = {"offset", "power_db"};
    for (std::size_t i = 0; i < profile.offsets.size(); ++i)
        t.rows.push_back({std::to_string(profile.offsets[i]),
                          format_value(profile.normalized_db[i])});
    report.tables.push_back(std::move(t));
    return report;
}

ExperimentReport run_band_accuracy(const RunConfig& rc) {
    const PowerDelayProfile pdp = load_profile(rc);
    const OfdmConfig cfg = rc.ofdm();
    const std::vector<std::size_t> bands = rc.band_list();

    struct Slot {
        double naive_ref2 = 0.0;
        double naive_err2 = 0.0;
        std::vector<double> ref2, err2;
    };
    std::vector<Slot> slots(rc.realizations);

    parallel_for(rc.realizations, rc.threads, [&](std::size_t r) {
        Slot& slot = slots[r];
        slot.ref2.assign(bands.size(), 0.0);
        slot.err2.assign(bands.size(), 0.0);

        const Fft fft(cfg.fft_size);
        const std::vector<cplx> alphabet = qam_alphabet(16);
        const std::vector<cplx> ramp = prefix_ramp(cfg.fft_size, cfg.cp_len);
        const FadingProcess fp{rc.doppler_hz, stream_seed(rc.seed, kFadingStream, r)};
        const ChannelRealization ch = generate_fading(pdp, fp, rc.symbols, cfg);
        Rng data(stream_seed(rc.seed, kDataStream, r));

        std::vector<cplx> s_prev(cfg.fft_size, cplx{});
        std::vector<cplx> z(cfg.fft_size);
        for (std::size_t u = 0; u < rc.symbols; ++u) {
            const std::vector<cplx> s_cur = draw_symbols(data, alphabet, cfg.fft_size);
            const BlockMatrices bm = build_block_matrices(ch, u);
            const ToeplitzSpectrum phi = toeplitz_dft(bm.interference_toeplitz(), fft);
            const std::vector<cplx> gains = channel_gains(fft, bm);

            for (std::size_t k = 0; k < cfg.fft_size; ++k)
                z[k] = s_prev[k] - ramp[k] * s_cur[k];
            const std::vector<cplx> isi_full = exact_isi(fft, bm.sparse_rho(), z);

            for (std::size_t k = 0; k < cfg.fft_size; ++k) {
                slot.naive_ref2 += std::norm(gains[k] * s_cur[k]);
                slot.naive_err2 += std::norm(isi_full[k]);
            }
            for (std::size_t bi = 0; bi < bands.size(); ++bi) {
                const std::vector<cplx> isi_b = banded_multiply(phi, bands[bi], z);
                for (std::size_t k = 0; k < cfg.fft_size; ++k) {
                    slot.ref2[bi] += std::norm(gains[k] * s_cur[k] + isi_b[k]);
                    slot.err2[bi] += std::norm(isi_b[k] - isi_full[k]);
                }
            }
            s_prev = s_cur;
        }
    });

    double naive_ref2 = 0.0;
    double naive_err2 = 0.0;
    std::vector<double> ref2(bands.size(), 0.0);
    std::vector<double> err2(bands.size(), 0.0);
    for (const Slot& slot : slots) { // fixed reduction order
        naive_ref2 += slot.naive_ref2;
        naive_err2 += slot.naive_err2;
        for (std::size_t bi = 0; bi < bands.size(); ++bi) {
            ref2[bi] += slot.ref2[bi];
            err2[bi] += slot.err2[bi];
        }
    }

    ExperimentReport report;
    echo_common(report, rc, &pdp);
    report.config_echo.emplace_back("doppler", format_value(rc.doppler_hz));
    report.config_echo.emplace_back("bands", join_bands(bands));
    report.config_echo.emplace_back("symbols", std::to_string(rc.symbols));
    report.config_echo.emplace_back("realizations", std::to_string(rc.realizations));
    report.config_echo.emplace_back("seed", std::to_string(rc.seed));
    if (rc.snr_db)
        report.warnings.push_back(
            "band-accuracy compares two channel models; receiver noise is common to both and "
            "cancels, so --snr is ignored here");

    const double naive_ser = naive_err2 == 0.0 ? std::numeric_limits<double>::infinity()
                                               : 10.0 * std::log10(naive_ref2 / naive_err2);
    Table t;
    t.name = "ser";
    t.columns = {"band", "ser_db", "gain_vs_phi0_db"};
    t.rows.push_back({"-1", ser_from_sums(naive_ref2, naive_err2), "0"});
    for (std::size_t bi = 0; bi < bands.size(); ++bi) {
        const double ser = err2[bi] == 0.0 ? std::numeric_limits<double>::infinity()
                                           : 10.0 * std::log10(ref2[bi] / err2[bi]);
        t.rows.push_back({std::to_string(bands[bi]), ser_from_sums(ref2[bi], err2[bi]),
                          format_value(ser - naive_ser)});
    }
    report.tables.push_back(std::move(t));
    return report;
}

ExperimentReport run_normality(const RunConfig& rc) {
    const PowerDelayProfile pdp = load_profile(rc);
    const OfdmConfig cfg = rc.ofdm();
    const std::size_t n = cfg.fft_size;
    const std::vector<std::size_t> bands = rc.band_list();
    const std::size_t row = rc.jb_row ? *rc.jb_row : n / 2;
    if (row >= n)
        throw ConfigError("residual row must be below the FFT size");

    // Columns ordered by the band at which they enter the kept set: a column
    // at distance d from the row is kept once min(d, N+1-d) <= b, so walking
    // the sorted order once per draw yields the residual for every band.
    std::vector<std::pair<std::size_t, std::size_t>> order; // (entry band, column)
    order.reserve(n - 1);
    for (std::size_t k = 0; k < n; ++k) {
        if (k == row)
            continue;
        const std::size_t d = row > k ? row - k : k - row;
        order.emplace_back(std::min(d, n + 1 - d), k);
    }
    std::sort(order.begin(), order.end());
    std::vector<std::size_t> boundary(bands.size());
    for (std::size_t bi = 0; bi < bands.size(); ++bi)
        boundary[bi] = std::size_t(std::lower_bound(order.begin(), order.end(),
                                                    std::make_pair(bands[bi] + 1,
                                                                   std::size_t(0))) -
                                   order.begin());

    struct Slot {
        std::vector<double> p_pooled, p_real, p_imag;
        std::vector<bool> degenerate;
    };
    std::vector<Slot> slots(rc.realizations);

    parallel_for(rc.realizations, rc.threads, [&](std::size_t r) {
        Slot& slot = slots[r];
        slot.p_pooled.assign(bands.size(), 0.0);
        slot.p_real.assign(bands.size(), 0.0);
        slot.p_imag.assign(bands.size(), 0.0);
        slot.degenerate.assign(bands.size(), false);

        const Fft fft(n);
        const std::vector<cplx> alphabet = qam_alphabet(16);
        const FadingProcess fp{rc.doppler_hz, stream_seed(rc.seed, kFadingStream, r)};
        const ChannelRealization ch = generate_fading(pdp, fp, 1, cfg);
        const BlockMatrices bm = build_block_matrices(ch, 0);
        const ToeplitzSpectrum phi = toeplitz_dft(bm.interference_toeplitz(), fft);

        std::vector<cplx> coef(order.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            coef[i] = phi.entry(row, order[i].second);

        Rng draws(stream_seed(rc.seed, kDrawStream, r));
        std::vector<std::vector<cplx>> samples(bands.size());
        for (auto& s : samples)
            s.resize(rc.jb_samples);

        std::vector<cplx> checkpoints(bands.size());
        for (std::size_t d = 0; d < rc.jb_samples; ++d) {
            cplx acc{};
            std::size_t bi = 0;
            for (std::size_t i = 0; i < coef.size(); ++i) {
                while (bi < bands.size() && boundary[bi] == i)
                    checkpoints[bi++] = acc;
                acc += coef[i] * alphabet[draws.index(alphabet.size())];
            }
            while (bi < bands.size())
                checkpoints[bi++] = acc;
            for (std::size_t b = 0; b < bands.size(); ++b)
                samples[b][d] = acc - checkpoints[b]; // out-of-band remainder
        }

        for (std::size_t bi = 0; bi < bands.size(); ++bi) {
            double peak = 0.0;
            for (const cplx& v : samples[bi])
                peak = std::max(peak, std::abs(v));
            if (peak == 0.0) {
                slot.degenerate[bi] = true;
                continue;
            }
            const JbComplexResult jb = jarque_bera_complex(samples[bi]);
            slot.p_pooled[bi] = jb.pooled.p_value;
            slot.p_real[bi] = jb.real_part.p_value;
            slot.p_imag[bi] = jb.imag_part.p_value;
        }
    });

    ExperimentReport report;
    echo_common(report, rc, &pdp);
    report.config_echo.emplace_back("doppler", format_value(rc.doppler_hz));
    report.config_echo.emplace_back("bands", join_bands(bands));
    report.config_echo.emplace_back("realizations", std::to_string(rc.realizations));
    report.config_echo.emplace_back("samples", std::to_string(rc.jb_samples));
    report.config_echo.emplace_back("row", std::to_string(row));
    report.config_echo.emplace_back("seed", std::to_string(rc.seed));

    Table t;
    t.name = "jb_pvalues";
    t.columns = {"n", "band", "p_pooled", "p_real", "p_imag", "flag"};
    for (std::size_t bi = 0; bi < bands.size(); ++bi) {
        bool degenerate = false;
        double pp = 0.0;
        double pr = 0.0;
        double pi = 0.0;
        std::size_t valid = 0;
        for (const Slot& slot : slots) { // fixed reduction order
            if (slot.degenerate[bi]) {
                degenerate = true;
                continue;
            }
            pp += slot.p_pooled[bi];
            pr += slot.p_real[bi];
            pi += slot.p_imag[bi];
            ++valid;
        }
        if (degenerate || valid == 0) {
            t.rows.push_back({std::to_string(n), std::to_string(bands[bi]), "nan", "nan", "nan",
                              "degenerate"});
            report.warnings.push_back("band " + std::to_string(bands[bi]) +
                                      ": residual is identically zero; normality test skipped");
        } else {
            t.rows.push_back({std::to_string(n), std::to_string(bands[bi]),
                              format_value(pp / double(valid)), format_value(pr / double(valid)),
                              format_value(pi / double(valid)), "ok"});
        }
    }
    report.tables.push_back(std::move(t));
    return report;
}

ExperimentReport run_complexity(const RunConfig& rc) {
    const PowerDelayProfile pdp = load_profile(rc);
    const OfdmConfig cfg = rc.ofdm();
    const std::size_t band = rc.band_list().empty() ? 16 : rc.band_list().back();

    ExperimentReport report;
    echo_common(report, rc, &pdp);
    report.config_echo.emplace_back("band", std::to_string(band));
    report.config_echo.emplace_back("max_users", std::to_string(rc.max_users));
    report.config_echo.emplace_back("taps", std::to_string(pdp.tap_count()));

    Table t;
    t.name = "mac_per_symbol";
    t.columns = {"users", "mac_tdl", "mac_freq_reuse", "mac_freq_recompute"};
    std::optional<std::size_t> cross_reuse;
    std::optional<std::size_t> cross_recompute;
    for (std::size_t users = 1; users <= rc.max_users; ++users) {
        const MacComparison reuse = count_macs(cfg, pdp, band, users, false);
        const MacComparison recompute = count_macs(cfg, pdp, band, users, true);
        if (!cross_reuse && reuse.freq.total() < reuse.tdl.total())
            cross_reuse = users;
        if (!cross_recompute && recompute.freq.total() < recompute.tdl.total())
            cross_recompute = users;
        t.rows.push_back({std::to_string(users), format_value(reuse.tdl.total()),
                          format_value(reuse.freq.total()),
                          format_value(recompute.freq.total())});
    }
    report.tables.push_back(std::move(t));

    Table c;
    c.name = "crossover";
    c.columns = {"case", "users"};
    c.rows.push_back({"cfr_reused", cross_reuse ? std::to_string(*cross_reuse) : "none"});
    c.rows.push_back(
        {"cfr_recomputed", cross_recompute ? std::to_string(*cross_recompute) : "none"});
    report.tables.push_back(std::move(c));
    return report;
}

ExperimentReport run_transmit(const RunConfig& rc) {
    const PowerDelayProfile pdp = load_profile(rc);
    const OfdmConfig cfg = rc.ofdm();
    const std::size_t n = cfg.fft_size;
    const std::vector<std::size_t> bands = rc.band_list();

    const Fft fft(n);
    const std::vector<cplx> alphabet = qam_alphabet(16);
    const std::vector<cplx> ramp = prefix_ramp(n, cfg.cp_len);
    const FadingProcess fp{rc.doppler_hz, stream_seed(rc.seed, kFadingStream, 0)};
    const ChannelRealization ch = generate_fading(pdp, fp, rc.symbols, cfg);
    Rng data(stream_seed(rc.seed, kDataStream, 0));
    NoiseModel common_noise(rc.noise_variance(), stream_seed(rc.seed, kNoiseStream, 0));

    const std::size_t tau = pdp.delay_spread();
    const std::size_t sym_len = cfg.symbol_len();
    std::vector<cplx> past(tau, cplx{}); // stream tail preceding the current symbol

    double max_err = 0.0;
    double full_ref2 = 0.0;
    std::vector<double> ref2(bands.size(), 0.0);
    std::vector<double> err2(bands.size(), 0.0);
    std::vector<cplx> s_prev(n, cplx{});
    std::vector<cplx> z(n);
    std::vector<cplx> rx_body(n);
    for (std::size_t u = 0; u < rc.symbols; ++u) {
        const std::vector<cplx> s_cur = draw_symbols(data, alphabet, n);
        const std::vector<cplx> samples = with_cyclic_prefix(ofdm_modulate(fft, s_cur), cfg.cp_len);

        // sample-level tapped delay line, fed symbol by symbol with the
        // trailing delay-spread history carried across the boundary
        for (std::size_t i = cfg.cp_len; i < sym_len; ++i) {
            cplx y{};
            for (std::size_t l = 0; l < pdp.taps.size(); ++l) {
                const std::ptrdiff_t idx = std::ptrdiff_t(i) - std::ptrdiff_t(pdp.taps[l].delay);
                const cplx x = idx >= 0 ? samples[std::size_t(idx)]
                                        : past[std::size_t(std::ptrdiff_t(tau) + idx)];
                y += ch.coeffs[u][l] * x;
            }
            rx_body[i - cfg.cp_len] = y;
        }
        if (tau > 0)
            past.assign(samples.end() - std::ptrdiff_t(tau), samples.end());

        const BlockMatrices bm = build_block_matrices(ch, u);
        const ToeplitzSpectrum phi = toeplitz_dft(bm.interference_toeplitz(), fft);
        const std::vector<cplx> gains = channel_gains(fft, bm);
        for (std::size_t k = 0; k < n; ++k)
            z[k] = s_prev[k] - ramp[k] * s_cur[k];
        const std::vector<cplx> isi_full = exact_isi(fft, bm.sparse_rho(), z);

        // receiver noise drawn once per symbol; common to every model so the
        // comparisons see the same disturbance
        std::vector<cplx> eta(n, cplx{});
        if (common_noise.enabled())
            for (cplx& v : eta)
                v = common_noise.sample();

        const std::vector<cplx> r_time = fft.forward(rx_body);
        std::vector<cplx> r_full(n);
        for (std::size_t k = 0; k < n; ++k) {
            r_full[k] = gains[k] * s_cur[k] + isi_full[k] + eta[k];
            max_err = std::max(max_err, std::abs(r_time[k] + eta[k] - r_full[k]));
            full_ref2 += std::norm(r_full[k]);
        }
        for (std::size_t bi = 0; bi < bands.size(); ++bi) {
            const std::vector<cplx> isi_b = banded_multiply(phi, bands[bi], z);
            for (std::size_t k = 0; k < n; ++k) {
                const cplx r_b = gains[k] * s_cur[k] + isi_b[k] + eta[k];
                ref2[bi] += std::norm(r_b);
                err2[bi] += std::norm(r_b - r_full[k]);
            }
        }
        s_prev = s_cur;
    }

    ExperimentReport report;
    echo_common(report, rc, &pdp);
    report.config_echo.emplace_back("doppler", format_value(rc.doppler_hz));
    report.config_echo.emplace_back("noise", rc.snr_db ? format_value(*rc.snr_db) + " dB SNR"
                                                       : "noiseless");
    report.config_echo.emplace_back("bands", join_bands(bands));
    report.config_echo.emplace_back("symbols", std::to_string(rc.symbols));
    report.config_echo.emplace_back("seed", std::to_string(rc.seed));

    Table summary;
    summary.name = "summary";
    summary.columns = {"metric", "value"};
    summary.rows.push_back({"taps", std::to_string(pdp.tap_count())});
    summary.rows.push_back({"delay_spread_samples", std::to_string(pdp.delay_spread())});
    summary.rows.push_back(
        {"excess_samples", std::to_string(pdp.delay_spread() > cfg.cp_len
                                              ? pdp.delay_spread() - cfg.cp_len
                                              : 0)});
    summary.rows.push_back({"time_freq_max_abs_err", format_value(max_err)});
    summary.rows.push_back({"mean_symbol_power", format_value(full_ref2 / double(rc.symbols))});
    report.tables.push_back(std::move(summary));

    Table t;
    t.name = "ser";
    t.columns = {"band", "ser_db"};
    for (std::size_t bi = 0; bi < bands.size(); ++bi)
        t.rows.push_back({std::to_string(bands[bi]), ser_from_sums(ref2[bi], err2[bi])});
    report.tables.push_back(std::move(t));
    return report;
}

ExperimentReport run_verify(const RunConfig& rc) {
    const std::size_t n = rc.fft_size;
    if (n > 128)
        throw ConfigError("verify runs dense identity checks; use --n <= 128");
    const std::size_t cp = std::max<std::size_t>(1, n / 8);
    const std::size_t tau = cp + std::max<std::size_t>(2, n / 4);

    PowerDelayProfile pdp;
    pdp.name = "verify-synthetic";
    {
        std::map<std::size_t, double> taps;
        taps[0] += 1.0;
        taps[cp] += 0.4;
        taps[cp + 1] += 0.3;
        taps[(cp + tau) / 2] += 0.2;
        taps[tau] += 0.1;
        for (const auto& [delay, gain] : taps)
            pdp.taps.push_back({delay, gain});
    }
    pdp.validate();

    OfdmConfig cfg;
    cfg.fft_size = n;
    cfg.cp_len = cp;
    cfg.sample_interval = 1.0 / (15000.0 * double(n));

    const Fft fft(n);
    const std::vector<cplx> alphabet = qam_alphabet(16);

    struct Check {
        std::string name;
        double max_err;
        double tol;
    };
    std::vector<Check> checks;
    Rng rng(rc.seed);

    { // implicit spectrum against the dense transform oracle
        double worst = 0.0;
        for (std::size_t trial = 0; trial < 20; ++trial) {
            std::vector<cplx> row(n);
            for (cplx& v : row)
                v = {rng.normal(), rng.normal()};
            const TriangularToeplitz b(row);
            const CMatrix fast = toeplitz_dft(b, fft).dense();
            const CMatrix oracle = dense_toeplitz_dft_oracle(b);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    worst = std::max(worst, std::abs(fast(i, j) - oracle(i, j)) /
                                                (1.0 + std::abs(oracle(i, j))));
        }
        checks.push_back({"toeplitz_spectrum_vs_dense_oracle", worst, 1e-10});
    }

    { // sample-level transmission against the frequency-domain model
        double worst = 0.0;
        for (std::size_t trial = 0; trial < 5; ++trial) {
            const FadingProcess fp{30.0, Rng::derive(rc.seed, 100 + trial)};
            const ChannelRealization ch = generate_fading(pdp, fp, 2, cfg);
            Rng data(Rng::derive(rc.seed, 200 + trial));
            const std::vector<cplx> s0 = draw_symbols(data, alphabet, n);
            const std::vector<cplx> s1 = draw_symbols(data, alphabet, n);
            std::vector<cplx> stream;
            for (const auto& s : {s0, s1}) {
                const std::vector<cplx> with_cp =
                    with_cyclic_prefix(ofdm_modulate(fft, s), cp);
                stream.insert(stream.end(), with_cp.begin(), with_cp.end());
            }
            NoiseModel off = NoiseModel::off();
            const std::vector<cplx> rx = tdl_filter(stream, ch, off);
            for (std::size_t u = 0; u < 2; ++u) {
                const BlockMatrices bm = build_block_matrices(ch, u);
                const FreqDomainChannel fc = build_freq_channel(bm, cfg, std::nullopt, fft);
                const std::vector<cplx> r_freq =
                    freq_transmit(u == 0 ? std::vector<cplx>(n, cplx{}) : s0,
                                  u == 0 ? s0 : s1, fc, fft, off);
                const std::vector<cplx> r_time = ofdm_demodulate(fft, rx, u, cfg);
                worst = std::max(worst, max_abs_diff(r_freq, r_time));
            }
        }
        checks.push_back({"time_vs_frequency_transmission", worst, 1e-9});
    }

    const FadingProcess fp{30.0, Rng::derive(rc.seed, 300)};
    const ChannelRealization ch = generate_fading(pdp, fp, 1, cfg);
    const BlockMatrices bm = build_block_matrices(ch, 0);

    { // column-shift identity between the two interference operators
        CMatrix pv(n, n);
        for (std::size_t i = 0; i < n; ++i)
            pv(i, (i + n - cp) % n) = 1.0;
        checks.push_back(
            {"wrap_removal_equals_shifted_isi", max_abs_diff(bm.dense_a(), bm.dense_b() * pv),
             1e-12});
    }

    { // block fading makes the circular part diagonal in frequency
        const CMatrix f = fourier_matrix(n);
        const CMatrix g = f * bm.dense_h() * f.adjoint();
        const FreqDomainChannel fc = build_freq_channel(bm, cfg, std::nullopt, fft);
        double off_mass = 0.0;
        double diag_err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            diag_err = std::max(diag_err, std::abs(g(i, i) - fc.gain[i]));
            for (std::size_t j = 0; j < n; ++j)
                if (i != j)
                    off_mass += std::norm(g(i, j));
        }
        checks.push_back({"circular_channel_diagonalizes", std::sqrt(off_mass), 1e-10});
        checks.push_back({"gain_matches_dense_response", diag_err, 1e-10});
    }

    { // prefix phase ramp stays on the unit circle
        const FreqDomainChannel fc = build_freq_channel(bm, cfg, std::nullopt, fft);
        double worst = 0.0;
        for (const cplx& w : fc.ramp)
            worst = std::max(worst, std::abs(std::abs(w) - 1.0));
        checks.push_back({"prefix_ramp_unit_modulus", worst, 1e-12});
    }

    { // full-band reduction reproduces the dense interference product
        const ToeplitzSpectrum phi = toeplitz_dft(bm.interference_toeplitz(), fft);
        const BandedCfr full = reduce_band(phi, n / 2);
        std::vector<cplx> x(n);
        for (cplx& v : x)
            v = {rng.normal(), rng.normal()};
        const std::vector<cplx> direct = mat_vec(phi.dense(), x);
        checks.push_back(
            {"full_band_equals_dense_product", max_abs_diff(full.multiply(x), direct), 1e-9});
    }

    ExperimentReport report;
    report.config_echo.emplace_back("n", std::to_string(n));
    report.config_echo.emplace_back("seed", std::to_string(rc.seed));

    Table t;
    t.name = "checks";
    t.columns = {"check", "max_error", "tolerance", "status"};
    for (const Check& c : checks) {
        const bool pass = c.max_err < c.tol;
        report.ok = report.ok && pass;
        t.rows.push_back({c.name, format_value(c.max_err), format_value(c.tol),
                          pass ? "pass" : "FAIL"});
    }
    report.tables.push_back(std::move(t));
    return report;
}

ExperimentReport run(const RunConfig& rc) {
    rc.validate();
    const auto start = std::chrono::steady_clock::now();
    ExperimentReport report;
    switch (rc.experiment) {
    case Experiment::PowerProfile: report = run_power_profile(rc); break;
    case Experiment::BandAccuracy: report = run_band_accuracy(rc); break;
    case Experiment::Normality: report = run_normality(rc); break;
    case Experiment::Complexity: report = run_complexity(rc); break;
    case Experiment::Transmit: report = run_transmit(rc); break;
    case Experiment::Verify: report = run_verify(rc); break;
    }
    report.experiment = experiment_name(rc.experiment);
    report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                               start)
                         .count();
    return report;
}

} // namespace cfrsim
