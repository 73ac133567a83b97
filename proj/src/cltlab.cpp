#include "cltlab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <thread>

namespace dyadnet {

double chi_p(double p) {
    require(p > 0.0, errc::invalid_argument, "chi_p: p must be positive");
    double r = std::round(p);
    if (r == p && std::fmod(r, 2.0) == 0.0 && r <= 300.0) {
        // chi_{2r} = (2r)!/(2^r r!) = 1 * 3 * ... * (2r-1), exact in doubles here
        int half = static_cast<int>(r) / 2;
        double acc = 1.0;
        for (int j = 1; j <= half; ++j) acc *= 2.0 * j - 1.0;
        return acc;
    }
    return std::exp(0.5 * p * std::log(2.0) + std::lgamma(0.5 * (p + 1.0)) -
                    0.5 * std::log(M_PI));
}

double std_normal_cdf(double w) { return 0.5 * std::erfc(-w * M_SQRT1_2); }

const char* moment_method_name(MomentMethod m) {
    switch (m) {
    case MomentMethod::exact_enumeration: return "exact_enumeration";
    case MomentMethod::exact_warnock_shift_avg: return "exact_warnock_shift_avg";
    case MomentMethod::monte_carlo: return "monte_carlo";
    }
    return "?";
}

namespace {

// Runs fn(index) for index in [0, n) on the given number of threads. Callers
// must write results by index; there is no reduction here, so the outcome is
// independent of the thread count.
void parallel_fill(uint64_t n, int threads, const std::function<void(uint64_t)>& fn) {
    const uint64_t chunk = 4096;
    if (threads <= 1 || n <= chunk) {
        for (uint64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<uint64_t> next_chunk{0};
    const uint64_t n_chunks = (n + chunk - 1) / chunk;
    auto worker = [&] {
        for (;;) {
            uint64_t c = next_chunk.fetch_add(1);
            if (c >= n_chunks) return;
            uint64_t hi = std::min(n, (c + 1) * chunk);
            for (uint64_t i = c * chunk; i < hi; ++i) fn(i);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
}

std::vector<uint64_t> shift_from_counter(uint64_t counter, int s, int m) {
    std::vector<uint64_t> masks(s);
    const uint64_t mask = m ? ((uint64_t(1) << m) - 1) : 0;
    for (int i = 0; i < s; ++i) masks[i] = (counter >> (i * m)) & mask;
    return masks;
}

double mean_of(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return v.empty() ? 0.0 : acc / static_cast<double>(v.size());
}

double stderr_of_mean(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    double var = acc / (static_cast<double>(v.size()) - 1.0);
    return std::sqrt(var / static_cast<double>(v.size()));
}

// |D(P + T, Y)| sampler shared by the Monte Carlo paths.
double sampled_discrepancy(const DigitalNet& p, uint64_t seed, uint64_t stream, uint64_t index,
                           std::vector<uint64_t>& t_buf, std::vector<uint64_t>& y_buf) {
    sample_shift_point(p.s(), p.m(), seed, stream, index, t_buf.data(), y_buf.data());
    return local_discrepancy_shifted(p, t_buf, y_buf);
}

} // namespace

MomentEstimate estimate_M_sp(const DigitalNet& p, double p_exp, MomentMethod method,
                             uint64_t n_samples, uint64_t seed, int threads) {
    require(p_exp > 0.0, errc::invalid_argument, "estimate_M_sp: p must be positive");
    const int s = p.s();
    const int m = p.m();
    MomentEstimate est;
    est.p = p_exp;
    est.method = method;
    est.seed = seed;

    if (method == MomentMethod::exact_enumeration) {
        require(p_exp == 2.0, errc::invalid_argument,
                "exact_enumeration supports p = 2 only");
        require(s * m <= 16, errc::cap_exceeded,
                "exact_enumeration: 2^{sm} shift lattice too large");
        const uint64_t total = uint64_t(1) << (s * m);
        std::vector<double> per_shift(total);
        for (uint64_t c = 0; c < total; ++c) {
            ShiftVector t{s, m, shift_from_counter(c, s, m)};
            per_shift[c] = l2_discrepancy_sq(digital_shift(p, t));
        }
        // Order-canonical sum: invariant under relabeling of the shift group.
        std::sort(per_shift.begin(), per_shift.end());
        double acc = 0.0;
        for (double v : per_shift) acc += v;
        est.value = std::sqrt(acc / static_cast<double>(total));
        est.std_error = 0.0;
        est.n_samples = total;
        return est;
    }

    if (method == MomentMethod::exact_warnock_shift_avg) {
        require(p_exp == 2.0, errc::invalid_argument,
                "exact_warnock_shift_avg supports p = 2 only");
        require(n_samples > 0, errc::invalid_argument, "need at least one shift sample");
        std::vector<double> per_shift(n_samples);
        parallel_fill(n_samples, threads, [&](uint64_t i) {
            std::vector<uint64_t> t(s), y(s);
            sample_shift_point(s, m, seed, 1, i, t.data(), y.data());
            per_shift[i] = l2_discrepancy_sq(digital_shift(p, ShiftVector{s, m, t}));
        });
        double mean = mean_of(per_shift);
        double se = stderr_of_mean(per_shift, mean);
        est.value = std::sqrt(mean);
        est.std_error = mean > 0.0 ? se / (2.0 * std::sqrt(mean)) : 0.0;
        est.n_samples = n_samples;
        return est;
    }

    require(n_samples > 0, errc::invalid_argument, "need at least one sample");
    std::vector<double> v(n_samples);
    parallel_fill(n_samples, threads, [&](uint64_t i) {
        std::vector<uint64_t> t(s), y(s);
        double d = sampled_discrepancy(p, seed, 1, i, t, y);
        v[i] = std::pow(std::abs(d), p_exp);
    });
    double mean = mean_of(v);
    double se = stderr_of_mean(v, mean);
    est.value = std::pow(mean, 1.0 / p_exp);
    est.std_error = mean > 0.0 ? std::pow(mean, 1.0 / p_exp - 1.0) / p_exp * se : 0.0;
    est.n_samples = n_samples;
    return est;
}

double ks_distance_vs_normal(std::vector<double>& z) {
    require(!z.empty(), errc::invalid_argument, "KS distance needs samples");
    std::sort(z.begin(), z.end());
    const double n = static_cast<double>(z.size());
    double d = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        double cdf = std_normal_cdf(z[i]);
        d = std::max(d, (static_cast<double>(i) + 1.0) / n - cdf);
        d = std::max(d, cdf - static_cast<double>(i) / n);
    }
    return d;
}

CltReport build_clt_report(std::vector<double> z_values) {
    CltReport rep;
    rep.n = z_values.size();
    for (double z : z_values) {
        for (int p = 1; p <= 4; ++p) rep.abs_moments[p] += std::pow(std::abs(z), p);
        double pos = (z - kHistLo) * kHistBins / (kHistHi - kHistLo);
        if (pos >= 0.0 && pos < kHistBins)
            ++rep.histogram[static_cast<std::size_t>(pos)];
        else
            ++rep.hist_clipped;
    }
    for (int p = 1; p <= 4; ++p) rep.abs_moments[p] /= static_cast<double>(z_values.size());
    rep.ks = ks_distance_vs_normal(z_values);
    return rep;
}

CltReport clt_experiment(const DigitalNet& p, uint64_t n_samples, uint64_t seed,
                         const MomentEstimate& normalizer, int threads) {
    require(n_samples > 0, errc::invalid_argument, "clt_experiment: n_samples must be positive");
    require(normalizer.p == 2.0, errc::invalid_argument,
            "clt_experiment: normalizer must be a p = 2 moment");
    require(normalizer.value > 0.0, errc::invalid_argument,
            "clt_experiment: normalizer must be positive");

    std::vector<double> z(n_samples);
    parallel_fill(n_samples, threads, [&](uint64_t i) {
        std::vector<uint64_t> t(p.s()), y(p.s());
        z[i] = sampled_discrepancy(p, seed, 0, i, t, y) / normalizer.value;
    });
    CltReport rep = build_clt_report(std::move(z));
    rep.s = p.s();
    rep.m = p.m();
    rep.n = n_samples;
    rep.seed = seed;
    rep.normalizer = normalizer;
    return rep;
}

MomentRatioReport moment_ratio_experiment(const DigitalNet& p, std::span<const double> ps,
                                          uint64_t n_samples, uint64_t seed, int threads) {
    require(n_samples > 0, errc::invalid_argument, "moment_ratio: n_samples must be positive");
    for (double q : ps)
        require(q > 0.0, errc::invalid_argument, "moment_ratio: p must be positive");

    std::vector<double> d(n_samples);
    parallel_fill(n_samples, threads, [&](uint64_t i) {
        std::vector<uint64_t> t(p.s()), y(p.s());
        d[i] = std::abs(sampled_discrepancy(p, seed, 0, i, t, y));
    });

    MomentRatioReport rep;
    rep.n = n_samples;
    rep.seed = seed;

    std::vector<double> sq(n_samples);
    for (uint64_t i = 0; i < n_samples; ++i) sq[i] = d[i] * d[i];
    double s2 = mean_of(sq);
    rep.m2 = std::sqrt(s2);

    const uint64_t n_batches = std::min<uint64_t>(64, n_samples);
    for (double q : ps) {
        std::vector<double> vp(n_samples);
        for (uint64_t i = 0; i < n_samples; ++i) vp[i] = std::pow(d[i], q);
        double sp = mean_of(vp);
        double se_sp = stderr_of_mean(vp, sp);

        MomentRatio r;
        r.p = q;
        r.m_value = std::pow(sp, 1.0 / q);
        r.m_stderr = sp > 0.0 ? std::pow(sp, 1.0 / q - 1.0) / q * se_sp : 0.0;
        r.ratio_raw = rep.m2 > 0.0 ? r.m_value / rep.m2 : 0.0;
        r.ratio_pow = s2 > 0.0 ? sp / std::pow(s2, q / 2.0) : 0.0;
        r.chi = chi_p(q);

        // Fixed-batch stderr of the exponentiated ratio.
        if (n_batches >= 8) {
            std::vector<double> batch_vals;
            batch_vals.reserve(n_batches);
            for (uint64_t b = 0; b < n_batches; ++b) {
                uint64_t lo = b * n_samples / n_batches;
                uint64_t hi = (b + 1) * n_samples / n_batches;
                if (hi == lo) continue;
                double bsp = 0.0, bs2 = 0.0;
                for (uint64_t i = lo; i < hi; ++i) {
                    bsp += vp[i];
                    bs2 += sq[i];
                }
                bsp /= static_cast<double>(hi - lo);
                bs2 /= static_cast<double>(hi - lo);
                if (bs2 > 0.0) batch_vals.push_back(bsp / std::pow(bs2, q / 2.0));
            }
            double bm = mean_of(batch_vals);
            r.ratio_pow_stderr = stderr_of_mean(batch_vals, bm);
        }
        rep.ratios.push_back(r);
    }
    return rep;
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

std::vector<CheckResult> verify_net(const GeneratingMatrixSet& g, int claimed_t, uint64_t seed) {
    g.validate();
    std::vector<CheckResult> out;
    const int s = g.s;
    const int m = g.m;
    DigitalNet net = generate_net(g);
    DualSpace dual = DualSpace::from_matrices(g);
    const bool enumerable = dual.dim() <= kDualEnumCap;

    // Lemma B: the three t routes agree, and the claimed t is admissible.
    int t_exact = -1;
    {
        CheckResult c{"Lemma B", true, ""};
        TParameter tr = t_parameter_rank_composition(g);
        t_exact = tr.value;
        std::string detail = "t(rank)=" + std::to_string(tr.value);
        if (enumerable) {
            TParameter td = t_parameter_dual_weight(g);
            detail += " t(dual)=" + std::to_string(td.value);
            if (td.value != tr.value) c.pass = false;
        }
        try {
            TParameter tc = t_parameter_counting(net);
            detail += " t(count)=" + std::to_string(tc.value);
            if (tc.value != tr.value) c.pass = false;
        } catch (const Error& e) {
            if (e.code() != errc::cap_exceeded) throw;
            detail += " t(count)=skipped";
        }
        if (claimed_t >= 0 && claimed_t < t_exact) {
            c.pass = false;
            detail += " claimed t=" + std::to_string(claimed_t) + " < exact t";
        }
        c.detail = detail;
        out.push_back(c);
    }
    const int t = claimed_t >= 0 ? claimed_t : t_exact;

    // Lemma D: character sums take only the values 0 and 2^m, hitting 2^m
    // exactly on dual vectors.
    {
        CheckResult c{"Lemma D", true, ""};
        const int64_t full = int64_t(1) << m;
        uint64_t tested = 0;
        auto check_vec = [&](const std::vector<uint64_t>& masks) {
            int64_t cs = character_sum(net, masks);
            bool in_dual = dual.contains_masks(masks);
            if (cs != (in_dual ? full : 0)) c.pass = false;
            ++tested;
        };
        if (s * m <= 16) {
            const uint64_t total = uint64_t(1) << (s * m);
            for (uint64_t v = 0; v < total && c.pass; ++v)
                check_vec(shift_from_counter(v, s, m));
        } else {
            Rng rng(seed, 2, 0);
            const uint64_t mask = m ? ((uint64_t(1) << m) - 1) : 0;
            for (int k = 0; k < 256 && c.pass; ++k) {
                std::vector<uint64_t> masks(s);
                for (int i = 0; i < s; ++i) masks[i] = rng.next() & mask;
                check_vec(masks);
            }
            // random dual members from basis combinations
            for (int k = 0; k < 256 && c.pass && dual.dim() > 0; ++k) {
                std::vector<uint64_t> masks(s, 0);
                for (int b = 0; b < dual.dim(); ++b)
                    if (rng.next() & 1) {
                        std::vector<uint64_t> bm = dual.masks_of(dual.basis()[b]);
                        for (int i = 0; i < s; ++i) masks[i] ^= bm[i];
                    }
                check_vec(masks);
            }
        }
        c.detail = std::to_string(tested) + " vectors";
        out.push_back(c);
    }

    // Lemma C: constrained dual counts against the claimed-t bound.
    {
        CheckResult c{"Lemma C", true, ""};
        if (!enumerable) {
            c.detail = "skipped: dual dimension above enumeration cap";
        } else {
            const int rho_min_bound = m - t + 1;
            uint64_t boxes = 0;
            auto check_box = [&](const IndexVector& a) {
                const int a0 = a.a0();
                uint64_t cnt = dual.count_leq(a.a);
                if (a0 < rho_min_bound) {
                    // only the zero vector fits below the minimum weight
                    if (cnt != 1) c.pass = false;
                } else if (a0 - m + t < 63 && cnt > (uint64_t(1) << (a0 - m + t))) {
                    c.pass = false;
                }
                ++boxes;
            };
            double sweep_cost = std::ldexp(std::pow(m + 1.0, s), dual.dim());
            if (sweep_cost <= double(1 << 26)) {
                IndexVector a{std::vector<int>(s, 0)};
                do {
                    check_box(a);
                } while (c.pass && next_index(a.a, m));
            } else {
                Rng rng(seed, 2, 1);
                for (int k = 0; k < 64 && c.pass; ++k) {
                    IndexVector a{std::vector<int>(s, 0)};
                    for (int i = 0; i < s; ++i) a.a[i] = static_cast<int>(rng.next() % (m + 1));
                    check_box(a);
                }
            }
            c.detail = std::to_string(boxes) + " boxes";
        }
        out.push_back(c);
    }

    // Main part + residual: reconstruction is exact by construction; the
    // residual second moment obeys the (s 2^t)^2 bound within sampling error.
    {
        CheckResult c{"Lemma A", true, ""};
        const uint64_t n_mc = 2000;
        std::vector<double> e2(n_mc);
        for (uint64_t i = 0; i < n_mc; ++i) {
            std::vector<uint64_t> tm(s), y(s);
            sample_shift_point(s, m, seed, 2, i, tm.data(), y.data());
            ShiftVector tv{s, m, tm};
            DmDecomposition dec = dm_decomposition(net, tv, y);
            if (dec.residual != dec.d - dec.dm) c.pass = false; // defining identity
            double scale = std::max({1.0, std::abs(dec.d), std::abs(dec.dm)});
            if (std::abs(dec.dm + dec.residual - dec.d) > 4e-15 * scale) c.pass = false;
            e2[i] = dec.residual * dec.residual;
        }
        double mean = mean_of(e2);
        double se = stderr_of_mean(e2, mean);
        double bound = std::ldexp(static_cast<double>(s), t);
        bound *= bound;
        if (mean > bound + 3.0 * se) c.pass = false;
        c.detail = "E[resid^2]=" + fmt(mean) + " bound=" + fmt(bound) + "+3*" + fmt(se);
        out.push_back(c);
    }

    // Box identities at the claimed t: dual route equals the direct count,
    // lambda vanishes on large boxes and stays within 2^t, the grouped terms
    // and remainder resum to the main part, and every term obeys 2^{t+1}.
    {
        CheckResult c{"Lemma 1", true, ""};
        Rng rng(seed, 3, 0);
        const uint64_t zmask = m ? ((uint64_t(1) << m) - 1) : 0;
        uint64_t n_boxes = 1;
        for (int i = 0; i < s; ++i) {
            n_boxes *= static_cast<uint64_t>(m + 1);
            if (n_boxes > 4096) break;
        }
        const bool sweep_all = n_boxes <= 4096;
        for (int rep = 0; rep < 50 && c.pass; ++rep) {
            std::vector<uint64_t> z(s);
            for (int i = 0; i < s; ++i) z[i] = rng.next() & zmask;
            IndexVector a{std::vector<int>(s, 0)};
            int sampled = 0;
            do {
                if (!sweep_all) { // thin the sweep on large index spaces
                    if (++sampled > 256) break;
                    for (int i = 0; i < s; ++i) a.a[i] = static_cast<int>(rng.next() % (m + 1));
                }
                MicroLocal ml = micro_local_discrepancy(net, a, z);
                const int a0 = a.a0();
                if (enumerable) {
                    LambdaDual ld = lambda_via_dual(dual, a, z);
                    // exact scaled-integer comparison: count*2^{a0} - 2^m == 2^m * sum
                    if (a0 + m <= 62 &&
                        (ml.points_in_box << a0) - (int64_t(1) << m) !=
                            (int64_t(1) << m) * ld.signed_sum)
                        c.pass = false;
                }
                if (a0 <= m - t && ml.value() != 0.0) c.pass = false;
                if (std::abs(ml.value()) > std::ldexp(1.0, t)) c.pass = false;
            } while (sweep_all ? next_index(a.a, m) : c.pass);
            if (!sweep_all && !c.pass) break;
        }
        for (uint64_t i = 0; i < 20 && c.pass; ++i) {
            std::vector<uint64_t> tm(s), y(s);
            sample_shift_point(s, m, seed, 3, 1000 + i, tm.data(), y.data());
            ShiftVector tv{s, m, tm};
            MartingaleDecomposition md = martingale_terms(net, tv, y, t);
            double total = md.remainder;
            for (int k = 1; k <= m; ++k) total += md.dk[k];
            double scale = std::max(1.0, std::abs(md.dm));
            if (std::abs(total - md.dm) > 1e-9 * scale) c.pass = false;
            if (md.max_abs_psi > std::ldexp(1.0, t + 1)) c.pass = false;
        }
        c.detail = enumerable ? "dual route + direct route" : "direct route only (dual above cap)";
        out.push_back(c);
    }

    return out;
}

} // namespace dyadnet
