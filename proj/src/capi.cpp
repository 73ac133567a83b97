#include "dyadnet/dyadnet.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "cltlab.hpp"
#include "discrepancy.hpp"
#include "dual.hpp"
#include "formats.hpp"
#include "net.hpp"

using namespace dyadnet;

struct dn_matrixset {
    GeneratingMatrixSet rep;
};
struct dn_net {
    DigitalNet rep;
};
struct dn_dual {
    DualSpace rep;
};
struct dn_clt_report {
    CltReport rep;
};

namespace {

dn_status status_of(errc code) {
    switch (code) {
    case errc::invalid_argument: return DN_EINVAL;
    case errc::parse_error: return DN_EPARSE;
    case errc::cap_exceeded: return DN_ECAP;
    case errc::io_error: return DN_EIO;
    case errc::verify_failed: return DN_EVERIFY;
    }
    return DN_EINTERNAL;
}

template <typename F>
dn_status guarded(F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        return DN_ENOMEM;
    } catch (...) {
        return DN_EINTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

} // namespace

extern "C" {

const char* dn_status_str(dn_status st) {
    switch (st) {
    case DN_OK: return "ok";
    case DN_EINVAL: return "invalid argument or precondition";
    case DN_EPARSE: return "parse error";
    case DN_ECAP: return "cap exceeded";
    case DN_EIO: return "i/o error";
    case DN_EVERIFY: return "verification failed";
    case DN_ENOMEM: return "out of memory";
    case DN_EINTERNAL: return "internal error";
    }
    return "?";
}

const char* dn_version(void) { return "1.0.0"; }

void dn_string_free(char* s) { std::free(s); }

dn_status dn_matrixset_builtin(const char* family, int s, int m, dn_matrixset** out) {
    if (!family || !out) return DN_EINVAL;
    return guarded([&] {
        auto ms = std::make_unique<dn_matrixset>();
        ms->rep = builtin_matrices(family, s, m);
        *out = ms.release();
        return DN_OK;
    });
}

dn_status dn_matrixset_parse(const char* text, dn_matrixset** out) {
    if (!text || !out) return DN_EINVAL;
    return guarded([&] {
        auto ms = std::make_unique<dn_matrixset>();
        ms->rep = parse_matrix_set(text);
        *out = ms.release();
        return DN_OK;
    });
}

dn_status dn_matrixset_format(const dn_matrixset* ms, char** out) {
    if (!ms || !out) return DN_EINVAL;
    return guarded([&] {
        *out = dup_string(format_matrix_set(ms->rep));
        return DN_OK;
    });
}

dn_status dn_matrixset_dims(const dn_matrixset* ms, int* s, int* m) {
    if (!ms) return DN_EINVAL;
    if (s) *s = ms->rep.s;
    if (m) *m = ms->rep.m;
    return DN_OK;
}

dn_status dn_matrixset_entry(const dn_matrixset* ms, int i, int row, int col, int* bit) {
    if (!ms || !bit) return DN_EINVAL;
    return guarded([&] {
        if (i < 0 || i >= ms->rep.s) return DN_EINVAL;
        *bit = ms->rep.mats[i].entry(row, col) ? 1 : 0;
        return DN_OK;
    });
}

void dn_matrixset_free(dn_matrixset* ms) { delete ms; }

dn_status dn_net_generate(const dn_matrixset* ms, dn_net** out) {
    if (!ms || !out) return DN_EINVAL;
    return guarded([&] {
        auto net = std::make_unique<dn_net>();
        net->rep = generate_net(ms->rep);
        *out = net.release();
        return DN_OK;
    });
}

dn_status dn_net_sequence_prefix(const char* family, int s, uint64_t k, int m, dn_net** out) {
    if (!family || !out) return DN_EINVAL;
    return guarded([&] {
        SequenceGenerator gen = builtin_sequence(family, s, kMaxDigits);
        auto net = std::make_unique<dn_net>();
        net->rep = sequence_prefix(gen, k, m);
        *out = net.release();
        return DN_OK;
    });
}

dn_status dn_net_parse(const char* text, dn_net** out) {
    if (!text || !out) return DN_EINVAL;
    return guarded([&] {
        auto net = std::make_unique<dn_net>();
        net->rep = parse_net(text);
        *out = net.release();
        return DN_OK;
    });
}

dn_status dn_net_format(const dn_net* net, char** out) {
    if (!net || !out) return DN_EINVAL;
    return guarded([&] {
        *out = dup_string(format_net(net->rep));
        return DN_OK;
    });
}

dn_status dn_net_dims(const dn_net* net, int* s, int* m, uint64_t* n_points) {
    if (!net) return DN_EINVAL;
    if (s) *s = net->rep.s();
    if (m) *m = net->rep.m();
    if (n_points) *n_points = net->rep.size();
    return DN_OK;
}

dn_status dn_net_coord(const dn_net* net, uint64_t n, int i, double* out) {
    if (!net || !out) return DN_EINVAL;
    if (n >= net->rep.size() || i < 0 || i >= net->rep.s()) return DN_EINVAL;
    *out = net->rep.coord(n, i);
    return DN_OK;
}

dn_status dn_net_digit_mask(const dn_net* net, uint64_t n, int i, uint64_t* out) {
    if (!net || !out) return DN_EINVAL;
    if (n >= net->rep.size() || i < 0 || i >= net->rep.s()) return DN_EINVAL;
    *out = net->rep.num(n, i);
    return DN_OK;
}

dn_status dn_net_shift(const dn_net* net, const uint64_t* t_masks, dn_net** out) {
    if (!net || !t_masks || !out) return DN_EINVAL;
    return guarded([&] {
        ShiftVector t{net->rep.s(), net->rep.m(),
                      std::vector<uint64_t>(t_masks, t_masks + net->rep.s())};
        const uint64_t lim = uint64_t(1) << net->rep.m();
        for (uint64_t d : t.digits)
            if (d >= lim) return DN_EINVAL;
        auto shifted = std::make_unique<dn_net>();
        shifted->rep = digital_shift(net->rep, t);
        *out = shifted.release();
        return DN_OK;
    });
}

dn_status dn_net_extend_index(const dn_net* net, dn_net** out) {
    if (!net || !out) return DN_EINVAL;
    return guarded([&] {
        auto ext = std::make_unique<dn_net>();
        ext->rep = extend_with_index(net->rep);
        *out = ext.release();
        return DN_OK;
    });
}

void dn_net_free(dn_net* net) { delete net; }

dn_status dn_truncate(double y, int m, double* out) {
    if (!out) return DN_EINVAL;
    return guarded([&] {
        *out = truncate(y, m);
        return DN_OK;
    });
}

dn_status dn_t_parameter(const dn_matrixset* ms, dn_t_method method, int* t) {
    if (!ms || !t) return DN_EINVAL;
    return guarded([&] {
        TParameter r;
        switch (method) {
        case DN_T_DUAL_WEIGHT: r = t_parameter_dual_weight(ms->rep); break;
        case DN_T_RANK_COMPOSITION: r = t_parameter_rank_composition(ms->rep); break;
        case DN_T_DIRECT_COUNTING: r = t_parameter_counting(generate_net(ms->rep)); break;
        default: return DN_EINVAL;
        }
        *t = r.value;
        return DN_OK;
    });
}

dn_status dn_dual_build(const dn_matrixset* ms, dn_dual** out) {
    if (!ms || !out) return DN_EINVAL;
    return guarded([&] {
        auto d = std::make_unique<dn_dual>();
        d->rep = DualSpace::from_matrices(ms->rep);
        *out = d.release();
        return DN_OK;
    });
}

dn_status dn_dual_dim(const dn_dual* d, int* dim) {
    if (!d || !dim) return DN_EINVAL;
    *dim = d->rep.dim();
    return DN_OK;
}

dn_status dn_dual_min_weight(const dn_dual* d, int* weight, int* infinite) {
    if (!d || !weight || !infinite) return DN_EINVAL;
    return guarded([&] {
        DualSpace::MinWeight w = d->rep.min_weight();
        *weight = w.weight;
        *infinite = w.infinite ? 1 : 0;
        return DN_OK;
    });
}

dn_status dn_dual_weight_histogram(const dn_dual* d, uint64_t* counts) {
    if (!d || !counts) return DN_EINVAL;
    return guarded([&] {
        std::vector<uint64_t> hist = d->rep.weight_histogram();
        std::memcpy(counts, hist.data(), hist.size() * sizeof(uint64_t));
        return DN_OK;
    });
}

dn_status dn_dual_contains(const dn_dual* d, const uint64_t* masks, int* out) {
    if (!d || !masks || !out) return DN_EINVAL;
    return guarded([&] {
        std::vector<uint64_t> v(masks, masks + d->rep.s());
        *out = d->rep.contains_masks(v) ? 1 : 0;
        return DN_OK;
    });
}

dn_status dn_dual_count_leq(const dn_dual* d, const int* a, uint64_t* count) {
    if (!d || !a || !count) return DN_EINVAL;
    return guarded([&] {
        std::vector<int> av(a, a + d->rep.s());
        *count = d->rep.count_leq(av);
        return DN_OK;
    });
}

void dn_dual_free(dn_dual* d) { delete d; }

dn_status dn_character_sum(const dn_net* net, const uint64_t* masks, int64_t* out) {
    if (!net || !masks || !out) return DN_EINVAL;
    return guarded([&] {
        std::vector<uint64_t> v(masks, masks + net->rep.s());
        *out = character_sum(net->rep, v);
        return DN_OK;
    });
}

dn_status dn_local_discrepancy(const dn_net* net, const double* y, double* out) {
    if (!net || !y || !out) return DN_EINVAL;
    return guarded([&] {
        *out = local_discrepancy(net->rep,
                                 std::span<const double>(y, static_cast<std::size_t>(net->rep.s())));
        return DN_OK;
    });
}

dn_status dn_l2_discrepancy_sq(const dn_net* net, double* out) {
    if (!net || !out) return DN_EINVAL;
    return guarded([&] {
        *out = l2_discrepancy_sq(net->rep);
        return DN_OK;
    });
}

dn_status dn_micro_local(const dn_net* net, const int* a, const uint64_t* z_masks,
                         int64_t* points_in_box, double* lambda) {
    if (!net || !a || !z_masks) return DN_EINVAL;
    return guarded([&] {
        IndexVector av{std::vector<int>(a, a + net->rep.s())};
        std::vector<uint64_t> z(z_masks, z_masks + net->rep.s());
        MicroLocal ml = micro_local_discrepancy(net->rep, av, z);
        if (points_in_box) *points_in_box = ml.points_in_box;
        if (lambda) *lambda = ml.value();
        return DN_OK;
    });
}

dn_status dn_lambda_dual(const dn_dual* d, const int* a, const uint64_t* z_masks,
                         int64_t* signed_sum, double* lambda) {
    if (!d || !a || !z_masks) return DN_EINVAL;
    return guarded([&] {
        IndexVector av{std::vector<int>(a, a + d->rep.s())};
        std::vector<uint64_t> z(z_masks, z_masks + d->rep.s());
        LambdaDual ld = lambda_via_dual(d->rep, av, z);
        if (signed_sum) *signed_sum = ld.signed_sum;
        if (lambda) *lambda = ld.value();
        return DN_OK;
    });
}

dn_status dn_decompose(const dn_net* net, const uint64_t* t_masks, const uint64_t* y_frac,
                       int t_param, double* dk, uint64_t* family_sizes, double* remainder,
                       uint64_t* remainder_size, double* dm, double* residual) {
    if (!net || !t_masks || !y_frac) return DN_EINVAL;
    return guarded([&] {
        const int s = net->rep.s();
        const int m = net->rep.m();
        ShiftVector t{s, m, std::vector<uint64_t>(t_masks, t_masks + s)};
        std::span<const uint64_t> y(y_frac, static_cast<std::size_t>(s));
        MartingaleDecomposition md = martingale_terms(net->rep, t, y, t_param);
        if (dk)
            for (int k = 0; k <= m; ++k) dk[k] = md.dk[k];
        if (family_sizes)
            for (int k = 0; k <= m; ++k) family_sizes[k] = md.family_sizes[k];
        if (remainder) *remainder = md.remainder;
        if (remainder_size) *remainder_size = md.remainder_size;
        if (dm) *dm = md.dm;
        if (residual) {
            DmDecomposition dec = dm_decomposition(net->rep, t, y);
            *residual = dec.residual;
        }
        return DN_OK;
    });
}

dn_status dn_chi_p(double p, double* out) {
    if (!out) return DN_EINVAL;
    return guarded([&] {
        *out = chi_p(p);
        return DN_OK;
    });
}

double dn_std_normal_cdf(double w) { return std_normal_cdf(w); }

dn_status dn_sample_shift_point(int s, int m, uint64_t seed, uint64_t index,
                                uint64_t* t_masks, uint64_t* y_frac) {
    if (s < 1 || m < 0 || m > kMaxDigits || !t_masks || !y_frac) return DN_EINVAL;
    sample_shift_point(s, m, seed, 0, index, t_masks, y_frac);
    return DN_OK;
}

dn_status dn_estimate_msp(const dn_net* net, double p, dn_moment_method method,
                          uint64_t n_samples, uint64_t seed, int threads, double* value,
                          double* std_error) {
    if (!net || !value) return DN_EINVAL;
    return guarded([&] {
        MomentMethod mm;
        switch (method) {
        case DN_MSP_EXACT_ENUMERATION: mm = MomentMethod::exact_enumeration; break;
        case DN_MSP_WARNOCK_SHIFT_AVG: mm = MomentMethod::exact_warnock_shift_avg; break;
        case DN_MSP_MONTE_CARLO: mm = MomentMethod::monte_carlo; break;
        default: return DN_EINVAL;
        }
        MomentEstimate est = estimate_M_sp(net->rep, p, mm, n_samples, seed,
                                           threads > 0 ? threads : 1);
        *value = est.value;
        if (std_error) *std_error = est.std_error;
        return DN_OK;
    });
}

dn_status dn_clt_run(const dn_net* net, uint64_t n_samples, uint64_t seed,
                     double normalizer_value, int threads, dn_clt_report** out) {
    if (!net || !out) return DN_EINVAL;
    return guarded([&] {
        MomentEstimate norm;
        norm.p = 2.0;
        norm.value = normalizer_value;
        auto rep = std::make_unique<dn_clt_report>();
        rep->rep = clt_experiment(net->rep, n_samples, seed, norm, threads > 0 ? threads : 1);
        *out = rep.release();
        return DN_OK;
    });
}

dn_status dn_clt_ks(const dn_clt_report* r, double* out) {
    if (!r || !out) return DN_EINVAL;
    *out = r->rep.ks;
    return DN_OK;
}

dn_status dn_clt_moment(const dn_clt_report* r, int p, double* out) {
    if (!r || !out || p < 1 || p > 4) return DN_EINVAL;
    *out = r->rep.abs_moments[p];
    return DN_OK;
}

dn_status dn_clt_histogram(const dn_clt_report* r, uint64_t* bins, uint64_t* clipped) {
    if (!r || !bins) return DN_EINVAL;
    std::memcpy(bins, r->rep.histogram.data(), sizeof(uint64_t) * kHistBins);
    if (clipped) *clipped = r->rep.hist_clipped;
    return DN_OK;
}

void dn_clt_report_free(dn_clt_report* r) { delete r; }

dn_status dn_moment_ratios(const dn_net* net, const double* ps, int np, uint64_t n_samples,
                           uint64_t seed, int threads, double* m_values, double* m_stderrs,
                           double* ratios_raw, double* ratios_pow, double* ratios_pow_stderr,
                           double* chis, double* m2_out) {
    if (!net || !ps || np < 1) return DN_EINVAL;
    return guarded([&] {
        MomentRatioReport rep = moment_ratio_experiment(
            net->rep, std::span<const double>(ps, static_cast<std::size_t>(np)), n_samples,
            seed, threads > 0 ? threads : 1);
        for (int i = 0; i < np; ++i) {
            const MomentRatio& r = rep.ratios[i];
            if (m_values) m_values[i] = r.m_value;
            if (m_stderrs) m_stderrs[i] = r.m_stderr;
            if (ratios_raw) ratios_raw[i] = r.ratio_raw;
            if (ratios_pow) ratios_pow[i] = r.ratio_pow;
            if (ratios_pow_stderr) ratios_pow_stderr[i] = r.ratio_pow_stderr;
            if (chis) chis[i] = r.chi;
        }
        if (m2_out) *m2_out = rep.m2;
        return DN_OK;
    });
}

dn_status dn_verify(const dn_matrixset* ms, int claimed_t, uint64_t seed, char** report,
                    int* n_failures) {
    if (!ms) return DN_EINVAL;
    return guarded([&] {
        std::vector<CheckResult> checks = verify_net(ms->rep, claimed_t, seed);
        int fails = 0;
        std::string text;
        for (const CheckResult& c : checks) {
            fails += c.pass ? 0 : 1;
            text += c.pass ? "PASS " : "FAIL ";
            text += c.name;
            if (!c.detail.empty()) {
                text += ": ";
                text += c.detail;
            }
            text += '\n';
        }
        if (report) *report = dup_string(text);
        if (n_failures) *n_failures = fails;
        return fails == 0 ? DN_OK : DN_EVERIFY;
    });
}

} // extern "C"
