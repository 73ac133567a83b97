#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <string>
#include <vector>

#include "dyadnet/dyadnet.h"

namespace {

struct MsGuard {
    dn_matrixset* p = nullptr;
    ~MsGuard() { dn_matrixset_free(p); }
};
struct NetGuard {
    dn_net* p = nullptr;
    ~NetGuard() { dn_net_free(p); }
};
struct DualGuard {
    dn_dual* p = nullptr;
    ~DualGuard() { dn_dual_free(p); }
};

} // namespace

TEST_SUITE("capi") {

TEST_CASE("status strings exist for every code") {
    for (int st = 0; st <= 7; ++st)
        CHECK(std::strlen(dn_status_str(static_cast<dn_status>(st))) > 0);
    CHECK(std::strlen(dn_version()) > 0);
}

TEST_CASE("matrix set lifecycle and round trip") {
    MsGuard ms;
    REQUIRE(dn_matrixset_builtin("pascal", 2, 3, &ms.p) == DN_OK);
    int s = 0, m = 0;
    CHECK(dn_matrixset_dims(ms.p, &s, &m) == DN_OK);
    CHECK(s == 2);
    CHECK(m == 3);

    char* text = nullptr;
    REQUIRE(dn_matrixset_format(ms.p, &text) == DN_OK);
    MsGuard parsed;
    CHECK(dn_matrixset_parse(text, &parsed.p) == DN_OK);
    char* text2 = nullptr;
    CHECK(dn_matrixset_format(parsed.p, &text2) == DN_OK);
    CHECK(std::string(text) == text2);
    dn_string_free(text);
    dn_string_free(text2);

    int bit = -1;
    CHECK(dn_matrixset_entry(ms.p, 0, 0, 0, &bit) == DN_OK);
    CHECK(bit == 1); // identity block
    CHECK(dn_matrixset_entry(ms.p, 5, 0, 0, &bit) == DN_EINVAL);
    CHECK(dn_matrixset_entry(ms.p, 0, 9, 0, &bit) == DN_EINVAL);
}

TEST_CASE("error codes for bad inputs") {
    dn_matrixset* ms = nullptr;
    CHECK(dn_matrixset_builtin("nosuch", 2, 3, &ms) == DN_EINVAL);
    CHECK(dn_matrixset_builtin("vdc", 2, 3, &ms) == DN_EINVAL); // vdc is 1-D
    CHECK(dn_matrixset_builtin(nullptr, 2, 3, &ms) == DN_EINVAL);
    CHECK(dn_matrixset_parse("2 3\n101\n110\n", &ms) == DN_EPARSE); // not square
    dn_net* net = nullptr;
    CHECK(dn_net_parse("garbage", &net) == DN_EPARSE);
}

TEST_CASE("net generation, views and shifting") {
    MsGuard ms;
    REQUIRE(dn_matrixset_builtin("vdc", 1, 2, &ms.p) == DN_OK);
    NetGuard net;
    REQUIRE(dn_net_generate(ms.p, &net.p) == DN_OK);
    uint64_t n_points = 0;
    int s = 0, m = 0;
    CHECK(dn_net_dims(net.p, &s, &m, &n_points) == DN_OK);
    CHECK(n_points == 4);

    double x = -1;
    CHECK(dn_net_coord(net.p, 1, 0, &x) == DN_OK);
    CHECK(x == 0.5);
    CHECK(dn_net_coord(net.p, 4, 0, &x) == DN_EINVAL);
    uint64_t mask = 0;
    CHECK(dn_net_digit_mask(net.p, 2, 0, &mask) == DN_OK);
    CHECK(mask == 0b01); // 0.25

    uint64_t shift[] = {0b11};
    NetGuard shifted;
    REQUIRE(dn_net_shift(net.p, shift, &shifted.p) == DN_OK);
    CHECK(dn_net_coord(shifted.p, 0, 0, &x) == DN_OK);
    CHECK(x == 0.75);
    uint64_t too_big[] = {0b100};
    dn_net* bad = nullptr;
    CHECK(dn_net_shift(net.p, too_big, &bad) == DN_EINVAL);

    NetGuard ext;
    REQUIRE(dn_net_extend_index(net.p, &ext.p) == DN_OK);
    CHECK(dn_net_dims(ext.p, &s, &m, &n_points) == DN_OK);
    CHECK(s == 2);

    char* text = nullptr;
    REQUIRE(dn_net_format(net.p, &text) == DN_OK);
    NetGuard reparsed;
    CHECK(dn_net_parse(text, &reparsed.p) == DN_OK);
    char* text2 = nullptr;
    CHECK(dn_net_format(reparsed.p, &text2) == DN_OK);
    CHECK(std::string(text) == text2);
    dn_string_free(text);
    dn_string_free(text2);
}

TEST_CASE("sequence prefixes through the C surface") {
    NetGuard block;
    REQUIRE(dn_net_sequence_prefix("pascal", 2, 1, 3, &block.p) == DN_OK);
    uint64_t n_points = 0;
    int s = 0, m = 0;
    CHECK(dn_net_dims(block.p, &s, &m, &n_points) == DN_OK);
    CHECK(n_points == 8);
    CHECK(dn_net_sequence_prefix("pascal", 2, uint64_t(1) << 60, 10, &block.p) == DN_EINVAL);
}

TEST_CASE("truncation") {
    double out = -1;
    CHECK(dn_truncate(1.0 / 3.0, 2, &out) == DN_OK);
    CHECK(out == 0.25);
    CHECK(dn_truncate(1.5, 2, &out) == DN_EINVAL);
}

TEST_CASE("t parameter and dual queries") {
    MsGuard ms;
    REQUIRE(dn_matrixset_builtin("diag", 2, 2, &ms.p) == DN_OK);
    int t = -1;
    CHECK(dn_t_parameter(ms.p, DN_T_DUAL_WEIGHT, &t) == DN_OK);
    CHECK(t == 1);
    CHECK(dn_t_parameter(ms.p, DN_T_RANK_COMPOSITION, &t) == DN_OK);
    CHECK(t == 1);
    CHECK(dn_t_parameter(ms.p, DN_T_DIRECT_COUNTING, &t) == DN_OK);
    CHECK(t == 1);

    DualGuard d;
    REQUIRE(dn_dual_build(ms.p, &d.p) == DN_OK);
    int dim = -1;
    CHECK(dn_dual_dim(d.p, &dim) == DN_OK);
    CHECK(dim == 2);
    int w = 0, inf = -1;
    CHECK(dn_dual_min_weight(d.p, &w, &inf) == DN_OK);
    CHECK(w == 2);
    CHECK(inf == 0);

    std::vector<uint64_t> hist(2 * 2 + 1, 0);
    CHECK(dn_dual_weight_histogram(d.p, hist.data()) == DN_OK);
    CHECK(hist[0] == 1);
    CHECK(hist[2] + hist[3] + hist[4] == 3);

    uint64_t member[] = {0b10, 0b10};
    int in = 0;
    CHECK(dn_dual_contains(d.p, member, &in) == DN_OK);
    CHECK(in == 1);
    int a[] = {2, 2};
    uint64_t count = 0;
    CHECK(dn_dual_count_leq(d.p, a, &count) == DN_OK);
    CHECK(count == 4);
}

TEST_CASE("discrepancy surface") {
    MsGuard ms;
    REQUIRE(dn_matrixset_builtin("pascal", 2, 3, &ms.p) == DN_OK);
    NetGuard net;
    REQUIRE(dn_net_generate(ms.p, &net.p) == DN_OK);

    double y[] = {0.5, 0.5};
    double d = 0;
    CHECK(dn_local_discrepancy(net.p, y, &d) == DN_OK);
    double bad_y[] = {0.0, 0.5};
    CHECK(dn_local_discrepancy(net.p, bad_y, &d) == DN_EINVAL);

    double l2 = 0;
    CHECK(dn_l2_discrepancy_sq(net.p, &l2) == DN_OK);
    CHECK(l2 > 0);

    DualGuard dual;
    REQUIRE(dn_dual_build(ms.p, &dual.p) == DN_OK);
    int a[] = {2, 2};
    uint64_t z[] = {0b101, 0b010};
    int64_t count = 0, signed_sum = 0;
    double lam1 = 0, lam2 = 0;
    CHECK(dn_micro_local(net.p, a, z, &count, &lam1) == DN_OK);
    CHECK(dn_lambda_dual(dual.p, a, z, &signed_sum, &lam2) == DN_OK);
    CHECK(lam1 == lam2);

    uint64_t v0[] = {0, 0};
    int64_t cs = 0;
    CHECK(dn_character_sum(net.p, v0, &cs) == DN_OK);
    CHECK(cs == 8);

    // decomposition: groups plus remainder resum to the main part
    uint64_t tm[] = {0b001, 0b110};
    uint64_t yf[] = {0x8000000000000000ull, 0x4000000000000000ull};
    std::vector<double> dk(4, 0);
    std::vector<uint64_t> sizes(4, 0);
    double rem = 0, dm = 0, resid = 0;
    uint64_t rem_size = 0;
    CHECK(dn_decompose(net.p, tm, yf, 0, dk.data(), sizes.data(), &rem, &rem_size, &dm,
                       &resid) == DN_OK);
    double total = rem;
    for (int k = 1; k <= 3; ++k) total += dk[k];
    CHECK(total == doctest::Approx(dm).epsilon(1e-12));
}

TEST_CASE("chi_p and the normal cdf") {
    double v = 0;
    CHECK(dn_chi_p(4.0, &v) == DN_OK);
    CHECK(v == 3.0);
    CHECK(dn_chi_p(-1.0, &v) == DN_EINVAL);
    CHECK(dn_std_normal_cdf(0.0) == 0.5);
}

TEST_CASE("moment estimation and caps") {
    MsGuard ms;
    REQUIRE(dn_matrixset_builtin("pascal", 2, 3, &ms.p) == DN_OK);
    NetGuard net;
    REQUIRE(dn_net_generate(ms.p, &net.p) == DN_OK);
    double value = 0, se = -1;
    CHECK(dn_estimate_msp(net.p, 2.0, DN_MSP_EXACT_ENUMERATION, 0, 1, 1, &value, &se) == DN_OK);
    CHECK(se == 0.0);
    CHECK(dn_estimate_msp(net.p, 1.0, DN_MSP_WARNOCK_SHIFT_AVG, 10, 1, 1, &value, &se) ==
          DN_EINVAL);

    MsGuard big;
    REQUIRE(dn_matrixset_builtin("pascal", 2, 9, &big.p) == DN_OK);
    NetGuard bignet;
    REQUIRE(dn_net_generate(big.p, &bignet.p) == DN_OK);
    CHECK(dn_estimate_msp(bignet.p, 2.0, DN_MSP_EXACT_ENUMERATION, 0, 1, 1, &value, &se) ==
          DN_ECAP);
}

TEST_CASE("clt runs are deterministic across calls and threads") {
    MsGuard ms;
    REQUIRE(dn_matrixset_builtin("pascal", 2, 4, &ms.p) == DN_OK);
    NetGuard net;
    REQUIRE(dn_net_generate(ms.p, &net.p) == DN_OK);
    double norm = 0, se = 0;
    REQUIRE(dn_estimate_msp(net.p, 2.0, DN_MSP_EXACT_ENUMERATION, 0, 1, 1, &norm, &se) == DN_OK);

    dn_clt_report *r1 = nullptr, *r2 = nullptr;
    REQUIRE(dn_clt_run(net.p, 20000, 42, norm, 1, &r1) == DN_OK);
    REQUIRE(dn_clt_run(net.p, 20000, 42, norm, 4, &r2) == DN_OK);
    double ks1 = 0, ks2 = 0;
    dn_clt_ks(r1, &ks1);
    dn_clt_ks(r2, &ks2);
    CHECK(ks1 == ks2);
    for (int p = 1; p <= 4; ++p) {
        double m1 = 0, m2 = 0;
        CHECK(dn_clt_moment(r1, p, &m1) == DN_OK);
        CHECK(dn_clt_moment(r2, p, &m2) == DN_OK);
        CHECK(m1 == m2);
    }
    std::vector<uint64_t> h1(DN_HIST_BINS), h2(DN_HIST_BINS);
    uint64_t c1 = 0, c2 = 0;
    CHECK(dn_clt_histogram(r1, h1.data(), &c1) == DN_OK);
    CHECK(dn_clt_histogram(r2, h2.data(), &c2) == DN_OK);
    CHECK(h1 == h2);
    CHECK(c1 == c2);
    double bad = 0;
    CHECK(dn_clt_moment(r1, 5, &bad) == DN_EINVAL);
    dn_clt_report_free(r1);
    dn_clt_report_free(r2);
}

TEST_CASE("moment ratios through the C surface") {
    MsGuard ms;
    REQUIRE(dn_matrixset_builtin("pascal", 2, 4, &ms.p) == DN_OK);
    NetGuard net;
    REQUIRE(dn_net_generate(ms.p, &net.p) == DN_OK);
    double ps[] = {2.0, 4.0};
    double mv[2], mse[2], rraw[2], rpow[2], rpse[2], chis[2], m2 = 0;
    REQUIRE(dn_moment_ratios(net.p, ps, 2, 20000, 7, 1, mv, mse, rraw, rpow, rpse, chis, &m2) ==
            DN_OK);
    CHECK(rpow[0] == doctest::Approx(1.0));
    CHECK(chis[0] == 1.0);
    CHECK(chis[1] == 3.0);
    CHECK(mv[0] == doctest::Approx(m2));
}

TEST_CASE("verify through the C surface") {
    MsGuard ms;
    REQUIRE(dn_matrixset_builtin("pascal", 2, 3, &ms.p) == DN_OK);
    char* report = nullptr;
    int fails = -1;
    CHECK(dn_verify(ms.p, -1, 11, &report, &fails) == DN_OK);
    CHECK(fails == 0);
    CHECK(std::string(report).find("PASS") != std::string::npos);
    dn_string_free(report);

    MsGuard diag;
    REQUIRE(dn_matrixset_builtin("diag", 2, 3, &diag.p) == DN_OK);
    report = nullptr;
    CHECK(dn_verify(diag.p, 0, 11, &report, &fails) == DN_EVERIFY);
    CHECK(fails > 0);
    CHECK(std::string(report).find("FAIL Lemma B") != std::string::npos);
    dn_string_free(report);
}

TEST_CASE("sampling stream is stable") {
    uint64_t t1[2], y1[2], t2[2], y2[2];
    CHECK(dn_sample_shift_point(2, 4, 99, 5, t1, y1) == DN_OK);
    CHECK(dn_sample_shift_point(2, 4, 99, 5, t2, y2) == DN_OK);
    CHECK(t1[0] == t2[0]);
    CHECK(y1[1] == y2[1]);
    CHECK(t1[0] < 16);
    CHECK(dn_sample_shift_point(0, 4, 99, 5, t1, y1) == DN_EINVAL);
}

} // TEST_SUITE
