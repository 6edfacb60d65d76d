#include "nmc/params.hpp"

#include "nmc/extractors.hpp"
#include "nmc/field.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nmc {

namespace {

using json = nlohmann::json;

class Checker {
public:
    void require(bool ok, const std::string& label, const std::string& message) {
        if (!ok) out.push_back({label, message});
    }
    std::vector<Violation> out;
};

bool table_field(unsigned b) { return b == 3 || b == 4 || b == 8 || b == 16; }

std::string str(std::size_t v) { return std::to_string(v); }

void check_code(Checker& c, std::size_t msg_bits, unsigned b, std::size_t rs_len, std::size_t rand_bits,
                std::size_t samples) {
    c.require(table_field(b), "code.field", "field degree must be one of 3, 4, 8, 16");
    if (!table_field(b)) return;
    c.require(msg_bits % b == 0, "code.symbols", "encoded part of " + str(msg_bits) + " bits is not a whole number of " + str(b) + "-bit symbols");
    std::size_t k = msg_bits / b;
    c.require(rs_len <= (std::size_t{1} << b) - 1, "code.length", "RS length exceeds the number of nonzero field elements");
    c.require(k < rs_len, "code.length", "RS length " + str(rs_len) + " must exceed the message length " + str(k) + " symbols");
    c.require(samples <= k, "code.samples", "more sampled symbols than message symbols");
    auto prob = sampler_problem({rand_bits, rs_len, samples});
    c.require(prob.empty(), "code.sampler", prob);
}

}  // namespace

std::vector<Violation> validate(const SeedlessParams& p) {
    Checker c;
    c.require(p.n1 <= p.n && p.n2 == p.n - p.n1, "shape.n2", "n2 must equal n - n1");
    c.require(p.n3 >= 1 && p.n3 <= 63 && p.n1 % std::max<std::size_t>(p.n3, 1) == 0, "shape.ip",
              "inner-product output width must divide n1 and lie in 1..63");
    check_code(c, p.n2, p.field_b, p.rs_len, p.n3, p.samples);
    c.require(p.ell == 2 * (p.n1 + p.samples * p.field_b), "shape.ell", "ell must equal |z| = 2(n1 + samples*b) = " + str(2 * (p.n1 + p.samples * p.field_b)));
    c.require(p.m >= 1 && p.m <= p.n_q && p.n_q <= p.n, "shape.widths", "need 1 <= m <= n_q <= n");
    c.require(p.m_out >= 1 && p.m_out <= p.n_q, "shape.m_out", "output width must lie in 1..n_q");
    c.require(p.t >= 1, "shape.t", "tampering degree must be at least 1");
    c.require(p.k_y <= p.n && p.k_w <= p.n, "entropy.range", "source entropies cannot exceed n");
    c.require(p.lambda + p.k_y == p.n, "entropy.lambda", "lambda must equal n - k_y");
    const std::size_t L = p.log_inv_eps;
    std::size_t ky_need = std::max(p.k, p.k1) + 20 * p.ell * (p.t * p.n_q + p.t * p.m + L);
    c.require(p.k_y >= ky_need, "main_lemma_1.k_y", "k_y >= max(k,k1) + 20*ell*(t*n_q + t*m + log(1/eps)) needs " + str(ky_need));
    std::size_t kw_need = p.k + 20 * p.ell * (p.t * p.m + L);
    c.require(p.k_w >= kw_need, "main_lemma_1.k_w", "k_w >= k + 20*ell*(t*m + log(1/eps)) needs " + str(kw_need));
    std::size_t nq_need = p.k + 10 * p.t * p.m + 2 * L + p.lambda;
    c.require(p.n_q >= nq_need, "main_lemma_1.n_q", "n_q >= k + 10*t*m + 2*log(1/eps) + lambda needs " + str(nq_need));
    return c.out;
}

std::vector<Violation> validate(const SeededParams& p) {
    Checker c;
    c.require(p.n1 >= 1 && p.n1 <= p.d && p.n1 <= p.n, "shape.n1", "slice width must lie in 1..min(n, d)");
    check_code(c, p.d, p.field_b, p.rs_len, p.n1, p.samples);
    c.require(p.ell == p.n1 + p.samples * p.field_b, "shape.ell", "ell must equal |z| = n1 + samples*b = " + str(p.n1 + p.samples * p.field_b));
    c.require(p.n4 >= 1 && p.n4 <= p.n3 && p.n3 <= p.d, "shape.widths", "need 1 <= n4 <= n3 <= d");
    c.require(p.n5 >= 1 && p.n5 <= p.n, "shape.n5", "output width must lie in 1..n");
    c.require(p.k <= p.n, "entropy.range", "k cannot exceed n");
    c.require(p.t >= 1, "shape.t", "tampering degree must be at least 1");
    const std::size_t L = p.log_inv_eps;
    std::size_t d_need = 20 * p.ell * (p.t * (p.n3 + p.n4) + L);
    c.require(p.d / 2 > d_need, "seeded.d", "d/2 > 20*ell*(t*(n3+n4) + log(1/eps)) needs d/2 > " + str(d_need));
    // k - 2 n1 >= n3/4 + 20 ell (t n4 + L), compared as 4(k - 2 n1) >= n3 + 80 ell (t n4 + L)
    std::size_t rhs_k = p.n3 + 80 * p.ell * (p.t * p.n4 + L);
    c.require(p.k >= 2 * p.n1 && 4 * (p.k - 2 * p.n1) >= rhs_k, "seeded.k", "k - 2*n1 >= n3/4 + 20*ell*(t*n4 + log(1/eps))");
    // n3 - 2 n1 >= (4/3)(10 t n4 + 2L), compared as 3(n3 - 2 n1) >= 4(10 t n4 + 2L)
    c.require(p.n3 >= 2 * p.n1 && 3 * (p.n3 - 2 * p.n1) >= 4 * (10 * p.t * p.n4 + 2 * L), "seeded.n3",
              "n3 - 2*n1 >= (4/3)*(10*t*n4 + 2*log(1/eps))");
    return c.out;
}

std::vector<Violation> validate(const InvertibleParams& p) {
    Checker c;
    c.require(p.t >= 1 && p.C >= 1 && p.ell >= 1, "shape.counts", "t, C and ell must be positive");
    c.require(p.n1 <= p.n && p.n2 == p.n - p.n1, "shape.n2", "n2 must equal n - n1");
    c.require(p.n1 + p.n6 <= p.n && p.n7 == p.n - p.n1 - p.n6, "shape.n7", "n7 must equal n - n1 - n6");
    c.require(p.n3 >= 1 && p.n3 <= 63 && p.n1 % std::max<std::size_t>(p.n3, 1) == 0, "ip1.widths",
              "IP1 output width must divide n1 and lie in 1..63");
    c.require(p.field_b && p.n4 * p.field_b == p.n2, "code.n4", "n4 must equal n2 / b exactly");
    check_code(c, p.n2, p.field_b, p.rs_len, p.n3, p.n5);
    c.require(p.ell == 2 * (p.n1 + p.n5 * p.field_b), "shape.ell", "ell must equal |z| = 2(n1 + n5*b) = " + str(2 * (p.n1 + p.n5 * p.field_b)));
    bool halving = p.d5 >= 1 && p.d4 == 2 * p.d5 && p.d3 == 2 * p.d4 && p.d2 == 2 * p.d3 && p.d1 == 2 * p.d2;
    c.require(halving, "widths.halving", "need d1 = 2*d2 = 4*d3 = 8*d4 = 16*d5 with d5 >= 1");
    c.require(4 * p.C * p.t * p.d5 == 2 * p.n_q, "blocks.arith", "4*C*t*d5 must equal 2*n_q");
    c.require(p.d1 <= p.n_q, "widths.d1", "Slice(q_{h,1}, d1) needs d1 <= n_q");
    c.require(p.n_q >= 1 && (2 * p.n_q <= 63 || 2 * p.n_q == 128), "ip2.field",
              "IP2 works over GF(2^(2 n_q)); need 2*n_q <= 63 or 2*n_q = 128");
    c.require(p.n_q >= 1 && p.n6 % (2 * std::max<std::size_t>(p.n_q, 1)) == 0 && p.n6 >= 4 * p.n_q, "ip2.widths",
              "n6 must be a multiple of 2*n_q holding at least two symbols");
    c.require(p.n7 == p.x_blocks() * p.n_x, "blocks.x", "n7 must equal 8*ell*n_x");
    c.require(p.n7 == p.y_blocks() * p.n_y, "blocks.y", "n7 must equal 16*C*t*ell*n_y");
    const std::array<std::size_t, 4> src{p.n_x, p.n_q, p.n_x, p.n_y};
    const std::array<std::size_t, 4> seed{p.d1, p.d2, p.d3, p.d4};
    for (int j = 0; j < 4; ++j) {
        std::string label = "iext" + std::to_string(j + 1);
        if (halving) {
            auto prob = iext_problem({src[j], seed[j], p.samp_bits[j]});
            c.require(prob.empty(), label + ".spec", prob);
        }
        c.require(10 * p.samp_bits[j] < seed[j], label + ".slice", "sampler slice must be below a tenth of the seed length");
    }
    if (table_field(p.field_b) && p.field_b && p.n_x) {
        std::size_t used = p.n6 + 4 * p.ell * p.n_x;
        c.require(used % p.field_b == 0, "rs.alignment", "the used part of x2 must end on a symbol boundary");
        std::size_t free_syms = (4 * p.ell * p.n_x) / p.field_b;
        c.require(free_syms > p.n5, "rs.free", "free symbols (" + str(free_syms) + ") must outnumber sampled constraints (" + str(p.n5) + ")");
    }
    return c.out;
}

#define NMC_FIELD(name) {#name, p.name}

void to_json(json& j, const SeedlessParams& p) {
    j = json{{"kind", "seedless"}, NMC_FIELD(n), NMC_FIELD(n1), NMC_FIELD(n2), NMC_FIELD(n3),
             NMC_FIELD(field_b), NMC_FIELD(rs_len), NMC_FIELD(samples), NMC_FIELD(ell), NMC_FIELD(t),
             NMC_FIELD(n_q), NMC_FIELD(m), NMC_FIELD(m_out), NMC_FIELD(k), NMC_FIELD(k1), NMC_FIELD(k_w),
             NMC_FIELD(k_y), NMC_FIELD(lambda), NMC_FIELD(log_inv_eps)};
}

void to_json(json& j, const SeededParams& p) {
    j = json{{"kind", "seeded"}, NMC_FIELD(n), NMC_FIELD(d), NMC_FIELD(k), NMC_FIELD(t), NMC_FIELD(n1),
             NMC_FIELD(samples), NMC_FIELD(field_b), NMC_FIELD(rs_len), NMC_FIELD(ell), NMC_FIELD(n3),
             NMC_FIELD(n4), NMC_FIELD(n5), NMC_FIELD(log_inv_eps)};
}

void to_json(json& j, const InvertibleParams& p) {
    j = json{{"kind", "invertible"}, NMC_FIELD(n), NMC_FIELD(n1), NMC_FIELD(n2), NMC_FIELD(n3), NMC_FIELD(n4),
             NMC_FIELD(n5), NMC_FIELD(n6), NMC_FIELD(n7), NMC_FIELD(n_q), NMC_FIELD(n_x), NMC_FIELD(n_y),
             NMC_FIELD(d1), NMC_FIELD(d2), NMC_FIELD(d3), NMC_FIELD(d4), NMC_FIELD(d5), NMC_FIELD(ell),
             NMC_FIELD(t), NMC_FIELD(C), NMC_FIELD(field_b), NMC_FIELD(rs_len), NMC_FIELD(samp_bits)};
}

#undef NMC_FIELD

namespace {

void expect_kind(const json& j, const char* kind) {
    if (j.contains("kind") && j.at("kind") != kind)
        throw std::invalid_argument(std::string("parameter file kind is not '") + kind + "'");
}

}  // namespace

#define NMC_GET(name) j.at(#name).get_to(p.name)

void from_json(const json& j, SeedlessParams& p) {
    expect_kind(j, "seedless");
    NMC_GET(n); NMC_GET(n1); NMC_GET(n2); NMC_GET(n3); NMC_GET(field_b); NMC_GET(rs_len);
    NMC_GET(samples); NMC_GET(ell); NMC_GET(t); NMC_GET(n_q); NMC_GET(m); NMC_GET(m_out);
    NMC_GET(k); NMC_GET(k1); NMC_GET(k_w); NMC_GET(k_y); NMC_GET(lambda); NMC_GET(log_inv_eps);
}

void from_json(const json& j, SeededParams& p) {
    expect_kind(j, "seeded");
    NMC_GET(n); NMC_GET(d); NMC_GET(k); NMC_GET(t); NMC_GET(n1); NMC_GET(samples); NMC_GET(field_b);
    NMC_GET(rs_len); NMC_GET(ell); NMC_GET(n3); NMC_GET(n4); NMC_GET(n5); NMC_GET(log_inv_eps);
}

void from_json(const json& j, InvertibleParams& p) {
    expect_kind(j, "invertible");
    NMC_GET(n); NMC_GET(n1); NMC_GET(n2); NMC_GET(n3); NMC_GET(n4); NMC_GET(n5); NMC_GET(n6); NMC_GET(n7);
    NMC_GET(n_q); NMC_GET(n_x); NMC_GET(n_y); NMC_GET(d1); NMC_GET(d2); NMC_GET(d3); NMC_GET(d4); NMC_GET(d5);
    NMC_GET(ell); NMC_GET(t); NMC_GET(C); NMC_GET(field_b); NMC_GET(rs_len); NMC_GET(samp_bits);
}

#undef NMC_GET

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return json::parse(in);
}

InvertibleParams load_invertible(const std::string& path) { return load_json_file(path).get<InvertibleParams>(); }

}  // namespace nmc
