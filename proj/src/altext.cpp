#include "nmc/altext.hpp"

#include <algorithm>

#include <stdexcept>

namespace nmc {

std::pair<std::vector<BitString>, Transcript> la_ext(const BitString& x, const BitString& q, const BitString& s1,
                                                     const AltExtParams& p) {
    if (p.u < 1) throw std::invalid_argument("la_ext needs at least one round");
    if (s1.size() != p.m) throw std::length_error("la_ext: first seed must have m bits");
    if (p.ext_w.m != p.m || p.ext_q.m != p.m) throw std::invalid_argument("la_ext: role outputs must be m bits");
    if (x.size() != p.ext_w.n || q.size() != p.ext_q.n) throw std::length_error("la_ext: source width mismatch");
    Transcript tr;
    tr.S.push_back(s1);
    for (std::size_t i = 0; i < p.u; ++i) {
        tr.R.push_back(role_extract(x, tr.S.back(), p.ext_w));
        if (i + 1 < p.u) tr.S.push_back(role_extract(q, tr.R.back(), p.ext_q));
    }
    return {tr.R, tr};
}

BitString two_la_ext(const BitString& x, const BitString& y, const BitString& q, bool b, const TwoLaSpecs& specs,
                     TwoLaTrace* trace) {
    if (q.size() != specs.n_q) throw std::length_error("two_la_ext: q width mismatch");
    if (specs.ext.m != specs.n_q || specs.ext.n != y.size()) throw std::invalid_argument("two_la_ext: Ext role mismatch");
    AltExtParams ap{2, specs.m, specs.ext_q, specs.ext_w};
    auto note = [&](const char* role, const char* src) {
        if (trace) trace->calls.emplace_back(role, src);
    };

    auto [r, tr1] = la_ext(x, q, slice(q, specs.m), ap);
    note("Ext_w", "x");
    note("Ext_q", "q");
    note("Ext_w", "x");
    BitString qbar = role_extract(y, b ? r[1] : r[0], specs.ext);
    note("Ext", "y");
    auto [rb, tr2] = la_ext(x, qbar, slice(qbar, specs.m), ap);
    note("Ext_w", "x");
    note("Ext_q", "qbar");
    note("Ext_w", "x");
    BitString next = role_extract(y, b ? rb[0] : rb[1], specs.ext);
    note("Ext", "y");
    if (trace) {
        trace->r1 = r[0];
        trace->r2 = r[1];
        trace->qbar = qbar;
        trace->rbar1 = rb[0];
        trace->rbar2 = rb[1];
    }
    return next;
}

IlaExtStepParams IlaExtStepParams::from(const InvertibleParams& p) {
    IlaExtStepParams s;
    s.n_q = p.n_q;
    s.n_x = p.n_x;
    s.n_y = p.n_y;
    s.d1 = p.d1;
    s.d2 = p.d2;
    s.d3 = p.d3;
    s.d4 = p.d4;
    s.d5 = p.d5;
    s.half_blocks = p.window();
    s.samp_bits = p.samp_bits;
    return s;
}

std::string IlaExtStepParams::problem() const {
    if (!(d5 >= 1 && d4 == 2 * d5 && d3 == 2 * d4 && d2 == 2 * d3 && d1 == 2 * d2))
        return "widths must halve: d1 = 2 d2 = 4 d3 = 8 d4 = 16 d5";
    if (half_blocks * d5 != 2 * n_q) return "block arithmetic: 4Ct * d5 must equal 2 n_q";
    if (d1 > n_q) return "d1 must not exceed n_q";
    return {};
}

IlaExt::IlaExt(const IlaExtStepParams& p) : p_(p) {
    if (auto prob = p.problem(); !prob.empty()) throw std::invalid_argument(prob);
    exts_[0] = std::make_unique<IExt>(IExtSpec{p.n_x, p.d1, p.samp_bits[0]});
    exts_[1] = std::make_unique<IExt>(IExtSpec{p.n_q, p.d2, p.samp_bits[1]});
    exts_[2] = std::make_unique<IExt>(IExtSpec{p.n_x, p.d3, p.samp_bits[2]});
    exts_[3] = std::make_unique<IExt>(IExtSpec{p.n_y, p.d4, p.samp_bits[3]});

    const IExt& e4 = *exts_[3];
    const std::size_t L = p.n_y;
    if (e4.contiguous() && L <= 64 && p.d4 <= 12) {
        block_bytes_ = (L + 7) / 8;
        const std::size_t seeds = std::size_t{1} << p.d4;
        tables_.assign(seeds * block_bytes_ * 256, 0);
        BitString e(L);
        for (uint64_t seed = 0; seed < seeds; ++seed) {
            uint64_t* t = &tables_[seed * block_bytes_ * 256];
            for (std::size_t j = 0; j < L; ++j) {
                e.set(j, true);
                uint64_t col = e4.eval(e, 0, seed);
                e.set(j, false);
                std::size_t byte = j / 8, bit = 7 - j % 8;
                for (std::size_t v = 0; v < 256; ++v)
                    if ((v >> bit) & 1) t[byte * 256 + v] ^= col;
            }
        }
    }
}

BitString IlaExt::block_ext(const BitString& y, std::size_t pos, uint64_t seed) const {
    BitString out(2 * p_.n_q);
    const IExt& e4 = *exts_[3];
    if (block_bytes_) {
        const std::size_t d5 = p_.d5;
        const uint64_t* t = &tables_[seed * block_bytes_ * 256];
        uint64_t* ow = out.words();
        for (std::size_t i = 0; i < p_.half_blocks; ++i) {
            uint64_t w = y.window(pos + i * p_.n_y);
            uint64_t acc = 0;
            for (std::size_t k = 0; k < block_bytes_; ++k) acc ^= t[k * 256 + ((w >> (56 - 8 * k)) & 0xff)];
            const std::size_t at = i * d5;
            if (64 % d5 == 0) ow[at >> 6] |= acc << (64 - d5 - (at & 63));
            else out.set_bits(at, static_cast<unsigned>(d5), acc);
        }
        return out;
    }
    const unsigned d5 = static_cast<unsigned>(p_.d5);
    for (std::size_t i = 0; i < p_.half_blocks; ++i) out.set_bits(i * d5, d5, e4.eval(y, pos + i * p_.n_y, seed));
    return out;
}

void IlaExt::sample_window(BitString& y, std::size_t pos, uint64_t seed, const BitString& target, Rng& rng) const {
    const IExt& e4 = *exts_[3];
    const unsigned d5 = static_cast<unsigned>(p_.d5);
    rng.fill_range(y, pos, p_.half_blocks * p_.n_y);
    BitString delta = block_ext(y, pos, seed) ^ target;
    for (std::size_t i = 0; i < p_.half_blocks; ++i)
        if (uint64_t d = delta.get_bits(i * d5, d5)) e4.correct(y, pos + i * p_.n_y, seed, d);
}

BitString IlaExt::step(const BitString& x, std::size_t wpos, const BitString& y, std::size_t vpos, const BitString& q,
                       bool b, StepRecord* rec) const {
    const IExt &e1 = *exts_[0], &e2 = *exts_[1], &e3 = *exts_[2];
    const unsigned d1 = static_cast<unsigned>(p_.d1);
    const std::size_t nq = p_.n_q, nx = p_.n_x;

    uint64_t s1 = q.get_bits(0, d1);
    uint64_t r1 = e1.eval(x, wpos, s1);
    uint64_t s2 = e2.eval(q, nq, r1);
    uint64_t r2 = e3.eval(x, wpos + nx, s2);
    uint64_t r_sel = b ? r2 : slice_d4(r1);
    BitString qbar = block_ext(y, vpos, r_sel);

    uint64_t sb1 = qbar.get_bits(0, d1);
    uint64_t rb1 = e1.eval(x, wpos + 2 * nx, sb1);
    uint64_t sb2 = e2.eval(qbar, nq, rb1);
    uint64_t rb2 = e3.eval(x, wpos + 3 * nx, sb2);
    uint64_t rb_sel = b ? slice_d4(rb1) : rb2;
    BitString next = block_ext(y, vpos + p_.half_blocks * p_.n_y, rb_sel);

    if (rec) {
        *rec = StepRecord{s1, r1, s2, r2, sb1, rb1, sb2, rb2, r_sel, rb_sel, std::move(qbar)};
    }
    return next;
}

std::pair<BitString, BitString> two_ila_ext(const std::vector<BitString>& v_blocks,
                                            const std::vector<BitString>& w_blocks, const BitString& q_h1,
                                            const BitString& q_h2, std::size_t h, bool b, const IlaExt& ila) {
    const auto& p = ila.params();
    if (h < 1) throw std::invalid_argument("step index starts at 1");
    if (w_blocks.size() != 4 || v_blocks.size() != 2 * p.half_blocks)
        throw std::length_error("two_ila_ext: block count mismatch");
    if (q_h1.size() != p.n_q || q_h2.size() != p.n_q) throw std::length_error("two_ila_ext: q width mismatch");
    BitString x(4 * p.n_x), y(2 * p.half_blocks * p.n_y);
    for (std::size_t i = 0; i < 4; ++i) {
        if (w_blocks[i].size() != p.n_x) throw std::length_error("two_ila_ext: x-block width mismatch");
        x.put(i * p.n_x, w_blocks[i]);
    }
    for (std::size_t i = 0; i < v_blocks.size(); ++i) {
        if (v_blocks[i].size() != p.n_y) throw std::length_error("two_ila_ext: y-block width mismatch");
        y.put(i * p.n_y, v_blocks[i]);
    }
    BitString next = ila.step(x, 0, y, 0, nmc::concat(q_h1, q_h2), b);
    return {next.sub(0, p.n_q), next.sub(p.n_q, p.n_q)};
}

std::pair<BitString, BitString> block_ext(const std::vector<BitString>& v_blocks, const BitString& seed,
                                          const IlaExt& ila) {
    const auto& p = ila.params();
    if (v_blocks.size() != p.half_blocks) throw std::length_error("block_ext: expected 4Ct blocks");
    if (seed.size() != p.d4) throw std::length_error("block_ext: seed must have d4 bits");
    BitString y(p.half_blocks * p.n_y);
    for (std::size_t i = 0; i < v_blocks.size(); ++i) y.put(i * p.n_y, v_blocks[i]);
    BitString out = ila.block_ext(y, 0, seed.get_bits(0, static_cast<unsigned>(p.d4)));
    return {out.sub(0, p.n_q), out.sub(p.n_q, p.n_q)};
}

}  // namespace nmc
