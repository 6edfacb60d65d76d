#include "nmc/preimage.hpp"

#include <stdexcept>

namespace nmc {

namespace {

BitString seed_bits(uint64_t v, std::size_t w) { return BitString::from_uint(v, static_cast<unsigned>(w)); }

// Subspace of q in {0,1}^{2 n_q} with prefix s1 and E2(q_2, r1) = s2.
AffineSubspace q_subspace(const IlaExt& ila, uint64_t s1, uint64_t r1, uint64_t s2) {
    const auto& p = ila.params();
    const std::size_t nq = p.n_q;
    GF2Matrix A(p.d1 + p.d3, 2 * nq);
    for (std::size_t i = 0; i < p.d1; ++i) A.set(i, i, true);
    GF2Matrix M = ila.ext(2).matrix(seed_bits(r1, p.d2));
    for (std::size_t i = 0; i < p.d3; ++i)
        for (std::size_t j = 0; j < nq; ++j)
            if (M.get(i, j)) A.set(p.d1 + i, nq + j, true);
    BitString rhs = concat(seed_bits(s1, p.d1), seed_bits(s2, p.d3));
    auto res = solve_affine(A, rhs);
    if (auto* S = std::get_if<AffineSubspace>(&res)) return std::move(*S);
    throw std::logic_error("q constraint unexpectedly infeasible");
}

void fill_q(const IlaExt& ila, BitString& q, uint64_t s1, uint64_t r1, uint64_t s2, Rng& rng) {
    const auto& p = ila.params();
    rng.fill_range(q, 0, p.n_q);
    q.set_bits(0, static_cast<unsigned>(p.d1), s1);
    ila.ext(2).sample_fiber(q, p.n_q, r1, s2, rng);
}

}  // namespace

SeedTranscript transcript_of(const InmextTrace& trace) {
    SeedTranscript tr;
    tr.z = trace.z.z;
    for (const auto& s : trace.steps) tr.steps.push_back({s.s1, s.r1, s.s2, s.r2, s.sb1, s.rb1, s.sb2, s.rb2});
    return tr;
}

std::size_t FiberDescription::conditional_log2() const {
    std::size_t total = 0;
    for (const auto& c : components) total += c.dim;
    return total;
}

FiberDescription describe_fiber(const InvertibleParams& p) {
    const std::size_t ell = p.ell, q_free = 2 * p.n_q - p.d1 - p.d3;
    const std::size_t consumed = p.n1 + p.n6 + 4 * ell * p.n_x;
    const std::size_t free_half = p.n - consumed - p.n5 * p.field_b;
    FiberDescription f;
    f.components = {
        {"x3", p.n6},
        {"y3 given x3 and q1", p.n6 - 2 * p.n_q},
        {"q1", q_free},
        {"x-blocks", 2 * ell * (p.n_x - p.d2) + 2 * ell * (p.n_x - p.d4)},
        {"intermediate qbar", ell * q_free},
        {"intermediate q", (ell - 1) * q_free},
        {"y-blocks", 2 * ell * p.window() * (p.n_y - p.d5)},
        {"x free half", free_half},
        {"y free half", free_half},
    };
    f.transcript_bits = ell + 2 * ell * (p.d1 + p.d2 + p.d3 + p.d4);
    return f;
}

StepFiber step_fiber(const InvertibleExtractor& ext, const StepFiberInputs& in) {
    const auto& p = ext.params();
    const IlaExt& ila = ext.ila();
    const auto& s = in.seeds;
    if (in.h < 1 || in.h > p.ell) throw std::out_of_range("step index out of range");
    if (in.qbar_value.size() != 2 * p.n_q || in.q_next.size() != 2 * p.n_q)
        throw std::length_error("step_fiber: q width mismatch");

    StepFiber f;
    f.w.push_back(ila.ext(1).fiber(seed_bits(s.s1, p.d1), seed_bits(s.r1, p.d2)));
    f.w.push_back(ila.ext(3).fiber(seed_bits(s.s2, p.d3), seed_bits(s.r2, p.d4)));
    f.w.push_back(ila.ext(1).fiber(seed_bits(s.sb1, p.d1), seed_bits(s.rb1, p.d2)));
    f.w.push_back(ila.ext(3).fiber(seed_bits(s.sb2, p.d3), seed_bits(s.rb2, p.d4)));
    f.qbar = q_subspace(ila, s.sb1, s.rb1, s.sb2);
    f.q_in = q_subspace(ila, s.s1, s.r1, s.s2);

    uint64_t r_sel = in.b ? s.r2 : ila.slice_d4(s.r1);
    uint64_t rb_sel = in.b ? ila.slice_d4(s.rb1) : s.rb2;
    const IExt& e4 = ila.ext(4);
    for (std::size_t i = 0; i < p.window(); ++i) {
        f.a_blocks.push_back(e4.fiber(seed_bits(r_sel, p.d4), in.qbar_value.sub(i * p.d5, p.d5)));
        f.b_blocks.push_back(e4.fiber(seed_bits(rb_sel, p.d4), in.q_next.sub(i * p.d5, p.d5)));
    }

    if (in.h == 1) {
        if (in.x3 && in.q1_value) {
            BitString x(p.n), y(p.n);
            x.put(ext.x3_pos(), *in.x3);
            BitString base = ext.ip2(x, y);
            GF2Matrix A(2 * p.n_q, p.n6);
            for (std::size_t j = 0; j < p.n6; ++j) {
                y.set(ext.x3_pos() + j, true);
                BitString col = ext.ip2(x, y) ^ base;
                y.set(ext.x3_pos() + j, false);
                for (std::size_t i = 0; i < col.size(); ++i)
                    if (col.get(i)) A.set(i, j, true);
            }
            auto res = solve_affine(A, *in.q1_value ^ base);
            if (auto* S = std::get_if<AffineSubspace>(&res)) f.y3 = std::move(*S);
            else throw std::logic_error("IP2 constraint unexpectedly infeasible");
        }
    }
    return f;
}

PreimageSampler::PreimageSampler(const InvertibleExtractor& ext) : ext_(ext) {
    const auto& p = ext.params();
    free_from_ = (ext.free_pos() - p.n1) / p.field_b;
}

SeedTranscript PreimageSampler::sample_transcript(Rng& rng) const {
    const auto& p = ext_.params();
    SeedTranscript tr;
    tr.z = rng.bits(p.ell);
    tr.steps.resize(p.ell);
    auto draw = [&](std::size_t w) { return rng.bits(w).get_bits(0, static_cast<unsigned>(w)); };
    for (auto& s : tr.steps) {
        s.s1 = draw(p.d1);
        s.r1 = draw(p.d2);
        s.s2 = draw(p.d3);
        s.r2 = draw(p.d4);
        s.sb1 = draw(p.d1);
        s.rb1 = draw(p.d2);
        s.sb2 = draw(p.d3);
        s.rb2 = draw(p.d4);
    }
    return tr;
}

void PreimageSampler::samp_nm1(const SeedTranscript& tr, const BitString& output, BitString& x, BitString& y,
                               Rng& rng) const {
    const auto& p = ext_.params();
    const IlaExt& ila = ext_.ila();
    const std::size_t ell = p.ell, win = p.window();
    if (tr.z.size() != ell || tr.steps.size() != ell) throw std::length_error("transcript length must equal ell");
    if (output.size() != 2 * p.n_q) throw std::length_error("output width must be 2 n_q");

    // q_1..q_ell are step inputs; q_{ell+1} is the requested output.
    std::vector<BitString> q(ell + 1, BitString(2 * p.n_q));
    for (std::size_t h = 0; h < ell; ++h) {
        const auto& s = tr.steps[h];
        fill_q(ila, q[h], s.s1, s.r1, s.s2, rng);
    }
    q[ell] = output;

    for (std::size_t h = 1; h <= ell; ++h) {
        const auto& s = tr.steps[h - 1];
        const bool b = tr.z.get(h - 1);
        ila.ext(1).sample_fiber(x, ext_.w_pos(4 * h - 3), s.s1, s.r1, rng);
        ila.ext(3).sample_fiber(x, ext_.w_pos(4 * h - 2), s.s2, s.r2, rng);
        ila.ext(1).sample_fiber(x, ext_.w_pos(4 * h - 1), s.sb1, s.rb1, rng);
        ila.ext(3).sample_fiber(x, ext_.w_pos(4 * h), s.sb2, s.rb2, rng);

        BitString qbar(2 * p.n_q);
        fill_q(ila, qbar, s.sb1, s.rb1, s.sb2, rng);

        uint64_t r_sel = b ? s.r2 : ila.slice_d4(s.r1);
        uint64_t rb_sel = b ? ila.slice_d4(s.rb1) : s.rb2;
        const std::size_t a0 = 2 * win * (h - 1) + 1;
        ila.sample_window(y, ext_.v_pos(a0), r_sel, qbar, rng);
        ila.sample_window(y, ext_.v_pos(a0 + win), rb_sel, q[h], rng);
    }

    // x3 uniform, then y3 uniform on the affine slice IP2(x3, y3) = q_1.
    const std::size_t w = 2 * p.n_q, last = ext_.x3_pos() + p.n6 - w;
    rng.fill_range(x, ext_.x3_pos(), p.n6);
    rng.fill_range(y, ext_.x3_pos(), p.n6);
    BitString delta = ext_.ip2(x, y) ^ q[0];
    y.put(last, y.sub(last, w) ^ delta);
}

std::shared_ptr<const LinearSystem> PreimageSampler::rs_system(const std::vector<std::size_t>& T) const {
    std::lock_guard lock(mu_);
    auto it = rs_cache_.find(T);
    if (it != rs_cache_.end()) return it->second;
    auto sys = std::make_shared<const LinearSystem>(rs_constraints(ext_.code(), T, free_from_));
    rs_cache_.emplace(T, sys);
    return sys;
}

void PreimageSampler::solve_free_half(BitString& s, const BitString& target, const std::vector<std::size_t>& T,
                                      Rng& rng) const {
    const auto& p = ext_.params();
    const RSCode& code = ext_.code();
    const unsigned b = code.b();
    const std::size_t fp = ext_.free_pos(), len = p.n - fp;
    s.put(fp, BitString(len));
    BitString rhs(T.size() * b);
    for (std::size_t j = 0; j < T.size(); ++j)
        rhs.set_bits(j * b, b, code.symbol_at(s, p.n1, T[j]) ^ target.get_bits(j * b, b));
    auto sol = rs_system(T)->sample(rhs, rng);
    if (!sol) throw std::logic_error("RS constraint on the free half is infeasible");
    s.put(fp, *sol);
}

std::pair<BitString, BitString> PreimageSampler::samp_nm(const SeedTranscript& tr, const BitString& output,
                                                         Rng& rng) const {
    const auto& p = ext_.params();
    BitString x(p.n), y(p.n);
    const std::size_t tb = p.n5 * p.field_b;
    BitString x1 = tr.z.sub(0, p.n1), xs = tr.z.sub(p.n1, tb);
    BitString y1 = tr.z.sub(p.n1 + tb, p.n1), ys = tr.z.sub(2 * p.n1 + tb, tb);
    x.put(0, x1);
    y.put(0, y1);
    samp_nm1(tr, output, x, y, rng);
    auto T = ext_.sample_positions(ip_extract(x1, y1, {p.n1, static_cast<unsigned>(p.n3)}));
    solve_free_half(x, xs, T, rng);
    solve_free_half(y, ys, T, rng);
    return {std::move(x), std::move(y)};
}

std::pair<BitString, BitString> PreimageSampler::sample_preimage(const BitString& output, Rng& rng) const {
    SeedTranscript tr = sample_transcript(rng);
    return samp_nm(tr, output, rng);
}

std::pair<BitString, BitString> sample_preimage(const BitString& output, const PreimageSampler& sampler, Rng& rng) {
    return sampler.sample_preimage(output, rng);
}

}  // namespace nmc
