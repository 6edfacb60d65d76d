#include "nmc/nmext.hpp"

#include "nmc/extractors.hpp"

#include <stdexcept>

namespace nmc {

namespace {

bool is_structural(const Violation& v) {
    return v.label.rfind("main_lemma_1", 0) != 0 && v.label.rfind("seeded.", 0) != 0 &&
           v.label.rfind("entropy.", 0) != 0;
}

void require_structure(const std::vector<Violation>& all) {
    std::vector<Violation> bad;
    for (const auto& v : all)
        if (is_structural(v)) bad.push_back(v);
    if (!bad.empty()) throw std::invalid_argument("parameter schedule is malformed: " + describe(bad));
}

}  // namespace

std::string describe(const std::vector<Violation>& v) {
    std::string out;
    for (const auto& e : v) {
        if (!out.empty()) out += "; ";
        out += e.label + ": " + e.message;
    }
    return out;
}

ZTag derive_tag(const BitString& x, const BitString& y, const TagLayout& L) {
    if (x.size() != L.n || y.size() != L.n) throw std::length_error("derive_z: source length mismatch");
    ZTag tag;
    BitString x1 = slice(x, L.n1), y1 = slice(y, L.n1);
    tag.v = ip_extract(x1, y1, {L.n1, static_cast<unsigned>(L.n3)});
    tag.T = samp(tag.v, {L.n3, L.code->n(), L.samples});
    const unsigned b = L.code->b();
    BitString xs(L.samples * b), ys(L.samples * b);
    for (std::size_t j = 0; j < L.samples; ++j) {
        xs.set_bits(j * b, b, L.code->symbol_at(x, L.n1, tag.T[j]));
        ys.set_bits(j * b, b, L.code->symbol_at(y, L.n1, tag.T[j]));
    }
    tag.z = nmc::concat({&x1, &xs, &y1, &ys});
    return tag;
}

SeedlessExtractor::SeedlessExtractor(const SeedlessParams& p) : p_(p) {
    require_structure(validate(p));
    code_ = std::make_unique<RSCode>(standard_field(p.field_b), p.n4(), p.rs_len);
    specs_.n_q = p.n_q;
    specs_.m = p.m;
    specs_.ext_q = {p.n_q, p.m};
    specs_.ext_w = {p.n, p.m};
    specs_.ext = {p.n, p.n_q};
}

ZTag SeedlessExtractor::derive_z(const BitString& x, const BitString& y) const {
    return derive_tag(x, y, {p_.n, p_.n1, p_.n3, p_.samples, code_.get()});
}

BitString SeedlessExtractor::nmext1(const BitString& x, const BitString& y, const BitString& z,
                                    std::vector<TwoLaTrace>* traces) const {
    BitString q = slice(y, p_.n_q);
    for (std::size_t h = 0; h < z.size(); ++h) {
        TwoLaTrace tr;
        q = two_la_ext(x, y, q, z.get(h), specs_, traces ? &tr : nullptr);
        if (traces) traces->push_back(std::move(tr));
    }
    return q;
}

BitString SeedlessExtractor::evaluate(const BitString& x, const BitString& y) const {
    ZTag tag = derive_z(x, y);
    return slice(nmext1(x, y, tag.z), p_.m_out);
}

SeededExtractor::SeededExtractor(const SeededParams& p) : p_(p) {
    require_structure(validate(p));
    code_ = std::make_unique<RSCode>(standard_field(p.field_b), p.d / p.field_b, p.rs_len);
    specs_.n_q = p.n3;
    specs_.m = p.n4;
    specs_.ext_q = {p.n3, p.n4};
    specs_.ext_w = {p.n, p.n4};
    specs_.ext = {p.d, p.n3};
}

ZTag SeededExtractor::derive_z(const BitString& x, const BitString& y) const {
    if (x.size() != p_.n || y.size() != p_.d) throw std::length_error("snmext: input length mismatch");
    ZTag tag;
    BitString y1 = slice(y, p_.n1);
    tag.v = role_extract(x, y1, {p_.n, p_.n1});
    tag.T = samp(tag.v, {p_.n1, p_.rs_len, p_.samples});
    const unsigned b = p_.field_b;
    BitString ys(p_.samples * b);
    for (std::size_t j = 0; j < p_.samples; ++j) ys.set_bits(j * b, b, code_->symbol_at(y, 0, tag.T[j]));
    tag.z = nmc::concat(y1, ys);
    return tag;
}

BitString SeededExtractor::nmext1(const BitString& x, const BitString& y, const BitString& z) const {
    BitString q = slice(y, p_.n3);
    for (std::size_t h = 0; h < z.size(); ++h) q = two_la_ext(x, y, q, z.get(h), specs_);
    return q;
}

BitString SeededExtractor::evaluate(const BitString& x, const BitString& y) const {
    ZTag tag = derive_z(x, y);
    BitString q = nmext1(x, y, tag.z);
    return role_extract(x, q, {p_.n, p_.n5});
}

InvertibleExtractor::InvertibleExtractor(const InvertibleParams& p) : p_(p) {
    auto v = validate(p);
    if (!v.empty()) throw std::invalid_argument("invertible schedule fails validation: " + describe(v));
    code_ = std::make_unique<RSCode>(standard_field(p.field_b), p.n4, p.rs_len);
    ila_ = std::make_unique<IlaExt>(IlaExtStepParams::from(p));
    layout_ = {p.n, p.n1, p.n3, p.n5, code_.get()};
    if (2 * p.n_q <= 63) ip2_field_ = &standard_field(static_cast<unsigned>(2 * p.n_q));
}

ZTag InvertibleExtractor::derive_z(const BitString& x, const BitString& y) const { return derive_tag(x, y, layout_); }

std::vector<std::size_t> InvertibleExtractor::sample_positions(const BitString& v) const {
    return samp(v, {p_.n3, p_.rs_len, p_.n5});
}

BitString InvertibleExtractor::ip2(const BitString& x, const BitString& y) const {
    const unsigned w = static_cast<unsigned>(2 * p_.n_q);
    const std::size_t r = p_.n6 / w;
    const std::size_t last = x3_pos() + (r - 1) * w;
    if (!ip2_field_) {
        u128 acc = get_u128(x, last) ^ get_u128(y, last);
        for (std::size_t i = 0; i + 1 < r; ++i)
            acc ^= gf128_mul(get_u128(x, x3_pos() + i * w), get_u128(y, x3_pos() + i * w));
        BitString out(w);
        xor_u128(out, 0, acc);
        return out;
    }
    uint64_t v = ip_symbols(*ip2_field_, x, x3_pos(), y, x3_pos(), r - 1) ^ x.get_bits(last, w) ^ y.get_bits(last, w);
    return BitString::from_uint(v, w);
}

BitString InvertibleExtractor::evaluate1(const BitString& x, const BitString& y, const BitString& z,
                                         InmextTrace* trace) const {
    if (x.size() != p_.n || y.size() != p_.n) throw std::length_error("inmext: source length mismatch");
    if (z.size() != p_.ell) throw std::length_error("inmext: tag length must equal ell");
    BitString q = ip2(x, y);
    if (trace) {
        trace->q1 = q;
        trace->steps.assign(p_.ell, {});
    }
    const std::size_t win = p_.window();
    for (std::size_t h = 1; h <= p_.ell; ++h) {
        q = ila_->step(x, w_pos(4 * h - 3), y, v_pos(2 * win * (h - 1) + 1), q, z.get(h - 1),
                       trace ? &trace->steps[h - 1] : nullptr);
    }
    return q;
}

BitString InvertibleExtractor::evaluate(const BitString& x, const BitString& y, InmextTrace* trace) const {
    ZTag tag = derive_z(x, y);
    BitString out = evaluate1(x, y, tag.z, trace);
    if (trace) trace->z = std::move(tag);
    return out;
}

BitString inmext(const BitString& x, const BitString& y, const InvertibleExtractor& ext) { return ext.evaluate(x, y); }
BitString nmext(const BitString& x, const BitString& y, const SeedlessExtractor& ext) { return ext.evaluate(x, y); }
BitString snmext(const BitString& x, const BitString& y_seed, const SeededExtractor& ext) {
    return ext.evaluate(x, y_seed);
}

}  // namespace nmc
