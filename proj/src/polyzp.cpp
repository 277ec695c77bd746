#include "heightlab/polyzp.hpp"

#include <algorithm>

#include "heightlab/errors.hpp"
#include "heightlab/prng.hpp"

namespace heightlab {

namespace {

uint64_t inv_mod(uint64_t a, uint64_t p) {
    // Extended Euclid; p prime, a != 0 mod p.
    int64_t t = 0, newt = 1;
    int64_t r = static_cast<int64_t>(p), newr = static_cast<int64_t>(a % p);
    while (newr != 0) {
        int64_t q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    if (r != 1) fail(ErrorKind::Internal, "inv_mod of non-unit");
    return static_cast<uint64_t>(t < 0 ? t + static_cast<int64_t>(p) : t);
}

}  // namespace

void PolyZp::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

PolyZp zp_from_coeffs(uint64_t p, const std::vector<int64_t>& coeffs) {
    PolyZp f{p, {}};
    f.c.reserve(coeffs.size());
    for (int64_t v : coeffs) {
        int64_t r = v % static_cast<int64_t>(p);
        if (r < 0) r += static_cast<int64_t>(p);
        f.c.push_back(static_cast<uint64_t>(r));
    }
    f.trim();
    return f;
}

PolyZp zp_add(const PolyZp& a, const PolyZp& b) {
    PolyZp r{a.p, {}};
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) {
        uint64_t v = (i < a.c.size() ? a.c[i] : 0) + (i < b.c.size() ? b.c[i] : 0);
        r.c[i] = v % a.p;
    }
    r.trim();
    return r;
}

PolyZp zp_sub(const PolyZp& a, const PolyZp& b) {
    PolyZp r{a.p, {}};
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) {
        uint64_t av = i < a.c.size() ? a.c[i] : 0;
        uint64_t bv = i < b.c.size() ? b.c[i] : 0;
        r.c[i] = (av + a.p - bv) % a.p;
    }
    r.trim();
    return r;
}

PolyZp zp_mul(const PolyZp& a, const PolyZp& b) {
    PolyZp r{a.p, {}};
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = (r.c[i + j] + a.c[i] * b.c[j]) % a.p;
    }
    r.trim();
    return r;
}

PolyZp zp_mod(const PolyZp& a, const PolyZp& m) {
    PolyZp r = a;
    if (m.is_zero()) fail(ErrorKind::Internal, "poly mod zero");
    uint64_t lead_inv = inv_mod(m.c.back(), m.p);
    while (!r.is_zero() && r.deg() >= m.deg()) {
        uint64_t f = r.c.back() * lead_inv % m.p;
        size_t shift = r.c.size() - m.c.size();
        for (size_t i = 0; i < m.c.size(); ++i)
            r.c[shift + i] = (r.c[shift + i] + m.p * f - f * m.c[i] % m.p) % m.p;
        r.trim();
    }
    return r;
}

namespace {

// Exact quotient a / m (requires m | a).
PolyZp zp_div_exact(const PolyZp& a, const PolyZp& m) {
    PolyZp r = a;
    PolyZp q{a.p, {}};
    if (m.is_zero()) fail(ErrorKind::Internal, "poly division by zero");
    if (a.is_zero()) return q;
    q.c.assign(a.c.size() >= m.c.size() ? a.c.size() - m.c.size() + 1 : 0, 0);
    uint64_t lead_inv = inv_mod(m.c.back(), m.p);
    while (!r.is_zero() && r.deg() >= m.deg()) {
        uint64_t f = r.c.back() * lead_inv % m.p;
        size_t shift = r.c.size() - m.c.size();
        q.c[shift] = f;
        for (size_t i = 0; i < m.c.size(); ++i)
            r.c[shift + i] = (r.c[shift + i] + m.p * f - f * m.c[i] % m.p) % m.p;
        r.trim();
    }
    if (!r.is_zero()) fail(ErrorKind::Internal, "inexact poly division");
    q.trim();
    return q;
}

}  // namespace

PolyZp zp_monic(PolyZp a) {
    if (a.is_zero()) return a;
    uint64_t inv = inv_mod(a.c.back(), a.p);
    for (auto& v : a.c) v = v * inv % a.p;
    return a;
}

PolyZp zp_gcd(PolyZp a, PolyZp b) {
    while (!b.is_zero()) {
        PolyZp r = zp_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return zp_monic(std::move(a));
}

PolyZp zp_derivative(const PolyZp& a) {
    PolyZp r{a.p, {}};
    for (size_t i = 1; i < a.c.size(); ++i) r.c.push_back(a.c[i] * (i % a.p) % a.p);
    r.trim();
    return r;
}

PolyZp zp_powmod(const PolyZp& base, uint64_t e, const PolyZp& m) {
    PolyZp result{base.p, {1}};
    PolyZp b = zp_mod(base, m);
    while (e) {
        if (e & 1) result = zp_mod(zp_mul(result, b), m);
        b = zp_mod(zp_mul(b, b), m);
        e >>= 1;
    }
    return result;
}

PolyZp zp_frobenius_power(const PolyZp& m, unsigned k) {
    PolyZp x{m.p, {0, 1}};
    PolyZp r = zp_mod(x, m);
    for (unsigned i = 0; i < k; ++i) r = zp_powmod(r, m.p, m);
    return r;
}

namespace {

// Squarefree decomposition: returns pairs (g, e) with f = prod g^e, g squarefree
// and pairwise coprime.  Handles the f' = 0 (p-th power) case.
void squarefree_parts(const PolyZp& f, unsigned mult, std::vector<ZpFactor>& out) {
    if (f.deg() <= 0) return;
    PolyZp d = zp_derivative(f);
    if (d.is_zero()) {
        // f = g(x^p); over F_p, g(x^p) = g(x)^p.
        PolyZp g{f.p, {}};
        g.c.resize((f.c.size() - 1) / f.p + 1, 0);
        for (size_t i = 0; i < f.c.size(); ++i) {
            if (f.c[i] == 0) continue;
            if (i % f.p != 0) fail(ErrorKind::Internal, "bad p-th power structure");
            g.c[i / f.p] = f.c[i];
        }
        g.trim();
        squarefree_parts(g, mult * static_cast<unsigned>(f.p), out);
        return;
    }
    PolyZp c = zp_gcd(f, d);
    PolyZp w = zp_monic(zp_div_exact(f, c));
    // w holds the product of squarefree parts with multiplicity not divisible by p.
    unsigned i = 1;
    while (w.deg() > 0) {
        PolyZp y = zp_gcd(w, c);
        PolyZp fac = zp_div_exact(w, y);
        if (fac.deg() > 0) out.push_back({zp_monic(fac), mult * i});
        w = std::move(y);
        c = zp_div_exact(c, w);
        ++i;
    }
    if (c.deg() > 0) squarefree_parts(c, mult, out);
}

}  // namespace

std::vector<ZpFactor> zp_factor(const PolyZp& f_in, uint64_t seed) {
    PolyZp f = zp_monic(f_in);
    std::vector<ZpFactor> squarefree;
    squarefree_parts(f, 1, squarefree);

    Prng rng(seed ^ f.p);
    std::vector<ZpFactor> out;
    for (const auto& [sf, mult] : squarefree) {
        // Distinct-degree stage.
        PolyZp rest = sf;
        for (unsigned k = 1; rest.deg() > 0 && static_cast<int>(k) <= rest.deg(); ++k) {
            PolyZp xq = zp_frobenius_power(rest, k);
            PolyZp xq_minus_x = zp_sub(xq, zp_mod(PolyZp{f.p, {0, 1}}, rest));
            PolyZp g = zp_gcd(xq_minus_x, rest);
            if (g.deg() <= 0) continue;
            // g is a product of irreducibles of degree exactly k; split it.
            std::vector<PolyZp> stack{g};
            while (!stack.empty()) {
                PolyZp part = std::move(stack.back());
                stack.pop_back();
                if (part.deg() == static_cast<int>(k)) {
                    out.push_back({zp_monic(part), mult});
                    continue;
                }
                // Cantor-Zassenhaus equal-degree splitting.
                PolyZp split{f.p, {}};
                while (split.deg() <= 0 || split.deg() == part.deg()) {
                    PolyZp r{f.p, {}};
                    r.c.resize(part.c.size() - 1);
                    for (auto& v : r.c) v = rng.below(f.p);
                    r.trim();
                    if (r.is_zero()) continue;
                    PolyZp t;
                    if (f.p == 2) {
                        // Trace map sum_{i<k} r^(2^i).
                        t = zp_mod(r, part);
                        PolyZp acc = t;
                        for (unsigned i = 1; i < k; ++i) {
                            acc = zp_mod(zp_mul(acc, acc), part);
                            t = zp_add(t, acc);
                        }
                    } else {
                        uint64_t e = 1;
                        for (unsigned i = 0; i < k; ++i) {
                            if (e > UINT64_MAX / f.p) fail(ErrorKind::DomainError, "p^k exponent overflow");
                            e *= f.p;
                        }
                        t = zp_powmod(r, (e - 1) / 2, part);
                        t = zp_sub(t, PolyZp{f.p, {1}});
                    }
                    split = zp_gcd(t, part);
                }
                stack.push_back(split);
                stack.push_back(zp_monic(zp_div_exact(part, split)));
            }
            rest = zp_monic(zp_div_exact(rest, g));
        }
        if (rest.deg() > 0) out.push_back({rest, mult});
    }
    return out;
}

}  // namespace heightlab
