#include "redlab/groups.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "redlab/errors.hpp"

namespace redlab::groups {

using arith::mul_mod;
using arith::pow_mod;
using arith::inv_mod;

const char* exclusion_name(Exclusion e) {
    switch (e) {
        case Exclusion::None: return "";
        case Exclusion::BadReduction: return "bad_reduction";
        case Exclusion::Numerator: return "numerator";
        case Exclusion::Denominator: return "denominator";
        case Exclusion::InPrimeSet: return "in_prime_set";
        case Exclusion::TorsionOrder: return "torsion_order";
        case Exclusion::Budget: return "budget";
    }
    return "";
}

// --- FactoredRational -----------------------------------------------------

FactoredRational FactoredRational::from_fraction(i64 numerator, i64 denominator,
                                                 const arith::FactorBudget& budget) {
    if (numerator == 0) throw ConfigError("torus coordinate must be nonzero");
    if (denominator == 0) throw ConfigError("zero denominator in coordinate");
    FactoredRational r;
    r.sign = (numerator < 0) == (denominator < 0) ? 1 : -1;
    u64 n = numerator < 0 ? u64(-(numerator + 1)) + 1 : u64(numerator);
    u64 d = denominator < 0 ? u64(-(denominator + 1)) + 1 : u64(denominator);
    u64 g = std::gcd(n, d);
    n /= g;
    d /= g;
    if (n != 1) r.num = arith::factorize_u64(n, budget);
    if (d != 1) r.den = arith::factorize_u64(d, budget);
    return r;
}

Rat FactoredRational::to_rat() const {
    return Rat(sign * i64(num.value()), i64(den.value()));
}

std::string FactoredRational::str() const {
    std::string s = sign < 0 ? "-" : "";
    s += std::to_string(num.value());
    if (!den.empty()) s += "/" + std::to_string(den.value());
    return s;
}

Excludable<u64> FactoredRational::reduce_mod(u64 p) const {
    if (num.valuation(p) > 0) return Exclusion::Numerator;
    if (den.valuation(p) > 0) return Exclusion::Denominator;
    u64 r = 1;
    for (auto [q, e] : num.prime_powers) r = mul_mod(r, pow_mod(q % p, e, p), p);
    u64 d = 1;
    for (auto [q, e] : den.prime_powers) d = mul_mod(d, pow_mod(q % p, e, p), p);
    r = mul_mod(r, inv_mod(d, p), p);
    if (sign < 0) r = (p - r) % p;
    if (r == 0) return Exclusion::Numerator;  // only possible at p = 2 with odd value? keep safe
    return r;
}

i64 FactoredRational::exponent_of(u64 q) const {
    return i64(num.valuation(q)) - i64(den.valuation(q));
}

std::vector<u64> FactoredRational::support() const {
    std::vector<u64> s;
    for (auto [q, e] : num.prime_powers) s.push_back(q);
    for (auto [q, e] : den.prime_powers) s.push_back(q);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

// --- curve over Q ---------------------------------------------------------

WeierstrassCurve WeierstrassCurve::make(i64 a1, i64 a2, i64 a3, i64 a4, i64 a6) {
    using ll = __int128;
    ll b2 = ll(a1) * a1 + 4 * ll(a2);
    ll b4 = 2 * ll(a4) + ll(a1) * a3;
    ll b6 = ll(a3) * a3 + 4 * ll(a6);
    ll b8 = ll(a1) * a1 * a6 + 4 * ll(a2) * a6 - ll(a1) * a3 * a4 + ll(a2) * a3 * a3 -
            ll(a4) * a4;
    ll disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
    if (disc == 0) throw ConfigError("singular curve: discriminant is zero");
    if (disc > ll(INT64_MAX) || disc < ll(INT64_MIN))
        throw ConfigError("curve discriminant exceeds 64 bits");
    WeierstrassCurve e;
    e.a1 = a1; e.a2 = a2; e.a3 = a3; e.a4 = a4; e.a6 = a6;
    e.discriminant = i64(disc);
    return e;
}

bool on_curve(const WeierstrassCurve& e, const CurvePointQ& pt) {
    if (pt.infinity) return true;
    const Rat& x = pt.x;
    const Rat& y = pt.y;
    Rat lhs = y * y + Rat(e.a1) * x * y + Rat(e.a3) * y;
    Rat rhs = x * x * x + Rat(e.a2) * x * x + Rat(e.a4) * x + Rat(e.a6);
    return lhs == rhs;
}

CurveFp CurveFp::reduce(const WeierstrassCurve& e, u64 p) {
    auto m = [p](i64 a) { i64 r = a % i64(p); return u64(r < 0 ? r + i64(p) : r); };
    return CurveFp{p, m(e.a1), m(e.a2), m(e.a3), m(e.a4), m(e.a6)};
}

bool on_curve(const CurveFp& e, const PointFp& pt) {
    if (pt.infinity) return true;
    u64 p = e.p;
    u64 lhs = (mul_mod(pt.y, pt.y, p) + mul_mod(mul_mod(e.a1, pt.x, p), pt.y, p) +
               mul_mod(e.a3, pt.y, p)) % p;
    u64 x2 = mul_mod(pt.x, pt.x, p);
    u64 rhs = (mul_mod(x2, pt.x, p) + mul_mod(e.a2, x2, p) + mul_mod(e.a4, pt.x, p) + e.a6 % p) % p;
    return lhs == rhs;
}

PointFp negate(const CurveFp& e, const PointFp& pt) {
    if (pt.infinity) return pt;
    u64 p = e.p;
    u64 ny = (p - (pt.y + mul_mod(e.a1, pt.x, p) + e.a3) % p) % p;
    return PointFp::affine(pt.x, ny);
}

PointFp add(const CurveFp& e, const PointFp& a, const PointFp& b) {
    if (a.infinity) return b;
    if (b.infinity) return a;
    u64 p = e.p;
    auto sub = [p](u64 x, u64 y) { return (x + p - y % p) % p; };

    u64 lam;
    if (a.x == b.x) {
        u64 nay = (p - (a.y + mul_mod(e.a1, a.x, p) + e.a3) % p) % p;
        if (b.y == nay) return PointFp::at_infinity();
        // same point; tangent line slope
        u64 x2 = mul_mod(a.x, a.x, p);
        u64 num = (mul_mod(3 % p, x2, p) + mul_mod(mul_mod(2 % p, e.a2, p), a.x, p) + e.a4 % p) % p;
        num = sub(num, mul_mod(e.a1, a.y, p));
        u64 den = (mul_mod(2 % p, a.y, p) + mul_mod(e.a1, a.x, p) + e.a3) % p;
        lam = mul_mod(num, inv_mod(den, p), p);
    } else {
        lam = mul_mod(sub(b.y, a.y), inv_mod(sub(b.x, a.x), p), p);
    }
    u64 nu = sub(a.y, mul_mod(lam, a.x, p));
    u64 x3 = sub(sub(sub((mul_mod(lam, lam, p) + mul_mod(e.a1, lam, p)) % p, e.a2 % p), a.x), b.x);
    u64 y3 = sub(sub(sub(0, mul_mod((lam + e.a1) % p, x3, p)), nu), e.a3 % p);
    return PointFp::affine(x3, y3);
}

PointFp scalar_mul(const CurveFp& e, u64 k, const PointFp& pt) {
    PointFp acc = PointFp::at_infinity();
    PointFp base = pt;
    while (k) {
        if (k & 1) acc = add(e, acc, base);
        base = add(e, base, base);
        k >>= 1;
    }
    return acc;
}

// --- reductions -----------------------------------------------------------

Excludable<ReducedPoint> reduce_torus_point(const TorusPoint& r, const arith::PrimeContext& ctx) {
    ReducedTorus rt;
    for (const auto& c : r.coords) {
        auto res = c.reduce_mod(ctx.p);
        if (!res.ok()) return res.reason;
        rt.residues.push_back(*res);
    }
    return ReducedPoint{ctx.p, std::move(rt)};
}

Excludable<unsigned> torus_order_valuation(const TorusPoint& r, const arith::PrimeContext& ctx,
                                           u64 ell) {
    if (ctx.p == ell) return Exclusion::InPrimeSet;
    auto red = reduce_torus_point(r, ctx);
    if (!red.ok()) return red.reason;
    unsigned v = 0;
    for (u64 x : red->torus().residues) {
        u64 o = arith::multiplicative_order(x, ctx);
        v = std::max(v, arith::valuation(o, ell));
    }
    return v;
}

Excludable<ReducedPoint> curve_reduce(const WeierstrassCurve& e, const CurvePointQ& pt,
                                      const arith::PrimeContext& ctx) {
    u64 p = ctx.p;
    i64 dm = e.discriminant % i64(p);
    if (dm == 0) return Exclusion::BadReduction;
    CurveFp ef = CurveFp::reduce(e, p);
    if (pt.infinity) return ReducedPoint{p, ReducedCurve{ef, PointFp::at_infinity()}};
    auto residue = [p](const Rat& q) -> Excludable<u64> {
        u64 d = q.den < 0 ? u64(-q.den) : u64(q.den);
        if (d % p == 0) return Exclusion::Denominator;
        i64 nr = q.num % i64(p);
        u64 n = u64(nr < 0 ? nr + i64(p) : nr);
        return mul_mod(n, inv_mod(d % p, p), p);
    };
    auto xr = residue(pt.x);
    if (!xr.ok()) return xr.reason;
    auto yr = residue(pt.y);
    if (!yr.ok()) return yr.reason;
    return ReducedPoint{p, ReducedCurve{ef, PointFp::affine(*xr, *yr)}};
}

// --- group order ----------------------------------------------------------

namespace {

u64 isqrt_u64(u64 n) {
    u64 r = u64(std::sqrt(double(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Tonelli-Shanks, p an odd prime, a a quadratic residue.
u64 sqrt_mod(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    if (p % 4 == 3) return pow_mod(a, (p + 1) / 4, p);
    u64 q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    u64 z = 2;
    while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 m = s, c = pow_mod(z, q, p), t = pow_mod(a, q, p), r = pow_mod(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 t2 = t;
        unsigned i = 0;
        while (t2 != 1) { t2 = mul_mod(t2, t2, p); ++i; }
        u64 b = pow_mod(c, u64(1) << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    return r;
}

// y-count discriminant of the quadratic in y at a given x (odd p).
u64 y_discriminant(const CurveFp& e, u64 x) {
    u64 p = e.p;
    u64 ax = (mul_mod(e.a1, x, p) + e.a3) % p;
    u64 x2 = mul_mod(x, x, p);
    u64 fx = (mul_mod(x2, x, p) + mul_mod(e.a2, x2, p) + mul_mod(e.a4, x, p) + e.a6 % p) % p;
    return (mul_mod(ax, ax, p) + mul_mod(4 % p, fx, p)) % p;
}

u64 point_order_from_multiple(const CurveFp& e, const PointFp& q, u64 multiple,
                              const arith::Factorization& f) {
    u64 o = multiple;
    for (auto [pr, ex] : f.prime_powers) {
        for (unsigned i = 0; i < ex; ++i) {
            if (o % pr != 0) break;
            u64 cand = o / pr;
            if (scalar_mul(e, cand, q).infinity)
                o = cand;
            else
                break;
        }
    }
    return o;
}

PointFp random_point(const CurveFp& e, std::mt19937_64& rng) {
    u64 p = e.p;
    u64 inv2 = inv_mod(2 % p, p);
    for (;;) {
        u64 x = rng() % p;
        u64 d = y_discriminant(e, x);
        u64 ax = (mul_mod(e.a1, x, p) + e.a3) % p;
        if (d == 0) {
            u64 y = mul_mod((p - ax) % p, inv2, p);
            return PointFp::affine(x, y);
        }
        if (pow_mod(d, (p - 1) / 2, p) != 1) continue;
        u64 s = sqrt_mod(d, p);
        if (rng() & 1) s = (p - s) % p;
        u64 y = mul_mod((s + p - ax) % p, inv2, p);
        return PointFp::affine(x, y);
    }
}

// Least m in [lo, hi] with m*q = O, or 0 when none is found (cannot happen
// when the group order annihilates q and lies in the window).
u64 annihilator_in_window(const CurveFp& e, const PointFp& q, u64 lo, u64 hi) {
    if (q.infinity) return lo;
    u64 count = hi - lo + 1;
    u64 bs = isqrt_u64(count);
    if (bs * bs < count) ++bs;

    std::map<std::pair<u64, u64>, u64> baby;  // point -> smallest j
    PointFp pj = PointFp::at_infinity();
    for (u64 j = 0; j < bs; ++j) {
        if (j > 0) {
            pj = add(e, pj, q);
            if (pj.infinity) return j;  // j already annihilates q
        }
        auto key = std::make_pair(pj.infinity ? ~u64(0) : pj.x, pj.infinity ? ~u64(0) : pj.y);
        baby.emplace(key, j);
    }
    PointFp giant = scalar_mul(e, bs, q);
    PointFp w = scalar_mul(e, lo, q);
    for (u64 i = 0;; ++i) {
        u64 base = lo + i * bs;
        if (base > hi) break;
        PointFp neg = negate(e, w);
        auto key = std::make_pair(neg.infinity ? ~u64(0) : neg.x, neg.infinity ? ~u64(0) : neg.y);
        auto it = baby.find(key);
        if (it != baby.end()) {
            u64 m = base + it->second;
            if (m >= lo && m <= hi) return m;
        }
        w = add(e, w, giant);
    }
    return 0;
}

}  // namespace

u64 curve_group_order_exhaustive(const CurveFp& e) {
    u64 p = e.p;
    if (p == 2) {
        u64 n = 1;
        for (u64 x = 0; x < 2; ++x)
            for (u64 y = 0; y < 2; ++y)
                if (on_curve(e, PointFp::affine(x, y))) ++n;
        return n;
    }
    u64 n = p + 1;  // x-lines plus infinity; chi(D) corrections below
    if (p < (1u << 21)) {
        std::vector<char> is_sq(p, 0);
        for (u64 t = 0; t < p; ++t) is_sq[mul_mod(t, t, p)] = 1;
        for (u64 x = 0; x < p; ++x) {
            u64 d = y_discriminant(e, x);
            if (d == 0) continue;
            n += is_sq[d] ? 1 : u64(-1);
        }
    } else {
        for (u64 x = 0; x < p; ++x) {
            u64 d = y_discriminant(e, x);
            if (d == 0) continue;
            n += pow_mod(d, (p - 1) / 2, p) == 1 ? 1 : u64(-1);
        }
    }
    return n;
}

u64 curve_group_order_bsgs(const CurveFp& e, u64 seed, unsigned rounds) {
    u64 p = e.p;
    u64 t = isqrt_u64(4 * p);
    u64 lo = p + 1 - t, hi = p + 1 + t;
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    u64 acc = 1;
    for (unsigned round = 0; round < rounds; ++round) {
        PointFp q = random_point(e, rng);
        u64 m = annihilator_in_window(e, q, lo, hi);
        if (m == 0) continue;
        arith::Factorization mf = arith::factorize_u64(m);
        u64 orq = point_order_from_multiple(e, q, m, mf);
        acc = std::lcm(acc, orq);
        u64 k_lo = (lo + acc - 1) / acc, k_hi = hi / acc;
        if (k_lo == k_hi) return acc * k_lo;
        if (k_lo > k_hi) return 0;  // inconsistent; let the caller fall back
    }
    return 0;
}

u64 curve_group_order(const WeierstrassCurve& e, const arith::PrimeContext& ctx, u64 seed) {
    CurveFp ef = CurveFp::reduce(e, ctx.p);
    if (ctx.p < 1000) return curve_group_order_exhaustive(ef);
    u64 n = curve_group_order_bsgs(ef, seed ^ ctx.p * 0xbf58476d1ce4e5b9ull);
    if (n == 0) n = curve_group_order_exhaustive(ef);
    return n;
}

u64 curve_point_order(const ReducedCurve& pt, u64 group_order, const arith::Factorization& nf) {
    return point_order_from_multiple(pt.curve, pt.point, group_order, nf);
}

u64 reduced_point_order(const ReducedPoint& g, const arith::PrimeContext& ctx,
                        const arith::Factorization& curve_nf, u64 curve_n) {
    if (g.is_torus()) {
        u64 o = 1;
        for (u64 x : g.torus().residues) o = std::lcm(o, arith::multiplicative_order(x, ctx));
        return o;
    }
    return curve_point_order(g.curve(), curve_n, curve_nf);
}

// --- ell-primary part -----------------------------------------------------

LPart l_primary_part(const ReducedPoint& g, u64 order, u64 ell) {
    unsigned a = arith::valuation(order, ell);
    u64 la = 1;
    for (unsigned i = 0; i < a; ++i) la *= ell;
    u64 m = order / la;
    // coefficient c = m * (m^{-1} mod ell^a), taken mod the full order
    u64 c;
    if (a == 0) {
        c = 0;
    } else {
        u64 minv = inv_mod(m % la, la);
        c = u64(arith::u128(m) * minv % order);
    }
    LPart part;
    part.a = a;
    ReducedPoint comp;
    comp.p = g.p;
    if (g.is_torus()) {
        ReducedTorus rt;
        for (u64 x : g.torus().residues) rt.residues.push_back(pow_mod(x, c, g.p));
        comp.value = std::move(rt);
    } else {
        const auto& rc = g.curve();
        comp.value = ReducedCurve{rc.curve, scalar_mul(rc.curve, c, rc.point)};
    }
    part.component = std::move(comp);
    return part;
}

std::optional<std::size_t> match_l_part(const LPart& part,
                                        const std::vector<ReducedPoint>& listed_reductions) {
    for (std::size_t i = 0; i < listed_reductions.size(); ++i)
        for (std::size_t j = i + 1; j < listed_reductions.size(); ++j)
            if (listed_reductions[i] == listed_reductions[j])
                throw std::runtime_error("torsion reduction collision: listed points " +
                                         std::to_string(i) + " and " + std::to_string(j) +
                                         " coincide mod p");
    std::optional<std::size_t> found;
    for (std::size_t i = 0; i < listed_reductions.size(); ++i) {
        if (listed_reductions[i] == part.component) {
            found = i;
            break;
        }
    }
    return found;
}

}  // namespace redlab::groups
