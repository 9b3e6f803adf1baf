#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "redlab/arith.hpp"
#include "redlab/rat.hpp"

namespace redlab::groups {

using arith::u64;
using arith::i64;

// Why a reduction (R mod p) is not usable at a given prime. The scan
// records these so density denominators can be audited.
enum class Exclusion : std::uint8_t {
    None = 0,
    BadReduction = 1,   // p divides the curve discriminant
    Numerator = 2,      // p divides a coordinate numerator
    Denominator = 3,    // p divides a coordinate denominator
    InPrimeSet = 4,     // p is one of the studied primes
    TorsionOrder = 5,   // p divides the order of a torsion point in play
    Budget = 6,         // per-prime budget ran out (factorization, counting)
};

const char* exclusion_name(Exclusion e);

template <class T>
struct Excludable {
    std::optional<T> value;
    Exclusion reason = Exclusion::None;

    Excludable(T v) : value(std::move(v)) {}
    Excludable(Exclusion r) : reason(r) {}
    bool ok() const { return value.has_value(); }
    const T& operator*() const { return *value; }
};

// --- multiplicative side -------------------------------------------------

// Nonzero rational carried as sign * num / den with both sides factored.
struct FactoredRational {
    int sign = 1;
    arith::Factorization num;  // factorization of |numerator|
    arith::Factorization den;  // factorization of denominator

    static FactoredRational from_fraction(i64 numerator, i64 denominator,
                                          const arith::FactorBudget& budget = {});
    Rat to_rat() const;
    bool is_one() const { return sign == 1 && num.empty() && den.empty(); }
    bool is_minus_one() const { return sign == -1 && num.empty() && den.empty(); }
    bool is_unit() const { return num.empty() && den.empty(); }
    std::string str() const;
    bool operator==(const FactoredRational&) const = default;

    // Residue mod p, or the exclusion that prevents it.
    Excludable<u64> reduce_mod(u64 p) const;

    // Integer exponent of prime q in the rational (numerator minus denominator).
    i64 exponent_of(u64 q) const;
    // All primes in the support, ascending.
    std::vector<u64> support() const;
};

struct TorusPoint {
    std::vector<FactoredRational> coords;
};

// --- elliptic side -------------------------------------------------------

// Long Weierstrass equation y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
struct WeierstrassCurve {
    i64 a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
    i64 discriminant = 0;

    // Computes the discriminant; throws ConfigError when it vanishes.
    static WeierstrassCurve make(i64 a1, i64 a2, i64 a3, i64 a4, i64 a6);
};

struct CurvePointQ {
    bool infinity = false;
    Rat x, y;

    static CurvePointQ at_infinity() { CurvePointQ p; p.infinity = true; return p; }
    bool operator==(const CurvePointQ&) const = default;
};

// Exact check of the curve equation.
bool on_curve(const WeierstrassCurve& e, const CurvePointQ& pt);

// Reduction of a curve mod p (good reduction assumed by callers of the
// arithmetic below; curve_reduce performs the exclusion checks).
struct CurveFp {
    u64 p = 0;
    u64 a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;

    static CurveFp reduce(const WeierstrassCurve& e, u64 p);
    bool operator==(const CurveFp&) const = default;
};

struct PointFp {
    bool infinity = true;
    u64 x = 0, y = 0;

    static PointFp at_infinity() { return PointFp{}; }
    static PointFp affine(u64 x, u64 y) { return PointFp{false, x, y}; }
    bool operator==(const PointFp&) const = default;
};

bool on_curve(const CurveFp& e, const PointFp& pt);
PointFp negate(const CurveFp& e, const PointFp& pt);
PointFp add(const CurveFp& e, const PointFp& a, const PointFp& b);
PointFp scalar_mul(const CurveFp& e, u64 k, const PointFp& pt);

// --- reduced points of either species ------------------------------------

struct ReducedTorus {
    std::vector<u64> residues;
    bool operator==(const ReducedTorus&) const = default;
};

struct ReducedCurve {
    CurveFp curve;
    PointFp point;
    bool operator==(const ReducedCurve&) const = default;
};

struct ReducedPoint {
    u64 p = 0;
    std::variant<ReducedTorus, ReducedCurve> value;

    bool is_torus() const { return value.index() == 0; }
    const ReducedTorus& torus() const { return std::get<ReducedTorus>(value); }
    const ReducedCurve& curve() const { return std::get<ReducedCurve>(value); }
    bool operator==(const ReducedPoint&) const = default;
};

Excludable<ReducedPoint> reduce_torus_point(const TorusPoint& r, const arith::PrimeContext& ctx);

// v_ell of the order of the reduced coordinate tuple (max over coordinates).
// Excludes p = ell and propagates reduction exclusions.
Excludable<unsigned> torus_order_valuation(const TorusPoint& r, const arith::PrimeContext& ctx,
                                           u64 ell);

Excludable<ReducedPoint> curve_reduce(const WeierstrassCurve& e, const CurvePointQ& pt,
                                      const arith::PrimeContext& ctx);

// #E(F_p). Exhaustive for p < 1000, baby-step giant-step with lcm
// accumulation otherwise, falling back to exhaustive on ambiguity.
u64 curve_group_order(const WeierstrassCurve& e, const arith::PrimeContext& ctx, u64 seed = 0);
u64 curve_group_order_exhaustive(const CurveFp& e);
// Order finding on random points; returns 0 when the Hasse interval still
// admits several candidates after the round budget.
u64 curve_group_order_bsgs(const CurveFp& e, u64 seed, unsigned rounds = 8);

// Least o with o * pt = O, by factor descent from the group order.
u64 curve_point_order(const ReducedCurve& pt, u64 group_order, const arith::Factorization& nf);

// Order of any reduced point (torus tuple: lcm of coordinate orders).
u64 reduced_point_order(const ReducedPoint& g, const arith::PrimeContext& ctx,
                        const arith::Factorization& curve_nf, u64 curve_n);

// --- ell-primary decomposition -------------------------------------------

struct LPart {
    unsigned a = 0;          // v_ell of the order of g
    ReducedPoint component;  // the unique ell-power-torsion part, order ell^a
};

// order must be the exact order of g. With order = ell^a * m the component
// is (m * (m^{-1} mod ell^a)) * g.
LPart l_primary_part(const ReducedPoint& g, u64 order, u64 ell);

// Index of the unique listed reduction equal to part.component, if any.
// Two listed points with equal reductions indicate a prime that should have
// been excluded; that raises a runtime error.
std::optional<std::size_t> match_l_part(const LPart& part,
                                        const std::vector<ReducedPoint>& listed_reductions);

}  // namespace redlab::groups
