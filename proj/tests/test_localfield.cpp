#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "drinfeld/localfield.hpp"

using namespace drinfeld;

namespace {

PolyT poly_of(FqPtr F, std::vector<std::pair<std::int64_t, std::uint32_t>> terms) {
    std::vector<std::pair<std::int64_t, FqElem>> t;
    for (auto& [e, c] : terms) t.emplace_back(e, F->from_int(c));
    return PolyT::from_terms(F, t);
}

struct MiniRng {
    std::uint64_t s = 0x9e3779b97f4a7c15ull;
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    std::uint32_t below(std::uint32_t m) { return std::uint32_t(next() % m); }
};

PolyT random_poly(FqPtr F, MiniRng& rng, int maxdeg) {
    std::vector<std::pair<std::int64_t, FqElem>> t;
    int deg = int(rng.below(std::uint32_t(maxdeg + 1)));
    for (int e = 0; e <= deg; ++e) {
        FqElem c = FqElem(rng.below(std::uint32_t(F->size())));
        if (c != 0) t.emplace_back(e, c);
    }
    if (t.empty()) t.emplace_back(0, F->one());
    return PolyT::from_terms(F, t);
}

// Sparse element with random residue digits at random exponents; always nonzero.
LocalElem random_elem(const LFPtr& lf, MiniRng& rng, std::int64_t span) {
    LocalElem r = lf->zero();
    int terms = 1 + int(rng.below(4));
    for (int t = 0; t < terms; ++t) {
        FqElem c = FqElem(rng.below(std::uint32_t(lf->residue()->size())));
        std::int64_t i = std::int64_t(rng.below(std::uint32_t(2 * span + 1))) - span;
        if (c != 0) r = lf->add(r, lf->monomial(c, i));
    }
    if (r.supp.empty()) r = lf->one();
    return r;
}

LocalElem eval_poly(const std::vector<LocalElem>& f, const LocalElem& x) {
    const LocalField& lf = *x.field;
    LocalElem acc = lf.zero();
    for (std::size_t i = f.size(); i-- > 0;) acc = lf.add(lf.mul(acc, x), f[i]);
    return acc;
}

}  // namespace

TEST_CASE("field construction validates its parameters") {
    auto F3 = make_field(3, 1);
    auto F2 = make_field(2, 1);
    CHECK_THROWS_AS((void)LocalField::make(F3, 0, 1), domain_error);
    CHECK_THROWS_AS((void)LocalField::make(F3, 1, 0), domain_error);
    // ramification index divisible by p is wild and unsupported
    CHECK_THROWS_WITH_AS((void)LocalField::make(F3, 6, 1),
                         "wild ramification requested (p divides e): unsupported extension",
                         domain_error);
    CHECK_THROWS_AS((void)LocalField::make(F2, 2, 1), domain_error);
    CHECK_THROWS_AS((void)LocalField::make(F3, 1, 1, 5), domain_error);  // too little precision

    auto L = LocalField::make(F3, 2, 1);
    CHECK(L->residue() == F3);
    CHECK(L->q() == 3);
    auto L2 = LocalField::make(F3, 1, 2);
    CHECK(L2->residue()->size() == 9);
    // base embedding is a field homomorphism into the residue field
    const auto& R = *L2->residue();
    for (FqElem a = 0; a < 3; ++a)
        for (FqElem b = 0; b < 3; ++b) {
            CHECK(L2->embed_base(F3->mul(a, b)) == R.mul(L2->embed_base(a), L2->embed_base(b)));
            CHECK(L2->embed_base(F3->add(a, b)) == R.add(L2->embed_base(a), L2->embed_base(b)));
        }
}

TEST_CASE("embedding T and simple rationals into the series field") {
    auto F = make_field(3, 1);
    auto L = LocalField::make(F, 1, 1);

    // T = 1/u exactly
    LocalElem t = L->embed(RatFunc::var(F));
    CHECK(t.is_exact());
    CHECK(t.supp == std::map<std::int64_t, FqElem>{{-1, 1}});
    CHECK(t.valuation() == Frac(-1));
    CHECK(t.str() == "1*u^-1");

    // 1/(T-1) = u + u^2 + u^3 + ... ; check the head and multiply back
    RatFunc g(PolyT::constant(F, 1), poly_of(F, {{1, 1}, {0, 2}}));
    LocalElem ge = L->embed(g, 40);
    CHECK(ge.valuation() == Frac(1));
    CHECK_FALSE(ge.is_exact());
    for (std::int64_t i = 1; i <= 40; ++i) {
        auto it = ge.supp.find(i);
        REQUIRE(it != ge.supp.end());
        CHECK(it->second == 1);
    }
    LocalElem back = L->mul(ge, L->embed_poly(poly_of(F, {{1, 1}, {0, 2}})));
    CHECK(L->eq(back, L->one()));

    // T^3 - T at e=2 becomes u^-6 - u^-2
    auto L2 = LocalField::make(F, 2, 1);
    LocalElem br = L2->embed_poly(bracket(F, 1));
    CHECK(br.is_exact());
    CHECK(br.supp == std::map<std::int64_t, FqElem>{{-6, 1}, {-2, 2}});
    CHECK(br.valuation() == Frac(-3));

    // monomial denominators stay exact
    LocalElem im = L->embed(RatFunc(PolyT::constant(F, 1), poly_of(F, {{2, 1}})));
    CHECK(im.is_exact());
    CHECK(im.supp == std::map<std::int64_t, FqElem>{{2, 1}});

    CHECK(L->embed(RatFunc::zero(F)).known_zero());
}

TEST_CASE("embedding is a ring homomorphism to precision") {
    MiniRng rng;
    for (std::uint32_t p : {2u, 3u}) {
        auto F = make_field(p, 1);
        auto L = LocalField::make(F, p == 2 ? 1 : 2, 1);
        for (int rep = 0; rep < 8; ++rep) {
            RatFunc x(random_poly(F, rng, 3), random_poly(F, rng, 2));
            RatFunc y(random_poly(F, rng, 3), random_poly(F, rng, 2));
            LocalElem xe = L->embed(x, 60), ye = L->embed(y, 60);
            CHECK(L->eq(L->add(xe, ye), L->embed(x + y, 60)));
            CHECK(L->eq(L->mul(xe, ye), L->embed(x * y, 60)));
            if (!x.is_zero()) CHECK(L->eq(L->inv(xe), L->embed(x.inv(), 60)));
        }
    }
}

TEST_CASE("uniformizer algebra, inversion, exact cancellation") {
    auto F = make_field(3, 1);
    auto L = LocalField::make(F, 1, 1);
    LocalElem u = L->uniformizer();
    CHECK(L->mul(u, u).supp == std::map<std::int64_t, FqElem>{{2, 1}});
    CHECK(L->eq(L->mul(L->inv(u), u), L->one()));
    CHECK(L->sub(u, u).known_zero());

    // inverse of a polynomial agrees with the embedded reciprocal
    LocalElem d = L->embed_poly(poly_of(F, {{1, 1}, {0, 2}}));
    CHECK(L->eq(L->mul(L->inv(d), d), L->one()));

    // division composes mul and inv
    CHECK(L->eq(L->div(L->one(), d), L->embed(RatFunc(PolyT::constant(F, 1), d.is_exact()
                                                          ? poly_of(F, {{1, 1}, {0, 2}})
                                                          : poly_of(F, {{1, 1}, {0, 2}})))));
}

TEST_CASE("frobenius powers act digitwise and scale valuations") {
    auto F = make_field(3, 1);
    auto L = LocalField::make(F, 1, 1);
    LocalElem u = L->uniformizer();
    CHECK(L->frobenius_power(u, 1).supp == std::map<std::int64_t, FqElem>{{3, 1}});
    CHECK(L->frobenius_power(u, 2).supp == std::map<std::int64_t, FqElem>{{9, 1}});

    MiniRng rng;
    for (int rep = 0; rep < 12; ++rep) {
        LocalElem x = random_elem(L, rng, 6);
        LocalElem y = random_elem(L, rng, 6);
        CHECK(L->frobenius_power(x, 1).valuation() == x.valuation() * Frac(3));
        // additive and consistent with plain powering
        CHECK(L->eq(L->frobenius_power(L->add(x, y), 1),
                    L->add(L->frobenius_power(x, 1), L->frobenius_power(y, 1))));
        CHECK(L->eq(L->frobenius_power(x, 1), L->pow_nat(x, 3)));
    }

    // over a bigger residue field the coefficients move by the right power
    auto L2 = LocalField::make(F, 1, 2);
    MiniRng rng2;
    for (int rep = 0; rep < 8; ++rep) {
        LocalElem x = random_elem(L2, rng2, 4);
        CHECK(L2->eq(L2->frobenius_power(x, 1), L2->pow_nat(x, 3)));
    }
    auto F4 = make_field(2, 2);
    auto L4 = LocalField::make(F4, 3, 2);
    MiniRng rng4;
    for (int rep = 0; rep < 8; ++rep) {
        LocalElem x = random_elem(L4, rng4, 4);
        CHECK(L4->eq(L4->frobenius_power(x, 1), L4->pow_nat(x, 4)));
    }

    // precision bound scales with the exponent
    auto Fq2 = make_field(2, 1);
    auto Lq2 = LocalField::make(Fq2, 1, 1);
    LocalElem partial = Lq2->truncate(Lq2->embed(RatFunc(PolyT::constant(Fq2, 1),
                                                         poly_of(Fq2, {{1, 1}, {0, 1}}))),
                                      10);
    CHECK(Lq2->frobenius_power(partial, 1).prec == 20);
    CHECK_THROWS_AS((void)Lq2->frobenius_power(partial, -1), domain_error);
}

TEST_CASE("newton polygon lower hulls") {
    // single segment: middle point lies above the chord
    auto np1 = newton_polygon({{0, Frac(-1)}, {2, Frac(0)}, {8, Frac(0)}});
    REQUIRE(np1.segments.size() == 1);
    CHECK(np1.segments[0].width == 8);
    CHECK(np1.segments[0].slope == Frac(1, 8));

    // two segments with the expected widths and slopes
    auto np2 = newton_polygon({{0, Frac(-1)}, {2, Frac(-5)}, {8, Frac(0)}});
    REQUIRE(np2.segments.size() == 2);
    CHECK(np2.segments[0].width == 2);
    CHECK(np2.segments[0].slope == Frac(-2));
    CHECK(np2.segments[1].width == 6);
    CHECK(np2.segments[1].slope == Frac(5, 6));

    // two points give the connecting slope; input order is irrelevant
    auto np3 = newton_polygon({{4, Frac(1)}, {0, Frac(-1)}});
    REQUIRE(np3.segments.size() == 1);
    CHECK(np3.segments[0].slope == Frac(1, 2));
    CHECK(np3.segments[0].width == 4);

    // collinear interior points merge into one segment
    auto np4 = newton_polygon({{0, Frac(0)}, {1, Frac(1)}, {2, Frac(2)}});
    REQUIRE(np4.segments.size() == 1);
    CHECK(np4.segments[0].width == 2);
    CHECK(np4.vertices.size() == 2);

    // zero coefficients (no valuation) are skipped entirely
    auto np5 = newton_polygon({{0, Frac(-1)}, {1, std::nullopt}, {3, Frac(0)}});
    REQUIRE(np5.segments.size() == 1);
    CHECK(np5.segments[0].slope == Frac(1, 3));

    CHECK_THROWS_AS((void)newton_polygon({{0, Frac(0)}}), domain_error);
    CHECK_THROWS_AS((void)newton_polygon({{0, Frac(0)}, {1, std::nullopt}}), domain_error);
    CHECK_THROWS_AS((void)newton_polygon({{0, Frac(0)}, {0, Frac(1)}}), domain_error);
}

TEST_CASE("newton iteration: linear equations settle in one step") {
    auto F = make_field(3, 1);
    auto L = LocalField::make(F, 1, 1);
    LocalElem a = L->embed(RatFunc(PolyT::constant(F, 1), poly_of(F, {{1, 1}, {0, 2}})));
    std::vector<LocalElem> f = {L->neg(a), L->one()};
    LocalElem r = hensel_root(f, L->zero());
    CHECK(L->eq(r, a));
    CHECK(eval_poly(f, r).vanishes());
}

TEST_CASE("newton iteration finds the square root of T^3-T-1") {
    auto F = make_field(3, 1);
    auto L = LocalField::make(F, 2, 1);
    LocalElem s = L->embed_poly(poly_of(F, {{3, 1}, {1, 2}, {0, 2}}));
    std::vector<LocalElem> f = {L->neg(s), L->zero(), L->one()};
    LocalElem y = hensel_root(f, L->monomial(F->one(), -3));
    CHECK(y.valuation() == Frac(-3, 2));
    CHECK(y.supp.begin()->first == -3);
    CHECK(y.supp.begin()->second == 1);
    CHECK(eval_poly(f, y).vanishes());
    CHECK(y.significant() >= L->nprec() - 20);

    // the generic square-root routine lands on the same branch
    LocalElem y2 = sqrt_local(s);
    CHECK(L->eq(y, y2));
}

TEST_CASE("newton iteration root matches the polygon prediction for x^3+x+T") {
    auto F = make_field(2, 1);
    auto L = LocalField::make(F, 3, 1);
    auto np = newton_polygon({{0, Frac(-1)}, {1, Frac(0)}, {3, Frac(0)}});
    REQUIRE(np.segments.size() == 1);
    CHECK(np.segments[0].slope == Frac(1, 3));

    std::vector<LocalElem> f = {L->embed(RatFunc::var(F)), L->one(), L->zero(), L->one()};
    LocalElem r = hensel_root(f, L->monomial(F->one(), -1));
    CHECK(r.valuation() == Frac(-1, 3));
    CHECK(r.valuation() == -np.segments[0].slope);
    CHECK(eval_poly(f, r).vanishes());
}

TEST_CASE("newton iteration rejects bad starting points") {
    auto F = make_field(3, 1);
    auto L = LocalField::make(F, 1, 1);
    LocalElem u = L->uniformizer();
    // v(f(x0)) too small relative to the derivative
    std::vector<LocalElem> f = {L->neg(L->one()), L->zero(), L->one()};
    CHECK_THROWS_AS((void)hensel_root(f, u), domain_error);
    // derivative vanishing at the start
    std::vector<LocalElem> g = {L->neg(u), L->zero(), L->one()};
    CHECK_THROWS_AS((void)hensel_root(g, L->zero()), domain_error);
    CHECK_THROWS_AS((void)hensel_root({L->one()}, u), domain_error);
}

TEST_CASE("additive-equation series solutions") {
    for (std::uint32_t p : {2u, 3u}) {
        auto F = make_field(p, 1);
        auto L = LocalField::make(F, 1, 1);
        CHECK(artin_schreier_solve(L->zero()).known_zero());
        LocalElem tail = artin_schreier_solve(L->o_term(17));
        CHECK(tail.vanishes());
        CHECK_FALSE(tail.is_exact());

        LocalElem u = L->uniformizer();
        LocalElem x = artin_schreier_solve(u);
        CHECK(x.valuation() == Frac(1));
        LocalElem resid = L->sub(L->sub(L->frobenius_power(x, 1), x), u);
        CHECK(resid.vanishes());
        CHECK(x.significant() >= L->nprec() - 1);

        // shifting by a constant of the base field stays a solution
        LocalElem x1 = L->add(x, L->one());
        CHECK(L->sub(L->sub(L->frobenius_power(x1, 1), x1), u).vanishes());

        CHECK_THROWS_AS((void)artin_schreier_solve(L->one()), domain_error);
        CHECK_THROWS_AS((void)artin_schreier_solve(L->monomial(F->one(), -2)), domain_error);
    }

    // head of the solution for q=2: -(u + u^2 + u^4 + u^8 + ...)
    auto F2 = make_field(2, 1);
    auto L2 = LocalField::make(F2, 1, 1, 20);
    LocalElem x2 = artin_schreier_solve(L2->uniformizer());
    CHECK(x2.supp == std::map<std::int64_t, FqElem>{{1, 1}, {2, 1}, {4, 1}, {8, 1}, {16, 1}});
}

TEST_CASE("roots of order q-1: exact cases and canonical leading digit") {
    auto F = make_field(3, 1);
    auto L = LocalField::make(F, 1, 1);
    LocalElem u2 = L->monomial(F->one(), 2);
    LocalElem r = root_qminus1(u2);
    CHECK(r.is_exact());
    CHECK(r.supp == std::map<std::int64_t, FqElem>{{1, 1}});

    // T at e=2 is u^-2; its square root is u^-1 up to a unit
    auto L2 = LocalField::make(F, 2, 1);
    LocalElem t = L2->embed(RatFunc::var(F));
    LocalElem rt = root_qminus1(t);
    CHECK(rt.supp.begin()->first == -1);
    CHECK(L2->eq(L2->mul(rt, rt), t));
}

TEST_CASE("roots of order q-1 on random admissible inputs") {
    MiniRng rng;
    for (std::uint32_t p : {3u, 5u}) {
        auto F = make_field(p, 1);
        auto L = LocalField::make(F, 1, 1);
        for (int rep = 0; rep < 10; ++rep) {
            LocalElem y = random_elem(L, rng, 5);
            LocalElem x = L->pow_nat(y, mpz_class(p - 1));
            LocalElem r = root_qminus1(x);
            CHECK(L->eq(L->pow_nat(r, mpz_class(p - 1)), x));
        }
    }
}

TEST_CASE("root extraction failures name the missing field extension") {
    auto F = make_field(3, 1);
    auto L = LocalField::make(F, 1, 1);
    CHECK_THROWS_WITH_AS((void)root_qminus1(L->uniformizer()),
                         "root valuation not integral here: enlarge ramification index",
                         domain_error);
    CHECK_THROWS_WITH_AS((void)root_qminus1(L->monomial(F->from_int(2), 0)),
                         "leading residue coefficient has no such root: enlarge residue field",
                         domain_error);
    // after enlarging the residue field the same root exists
    auto L2 = LocalField::make(F, 1, 2);
    LocalElem x2 = L2->monomial(L2->embed_base(F->from_int(2)), 0);
    LocalElem r2 = root_qminus1(x2);
    CHECK(L2->eq(L2->mul(r2, r2), x2));

    auto F2 = make_field(2, 1);
    auto L3 = LocalField::make(F2, 1, 1);
    CHECK_THROWS_WITH_AS((void)nth_root_local(L3->monomial(F2->one(), 2), 2),
                         "root index divisible by the characteristic: unsupported extension",
                         domain_error);
    CHECK_THROWS_AS((void)nth_root_local(L->uniformizer(), 0), domain_error);
}

TEST_CASE("square roots in characteristic 2 work digit by digit") {
    auto F = make_field(2, 1);
    auto L = LocalField::make(F, 1, 2);  // residue field F_4
    const auto& R = *L->residue();
    LocalElem y = L->add(L->monomial(R.generator(), 1), L->monomial(R.one(), 3));
    LocalElem sq = L->mul(y, y);
    CHECK(L->eq(sqrt_local(sq), y));
    CHECK(sqrt_local(sq).is_exact());

    // truncated input halves the certified digits
    LocalElem sqt = L->truncate(sq, 10);
    LocalElem half = sqrt_local(sqt);
    CHECK(half.prec == 5);
    CHECK(L->eq(half, y));

    CHECK_THROWS_WITH_AS(
        (void)sqrt_local(L->uniformizer()),
        "square root needs wild ramification in characteristic 2: unsupported extension",
        domain_error);
    CHECK(sqrt_local(L->zero()).known_zero());
    CHECK(sqrt_local(L->o_term(8)).vanishes());

    // odd characteristic delegates to the generic routine
    auto F3 = make_field(3, 1);
    auto L3 = LocalField::make(F3, 1, 1);
    LocalElem z = L3->add(L3->one(), L3->uniformizer());
    CHECK(L3->eq(sqrt_local(L3->mul(z, z)), z));
}

TEST_CASE("valuations are multiplicative and ultrametric") {
    MiniRng rng;
    auto F = make_field(3, 1);
    auto L = LocalField::make(F, 2, 1);
    for (int rep = 0; rep < 30; ++rep) {
        LocalElem x = random_elem(L, rng, 8);
        LocalElem y = random_elem(L, rng, 8);
        CHECK(L->mul(x, y).valuation() == x.valuation() + y.valuation());
        LocalElem s = L->add(x, y);
        if (!s.vanishes()) {
            Frac lowest = x.valuation() < y.valuation() ? x.valuation() : y.valuation();
            CHECK(!(s.valuation() < lowest));
            if (!(x.valuation() == y.valuation())) CHECK(s.valuation() == lowest);
        }
    }
}

TEST_CASE("declared precision is a certified lower bound under refinement") {
    auto F = make_field(3, 1);
    auto L = LocalField::make(F, 1, 1);
    RatFunc g(PolyT::constant(F, 1), poly_of(F, {{2, 1}, {1, 1}, {0, 2}}));
    LocalElem coarse = L->embed(g, 25);
    LocalElem fine = L->embed(g, 80);
    CHECK(L->truncate(fine, coarse.prec).supp == coarse.supp);

    // a longer pipeline: invert, multiply, and compare the overlap
    LocalElem a15 = L->truncate(L->embed(g), 15);
    LocalElem a40 = L->truncate(L->embed(g), 40);
    LocalElem r15 = L->inv(a15), r40 = L->inv(a40);
    CHECK(L->truncate(r40, r15.prec).supp == r15.supp);
    CHECK(r15.supp.rbegin()->first < r15.prec);

    // stored digits always sit strictly below the declared bound
    MiniRng rng;
    for (int rep = 0; rep < 10; ++rep) {
        LocalElem x = random_elem(L, rng, 5);
        LocalElem t = L->truncate(x, 3);
        LocalElem prod = L->mul(t, x);
        if (!prod.supp.empty() && !prod.is_exact()) CHECK(prod.supp.rbegin()->first < prod.prec);
    }
}

TEST_CASE("starved operands raise precision errors instead of guessing") {
    auto F = make_field(3, 1);
    auto L = LocalField::make(F, 1, 1);
    CHECK_THROWS_AS((void)L->inv(L->o_term(5)), precision_error);
    CHECK_THROWS_AS((void)L->inv(L->truncate(L->one(), 3)), precision_error);
    CHECK_THROWS_AS((void)nth_root_local(L->o_term(5), 2), precision_error);
    CHECK_THROWS_AS((void)L->o_term(5).valuation(), precision_error);
    CHECK_THROWS_AS((void)L->zero().valuation(), domain_error);
    CHECK(L->uniformizer().valuation() == Frac(1));
    // exact elements can always be inverted regardless of digit count
    CHECK(L->eq(L->inv(L->one()), L->one()));
}

TEST_CASE("rendering truncated series") {
    auto F = make_field(3, 1);
    auto L = LocalField::make(F, 1, 1);
    CHECK(L->zero().str() == "0");
    CHECK(L->o_term(7).str() == "(O(u^7))");
    CHECK(L->monomial(F->from_int(2), -3).str() == "2*u^-3");
    RatFunc g(PolyT::constant(F, 1), poly_of(F, {{1, 1}, {0, 2}}));
    CHECK(L->truncate(L->embed(g), 3).str() == "1*u^1 + 1*u^2 + (O(u^3))");

    auto L2 = LocalField::make(F, 1, 2);
    const auto& R = *L2->residue();
    CHECK(L2->one().str() == "1*u^0");
    CHECK(L2->from_residue(R.generator()).str() == "g^1*u^0");
}
