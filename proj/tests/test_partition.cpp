#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace wmp;
using wmp::testing::Instance;
using wmp::testing::random_instance;
using wmp::testing::random_int_matrix;

using Q = Matrix<Rational>;

namespace {

ErrorKind kind_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::ParseError;
}

} // namespace

TEST(FirstColumn, NonzeroColumn)
{
    const Q a1{{1}, {2}};
    const Q m{{2, 0}, {0, 1}};
    Branch b = Branch::Zero;
    // (a^T M a)^{-1} a^T M = [2 2] / 6.
    EXPECT_EQ(init_first_column(a1, m, {}, &b), (Q{{Rational(mpz_class(1), mpz_class(3)), Rational(mpz_class(1), mpz_class(3))}}));
    EXPECT_EQ(b, Branch::Nonzero);
}

TEST(FirstColumn, ZeroColumnGivesZeroRow)
{
    Branch b = Branch::Nonzero;
    EXPECT_EQ(init_first_column(Q(3, 1), Q::identity(3), {}, &b), Q(1, 3));
    EXPECT_EQ(b, Branch::Zero);
}

TEST(BorderedInverse, MatchesDirectInverseAtEveryOrder)
{
    for (std::uint64_t s = 0; s < 20; ++s) {
        const std::size_t n = 1 + s % 8;
        const Q w = random_spd<Rational>(n, s);
        auto state = bordered_inverse_start(w);
        EXPECT_EQ(state.inv, gauss_inverse(leading_principal(w, 1)));
        for (std::size_t k = 2; k <= n; ++k) {
            state = bordered_inverse_step(state, WeightPartition<Rational>::of(w, k));
            EXPECT_EQ(state.k, k);
            EXPECT_EQ(state.inv, gauss_inverse(leading_principal(w, k)));
        }
    }
}

TEST(BorderedInverse, PartitionReassembles)
{
    const Q w = random_spd<Rational>(5, 9);
    for (std::size_t k = 1; k <= 5; ++k) EXPECT_EQ(WeightPartition<Rational>::of(w, k).assemble(), leading_principal(w, k));
}

TEST(BorderedInverse, SingularWeightIsDegenerate)
{
    const Q w{{1, 1}, {1, 1}};
    const auto state = bordered_inverse_start(w);
    EXPECT_EQ(kind_of([&] { (void)bordered_inverse_step(state, WeightPartition<Rational>::of(w, 2)); }),
              ErrorKind::DegenerateWeight);
}

TEST(Sweep, SmallKnownWeightedInverse)
{
    // A = [1 1], M = [1], N = diag(1, 2): X = N^{-1} A^T (A N^{-1} A^T)^{-1} = [2/3; 1/3].
    const Q a{{1, 1}};
    const Q x = wmp_wang(a, Q::identity(1), Q{{1, 0}, {0, 2}});
    EXPECT_EQ(x, (Q{{Rational(mpz_class(2), mpz_class(3))}, {Rational(mpz_class(1), mpz_class(3))}}));
}

TEST(Sweep, EnginesAgreeWithIdenticalTracesRational)
{
    std::size_t zero_branch_instances = 0;
    for (std::uint64_t s = 0; s < 120; ++s) {
        const Instance<Rational> in = random_instance<Rational>(s, 7);
        const EquivalenceReport rep = equivalence_check(in.a, in.m, in.n);
        EXPECT_TRUE(rep.exact_equal) << "seed " << s;
        EXPECT_TRUE(rep.traces_match()) << "seed " << s;
        zero_branch_instances += rep.zero_branches() > 0 ? 1 : 0;
    }
    EXPECT_GE(zero_branch_instances, 20u);
}

TEST(Sweep, FullColumnRankNeverTakesZeroBranch)
{
    for (std::uint64_t s = 0; s < 40; ++s) {
        const std::size_t n = 1 + s % 5;
        // Identity on top: the columns are independent.
        const Q full = vstack(Q::identity(n), random_int_matrix<Rational>(2, n, s));
        const auto w = wang_sweep(full, random_spd<Rational>(n + 2, s), random_spd<Rational>(n, s + 1));
        for (Branch b : w.trace) EXPECT_EQ(b, Branch::Nonzero);
    }
}

TEST(Sweep, DependentColumnTakesZeroBranch)
{
    const Q a{{1, 2, 3}, {4, 8, 1}};
    const auto w = wang_sweep(a, Q::identity(2), Q::identity(3));
    EXPECT_EQ(w.trace, (std::vector<Branch>{Branch::Nonzero, Branch::Zero, Branch::Nonzero}));
    const auto u = udwadia_sweep(a, Q::identity(2), Q::identity(3));
    EXPECT_EQ(u.trace, w.trace);
}

TEST(Sweep, OutputsSatisfyDefiningEquations)
{
    for (std::uint64_t s = 200; s < 260; ++s) {
        const Instance<Rational> in = random_instance<Rational>(s, 6);
        EXPECT_TRUE(penrose_residuals(in.a, wmp_wang(in.a, in.m, in.n), in.m, in.n).all_pass()) << s;
        EXPECT_TRUE(penrose_residuals(in.a, lm_udwadia(in.a, in.m, in.n), in.m, in.n).all_pass()) << s;
    }
}

TEST(Sweep, EveryPrefixIsAWeightedInverse)
{
    for (std::uint64_t s = 300; s < 330; ++s) {
        const Instance<Rational> in = random_instance<Rational>(s, 6);
        const auto prefixes = prefix_inverses(in.a, in.m, in.n);
        ASSERT_EQ(prefixes.size(), in.a.cols());
        for (std::size_t k = 1; k <= in.a.cols(); ++k) {
            const Q ak = take_cols(in.a, k);
            const Q nk = leading_principal(in.n, k);
            EXPECT_TRUE(penrose_residuals(ak, prefixes[k - 1], in.m, nk).all_pass()) << "seed " << s << " k " << k;
        }
    }
}

TEST(Sweep, ScalarWeightsGiveUnweightedInverse)
{
    const Rational alpha(mpz_class(3), mpz_class(2)), beta(7);
    for (std::uint64_t s = 400; s < 440; ++s) {
        const Instance<Rational> in = random_instance<Rational>(s, 6);
        const std::size_t m = in.a.rows(), n = in.a.cols();
        EXPECT_EQ(wmp_wang(in.a, Q(Q::identity(m) * alpha), Q(Q::identity(n) * beta)),
                  wmp_wang(in.a, Q::identity(m), Q::identity(n)));
    }
}

TEST(Sweep, DeltaPositiveOnEveryZeroBranchStep)
{
    std::size_t checked = 0;
    for (std::uint64_t s = 500; s < 600; ++s) {
        const Instance<Rational> in = random_instance<Rational>(s, 6);
        const RecursionConfig cfg;
        Q x = init_first_column(column(in.a, 0), in.m, cfg);
        auto state = bordered_inverse_start(in.n);
        for (std::size_t k = 2; k <= in.a.cols(); ++k) {
            const auto part = WeightPartition<Rational>::of(in.n, k);
            const auto w = wang_step(x, take_cols(in.a, k - 1), column(in.a, k - 1), part, state.inv, in.m, cfg);
            const auto u = udwadia_step(x, take_cols(in.a, k - 1), column(in.a, k - 1), part, state.inv, in.m,
                                        leading_principal(in.n, k), cfg);
            EXPECT_EQ(w.scratch.branch, u.scratch.branch);
            EXPECT_EQ(w.scratch.b_star, u.scratch.b_star);
            if (w.scratch.branch == Branch::Zero) {
                ASSERT_TRUE(w.scratch.delta.has_value());
                EXPECT_GT(*w.scratch.delta, Rational(0));
                EXPECT_GT(*u.scratch.delta, Rational(0));
                ++checked;
            }
            if (k < in.a.cols()) state = bordered_inverse_step(state, part);
            x = w.x;
        }
    }
    EXPECT_GT(checked, 30u);
}

TEST(Sweep, FloatEnginesAgree)
{
    for (std::uint64_t s = 0; s < 60; ++s) {
        const auto in = random_instance<double>(s, 12);
        const EquivalenceReport rep = equivalence_check(in.a, in.m, in.n);
        EXPECT_TRUE(rep.equivalent(false)) << "seed " << s << " gap " << rep.fro_gap;
        EXPECT_TRUE(rep.traces_match()) << "seed " << s;
        const auto x = wmp_wang(in.a, in.m, in.n);
        const double tol = 1e-8 * std::max(1.0, fro_norm(in.a));
        EXPECT_TRUE(penrose_residuals(in.a, x, in.m, in.n).all_pass(tol)) << "seed " << s;
    }
}

TEST(Sweep, RatFunEnginesAgreeAndSatisfyEquations)
{
    for (std::uint64_t s = 0; s < 12; ++s) {
        GenSpec spec;
        spec.rows = 2 + s % 3;
        spec.cols = 2 + (s / 3) % 3;
        spec.degree = 1 + static_cast<unsigned>(s % 3);
        spec.prob1 = 0.8;
        spec.seed = s;
        Matrix<RatFun> a = random_matrix<RatFun>(spec);
        if (spec.cols > 2) {
            // Force a dependent column: a_3 = x * a_1 + a_2.
            for (std::size_t i = 0; i < spec.rows; ++i) a(i, 2) = RatFun(Polynomial::x()) * a(i, 0) + a(i, 1);
        }
        const auto m = random_spd<RatFun>(spec.rows, s + 100, -3, 3);
        const auto n = random_spd<RatFun>(spec.cols, s + 200, -3, 3);
        const auto rep = equivalence_check(a, m, n);
        EXPECT_TRUE(rep.exact_equal) << "seed " << s;
        EXPECT_TRUE(rep.traces_match());
        EXPECT_TRUE(penrose_residuals(a, wmp_wang(a, m, n), m, n).all_pass()) << "seed " << s;
    }
}

TEST(Sweep, IndefiniteWeightRejected)
{
    const Q a{{1, 2}, {3, 4}};
    const Q bad{{1, 2}, {2, 1}};
    EXPECT_EQ(kind_of([&] { (void)wmp_wang(a, bad, Q::identity(2)); }), ErrorKind::WeightNotSPD);
    EXPECT_EQ(kind_of([&] { (void)lm_udwadia(a, Q::identity(2), bad); }), ErrorKind::WeightNotSPD);
}

TEST(Sweep, ShapeErrors)
{
    const Q a{{1, 2}, {3, 4}};
    EXPECT_EQ(kind_of([&] { (void)wmp_wang(a, Q::identity(3), Q::identity(2)); }),
              ErrorKind::DimensionMismatch);
    EXPECT_EQ(kind_of([&] { (void)wmp_wang(Q(), Q(), Q()); }), ErrorKind::DimensionMismatch);
}

TEST(Sweep, VanishingDeltaWithoutValidation)
{
    // A = [1 1], N = [[1, 1], [1, 1]]: delta = n22 + 1 - 2 = 0 on the dependent second column.
    const Q a{{1, 1}};
    const Q n{{1, 1}, {1, 1}};
    RecursionConfig cfg;
    cfg.validate_weights = false;
    EXPECT_EQ(kind_of([&] { (void)wmp_wang(a, Q::identity(1), n, cfg); }), ErrorKind::DegenerateDelta);
    EXPECT_EQ(kind_of([&] { (void)lm_udwadia(a, Q::identity(1), n, cfg); }), ErrorKind::DegenerateDelta);
    cfg.validate_weights = true;
    EXPECT_EQ(kind_of([&] { (void)wmp_wang(a, Q::identity(1), n, cfg); }), ErrorKind::WeightNotSPD);
}

TEST(Sweep, ZeroMatrixGivesZeroInverse)
{
    const Q a(3, 4);
    EXPECT_EQ(wmp_wang(a, Q::identity(3), Q::identity(4)), Q(4, 3));
    EXPECT_EQ(lm_udwadia(a, Q::identity(3), Q::identity(4)), Q(4, 3));
}

TEST(Sweep, FloatToleranceDecidesNearDependentColumn)
{
    // Second column equals the first up to 1e-13: dependent at the default tolerance,
    // independent when the tolerance is zero.
    const Matrix<double> a{{1.0, 1.0 + 1e-13}, {2.0, 2.0}};
    const auto loose = wang_sweep(a, Matrix<double>::identity(2), Matrix<double>::identity(2));
    EXPECT_EQ(loose.trace[1], Branch::Zero);
    RecursionConfig strict;
    strict.zero_tol_rel = 0.0;
    const auto tight = wang_sweep(a, Matrix<double>::identity(2), Matrix<double>::identity(2), strict);
    EXPECT_EQ(tight.trace[1], Branch::Nonzero);
}
