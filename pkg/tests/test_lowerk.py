import pytest

from lowk.census import GroupTooLargeError
from lowk.groups import (
    build_abelian,
    build_binary_polyhedral,
    build_cyclic,
    build_dicyclic,
    generalized_quaternion,
)
from lowk.lowerk import (
    COUNTABLE,
    UNKNOWN,
    AbelianGroupExpr,
    UnsupportedFamilyError,
    Z2_INF,
    bhs_decompose,
    carter_rank,
    delta,
    k0_tilde_lookup,
    k_minus_one,
    k_minus_one_torsion,
    lambda_value,
    sk1_is_trivial,
    wedderburn_shape,
    whitehead_rank,
)
from lowk.fconj import r_f
from lowk.galois import FieldDescriptor


# -- abelian group expressions -------------------------------------------------

def test_expr_canonical_form():
    e = AbelianGroupExpr(free_rank=1, torsion=(4, 2), infinite=(("B", 1), ("A", 2)))
    assert e.torsion == (2, 4)
    assert e.infinite == (("A", 2), ("B", 1))
    assert e == AbelianGroupExpr(1, (2, 4), (("A", 2), ("B", 1)))


def test_expr_sum_and_countable_collapse():
    a = AbelianGroupExpr.summand(Z2_INF, COUNTABLE)
    b = AbelianGroupExpr.summand(Z2_INF, 3)
    assert (a + b).infinite == ((Z2_INF, COUNTABLE),)
    assert (b + b).infinite == ((Z2_INF, 6),)
    two = AbelianGroupExpr.free(1) + AbelianGroupExpr.torsion_group(2)
    assert two.times(2) == AbelianGroupExpr(2, (2, 2))


def test_expr_render():
    assert AbelianGroupExpr.zero().render() == "0"
    assert AbelianGroupExpr(1, (2,)).render() == "Z (+) Z_2"
    assert AbelianGroupExpr(16, (2,)).render() == "Z^16 (+) Z_2"
    assert AbelianGroupExpr.torsion_group(2, 2).render() == "Z_2^2"


def test_expr_validation():
    with pytest.raises(ValueError):
        AbelianGroupExpr(free_rank=-1)
    with pytest.raises(ValueError):
        AbelianGroupExpr(torsion=(1,))


# -- lambda ---------------------------------------------------------------------

def test_lambda_known_values():
    assert lambda_value(257) == 16
    assert lambda_value(127) == 9
    assert lambda_value(8191) == 315
    assert lambda_value(5) == 1  # <2> = all units mod 5


@pytest.mark.parametrize("m", [2, 9, 15, 1])
def test_lambda_rejects_non_odd_primes(m):
    with pytest.raises(ValueError):
        lambda_value(m)


# -- Whitehead ranks -------------------------------------------------------------

def test_whitehead_known_values():
    assert whitehead_rank(generalized_quaternion(4)) == 1
    assert whitehead_rank(generalized_quaternion(3)) == 0
    assert whitehead_rank(build_binary_polyhedral("T*")) == 0
    assert whitehead_rank(build_binary_polyhedral("O*")) == 1
    assert whitehead_rank(build_binary_polyhedral("I*")) == 2
    # floor(12/2) + 1 - delta(12) = 7 - 6
    assert whitehead_rank(build_cyclic(12)) == 1
    assert whitehead_rank(build_dicyclic(5)) == 2


def test_whitehead_closed_form_only_for_large_groups():
    big = build_dicyclic(3000)
    assert whitehead_rank(big) == 3001 - delta(6000)


def test_whitehead_custom_family_uses_census():
    assert whitehead_rank(build_abelian([2, 2])) == 0


def test_sk1():
    assert sk1_is_trivial(generalized_quaternion(3))
    assert sk1_is_trivial(build_binary_polyhedral("I*"))
    assert sk1_is_trivial(build_cyclic(30))
    with pytest.raises(UnsupportedFamilyError):
        sk1_is_trivial(build_abelian([2, 2]))


# -- Carter rank and torsion -----------------------------------------------------

def test_carter_rank_values():
    for k in range(3, 9):
        assert carter_rank(generalized_quaternion(k)) == 0
    assert carter_rank(build_binary_polyhedral("T*")) == 1
    assert carter_rank(build_binary_polyhedral("O*")) == 1
    assert carter_rank(build_binary_polyhedral("I*")) == 2
    assert carter_rank(build_dicyclic(127)) == 9


def test_carter_rank_z2_from_counts():
    # oracle: the three Witt-Berman counts of the order-2 group
    g = build_cyclic(2)
    rq = r_f(g, FieldDescriptor.rational())
    rq2 = r_f(g, FieldDescriptor.p_adic(2))
    rf2 = r_f(g, FieldDescriptor.finite_prime(2))
    assert (rq, rq2, rf2) == (2, 2, 1)
    assert carter_rank(g) == 1 - rq + rq2 - rf2 == 0


def test_carter_census_agrees_with_closed_form_for_odd_primes():
    # both routes: Witt-Berman census (default) vs the number-theoretic
    # closed form (forced by an artificially tiny census bound)
    from lowk.galois import is_prime

    for m in range(3, 61, 2):
        if not is_prime(m):
            continue
        g = build_dicyclic(m)
        assert carter_rank(g) == carter_rank(g, max_size=1) == lambda_value(m), m


def test_carter_closed_form_beyond_census_bound():
    big = build_dicyclic(8191)
    assert carter_rank(big) == 315
    with pytest.raises(GroupTooLargeError):
        carter_rank(build_dicyclic(2000))  # no closed form: 2000 is not prime


def test_torsion_rules():
    assert k_minus_one_torsion(build_dicyclic(5)) == 1   # 5 = 1 mod 4
    assert k_minus_one_torsion(build_dicyclic(3)) == 0   # 3 = 3 mod 4
    assert k_minus_one_torsion(generalized_quaternion(4)) == 1
    assert k_minus_one_torsion(generalized_quaternion(3)) == 0
    assert k_minus_one_torsion(build_dicyclic(2)) == 0   # Q8 again
    assert k_minus_one_torsion(build_binary_polyhedral("T*")) == 0
    assert k_minus_one_torsion(build_binary_polyhedral("O*")) == 1
    assert k_minus_one_torsion(build_binary_polyhedral("I*")) == 1
    assert k_minus_one_torsion(build_cyclic(9)) == 0


@pytest.mark.parametrize("m", [9, 15, 6, 12])
def test_torsion_not_covered_for_other_dicyclic(m):
    with pytest.raises(UnsupportedFamilyError):
        k_minus_one_torsion(build_dicyclic(m))


def test_k_minus_one_assembly():
    assert k_minus_one(build_dicyclic(257)) == AbelianGroupExpr(16, (2,))
    assert k_minus_one(generalized_quaternion(5)) == AbelianGroupExpr(0, (2,))
    assert k_minus_one(generalized_quaternion(3)).is_zero
    assert k_minus_one(build_binary_polyhedral("I*")) == AbelianGroupExpr(2, (2,))


# -- K0 lookup -------------------------------------------------------------------

def test_k0_lookup_dicyclic():
    assert k0_tilde_lookup(build_dicyclic(6)) == AbelianGroupExpr.torsion_group(2, 2, 2)
    assert k0_tilde_lookup(build_dicyclic(9)) == AbelianGroupExpr.torsion_group(2, 2)
    for m in (2, 3, 4, 5, 7, 8, 11):
        assert k0_tilde_lookup(build_dicyclic(m)) == AbelianGroupExpr.torsion_group(2)
    assert k0_tilde_lookup(build_dicyclic(13)) is UNKNOWN
    assert k0_tilde_lookup(generalized_quaternion(5)) == AbelianGroupExpr.torsion_group(2)
    assert k0_tilde_lookup(generalized_quaternion(6)) is UNKNOWN


def test_k0_lookup_cyclic_and_binary():
    for m in list(range(1, 12)) + [13, 14, 17, 19]:
        assert k0_tilde_lookup(build_cyclic(m)) == AbelianGroupExpr.zero()
    for m in (12, 15, 16, 18, 20, 23):
        assert k0_tilde_lookup(build_cyclic(m)) is UNKNOWN
    assert k0_tilde_lookup(build_binary_polyhedral("T*")) == AbelianGroupExpr.torsion_group(2)
    assert k0_tilde_lookup(build_binary_polyhedral("O*")) == AbelianGroupExpr.torsion_group(2, 2)
    assert k0_tilde_lookup(build_binary_polyhedral("I*")) == AbelianGroupExpr.torsion_group(2, 2, 2)
    assert k0_tilde_lookup(build_abelian([2, 2])) is UNKNOWN


# -- Wedderburn shapes -----------------------------------------------------------

def test_wedderburn_dic20():
    symbols = [c.symbol() for c in wedderburn_shape(build_dicyclic(5))]
    assert symbols == ["Q", "Q", "M_2(Q(zeta_5+zeta_5^-1))", "Q(i)", "H_10"]


def test_wedderburn_tstar():
    symbols = [c.symbol() for c in wedderburn_shape(build_binary_polyhedral("T*"))]
    assert symbols == ["Q", "Q(zeta_3)", "M_3(Q)", "H_4", "H(Q(zeta_3))"]


def test_wedderburn_component_count_matches_rational_count():
    groups = [build_dicyclic(m) for m in (3, 5, 7, 9, 15)]
    groups += [generalized_quaternion(k) for k in (3, 4, 5, 6)]
    groups += [build_binary_polyhedral(k) for k in ("T*", "O*", "I*")]
    for group in groups:
        shape = wedderburn_shape(group)
        assert len(shape) == r_f(group, FieldDescriptor.rational()), group.name


def test_wedderburn_unsupported():
    with pytest.raises(UnsupportedFamilyError):
        wedderburn_shape(build_dicyclic(6))
    with pytest.raises(UnsupportedFamilyError):
        wedderburn_shape(build_cyclic(5))


# -- Bass-Heller-Swan ------------------------------------------------------------

def test_bhs_q8_degree_one():
    values = {
        "wh": AbelianGroupExpr.zero(),
        "k0": AbelianGroupExpr.torsion_group(2),
        "nk1": AbelianGroupExpr.summand(Z2_INF),
    }
    assert bhs_decompose(values, 1) == AbelianGroupExpr(
        0, (2,), ((Z2_INF, 2),)
    )


def test_bhs_q8_degree_zero():
    values = {
        "k0": AbelianGroupExpr.torsion_group(2),
        "kminus1": AbelianGroupExpr.zero(),
        "nk0": AbelianGroupExpr.summand(Z2_INF),
    }
    assert bhs_decompose(values, 0) == AbelianGroupExpr(0, (2,), ((Z2_INF, 2),))


def test_bhs_trivial_group():
    zero = AbelianGroupExpr.zero()
    assert bhs_decompose({"wh": zero, "k0": zero, "nk1": zero}, 1).is_zero


def test_bhs_missing_inputs():
    with pytest.raises(KeyError):
        bhs_decompose({"wh": AbelianGroupExpr.zero()}, 1)
    with pytest.raises(ValueError):
        bhs_decompose({}, 2)
