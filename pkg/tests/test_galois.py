import math

import pytest

from lowk.galois import (
    FieldDescriptor,
    UnitSubgroup,
    contains_minus_one,
    divisors,
    full_unit_group,
    generated_subgroup,
    is_prime,
    minimal_generators,
    mult_order,
    phi_image,
)

Q = FieldDescriptor.rational()


def test_mult_order_basics():
    assert mult_order(2, 7) == 3  # 2, 4, 1
    assert mult_order(1, 17) == 1
    assert mult_order(1, 1) == 1
    assert mult_order(2, 257) == 16


def test_mult_order_rejects_non_units():
    with pytest.raises(ValueError):
        mult_order(2, 8)


def test_generated_subgroup():
    assert generated_subgroup(5, [2]).residues == (1, 2, 3, 4)
    assert generated_subgroup(7, [2]).residues == (1, 2, 4)
    assert generated_subgroup(35, [1]).residues == (1,)
    with pytest.raises(ValueError):
        generated_subgroup(6, [3])


def test_contains_minus_one():
    assert contains_minus_one(generated_subgroup(5, [2]))
    assert not contains_minus_one(generated_subgroup(7, [2]))
    assert contains_minus_one(generated_subgroup(257, [2]))


def test_phi_image_padic_two_at_four():
    assert phi_image(FieldDescriptor.p_adic(2), 4).residues == (1, 3)


def test_phi_image_rational_is_everything():
    assert phi_image(Q, 5).residues == (1, 2, 3, 4)
    assert phi_image(Q, 12).residues == full_unit_group(12).residues


def test_phi_image_finite_prime():
    assert phi_image(FieldDescriptor.finite_prime(2), 7).residues == (1, 2, 4)
    with pytest.raises(ValueError):
        phi_image(FieldDescriptor.finite_prime(3), 12)


def test_phi_image_mixed_padic_against_crt_oracle():
    # oracle: enumerate the product set {t : t unit mod 20, t mod 4 in <5 mod 4>}
    expected = tuple(
        t for t in range(1, 20)
        if math.gcd(t, 20) == 1 and t % 4 in {pow(5, j, 4) for j in range(4)}
    )
    assert expected == (1, 9, 13, 17)
    assert phi_image(FieldDescriptor.p_adic(5), 20).residues == expected


def test_phi_image_two_mod_four_reduction():
    # modulus 2 mod 4 reduces to the odd half and lifts back
    img = phi_image(FieldDescriptor.p_adic(3), 14)
    half = phi_image(FieldDescriptor.p_adic(3), 7)
    assert {r % 7 for r in img.residues} == set(half.residues)
    assert all(r % 2 == 1 for r in img.residues)


def test_phi_image_is_subgroup_sweep():
    fields = [Q] + [FieldDescriptor.p_adic(p) for p in (2, 3, 5, 7, 11, 13, 17, 19)]
    fields += [FieldDescriptor.finite_prime(p) for p in (2, 3, 5, 7, 11, 13, 17, 19)]
    for n in range(1, 201):
        rational = set(phi_image(Q, n).residues)
        for f in fields:
            if f.kind == "Fp" and n % f.p == 0:
                continue
            img = phi_image(f, n)
            assert img.is_subgroup(), (f.label, n)
            assert set(img.residues) <= rational, (f.label, n)


def test_padic_equals_finite_prime_away_from_p():
    for p in (2, 3, 5, 7, 11, 13, 17, 19):
        for n in range(1, 101):
            if n % p == 0:
                continue
            assert (
                phi_image(FieldDescriptor.p_adic(p), n).residues
                == phi_image(FieldDescriptor.finite_prime(p), n).residues
            ), (p, n)


def test_minimal_generators_regenerate():
    for n in (5, 7, 16, 24, 60, 257):
        full = full_unit_group(n)
        gens = minimal_generators(full)
        assert generated_subgroup(n, list(gens)).residues == full.residues


def test_field_descriptor_validation_and_parse():
    with pytest.raises(ValueError):
        FieldDescriptor.p_adic(4)
    with pytest.raises(ValueError):
        FieldDescriptor("Q", 3)
    assert FieldDescriptor.parse("Q") == Q
    assert FieldDescriptor.parse("Qp:5") == FieldDescriptor.p_adic(5)
    assert FieldDescriptor.parse("Fp:3") == FieldDescriptor.finite_prime(3)
    assert FieldDescriptor.parse("Qp:5").label == "Q_5"
    with pytest.raises(ValueError):
        FieldDescriptor.parse("R")


def test_is_prime_and_divisors():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]


def test_trivial_modulus_unit_group():
    assert phi_image(Q, 1) == UnitSubgroup(1, (0,))
    assert contains_minus_one(UnitSubgroup(1, (0,)))
