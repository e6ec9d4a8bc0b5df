"""Representation ring of C(N): restriction, induction, fixed sets, splits,
k-invariants and Galois twists."""

import pytest

from cycsim.errors import DomainError
from cycsim.reps import (
    R_MINUS,
    R_PLUS,
    Irreducible,
    VirtualRep,
    cyclic_group,
    fixed_set,
    galois_twist,
    homotopy_equivalent,
    induce,
    inflate,
    isotropy_index,
    k_invariant,
    parse_rep,
    rep_from_record,
    rep_to_record,
    restrict,
    split_free_parts,
)
from conftest import random_virtual


def rep(text, n):
    return parse_rep(text, n)


class TestCanonicalization:
    def test_unit_weight_is_one_mod_four(self):
        x = rep("t3", 16)
        (irr,) = x.mult
        assert irr.weight == 13  # 16 - 3

    def test_weight_half_order_expands_to_rminus(self):
        x = rep("t4", 8)
        assert x.mult == {Irreducible("R-"): 2}

    def test_weight_zero_expands_to_rplus(self):
        x = rep("t8", 8)
        assert x.mult == {Irreducible("R+"): 2}

    def test_nonunit_weight_uses_min_representative(self):
        x = rep("t6", 8)
        (irr,) = x.mult
        assert irr.weight == 2

    def test_dimension(self):
        assert rep("t,t5,rplus:1,rminus:2", 16).dim == 7


class TestRestrict:
    def test_restriction_kills_a1(self):
        assert not restrict(rep("t - t9", 16), 8)

    def test_restriction_of_a2(self):
        assert restrict(rep("t - t5", 16), 8) == rep("t - t5", 8)

    def test_rminus_kernel_containment(self):
        # ker(R- of C(8)) is the index-2 subgroup; every proper subgroup of
        # C(8) lies in it, so all proper restrictions are trivial
        x = VirtualRep.from_weights(cyclic_group(8), rminus=1)
        assert restrict(x, 4).mult == {Irreducible("R+"): 1}
        assert restrict(x, 2).mult == {Irreducible("R+"): 1}
        # over C(12) the subgroup C(4) is not inside the kernel C(6)
        y = VirtualRep.from_weights(cyclic_group(12), rminus=1)
        assert restrict(y, 4).mult == {Irreducible("R-"): 1}
        assert restrict(y, 6).mult == {Irreducible("R+"): 1}

    def test_weight_zero_mod_subgroup(self):
        x = rep("t4", 16)
        assert restrict(x, 4).mult == {Irreducible("R+"): 2}
        assert restrict(x, 8).mult == {Irreducible("R-"): 2}

    def test_not_a_subgroup(self):
        with pytest.raises(DomainError):
            restrict(rep("t", 8), 3)


class TestInduce:
    def test_weight_lift(self):
        assert induce(rep("t - t5", 8), 16) == rep("t + t9 - t5 - t13", 16)

    def test_rplus(self):
        x = VirtualRep.from_weights(cyclic_group(8), rplus=1)
        up = induce(x, 16)
        assert up.mult == {Irreducible("R+"): 1, Irreducible("R-"): 1}

    def test_rminus_becomes_weight(self):
        x = VirtualRep.from_weights(cyclic_group(8), rminus=1)
        assert induce(x, 16) == rep("t4", 16)

    def test_res_ind_doubles_free_part(self):
        up = induce(rep("t", 8), 16)
        assert restrict(up, 8) == 2 * rep("t", 8)

    def test_index_two_only(self):
        with pytest.raises(DomainError):
            induce(rep("t", 8), 32)

    def test_dim_doubles_and_fixed_sets_commute(self, rng):
        # dim doubles; the G-fixed part of the induction is the H-fixed part
        for _ in range(100):
            x = random_virtual(rng, 8)
            up = induce(x, 16)
            assert up.dim == 2 * x.dim
            assert fixed_set(up, 16) == fixed_set(x, 8)


class TestFixedSets:
    def test_weight_two_survives(self):
        x = rep("t2 + t", 8)
        assert fixed_set(x, 2) == rep("t", 4)

    def test_rplus_always_survives(self):
        x = VirtualRep.from_weights(cyclic_group(8), rplus=3)
        for k in (1, 2, 4, 8):
            assert fixed_set(x, k).mult == {Irreducible("R+"): 3}

    def test_free_part_dies(self):
        x = rep("t + t3", 8)
        for k in (2, 4, 8):
            assert not fixed_set(x, k)

    def test_retraction_identity(self, rng):
        # fixed_set(inflate(y), K) = y over G/K
        for _ in range(1000):
            n = rng.choice([4, 6, 8, 12, 16, 24])
            d = rng.choice([dd for dd in range(1, n + 1) if n % dd == 0])
            y = random_virtual(rng, d)
            assert fixed_set(inflate(y, cyclic_group(n)), n // d) == y


class TestSplitFreeParts:
    def test_example(self):
        x = rep("t + t2 + rminus:1 + rplus:1", 8)
        parts = split_free_parts(x)
        assert parts[8] == rep("t", 8)
        assert parts[4] == rep("t", 4)
        assert parts[2].mult == {Irreducible("R-"): 1}
        assert parts[1].mult == {Irreducible("R+"): 1}

    def test_free_input_single_component(self):
        x = rep("t + t3", 8)
        assert list(split_free_parts(x)) == [8]

    def test_zero(self):
        assert split_free_parts(VirtualRep.zero(cyclic_group(8))) == {}

    def test_reassembly(self, rng):
        for _ in range(1000):
            n = rng.choice([4, 8, 12, 16, 20, 24])
            x = random_virtual(rng, n)
            parts = split_free_parts(x)
            total = VirtualRep.zero(cyclic_group(n))
            for d, comp in parts.items():
                assert comp.is_free()
                total = total + inflate(comp, cyclic_group(n))
            assert total == x


class TestKInvariant:
    def test_identity_class(self):
        x = rep("t + t3", 8) - rep("t5 + t7", 8)
        assert k_invariant(x) == 1
        assert homotopy_equivalent(rep("t + t3", 8), rep("t5 + t7", 8))

    def test_nontrivial_class(self):
        x = rep("2*t", 8) - rep("t + t5", 8)
        assert k_invariant(x) == 3  # the class of 5 = {5, 3}, canonically 3
        assert not homotopy_equivalent(rep("2*t", 8), rep("t + t5", 8))

    def test_order_two_class(self):
        x = rep("t - t7", 16)
        assert k_invariant(x) == 7
        # squares are homotopy equivalent
        assert homotopy_equivalent(rep("2*t", 16), rep("2*t7", 16))

    def test_requires_free_equal_dim(self):
        with pytest.raises(DomainError):
            k_invariant(rep("t2", 8) - rep("t", 8))
        with pytest.raises(DomainError):
            k_invariant(rep("t + t3", 8))

    def test_multiplicative(self, rng):
        from conftest import random_free_pair

        for _ in range(100):
            n = rng.choice([8, 16, 24])
            v1, v2 = random_free_pair(rng, n, 2)
            w1, w2 = random_free_pair(rng, n, 3)
            x = v1 - v2
            y = w1 - w2
            kx, ky = k_invariant(x), k_invariant(y)
            assert k_invariant(x + y) == min(kx * ky % n, (-kx * ky) % n)


class TestIsotropyIndex:
    def test_examples(self):
        g = cyclic_group(16)
        assert isotropy_index(Irreducible("w", 4), g) == 2
        assert isotropy_index(Irreducible("R-"), g) == 1
        assert isotropy_index(Irreducible("w", 1), g) == 4
        assert isotropy_index(Irreducible("R+"), g) == 0


class TestGaloisTwist:
    def test_example(self):
        assert galois_twist(rep("t - t9", 16), 5) == rep("t5 - t13", 16)

    def test_identity(self, rng):
        for _ in range(50):
            x = random_virtual(rng, 16)
            assert galois_twist(x, 1) == x

    def test_five_has_order_four_mod_16(self):
        x = rep("t - t9 + t5", 16)
        y = x
        for _ in range(4):
            y = galois_twist(y, 5)
        assert y == x

    def test_rejects_non_unit(self):
        with pytest.raises(DomainError):
            galois_twist(rep("t", 8), 2)


class TestLiterals:
    def test_record_round_trip(self, rng):
        for _ in range(200):
            x = random_virtual(rng, rng.choice([8, 12, 16]))
            assert rep_from_record(rep_to_record(x)) == x

    def test_parse_forms(self):
        assert rep("2*t5", 16) == rep("t5 + t5", 16)
        assert rep("rminus:2", 8).mult == {Irreducible("R-"): 2}
        assert rep("t9,t9", 16) == rep("2*t9", 16)
        assert rep("t - t5", 8) == rep("t", 8) - rep("t5", 8)

    def test_parse_rejects_junk(self):
        with pytest.raises(DomainError):
            rep("q5", 8)


class TestClosedFormRelations:
    """Restriction and induction formulas for the standard basis family."""

    def test_res_and_ind_closed_forms_all_r(self):
        from cycsim.classify import basis_element

        for r in range(4, 9):
            for s in range(1, r - 1):
                for i in range(1 << (r - s - 2)):
                    x = basis_element(r, s, i)
                    down = restrict(x, 1 << (r - 1))
                    if s == 1:
                        assert not down
                    else:
                        assert down == basis_element(r - 1, s - 1, i)
            # induction: Ind(a_(s-1)(r-1)) = 2 a_s(r) - a_1(r) + a_1(r)^(X+i)
            for s in range(2, r - 1):
                for i in range(1 << (r - s - 2)):
                    lhs = induce(basis_element(r - 1, s - 1, i), 1 << r)
                    x_half = 1 << (r - s - 2)
                    rhs = (
                        2 * basis_element(r, s, i)
                        - basis_element(r, 1, i)
                        + basis_element(r, 1, x_half + i)
                    )
                    assert lhs == rhs
