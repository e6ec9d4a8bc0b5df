"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines as they
happen.  Two criteria are expected to fail on spec-faithful assertions and
are left red deliberately; the analysis lives in the decisions ledger:

* criterion 3 (element membership in the stable lattice): the element
  t^9 + t^(1+2^(r-2)) - t - t^(9+2^(r-2)) has class alpha_1 + 2*alpha_2
  (up to sign) in the quotient presented by the published basis, which is
  non-zero, so exact arithmetic refutes the claimed membership at r = 5, 6.
  The unit factorization half of the criterion does hold and is asserted
  separately here.

* criterion 5 (congruence sweep sign): the Newton-evaluated left side
  equals (-1)^(k+1) * 2^(r+1) mod 2^(r+3) for every s <= r-3, but lands on
  the opposite sign for all instances with s = r-2, under every exact
  convention for the weight representatives.  Magnitude (exact 2-adic
  valuation r+1) holds everywhere and is asserted separately.
"""

import random
import time
from math import gcd

import pytest

from cycsim import snf
from cycsim.classify import (
    alpha,
    basis_element,
    beta,
    decide_similarity,
    enumerate_unstable,
    in_rt,
    order_in_rtop,
    rtop_presentation,
    std_basis,
)
from cycsim.groupring import (
    reidemeister_quotient,
    verify_condB_unit,
    verify_identity_gamma,
    verify_identity_v,
    verify_sigma_v_factorization,
)
from cycsim.normalinv import a_prime_sweep, sylow_kernel_test
from cycsim.reps import (
    VirtualRep,
    cyclic_group,
    induce,
    inflate,
    parse_rep,
    restrict,
    split_free_parts,
)
from cycsim.tate import oliver_kernel_check, tate, tate_bruteforce
from conftest import random_c2_module, random_free_pair, random_virtual


def report(num, name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    line = f"ACCEPTANCE {num:>2} {name}: {status}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


def referee_orders(r):
    orders = [1 << s for s in range(1, r - 1)]
    if r >= 4:
        orders.append(2)
    orders += [1 << j for j in range(1, r - 3)]
    return sorted(orders)


def test_criterion_01_quotient_presentations():
    t0 = time.time()
    ok = rtop_presentation(3).invariant_factors == [4]
    ok = ok and rtop_presentation(4).invariant_factors == [2, 2, 4]
    for r in (5, 6, 7):
        tr = time.time()
        pres = rtop_presentation(r)
        ok = ok and sorted(pres.invariant_factors) == referee_orders(r)
        ok = ok and time.time() - tr < 1.0
    report(1, "stable quotient presentations r=3..7", ok, f"{time.time()-t0:.2f}s")


def test_criterion_02_order_of_t_minus_t5():
    ok = order_in_rtop(parse_rep("t - t5", 8)) == 4
    for r in (4, 5, 6):
        ok = ok and order_in_rtop(parse_rep("t - t5", 1 << r)) == (1 << (r - 2))
    report(2, "order of t - t5", ok)


def test_criterion_03_condb_membership():
    details = []
    ok = True
    for r in (5, 6):
        n = 1 << r
        q4 = 1 << (r - 2)
        x = VirtualRep.from_weights(
            cyclic_group(n), weights=[9, 1 + q4], weights_neg=[1, 9 + q4]
        )
        member = in_rt(x) is not None
        unit_ok = verify_condB_unit(r).passed
        details.append(f"r={r}: in_rt={'Some' if member else 'None'} unit={unit_ok}")
        ok = ok and member and unit_ok
    report(
        3,
        "condB element membership + unit factorization",
        ok,
        "; ".join(details) + "; membership refuted by exact arithmetic, see ledger",
    )


def test_criterion_03b_condb_unit_factorization_half():
    # the exactly-verifiable half of criterion 3 stands on its own
    ok = all(verify_condB_unit(r).passed for r in (5, 6))
    report("3b", "condB unit factorization u = sigma_l(v) v", ok)


def test_criterion_04_unit_identity_suite():
    t0 = time.time()
    ok = True
    for q in (3, 5):
        ok = ok and verify_identity_v(q).passed
        for j in range(1, 4 * q):
            if j % 4 == 1 and gcd(j, 2 * q) == 1:
                ok = ok and verify_identity_gamma(q, j).passed
    ok = ok and verify_sigma_v_factorization(5, 1, 0).passed
    for s in (1, 2):
        for i in range((1 << (6 - s - 2)) - 2):
            ok = ok and verify_sigma_v_factorization(6, s, i).passed
    report(4, "unit identity suite", ok, f"{time.time()-t0:.2f}s")


def test_criterion_05_congruence_sweep():
    t0 = time.time()
    reports = a_prime_sweep((4, 5, 6))
    bad = [rep for rep in reports if rep.verdict != "pass"]
    took = time.time() - t0
    detail = f"{len(reports)-len(bad)}/{len(reports)} match the sign claim, {took:.2f}s"
    if bad:
        anomalies = sorted({(r.params["r"], r.params["s"]) for r in bad})
        detail += f"; sign anomalies at (r,s)={anomalies}, all at s=r-2, see ledger"
    report(5, "congruence sweep sign claim", not bad and took < 10.0, detail)


def test_criterion_05b_congruence_magnitude():
    # the exactly-true part: value is +-2^(r+1) mod 2^(r+3) on the sweep
    reports = a_prime_sweep((4, 5, 6))
    ok = all(rep.extras["magnitude_ok"] for rep in reports)
    ok = ok and all(
        rep.verdict == "pass" for rep in reports if rep.params["s"] <= rep.params["r"] - 3
    )
    report("5b", "congruence magnitude and alternation for s <= r-3", ok)


def test_criterion_06_no_five_dimensional_similarities():
    t0 = time.time()
    ok = True
    for r in (3, 4, 5):
        rows = enumerate_unstable(r, 2, parse_rep("rminus:1", 1 << r))
        ok = ok and all(v.decision != "Yes" for _, _, v in rows)
    took = time.time() - t0
    report(6, "no 5-dimensional similarities", ok and took < 10.0, f"{took:.2f}s")


def test_criterion_07_six_dimensional_family():
    ok = True
    for r in (4, 5, 6):
        n = 1 << r
        v1 = parse_rep("2*t", n)
        v2 = 2 * VirtualRep.from_weights(cyclic_group(n), weights=[1 + n // 2])
        yes = decide_similarity(v1, v2, parse_rep("rminus:1,rplus:1", n))
        no = decide_similarity(v1, v2, parse_rep("rminus:1", n))
        ok = ok and yes.decision == "Yes" and no.decision == "No"
    report(7, "six-dimensional similarity family", ok)


def test_criterion_08_structural_property_suites():
    rng = random.Random(883)
    ok = True

    # closed-form restriction/induction for every legal parameter, r <= 8
    for r in range(4, 9):
        for s in range(1, r - 1):
            for i in range(1 << (r - s - 2)):
                x = basis_element(r, s, i)
                down = restrict(x, 1 << (r - 1))
                expect = (
                    VirtualRep.zero(cyclic_group(1 << (r - 1)))
                    if s == 1
                    else basis_element(r - 1, s - 1, i)
                )
                ok = ok and down == expect
        for s in range(2, r - 1):
            for i in range(1 << (r - s - 2)):
                lhs = induce(basis_element(r - 1, s - 1, i), 1 << r)
                xh = 1 << (r - s - 2)
                rhs = (
                    2 * basis_element(r, s, i)
                    - basis_element(r, 1, i)
                    + basis_element(r, 1, xh + i)
                )
                ok = ok and lhs == rhs

    # standard basis unimodularity r <= 8 (asserted at construction)
    for r in range(3, 9):
        std_basis(r)

    # split/reassemble on 1000 random representations
    for _ in range(1000):
        n = rng.choice([4, 8, 12, 16, 24, 32])
        x = random_virtual(rng, n)
        total = VirtualRep.zero(cyclic_group(n))
        for comp in split_free_parts(x).values():
            total = total + inflate(comp, cyclic_group(n))
        ok = ok and total == x

    # torsion unit construction never fails on 500 equivalent pairs
    for _ in range(500):
        n = rng.choice([8, 12, 16, 20, 24, 32, 48, 64])
        v1, v2 = random_free_pair(rng, n, rng.randint(1, 4))
        tu = reidemeister_quotient(v1, v2)
        ok = ok and tu.value.augmentation() in (1, -1)

    # monotonicity of the decision in W on 500 random triples
    for _ in range(500):
        r = rng.choice([3, 4, 5])
        n = 1 << r
        v1, v2 = random_free_pair(rng, n, rng.randint(2, 4))
        w = VirtualRep.zero(cyclic_group(n))
        for _ in range(rng.randint(0, 3)):
            w = w.add_weight(rng.randrange(1, n), 1)
        if rng.random() < 0.4:
            w = w + parse_rep("rplus:1", n)
        if rng.random() < 0.4:
            w = w + parse_rep("rminus:1", n)
        if decide_similarity(v1, v2, w).decision == "Yes":
            extra = parse_rep("t2,rplus:1,rminus:1", n)
            ok = ok and decide_similarity(v1, v2, w + extra).decision == "Yes"

    report(8, "structural property suites", ok)


def test_criterion_09_tate_oracle_equivalence():
    rng = random.Random(99)
    ok = True
    for _ in range(200):
        m = random_c2_module(rng, max_size=4096)
        for i in (0, 1):
            fast = tate(m, i)
            slow = tate_bruteforce(m, i)
            ok = ok and fast.invariant_factors == slow.invariant_factors
            ok = ok and all(f == 2 for f in fast.invariant_factors)
    report(9, "Tate oracle equivalence on 200 random modules", ok)


def test_criterion_10_norm_map_enumeration():
    ok = True
    for n in (0, 1):
        rep = oliver_kernel_check(n)
        ok = ok and rep.passed and rep.norm_relation_ok

    # a wrong interpretation is a documented failure, not a crash
    def broken(a, b):
        out = [0] * (1 << b)
        out[0] = 1
        return out

    mismatch = oliver_kernel_check(1, norm_table=broken)
    ok = ok and mismatch.interpretation_mismatch and not mismatch.passed
    report(10, "norm-map kernel enumeration", ok)


def test_criterion_11_sylow_detection():
    ok = sylow_kernel_test(parse_rep("t - t7", 24))
    ok = ok and sylow_kernel_test(parse_rep("t5 - t11", 24))
    ok = ok and not sylow_kernel_test(parse_rep("t - t5", 24))
    report(11, "Sylow detection over C(24)", ok)
