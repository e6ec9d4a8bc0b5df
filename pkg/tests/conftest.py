"""Shared generators for the randomized suites (seeded, no global state)."""

import random
from math import gcd

import pytest

from cycsim import snf
from cycsim.reps import R_MINUS, R_PLUS, VirtualRep, cyclic_group
from cycsim.tate import C2Module


def random_units(rng, n, count):
    units = [u for u in range(1, n) if gcd(u, n) == 1]
    return [rng.choice(units) for _ in range(count)]


def random_free_pair(rng, n, dim):
    """Two free representations of C(n) with homotopy equivalent spheres."""
    a = random_units(rng, n, dim)
    b = random_units(rng, n, dim - 1)
    prod_a = 1
    for w in a:
        prod_a = prod_a * w % n
    prod_b = 1
    for w in b:
        prod_b = prod_b * w % n
    b.append(prod_a * pow(prod_b, -1, n) % n)
    g = cyclic_group(n)
    return (
        VirtualRep.from_weights(g, weights=a),
        VirtualRep.from_weights(g, weights=b),
    )


def random_virtual(rng, n, size=6, signed=True):
    g = cyclic_group(n)
    x = VirtualRep.zero(g)
    for _ in range(rng.randint(0, size)):
        kind = rng.random()
        mult = rng.choice([1, 1, 2, -1, -2]) if signed else rng.randint(1, 2)
        if kind < 0.75:
            x = x.add_weight(rng.randrange(n), mult)
        elif kind < 0.9 or n % 2:
            x = x.add_irreducible(R_PLUS, mult)
        else:
            x = x.add_irreducible(R_MINUS, mult)
    return x


def random_c2_module(rng, max_size=4096, max_gens=4):
    """A finitely presented module with a genuine order-2 action."""
    while True:
        k = rng.randint(1, max_gens)
        orders = []
        size = 1
        for _ in range(k):
            d = rng.choice([2, 2, 3, 4, 4, 5, 8, 9, 16])
            if size * d > max_size:
                d = 2
            size *= d
            orders.append(d)
        if size <= max_size:
            break
    relations = [[orders[i] if i == j else 0 for j in range(k)] for i in range(k)]
    t = [[(1 if i == j else 0) for j in range(k)] for i in range(k)]
    for i in range(k):
        if rng.random() < 0.5:
            t[i][i] = -1
    for i in range(k):
        for j in range(i + 1, k):
            if orders[i] == orders[j] and rng.random() < 0.3:
                perm = list(range(k))
                perm[i], perm[j] = perm[j], perm[i]
                t = [[t[perm[a]][perm[b]] for b in range(k)] for a in range(k)]
    # conjugate by compatible elementary matrices to hide the diagonal
    for _ in range(rng.randint(0, 6)):
        i, j = rng.randrange(k), rng.randrange(k)
        if i == j:
            continue
        step = orders[i] // gcd(orders[i], orders[j])
        c = step * rng.randint(-2, 2)
        if not c:
            continue
        e = [[1 if a == b else 0 for b in range(k)] for a in range(k)]
        e[i][j] = c
        einv = [[1 if a == b else 0 for b in range(k)] for a in range(k)]
        einv[i][j] = -c
        t = snf.mat_mul(snf.mat_mul(einv, t), e)
    return C2Module(k, relations, t)


@pytest.fixture
def rng():
    return random.Random(20260810)
